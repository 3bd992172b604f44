//! General (unsymmetrized) covariant tensors and the operations that move
//! between them and [`AltTensor`].

use std::collections::BTreeMap;

use super::alt::AltTensor;
use super::index::{canonicalize, factorial};
use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::Error;
use crate::linalg::Matrix;

/// A sparse covariant tensor with no symmetry assumed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    degree: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn zero(degree: usize, dim: usize) -> Self {
        Tensor { degree, dim, entries: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.entries.get(idx).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn set(&mut self, idx: Vec<usize>, v: Scalar) {
        debug_assert_eq!(idx.len(), self.degree);
        if v.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, v);
        }
    }

    pub fn add_at(&mut self, idx: Vec<usize>, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(e) => {
                *e += v;
                if e.is_zero() {
                    self.entries.remove(&idx);
                }
            }
            None => {
                self.entries.insert(idx, v.clone());
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Permutes slots: the result at `idx` is `self` at `idx ∘ perm`, i.e.
    /// slot `r` of the result reads slot `perm[r]` of the input.
    pub fn permute_slots(&self, perm: &[usize]) -> Self {
        let mut out = Tensor::zero(self.degree, self.dim);
        let inv = {
            let mut inv = vec![0; perm.len()];
            for (r, &p) in perm.iter().enumerate() {
                inv[p] = r;
            }
            inv
        };
        for (idx, v) in &self.entries {
            let key: Vec<usize> = (0..self.degree).map(|r| idx[inv[r]]).collect();
            out.set(key, v.clone());
        }
        out
    }

    /// Applies `m` to slot `slot`: `out[.., a, ..] = sum_b m[a][b] t[.., b, ..]`.
    pub fn transform_slot(&self, slot: usize, m: &Matrix) -> Self {
        let mut out = Tensor::zero(self.degree, self.dim);
        for (idx, v) in &self.entries {
            let b = idx[slot];
            for a in 0..m.rows() {
                let f = m.get(a, b);
                if f.is_zero() {
                    continue;
                }
                let mut key = idx.clone();
                key[slot] = a;
                out.add_at(key, &(v * f));
            }
        }
        out
    }
}

/// `(1/q!) sum_sigma sign(sigma) t_(i o sigma)`, read off at increasing
/// indices.
pub fn antisymmetrize(t: &Tensor) -> AltTensor {
    let mut out = AltTensor::zero(t.degree(), t.dim());
    if t.degree() > t.dim() {
        return out;
    }
    let norm = Scalar::real(Rational::ONE / Rational::from_big(big_factorial(t.degree())));
    for (idx, v) in t.entries() {
        if let Some((m, s)) = canonicalize(idx) {
            out.add_signed(m, s, &(v * &norm));
        }
    }
    out
}

fn big_factorial(n: usize) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(factorial(n).into())
}

/// Raw contraction of the last `shared` slots of `a` with the first
/// `shared` slots of `b`, positionally. With a metric, slot pairs are
/// joined through it: `a_(.. l) metric[l][m] b_(m ..)`; pass an inverse
/// form to raise indices.
pub fn contract(a: &Tensor, b: &Tensor, shared: usize, metric: Option<&Matrix>) -> Result<Tensor, Error> {
    if a.dim() != b.dim() || shared > a.degree() || shared > b.degree() {
        return Err(Error::DimensionMismatch(format!(
            "contract degrees {} and {} over {shared} slots (dims {}, {})",
            a.degree(),
            b.degree(),
            a.dim(),
            b.dim()
        )));
    }
    let p = a.degree();
    let mut a = a.clone();
    if let Some(g) = metric {
        if g.rows() != a.dim() || g.cols() != a.dim() {
            return Err(Error::DimensionMismatch("metric shape".into()));
        }
        let gt = g.transpose();
        for slot in p - shared..p {
            a = a.transform_slot(slot, &gt);
        }
    }
    let mut by_prefix: BTreeMap<&[usize], Vec<(&[usize], &Scalar)>> = BTreeMap::new();
    for (idx, v) in b.entries() {
        by_prefix.entry(&idx[..shared]).or_default().push((&idx[shared..], v));
    }
    let mut out = Tensor::zero(p + b.degree() - 2 * shared, a.dim());
    for (idx, va) in a.entries() {
        if let Some(rows) = by_prefix.get(&idx[p - shared..]) {
            for (rest, vb) in rows {
                let mut key = idx[..p - shared].to_vec();
                key.extend_from_slice(rest);
                out.add_at(key, &(va * *vb));
            }
        }
    }
    Ok(out)
}

/// Contraction followed by antisymmetrization over the free indices,
/// normalized so that `shared = 0` is exactly the unweighted wedge product.
pub fn alt_contract(a: &AltTensor, b: &AltTensor, shared: usize, metric: Option<&Matrix>) -> Result<AltTensor, Error> {
    let raw = contract(&a.to_tensor(), &b.to_tensor(), shared, metric)?;
    let (p, q) = (a.degree() - shared, b.degree() - shared);
    let weight = Rational::from_big(big_factorial(p + q)) / Rational::from_big(big_factorial(p) * big_factorial(q));
    Ok(antisymmetrize(&raw).scale(&Scalar::real(weight)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levi_civita3() -> AltTensor {
        AltTensor::basis(3, 0b111)
    }

    #[test]
    fn antisymmetrize_half() {
        let mut t = Tensor::zero(2, 2);
        t.set(vec![0, 1], Scalar::ONE);
        let a = antisymmetrize(&t);
        assert_eq!(a.get(&[0, 1]).unwrap(), Scalar::frac(1, 2).unwrap());
        assert_eq!(a.get(&[1, 0]).unwrap(), Scalar::frac(-1, 2).unwrap());
    }

    #[test]
    fn epsilon_contracted_twice_is_two_delta() {
        let e = levi_civita3().to_tensor();
        let c = contract(&e, &e, 2, None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { Scalar::from_int(2) } else { Scalar::ZERO };
                assert_eq!(c.get(&[i, j]), want);
            }
        }
        // antisymmetric part of a symmetric result vanishes
        assert!(alt_contract(&levi_civita3(), &levi_civita3(), 2, None).unwrap().is_zero());
    }

    #[test]
    fn contraction_with_metric() {
        let e = levi_civita3();
        let g = Matrix::identity(3).scale(&Scalar::from_int(-2));
        let plain = alt_contract(&e, &e, 1, None).unwrap();
        let raised = alt_contract(&e, &e, 1, Some(&g)).unwrap();
        assert_eq!(raised, plain.scale(&Scalar::from_int(-2)));
    }

    #[test]
    fn zero_shared_is_wedge() {
        let a = AltTensor::basis(4, 0b0011);
        let b = AltTensor::basis(4, 0b0100);
        assert_eq!(alt_contract(&a, &b, 0, None).unwrap(), a.wedge(&b).unwrap());
    }
}
