use crate::error::Error;
use crate::tensor_core::index::{binomial, concat_sign, front_sign, indices, subsets};
use crate::tensor_core::{AltTensor, Mask, Scalar};
use crate::verdict::Residual;

/// A skew-symmetric map `l_k: V^k -> V`, stored as one `k`-form per output
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMap {
    arity: usize,
    dim: usize,
    out: Vec<AltTensor>,
}

impl SkewMap {
    pub fn zero(arity: usize, dim: usize) -> Self {
        SkewMap { arity, dim, out: vec![AltTensor::zero(arity, dim); dim] }
    }

    /// From one `k`-form per output coordinate.
    pub fn from_components(out: Vec<AltTensor>) -> Result<Self, Error> {
        let dim = out.len();
        let arity = out.first().map_or(0, AltTensor::degree);
        if out.iter().any(|t| t.dim() != dim || t.degree() != arity) {
            return Err(Error::DimensionMismatch("skew map components must be forms of one degree on dim V".into()));
        }
        Ok(SkewMap { arity, dim, out })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[AltTensor] {
        &self.out
    }

    /// Sets the `c`-th coordinate of `l(e_idx)`.
    pub fn set(&mut self, c: usize, idx: &[usize], value: Scalar) -> Result<(), Error> {
        if c >= self.dim {
            return Err(Error::DimensionMismatch(format!("output index {c} for dim {}", self.dim)));
        }
        self.out[c].set(idx, value)
    }

    /// `l(e_i1, .., e_ik)` for an increasing tuple given as a mask.
    pub fn eval_basis(&self, mask: Mask) -> Vec<Scalar> {
        self.out.iter().map(|t| t.get_mask(mask).cloned().unwrap_or(Scalar::ZERO)).collect()
    }

    /// `l(w, e_rest..)` for a vector `w` and an increasing tuple `rest`.
    pub fn eval_first(&self, w: &[Scalar], rest: Mask) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; self.dim];
        for (a, wa) in w.iter().enumerate() {
            if wa.is_zero() || rest >> a & 1 == 1 {
                continue;
            }
            let key = rest | 1 << a;
            let coeff = if front_sign(rest, a) > 0 { wa.clone() } else { -wa };
            for (c, t) in self.out.iter().enumerate() {
                if let Some(x) = t.get_mask(key) {
                    v[c].add_mul(&coeff, x);
                }
            }
        }
        v
    }
}

/// The degree-`n` relation of a strongly homotopy Lie structure,
///
/// `sum_(i+j=n+1) (-1)^(i(j-1)) sum_(unshuffles) sign l_i(l_j(v_A), v_B)`,
///
/// evaluated on every increasing tuple of basis vectors. Missing arities
/// count as zero maps.
pub fn sh_identity_check(maps: &[SkewMap], n: usize) -> Result<Residual, Error> {
    let dim = maps.first().map_or(0, SkewMap::dim);
    if maps.iter().any(|l| l.dim() != dim) {
        return Err(Error::DimensionMismatch("SH maps must act on one space".into()));
    }
    if n == 0 {
        return Err(Error::NotApplicable("the relations start at n = 1".into()));
    }
    let by_arity = |k: usize| maps.iter().find(|l| l.arity() == k);
    let mut res = Residual::new();
    if n > dim {
        return Ok(res);
    }
    for tuple in subsets(dim, n) {
        let mut total = vec![Scalar::ZERO; dim];
        for j in 1..=n {
            let i = n + 1 - j;
            let (Some(li), Some(lj)) = (by_arity(i), by_arity(j)) else { continue };
            let outer_sign = if (i * (j - 1)) % 2 == 0 { 1 } else { -1 };
            for a in sub_masks(tuple, j) {
                let b = tuple & !a;
                let sign = outer_sign * concat_sign(a, b).expect("disjoint");
                let inner = lj.eval_basis(a);
                let v = li.eval_first(&inner, b);
                for (t, x) in total.iter_mut().zip(v) {
                    if sign > 0 {
                        *t += &x;
                    } else {
                        *t -= &x;
                    }
                }
            }
        }
        let idx = indices(tuple);
        for (c, v) in total.iter().enumerate() {
            let mut label = idx.clone();
            label.push(c);
            res.observe(&format!("SH relation n={n}"), &label, v);
        }
    }
    debug_assert_eq!(res.checked as u128, binomial(dim, n) * dim as u128);
    Ok(res)
}

fn sub_masks(mask: Mask, k: usize) -> Vec<Mask> {
    crate::tensor_core::index::sub_subsets(mask, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{solve, SparseRow};

    fn su2_bracket(dim: usize) -> SkewMap {
        let mut l2 = SkewMap::zero(2, dim);
        l2.set(2, &[0, 1], Scalar::ONE).unwrap();
        l2.set(0, &[1, 2], Scalar::ONE).unwrap();
        l2.set(1, &[2, 0], Scalar::ONE).unwrap();
        l2
    }

    #[test]
    fn differential_squares_to_zero() {
        let mut l1 = SkewMap::zero(1, 2);
        l1.set(0, &[1], Scalar::ONE).unwrap();
        assert!(sh_identity_check(&[l1.clone()], 1).unwrap().is_zero());
        l1.set(1, &[0], Scalar::ONE).unwrap();
        assert!(!sh_identity_check(&[l1], 1).unwrap().is_zero());
    }

    #[test]
    fn jacobi_for_su2_bracket() {
        assert!(sh_identity_check(&[su2_bracket(3)], 3).unwrap().is_zero());
    }

    #[test]
    fn homotopy_corrects_a_broken_jacobi() {
        // l2: su(2) on e0..e2 with [e0, e2] += e2 and [e0, e3] = e3; l1: e3 -> e0
        let dim = 4;
        let mut l2 = su2_bracket(dim);
        l2.set(2, &[0, 2], Scalar::ONE).unwrap();
        l2.set(3, &[0, 3], Scalar::ONE).unwrap();
        let mut l1 = SkewMap::zero(1, dim);
        l1.set(0, &[3], Scalar::ONE).unwrap();
        assert!(sh_identity_check(&[l1.clone()], 1).unwrap().is_zero());
        let broken = sh_identity_check(&[l1.clone(), l2.clone()], 3).unwrap();
        assert!(!broken.is_zero());

        // the n = 3 relation is affine in l3; solve for l3
        let triples = subsets(dim, 3);
        let unknowns: Vec<(usize, Mask)> = (0..dim).flat_map(|c| triples.iter().map(move |&t| (c, t))).collect();
        let eval = |l3: &SkewMap| -> Vec<Scalar> {
            let maps = [l1.clone(), l2.clone(), l3.clone()];
            let mut out = Vec::new();
            for tuple in subsets(dim, 3) {
                let mut total = vec![Scalar::ZERO; dim];
                for j in 1..=3 {
                    let i = 4 - j;
                    let li = maps.iter().find(|l| l.arity() == i).unwrap();
                    let lj = maps.iter().find(|l| l.arity() == j).unwrap();
                    for a in sub_masks(tuple, j) {
                        let b = tuple & !a;
                        let s = concat_sign(a, b).unwrap();
                        for (t, x) in total.iter_mut().zip(li.eval_first(&lj.eval_basis(a), b)) {
                            if s > 0 {
                                *t += &x
                            } else {
                                *t -= &x
                            }
                        }
                    }
                }
                out.extend(total);
            }
            out
        };
        let base = eval(&SkewMap::zero(3, dim));
        let mut rows: Vec<SparseRow> = vec![Vec::new(); base.len()];
        for (col, &(c, t)) in unknowns.iter().enumerate() {
            let mut l3 = SkewMap::zero(3, dim);
            l3.out[c].add_at(t, &Scalar::ONE);
            for (r, (v, b)) in eval(&l3).iter().zip(&base).enumerate() {
                let d = v - b;
                if !d.is_zero() {
                    rows[r].push((col, d));
                }
            }
        }
        let rhs: Vec<Scalar> = base.iter().map(|b| -b).collect();
        let x = solve(&rows, &rhs, unknowns.len()).expect("a correcting l3 exists");
        let mut l3 = SkewMap::zero(3, dim);
        for (&(c, t), v) in unknowns.iter().zip(&x) {
            l3.out[c].add_at(t, v);
        }
        assert!(!l3.out.iter().all(AltTensor::is_zero));
        assert!(sh_identity_check(&[l1.clone(), l2.clone(), l3.clone()], 3).unwrap().is_zero());
        // an unbalanced correction leaves a residual
        let half = SkewMap::from_components(l3.out.iter().map(|t| t.scale(&Scalar::frac(1, 2).unwrap())).collect()).unwrap();
        assert!(!sh_identity_check(&[l1, l2, half], 3).unwrap().is_zero());
    }
}
