use serde::{Deserialize, Serialize};

use super::coboundary::{coboundary, coordinates, subset_index};
use super::{Cochain, Representation};
use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::linalg::{exact_rank, Echelon, SparseRow, SpanDecomposer};
use crate::tensor_core::index::{canonicalize, front_sign, indices};
use crate::tensor_core::{AltTensor, Scalar};
use crate::verdict::Residual;

/// A subalgebra `H`, given by coordinate vectors of a spanning family.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    vectors: Vec<Vec<Scalar>>,
}

impl Subalgebra {
    /// `span{X_i : i in idx}`.
    pub fn from_indices(dim: usize, idx: &[usize]) -> Result<Self, Error> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
            return Err(Error::DimensionMismatch(format!("basis index {bad} out of range for dim {dim}")));
        }
        Ok(Subalgebra {
            vectors: idx
                .iter()
                .map(|&i| (0..dim).map(|j| if i == j { Scalar::ONE } else { Scalar::ZERO }).collect())
                .collect(),
        })
    }

    pub fn from_vectors(vectors: Vec<Vec<Scalar>>) -> Self {
        Subalgebra { vectors }
    }

    /// The span of matrices lying in the algebra's matrix span.
    pub fn from_matrices(g: &LieAlgebra, mats: &[crate::linalg::Matrix]) -> Result<Self, Error> {
        let gens = g.generators_or_err()?;
        let dec = SpanDecomposer::new(gens.iter().map(|m| m.data().to_vec()).collect())?;
        let vectors = mats
            .iter()
            .map(|m| dec.coords(m.data()).ok_or_else(|| Error::Construction("matrix outside the algebra".into())))
            .collect::<Result<_, _>>()?;
        Ok(Subalgebra { vectors })
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    /// Fails unless brackets of spanning vectors stay in the span.
    pub fn check_closed(&self, g: &LieAlgebra) -> Result<(), Error> {
        let mut e = Echelon::new(g.dim());
        for v in &self.vectors {
            e.insert(crate::linalg::dense_to_sparse(v));
        }
        for (a, u) in self.vectors.iter().enumerate() {
            for (b, v) in self.vectors.iter().enumerate().skip(a + 1) {
                let w = g.structure().bracket(u, v);
                if !e.contains(crate::linalg::dense_to_sparse(&w)) {
                    return Err(Error::Construction(format!("bracket of subalgebra vectors {a} and {b} leaves the span")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeReport {
    /// `dim C^q(g, H)`.
    pub cochain_dims: Vec<usize>,
    pub betti: Vec<usize>,
    /// Relative cochains whose coboundary leaves the relative subcomplex.
    pub closure: Residual,
}

/// Linear constraints cutting `C^q(g, H)` out of `C^q(g)`: horizontality
/// `W(h, ..) = 0` and invariance `sum_r W(.., [h, X_kr], ..) = 0`.
fn constraints(g: &LieAlgebra, h: &Subalgebra, q: usize) -> Vec<SparseRow> {
    let d = g.dim();
    let (src, index) = subset_index(d, q);
    let mut rows = Vec::new();
    for u in h.vectors() {
        if q >= 1 {
            for rest in subset_index(d, q - 1).0 {
                let mut row: SparseRow = Vec::new();
                for (a, ua) in u.iter().enumerate() {
                    if ua.is_zero() || rest >> a & 1 == 1 {
                        continue;
                    }
                    let s = front_sign(rest, a);
                    row.push((index[&(rest | 1 << a)], if s > 0 { ua.clone() } else { -ua }));
                }
                row.sort_by_key(|e| e.0);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        // ad h in coordinates: [h, X_k] = sum_a ad[a][k] X_a
        let ad: Vec<Vec<Scalar>> = (0..d)
            .map(|k| {
                let ek: Vec<Scalar> = (0..d).map(|j| if j == k { Scalar::ONE } else { Scalar::ZERO }).collect();
                g.structure().bracket(u, &ek)
            })
            .collect();
        for &mask in &src {
            let ks = indices(mask);
            let mut acc = AltTensor::zero(q, d);
            for r in 0..q {
                for (a, c) in ad[ks[r]].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut seq = ks.clone();
                    seq[r] = a;
                    if let Some((m, s)) = canonicalize(&seq) {
                        acc.add_signed(m, s, c);
                    }
                }
            }
            let mut row: SparseRow = acc.entries().map(|(m, v)| (index[&m], v.clone())).collect();
            row.sort_by_key(|e| e.0);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows
}

fn dot(row: &SparseRow, v: &SparseRow) -> Scalar {
    let mut acc = Scalar::ZERO;
    let (mut i, mut j) = (0, 0);
    while i < row.len() && j < v.len() {
        match row[i].0.cmp(&v[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc.add_mul(&row[i].1, &v[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Cohomology of the complex of `H`-basic cochains (trivial coefficients).
pub fn relative_cohomology(g: &LieAlgebra, h: &Subalgebra, max_degree: usize) -> Result<RelativeReport, Error> {
    h.check_closed(g)?;
    let d = g.dim();
    let top = max_degree.min(d);
    let rho = Representation::trivial(g);
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    let mut closure = Residual::new();
    let mut next_constraints = constraints(g, h, 0);
    for q in 0..=top {
        let cons = std::mem::take(&mut next_constraints);
        let mut e = Echelon::new(subset_index(d, q).0.len());
        for r in cons {
            e.insert(r);
        }
        let basis = e.nullspace();
        dims.push(basis.len());
        if q == d {
            ranks.push(0);
            break;
        }
        next_constraints = constraints(g, h, q + 1);
        let (src, _) = subset_index(d, q);
        let (_, dst_index) = subset_index(d, q + 1);
        let mut images = Vec::with_capacity(basis.len());
        for (b, vec) in basis.iter().enumerate() {
            let mut form = AltTensor::zero(q, d);
            for (p, x) in vec.iter().enumerate() {
                form.add_at(src[p], x);
            }
            let img = coordinates(&coboundary(g, &rho, &Cochain::scalar(form))?, &dst_index);
            for (c, row) in next_constraints.iter().enumerate() {
                closure.observe(&format!("relative closure, degree {q} basis {b}"), &[q, b, c], &dot(row, &img));
            }
            images.push(img);
        }
        ranks.push(exact_rank(&images, dst_index.len()));
    }
    let betti = super::cohomology::betti_numbers(&dims, &ranks)?;
    Ok(RelativeReport { cochain_dims: dims, betti, closure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sphere() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let h = Subalgebra::from_indices(3, &[2]).unwrap();
        let r = relative_cohomology(&g, &h, 2).unwrap();
        assert_eq!(r.betti, vec![1, 0, 1]);
        assert_eq!(r.cochain_dims, vec![1, 0, 1]);
        assert!(r.closure.is_zero());
    }

    #[test]
    fn zero_subalgebra_gives_absolute_cohomology() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let h = Subalgebra::from_vectors(vec![]);
        assert_eq!(relative_cohomology(&g, &h, 3).unwrap().betti, vec![1, 0, 0, 1]);
    }

    #[test]
    fn non_subalgebra_is_rejected() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let h = Subalgebra::from_indices(3, &[0, 1]).unwrap();
        assert!(relative_cohomology(&g, &h, 2).is_err());
    }
}
