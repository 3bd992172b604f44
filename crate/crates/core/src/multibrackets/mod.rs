//! Matrix multibrackets, the higher-order structure constants they define,
//! and the generalized Jacobi identities they satisfy.

mod gji;
mod sh;

use rayon::prelude::*;

pub use gji::{
    back_slot, cocycle_condition_residual, gji_residual, gji_residual_lowered, interior, nested_multibracket_sum,
    odd_gji_witness,
    OddGjiReport,
};
pub use sh::{sh_identity_check, SkewMap};

use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::linalg::{Matrix, SpanDecomposer};
use crate::tensor_core::index::{canonicalize, indices, subsets};
use crate::tensor_core::{AltTensor, Mask, Scalar};

/// Largest number of arguments accepted by [`multibracket`].
pub const MAX_BRACKET_ARGS: usize = 12;

/// `[X_1, .., X_n] = sum_sigma sign(sigma) X_sigma(1) .. X_sigma(n)`.
pub fn multibracket(mats: &[Matrix]) -> Result<Matrix, Error> {
    let n = mats.len();
    if n == 0 {
        return Err(Error::NotApplicable("a multibracket needs at least one argument".into()));
    }
    if n > MAX_BRACKET_ARGS {
        return Err(Error::ResourceGuard(format!("{n} arguments exceed the limit of {MAX_BRACKET_ARGS}")));
    }
    let (r, c) = (mats[0].rows(), mats[0].cols());
    if r != c || mats.iter().any(|m| m.rows() != r || m.cols() != c) {
        return Err(Error::DimensionMismatch("multibracket arguments must be square and of equal size".into()));
    }
    // signed sums over orderings of each subset, built up by size
    let full: usize = (1 << n) - 1;
    let mut table: Vec<Option<Matrix>> = vec![None; 1 << n];
    table[0] = Some(Matrix::identity(r));
    for size in 1..=n {
        for s in subsets(n, size) {
            let s = s as usize;
            let mut acc = Matrix::zeros(r, r);
            for (pos, a) in indices(s as Mask).into_iter().enumerate() {
                let rest = table[s & !(1 << a)].as_ref().expect("smaller subsets first");
                let term = mats[a].mul(rest);
                let sign = if pos % 2 == 0 { Scalar::ONE } else { -Scalar::ONE };
                acc.axpy(&sign, &term);
            }
            table[s] = Some(acc);
        }
        if size >= 2 {
            for s in subsets(n, size - 2) {
                if s as usize != full {
                    table[s as usize] = None;
                }
            }
        }
    }
    Ok(table[full].take().expect("full set computed"))
}

/// Higher-order structure constants `W_(i1..in)^s` of an even multibracket
/// on a matrix basis, with the last index lowered by the Killing form when
/// that form is invertible.
#[derive(Clone, Debug)]
pub struct MultiBracketAlgebra {
    order: usize,
    dim: usize,
    mixed: Vec<AltTensor>,
    lowered: Option<AltTensor>,
}

impl MultiBracketAlgebra {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `W_I^s` as one `n`-form per upper index `s`.
    pub fn mixed(&self) -> &[AltTensor] {
        &self.mixed
    }

    /// `W_(I r) = W_I^s g_(s r)`, an `(n+1)`-form.
    pub fn lowered(&self) -> Option<&AltTensor> {
        self.lowered.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.mixed.iter().all(AltTensor::is_zero)
    }
}

/// Decomposes `[X_i1, .., X_in]` in `span{X_s} + span{1}` for every
/// increasing tuple, requiring a vanishing identity component.
pub fn extract_structure(g: &LieAlgebra, n: usize) -> Result<MultiBracketAlgebra, Error> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::DegreeParity(format!("multibracket order {n} is not even and at least 2")));
    }
    let gens = g.generators_or_err()?;
    let d = g.dim();
    let size = gens[0].rows();
    let mut basis: Vec<Vec<Scalar>> = gens.iter().map(|m| m.data().to_vec()).collect();
    basis.push(Matrix::identity(size).data().to_vec());
    let dec = SpanDecomposer::new(basis)?;
    let tuples = subsets(d, n);
    let coords: Vec<Result<(Mask, Vec<Scalar>), Error>> = tuples
        .par_iter()
        .map(|&mask| {
            let idx = indices(mask);
            let args: Vec<Matrix> = idx.iter().map(|&i| gens[i].clone()).collect();
            let b = multibracket(&args)?;
            let c = dec.coords(b.data()).ok_or_else(|| Error::OutsideSpan { tuple: idx.clone() })?;
            if !c[d].is_zero() {
                return Err(Error::IdentityComponent { tuple: idx, value: c[d].to_string() });
            }
            Ok((mask, c))
        })
        .collect();
    let mut mixed = vec![AltTensor::zero(n, d); d];
    for r in coords {
        let (mask, c) = r?;
        for (s, v) in c.iter().take(d).enumerate() {
            mixed[s].add_at(mask, v);
        }
    }
    let lowered = match g.killing_inverse() {
        Ok(_) => Some(lower_last(&mixed, g.killing_form())?),
        Err(_) => None,
    };
    Ok(MultiBracketAlgebra { order: n, dim: d, mixed, lowered })
}

/// `W_(I r) = W_I^s g_(s r)`, verified to be totally antisymmetric.
fn lower_last(mixed: &[AltTensor], metric: &Matrix) -> Result<AltTensor, Error> {
    let d = metric.rows();
    let n = mixed.first().map_or(0, AltTensor::degree);
    let mut per_slot: Vec<AltTensor> = vec![AltTensor::zero(n, d); d];
    for (s, form) in mixed.iter().enumerate() {
        for (r, slot) in per_slot.iter_mut().enumerate() {
            let gsr = metric.get(s, r);
            if !gsr.is_zero() {
                slot.axpy(gsr, form);
            }
        }
    }
    let mut out = AltTensor::zero(n + 1, d);
    let mut nonzero = 0usize;
    for (r, slot) in per_slot.iter().enumerate() {
        for (mask, v) in slot.entries() {
            nonzero += 1;
            if mask >> r == 0 {
                out.add_at(mask | 1 << r, v);
            }
        }
    }
    for (r, slot) in per_slot.iter().enumerate() {
        for (mask, v) in slot.entries() {
            let mut idx = indices(mask);
            idx.push(r);
            let expect = match canonicalize(&idx) {
                None => Scalar::ZERO,
                Some((m, sign)) => {
                    let x = out.get_mask(m).cloned().unwrap_or(Scalar::ZERO);
                    if sign > 0 {
                        x
                    } else {
                        -x
                    }
                }
            };
            if expect != *v {
                return Err(Error::NotAntisymmetric { index: idx });
            }
        }
    }
    if nonzero != out.nnz() * (n + 1) {
        return Err(Error::NotAntisymmetric { index: out.max_component().map(|(i, _)| i).unwrap_or_default() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_bracket_is_commutator() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let x = g.generators().unwrap();
        assert_eq!(multibracket(&x[0..2]).unwrap(), x[0].commutator(&x[1]));
        assert!(multibracket(&[x[0].clone(), x[1].clone(), x[0].clone()]).unwrap().is_zero());
    }

    #[test]
    fn su2_three_bracket_is_scalar() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let b = multibracket(g.generators().unwrap()).unwrap();
        assert!(!b.is_zero());
        assert!(b.is_scalar_multiple_of_identity().is_some());
    }

    #[test]
    fn order_two_recovers_structure_constants() {
        let g = LieAlgebra::from_label("A2").unwrap();
        let s = extract_structure(&g, 2).unwrap();
        for k in 0..8 {
            for i in 0..8 {
                for j in 0..8 {
                    assert_eq!(s.mixed()[k].get(&[i, j]).unwrap(), *g.structure().get(i, j, k));
                }
            }
        }
        assert!(s.lowered().is_some());
    }

    #[test]
    fn su2_four_bracket_is_empty() {
        let g = LieAlgebra::from_label("A1").unwrap();
        let s = extract_structure(&g, 4).unwrap();
        assert!(s.is_zero());
        assert!(s.lowered().unwrap().is_zero());
        assert!(matches!(extract_structure(&g, 3), Err(Error::DegreeParity(_))));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(multibracket(&[Matrix::identity(2), Matrix::identity(3)]).is_err());
    }
}
