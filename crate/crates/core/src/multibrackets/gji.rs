use rayon::prelude::*;

use super::multibracket;
use crate::error::Error;
use crate::linalg::Matrix;
use crate::tensor_core::index::{back_sign, concat_sign, factorial, front_sign, indices, subsets};
use crate::tensor_core::{AltTensor, Scalar};
use crate::verdict::Residual;

/// `(i_s W)(J) = W(s, J)`.
pub fn interior(w: &AltTensor, s: usize) -> AltTensor {
    let mut out = AltTensor::zero(w.degree().saturating_sub(1), w.dim());
    for (mask, v) in w.entries() {
        if mask >> s & 1 == 1 {
            let rest = mask & !(1 << s);
            out.add_signed(rest, front_sign(rest, s), v);
        }
    }
    out
}

/// `J -> W(J, r)`.
pub fn back_slot(w: &AltTensor, r: usize) -> AltTensor {
    let mut out = AltTensor::zero(w.degree().saturating_sub(1), w.dim());
    for (mask, v) in w.entries() {
        if mask >> r & 1 == 1 {
            let rest = mask & !(1 << r);
            out.add_signed(rest, back_sign(rest, r), v);
        }
    }
    out
}

fn factorial_scalar(n: usize) -> Scalar {
    Scalar::from_int(i64::try_from(factorial(n)).expect("small factorial"))
}

/// The nested-bracket identity
///
/// `eps^(j1..j(n+m-1))_(i1..i(n+m-1)) A_(j1..jn)^s B_(s j(n+1)..j(n+m-1))^r`
///
/// for an inner `n`-ary bracket `A` (one `n`-form per upper index) and an
/// outer `m`-ary bracket `B` (one `m`-form per upper index `r`).
pub fn gji_residual(inner: &[AltTensor], outer: &[AltTensor]) -> Result<Residual, Error> {
    let d = inner.len();
    if outer.len() != d || inner.iter().chain(outer).any(|t| t.dim() != d) {
        return Err(Error::DimensionMismatch("bracket tensors must share one dimension".into()));
    }
    let n = inner.first().map_or(0, AltTensor::degree);
    let m = outer.first().map_or(0, AltTensor::degree);
    if n == 0 || m == 0 {
        return Err(Error::NotApplicable("brackets must take at least one argument".into()));
    }
    let weight = &factorial_scalar(n) * &factorial_scalar(m - 1);
    let degree = n + m - 1;
    let components = if degree <= d { crate::tensor_core::index::binomial(d, degree) as usize } else { 0 };
    let parts: Vec<Residual> = (0..d)
        .into_par_iter()
        .map(|r| {
            let mut acc = AltTensor::zero(degree, d);
            for (s, a) in inner.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let b = interior(&outer[r], s);
                if !b.is_zero() {
                    acc.axpy(&Scalar::ONE, &a.wedge(&b).expect("same dim"));
                }
            }
            let mut res = Residual::new();
            res.observe_alt("generalized jacobi", &[], &acc.scale(&weight), components);
            if let Some(w) = &mut res.witness {
                w.index.push(r);
            }
            res
        })
        .collect();
    Ok(merge(parts))
}

/// [`gji_residual`] with the outer bracket given by a totally antisymmetric
/// tensor whose last slot is the lowered output index.
pub fn gji_residual_lowered(inner: &[AltTensor], lowered: &AltTensor) -> Result<Residual, Error> {
    let outer: Vec<AltTensor> = (0..lowered.dim()).map(|r| back_slot(lowered, r)).collect();
    gji_residual(inner, &outer)
}

/// `eps^(j1..j(k+1))_(i1..i(k+1)) C_(j1 j2)^s W_(s j3..j(k+1))`, which
/// vanishes exactly when the `k`-form `W` is closed.
pub fn cocycle_condition_residual(c: &[AltTensor], omega: &AltTensor) -> Result<Residual, Error> {
    let d = c.len();
    if omega.dim() != d || c.iter().any(|t| t.dim() != d || t.degree() != 2) {
        return Err(Error::DimensionMismatch("structure constants and form must share one dimension".into()));
    }
    let k = omega.degree();
    if k == 0 {
        return Err(Error::NotApplicable("a 0-form has no slot to contract".into()));
    }
    let mut acc = AltTensor::zero(k + 1, d);
    for (s, cs) in c.iter().enumerate() {
        let b = interior(omega, s);
        if !cs.is_zero() && !b.is_zero() {
            acc.axpy(&Scalar::ONE, &cs.wedge(&b)?);
        }
    }
    let weight = &factorial_scalar(2) * &factorial_scalar(k - 1);
    let mut res = Residual::new();
    let components = if k < d { crate::tensor_core::index::binomial(d, k + 1) as usize } else { 0 };
    res.observe_alt("cocycle condition", &[], &acc.scale(&weight), components);
    Ok(res)
}

fn merge(parts: Vec<Residual>) -> Residual {
    parts.into_iter().fold(Residual::new(), |mut a, b| {
        a.merge(b);
        a
    })
}

/// Comparison of the nested sum over `S_(2n-1)` with the `(2n-1)`-bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddGjiReport {
    pub n: usize,
    /// `n! (n-1)! sum_(s<n) (-1)^(s(n+1))`: `n! (n-1)! n` for odd `n`, `0` for even.
    pub expected: Scalar,
    /// `lhs / [X_1, .., X_(2n-1)]` when the bracket is nonzero and the two
    /// are proportional.
    pub ratio: Option<Scalar>,
    pub bracket_is_zero: bool,
    /// `lhs - expected * [X_1, .., X_(2n-1)]`.
    pub residual: Residual,
}

/// `sum_(sigma in S_(2n-1)) sign(sigma) [[X_sigma(1), .., X_sigma(n)], .., X_sigma(2n-1)]`,
/// evaluated as `n! (n-1)!` times the sum over unshuffles.
pub fn nested_multibracket_sum(mats: &[Matrix], n: usize) -> Result<Matrix, Error> {
    if n == 0 || mats.len() != 2 * n - 1 {
        return Err(Error::DimensionMismatch(format!("{} matrices for n = {n}; need 2n - 1", mats.len())));
    }
    let total = mats.len();
    let all: u64 = (1u64 << total) - 1;
    let size = mats[0].rows();
    let terms: Vec<Result<Matrix, Error>> = subsets(total, n)
        .into_par_iter()
        .map(|a| {
            let b = all & !a;
            let sign = concat_sign(a, b).expect("disjoint");
            let inner = multibracket(&indices(a).into_iter().map(|i| mats[i].clone()).collect::<Vec<_>>())?;
            let mut args = vec![inner];
            args.extend(indices(b).into_iter().map(|i| mats[i].clone()));
            let t = multibracket(&args)?;
            Ok(if sign > 0 { t } else { t.scale(&-Scalar::ONE) })
        })
        .collect();
    let mut lhs = Matrix::zeros(size, size);
    for t in terms {
        lhs.axpy(&Scalar::ONE, &t?);
    }
    Ok(lhs.scale(&(&factorial_scalar(n) * &factorial_scalar(n - 1))))
}

/// Checks that the nested sum equals `n! (n-1)! sum_s (-1)^(s(n+1))` times
/// the `(2n-1)`-bracket of the same matrices.
pub fn odd_gji_witness(mats: &[Matrix], n: usize) -> Result<OddGjiReport, Error> {
    let lhs = nested_multibracket_sum(mats, n)?;
    let full = multibracket(mats)?;
    let count = if n % 2 == 1 { n as i64 } else { 0 };
    let expected = &(&factorial_scalar(n) * &factorial_scalar(n - 1)) * &Scalar::from_int(count);
    let diff = lhs.sub(&full.scale(&expected));
    let mut residual = Residual::new();
    for r in 0..diff.rows() {
        for c in 0..diff.cols() {
            residual.observe("nested bracket sum", &[r, c], diff.get(r, c));
        }
    }
    let ratio = (!full.is_zero()).then(|| {
        let (r, c) = (0..full.rows())
            .flat_map(|r| (0..full.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !full.get(r, c).is_zero())
            .expect("nonzero");
        let lambda = lhs.get(r, c).checked_div(full.get(r, c)).expect("nonzero");
        (lhs == full.scale(&lambda)).then_some(lambda)
    });
    Ok(OddGjiReport { n, expected, ratio: ratio.flatten(), bracket_is_zero: full.is_zero(), residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebras::bases::special_orthogonal;
    use crate::lie_algebras::LieAlgebra;
    use crate::multibrackets::extract_structure;

    #[test]
    fn interior_and_back_slot_signs() {
        let mut w = AltTensor::zero(3, 4);
        w.set(&[0, 1, 3], Scalar::ONE).unwrap();
        // W(1, 0, 3) = -1
        assert_eq!(interior(&w, 1).get(&[0, 3]).unwrap(), -Scalar::ONE);
        // W(0, 3, 1) = -1
        assert_eq!(back_slot(&w, 1).get(&[0, 3]).unwrap(), -Scalar::ONE);
    }

    #[test]
    fn jacobi_as_order_two_gji() {
        let g = LieAlgebra::from_label("A2").unwrap();
        let s = extract_structure(&g, 2).unwrap();
        assert!(gji_residual(s.mixed(), s.mixed()).unwrap().is_zero());
        assert!(gji_residual_lowered(s.mixed(), s.lowered().unwrap()).unwrap().is_zero());
        let bad = g.with_mutated_constant(0, 1, 2, &Scalar::ONE).unwrap();
        let c = bad.structure().as_cochain().into_components();
        assert!(!gji_residual(&c, &c).unwrap().is_zero());
    }

    #[test]
    fn odd_case_on_so4() {
        let x = special_orthogonal(4);
        let r = odd_gji_witness(&x[0..5], 3).unwrap();
        assert!(!r.bracket_is_zero);
        assert_eq!(r.expected, Scalar::from_int(36));
        assert_eq!(r.ratio, Some(Scalar::from_int(36)));
        assert!(r.residual.is_zero());
    }

    #[test]
    fn even_case_vanishes() {
        let x = special_orthogonal(4);
        let r = odd_gji_witness(&x[0..3], 2).unwrap();
        assert!(r.residual.is_zero());
        assert_eq!(r.expected, Scalar::ZERO);
    }
}
