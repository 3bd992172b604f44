use crate::error::Error;
use crate::tensor_core::index::{concat_sign, factorial, front_sign, sub_subsets};
use crate::tensor_core::{AltTensor, Mask, Scalar};

/// A multivector with constant coefficients: component `I` (sorted) is the
/// coefficient of `X_{i1} ^ .. ^ X_{iq}`.
pub type ConstantMultivector = AltTensor;

fn check_structure(s: usize, structure: &[AltTensor]) -> Result<usize, Error> {
    if s % 2 == 1 || s == 0 {
        return Err(Error::DegreeParity(format!("the coderivation needs an even bracket order, got {s}")));
    }
    let d = structure.len();
    if structure.iter().any(|t| t.degree() != s || t.dim() != d) {
        return Err(Error::DimensionMismatch(format!("structure constants are not {s}-ary on dim {d}")));
    }
    Ok(d)
}

/// The splits `K = A u B` with `|A| = s` and the sign of `A ++ B`.
pub fn coderivation_splits(k: Mask, s: usize) -> Vec<(i32, Mask, Mask)> {
    sub_subsets(k, s).into_iter().map(|a| (concat_sign(a, k & !a).expect("disjoint"), a, k & !a)).collect()
}

/// `d_s(X_K) = sum_{K = A u B} sign(A, B) [X_A] ^ X_B`, with
/// `[X_A] = Omega_A^r X_r` and zero when `s > |K|`.
pub fn coderivation(s: usize, structure: &[AltTensor], v: &ConstantMultivector) -> Result<ConstantMultivector, Error> {
    let d = check_structure(s, structure)?;
    if v.dim() != d {
        return Err(Error::DimensionMismatch(format!("multivector on dim {} for an algebra of dim {d}", v.dim())));
    }
    let n = v.degree();
    if s > n {
        return Ok(AltTensor::zero(n.saturating_sub(s - 1), d));
    }
    let mut out = AltTensor::zero(n - s + 1, d);
    for (k, x) in v.entries() {
        for (sign, a, b) in coderivation_splits(k, s) {
            for (r, om) in structure.iter().enumerate() {
                if b >> r & 1 == 1 {
                    continue;
                }
                if let Some(c) = om.get_mask(a) {
                    out.add_signed(b | 1 << r, sign * front_sign(b, r), &(x * c));
                }
            }
        }
    }
    Ok(out)
}

/// `(d~ alpha)_K = sum_{K = A u B, |A| = s} sign(A, B) Omega_A^r alpha_{r B}`:
/// the derivation of degree `s - 1` on forms with `d~ omega^r = Omega^r`.
/// For `s = 2` and `Omega = C` this is minus the coboundary.
pub fn dual_derivation(s: usize, structure: &[AltTensor], alpha: &AltTensor) -> Result<AltTensor, Error> {
    let d = check_structure(s, structure)?;
    if alpha.dim() != d {
        return Err(Error::DimensionMismatch(format!("form on dim {} for an algebra of dim {d}", alpha.dim())));
    }
    let n = alpha.degree();
    let mut out = AltTensor::zero(n + s - 1, d);
    if n == 0 || n + s - 1 > d {
        return Ok(out);
    }
    for k in crate::tensor_core::index::subsets(d, n + s - 1) {
        let mut acc = Scalar::ZERO;
        for (sign, a, b) in coderivation_splits(k, s) {
            for (r, om) in structure.iter().enumerate() {
                if b >> r & 1 == 1 {
                    continue;
                }
                let (Some(c), Some(w)) = (om.get_mask(a), alpha.get_mask(b | 1 << r)) else { continue };
                let t = c * w;
                if sign * front_sign(b, r) > 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
        }
        out.add_at(k, &acc);
    }
    Ok(out)
}

/// `<alpha, V> = n! sum_I alpha_I V_I`, the evaluation of an `n`-form on an
/// `n`-vector with both wedges unweighted.
pub fn pairing(alpha: &AltTensor, v: &ConstantMultivector) -> Result<Scalar, Error> {
    if alpha.degree() != v.degree() || alpha.dim() != v.dim() {
        return Err(Error::DimensionMismatch("form and multivector shapes differ".into()));
    }
    let mut acc = Scalar::ZERO;
    for (m, x) in alpha.entries() {
        if let Some(y) = v.get_mask(m) {
            acc.add_mul(x, y);
        }
    }
    Ok(acc * Scalar::from_int(factorial(alpha.degree()) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebras::LieAlgebra;

    fn su2() -> Vec<AltTensor> {
        LieAlgebra::from_label("A1").unwrap().structure().as_cochain().into_components()
    }

    #[test]
    fn three_vector_expansion() {
        // d(X0^X1^X2) = [X0,X1]^X2 - [X0,X2]^X1 + [X1,X2]^X0 = X2^X2 - (-X1)^X1 + X0^X0 = 0
        let c = su2();
        let v = AltTensor::basis(3, 0b111);
        assert!(coderivation(2, &c, &v).unwrap().is_zero());
        // d(X0^X1) = [X0,X1] = X2
        assert_eq!(coderivation(2, &c, &AltTensor::basis(3, 0b011)).unwrap(), AltTensor::basis(3, 0b100));
        assert_eq!(coderivation_splits(0b111, 2).len(), 3);
    }

    #[test]
    fn order_larger_than_degree_vanishes() {
        let g = LieAlgebra::from_label("A2").unwrap();
        let s4 = crate::multibrackets::extract_structure(&g, 4).unwrap();
        let v = AltTensor::basis(8, 0b111);
        assert!(coderivation(4, s4.mixed(), &v).unwrap().is_zero());
    }

    #[test]
    fn odd_order_is_rejected() {
        assert!(matches!(coderivation(3, &su2(), &AltTensor::basis(3, 0b111)), Err(Error::DegreeParity(_))));
    }

    #[test]
    fn dual_on_a_one_form() {
        // d~ w^0 = C^0 = w^1 ^ w^2
        let out = dual_derivation(2, &su2(), &AltTensor::basis(3, 0b001)).unwrap();
        assert_eq!(out, AltTensor::basis(3, 0b110));
    }
}
