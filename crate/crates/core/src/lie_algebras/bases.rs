//! Rational matrix bases.
//!
//! The compact real forms are used throughout, so every simple basis is
//! anti-hermitian and the Killing form is negative definite.

use super::catalog::{AlgebraLabel, Series};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::tensor_core::Scalar;

fn e(n: usize, r: usize, c: usize) -> Matrix {
    Matrix::unit(n, r, c)
}

fn half() -> Scalar {
    Scalar::frac(1, 2).expect("nonzero")
}

/// `su(n)` as `-(i/2) lambda` with `lambda` running over the symmetric and
/// antisymmetric off-diagonal Gell-Mann type matrices (pairwise, `j < k`)
/// followed by `diag(e_j - e_(j+1))`. For `n = 2` this is `-(i/2) sigma_a`.
pub fn special_unitary(n: usize) -> Vec<Matrix> {
    let mi2 = Scalar::imag(-half().re);
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in j + 1..n {
            let sym = e(n, j, k).add(&e(n, k, j));
            out.push(sym.scale(&mi2));
            let anti = e(n, j, k).sub(&e(n, k, j));
            out.push(anti.scale(&-half()));
        }
    }
    for j in 0..n - 1 {
        let h = e(n, j, j).sub(&e(n, j + 1, j + 1));
        out.push(h.scale(&mi2));
    }
    out
}

/// `so(n)`: `E_jk - E_kj` for `j < k`, lexicographic.
pub fn special_orthogonal(n: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for k in j + 1..n {
            out.push(e(n, j, k).sub(&e(n, k, j)));
        }
    }
    out
}

/// Compact `sp(l)`: the `2l x 2l` matrices `[[A, B], [-conj(B), conj(A)]]`
/// with `A` anti-hermitian and `B` symmetric, which are exactly the
/// anti-hermitian solutions of `X^T J + J X = 0`.
pub fn compact_symplectic(l: usize) -> Vec<Matrix> {
    let n = 2 * l;
    let block = |a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix| -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for r in 0..l {
            for s in 0..l {
                m.set(r, s, a.get(r, s).clone());
                m.set(r, s + l, b.get(r, s).clone());
                m.set(r + l, s, c.get(r, s).clone());
                m.set(r + l, s + l, d.get(r, s).clone());
            }
        }
        m
    };
    let z = Matrix::zeros(l, l);
    let conj = |m: &Matrix| m.conj_transpose().transpose();
    let i = Scalar::I;
    let mut out = Vec::with_capacity(l * (2 * l + 1));
    let mut push_a = |a: Matrix| {
        let d = conj(&a);
        out.push(block(&a, &z, &z, &d));
    };
    for j in 0..l {
        for k in j + 1..l {
            push_a(e(l, j, k).sub(&e(l, k, j)));
            push_a(e(l, j, k).add(&e(l, k, j)).scale(&i));
        }
    }
    for j in 0..l {
        push_a(e(l, j, j).scale(&i));
    }
    for j in 0..l {
        for k in j..l {
            let s = if j == k { e(l, j, j) } else { e(l, j, k).add(&e(l, k, j)) };
            for b in [s.clone(), s.scale(&i)] {
                let c = conj(&b).scale(&Scalar::from_int(-1));
                out.push(block(&z, &b, &c, &z));
            }
        }
    }
    out
}

/// The symplectic unit `J = [[0, I], [-I, 0]]`.
pub fn symplectic_unit(l: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * l, 2 * l);
    for r in 0..l {
        j.set(r, r + l, Scalar::ONE);
        j.set(r + l, r, Scalar::from_int(-1));
    }
    j
}

pub fn heisenberg() -> Vec<Matrix> {
    vec![e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)]
}

pub fn abelian(n: usize) -> Vec<Matrix> {
    (0..n).map(|i| e(n, i, i)).collect()
}

pub fn generators(label: &AlgebraLabel) -> Result<Vec<Matrix>, Error> {
    Ok(match *label {
        AlgebraLabel::Classical(Series::A, l) => special_unitary(l + 1),
        AlgebraLabel::Classical(Series::B, l) => special_orthogonal(2 * l + 1),
        AlgebraLabel::Classical(Series::C, l) => compact_symplectic(l),
        AlgebraLabel::Classical(Series::D, l) => special_orthogonal(2 * l),
        AlgebraLabel::Exceptional(_) => return Err(Error::CatalogOnly(label.to_string())),
        AlgebraLabel::Abelian(n) => abelian(n),
        AlgebraLabel::Heisenberg => heisenberg(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_is_pauli_basis() {
        let g = special_unitary(2);
        let mi2 = Scalar::imag(-half().re);
        let s1 = e(2, 0, 1).add(&e(2, 1, 0)).scale(&mi2);
        assert_eq!(g[0], s1);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn bases_are_antihermitian_and_traceless() {
        for gens in [special_unitary(4), special_orthogonal(5), compact_symplectic(3)] {
            for x in &gens {
                assert_eq!(x.conj_transpose(), x.scale(&Scalar::from_int(-1)));
                assert!(x.trace().is_zero());
            }
        }
    }

    #[test]
    fn symplectic_condition() {
        for l in 1..=3 {
            let j = symplectic_unit(l);
            let gens = compact_symplectic(l);
            assert_eq!(gens.len(), l * (2 * l + 1));
            for x in &gens {
                assert!(x.transpose().mul(&j).add(&j.mul(x)).is_zero());
            }
        }
    }
}
