//! Multivector fields on `g*` with polynomial coefficients, the
//! Schouten-Nijenhuis bracket, generalized and Nambu-Poisson checks, and
//! coderivations of constant multivectors with their dual derivations.
//!
//! A `q`-vector is stored as `eta_I` on sorted `I`, meaning
//! `sum_{I sorted} eta_I d^{i1} ^ .. ^ d^{iq}` with the unweighted wedge, i.e.
//! `(1/q!) eta_{i1..iq} d^{i1} ^ .. ^ d^{iq}` summed over all orderings.

mod coderivation;
mod poisson;
mod poly;

use std::collections::BTreeMap;

use crate::error::Error;
use crate::tensor_core::index::{back_sign, concat_sign, indices, subsets};
use crate::tensor_core::{AltTensor, Mask, Scalar};
use crate::verdict::Residual;

pub use coderivation::{coderivation, coderivation_splits, dual_derivation, pairing, ConstantMultivector};
pub use poisson::{
    bracket_eval, fundamental_identity_residual, gpb_gji, gps_check, gps_coordinate_tensor, np_check, sample_point, GpsReport,
    NpReport,
};
pub use poly::{Exponents, PolyFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    vars: usize,
    degree: usize,
    coeffs: BTreeMap<Mask, PolyFunction>,
}

impl Multivector {
    pub fn zero(vars: usize, degree: usize) -> Self {
        Multivector { vars, degree, coeffs: BTreeMap::new() }
    }

    /// The constant multivector with the given components.
    pub fn constant(t: &AltTensor) -> Self {
        let mut m = Self::zero(t.dim(), t.degree());
        for (mask, v) in t.entries() {
            m.add(mask, &PolyFunction::constant(t.dim(), v.clone()));
        }
        m
    }

    /// `eta_I = sum_s Omega_I^s x_s` from mixed structure constants; with
    /// `C` this is the Lie-Poisson bivector.
    pub fn linear(mixed: &[AltTensor]) -> Result<Self, Error> {
        let d = mixed.len();
        let q = mixed.first().map_or(0, AltTensor::degree);
        if mixed.iter().any(|t| t.dim() != d || t.degree() != q) {
            return Err(Error::DimensionMismatch("mixed structure constants have inconsistent shapes".into()));
        }
        let mut m = Self::zero(d, q);
        for (s, t) in mixed.iter().enumerate() {
            for (mask, v) in t.entries() {
                let mut c = vec![Scalar::ZERO; d];
                c[s] = v.clone();
                m.add(mask, &PolyFunction::linear(&c));
            }
        }
        Ok(m)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Mask, &PolyFunction)> + '_ {
        self.coeffs.iter().map(|(&m, p)| (m, p))
    }

    /// `eta_I` for sorted `I`.
    pub fn coefficient(&self, mask: Mask) -> PolyFunction {
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| PolyFunction::zero(self.vars))
    }

    /// `eta_{i1..iq}` for any ordering, zero on repeated indices.
    pub fn component(&self, idx: &[usize]) -> PolyFunction {
        match crate::tensor_core::index::canonicalize(idx) {
            Some((m, s)) if s > 0 => self.coefficient(m),
            Some((m, _)) => self.coefficient(m).scale(&Scalar::from_int(-1)),
            None => PolyFunction::zero(self.vars),
        }
    }

    pub fn set(&mut self, idx: &[usize], p: PolyFunction) -> Result<(), Error> {
        if idx.len() != self.degree || idx.iter().any(|&i| i >= self.vars) {
            return Err(Error::DimensionMismatch(format!("index {idx:?} for a {}-vector on {} variables", self.degree, self.vars)));
        }
        let (m, s) = crate::tensor_core::index::canonicalize(idx).ok_or_else(|| Error::RepeatedIndex(idx.to_vec()))?;
        self.coeffs.remove(&m);
        self.add(m, &p.scale(&Scalar::from_int(s as i64)));
        Ok(())
    }

    pub fn add(&mut self, mask: Mask, p: &PolyFunction) {
        add_poly(&mut self.coeffs, mask, p, self.vars);
    }

    pub fn axpy(&mut self, s: &Scalar, other: &Self) {
        for (&m, p) in &other.coeffs {
            self.add(m, &p.scale(s));
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Scalar::from_int(-1), other);
        out
    }

    /// `self ^ other`.
    pub fn wedge(&self, other: &Self) -> Result<Self, Error> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars, self.degree + other.degree);
        for (&a, p) in &self.coeffs {
            for (&b, q) in &other.coeffs {
                if let Some(s) = concat_sign(a, b) {
                    let mut c = PolyFunction::zero(self.vars);
                    c.add_product(&Scalar::from_int(s as i64), p, q);
                    out.add(a | b, &c);
                }
            }
        }
        Ok(out)
    }

    /// `d/dx_i` applied to every coefficient.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars, self.degree);
        for (&m, p) in &self.coeffs {
            out.add(m, &p.derivative(i));
        }
        out
    }

    /// Right derivative by the odd symbol `d^i`: moves `d^i` to the end and
    /// deletes it.
    pub fn right_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars, self.degree.saturating_sub(1));
        for (&m, p) in &self.coeffs {
            if m >> i & 1 == 1 {
                let rest = m & !(1 << i);
                out.add(rest, &p.scale(&Scalar::from_int(back_sign(rest, i) as i64)));
            }
        }
        out
    }

    /// Componentwise residual: every nonzero polynomial coefficient.
    pub fn residual(&self, label: &str) -> Residual {
        let mut r = Residual::new();
        r.observe_zeros(subsets(self.vars, self.degree).len().saturating_sub(self.coeffs.len()));
        for (&m, p) in &self.coeffs {
            let mut idx = indices(m);
            if let Some((e, c)) = p.max_term() {
                idx.extend(e.iter().map(|&k| k as usize));
                r.observe(label, &idx, c);
            }
        }
        r
    }

    fn check_vars(&self, other: &Self) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::DimensionMismatch(format!("multivectors on {} and {} variables", self.vars, other.vars)));
        }
        Ok(())
    }
}

fn add_poly(map: &mut BTreeMap<Mask, PolyFunction>, mask: Mask, p: &PolyFunction, vars: usize) {
    if p.is_zero() {
        return;
    }
    let e = map.entry(mask).or_insert_with(|| PolyFunction::zero(vars));
    e.axpy(&Scalar::ONE, p);
    if e.is_zero() {
        map.remove(&mask);
    }
}

/// Schouten-Nijenhuis bracket of a `p`-vector and a `q`-vector:
/// `[P, Q] = sum_i (P <- d^i) (d_i Q) - (-1)^((p-1)(q-1)) (Q <- d^i) (d_i P)`.
/// On vector fields this is the commutator of derivations.
pub fn snb(a: &Multivector, b: &Multivector) -> Result<Multivector, Error> {
    a.check_vars(b)?;
    let (p, q) = (a.degree, b.degree);
    let mut out = Multivector::zero(a.vars, (p + q).saturating_sub(1));
    if p == 0 && q == 0 {
        return Ok(out);
    }
    let sign = if p % 2 == 0 && q % 2 == 0 { Scalar::from_int(-1) } else { Scalar::ONE };
    for i in 0..a.vars {
        out.axpy(&Scalar::ONE, &a.right_derivative(i).wedge(&b.derivative(i))?);
        out.axpy(&-&sign, &b.right_derivative(i).wedge(&a.derivative(i))?);
    }
    Ok(out)
}
