//! Sparse totally antisymmetric tensors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::index::{canonicalize, concat_sign, indices, Mask, MAX_DIM};
use super::scalar::{Scalar, ScalarJson};
use super::tensor::Tensor;
use crate::error::Error;

/// A totally antisymmetric covariant tensor of a given degree.
///
/// Only components with strictly increasing indices are stored. The stored
/// value at `i1 < .. < iq` is the coefficient of `w^i1 ^ .. ^ w^iq` in the
/// unweighted exterior basis, which is also the value of the form on
/// `(X_i1, .., X_iq)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AltTensor {
    degree: usize,
    dim: usize,
    entries: BTreeMap<Mask, Scalar>,
}

impl AltTensor {
    pub fn zero(degree: usize, dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        AltTensor { degree, dim, entries: BTreeMap::new() }
    }

    /// The `degree`-form with a single unit component at `mask`.
    pub fn basis(dim: usize, mask: Mask) -> Self {
        let mut t = Self::zero(mask.count_ones() as usize, dim);
        t.entries.insert(mask, Scalar::ONE);
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored components keyed by increasing multi-index.
    pub fn entries(&self) -> impl Iterator<Item = (Mask, &Scalar)> + '_ {
        self.entries.iter().map(|(m, v)| (*m, v))
    }

    pub fn get_mask(&self, mask: Mask) -> Option<&Scalar> {
        self.entries.get(&mask)
    }

    fn check_index(&self, idx: &[usize]) -> Result<(), Error> {
        if idx.len() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "index {idx:?} has length {}, tensor degree is {}",
                idx.len(),
                self.degree
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::DimensionMismatch(format!("index {bad} out of range for dim {}", self.dim)));
        }
        Ok(())
    }

    /// Component at an arbitrary ordering of indices, with the permutation
    /// sign applied. Repeated indices read as zero.
    pub fn get(&self, idx: &[usize]) -> Result<Scalar, Error> {
        self.check_index(idx)?;
        Ok(match canonicalize(idx) {
            None => Scalar::ZERO,
            Some((m, s)) => match self.entries.get(&m) {
                None => Scalar::ZERO,
                Some(v) if s > 0 => v.clone(),
                Some(v) => -v,
            },
        })
    }

    /// Sets the component at `idx` (any ordering), storing it with sign.
    pub fn set(&mut self, idx: &[usize], value: Scalar) -> Result<(), Error> {
        self.check_index(idx)?;
        match canonicalize(idx) {
            None if value.is_zero() => Ok(()),
            None => Err(Error::RepeatedIndex(idx.to_vec())),
            Some((m, s)) => {
                let v = if s > 0 { value } else { -value };
                if v.is_zero() {
                    self.entries.remove(&m);
                } else {
                    self.entries.insert(m, v);
                }
                Ok(())
            }
        }
    }

    /// Adds `value` to the stored component at `mask`.
    #[inline]
    pub fn add_at(&mut self, mask: Mask, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        match self.entries.get_mut(&mask) {
            Some(v) => {
                *v += value;
                if v.is_zero() {
                    self.entries.remove(&mask);
                }
            }
            None => {
                self.entries.insert(mask, value.clone());
            }
        }
    }

    /// Adds `sign * value` at `mask`.
    #[inline]
    pub fn add_signed(&mut self, mask: Mask, sign: i32, value: &Scalar) {
        if sign > 0 {
            self.add_at(mask, value);
        } else {
            self.add_at(mask, &-value);
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree, self.dim);
        }
        AltTensor {
            degree: self.degree,
            dim: self.dim,
            entries: self.entries.iter().map(|(m, v)| (*m, v * s)).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), Error> {
        if self.degree != other.degree || self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "shape ({}, {}) vs ({}, {})",
                self.degree, self.dim, other.degree, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (m, v) in &other.entries {
            out.add_at(*m, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: &Scalar, other: &Self) {
        debug_assert!(self.degree == other.degree && self.dim == other.dim);
        if s.is_zero() {
            return;
        }
        for (m, v) in &other.entries {
            self.add_at(*m, &(v * s));
        }
    }

    /// Unweighted wedge product: `(w^I) ^ (w^J) = sign * w^(I u J)`.
    pub fn wedge(&self, other: &Self) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("wedge of dims {} and {}", self.dim, other.dim)));
        }
        let mut out = Self::zero(self.degree + other.degree, self.dim);
        if out.degree > self.dim {
            return Ok(out);
        }
        for (a, va) in &self.entries {
            for (b, vb) in &other.entries {
                if let Some(s) = concat_sign(*a, *b) {
                    let p = va * vb;
                    out.add_signed(a | b, s, &p);
                }
            }
        }
        Ok(out)
    }

    /// Full expansion into a general tensor (every ordering of every index).
    pub fn to_tensor(&self) -> Tensor {
        let mut t = Tensor::zero(self.degree, self.dim);
        let perms = super::index::permutations(self.degree);
        for (m, v) in &self.entries {
            let idx = indices(*m);
            for (p, s) in &perms {
                let key: Vec<usize> = p.iter().map(|&k| idx[k]).collect();
                t.set(key, if *s > 0 { v.clone() } else { -v });
            }
        }
        t
    }

    /// Component of largest modulus, ties broken by index order.
    pub fn max_component(&self) -> Option<(Vec<usize>, Scalar)> {
        let mut best: Option<(Mask, &Scalar, _)> = None;
        for (m, v) in &self.entries {
            let n = v.norm_sqr();
            if best.as_ref().map_or(true, |(_, _, bn)| n > *bn) {
                best = Some((*m, v, n));
            }
        }
        best.map(|(m, v, _)| (indices(m), v.clone()))
    }

    /// Exact `lambda` with `self = lambda * other`, if one exists.
    /// Two zero tensors are related by `lambda = 0`.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        if self.degree != other.degree || self.dim != other.dim {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::ZERO);
        }
        let (m, v) = other.entries.iter().next()?;
        let lambda = self.entries.get(m)?.checked_div(v).ok()?;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    pub fn to_json(&self) -> AltTensorJson {
        let mut entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|(m, v)| {
                let s = ScalarJson::from(v);
                EntryJson { idx: indices(*m), re: s.re, im: s.im }
            })
            .collect();
        entries.sort_by(|a, b| a.idx.cmp(&b.idx));
        AltTensorJson { degree: self.degree, dim: self.dim, entries }
    }

    pub fn from_json(j: &AltTensorJson) -> Result<Self, Error> {
        if j.dim > MAX_DIM {
            return Err(Error::DimensionMismatch(format!("dim {} exceeds {MAX_DIM}", j.dim)));
        }
        let mut t = Self::zero(j.degree, j.dim);
        for e in &j.entries {
            let v = Scalar::try_from(&ScalarJson { re: e.re.clone(), im: e.im.clone() })?;
            let prior = t.get(&e.idx)?;
            t.set(&e.idx, prior + v)?;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EntryJson {
    pub idx: Vec<usize>,
    pub re: String,
    pub im: String,
}

/// Wire form of an [`AltTensor`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AltTensorJson {
    pub degree: usize,
    pub dim: usize,
    pub entries: Vec<EntryJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_form(dim: usize, i: usize) -> AltTensor {
        AltTensor::basis(dim, 1 << i)
    }

    #[test]
    fn signed_access() {
        let mut t = AltTensor::zero(3, 4);
        t.set(&[2, 0, 1], Scalar::from_int(5)).unwrap();
        assert_eq!(t.get(&[0, 1, 2]).unwrap(), Scalar::from_int(5));
        assert_eq!(t.get(&[1, 0, 2]).unwrap(), Scalar::from_int(-5));
        assert_eq!(t.get(&[1, 1, 2]).unwrap(), Scalar::ZERO);
        assert!(t.set(&[1, 1, 2], Scalar::ONE).is_err());
        assert!(t.get(&[0, 1, 4]).is_err());
    }

    #[test]
    fn wedge_of_three_one_forms() {
        let w = one_form(3, 0).wedge(&one_form(3, 1)).unwrap().wedge(&one_form(3, 2)).unwrap();
        assert_eq!(w.nnz(), 1);
        assert_eq!(w.get(&[0, 1, 2]).unwrap(), Scalar::ONE);
        let rev = one_form(3, 1).wedge(&one_form(3, 0)).unwrap();
        assert_eq!(rev.get(&[0, 1]).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn wedge_above_dimension_is_zero() {
        let a = AltTensor::basis(3, 0b011);
        let b = AltTensor::basis(3, 0b110);
        assert!(a.wedge(&b).unwrap().is_zero());
        assert!(a.wedge(&AltTensor::zero(3, 4)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut t = AltTensor::zero(2, 3);
        t.set(&[0, 2], Scalar::frac(-3, 7).unwrap()).unwrap();
        t.set(&[1, 2], Scalar::I).unwrap();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let back: AltTensorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AltTensor::from_json(&back).unwrap(), t);
        assert!(text.contains("\"-3/7\""));
    }

    #[test]
    fn ratio() {
        let a = AltTensor::basis(3, 0b011).scale(&Scalar::from_int(3));
        let b = AltTensor::basis(3, 0b011);
        assert_eq!(a.ratio_to(&b), Some(Scalar::from_int(3)));
        assert_eq!(a.ratio_to(&AltTensor::basis(3, 0b101)), None);
    }
}
