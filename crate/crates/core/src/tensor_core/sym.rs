//! Sparse totally symmetric tensors, keyed by non-decreasing multi-index.

use std::collections::BTreeMap;

use super::index::binomial;
use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

/// All non-decreasing `order`-tuples over `0..dim`, in lexicographic order.
pub fn multisets(dim: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if order == 0 {
        out.push(Vec::new());
        return out;
    }
    if dim == 0 {
        return out;
    }
    let mut cur = vec![0usize; order];
    loop {
        out.push(cur.clone());
        let Some(p) = (0..order).rev().find(|&p| cur[p] + 1 < dim) else { break };
        let v = cur[p] + 1;
        for x in &mut cur[p..] {
            *x = v;
        }
    }
    out
}

impl SymTensor {
    pub fn zero(order: usize, dim: usize) -> Self {
        SymTensor { order, dim, entries: BTreeMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
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

    /// Stored components keyed by non-decreasing multi-index.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.entries.iter()
    }

    /// Component at any ordering of `idx`.
    pub fn get(&self, idx: &[usize]) -> Scalar {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) -> Result<(), Error> {
        if idx.len() != self.order || idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::DimensionMismatch(format!(
                "index {idx:?} for symmetric tensor of order {} dim {}",
                self.order, self.dim
            )));
        }
        let mut key = idx.to_vec();
        key.sort_unstable();
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
        Ok(())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.order, self.dim);
        if !s.is_zero() {
            out.entries = self.entries.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::DimensionMismatch("symmetric tensor shapes differ".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let cur = out.get(k);
            out.set(k, cur - v)?;
        }
        Ok(out)
    }

    /// Symmetrized product `(1/(p+q)!) sum_sigma a_(..) b_(..)`.
    pub fn sym_product(&self, other: &Self) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch("symmetric product of different dims".into()));
        }
        let (p, q) = (self.order, other.order);
        let n = p + q;
        let mut out = Self::zero(n, self.dim);
        let weight = Scalar::real(Rational::ONE / Rational::from_int(binomial(n, p) as i64));
        let splits = super::index::subsets(n, p);
        for key in multisets(self.dim, n) {
            let mut acc = Scalar::ZERO;
            for &s in &splits {
                let (mut left, mut right) = (Vec::with_capacity(p), Vec::with_capacity(q));
                for (r, &k) in key.iter().enumerate() {
                    if s >> r & 1 == 1 {
                        left.push(k);
                    } else {
                        right.push(k);
                    }
                }
                if let (Some(a), Some(b)) = (self.entries.get(&left), other.entries.get(&right)) {
                    acc.add_mul(a, b);
                }
            }
            if !acc.is_zero() {
                out.entries.insert(key, &acc * &weight);
            }
        }
        Ok(out)
    }

    /// Exact `lambda` with `self = lambda * other`, if one exists.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        if self.order != other.order || self.dim != other.dim {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::ZERO);
        }
        let (k, v) = other.entries.iter().next()?;
        let lambda = self.entries.get(k)?.checked_div(v).ok()?;
        (other.scale(&lambda) == *self).then_some(lambda)
    }
}
