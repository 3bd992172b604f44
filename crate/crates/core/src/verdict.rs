//! Outcomes of identity checks: exact zero, or a concrete witness.

use serde::{Deserialize, Serialize};

use crate::tensor_core::{AltTensor, Rational, Scalar};

/// One nonzero component of a residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// What the component belongs to, e.g. `"jacobi"` or `"s2^2 on c^{0,1}"`.
    pub label: String,
    pub index: Vec<usize>,
    pub value: String,
}

/// The result of evaluating an identity exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    /// Number of components inspected.
    pub checked: usize,
    /// Number of nonzero components.
    pub nonzero: usize,
    /// The nonzero component of largest modulus, if any.
    pub witness: Option<Witness>,
    #[serde(skip)]
    best: Option<Rational>,
}

impl Residual {
    pub fn new() -> Self {
        Residual { checked: 0, nonzero: 0, witness: None, best: None }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }

    /// Records one component.
    pub fn observe(&mut self, label: &str, index: &[usize], value: &Scalar) {
        self.checked += 1;
        if value.is_zero() {
            return;
        }
        self.nonzero += 1;
        let n = value.norm_sqr();
        if self.best.as_ref().map_or(true, |b| n > *b) {
            self.best = Some(n);
            self.witness = Some(Witness { label: label.to_string(), index: index.to_vec(), value: value.to_string() });
        }
    }

    /// Records `checked` components known to be zero.
    pub fn observe_zeros(&mut self, checked: usize) {
        self.checked += checked;
    }

    /// Folds an antisymmetric residual tensor in.
    pub fn observe_alt(&mut self, label: &str, prefix: &[usize], t: &AltTensor, components: usize) {
        self.checked += components.saturating_sub(t.nnz());
        for (m, v) in t.entries() {
            let mut idx = prefix.to_vec();
            idx.extend(crate::tensor_core::index::indices(m));
            self.observe(label, &idx, v);
        }
    }

    pub fn merge(&mut self, other: Residual) {
        self.checked += other.checked;
        self.nonzero += other.nonzero;
        if let (Some(w), Some(n)) = (other.witness, other.best) {
            if self.best.as_ref().map_or(true, |b| n > *b) {
                self.best = Some(n);
                self.witness = Some(w);
            }
        }
    }

    /// Short text: `"0"` or `"nonzero"`.
    pub fn verdict(&self) -> &'static str {
        if self.is_zero() {
            "0"
        } else {
            "nonzero"
        }
    }
}

impl Default for Residual {
    fn default() -> Self {
        Self::new()
    }
}
