//! Chevalley-Eilenberg cochains with values in a representation, the
//! coboundary operator, cohomology dimensions, the Whitehead homotopy, the
//! cocycles attached to invariant polynomials, and relative cohomology.
//!
//! A cochain of degree `q` with values in `V` is a list of `dim V` antisymmetric
//! `q`-forms, one per basis vector of `V`. The coboundary is
//!
//! `(s W)(X_1..X_(q+1)) = sum_i (-1)^(i+1) rho(X_i) W(..^i..)
//!                      + sum_(j<k) (-1)^(j+k) W([X_j, X_k], ..^j..^k..)`.

mod coboundary;
mod cocycle;
mod cohomology;
mod relative;
mod whitehead;

pub use coboundary::{coboundary, coboundary_of_basis, coboundary_preimage};
pub use cocycle::cocycle_from_polynomial;
pub use cohomology::{check_nilpotent, cohomology, CohomologyReport, RankPolicy};
pub use relative::{relative_cohomology, RelativeReport, Subalgebra};
pub use whitehead::{casimir_operator, homotopy, whitehead_homotopy_check, WhiteheadReport};

use crate::error::Error;
use crate::lie_algebras::LieAlgebra;
use crate::linalg::Matrix;
use crate::tensor_core::{AltTensor, Mask, Scalar};
use crate::verdict::Residual;

/// A `V`-valued `q`-cochain: component `A` is the form `W^A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    dim: usize,
    components: Vec<AltTensor>,
}

impl Cochain {
    pub fn zero(degree: usize, dim: usize, values_dim: usize) -> Self {
        Cochain { degree, dim, components: vec![AltTensor::zero(degree, dim); values_dim] }
    }

    pub fn from_components(degree: usize, dim: usize, components: Vec<AltTensor>) -> Result<Self, Error> {
        if components.is_empty() || components.iter().any(|c| c.degree() != degree || c.dim() != dim) {
            return Err(Error::DimensionMismatch(format!("components of a degree-{degree} cochain on dim {dim}")));
        }
        Ok(Cochain { degree, dim, components })
    }

    /// A scalar-valued cochain.
    pub fn scalar(form: AltTensor) -> Self {
        Cochain { degree: form.degree(), dim: form.dim(), components: vec![form] }
    }

    /// The basis cochain with a unit at `(mask, a)`.
    pub fn basis(dim: usize, values_dim: usize, mask: Mask, a: usize) -> Self {
        let mut c = Self::zero(mask.count_ones() as usize, dim, values_dim);
        c.components[a] = AltTensor::basis(dim, mask);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values_dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, a: usize) -> &AltTensor {
        &self.components[a]
    }

    pub fn component_mut(&mut self, a: usize) -> &mut AltTensor {
        &mut self.components[a]
    }

    pub fn components(&self) -> &[AltTensor] {
        &self.components
    }

    pub fn into_components(self) -> Vec<AltTensor> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(AltTensor::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.components.iter().map(AltTensor::nnz).sum()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Cochain { degree: self.degree, dim: self.dim, components: self.components.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn axpy(&mut self, s: &Scalar, other: &Self) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.axpy(s, b);
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        if self.degree != other.degree || self.dim != other.dim || self.values_dim() != other.values_dim() {
            return Err(Error::DimensionMismatch("cochain shapes differ".into()));
        }
        let mut out = self.clone();
        out.axpy(&Scalar::from_int(-1), other);
        Ok(out)
    }

    /// Folds every component into a residual, indices as `[a, i1, .., iq]`.
    pub fn residual(&self, label: &str) -> Residual {
        let mut r = Residual::new();
        let per = crate::tensor_core::index::binomial(self.dim, self.degree) as usize;
        for (a, c) in self.components.iter().enumerate() {
            r.observe_alt(label, &[a], c, per);
        }
        r
    }
}

/// A representation `rho` of an algebra on `V`, as matrices `rho(X_i)`.
#[derive(Clone, Debug)]
pub struct Representation {
    name: String,
    dim_v: usize,
    matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(name: &str, matrices: Vec<Matrix>) -> Result<Self, Error> {
        let dim_v = matrices.first().map_or(1, Matrix::rows);
        if matrices.iter().any(|m| m.rows() != dim_v || m.cols() != dim_v) {
            return Err(Error::DimensionMismatch("representation matrices of different sizes".into()));
        }
        Ok(Representation { name: name.to_string(), dim_v, matrices })
    }

    /// The one-dimensional trivial representation.
    pub fn trivial(g: &LieAlgebra) -> Self {
        Representation { name: "trivial".into(), dim_v: 1, matrices: vec![Matrix::zeros(1, 1); g.dim()] }
    }

    /// The matrix basis itself acting on column vectors.
    pub fn defining(g: &LieAlgebra) -> Result<Self, Error> {
        let gens = g.generators_or_err()?.to_vec();
        let mut r = Self::new("defining", gens)?;
        r.name = "defining".into();
        Ok(r)
    }

    pub fn adjoint(g: &LieAlgebra) -> Self {
        let mats = (0..g.dim()).map(|i| g.structure().adjoint(i)).collect();
        Representation { name: "adjoint".into(), dim_v: g.dim(), matrices: mats }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(Matrix::is_zero)
    }

    /// `[rho(X_i), rho(X_j)] - C_ij^k rho(X_k)`.
    pub fn check_homomorphism(&self, g: &LieAlgebra) -> Residual {
        let mut r = Residual::new();
        let d = g.dim();
        for i in 0..d {
            for j in i + 1..d {
                let mut m = self.matrices[i].commutator(&self.matrices[j]);
                for k in 0..d {
                    m.axpy(&-g.structure().get(i, j, k), &self.matrices[k]);
                }
                for (e, v) in m.data().iter().enumerate() {
                    r.observe("representation", &[i, j, e / self.dim_v, e % self.dim_v], v);
                }
            }
        }
        r
    }
}
