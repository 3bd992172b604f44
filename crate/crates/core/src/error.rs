use thiserror::Error;

/// Errors raised by the library. Identity checks do not use this type:
/// a failed identity is a [`crate::verdict::Residual`] with a witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("repeated index {0:?} in an antisymmetric slot")]
    RepeatedIndex(Vec<usize>),

    #[error("unknown algebra label {0:?}")]
    UnknownAlgebra(String),

    #[error("{0} is catalog-only: no matrix basis is built for it")]
    CatalogOnly(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("bilinear form is singular: {0}")]
    SingularForm(String),

    #[error("input is not invariant: component {index:?} of the residual is {value}")]
    NotInvariant { index: Vec<usize>, value: String },

    #[error("input is not a cocycle: component {index:?} of its coboundary is {value}")]
    NotCocycle { index: Vec<usize>, value: String },

    #[error("result is not totally antisymmetric at {index:?}")]
    NotAntisymmetric { index: Vec<usize> },

    #[error("result is not symmetric at {index:?}")]
    NotSymmetric { index: Vec<usize> },

    #[error("multibracket {tuple:?} has an identity component {value}")]
    IdentityComponent { tuple: Vec<usize>, value: String },

    #[error("multibracket {tuple:?} leaves the span of the basis")]
    OutsideSpan { tuple: Vec<usize> },

    #[error("degree parity: {0}")]
    DegreeParity(String),

    #[error("{label} is nonzero on the ghost monomial {monomial:?}: component {index:?} is {value}")]
    NotNilpotent { label: String, monomial: Vec<usize>, index: Vec<usize>, value: String },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),
}
