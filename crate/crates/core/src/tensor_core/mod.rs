//! Exact scalars and sparse tensors with antisymmetric or symmetric storage.

pub mod alt;
pub mod index;
pub mod rational;
pub mod scalar;
pub mod sym;
pub mod tensor;

pub use alt::{AltTensor, AltTensorJson, EntryJson};
pub use index::{Mask, MultiIndex, MAX_DIM};
pub use rational::Rational;
pub use scalar::{Scalar, ScalarJson};
pub use sym::{multisets, SymTensor};
pub use tensor::{alt_contract, antisymmetrize, contract, Tensor};
