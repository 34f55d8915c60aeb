//! Exact computations with the semicyclic representations of `U_q(sl_2)`
//! at `q = exp(i*pi/N)`, `N` odd: representations, R-matrix, tangle functor
//! and the balanced-word algebra behind the comparison with Kashaev's invariant.

pub mod braiding;
pub mod cyclo;
pub mod error;
pub mod evaluator;
pub mod matrix;
pub mod qcalc;
pub mod reps;
pub mod tangle;
pub mod words;

pub use cyclo::{field_spec, CycScalar, FieldElem, FieldSpec};
pub use error::{Error, Result};
pub use matrix::{Matrix, SparseVec};
pub use qcalc::QSign;
pub use reps::{Rep, RepKind};
pub use braiding::{Generator, IdentityCheck, Operator, Orientation};
