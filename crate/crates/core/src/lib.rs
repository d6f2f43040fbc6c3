//! Exact computer algebra for Weyl polarization operators on N-fold tensor
//! products of symmetric algebras, the Zelevinsky complex, and
//! Verma–Shapovalov elements for gl_N.
//!
//! Indices (slots, variables, matrix entries, permutation positions) are
//! 1-based throughout the public API.

pub mod bruhat;
pub mod error;
pub mod json;
pub mod linalg;
pub mod pbw;
pub mod sample;
pub mod scalar;
pub mod shift;
pub mod symtensor;
pub mod verify;
pub mod verma;
pub mod weyl_ops;
pub mod zelevinsky;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default coefficient field: arbitrary-precision rationals.
pub type Q = num_rational::BigRational;
pub type SymTensorQ = symtensor::SymTensor<Q>;
pub type PolarComboQ = weyl_ops::PolarCombo<Q>;
pub type VermaTripleQ = verma::VermaTriple<Q>;
pub type UElementQ = pbw::UElement<Q>;
pub type VermaVectorQ = pbw::VermaVector<Q>;
