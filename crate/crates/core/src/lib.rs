//! Finite quotients `G_{p^k} = SO(3)_p mod p^k` of the compact p-adic rotation
//! group: exact construction, structural invariants, and two-dimensional
//! ("qubit") representations.

pub mod cmat;
pub mod degrees;
pub mod dihedral;
pub mod error;
pub mod form;
pub mod group;
pub mod io;
pub mod matrix;
pub mod modular;
pub mod norm_one;
pub mod qubit;
pub mod report;
pub mod rotation;

pub use cmat::CMat2;
pub use error::{Error, Result};
pub use form::{make_form, FormSpec};
pub use group::{Budget, FiniteMatrixGroup};
pub use matrix::Mat3;
pub use modular::{ModInt, Modulus};

/// Double-precision 2×2 complex matrix, the codomain of the qubit representations.
pub type ComplexMat2 = CMat2<f64>;
pub type ComplexMat2F32 = CMat2<f32>;
