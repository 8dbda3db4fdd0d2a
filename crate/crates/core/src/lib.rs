//! Explicit supports of minimum-weight codewords of extended binary BCH
//! codes of designed distance `2^(m-1-s) - 2^(m-1-i-s)`, together with an
//! independent power-sum verifier.

pub mod construct;
pub mod error;
pub mod gf2m;
pub mod gflinalg;
pub mod linearized;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use gf2m::{Elem, Field};
