//! Generalized coherent states on a truncated Fock space.
//!
//! The crate builds the Fock expansions of the standard, nonlinear,
//! q-deformed, spin, SU(1,1), Susskind–Glogower and deformed-binomial
//! coherent-state families; computes their photon-counting statistics;
//! certifies their resolutions of the identity by quadrature; and implements
//! the coherent-state quantization map.

pub mod cli;
pub mod error;
pub mod families;
pub mod fock;
pub mod photostats;
pub mod quadrature;
pub mod quantize;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
