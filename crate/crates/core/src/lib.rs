//! Matrix weight functions on the torus for vector-valued nonsymmetric Jack
//! polynomials.

pub mod cli;
pub mod error;
pub mod jackpoly;
pub mod linalg;
pub mod localseries;
pub mod odeflow;
pub mod symgroup;
pub mod torusquad;
pub mod weightsolve;

pub use error::{Error, Result};
