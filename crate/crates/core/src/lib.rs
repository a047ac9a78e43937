//! Multilayer shallow-water solver for variable-density (Boussinesq) flows
//! on a staggered one-dimensional mesh, with an explicit SSP-RK3 integrator,
//! a semi-implicit IMEX-ARK2 integrator and linear analysis of the layered
//! system.

pub mod boundary;
pub mod error;
pub mod harness;
pub mod layout;
pub mod linear;
pub mod mesh;
pub mod spatial;
pub mod state;
pub mod time;

pub use error::{Error, Result};
