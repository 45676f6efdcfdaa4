// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod interp;
pub mod model_rhp;
pub mod ode;
pub mod pde;
pub mod quadrature;
pub mod scattering;
pub mod specfun;

pub use error::{Error, Result};
