//! Exact computations on torus knots: Chebyshev-curve models of the
//! SL(2,C) character variety, adjoint Reidemeister torsions, and the
//! generalized Verlinde numbers whose fusion rules certify the integrality of
//! torsion power sums.

pub mod charvar;
pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod torsion;
pub mod verlinde;

pub use error::{Error, Result};
