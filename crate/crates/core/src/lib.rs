//! Configuration-space solver for three-body quantum scattering on cubic
//! Hermite collocation grids, covering elastic, breakup, recombination and
//! free-free processes above and below the breakup threshold.
//!
//! The pipeline: two-body bound states feed non-uniform polar grids, the
//! coupled-channel operators are assembled in hyperspherical polar
//! coordinates, the collocated linear system is solved with preconditioned
//! GMRES, and amplitudes are extracted by resampling onto Jacobi coordinates
//! and matching against asymptotic channel functions. All scattering
//! processes end up in one hybrid matrix whose unitarity and reciprocity
//! defects quantify the numerical quality.

pub mod discretization;
pub mod error;
pub mod kinematics;
pub mod operators;
pub mod quadrature;
pub mod solver;
pub mod specfun;
pub mod twobody;

pub use error::{Error, Result};
