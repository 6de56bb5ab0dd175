//! Spline bases, boundary reductions and grid construction.

pub mod grids;
pub mod spline;

pub use grids::{build_alpha_grid, build_rho_grid, eval_tensor, Grid2D};
pub use spline::{EndCondition, ReducedBasis, SplineBasis1D};
