//! Special functions used by the scattering machinery: Riccati-Bessel and
//! Riccati-Hankel functions, cylindrical Bessel/Hankel functions of real
//! order, Jacobi polynomials and Delves functions.
//!
//! All routines are pure and thread-safe. Arguments off the positive real
//! axis are out of scope.

mod cylinder;
pub mod gamma;
mod jacobi_poly;
mod riccati;

mod delves;

pub use cylinder::{
    bessel_j, bessel_j_deriv, bessel_y, hankel_plus, hankel_plus_asymptotic, hankel_plus_deriv,
};
pub use delves::{delves, DelvesIndex};
pub use jacobi_poly::jacobi_poly;
pub use riccati::{riccati_h_plus, riccati_h_plus_deriv, riccati_j, riccati_j_deriv, riccati_n};
