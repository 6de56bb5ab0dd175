//! Incoming-state construction: outgoing-flux-free states interpolated onto
//! the tensor spline basis.
//!
//! A (1+2) state is the bound pair times a regular Riccati wave in the
//! spectator coordinate. A (1+1+1) state is a Delves profile times the
//! regular cylindrical wave of matching order, which solves the free polar
//! equation exactly and tends to `i(alpha) J_0(k rho)` at large hyperradius
//! (the orders here are even, so the asymptotic phases of all terms agree).

use crate::discretization::Grid2D;
use crate::error::{Error, Result};
use crate::kinematics::MassSystem;
use crate::operators::jacobi_transform_swave;
use crate::quadrature::gauss_legendre;
use crate::specfun::bessel_j;
use crate::twobody::BoundState;
use ndarray::Array2;
use num_complex::Complex64 as C64;

/// Which channel function carries the incident flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncomingKind {
    /// Bound pair plus free spectator in the given channel.
    BoundPlaneWave { channel: usize },
    /// Three free particles: cylindrical wave in the given channel with the
    /// n-th s-wave Delves profile (order nu = 2(n+1)).
    CylindricalWave { channel: usize, delves_n: u32 },
}

/// Incident state: spline coefficients per channel plus its bookkeeping.
#[derive(Debug, Clone)]
pub struct IncomingState {
    pub kind: IncomingKind,
    /// Mass-scaled spectator momentum of the open (1+2) channel.
    pub q: f64,
    /// Mass-scaled breakup momentum (zero below threshold).
    pub k: f64,
    /// Full-basis tensor coefficients per channel.
    pub chi_full: Vec<Array2<C64>>,
    /// Scale c of the incident profile `i(alpha) = c D_nu(alpha)`
    /// (1 for a bound plane wave).
    pub profile_norm: f64,
}

/// Scale factor c making `i = c D_nu` carry unit incident flux under the
/// hybrid pairing: `Int i (i + w_aa K[i]) dalpha = 1` with the kernel summed
/// over both rearrangements.
pub fn incident_normalization(
    ms: &MassSystem,
    w_diag: f64,
    nu: u32,
    quad_order: usize,
) -> Result<f64> {
    let idx = crate::specfun::DelvesIndex::new(0, 0, (nu - 2) / 2);
    let d = move |a: f64| crate::specfun::delves(idx, a);
    let (nodes, weights) = gauss_legendre(128);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut plain = 0.0;
    let mut coupled = 0.0;
    for (&t, &w) in nodes.iter().zip(&weights) {
        let alpha = 0.5 * half_pi * (t + 1.0);
        let wa = 0.5 * half_pi * w;
        let da = d(alpha);
        plain += wa * da * da;
        let k12 = jacobi_transform_swave(ms, 1, 2, &d, alpha, quad_order)?;
        let k13 = jacobi_transform_swave(ms, 1, 3, &d, alpha, quad_order)?;
        coupled += wa * da * (k12 + k13);
    }
    let flux = plain + w_diag * coupled;
    if flux <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "incident profile nu = {nu} has non-positive hybrid flux {flux}"
        )));
    }
    Ok(1.0 / flux.sqrt())
}

/// Hermite tensor coefficients of a smooth function given analytically with
/// its partial derivatives.
pub fn hermite_tensor<F>(grid: &Grid2D, f: F) -> Array2<C64>
where
    F: Fn(f64, f64) -> (f64, f64, f64, f64),
{
    let rk = grid.rho.knots();
    let ak = grid.alpha.knots();
    let mut c = Array2::zeros((grid.rho.n_full(), grid.alpha.n_full()));
    for (i, &r) in rk.iter().enumerate() {
        for (j, &a) in ak.iter().enumerate() {
            let (v, dr, da, dra) = f(r, a);
            c[[2 * i, 2 * j]] = C64::new(v, 0.0);
            c[[2 * i + 1, 2 * j]] = C64::new(dr, 0.0);
            c[[2 * i, 2 * j + 1]] = C64::new(da, 0.0);
            c[[2 * i + 1, 2 * j + 1]] = C64::new(dra, 0.0);
        }
    }
    c
}

/// Bound plane wave `phi(rho cos a) sin(q rho sin a)` on the tensor basis.
pub fn bound_plane_wave_tensor(grid: &Grid2D, bound: &BoundState, q: f64) -> Array2<C64> {
    hermite_tensor(grid, |rho, alpha| {
        let (ca, sa) = (alpha.cos(), alpha.sin());
        let x = rho * ca;
        let y = rho * sa;
        let phi = bound.eval(x);
        let dphi = bound.eval_deriv(x);
        let ddphi = bound.second_deriv(x);
        let j = (q * y).sin();
        let dj = q * (q * y).cos();
        let ddj = -q * q * (q * y).sin();
        let v = phi * j;
        let dr = ca * dphi * j + sa * phi * dj;
        let da = -rho * sa * dphi * j + rho * ca * phi * dj;
        let dra = -sa * dphi * j + ca * (-rho * sa * ddphi * j + rho * ca * dphi * dj)
            + ca * phi * dj
            + sa * (-rho * sa * dphi * dj + rho * ca * phi * ddj);
        (v, dr, da, dra)
    })
}

/// Regular cylindrical wave `c_sign D_nu(alpha) J_nu(k rho)` whose large-rho
/// form is `+ c D_nu(alpha) J_0(k rho)`.
pub fn cylindrical_wave_tensor(grid: &Grid2D, nu: u32, k: f64, scale: f64) -> Array2<C64> {
    let norm = 2.0 / std::f64::consts::PI.sqrt();
    // J_nu ~ (-1)^(nu/2) J_0 asymptotically for even order
    let sign = if (nu / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let amp = sign * scale * norm;
    let nuf = nu as f64;
    hermite_tensor(grid, |rho, alpha| {
        let z = k * rho;
        let (jv, djv) = if z == 0.0 {
            (0.0, 0.0) // nu >= 2
        } else {
            let jm = bessel_j(nuf - 1.0, z).unwrap();
            let jp = bessel_j(nuf + 1.0, z).unwrap();
            (bessel_j(nuf, z).unwrap(), 0.5 * (jm - jp) * k)
        };
        let d = (nuf * alpha).sin();
        let dd = nuf * (nuf * alpha).cos();
        (amp * d * jv, amp * d * djv, amp * dd * jv, amp * dd * djv)
    })
}
