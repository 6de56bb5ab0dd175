//! Construction of the non-uniform hyperradial and hyperangular grids.

use super::spline::SplineBasis1D;
use crate::error::{Error, Result};
use crate::twobody::BoundState;

/// Hyperradial breakpoints on [0, rho_max]: a stretched-exponential map,
/// denser at small rho, blending to near-uniform spacing at the far end.
/// `n_rho` counts collocation points (two per interval, so it must be even).
pub fn build_rho_grid(rho_max: f64, n_rho: usize, stretch: f64) -> Result<SplineBasis1D> {
    if rho_max <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "rho_max must be positive, got {rho_max}"
        )));
    }
    if n_rho < 8 || n_rho % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "n_rho must be an even number >= 8, got {n_rho}"
        )));
    }
    let m = n_rho / 2;
    let denom = stretch.exp_m1();
    let knots: Vec<f64> = (0..=m)
        .map(|j| {
            let s = j as f64 / m as f64;
            if stretch.abs() < 1e-12 {
                rho_max * s
            } else {
                rho_max * (stretch * s).exp_m1() / denom
            }
        })
        .collect();
    SplineBasis1D::new(knots)
}

/// Hyperangular breakpoints on [0, pi/2] with local density following a
/// smoothed local-wavenumber estimate of the bound-state wavefunction mapped
/// through `alpha = arccos(x / rho_max)`, plus a floor density. Falls back to
/// a uniform grid when no bound state is supplied.
pub fn build_alpha_grid(
    n_alpha: usize,
    phi: Option<&BoundState>,
    rho_max: f64,
    weight: f64,
    wavenumber_cap: f64,
) -> Result<SplineBasis1D> {
    if n_alpha < 16 || n_alpha % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "n_alpha must be an even number >= 16, got {n_alpha}"
        )));
    }
    let m = n_alpha / 2;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let Some(bound) = phi else {
        let knots = (0..=m).map(|j| half_pi * j as f64 / m as f64).collect();
        return SplineBasis1D::new(knots);
    };

    // density = 1 + weight * k_loc(x) * |dx/dalpha| / max, with the local
    // wavenumber k_loc = sqrt(|V - eps|) taken from the bound-state problem
    let samples = 8192;
    let density = |alpha: f64| -> f64 {
        let x = rho_max * alpha.cos();
        let k_loc = bound.local_wavenumber(x).min(wavenumber_cap);
        1.0 + weight * k_loc * rho_max * alpha.sin()
    };
    let mut cumulative = vec![0.0f64; samples + 1];
    let h = half_pi / samples as f64;
    for i in 0..samples {
        let mid = (i as f64 + 0.5) * h;
        cumulative[i + 1] = cumulative[i] + density(mid) * h;
    }
    let total = cumulative[samples];
    // equidistribute the cumulative density over m intervals
    let mut knots = Vec::with_capacity(m + 1);
    knots.push(0.0);
    let mut idx = 0usize;
    for j in 1..m {
        let target = total * j as f64 / m as f64;
        while idx < samples && cumulative[idx + 1] < target {
            idx += 1;
        }
        let frac = (target - cumulative[idx]) / (cumulative[idx + 1] - cumulative[idx]);
        knots.push((idx as f64 + frac) * h);
    }
    knots.push(half_pi);
    SplineBasis1D::new(knots)
}

/// Tensor-product grid: hyperradial and hyperangular bases plus the shared
/// collocation layout.
#[derive(Debug, Clone)]
pub struct Grid2D {
    pub rho: SplineBasis1D,
    pub alpha: SplineBasis1D,
    pub rho_points: Vec<f64>,
    pub alpha_points: Vec<f64>,
    pub alpha_weights: Vec<f64>,
}

impl Grid2D {
    pub fn new(rho: SplineBasis1D, alpha: SplineBasis1D) -> Self {
        let rho_points = rho.collocation_points();
        let alpha_points = alpha.collocation_points();
        let alpha_weights = alpha.collocation_weights();
        Self {
            rho,
            alpha,
            rho_points,
            alpha_points,
            alpha_weights,
        }
    }

    pub fn n_rho(&self) -> usize {
        self.rho_points.len()
    }

    pub fn n_alpha(&self) -> usize {
        self.alpha_points.len()
    }

    pub fn rho_max(&self) -> f64 {
        self.rho.extent().1
    }
}

/// Evaluate a tensor-product spline (full coefficients, row-major
/// rho x alpha) at a point.
pub fn eval_tensor(
    grid: &Grid2D,
    coeffs: &ndarray::Array2<num_complex::Complex64>,
    rho: f64,
    alpha: f64,
    drho: usize,
    dalpha: usize,
) -> Result<num_complex::Complex64> {
    let (kr, vr) = grid.rho.eval_local(rho, drho)?;
    let (ka, va) = grid.alpha.eval_local(alpha, dalpha)?;
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for (i, &fr) in vr.iter().enumerate() {
        if fr == 0.0 {
            continue;
        }
        for (j, &fa) in va.iter().enumerate() {
            acc += coeffs[[2 * kr + i, 2 * ka + j]] * (fr * fa);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use ndarray::Array2;
    use num_complex::Complex64 as C64;

    #[test]
    fn rho_grid_covers_extent_and_is_denser_near_origin() {
        let basis = build_rho_grid(60.0, 128, 2.5).unwrap();
        let knots = basis.knots();
        assert_eq!(knots.len(), 65);
        assert_relative_eq!(knots[0], 0.0);
        assert_relative_eq!(*knots.last().unwrap(), 60.0, epsilon = 1e-12);
        assert!(knots.windows(2).all(|w| w[1] > w[0]));
        let first = knots[1] - knots[0];
        let last = knots[64] - knots[63];
        assert!(first < last, "grid should be denser at small rho");
        assert_eq!(basis.collocation_points().len(), 128);
    }

    #[test]
    fn rho_grid_is_deterministic() {
        let a = build_rho_grid(140.0, 500, 2.5).unwrap();
        let b = build_rho_grid(140.0, 500, 2.5).unwrap();
        assert_eq!(a.knots(), b.knots());
    }

    #[test]
    fn alpha_grid_uniform_fallback() {
        let basis = build_alpha_grid(64, None, 10.0, 3.0, 40.0).unwrap();
        let knots = basis.knots();
        let h = knots[1] - knots[0];
        for w in knots.windows(2) {
            assert_relative_eq!(w[1] - w[0], h, epsilon = 1e-12);
        }
        assert_relative_eq!(
            *knots.last().unwrap(),
            std::f64::consts::FRAC_PI_2,
            epsilon = 1e-14
        );
    }

    #[test]
    fn tensor_eval_reproduces_tensor_cubic() {
        let rho = build_rho_grid(2.0, 12, 0.0).unwrap();
        let alpha = build_alpha_grid(16, None, 2.0, 0.0, 1.0).unwrap();
        let grid = Grid2D::new(rho, alpha);
        // f(r, a) = r^3 * a^2
        let f = |r: f64, a: f64| r * r * r * a * a;
        let mut coeffs = Array2::<C64>::zeros((grid.rho.n_full(), grid.alpha.n_full()));
        for (i, &rk) in grid.rho.knots().iter().enumerate() {
            for (j, &ak) in grid.alpha.knots().iter().enumerate() {
                coeffs[[2 * i, 2 * j]] = C64::new(f(rk, ak), 0.0);
                coeffs[[2 * i + 1, 2 * j]] = C64::new(3.0 * rk * rk * ak * ak, 0.0);
                coeffs[[2 * i, 2 * j + 1]] = C64::new(rk * rk * rk * 2.0 * ak, 0.0);
                coeffs[[2 * i + 1, 2 * j + 1]] = C64::new(3.0 * rk * rk * 2.0 * ak, 0.0);
            }
        }
        for &(r, a) in &[(0.3, 0.2), (1.7, 1.5), (0.95, 0.8)] {
            let v = eval_tensor(&grid, &coeffs, r, a, 0, 0).unwrap();
            assert_relative_eq!(v.re, f(r, a), epsilon = 1e-12, max_relative = 1e-12);
        }
    }
}
