//! The s-wave angular kernel: the integral transform that maps a component's
//! alpha profile expressed in one Jacobi arrangement onto another
//! arrangement. In polar coordinates it is independent of the hyperradius,
//! so it acts on the alpha grid alone.

use crate::discretization::SplineBasis1D;
use crate::error::{Error, Result};
use crate::kinematics::{rotate_arrangement, CartPoint, MassSystem};
use crate::quadrature::gauss_legendre;
use ndarray::Array2;

/// Transform of a single alpha profile between arrangements i -> j at one
/// angle: `(1/2) Int du (x y)/(x' y') h(alpha'(u))` over the angular cosine
/// u, reduced to a one-dimensional Gauss rule.
pub fn jacobi_transform_swave<F: Fn(f64) -> f64>(
    ms: &MassSystem,
    i: usize,
    j: usize,
    h: &F,
    alpha: f64,
    quad_order: usize,
) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(quad_order);
    let p = CartPoint {
        x: alpha.cos(),
        y: alpha.sin(),
    };
    let xy = p.x * p.y;
    let mut acc = 0.0;
    for (&u, &w) in nodes.iter().zip(&weights) {
        let q = rotate_arrangement(ms, i, j, p, u)?;
        let denom = q.x * q.y;
        if denom < 1e-300 {
            return Err(Error::QuadratureFailure {
                alpha,
                detail: format!("rotated point degenerate at u = {u}: ({}, {})", q.x, q.y),
            });
        }
        let alpha_j = q.y.atan2(q.x);
        acc += 0.5 * w * (xy / denom) * h(alpha_j);
    }
    if !acc.is_finite() {
        return Err(Error::QuadratureFailure {
            alpha,
            detail: "non-finite kernel integral".into(),
        });
    }
    Ok(acc)
}

/// Collocation matrix of the single-arrangement transform: maps full
/// alpha-basis coefficients to transformed values at `alpha_points`.
pub fn kernel_matrix_single(
    ms: &MassSystem,
    i: usize,
    j: usize,
    alpha_basis: &SplineBasis1D,
    alpha_points: &[f64],
    quad_order: usize,
) -> Result<Array2<f64>> {
    let (nodes, weights) = gauss_legendre(quad_order);
    let mut m = Array2::zeros((alpha_points.len(), alpha_basis.n_full()));
    let half_pi = std::f64::consts::FRAC_PI_2;
    for (r, &alpha) in alpha_points.iter().enumerate() {
        let p = CartPoint {
            x: alpha.cos(),
            y: alpha.sin(),
        };
        let xy = p.x * p.y;
        for (&u, &w) in nodes.iter().zip(&weights) {
            let q = rotate_arrangement(ms, i, j, p, u)?;
            let denom = q.x * q.y;
            if denom < 1e-300 {
                continue; // admissible profiles vanish there anyway
            }
            let alpha_j = q.y.atan2(q.x).clamp(0.0, half_pi);
            let (k, vals) = alpha_basis.eval_local(alpha_j, 0)?;
            let coeff = 0.5 * w * xy / denom;
            for (n, &v) in vals.iter().enumerate() {
                m[[r, 2 * k + n]] += coeff * v;
            }
        }
    }
    Ok(m)
}

/// Both off-arrangement transforms summed. Validated for three equal masses,
/// where the two terms coincide by the u -> -u symmetry of the rotation.
pub fn kernel_matrix_total(
    ms: &MassSystem,
    alpha_basis: &SplineBasis1D,
    alpha_points: &[f64],
    quad_order: usize,
) -> Result<Array2<f64>> {
    let scale = ms.m1.max(ms.m2).max(ms.m3);
    if (ms.m1 - ms.m2).abs() > 1e-12 * scale || (ms.m2 - ms.m3).abs() > 1e-12 * scale {
        return Err(Error::UnsupportedChannel(
            "the angular kernel is validated for three equal masses only".into(),
        ));
    }
    let k_cyc = kernel_matrix_single(ms, 1, 2, alpha_basis, alpha_points, quad_order)?;
    let k_anti = kernel_matrix_single(ms, 1, 3, alpha_basis, alpha_points, quad_order)?;
    Ok(k_cyc + k_anti)
}
