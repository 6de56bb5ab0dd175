//! Mass-scaled Jacobi coordinates, hyperspherical polar coordinates and the
//! kinematic rotation between Jacobi arrangements.
//!
//! With scaling factors `tau_x = sqrt(2 mu_jk)` and `tau_y = sqrt(2 mu_i,jk)`
//! the two-dimensional kinetic operator has unit coefficients, so energies are
//! MeV throughout while mass-scaled lengths carry MeV^(-1/2). Physical
//! separations (fm) appear only at the potential-evaluation and reporting
//! boundaries.

use crate::error::{Error, Result};

/// Three particle masses in units where energies are MeV and lengths fm
/// (hbar = 1), i.e. the mass carries fm^-2 MeV^-1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassSystem {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl MassSystem {
    pub fn new(m1: f64, m2: f64, m3: f64) -> Result<Self> {
        if !(m1 > 0.0 && m2 > 0.0 && m3 > 0.0) {
            return Err(Error::InvalidInput(format!(
                "masses must be strictly positive, got ({m1}, {m2}, {m3})"
            )));
        }
        Ok(Self { m1, m2, m3 })
    }

    /// Three equal nucleon masses fixed by hbar^2/m in MeV fm^2.
    pub fn equal_from_hbar2_over_m(hbar2_over_m: f64) -> Result<Self> {
        if hbar2_over_m <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "hbar^2/m must be positive, got {hbar2_over_m}"
            )));
        }
        let m = 1.0 / hbar2_over_m;
        Self::new(m, m, m)
    }

    fn mass(&self, i: usize) -> f64 {
        match i {
            1 => self.m1,
            2 => self.m2,
            3 => self.m3,
            _ => unreachable!(),
        }
    }

    pub fn total(&self) -> f64 {
        self.m1 + self.m2 + self.m3
    }
}

fn check_arrangement(i: usize) -> Result<(usize, usize, usize)> {
    match i {
        1 => Ok((1, 2, 3)),
        2 => Ok((2, 3, 1)),
        3 => Ok((3, 1, 2)),
        _ => Err(Error::InvalidInput(format!(
            "arrangement index must be 1, 2 or 3, got {i}"
        ))),
    }
}

/// Pair reduced mass, spectator reduced mass and the three-body reduced mass
/// `mu_3B = sqrt(m1 m2 m3 / (m1 + m2 + m3))` for arrangement `i` (spectator i,
/// pair jk).
pub fn reduced_masses(ms: &MassSystem, i: usize) -> Result<(f64, f64, f64)> {
    let (i, j, k) = check_arrangement(i)?;
    let (mi, mj, mk) = (ms.mass(i), ms.mass(j), ms.mass(k));
    let mu_jk = mj * mk / (mj + mk);
    let mu_i_jk = mi * (mj + mk) / ms.total();
    let mu_3b = (ms.m1 * ms.m2 * ms.m3 / ms.total()).sqrt();
    Ok((mu_jk, mu_i_jk, mu_3b))
}

/// Mass scaling factors `(tau_x, tau_y)` for arrangement `i`. An unscaled pair
/// separation r relates to the scaled one by `x = tau_x * r`, and
/// `tau_x * tau_y = 2 mu_3B` independently of the arrangement.
pub fn tau_factors(ms: &MassSystem, i: usize) -> Result<(f64, f64)> {
    let (mu_jk, mu_i_jk, _) = reduced_masses(ms, i)?;
    Ok(((2.0 * mu_jk).sqrt(), (2.0 * mu_i_jk).sqrt()))
}

/// Point in mass-scaled Jacobi norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartPoint {
    pub x: f64,
    pub y: f64,
}

/// Point in hyperspherical polar coordinates: `rho^2 = x^2 + y^2`,
/// `alpha = arctan(y/x)` in [0, pi/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub rho: f64,
    pub alpha: f64,
}

/// Polar coordinates of a mass-scaled Jacobi point; `alpha = pi/2` when x = 0.
pub fn polar_from_cart(p: CartPoint) -> PolarPoint {
    let rho = p.x.hypot(p.y);
    let alpha = if p.x == 0.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        p.y.atan2(p.x)
    };
    PolarPoint { rho, alpha }
}

pub fn cart_from_polar(p: PolarPoint) -> CartPoint {
    CartPoint {
        x: p.rho * p.alpha.cos(),
        y: p.rho * p.alpha.sin(),
    }
}

/// Coefficients of the kinematic rotation from arrangement i to arrangement j
/// for mass-scaled Jacobi vectors: `x_j = c_xx x_i + c_xy y_i`,
/// `y_j = c_yx x_i + c_yy y_i` as vector relations. The matrix is a proper
/// rotation (hyperradius preserved, determinant +1).
#[derive(Debug, Clone, Copy)]
pub struct RotationCoeffs {
    pub c_xx: f64,
    pub c_xy: f64,
    pub c_yx: f64,
    pub c_yy: f64,
}

/// Rotation coefficients for the cyclic step i -> j where j follows i
/// (1->2, 2->3, 3->1) or precedes it (1->3, 2->1, 3->2).
pub fn rotation_coeffs(ms: &MassSystem, i: usize, j: usize) -> Result<RotationCoeffs> {
    let (i_idx, jj, kk) = check_arrangement(i)?;
    if j == i_idx || !(1..=3).contains(&j) {
        return Err(Error::InvalidInput(format!(
            "target arrangement must differ from source and lie in 1..=3, got {i} -> {j}"
        )));
    }
    let (mi, mj, mk) = (ms.mass(i_idx), ms.mass(jj), ms.mass(kk));
    let m_tot = ms.total();
    let (tau_xi, tau_yi) = tau_factors(ms, i_idx)?;
    let (tau_xj, tau_yj) = tau_factors(ms, j)?;

    // Unscaled relations between (xi_i, eta_i) and (xi_j, eta_j) follow from
    // eliminating the particle positions; scaling by the tau factors then
    // turns them into a rotation.
    let coeffs = if j == jj {
        // cyclic: spectator i -> spectator j, pair (j,k) -> pair (k,i)
        RotationCoeffs {
            c_xx: -(mj / (mj + mk)) * (tau_xj / tau_xi),
            c_xy: -(tau_xj / tau_yi),
            c_yx: (mk * m_tot / ((mj + mk) * (mk + mi))) * (tau_yj / tau_xi),
            c_yy: -(mi / (mi + mk)) * (tau_yj / tau_yi),
        }
    } else {
        // anticyclic: spectator i -> spectator k
        RotationCoeffs {
            c_xx: -(mk / (mj + mk)) * (tau_xj / tau_xi),
            c_xy: tau_xj / tau_yi,
            c_yx: -(mj * m_tot / ((mi + mj) * (mj + mk))) * (tau_yj / tau_xi),
            c_yy: -(mi / (mi + mj)) * (tau_yj / tau_yi),
        }
    };
    Ok(coeffs)
}

/// Norms `(x_j, y_j)` in arrangement j from norms in arrangement i and the
/// cosine `u` of the angle between the two Jacobi vectors of arrangement i.
pub fn rotate_arrangement(
    ms: &MassSystem,
    i: usize,
    j: usize,
    p: CartPoint,
    u: f64,
) -> Result<CartPoint> {
    if !(-1.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("angular cosine u = {u} outside [-1, 1]")));
    }
    let c = rotation_coeffs(ms, i, j)?;
    let cross = p.x * p.y * u;
    let xj2 = c.c_xx * c.c_xx * p.x * p.x + c.c_xy * c.c_xy * p.y * p.y
        + 2.0 * c.c_xx * c.c_xy * cross;
    let yj2 = c.c_yx * c.c_yx * p.x * p.x + c.c_yy * c.c_yy * p.y * p.y
        + 2.0 * c.c_yx * c.c_yy * cross;
    Ok(CartPoint {
        x: xj2.max(0.0).sqrt(),
        y: yj2.max(0.0).sqrt(),
    })
}
