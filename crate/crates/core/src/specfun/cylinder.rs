//! Cylindrical Bessel functions of real non-negative order: the regular
//! `J_nu`, the irregular `Y_nu` and the outgoing Hankel combination
//! `H_nu^+ = J_nu + i Y_nu`.
//!
//! Small arguments use the ascending series (with the reflection formula for
//! non-integer orders), large arguments the Hankel asymptotic expansion. The
//! crossover is placed where both deliver close to full double precision for
//! the moderate orders used here.

use super::gamma::{gamma_recip, ln_gamma};
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_CUT: f64 = 12.0;

/// Regular cylindrical Bessel function of real order `nu >= 0`, `z >= 0`.
pub fn bessel_j(nu: f64, z: f64) -> Result<f64> {
    if nu < 0.0 {
        return Err(Error::Domain(format!("bessel_j requires nu >= 0, got {nu}")));
    }
    if z < 0.0 {
        return Err(Error::Domain(format!("bessel_j requires z >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if z <= SERIES_CUT {
        Ok(j_series(nu, z))
    } else {
        Ok(jy_asymptotic(nu, z).0)
    }
}

/// Irregular cylindrical Bessel function of real order `nu >= 0`, `z > 0`.
pub fn bessel_y(nu: f64, z: f64) -> Result<f64> {
    if nu < 0.0 {
        return Err(Error::Domain(format!("bessel_y requires nu >= 0, got {nu}")));
    }
    if z <= 0.0 {
        return Err(Error::Domain(format!("bessel_y requires z > 0, got {z}")));
    }
    if z > SERIES_CUT {
        return Ok(jy_asymptotic(nu, z).1);
    }
    let nu_round = nu.round();
    if (nu - nu_round).abs() < 1e-8 {
        // integer order: series for Y_0, Y_1, then stable upward recurrence
        let n = nu_round as u32;
        let y0 = y0_series(z);
        if n == 0 {
            return Ok(y0);
        }
        let y1 = y1_series(z);
        if n == 1 {
            return Ok(y1);
        }
        let mut ym = y0;
        let mut yc = y1;
        for k in 1..n {
            let yp = 2.0 * k as f64 / z * yc - ym;
            ym = yc;
            yc = yp;
        }
        Ok(yc)
    } else {
        // reflection: Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi)
        let s = (nu * std::f64::consts::PI).sin();
        let c = (nu * std::f64::consts::PI).cos();
        Ok((j_series(nu, z) * c - j_series(-nu, z)) / s)
    }
}

/// Outgoing Hankel function `H_nu^+ = J_nu + i Y_nu`, `z > 0`.
pub fn hankel_plus(nu: f64, z: f64) -> Result<C64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!(
            "hankel_plus requires z > 0, got {z}"
        )));
    }
    Ok(C64::new(bessel_j(nu, z)?, bessel_y(nu, z)?))
}

/// Derivative of `H_nu^+` with respect to z; `H_0^+' = -H_1^+`.
pub fn hankel_plus_deriv(nu: f64, z: f64) -> Result<C64> {
    if nu == 0.0 {
        return Ok(-hankel_plus(1.0, z)?);
    }
    Ok((hankel_plus(nu - 1.0, z)? - hankel_plus(nu + 1.0, z)?) * 0.5)
}

/// Derivative of `J_nu` with respect to z; `J_0' = -J_1`.
pub fn bessel_j_deriv(nu: f64, z: f64) -> Result<f64> {
    if nu == 0.0 {
        return Ok(-bessel_j(1.0, z)?);
    }
    Ok(0.5 * (bessel_j(nu - 1.0, z)? - bessel_j(nu + 1.0, z)?))
}

/// Large-argument form `sqrt(2/(pi z)) exp(i(z - nu pi/2 - pi/4))`.
pub fn hankel_plus_asymptotic(nu: f64, z: f64) -> C64 {
    let phase = z - nu * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * z)).sqrt() * C64::new(phase.cos(), phase.sin())
}

/// Ascending series, valid for any real order (used with |z| <= SERIES_CUT).
fn j_series(nu: f64, z: f64) -> f64 {
    let half = 0.5 * z;
    if nu >= 0.0 {
        let lead = (nu * half.ln() - ln_gamma(nu + 1.0)).exp();
        let x2 = -half * half;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for k in 1..200 {
            let kf = k as f64;
            term *= x2 / (kf * (nu + kf));
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1.0) {
                break;
            }
        }
        return lead * sum;
    }
    // negative (non-integer) order: 1/Gamma absorbs the poles term by term
    let mut total = 0.0f64;
    let mut sign = 1.0f64;
    for k in 0..200 {
        let kf = k as f64;
        let term =
            sign * gamma_recip(nu + kf + 1.0) * ((nu + 2.0 * kf) * half.ln() - ln_gamma(kf + 1.0)).exp();
        total += term;
        sign = -sign;
        if k > 4 && term.abs() < 1e-17 * total.abs().max(1e-300) {
            break;
        }
    }
    total
}

/// Hankel asymptotic expansion: J, Y for z > SERIES_CUT.
fn jy_asymptotic(nu: f64, z: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let omega = z - nu * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut ak = 1.0f64; // a_0
    let mut prev = f64::INFINITY;
    for k in 1..30 {
        let kf = k as f64;
        ak *= (mu - (2.0 * kf - 1.0) * (2.0 * kf - 1.0)) / (kf * 8.0 * z);
        if ak.abs() > prev {
            break; // divergent tail of the asymptotic series
        }
        prev = ak.abs();
        match k % 4 {
            1 => q += ak,
            2 => p -= ak,
            3 => q -= ak,
            _ => p += ak,
        }
        if ak.abs() < 1e-17 {
            break;
        }
    }
    let amp = (2.0 / (std::f64::consts::PI * z)).sqrt();
    (
        amp * (p * omega.cos() - q * omega.sin()),
        amp * (p * omega.sin() + q * omega.cos()),
    )
}

/// Series for Y_0 at small argument.
fn y0_series(z: f64) -> f64 {
    let two_over_pi = std::f64::consts::FRAC_2_PI;
    let j0 = j_series(0.0, z);
    let mut sum = 0.0f64;
    let x2 = z * z / 4.0;
    let mut term = 1.0f64;
    let mut harmonic = 0.0f64;
    for k in 1..200 {
        let kf = k as f64;
        term *= x2 / (kf * kf);
        harmonic += 1.0 / kf;
        let contrib = if k % 2 == 1 { term * harmonic } else { -term * harmonic };
        sum += contrib;
        if term < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    two_over_pi * (((0.5 * z).ln() + EULER_GAMMA) * j0 + sum)
}

/// Series for Y_1 at small argument.
fn y1_series(z: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let j1 = j_series(1.0, z);
    let half = 0.5 * z;
    let x2 = half * half;
    // sum_k (-1)^k [psi(k+1) + psi(k+2)] x^{2k+1} / (k! (k+1)!)
    let mut sum = 0.0f64;
    let mut term = half; // k = 0 magnitude: (z/2) / (0! 1!)
    let mut psi_sum = -2.0 * EULER_GAMMA + 1.0; // psi(1) + psi(2)
    for k in 0..200 {
        let kf = k as f64;
        let contrib = if k % 2 == 0 { term * psi_sum } else { -term * psi_sum };
        sum += contrib;
        term *= x2 / ((kf + 1.0) * (kf + 2.0));
        psi_sum += 1.0 / (kf + 1.0) + 1.0 / (kf + 2.0);
        if term < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    (2.0 * (0.5 * z).ln() * j1 - 2.0 / z - sum) / pi
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn j0_at_zero() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn known_j_values() {
        // Abramowitz & Stegun tables
        assert_relative_eq!(bessel_j(0.0, 1.0).unwrap(), 0.765_197_686_557_966_6, epsilon = 1e-13);
        assert_relative_eq!(bessel_j(1.0, 1.0).unwrap(), 0.440_050_585_744_933_5, epsilon = 1e-13);
        assert_relative_eq!(bessel_j(0.0, 5.0).unwrap(), -0.177_596_771_314_338_3, epsilon = 1e-12);
        assert_relative_eq!(bessel_j(2.0, 5.0).unwrap(), 0.046_565_116_277_752_2, epsilon = 1e-11);
    }

    #[test]
    fn known_y_values() {
        assert_relative_eq!(bessel_y(0.0, 1.0).unwrap(), 0.088_256_964_215_677, epsilon = 1e-11);
        assert_relative_eq!(bessel_y(1.0, 1.0).unwrap(), -0.781_212_821_300_289, epsilon = 1e-11);
        assert_relative_eq!(bessel_y(0.0, 5.0).unwrap(), -0.308_517_625_249_034, epsilon = 1e-11);
    }

    #[test]
    fn half_integer_orders_are_elementary() {
        // J_{1/2}(z) = sqrt(2/(pi z)) sin z, J_{3/2}(z) = sqrt(2/(pi z)) (sin z / z - cos z)
        for &z in &[0.7, 3.3, 9.0, 20.0] {
            let amp = (2.0 / (std::f64::consts::PI * z)).sqrt();
            assert_relative_eq!(
                bessel_j(0.5, z).unwrap(),
                amp * z.sin(),
                epsilon = 1e-11,
                max_relative = 1e-10
            );
            assert_relative_eq!(
                bessel_j(1.5, z).unwrap(),
                amp * (z.sin() / z - z.cos()),
                epsilon = 1e-10,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn wronskian_all_orders() {
        // cross-order identity J_{nu+1} Y_nu - J_nu Y_{nu+1} = 2/(pi z),
        // checked on both sides of the series/asymptotic crossover and at
        // non-integer order
        for &nu in &[0.0, 1.0, 2.0, 4.0, 0.5, 1.7, 3.25] {
            for &z in &[0.8, 5.0, 11.9, 12.1, 60.0] {
                let w = bessel_j(nu + 1.0, z).unwrap() * bessel_y(nu, z).unwrap()
                    - bessel_j(nu, z).unwrap() * bessel_y(nu + 1.0, z).unwrap();
                let expect = 2.0 / (std::f64::consts::PI * z);
                assert_relative_eq!(w, expect, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn hankel_matches_asymptotic_form_at_large_argument() {
        let h = hankel_plus(0.0, 100.0).unwrap();
        let asym = hankel_plus_asymptotic(0.0, 100.0);
        assert!((h - asym).norm() / asym.norm() < 1e-2);
    }

    #[test]
    fn hankel_order_phase_factor_at_large_argument() {
        // H_nu^+ / H_0^+ -> e^{-i nu pi / 2}; the leading correction decays
        // like nu^2/z
        let z = 1.0e4;
        for &nu in &[1.0f64, 2.0, 4.0] {
            let ratio = hankel_plus(nu, z).unwrap() / hankel_plus(0.0, z).unwrap();
            let expect = C64::from_polar(1.0, -nu * std::f64::consts::FRAC_PI_2);
            assert!((ratio - expect).norm() < 1e-3, "nu={nu}: {ratio} vs {expect}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(hankel_plus(0.0, 0.0).is_err());
        assert!(hankel_plus(1.0, -2.0).is_err());
        assert!(bessel_y(0.5, 0.0).is_err());
    }

    #[test]
    fn series_asymptotic_continuity() {
        for &nu in &[0.0, 1.0, 2.5] {
            let below = bessel_j(nu, SERIES_CUT - 1e-9).unwrap();
            let above = bessel_j(nu, SERIES_CUT + 1e-9).unwrap();
            // both branches sit within ~2e-10 of the true value here; compare
            // against the oscillation envelope sqrt(2/(pi z)) ~ 0.23
            assert_relative_eq!(below, above, max_relative = 1e-8, epsilon = 1e-9);
        }
    }
}
