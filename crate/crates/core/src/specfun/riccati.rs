//! Riccati-Bessel functions: regular `j_l(z) = z j_l^sph(z)` and the outgoing
//! combination `h_l^+ = j_l - i n_l` with `h_0^+(z) = -i e^{iz}`.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

/// Regular Riccati-Bessel function, `j_0(z) = sin z`.
pub fn riccati_j(ell: u32, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    if ell == 0 {
        return z.sin();
    }
    let f0 = z.sin();
    let f1 = z.sin() / z - z.cos();
    if (ell as f64) < z {
        upward(ell, z, f0, f1)
    } else {
        // downward recurrence, normalized against j_0
        let start = ell + 16 + (z.abs() as u32);
        let mut fp = 0.0f64;
        let mut fc = 1e-280;
        let mut target = 0.0;
        for k in (1..=start).rev() {
            let fm = (2 * k + 1) as f64 / z * fc - fp;
            fp = fc;
            fc = fm;
            if k - 1 == ell {
                target = fc;
            }
            // rescale to avoid overflow
            if fc.abs() > 1e250 {
                fp /= 1e250;
                fc /= 1e250;
                target /= 1e250;
            }
        }
        target * f0 / fc
    }
}

/// Irregular Riccati-Bessel (Neumann) function, `n_0(z) = cos z`.
pub fn riccati_n(ell: u32, z: f64) -> f64 {
    let f0 = z.cos();
    if ell == 0 {
        return f0;
    }
    let f1 = z.cos() / z + z.sin();
    upward(ell, z, f0, f1)
}

fn upward(ell: u32, z: f64, f0: f64, f1: f64) -> f64 {
    if ell == 0 {
        return f0;
    }
    let mut fm = f0;
    let mut fc = f1;
    for k in 1..ell {
        let fp = (2 * k + 1) as f64 / z * fc - fm;
        fm = fc;
        fc = fp;
    }
    fc
}

/// Outgoing Riccati-Hankel function `h_l^+(z) = j_l(z) - i n_l(z)`, which for
/// l = 0 reduces to `-i e^{iz}` (unit modulus, outgoing phase).
pub fn riccati_h_plus(ell: u32, z: f64) -> Result<C64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!(
            "riccati_h_plus requires z > 0, got {z}"
        )));
    }
    Ok(C64::new(riccati_j(ell, z), -riccati_n(ell, z)))
}

/// Derivative of the regular Riccati-Bessel function with respect to z.
pub fn riccati_j_deriv(ell: u32, z: f64) -> f64 {
    if z == 0.0 {
        return if ell == 0 { 1.0 } else { 0.0 };
    }
    if ell == 0 {
        return z.cos();
    }
    // f_l' = f_{l-1} - l/z f_l
    riccati_j(ell - 1, z) - ell as f64 / z * riccati_j(ell, z)
}

/// Derivative of `h_l^+` with respect to z.
pub fn riccati_h_plus_deriv(ell: u32, z: f64) -> Result<C64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!(
            "riccati_h_plus_deriv requires z > 0, got {z}"
        )));
    }
    if ell == 0 {
        // d/dz (-i e^{iz}) = e^{iz}
        return Ok(C64::new(z.cos(), z.sin()));
    }
    let n_deriv = riccati_n(ell - 1, z) - ell as f64 / z * riccati_n(ell, z);
    Ok(C64::new(riccati_j_deriv(ell, z), -n_deriv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn s_wave_values() {
        assert_relative_eq!(riccati_j(0, std::f64::consts::FRAC_PI_2), 1.0, epsilon = 1e-15);
        for &z in &[0.3, 1.0, 7.5, 40.0] {
            let h = riccati_h_plus(0, z).unwrap();
            assert_relative_eq!(h.norm(), 1.0, epsilon = 1e-13);
            // -i e^{iz}
            assert_relative_eq!(h.re, z.sin(), epsilon = 1e-13);
            assert_relative_eq!(h.im, -z.cos(), epsilon = 1e-13);
        }
    }

    #[test]
    fn domain_error_for_nonpositive_argument() {
        assert!(riccati_h_plus(0, 0.0).is_err());
        assert!(riccati_h_plus(2, -1.0).is_err());
    }

    #[test]
    fn higher_order_against_recurrence_seeds() {
        // values cross-checked by the closed forms j_1, n_1
        let z = 2.1;
        assert_relative_eq!(riccati_j(1, z), z.sin() / z - z.cos(), epsilon = 1e-13);
        assert_relative_eq!(riccati_n(1, z), z.cos() / z + z.sin(), epsilon = 1e-13);
    }

    #[test]
    fn wronskian_is_i_at_ell_2() {
        // j h+' - j' h+ = i for every order (series/recurrence oracle)
        let z = 10.0;
        let ell = 2;
        let j = riccati_j(ell, z);
        let jp = riccati_j_deriv(ell, z);
        let h = riccati_h_plus(ell, z).unwrap();
        let hp = riccati_h_plus_deriv(ell, z).unwrap();
        let w = hp * j - h * jp;
        assert_relative_eq!(w.re, 0.0, epsilon = 1e-12);
        assert_relative_eq!(w.im, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn downward_recurrence_handles_large_order() {
        // l = 12 at z = 2: far into the regime where upward recurrence for j
        // is unstable; compare against the explicit series for spherical j.
        let z = 2.0f64;
        let ell = 12u32;
        // series for spherical bessel: j_l^sph(z) = z^l / (2l+1)!! * sum
        let mut dfact = 1.0f64;
        for k in 0..=ell {
            dfact *= (2 * k + 1) as f64;
        }
        let mut term = z.powi(ell as i32) / dfact;
        let mut sum = term;
        for k in 1..60 {
            term *= -0.5 * z * z / (k as f64 * (2.0 * (ell as f64 + k as f64) + 1.0));
            sum += term;
        }
        assert_relative_eq!(riccati_j(ell, z), z * sum, max_relative = 1e-10);
    }

    #[test]
    fn free_radial_equation_residual() {
        // -u'' + l(l+1)/z^2 u = u for both j and h+, via second differences
        let ell = 2u32;
        let z = 6.0;
        let h = 1e-3;
        let centrif = (ell * (ell + 1)) as f64 / (z * z);
        let d2j = (riccati_j(ell, z + h) - 2.0 * riccati_j(ell, z) + riccati_j(ell, z - h)) / (h * h);
        let res_j = -d2j + centrif * riccati_j(ell, z) - riccati_j(ell, z);
        assert!(res_j.abs() < 1e-6, "residual {res_j}");
        let hp = |x: f64| riccati_h_plus(ell, x).unwrap();
        let d2h = (hp(z + h) - 2.0 * hp(z) + hp(z - h)) / (h * h);
        let res_h = -d2h + hp(z) * centrif - hp(z);
        assert!(res_h.norm() < 1e-6, "residual {res_h}");
    }
}
