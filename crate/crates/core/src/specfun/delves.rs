//! Delves functions: eigenfunctions of the hyperangular operator
//! `-d^2/da^2 + l(l+1)/cos^2 a + lam(lam+1)/sin^2 a` on [0, pi/2] with
//! eigenvalue nu^2, normalized to unit L2 norm.

use super::gamma::ln_gamma;
use super::jacobi_poly::jacobi_poly;

/// Quantum numbers of a Delves function; the order is
/// `nu = ell + lambda + 2(n + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelvesIndex {
    pub ell: u32,
    pub lambda: u32,
    pub n: u32,
}

impl DelvesIndex {
    pub fn new(ell: u32, lambda: u32, n: u32) -> Self {
        Self { ell, lambda, n }
    }

    pub fn nu(&self) -> u32 {
        self.ell + self.lambda + 2 * (self.n + 1)
    }
}

/// Unit-L2 normalization constant on [0, pi/2].
fn norm_constant(idx: DelvesIndex) -> f64 {
    let a = idx.lambda as f64 + 0.5;
    let b = idx.ell as f64 + 0.5;
    let n = idx.n as f64;
    let nu = idx.nu() as f64;
    // ||D||^2 = N^2 / (2 nu) * Gamma(n+a+1) Gamma(n+b+1) / (Gamma(n+a+b+1) n!)
    let ln_h = ln_gamma(n + a + 1.0) + ln_gamma(n + b + 1.0)
        - ln_gamma(n + a + b + 1.0)
        - ln_gamma(n + 1.0);
    (2.0 * nu).sqrt() * (-0.5 * ln_h).exp()
}

/// D_nu^{(l,lam)}(alpha) = N cos^{l+1}(a) sin^{lam+1}(a)
/// P_n^{(lam+1/2, l+1/2)}(cos 2a), alpha in [0, pi/2].
pub fn delves(idx: DelvesIndex, alpha: f64) -> f64 {
    let (c, s) = (alpha.cos(), alpha.sin());
    let poly = jacobi_poly(
        idx.n,
        idx.lambda as f64 + 0.5,
        idx.ell as f64 + 0.5,
        (2.0 * alpha).cos(),
    );
    norm_constant(idx) * c.powi(idx.ell as i32 + 1) * s.powi(idx.lambda as i32 + 1) * poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gauss_legendre_0_pi2(n: usize) -> (Vec<f64>, Vec<f64>) {
        // composite 4-point Gauss on n subintervals of [0, pi/2]
        let gl_x = [
            -0.861_136_311_594_052_6,
            -0.339_981_043_584_856_3,
            0.339_981_043_584_856_3,
            0.861_136_311_594_052_6,
        ];
        let gl_w = [
            0.347_854_845_137_453_86,
            0.652_145_154_862_546_1,
            0.652_145_154_862_546_1,
            0.347_854_845_137_453_86,
        ];
        let h = std::f64::consts::FRAC_PI_2 / n as f64;
        let mut xs = Vec::new();
        let mut ws = Vec::new();
        for i in 0..n {
            let mid = (i as f64 + 0.5) * h;
            for k in 0..4 {
                xs.push(mid + 0.5 * h * gl_x[k]);
                ws.push(0.5 * h * gl_w[k]);
            }
        }
        (xs, ws)
    }

    #[test]
    fn s_wave_is_sine() {
        // l = lam = 0: D proportional to sin(2(n+1) alpha)
        for n in 0..4u32 {
            let idx = DelvesIndex::new(0, 0, n);
            let expect_norm = 2.0 / std::f64::consts::PI.sqrt();
            for &a in &[0.2, 0.6, 1.1, 1.4] {
                let d = delves(idx, a);
                let s = (2.0 * (n as f64 + 1.0) * a).sin();
                assert_relative_eq!(d, expect_norm * s, epsilon = 1e-12, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn unit_norm_value_at_pi_over_4() {
        let idx = DelvesIndex::new(0, 0, 0);
        assert_relative_eq!(
            delves(idx, std::f64::consts::FRAC_PI_4),
            1.12838,
            epsilon = 1e-5
        );
    }

    #[test]
    fn vanishes_at_endpoints() {
        for (l, lam, n) in [(0u32, 0u32, 0u32), (1, 0, 2), (2, 3, 1), (0, 1, 4)] {
            let idx = DelvesIndex::new(l, lam, n);
            assert_eq!(delves(idx, 0.0), 0.0);
            assert!(delves(idx, std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        }
    }

    #[test]
    fn nu_index_relation() {
        assert_eq!(DelvesIndex::new(0, 0, 0).nu(), 2);
        assert_eq!(DelvesIndex::new(0, 0, 1).nu(), 4);
        assert_eq!(DelvesIndex::new(1, 2, 3).nu(), 11);
    }

    #[test]
    fn orthonormal_under_quadrature() {
        let (xs, ws) = gauss_legendre_0_pi2(200);
        for (l, lam) in [(0u32, 0u32), (1, 2)] {
            for n1 in 0..=10u32 {
                for n2 in n1..=10u32 {
                    let i1 = DelvesIndex::new(l, lam, n1);
                    let i2 = DelvesIndex::new(l, lam, n2);
                    let dot: f64 = xs
                        .iter()
                        .zip(&ws)
                        .map(|(&x, &w)| w * delves(i1, x) * delves(i2, x))
                        .sum();
                    let expect = if n1 == n2 { 1.0 } else { 0.0 };
                    assert!(
                        (dot - expect).abs() < 1e-10,
                        "l={l} lam={lam} n1={n1} n2={n2}: {dot}"
                    );
                }
            }
        }
    }

    #[test]
    fn angular_eigenvalue_equation() {
        // finite differences of -D'' + [l(l+1)/cos^2 + lam(lam+1)/sin^2] D
        // reproduce nu^2 D to discretization order
        let h = 1e-4;
        for (l, lam, n) in [(0u32, 0u32, 1u32), (1, 1, 0), (2, 0, 2)] {
            let idx = DelvesIndex::new(l, lam, n);
            let nu2 = (idx.nu() as f64).powi(2);
            for &a in &[0.5, 0.9, 1.2] {
                let d0 = delves(idx, a);
                let dm = delves(idx, a - h);
                let dp = delves(idx, a + h);
                let second = (dp - 2.0 * d0 + dm) / (h * h);
                let pot = (l * (l + 1)) as f64 / a.cos().powi(2)
                    + (lam * (lam + 1)) as f64 / a.sin().powi(2);
                let lhs = -second + pot * d0;
                assert_relative_eq!(lhs, nu2 * d0, max_relative = 1e-5, epsilon = 1e-5);
            }
        }
    }
}
