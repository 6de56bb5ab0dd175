//! Cubic Hermite spline basis with orthogonal collocation.
//!
//! Every knot carries two basis functions (value and slope), so a partition
//! with M intervals has 2(M+1) functions; each function is supported on at
//! most the two intervals touching its knot, and the basis reproduces any
//! piecewise cubic with C^1 continuity exactly. Two Gauss points per interval
//! provide the collocation conditions; together with two boundary conditions
//! per direction the collocated systems are square.

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64 as C64;

const GAUSS_OFFSET: f64 = 0.288_675_134_594_812_9; // 1/(2 sqrt(3))

/// One-dimensional cubic Hermite basis over sorted breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineBasis1D {
    knots: Vec<f64>,
}

impl SplineBasis1D {
    pub fn new(knots: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidInput(
                "spline basis needs at least two knots".into(),
            ));
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "spline knots must be strictly increasing".into(),
            ));
        }
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn n_intervals(&self) -> usize {
        self.knots.len() - 1
    }

    /// Number of basis functions before boundary reduction.
    pub fn n_full(&self) -> usize {
        2 * self.knots.len()
    }

    pub fn extent(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().unwrap())
    }

    /// Knot index owning full basis function `idx` (2k value, 2k+1 slope).
    pub fn knot_of(&self, idx: usize) -> usize {
        idx / 2
    }

    /// Two Gauss points per interval, ordered.
    pub fn collocation_points(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(2 * self.n_intervals());
        for w in self.knots.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let half = 0.5 * (w[1] - w[0]);
            pts.push(mid - 2.0 * half * GAUSS_OFFSET);
            pts.push(mid + 2.0 * half * GAUSS_OFFSET);
        }
        pts
    }

    /// Quadrature weights associated with the collocation points (exact for
    /// cubics on each interval).
    pub fn collocation_weights(&self) -> Vec<f64> {
        let mut ws = Vec::with_capacity(2 * self.n_intervals());
        for w in self.knots.windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            ws.push(half);
            ws.push(half);
        }
        ws
    }

    fn locate(&self, x: f64) -> Result<usize> {
        let (lo, hi) = self.extent();
        if x < lo - 1e-12 * (hi - lo) || x > hi + 1e-12 * (hi - lo) {
            return Err(Error::OutOfExtent { point: x, lo, hi });
        }
        // partition_point gives the first knot > x
        let k = self.knots.partition_point(|&t| t <= x);
        Ok(k.clamp(1, self.knots.len() - 1) - 1)
    }

    /// Values (or derivatives) of the four local basis functions at `x`.
    /// Returns the interval index k; the associated full-basis indices are
    /// `[2k, 2k+1, 2k+2, 2k+3]` (value/slope at the left knot, then right).
    pub fn eval_local(&self, x: f64, deriv: usize) -> Result<(usize, [f64; 4])> {
        let k = self.locate(x)?;
        let h = self.knots[k + 1] - self.knots[k];
        let s = (x - self.knots[k]) / h;
        let vals = match deriv {
            0 => [
                1.0 - 3.0 * s * s + 2.0 * s * s * s,
                h * (s - 2.0 * s * s + s * s * s),
                3.0 * s * s - 2.0 * s * s * s,
                h * (s * s * s - s * s),
            ],
            1 => [
                (-6.0 * s + 6.0 * s * s) / h,
                1.0 - 4.0 * s + 3.0 * s * s,
                (6.0 * s - 6.0 * s * s) / h,
                3.0 * s * s - 2.0 * s,
            ],
            2 => [
                (-6.0 + 12.0 * s) / (h * h),
                (-4.0 + 6.0 * s) / h,
                (6.0 - 12.0 * s) / (h * h),
                (6.0 * s - 2.0) / h,
            ],
            _ => {
                return Err(Error::InvalidInput(format!(
                    "derivative order {deriv} not supported"
                )))
            }
        };
        Ok((k, vals))
    }

    /// Dense collocation matrix: rows are `points`, columns the full basis.
    pub fn matrix(&self, points: &[f64], deriv: usize) -> Result<Array2<f64>> {
        let mut m = Array2::zeros((points.len(), self.n_full()));
        for (r, &x) in points.iter().enumerate() {
            let (k, vals) = self.eval_local(x, deriv)?;
            for (j, &v) in vals.iter().enumerate() {
                m[[r, 2 * k + j]] += v;
            }
        }
        Ok(m)
    }

    /// Hermite interpolation: coefficients are exactly the values and
    /// derivatives at the knots.
    pub fn interpolate_hermite(&self, values: &[f64], derivs: &[f64]) -> Result<Vec<f64>> {
        if values.len() != self.knots.len() || derivs.len() != self.knots.len() {
            return Err(Error::InvalidInput(
                "hermite data length must match knot count".into(),
            ));
        }
        let mut c = vec![0.0; self.n_full()];
        for i in 0..self.knots.len() {
            c[2 * i] = values[i];
            c[2 * i + 1] = derivs[i];
        }
        Ok(c)
    }

    pub fn eval(&self, coeffs: &[f64], x: f64, deriv: usize) -> Result<f64> {
        let (k, vals) = self.eval_local(x, deriv)?;
        Ok(vals
            .iter()
            .enumerate()
            .map(|(j, &v)| coeffs[2 * k + j] * v)
            .sum())
    }

    pub fn eval_c(&self, coeffs: &[C64], x: f64, deriv: usize) -> Result<C64> {
        let (k, vals) = self.eval_local(x, deriv)?;
        Ok(vals
            .iter()
            .enumerate()
            .map(|(j, &v)| coeffs[2 * k + j] * v)
            .fold(C64::new(0.0, 0.0), |a, b| a + b))
    }
}

/// End condition at the far end of a reduced basis. The start condition is
/// always a Dirichlet zero (drop the value function there).
#[derive(Debug, Clone)]
pub enum EndCondition {
    /// Dirichlet zero: drop the end value function, keep the slope.
    Dirichlet,
    /// Merge the last value and slope functions into one combination that
    /// fixes the logarithmic derivative to `l` at the end knot.
    LogDerivative(C64),
    /// Same surgery with a log-derivative depending on the transverse basis
    /// index (one value per alpha basis function, for 2D assembly).
    LogDerivativePerAlpha(Vec<C64>),
}

/// Boundary reduction of a full Hermite basis: drops the start value
/// function and applies the end condition, leaving `n_full - 2` functions,
/// which matches the number of collocation points.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    pub basis: SplineBasis1D,
    pub end: EndCondition,
}

impl ReducedBasis {
    pub fn new(basis: SplineBasis1D, end: EndCondition) -> Self {
        Self { basis, end }
    }

    pub fn n_red(&self) -> usize {
        self.basis.n_full() - 2
    }

    /// Expand reduced coefficients into the full basis. For the per-alpha
    /// variant pass the transverse index that owns this column.
    pub fn expand(&self, red: &[C64], alpha_index: Option<usize>) -> Vec<C64> {
        let n_full = self.basis.n_full();
        let mut full = vec![C64::new(0.0, 0.0); n_full];
        let n_red = self.n_red();
        full[1..n_red].copy_from_slice(&red[..n_red - 1]);
        let last = red[n_red - 1];
        match &self.end {
            EndCondition::Dirichlet => full[n_full - 1] = last,
            EndCondition::LogDerivative(l) => {
                full[n_full - 2] = last;
                full[n_full - 1] = l * last;
            }
            EndCondition::LogDerivativePerAlpha(ls) => {
                let l = ls[alpha_index.expect("per-alpha end condition needs an index")];
                full[n_full - 2] = last;
                full[n_full - 1] = l * last;
            }
        }
        full
    }

    /// Reduce a full-basis-column matrix (pts x n_full) to reduced columns.
    /// Only valid for `Dirichlet` and constant `LogDerivative` ends.
    pub fn reduce_columns(&self, m: &Array2<f64>) -> Array2<C64> {
        let n_red = self.n_red();
        let n_full = self.basis.n_full();
        assert_eq!(m.ncols(), n_full);
        let mut out = Array2::zeros((m.nrows(), n_red));
        for r in 0..m.nrows() {
            for j in 0..n_red - 1 {
                out[[r, j]] = C64::new(m[[r, j + 1]], 0.0);
            }
            out[[r, n_red - 1]] = match &self.end {
                EndCondition::Dirichlet => C64::new(m[[r, n_full - 1]], 0.0),
                EndCondition::LogDerivative(l) => {
                    C64::new(m[[r, n_full - 2]], 0.0) + l * m[[r, n_full - 1]]
                }
                EndCondition::LogDerivativePerAlpha(_) => {
                    panic!("reduce_columns on a per-alpha end condition")
                }
            };
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn uniform(n: usize, a: f64, b: f64) -> SplineBasis1D {
        SplineBasis1D::new(
            (0..=n)
                .map(|i| a + (b - a) * i as f64 / n as f64)
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn reproduces_cubics_exactly() {
        let basis = uniform(7, 0.0, 2.0);
        let f = |x: f64| 1.5 - 0.3 * x + 2.0 * x * x - 0.7 * x * x * x;
        let fp = |x: f64| -0.3 + 4.0 * x - 2.1 * x * x;
        let vals: Vec<f64> = basis.knots().iter().map(|&x| f(x)).collect();
        let ders: Vec<f64> = basis.knots().iter().map(|&x| fp(x)).collect();
        let c = basis.interpolate_hermite(&vals, &ders).unwrap();
        for i in 0..=200 {
            let x = 2.0 * i as f64 / 200.0;
            assert_relative_eq!(basis.eval(&c, x, 0).unwrap(), f(x), epsilon = 1e-12);
            assert_relative_eq!(basis.eval(&c, x, 1).unwrap(), fp(x), epsilon = 1e-11);
        }
    }

    #[test]
    fn delta_property_at_knots() {
        let basis = uniform(5, -1.0, 1.0);
        let knots: Vec<f64> = basis.knots().to_vec();
        let m = basis.matrix(&knots, 0).unwrap();
        for (r, _) in knots.iter().enumerate() {
            for j in 0..basis.n_full() {
                let expect = if j == 2 * r { 1.0 } else { 0.0 };
                assert_relative_eq!(m[[r, j]], expect, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn fourth_order_convergence() {
        // interpolation error of a smooth non-polynomial decays like h^4
        let f = |x: f64| (2.5 * x).sin() * (-x).exp();
        let fp = |x: f64| 2.5 * (2.5 * x).cos() * (-x).exp() - (2.5 * x).sin() * (-x).exp();
        let sup_err = |n: usize| -> f64 {
            let basis = uniform(n, 0.0, 3.0);
            let vals: Vec<f64> = basis.knots().iter().map(|&x| f(x)).collect();
            let ders: Vec<f64> = basis.knots().iter().map(|&x| fp(x)).collect();
            let c = basis.interpolate_hermite(&vals, &ders).unwrap();
            (0..=600)
                .map(|i| {
                    let x = 3.0 * i as f64 / 600.0;
                    (basis.eval(&c, x, 0).unwrap() - f(x)).abs()
                })
                .fold(0.0, f64::max)
        };
        let e1 = sup_err(10);
        let e2 = sup_err(20);
        let e3 = sup_err(40);
        assert!(e1 / e2 > 12.0, "rate {}", e1 / e2);
        assert!(e2 / e3 > 12.0, "rate {}", e2 / e3);
    }

    #[test]
    fn out_of_extent_rejected() {
        let basis = uniform(4, 0.0, 1.0);
        assert!(matches!(
            basis.eval_local(1.5, 0),
            Err(Error::OutOfExtent { .. })
        ));
    }

    #[test]
    fn collocation_count_matches_reduced_basis() {
        let basis = uniform(9, 0.0, 4.0);
        let red = ReducedBasis::new(basis.clone(), EndCondition::Dirichlet);
        assert_eq!(basis.collocation_points().len(), red.n_red());
        // one basis function removed per imposed condition
        assert_eq!(red.n_red(), basis.n_full() - 2);
    }

    #[test]
    fn merged_end_function_fixes_log_derivative() {
        let basis = uniform(6, 0.0, 3.0);
        let l = C64::new(-0.8, 1.3);
        let red = ReducedBasis::new(basis.clone(), EndCondition::LogDerivative(l));
        let mut coeffs = vec![C64::new(0.0, 0.0); red.n_red()];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = C64::new(0.3 + i as f64, -0.1 * i as f64);
        }
        let full = red.expand(&coeffs, None);
        let value = basis.eval_c(&full, 3.0, 0).unwrap();
        let deriv = basis.eval_c(&full, 3.0, 1).unwrap();
        assert!((deriv - l * value).norm() < 1e-12 * value.norm().max(1.0));
        // start is pinned to zero
        assert!(basis.eval_c(&full, 0.0, 0).unwrap().norm() < 1e-14);
    }

    #[test]
    fn collocation_weights_integrate_cubics() {
        let basis = uniform(6, 0.0, 2.0);
        let pts = basis.collocation_points();
        let ws = basis.collocation_weights();
        let total: f64 = pts
            .iter()
            .zip(&ws)
            .map(|(&x, &w)| w * (x * x * x - x + 0.5))
            .sum();
        // integral of x^3 - x + 0.5 over [0,2] = 4 - 2 + 1 = 3
        assert_relative_eq!(total, 3.0, epsilon = 1e-12);
    }
}
