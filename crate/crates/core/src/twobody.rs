//! Pair potentials (sums of Yukawa terms) and the radial two-body bound-state
//! solver on the cubic Hermite collocation basis.

use crate::discretization::spline::{EndCondition, ReducedBasis, SplineBasis1D};
use crate::error::{Error, Result};
use crate::quadrature::composite_on_knots;
use ndarray::Array2;
use ndarray_linalg::{Eig, Inverse};
use std::sync::Arc;

/// One Yukawa term `strength * exp(-range * r) / r` with strength in MeV fm
/// and range in 1/fm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YukawaTerm {
    pub strength: f64,
    pub range: f64,
}

/// A pair potential as a finite sum of Yukawa terms, acting in the listed
/// channels (indices into the channel set).
#[derive(Debug, Clone, PartialEq)]
pub struct PairPotential {
    pub terms: Vec<YukawaTerm>,
    pub channels: Vec<usize>,
}

impl PairPotential {
    pub fn new(terms: Vec<YukawaTerm>, channels: Vec<usize>) -> Self {
        Self { terms, channels }
    }

    /// V(r) at a physical separation r in fm.
    pub fn eval_physical(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.strength * (-t.range * r).exp() / r)
            .sum()
    }
}

/// Potential at a mass-scaled separation x (the physical separation is
/// `r = x / tau_x`).
pub fn eval_potential(p: &PairPotential, tau_x: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!(
            "potential evaluation requires x > 0, got {x}"
        )));
    }
    Ok(p.eval_physical(x / tau_x))
}

/// Negative-energy eigenstate of `-d2/dx2 + l(l+1)/x2 + V(x/tau_x)` on the
/// mass-scaled radial coordinate, unit L2 norm, `phi(0) = 0`.
#[derive(Debug, Clone)]
pub struct BoundState {
    pub energy: f64,
    pub ell: u32,
    pub basis: SplineBasis1D,
    /// Full Hermite coefficients (values and slopes at the knots).
    pub coeffs: Vec<f64>,
    pub potential: Arc<PairPotential>,
    pub tau_x: f64,
    /// Tail wavenumber sqrt(-energy) in mass-scaled units.
    pub kappa: f64,
    tail_amp: f64,
    nodes: usize,
}

impl BoundState {
    fn x_max(&self) -> f64 {
        self.basis.extent().1
    }

    /// Wavefunction value; beyond the grid the exponential tail
    /// `A exp(-kappa x)` continues the spline.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x <= self.x_max() {
            self.basis.eval(&self.coeffs, x, 0).unwrap()
        } else {
            self.tail_amp * (-self.kappa * x).exp()
        }
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.coeffs[1];
        }
        if x <= self.x_max() {
            self.basis.eval(&self.coeffs, x, 1).unwrap()
        } else {
            -self.kappa * self.tail_amp * (-self.kappa * x).exp()
        }
    }

    /// Second derivative through the radial equation.
    pub fn second_deriv(&self, x: f64) -> f64 {
        let veff_phi = if x > 1e-12 {
            let v = self.potential.eval_physical(x / self.tau_x);
            let centrifugal = (self.ell * (self.ell + 1)) as f64 / (x * x);
            (v + centrifugal - self.energy) * self.eval(x)
        } else {
            // x -> 0 limit: V phi -> sum_i strength_i tau_x phi'(0) for a
            // Yukawa sum in an s wave
            match self.ell {
                0 => {
                    let s: f64 = self.potential.terms.iter().map(|t| t.strength).sum();
                    s * self.tau_x * self.eval_deriv(0.0)
                }
                _ => 0.0,
            }
        };
        veff_phi
    }

    /// Local wavenumber estimate sqrt(|V + centrifugal - energy|).
    pub fn local_wavenumber(&self, x: f64) -> f64 {
        let x = x.max(1e-10);
        let v = self.potential.eval_physical(x / self.tau_x);
        let centrifugal = (self.ell * (self.ell + 1)) as f64 / (x * x);
        (v + centrifugal - self.energy).abs().sqrt()
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }
}

/// Radial grid for the two-body solve: breakpoints on [0, extent] (mass
/// scaled) from a stretched map dense near the origin.
pub fn build_radial_grid(extent: f64, n_points: usize, stretch: f64) -> Result<SplineBasis1D> {
    crate::discretization::grids::build_rho_grid(extent, n_points, stretch)
}

/// All negative-energy eigenpairs, normalized and ordered by node count.
/// Returns an empty list when the potential supports no bound state.
///
/// A first pass with a Dirichlet box estimates the binding momenta; a second
/// pass imposes the decaying-tail logarithmic derivative of the least-bound
/// state at the outer edge, which removes the box truncation error.
pub fn solve_bound_states(
    p: &PairPotential,
    tau_x: f64,
    ell: u32,
    basis: &SplineBasis1D,
) -> Result<Vec<BoundState>> {
    let first = solve_pass(p, tau_x, ell, basis, EndCondition::Dirichlet)?;
    let Some(kappa_min) = first
        .iter()
        .map(|s| s.kappa)
        .min_by(f64::total_cmp)
    else {
        return Ok(first);
    };
    solve_pass(
        p,
        tau_x,
        ell,
        basis,
        EndCondition::LogDerivative(num_complex::Complex64::new(-kappa_min, 0.0)),
    )
}

fn solve_pass(
    p: &PairPotential,
    tau_x: f64,
    ell: u32,
    basis: &SplineBasis1D,
    end: EndCondition,
) -> Result<Vec<BoundState>> {
    let red = ReducedBasis::new(basis.clone(), end);
    let pts = basis.collocation_points();
    let n = red.n_red();

    let e0 = red.reduce_columns(&basis.matrix(&pts, 0)?);
    let d2 = red.reduce_columns(&basis.matrix(&pts, 2)?);
    let mut a = Array2::<f64>::zeros((n, n));
    let mut b = Array2::<f64>::zeros((n, n));
    for (r, &x) in pts.iter().enumerate() {
        let veff = eval_potential(p, tau_x, x)? + (ell * (ell + 1)) as f64 / (x * x);
        for j in 0..n {
            a[[r, j]] = -d2[[r, j]].re + veff * e0[[r, j]].re;
            b[[r, j]] = e0[[r, j]].re;
        }
    }

    // generalized problem A c = eps B c as a standard eigenproblem of B^-1 A
    let m = b.inv()?.dot(&a);
    let (vals, vecs) = m.eig()?;

    let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut states: Vec<BoundState> = Vec::new();
    for (idx, val) in vals.iter().enumerate() {
        if val.im.abs() > 1e-8 * scale.max(1.0) || val.re >= -1e-6 {
            continue;
        }
        let col = vecs.column(idx);
        // rotate the eigenvector phase to make it real
        let lead = col
            .iter()
            .cloned()
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
            .unwrap();
        let phase = lead / lead.norm();
        let red_real: Vec<f64> = col.iter().map(|c| (c / phase).re).collect();
        let imag_resid: f64 = col
            .iter()
            .map(|c| (c / phase).im.abs())
            .fold(0.0, f64::max);
        if imag_resid > 1e-6 {
            continue;
        }
        let red_c: Vec<num_complex::Complex64> = red_real
            .iter()
            .map(|&v| num_complex::Complex64::new(v, 0.0))
            .collect();
        let full_c = red.expand(&red_c, None);
        let mut coeffs: Vec<f64> = full_c.iter().map(|c| c.re).collect();

        // normalize to unit L2 norm with a rule exact for (cubic)^2
        let (qx, qw) = composite_on_knots(basis.knots(), 4);
        let norm2: f64 = qx
            .iter()
            .zip(&qw)
            .map(|(&x, &w)| {
                let v = basis.eval(&coeffs, x, 0).unwrap();
                w * v * v
            })
            .sum();
        let mut inv_norm = 1.0 / norm2.sqrt();
        // sign: rising slope at the origin
        if coeffs[1] * inv_norm < 0.0 {
            inv_norm = -inv_norm;
        }
        for c in coeffs.iter_mut() {
            *c *= inv_norm;
        }

        // interior nodes from sign changes at collocation points
        let values: Vec<f64> = pts
            .iter()
            .map(|&x| basis.eval(&coeffs, x, 0).unwrap())
            .collect();
        let peak = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let signs: Vec<f64> = values
            .iter()
            .filter(|v| v.abs() > 1e-8 * peak)
            .map(|v| v.signum())
            .collect();
        let nodes = signs.windows(2).filter(|w| w[0] != w[1]).count();

        let kappa = (-val.re).sqrt();
        // anchor the exponential continuation at the outer edge
        let xe = basis.extent().1;
        let edge = basis.eval(&coeffs, xe, 0).unwrap();
        let tail_amp = edge * (kappa * xe).exp();
        states.push(BoundState {
            energy: val.re,
            ell,
            basis: basis.clone(),
            coeffs,
            potential: Arc::new(p.clone()),
            tau_x,
            kappa,
            tail_amp,
            nodes,
        });
    }
    states.sort_by(|a, b| a.nodes.cmp(&b.nodes).then(a.energy.total_cmp(&b.energy)));
    Ok(states)
}

/// Smallest mass-scaled x beyond which the wavefunction stays below
/// `threshold * max|phi|`.
pub fn potential_range(state: &BoundState, threshold: f64) -> Result<f64> {
    if threshold <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let (qx, _) = composite_on_knots(state.basis.knots(), 4);
    let values: Vec<f64> = qx.iter().map(|&x| state.eval(x).abs()).collect();
    let peak = values.iter().cloned().fold(0.0, f64::max);
    let cut = threshold * peak;
    let mut b = 0.0;
    for (&x, &v) in qx.iter().zip(&values) {
        if v >= cut {
            b = x;
        }
    }
    Ok(b)
}

/// Expectation values (kinetic, potential) for a bound state; their sum
/// reproduces the eigenvalue to quadrature accuracy.
pub fn energy_expectations(state: &BoundState) -> (f64, f64) {
    let (qx, qw) = composite_on_knots(state.basis.knots(), 6);
    let mut kinetic = 0.0;
    let mut potential = 0.0;
    for (&x, &w) in qx.iter().zip(&qw) {
        let phi = state.eval(x);
        let dphi = state.eval_deriv(x);
        let centrifugal = (state.ell * (state.ell + 1)) as f64 / (x * x);
        kinetic += w * (dphi * dphi + centrifugal * phi * phi);
        potential += w * state.potential.eval_physical(x / state.tau_x) * phi * phi;
    }
    (kinetic, potential)
}

/// The two benchmark nucleon pair potentials: a singlet and a triplet Yukawa
/// pair with a common repulsive core term.
pub fn nucleon_pair_potentials() -> (PairPotential, PairPotential) {
    let singlet = PairPotential::new(
        vec![
            YukawaTerm {
                strength: 1438.72,
                range: 3.11,
            },
            YukawaTerm {
                strength: -513.968,
                range: 1.55,
            },
        ],
        vec![0],
    );
    let triplet = PairPotential::new(
        vec![
            YukawaTerm {
                strength: 1438.72,
                range: 3.11,
            },
            YukawaTerm {
                strength: -626.885,
                range: 1.55,
            },
        ],
        vec![1],
    );
    (singlet, triplet)
}

/// Convenience: the triplet deuteron at the given mass scaling.
pub fn solve_deuteron(tau_x: f64, extent_fm: f64, n_points: usize) -> Result<BoundState> {
    let (_, triplet) = nucleon_pair_potentials();
    let basis = build_radial_grid(extent_fm * tau_x, n_points, 3.0)?;
    let states = solve_bound_states(&triplet, tau_x, 0, &basis)?;
    states
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidInput("triplet potential produced no bound state".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tau_x_nucleon() -> f64 {
        (1.0f64 / 41.47).sqrt()
    }

    #[test]
    fn potential_values_from_printed_coefficients() {
        let (singlet, triplet) = nucleon_pair_potentials();
        // direct arithmetic on the printed strengths at r = 1 fm
        let expect = 1438.72 * (-3.11f64).exp() - 513.968 * (-1.55f64).exp();
        assert_relative_eq!(singlet.eval_physical(1.0), expect, epsilon = 1e-12);
        assert_relative_eq!(singlet.eval_physical(1.0), -44.9204, epsilon = 1e-4);
        // difference is a single Yukawa
        for &r in &[0.3, 1.0, 2.5, 6.0] {
            let diff = triplet.eval_physical(r) - singlet.eval_physical(r);
            assert_relative_eq!(diff, -112.917 * (-1.55 * r).exp() / r, max_relative = 1e-12);
        }
        // short range
        assert!(triplet.eval_physical(40.0).abs() < 1e-24);
    }

    #[test]
    fn mass_scaled_argument_conversion() {
        let (singlet, _) = nucleon_pair_potentials();
        let tau = tau_x_nucleon();
        let x = 0.7;
        assert_relative_eq!(
            eval_potential(&singlet, tau, x).unwrap(),
            singlet.eval_physical(x / tau),
            epsilon = 1e-14
        );
        assert!(eval_potential(&singlet, tau, 0.0).is_err());
        assert!(eval_potential(&singlet, tau, -1.0).is_err());
    }

    #[test]
    fn deuteron_binding_energy() {
        let state = solve_deuteron(tau_x_nucleon(), 30.0, 360).unwrap();
        assert!(
            (state.energy - (-2.2306)).abs() < 1e-3,
            "E_d = {}",
            state.energy
        );
        assert_eq!(state.nodes(), 0);
        assert_eq!(state.ell, 0);
        // phi(0) = 0 and unit norm by construction
        assert_eq!(state.eval(0.0), 0.0);
    }

    #[test]
    fn singlet_has_no_bound_state() {
        let (singlet, _) = nucleon_pair_potentials();
        let tau = tau_x_nucleon();
        let basis = build_radial_grid(30.0 * tau, 360, 3.0).unwrap();
        let states = solve_bound_states(&singlet, tau, 0, &basis).unwrap();
        assert!(states.is_empty(), "found {:?}", states.len());
    }

    #[test]
    fn zero_potential_has_no_bound_state() {
        let p = PairPotential::new(vec![], vec![0]);
        let tau = tau_x_nucleon();
        let basis = build_radial_grid(20.0 * tau, 200, 2.0).unwrap();
        let states = solve_bound_states(&p, tau, 0, &basis).unwrap();
        assert!(states.is_empty());
    }

    #[test]
    fn eigenvalue_stable_under_grid_refinement() {
        let tau = tau_x_nucleon();
        let coarse = solve_deuteron(tau, 28.0, 240).unwrap();
        let fine = solve_deuteron(tau, 28.0, 480).unwrap();
        assert!(
            (coarse.energy - fine.energy).abs() < 1e-4,
            "{} vs {}",
            coarse.energy,
            fine.energy
        );
    }

    #[test]
    fn virial_balance() {
        let state = solve_deuteron(tau_x_nucleon(), 30.0, 360).unwrap();
        let (t, v) = energy_expectations(&state);
        assert_relative_eq!(t + v, state.energy, max_relative = 2e-4);
    }

    #[test]
    fn tail_decay_matches_binding_momentum() {
        let state = solve_deuteron(tau_x_nucleon(), 30.0, 360).unwrap();
        let kappa = state.kappa;
        // log-slope fit over the outer exponential region (inside the grid)
        let x0 = 2.0 / kappa;
        let x1 = 3.5 / kappa;
        let n = 40;
        let mut sx = 0.0;
        let mut sy = 0.0;
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        for i in 0..n {
            let x = x0 + (x1 - x0) * i as f64 / (n - 1) as f64;
            let y = state.eval(x).abs().ln();
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        let slope = (n as f64 * sxy - sx * sy) / (n as f64 * sxx - sx * sx);
        assert_relative_eq!(slope, -kappa, max_relative = 0.01);
    }

    #[test]
    fn range_estimates() {
        let state = solve_deuteron(tau_x_nucleon(), 30.0, 360).unwrap();
        let b = potential_range(&state, 1e-3).unwrap();
        assert!(b > 0.0 && b.is_finite());
        // threshold 1 returns the peak position
        let b_peak = potential_range(&state, 1.0).unwrap();
        let (qx, _) = composite_on_knots(state.basis.knots(), 4);
        let peak_x = qx
            .iter()
            .cloned()
            .max_by(|&a, &b| state.eval(a).abs().total_cmp(&state.eval(b).abs()))
            .unwrap();
        assert_relative_eq!(b_peak, peak_x, epsilon = 1e-12);
        // monotonic: smaller threshold, larger range
        let b2 = potential_range(&state, 1e-5).unwrap();
        assert!(b2 >= b);
    }

    #[test]
    fn tail_continuation_is_smooth() {
        let state = solve_deuteron(tau_x_nucleon(), 25.0, 300).unwrap();
        let xe = state.basis.extent().1;
        let inside = state.eval(xe - 1e-9);
        let outside = state.eval(xe + 1e-9);
        assert_relative_eq!(inside, outside, max_relative = 1e-6);
    }
}
