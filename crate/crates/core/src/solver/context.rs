//! Problem setup shared across energies and the per-energy solve driver.

use super::gmres::{gmres, GmresConfig, GmresOutcome, LinearOp};
use super::incoming::{
    bound_plane_wave_tensor, cylindrical_wave_tensor, incident_normalization, IncomingKind,
    IncomingState,
};
use super::deflation::{ChannelDeflation, DeflatedPrecond};
use super::precond::KroneckerPrecond;
use crate::discretization::{
    build_alpha_grid, build_rho_grid, eval_tensor, EndCondition, Grid2D, ReducedBasis,
};
use crate::error::{Error, Result};
use crate::kinematics::{reduced_masses, tau_factors, MassSystem};
use crate::operators::{
    assemble_k, assemble_t, assemble_v, ChannelSet, FullOperator, KernelOp, KineticFactors,
};
use crate::specfun::{hankel_plus, hankel_plus_deriv};
use crate::twobody::{solve_bound_states, BoundState, PairPotential};
use ndarray::{s, Array1, Array2, ArrayView1};
use num_complex::Complex64 as C64;
use std::sync::Arc;

impl LinearOp for FullOperator {
    fn dim(&self) -> usize {
        FullOperator::dim(self)
    }
    fn apply(&self, x: ArrayView1<C64>) -> Array1<C64> {
        FullOperator::apply(self, x)
    }
}

/// Grid and solver parameters; lengths are unscaled fm, converted internally
/// to mass-scaled units.
#[derive(Debug, Clone)]
pub struct ProblemParams {
    /// Hyperradial extent as rho / sqrt(tau_x tau_y), in fm.
    pub rho_extent_fm: f64,
    pub n_rho: usize,
    pub n_alpha: usize,
    /// Exponential clustering strength of the rho knots towards the origin.
    pub rho_stretch: f64,
    /// Weight of the bound-state wavenumber term in the alpha knot density.
    pub alpha_weight: f64,
    /// Cap on the local wavenumber entering the alpha density.
    pub alpha_wavenumber_cap: f64,
    /// Radial extent (fm) and collocation count of the two-body solve.
    pub bound_extent_fm: f64,
    pub bound_points: usize,
    /// Gauss order of the angular kernel quadrature.
    pub kernel_quad_order: usize,
    /// Pair-channel deflation modes around the open spectator momentum.
    pub pair_deflation_modes: usize,
    /// Cylindrical deflation modes around the breakup momentum (per channel
    /// and Delves order).
    pub cyl_deflation_modes: usize,
}

impl Default for ProblemParams {
    fn default() -> Self {
        Self {
            rho_extent_fm: 60.0,
            n_rho: 128,
            n_alpha: 64,
            rho_stretch: 2.5,
            alpha_weight: 3.0,
            alpha_wavenumber_cap: 40.0,
            bound_extent_fm: 30.0,
            bound_points: 360,
            kernel_quad_order: 64,
            pair_deflation_modes: 24,
            cyl_deflation_modes: 12,
        }
    }
}

impl ProblemParams {
    /// The production-scale grid.
    pub fn production() -> Self {
        Self {
            rho_extent_fm: 140.0,
            n_rho: 500,
            n_alpha: 256,
            ..Self::default()
        }
    }
}

/// Everything that does not depend on the scattering energy: masses,
/// channels, potentials, the dimer state, grids and operator factors.
pub struct ThreeBodyProblem {
    pub ms: MassSystem,
    pub set: ChannelSet,
    pub potentials: Vec<PairPotential>,
    pub params: ProblemParams,
    pub tau_x: f64,
    pub tau_y: f64,
    pub mu_pair: f64,
    pub mu_spectator: f64,
    pub mu_3b: f64,
    pub grid: Arc<Grid2D>,
    pub bound: Arc<BoundState>,
    pub bound_channel: usize,
    pub factors: Vec<KineticFactors>,
    pub v_vals: Vec<Array2<f64>>,
    pub kernel: KernelOp,
}

impl ThreeBodyProblem {
    pub fn new(
        ms: MassSystem,
        set: ChannelSet,
        potentials: Vec<PairPotential>,
        params: ProblemParams,
    ) -> Result<Self> {
        let (tau_x, tau_y) = tau_factors(&ms, 1)?;
        let (mu_pair, mu_spectator, mu_3b) = reduced_masses(&ms, 1)?;

        // dimer: the unique two-body bound state among the channel potentials
        let radial = crate::twobody::build_radial_grid(
            params.bound_extent_fm * tau_x,
            params.bound_points,
            3.0,
        )?;
        let mut bound: Option<(usize, BoundState)> = None;
        for pot in &potentials {
            let states = solve_bound_states(pot, tau_x, 0, &radial)?;
            if let Some(state) = states.into_iter().next() {
                for &ch in &pot.channels {
                    if bound.is_some() {
                        return Err(Error::InvalidInput(
                            "more than one bound pair channel is out of scope".into(),
                        ));
                    }
                    bound = Some((ch, state.clone()));
                }
            }
        }
        let (bound_channel, bound) =
            bound.ok_or_else(|| Error::InvalidInput("no two-body bound state found".into()))?;

        let rho_max = params.rho_extent_fm * (tau_x * tau_y).sqrt();
        let rho_basis = build_rho_grid(rho_max, params.n_rho, params.rho_stretch)?;
        let alpha_basis = build_alpha_grid(
            params.n_alpha,
            Some(&bound),
            rho_max,
            params.alpha_weight,
            params.alpha_wavenumber_cap,
        )?;
        let grid = Arc::new(Grid2D::new(rho_basis, alpha_basis));

        let factors: Vec<KineticFactors> = set
            .channels
            .iter()
            .map(|c| assemble_t(&grid, c))
            .collect::<Result<_>>()?;
        let v_vals = assemble_v(&grid, &set, &potentials, tau_x)?;
        let kernel = assemble_k(&ms, &grid, &set, params.kernel_quad_order)?;

        Ok(Self {
            ms,
            set,
            potentials,
            params,
            tau_x,
            tau_y,
            mu_pair,
            mu_spectator,
            mu_3b,
            grid,
            bound: Arc::new(bound),
            bound_channel,
            factors,
            v_vals,
            kernel,
        })
    }

    /// The nucleon-deuteron doublet benchmark at the given grid scale.
    pub fn nd_benchmark(params: ProblemParams) -> Result<Self> {
        let ms = MassSystem::equal_from_hbar2_over_m(41.47)?;
        let set = crate::operators::nd_doublet();
        let (singlet, triplet) = crate::twobody::nucleon_pair_potentials();
        Self::new(ms, set, vec![singlet, triplet], params)
    }

    pub fn dimer_energy(&self) -> f64 {
        self.bound.energy
    }

    /// Boundary end conditions per channel at a given energy, plus the
    /// constant representative used by the preconditioner.
    fn end_conditions(&self, energy: f64) -> Result<(Vec<EndCondition>, Vec<EndCondition>)> {
        let rho_max = self.grid.rho_max();
        if energy > 0.0 {
            // outgoing cylindrical wave, alpha-independent
            let k = energy.sqrt();
            let l = hankel_plus_deriv(0.0, k * rho_max)? / hankel_plus(0.0, k * rho_max)? * k;
            let cond = EndCondition::LogDerivative(l);
            Ok((
                vec![cond.clone(); self.set.len()],
                vec![cond; self.set.len()],
            ))
        } else {
            // outgoing bound plane wave in the dimer channel, hard wall in
            // closed channels
            let q2 = energy - self.bound.energy;
            if q2 <= 0.0 {
                return Err(Error::ClosedChannel(format!(
                    "no open channel at E = {energy} MeV (dimer at {} MeV)",
                    self.bound.energy
                )));
            }
            let q = q2.sqrt();
            let nar = self.grid.n_alpha();
            let naf = self.grid.alpha.n_full();
            let mut ls = Vec::with_capacity(nar);
            for m in 0..nar {
                let full = if m + 1 < nar { m + 1 } else { naf - 1 };
                let alpha = self.grid.alpha.knots()[self.grid.alpha.knot_of(full)];
                let (ca, sa) = (alpha.cos(), alpha.sin());
                let x = rho_max * ca;
                // cos(a) phi'/phi tends to 1/rho_max as x -> 0
                let cos_dlog = if x < 1e-8 {
                    1.0 / rho_max
                } else {
                    ca * self.bound.eval_deriv(x) / self.bound.eval(x)
                };
                ls.push(C64::new(cos_dlog, q * sa));
            }
            let mut sys = Vec::with_capacity(self.set.len());
            let mut pre = Vec::with_capacity(self.set.len());
            for ch in 0..self.set.len() {
                if ch == self.bound_channel {
                    sys.push(EndCondition::LogDerivativePerAlpha(ls.clone()));
                    pre.push(EndCondition::LogDerivative(C64::new(1.0 / rho_max, q)));
                } else {
                    sys.push(EndCondition::Dirichlet);
                    pre.push(EndCondition::Dirichlet);
                }
            }
            Ok((sys, pre))
        }
    }

    /// Assemble the collocated operator and its preconditioner at an energy.
    pub fn at_energy(self: &Arc<Self>, energy: f64) -> Result<EnergySystem> {
        if energy == 0.0 {
            return Err(Error::InvalidInput(
                "E = 0 is excluded: the cylindrical channel functions degenerate".into(),
            ));
        }
        let (sys_end, pre_end) = self.end_conditions(energy)?;
        let rho_red: Vec<ReducedBasis> = sys_end
            .into_iter()
            .map(|e| ReducedBasis::new(self.grid.rho.clone(), e))
            .collect();
        let pre_red: Vec<ReducedBasis> = pre_end
            .into_iter()
            .map(|e| ReducedBasis::new(self.grid.rho.clone(), e))
            .collect();
        let alpha_red = ReducedBasis::new(self.grid.alpha.clone(), EndCondition::Dirichlet);
        let op = FullOperator::new(
            self.grid.clone(),
            &self.set,
            &self.factors,
            self.v_vals.clone(),
            &self.kernel,
            energy,
            rho_red,
            alpha_red.clone(),
        )?;
        let precond = KroneckerPrecond::new(&self.factors, energy, &pre_red, &alpha_red)?;
        let deflation = ChannelDeflation::build(
            &op,
            &self.bound,
            self.bound_channel,
            energy,
            self.params.pair_deflation_modes,
            self.params.cyl_deflation_modes,
        )?;
        Ok(EnergySystem {
            problem: self.clone(),
            energy,
            op,
            precond,
            deflation,
        })
    }
}

/// The collocated system pinned at one energy.
pub struct EnergySystem {
    pub problem: Arc<ThreeBodyProblem>,
    pub energy: f64,
    pub op: FullOperator,
    pub precond: KroneckerPrecond,
    pub deflation: Option<ChannelDeflation>,
}

/// A solved Faddeev component: full tensor coefficients per channel
/// (incident plus scattered) with evaluation helpers.
#[derive(Debug, Clone)]
pub struct ComponentField {
    pub grid: Arc<Grid2D>,
    pub tensors: Vec<Array2<C64>>,
}

impl ComponentField {
    pub fn eval(&self, ch: usize, rho: f64, alpha: f64) -> Result<C64> {
        eval_tensor(&self.grid, &self.tensors[ch], rho, alpha, 0, 0)
    }

    /// Evaluate at mass-scaled Jacobi coordinates.
    pub fn eval_cart(&self, ch: usize, x: f64, y: f64) -> Result<C64> {
        let rho = x.hypot(y);
        let alpha = if x == 0.0 {
            std::f64::consts::FRAC_PI_2
        } else {
            y.atan2(x)
        };
        self.eval(ch, rho, alpha)
    }
}

/// Solution record for one incoming column.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub incoming: IncomingState,
    pub field: ComponentField,
    /// Scattered part alone, reduced coefficients.
    pub scattered: Array1<C64>,
    pub iterations: usize,
    pub residual: f64,
    pub history: Vec<f64>,
}

impl EnergySystem {
    pub fn dimer_momentum(&self) -> Result<f64> {
        let q2 = self.energy - self.problem.bound.energy;
        if q2 <= 0.0 {
            return Err(Error::ClosedChannel(format!(
                "dimer channel closed at E = {} MeV",
                self.energy
            )));
        }
        Ok(q2.sqrt())
    }

    pub fn breakup_momentum(&self) -> Result<f64> {
        if self.energy <= 0.0 {
            return Err(Error::ClosedChannel(format!(
                "three-body channel closed at E = {} MeV",
                self.energy
            )));
        }
        Ok(self.energy.sqrt())
    }

    /// Construct an incident state on the spline basis.
    pub fn incoming(&self, kind: IncomingKind) -> Result<IncomingState> {
        let p = &self.problem;
        let zeros = Array2::zeros((p.grid.rho.n_full(), p.grid.alpha.n_full()));
        match kind {
            IncomingKind::BoundPlaneWave { channel } => {
                if channel != p.bound_channel {
                    return Err(Error::ClosedChannel(format!(
                        "channel {channel} holds no two-body bound state"
                    )));
                }
                let q = self.dimer_momentum()?;
                let mut chi = vec![zeros; p.set.len()];
                chi[channel] = bound_plane_wave_tensor(&p.grid, &p.bound, q);
                Ok(IncomingState {
                    kind,
                    q,
                    k: if self.energy > 0.0 {
                        self.energy.sqrt()
                    } else {
                        0.0
                    },
                    chi_full: chi,
                    profile_norm: 1.0,
                })
            }
            IncomingKind::CylindricalWave { channel, delves_n } => {
                let k = self.breakup_momentum()?;
                if channel >= p.set.len() {
                    return Err(Error::InvalidInput(format!(
                        "channel {channel} outside the channel set"
                    )));
                }
                let nu = 2 * (delves_n + 1);
                let norm = incident_normalization(
                    &p.ms,
                    p.set.w[[channel, channel]],
                    nu,
                    p.params.kernel_quad_order,
                )?;
                let mut chi = vec![zeros; p.set.len()];
                chi[channel] = cylindrical_wave_tensor(&p.grid, nu, k, norm);
                Ok(IncomingState {
                    kind,
                    q: self.dimer_momentum().unwrap_or(0.0),
                    k,
                    chi_full: chi,
                    profile_norm: norm,
                })
            }
        }
    }

    /// Right-hand side for an incoming state: `-V K chi` for a bound plane
    /// wave, `-(V + V K) chi` for a cylindrical wave.
    pub fn build_rhs(&self, incoming: &IncomingState) -> Array1<C64> {
        let direct_v = matches!(incoming.kind, IncomingKind::CylindricalWave { .. });
        self.op.rhs_from_incoming(&incoming.chi_full, direct_v)
    }

    /// Preconditioned solve for one incoming column.
    pub fn solve(&self, incoming: &IncomingState, cfg: &GmresConfig) -> Result<SolveResult> {
        let rhs = self.build_rhs(incoming);
        let pre = DeflatedPrecond {
            base: &self.precond,
            deflation: self.deflation.as_ref(),
        };
        let out = gmres(&self.op, Some(&pre), &rhs, None, cfg);
        if !out.converged {
            return Err(Error::NonConvergence {
                iterations: out.iterations,
                residual: out.residual,
                history: out.history,
            });
        }
        Ok(self.package(incoming, out))
    }

    /// Same system without the preconditioner (diagnostics); never errors on
    /// the iteration cap.
    pub fn solve_unpreconditioned(
        &self,
        incoming: &IncomingState,
        cfg: &GmresConfig,
    ) -> GmresOutcome {
        let rhs = self.build_rhs(incoming);
        gmres(&self.op, None, &rhs, None, cfg)
    }

    fn package(&self, incoming: &IncomingState, out: GmresOutcome) -> SolveResult {
        let p = &self.problem;
        let (nrr, nar) = (self.op.n_rho_red(), self.op.n_alpha_red());
        let block = nrr * nar;
        let mut tensors = Vec::with_capacity(p.set.len());
        for ch in 0..p.set.len() {
            let xr = out
                .x
                .slice(s![ch * block..(ch + 1) * block])
                .into_shape_with_order((nrr, nar))
                .unwrap();
            let full = self.op.expand_channel(xr, ch) + &incoming.chi_full[ch];
            tensors.push(full);
        }
        SolveResult {
            incoming: incoming.clone(),
            field: ComponentField {
                grid: p.grid.clone(),
                tensors,
            },
            scattered: out.x,
            iterations: out.iterations,
            residual: out.residual,
            history: out.history,
        }
    }
}
