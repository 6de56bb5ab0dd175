//! Assembly of the collocated operators on the polar grid: the kinetic
//! Kronecker-sum factors, the diagonal potential, the evaluation (identity)
//! rows and the channel-coupling kernel.
//!
//! Rows of every factor matrix are collocation points, columns the full
//! (unreduced) basis; boundary reductions are applied when the factors act
//! on unknown coefficient vectors.

use super::channels::{require_s_wave, Channel, ChannelSet};
use super::kernel::kernel_matrix_total;
use crate::discretization::{Grid2D, ReducedBasis};
use crate::error::{Error, Result};
use crate::kinematics::MassSystem;
use crate::twobody::PairPotential;
use ndarray::{s, Array1, Array2, ArrayView1, ArrayView2};
use num_complex::Complex64 as C64;
use std::sync::Arc;

/// Kronecker factors of the kinetic operator for one channel:
/// `T = t_rho (x) e_alpha + p_rho (x) a_alpha`, and the evaluation factors
/// `identity = e_rho (x) e_alpha`.
#[derive(Debug, Clone)]
pub struct KineticFactors {
    /// `-d2/drho2 - (1/rho) d/drho` rows.
    pub t_rho: Array2<f64>,
    /// `1/rho^2` times value rows.
    pub p_rho: Array2<f64>,
    /// Value rows in rho.
    pub e_rho: Array2<f64>,
    /// `-d2/dalpha2 + l(l+1)/cos^2 + lam(lam+1)/sin^2` rows.
    pub a_alpha: Array2<f64>,
    /// Value rows in alpha.
    pub e_alpha: Array2<f64>,
}

/// Polar kinetic operator factors for a channel.
pub fn assemble_t(grid: &Grid2D, channel: &Channel) -> Result<KineticFactors> {
    let d2r = grid.rho.matrix(&grid.rho_points, 2)?;
    let d1r = grid.rho.matrix(&grid.rho_points, 1)?;
    let e_rho = grid.rho.matrix(&grid.rho_points, 0)?;
    let mut t_rho = -d2r;
    let mut p_rho = e_rho.clone();
    for (r, &rho) in grid.rho_points.iter().enumerate() {
        for n in 0..grid.rho.n_full() {
            t_rho[[r, n]] -= d1r[[r, n]] / rho;
            p_rho[[r, n]] /= rho * rho;
        }
    }
    let d2a = grid.alpha.matrix(&grid.alpha_points, 2)?;
    let e_alpha = grid.alpha.matrix(&grid.alpha_points, 0)?;
    let mut a_alpha = -d2a;
    let l_fac = (channel.ell * (channel.ell + 1)) as f64;
    let lam_fac = (channel.lambda * (channel.lambda + 1)) as f64;
    if l_fac != 0.0 || lam_fac != 0.0 {
        for (c, &alpha) in grid.alpha_points.iter().enumerate() {
            let pot = l_fac / alpha.cos().powi(2) + lam_fac / alpha.sin().powi(2);
            for n in 0..grid.alpha.n_full() {
                a_alpha[[c, n]] += pot * e_alpha[[c, n]];
            }
        }
    }
    Ok(KineticFactors {
        t_rho,
        p_rho,
        e_rho,
        a_alpha,
        e_alpha,
    })
}

/// Diagonal potential values at the collocation points for every channel;
/// pair separations are `x = rho cos(alpha)` converted to fm through tau_x.
pub fn assemble_v(
    grid: &Grid2D,
    set: &ChannelSet,
    potentials: &[PairPotential],
    tau_x: f64,
) -> Result<Vec<Array2<f64>>> {
    let mut vals = vec![Array2::zeros((grid.n_rho(), grid.n_alpha())); set.len()];
    for pot in potentials {
        for &ch in &pot.channels {
            if ch >= set.len() {
                return Err(Error::InvalidInput(format!(
                    "potential references channel {ch} outside the channel set"
                )));
            }
            for (r, &rho) in grid.rho_points.iter().enumerate() {
                for (c, &alpha) in grid.alpha_points.iter().enumerate() {
                    let x = rho * alpha.cos();
                    vals[ch][[r, c]] += pot.eval_physical(x / tau_x);
                }
            }
        }
    }
    Ok(vals)
}

/// The assembled channel-coupling kernel: recoupling weights times the
/// orbital transform summed over both rearrangements.
#[derive(Debug, Clone)]
pub struct KernelOp {
    /// Alpha-collocation rows of the two-arrangement orbital transform.
    pub k_alpha: Array2<f64>,
    /// Channel-space recoupling weights.
    pub w: Array2<f64>,
}

/// Assemble the kernel for an s-wave channel set.
pub fn assemble_k(
    ms: &MassSystem,
    grid: &Grid2D,
    set: &ChannelSet,
    quad_order: usize,
) -> Result<KernelOp> {
    require_s_wave(set)?;
    let k_alpha = kernel_matrix_total(ms, &grid.alpha, &grid.alpha_points, quad_order)?;
    Ok(KernelOp {
        k_alpha,
        w: set.w.clone(),
    })
}

fn to_c64(m: &Array2<f64>) -> Array2<C64> {
    m.mapv(|v| C64::new(v, 0.0))
}

/// The collocated operator `T + V + V.K - E 1` over all channels, acting on
/// boundary-reduced coefficient vectors and producing residual values at the
/// collocation points. The potential and the kernel are kept as separate
/// factors and composed here at application time.
pub struct FullOperator {
    pub grid: Arc<Grid2D>,
    pub energy: f64,
    pub n_ch: usize,
    t_rho: Array2<f64>,
    p_rho: Array2<f64>,
    e_rho: Array2<f64>,
    a_alpha: Vec<Array2<f64>>,
    e_alpha: Array2<f64>,
    kernel: Array2<C64>,
    pub v_vals: Vec<Array2<f64>>,
    pub w: Array2<f64>,
    pub rho_red: Vec<ReducedBasis>,
    pub alpha_red: ReducedBasis,
}

/// Multiply a collocation factor (two Gauss rows per interval, four local
/// columns each) into full-basis coefficients.
fn banded_left(m: &Array2<f64>, x: &Array2<C64>) -> Array2<C64> {
    let (rows, cols) = (m.nrows(), x.ncols());
    let mut out = Array2::zeros((rows, cols));
    for r in 0..rows {
        let base = 2 * (r / 2);
        for c in 0..cols {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..4 {
                acc += x[[base + j, c]] * m[[r, base + j]];
            }
            out[[r, c]] = acc;
        }
    }
    out
}

/// As `banded_left` on the second index: returns `x . m^T`.
fn banded_right(x: &Array2<C64>, m: &Array2<f64>) -> Array2<C64> {
    let (rows, cols) = (x.nrows(), m.nrows());
    let mut out = Array2::zeros((rows, cols));
    for r in 0..rows {
        for c in 0..cols {
            let base = 2 * (c / 2);
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..4 {
                acc += x[[r, base + j]] * m[[c, base + j]];
            }
            out[[r, c]] = acc;
        }
    }
    out
}

impl FullOperator {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        grid: Arc<Grid2D>,
        set: &ChannelSet,
        factors: &[KineticFactors],
        v_vals: Vec<Array2<f64>>,
        kernel_op: &KernelOp,
        energy: f64,
        rho_red: Vec<ReducedBasis>,
        alpha_red: ReducedBasis,
    ) -> Result<Self> {
        if factors.len() != set.len() || v_vals.len() != set.len() || rho_red.len() != set.len() {
            return Err(Error::InvalidInput(
                "per-channel data must match the channel count".into(),
            ));
        }
        Ok(Self {
            energy,
            n_ch: set.len(),
            t_rho: factors[0].t_rho.clone(),
            p_rho: factors[0].p_rho.clone(),
            e_rho: factors[0].e_rho.clone(),
            a_alpha: factors.iter().map(|f| f.a_alpha.clone()).collect(),
            e_alpha: factors[0].e_alpha.clone(),
            kernel: to_c64(&kernel_op.k_alpha),
            v_vals,
            w: kernel_op.w.clone(),
            rho_red,
            alpha_red,
            grid,
        })
    }

    pub fn n_rho_red(&self) -> usize {
        self.grid.n_rho()
    }

    pub fn n_alpha_red(&self) -> usize {
        self.grid.n_alpha()
    }

    /// Total number of unknowns (equals the number of collocation values).
    pub fn dim(&self) -> usize {
        self.n_ch * self.n_rho_red() * self.n_alpha_red()
    }

    /// Expand one channel's reduced coefficients to the full tensor basis.
    pub fn expand_channel(&self, xr: ArrayView2<C64>, ch: usize) -> Array2<C64> {
        let nrf = self.grid.rho.n_full();
        let naf = self.grid.alpha.n_full();
        let nrr = self.n_rho_red();
        let nar = self.n_alpha_red();
        let mut full = Array2::zeros((nrf, naf));
        for m in 0..nar {
            let col: Vec<C64> = (0..nrr).map(|r| xr[[r, m]]).collect();
            let full_col = self.rho_red[ch].expand(&col, Some(m));
            // alpha reduction: interior index m -> m+1, last -> slope at the
            // far edge
            let target = if m + 1 < nar { m + 1 } else { naf - 1 };
            for (r, &v) in full_col.iter().enumerate() {
                full[[r, target]] = v;
            }
        }
        full
    }

    /// Collocation values of the interpolant (the indicator operator).
    pub fn value_rows(&self, xf: &Array2<C64>) -> Array2<C64> {
        banded_right(&banded_left(&self.e_rho, xf), &self.e_alpha)
    }

    /// Collocation values of the kinetic operator applied to a full tensor.
    pub fn kinetic_rows(&self, ch: usize, xf: &Array2<C64>) -> Array2<C64> {
        banded_right(&banded_left(&self.t_rho, xf), &self.e_alpha)
            + banded_right(&banded_left(&self.p_rho, xf), &self.a_alpha[ch])
    }

    /// Collocation values of the orbital kernel transform of a full tensor.
    pub fn kernel_rows(&self, xf: &Array2<C64>) -> Array2<C64> {
        banded_left(&self.e_rho, xf).dot(&self.kernel.t())
    }

    fn add_diag_product(dst: &mut Array2<C64>, scale: f64, diag: &Array2<f64>, src: &Array2<C64>) {
        ndarray::Zip::from(dst)
            .and(diag)
            .and(src)
            .for_each(|d, &v, &s| *d += s * (scale * v));
    }

    /// Apply `T + V + V.K - E 1` to a flattened reduced coefficient vector.
    pub fn apply(&self, x: ArrayView1<C64>) -> Array1<C64> {
        let (nrr, nar) = (self.n_rho_red(), self.n_alpha_red());
        let block = nrr * nar;
        let mut out = Array1::zeros(self.dim());
        let mut kernel_vals: Vec<Array2<C64>> = Vec::with_capacity(self.n_ch);
        let mut direct: Vec<Array2<C64>> = Vec::with_capacity(self.n_ch);
        for b in 0..self.n_ch {
            let xr = x
                .slice(s![b * block..(b + 1) * block])
                .into_shape_with_order((nrr, nar))
                .unwrap();
            let xf = self.expand_channel(xr, b);
            let values = self.value_rows(&xf);
            let mut own = self.kinetic_rows(b, &xf);
            own.scaled_add(C64::new(-self.energy, 0.0), &values);
            Self::add_diag_product(&mut own, 1.0, &self.v_vals[b], &values);
            direct.push(own);
            kernel_vals.push(self.kernel_rows(&xf));
        }
        for a in 0..self.n_ch {
            let mut acc = direct[a].clone();
            for b in 0..self.n_ch {
                Self::add_diag_product(&mut acc, self.w[[a, b]], &self.v_vals[a], &kernel_vals[b]);
            }
            out.slice_mut(s![a * block..(a + 1) * block])
                .assign(&acc.into_shape_with_order(block).unwrap());
        }
        out
    }

    /// Right-hand side for an incoming state given by full-basis tensors per
    /// channel: `-V.K chi`, plus `-V chi` when `include_direct_v` is set
    /// (the free cylindrical state is not an eigenstate of T + V).
    pub fn rhs_from_incoming(
        &self,
        chi_full: &[Array2<C64>],
        include_direct_v: bool,
    ) -> Array1<C64> {
        let (nrr, nar) = (self.n_rho_red(), self.n_alpha_red());
        let block = nrr * nar;
        let kernel_vals: Vec<Array2<C64>> =
            chi_full.iter().map(|xf| self.kernel_rows(xf)).collect();
        let mut out = Array1::zeros(self.dim());
        for a in 0..self.n_ch {
            let mut acc = Array2::<C64>::zeros((nrr, nar));
            for b in 0..self.n_ch {
                Self::add_diag_product(&mut acc, -self.w[[a, b]], &self.v_vals[a], &kernel_vals[b]);
            }
            if include_direct_v {
                let values = self.value_rows(&chi_full[a]);
                Self::add_diag_product(&mut acc, -1.0, &self.v_vals[a], &values);
            }
            out.slice_mut(s![a * block..(a + 1) * block])
                .assign(&acc.into_shape_with_order(block).unwrap());
        }
        out
    }

    /// Dense matrix (tests only; the dimension grows fast).
    pub fn dense(&self) -> Array2<C64> {
        let n = self.dim();
        let mut m = Array2::zeros((n, n));
        let mut e = Array1::zeros(n);
        for j in 0..n {
            e[j] = C64::new(1.0, 0.0);
            let col = self.apply(e.view());
            m.column_mut(j).assign(&col);
            e[j] = C64::new(0.0, 0.0);
        }
        m
    }
}
