//! Channel-space deflation for the Kronecker preconditioner.
//!
//! The free-operator inverse leaves a band of near-singular modes untouched:
//! propagating pair-channel shapes `phi_d(x) g(y)` with wavenumbers near the
//! open-channel momentum, and above breakup the cylindrical shapes
//! `D_nu(alpha) Z_nu(k rho)`. A Galerkin correction on a small subspace
//! spanned by those shapes makes the preconditioned operator exact there and
//! removes the slow phase of the Krylov iteration.

use super::gmres::LinearOp;
use super::incoming::hermite_tensor;
use super::precond::KroneckerPrecond;
use crate::discretization::EndCondition;
use crate::error::{Error, Result};
use crate::operators::FullOperator;
use crate::specfun::bessel_j;
use crate::twobody::BoundState;
use ndarray::{s, Array1, Array2, ArrayView1};
use ndarray_linalg::Inverse;
use num_complex::Complex64 as C64;

/// Deflation subspace with its Galerkin data.
pub struct ChannelDeflation {
    /// Orthonormal basis, one flattened reduced vector per column.
    u: Array2<C64>,
    /// `A U`.
    au: Array2<C64>,
    /// `(U^H A U)^-1`.
    small_inv: Array2<C64>,
}

/// Project a full tensor onto the reduced coefficient space of a channel
/// (drops the boundary rows; the merged end coefficient keeps the value
/// part). An approximate section of the expansion map, good enough for
/// deflation vectors.
fn reduce_tensor(op: &FullOperator, ch: usize, full: &Array2<C64>) -> Array2<C64> {
    let nrr = op.n_rho_red();
    let nar = op.n_alpha_red();
    let nrf = op.grid.rho.n_full();
    let naf = op.grid.alpha.n_full();
    let mut red = Array2::zeros((nrr, nar));
    let rho_last_full = match &op.rho_red[ch].end {
        EndCondition::Dirichlet => nrf - 1,
        _ => nrf - 2,
    };
    for m in 0..nar {
        let full_col = if m + 1 < nar { m + 1 } else { naf - 1 };
        for r in 0..nrr {
            let full_row = if r + 1 < nrr { r + 1 } else { rho_last_full };
            red[[r, m]] = full[[full_row, full_col]];
        }
    }
    red
}

fn flatten_channel(op: &FullOperator, ch: usize, red: &Array2<C64>) -> Array1<C64> {
    let block = op.n_rho_red() * op.n_alpha_red();
    let mut v = Array1::zeros(op.dim());
    v.slice_mut(s![ch * block..(ch + 1) * block])
        .assign(&red.clone().into_shape_with_order(block).unwrap());
    v
}

fn cdot(a: ArrayView1<C64>, b: ArrayView1<C64>) -> C64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.conj() * y)
        .fold(C64::new(0.0, 0.0), |acc, v| acc + v)
}

impl ChannelDeflation {
    /// Build the subspace for the open channels of a system: pair-channel
    /// waves around the spectator momentum `q` (when the dimer channel is
    /// open) and cylindrical waves around the breakup momentum.
    pub fn build(
        op: &FullOperator,
        bound: &BoundState,
        bound_channel: usize,
        energy: f64,
        pair_modes: usize,
        cyl_modes: usize,
    ) -> Result<Option<Self>> {
        let grid = &op.grid;
        let rho_max = grid.rho_max();
        let mut raw: Vec<Array1<C64>> = Vec::new();

        let q2 = energy - bound.energy;
        if q2 > 0.0 {
            let q = q2.sqrt();
            let dk = std::f64::consts::PI / rho_max;
            let half = pair_modes as isize / 2;
            for n in -half..=half {
                let k = q + n as f64 * dk;
                if k <= 0.05 * dk {
                    continue;
                }
                let tensor = hermite_tensor(grid, |rho, alpha| {
                    let (ca, sa) = (alpha.cos(), alpha.sin());
                    let x = rho * ca;
                    let y = rho * sa;
                    let phi = bound.eval(x);
                    let dphi = bound.eval_deriv(x);
                    let ddphi = bound.second_deriv(x);
                    let g = (k * y).sin();
                    let dg = k * (k * y).cos();
                    let ddg = -k * k * (k * y).sin();
                    let v = phi * g;
                    let dr = ca * dphi * g + sa * phi * dg;
                    let da = -rho * sa * dphi * g + rho * ca * phi * dg;
                    let dra = -sa * dphi * g
                        + ca * (-rho * sa * ddphi * g + rho * ca * dphi * dg)
                        + ca * phi * dg
                        + sa * (-rho * sa * dphi * dg + rho * ca * phi * ddg);
                    (v, dr, da, dra)
                });
                let red = reduce_tensor(op, bound_channel, &tensor);
                raw.push(flatten_channel(op, bound_channel, &red));
            }
        }

        if energy > 0.0 && cyl_modes > 0 {
            let k = energy.sqrt();
            let dk = std::f64::consts::PI / rho_max;
            let half = cyl_modes as isize / 2;
            for ch in 0..op.n_ch {
                for &nu in &[2u32, 4] {
                    for n in -half..=half {
                        let kk = k + n as f64 * dk;
                        if kk <= 0.05 * dk {
                            continue;
                        }
                        let nuf = nu as f64;
                        let tensor = hermite_tensor(grid, |rho, alpha| {
                            let z = kk * rho;
                            let (jv, djv) = if z == 0.0 {
                                (0.0, 0.0)
                            } else {
                                let jm = bessel_j(nuf - 1.0, z).unwrap();
                                let jp = bessel_j(nuf + 1.0, z).unwrap();
                                (bessel_j(nuf, z).unwrap(), 0.5 * (jm - jp) * kk)
                            };
                            let d = (nuf * alpha).sin();
                            let dd = nuf * (nuf * alpha).cos();
                            (d * jv, d * djv, dd * jv, dd * djv)
                        });
                        let red = reduce_tensor(op, ch, &tensor);
                        raw.push(flatten_channel(op, ch, &red));
                    }
                }
            }
        }

        if raw.is_empty() {
            return Ok(None);
        }

        // modified Gram-Schmidt with dependent-column dropping
        let mut kept: Vec<Array1<C64>> = Vec::new();
        for mut v in raw {
            let orig = cdot(v.view(), v.view()).re.sqrt();
            if orig == 0.0 {
                continue;
            }
            for u in &kept {
                let proj = cdot(u.view(), v.view());
                v.scaled_add(-proj, u);
            }
            let n = cdot(v.view(), v.view()).re.sqrt();
            if n > 1e-6 * orig {
                kept.push(&v / C64::new(n, 0.0));
            }
        }
        if kept.is_empty() {
            return Ok(None);
        }

        let m = kept.len();
        let dim = op.dim();
        let mut u = Array2::zeros((dim, m));
        for (j, col) in kept.iter().enumerate() {
            u.column_mut(j).assign(col);
        }
        let mut au = Array2::zeros((dim, m));
        for j in 0..m {
            let col = op.apply(u.column(j).to_owned().view());
            au.column_mut(j).assign(&col);
        }
        let mut small = Array2::zeros((m, m));
        for i in 0..m {
            for j in 0..m {
                small[[i, j]] = cdot(u.column(i), au.column(j));
            }
        }
        let small_inv = small
            .inv()
            .map_err(|e| Error::Linalg(format!("deflation Galerkin matrix: {e}")))?;
        Ok(Some(Self { u, au, small_inv }))
    }

    pub fn n_modes(&self) -> usize {
        self.u.ncols()
    }
}

/// The deflated preconditioner `M^-1 v = P^-1 (v - A U c) + U c` with
/// `c = (U^H A U)^-1 U^H v`; exact on the deflation subspace.
pub struct DeflatedPrecond<'a> {
    pub base: &'a KroneckerPrecond,
    pub deflation: Option<&'a ChannelDeflation>,
}

impl LinearOp for DeflatedPrecond<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn apply(&self, v: ArrayView1<C64>) -> Array1<C64> {
        let Some(d) = self.deflation else {
            return self.base.apply(v);
        };
        let m = d.n_modes();
        let mut rhs = Array1::zeros(m);
        for j in 0..m {
            rhs[j] = cdot(d.u.column(j), v);
        }
        let c = d.small_inv.dot(&rhs);
        let mut w = v.to_owned();
        for j in 0..m {
            w.scaled_add(-c[j], &d.au.column(j).to_owned());
        }
        let mut out = self.base.apply(w.view());
        for j in 0..m {
            out.scaled_add(c[j], &d.u.column(j).to_owned());
        }
        out
    }
}
