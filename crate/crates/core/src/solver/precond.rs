//! Inverse action of the free collocated operator `T - E 1` through its
//! Kronecker-sum structure: with `T - E 1 = A1 (x) B1 + A2 (x) B2` and the
//! small factors eigendecomposed, one application costs two eigenbasis
//! changes per direction instead of a large sparse factorization.

use super::gmres::LinearOp;
use crate::discretization::{EndCondition, ReducedBasis};
use crate::error::{Error, Result};
use crate::operators::KineticFactors;
use ndarray::{s, Array1, Array2, ArrayView1};
use ndarray_linalg::{Eig, Inverse};
use num_complex::Complex64 as C64;

struct ChannelBlock {
    a2_inv: Array2<C64>,
    b1_inv_t: Array2<C64>,
    u: Array2<C64>,
    u_inv: Array2<C64>,
    lam: Array1<C64>,
    v_t: Array2<C64>,
    v_inv_t: Array2<C64>,
    mu: Array1<C64>,
}

/// Preconditioner `(T - E 1)^-1` with a constant logarithmic-derivative
/// boundary reduction per channel (the per-alpha variant of the system is
/// approximated by its representative value).
pub struct KroneckerPrecond {
    blocks: Vec<ChannelBlock>,
    nrr: usize,
    nar: usize,
}

impl KroneckerPrecond {
    /// Build from the kinetic factors and the (constant-coefficient)
    /// boundary reductions. Fails with `SingularPencil` when E coincides
    /// with a free eigenvalue of the reduced pencil.
    pub fn new(
        factors: &[KineticFactors],
        energy: f64,
        rho_red: &[ReducedBasis],
        alpha_red: &ReducedBasis,
    ) -> Result<Self> {
        let mut blocks = Vec::with_capacity(factors.len());
        let mut nrr = 0;
        let mut nar = 0;
        for (f, red) in factors.iter().zip(rho_red) {
            if matches!(red.end, EndCondition::LogDerivativePerAlpha(_)) {
                return Err(Error::InvalidInput(
                    "preconditioner requires a constant end condition; pass the representative value"
                        .into(),
                ));
            }
            let a1 = red
                .reduce_columns(&(&f.t_rho - &(f.e_rho.mapv(|v| v * energy))))
                .to_owned();
            let a2 = red.reduce_columns(&f.p_rho);
            let b1 = alpha_red.reduce_columns(&f.e_alpha);
            let b2 = alpha_red.reduce_columns(&f.a_alpha);
            nrr = a1.nrows();
            nar = b1.nrows();

            let a2_inv = a2.inv()?;
            let b1_inv = b1.inv()?;
            let g = a2_inv.dot(&a1);
            let h = b1_inv.dot(&b2);
            let (lam, u) = g.eig()?;
            let (mu, v) = h.eig()?;
            let u_inv = u.inv()?;
            let v_inv = v.inv()?;

            // singular pencil: E sits on a free eigenvalue
            let scale = lam.iter().map(|z| z.norm()).fold(0.0, f64::max)
                + mu.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let mut min_abs = f64::INFINITY;
            for li in lam.iter() {
                for mj in mu.iter() {
                    let m = (li + mj).norm();
                    if m < min_abs {
                        min_abs = m;
                    }
                }
            }
            if min_abs < 1e-13 * scale {
                return Err(Error::SingularPencil { min_abs });
            }

            blocks.push(ChannelBlock {
                a2_inv,
                b1_inv_t: b1_inv.t().to_owned(),
                u,
                u_inv,
                lam,
                v_t: v.t().to_owned(),
                v_inv_t: v_inv.t().to_owned(),
                mu,
            });
        }
        Ok(Self { blocks, nrr, nar })
    }

    fn solve_block(&self, ch: usize, bm: &Array2<C64>) -> Array2<C64> {
        let blk = &self.blocks[ch];
        let c = blk.a2_inv.dot(bm).dot(&blk.b1_inv_t);
        let mut d = blk.u_inv.dot(&c).dot(&blk.v_inv_t);
        for i in 0..self.nrr {
            for j in 0..self.nar {
                d[[i, j]] /= blk.lam[i] + blk.mu[j];
            }
        }
        blk.u.dot(&d).dot(&blk.v_t)
    }
}

impl LinearOp for KroneckerPrecond {
    fn dim(&self) -> usize {
        self.blocks.len() * self.nrr * self.nar
    }

    fn apply(&self, x: ArrayView1<C64>) -> Array1<C64> {
        let block = self.nrr * self.nar;
        let mut out = Array1::zeros(x.len());
        for ch in 0..self.blocks.len() {
            let bm = x
                .slice(s![ch * block..(ch + 1) * block])
                .into_shape_with_order((self.nrr, self.nar))
                .unwrap()
                .to_owned();
            let sol = self.solve_block(ch, &bm);
            out.slice_mut(s![ch * block..(ch + 1) * block])
                .assign(&sol.into_shape_with_order(block).unwrap());
        }
        out
    }
}
