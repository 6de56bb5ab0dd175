//! Complex GMRES with optional right preconditioning, modified Gram-Schmidt
//! and Givens rotations. No restart: the Krylov basis grows until
//! convergence or the iteration cap.

use ndarray::{Array1, ArrayView1};
use num_complex::Complex64 as C64;

/// Matrix-free linear operator.
pub trait LinearOp: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: ArrayView1<C64>) -> Array1<C64>;
}

/// Closure-backed operator for tests and composition.
pub struct FnOp<F: Fn(ArrayView1<C64>) -> Array1<C64> + Sync> {
    pub n: usize,
    pub f: F,
}

impl<F: Fn(ArrayView1<C64>) -> Array1<C64> + Sync> LinearOp for FnOp<F> {
    fn dim(&self) -> usize {
        self.n
    }
    fn apply(&self, x: ArrayView1<C64>) -> Array1<C64> {
        (self.f)(x)
    }
}

#[derive(Debug, Clone)]
pub struct GmresConfig {
    /// Relative residual target on the unpreconditioned system.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for GmresConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GmresOutcome {
    pub x: Array1<C64>,
    pub iterations: usize,
    pub residual: f64,
    pub history: Vec<f64>,
    pub converged: bool,
}

fn cdot(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.conj() * y)
        .fold(C64::new(0.0, 0.0), |acc, v| acc + v)
}

fn norm(a: &Array1<C64>) -> f64 {
    cdot(a, a).re.sqrt()
}

/// Solve `A x = b` with right preconditioning: the Krylov space is built for
/// `A M^-1`, so the Arnoldi residual tracks the true residual of the
/// original system.
pub fn gmres(
    op: &dyn LinearOp,
    precond: Option<&dyn LinearOp>,
    b: &Array1<C64>,
    x0: Option<&Array1<C64>>,
    cfg: &GmresConfig,
) -> GmresOutcome {
    let n = op.dim();
    assert_eq!(b.len(), n, "rhs dimension mismatch");
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return GmresOutcome {
            x: Array1::zeros(n),
            iterations: 0,
            residual: 0.0,
            history: vec![],
            converged: true,
        };
    }

    let mut x = x0.cloned().unwrap_or_else(|| Array1::zeros(n));
    let r = if x0.is_some() {
        b - &op.apply(x.view())
    } else {
        b.clone()
    };
    let r_norm = norm(&r);
    let mut history = vec![r_norm / b_norm];
    if r_norm / b_norm <= cfg.tol {
        return GmresOutcome {
            x,
            iterations: 0,
            residual: r_norm / b_norm,
            history,
            converged: true,
        };
    }

    let m = cfg.max_iter.min(n);
    let mut basis: Vec<Array1<C64>> = Vec::with_capacity(m + 1);
    basis.push(&r / C64::new(r_norm, 0.0));
    let mut h: Vec<Vec<C64>> = Vec::with_capacity(m);
    let mut cs: Vec<C64> = Vec::with_capacity(m);
    let mut sn: Vec<C64> = Vec::with_capacity(m);
    let mut g = vec![C64::new(0.0, 0.0); m + 1];
    g[0] = C64::new(r_norm, 0.0);

    let mut k_used = 0;
    let mut converged = false;
    for k in 0..m {
        let z = match precond {
            Some(p) => p.apply(basis[k].view()),
            None => basis[k].clone(),
        };
        let mut w = op.apply(z.view());

        let mut col = vec![C64::new(0.0, 0.0); k + 2];
        for (j, vj) in basis.iter().enumerate().take(k + 1) {
            let hij = cdot(vj, &w);
            col[j] = hij;
            w.scaled_add(-hij, vj);
        }
        let w_norm = norm(&w);
        col[k + 1] = C64::new(w_norm, 0.0);

        // apply accumulated Givens rotations to the new column
        for j in 0..k {
            let t = cs[j].conj() * col[j] + sn[j].conj() * col[j + 1];
            col[j + 1] = -sn[j] * col[j] + cs[j] * col[j + 1];
            col[j] = t;
        }
        let (c, s) = givens(col[k], col[k + 1]);
        let t = c.conj() * col[k] + s.conj() * col[k + 1];
        col[k] = t;
        col[k + 1] = C64::new(0.0, 0.0);
        cs.push(c);
        sn.push(s);
        let tg = c.conj() * g[k] + s.conj() * g[k + 1];
        g[k + 1] = -s * g[k] + c * g[k + 1];
        g[k] = tg;
        h.push(col);
        k_used = k + 1;

        let est = g[k + 1].norm() / b_norm;
        history.push(est);
        if est <= cfg.tol {
            converged = true;
            break;
        }
        if w_norm < 1e-300 {
            converged = true; // exact breakdown: solution lies in the space
            break;
        }
        basis.push(&w / C64::new(w_norm, 0.0));
    }

    // back substitution for y, then x += M^-1 (V y)
    let mut y = vec![C64::new(0.0, 0.0); k_used];
    for i in (0..k_used).rev() {
        let mut sum = g[i];
        for j in i + 1..k_used {
            sum -= h[j][i] * y[j];
        }
        y[i] = sum / h[i][i];
    }
    let mut update = Array1::<C64>::zeros(n);
    for (i, yi) in y.iter().enumerate() {
        update.scaled_add(*yi, &basis[i]);
    }
    let update = match precond {
        Some(p) => p.apply(update.view()),
        None => update,
    };
    x += &update;

    let true_res = norm(&(b - &op.apply(x.view()))) / b_norm;
    GmresOutcome {
        x,
        iterations: k_used,
        residual: true_res,
        history,
        converged: converged && true_res <= 10.0 * cfg.tol,
    }
}

fn givens(a: C64, b: C64) -> (C64, C64) {
    if b.norm() == 0.0 {
        return (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    }
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    (a / r, b / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    struct DenseOp {
        m: Array2<C64>,
    }

    impl LinearOp for DenseOp {
        fn dim(&self) -> usize {
            self.m.nrows()
        }
        fn apply(&self, x: ArrayView1<C64>) -> Array1<C64> {
            self.m.dot(&x)
        }
    }

    fn test_matrix(n: usize) -> Array2<C64> {
        Array2::from_shape_fn((n, n), |(i, j)| {
            if i == j {
                C64::new(3.0 + i as f64, 0.4)
            } else {
                C64::new(
                    0.3 / (1.0 + (i as f64 - j as f64).abs()),
                    0.1 / (1.0 + i as f64 + j as f64),
                )
            }
        })
    }

    #[test]
    fn solves_dense_system() {
        let n = 40;
        let op = DenseOp { m: test_matrix(n) };
        let x_true = Array1::from_shape_fn(n, |i| C64::new(1.0 - 0.01 * i as f64, 0.5));
        let b = op.apply(x_true.view());
        let out = gmres(&op, None, &b, None, &GmresConfig::default());
        assert!(out.converged);
        assert!(out.residual <= 1e-10);
        for (a, e) in out.x.iter().zip(x_true.iter()) {
            assert!((a - e).norm() < 1e-8);
        }
    }

    #[test]
    fn zero_rhs_returns_zero() {
        let op = DenseOp { m: test_matrix(8) };
        let b = Array1::zeros(8);
        let out = gmres(&op, None, &b, None, &GmresConfig::default());
        assert!(out.converged);
        assert_eq!(out.iterations, 0);
        assert!(out.x.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn linearity_in_the_rhs() {
        let op = DenseOp { m: test_matrix(16) };
        let b = Array1::from_shape_fn(16, |i| C64::new((i as f64).sin(), 0.3));
        let cfg = GmresConfig {
            tol: 1e-12,
            max_iter: 64,
        };
        let x1 = gmres(&op, None, &b, None, &cfg).x;
        let scaled = b.mapv(|v| v * C64::new(0.0, 2.0));
        let x2 = gmres(&op, None, &scaled, None, &cfg).x;
        for (a, e) in x2.iter().zip(x1.iter()) {
            assert!((a - e * C64::new(0.0, 2.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn converged_seed_terminates_immediately() {
        let op = DenseOp { m: test_matrix(12) };
        let b = Array1::from_shape_fn(12, |i| C64::new(1.0 + i as f64, -0.2));
        let cfg = GmresConfig::default();
        let first = gmres(&op, None, &b, None, &cfg);
        assert!(first.converged);
        let second = gmres(&op, None, &b, Some(&first.x), &cfg);
        assert_eq!(second.iterations, 0);
        assert!(second.converged);
    }

    #[test]
    fn exact_preconditioner_converges_in_one_iteration() {
        let n = 24;
        let m = test_matrix(n);
        let op = DenseOp { m: m.clone() };
        use ndarray_linalg::Inverse;
        let inv = m.inv().unwrap();
        let pre = DenseOp { m: inv };
        let b = Array1::from_shape_fn(n, |i| C64::new(0.1 * i as f64 + 1.0, 0.7));
        let out = gmres(&op, Some(&pre), &b, None, &GmresConfig::default());
        assert!(out.converged);
        assert_eq!(out.iterations, 1);
    }

    #[test]
    fn iteration_cap_reports_nonconvergence() {
        let op = DenseOp { m: test_matrix(60) };
        let b = Array1::from_shape_fn(60, |i| C64::new(1.0 / (1.0 + i as f64), 1.0));
        let cfg = GmresConfig {
            tol: 1e-14,
            max_iter: 3,
        };
        let out = gmres(&op, None, &b, None, &cfg);
        assert!(!out.converged);
        assert_eq!(out.iterations, 3);
        assert_eq!(out.history.len(), 4);
    }
}
