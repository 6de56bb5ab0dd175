use faddeev_core::solver::{GmresConfig, IncomingKind, ProblemParams, ThreeBodyProblem};
use std::sync::Arc;

fn run(params: ProblemParams, e: f64, tol: f64, label: &str) {
    let problem = Arc::new(ThreeBodyProblem::nd_benchmark(params).unwrap());
    let system = problem.at_energy(e).unwrap();
    let incoming = system
        .incoming(IncomingKind::BoundPlaneWave { channel: problem.bound_channel })
        .unwrap();
    let out = system.solve_unpreconditioned(&incoming, &GmresConfig { tol: 1e-10, max_iter: 0 });
    let _ = out; // placeholder
    let sol = system.solve(&incoming, &GmresConfig { tol, max_iter: 400 });
    match sol {
        Ok(s) => println!("{label}: E={e} tol={tol:.0e} iters={}", s.iterations),
        Err(err) => println!("{label}: {err}"),
    }
}

fn main() {
    for &ext in &[30.0f64, 60.0, 90.0] {
        let p = ProblemParams { rho_extent_fm: ext, ..ProblemParams::default() };
        run(p, -1.0, 1e-10, &format!("extent={ext}fm"));
    }
    for &tol in &[1e-6f64, 1e-8] {
        run(ProblemParams::default(), -1.0, tol, "desk");
    }
    // energy dependence
    for &e in &[-2.0f64, -0.5, 0.4361, 14.0] {
        run(ProblemParams::default(), e, 1e-10, "desk");
    }
}
