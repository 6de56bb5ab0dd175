//! Jacobi polynomials P_n^{(a,b)} by the three-term recurrence.

/// Evaluate P_n^{(a,b)}(t) for t in [-1, 1], a, b > -1.
pub fn jacobi_poly(n: u32, a: f64, b: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (t - 1.0) / 2.0;
    if n == 1 {
        return p1;
    }
    let mut pm = 1.0f64;
    let mut pc = p1;
    for k in 2..=n {
        let kf = k as f64;
        let c0 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c1 = (2.0 * kf + a + b - 1.0)
            * ((2.0 * kf + a + b) * (2.0 * kf + a + b - 2.0) * t + a * a - b * b);
        let c2 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let pn = (c1 * pc - c2 * pm) / c0;
        pm = pc;
        pc = pn;
    }
    pc
}
