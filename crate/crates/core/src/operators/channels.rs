//! Partial-wave channels and the spin/isospin recoupling matrices between
//! Jacobi arrangements.

use crate::error::{Error, Result};
use ndarray::Array2;

/// One coupled channel in LS coupling: orbital pair (ell, lambda) coupled to
/// L, pair spin s with spectator spin sigma coupled to total S, and pair
/// isospin t. Half-integer spins are stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channel {
    pub ell: u32,
    pub lambda: u32,
    pub big_l: u32,
    pub two_s: u32,
    pub two_sigma: u32,
    pub two_s_total: u32,
    pub two_t: u32,
    pub name: &'static str,
}

/// Channel list plus the recoupling matrices: `w_spin` and `w_iso` are the
/// overlaps between pair-coupling schemes of adjacent arrangements, and
/// `w = w_spin .* w_iso` (elementwise) weights the kernel.
#[derive(Debug, Clone)]
pub struct ChannelSet {
    pub channels: Vec<Channel>,
    pub w_spin: Array2<f64>,
    pub w_iso: Array2<f64>,
    pub w: Array2<f64>,
}

impl ChannelSet {
    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }
}

/// Triangle inequality for doubled angular momenta.
fn triangle_ok(a: u32, b: u32, c: u32) -> bool {
    c >= a.abs_diff(b) && c <= a + b && (a + b + c) % 2 == 0
}

fn ln_fact(n: i64) -> f64 {
    crate::specfun::gamma::ln_gamma(n as f64 + 1.0)
}

/// Wigner 6-j symbol with doubled arguments, by the Racah sum.
pub fn wigner_6j(two_j: [u32; 6]) -> f64 {
    let [a, b, c, d, e, f] = two_j;
    if !(triangle_ok(a, b, c) && triangle_ok(c, d, e) && triangle_ok(a, e, f) && triangle_ok(b, d, f))
    {
        return 0.0;
    }
    let tri = |x: u32, y: u32, z: u32| -> f64 {
        let (x, y, z) = (x as i64, y as i64, z as i64);
        0.5 * (ln_fact((x + y - z) / 2) + ln_fact((x - y + z) / 2) + ln_fact((y + z - x) / 2)
            - ln_fact((x + y + z) / 2 + 1))
    };
    let pref = tri(a, b, c) + tri(c, d, e) + tri(a, e, f) + tri(b, d, f);
    let (a, b, c, d, e, f) = (a as i64, b as i64, c as i64, d as i64, e as i64, f as i64);
    let lo = [a + b + c, c + d + e, a + e + f, b + d + f]
        .into_iter()
        .max()
        .unwrap()
        / 2;
    let hi = [a + b + d + e, a + c + d + f, b + c + e + f]
        .into_iter()
        .min()
        .unwrap()
        / 2;
    let mut sum = 0.0;
    for t in lo..=hi {
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let ln_term = ln_fact(t + 1)
            - ln_fact(t - (a + b + c) / 2)
            - ln_fact(t - (c + d + e) / 2)
            - ln_fact(t - (a + e + f) / 2)
            - ln_fact(t - (b + d + f) / 2)
            - ln_fact((a + b + d + e) / 2 - t)
            - ln_fact((a + c + d + f) / 2 - t)
            - ln_fact((b + c + e + f) / 2 - t);
        sum += sign * ln_term.exp();
    }
    pref.exp() * sum
}

/// Recoupling overlap between the pair-coupling scheme of one arrangement and
/// the next, `<(jk) s_a, i; S | (ki) s_b, j; S>`, for three identical
/// particles of spin `two_j/2`. Rows are source-arrangement pair spins, and
/// the matrix element carries the phase `(-1)^(8j - s_b)`.
pub fn recoupling_matrix(two_j: u32, two_s_total: u32, two_pair: &[u32]) -> Array2<f64> {
    let n = two_pair.len();
    let mut m = Array2::zeros((n, n));
    for (ia, &two_sa) in two_pair.iter().enumerate() {
        for (ib, &two_sb) in two_pair.iter().enumerate() {
            let sixj = wigner_6j([two_j, two_j, two_sb, two_j, two_s_total, two_sa]);
            let hat = (((two_sa + 1) * (two_sb + 1)) as f64).sqrt();
            // phase (-1)^(8j - s_b); the pair spin of two identical particles
            // is an integer, so two_sb is even
            let exp = 4 * two_j as i64 - two_sb as i64 / 2;
            let sign = if exp % 2 == 0 { 1.0 } else { -1.0 };
            m[[ia, ib]] = sign * hat * sixj;
        }
    }
    m
}

/// The two s-wave channels of the spin-doublet three-nucleon system, with
/// their recoupling matrices.
pub fn nd_doublet() -> ChannelSet {
    let channels = vec![
        Channel {
            ell: 0,
            lambda: 0,
            big_l: 0,
            two_s: 0,
            two_sigma: 1,
            two_s_total: 1,
            two_t: 2,
            name: "singlet",
        },
        Channel {
            ell: 0,
            lambda: 0,
            big_l: 0,
            two_s: 2,
            two_sigma: 1,
            two_s_total: 1,
            two_t: 0,
            name: "triplet",
        },
    ];
    let spins: Vec<u32> = channels.iter().map(|c| c.two_s).collect();
    let isos: Vec<u32> = channels.iter().map(|c| c.two_t).collect();
    let w_spin = recoupling_matrix(1, 1, &spins);
    let w_iso = recoupling_matrix(1, 1, &isos);
    let w = &w_spin * &w_iso;
    ChannelSet {
        channels,
        w_spin,
        w_iso,
        w,
    }
}

/// Guard used by the kernel assembly: only s-wave bipolar channels are
/// within the validated scope.
pub fn require_s_wave(set: &ChannelSet) -> Result<()> {
    for (i, c) in set.channels.iter().enumerate() {
        if c.ell != 0 || c.lambda != 0 {
            return Err(Error::UnsupportedChannel(format!(
                "channel {i} ({}) has (ell, lambda) = ({}, {}); only (0, 0) is supported",
                c.name, c.ell, c.lambda
            )));
        }
    }
    Ok(())
}
