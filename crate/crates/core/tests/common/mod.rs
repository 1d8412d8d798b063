//! Shared test oracles, independent of the library implementations they
//! check.

/// Brute-force DTW: enumerate every monotone-continuous warp path and
/// take the minimum total squared cost. Exponential; only usable for
/// short series.
pub fn dtw_brute_force(t: &[f64], s: &[f64]) -> f64 {
    fn recurse(t: &[f64], s: &[f64], i: usize, j: usize, acc: f64, best: &mut f64) {
        let cost = acc + (t[i] - s[j]) * (t[i] - s[j]);
        if cost >= *best {
            return; // cannot improve; costs only grow
        }
        if i == t.len() - 1 && j == s.len() - 1 {
            *best = cost;
            return;
        }
        if i + 1 < t.len() && j + 1 < s.len() {
            recurse(t, s, i + 1, j + 1, cost, best);
        }
        if i + 1 < t.len() {
            recurse(t, s, i + 1, j, cost, best);
        }
        if j + 1 < s.len() {
            recurse(t, s, i, j + 1, cost, best);
        }
    }
    let mut best = f64::INFINITY;
    recurse(t, s, 0, 0, 0.0, &mut best);
    best.sqrt()
}

/// Deterministic smooth series for FastDTW quality checks: a sum of two
/// low-frequency sinusoids with seeded phase and amplitude.
pub fn smooth_series(len: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a1: f64 = rng.gen_range(0.5..2.0);
    let a2: f64 = rng.gen_range(0.2..0.8);
    let f1: f64 = rng.gen_range(0.05..0.15);
    let f2: f64 = rng.gen_range(0.15..0.3);
    let p1: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let p2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (0..len)
        .map(|i| {
            let x = i as f64;
            a1 * (std::f64::consts::TAU * f1 * x + p1).sin()
                + a2 * (std::f64::consts::TAU * f2 * x + p2).sin()
        })
        .collect()
}
