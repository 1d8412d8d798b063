//! Dynamic time warping: exact quadratic DP with warp-path recovery and
//! the multi-resolution FastDTW approximation.
//!
//! The cell recurrence is
//! `D(i,j) = (t_i - s_j)^2 + min(D(i-1,j), D(i,j-1), D(i-1,j-1))` and the
//! reported distance is the square root of the optimal cumulative cost.

mod fast;

pub use fast::fastdtw;

#[derive(Debug, thiserror::Error)]
pub enum DtwError {
    #[error("DTW requires non-empty series")]
    EmptySeries,
}

/// An alignment between two series: starts at (0,0), ends at
/// (|T|-1, |S|-1), each step advancing i, j, or both by exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarpPath {
    pub pairs: Vec<(usize, usize)>,
}

impl WarpPath {
    /// Check the monotone-continuous path invariants against series
    /// lengths `n` and `m`.
    pub fn is_valid(&self, n: usize, m: usize) -> bool {
        if self.pairs.first() != Some(&(0, 0)) {
            return false;
        }
        if self.pairs.last() != Some(&(n - 1, m - 1)) {
            return false;
        }
        self.pairs.windows(2).all(|w| {
            let di = w[1].0 as i64 - w[0].0 as i64;
            let dj = w[1].1 as i64 - w[0].1 as i64;
            (di == 1 && dj == 1) || (di == 1 && dj == 0) || (di == 0 && dj == 1)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DtwResult {
    pub distance: f64,
    pub path: WarpPath,
}

/// A forward move through the cost matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Advance both indices.
    Diagonal,
    /// Advance the index into T only.
    AdvanceI,
    /// Advance the index into S only.
    AdvanceJ,
}

/// Resolve a set of equal-cost candidate steps: diagonal wins, then the
/// step advancing i, then the step advancing j.
pub fn tie_break(candidates: &[Step]) -> Option<Step> {
    [Step::Diagonal, Step::AdvanceI, Step::AdvanceJ]
        .into_iter()
        .find(|s| candidates.contains(s))
}

/// Per-row inclusive-exclusive column ranges restricting the DP to a
/// band of the cost matrix.
pub(crate) type Window = Vec<(usize, usize)>;

/// Suffix cumulative costs over a windowed matrix, stored sparsely.
struct SuffixCosts {
    window: Window,
    offsets: Vec<usize>,
    cells: Vec<f64>,
    cols: usize,
}

impl SuffixCosts {
    fn get(&self, i: usize, j: usize) -> f64 {
        if i >= self.window.len() || j >= self.cols {
            return f64::INFINITY;
        }
        let (lo, hi) = self.window[i];
        if j < lo || j >= hi {
            return f64::INFINITY;
        }
        self.cells[self.offsets[i] + (j - lo)]
    }
}

/// Windowed DTW via a suffix-cost DP (cumulative cost from each cell to
/// the end). The optimal path is then recovered by walking forward from
/// (0,0), which lets equal-cost choices follow the documented
/// diagonal-first tie-break in path order.
pub(crate) fn dtw_windowed(t: &[f64], s: &[f64], window: &Window) -> DtwResult {
    let n = t.len();
    let m = s.len();
    debug_assert_eq!(window.len(), n);
    debug_assert!(window[0].0 == 0 && window[n - 1].1 == m);

    let offsets: Vec<usize> = window
        .iter()
        .scan(0usize, |acc, (lo, hi)| {
            let off = *acc;
            *acc += hi - lo;
            Some(off)
        })
        .collect();
    let total = offsets[n - 1] + (window[n - 1].1 - window[n - 1].0);
    let mut suffix = SuffixCosts {
        window: window.clone(),
        offsets,
        cells: vec![f64::INFINITY; total],
        cols: m,
    };

    for i in (0..n).rev() {
        let (lo, hi) = suffix.window[i];
        for j in (lo..hi).rev() {
            let cost = (t[i] - s[j]) * (t[i] - s[j]);
            let value = if i == n - 1 && j == m - 1 {
                cost
            } else {
                let best = suffix
                    .get(i + 1, j + 1)
                    .min(suffix.get(i + 1, j))
                    .min(suffix.get(i, j + 1));
                cost + best
            };
            let idx = suffix.offsets[i] + (j - lo);
            suffix.cells[idx] = value;
        }
    }

    let mut pairs = Vec::with_capacity(n + m);
    let (mut i, mut j) = (0usize, 0usize);
    pairs.push((i, j));
    while (i, j) != (n - 1, m - 1) {
        let options = [
            (Step::Diagonal, suffix.get(i + 1, j + 1)),
            (Step::AdvanceI, suffix.get(i + 1, j)),
            (Step::AdvanceJ, suffix.get(i, j + 1)),
        ];
        let best = options
            .iter()
            .map(|&(_, c)| c)
            .fold(f64::INFINITY, f64::min);
        let ties: Vec<Step> = options
            .iter()
            .filter(|&&(_, c)| c == best)
            .map(|&(s, _)| s)
            .collect();
        match tie_break(&ties).expect("end cell reachable from every window cell") {
            Step::Diagonal => {
                i += 1;
                j += 1;
            }
            Step::AdvanceI => i += 1,
            Step::AdvanceJ => j += 1,
        }
        pairs.push((i, j));
    }

    DtwResult {
        distance: suffix.get(0, 0).sqrt(),
        path: WarpPath { pairs },
    }
}

fn full_window(n: usize, m: usize) -> Window {
    vec![(0, m); n]
}

/// Exact DTW distance and warp path, O(|T|·|S|) time and space.
pub fn dtw_exact(t: &[f64], s: &[f64]) -> Result<DtwResult, DtwError> {
    if t.is_empty() || s.is_empty() {
        return Err(DtwError::EmptySeries);
    }
    Ok(dtw_windowed(t, s, &full_window(t.len(), s.len())))
}
