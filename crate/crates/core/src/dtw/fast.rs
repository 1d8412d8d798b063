//! FastDTW: recursively coarsen both series, solve the coarse problem,
//! project its warp path onto the finer grid, and refine within a
//! radius-widened window.

use super::{dtw_exact, dtw_windowed, DtwError, DtwResult, WarpPath, Window};

/// Halve a series by pairwise averaging; an odd tail element is carried
/// through unaveraged.
fn coarsen(series: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(series.len() / 2 + series.len() % 2);
    let mut chunks = series.chunks_exact(2);
    for pair in &mut chunks {
        out.push((pair[0] + pair[1]) / 2.0);
    }
    if let [tail] = chunks.remainder() {
        out.push(*tail);
    }
    out
}

/// Project a coarse warp path onto the fine grid and widen it by
/// `radius` cells in every direction, producing per-row column ranges.
fn expand_window(path: &WarpPath, n: usize, m: usize, radius: usize) -> Window {
    let mut lo = vec![usize::MAX; n];
    let mut hi = vec![0usize; n];
    let mut mark = |i: usize, j: usize| {
        if i < n {
            let j = j.min(m - 1);
            lo[i] = lo[i].min(j);
            hi[i] = hi[i].max(j);
        }
    };
    for &(ci, cj) in &path.pairs {
        for di in 0..2 {
            for dj in 0..2 {
                mark(2 * ci + di, 2 * cj + dj);
            }
        }
    }
    // The projected path covers every row; widen by the radius in both
    // axes.
    let mut window = Vec::with_capacity(n);
    for i in 0..n {
        let row_lo = i.saturating_sub(radius);
        let row_hi = (i + radius).min(n - 1);
        let mut a = usize::MAX;
        let mut b = 0usize;
        for r in row_lo..=row_hi {
            debug_assert!(lo[r] != usize::MAX);
            a = a.min(lo[r]);
            b = b.max(hi[r]);
        }
        window.push((a.saturating_sub(radius), (b + radius + 1).min(m)));
    }
    window[0].0 = 0;
    window[n - 1].1 = m;
    window
}

/// Approximate DTW in linear time and space.
///
/// Series no longer than `2 * radius + 2` are solved exactly. The
/// returned distance is never below the exact distance; it equals the
/// exact distance whenever the refined window contains an optimal path.
pub fn fastdtw(t: &[f64], s: &[f64], radius: usize) -> Result<DtwResult, DtwError> {
    if t.is_empty() || s.is_empty() {
        return Err(DtwError::EmptySeries);
    }
    let min_size = 2 * radius + 2;
    if t.len() <= min_size || s.len() <= min_size {
        return dtw_exact(t, s);
    }
    let coarse = fastdtw(&coarsen(t), &coarsen(s), radius)?;
    let window = expand_window(&coarse.path, t.len(), s.len(), radius);
    Ok(dtw_windowed(t, s, &window))
}
