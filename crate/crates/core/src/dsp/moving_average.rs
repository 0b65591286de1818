//! Centered moving mean with shrinking edge windows.

/// Moving average over a window of `win_ms` milliseconds, forced to an odd
/// sample count. Edge outputs average over the window clipped to the
/// signal, divided by the actual sample count.
pub fn moving_average(x: &[f64], win_ms: f64, fs: f64) -> Vec<f64> {
    let mut w = (fs * win_ms / 1000.0).round() as usize;
    if w % 2 == 0 {
        w += 1;
    }
    moving_average_samples(x, w)
}

/// Same, with the window given directly in samples (forced odd).
pub fn moving_average_samples(x: &[f64], mut w: usize) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    if w % 2 == 0 {
        w += 1;
    }
    let n = x.len();
    let h = w / 2;
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for &v in x {
        acc += v;
        prefix.push(acc);
    }
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(h);
            let hi = (i + h + 1).min(n);
            (prefix[hi] - prefix[lo]) / (hi - lo) as f64
        })
        .collect()
}

/// Trailing (causal) moving mean over the last `w` samples, shrinking at
/// the start. Used by the online controller path.
pub fn trailing_mean(x: &[f64], w: usize) -> Vec<f64> {
    let n = x.len();
    let w = w.max(1);
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    for i in 0..n {
        acc += x[i];
        if i >= w {
            acc -= x[i - w];
        }
        out.push(acc / w.min(i + 1) as f64);
    }
    out
}
