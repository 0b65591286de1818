//! Welch averaged-periodogram power spectral density.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// One-sided PSD in signal-units^2 per Hz.
#[derive(Debug, Clone)]
pub struct Psd {
    pub freqs: Vec<f64>,
    pub power: Vec<f64>,
    /// Bin spacing in Hz.
    pub df: f64,
}

impl Psd {
    /// Sum of `power * df` over bins with `|f - fc| <= half_width`.
    pub fn band_power(&self, fc: f64, half_width: f64) -> f64 {
        self.freqs
            .iter()
            .zip(&self.power)
            .filter(|(f, _)| (**f - fc).abs() <= half_width)
            .map(|(_, p)| p * self.df)
            .sum()
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().map(|p| p * self.df).sum()
    }

    /// Frequency of the largest bin inside `[lo, hi]`.
    pub fn peak_in(&self, lo: f64, hi: f64) -> Option<f64> {
        self.freqs
            .iter()
            .zip(&self.power)
            .filter(|(f, _)| **f >= lo && **f <= hi)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(f, _)| *f)
    }
}

/// Welch PSD with a Hann window. `win_s` defaults to 1 s and `overlap` to
/// 0.5 in callers; the signal must cover at least one window.
pub fn welch_psd(x: &[f64], fs: f64, win_s: f64, overlap: f64) -> Result<Psd> {
    let win = (win_s * fs).round() as usize;
    if win < 4 {
        return Err(Error::InvalidParam(format!("welch window of {win} samples")));
    }
    if x.len() < win {
        return Err(Error::InvalidParam(format!(
            "signal of {} samples shorter than one {win}-sample window",
            x.len()
        )));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::InvalidParam(format!("overlap {overlap} outside [0, 1)")));
    }

    let window: Vec<f64> = (0..win)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / win as f64).cos()))
        .collect();
    let win_energy: f64 = window.iter().map(|w| w * w).sum();

    let step = ((win as f64) * (1.0 - overlap)).round().max(1.0) as usize;
    let mut fft_planner = FftPlanner::new();
    let fft = fft_planner.plan_fft_forward(win);

    let n_bins = win / 2 + 1;
    let mut acc = vec![0.0f64; n_bins];
    let mut n_segs = 0usize;
    let mut buf = vec![Complex64::default(); win];
    let mut offset = 0usize;
    while offset + win <= x.len() {
        for (i, b) in buf.iter_mut().enumerate() {
            *b = Complex64::new(x[offset + i] * window[i], 0.0);
        }
        fft.process(&mut buf);
        for (k, a) in acc.iter_mut().enumerate() {
            *a += buf[k].norm_sqr();
        }
        n_segs += 1;
        offset += step;
    }

    let scale = 1.0 / (fs * win_energy * n_segs as f64);
    let mut power: Vec<f64> = acc.iter().map(|a| a * scale).collect();
    // one-sided: double everything except DC and (for even windows) Nyquist
    for (k, p) in power.iter_mut().enumerate() {
        if k != 0 && !(win % 2 == 0 && k == win / 2) {
            *p *= 2.0;
        }
    }
    let df = fs / win as f64;
    let freqs = (0..n_bins).map(|k| k as f64 * df).collect();
    Ok(Psd { freqs, power, df })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn white_noise_integrates_to_variance() {
        let mut rng = StdRng::seed_from_u64(7);
        let sigma = 2.5f64;
        let x: Vec<f64> = (0..220_000)
            .map(|_| {
                // Box-Muller
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen::<f64>();
                sigma * (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let psd = welch_psd(&x, 22_000.0, 1.0, 0.5).unwrap();
        let total = psd.total_power();
        assert!(
            (total - sigma * sigma).abs() < 0.1 * sigma * sigma,
            "integrated PSD {total} vs variance {}",
            sigma * sigma
        );
    }

    #[test]
    fn pure_tone_peaks_at_its_bin() {
        let fs = 22_000.0;
        let x: Vec<f64> = (0..(3.0 * fs) as usize)
            .map(|i| (2.0 * std::f64::consts::PI * 25.0 * i as f64 / fs).sin())
            .collect();
        let psd = welch_psd(&x, fs, 1.0, 0.5).unwrap();
        let peak = psd.peak_in(1.0, 1000.0).unwrap();
        assert!((peak - 25.0).abs() <= psd.df, "peak at {peak}");
    }

    #[test]
    fn zero_signal_zero_psd() {
        let psd = welch_psd(&vec![0.0; 44_000], 22_000.0, 1.0, 0.5).unwrap();
        assert!(psd.power.iter().all(|&p| p == 0.0));
    }

    #[test]
    fn short_signal_is_an_error() {
        assert!(welch_psd(&vec![0.0; 100], 22_000.0, 1.0, 0.5).is_err());
    }
}
