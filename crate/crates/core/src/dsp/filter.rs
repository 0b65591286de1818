//! IIR filter design and application.
//!
//! Filters are cascades of second-order sections. Butterworth designs go
//! through the analog prototype and the bilinear transform with frequency
//! prewarping; notch and peak sections use the standard audio-cookbook
//! closed forms. `filtfilt` runs forward-backward with odd reflective
//! padding and steady-state section initialization, `filter_causal` runs a
//! plain zero-state forward pass.

use std::f64::consts::PI;

use crate::error::{Error, Result};

type Complex = nalgebra::Complex<f64>;

/// One direct-form-II-transposed section, `a0` normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Biquad {
    /// Both poles strictly inside the unit circle.
    pub fn is_stable(&self) -> bool {
        self.a2.abs() < 1.0 && self.a1.abs() < 1.0 + self.a2
    }

    fn response(&self, z_inv: Complex) -> Complex {
        let num = Complex::new(self.b0, 0.0) + z_inv * (self.b1 + z_inv * self.b2);
        let den = Complex::new(1.0, 0.0) + z_inv * (self.a1 + z_inv * self.a2);
        num / den
    }

    /// State for which a constant input `x` produces a constant output.
    fn steady_state(&self, x: f64) -> [f64; 2] {
        let gain_dc = (self.b0 + self.b1 + self.b2) / (1.0 + self.a1 + self.a2);
        [(gain_dc - self.b0) * x, (self.b2 - self.a2 * gain_dc) * x]
    }
}

/// Filter request understood by [`design_filter`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterSpec {
    ButterHighpass { order: usize, cutoff_hz: f64 },
    ButterBandpass { order: usize, low_hz: f64, high_hz: f64 },
    Notch { center_hz: f64, q: f64 },
    Peak { center_hz: f64, q: f64 },
}

/// A cascade of biquad sections.
#[derive(Debug, Clone, Default)]
pub struct BiquadChain {
    pub sections: Vec<Biquad>,
}

impl BiquadChain {
    pub fn order(&self) -> usize {
        2 * self.sections.len()
    }

    /// Concatenate two cascades.
    pub fn then(mut self, other: BiquadChain) -> BiquadChain {
        self.sections.extend(other.sections);
        self
    }

    /// Complex frequency response at `f_hz`.
    pub fn response_at(&self, f_hz: f64, fs: f64) -> Complex {
        let w = 2.0 * PI * f_hz / fs;
        let z_inv = Complex::new(w.cos(), -w.sin());
        self.sections
            .iter()
            .fold(Complex::new(1.0, 0.0), |acc, s| acc * s.response(z_inv))
    }

    pub fn gain_db(&self, f_hz: f64, fs: f64) -> f64 {
        20.0 * self.response_at(f_hz, fs).norm().log10()
    }

    /// Zero-state causal pass.
    pub fn filter_causal(&self, x: &[f64]) -> Vec<f64> {
        let mut y = x.to_vec();
        for s in &self.sections {
            let mut z = [0.0f64; 2];
            run_section(s, &mut y, &mut z);
        }
        y
    }

    /// Zero-phase forward-backward pass with odd reflective padding of
    /// three times the filter order.
    pub fn filtfilt(&self, x: &[f64]) -> Vec<f64> {
        if x.is_empty() {
            return Vec::new();
        }
        let pad = (3 * self.order()).min(x.len().saturating_sub(1));
        let n = x.len();
        let mut buf = Vec::with_capacity(n + 2 * pad);
        // odd extension: reflect around the end values
        for i in (1..=pad).rev() {
            buf.push(2.0 * x[0] - x[i]);
        }
        buf.extend_from_slice(x);
        for i in (1..=pad).rev() {
            buf.push(2.0 * x[n - 1] - x[n - 1 - i]);
        }

        for s in &self.sections {
            let mut z = s.steady_state(buf[0]);
            run_section(s, &mut buf, &mut z);
        }
        buf.reverse();
        for s in &self.sections {
            let mut z = s.steady_state(buf[0]);
            run_section(s, &mut buf, &mut z);
        }
        buf.reverse();
        buf[pad..pad + n].to_vec()
    }
}

fn run_section(s: &Biquad, x: &mut [f64], z: &mut [f64; 2]) {
    for v in x.iter_mut() {
        let input = *v;
        let out = s.b0 * input + z[0];
        z[0] = s.b1 * input - s.a1 * out + z[1];
        z[1] = s.b2 * input - s.a2 * out;
        *v = out;
    }
}

/// Design a stable filter for the request, or explain why it cannot exist.
pub fn design_filter(spec: &FilterSpec, fs: f64) -> Result<BiquadChain> {
    let chain = match *spec {
        FilterSpec::ButterHighpass { order, cutoff_hz } => {
            check_freq(cutoff_hz, fs)?;
            check_order(order)?;
            butter_highpass(order, cutoff_hz, fs)
        }
        FilterSpec::ButterBandpass { order, low_hz, high_hz } => {
            check_freq(low_hz, fs)?;
            check_freq(high_hz, fs)?;
            check_order(order)?;
            if low_hz >= high_hz {
                return Err(Error::InvalidParam(format!(
                    "band edges out of order: {low_hz} >= {high_hz}"
                )));
            }
            butter_bandpass(order, low_hz, high_hz, fs)
        }
        FilterSpec::Notch { center_hz, q } => {
            check_freq(center_hz, fs)?;
            check_q(q)?;
            let (w0, alpha) = w0_alpha(center_hz, q, fs);
            let a0 = 1.0 + alpha;
            BiquadChain {
                sections: vec![Biquad {
                    b0: 1.0 / a0,
                    b1: -2.0 * w0.cos() / a0,
                    b2: 1.0 / a0,
                    a1: -2.0 * w0.cos() / a0,
                    a2: (1.0 - alpha) / a0,
                }],
            }
        }
        FilterSpec::Peak { center_hz, q } => {
            check_freq(center_hz, fs)?;
            check_q(q)?;
            let (w0, alpha) = w0_alpha(center_hz, q, fs);
            let a0 = 1.0 + alpha;
            BiquadChain {
                sections: vec![Biquad {
                    b0: alpha / a0,
                    b1: 0.0,
                    b2: -alpha / a0,
                    a1: -2.0 * w0.cos() / a0,
                    a2: (1.0 - alpha) / a0,
                }],
            }
        }
    };
    if let Some(bad) = chain.sections.iter().find(|s| !s.is_stable()) {
        return Err(Error::UnstableFilter(format!("{bad:?}")));
    }
    Ok(chain)
}

/// Notch comb at `base_hz` and all its harmonics up to `max_hz`.
pub fn notch_comb(base_hz: f64, max_hz: f64, q: f64, fs: f64) -> Result<BiquadChain> {
    let mut chain = BiquadChain::default();
    let mut f = base_hz;
    while f <= max_hz && f < fs / 2.0 {
        chain = chain.then(design_filter(&FilterSpec::Notch { center_hz: f, q }, fs)?);
        f += base_hz;
    }
    Ok(chain)
}

fn check_freq(f: f64, fs: f64) -> Result<()> {
    if f <= 0.0 || f >= fs / 2.0 {
        return Err(Error::InvalidParam(format!(
            "frequency {f} Hz outside (0, {}) Hz",
            fs / 2.0
        )));
    }
    Ok(())
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > 12 {
        return Err(Error::InvalidParam(format!("unsupported filter order {order}")));
    }
    Ok(())
}

fn check_q(q: f64) -> Result<()> {
    if q <= 0.0 {
        return Err(Error::InvalidParam(format!("non-positive Q {q}")));
    }
    Ok(())
}

fn w0_alpha(center_hz: f64, q: f64, fs: f64) -> (f64, f64) {
    let w0 = 2.0 * PI * center_hz / fs;
    (w0, w0.sin() / (2.0 * q))
}

/// Left-half-plane Butterworth prototype poles for unit cutoff.
fn butter_poles(order: usize) -> Vec<Complex> {
    (1..=order)
        .map(|k| {
            let theta = PI * (2 * k + order - 1) as f64 / (2 * order) as f64;
            Complex::new(theta.cos(), theta.sin())
        })
        .collect()
}

/// Map an analog first-order section to digital with `s = (z - 1)/(z + 1)`.
/// Coefficients are in ascending powers of `s`.
fn bilinear_first_order(num: [f64; 2], den: [f64; 2]) -> Biquad {
    let a0 = den[1] + den[0];
    Biquad {
        b0: (num[1] + num[0]) / a0,
        b1: (num[0] - num[1]) / a0,
        b2: 0.0,
        a1: (den[0] - den[1]) / a0,
        a2: 0.0,
    }
}

/// Map an analog quadratic section to digital with `s = (z - 1)/(z + 1)`.
/// Coefficients are in ascending powers of `s`.
fn bilinear_section(num: [f64; 3], den: [f64; 3]) -> Biquad {
    let nb0 = num[2] + num[1] + num[0];
    let nb1 = 2.0 * (num[0] - num[2]);
    let nb2 = num[2] - num[1] + num[0];
    let na0 = den[2] + den[1] + den[0];
    let na1 = 2.0 * (den[0] - den[2]);
    let na2 = den[2] - den[1] + den[0];
    Biquad {
        b0: nb0 / na0,
        b1: nb1 / na0,
        b2: nb2 / na0,
        a1: na1 / na0,
        a2: na2 / na0,
    }
}

fn butter_highpass(order: usize, cutoff_hz: f64, fs: f64) -> BiquadChain {
    let warped = (PI * cutoff_hz / fs).tan();
    let mut sections = Vec::new();
    for p in conjugate_representatives(&butter_poles(order)) {
        match p {
            PoleGroup::Pair(p) => {
                // H(s) = s^2 / (s^2 - 2 Re(p) w s + |p|^2 w^2)
                sections.push(bilinear_section(
                    [0.0, 0.0, 1.0],
                    [p.norm_sqr() * warped * warped, -2.0 * p.re * warped, 1.0],
                ));
            }
            PoleGroup::RealPair(r1, r2) => {
                sections.push(bilinear_section(
                    [0.0, 0.0, 1.0],
                    [r1 * r2 * warped * warped, -(r1 + r2) * warped, 1.0],
                ));
            }
            PoleGroup::Real(r) => {
                // H(s) = s / (s - r w)
                sections.push(bilinear_first_order([0.0, 1.0], [-r * warped, 1.0]));
            }
        }
    }
    let mut chain = BiquadChain { sections };
    normalize_gain(&mut chain, fs / 2.0, fs);
    chain
}

fn butter_bandpass(order: usize, low_hz: f64, high_hz: f64, fs: f64) -> BiquadChain {
    let w1 = (PI * low_hz / fs).tan();
    let w2 = (PI * high_hz / fs).tan();
    let bw = w2 - w1;
    let w0sq = w1 * w2;

    // each prototype pole maps to a quadratic in s; its two roots are poles
    // of the bandpass filter
    let mut poles: Vec<Complex> = Vec::with_capacity(2 * order);
    for p in butter_poles(order) {
        let pb = p * bw;
        let disc = (pb * pb - Complex::new(4.0 * w0sq, 0.0)).sqrt();
        poles.push((pb + disc) / 2.0);
        poles.push((pb - disc) / 2.0);
    }

    let mut sections = Vec::new();
    for group in conjugate_representatives(&poles) {
        // one zero at s = 0 and one at infinity per section:
        // H(s) = s / ((s - q)(s - q̄))
        let (a0, a1) = match group {
            PoleGroup::Pair(q) => (q.norm_sqr(), -2.0 * q.re),
            PoleGroup::RealPair(r1, r2) => (r1 * r2, -(r1 + r2)),
            PoleGroup::Real(r) => {
                sections.push(bilinear_first_order([0.0, 1.0], [-r, 1.0]));
                continue;
            }
        };
        sections.push(bilinear_section([0.0, 1.0, 0.0], [a0, a1, 1.0]));
    }
    let mut chain = BiquadChain { sections };
    // unit gain where the analog prototype sits at its passband center
    let f_center = fs * w0sq.sqrt().atan() / PI;
    normalize_gain(&mut chain, f_center, fs);
    chain
}

enum PoleGroup {
    Pair(Complex),
    RealPair(f64, f64),
    Real(f64),
}

/// Group a conjugate-closed pole multiset into one representative per
/// conjugate pair, pairing leftover real poles two by two.
fn conjugate_representatives(poles: &[Complex]) -> Vec<PoleGroup> {
    const EPS: f64 = 1e-12;
    let mut groups = Vec::new();
    let mut reals: Vec<f64> = Vec::new();
    for p in poles {
        if p.im > EPS {
            groups.push(PoleGroup::Pair(*p));
        } else if p.im.abs() <= EPS {
            reals.push(p.re);
        }
    }
    let mut reals = reals.into_iter();
    while let Some(r1) = reals.next() {
        match reals.next() {
            Some(r2) => groups.push(PoleGroup::RealPair(r1, r2)),
            None => groups.push(PoleGroup::Real(r1)),
        }
    }
    groups
}

fn normalize_gain(chain: &mut BiquadChain, f_ref: f64, fs: f64) {
    let g = chain.response_at(f_ref, fs).norm();
    if g > 0.0 && !chain.sections.is_empty() {
        let inv = 1.0 / g;
        let s = &mut chain.sections[0];
        s.b0 *= inv;
        s.b1 *= inv;
        s.b2 *= inv;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const FS: f64 = 22_000.0;

    fn tone(f: f64, fs: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| (2.0 * PI * f * i as f64 / fs).sin()).collect()
    }

    fn rms(x: &[f64]) -> f64 {
        (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
    }

    /// Analytic bilinear-Butterworth bandpass magnitude, evaluated from the
    /// prototype response rather than from designed coefficients.
    fn butter_bp_magnitude(order: usize, f1: f64, f2: f64, f: f64, fs: f64) -> f64 {
        let w1 = (PI * f1 / fs).tan();
        let w2 = (PI * f2 / fs).tan();
        let w = (PI * f / fs).tan();
        let lambda = (w * w - w1 * w2) / ((w2 - w1) * w);
        1.0 / (1.0 + lambda.powi(2 * order as i32)).sqrt()
    }

    #[test]
    fn notch_60_q200_attenuates_only_the_line() {
        let chain =
            design_filter(&FilterSpec::Notch { center_hz: 60.0, q: 200.0 }, FS).unwrap();
        assert!(chain.gain_db(60.0, FS) < -40.0, "{}", chain.gain_db(60.0, FS));
        assert!(chain.gain_db(55.0, FS) > -1.0);
        assert!(chain.gain_db(65.0, FS) > -1.0);
    }

    #[test]
    fn bandpass_matches_analytic_response() {
        let chain = design_filter(
            &FilterSpec::ButterBandpass { order: 2, low_hz: 3.0, high_hz: 37.0 },
            FS,
        )
        .unwrap();
        for f in [5.0, 10.0, 20.0, 37.0, 60.0, 100.0, 400.0] {
            let designed = chain.response_at(f, FS).norm();
            let analytic = butter_bp_magnitude(2, 3.0, 37.0, f, FS);
            assert!(
                (designed - analytic).abs() < 1e-9,
                "f={f}: designed {designed} vs analytic {analytic}"
            );
        }
        // passband essentially flat at 20 Hz, strong rolloff by 100 Hz
        assert!(chain.gain_db(20.0, FS) > -1.0);
        let g100 = chain.gain_db(100.0, FS);
        assert!(g100 < -15.0 && g100 > -22.0, "gain at 100 Hz: {g100} dB");
    }

    #[test]
    fn odd_order_bandpass_is_stable_and_unit_gain() {
        let chain = design_filter(
            &FilterSpec::ButterBandpass { order: 3, low_hz: 13.0, high_hz: 35.0 },
            FS,
        )
        .unwrap();
        assert_eq!(chain.sections.len(), 3);
        let f0 = FS * ((PI * 13.0 / FS).tan() * (PI * 35.0 / FS).tan()).sqrt().atan() / PI;
        assert!((chain.response_at(f0, FS).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn peak_filter_has_unit_gain_at_center() {
        let chain = design_filter(&FilterSpec::Peak { center_hz: 25.0, q: 3.0 }, FS).unwrap();
        assert!((chain.response_at(25.0, FS).norm() - 1.0).abs() < 1e-12);
        assert!(chain.gain_db(3.0, FS) < -10.0);
    }

    #[test]
    fn highpass_300_order3_response() {
        let chain =
            design_filter(&FilterSpec::ButterHighpass { order: 3, cutoff_hz: 300.0 }, FS)
                .unwrap();
        assert!((chain.gain_db(300.0, FS) - (-3.01)).abs() < 0.05);
        assert!(chain.gain_db(30.0, FS) < -55.0);
        assert!(chain.gain_db(3000.0, FS) > -0.1);
    }

    #[test]
    fn design_rejects_out_of_range() {
        assert!(design_filter(&FilterSpec::Notch { center_hz: 12_000.0, q: 30.0 }, FS).is_err());
        assert!(design_filter(
            &FilterSpec::ButterBandpass { order: 2, low_hz: 40.0, high_hz: 10.0 },
            FS
        )
        .is_err());
    }

    #[test]
    fn filtfilt_zero_in_zero_out() {
        let chain = design_filter(&FilterSpec::Notch { center_hz: 60.0, q: 200.0 }, FS).unwrap();
        let y = chain.filtfilt(&vec![0.0; 4_000]);
        assert!(y.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn filtfilt_kills_the_notched_tone() {
        let chain = design_filter(&FilterSpec::Notch { center_hz: 60.0, q: 200.0 }, FS).unwrap();
        let x = tone(60.0, FS, (12.0 * FS) as usize);
        let y = chain.filtfilt(&x);
        // a Q = 200 notch rings for about a second; measure past that
        let core = &y[(6.0 * FS) as usize..(11.0 * FS) as usize];
        assert!(rms(core) < 0.01 * rms(&x), "residual rms {}", rms(core));
    }

    #[test]
    fn filtfilt_is_zero_phase_for_band_interior_tone() {
        let chain = design_filter(
            &FilterSpec::ButterBandpass { order: 2, low_hz: 3.0, high_hz: 37.0 },
            FS,
        )
        .unwrap();
        let x = tone(20.0, FS, 44_000);
        let y = chain.filtfilt(&x);
        // cross-correlation peak must sit at lag zero
        let lag_range = 60i64;
        let mut best = (0i64, f64::MIN);
        for lag in -lag_range..=lag_range {
            let mut acc = 0.0;
            for i in 2_000..42_000i64 {
                acc += x[i as usize] * y[(i + lag) as usize];
            }
            if acc > best.1 {
                best = (lag, acc);
            }
        }
        assert_eq!(best.0, 0);
    }

    #[test]
    fn filtfilt_commutes_with_time_reversal() {
        let chain = design_filter(
            &FilterSpec::ButterBandpass { order: 2, low_hz: 3.0, high_hz: 37.0 },
            FS,
        )
        .unwrap();
        let mut state = 88u64;
        let x: Vec<f64> = (0..5_000)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        let fwd = chain.filtfilt(&x);
        let mut rev_in = x.clone();
        rev_in.reverse();
        let mut rev_out = chain.filtfilt(&rev_in);
        rev_out.reverse();
        let scale = rms(&fwd).max(1e-30);
        for (a, b) in fwd.iter().zip(&rev_out) {
            assert!((a - b).abs() < 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn causal_filter_delays_but_preserves_tone() {
        let chain = design_filter(
            &FilterSpec::ButterBandpass { order: 2, low_hz: 3.0, high_hz: 37.0 },
            FS,
        )
        .unwrap();
        let x = tone(20.0, FS, 44_000);
        let y = chain.filter_causal(&x);
        assert_eq!(y.len(), x.len());
        assert!((rms(&y[22_000..]) - rms(&x[22_000..])).abs() < 0.02 * rms(&x));
    }
}
