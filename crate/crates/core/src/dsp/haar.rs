//! Orthonormal full-depth Haar transform on zero-padded inputs.
//!
//! Signals are padded with zeros to the next power of two, so the transform
//! is an isometry between the padded signal and its coefficients. The
//! coefficient layout is `[approximation, d_coarsest, ..., d_finest]` with
//! the finest-level details occupying the upper half.

const SQRT2_INV: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Coefficient count for a signal of length `p`.
pub fn padded_len(p: usize) -> usize {
    p.next_power_of_two().max(1)
}

/// Full-depth forward transform of `x` zero-padded to a power of two.
pub fn haar_forward(x: &[f64]) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    let q = padded_len(x.len());
    let mut buf = vec![0.0; q];
    buf[..x.len()].copy_from_slice(x);
    let mut scratch = vec![0.0; q];
    let mut m = q;
    while m >= 2 {
        let half = m / 2;
        for i in 0..half {
            let a = buf[2 * i];
            let b = buf[2 * i + 1];
            scratch[i] = (a + b) * SQRT2_INV;
            scratch[half + i] = (a - b) * SQRT2_INV;
        }
        buf[..m].copy_from_slice(&scratch[..m]);
        m = half;
    }
    buf
}

/// Inverse of [`haar_forward`]; returns the padded signal.
pub fn haar_inverse(coeffs: &[f64]) -> Vec<f64> {
    let q = coeffs.len();
    if q == 0 {
        return Vec::new();
    }
    assert!(q.is_power_of_two(), "coefficient length {q} is not a power of two");
    let mut buf = coeffs.to_vec();
    let mut scratch = vec![0.0; q];
    let mut m = 2;
    while m <= q {
        let half = m / 2;
        for i in 0..half {
            let a = buf[i];
            let d = buf[half + i];
            scratch[2 * i] = (a + d) * SQRT2_INV;
            scratch[2 * i + 1] = (a - d) * SQRT2_INV;
        }
        buf[..m].copy_from_slice(&scratch[..m]);
        m *= 2;
    }
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l2(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    #[test]
    fn constant_signal_concentrates_in_approximation() {
        let c = 1.7;
        let coeffs = haar_forward(&[c; 4]);
        assert!((coeffs[0] - 2.0 * c).abs() < 1e-15);
        assert!(coeffs[1..].iter().all(|&d| d.abs() < 1e-15));
    }

    #[test]
    fn pad_180_to_256() {
        assert_eq!(padded_len(180), 256);
        assert_eq!(haar_forward(&[1.0; 180]).len(), 256);
        assert_eq!(padded_len(256), 256);
        assert_eq!(padded_len(1), 1);
    }

    proptest! {
        #[test]
        fn roundtrip_and_parseval(x in proptest::collection::vec(-1e3f64..1e3, 1..300)) {
            let coeffs = haar_forward(&x);
            let back = haar_inverse(&coeffs);
            let mut padded = x.clone();
            padded.resize(padded_len(x.len()), 0.0);
            for (a, b) in back.iter().zip(&padded) {
                prop_assert!((a - b).abs() < 1e-12);
            }
            prop_assert!((l2(&coeffs) - l2(&padded)).abs() < 1e-12 * (1.0 + l2(&padded)));
        }
    }
}
