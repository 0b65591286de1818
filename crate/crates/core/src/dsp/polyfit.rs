//! Least-squares polynomial fitting on the normalized abscissa `[-1, 1]`.
//!
//! Fitting uses a Chebyshev basis so the normal equations stay
//! well-conditioned up to the degree-6 fits used for trend estimation.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// A fitted polynomial, stored as Chebyshev coefficients over the
/// normalized abscissa of the fitting grid.
#[derive(Debug, Clone)]
pub struct PolyFit {
    pub degree: usize,
    coeffs: Vec<f64>,
}

/// Fit a degree-`degree` polynomial to `x` sampled on a uniform grid.
pub fn polyfit(x: &[f64], degree: usize) -> Result<PolyFit> {
    if x.len() <= degree {
        return Err(Error::InvalidParam(format!(
            "{} samples cannot determine a degree-{degree} polynomial",
            x.len()
        )));
    }
    let n = x.len();
    let m = degree + 1;
    let mut gram = DMatrix::<f64>::zeros(m, m);
    let mut rhs = DVector::<f64>::zeros(m);
    let mut basis = vec![0.0f64; m];
    for (i, &xi) in x.iter().enumerate() {
        let t = grid_point(i, n);
        chebyshev_row(t, &mut basis);
        for a in 0..m {
            rhs[a] += basis[a] * xi;
            for b in a..m {
                gram[(a, b)] += basis[a] * basis[b];
            }
        }
    }
    for a in 0..m {
        for b in 0..a {
            gram[(a, b)] = gram[(b, a)];
        }
    }
    let coeffs = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numeric("singular polynomial normal equations".into()))?;
    Ok(PolyFit { degree, coeffs: coeffs.iter().copied().collect() })
}

/// Evaluate the fit on a uniform grid of `n` points spanning `[-1, 1]`.
pub fn polyeval(fit: &PolyFit, n: usize) -> Vec<f64> {
    (0..n).map(|i| clenshaw(&fit.coeffs, grid_point(i, n))).collect()
}

fn grid_point(i: usize, n: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        2.0 * i as f64 / (n - 1) as f64 - 1.0
    }
}

fn chebyshev_row(t: f64, out: &mut [f64]) {
    if let Some(first) = out.first_mut() {
        *first = 1.0;
    }
    if out.len() > 1 {
        out[1] = t;
    }
    for k in 2..out.len() {
        out[k] = 2.0 * t * out[k - 1] - out[k - 2];
    }
}

fn clenshaw(coeffs: &[f64], t: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    coeffs.first().copied().unwrap_or(0.0) + t * b1 - b2
}
