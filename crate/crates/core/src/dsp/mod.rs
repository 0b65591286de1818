//! Reusable DSP primitives: biquad cascades, moving means, the Haar
//! transform, Welch PSD estimation and polynomial trend fitting.

mod filter;
mod haar;
mod moving_average;
mod polyfit;
mod welch;

pub use filter::{design_filter, notch_comb, Biquad, BiquadChain, FilterSpec};
pub use haar::{haar_forward, haar_inverse, padded_len};
pub use moving_average::{moving_average, moving_average_samples, trailing_mean};
pub use polyfit::{polyeval, polyfit, PolyFit};
pub use welch::{welch_psd, Psd};
