//! Removal of stimulus artifacts and transient DC artifacts from LFP
//! recordings made during high-frequency brain stimulation.
//!
//! The crate covers the full desk workflow:
//!
//! * [`synth`] — seeded generators for base LFPs, artifact tracks and
//!   semi-real compositions with complete ground truth;
//! * [`adbs`] — the beta-amplitude extraction chain and a causal
//!   threshold-triggered stimulation controller used both for labeling
//!   and for closed-loop simulation;
//! * [`preprocess`] — artifact peak detection, stimulation-period
//!   identification, transient-DC detrending and segmentation;
//! * [`shrink`] — low-rank denoising of segment groups by optimal
//!   singular-value shrinkage;
//! * [`library`] — the cross-recording artifact library (denoised
//!   segments, Haar features, per-recording summaries);
//! * [`ann`] — a random-hyperplane projection forest for approximate
//!   neighbor retrieval, plus exact KNN;
//! * [`smarta`] — per-segment template derivation and windowed
//!   overlap-add cleaning (adaptive and exact within-recording modes);
//! * [`baselines`] — causal template subtraction, pulse blanking and
//!   transient blanking for comparison;
//! * [`eval`] — artifact-residual, spectral-concentration, band-wise
//!   NMSE and temporal event-localization metrics;
//! * [`suite`] / [`bench`] — the end-to-end seeded reproduction suite
//!   and the per-segment latency benchmark behind the CLI.

pub mod adbs;
pub mod ann;
pub mod baselines;
pub mod bench;
pub mod dsp;
pub mod error;
pub mod eval;
pub mod io;
pub mod library;
pub mod preprocess;
pub mod shrink;
pub mod smarta;
pub mod suite;
pub mod synth;
pub mod types;

pub use error::{Error, Result};
pub use types::{EventList, Recording, SegmentGeometry, SegmentMatrix, StimPeriods};
