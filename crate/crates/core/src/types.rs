//! Shared domain types: recordings, stimulation periods, segment matrices
//! and beta-event lists.
//!
//! Time is carried as integer sample indices everywhere inside the crate;
//! seconds appear only at I/O boundaries. Segment geometry is derived once
//! per recording from `fs` and `f_sti` and stays fixed so that all segment
//! matrices of a recording share the same row count.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A single-channel LFP recording plus the metadata the pipeline needs.
#[derive(Debug, Clone)]
pub struct Recording {
    /// Samples in microvolts.
    pub samples: Vec<f64>,
    /// Sampling rate in Hz.
    pub fs: f64,
    /// Nominal stimulation frequency in Hz.
    pub f_sti: f64,
    /// Nominal stimulation amplitude in device units; only used for the
    /// 10% candidate-matching rule.
    pub amplitude: f64,
    /// Opaque identifier.
    pub id: String,
    /// Known stimulation schedule, `[on, off)` in seconds, if the recording
    /// is synthetic.
    pub stim_schedule: Option<Vec<(f64, f64)>>,
}

impl Recording {
    pub fn new(samples: Vec<f64>, fs: f64, f_sti: f64) -> Self {
        Recording {
            samples,
            fs,
            f_sti,
            amplitude: 0.0,
            id: String::new(),
            stim_schedule: None,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.fs
    }

    /// Check the structural invariants: `fs > 2 f_sti` and finite samples.
    pub fn validate(&self) -> Result<()> {
        if !(self.fs > 2.0 * self.f_sti) {
            return Err(Error::InvalidParam(format!(
                "fs = {} must exceed 2 * f_sti = {}",
                self.fs,
                2.0 * self.f_sti
            )));
        }
        if !self.samples.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("recording samples"));
        }
        Ok(())
    }

    /// Segment geometry implied by `fs` and `f_sti`.
    pub fn segment_geometry(&self) -> SegmentGeometry {
        SegmentGeometry::from_rates(self.fs, self.f_sti)
    }

    /// Same recording with replaced samples.
    pub fn with_samples(&self, samples: Vec<f64>) -> Recording {
        Recording { samples, ..self.clone() }
    }
}

/// Per-recording segment slicing constants.
///
/// A segment starts `pre_ms` before its artifact peak and ends
/// `1000/f_sti - 0.5` ms after it, which makes consecutive segments overlap
/// by about half a millisecond at nominal pulse spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentGeometry {
    /// Samples per segment.
    pub p: usize,
    /// Samples before the peak.
    pub pre: usize,
    /// Minimum admissible peak spacing in samples (`1/f_sti - tau`).
    pub min_peak_dist: f64,
    /// Maximum within-period peak gap in samples (`2.5 / f_sti`).
    pub max_gap: f64,
}

/// Bias-handling slack when enforcing the minimum inter-peak interval, ms.
pub const TAU_MS: f64 = 0.5;
/// Segment lead time before the detected peak, ms.
pub const PRE_MS: f64 = 1.0;

impl SegmentGeometry {
    pub fn from_rates(fs: f64, f_sti: f64) -> SegmentGeometry {
        let post_ms = 1000.0 / f_sti - 0.5;
        let p = (fs * (PRE_MS + post_ms) / 1000.0).round() as usize;
        let pre = (fs * PRE_MS / 1000.0).round() as usize;
        SegmentGeometry {
            p,
            pre,
            min_peak_dist: fs * (1.0 / f_sti - TAU_MS / 1000.0),
            max_gap: fs * 2.5 / f_sti,
        }
    }

    /// Segment span `[start, end)` for a peak at `peak`, or `None` when the
    /// segment would stick out of `[0, len)`.
    pub fn span(&self, peak: usize, len: usize) -> Option<(usize, usize)> {
        let start = peak.checked_sub(self.pre)?;
        let end = start + self.p;
        (end <= len).then_some((start, end))
    }
}

/// Matrix of artifact segments, one column per detected pulse.
#[derive(Debug, Clone)]
pub struct SegmentMatrix {
    /// `p x n`, columns in peak order, microvolts.
    pub data: DMatrix<f64>,
    /// Peak sample index of each column.
    pub peak_times: Vec<usize>,
    /// Start sample of each column's span.
    pub starts: Vec<usize>,
    pub geometry: SegmentGeometry,
    /// Peaks dropped because their segment would cross a signal boundary.
    pub dropped: usize,
}

impl SegmentMatrix {
    pub fn n_segments(&self) -> usize {
        self.data.ncols()
    }
}

/// Sorted, non-overlapping stimulation-on intervals in sample indices.
#[derive(Debug, Clone, Default)]
pub struct StimPeriods {
    /// `[start, end)` pairs.
    pub periods: Vec<(usize, usize)>,
}

impl StimPeriods {
    pub fn new(periods: Vec<(usize, usize)>) -> Result<Self> {
        for w in periods.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::InvalidParam(
                    "stimulation periods overlap or are unsorted".into(),
                ));
            }
        }
        if periods.iter().any(|&(s, e)| e <= s) {
            return Err(Error::InvalidParam("empty stimulation period".into()));
        }
        Ok(StimPeriods { periods })
    }

    pub fn is_empty(&self) -> bool {
        self.periods.is_empty()
    }

    pub fn contains(&self, sample: usize) -> bool {
        self.periods.iter().any(|&(s, e)| s <= sample && sample < e)
    }

    /// Complementary gaps covering the rest of `[0, len)`.
    pub fn gaps(&self, len: usize) -> Vec<(usize, usize)> {
        let mut gaps = Vec::new();
        let mut cursor = 0usize;
        for &(s, e) in &self.periods {
            if s > cursor {
                gaps.push((cursor, s.min(len)));
            }
            cursor = cursor.max(e);
        }
        if cursor < len {
            gaps.push((cursor, len));
        }
        gaps.retain(|&(s, e)| e > s);
        gaps
    }

    /// Total on-time as a fraction of `len`.
    pub fn on_fraction(&self, len: usize) -> f64 {
        let on: usize = self.periods.iter().map(|&(s, e)| e.min(len) - s.min(len)).sum();
        on as f64 / len as f64
    }
}

/// Sorted, non-overlapping `[onset, offset)` intervals in seconds.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EventList {
    pub events: Vec<(f64, f64)>,
}

impl EventList {
    pub fn new(events: Vec<(f64, f64)>) -> Result<Self> {
        for &(on, off) in &events {
            if !(off > on) {
                return Err(Error::InvalidParam(format!(
                    "event [{on}, {off}) has non-positive length"
                )));
            }
        }
        for w in events.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::InvalidParam("events overlap or are unsorted".into()));
            }
        }
        Ok(EventList { events })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Total event time in seconds.
    pub fn total_duration(&self) -> f64 {
        self.events.iter().map(|&(a, b)| b - a).sum()
    }

    /// Keep only events that intersect at least one window.
    pub fn restrict_to(&self, windows: &[(f64, f64)]) -> EventList {
        let events = self
            .events
            .iter()
            .copied()
            .filter(|&(on, off)| windows.iter().any(|&(ws, we)| on < we && ws < off))
            .collect();
        EventList { events }
    }
}
