//! File formats.
//!
//! A recording is a flat file of raw little-endian `f32` samples next to a
//! UTF-8 `key=value` sidecar (`<path>.meta`) holding `fs`, `f_sti`,
//! `amplitude`, `id`, `n_samples` and optionally `stim_schedule`. Event
//! lists are two-column CSV with an `onset_s,offset_s` header.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::types::{EventList, Recording, StimPeriods};

fn sidecar_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".meta");
    PathBuf::from(os)
}

/// Load a recording from `path` and its `<path>.meta` sidecar.
pub fn load_recording(path: impl AsRef<Path>) -> Result<Recording> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() % 4 != 0 {
        return Err(Error::Format(format!(
            "{} holds {} bytes, not a multiple of 4",
            path.display(),
            bytes.len()
        )));
    }
    let samples: Vec<f64> = bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
        .collect();

    let meta = sidecar_path(path);
    let text = fs::read_to_string(&meta).map_err(|e| Error::io(&meta, e))?;
    let mut fs_hz = None;
    let mut f_sti = None;
    let mut amplitude = 0.0;
    let mut id = String::new();
    let mut n_samples = None;
    let mut stim_schedule = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Format(format!("{}:{}: expected key=value", meta.display(), lineno + 1))
        })?;
        let value = value.trim();
        match key.trim() {
            "fs" => fs_hz = Some(parse_num(value, &meta, "fs")?),
            "f_sti" => f_sti = Some(parse_num(value, &meta, "f_sti")?),
            "amplitude" => amplitude = parse_num(value, &meta, "amplitude")?,
            "id" => id = value.to_string(),
            "n_samples" => {
                n_samples = Some(value.parse::<usize>().map_err(|_| {
                    Error::Format(format!("{}: bad n_samples '{value}'", meta.display()))
                })?)
            }
            "stim_schedule" => stim_schedule = Some(parse_schedule(value, &meta)?),
            other => {
                return Err(Error::Format(format!(
                    "{}: unknown sidecar key '{other}'",
                    meta.display()
                )))
            }
        }
    }
    let declared = n_samples
        .ok_or_else(|| Error::Format(format!("{}: missing n_samples", meta.display())))?;
    if declared != samples.len() {
        return Err(Error::LengthMismatch { declared, actual: samples.len() });
    }
    if !samples.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("recording samples"));
    }

    let rec = Recording {
        samples,
        fs: fs_hz.ok_or_else(|| Error::Format(format!("{}: missing fs", meta.display())))?,
        f_sti: f_sti
            .ok_or_else(|| Error::Format(format!("{}: missing f_sti", meta.display())))?,
        amplitude,
        id,
        stim_schedule,
    };
    Ok(rec)
}

/// Write `rec` as raw `f32` plus sidecar. `load_recording` restores it
/// exactly (samples round-trip through `f32`).
pub fn save_recording(rec: &Recording, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut bytes = Vec::with_capacity(rec.samples.len() * 4);
    for &v in &rec.samples {
        bytes.extend_from_slice(&(v as f32).to_le_bytes());
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))?;

    let mut meta = String::new();
    let _ = writeln!(meta, "fs={}", rec.fs);
    let _ = writeln!(meta, "f_sti={}", rec.f_sti);
    let _ = writeln!(meta, "amplitude={}", rec.amplitude);
    let _ = writeln!(meta, "id={}", rec.id);
    let _ = writeln!(meta, "n_samples={}", rec.samples.len());
    if let Some(sched) = &rec.stim_schedule {
        let joined: Vec<String> =
            sched.iter().map(|(on, off)| format!("{on}:{off}")).collect();
        let _ = writeln!(meta, "stim_schedule={}", joined.join(";"));
    }
    let meta_path = sidecar_path(path);
    fs::write(&meta_path, meta).map_err(|e| Error::io(&meta_path, e))
}

fn parse_num(value: &str, path: &Path, key: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::Format(format!("{}: bad {key} '{value}'", path.display())))
}

fn parse_schedule(value: &str, path: &Path) -> Result<Vec<(f64, f64)>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(';')
        .map(|pair| {
            let (on, off) = pair.split_once(':').ok_or_else(|| {
                Error::Format(format!("{}: bad schedule entry '{pair}'", path.display()))
            })?;
            Ok((parse_num(on, path, "schedule on")?, parse_num(off, path, "schedule off")?))
        })
        .collect()
}

/// Write an event list as `onset_s,offset_s` CSV.
pub fn save_events(events: &EventList, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::from("onset_s,offset_s\n");
    for &(on, off) in &events.events {
        let _ = writeln!(text, "{on},{off}");
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Read an `onset_s,offset_s` CSV back into an event list.
pub fn load_events(path: impl AsRef<Path>) -> Result<EventList> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut events = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 || line.trim().is_empty() {
            continue;
        }
        let (a, b) = line.split_once(',').ok_or_else(|| {
            Error::Format(format!("{}:{}: expected two columns", path.display(), lineno + 1))
        })?;
        events.push((parse_num(a.trim(), path, "onset")?, parse_num(b.trim(), path, "offset")?));
    }
    EventList::new(events)
}

/// Write detected peaks as single-column `peak_sample` CSV.
pub fn save_peaks(peaks: &[usize], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::from("peak_sample\n");
    for &p in peaks {
        let _ = writeln!(text, "{p}");
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Write stimulation periods as `start_sample,end_sample` CSV.
pub fn save_periods(periods: &StimPeriods, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::from("start_sample,end_sample\n");
    for &(s, e) in &periods.periods {
        let _ = writeln!(text, "{s},{e}");
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
