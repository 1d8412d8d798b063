//! Sensor-log ingestion, multi-rate synchronization, location shifts,
//! normalization, and resampling.
//!
//! Raw vehicle logs arrive as per-channel sample streams at different
//! rates (GNSS at 120 Hz, CAN channels at 100 Hz in the reference
//! dataset). [`synchronize`] interpolates every channel onto the GNSS
//! clock, producing a [`Trajectory`] of [`SyncedRecord`]s that the
//! detection strategies consume.

mod csv_io;
mod normalize;

pub use csv_io::{parse_trajectory_csv, read_trajectory_csv, write_trajectory_csv, CsvSchema, ParsedChannels};
pub use normalize::{apply_normalization, fit_normalization, FeatureRange, FeatureSeries, NormalizationParams};

use std::collections::BTreeMap;

use crate::geo::{haversine_distance, GeoPoint};

/// Sensor channels extracted from a vehicle log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ChannelId {
    GnssFix,
    AcceleratorPct,
    SteeringAngleDeg,
    WheelSpeed,
}

/// One raw observation. `GnssFix` carries `[lat_deg, lon_deg]`; scalar
/// channels use only `v[0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawSample {
    pub t: f64,
    pub v: [f64; 2],
}

/// A time-ordered stream of raw samples for one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct RawChannel {
    pub id: ChannelId,
    pub samples: Vec<RawSample>,
}

impl RawChannel {
    /// Time span `(first, last)` covered by the channel.
    pub fn span(&self) -> Option<(f64, f64)> {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => Some((a.t, b.t)),
            _ => None,
        }
    }
}

/// All four channels sampled on the GNSS clock.
///
/// Units as recorded: degrees for position and steering wheel angle,
/// percent for the accelerator pedal, feet/second for wheel speed.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SyncedRecord {
    pub t: f64,
    pub lat: f64,
    pub lon: f64,
    pub accel_pct: f64,
    pub steer_deg: f64,
    pub speed: f64,
}

impl SyncedRecord {
    pub fn point(&self) -> GeoPoint {
        GeoPoint::from_degrees(self.lat, self.lon)
    }
}

/// A synchronized, time-ordered trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub records: Vec<SyncedRecord>,
    pub nominal_rate_hz: f64,
    pub meta: BTreeMap<String, String>,
}

impl Trajectory {
    pub fn new(records: Vec<SyncedRecord>, nominal_rate_hz: f64) -> Self {
        Self {
            records,
            nominal_rate_hz,
            meta: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True when the gap before record `i` exceeds twice the nominal
    /// period, marking a recording discontinuity.
    pub fn gap_before(&self, i: usize) -> bool {
        if i == 0 || i >= self.records.len() {
            return false;
        }
        let dt = self.records[i].t - self.records[i - 1].t;
        dt > 2.0 / self.nominal_rate_hz
    }

    pub fn span(&self) -> Option<(f64, f64)> {
        match (self.records.first(), self.records.last()) {
            (Some(a), Some(b)) => Some((a.t, b.t)),
            _ => None,
        }
    }

    /// Records with `t0 <= t <= t1`.
    pub fn slice_by_time(&self, t0: f64, t1: f64) -> &[SyncedRecord] {
        let lo = self.records.partition_point(|r| r.t < t0);
        let hi = self.records.partition_point(|r| r.t <= t1);
        &self.records[lo..hi]
    }
}

/// A scalar time series with strictly increasing timestamps.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self, TrajectoryError> {
        if times.len() != values.len() {
            return Err(TrajectoryError::LengthMismatch {
                times: times.len(),
                values: values.len(),
            });
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(TrajectoryError::NonMonotonicTime);
        }
        Ok(Self { times, values })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn span(&self) -> Option<(f64, f64)> {
        match (self.times.first(), self.times.last()) {
            (Some(a), Some(b)) => Some((*a, *b)),
            _ => None,
        }
    }

    /// Extract a field of every record as a series, e.g. steering angle.
    pub fn from_records(records: &[SyncedRecord], get: impl Fn(&SyncedRecord) -> f64) -> Result<Self, TrajectoryError> {
        Self::new(
            records.iter().map(|r| r.t).collect(),
            records.iter().map(get).collect(),
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TrajectoryError {
    #[error("column `{0}` missing from CSV header")]
    MissingColumn(String),
    #[error("channel {0:?} has no valid rows")]
    EmptyChannel(ChannelId),
    #[error("channel {0:?} is required but absent")]
    MissingChannel(ChannelId),
    #[error("channel time spans do not overlap the reference span")]
    NoOverlap,
    #[error("need at least {need} samples, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("timestamps must be strictly increasing")]
    NonMonotonicTime,
    #[error("times/values length mismatch: {times} vs {values}")]
    LengthMismatch { times: usize, values: usize },
    #[error("target rate must be positive, got {0}")]
    InvalidRate(f64),
    #[error("empty feature series")]
    EmptyFeature,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] ::csv::Error),
}

/// Linear interpolation of `(t, v)` samples at query time `t`.
///
/// `samples` must be sorted by time and bracket `t`. A query that hits a
/// sample time exactly returns that sample's value verbatim.
fn interp_at(samples: &[RawSample], t: f64, component: usize) -> f64 {
    debug_assert!(!samples.is_empty());
    match samples.binary_search_by(|s| s.t.partial_cmp(&t).unwrap()) {
        Ok(i) => samples[i].v[component],
        Err(i) => {
            // Caller guarantees t is within the channel span.
            let lo = &samples[i - 1];
            let hi = &samples[i];
            let w = (t - lo.t) / (hi.t - lo.t);
            lo.v[component] + w * (hi.v[component] - lo.v[component])
        }
    }
}

fn find_channel<'a>(channels: &'a [RawChannel], id: ChannelId) -> Result<&'a RawChannel, TrajectoryError> {
    let ch = channels
        .iter()
        .find(|c| c.id == id)
        .ok_or(TrajectoryError::MissingChannel(id))?;
    if ch.samples.is_empty() {
        return Err(TrajectoryError::EmptyChannel(id));
    }
    Ok(ch)
}

/// Interpolate all channels onto the GNSS timestamps.
///
/// The `GnssFix` channel is the reference clock; every other channel is
/// linearly interpolated between its two bracketing samples. Reference
/// timestamps outside any channel's span are dropped.
pub fn synchronize(channels: &[RawChannel]) -> Result<Trajectory, TrajectoryError> {
    let gnss = find_channel(channels, ChannelId::GnssFix)?;
    let accel = find_channel(channels, ChannelId::AcceleratorPct)?;
    let steer = find_channel(channels, ChannelId::SteeringAngleDeg)?;
    let speed = find_channel(channels, ChannelId::WheelSpeed)?;

    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for ch in [gnss, accel, steer, speed] {
        let (a, b) = ch.span().expect("non-empty checked above");
        lo = lo.max(a);
        hi = hi.min(b);
    }

    let mut records = Vec::new();
    for fix in &gnss.samples {
        if fix.t < lo || fix.t > hi {
            continue;
        }
        records.push(SyncedRecord {
            t: fix.t,
            lat: fix.v[0],
            lon: fix.v[1],
            accel_pct: interp_at(&accel.samples, fix.t, 0),
            steer_deg: interp_at(&steer.samples, fix.t, 0),
            speed: interp_at(&speed.samples, fix.t, 0),
        });
    }
    if records.is_empty() {
        return Err(TrajectoryError::NoOverlap);
    }

    let rate = estimate_rate_hz(&gnss.samples);
    Ok(Trajectory::new(records, rate))
}

/// Nominal rate from the median inter-sample gap of the reference clock.
fn estimate_rate_hz(samples: &[RawSample]) -> f64 {
    if samples.len() < 2 {
        return 120.0;
    }
    let mut gaps: Vec<f64> = samples.windows(2).map(|w| w[1].t - w[0].t).collect();
    gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = gaps[gaps.len() / 2];
    if median > 0.0 {
        1.0 / median
    } else {
        120.0
    }
}

/// Great-circle distance between each pair of consecutive fixes, meters.
///
/// Output length is `records.len() - 1`; element `i` is the shift from
/// record `i` to record `i + 1`.
pub fn compute_location_shifts(traj: &Trajectory) -> Result<Vec<f64>, TrajectoryError> {
    if traj.records.len() < 2 {
        return Err(TrajectoryError::TooShort {
            need: 2,
            got: traj.records.len(),
        });
    }
    Ok(traj
        .records
        .windows(2)
        .map(|w| haversine_distance(w[0].point(), w[1].point()))
        .collect())
}

/// Resample a series onto a uniform grid at `target_hz` spanning the
/// input range, linearly interpolating values.
pub fn resample(series: &TimeSeries, target_hz: f64) -> Result<TimeSeries, TrajectoryError> {
    if !(target_hz > 0.0) {
        return Err(TrajectoryError::InvalidRate(target_hz));
    }
    if series.len() < 2 {
        return Err(TrajectoryError::TooShort {
            need: 2,
            got: series.len(),
        });
    }
    let (t0, t1) = series.span().expect("len >= 2");
    let period = 1.0 / target_hz;
    let steps = ((t1 - t0) / period + 1e-9).floor() as usize;

    let mut times = Vec::with_capacity(steps + 1);
    let mut values = Vec::with_capacity(steps + 1);
    let mut cursor = 0usize;
    for k in 0..=steps {
        let t = t0 + k as f64 * period;
        let t = t.min(t1);
        while cursor + 1 < series.len() && series.times[cursor + 1] < t {
            cursor += 1;
        }
        let v = if t <= series.times[cursor] {
            series.values[cursor]
        } else {
            let ta = series.times[cursor];
            let tb = series.times[cursor + 1];
            let w = (t - ta) / (tb - ta);
            series.values[cursor] + w * (series.values[cursor + 1] - series.values[cursor])
        };
        times.push(t);
        values.push(v);
    }
    TimeSeries::new(times, values)
}
