//! Trajectory CSV ingestion and persistence.
//!
//! The on-disk schema is one row per timestamp with columns
//! `ts,lat,lon,accel_pct,steer_deg,speed` (names configurable on read).
//! Floats are written with 17 significant digits so a read/write round
//! trip is bit-exact.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{synchronize, ChannelId, RawChannel, RawSample, Trajectory, TrajectoryError};

/// Maps CSV header names to channel fields. `lat`/`lon`/`ts` are
/// required; scalar channels are only extracted when configured.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CsvSchema {
    pub ts: String,
    pub lat: String,
    pub lon: String,
    pub accel_pct: Option<String>,
    pub steer_deg: Option<String>,
    pub speed: Option<String>,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            ts: "ts".into(),
            lat: "lat".into(),
            lon: "lon".into(),
            accel_pct: Some("accel_pct".into()),
            steer_deg: Some("steer_deg".into()),
            speed: Some("speed".into()),
        }
    }
}

/// Channels parsed from a CSV plus a count of rows that were dropped
/// from some channel because a cell failed to parse.
#[derive(Debug)]
pub struct ParsedChannels {
    pub channels: Vec<RawChannel>,
    pub skipped_cells: usize,
}

fn column_index(headers: &::csv::StringRecord, name: &str) -> Result<usize, TrajectoryError> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| TrajectoryError::MissingColumn(name.to_string()))
}

/// Parse raw channels out of a CSV stream.
///
/// Rows are sorted by timestamp before channel construction; rows whose
/// timestamp repeats an earlier one are dropped. A row contributes to a
/// channel only when every cell that channel needs parses as a finite
/// number (and, for GNSS, lies in valid coordinate ranges); other
/// channels still receive the row.
pub fn parse_trajectory_csv<R: Read>(
    reader: R,
    schema: &CsvSchema,
) -> Result<ParsedChannels, TrajectoryError> {
    let mut rdr = ::csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();

    let ts_idx = column_index(&headers, &schema.ts)?;
    let lat_idx = column_index(&headers, &schema.lat)?;
    let lon_idx = column_index(&headers, &schema.lon)?;
    let scalar_specs: Vec<(ChannelId, usize)> = [
        (ChannelId::AcceleratorPct, schema.accel_pct.as_ref()),
        (ChannelId::SteeringAngleDeg, schema.steer_deg.as_ref()),
        (ChannelId::WheelSpeed, schema.speed.as_ref()),
    ]
    .into_iter()
    .filter_map(|(id, name)| name.map(|n| (id, n)))
    .map(|(id, name)| Ok((id, column_index(&headers, name)?)))
    .collect::<Result<_, TrajectoryError>>()?;

    let mut rows: Vec<::csv::StringRecord> = Vec::new();
    let mut skipped = 0usize;
    for row in rdr.records() {
        let row = row?;
        match parse_cell(&row, ts_idx) {
            Some(_) => rows.push(row),
            None => skipped += 1,
        }
    }
    rows.sort_by(|a, b| {
        let ta = parse_cell(a, ts_idx).expect("filtered above");
        let tb = parse_cell(b, ts_idx).expect("filtered above");
        ta.partial_cmp(&tb).unwrap()
    });

    let mut gnss = Vec::new();
    let mut scalars: Vec<Vec<RawSample>> = vec![Vec::new(); scalar_specs.len()];
    let mut last_t = f64::NEG_INFINITY;
    for row in &rows {
        let t = parse_cell(row, ts_idx).expect("filtered above");
        if t <= last_t {
            skipped += 1;
            continue;
        }
        last_t = t;

        match (parse_cell(row, lat_idx), parse_cell(row, lon_idx)) {
            (Some(lat), Some(lon)) if (-90.0..=90.0).contains(&lat) && (-180.0..=180.0).contains(&lon) => {
                gnss.push(RawSample { t, v: [lat, lon] });
            }
            _ => skipped += 1,
        }
        for ((_, idx), out) in scalar_specs.iter().zip(scalars.iter_mut()) {
            match parse_cell(row, *idx) {
                Some(v) => out.push(RawSample { t, v: [v, 0.0] }),
                None => skipped += 1,
            }
        }
    }

    if gnss.is_empty() {
        return Err(TrajectoryError::EmptyChannel(ChannelId::GnssFix));
    }
    let mut channels = vec![RawChannel {
        id: ChannelId::GnssFix,
        samples: gnss,
    }];
    for ((id, _), samples) in scalar_specs.iter().zip(scalars) {
        if samples.is_empty() {
            return Err(TrajectoryError::EmptyChannel(*id));
        }
        channels.push(RawChannel { id: *id, samples });
    }
    Ok(ParsedChannels {
        channels,
        skipped_cells: skipped,
    })
}

fn parse_cell(row: &::csv::StringRecord, idx: usize) -> Option<f64> {
    row.get(idx)
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|v| v.is_finite())
}

/// Read a persisted trajectory (default schema) and synchronize it.
pub fn read_trajectory_csv(path: &Path) -> Result<Trajectory, TrajectoryError> {
    let file = BufReader::new(File::open(path)?);
    let parsed = parse_trajectory_csv(file, &CsvSchema::default())?;
    synchronize(&parsed.channels)
}

/// Persist a trajectory with the six-column schema at full double
/// precision (17 significant digits).
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<(), TrajectoryError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "ts,lat,lon,accel_pct,steer_deg,speed")?;
    for r in &traj.records {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_full(r.t),
            fmt_full(r.lat),
            fmt_full(r.lon),
            fmt_full(r.accel_pct),
            fmt_full(r.steer_deg),
            fmt_full(r.speed)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn fmt_full(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_configured_channels() {
        let csv = "ts,lat,lon\n1.0,37.0,-122.0\n2.0,37.1,-122.1\n3.0,37.2,-122.2\n";
        let schema = CsvSchema {
            accel_pct: None,
            steer_deg: None,
            speed: None,
            ..CsvSchema::default()
        };
        let parsed = parse_trajectory_csv(csv.as_bytes(), &schema).unwrap();
        assert_eq!(parsed.channels.len(), 1);
        assert_eq!(parsed.channels[0].id, ChannelId::GnssFix);
        assert_eq!(parsed.channels[0].samples.len(), 3);
        assert_eq!(parsed.skipped_cells, 0);
    }

    #[test]
    fn all_rows_invalid_is_empty_channel() {
        let csv = "ts,lat,lon\n1,abc,0\n";
        let schema = CsvSchema {
            accel_pct: None,
            steer_deg: None,
            speed: None,
            ..CsvSchema::default()
        };
        let err = parse_trajectory_csv(csv.as_bytes(), &schema).unwrap_err();
        assert!(matches!(err, TrajectoryError::EmptyChannel(ChannelId::GnssFix)));
    }

    #[test]
    fn out_of_order_rows_sorted() {
        let csv = "ts,lat,lon\n2.0,37.1,-122.0\n1.0,37.0,-122.0\n";
        let schema = CsvSchema {
            accel_pct: None,
            steer_deg: None,
            speed: None,
            ..CsvSchema::default()
        };
        let parsed = parse_trajectory_csv(csv.as_bytes(), &schema).unwrap();
        let samples = &parsed.channels[0].samples;
        assert_eq!(samples.len(), 2);
        assert!(samples[0].t < samples[1].t);
        assert_eq!(samples[0].v[0], 37.0);
    }

    #[test]
    fn missing_column_is_error() {
        let csv = "time,lat,lon\n1,2,3\n";
        let err = parse_trajectory_csv(csv.as_bytes(), &CsvSchema::default()).unwrap_err();
        assert!(matches!(err, TrajectoryError::MissingColumn(c) if c == "ts"));
    }

    #[test]
    fn round_trip_bit_exact() {
        use crate::trajectory::SyncedRecord;
        let traj = Trajectory::new(
            (0..20)
                .map(|i| SyncedRecord {
                    t: 1.6e9 + i as f64 / 120.0,
                    lat: 37.0 + i as f64 * 1.234567890123e-7,
                    lon: -122.0 - i as f64 * 9.87654321e-8,
                    accel_pct: 12.5 + i as f64 * 0.1,
                    steer_deg: -3.0 + i as f64,
                    speed: 33.0 / (i + 1) as f64,
                })
                .collect(),
            120.0,
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("traj.csv");
        write_trajectory_csv(&path, &traj).unwrap();
        let back = read_trajectory_csv(&path).unwrap();
        assert_eq!(back.records.len(), traj.records.len());
        for (a, b) in back.records.iter().zip(&traj.records) {
            assert_eq!(a, b);
        }
    }
}
