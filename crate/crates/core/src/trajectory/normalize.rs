//! Min-max normalization of the four model features.

use super::{compute_location_shifts, Trajectory, TrajectoryError};

/// Inclusive value range of one feature over the training corpus.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FeatureRange {
    pub min: f64,
    pub max: f64,
}

impl FeatureRange {
    pub fn fit(values: &[f64]) -> Result<Self, TrajectoryError> {
        if values.is_empty() {
            return Err(TrajectoryError::EmptyFeature);
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in values {
            min = min.min(v);
            max = max.max(v);
        }
        Ok(Self { min, max })
    }

    /// Map into [0, 1], clamping out-of-range inputs. A constant feature
    /// (max == min) maps to 0.
    pub fn normalize(&self, x: f64) -> f64 {
        if self.max == self.min {
            return 0.0;
        }
        ((x - self.min) / (self.max - self.min)).clamp(0.0, 1.0)
    }

    pub fn denormalize(&self, y: f64) -> f64 {
        self.min + y * (self.max - self.min)
    }
}

/// Per-feature min/max for (shift, accel_pct, steer_deg, speed).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NormalizationParams {
    pub shift: FeatureRange,
    pub accel_pct: FeatureRange,
    pub steer_deg: FeatureRange,
    pub speed: FeatureRange,
}

/// Feature columns aligned on records `1..n` of a trajectory: the shift
/// feature at index `i` is the distance covered arriving at record
/// `i + 1`.
#[derive(Debug, Clone, Default)]
pub struct FeatureSeries {
    pub shift: Vec<f64>,
    pub accel_pct: Vec<f64>,
    pub steer_deg: Vec<f64>,
    pub speed: Vec<f64>,
}

impl FeatureSeries {
    /// Extract features from a trajectory, skipping rows whose shift
    /// spans a gap boundary.
    pub fn from_trajectory(traj: &Trajectory) -> Result<Self, TrajectoryError> {
        let shifts = compute_location_shifts(traj)?;
        let mut out = FeatureSeries::default();
        for (i, &shift) in shifts.iter().enumerate() {
            let rec = i + 1;
            if traj.gap_before(rec) {
                continue;
            }
            out.shift.push(shift);
            out.accel_pct.push(traj.records[rec].accel_pct);
            out.steer_deg.push(traj.records[rec].steer_deg);
            out.speed.push(traj.records[rec].speed);
        }
        Ok(out)
    }

    pub fn extend(&mut self, other: &FeatureSeries) {
        self.shift.extend_from_slice(&other.shift);
        self.accel_pct.extend_from_slice(&other.accel_pct);
        self.steer_deg.extend_from_slice(&other.steer_deg);
        self.speed.extend_from_slice(&other.speed);
    }
}

pub fn fit_normalization(features: &FeatureSeries) -> Result<NormalizationParams, TrajectoryError> {
    Ok(NormalizationParams {
        shift: FeatureRange::fit(&features.shift)?,
        accel_pct: FeatureRange::fit(&features.accel_pct)?,
        steer_deg: FeatureRange::fit(&features.steer_deg)?,
        speed: FeatureRange::fit(&features.speed)?,
    })
}

/// Normalized feature vector in [0, 1]^4, ordered
/// (shift, accel_pct, steer_deg, speed).
pub fn apply_normalization(
    params: &NormalizationParams,
    shift: f64,
    accel_pct: f64,
    steer_deg: f64,
    speed: f64,
) -> [f64; 4] {
    [
        params.shift.normalize(shift),
        params.accel_pct.normalize(accel_pct),
        params.steer_deg.normalize(steer_deg),
        params.speed.normalize(speed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn midpoint_maps_to_half() {
        let r = FeatureRange::fit(&[2.0, 4.0, 6.0]).unwrap();
        assert_eq!(r.normalize(4.0), 0.5);
    }

    #[test]
    fn below_min_clamps_to_zero() {
        let r = FeatureRange { min: 1.0, max: 3.0 };
        assert_eq!(r.normalize(0.0), 0.0);
        assert_eq!(r.normalize(9.0), 1.0);
    }

    #[test]
    fn constant_feature_maps_to_zero() {
        let r = FeatureRange::fit(&[5.0, 5.0]).unwrap();
        assert_eq!(r.normalize(5.0), 0.0);
    }

    proptest! {
        #[test]
        fn round_trip_in_range(min in -1e3f64..1e3, width in 1e-6f64..1e3, frac in 0.0f64..1.0) {
            let r = FeatureRange { min, max: min + width };
            let x = min + frac * width;
            let back = r.denormalize(r.normalize(x));
            prop_assert!((back - x).abs() <= 1e-12 * width.max(x.abs()).max(1.0));
        }

        #[test]
        fn output_always_in_unit_interval(min in -1e3f64..1e3, width in 0.0f64..1e3, x in -2e3f64..2e3) {
            let r = FeatureRange { min, max: min + width };
            let y = r.normalize(x);
            prop_assert!((0.0..=1.0).contains(&y));
        }
    }
}
