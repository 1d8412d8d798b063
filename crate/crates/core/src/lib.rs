//! Sensor-fusion GNSS spoofing detection for vehicle trajectories.

pub mod geo;
pub mod dtw;
pub mod trajectory;
