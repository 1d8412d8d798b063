//! Great-circle geometry on a spherical Earth.
//!
//! All distances are in meters on a sphere of radius [`EARTH_RADIUS_M`].

/// Earth radius used throughout the toolkit, in meters.
pub const EARTH_RADIUS_M: f64 = 6_378_000.0;

/// A point on the sphere in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    pub lat_rad: f64,
    pub lon_rad: f64,
}

impl GeoPoint {
    pub fn from_degrees(lat_deg: f64, lon_deg: f64) -> Self {
        Self {
            lat_rad: lat_deg.to_radians(),
            lon_rad: lon_deg.to_radians(),
        }
    }

    pub fn lat_deg(&self) -> f64 {
        self.lat_rad.to_degrees()
    }

    pub fn lon_deg(&self) -> f64 {
        self.lon_rad.to_degrees()
    }
}

/// Haversine distance between two points, in meters.
pub fn haversine_distance(p1: GeoPoint, p2: GeoPoint) -> f64 {
    let half_dlat = (p2.lat_rad - p1.lat_rad) / 2.0;
    let half_dlon = (p2.lon_rad - p1.lon_rad) / 2.0;
    let a = half_dlat.sin().powi(2)
        + p1.lat_rad.cos() * p2.lat_rad.cos() * half_dlon.sin().powi(2);
    2.0 * EARTH_RADIUS_M * a.sqrt().min(1.0).asin()
}

/// Initial compass bearing from `p1` to `p2`, in degrees clockwise from
/// north, in (-180, 180].
pub fn initial_bearing_deg(p1: GeoPoint, p2: GeoPoint) -> f64 {
    let dlon = p2.lon_rad - p1.lon_rad;
    let y = dlon.sin() * p2.lat_rad.cos();
    let x = p1.lat_rad.cos() * p2.lat_rad.sin()
        - p1.lat_rad.sin() * p2.lat_rad.cos() * dlon.cos();
    let b = y.atan2(x).to_degrees();
    wrap_deg(b)
}

/// Destination point after traveling `distance_m` along `bearing_deg`.
pub fn destination(start: GeoPoint, bearing_deg: f64, distance_m: f64) -> GeoPoint {
    let delta = distance_m / EARTH_RADIUS_M;
    let theta = bearing_deg.to_radians();
    let lat1 = start.lat_rad;
    let lon1 = start.lon_rad;
    let lat2 = (lat1.sin() * delta.cos() + lat1.cos() * delta.sin() * theta.cos()).asin();
    let lon2 = lon1
        + (theta.sin() * delta.sin() * lat1.cos()).atan2(delta.cos() - lat1.sin() * lat2.sin());
    GeoPoint {
        lat_rad: lat2,
        lon_rad: lon2,
    }
}

/// Wrap an angle in degrees into (-180, 180].
pub fn wrap_deg(deg: f64) -> f64 {
    let mut d = deg % 360.0;
    if d > 180.0 {
        d -= 360.0;
    } else if d <= -180.0 {
        d += 360.0;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent great-circle oracle: angle between the unit position
    /// vectors via atan2(|n1 x n2|, n1 . n2). Numerically stable down to
    /// sub-meter separations, unlike the plain arccos form.
    fn great_circle_oracle(p1: GeoPoint, p2: GeoPoint) -> f64 {
        let to_vec = |p: GeoPoint| {
            [
                p.lat_rad.cos() * p.lon_rad.cos(),
                p.lat_rad.cos() * p.lon_rad.sin(),
                p.lat_rad.sin(),
            ]
        };
        let a = to_vec(p1);
        let b = to_vec(p2);
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        EARTH_RADIUS_M * cross_norm.atan2(dot)
    }

    #[test]
    fn zero_separation_is_zero() {
        let p = GeoPoint::from_degrees(37.4, -122.1);
        assert_eq!(haversine_distance(p, p), 0.0);
    }

    #[test]
    fn equatorial_arc_closed_form() {
        let p1 = GeoPoint::from_degrees(0.0, 0.0);
        let p2 = GeoPoint::from_degrees(0.0, 0.001);
        let expected = EARTH_RADIUS_M * 0.001f64.to_radians();
        assert_relative_eq!(haversine_distance(p1, p2), expected, max_relative = 1e-12);
        assert_relative_eq!(great_circle_oracle(p1, p2), expected, max_relative = 1e-9);
    }

    #[test]
    fn matches_independent_great_circle_formula() {
        let p1 = GeoPoint::from_degrees(10.0, 20.0);
        let p2 = GeoPoint::from_degrees(10.0001, 20.0001);
        let d = haversine_distance(p1, p2);
        let oracle = great_circle_oracle(p1, p2);
        assert_relative_eq!(d, oracle, max_relative = 1e-6);
    }

    #[test]
    fn symmetric_in_arguments() {
        let p1 = GeoPoint::from_degrees(37.77, -122.42);
        let p2 = GeoPoint::from_degrees(37.80, -122.27);
        assert_eq!(haversine_distance(p1, p2), haversine_distance(p2, p1));
    }

    #[test]
    fn destination_round_trip() {
        let start = GeoPoint::from_degrees(37.0, -122.0);
        let end = destination(start, 47.0, 250.0);
        assert_relative_eq!(haversine_distance(start, end), 250.0, max_relative = 1e-9);
        assert_relative_eq!(initial_bearing_deg(start, end), 47.0, epsilon = 1e-6);
    }

    #[test]
    fn bearing_cardinal_directions() {
        let p = GeoPoint::from_degrees(37.0, -122.0);
        let east = destination(p, 90.0, 100.0);
        let south = destination(p, 180.0, 100.0);
        assert_relative_eq!(initial_bearing_deg(p, east), 90.0, epsilon = 1e-6);
        assert_relative_eq!(initial_bearing_deg(p, south), 180.0, epsilon = 1e-6);
    }

    #[test]
    fn wrap_deg_range() {
        assert_eq!(wrap_deg(190.0), -170.0);
        assert_eq!(wrap_deg(-190.0), 170.0);
        assert_eq!(wrap_deg(180.0), 180.0);
        assert_eq!(wrap_deg(360.0), 0.0);
    }
}
