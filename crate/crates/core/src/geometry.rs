//! Flat-earth geometry between an aerial platform and ground terminals.
//!
//! Angles cross the public boundary in degrees. Distances are metres.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the local tangent plane, metres.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x_m: f64,
    pub y_m: f64,
}

impl PlanarPoint {
    pub const fn new(x_m: f64, y_m: f64) -> Self {
        Self { x_m, y_m }
    }

    pub fn is_finite(&self) -> bool {
        self.x_m.is_finite() && self.y_m.is_finite()
    }

    pub fn distance_to(&self, other: &PlanarPoint) -> f64 {
        (self.x_m - other.x_m).hypot(self.y_m - other.y_m)
    }

    pub(crate) fn distance_sq(&self, other: &PlanarPoint) -> f64 {
        let dx = self.x_m - other.x_m;
        let dy = self.y_m - other.y_m;
        dx * dx + dy * dy
    }
}

/// Platform-to-terminal geometry with the derived elevation angle and
/// slant range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkGeometry {
    pub altitude_m: f64,
    pub ground_range_m: f64,
    pub elevation_deg: f64,
    pub slant_range_m: f64,
}

impl LinkGeometry {
    pub fn new(altitude_m: f64, ground_range_m: f64) -> Result<Self> {
        check(altitude_m, ground_range_m)?;
        Ok(Self {
            altitude_m,
            ground_range_m,
            elevation_deg: elevation_unchecked(altitude_m, ground_range_m),
            slant_range_m: altitude_m.hypot(ground_range_m),
        })
    }

    /// Rebuilds altitude and ground range from an elevation angle and slant
    /// range.
    pub fn from_polar(elevation_deg: f64, slant_range_m: f64) -> Result<Self> {
        if !(elevation_deg > 0.0 && elevation_deg <= 90.0) {
            return Err(Error::domain(format!(
                "elevation must lie in (0, 90] degrees, got {elevation_deg}"
            )));
        }
        if !(slant_range_m > 0.0 && slant_range_m.is_finite()) {
            return Err(Error::domain(format!(
                "slant range must be positive, got {slant_range_m}"
            )));
        }
        let theta = elevation_deg.to_radians();
        let altitude_m = slant_range_m * theta.sin();
        let ground_range_m = if elevation_deg == 90.0 {
            0.0
        } else {
            slant_range_m * theta.cos()
        };
        Ok(Self {
            altitude_m,
            ground_range_m,
            elevation_deg,
            slant_range_m,
        })
    }
}

fn check(altitude_m: f64, ground_range_m: f64) -> Result<()> {
    if !(altitude_m > 0.0 && altitude_m.is_finite()) {
        return Err(Error::domain(format!(
            "altitude must be positive and finite, got {altitude_m}"
        )));
    }
    if !(ground_range_m >= 0.0 && ground_range_m.is_finite()) {
        return Err(Error::domain(format!(
            "ground range must be non-negative and finite, got {ground_range_m}"
        )));
    }
    Ok(())
}

fn elevation_unchecked(altitude_m: f64, ground_range_m: f64) -> f64 {
    if ground_range_m == 0.0 {
        90.0
    } else {
        altitude_m.atan2(ground_range_m).to_degrees().min(90.0)
    }
}

/// Angle above the horizon at which a terminal sees the platform.
pub fn elevation_angle_deg(altitude_m: f64, ground_range_m: f64) -> Result<f64> {
    check(altitude_m, ground_range_m)?;
    Ok(elevation_unchecked(altitude_m, ground_range_m))
}

/// Straight-line distance between platform and terminal.
pub fn slant_range_m(altitude_m: f64, ground_range_m: f64) -> Result<f64> {
    check(altitude_m, ground_range_m)?;
    Ok(altitude_m.hypot(ground_range_m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn elevation_examples() {
        assert!((elevation_angle_deg(100.0, 100.0).unwrap() - 45.0).abs() < 1e-12);
        assert_eq!(elevation_angle_deg(25.0, 0.0).unwrap(), 90.0);
        assert!((elevation_angle_deg(25.0, 300.0).unwrap() - 4.7636).abs() < 1e-4);
    }

    #[test]
    fn slant_examples() {
        assert_eq!(slant_range_m(3.0, 4.0).unwrap(), 5.0);
        assert_eq!(slant_range_m(25.0, 0.0).unwrap(), 25.0);
        assert!((slant_range_m(25.0, 300.0).unwrap() - 301.0399).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_altitude() {
        assert!(matches!(
            elevation_angle_deg(0.0, 10.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(slant_range_m(-1.0, 10.0), Err(Error::Domain(_))));
        assert!(slant_range_m(10.0, -1.0).is_err());
        assert!(elevation_angle_deg(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn planar_distance() {
        let a = PlanarPoint::new(1.0, 1.0);
        let b = PlanarPoint::new(4.0, 5.0);
        assert_eq!(a.distance_to(&b), 5.0);
    }

    proptest! {
        #[test]
        fn link_geometry_invariants(h in 0.1f64..5000.0, r in 0.0f64..50_000.0) {
            let g = LinkGeometry::new(h, r).unwrap();
            prop_assert!((0.0..=90.0).contains(&g.elevation_deg));
            prop_assert!(g.slant_range_m >= h && g.slant_range_m >= r);
            let lhs = g.slant_range_m * g.slant_range_m;
            let rhs = h * h + r * r;
            prop_assert!(((lhs - rhs) / rhs).abs() < 1e-9);
        }

        #[test]
        fn elevation_monotone(h in 1.0f64..3000.0, r in 1.0f64..20_000.0, dr in 0.5f64..1000.0) {
            let near = elevation_angle_deg(h, r).unwrap();
            let far = elevation_angle_deg(h, r + dr).unwrap();
            prop_assert!(far < near);
            let higher = elevation_angle_deg(h + dr, r).unwrap();
            prop_assert!(higher > near);
        }

        #[test]
        fn slant_monotone(h in 1.0f64..3000.0, r in 0.0f64..20_000.0, d in 0.5f64..1000.0) {
            let s = slant_range_m(h, r).unwrap();
            prop_assert!(slant_range_m(h + d, r).unwrap() > s);
            prop_assert!(slant_range_m(h, r + d).unwrap() > s);
        }

        #[test]
        fn polar_round_trip(h in 1.0f64..3000.0, r in prop_oneof![Just(0.0), 1.0f64..20_000.0]) {
            let g = LinkGeometry::new(h, r).unwrap();
            let back = LinkGeometry::from_polar(g.elevation_deg, g.slant_range_m).unwrap();
            prop_assert!(((back.altitude_m - h) / h).abs() < 1e-9);
            if r > 0.0 {
                prop_assert!(((back.ground_range_m - r) / r).abs() < 1e-9);
            } else {
                prop_assert_eq!(back.ground_range_m, 0.0);
            }
        }
    }
}
