//! Angle normalization helpers.

use std::f64::consts::PI;

/// Wrap an angle to the half-open interval (-pi, pi].
pub fn wrap_to_pi(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(2.0 * PI);
    if wrapped > PI {
        wrapped - 2.0 * PI
    } else {
        wrapped
    }
}

/// Absolute angular difference |wrap(a - b)|, in [0, pi].
pub fn angular_distance(a: f64, b: f64) -> f64 {
    wrap_to_pi(a - b).abs()
}

pub fn deg_to_rad(deg: f64) -> f64 {
    deg * PI / 180.0
}

pub fn rad_to_deg(rad: f64) -> f64 {
    rad * 180.0 / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_keeps_interval_open_low_closed_high() {
        assert_eq!(wrap_to_pi(PI), PI);
        assert_eq!(wrap_to_pi(-PI), PI);
        assert_eq!(wrap_to_pi(0.0), 0.0);
        assert!((wrap_to_pi(3.0 * PI) - PI).abs() < 1e-12);
    }

    #[test]
    fn wrap_handles_multiple_turns() {
        for k in -5i32..=5 {
            let a = 0.3 + 2.0 * PI * f64::from(k);
            assert!((wrap_to_pi(a) - 0.3).abs() < 1e-9);
        }
    }

    #[test]
    fn angular_distance_is_symmetric_and_bounded() {
        assert!((angular_distance(3.0, -3.0) - (2.0 * PI - 6.0)).abs() < 1e-12);
        assert_eq!(angular_distance(1.0, 1.0), 0.0);
    }
}
