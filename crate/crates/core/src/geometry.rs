//! Pole extension geometry.
//!
//! The pole leaves the shell radially. With the contact angle `ζ` measured
//! from the vertical, the distance from the sphere center to the ground
//! contact is `r / cos ζ`, so the extension beyond the shell is
//! `l(ζ) = r (sec ζ - 1)`. Differentiating gives the angular rate a finite
//! extension speed can sustain.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{PoleParams, SphereParams};

fn check_push_angle<T: Scalar>(angle: T) -> Result<()> {
    if angle >= T::zero() && angle < T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::domain(
            "pole angle",
            angle.to_f64_lossy(),
            "must lie in [0, pi/2)",
        ))
    }
}

/// Extension beyond the shell needed to touch the ground at `angle`.
pub fn pole_extension_at<T: Scalar>(angle: T, radius: T) -> Result<T> {
    check_push_angle(angle)?;
    if !(radius > T::zero()) {
        return Err(Error::domain("shell radius", radius.to_f64_lossy(), "must be > 0"));
    }
    Ok(radius * (T::one() / angle.cos() - T::one()))
}

/// Largest contact angle a pole of length `max_length` can reach.
pub fn max_reach_angle<T: Scalar>(max_length: T, radius: T) -> Result<T> {
    if !(max_length > T::zero()) {
        return Err(Error::domain("max pole length", max_length.to_f64_lossy(), "must be > 0"));
    }
    if !(radius > T::zero()) {
        return Err(Error::domain("shell radius", radius.to_f64_lossy(), "must be > 0"));
    }
    Ok((radius / (radius + max_length)).acos())
}

/// Angular rate at which the pole can keep ground contact when extending at
/// `extension_rate`: `l̇ cos²ζ / (r sin ζ)`.
///
/// Unbounded as `ζ → 0`, so `angle = 0` is rejected.
pub fn max_angular_rate<T: Scalar>(angle: T, extension_rate: T, radius: T) -> Result<T> {
    check_push_angle(angle)?;
    if angle == T::zero() {
        return Err(Error::domain(
            "pole angle",
            0.0,
            "rate is unbounded at 0; must be > 0",
        ));
    }
    if !(extension_rate > T::zero()) {
        return Err(Error::domain(
            "extension rate",
            extension_rate.to_f64_lossy(),
            "must be > 0",
        ));
    }
    if !(radius > T::zero()) {
        return Err(Error::domain("shell radius", radius.to_f64_lossy(), "must be > 0"));
    }
    let c = angle.cos();
    Ok(extension_rate * c * c / (radius * angle.sin()))
}

/// Which geometric constraint bounds the angular rate at an envelope point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvelopeLimit {
    ExtensionSpeed,
    MaxLength,
}

impl EnvelopeLimit {
    pub fn as_str(self) -> &'static str {
        match self {
            EnvelopeLimit::ExtensionSpeed => "extension_speed",
            EnvelopeLimit::MaxLength => "max_length",
        }
    }
}

impl fmt::Display for EnvelopeLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePoint<T> {
    pub angle: T,
    /// Largest attainable angular rate; `+inf` at `angle = 0`, zero beyond reach.
    pub max_rate: T,
    pub limited_by: EnvelopeLimit,
}

/// Evaluates the geometric rate envelope on an ascending angle grid.
pub fn geometric_envelope<T: Scalar>(
    pole: &PoleParams<T>,
    sphere: &SphereParams<T>,
    grid: &[T],
) -> Result<Vec<EnvelopePoint<T>>> {
    if grid.is_empty() {
        return Err(Error::Usage("envelope grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Usage("envelope grid must be sorted ascending".into()));
    }
    let reach = max_reach_angle(pole.max_length(), sphere.radius())?;
    grid.iter()
        .map(|&angle| {
            check_push_angle(angle)?;
            let point = if angle > reach {
                EnvelopePoint {
                    angle,
                    max_rate: T::zero(),
                    limited_by: EnvelopeLimit::MaxLength,
                }
            } else if angle == T::zero() {
                EnvelopePoint {
                    angle,
                    max_rate: T::infinity(),
                    limited_by: EnvelopeLimit::ExtensionSpeed,
                }
            } else {
                EnvelopePoint {
                    angle,
                    max_rate: max_angular_rate(angle, pole.max_extension_rate(), sphere.radius())?,
                    limited_by: EnvelopeLimit::ExtensionSpeed,
                }
            };
            Ok(point)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn prototype_pole() -> (SphereParams<f64>, PoleParams<f64>) {
        let s = SphereParams::solid_earth(0.4, 25.0).unwrap();
        let p = PoleParams::new(&s, 0.1, 0.1, 0.6, 0.1, 0.9).unwrap();
        (s, p)
    }

    #[test]
    fn extension_examples() {
        assert_eq!(pole_extension_at(0.0, 0.4).unwrap(), 0.0);
        assert_relative_eq!(pole_extension_at(0.8_f64.acos(), 0.4).unwrap(), 0.1, max_relative = 1e-12);
        assert_relative_eq!(pole_extension_at(FRAC_PI_3, 1.0).unwrap(), 1.0, max_relative = 1e-12);
        assert!(pole_extension_at(FRAC_PI_2, 0.4).is_err());
        assert!(pole_extension_at(-0.1, 0.4).is_err());
    }

    #[test]
    fn reach_examples() {
        assert_relative_eq!(max_reach_angle(0.1, 0.4).unwrap(), 0.8_f64.acos(), max_relative = 1e-15);
        assert_relative_eq!(max_reach_angle(0.1, 0.4).unwrap(), 0.6435011087932844, max_relative = 1e-12);
        assert_relative_eq!(max_reach_angle(0.4, 0.4).unwrap(), FRAC_PI_3, max_relative = 1e-12);
        let far = max_reach_angle(1e9_f64, 0.4).unwrap();
        assert!(far < FRAC_PI_2 && FRAC_PI_2 - far < 1e-8);
        assert!(max_reach_angle(0.0, 0.4).is_err());
    }

    #[test]
    fn rate_examples() {
        let expected = 0.1 * 0.5 / (0.4 * 2.0_f64.sqrt() / 2.0);
        assert_relative_eq!(max_angular_rate(FRAC_PI_4, 0.1, 0.4).unwrap(), expected, max_relative = 1e-12);
        assert_relative_eq!(expected, 0.1767766952966369, max_relative = 1e-12);
        let at_reach = max_angular_rate(max_reach_angle(0.1_f64, 0.4).unwrap(), 0.1, 0.4).unwrap();
        assert!(at_reach.is_finite() && at_reach > 0.0);
        assert!(max_angular_rate(0.0, 0.1, 0.4).is_err());
        assert!(max_angular_rate(0.3, 0.0, 0.4).is_err());
    }

    #[test]
    fn envelope_beyond_reach_is_zero() {
        let (s, p) = prototype_pole();
        let grid = [0.65, 0.8, 1.0, 1.5];
        let env = geometric_envelope(&p, &s, &grid).unwrap();
        assert!(env.iter().all(|e| e.max_rate == 0.0 && e.limited_by == EnvelopeLimit::MaxLength));
    }

    #[test]
    fn envelope_inside_reach_is_speed_limited() {
        let (s, p) = prototype_pole();
        let grid = [0.0, 0.1, 0.3, 0.6];
        let env = geometric_envelope(&p, &s, &grid).unwrap();
        assert!(env.iter().all(|e| e.limited_by == EnvelopeLimit::ExtensionSpeed));
        assert!(env[0].max_rate.is_infinite());
    }

    #[test]
    fn envelope_single_point_matches_scalar_rate() {
        let (s, p) = prototype_pole();
        let env = geometric_envelope(&p, &s, &[FRAC_PI_4]).unwrap();
        // pi/4 is beyond the 0.6435 rad reach
        assert_eq!(env[0].limited_by, EnvelopeLimit::MaxLength);
        let s2 = SphereParams::solid_earth(0.4, 25.0).unwrap();
        let long = PoleParams::new(&s2, 0.5, 0.1, 0.6, 0.1, 0.9).unwrap();
        let env = geometric_envelope(&long, &s2, &[FRAC_PI_4]).unwrap();
        assert_eq!(env[0].max_rate, max_angular_rate(FRAC_PI_4, 0.1, 0.4).unwrap());
    }

    #[test]
    fn envelope_rejects_bad_grids() {
        let (s, p) = prototype_pole();
        assert!(matches!(geometric_envelope(&p, &s, &[0.3, 0.2]), Err(Error::Usage(_))));
        assert!(matches!(geometric_envelope::<f64>(&p, &s, &[]), Err(Error::Usage(_))));
        assert!(matches!(geometric_envelope(&p, &s, &[0.3, FRAC_PI_2]), Err(Error::Domain { .. })));
    }

    #[test]
    fn works_in_single_precision() {
        let r = max_reach_angle(0.1_f32, 0.4).unwrap();
        assert!((r - 0.643_501_1).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn extension_and_reach_are_inverse(angle in 1e-3..(FRAC_PI_2 - 0.01), radius in 0.05..5.0_f64) {
            let l = pole_extension_at(angle, radius).unwrap();
            prop_assume!(l > 0.0);
            let back = max_reach_angle(l, radius).unwrap();
            prop_assert!((back - angle).abs() < 1e-10, "{back} vs {angle}");
        }

        #[test]
        fn rate_times_slope_is_extension_rate(angle in 0.01..(FRAC_PI_2 - 0.05), rate in 0.01..2.0_f64, radius in 0.1..2.0_f64) {
            let h = 1e-6;
            let slope = (pole_extension_at(angle + h, radius).unwrap()
                - pole_extension_at(angle - h, radius).unwrap()) / (2.0 * h);
            let product = max_angular_rate(angle, rate, radius).unwrap() * slope;
            prop_assert!(((product - rate) / rate).abs() < 1e-6);
        }

        #[test]
        fn envelope_non_increasing(mut grid in proptest::collection::vec(0.0..(FRAC_PI_2 - 1e-3), 1..40),
                                   l_max in 0.01..3.0_f64, rate in 0.01..2.0_f64) {
            grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let s = SphereParams::solid_earth(0.4, 25.0).unwrap();
            let p = PoleParams::new(&s, l_max, rate, 1.0, 0.1, 0.9).unwrap();
            let env = geometric_envelope(&p, &s, &grid).unwrap();
            for w in env.windows(2) {
                prop_assert!(w[1].max_rate <= w[0].max_rate);
                prop_assert!(w[1].max_rate >= 0.0);
            }
        }
    }
}
