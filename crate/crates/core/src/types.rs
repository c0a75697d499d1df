//! Physical parameters, state and result types shared by every regime.
//!
//! Parameter types are validated on construction and immutable afterwards.
//! Angles are radians throughout.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Standard Earth gravity (m/s²).
pub const EARTH_GRAVITY: f64 = 9.81;
/// Lunar surface gravity (m/s²).
pub const LUNAR_GRAVITY: f64 = 1.62;

fn positive<T: Scalar>(what: &'static str, value: T) -> Result<T> {
    if value.is_finite() && value > T::zero() {
        Ok(value)
    } else {
        Err(Error::domain(what, value.to_f64_lossy(), "must be finite and > 0"))
    }
}

fn non_negative<T: Scalar>(what: &'static str, value: T) -> Result<T> {
    if value.is_finite() && value >= T::zero() {
        Ok(value)
    } else {
        Err(Error::domain(what, value.to_f64_lossy(), "must be finite and >= 0"))
    }
}

pub(crate) fn unit_interval<T: Scalar>(what: &'static str, value: T) -> Result<T> {
    if value >= T::zero() && value <= T::one() {
        Ok(value)
    } else {
        Err(Error::domain(what, value.to_f64_lossy(), "must lie in [0, 1]"))
    }
}

/// Moment of inertia of a homogeneous solid ball, `2/5 · m · r²`.
pub fn solid_sphere_inertia<T: Scalar>(mass: T, radius: T) -> Result<T> {
    let mass = positive("robot mass", mass)?;
    let radius = positive("shell radius", radius)?;
    Ok(T::lit(2.0) / T::lit(5.0) * mass * radius * radius)
}

/// Rigid body description of the spherical shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereParams<T> {
    radius: T,
    mass: T,
    inertia: T,
    gravity: T,
}

impl<T: Scalar> SphereParams<T> {
    /// Shell radius (m), total mass (kg), scalar moment of inertia about the
    /// rolling axis (kg·m²) and gravitational acceleration (m/s²).
    pub fn new(radius: T, mass: T, inertia: T, gravity: T) -> Result<Self> {
        Ok(SphereParams {
            radius: positive("shell radius", radius)?,
            mass: positive("robot mass", mass)?,
            inertia: positive("moment of inertia", inertia)?,
            gravity: positive("gravity", gravity)?,
        })
    }

    /// Homogeneous ball under the given gravity.
    pub fn solid(radius: T, mass: T, gravity: T) -> Result<Self> {
        let inertia = solid_sphere_inertia(mass, radius)?;
        Self::new(radius, mass, inertia, gravity)
    }

    /// Homogeneous ball under Earth gravity.
    pub fn solid_earth(radius: T, mass: T) -> Result<Self> {
        Self::solid(radius, mass, T::lit(EARTH_GRAVITY))
    }

    /// Homogeneous ball under lunar gravity.
    pub fn solid_lunar(radius: T, mass: T) -> Result<Self> {
        Self::solid(radius, mass, T::lit(LUNAR_GRAVITY))
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn inertia(&self) -> T {
        self.inertia
    }

    pub fn gravity(&self) -> T {
        self.gravity
    }
}

/// Telescopic pole description.
///
/// `lever_mass` is the point mass the extended poles are lumped into and
/// `lever_radius` its distance from the sphere center, which must exceed the
/// shell radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleParams<T> {
    max_length: T,
    max_extension_rate: T,
    push_force: T,
    lever_mass: T,
    lever_radius: T,
}

impl<T: Scalar> PoleParams<T> {
    pub fn new(
        sphere: &SphereParams<T>,
        max_length: T,
        max_extension_rate: T,
        push_force: T,
        lever_mass: T,
        lever_radius: T,
    ) -> Result<Self> {
        let lever_radius = positive("lever radius", lever_radius)?;
        if lever_radius <= sphere.radius() {
            return Err(Error::domain(
                "lever radius",
                lever_radius.to_f64_lossy(),
                "must exceed the shell radius",
            ));
        }
        Ok(PoleParams {
            max_length: positive("max pole length", max_length)?,
            max_extension_rate: positive("max extension rate", max_extension_rate)?,
            push_force: non_negative("push force", push_force)?,
            lever_mass: non_negative("lever mass", lever_mass)?,
            lever_radius,
        })
    }

    pub fn max_length(&self) -> T {
        self.max_length
    }

    pub fn max_extension_rate(&self) -> T {
        self.max_extension_rate
    }

    pub fn push_force(&self) -> T {
        self.push_force
    }

    pub fn lever_mass(&self) -> T {
        self.lever_mass
    }

    pub fn lever_radius(&self) -> T {
        self.lever_radius
    }
}

/// Friction coefficients, both in `[0, 1]`.
///
/// `ground` combines sphere/ground static friction with rolling resistance;
/// `pole_tip` is the static friction between pole tip and ground.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrictionParams<T> {
    ground: T,
    pole_tip: T,
}

impl<T: Scalar> FrictionParams<T> {
    pub fn new(ground: T, pole_tip: T) -> Result<Self> {
        Ok(FrictionParams {
            ground: unit_interval("ground friction", ground)?,
            pole_tip: unit_interval("pole tip friction", pole_tip)?,
        })
    }

    /// Full grip everywhere.
    pub fn no_slip() -> Self {
        FrictionParams {
            ground: T::one(),
            pole_tip: T::one(),
        }
    }

    /// Frictionless ground and pole tip.
    pub fn frictionless() -> Self {
        FrictionParams {
            ground: T::zero(),
            pole_tip: T::zero(),
        }
    }

    pub fn ground(&self) -> T {
        self.ground
    }

    pub fn pole_tip(&self) -> T {
        self.pole_tip
    }
}

/// Validates a standalone ground friction coefficient.
pub fn ground_friction<T: Scalar>(value: T) -> Result<T> {
    unit_interval("ground friction", value)
}

/// Planar state of the robot.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MotionState<T> {
    /// Pole or lever angle (rad).
    pub angle: T,
    /// Rate of change of `angle` (rad/s).
    pub angular_velocity: T,
    /// Horizontal position (m).
    pub x: T,
    /// Horizontal velocity (m/s).
    pub vx: T,
    /// Vertical position (m).
    pub z: T,
    /// Vertical velocity (m/s).
    pub vz: T,
    /// Time (s).
    pub t: T,
}

impl<T: Scalar> MotionState<T> {
    /// Resting state at `angle`, origin, `t = 0`.
    pub fn at_angle(angle: T) -> Self {
        MotionState {
            angle,
            ..Self::zeroed()
        }
    }

    pub fn zeroed() -> Self {
        MotionState {
            angle: T::zero(),
            angular_velocity: T::zero(),
            x: T::zero(),
            vx: T::zero(),
            z: T::zero(),
            vz: T::zero(),
            t: T::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        [
            self.angle,
            self.angular_velocity,
            self.x,
            self.vx,
            self.z,
            self.vz,
            self.t,
        ]
        .iter()
        .all(|v| v.is_finite())
    }

    pub(crate) fn to_f64(self) -> MotionState<f64> {
        MotionState {
            angle: self.angle.to_f64_lossy(),
            angular_velocity: self.angular_velocity.to_f64_lossy(),
            x: self.x.to_f64_lossy(),
            vx: self.vx.to_f64_lossy(),
            z: self.z.to_f64_lossy(),
            vz: self.vz.to_f64_lossy(),
            t: self.t.to_f64_lossy(),
        }
    }
}

/// Right-hand side of every regime: vertical, horizontal and angular
/// acceleration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AccelTriple<T> {
    /// m/s²
    pub vertical: T,
    /// m/s²
    pub horizontal: T,
    /// rad/s²
    pub angular: T,
}

impl<T: Scalar> AccelTriple<T> {
    pub fn new(vertical: T, horizontal: T, angular: T) -> Self {
        AccelTriple {
            vertical,
            horizontal,
            angular,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.vertical.is_finite() && self.horizontal.is_finite() && self.angular.is_finite()
    }
}

/// Decomposition of a force into two orthogonal components.
///
/// Which physical directions `radial` and `tangential` denote depends on the
/// operation that produced the split; see each operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceSplit<T> {
    pub radial: T,
    pub tangential: T,
}

impl<T: Scalar> ForceSplit<T> {
    pub fn magnitude(&self) -> T {
        self.radial.hypot(self.tangential)
    }
}

/// Lever arm used for the pole lever force in the variable friction push model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum LeverArmConvention {
    /// Arm `r / cos ζ` from the sphere center to the pole tip.
    #[default]
    Consistent,
    /// Torque term `F_e · cos ζ / r` as written in the original closed form.
    Verbatim,
}

impl LeverArmConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            LeverArmConvention::Consistent => "consistent",
            LeverArmConvention::Verbatim => "verbatim",
        }
    }
}

impl fmt::Display for LeverArmConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LeverArmConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "consistent" => Ok(LeverArmConvention::Consistent),
            "verbatim" => Ok(LeverArmConvention::Verbatim),
            other => Err(Error::Usage(format!(
                "unknown convention '{other}' (expected consistent or verbatim)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn solid_sphere_inertia_values() {
        assert_relative_eq!(solid_sphere_inertia(25.0, 0.4).unwrap(), 1.6, max_relative = 1e-15);
        assert_relative_eq!(solid_sphere_inertia(1.0, 1.0).unwrap(), 0.4, max_relative = 1e-15);
        assert!(matches!(
            solid_sphere_inertia(0.0, 0.4),
            Err(Error::Domain { .. })
        ));
        assert!(solid_sphere_inertia(1.0_f32, -1.0).is_err());
    }

    #[test]
    fn solid_helper_uses_exact_inertia() {
        let s = SphereParams::solid_earth(0.4, 25.0).unwrap();
        assert_eq!(s.inertia(), 2.0 / 5.0 * 25.0 * 0.4 * 0.4);
        assert_eq!(s.gravity(), EARTH_GRAVITY);
        assert_eq!(SphereParams::solid_lunar(0.4, 25.0).unwrap().gravity(), LUNAR_GRAVITY);
    }

    #[test]
    fn sphere_rejects_bad_fields() {
        assert!(SphereParams::new(0.0, 1.0, 1.0, 9.81).is_err());
        assert!(SphereParams::new(1.0, -1.0, 1.0, 9.81).is_err());
        assert!(SphereParams::new(1.0, 1.0, 0.0, 9.81).is_err());
        assert!(SphereParams::new(1.0, 1.0, 1.0, f64::NAN).is_err());
        let msg = SphereParams::new(1.0, 1.0, 1.0, 0.0).unwrap_err().to_string();
        assert!(msg.contains("gravity"), "{msg}");
    }

    #[test]
    fn pole_requires_lever_outside_shell() {
        let s = SphereParams::solid_earth(0.4, 25.0).unwrap();
        assert!(PoleParams::new(&s, 0.1, 0.05, 10.0, 0.1, 0.9).is_ok());
        assert!(PoleParams::new(&s, 0.1, 0.05, 10.0, 0.1, 0.4).is_err());
        assert!(PoleParams::new(&s, 0.0, 0.05, 10.0, 0.1, 0.9).is_err());
        assert!(PoleParams::new(&s, 0.1, 0.0, 10.0, 0.1, 0.9).is_err());
        assert!(PoleParams::new(&s, 0.1, 0.05, -1.0, 0.1, 0.9).is_err());
        assert!(PoleParams::new(&s, 0.1, 0.05, 0.0, 0.0, 0.9).is_ok());
    }

    #[test]
    fn friction_range() {
        assert!(FrictionParams::new(0.0, 1.0).is_ok());
        assert!(FrictionParams::new(1.01, 0.5).is_err());
        assert!(FrictionParams::new(0.5, -0.01).is_err());
        assert!(FrictionParams::new(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn convention_parses() {
        assert_eq!("verbatim".parse::<LeverArmConvention>().unwrap(), LeverArmConvention::Verbatim);
        assert_eq!(LeverArmConvention::default(), LeverArmConvention::Consistent);
        assert!("other".parse::<LeverArmConvention>().is_err());
    }
}
