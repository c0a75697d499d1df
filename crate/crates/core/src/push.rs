//! Pushing regimes: a pole extends behind the direction of travel and
//! pushes against the ground.
//!
//! Three variants share the same inputs (pole angle `ζ ∈ [0, π/2)` from the
//! vertical, pole force `F_p`, sphere parameters):
//!
//! * obstacle: the pole tip is blocked and cannot slip,
//! * full slip: frictionless ground, the pole only generates a lever torque,
//! * friction: pole tip and sphere both have finite friction; this is the
//!   general case and reduces to the other two at the friction extremes.
//!
//! Translation induced by rotation is coupled as `2π · r · ω̇`.

use crate::error::{Error, Result};
use crate::scalar::{unit_step, Scalar};
use crate::types::{ground_friction, unit_interval, AccelTriple, ForceSplit, FrictionParams, LeverArmConvention, SphereParams};

fn check_angle<T: Scalar>(angle: T) -> Result<()> {
    if angle >= T::zero() && angle < T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::domain(
            "pole angle",
            angle.to_f64_lossy(),
            "pushing requires [0, pi/2)",
        ))
    }
}

fn check_force<T: Scalar>(force: T) -> Result<()> {
    if force.is_finite() && force >= T::zero() {
        Ok(())
    } else {
        Err(Error::domain("push force", force.to_f64_lossy(), "must be finite and >= 0"))
    }
}

/// Reaction of a blocked pole acting at the sphere center.
///
/// `radial = F_p sin ζ`, `tangential = F_p cos ζ`; the tangential part is the
/// horizontal force the ground friction has to counter.
pub fn split_obstacle_reaction<T: Scalar>(force: T, angle: T) -> Result<ForceSplit<T>> {
    check_force(force)?;
    check_angle(angle)?;
    Ok(ForceSplit {
        radial: force * angle.sin(),
        tangential: force * angle.cos(),
    })
}

/// Pole force split into the part along the ground normal
/// (`radial = F_p cos ζ`) and the part in the slip direction
/// (`tangential = F_p sin ζ`).
pub fn split_push_force<T: Scalar>(force: T, angle: T) -> Result<ForceSplit<T>> {
    check_force(force)?;
    check_angle(angle)?;
    Ok(ForceSplit {
        radial: force * angle.cos(),
        tangential: force * angle.sin(),
    })
}

/// Accelerations with the pole tip blocked by an obstacle.
pub fn obstacle_accels<T: Scalar>(
    angle: T,
    force: T,
    sphere: &SphereParams<T>,
    ground: T,
) -> Result<AccelTriple<T>> {
    check_angle(angle)?;
    check_force(force)?;
    let ground = ground_friction(ground)?;
    let r = sphere.radius();
    let drive = angle.sin() * force;
    let angular = r * ground * drive / sphere.inertia();
    let direct = drive * (T::one() - ground) / sphere.mass();
    let rotation = T::TAU() * r * r * ground * drive / sphere.inertia();
    Ok(AccelTriple::new(T::zero(), direct + rotation, angular))
}

/// Accelerations on frictionless ground: rotation only.
pub fn full_slip_accels<T: Scalar>(
    angle: T,
    force: T,
    sphere: &SphereParams<T>,
) -> Result<AccelTriple<T>> {
    let split = split_push_force(force, angle)?;
    let lever = angle.cos() * split.tangential;
    let arm = sphere.radius() / angle.cos();
    Ok(AccelTriple::new(T::zero(), T::zero(), arm * lever / sphere.inertia()))
}

/// Static friction the ground exerts on the pole tip, `μ_pole · F_p sin ζ`.
pub fn pole_friction<T: Scalar>(force: T, angle: T, pole_tip: T) -> Result<T> {
    let split = split_push_force(force, angle)?;
    let pole_tip = unit_interval("pole tip friction", pole_tip)?;
    Ok(pole_tip * split.tangential)
}

/// Lever force perpendicular to the pole left after pole tip friction,
/// `cos ζ · F_p sin ζ · (1 - μ_pole)`.
pub fn lever_force<T: Scalar>(force: T, angle: T, pole_tip: T) -> Result<T> {
    let split = split_push_force(force, angle)?;
    let pole_tip = unit_interval("pole tip friction", pole_tip)?;
    Ok(angle.cos() * split.tangential * (T::one() - pole_tip))
}

/// Vertical acceleration from the pole's vertical force component, clamped
/// at zero while gravity and the shell's structure carry it.
fn lift_accel<T: Scalar>(angle: T, force: T, sphere: &SphereParams<T>) -> T {
    let excess = angle.cos() * force / sphere.mass() - sphere.gravity();
    unit_step(excess) * excess
}

/// Full three-component system with variable pole tip and ground friction.
pub fn friction_push_accels<T: Scalar>(
    angle: T,
    force: T,
    sphere: &SphereParams<T>,
    friction: &FrictionParams<T>,
    convention: LeverArmConvention,
) -> Result<AccelTriple<T>> {
    let split = split_push_force(force, angle)?;
    let slip_force = split.tangential;
    let ground = friction.ground();
    let tip = friction.pole_tip();
    let r = sphere.radius();
    let inertia = sphere.inertia();
    let cos = angle.cos();

    let vertical = lift_accel(angle, force, sphere);
    let direct = (T::one() - ground) * tip * slip_force / sphere.mass();

    // friction torque at the ground contact plus the residual lever torque
    let friction_torque = ground * tip * slip_force * r;
    let residual = lever_force(force, angle, tip)?;
    let (angular, horizontal) = match convention {
        LeverArmConvention::Consistent => {
            let torque = friction_torque + residual * r / cos;
            let angular = torque / inertia;
            (angular, ground * T::TAU() * r * angular + direct)
        }
        LeverArmConvention::Verbatim => {
            let lever_term = cos * cos * (T::one() - tip);
            let angular = slip_force / inertia * (ground * tip * r + lever_term / r);
            let horizontal =
                slip_force / inertia * T::TAU() * ground * (ground * tip * r * r + lever_term) + direct;
            (angular, horizontal)
        }
    };
    Ok(AccelTriple::new(vertical, horizontal, angular))
}

/// Selects one of the pushing models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PushRegime<T> {
    /// Blocked pole tip; only the ground coefficient matters.
    Obstacle { ground: T },
    /// No friction anywhere.
    FullSlip,
    /// Variable friction at both contacts.
    Friction {
        friction: FrictionParams<T>,
        convention: LeverArmConvention,
    },
}

impl<T: Scalar> PushRegime<T> {
    pub fn accels(&self, angle: T, force: T, sphere: &SphereParams<T>) -> Result<AccelTriple<T>> {
        match *self {
            PushRegime::Obstacle { ground } => obstacle_accels(angle, force, sphere, ground),
            PushRegime::FullSlip => full_slip_accels(angle, force, sphere),
            PushRegime::Friction {
                friction,
                convention,
            } => friction_push_accels(angle, force, sphere, &friction, convention),
        }
    }
}
