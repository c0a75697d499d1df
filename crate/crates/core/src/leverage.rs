//! Leverage regime: poles extended towards the direction of travel act as a
//! point mass `m_lever` at distance `r_c` from the center; gravity on that
//! mass produces the rolling torque.
//!
//! The lever angle lives in the open interval `(π, 2π)`. Within it `sin ζ < 0`,
//! which makes the driving torque positive. The friction counter-torque and
//! the horizontal slip of the contact point depend on `μ_rs`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ground_friction, AccelTriple, ForceSplit, PoleParams, SphereParams};

fn check_angle<T: Scalar>(angle: T) -> Result<()> {
    if angle > T::PI() && angle < T::TAU() {
        Ok(())
    } else {
        Err(Error::domain(
            "lever angle",
            angle.to_f64_lossy(),
            "leverage requires (pi, 2pi)",
        ))
    }
}

/// Gravity on the lever mass split into `radial = -F_g cos ζ` (along the
/// center/mass axis) and `tangential = -F_g sin ζ` (perpendicular to it).
pub fn split_gravity<T: Scalar>(weight: T, angle: T) -> Result<ForceSplit<T>> {
    check_angle(angle)?;
    if !(weight.is_finite() && weight >= T::zero()) {
        return Err(Error::domain("lever weight", weight.to_f64_lossy(), "must be finite and >= 0"));
    }
    Ok(ForceSplit {
        radial: -weight * angle.cos(),
        tangential: -weight * angle.sin(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeverageTorques<T> {
    /// Driving torque of the lever weight.
    pub driving: T,
    /// Counter-torque from ground friction.
    pub friction: T,
    /// `driving - friction`.
    pub resulting: T,
}

fn lever_weight<T: Scalar>(sphere: &SphereParams<T>, pole: &PoleParams<T>) -> T {
    pole.lever_mass() * sphere.gravity()
}

pub fn leverage_torques<T: Scalar>(
    angle: T,
    sphere: &SphereParams<T>,
    pole: &PoleParams<T>,
    ground: T,
) -> Result<LeverageTorques<T>> {
    let ground = ground_friction(ground)?;
    let split = split_gravity(lever_weight(sphere, pole), angle)?;
    let driving = pole.lever_radius() * split.tangential;
    // F_r projected onto the ground normal is -F_r sin ζ = F_g sin ζ cos ζ
    let normal_part = -split.radial * angle.sin();
    let friction = sphere.radius() * ground * normal_part;
    Ok(LeverageTorques {
        driving,
        friction,
        resulting: driving - friction,
    })
}

pub fn leverage_accels<T: Scalar>(
    angle: T,
    sphere: &SphereParams<T>,
    pole: &PoleParams<T>,
    ground: T,
) -> Result<AccelTriple<T>> {
    check_angle(angle)?;
    let ground = ground_friction(ground)?;
    let weight = lever_weight(sphere, pole);
    let (sin, cos) = angle.sin_cos();
    let arm = pole.lever_radius() + sphere.radius() * ground * cos;
    let angular = -sin * weight / sphere.inertia() * arm;
    let direct = sin * cos * sphere.gravity() * (ground - T::one()) * pole.lever_mass() / sphere.mass();
    let rotation = -ground * T::TAU() * sin * weight / sphere.inertia() * arm;
    Ok(AccelTriple::new(T::zero(), direct + rotation, angular))
}

/// Left side minus right side of the forward-motion condition; the
/// horizontal acceleration is non-negative exactly where this is `>= 0`.
fn forward_margin<T: Scalar>(angle: T, ground: T, sphere: &SphereParams<T>, pole: &PoleParams<T>) -> T {
    let cos = angle.cos();
    ground * T::TAU() / sphere.inertia() * (pole.lever_radius() + sphere.radius() * ground * cos)
        - cos * (ground - T::one()) / sphere.mass()
}

/// Whether the horizontal acceleration at `angle` points in the intended
/// direction, independent of lever mass and gravity.
pub fn forward_motion_guaranteed<T: Scalar>(
    angle: T,
    ground: T,
    sphere: &SphereParams<T>,
    pole: &PoleParams<T>,
) -> Result<bool> {
    check_angle(angle)?;
    let ground = ground_friction(ground)?;
    Ok(forward_margin(angle, ground, sphere, pole) >= T::zero())
}

/// Smallest ground friction that keeps the horizontal acceleration
/// non-negative over the whole lever range.
///
/// The margin is linear in `cos ζ` with a positive slope, so the worst case
/// is `ζ → π`; the threshold is found by bisection of the margin at `cos ζ = -1`.
/// The returned value is the upper end of the final bracket, so the condition
/// holds at it.
pub fn min_ground_friction_for_forward<T: Scalar>(
    sphere: &SphereParams<T>,
    pole: &PoleParams<T>,
) -> Result<T> {
    let margin = |mu: T| {
        mu * T::TAU() / sphere.inertia() * (pole.lever_radius() - sphere.radius() * mu)
            - (T::one() - mu) / sphere.mass()
    };
    let (mut lo, mut hi) = (T::zero(), T::one());
    if margin(lo) >= T::zero() {
        return Ok(lo);
    }
    if margin(hi) < T::zero() {
        return Err(Error::UnreachableGuarantee);
    }
    let tol = T::lit(1e-12).max(T::epsilon());
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if margin(mid) >= T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn prototype() -> (SphereParams<f64>, PoleParams<f64>) {
        let s = SphereParams::solid_earth(0.4, 25.0).unwrap();
        let p = PoleParams::new(&s, 0.5, 0.1, 10.0, 0.1, 0.9).unwrap();
        (s, p)
    }

    #[test]
    fn gravity_split_examples() {
        let s = split_gravity(2.0, 1.5 * PI).unwrap();
        assert!(s.radial.abs() < 1e-15);
        assert_relative_eq!(s.tangential, 2.0, max_relative = 1e-15);
        let s = split_gravity(2.0, PI + 1e-9).unwrap();
        assert_relative_eq!(s.radial, 2.0, max_relative = 1e-12);
        assert!(s.tangential > 0.0 && s.tangential < 1e-8);
        assert!(split_gravity(2.0, PI).is_err());
        assert!(split_gravity(2.0, 2.0 * PI).is_err());
        assert!(split_gravity(2.0, 0.5).is_err());
    }

    #[test]
    fn torques_at_straight_down() {
        let (s, p) = prototype();
        let t = leverage_torques(1.5 * PI, &s, &p, 0.7).unwrap();
        let weight = 0.1 * 9.81;
        assert!(t.friction.abs() < 1e-15);
        assert_relative_eq!(t.driving, 0.9 * weight, max_relative = 1e-12);
        assert_relative_eq!(t.resulting, t.driving, max_relative = 1e-12);
    }

    #[test]
    fn torques_match_closed_form() {
        let (s, p) = prototype();
        let (angle, mu) = (4.0_f64, 0.4);
        let weight = 0.1 * 9.81;
        let t = leverage_torques(angle, &s, &p, mu).unwrap();
        assert_relative_eq!(t.driving, 0.9 * -angle.sin() * weight, max_relative = 1e-12);
        assert_relative_eq!(t.friction, 0.4 * mu * (2.0 * angle).sin() / 2.0 * weight, max_relative = 1e-12);
        let resulting = -weight * (0.9 * angle.sin() + 0.4 * mu * angle.sin() * angle.cos());
        assert_relative_eq!(t.resulting, resulting, max_relative = 1e-12);
        assert_eq!(t.resulting, t.driving - t.friction);
    }

    #[test]
    fn frictionless_torque_is_driving_only() {
        let (s, p) = prototype();
        for angle in [3.3, 4.0, 4.7, 5.5, 6.2] {
            let t = leverage_torques(angle, &s, &p, 0.0).unwrap();
            assert_eq!(t.friction, 0.0);
            assert!(t.resulting > 0.0);
        }
    }

    #[test]
    fn accels_at_straight_down() {
        let (s, p) = prototype();
        let weight = 0.1 * 9.81;
        for mu in [0.0, 0.3, 1.0] {
            let a = leverage_accels(1.5 * PI, &s, &p, mu).unwrap();
            assert_eq!(a.vertical, 0.0);
            assert_relative_eq!(a.angular, weight * 0.9 / 1.6, max_relative = 1e-12);
            let expected = mu * 2.0 * PI * weight * 0.9 / 1.6;
            assert!((a.horizontal - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn frictionless_lever_moves_backwards_early() {
        let (s, p) = prototype();
        for i in 1..50 {
            let angle = PI + 0.5 * PI * f64::from(i) / 50.0;
            assert!(leverage_accels(angle, &s, &p, 0.0).unwrap().horizontal < 0.0, "{angle}");
        }
    }

    #[test]
    fn full_grip_always_forward() {
        let (s, p) = prototype();
        for i in 1..100 {
            let angle = PI + PI * f64::from(i) / 100.0;
            assert!(leverage_accels(angle, &s, &p, 1.0).unwrap().horizontal >= 0.0);
            assert!(forward_motion_guaranteed(angle, 1.0, &s, &p).unwrap());
        }
    }

    #[test]
    fn forward_guarantee_examples() {
        let (s, p) = prototype();
        assert!(!forward_motion_guaranteed(1.25 * PI, 0.0, &s, &p).unwrap());
        assert!(forward_motion_guaranteed(1.75 * PI, 0.0, &s, &p).unwrap());
        assert!(forward_motion_guaranteed(PI, 0.5, &s, &p).is_err());
    }

    /// Smaller root of `k r_m μ² - (k r_c + 1/m) μ + 1/m = 0`, `k = 2π / I`,
    /// i.e. the forward condition at `cos ζ = -1` solved as a quadratic.
    fn quadratic_threshold(r_m: f64, r_c: f64, mass: f64, inertia: f64) -> f64 {
        let k = 2.0 * PI / inertia;
        let a = k * r_m;
        let b = -(k * r_c + 1.0 / mass);
        let c = 1.0 / mass;
        // numerically stable smaller root
        let q = -0.5 * (b - (b * b - 4.0 * a * c).sqrt());
        c / q
    }

    #[test]
    fn prototype_threshold() {
        let (s, p) = prototype();
        let mu = min_ground_friction_for_forward(&s, &p).unwrap();
        assert!((mu - 0.012).abs() <= 0.001, "{mu}");
        let oracle = quadratic_threshold(0.4, 0.9, 25.0, 1.6);
        assert!((mu - oracle).abs() < 1e-6, "{mu} vs {oracle}");
        assert!(forward_motion_guaranteed(PI + 1e-12, mu, &s, &p).unwrap());
    }

    #[test]
    fn threshold_independent_of_gravity_and_lever_mass() {
        let moon = SphereParams::solid_lunar(0.4, 25.0).unwrap();
        let heavy = PoleParams::new(&moon, 0.5, 0.1, 10.0, 3.0, 0.9).unwrap();
        let (s, p) = prototype();
        assert_eq!(
            min_ground_friction_for_forward(&moon, &heavy).unwrap(),
            min_ground_friction_for_forward(&s, &p).unwrap()
        );
    }

    #[test]
    fn long_lever_needs_little_grip() {
        let s = SphereParams::solid_earth(0.4, 25.0).unwrap();
        let mut last = 1.0;
        for r_c in [0.9, 10.0, 1e3, 1e6] {
            let p = PoleParams::new(&s, 0.5, 0.1, 10.0, 0.1, r_c).unwrap();
            let mu = min_ground_friction_for_forward(&s, &p).unwrap();
            assert!(mu > 0.0 && mu < last);
            last = mu;
        }
        assert!(last < 1e-7);
    }

    #[test]
    fn single_precision_threshold() {
        let s = SphereParams::<f32>::solid_earth(0.4, 25.0).unwrap();
        let p = PoleParams::new(&s, 0.5, 0.1, 10.0, 0.1, 0.9).unwrap();
        let mu = min_ground_friction_for_forward(&s, &p).unwrap();
        assert!((f64::from(mu) - quadratic_threshold(0.4, 0.9, 25.0, 1.6)).abs() < 1e-5);
    }

    fn geometry() -> impl Strategy<Value = (SphereParams<f64>, PoleParams<f64>)> {
        (0.05..2.0_f64, 1.0..100.0_f64, 0.5..2.0_f64, 1.0001..5.0_f64, 0.01..5.0_f64, 0.5..20.0_f64)
            .prop_map(|(r, m, k, c, lever_mass, g)| {
                let s = SphereParams::new(r, m, k * 0.4 * m * r * r, g).unwrap();
                let p = PoleParams::new(&s, 0.5, 0.1, 1.0, lever_mass, c * r).unwrap();
                (s, p)
            })
    }

    proptest! {
        #[test]
        fn resulting_torque_positive((s, p) in geometry(), angle in (PI + 1e-6)..(2.0 * PI - 1e-6), mu in 0.0..=1.0_f64) {
            let t = leverage_torques(angle, &s, &p, mu).unwrap();
            prop_assert!(t.resulting > 0.0);
            let a = leverage_accels(angle, &s, &p, mu).unwrap();
            prop_assert!(a.angular > 0.0);
            prop_assert!(((a.angular - t.resulting / s.inertia()) / a.angular).abs() < 1e-12);
        }

        #[test]
        fn gravity_split_preserves_magnitude(w in 0.0..1e4_f64, angle in (PI + 1e-9)..(2.0 * PI - 1e-9)) {
            let s = split_gravity(w, angle).unwrap();
            prop_assert!((s.radial.powi(2) + s.tangential.powi(2) - w * w).abs() <= 1e-12 * (w * w).max(f64::MIN_POSITIVE));
        }

        #[test]
        fn guarantee_agrees_with_sign_of_horizontal((s, p) in geometry(), angle in (PI + 1e-3)..(2.0 * PI - 1e-3), mu in 0.0..=1.0_f64) {
            let a = leverage_accels(angle, &s, &p, mu).unwrap();
            let margin = forward_margin(angle, mu, &s, &p);
            prop_assume!(margin.abs() > 1e-9);
            prop_assert_eq!(forward_motion_guaranteed(angle, mu, &s, &p).unwrap(), a.horizontal >= 0.0);
        }

        #[test]
        fn threshold_holds_across_range((s, p) in geometry()) {
            let mu = min_ground_friction_for_forward(&s, &p).unwrap();
            let oracle = quadratic_threshold(s.radius(), p.lever_radius(), s.mass(), s.inertia());
            prop_assert!((mu - oracle).abs() < 1e-6);
            for i in 0..64 {
                let angle = PI + PI * (f64::from(i) + 0.5) / 64.0;
                prop_assert!(forward_motion_guaranteed(angle, mu, &s, &p).unwrap());
            }
        }
    }
}
