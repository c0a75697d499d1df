//! Fixed-step time integration of the regime dynamics.
//!
//! Every regime maps a [`MotionState`] to an [`AccelTriple`]; the integrator
//! advances the angle with the angular acceleration, the horizontal position
//! with the horizontal acceleration and the height with the vertical one.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{EnvelopeLimit, EnvelopePoint};
use crate::leverage::leverage_accels;
use crate::push::PushRegime;
use crate::scalar::Scalar;
use crate::types::{AccelTriple, MotionState, PoleParams, SphereParams};

/// Anything that yields accelerations for a state.
pub trait Dynamics<T> {
    fn accel(&self, state: &MotionState<T>) -> Result<AccelTriple<T>>;
}

impl<T, F> Dynamics<T> for F
where
    F: Fn(&MotionState<T>) -> Result<AccelTriple<T>>,
{
    fn accel(&self, state: &MotionState<T>) -> Result<AccelTriple<T>> {
        self(state)
    }
}

/// `ζ̈ = A sin ζ`: the no-slip pushing equation with `A = r F_p / I` held
/// constant. Only the angular subsystem is driven.
pub fn constant_drive_rhs<T: Scalar>(gain: T, state: &MotionState<T>) -> Result<AccelTriple<T>> {
    if !(gain.is_finite() && gain >= T::zero()) {
        return Err(Error::domain("drive constant", gain.to_f64_lossy(), "must be finite and >= 0"));
    }
    Ok(AccelTriple::new(T::zero(), T::zero(), gain * state.angle.sin()))
}

/// Conserved quantity of the constant drive equation, `ω²/2 + A cos ζ`.
pub fn constant_drive_energy<T: Scalar>(gain: T, state: &MotionState<T>) -> T {
    state.angular_velocity * state.angular_velocity / T::lit(2.0) + gain * state.angle.cos()
}

/// The dynamics a scenario can integrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime<T> {
    ConstantDrive {
        gain: T,
    },
    Push {
        model: PushRegime<T>,
        sphere: SphereParams<T>,
        force: T,
    },
    Leverage {
        sphere: SphereParams<T>,
        pole: PoleParams<T>,
        ground: T,
    },
}

impl<T: Scalar> Dynamics<T> for Regime<T> {
    fn accel(&self, state: &MotionState<T>) -> Result<AccelTriple<T>> {
        match self {
            Regime::ConstantDrive { gain } => constant_drive_rhs(*gain, state),
            Regime::Push {
                model,
                sphere,
                force,
            } => model.accels(state.angle, *force, sphere),
            Regime::Leverage {
                sphere,
                pole,
                ground,
            } => leverage_accels(state.angle, sphere, pole, *ground),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Method {
    #[default]
    Rk4,
    SemiImplicitEuler,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Rk4 => "rk4",
            Method::SemiImplicitEuler => "semi-implicit-euler",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rk4" => Ok(Method::Rk4),
            "semi-implicit-euler" => Ok(Method::SemiImplicitEuler),
            other => Err(Error::Usage(format!(
                "unknown method '{other}' (expected rk4 or semi-implicit-euler)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSettings<T> {
    dt: T,
    duration: T,
    method: Method,
}

impl<T: Scalar> IntegratorSettings<T> {
    pub fn new(dt: T, duration: T, method: Method) -> Result<Self> {
        if !(dt.is_finite() && dt > T::zero()) {
            return Err(Error::domain("dt", dt.to_f64_lossy(), "must be finite and > 0"));
        }
        if !(duration.is_finite() && duration > T::zero()) {
            return Err(Error::domain("t_end", duration.to_f64_lossy(), "must be finite and > 0"));
        }
        if dt > duration {
            return Err(Error::domain("dt", dt.to_f64_lossy(), "must not exceed t_end"));
        }
        Ok(IntegratorSettings {
            dt,
            duration,
            method,
        })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn duration(&self) -> T {
        self.duration
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of steps, `floor(t_end / dt)`, treating ratios within a few ulps
    /// of an integer as that integer.
    pub fn steps(&self) -> usize {
        let ratio = self.duration / self.dt;
        let nearest = ratio.round();
        let n = if (ratio - nearest).abs() <= ratio * T::lit(64.0) * T::epsilon() {
            nearest
        } else {
            ratio.floor()
        };
        n.to_usize().unwrap_or(usize::MAX)
    }
}

/// Uniformly spaced samples with the accelerations evaluated at each one.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    dt: T,
    samples: Vec<MotionState<T>>,
    accels: Vec<AccelTriple<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn samples(&self) -> &[MotionState<T>] {
        &self.samples
    }

    pub fn accels(&self) -> &[AccelTriple<T>] {
        &self.accels
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&MotionState<T>> {
        self.samples.last()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MotionState<T>, &AccelTriple<T>)> {
        self.samples.iter().zip(self.accels.iter())
    }
}

fn abort<T: Scalar>(last: &MotionState<T>, reason: impl Into<String>) -> Error {
    Error::IntegrationAborted {
        t: last.t.to_f64_lossy(),
        reason: reason.into(),
        last_valid: Box::new(last.to_f64()),
    }
}

fn checked_accel<T: Scalar, D: Dynamics<T> + ?Sized>(
    rhs: &D,
    state: &MotionState<T>,
    last_valid: &MotionState<T>,
) -> Result<AccelTriple<T>> {
    if !state.is_finite() {
        return Err(abort(last_valid, "non-finite state"));
    }
    let a = rhs
        .accel(state)
        .map_err(|e| abort(last_valid, e.to_string()))?;
    if !a.is_finite() {
        return Err(abort(last_valid, "non-finite acceleration"));
    }
    Ok(a)
}

/// Time derivative of the six kinematic components.
type Derivative<T> = [T; 6];

fn derivative<T: Scalar>(s: &MotionState<T>, a: &AccelTriple<T>) -> Derivative<T> {
    [s.angular_velocity, a.angular, s.vx, a.horizontal, s.vz, a.vertical]
}

fn offset<T: Scalar>(s: &MotionState<T>, d: &Derivative<T>, h: T) -> MotionState<T> {
    MotionState {
        angle: s.angle + d[0] * h,
        angular_velocity: s.angular_velocity + d[1] * h,
        x: s.x + d[2] * h,
        vx: s.vx + d[3] * h,
        z: s.z + d[4] * h,
        vz: s.vz + d[5] * h,
        t: s.t + h,
    }
}

/// One step of `method` from `s`, whose acceleration `a` is already known.
pub(crate) fn advance<T: Scalar, D: Dynamics<T> + ?Sized>(
    rhs: &D,
    method: Method,
    s: &MotionState<T>,
    a: &AccelTriple<T>,
    dt: T,
) -> Result<MotionState<T>> {
    let next = match method {
        Method::Rk4 => {
            let half = dt / T::lit(2.0);
            let two = T::lit(2.0);
            let k1 = derivative(s, a);
            let s2 = offset(s, &k1, half);
            let k2 = derivative(&s2, &checked_accel(rhs, &s2, s)?);
            let s3 = offset(s, &k2, half);
            let k3 = derivative(&s3, &checked_accel(rhs, &s3, s)?);
            let s4 = offset(s, &k3, dt);
            let k4 = derivative(&s4, &checked_accel(rhs, &s4, s)?);
            let mut d = [T::zero(); 6];
            for j in 0..6 {
                d[j] = (k1[j] + two * k2[j] + two * k3[j] + k4[j]) / T::lit(6.0);
            }
            offset(s, &d, dt)
        }
        Method::SemiImplicitEuler => {
            let angular_velocity = s.angular_velocity + a.angular * dt;
            let vx = s.vx + a.horizontal * dt;
            let vz = s.vz + a.vertical * dt;
            MotionState {
                angle: s.angle + angular_velocity * dt,
                angular_velocity,
                x: s.x + vx * dt,
                vx,
                z: s.z + vz * dt,
                vz,
                t: s.t + dt,
            }
        }
    };
    Ok(next)
}

/// Integrates `rhs` from `initial` with fixed steps.
///
/// Produces `floor(t_end / dt) + 1` samples. Sample times are
/// `t0 + i·dt`. Fails with [`Error::IntegrationAborted`] carrying the last
/// valid state when the state or the dynamics stop being finite or the
/// dynamics reject a state.
pub fn integrate<T: Scalar, D: Dynamics<T> + ?Sized>(
    rhs: &D,
    initial: MotionState<T>,
    settings: &IntegratorSettings<T>,
) -> Result<Trajectory<T>> {
    if !initial.is_finite() {
        return Err(Error::domain("initial state", f64::NAN, "all fields must be finite"));
    }
    let dt = settings.dt();
    let steps = settings.steps();
    let t0 = initial.t;

    let mut samples = Vec::with_capacity(steps + 1);
    let mut accels = Vec::with_capacity(steps + 1);
    let first = rhs.accel(&initial)?;
    if !first.is_finite() {
        return Err(abort(&initial, "non-finite acceleration"));
    }
    samples.push(initial);
    accels.push(first);

    for i in 1..=steps {
        let s = samples[i - 1];
        let a = accels[i - 1];
        let mut next = advance(rhs, settings.method(), &s, &a, dt)?;
        next.t = t0 + T::from_usize(i).expect("step index fits the scalar") * dt;
        let a_next = checked_accel(rhs, &next, &s)?;
        samples.push(next);
        accels.push(a_next);
    }

    Ok(Trajectory {
        dt,
        samples,
        accels,
    })
}

fn envelope_rate_at<T: Scalar>(angle: T, lo: &EnvelopePoint<T>, hi: &EnvelopePoint<T>) -> T {
    if hi.angle == lo.angle {
        return lo.max_rate.min(hi.max_rate);
    }
    match (lo.max_rate.is_finite(), hi.max_rate.is_finite()) {
        (true, true) => {
            let w = (angle - lo.angle) / (hi.angle - lo.angle);
            lo.max_rate + w * (hi.max_rate - lo.max_rate)
        }
        (false, true) => hi.max_rate,
        (true, false) => lo.max_rate,
        (false, false) => T::infinity(),
    }
}

/// Caps the angular velocity at the geometric envelope and truncates the
/// trajectory at the first sample the pole can no longer reach.
///
/// Between grid points the envelope is interpolated linearly. A sample whose
/// bracketing envelope point beyond it is length limited is out of reach.
/// Samples outside the envelope's angle range are a usage error.
pub fn clip_to_envelope<T: Scalar>(
    trajectory: &Trajectory<T>,
    envelope: &[EnvelopePoint<T>],
) -> Result<Trajectory<T>> {
    let (Some(first), Some(last)) = (envelope.first(), envelope.last()) else {
        return Err(Error::Usage("envelope is empty".into()));
    };
    if envelope.windows(2).any(|w| !(w[0].angle <= w[1].angle)) {
        return Err(Error::Usage("envelope must be sorted by angle".into()));
    }
    let mut samples = Vec::with_capacity(trajectory.len());
    let mut accels = Vec::with_capacity(trajectory.len());
    for (s, a) in trajectory.iter() {
        if s.angle < first.angle || s.angle > last.angle {
            return Err(Error::Usage(format!(
                "envelope does not cover angle {} (covers [{}, {}])",
                s.angle, first.angle, last.angle
            )));
        }
        let hi = envelope.partition_point(|p| p.angle < s.angle).min(envelope.len() - 1);
        let lo = if envelope[hi].angle == s.angle || hi == 0 { hi } else { hi - 1 };
        let (lo, hi) = (&envelope[lo], &envelope[hi]);
        if hi.limited_by == EnvelopeLimit::MaxLength && (s.angle > lo.angle || lo.limited_by == EnvelopeLimit::MaxLength) {
            break;
        }
        let cap = envelope_rate_at(s.angle, lo, hi);
        let mut clipped = *s;
        if clipped.angular_velocity > cap {
            clipped.angular_velocity = cap;
        }
        samples.push(clipped);
        accels.push(*a);
    }
    Ok(Trajectory {
        dt: trajectory.dt,
        samples,
        accels,
    })
}
