//! Dynamics of spherical robots that move by extending telescopic rods.
//!
//! Two locomotion modes are modelled: *pushing*, where a rod extended behind
//! the robot pushes against the ground, and *leverage*, where rods extended
//! forward shift weight so gravity rolls the shell. Alongside the
//! accelerations the crate provides the rod geometry envelope, fixed-step
//! trajectory integration, threshold analyses, a scenario file format and
//! CSV output used by the `rodsphere` command-line tool.
//!
//! All models are generic over the [`Scalar`] type (`f32` or `f64`); the
//! aliases at the crate root pin them to `f64` (and `f32` with a `32` suffix).

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod integrator;
pub mod leverage;
pub mod output;
pub mod push;
pub mod scalar;
pub mod scenario;
pub mod types;

pub use error::{Error, Result};
pub use geometry::{EnvelopeLimit, EnvelopePoint};
pub use integrator::{Dynamics, IntegratorSettings, Method, Regime, Trajectory};
pub use push::PushRegime;
pub use scalar::Scalar;
pub use types::{
    AccelTriple, ForceSplit, FrictionParams, LeverArmConvention, MotionState, PoleParams,
    SphereParams,
};

pub type Sphere = SphereParams<f64>;
pub type Pole = PoleParams<f64>;
pub type Friction = FrictionParams<f64>;
pub type State = MotionState<f64>;
pub type Accel = AccelTriple<f64>;
pub type Split = ForceSplit<f64>;
pub type Envelope = EnvelopePoint<f64>;
pub type Settings = IntegratorSettings<f64>;
pub type Traj = Trajectory<f64>;

pub type Sphere32 = SphereParams<f32>;
pub type Pole32 = PoleParams<f32>;
pub type Friction32 = FrictionParams<f32>;
pub type State32 = MotionState<f32>;
pub type Accel32 = AccelTriple<f32>;
pub type Settings32 = IntegratorSettings<f32>;
pub type Traj32 = Trajectory<f32>;
