//! Scenario files.
//!
//! A scenario is plain UTF-8 text made of `[section]` headers followed by
//! `key = value` lines. `#` starts a comment that runs to the end of the
//! line. Every key is optional and falls back to the default listed below;
//! unknown sections, unknown keys and repeated keys are rejected.
//!
//! ```text
//! [regime]
//! kind = friction            # constant-drive | obstacle | full-slip | friction | leverage
//! convention = consistent    # consistent | verbatim
//! drive = 0.15               # constant-drive gain A; default r_m * F_p / I
//!
//! [sphere]
//! r_m = 0.4
//! m_robot = 25
//! I = 1.6                    # default: solid ball 2/5 m r²
//! g = 9.81                   # number, earth or moon
//!
//! [pole]
//! l_max = 0.1
//! l_dot_max = 0.05
//! F_p = 0.6
//! m_lever = 0.1
//! r_c = 0.9
//!
//! [friction]
//! mu_rs = 1
//! mu_s_pole = 1
//!
//! [initial]
//! zeta = 0.01                # angles accept a `pi` suffix: 1.5pi
//! omega = 0
//! x = 0
//! v_h = 0
//! z = 0
//! v_v = 0
//! t = 0
//!
//! [integrator]
//! dt = 0.001
//! t_end = 10
//! method = rk4               # rk4 | semi-implicit-euler
//!
//! [envelope]
//! zeta_start = 0
//! zeta_stop = 1.5
//! count = 151
//! configs = 0.1:0.05, 0.1:0.5   # l_max:l_dot_max pairs; default the [pole] values
//!
//! [sweep]
//! parameter = mu_rs
//! start = 0
//! stop = 1
//! count = 11
//!
//! [output]
//! path = out.csv
//! ```

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::integrator::{IntegratorSettings, Method, Regime};
use crate::push::PushRegime;
use crate::types::{
    solid_sphere_inertia, FrictionParams, LeverArmConvention, MotionState, PoleParams,
    SphereParams, EARTH_GRAVITY, LUNAR_GRAVITY,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RegimeKind {
    #[default]
    ConstantDrive,
    Obstacle,
    FullSlip,
    Friction,
    Leverage,
}

impl RegimeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeKind::ConstantDrive => "constant-drive",
            RegimeKind::Obstacle => "obstacle",
            RegimeKind::FullSlip => "full-slip",
            RegimeKind::Friction => "friction",
            RegimeKind::Leverage => "leverage",
        }
    }

    pub fn is_push(self) -> bool {
        !matches!(self, RegimeKind::Leverage)
    }
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegimeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "constant-drive" => RegimeKind::ConstantDrive,
            "obstacle" => RegimeKind::Obstacle,
            "full-slip" => RegimeKind::FullSlip,
            "friction" => RegimeKind::Friction,
            "leverage" => RegimeKind::Leverage,
            other => return Err(Error::Usage(format!("unknown regime '{other}'"))),
        })
    }
}

/// A scalar scenario input that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    Drive,
    ShellRadius,
    RobotMass,
    Inertia,
    Gravity,
    MaxLength,
    MaxExtensionRate,
    PushForce,
    LeverMass,
    LeverRadius,
    GroundFriction,
    PoleTipFriction,
    Angle,
}

impl Parameter {
    pub const ALL: [Parameter; 13] = [
        Parameter::Drive,
        Parameter::ShellRadius,
        Parameter::RobotMass,
        Parameter::Inertia,
        Parameter::Gravity,
        Parameter::MaxLength,
        Parameter::MaxExtensionRate,
        Parameter::PushForce,
        Parameter::LeverMass,
        Parameter::LeverRadius,
        Parameter::GroundFriction,
        Parameter::PoleTipFriction,
        Parameter::Angle,
    ];

    /// Scenario key naming the parameter.
    pub fn key(self) -> &'static str {
        match self {
            Parameter::Drive => "drive",
            Parameter::ShellRadius => "r_m",
            Parameter::RobotMass => "m_robot",
            Parameter::Inertia => "I",
            Parameter::Gravity => "g",
            Parameter::MaxLength => "l_max",
            Parameter::MaxExtensionRate => "l_dot_max",
            Parameter::PushForce => "F_p",
            Parameter::LeverMass => "m_lever",
            Parameter::LeverRadius => "r_c",
            Parameter::GroundFriction => "mu_rs",
            Parameter::PoleTipFriction => "mu_s_pole",
            Parameter::Angle => "zeta",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parameter::ALL
            .into_iter()
            .find(|p| p.key() == s)
            .ok_or_else(|| Error::Usage(format!("unknown sweep parameter '{s}'")))
    }
}

/// Unvalidated scalar inputs, kept so single values can be swept and the
/// typed parameters rebuilt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    pub drive: Option<f64>,
    pub radius: f64,
    pub mass: f64,
    /// `None` means solid ball inertia derived from mass and radius.
    pub inertia: Option<f64>,
    pub gravity: f64,
    pub max_length: f64,
    pub max_extension_rate: f64,
    pub push_force: f64,
    pub lever_mass: f64,
    pub lever_radius: f64,
    pub ground: f64,
    pub pole_tip: f64,
}

impl Default for RawParams {
    fn default() -> Self {
        RawParams {
            drive: None,
            radius: 0.4,
            mass: 25.0,
            inertia: None,
            gravity: EARTH_GRAVITY,
            max_length: 0.1,
            max_extension_rate: 0.05,
            push_force: 0.6,
            lever_mass: 0.1,
            lever_radius: 0.9,
            ground: 1.0,
            pole_tip: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    /// `(l_max, l_dot_max)` pairs; empty means the scenario's pole.
    pub configs: Vec<(f64, f64)>,
}

impl Default for EnvelopeSpec {
    fn default() -> Self {
        EnvelopeSpec {
            start: 0.0,
            stop: 1.5,
            count: 151,
            configs: Vec::new(),
        }
    }
}

impl EnvelopeSpec {
    /// Evenly spaced grid from `start` to `stop` inclusive.
    pub fn grid(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

pub(crate) fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSection {
    pub parameter: Parameter,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: RegimeKind,
    pub convention: LeverArmConvention,
    pub raw: RawParams,
    pub sphere: SphereParams<f64>,
    pub pole: PoleParams<f64>,
    pub friction: FrictionParams<f64>,
    pub initial: MotionState<f64>,
    pub integrator: IntegratorSettings<f64>,
    pub envelope: EnvelopeSpec,
    pub sweep: Option<SweepSection>,
    pub output: Option<PathBuf>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario::from_raw(
            RegimeKind::default(),
            LeverArmConvention::default(),
            RawParams::default(),
            MotionState::at_angle(0.01),
            IntegratorSettings::new(1e-3, 10.0, Method::Rk4).expect("valid defaults"),
        )
        .expect("valid defaults")
    }
}

impl Scenario {
    pub fn from_raw(
        kind: RegimeKind,
        convention: LeverArmConvention,
        raw: RawParams,
        initial: MotionState<f64>,
        integrator: IntegratorSettings<f64>,
    ) -> Result<Self> {
        let inertia = match raw.inertia {
            Some(i) => i,
            None => solid_sphere_inertia(raw.mass, raw.radius)?,
        };
        let sphere = SphereParams::new(raw.radius, raw.mass, inertia, raw.gravity)?;
        let pole = PoleParams::new(
            &sphere,
            raw.max_length,
            raw.max_extension_rate,
            raw.push_force,
            raw.lever_mass,
            raw.lever_radius,
        )?;
        let friction = FrictionParams::new(raw.ground, raw.pole_tip)?;
        if let Some(a) = raw.drive {
            if !(a.is_finite() && a >= 0.0) {
                return Err(Error::Domain {
                    what: "drive",
                    value: a,
                    requirement: "must be finite and >= 0",
                });
            }
        }
        if !initial.is_finite() {
            return Err(Error::Usage("initial state must be finite".into()));
        }
        Ok(Scenario {
            kind,
            convention,
            raw,
            sphere,
            pole,
            friction,
            initial,
            integrator,
            envelope: EnvelopeSpec::default(),
            sweep: None,
            output: None,
        })
    }

    /// Constant-drive gain: explicit `drive` or `r_m F_p / I`.
    pub fn drive(&self) -> f64 {
        self.raw
            .drive
            .unwrap_or(self.sphere.radius() * self.pole.push_force() / self.sphere.inertia())
    }

    pub fn regime(&self) -> Regime<f64> {
        let sphere = self.sphere;
        let force = self.pole.push_force();
        let push = |model| Regime::Push {
            model,
            sphere,
            force,
        };
        match self.kind {
            RegimeKind::ConstantDrive => Regime::ConstantDrive { gain: self.drive() },
            RegimeKind::Obstacle => push(PushRegime::Obstacle {
                ground: self.friction.ground(),
            }),
            RegimeKind::FullSlip => push(PushRegime::FullSlip),
            RegimeKind::Friction => push(PushRegime::Friction {
                friction: self.friction,
                convention: self.convention,
            }),
            RegimeKind::Leverage => Regime::Leverage {
                sphere,
                pole: self.pole,
                ground: self.friction.ground(),
            },
        }
    }

    pub fn with_convention(mut self, convention: LeverArmConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn value(&self, parameter: Parameter) -> f64 {
        let r = &self.raw;
        match parameter {
            Parameter::Drive => self.drive(),
            Parameter::ShellRadius => r.radius,
            Parameter::RobotMass => r.mass,
            Parameter::Inertia => self.sphere.inertia(),
            Parameter::Gravity => r.gravity,
            Parameter::MaxLength => r.max_length,
            Parameter::MaxExtensionRate => r.max_extension_rate,
            Parameter::PushForce => r.push_force,
            Parameter::LeverMass => r.lever_mass,
            Parameter::LeverRadius => r.lever_radius,
            Parameter::GroundFriction => r.ground,
            Parameter::PoleTipFriction => r.pole_tip,
            Parameter::Angle => self.initial.angle,
        }
    }

    /// Copy with one parameter replaced and all invariants re-checked.
    pub fn with_parameter(&self, parameter: Parameter, value: f64) -> Result<Self> {
        let mut raw = self.raw;
        let mut initial = self.initial;
        match parameter {
            Parameter::Drive => raw.drive = Some(value),
            Parameter::ShellRadius => raw.radius = value,
            Parameter::RobotMass => raw.mass = value,
            Parameter::Inertia => raw.inertia = Some(value),
            Parameter::Gravity => raw.gravity = value,
            Parameter::MaxLength => raw.max_length = value,
            Parameter::MaxExtensionRate => raw.max_extension_rate = value,
            Parameter::PushForce => raw.push_force = value,
            Parameter::LeverMass => raw.lever_mass = value,
            Parameter::LeverRadius => raw.lever_radius = value,
            Parameter::GroundFriction => raw.ground = value,
            Parameter::PoleTipFriction => raw.pole_tip = value,
            Parameter::Angle => initial.angle = value,
        }
        let mut next = Scenario::from_raw(self.kind, self.convention, raw, initial, self.integrator)?;
        next.envelope = self.envelope.clone();
        next.sweep = self.sweep;
        next.output = self.output.clone();
        Ok(next)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        text.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Regime,
    Sphere,
    Pole,
    Friction,
    Initial,
    Integrator,
    Envelope,
    Sweep,
    Output,
}

impl Section {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "regime" => Section::Regime,
            "sphere" => Section::Sphere,
            "pole" => Section::Pole,
            "friction" => Section::Friction,
            "initial" => Section::Initial,
            "integrator" => Section::Integrator,
            "envelope" => Section::Envelope,
            "sweep" => Section::Sweep,
            "output" => Section::Output,
            _ => return None,
        })
    }
}

struct Entry<'a> {
    line: usize,
    value_col: usize,
    value: &'a str,
}

impl Entry<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.value_col,
            message: message.into(),
        }
    }

    fn number(&self) -> Result<f64> {
        let v = self.value;
        let parsed = if let Some(prefix) = v.strip_suffix("pi") {
            let prefix = prefix.trim_end_matches('*').trim();
            match prefix {
                "" => Ok(1.0),
                "-" => Ok(-1.0),
                p => p.parse::<f64>(),
            }
            .map(|k| k * PI)
        } else {
            v.parse::<f64>()
        };
        match parsed {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(self.error(format!("expected a finite number, found '{v}'"))),
        }
    }

    fn count(&self) -> Result<usize> {
        self.value
            .parse::<usize>()
            .map_err(|_| self.error(format!("expected a non-negative integer, found '{}'", self.value)))
    }

    fn parsed<T: FromStr<Err = Error>>(&self) -> Result<T> {
        self.value.parse::<T>().map_err(|e| match e {
            Error::Usage(msg) => self.error(msg),
            other => self.error(other.to_string()),
        })
    }
}

fn parse_configs(entry: &Entry<'_>) -> Result<Vec<(f64, f64)>> {
    entry
        .value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (l, r) = pair
                .split_once(':')
                .ok_or_else(|| entry.error(format!("expected l_max:l_dot_max, found '{pair}'")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| entry.error(format!("expected a finite number, found '{}'", s.trim())))
            };
            Ok((num(l)?, num(r)?))
        })
        .collect()
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut kind = RegimeKind::default();
        let mut convention = LeverArmConvention::default();
        let mut raw = RawParams::default();
        let mut initial = MotionState::at_angle(0.01);
        let (mut dt, mut t_end, mut method) = (1e-3, 10.0, Method::Rk4);
        let mut envelope = EnvelopeSpec::default();
        let mut sweep_param: Option<Parameter> = None;
        let (mut sweep_start, mut sweep_stop, mut sweep_count) = (None, None, None);
        let mut output = None;

        let mut section: Option<Section> = None;
        let mut seen: HashSet<(usize, String)> = HashSet::new();
        let mut seen_sections: HashSet<String> = HashSet::new();

        for (idx, full_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = full_line.split('#').next().unwrap_or("");
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            if let Some(rest) = trimmed.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or(Error::Parse {
                    line: line_no,
                    column: indent + 1,
                    message: "unterminated section header".into(),
                })?;
                let name = name.trim();
                let parsed = Section::parse(name).ok_or_else(|| Error::Parse {
                    line: line_no,
                    column: indent + 2,
                    message: format!("unknown section '{name}'"),
                })?;
                if !seen_sections.insert(name.to_string()) {
                    return Err(Error::Parse {
                        line: line_no,
                        column: indent + 1,
                        message: format!("section '{name}' appears twice"),
                    });
                }
                section = Some(parsed);
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    column: indent + 1,
                    message: "expected 'key = value'".into(),
                });
            };
            let key = line[..eq].trim();
            let value_part = &line[eq + 1..];
            let value = value_part.trim();
            let value_col = eq + 2 + (value_part.len() - value_part.trim_start().len());
            let key_col = indent + 1;
            let key_error = |message: String| Error::Parse {
                line: line_no,
                column: key_col,
                message,
            };
            let Some(current) = section else {
                return Err(key_error(format!("key '{key}' outside of any section")));
            };
            if value.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    column: value_col,
                    message: format!("missing value for '{key}'"),
                });
            }
            if !seen.insert((current as usize, key.to_string())) {
                return Err(key_error(format!("key '{key}' repeated")));
            }
            let entry = Entry {
                line: line_no,
                value_col,
                value,
            };
            match (current, key) {
                (Section::Regime, "kind") => kind = entry.parsed()?,
                (Section::Regime, "convention") => convention = entry.parsed()?,
                (Section::Regime, "drive") => raw.drive = Some(entry.number()?),
                (Section::Sphere, "r_m") => raw.radius = entry.number()?,
                (Section::Sphere, "m_robot") => raw.mass = entry.number()?,
                (Section::Sphere, "I") => raw.inertia = Some(entry.number()?),
                (Section::Sphere, "g") => {
                    raw.gravity = match value {
                        "earth" => EARTH_GRAVITY,
                        "moon" => LUNAR_GRAVITY,
                        _ => entry.number()?,
                    }
                }
                (Section::Pole, "l_max") => raw.max_length = entry.number()?,
                (Section::Pole, "l_dot_max") => raw.max_extension_rate = entry.number()?,
                (Section::Pole, "F_p") => raw.push_force = entry.number()?,
                (Section::Pole, "m_lever") => raw.lever_mass = entry.number()?,
                (Section::Pole, "r_c") => raw.lever_radius = entry.number()?,
                (Section::Friction, "mu_rs") => raw.ground = entry.number()?,
                (Section::Friction, "mu_s_pole") => raw.pole_tip = entry.number()?,
                (Section::Initial, "zeta") => initial.angle = entry.number()?,
                (Section::Initial, "omega") => initial.angular_velocity = entry.number()?,
                (Section::Initial, "x") => initial.x = entry.number()?,
                (Section::Initial, "v_h") => initial.vx = entry.number()?,
                (Section::Initial, "z") => initial.z = entry.number()?,
                (Section::Initial, "v_v") => initial.vz = entry.number()?,
                (Section::Initial, "t") => initial.t = entry.number()?,
                (Section::Integrator, "dt") => dt = entry.number()?,
                (Section::Integrator, "t_end") => t_end = entry.number()?,
                (Section::Integrator, "method") => method = entry.parsed()?,
                (Section::Envelope, "zeta_start") => envelope.start = entry.number()?,
                (Section::Envelope, "zeta_stop") => envelope.stop = entry.number()?,
                (Section::Envelope, "count") => envelope.count = entry.count()?,
                (Section::Envelope, "configs") => envelope.configs = parse_configs(&entry)?,
                (Section::Sweep, "parameter") => sweep_param = Some(entry.parsed()?),
                (Section::Sweep, "start") => sweep_start = Some(entry.number()?),
                (Section::Sweep, "stop") => sweep_stop = Some(entry.number()?),
                (Section::Sweep, "count") => sweep_count = Some(entry.count()?),
                (Section::Output, "path") => output = Some(PathBuf::from(value)),
                _ => return Err(key_error(format!("unknown key '{key}'"))),
            }
        }

        let integrator = IntegratorSettings::new(dt, t_end, method)?;
        let mut scenario = Scenario::from_raw(kind, convention, raw, initial, integrator)?;
        scenario.envelope = envelope;
        scenario.output = output;
        scenario.sweep = match (sweep_param, sweep_start, sweep_stop, sweep_count) {
            (None, None, None, None) => None,
            (Some(parameter), Some(start), Some(stop), count) => Some(SweepSection {
                parameter,
                start,
                stop,
                count: count.unwrap_or(11),
            }),
            _ => {
                return Err(Error::Usage(
                    "[sweep] needs parameter, start and stop".into(),
                ))
            }
        };
        Ok(scenario)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_parse_from_empty_text() {
        let s: Scenario = "".parse().unwrap();
        assert_eq!(s, Scenario::default());
        assert_eq!(s.sphere.inertia(), 0.4 * 25.0 * 0.16);
        assert!((s.drive() - 0.15).abs() < 1e-12);
    }

    #[test]
    fn full_file() {
        let text = "\
# leverage demo
[regime]
kind = leverage
convention = verbatim

[sphere]
r_m = 0.4
m_robot = 25
g = moon   # lunar

[pole]
r_c = 0.9
m_lever = 0.1

[friction]
mu_rs = 0.5

[initial]
zeta = 1.5pi
omega = 0.2

[integrator]
dt = 0.01
t_end = 1
method = semi-implicit-euler

[envelope]
count = 11
configs = 0.1:0.05, 0.2 : 0.5

[sweep]
parameter = mu_rs
start = 0
stop = 1
count = 5

[output]
path = out/lev.csv
";
        let s: Scenario = text.parse().unwrap();
        assert_eq!(s.kind, RegimeKind::Leverage);
        assert_eq!(s.convention, LeverArmConvention::Verbatim);
        assert_eq!(s.sphere.gravity(), LUNAR_GRAVITY);
        assert!((s.initial.angle - 1.5 * PI).abs() < 1e-15);
        assert_eq!(s.integrator.method(), Method::SemiImplicitEuler);
        assert_eq!(s.envelope.configs, vec![(0.1, 0.05), (0.2, 0.5)]);
        assert_eq!(s.envelope.grid().len(), 11);
        assert_eq!(s.sweep.unwrap().parameter, Parameter::GroundFriction);
        assert_eq!(s.output.as_deref(), Some(Path::new("out/lev.csv")));
        assert!(matches!(s.regime(), Regime::Leverage { .. }));
    }

    fn parse_err(text: &str) -> (usize, usize, String) {
        match text.parse::<Scenario>() {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reports_line_and_column() {
        let (line, col, msg) = parse_err("[sphere]\nr_m = 0.4\nm_robot = heavy\n");
        assert_eq!((line, col), (3, 11));
        assert!(msg.contains("heavy"));

        let (line, col, msg) = parse_err("[sphere]\n  colour = red\n");
        assert_eq!((line, col), (2, 3));
        assert!(msg.contains("unknown key"));

        let (line, _, msg) = parse_err("[sphere]\nr_m = 1\n[bogus]\n");
        assert_eq!(line, 3);
        assert!(msg.contains("unknown section"));

        let (line, _, _) = parse_err("r_m = 1\n");
        assert_eq!(line, 1);
        let (line, _, msg) = parse_err("[pole]\nr_c = 1\nr_c = 2\n");
        assert_eq!(line, 3);
        assert!(msg.contains("repeated"));
        let (line, _, _) = parse_err("[pole]\nr_c 1\n");
        assert_eq!(line, 2);
        let (_, _, msg) = parse_err("[regime]\nkind = rolling\n");
        assert!(msg.contains("rolling"));
    }

    #[test]
    fn invariants_checked() {
        assert!(matches!("[integrator]\ndt = 2\nt_end = 1\n".parse::<Scenario>(), Err(Error::Domain { .. })));
        assert!(matches!("[pole]\nr_c = 0.3\n".parse::<Scenario>(), Err(Error::Domain { .. })));
        assert!(matches!("[friction]\nmu_rs = 1.5\n".parse::<Scenario>(), Err(Error::Domain { .. })));
        assert!(matches!("[sweep]\nparameter = mu_rs\n".parse::<Scenario>(), Err(Error::Usage(_))));
    }

    #[test]
    fn parameter_replacement_revalidates() {
        let s = Scenario::default();
        let t = s.with_parameter(Parameter::GroundFriction, 0.25).unwrap();
        assert_eq!(t.friction.ground(), 0.25);
        assert!(s.with_parameter(Parameter::LeverRadius, 0.1).is_err());
        let bigger = s.with_parameter(Parameter::ShellRadius, 0.5).unwrap();
        assert!((bigger.sphere.inertia() - 0.4 * 25.0 * 0.25).abs() < 1e-12);
        for p in Parameter::ALL {
            assert_eq!(p.key().parse::<Parameter>().unwrap(), p);
            let v = s.value(p);
            assert_eq!(s.with_parameter(p, v).unwrap().value(p), v);
        }
        assert!("colour".parse::<Parameter>().is_err());
    }
}
