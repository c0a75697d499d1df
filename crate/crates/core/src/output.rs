//! CSV writers.
//!
//! Every file starts with `#`-prefixed `key = value` lines echoing the regime,
//! lever-arm convention, all parameters and the initial conditions, followed
//! by a header row and one record per line. Lines end in `\n`; numbers use
//! the shortest representation that round-trips (`inf` for infinities), so
//! identical inputs give identical bytes.

use std::io::Write;

use crate::analysis::{EnvelopeTable, SweepRow};
use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::scenario::{Parameter, Scenario};

pub const TRAJECTORY_HEADER: [&str; 10] =
    ["t", "zeta", "omega", "x", "v_h", "z", "v_v", "a_v", "a_h", "omega_dot"];

pub const ENVELOPE_HEADER: [&str; 8] = [
    "config",
    "l_max",
    "l_dot_max",
    "zeta",
    "omega_force",
    "zeta_dot_max",
    "limited_by",
    "binding",
];

pub const SWEEP_HEADER_TAIL: [&str; 4] = ["zeta", "a_v", "a_h", "omega_dot"];

/// `#` metadata lines for a scenario plus any command-specific extras.
pub fn metadata(scenario: &Scenario, extra: &[(&str, String)]) -> Vec<String> {
    let mut lines = vec![
        format!("regime = {}", scenario.kind.as_str()),
        format!("convention = {}", scenario.convention),
    ];
    for p in Parameter::ALL {
        if p == Parameter::Angle {
            continue;
        }
        lines.push(format!("{} = {}", p.key(), scenario.value(p)));
    }
    let s = &scenario.initial;
    lines.push(format!(
        "initial: zeta = {}, omega = {}, x = {}, v_h = {}, z = {}, v_v = {}, t = {}",
        s.angle, s.angular_velocity, s.x, s.vx, s.z, s.vz, s.t
    ));
    let it = &scenario.integrator;
    lines.push(format!(
        "integrator: method = {}, dt = {}, t_end = {}",
        it.method().as_str(),
        it.dt(),
        it.duration()
    ));
    for (k, v) in extra {
        lines.push(format!("{k} = {v}"));
    }
    lines
}

fn write_metadata<W: Write>(out: &mut W, lines: &[String]) -> Result<()> {
    for l in lines {
        writeln!(out, "# {l}")?;
    }
    Ok(())
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn finish<W: Write>(w: csv::Writer<W>) -> Result<()> {
    w.into_inner()
        .map_err(|e| Error::Io(e.error().to_string()))?
        .flush()?;
    Ok(())
}

fn num(x: f64) -> String {
    x.to_string()
}

pub fn write_trajectory<W: Write>(mut out: W, scenario: &Scenario, traj: &Trajectory<f64>) -> Result<()> {
    write_metadata(&mut out, &metadata(scenario, &[]))?;
    let mut w = csv_writer(out);
    w.write_record(TRAJECTORY_HEADER).map_err(csv_error)?;
    for (s, a) in traj.iter() {
        w.write_record([
            num(s.t),
            num(s.angle),
            num(s.angular_velocity),
            num(s.x),
            num(s.vx),
            num(s.z),
            num(s.vz),
            num(a.vertical),
            num(a.horizontal),
            num(a.angular),
        ])
        .map_err(csv_error)?;
    }
    finish(w)
}

pub fn write_envelope<W: Write>(mut out: W, scenario: &Scenario, tables: &[EnvelopeTable]) -> Result<()> {
    let extra = [
        ("drive", num(scenario.drive())),
        (
            "grid",
            format!(
                "{}..{} ({} points)",
                scenario.envelope.start, scenario.envelope.stop, scenario.envelope.count
            ),
        ),
    ];
    write_metadata(&mut out, &metadata(scenario, &extra))?;
    let mut w = csv_writer(out);
    w.write_record(ENVELOPE_HEADER).map_err(csv_error)?;
    for (i, t) in tables.iter().enumerate() {
        for r in &t.rows {
            w.write_record([
                i.to_string(),
                num(t.max_length),
                num(t.max_extension_rate),
                num(r.angle),
                num(r.force_rate),
                num(r.geometric_rate),
                r.limited_by.as_str().to_string(),
                r.binding.as_str().to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    finish(w)
}

pub fn write_sweep<W: Write>(mut out: W, scenario: &Scenario, parameter: Parameter, rows: &[SweepRow]) -> Result<()> {
    write_metadata(&mut out, &metadata(scenario, &[("sweep", parameter.key().to_string())]))?;
    let mut w = csv_writer(out);
    let mut header = vec![parameter.key()];
    header.extend(SWEEP_HEADER_TAIL);
    w.write_record(&header).map_err(csv_error)?;
    for r in rows {
        w.write_record([
            num(r.value),
            num(r.angle),
            num(r.accel.vertical),
            num(r.accel.horizontal),
            num(r.accel.angular),
        ])
        .map_err(csv_error)?;
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{envelope_tables, run_sweep, SweepSpec};
    use crate::integrator::integrate;

    fn simulate(text: &str) -> String {
        let s: Scenario = text.parse().unwrap();
        let traj = integrate(&s.regime(), s.initial, &s.integrator).unwrap();
        let mut buf = Vec::new();
        write_trajectory(&mut buf, &s, &traj).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn trajectory_layout() {
        let csv = simulate("[regime]\ndrive = 10\n[integrator]\ndt = 0.01\nt_end = 0.05\n");
        let lines: Vec<&str> = csv.lines().collect();
        let header = lines.iter().position(|l| !l.starts_with('#')).unwrap();
        assert_eq!(lines[header], "t,zeta,omega,x,v_h,z,v_v,a_v,a_h,omega_dot");
        assert_eq!(lines.len() - header - 1, 6);
        assert!(lines[..header].contains(&"# regime = constant-drive"));
        assert!(lines[..header].contains(&"# convention = consistent"));
        assert!(lines[..header].contains(&"# drive = 10"));
        assert!(lines[header + 1].starts_with("0,0.01,0,"));
        assert!(!csv.contains('\r'));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn every_parameter_is_echoed() {
        let csv = simulate("[integrator]\ndt = 0.01\nt_end = 0.02\n");
        for p in Parameter::ALL {
            if p != Parameter::Angle {
                assert!(csv.contains(&format!("# {} = ", p.key())), "{}", p.key());
            }
        }
        assert!(csv.contains("# initial: zeta = 0.01, omega = 0"));
    }

    #[test]
    fn leverage_first_row_angular_accel() {
        let csv = simulate("[regime]\nkind = leverage\n[initial]\nzeta = 1.5pi\n[integrator]\ndt = 0.01\nt_end = 0.01\n");
        let row = csv.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
        let omega_dot: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        let expected = 0.1 * 9.81 * 0.9 / 1.6;
        assert!((omega_dot - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn envelope_layout() {
        let s: Scenario = "[envelope]\ncount = 4\nconfigs = 0.1:0.05, 0.2:0.5\n".parse().unwrap();
        let mut buf = Vec::new();
        write_envelope(&mut buf, &s, &envelope_tables(&s).unwrap()).unwrap();
        let csv = String::from_utf8(buf).unwrap();
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], ENVELOPE_HEADER.join(","));
        assert_eq!(body.len(), 9);
        assert!(body[1].starts_with("0,0.1,0.05,0,0,inf,extension_speed,force"));
        assert!(body[5].starts_with("1,0.2,0.5,0,"));
    }

    #[test]
    fn sweep_layout() {
        let s: Scenario = "[regime]\nkind = leverage\n[initial]\nzeta = 1.25pi\n".parse().unwrap();
        let rows = run_sweep(&SweepSpec::new("mu_rs", 0.0, 1.0, 3, s.clone()).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_sweep(&mut buf, &s, Parameter::GroundFriction, &rows).unwrap();
        let csv = String::from_utf8(buf).unwrap();
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "mu_rs,zeta,a_v,a_h,omega_dot");
        assert_eq!(body.len(), 4);
        assert!(body[2].starts_with("0.5,"));
    }

    #[test]
    fn repeated_output_is_identical() {
        let text = "[regime]\nkind = friction\n[friction]\nmu_rs = 0.3\n[initial]\nzeta = 0.2\n[integrator]\nt_end = 0.5\n";
        assert_eq!(simulate(text), simulate(text));
    }
}
