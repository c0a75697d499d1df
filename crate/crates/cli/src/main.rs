use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rodsphere::analysis::{envelope_tables, run_sweep, verify_reductions, SweepSpec};
use rodsphere::integrator::integrate;
use rodsphere::leverage::min_ground_friction_for_forward;
use rodsphere::output::{write_envelope, write_sweep, write_trajectory};
use rodsphere::scenario::Scenario;
use rodsphere::{Error, LeverArmConvention};

/// Dynamics of rod-driven spherical robots.
#[derive(Debug, Parser)]
#[command(name = "rodsphere", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a scenario and write the trajectory as CSV.
    Simulate(Io),
    /// Print the smallest ground friction that guarantees forward leverage motion.
    MinFriction(Input),
    /// Compare the force-driven rate with the rod geometry limits on an angle grid.
    Envelope(Io),
    /// Check the friction push model against its limit cases on random samples.
    Verify(Verify),
    /// Evaluate accelerations over a range of one scenario parameter.
    Sweep(Io),
}

#[derive(Debug, Args)]
struct Input {
    /// Scenario file.
    #[arg(long, value_name = "PATH")]
    scenario: PathBuf,
}

#[derive(Debug, Args)]
struct Io {
    /// Scenario file.
    #[arg(long, value_name = "PATH")]
    scenario: PathBuf,
    /// Output CSV; defaults to the scenario's [output] path, then stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Lever-arm form of the friction push model; overrides the scenario.
    #[arg(long, value_parser = ["verbatim", "consistent"])]
    convention: Option<String>,
}

#[derive(Debug, Args)]
struct Verify {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random configurations per identity.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, value_parser = ["verbatim", "consistent"], default_value = "consistent")]
    convention: String,
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl Failure {
    fn from_error(err: Error, path: Option<&Path>) -> Self {
        match err {
            Error::Parse { .. } => match path {
                Some(p) => Failure::Usage(format!("{}:{err}", p.display())),
                None => Failure::Usage(err.to_string()),
            },
            e if e.is_numeric() => Failure::Numeric(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn convention(name: &str) -> LeverArmConvention {
    name.parse().expect("clap restricts the values")
}

fn load(io_path: &Path, convention_flag: Option<&str>) -> Result<Scenario, Failure> {
    let scenario = Scenario::from_file(io_path).map_err(|e| Failure::from_error(e, Some(io_path)))?;
    Ok(match convention_flag {
        Some(c) => scenario.with_convention(convention(c)),
        None => scenario,
    })
}

fn emit(
    out: Option<&Path>,
    scenario: &Scenario,
    write: impl FnOnce(&mut dyn Write) -> rodsphere::Result<()>,
) -> Outcome {
    let target = out.map(Path::to_path_buf).or_else(|| scenario.output.clone());
    let result = match target {
        Some(path) => File::create(&path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                write(&mut w)?;
                w.flush().map_err(Error::from)
            }),
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)
        }
    };
    result.map_err(|e| Failure::from_error(e, None))
}

fn simulate(args: &Io) -> Outcome {
    let s = load(&args.scenario, args.convention.as_deref())?;
    let traj = integrate(&s.regime(), s.initial, &s.integrator).map_err(|e| Failure::from_error(e, None))?;
    emit(args.out.as_deref(), &s, |w| write_trajectory(w, &s, &traj))
}

fn min_friction(args: &Input) -> Outcome {
    let s = load(&args.scenario, None)?;
    let mu = min_ground_friction_for_forward(&s.sphere, &s.pole).map_err(|e| Failure::from_error(e, None))?;
    println!("{mu:.6}");
    Ok(())
}

fn envelope(args: &Io) -> Outcome {
    let s = load(&args.scenario, args.convention.as_deref())?;
    let tables = envelope_tables(&s).map_err(|e| Failure::from_error(e, None))?;
    emit(args.out.as_deref(), &s, |w| write_envelope(w, &s, &tables))
}

fn sweep(args: &Io) -> Outcome {
    let s = load(&args.scenario, args.convention.as_deref())?;
    let section = s
        .sweep
        .ok_or_else(|| Failure::Usage(format!("{}: scenario has no [sweep] section", args.scenario.display())))?;
    let rows = SweepSpec::with_parameter(section.parameter, section.start, section.stop, section.count, s.clone())
        .and_then(|spec| run_sweep(&spec))
        .map_err(|e| Failure::from_error(e, None))?;
    emit(args.out.as_deref(), &s, |w| write_sweep(w, &s, section.parameter, &rows))
}

fn verify(args: &Verify) -> Outcome {
    let report = verify_reductions(args.samples, args.seed, convention(&args.convention))
        .map_err(|e| Failure::from_error(e, None))?;
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Numeric("not every identity holds".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::MinFriction(a) => min_friction(a),
        Command::Envelope(a) => envelope(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("rodsphere: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("rodsphere: {msg}");
            ExitCode::from(3)
        }
    }
}
