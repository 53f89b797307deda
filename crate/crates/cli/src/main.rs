//! `dirac-step`: reflection amplitudes, energy sweeps and wave-packet
//! time series for a Dirac electron hitting a potential step.
//!
//! Exit codes: 0 success, 1 invalid flags or arguments, 2 empty or mixed
//! zone, 3 quadrature did not converge under node doubling.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dirac_step::{
    classify_zone, converged_series, klein_peak, phase_jump, scatter, sweep, time_grid, Error, GaussianPacket,
    QuadratureSpec, StepConfig64, Zone,
};

use output::{Format, Table};

#[derive(Debug, Parser)]
#[command(name = "dirac-step", version, about = "Dirac electron scattering off an electrostatic step (units of m)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reflection and transmission amplitudes at one energy.
    Amplitudes {
        #[command(flatten)]
        common: Common,
        /// Energy E/m.
        #[arg(long)]
        e: f64,
    },
    /// R(E) over an energy range, including the zone boundaries.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        emin: f64,
        #[arg(long)]
        emax: f64,
        /// Number of uniform grid points.
        #[arg(long, default_value_t = 4001)]
        n: usize,
    },
    /// Gaussian wave packet: particle numbers on each side of the step vs time.
    Packet(PacketArgs),
    /// Location and height of the |R| maximum in the Klein zone.
    Peak {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1e-4)]
        grid_step: f64,
    },
    /// One-sided reflection phases at E = V0.
    PhaseJump {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Step height V0/m.
    #[arg(long)]
    v0: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct PacketArgs {
    #[command(flatten)]
    common: Common,
    /// Localization length m·d.
    #[arg(long, default_value_t = 10.0)]
    d: f64,
    /// Zone of the momentum window (klein, kt, dt, diffusion, ...).
    #[arg(long)]
    zone: Option<Zone>,
    /// Peak energy; defaults to the middle of the zone.
    #[arg(long, conflicts_with = "p0")]
    e: Option<f64>,
    /// Peak momentum.
    #[arg(long)]
    p0: Option<f64>,
    /// Gauss-Legendre nodes on the momentum window.
    #[arg(long)]
    n_p: Option<usize>,
    /// Left end of the spatial grid.
    #[arg(long, allow_hyphen_values = true)]
    z_min: Option<f64>,
    /// Spatial grid step.
    #[arg(long)]
    dz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 401)]
    n_t: usize,
    /// Largest change of r(t) allowed when the node count is doubled.
    #[arg(long, default_value_t = 1e-4)]
    conv_tol: f64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Sim(Error),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Sim(Error::EmptyZone { .. } | Error::MixedZone { .. } | Error::WrongZone { .. }) => 2,
            Failure::Sim(Error::NonConvergence { .. }) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Sim(e) => e.fmt(f),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Sim(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Amplitudes { common, e } => {
            let cfg = StepConfig64::new(common.v0)?;
            let a = scatter(e, &cfg)?;
            let mut t = Table::new(cfg.v0(), &["e", "zone", "re_r", "im_r", "abs_r", "arg_r", "re_t", "im_t", "alpha"]);
            t.push(vec![
                e.into(),
                a.zone.into(),
                a.r_amp.re.into(),
                a.r_amp.im.into(),
                a.r_amp.norm().into(),
                a.reflection_phase().into(),
                a.t_amp.re.into(),
                a.t_amp.im.into(),
                a.alpha.into(),
            ]);
            emit(&t, &common)
        }
        Command::Sweep { common, emin, emax, n } => {
            let cfg = StepConfig64::new(common.v0)?;
            let mut t = Table::new(
                cfg.v0(),
                &["e", "zone", "r_mod", "r_arg", "r_arg_unwrapped", "t_mod", "alpha", "d_arg_de", "one_sided"],
            );
            for r in sweep(emin, emax, n, &cfg)? {
                t.push(vec![
                    r.e.into(),
                    r.zone.into(),
                    r.r_mod.into(),
                    r.r_arg.into(),
                    r.r_arg_unwrapped.into(),
                    r.t_mod.into(),
                    r.alpha.into(),
                    r.d_arg_de.into(),
                    r.one_sided.into(),
                ]);
            }
            emit(&t, &common)
        }
        Command::Packet(args) => packet(args),
        Command::Peak { common, grid_step } => {
            let cfg = StepConfig64::new(common.v0)?;
            let p = klein_peak(&cfg, grid_step)?;
            let mut t = Table::new(cfg.v0(), &["e_star", "r_mod_star", "boundary_hit"]);
            t.push(vec![p.e_star.into(), p.r_mod_star.into(), p.boundary_hit.into()]);
            emit(&t, &common)
        }
        Command::PhaseJump { common } => {
            let cfg = StepConfig64::new(common.v0)?;
            let j = phase_jump(&cfg)?;
            let mut t = Table::new(cfg.v0(), &["arg_below", "arg_above", "jump", "alpha_tilde"]);
            t.push(vec![j.arg_below.into(), j.arg_above.into(), j.jump.into(), j.alpha_tilde.into()]);
            emit(&t, &common)
        }
    }
}

fn packet(a: PacketArgs) -> Result<(), Failure> {
    let cfg = StepConfig64::new(a.common.v0)?;
    let pk = match (a.e, a.p0, a.zone) {
        (Some(e), _, zone) => GaussianPacket::from_energy(e, a.d, zone, &cfg)?,
        (None, Some(p0), zone) => {
            let zone = match zone {
                Some(z) => z,
                None if p0 > 0.0 => classify_zone((p0 * p0 + 1.0).sqrt(), &cfg)?,
                None => return Err(Failure::Usage(format!("--p0 must be positive, got {p0}"))),
            };
            GaussianPacket::new(zone, p0, a.d, &cfg)?
        }
        (None, None, Some(zone)) => GaussianPacket::mid_zone(zone, a.d, &cfg)?,
        (None, None, None) => return Err(Failure::Usage("packet needs --zone, --e or --p0".into())),
    };

    let span = pk.default_time_span();
    let t_min = a.t_min.unwrap_or(-span);
    let t_max = a.t_max.unwrap_or(span);
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
        return Err(Failure::Usage(format!("need t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if a.n_t < 2 {
        return Err(Failure::Usage("--n-t must be at least 2".into()));
    }
    if !(a.conv_tol > 0.0) {
        return Err(Failure::Usage("--conv-tol must be positive".into()));
    }
    let defaults = QuadratureSpec::default_for(&pk, t_min.abs().max(t_max.abs()));
    let quad = QuadratureSpec::new(
        a.n_p.unwrap_or(defaults.n_p),
        a.z_min.unwrap_or(defaults.z_min),
        a.dz.unwrap_or(defaults.dz),
        &pk,
    )?;

    let times = time_grid(t_min, t_max, a.n_t);
    let (series, change) = converged_series(pk, &cfg, quad, &times, a.conv_tol)?;

    let mut t = Table::new(cfg.v0(), &["t", "n1", "n2", "r"]);
    for k in 0..series.times.len() {
        t.push(vec![series.times[k].into(), series.n1[k].into(), series.n2[k].into(), series.r[k].into()]);
    }
    emit(&t, &a.common)?;
    if a.common.out.is_some() {
        println!(
            "zone={} e0={:.6} p0={:.6} n_p={} r_min={:.6} r_max={:.6} r_end={:.6} norm_drift={:.3e} doubling_change={:.3e}",
            pk.zone,
            pk.e0(),
            pk.p0,
            quad.n_p,
            series.r_min(),
            series.r_max(),
            series.r[series.r.len() - 1],
            series.norm_drift(),
            change
        );
    }
    Ok(())
}

fn emit(table: &Table, common: &Common) -> Result<(), Failure> {
    match &common.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(common.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            table.write(common.format, stdout.lock())?;
        }
    }
    Ok(())
}
