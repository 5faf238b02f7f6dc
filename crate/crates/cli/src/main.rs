//! `qwalk`: single walks, sweeps, figure presets and seeded verification.
//!
//! Exit status: 0 on success, 1 when verification fails, 2 on invalid input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qwalk::{
    compute_baseline, distribution, evolve, predict_mean, run_phase_sweep, run_theta_sweep, run_verify,
    AngleUnit, CoinParams, Figure, Grid, InitialStateParams, SweepAxis, SweepSpec, SweepTable, VerifyConfig,
};

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Discrete-time quantum walks with an SU(2) coin")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one walk and write its site distribution as CSV.
    Walk {
        #[command(flatten)]
        angles: Angles,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one state angle and tabulate simulated vs predicted mean.
    Sweep {
        #[command(flatten)]
        angles: Angles,
        /// Swept angle: phi, varphi or theta.
        #[arg(long, default_value = "phi")]
        axis: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// start:stop:step in degrees (radians with --radians). Defaults to a full 1° turn.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the two-baseline prediction with direct simulation on seeded random tuples.
    Verify {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Comma-separated step counts.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,25,100")]
        steps: Vec<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the four figure presets and write CSV.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        number: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Angles {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 45.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = 45.0, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    varphi: f64,
    /// Read every angle (and the grid) in radians instead of degrees.
    #[arg(long)]
    radians: bool,
}

impl Angles {
    fn unit(&self) -> AngleUnit {
        if self.radians {
            AngleUnit::Radians
        } else {
            AngleUnit::Degrees
        }
    }

    fn coin(&self) -> qwalk::Result<CoinParams> {
        let u = self.unit();
        CoinParams::new(u.to_radians(self.alpha), u.to_radians(self.beta), u.to_radians(self.gamma))
    }

    fn state(&self) -> qwalk::Result<InitialStateParams> {
        let u = self.unit();
        InitialStateParams::new(u.to_radians(self.theta), u.to_radians(self.phi), u.to_radians(self.varphi))
    }
}

fn emit(text: &str, out: Option<&Path>) -> qwalk::Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn walk(angles: &Angles, steps: usize, out: Option<&Path>) -> qwalk::Result<()> {
    let coin = angles.coin()?;
    let state = angles.state()?;
    let d = distribution(&evolve(&state, &coin, steps)?);
    let mean = d.mean_position();
    let predicted = predict_mean(&state, &coin, &compute_baseline(coin.beta, steps)?)?;

    let mut text = String::new();
    writeln!(text, "# mode=walk").unwrap();
    writeln!(text, "# unit={}", angles.unit()).unwrap();
    writeln!(text, "# alpha_rad={}", coin.alpha).unwrap();
    writeln!(text, "# beta_rad={}", coin.beta).unwrap();
    writeln!(text, "# gamma_rad={}", coin.gamma).unwrap();
    writeln!(text, "# theta_rad={}", state.theta).unwrap();
    writeln!(text, "# phi_rad={}", state.phi).unwrap();
    writeln!(text, "# varphi_rad={}", state.varphi).unwrap();
    writeln!(text, "# t={steps}").unwrap();
    writeln!(text, "# mean={mean:.16e}").unwrap();
    writeln!(text, "# predicted={predicted:.16e}").unwrap();
    writeln!(text, "# total_probability={:.16e}", d.total()).unwrap();
    writeln!(text, "x,pl,pr").unwrap();
    for ((x, pl), pr) in d.positions().zip(&d.pl).zip(&d.pr) {
        writeln!(text, "{x},{pl:.16e},{pr:.16e}").unwrap();
    }
    emit(&text, out)?;
    if out.is_some() {
        println!("mean = {mean}, predicted = {predicted}");
    }
    Ok(())
}

fn sweep(
    angles: &Angles,
    axis: &str,
    steps: usize,
    grid: Option<&str>,
    out: Option<&Path>,
) -> qwalk::Result<()> {
    let axis: SweepAxis = axis.parse()?;
    let unit = angles.unit();
    let grid = match grid {
        Some(g) => Grid::parse(g, unit)?,
        None => {
            let stop = if axis == SweepAxis::Theta { 180.0 } else { 360.0 };
            Grid::new(unit.to_radians(0.0), unit.to_radians(stop), unit.to_radians(1.0), unit)?
        }
    };
    let spec = SweepSpec { axis, coin: angles.coin()?, state: angles.state()?, t: steps, grid };
    let mut table = match axis {
        SweepAxis::Theta => run_theta_sweep(&spec)?,
        _ => run_phase_sweep(&spec)?,
    };
    table.meta.insert(1, ("unit".into(), unit.to_string()));
    emit(&table.to_csv(), out)
}

fn verify(cfg: &VerifyConfig, out: Option<&Path>) -> qwalk::Result<bool> {
    let report = run_verify(cfg)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    emit(&(json + "\n"), out)?;
    eprintln!(
        "seed {} | {} samples x {} step counts | max abs error {:.3e} | {}",
        report.seed,
        report.samples,
        report.steps.len(),
        report.max_abs_error,
        if report.pass { "PASS" } else { "FAIL" }
    );
    Ok(report.pass)
}

fn table_path(out: &Path, label: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("figure");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}_{label}.{ext}"))
}

fn figure(number: u8, out: Option<&Path>) -> qwalk::Result<()> {
    let fig = Figure::from_number(number)?.run()?;
    let multi = fig.tables.len() > 1;
    let mut tables: Vec<(String, SweepTable)> = fig.tables;
    if let Some(shift) = fig.peak_shift_deg {
        for (_, t) in &mut tables {
            t.push_meta("peak_shift_deg", shift);
        }
        eprintln!("peak shift = {shift} deg");
    }
    for (label, table) in &tables {
        let mut table = table.clone();
        table.meta.insert(1, ("table".into(), label.clone()));
        match out {
            Some(path) if multi => emit(&table.to_csv(), Some(&table_path(path, label)))?,
            Some(path) => emit(&table.to_csv(), Some(path))?,
            None => emit(&table.to_csv(), None)?,
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Walk { angles, steps, out } => walk(angles, *steps, out.as_deref()).map(|_| true),
        Command::Sweep { angles, axis, steps, grid, out } => {
            sweep(angles, axis, *steps, grid.as_deref(), out.as_deref()).map(|_| true)
        }
        Command::Verify { samples, steps, tol, seed, out } => verify(
            &VerifyConfig { samples: *samples, steps: steps.clone(), tol: *tol, seed: *seed },
            out.as_deref(),
        ),
        Command::Figure { number, out } => figure(*number, out.as_deref()).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
