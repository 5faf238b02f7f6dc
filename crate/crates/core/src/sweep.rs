//! Parameter sweeps, figure presets, peak-shift measurement and the seeded
//! verification run.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{predict_mean, verify_with_baseline, BaselineCache};
use crate::coin::CoinParams;
use crate::observables::distribution;
use crate::table::{Grid, SweepRow, SweepTable};
use crate::walk::{evolve, InitialStateParams};
use crate::{Error, Result};

/// Step count used by every figure preset.
pub const FIGURE_STEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    Phi,
    Varphi,
    Theta,
}

impl SweepAxis {
    fn apply(self, base: &InitialStateParams, value: f64) -> InitialStateParams {
        let mut p = *base;
        match self {
            SweepAxis::Phi => p.phi = value,
            SweepAxis::Varphi => p.varphi = value,
            SweepAxis::Theta => p.theta = value,
        }
        p
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::Phi => "phi",
            SweepAxis::Varphi => "varphi",
            SweepAxis::Theta => "theta",
        })
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(SweepAxis::Phi),
            "varphi" => Ok(SweepAxis::Varphi),
            "theta" => Ok(SweepAxis::Theta),
            _ => Err(Error::InvalidSpec(format!("unknown sweep axis {s:?} (phi, varphi, theta)"))),
        }
    }
}

/// One-dimensional sweep: `state` supplies the fixed angles, the field named
/// by `axis` is replaced by each grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub coin: CoinParams,
    pub state: InitialStateParams,
    pub t: usize,
    pub grid: Grid,
}

impl SweepSpec {
    fn mode(&self) -> &'static str {
        match self.axis {
            SweepAxis::Theta => "theta-sweep",
            _ => "phase-sweep",
        }
    }
}

/// Runs any sweep. Grid points are evaluated in parallel; rows come back in
/// grid order.
pub fn run_sweep(spec: &SweepSpec, cache: &BaselineCache) -> Result<SweepTable> {
    spec.grid.validate()?;
    spec.coin.validate()?;
    spec.state.validate()?;
    let baseline = cache.get(spec.coin.beta, spec.t)?;

    let values: Vec<f64> = spec.grid.values().collect();
    let rows = values
        .par_iter()
        .map(|&v| {
            let p = spec.axis.apply(&spec.state, spec.grid.unit.to_radians(v));
            let mean = distribution(&evolve(&p, &spec.coin, spec.t)?).mean_position();
            let predicted = predict_mean(&p, &spec.coin, &baseline)?;
            Ok(SweepRow::new(spec.grid.unit.to_degrees(v), mean, predicted))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = SweepTable { meta: Vec::new(), rows };
    table.push_meta("mode", spec.mode());
    table.push_meta("axis", spec.axis);
    table.push_meta("alpha_rad", spec.coin.alpha);
    table.push_meta("beta_rad", spec.coin.beta);
    table.push_meta("gamma_rad", spec.coin.gamma);
    if spec.axis != SweepAxis::Theta {
        table.push_meta("theta_rad", spec.state.theta);
    }
    if spec.axis != SweepAxis::Phi {
        table.push_meta("phi_rad", spec.state.phi);
    }
    if spec.axis != SweepAxis::Varphi {
        table.push_meta("varphi_rad", spec.state.varphi);
    }
    table.push_meta("t", spec.t);
    table.push_meta("grid", spec.grid);
    table.push_meta("grid_step_deg", spec.grid.step_degrees());
    table.push_meta("baseline_a", baseline.a);
    table.push_meta("baseline_b0", baseline.b0);
    Ok(table)
}

/// Sweep over `φ` or `φ'`.
pub fn run_phase_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    if spec.axis == SweepAxis::Theta {
        return Err(Error::InvalidSpec("phase sweep needs axis phi or varphi".into()));
    }
    run_sweep(spec, &BaselineCache::new())
}

pub fn run_theta_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    if spec.axis != SweepAxis::Theta {
        return Err(Error::InvalidSpec("theta sweep needs axis theta".into()));
    }
    run_sweep(spec, &BaselineCache::new())
}

/// Circular distance from the peak of `reference` to the peak of `shifted`,
/// in degrees within (-180, 180].
pub fn peak_shift(reference: &SweepTable, shifted: &SweepTable) -> Result<f64> {
    let same_grid = reference.rows.len() == shifted.rows.len()
        && reference
            .rows
            .iter()
            .zip(&shifted.rows)
            .all(|(a, b)| a.swept_deg.to_bits() == b.swept_deg.to_bits());
    if !same_grid {
        return Err(Error::InvalidArgument("peak_shift needs two tables on the same grid".into()));
    }
    let peak = |t: &SweepTable| {
        t.rows
            .iter()
            .filter(|r| !r.mean.is_nan())
            .fold(None::<&SweepRow>, |best, r| match best {
                Some(b) if b.mean >= r.mean => Some(b),
                _ => Some(r),
            })
            .map(|r| r.swept_deg)
            .ok_or_else(|| Error::InvalidArgument("table has no finite rows".into()))
    };
    Ok(wrap_degrees(peak(shifted)? - peak(reference)?))
}

/// Maps an angle in degrees into (-180, 180].
pub fn wrap_degrees(d: f64) -> f64 {
    let w = d.rem_euclid(360.0);
    if w > 180.0 {
        w - 360.0
    } else {
        w
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub samples: usize,
    pub steps: Vec<usize>,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { samples: 200, steps: vec![1, 2, 3, 25, 100], tol: 1e-9, seed: 0x5eed_0a11 }
    }
}

/// One parameter tuple checked at one step count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub sample: usize,
    pub t: usize,
    pub state: InitialStateParams,
    pub coin: CoinParams,
    pub predicted: f64,
    pub simulated: f64,
    pub abs_error: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub steps: Vec<usize>,
    pub tol: f64,
    pub max_abs_error: f64,
    pub pass: bool,
    pub entries: Vec<VerifyEntry>,
}

/// Draws `n` tuples: θ, φ, φ', α, γ uniform in [0, 2π), β uniform in (0, π/2).
pub fn sample_tuples(n: usize, seed: u64) -> Vec<(InitialStateParams, CoinParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = 2.0 * PI;
    (0..n)
        .map(|_| {
            let theta = rng.gen_range(0.0..tau);
            let phi = rng.gen_range(0.0..tau);
            let varphi = rng.gen_range(0.0..tau);
            let alpha = rng.gen_range(0.0..tau);
            let gamma = rng.gen_range(0.0..tau);
            let mut beta = rng.gen_range(0.0..FRAC_PI_2);
            while beta == 0.0 {
                beta = rng.gen_range(0.0..FRAC_PI_2);
            }
            (InitialStateParams { theta, phi, varphi }, CoinParams { alpha, beta, gamma })
        })
        .collect()
}

/// Checks the two-baseline prediction against direct simulation for
/// explicit tuples.
pub fn run_verify_cases(
    cases: &[(InitialStateParams, CoinParams)],
    steps: &[usize],
    tol: f64,
    seed: u64,
) -> Result<VerifyReport> {
    if cases.is_empty() {
        return Err(Error::InvalidParameter("verification needs at least one sample".into()));
    }
    if steps.is_empty() {
        return Err(Error::InvalidParameter("verification needs at least one step count".into()));
    }
    let cache = BaselineCache::new();
    let jobs: Vec<(usize, usize)> =
        (0..cases.len()).flat_map(|i| steps.iter().map(move |&t| (i, t))).collect();
    let entries = jobs
        .par_iter()
        .map(|&(i, t)| {
            let (state, coin) = cases[i];
            let b = cache.get(coin.beta, t)?;
            let r = verify_with_baseline(&state, &coin, &b, tol)?;
            Ok(VerifyEntry {
                sample: i,
                t,
                state,
                coin,
                predicted: r.predicted,
                simulated: r.simulated,
                abs_error: r.abs_error,
                pass: r.pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_abs_error = entries.iter().map(|e| e.abs_error).fold(0.0, f64::max);
    let pass = entries.iter().all(|e| e.pass);
    Ok(VerifyReport { seed, samples: cases.len(), steps: steps.to_vec(), tol, max_abs_error, pass, entries })
}

/// Seeded random verification; identical configs give identical reports.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    run_verify_cases(&sample_tuples(cfg.samples, cfg.seed), &cfg.steps, cfg.tol, cfg.seed)
}

/// Fixed sweep presets at `t = 100` on 1° grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Figure {
    /// Mean vs `φ'` at `φ = 0`, state θ = π/4, coin `U(0, π/4, 0)`.
    One,
    /// Mean vs `φ` at `φ' = 0`, same state and coin, against `B₀ cos(φ − φ')`.
    Two,
    /// The Fig. Two sweep for coins `U(0°, 45°, 0°)` and `U(52°, 45°, 77°)`.
    Three,
    /// Mean vs θ for the state `(θ, π/2, 0)`, coin `U(0, π/4, 0)`.
    Four,
}

impl Figure {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Figure::One),
            2 => Ok(Figure::Two),
            3 => Ok(Figure::Three),
            4 => Ok(Figure::Four),
            _ => Err(Error::InvalidSpec(format!("no figure {n}; expected 1-4"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Figure::One => 1,
            Figure::Two => 2,
            Figure::Three => 3,
            Figure::Four => 4,
        }
    }

    /// Sweep specs for this figure, paired with a short label.
    pub fn specs(self) -> Vec<(&'static str, SweepSpec)> {
        let phase_grid = Grid::degrees(0.0, 360.0, 1.0).unwrap();
        let phase = |axis, coin| SweepSpec {
            axis,
            coin,
            state: InitialStateParams { theta: FRAC_PI_4, phi: 0.0, varphi: 0.0 },
            t: FIGURE_STEPS,
            grid: phase_grid,
        };
        match self {
            Figure::One => vec![("varphi", phase(SweepAxis::Varphi, CoinParams::hadamard()))],
            Figure::Two => vec![("phi", phase(SweepAxis::Phi, CoinParams::hadamard()))],
            Figure::Three => vec![
                ("reference", phase(SweepAxis::Phi, CoinParams::real(45f64.to_radians()))),
                (
                    "shifted",
                    phase(
                        SweepAxis::Phi,
                        CoinParams {
                            alpha: 52f64.to_radians(),
                            beta: 45f64.to_radians(),
                            gamma: 77f64.to_radians(),
                        },
                    ),
                ),
            ],
            Figure::Four => vec![(
                "theta",
                SweepSpec {
                    axis: SweepAxis::Theta,
                    coin: CoinParams::hadamard(),
                    state: InitialStateParams { theta: 0.0, phi: FRAC_PI_2, varphi: 0.0 },
                    t: FIGURE_STEPS,
                    grid: Grid::degrees(0.0, 180.0, 1.0).unwrap(),
                },
            )],
        }
    }

    pub fn run(self) -> Result<FigureOutput> {
        let cache = BaselineCache::new();
        let mut tables = Vec::new();
        for (label, spec) in self.specs() {
            let mut table = run_sweep(&spec, &cache)?;
            table.meta.insert(0, ("figure".into(), self.number().to_string()));
            tables.push((label.to_string(), table));
        }
        let peak_shift_deg = match tables.as_slice() {
            [(_, a), (_, b)] => Some(peak_shift(a, b)?),
            _ => None,
        };
        Ok(FigureOutput { figure: self, tables, peak_shift_deg })
    }
}

#[derive(Clone, Debug)]
pub struct FigureOutput {
    pub figure: Figure,
    pub tables: Vec<(String, SweepTable)>,
    pub peak_shift_deg: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::AngleUnit;

    fn hadamard_phase_spec(grid: Grid) -> SweepSpec {
        SweepSpec {
            axis: SweepAxis::Phi,
            coin: CoinParams::hadamard(),
            state: InitialStateParams::symmetric(),
            t: 100,
            grid,
        }
    }

    #[test]
    fn phase_sweep_follows_cosine() {
        let table = run_phase_sweep(&hadamard_phase_spec(Grid::degrees(0.0, 360.0, 5.0).unwrap())).unwrap();
        assert_eq!(table.rows.len(), 73);
        let b0: f64 = table.meta("baseline_b0").unwrap().parse().unwrap();
        for r in &table.rows {
            assert!((r.mean - b0 * r.swept_deg.to_radians().cos()).abs() < 1e-9);
        }
        let at90 = table.rows.iter().find(|r| r.swept_deg == 90.0).unwrap();
        assert!(at90.mean.abs() < 1e-9);
    }

    #[test]
    fn theta_sweep_examples() {
        let spec = SweepSpec {
            axis: SweepAxis::Theta,
            coin: CoinParams::hadamard(),
            state: InitialStateParams { theta: 0.0, phi: FRAC_PI_2, varphi: 0.0 },
            t: 100,
            grid: Grid::degrees(0.0, 180.0, 2.0).unwrap(),
        };
        let table = run_theta_sweep(&spec).unwrap();
        let a: f64 = table.meta("baseline_a").unwrap().parse().unwrap();
        assert!(a < 0.0);
        for r in &table.rows {
            assert!((r.mean - a * (2.0 * r.swept_deg.to_radians()).cos()).abs() < 1e-9);
        }
        assert_eq!(table.rows[0].mean, a);

        let single = SweepSpec { grid: Grid::degrees(45.0, 45.0, 1.0).unwrap(), ..spec };
        assert!(run_theta_sweep(&single).unwrap().rows[0].mean.abs() < 1e-9);
    }

    #[test]
    fn sweep_axis_checks() {
        let mut spec = hadamard_phase_spec(Grid::degrees(0.0, 10.0, 5.0).unwrap());
        spec.axis = SweepAxis::Theta;
        assert!(matches!(run_phase_sweep(&spec), Err(Error::InvalidSpec(_))));
        spec.axis = SweepAxis::Phi;
        assert!(matches!(run_theta_sweep(&spec), Err(Error::InvalidSpec(_))));
        spec.grid.step = 0.0;
        assert!(matches!(run_phase_sweep(&spec), Err(Error::InvalidSpec(_))));
        assert_eq!("theta".parse::<SweepAxis>().unwrap(), SweepAxis::Theta);
        assert!("psi".parse::<SweepAxis>().is_err());
    }

    #[test]
    fn radian_grid_reports_degrees() {
        let grid = Grid::new(0.0, PI, FRAC_PI_2, AngleUnit::Radians).unwrap();
        let table = run_phase_sweep(&hadamard_phase_spec(grid)).unwrap();
        let swept: Vec<f64> = table.rows.iter().map(|r| r.swept_deg).collect();
        assert_eq!(swept, vec![0.0, 90.0, 180.0]);
    }

    #[test]
    fn rows_stay_in_grid_order() {
        let table = run_phase_sweep(&hadamard_phase_spec(Grid::degrees(0.0, 359.0, 1.0).unwrap())).unwrap();
        assert!(table.rows.windows(2).all(|w| w[0].swept_deg < w[1].swept_deg));
    }

    #[test]
    fn peak_shift_examples() {
        let grid = Grid::degrees(0.0, 360.0, 1.0).unwrap();
        let reference = run_phase_sweep(&hadamard_phase_spec(grid)).unwrap();
        assert_eq!(peak_shift(&reference, &reference).unwrap(), 0.0);

        let mut spec = hadamard_phase_spec(grid);
        spec.coin.alpha = FRAC_PI_2;
        let shifted = run_phase_sweep(&spec).unwrap();
        assert_eq!(peak_shift(&reference, &shifted).unwrap(), -90.0);

        let other = run_phase_sweep(&hadamard_phase_spec(Grid::degrees(0.0, 360.0, 2.0).unwrap())).unwrap();
        assert!(matches!(peak_shift(&reference, &other), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn wrap_range() {
        assert_eq!(wrap_degrees(231.0), -129.0);
        assert_eq!(wrap_degrees(180.0), 180.0);
        assert_eq!(wrap_degrees(-180.0), 180.0);
        assert_eq!(wrap_degrees(-360.0), 0.0);
        assert_eq!(wrap_degrees(-129.0), -129.0);
    }

    #[test]
    fn verify_is_reproducible() {
        let cfg = VerifyConfig { samples: 5, steps: vec![3, 10], tol: 1e-9, seed: 42 };
        let a = run_verify(&cfg).unwrap();
        let b = run_verify(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.entries.len(), 10);
        assert!(a.pass);
        assert!(run_verify(&VerifyConfig { samples: 0, ..cfg }).is_err());
    }

    #[test]
    fn verify_single_cases() {
        // θ = 0: prediction is exactly the |0L⟩ baseline
        let state = InitialStateParams { theta: 0.0, phi: 1.0, varphi: 2.0 };
        let coin = CoinParams { alpha: 0.4, beta: 0.6, gamma: 0.1 };
        let r = run_verify_cases(&[(state, coin)], &[25], 1e-9, 0).unwrap();
        let a = crate::closed_form::compute_baseline(0.6, 25).unwrap().a;
        assert_eq!(r.entries[0].predicted, a);
        assert!(r.pass);

        // β = 0: ballistic, mean is -t cos 2θ
        let state = InitialStateParams { theta: 0.3, phi: 0.5, varphi: 1.7 };
        let coin = CoinParams { alpha: 1.0, beta: 0.0, gamma: 2.0 };
        let r = run_verify_cases(&[(state, coin)], &[40], 1e-9, 0).unwrap();
        let e = r.entries[0];
        assert!((e.simulated + 40.0 * (0.6f64).cos()).abs() < 1e-12);
        assert!(e.abs_error < 1e-12);
    }

    #[test]
    fn figure_numbers() {
        for n in 1..=4 {
            assert_eq!(Figure::from_number(n).unwrap().number(), n);
        }
        assert!(Figure::from_number(5).is_err());
    }
}
