//! Two-baseline prediction of the mean position.
//!
//! For the initial spinor `cos θ e^{iφ}|0L⟩ + sin θ e^{iφ'}|0R⟩` and coin
//! `U(α, β, γ)`, the mean position after `t` steps is
//!
//! ```text
//! x̄ = cos 2θ · A + sin 2θ · cos(α + γ + φ − φ') · B₀
//! ```
//!
//! with `A` the mean of the `|0L⟩` walk and `B₀` the mean of the
//! `(|0L⟩ + |0R⟩)/√2` walk, both under `U(0, β, 0)`. The two baselines are
//! obtained by direct simulation; nothing here evaluates the per-site
//! interference terms analytically.
//!
//! Writing `B = cos(α + γ + φ − φ') · B₀`, the θ-dependence collapses to one
//! shifted cosine `√(A² + B²) · cos(2θ − ω)` ([`PhaseForm`]).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::coin::CoinParams;
use crate::observables::distribution;
use crate::walk::{evolve, InitialStateParams};
use crate::{Error, Result};

/// Allowed disagreement between the baseline's β and the coin's β.
const BETA_MATCH_TOL: f64 = 1e-12;

/// The two reference means at a fixed `(β, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    pub beta: f64,
    pub t: usize,
    /// Mean position of the `|0L⟩` walk.
    pub a: f64,
    /// Mean position of the `(|0L⟩ + |0R⟩)/√2` walk.
    pub b0: f64,
}

pub fn compute_baseline(beta: f64, t: usize) -> Result<Baseline> {
    let coin = CoinParams::real(beta);
    coin.validate()?;
    let a = distribution(&evolve(&InitialStateParams::left(), &coin, t)?).mean_position();
    let b0 = distribution(&evolve(&InitialStateParams::symmetric(), &coin, t)?).mean_position();
    Ok(Baseline { beta, t, a, b0 })
}

/// `α + γ + φ − φ'`, the only combination of phases the mean depends on.
///
/// Grouped as `(α + γ) + (φ − φ')` so that equal sums and equal differences
/// give bit-identical results.
pub fn relative_phase(p: &InitialStateParams, c: &CoinParams) -> f64 {
    (c.alpha + c.gamma) + (p.phi - p.varphi)
}

fn check_beta(b: &Baseline, c: &CoinParams) -> Result<()> {
    if (b.beta - c.beta).abs() > BETA_MATCH_TOL {
        return Err(Error::InvalidArgument(format!(
            "baseline computed for beta = {} but coin has beta = {}",
            b.beta, c.beta
        )));
    }
    Ok(())
}

pub fn predict_mean(p: &InitialStateParams, c: &CoinParams, b: &Baseline) -> Result<f64> {
    check_beta(b, c)?;
    let two_theta = 2.0 * p.theta;
    Ok(two_theta.cos() * b.a + two_theta.sin() * relative_phase(p, c).cos() * b.b0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionResult {
    pub predicted: f64,
    pub simulated: f64,
    pub abs_error: f64,
    pub pass: bool,
}

impl PredictionResult {
    pub fn new(predicted: f64, simulated: f64, tol: f64) -> Self {
        let abs_error = (predicted - simulated).abs();
        Self { predicted, simulated, abs_error, pass: abs_error <= tol * simulated.abs().max(1.0) }
    }
}

/// Simulates the walk directly and compares with the prediction from a
/// freshly computed baseline.
pub fn verify_decomposition(
    p: &InitialStateParams,
    c: &CoinParams,
    t: usize,
    tol: f64,
) -> Result<PredictionResult> {
    let b = compute_baseline(c.beta, t)?;
    verify_with_baseline(p, c, &b, tol)
}

pub fn verify_with_baseline(
    p: &InitialStateParams,
    c: &CoinParams,
    b: &Baseline,
    tol: f64,
) -> Result<PredictionResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let simulated = distribution(&evolve(p, c, b.t)?).mean_position();
    let predicted = predict_mean(p, c, b)?;
    Ok(PredictionResult::new(predicted, simulated, tol))
}

/// `x̄(θ) = amplitude · cos(2θ − omega)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseForm {
    pub amplitude: f64,
    pub omega: f64,
}

impl PhaseForm {
    /// From the coefficients of `A cos 2θ + B sin 2θ`.
    pub fn from_coefficients(a: f64, b: f64) -> Self {
        if a == 0.0 && b == 0.0 {
            return Self { amplitude: 0.0, omega: 0.0 };
        }
        // -0.0 would flip atan2 to -π on the negative axis
        let b = if b == 0.0 { 0.0 } else { b };
        Self { amplitude: a.hypot(b), omega: b.atan2(a) }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.amplitude * (2.0 * theta - self.omega).cos()
    }

    /// `(A, B)` reconstructed from amplitude and angle.
    pub fn coefficients(&self) -> (f64, f64) {
        let (s, c) = self.omega.sin_cos();
        (self.amplitude * c, self.amplitude * s)
    }
}

pub fn phase_form(b: &Baseline, c: &CoinParams, phi: f64, varphi: f64) -> Result<PhaseForm> {
    check_beta(b, c)?;
    let p = InitialStateParams { theta: 0.0, phi, varphi };
    let coeff_b = relative_phase(&p, c).cos() * b.b0;
    Ok(PhaseForm::from_coefficients(b.a, coeff_b))
}

/// Baselines keyed by `(β bits, t)`, safe to share between threads.
#[derive(Clone, Debug, Default)]
pub struct BaselineCache {
    inner: Arc<Mutex<HashMap<(u64, usize), Baseline>>>,
}

impl BaselineCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, beta: f64, t: usize) -> Result<Baseline> {
        let key = (beta.to_bits(), t);
        if let Some(b) = self.inner.lock().unwrap().get(&key) {
            return Ok(*b);
        }
        // computed outside the lock; a racing insert stores an identical value
        let b = compute_baseline(beta, t)?;
        self.inner.lock().unwrap().entry(key).or_insert(b);
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
