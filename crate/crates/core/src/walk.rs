//! Amplitude field of the walker and its coin-then-shift evolution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::{make_coin, CoinMatrix, CoinParams, Spinor};
use crate::{Error, Result};

/// Upper bound on the step count accepted by [`evolve`].
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// Angles of the initial spinor `cos θ e^{iφ}|0L⟩ + sin θ e^{iφ'}|0R⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialStateParams {
    pub theta: f64,
    pub phi: f64,
    pub varphi: f64,
}

impl InitialStateParams {
    pub fn new(theta: f64, phi: f64, varphi: f64) -> Result<Self> {
        let p = Self { theta, phi, varphi };
        p.validate()?;
        Ok(p)
    }

    /// `|0L⟩`
    pub fn left() -> Self {
        Self { theta: 0.0, phi: 0.0, varphi: 0.0 }
    }

    /// `|0R⟩`
    pub fn right() -> Self {
        Self { theta: std::f64::consts::FRAC_PI_2, phi: 0.0, varphi: 0.0 }
    }

    /// `(|0L⟩ + |0R⟩)/√2`
    pub fn symmetric() -> Self {
        Self { theta: std::f64::consts::FRAC_PI_4, phi: 0.0, varphi: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("theta", self.theta), ("phi", self.phi), ("varphi", self.varphi)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("state angle {name} = {v} is not finite")));
            }
        }
        Ok(())
    }

    pub fn spinor(&self) -> Spinor {
        let (s, c) = self.theta.sin_cos();
        Spinor { l: Complex64::from_polar(c, self.phi), r: Complex64::from_polar(s, self.varphi) }
    }
}

/// Snapshot of the walk after `t` steps: one spinor per site `x ∈ [-t, t]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkerState {
    t: usize,
    amps: Vec<Spinor>,
}

impl WalkerState {
    /// A `t = 0` state holding `spinor` at the origin.
    pub fn at_origin(spinor: Spinor) -> Self {
        Self { t: 0, amps: vec![spinor] }
    }

    pub fn steps(&self) -> usize {
        self.t
    }

    /// Amplitudes in site order, index `i` is position `i - t`.
    pub fn amplitudes(&self) -> &[Spinor] {
        &self.amps
    }

    /// Amplitude at position `x`; zero outside the light cone.
    pub fn amplitude(&self, x: i64) -> Spinor {
        let t = self.t as i64;
        if x < -t || x > t {
            return Spinor::ZERO;
        }
        self.amps[(x + t) as usize]
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        let t = self.t as i64;
        -t..=t
    }

    pub fn total_probability(&self) -> f64 {
        self.amps.iter().map(Spinor::norm_sqr).sum()
    }

    /// One coin-then-shift step into a fresh `2t + 3` array.
    pub fn step(&self, coin: &CoinMatrix) -> WalkerState {
        let mut next = vec![Spinor::ZERO; self.amps.len() + 2];
        // site x = i - t moves L to x - 1 (new index i) and R to x + 1 (new index i + 2)
        for (i, s) in self.amps.iter().enumerate() {
            let c = coin.apply(*s);
            next[i].l += c.l;
            next[i + 2].r += c.r;
        }
        WalkerState { t: self.t + 1, amps: next }
    }

    /// `t` further steps with a fixed coin.
    pub fn evolve(self, coin: &CoinMatrix, t: usize) -> WalkerState {
        (0..t).fold(self, |s, _| s.step(coin))
    }
}

pub fn initial_state(p: &InitialStateParams) -> WalkerState {
    WalkerState::at_origin(p.spinor())
}

pub fn step(state: &WalkerState, coin: &CoinMatrix) -> WalkerState {
    state.step(coin)
}

/// Runs `t` steps of `U(α, β, γ)` from the initial spinor described by `p`.
pub fn evolve(p: &InitialStateParams, c: &CoinParams, t: usize) -> Result<WalkerState> {
    evolve_bounded(p, c, t, DEFAULT_MAX_STEPS)
}

/// [`evolve`] with an explicit step limit.
pub fn evolve_bounded(
    p: &InitialStateParams,
    c: &CoinParams,
    t: usize,
    max_steps: usize,
) -> Result<WalkerState> {
    if t > max_steps {
        return Err(Error::InvalidParameter(format!("step count {t} exceeds the limit {max_steps}")));
    }
    p.validate()?;
    let coin = make_coin(c)?;
    Ok(initial_state(p).evolve(&coin, t))
}
