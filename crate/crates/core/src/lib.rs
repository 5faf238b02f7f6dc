//! Exact state-vector simulation of discrete-time quantum walks on the
//! integer line.
//!
//! The walker carries a two-component spinor (L, R) on every lattice site.
//! Each step applies the SU(2) coin
//!
//! ```text
//! U(α, β, γ) = [ e^{iα} cos β   -e^{-iγ} sin β ]
//!              [ e^{iγ} sin β    e^{-iα} cos β ]
//! ```
//!
//! to every spinor and then moves the L component one site left and the R
//! component one site right. On top of the simulator sits a two-baseline
//! predictor for the mean position: for the initial spinor
//! `cos θ e^{iφ}|0L⟩ + sin θ e^{iφ'}|0R⟩`
//!
//! ```text
//! x̄ = cos 2θ · A(β, t) + sin 2θ · cos(α + γ + φ − φ') · B₀(β, t)
//! ```
//!
//! where `A` and `B₀` are the mean positions of two reference walks with
//! coin `U(0, β, 0)`. See [`closed_form`].

pub mod closed_form;
pub mod coin;
mod error;
pub mod observables;
pub mod sweep;
pub mod table;
pub mod walk;

pub use closed_form::{
    compute_baseline, phase_form, predict_mean, verify_decomposition, Baseline, BaselineCache, PhaseForm,
    PredictionResult,
};
pub use coin::{apply_coin, make_coin, CoinMatrix, CoinParams, Spinor};
pub use error::{Error, Result};
pub use observables::{basis_distributions, distribution, mean_position, BasisDistributions, Distribution};
pub use sweep::{
    peak_shift, run_phase_sweep, run_sweep, run_theta_sweep, run_verify, Figure, SweepAxis, SweepSpec,
    VerifyConfig, VerifyReport,
};
pub use table::{AngleUnit, Grid, SweepRow, SweepTable};
pub use walk::{
    evolve, evolve_bounded, initial_state, step, InitialStateParams, WalkerState, DEFAULT_MAX_STEPS,
};
