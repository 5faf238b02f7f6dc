//! The SU(2) coin and its action on a single spinor.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coin angles in radians, stored exactly as given.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CoinParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = Self { alpha, beta, gamma };
        p.validate()?;
        Ok(p)
    }

    /// `U(0, β, 0)`, the real coin used for the reference walks.
    pub fn real(beta: f64) -> Self {
        Self { alpha: 0.0, beta, gamma: 0.0 }
    }

    /// The Hadamard-like coin `U(0, π/4, 0)`.
    pub fn hadamard() -> Self {
        Self::real(std::f64::consts::FRAC_PI_4)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("coin angle {name} = {v} is not finite")));
            }
        }
        Ok(())
    }
}

/// Two-component amplitude in the {L, R} coin basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Spinor {
    pub l: Complex64,
    pub r: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor { l: Complex64 { re: 0.0, im: 0.0 }, r: Complex64 { re: 0.0, im: 0.0 } };

    pub fn new(l: Complex64, r: Complex64) -> Self {
        Self { l, r }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.l.norm_sqr() + self.r.norm_sqr()
    }
}

/// A 2×2 complex matrix acting on [`Spinor`]s, rows/columns ordered (L, R).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinMatrix {
    pub ll: Complex64,
    pub lr: Complex64,
    pub rl: Complex64,
    pub rr: Complex64,
}

impl CoinMatrix {
    pub const IDENTITY: CoinMatrix = CoinMatrix {
        ll: Complex64 { re: 1.0, im: 0.0 },
        lr: Complex64 { re: 0.0, im: 0.0 },
        rl: Complex64 { re: 0.0, im: 0.0 },
        rr: Complex64 { re: 1.0, im: 0.0 },
    };

    pub fn determinant(&self) -> Complex64 {
        self.ll * self.rr - self.lr * self.rl
    }

    pub fn adjoint(&self) -> CoinMatrix {
        CoinMatrix { ll: self.ll.conj(), lr: self.rl.conj(), rl: self.lr.conj(), rr: self.rr.conj() }
    }

    pub fn matmul(&self, other: &CoinMatrix) -> CoinMatrix {
        CoinMatrix {
            ll: self.ll * other.ll + self.lr * other.rl,
            lr: self.ll * other.lr + self.lr * other.rr,
            rl: self.rl * other.ll + self.rr * other.rl,
            rr: self.rl * other.lr + self.rr * other.rr,
        }
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().matmul(self);
        let one = Complex64::new(1.0, 0.0);
        [(p.ll - one).norm(), p.lr.norm(), p.rl.norm(), (p.rr - one).norm()].into_iter().fold(0.0, f64::max)
    }

    #[inline(always)]
    pub fn apply(&self, s: Spinor) -> Spinor {
        Spinor { l: self.ll * s.l + self.lr * s.r, r: self.rl * s.l + self.rr * s.r }
    }
}

/// Builds `U(α, β, γ)`.
pub fn make_coin(params: &CoinParams) -> Result<CoinMatrix> {
    params.validate()?;
    let (sb, cb) = params.beta.sin_cos();
    let ea = Complex64::from_polar(1.0, params.alpha);
    let eg = Complex64::from_polar(1.0, params.gamma);
    Ok(CoinMatrix { ll: ea * cb, lr: -eg.conj() * sb, rl: eg * sb, rr: ea.conj() * cb })
}

pub fn apply_coin(coin: &CoinMatrix, s: Spinor) -> Spinor {
    coin.apply(s)
}
