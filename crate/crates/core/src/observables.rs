//! Site probabilities, the mean position, and the four basis-state
//! reference distributions `P^i_{|0j⟩}(β, x, t)`.

use serde::{Deserialize, Serialize};

use crate::coin::CoinParams;
use crate::walk::{evolve, InitialStateParams, WalkerState};
use crate::Result;

/// `P^L(x)` and `P^R(x)` over `x ∈ [-t, t]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub t: usize,
    pub pl: Vec<f64>,
    pub pr: Vec<f64>,
}

impl Distribution {
    pub fn from_state(s: &WalkerState) -> Self {
        let (pl, pr) = s.amplitudes().iter().map(|a| (a.l.norm_sqr(), a.r.norm_sqr())).unzip();
        Self { t: s.steps(), pl, pr }
    }

    fn index(&self, x: i64) -> Option<usize> {
        let t = self.t as i64;
        (-t..=t).contains(&x).then(|| (x + t) as usize)
    }

    pub fn pl_at(&self, x: i64) -> f64 {
        self.index(x).map_or(0.0, |i| self.pl[i])
    }

    pub fn pr_at(&self, x: i64) -> f64 {
        self.index(x).map_or(0.0, |i| self.pr[i])
    }

    /// `P^L(x) + P^R(x)`
    pub fn at(&self, x: i64) -> f64 {
        self.pl_at(x) + self.pr_at(x)
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> {
        let t = self.t as i64;
        -t..=t
    }

    pub fn total(&self) -> f64 {
        self.pl.iter().zip(&self.pr).map(|(l, r)| l + r).sum()
    }

    /// `Σ_x x (P^L(x) + P^R(x))`, summed in site order.
    pub fn mean_position(&self) -> f64 {
        let mut acc = 0.0;
        for ((x, l), r) in self.positions().zip(&self.pl).zip(&self.pr) {
            acc += x as f64 * (l + r);
        }
        acc
    }
}

pub fn distribution(s: &WalkerState) -> Distribution {
    Distribution::from_state(s)
}

pub fn mean_position(d: &Distribution) -> f64 {
    d.mean_position()
}

/// Distributions of the `|0L⟩` and `|0R⟩` walks under `U(0, β, 0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisDistributions {
    pub beta: f64,
    pub t: usize,
    pub from_left: Distribution,
    pub from_right: Distribution,
}

impl BasisDistributions {
    /// `P^L_{|0L⟩}(x)`
    pub fn pl_from_left(&self, x: i64) -> f64 {
        self.from_left.pl_at(x)
    }

    /// `P^R_{|0L⟩}(x)`
    pub fn pr_from_left(&self, x: i64) -> f64 {
        self.from_left.pr_at(x)
    }

    /// `P^L_{|0R⟩}(x)`
    pub fn pl_from_right(&self, x: i64) -> f64 {
        self.from_right.pl_at(x)
    }

    /// `P^R_{|0R⟩}(x)`
    pub fn pr_from_right(&self, x: i64) -> f64 {
        self.from_right.pr_at(x)
    }

    /// Largest deviation from the mirror relations
    /// `P^L_{|0L⟩}(x) = P^R_{|0R⟩}(-x)` and `P^R_{|0L⟩}(x) = P^L_{|0R⟩}(-x)`.
    pub fn mirror_defect(&self) -> f64 {
        self.from_left
            .positions()
            .map(|x| {
                let a = (self.pl_from_left(x) - self.pr_from_right(-x)).abs();
                let b = (self.pr_from_left(x) - self.pl_from_right(-x)).abs();
                a.max(b)
            })
            .fold(0.0, f64::max)
    }
}

pub fn basis_distributions(beta: f64, t: usize) -> Result<BasisDistributions> {
    let coin = CoinParams::real(beta);
    let from_left = distribution(&evolve(&InitialStateParams::left(), &coin, t)?);
    let from_right = distribution(&evolve(&InitialStateParams::right(), &coin, t)?);
    Ok(BasisDistributions { beta, t, from_left, from_right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::make_coin;
    use crate::walk::initial_state;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn point_mass_at_origin() {
        let d = distribution(&initial_state(&InitialStateParams::left()));
        assert_eq!(d.pl, vec![1.0]);
        assert_eq!(d.pr, vec![0.0]);
        assert_eq!(d.mean_position(), 0.0);
    }

    #[test]
    fn hadamard_one_step_split() {
        let h = make_coin(&CoinParams::hadamard()).unwrap();
        let d = distribution(&initial_state(&InitialStateParams::left()).step(&h));
        assert!((d.pl_at(-1) - 0.5).abs() < 1e-15);
        assert!((d.pr_at(1) - 0.5).abs() < 1e-15);
        assert_eq!(d.pr_at(-1), 0.0);
        assert_eq!(d.pl_at(1), 0.0);
    }

    #[test]
    fn hadamard_three_step_means() {
        let d = distribution(&evolve(&InitialStateParams::left(), &CoinParams::hadamard(), 3).unwrap());
        for (x, want) in [(-3, 0.125), (-1, 0.625), (1, 0.125), (3, 0.125)] {
            assert!((d.at(x) - want).abs() < 1e-15);
        }
        assert!((mean_position(&d) + 0.5).abs() < 1e-15);

        let d = distribution(&evolve(&InitialStateParams::symmetric(), &CoinParams::hadamard(), 3).unwrap());
        assert!((mean_position(&d) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ballistic_without_mixing() {
        for t in [0usize, 1, 7, 40] {
            let d = distribution(&evolve(&InitialStateParams::left(), &CoinParams::real(0.0), t).unwrap());
            assert_eq!(mean_position(&d), -(t as f64));
        }
    }

    #[test]
    fn basis_examples() {
        let b = basis_distributions(FRAC_PI_4, 1).unwrap();
        assert!((b.pl_from_left(-1) - 0.5).abs() < 1e-15);
        assert!((b.pr_from_left(1) - 0.5).abs() < 1e-15);
        assert!((b.pl_from_right(-1) - 0.5).abs() < 1e-15);
        assert!((b.pr_from_right(1) - 0.5).abs() < 1e-15);

        let t = 9;
        let b = basis_distributions(0.0, t).unwrap();
        assert_eq!(b.pl_from_left(-(t as i64)), 1.0);
        let rest: f64 = b.from_left.total() - b.pl_from_left(-(t as i64));
        assert_eq!(rest, 0.0);
    }

    #[test]
    fn out_of_range_sites_read_zero() {
        let b = basis_distributions(FRAC_PI_4, 2).unwrap();
        assert_eq!(b.pl_from_left(5), 0.0);
        assert_eq!(b.from_right.at(-3), 0.0);
    }
}
