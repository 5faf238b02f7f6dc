//! Independent reference walk: sums amplitudes over every coin history.
//!
//! Builds the coin entries straight from the closed formula and never calls
//! the simulator, so it can serve as an oracle for small `t` (2^(t+1) paths).

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;

pub const L: usize = 0;
pub const R: usize = 1;

/// `m[out][in]` for `U(α, β, γ)`.
pub fn coin_entries(alpha: f64, beta: f64, gamma: f64) -> [[Complex64; 2]; 2] {
    let i = Complex64::new(0.0, 1.0);
    [
        [(i * alpha).exp() * beta.cos(), -(-i * gamma).exp() * beta.sin()],
        [(i * gamma).exp() * beta.sin(), (-i * alpha).exp() * beta.cos()],
    ]
}

/// Final amplitudes keyed by `(x, coin)`.
pub fn path_sum(
    init: [Complex64; 2],
    coin: [[Complex64; 2]; 2],
    t: usize,
) -> BTreeMap<(i64, usize), Complex64> {
    let mut out = BTreeMap::new();
    for c0 in [L, R] {
        for history in 0u64..(1u64 << t) {
            let mut amp = init[c0];
            let mut prev = c0;
            let mut x = 0i64;
            for k in 0..t {
                let next = ((history >> k) & 1) as usize;
                amp *= coin[next][prev];
                x += if next == L { -1 } else { 1 };
                prev = next;
            }
            *out.entry((x, prev)).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
    }
    out
}

/// Site probabilities `P^L(x) + P^R(x)` from a path sum.
pub fn site_probabilities(amps: &BTreeMap<(i64, usize), Complex64>) -> BTreeMap<i64, f64> {
    let mut out = BTreeMap::new();
    for (&(x, _), a) in amps {
        *out.entry(x).or_insert(0.0) += a.norm_sqr();
    }
    out
}

pub fn mean(amps: &BTreeMap<(i64, usize), Complex64>) -> f64 {
    site_probabilities(amps).into_iter().map(|(x, p)| x as f64 * p).sum()
}

pub fn spinor(theta: f64, phi: f64, varphi: f64) -> [Complex64; 2] {
    [Complex64::from_polar(theta.cos(), phi), Complex64::from_polar(theta.sin(), varphi)]
}

/// Prints one acceptance line and fails the test if the criterion does.
pub fn criterion(id: u32, name: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] AC{id} {name}: {detail}");
    assert!(pass, "AC{id} {name} failed: {detail}");
}
