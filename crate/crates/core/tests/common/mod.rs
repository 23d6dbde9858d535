#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin_wigner::{
    construct_omega, decompose_angular_basis, push_density, push_state, HalfInt, OmegaMap, OscillatorDensity,
    PhasePoint3, SpinOperator, SpinState, C64,
};

pub fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn omega(n: usize) -> OmegaMap {
    construct_omega(&decompose_angular_basis(n).unwrap()).unwrap()
}

pub fn pushed(state: &SpinState) -> OscillatorDensity {
    push_state(&omega(state.n()), state).unwrap()
}

pub fn pushed_density(rho: &SpinOperator) -> OscillatorDensity {
    push_density(&omega(rho.n()), rho).unwrap()
}

pub fn state(n: usize, amps: Vec<C64>) -> SpinState {
    SpinState::normalized(n, DVector::from_vec(amps)).unwrap()
}

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> SpinState {
    let amps = (0..1 << n)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    state(n, amps)
}

/// A random pure state inside one `l` shell (any `k`), so it commutes with `S²`.
pub fn random_shell_state(n: usize, twice_l: i32, rng: &mut ChaCha8Rng) -> SpinState {
    let basis = decompose_angular_basis(n).unwrap();
    let mut v = DVector::<C64>::zeros(1 << n);
    for e in basis.entries().iter().filter(|e| e.l.twice() == twice_l) {
        let w = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        v += e.vector.amplitudes() * w;
    }
    SpinState::normalized(n, v).unwrap()
}

/// A random pure state in the represented (`k = 0`) part of one shell.
pub fn random_represented_state(n: usize, twice_l: i32, rng: &mut ChaCha8Rng) -> SpinState {
    let basis = decompose_angular_basis(n).unwrap();
    let mut v = DVector::<C64>::zeros(1 << n);
    for e in basis.entries().iter().filter(|e| e.l.twice() == twice_l && e.k == 0) {
        let w = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        v += e.vector.amplitudes() * w;
    }
    SpinState::normalized(n, v).unwrap()
}

/// Twice every `l` occurring for `n` spins.
pub fn shells(n: usize) -> Vec<i32> {
    (0..=n as i32).rev().filter(|t| (n as i32 - t) % 2 == 0).collect()
}

pub fn outer_shell_basis(n: usize) -> Vec<(HalfInt, HalfInt, SpinState)> {
    let basis = decompose_angular_basis(n).unwrap();
    basis
        .entries()
        .iter()
        .filter(|e| e.l.twice() == n as i32)
        .map(|e| (e.l, e.m, e.vector.clone()))
        .collect()
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn commutator(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a * b - b * a
}

/// `L_n^α(x)` from its explicit power series.
pub fn laguerre_series(n: usize, alpha: usize, x: f64) -> f64 {
    let mut sum = 0.0;
    for k in 0..=n {
        let binom = binomial_f(n + alpha, n - k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * x.powi(k as i32) / factorial(k);
    }
    sum
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn binomial_f(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The 125-point grid over `[−4, 4]³`.
pub fn grid125() -> Vec<PhasePoint3> {
    let axis = [-4.0, -2.0, 0.0, 2.0, 4.0];
    let mut out = Vec::new();
    for &x1 in &axis {
        for &x2 in &axis {
            for &x3 in &axis {
                out.push(PhasePoint3::new(x1, x2, x3));
            }
        }
    }
    out
}

/// Closed forms for two spins.
pub mod two_spin {
    use super::*;

    pub fn up_up(p: PhasePoint3) -> f64 {
        let r = p.r();
        (-r).exp() / (PI * PI) * laguerre_series(2, 0, r + p.x3)
    }

    pub fn triplet_zero(p: PhasePoint3) -> f64 {
        let r = p.r();
        (-r).exp() / (PI * PI) * laguerre_series(1, 0, r + p.x3) * laguerre_series(1, 0, r - p.x3)
    }

    pub fn down_down(p: PhasePoint3) -> f64 {
        let r = p.r();
        (-r).exp() / (PI * PI) * laguerre_series(2, 0, r - p.x3)
    }

    pub fn singlet(p: PhasePoint3) -> f64 {
        (-p.r()).exp() / (PI * PI)
    }
}

/// Closed forms for `N` spins in the outer shell.
pub mod n_spin {
    use super::*;

    fn parity(n: usize) -> f64 {
        if n.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    pub fn all_up(n: usize, p: PhasePoint3) -> f64 {
        let r = p.r();
        parity(n) / (PI * PI) * (-r).exp() * laguerre_series(n, 0, r + p.x3)
    }

    pub fn all_down(n: usize, p: PhasePoint3) -> f64 {
        let r = p.r();
        parity(n) / (PI * PI) * (-r).exp() * laguerre_series(n, 0, r - p.x3)
    }

    /// `|⊗↑⟩⟨⊗↓| + |⊗↓⟩⟨⊗↑|`.
    pub fn coherence(n: usize, p: PhasePoint3) -> f64 {
        let z = C64::new(p.x1, p.x2);
        let zn = (0..n).fold(c(1.0), |acc, _| acc * z);
        (-p.r()).exp() / (PI * PI * factorial(n)) * 2.0 * zn.re
    }
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `∫₀^∞ e^{−r} r^{1+α} L_j^α((1+c) r) L_i^α((1−c) r) dr` by adaptive Simpson
/// over `[0, 200]`, with the Laguerre factors from their power series.
pub fn radial_integral_by_quadrature(i: usize, j: usize, alpha: usize, c: f64) -> f64 {
    let f = |r: f64| {
        (-r).exp()
            * r.powi(1 + alpha as i32)
            * laguerre_series(j, alpha, (1.0 + c) * r)
            * laguerre_series(i, alpha, (1.0 - c) * r)
    };
    let cuts = [0.0, 5.0, 12.0, 25.0, 50.0, 100.0, 200.0];
    let scale: f64 = cuts
        .windows(2)
        .map(|w| adaptive_simpson(&|r| f(r).abs(), w[0], w[1], 1e-6))
        .sum();
    let tol = 1e-13 * scale.max(1.0);
    cuts.windows(2).map(|w| adaptive_simpson(&f, w[0], w[1], tol)).sum()
}
