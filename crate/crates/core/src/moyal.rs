//! Moyal functions of the one-dimensional oscillator and the 4D Wigner
//! function of a pushed density.
//!
//! Conventions: `W_{nn′}(q, p)` is the Wigner transform
//! `(1/π) ∫ ⟨q−y| ρ |q+y⟩ e^{2ipy} dy` of `ρ = |n′⟩⟨n|`. Phase-space points
//! are always ordered `(q₁, p₁, q₂, p₂)`.

use std::f64::consts::PI;

use statrs::function::factorial::ln_factorial;

use crate::omega_map::OscillatorDensity;
use crate::{Error, Result, C64};

/// Imaginary parts below this are treated as roundoff in real-valued results.
pub const IMAGINARY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint4 {
    pub q1: f64,
    pub p1: f64,
    pub q2: f64,
    pub p2: f64,
}

impl PhasePoint4 {
    pub const ORIGIN: PhasePoint4 = PhasePoint4 {
        q1: 0.0,
        p1: 0.0,
        q2: 0.0,
        p2: 0.0,
    };

    pub fn new(q1: f64, p1: f64, q2: f64, p2: f64) -> Self {
        PhasePoint4 { q1, p1, q2, p2 }
    }

    pub fn is_finite(&self) -> bool {
        self.q1.is_finite() && self.p1.is_finite() && self.q2.is_finite() && self.p2.is_finite()
    }

    /// `q₁² + p₁² + q₂² + p₂²`.
    pub fn radius_squared(&self) -> f64 {
        self.q1 * self.q1 + self.p1 * self.p1 + self.q2 * self.q2 + self.p2 * self.p2
    }
}

/// Generalised Laguerre polynomial `L_n^α(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α−x) L_k − (k+α) L_{k−1}`.
pub fn laguerre(degree: usize, order: usize, x: f64) -> f64 {
    let alpha = order as f64;
    let mut prev = 1.0;
    if degree == 0 {
        return prev;
    }
    let mut curr = 1.0 + alpha - x;
    for k in 1..degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * curr - (kf + alpha) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// All `L_k^α(x)` for `k = 0..=max_degree`.
fn laguerre_sequence(max_degree: usize, order: usize, x: f64) -> Vec<f64> {
    let alpha = order as f64;
    let mut out = Vec::with_capacity(max_degree + 1);
    out.push(1.0);
    if max_degree >= 1 {
        out.push(1.0 + alpha - x);
    }
    for k in 1..max_degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `√(2^{d} · lo! / hi!)` in log space, with `d = hi − lo`.
fn moyal_prefactor(lo: usize, hi: usize) -> f64 {
    let d = (hi - lo) as f64;
    (0.5 * (d * std::f64::consts::LN_2 + ln_factorial(lo as u64) - ln_factorial(hi as u64))).exp()
}

fn complex_power(z: C64, k: usize) -> C64 {
    (0..k).fold(C64::new(1.0, 0.0), |acc, _| acc * z)
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// The Moyal function `W_{nn′}(q, p)`.
pub fn moyal_1d(n: usize, n_prime: usize, q: f64, p: f64) -> C64 {
    let rho2 = q * q + p * p;
    let gauss = (-rho2).exp() / PI;
    if n <= n_prime {
        let d = n_prime - n;
        let z = complex_power(C64::new(q, -p), d);
        z * (sign(n) * gauss * moyal_prefactor(n, n_prime) * laguerre(n, d, 2.0 * rho2))
    } else {
        let d = n - n_prime;
        let z = complex_power(C64::new(q, p), d);
        z * (sign(n_prime) * gauss * moyal_prefactor(n_prime, n) * laguerre(n_prime, d, 2.0 * rho2))
    }
}

/// Table of `W_{nn′}(q, p)` for `n, n′ ≤ cutoff`, indexed `[n][n′]`.
///
/// One Laguerre recurrence per offset `d = |n − n′|` fills a whole
/// diagonal.
pub fn moyal_table(cutoff: usize, q: f64, p: f64) -> Vec<Vec<C64>> {
    let size = cutoff + 1;
    let rho2 = q * q + p * p;
    let gauss = (-rho2).exp() / PI;
    let mut table = vec![vec![C64::new(0.0, 0.0); size]; size];
    let below = C64::new(q, -p);
    let above = C64::new(q, p);
    let mut pow_below = C64::new(1.0, 0.0);
    let mut pow_above = C64::new(1.0, 0.0);
    for d in 0..size {
        let lag = laguerre_sequence(cutoff - d, d, 2.0 * rho2);
        for lo in 0..size - d {
            let scale = sign(lo) * gauss * moyal_prefactor(lo, lo + d) * lag[lo];
            table[lo][lo + d] = pow_below * scale;
            table[lo + d][lo] = pow_above * scale;
        }
        pow_below *= below;
        pow_above *= above;
    }
    table
}

type FockPair = (usize, usize);

/// Nonzero entries of a density as `((n1′, n2′), (n1, n2), value)`.
fn nonzero_elements(density: &OscillatorDensity) -> Vec<(FockPair, FockPair, C64)> {
    let fock = density.fock();
    let e = density.elements();
    let mut out = Vec::new();
    for r in 0..e.nrows() {
        for c in 0..e.ncols() {
            let v = e[(r, c)];
            if v != C64::new(0.0, 0.0) {
                out.push((fock.state(r), fock.state(c), v));
            }
        }
    }
    out
}

/// `Σ ⟨n′₁n′₂|ΩρΩ†|n₁n₂⟩ W_{n₁n′₁}(q₁,p₁) W_{n₂n′₂}(q₂,p₂)`, complex-valued so
/// that non-Hermitian operators can be evaluated too.
pub fn wigner_4d_complex(density: &OscillatorDensity, pt: PhasePoint4) -> C64 {
    let cutoff = density.fock().cutoff();
    let t1 = moyal_table(cutoff, pt.q1, pt.p1);
    let t2 = moyal_table(cutoff, pt.q2, pt.p2);
    let fock = density.fock();
    let e = density.elements();
    let mut sum = C64::new(0.0, 0.0);
    for r in 0..e.nrows() {
        let (a1, a2) = fock.state(r);
        for c in 0..e.ncols() {
            let v = e[(r, c)];
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            let (b1, b2) = fock.state(c);
            sum += v * t1[b1][a1] * t2[b2][a2];
        }
    }
    sum
}

/// Real 4D Wigner function of a Hermitian density.
///
/// Fails if the imaginary part exceeds [`IMAGINARY_TOLERANCE`].
pub fn wigner_4d(density: &OscillatorDensity, pt: PhasePoint4) -> Result<f64> {
    real_part(wigner_4d_complex(density, pt))
}

pub(crate) fn real_part(z: C64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOLERANCE {
        return Err(Error::Numeric(format!(
            "imaginary residual {:.3e} in a real-valued Wigner function",
            z.im
        )));
    }
    Ok(z.re)
}

/// Normalised oscillator eigenfunctions `ψ_k(x)`, `k = 0..=max`, by the
/// recurrence `ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}`.
pub fn hermite_functions(max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if max >= 1 {
        out.push(std::f64::consts::SQRT_2 * x * out[0]);
    }
    for k in 1..max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Settings for the position-space integration oracle.
#[derive(Clone, Copy, Debug)]
pub struct OracleQuadrature {
    /// Half-width `L` of the square `[−L, L]²`; `None` picks
    /// `max(6, √(2·cutoff) + 4)`.
    pub half_width: Option<f64>,
    /// Trapezoid intervals per axis on the first pass.
    pub initial_intervals: usize,
    /// Successive halvings must agree to this.
    pub tolerance: f64,
    /// Disagreement still accepted once `max_intervals` is reached.
    pub failure_threshold: f64,
    pub max_intervals: usize,
}

impl Default for OracleQuadrature {
    fn default() -> Self {
        OracleQuadrature {
            half_width: None,
            initial_intervals: 32,
            tolerance: 1e-7,
            failure_threshold: 1e-6,
            max_intervals: 1024,
        }
    }
}

/// Largest Fock index for which the Hermite-function recurrence is trusted.
pub const ORACLE_MAX_EXCITATION: usize = 12;

/// The 4D Wigner function by direct integration over `(y₁, y₂)` of
/// `⟨q₁−y₁, q₂−y₂| ρ |q₁+y₁, q₂+y₂⟩ e^{2i(p₁y₁+p₂y₂)} / π²`, using
/// position-space oscillator eigenfunctions. Independent of the Moyal
/// functions; meant as a test oracle.
pub fn oracle_wigner_integral_complex(
    density: &OscillatorDensity,
    pt: PhasePoint4,
    quadrature: &OracleQuadrature,
) -> Result<C64> {
    let terms = nonzero_elements(density);
    let max_excitation = terms
        .iter()
        .map(|(a, b, _)| (a.0 + a.1).max(b.0 + b.1))
        .max()
        .unwrap_or(0);
    if max_excitation > ORACLE_MAX_EXCITATION {
        return Err(Error::Capacity(format!(
            "oracle supports Fock states with at most {ORACLE_MAX_EXCITATION} excitations"
        )));
    }
    if terms.is_empty() {
        return Ok(C64::new(0.0, 0.0));
    }
    let cutoff = density.fock().cutoff();
    let half_width = quadrature
        .half_width
        .unwrap_or_else(|| 6f64.max((2.0 * cutoff as f64).sqrt() + 4.0));

    let integrate = |intervals: usize| -> C64 {
        let h = 2.0 * half_width / intervals as f64;
        let ys: Vec<f64> = (0..=intervals).map(|i| -half_width + i as f64 * h).collect();
        let weight = |i: usize| if i == 0 || i == intervals { 0.5 } else { 1.0 };
        let minus1: Vec<Vec<f64>> = ys.iter().map(|y| hermite_functions(cutoff, pt.q1 - y)).collect();
        let plus1: Vec<Vec<f64>> = ys.iter().map(|y| hermite_functions(cutoff, pt.q1 + y)).collect();
        let minus2: Vec<Vec<f64>> = ys.iter().map(|y| hermite_functions(cutoff, pt.q2 - y)).collect();
        let plus2: Vec<Vec<f64>> = ys.iter().map(|y| hermite_functions(cutoff, pt.q2 + y)).collect();
        let phase1: Vec<C64> = ys.iter().map(|y| C64::from_polar(1.0, 2.0 * pt.p1 * y)).collect();
        let phase2: Vec<C64> = ys.iter().map(|y| C64::from_polar(1.0, 2.0 * pt.p2 * y)).collect();

        let mut total = C64::new(0.0, 0.0);
        for i in 0..=intervals {
            for j in 0..=intervals {
                let mut kernel = C64::new(0.0, 0.0);
                for &((a1, a2), (b1, b2), v) in &terms {
                    kernel += v * (minus1[i][a1] * minus2[j][a2] * plus1[i][b1] * plus2[j][b2]);
                }
                total += kernel * phase1[i] * phase2[j] * (weight(i) * weight(j));
            }
        }
        total * (h * h / (PI * PI))
    };

    let mut intervals = quadrature.initial_intervals.max(2);
    let mut previous = integrate(intervals);
    loop {
        let next_intervals = intervals * 2;
        let current = integrate(next_intervals);
        let diff = (current - previous).norm();
        if diff <= quadrature.tolerance {
            return Ok(current);
        }
        if next_intervals >= quadrature.max_intervals {
            if diff <= quadrature.failure_threshold {
                return Ok(current);
            }
            return Err(Error::Numeric(format!(
                "oracle quadrature did not converge: successive refinements differ by {diff:.3e}"
            )));
        }
        intervals = next_intervals;
        previous = current;
    }
}

/// Real-valued form of [`oracle_wigner_integral_complex`].
pub fn oracle_wigner_integral(
    density: &OscillatorDensity,
    pt: PhasePoint4,
    quadrature: &OracleQuadrature,
) -> Result<f64> {
    real_part(oracle_wigner_integral_complex(density, pt, quadrature)?)
}
