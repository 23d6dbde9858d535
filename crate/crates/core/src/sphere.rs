//! The spherical function `𝕎_S(θ, φ) = (π/4) ∫₀^∞ 𝕎(r n̂) r dr`.
//!
//! The radial weight is `r dr`, not `r² dr`: with `r` the squared 4D
//! radius, `d⁴z` integrated over a Hopf fibre is `(π / 4r) d³x`, so this
//! weight makes `∫ 𝕎_S dΩ` equal the trace of the pushed operator.
//!
//! Two routes are provided. [`ws_numeric`] integrates the reduced function
//! along a ray with Gauss–Laguerre quadrature. [`ws_analytic`] sums closed
//! forms per single-shell operator `|l m⟩⟨l m′|`, each a terminating
//! hypergeometric polynomial in `cos θ`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use statrs::function::factorial::ln_factorial;

use crate::moyal::{real_part, wigner_4d_complex};
use crate::quadrature::{GaussLaguerre, GaussLegendre};
use crate::reduced_space::{hopf_section, require_s2_commuting};
use crate::{Error, HalfInt, OscillatorDensity, PhasePoint3, Result, C64};

/// Cross-shell coefficients up to this size are ignored by the closed form.
pub const CROSS_SHELL_NEGLIGIBLE: f64 = 1e-12;

/// Imaginary residual accepted in real-valued closed-form results.
pub const ANALYTIC_IMAGINARY_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphPoint {
    pub theta: f64,
    pub phi: f64,
}

impl SphPoint {
    /// `theta` must lie in `[0, π]`; `phi` is reduced into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::Validation(format!("invalid spherical point ({theta}, {phi})")));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(SphPoint { theta, phi })
    }

    pub fn direction(&self) -> (f64, f64, f64) {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        (st * cp, st * sp, ct)
    }
}

/// Default Gauss–Laguerre node count: the radial integrand is `e^{−r}`
/// times a polynomial of degree at most `2N + 1`.
pub fn default_radial_nodes(n: usize) -> usize {
    2 * n + 8
}

/// A Gauss–Laguerre rule checked against the spin count it will serve.
#[derive(Clone, Debug)]
pub struct RadialQuadrature {
    rule: GaussLaguerre,
}

impl RadialQuadrature {
    /// Refuses fewer than `n + 2` nodes.
    pub fn new(n: usize, nodes: usize) -> Result<Self> {
        if nodes < n + 2 {
            return Err(Error::Validation(format!(
                "{nodes} radial nodes cannot integrate {n}-spin functions exactly; need at least {}",
                n + 2
            )));
        }
        Ok(RadialQuadrature {
            rule: GaussLaguerre::new(nodes)?,
        })
    }

    pub fn for_spins(n: usize) -> Result<Self> {
        Self::new(n, default_radial_nodes(n))
    }

    pub fn len(&self) -> usize {
        self.rule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rule.is_empty()
    }
}

/// Radial quadrature of 𝕎 along the ray through `pt`, complex-valued.
pub fn ws_numeric_with(density: &OscillatorDensity, pt: SphPoint, radial: &RadialQuadrature) -> Result<C64> {
    require_s2_commuting(density)?;
    Ok(ws_numeric_unchecked(density, pt, radial))
}

/// [`ws_numeric_with`] without the `S²` commutation gate; callers apply
/// their own tolerance.
pub(crate) fn ws_numeric_unchecked(density: &OscillatorDensity, pt: SphPoint, radial: &RadialQuadrature) -> C64 {
    let (dx, dy, dz) = pt.direction();
    let mut sum = C64::new(0.0, 0.0);
    for (r, w) in radial.rule.pairs() {
        let x = PhasePoint3::new(r * dx, r * dy, r * dz);
        let value = wigner_4d_complex(density, hopf_section(x));
        sum += value * (w * r * r.exp());
    }
    sum * (PI / 4.0)
}

pub fn ws_numeric_complex(density: &OscillatorDensity, pt: SphPoint, nodes: usize) -> Result<C64> {
    let radial = RadialQuadrature::new(density.n(), nodes)?;
    ws_numeric_with(density, pt, &radial)
}

/// `𝕎_S(θ, φ)` by `nodes`-point Gauss–Laguerre quadrature.
pub fn ws_numeric(density: &OscillatorDensity, pt: SphPoint, nodes: usize) -> Result<f64> {
    real_part(ws_numeric_complex(density, pt, nodes)?)
}

/// Terminating Gauss series `₂F₁(a, b; c; x)` with `a` a non-positive integer.
///
/// Terms follow the ratio `(a+k)(b+k) x / ((c+k)(k+1))`; the sum stops when a
/// numerator factor vanishes and fails if a denominator vanishes first.
pub fn hypergeom_terminating(neg_int_a: i64, b: f64, c: f64, x: f64) -> Result<f64> {
    if neg_int_a > 0 {
        return Err(Error::Domain(format!(
            "first parameter must be a non-positive integer, got {neg_int_a}"
        )));
    }
    let a = neg_int_a as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        let numerator = (a + k) * (b + k);
        if numerator == 0.0 {
            return Ok(sum);
        }
        let denominator = c + k;
        if denominator == 0.0 {
            return Err(Error::Domain(format!(
                "pole at term {} of F({neg_int_a}, {b}; {c}; x) before termination",
                k + 1.0
            )));
        }
        term *= numerator * x / (denominator * (k + 1.0));
        sum += term;
        k += 1.0;
    }
}

fn ln_fact(k: usize) -> f64 {
    ln_factorial(k as u64)
}

/// `I_{ij}^α(c) = ∫₀^∞ e^{−r} r^{1+α} L_j^α((1+c) r) L_i^α((1−c) r) dr` in
/// closed form, split on `i ≤ j` and `i ≥ j` so that no power of `c` is
/// inverted.
pub fn radial_integral(i: usize, j: usize, alpha: usize, c: f64) -> f64 {
    let s = (i + j + alpha + 1) as f64;
    if i <= j {
        let d = j - i;
        let prefactor = (ln_fact(j + alpha) - ln_fact(i) - ln_fact(d)).exp();
        let series = hypergeom_terminating(-(i as i64), (1 + j + alpha) as f64, (1 + d) as f64, c * c)
            .expect("lower parameter 1 + j − i is positive");
        let bracket = s * c.powi(d as i32) + if d > 0 { d as f64 * c.powi(d as i32 - 1) } else { 0.0 };
        let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * prefactor * series * bracket
    } else {
        let d = i - j;
        let prefactor = (ln_fact(i + alpha) - ln_fact(j) - ln_fact(d)).exp();
        let series = hypergeom_terminating(-(j as i64), (1 + i + alpha) as f64, (1 + d) as f64, c * c)
            .expect("lower parameter 1 + i − j is positive");
        let bracket = s * c.powi(d as i32) - d as f64 * c.powi(d as i32 - 1);
        prefactor * series * bracket
    }
}

/// A coefficient of `|l m⟩⟨l′ m′|` with `l ≠ l′`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossShellTerm {
    pub l: HalfInt,
    pub m: HalfInt,
    pub l_prime: HalfInt,
    pub m_prime: HalfInt,
    pub coefficient: C64,
}

/// A pushed operator in angular labels: `Σ c_{l m m′} |l m⟩⟨l m′|` plus any
/// cross-shell coherences kept aside.
#[derive(Clone, Debug, Default)]
pub struct LmDensity {
    /// `(l, m, m′) ↦` coefficient of `|l m⟩⟨l m′|`.
    pub same_shell: BTreeMap<(HalfInt, HalfInt, HalfInt), C64>,
    pub cross_shell: Vec<CrossShellTerm>,
}

impl LmDensity {
    /// Reads the Fock matrix through `|n₁ n₂⟩ = |l = (n₁+n₂)/2, m = (n₁−n₂)/2⟩`.
    pub fn from_oscillator(density: &OscillatorDensity) -> Self {
        let fock = density.fock();
        let e = density.elements();
        let labels = |idx: usize| {
            let (n1, n2) = fock.state(idx);
            (
                HalfInt::from_twice((n1 + n2) as i32),
                HalfInt::from_twice(n1 as i32 - n2 as i32),
            )
        };
        let mut out = LmDensity::default();
        for r in 0..e.nrows() {
            for c in 0..e.ncols() {
                let v = e[(r, c)];
                if v == C64::new(0.0, 0.0) {
                    continue;
                }
                let (l, m) = labels(r);
                let (lp, mp) = labels(c);
                if l == lp {
                    out.same_shell.insert((l, m, mp), v);
                } else {
                    out.cross_shell.push(CrossShellTerm {
                        l,
                        m,
                        l_prime: lp,
                        m_prime: mp,
                        coefficient: v,
                    });
                }
            }
        }
        out
    }

    /// Cross-shell terms the closed form cannot handle.
    pub fn significant_cross_terms(&self) -> Vec<CrossShellTerm> {
        self.cross_shell
            .iter()
            .filter(|t| t.coefficient.norm() > CROSS_SHELL_NEGLIGIBLE)
            .copied()
            .collect()
    }

    /// `max |c_{l m m′} − conj(c_{l m′ m})|`.
    pub fn hermitian_residual(&self) -> f64 {
        let zero = C64::new(0.0, 0.0);
        self.same_shell
            .iter()
            .map(|(&(l, m, mp), v)| {
                let partner = self.same_shell.get(&(l, mp, m)).copied().unwrap_or(zero);
                (v - partner.conj()).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Closed-form `𝕎_S` of the single operator `|l m⟩⟨l m′|`.
///
/// `|l m⟩⟨l m′|` pushes to `|l+m, l−m⟩⟨l+m′, l−m′|`. With `d = |m − m′|`:
///
/// * `m ≤ m′`: `(−1)^{2l}/(4π) √((l+m)!(l−m′)!/((l+m′)!(l−m)!)) (−sinθ e^{−iφ})^d I^d_{l−m′, l+m}(cosθ)`
/// * `m ≥ m′`: `(−1)^{2l}/(4π) √((l+m′)!(l−m)!/((l+m)!(l−m′)!)) (−sinθ e^{+iφ})^d I^d_{l−m, l+m′}(cosθ)`
pub fn ws_basis_operator(l: HalfInt, m: HalfInt, m_prime: HalfInt, pt: SphPoint) -> C64 {
    let idx = |a: HalfInt, sign: i32| -> usize { ((l.twice() + sign * a.twice()) / 2) as usize };
    let lp_m = idx(m, 1);
    let lm_m = idx(m, -1);
    let lp_mp = idx(m_prime, 1);
    let lm_mp = idx(m_prime, -1);
    let parity = if l.twice() % 2 == 0 { 1.0 } else { -1.0 };
    let c = pt.theta.cos();
    let s = pt.theta.sin();
    let (ratio, phase_sign, i, j, d) = if m <= m_prime {
        let ratio = ln_fact(lp_m) + ln_fact(lm_mp) - ln_fact(lp_mp) - ln_fact(lm_m);
        (ratio, -1.0, lm_mp, lp_m, lp_mp - lp_m)
    } else {
        let ratio = ln_fact(lp_mp) + ln_fact(lm_m) - ln_fact(lp_m) - ln_fact(lm_mp);
        (ratio, 1.0, lm_m, lp_mp, lp_m - lp_mp)
    };
    let angular = C64::from_polar(1.0, phase_sign * pt.phi) * (-s);
    let power = (0..d).fold(C64::new(1.0, 0.0), |acc, _| acc * angular);
    power * (parity / (4.0 * PI) * (0.5 * ratio).exp() * radial_integral(i, j, d, c))
}

/// Closed-form `𝕎_S`, complex-valued. Refuses operators with significant
/// cross-shell coherences and names how many there are.
pub fn ws_analytic_complex(lm_density: &LmDensity, pt: SphPoint) -> Result<C64> {
    let cross = lm_density.significant_cross_terms();
    if !cross.is_empty() {
        let largest = cross.iter().map(|t| t.coefficient.norm()).fold(0.0, f64::max);
        return Err(Error::CrossShell {
            count: cross.len(),
            largest,
        });
    }
    let mut sum = C64::new(0.0, 0.0);
    for (&(l, m, mp), &coef) in &lm_density.same_shell {
        sum += coef * ws_basis_operator(l, m, mp, pt);
    }
    Ok(sum)
}

/// Closed-form `𝕎_S(θ, φ)` of a Hermitian operator.
pub fn ws_analytic(lm_density: &LmDensity, pt: SphPoint) -> Result<f64> {
    let z = ws_analytic_complex(lm_density, pt)?;
    if z.im.abs() > ANALYTIC_IMAGINARY_TOLERANCE {
        return Err(Error::Numeric(format!(
            "closed-form spherical function has imaginary residual {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// Product rule for integrals over the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereResolution {
    /// Gauss–Legendre nodes in `cos θ`.
    pub n_theta: usize,
    /// Uniform nodes in `φ`.
    pub n_phi: usize,
}

impl Default for SphereResolution {
    fn default() -> Self {
        SphereResolution {
            n_theta: 64,
            n_phi: 128,
        }
    }
}

/// `∫ 𝕎_S sinθ dθ dφ`, using the closed form when it applies and radial
/// quadrature otherwise.
pub fn sphere_normalization(density: &OscillatorDensity, resolution: SphereResolution) -> Result<f64> {
    require_s2_commuting(density)?;
    real_part(sphere_integral_unchecked(density, resolution)?)
}

pub(crate) fn sphere_integral_unchecked(density: &OscillatorDensity, resolution: SphereResolution) -> Result<C64> {
    if resolution.n_theta == 0 || resolution.n_phi == 0 {
        return Err(Error::Validation("sphere resolution must be positive".into()));
    }
    let lm = LmDensity::from_oscillator(density);
    let use_analytic = lm.significant_cross_terms().is_empty();
    let radial = if use_analytic {
        None
    } else {
        Some(RadialQuadrature::for_spins(density.n())?)
    };
    let legendre = GaussLegendre::new(resolution.n_theta)?;
    let dphi = TAU / resolution.n_phi as f64;
    let mut total = C64::new(0.0, 0.0);
    for (c, w) in legendre.pairs() {
        let theta = c.clamp(-1.0, 1.0).acos();
        for k in 0..resolution.n_phi {
            let pt = SphPoint {
                theta,
                phi: k as f64 * dphi,
            };
            let value = match &radial {
                None => ws_analytic_complex(&lm, pt)?,
                Some(rule) => ws_numeric_unchecked(density, pt, rule),
            };
            total += value * (w * dphi);
        }
    }
    Ok(total)
}
