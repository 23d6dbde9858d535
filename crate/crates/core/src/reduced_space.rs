//! Hopf coordinates ℝ⁴ → ℝ³ and the reduced function 𝕎 on ℝ³.
//!
//! With `z = (q₁ + i p₁, q₂ + i p₂)`, the Hopf map is `x_i = z† σ_i z`. Its
//! fibres are the circles `z ↦ e^{−iθ} z`, and the radial variable
//! `r = |x| = |z|² = q₁² + p₁² + q₂² + p₂²` is the *squared* 4D radius.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moyal::{real_part, wigner_4d_complex};
use crate::{Error, OscillatorDensity, PhasePoint4, Result, C64};

/// Maximum `|[ρ, S²]|` for which an operator is treated as commuting with `S²`.
pub const S2_COMMUTATOR_TOLERANCE: f64 = 1e-9;

/// Relative threshold selecting the south-pole branch of [`hopf_section`].
const SECTION_EPSILON: f64 = 1e-12;

const FIBER_SEED: u64 = 0x5719_f1be;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl PhasePoint3 {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        PhasePoint3 { x1, x2, x3 }
    }

    /// Euclidean length of `x`, which equals the squared 4D radius.
    pub fn r(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }
}

/// `x_i = z† σ_i z`.
pub fn hopf_forward(pt: PhasePoint4) -> PhasePoint3 {
    let z1 = C64::new(pt.q1, pt.p1);
    let z2 = C64::new(pt.q2, pt.p2);
    let cross = z1.conj() * z2;
    PhasePoint3 {
        x1: 2.0 * cross.re,
        x2: 2.0 * cross.im,
        x3: z1.norm_sqr() - z2.norm_sqr(),
    }
}

/// A canonical point on the fibre over `pt3`.
///
/// `z₁ = √((r + x₃)/2)` is real and `z₂ = (x₁ + i x₂)/(2 z₁)`; near the south
/// pole, where `r + x₃` cancels, `z₁ = 0` and `z₂ = √r`.
pub fn hopf_section(pt3: PhasePoint3) -> PhasePoint4 {
    let r = pt3.r();
    if r == 0.0 {
        return PhasePoint4::ORIGIN;
    }
    if r + pt3.x3 > SECTION_EPSILON * r {
        let z1 = ((r + pt3.x3) / 2.0).sqrt();
        PhasePoint4 {
            q1: z1,
            p1: 0.0,
            q2: pt3.x1 / (2.0 * z1),
            p2: pt3.x2 / (2.0 * z1),
        }
    } else {
        PhasePoint4 {
            q1: 0.0,
            p1: 0.0,
            q2: r.sqrt(),
            p2: 0.0,
        }
    }
}

/// Moves a point along its Hopf fibre: `(q, p) ↦ (q cosθ + p sinθ, −q sinθ + p cosθ)`
/// in both modes.
pub fn rotate_fiber(pt: PhasePoint4, theta: f64) -> PhasePoint4 {
    let (s, c) = theta.sin_cos();
    PhasePoint4 {
        q1: c * pt.q1 + s * pt.p1,
        p1: -s * pt.q1 + c * pt.p1,
        q2: c * pt.q2 + s * pt.p2,
        p2: -s * pt.q2 + c * pt.p2,
    }
}

pub(crate) fn require_s2_commuting(density: &OscillatorDensity) -> Result<()> {
    if density.s2_residual() > S2_COMMUTATOR_TOLERANCE {
        return Err(Error::NotS2Commuting {
            residual: density.s2_residual(),
        });
    }
    Ok(())
}

/// 𝕎 at `pt3`, complex-valued for non-Hermitian operators.
pub fn reduced_wigner_complex(density: &OscillatorDensity, pt3: PhasePoint3) -> Result<C64> {
    require_s2_commuting(density)?;
    Ok(wigner_4d_complex(density, hopf_section(pt3)))
}

/// 𝕎(x) for an operator commuting with `S²`.
pub fn reduced_wigner(density: &OscillatorDensity, pt3: PhasePoint3) -> Result<f64> {
    real_part(reduced_wigner_complex(density, pt3)?)
}

/// Largest relative change of `W` under a random fibre rotation, over
/// `samples` random points in `[−2, 2]⁴`. Uses a fixed seed.
pub fn check_fiber_invariance(density: &OscillatorDensity, samples: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(FIBER_SEED);
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let pt = PhasePoint4 {
            q1: rng.random_range(-2.0..2.0),
            p1: rng.random_range(-2.0..2.0),
            q2: rng.random_range(-2.0..2.0),
            p2: rng.random_range(-2.0..2.0),
        };
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let base = wigner_4d_complex(density, pt);
        let moved = wigner_4d_complex(density, rotate_fiber(pt, theta));
        worst = worst.max((moved - base).norm() / (base.norm() + 1e-12));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close3(a: PhasePoint3, b: PhasePoint3, tol: f64) -> bool {
        (a.x1 - b.x1).abs() < tol && (a.x2 - b.x2).abs() < tol && (a.x3 - b.x3).abs() < tol
    }

    #[test]
    fn forward_poles_and_equator() {
        let north = hopf_forward(PhasePoint4::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(north, PhasePoint3::new(0.0, 0.0, 1.0));
        let south = hopf_forward(PhasePoint4::new(0.0, 0.0, 1.0, 0.0));
        assert_eq!(south, PhasePoint3::new(0.0, 0.0, -1.0));
        let eq = hopf_forward(PhasePoint4::new(1.0, 0.0, 1.0, 0.0));
        assert!(close3(eq, PhasePoint3::new(2.0, 0.0, 0.0), 1e-15));
    }

    #[test]
    fn forward_contracts_pauli_matrices() {
        // x_i = z† σ_i z written out with explicit 2x2 matrices
        let pt = PhasePoint4::new(0.3, -1.2, 0.7, 0.4);
        let z = [C64::new(pt.q1, pt.p1), C64::new(pt.q2, pt.p2)];
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let paulis = [
            [[zero, one], [one, zero]],
            [[zero, -i], [i, zero]],
            [[one, zero], [zero, -one]],
        ];
        let x: Vec<f64> = paulis
            .iter()
            .map(|s| {
                let mut acc = zero;
                for a in 0..2 {
                    for b in 0..2 {
                        acc += z[a].conj() * s[a][b] * z[b];
                    }
                }
                acc.re
            })
            .collect();
        let got = hopf_forward(pt);
        assert!(close3(got, PhasePoint3::new(x[0], x[1], x[2]), 1e-14));
        assert!((got.r() - pt.radius_squared()).abs() < 1e-14);
    }

    #[test]
    fn section_examples() {
        let p = hopf_section(PhasePoint3::new(0.0, 0.0, 1.0));
        assert!((p.q1 - 1.0).abs() < 1e-15 && p.p1 == 0.0 && p.q2 == 0.0 && p.p2 == 0.0);
        assert_eq!(hopf_section(PhasePoint3::new(0.0, 0.0, 0.0)), PhasePoint4::ORIGIN);
        let e = hopf_section(PhasePoint3::new(2.0, 0.0, 0.0));
        assert!((e.q1 * e.q1 + e.p1 * e.p1 - 1.0).abs() < 1e-14);
        assert!((e.q2 * e.q2 + e.p2 * e.p2 - 1.0).abs() < 1e-14);
        assert!(close3(hopf_forward(e), PhasePoint3::new(2.0, 0.0, 0.0), 1e-12));
        let s = hopf_section(PhasePoint3::new(0.0, 0.0, -3.0));
        assert!(close3(hopf_forward(s), PhasePoint3::new(0.0, 0.0, -3.0), 1e-14));
    }

    #[test]
    fn fiber_rotation_preserves_hopf_image() {
        let pt = PhasePoint4::new(0.9, -0.4, 0.2, 1.3);
        for k in 0..8 {
            let moved = rotate_fiber(pt, 0.77 * k as f64);
            assert!(close3(hopf_forward(moved), hopf_forward(pt), 1e-13));
        }
    }

    #[test]
    fn zero_density_is_fiber_invariant() {
        let d = OscillatorDensity::zero(2);
        assert_eq!(check_fiber_invariance(&d, 20), 0.0);
    }
}
