//! Builders for the state families: Fock, spin-coherent, cat, mixtures and
//! squeezed states.

use nalgebra::{DMatrix, DVector};

use crate::spin_core::{apply_raise, max_abs};
use crate::{Error, LadderDirection, Result, SpinOperator, SpinState, SpinSystem, C64};

/// Unitarity residual above which the squeezing exponential is rejected.
pub const EXPONENTIAL_TOLERANCE: f64 = 1e-12;

/// Normalised `(S₊)^k |↓…↓⟩`, the outer-shell state with `m = k − n/2`.
pub fn fock_state(n: usize, k: usize) -> Result<SpinState> {
    SpinSystem::new(n)?;
    if k > n {
        return Err(Error::Domain(format!("{k} excitations exceed {n} spins")));
    }
    let mut v = SpinState::all_down(n)?.into_amplitudes();
    for _ in 0..k {
        v = apply_raise(n, &v);
    }
    SpinState::normalized(n, v)
}

/// `(cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩)^{⊗n}`.
pub fn spin_coherent(n: usize, theta: f64, phi: f64) -> Result<SpinState> {
    SpinSystem::new(n)?;
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Error::Validation("coherent-state angles must be finite".into()));
    }
    let up = C64::new((theta / 2.0).cos(), 0.0);
    let down = C64::from_polar((theta / 2.0).sin(), phi);
    let amps = DVector::from_fn(1 << n, |i, _| {
        let ups = i.count_ones() as usize;
        up.powu(ups as u32) * down.powu((n - ups) as u32)
    });
    SpinState::normalized(n, amps)
}

/// `(|↑…↑⟩ + |↓…↓⟩)/√2`.
pub fn cat_state(n: usize) -> Result<SpinState> {
    SpinSystem::new(n)?;
    let mut amps = DVector::<C64>::zeros(1 << n);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = C64::new(s, 0.0);
    amps[(1 << n) - 1] = C64::new(s, 0.0);
    SpinState::new(n, amps)
}

/// `Σ wᵢ |ψᵢ⟩⟨ψᵢ|` with non-negative weights summing to one.
pub fn mixture(components: &[(f64, SpinState)]) -> Result<SpinOperator> {
    let (_, first) = components
        .first()
        .ok_or_else(|| Error::Validation("a mixture needs at least one component".into()))?;
    let n = first.n();
    let mut total = 0.0;
    let mut matrix = DMatrix::<C64>::zeros(1 << n, 1 << n);
    for (w, psi) in components {
        if !w.is_finite() || *w < 0.0 {
            return Err(Error::Validation(format!(
                "mixture weight {w} is negative or not finite"
            )));
        }
        if psi.n() != n {
            return Err(Error::Validation(
                "mixture components act on different spin counts".into(),
            ));
        }
        total += w;
        matrix += psi.amplitudes() * psi.amplitudes().adjoint() * C64::new(*w, 0.0);
    }
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Validation(format!("mixture weights sum to {total}, expected 1")));
    }
    SpinOperator::new(n, matrix)
}

/// `exp(β (S₊)² − β̄ (S₋)²) |base⟩`.
///
/// The generator is anti-Hermitian, so the result is normalised up to the
/// accuracy of the matrix exponential, which is checked through the
/// unitarity of the propagator.
pub fn squeezed_state(n: usize, beta: C64, base: &SpinState) -> Result<SpinState> {
    let sys = SpinSystem::new(n)?;
    if base.n() != n {
        return Err(Error::Validation(format!(
            "base state has {} spins, expected {n}",
            base.n()
        )));
    }
    if (base.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Validation("base state must be normalised".into()));
    }
    if beta == C64::new(0.0, 0.0) {
        return Ok(base.clone());
    }
    let raise = sys.ladder(LadderDirection::Raise).into_matrix();
    let lower = sys.ladder(LadderDirection::Lower).into_matrix();
    let generator = &raise * &raise * beta - &lower * &lower * beta.conj();
    let propagator = generator.exp();
    let dim = propagator.nrows();
    let unitarity = max_abs(&(propagator.adjoint() * &propagator - DMatrix::<C64>::identity(dim, dim)));
    if !unitarity.is_finite() || unitarity > EXPONENTIAL_TOLERANCE {
        return Err(Error::Numeric(format!(
            "matrix exponential lost unitarity (residual {unitarity:.3e})"
        )));
    }
    SpinState::normalized(n, propagator * base.amplitudes())
}
