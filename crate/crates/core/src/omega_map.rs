//! The Jordan–Schwinger operators on a truncated two-mode Fock space and the
//! map `Ω` from the spin space into it.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::spin_core::{apply_lower, apply_raise, apply_sz, max_abs, s2_commutator_residual};
use crate::{AngularBasis, Axis, Error, HalfInt, LadderDirection, Result, SpinOperator, SpinState, C64};

/// Intertwining residual above which [`construct_omega`] fails.
pub const INTERTWINING_TOLERANCE: f64 = 1e-9;

/// Tolerance used when validating a density operator.
pub const DENSITY_TOLERANCE: f64 = 1e-10;

/// The states `|n₁ n₂⟩` with `n₁ + n₂ ≤ cutoff`.
///
/// Ordered by total excitation `t = n₁ + n₂` ascending and, within one `t`,
/// by `n₁` descending, so each block of fixed `t` runs from `m = t/2` down to
/// `m = −t/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockBasis {
    cutoff: usize,
}

impl FockBasis {
    pub fn new(cutoff: usize) -> Self {
        FockBasis { cutoff }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 2) / 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, n1: usize, n2: usize) -> Option<usize> {
        let t = n1 + n2;
        (t <= self.cutoff).then(|| t * (t + 1) / 2 + (t - n1))
    }

    pub fn state(&self, index: usize) -> (usize, usize) {
        let mut t = 0;
        while (t + 1) * (t + 2) / 2 <= index {
            t += 1;
        }
        let offset = index - t * (t + 1) / 2;
        (t - offset, offset)
    }

    pub fn states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).map(|i| self.state(i))
    }

    /// The oscillator state with angular labels `(l, m)`: `|l+m, l−m⟩`.
    pub fn index_of_lm(&self, l: HalfInt, m: HalfInt) -> Option<usize> {
        let n1 = (l.twice() + m.twice()) / 2;
        let n2 = (l.twice() - m.twice()) / 2;
        if n1 < 0 || n2 < 0 {
            return None;
        }
        self.index(n1 as usize, n2 as usize)
    }
}

/// Annihilation operator of one mode on the truncated space.
fn annihilation(fock: FockBasis, mode: usize) -> DMatrix<C64> {
    let dim = fock.len();
    let mut a = DMatrix::zeros(dim, dim);
    for (col, (n1, n2)) in fock.states().enumerate() {
        let (occupation, target) = match mode {
            0 if n1 > 0 => (n1, fock.index(n1 - 1, n2)),
            1 if n2 > 0 => (n2, fock.index(n1, n2 - 1)),
            _ => continue,
        };
        if let Some(row) = target {
            a[(row, col)] = C64::new((occupation as f64).sqrt(), 0.0);
        }
    }
    a
}

/// `J_axis = ½ (a₁† a₂†) σ_axis (a₁ a₂)ᵀ` on the states with at most
/// `fock_cutoff` excitations.
///
/// Each `J_i` conserves `n₁ + n₂`, so the truncation is exact and the su(2)
/// relations hold on the whole truncated space.
pub fn jordan_schwinger(fock_cutoff: usize, axis: Axis) -> Result<DMatrix<C64>> {
    if fock_cutoff == 0 {
        return Err(Error::Validation("Fock cutoff must be at least 1".into()));
    }
    let fock = FockBasis::new(fock_cutoff);
    let a = [annihilation(fock, 0), annihilation(fock, 1)];
    let ad = [a[0].adjoint(), a[1].adjoint()];
    let half = C64::new(0.5, 0.0);
    let i = C64::new(0.0, 1.0);
    let m = match axis {
        Axis::X => (&ad[0] * &a[1] + &ad[1] * &a[0]) * half,
        Axis::Y => (&ad[0] * &a[1] * (-i) + &ad[1] * &a[0] * i) * half,
        Axis::Z => (&ad[0] * &a[0] - &ad[1] * &a[1]) * half,
    };
    Ok(m)
}

/// `J₊ = a₁† a₂` or `J₋ = a₂† a₁`.
pub fn jordan_schwinger_ladder(fock_cutoff: usize, direction: LadderDirection) -> Result<DMatrix<C64>> {
    let jx = jordan_schwinger(fock_cutoff, Axis::X)?;
    let jy = jordan_schwinger(fock_cutoff, Axis::Y)?;
    let i = C64::new(0.0, 1.0);
    Ok(match direction {
        LadderDirection::Raise => jx + jy * i,
        LadderDirection::Lower => jx - jy * i,
    })
}

/// Which combination of degenerate highest-weight vectors each shell sends
/// to the oscillator space.
///
/// A shell absent from the map uses the first canonical vector (`k = 0`).
/// A present shell maps `Σ_k c_k |k, l, m⟩` to `|l+m, l−m⟩`; the coefficient
/// vector must have unit norm and one entry per degenerate copy.
#[derive(Clone, Debug, Default)]
pub struct OmegaConfig {
    pub shell_mixing: BTreeMap<HalfInt, Vec<C64>>,
}

/// The linear map `Ω` from `2^n` spin amplitudes to the truncated Fock space.
#[derive(Clone, Debug)]
pub struct OmegaMap {
    n: usize,
    fock: FockBasis,
    coefficients: DMatrix<C64>,
    intertwining_residual: f64,
}

impl OmegaMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fock(&self) -> FockBasis {
        self.fock
    }

    /// Shape `(fock.len(), 2^n)`.
    pub fn coefficients(&self) -> &DMatrix<C64> {
        &self.coefficients
    }

    /// Largest entry of `Ω S_± − J_± Ω` and `Ω S₃ − J₃ Ω` found at construction.
    pub fn intertwining_residual(&self) -> f64 {
        self.intertwining_residual
    }

    pub fn apply(&self, state: &SpinState) -> DVector<C64> {
        &self.coefficients * state.amplitudes()
    }

    /// `Ω†Ω`, the projector onto the represented subspace.
    pub fn projection(&self) -> DMatrix<C64> {
        self.coefficients.adjoint() * &self.coefficients
    }

    /// Dimension of the represented subspace, `tr Ω†Ω`.
    pub fn represented_rank(&self) -> usize {
        let tr: f64 = self.coefficients.iter().map(|z| z.norm_sqr()).sum();
        tr.round() as usize
    }

    /// Dense intertwining residual `max |Ω S_i − J_i Ω|` over the three axes.
    pub fn dense_intertwining_residual(&self) -> Result<f64> {
        let sys = crate::SpinSystem::with_capacity(self.n, usize::MAX)?;
        let mut worst = 0.0_f64;
        for axis in Axis::ALL {
            let s = sys.collective_spin(axis);
            let j = jordan_schwinger(self.fock.cutoff(), axis)?;
            let lhs = &self.coefficients * s.matrix();
            let rhs = j * &self.coefficients;
            worst = worst.max(max_abs(&(lhs - rhs)));
        }
        Ok(worst)
    }
}

/// Builds `Ω` with the canonical degeneracy choice `k_l = 0` for every shell.
pub fn construct_omega(basis: &AngularBasis) -> Result<OmegaMap> {
    construct_omega_with(basis, &OmegaConfig::default())
}

pub fn construct_omega_with(basis: &AngularBasis, config: &OmegaConfig) -> Result<OmegaMap> {
    let n = basis.n();
    let fock = FockBasis::new(n);
    let dim = 1usize << n;
    let mut coefficients = DMatrix::<C64>::zeros(fock.len(), dim);

    let shells = basis.shells();
    for l in config.shell_mixing.keys() {
        if !shells.iter().any(|s| s.l == *l) {
            return Err(Error::Validation(format!("no shell with l = {l} in {n} spins")));
        }
    }

    for shell in shells {
        let mixing = match config.shell_mixing.get(&shell.l) {
            Some(c) => {
                if c.len() != shell.multiplicity {
                    return Err(Error::Validation(format!(
                        "shell l = {} has {} degenerate copies, mixing vector has {}",
                        shell.l,
                        shell.multiplicity,
                        c.len()
                    )));
                }
                let norm: f64 = c.iter().map(|z| z.norm_sqr()).sum();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::Validation(format!(
                        "mixing vector for l = {} has squared norm {norm}",
                        shell.l
                    )));
                }
                c.clone()
            }
            None => {
                let mut c = vec![C64::new(0.0, 0.0); shell.multiplicity];
                c[0] = C64::new(1.0, 0.0);
                c
            }
        };

        let mut twice_m = shell.l.twice();
        while twice_m >= -shell.l.twice() {
            let m = HalfInt::from_twice(twice_m);
            let mut v = DVector::<C64>::zeros(dim);
            for (k, ck) in mixing.iter().enumerate() {
                if *ck == C64::new(0.0, 0.0) {
                    continue;
                }
                let entry = basis
                    .get(k, shell.l, m)
                    .ok_or_else(|| Error::Numeric(format!("basis lacks |{k}, {}, {m}⟩", shell.l)))?;
                v += entry.vector.amplitudes() * *ck;
            }
            let row = fock
                .index_of_lm(shell.l, m)
                .ok_or_else(|| Error::Numeric(format!("no oscillator state for l = {}, m = {m}", shell.l)))?;
            coefficients.set_row(row, &v.adjoint());
            twice_m -= 2;
        }
    }

    let residual = intertwining_residual(n, fock, &coefficients)?;
    if residual > INTERTWINING_TOLERANCE {
        return Err(Error::Numeric(format!(
            "Ω fails to intertwine spin and oscillator operators: residual {residual:.3e}"
        )));
    }
    Ok(OmegaMap {
        n,
        fock,
        coefficients,
        intertwining_residual: residual,
    })
}

/// Checks `Ω S₊ = J₊ Ω`, `Ω S₋ = J₋ Ω` and `Ω S₃ = J₃ Ω` row by row.
///
/// The collective operators are real with `S₊ᵀ = S₋`, so row `w` of `Ω S₊`
/// is `S₋ w` read as a vector.
fn intertwining_residual(n: usize, fock: FockBasis, omega: &DMatrix<C64>) -> Result<f64> {
    let jp = jordan_schwinger_ladder(fock.cutoff(), LadderDirection::Raise)?;
    let jm = jordan_schwinger_ladder(fock.cutoff(), LadderDirection::Lower)?;
    let jz = jordan_schwinger(fock.cutoff(), Axis::Z)?;
    let j_raise = &jp * omega;
    let j_lower = &jm * omega;
    let j_z = &jz * omega;
    let mut worst = 0.0_f64;
    for r in 0..omega.nrows() {
        let row = omega.row(r).transpose();
        let pairs = [
            (apply_lower(n, &row), j_raise.row(r)),
            (apply_raise(n, &row), j_lower.row(r)),
            (apply_sz(n, &row), j_z.row(r)),
        ];
        for (spin_side, fock_side) in pairs {
            for (a, b) in spin_side.iter().zip(fock_side.iter()) {
                worst = worst.max((a - b).norm());
            }
        }
    }
    Ok(worst)
}

/// The matrix `⟨n′₁ n′₂| Ω ρ Ω† |n₁ n₂⟩` on the truncated Fock space.
///
/// Also carries the spin-space diagnostics that downstream reductions need:
/// how much of the trace survived `Ω`, and how far the original operator is
/// from commuting with `S²`.
#[derive(Clone, Debug)]
pub struct OscillatorDensity {
    n: usize,
    fock: FockBasis,
    elements: DMatrix<C64>,
    s2_residual: f64,
}

impl OscillatorDensity {
    /// The zero operator for `n` spins.
    pub fn zero(n: usize) -> Self {
        let fock = FockBasis::new(n);
        OscillatorDensity {
            n,
            fock,
            elements: DMatrix::zeros(fock.len(), fock.len()),
            s2_residual: 0.0,
        }
    }

    /// Builds directly from Fock-space elements, e.g. for hand-written
    /// fixtures. `s2_residual` is the caller's statement of how far the
    /// underlying spin operator is from commuting with `S²`.
    pub fn from_elements(n: usize, elements: DMatrix<C64>, s2_residual: f64) -> Result<Self> {
        let fock = FockBasis::new(n);
        if elements.nrows() != fock.len() || elements.ncols() != fock.len() {
            return Err(Error::Validation(format!(
                "expected a {0}x{0} Fock matrix for {n} spins",
                fock.len()
            )));
        }
        Ok(OscillatorDensity {
            n,
            fock,
            elements,
            s2_residual,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fock(&self) -> FockBasis {
        self.fock
    }

    pub fn elements(&self) -> &DMatrix<C64> {
        &self.elements
    }

    /// `tr Ω ρ Ω†`: the part of the trace carried into the oscillator space.
    pub fn represented_trace(&self) -> f64 {
        self.elements.trace().re
    }

    pub fn trace(&self) -> C64 {
        self.elements.trace()
    }

    /// `max |[ρ, S²]|` of the spin-space operator this was pushed from.
    pub fn s2_residual(&self) -> f64 {
        self.s2_residual
    }

    pub fn commutes_with_s2(&self, tolerance: f64) -> bool {
        self.s2_residual <= tolerance
    }

    pub fn hermitian_residual(&self) -> f64 {
        max_abs(&(&self.elements - self.elements.adjoint()))
    }

    pub fn is_zero(&self) -> bool {
        self.elements.iter().all(|z| *z == C64::new(0.0, 0.0))
    }

    /// `Σ w_i D_i`. All parts must describe the same number of spins.
    pub fn linear_combination(parts: &[(f64, &OscillatorDensity)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Validation("empty linear combination".into()))?;
        let n = first.1.n;
        let mut out = OscillatorDensity::zero(n);
        for (w, d) in parts {
            if d.n != n {
                return Err(Error::Validation(
                    "cannot combine densities of different spin counts".into(),
                ));
            }
            out.elements += &d.elements * C64::new(*w, 0.0);
            out.s2_residual += w.abs() * d.s2_residual;
        }
        Ok(out)
    }
}

fn check_sizes(omega: &OmegaMap, n: usize) -> Result<()> {
    if omega.n != n {
        return Err(Error::Validation(format!(
            "Ω is built for {} spins, operator acts on {n}",
            omega.n
        )));
    }
    Ok(())
}

/// Pushes a density operator through `Ω` after validating it.
///
/// `rho` must be Hermitian, positive semidefinite and of unit trace, each
/// within [`DENSITY_TOLERANCE`].
pub fn push_density(omega: &OmegaMap, rho: &SpinOperator) -> Result<OscillatorDensity> {
    check_sizes(omega, rho.n())?;
    let herm = rho.hermitian_residual();
    if herm > DENSITY_TOLERANCE {
        return Err(Error::Validation(format!(
            "density is not Hermitian (residual {herm:.3e})"
        )));
    }
    let tr = rho.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > DENSITY_TOLERANCE {
        return Err(Error::Validation(format!("density has trace {tr}, expected 1")));
    }
    let hermitian_part = (rho.matrix() + rho.matrix().adjoint()) * C64::new(0.5, 0.0);
    let min_eigenvalue = hermitian_part
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -DENSITY_TOLERANCE {
        return Err(Error::Validation(format!(
            "density is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})"
        )));
    }
    Ok(push_operator(omega, rho))
}

/// Pushes an arbitrary operator through `Ω` without validation.
pub fn push_operator(omega: &OmegaMap, op: &SpinOperator) -> OscillatorDensity {
    assert_eq!(omega.n, op.n(), "Ω and operator disagree on the number of spins");
    let elements = &omega.coefficients * op.matrix() * omega.coefficients.adjoint();
    OscillatorDensity {
        n: omega.n,
        fock: omega.fock,
        elements,
        s2_residual: s2_commutator_residual(op.n(), op.matrix()),
    }
}

/// Pushes the projector `|ψ⟩⟨ψ|` through `Ω` without forming it.
pub fn push_state(omega: &OmegaMap, state: &SpinState) -> Result<OscillatorDensity> {
    check_sizes(omega, state.n())?;
    let phi = omega.apply(state);
    let elements = &phi * phi.adjoint();
    Ok(OscillatorDensity {
        n: omega.n,
        fock: omega.fock,
        elements,
        s2_residual: pure_state_s2_residual(state),
    })
}

/// `max |[|ψ⟩⟨ψ|, S²]|` = `max_ij |ψ_i (S²ψ)_j* − (S²ψ)_i ψ_j*|`.
fn pure_state_s2_residual(state: &SpinState) -> f64 {
    let psi = state.amplitudes();
    let s2psi = crate::spin_core::apply_s2(state.n(), psi);
    let mut worst = 0.0_f64;
    for i in 0..psi.len() {
        for j in 0..psi.len() {
            let v = psi[i] * s2psi[j].conj() - s2psi[i] * psi[j].conj();
            worst = worst.max(v.norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{decompose_angular_basis, SpinSystem};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn unit(fock: FockBasis, n1: usize, n2: usize) -> DVector<C64> {
        let mut v = DVector::zeros(fock.len());
        v[fock.index(n1, n2).unwrap()] = c(1.0);
        v
    }

    #[test]
    fn fock_indexing_round_trips() {
        let fock = FockBasis::new(5);
        assert_eq!(fock.len(), 21);
        for i in 0..fock.len() {
            let (n1, n2) = fock.state(i);
            assert_eq!(fock.index(n1, n2), Some(i));
        }
        assert_eq!(fock.index(3, 3), None);
    }

    #[test]
    fn jz_and_j2_eigenvalues() {
        let cutoff = 4;
        let fock = FockBasis::new(cutoff);
        let jz = jordan_schwinger(cutoff, Axis::Z).unwrap();
        let mut j2 = DMatrix::<C64>::zeros(fock.len(), fock.len());
        for axis in Axis::ALL {
            let j = jordan_schwinger(cutoff, axis).unwrap();
            j2 += &j * &j;
        }
        for (n1, n2) in fock.states() {
            let v = unit(fock, n1, n2);
            let m = (n1 as f64 - n2 as f64) / 2.0;
            let l = (n1 + n2) as f64 / 2.0;
            assert!((&jz * &v - &v * c(m)).norm() < 1e-14);
            assert!((&j2 * &v - &v * c(l * (l + 1.0))).norm() < 1e-12);
        }
        // J²|10⟩ = ¾|10⟩
        let v = unit(fock, 1, 0);
        assert!((&j2 * &v - &v * c(0.75)).norm() < 1e-14);
    }

    #[test]
    fn j_raise_matches_direct_matrix_elements() {
        let cutoff = 5;
        let fock = FockBasis::new(cutoff);
        let jp = jordan_schwinger_ladder(cutoff, LadderDirection::Raise).unwrap();
        // a₁†a₂ |n₁ n₂⟩ = √((n₁+1) n₂) |n₁+1, n₂−1⟩
        let mut direct = DMatrix::<C64>::zeros(fock.len(), fock.len());
        for (col, (n1, n2)) in fock.states().enumerate() {
            if n2 > 0 {
                let row = fock.index(n1 + 1, n2 - 1).unwrap();
                direct[(row, col)] = c((((n1 + 1) * n2) as f64).sqrt());
            }
        }
        assert!(max_abs(&(&jp - &direct)) < 1e-14);
        assert!((&jp * unit(fock, 0, 1) - unit(fock, 1, 0)).norm() < 1e-15);
    }

    #[test]
    fn omega_one_and_two_spins() {
        let omega = construct_omega(&decompose_angular_basis(1).unwrap()).unwrap();
        let fock = omega.fock();
        let up = SpinState::all_up(1).unwrap();
        let down = SpinState::all_down(1).unwrap();
        assert!((omega.apply(&up) - unit(fock, 1, 0)).norm() < 1e-14);
        assert!((omega.apply(&down) - unit(fock, 0, 1)).norm() < 1e-14);

        let omega = construct_omega(&decompose_angular_basis(2).unwrap()).unwrap();
        let fock = omega.fock();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // |↑↓⟩ is index 0b10, |↓↑⟩ is 0b01
        let singlet = SpinState::new(2, DVector::from_vec(vec![c(0.0), c(-s), c(s), c(0.0)])).unwrap();
        assert!((omega.apply(&singlet) - unit(fock, 0, 0)).norm() < 1e-14);
        assert!((omega.apply(&SpinState::all_up(2).unwrap()) - unit(fock, 2, 0)).norm() < 1e-14);
    }

    #[test]
    fn discarded_shell_is_annihilated() {
        let basis = decompose_angular_basis(3).unwrap();
        let omega = construct_omega(&basis).unwrap();
        let lost = basis.get(1, HalfInt::from_twice(1), HalfInt::from_twice(1)).unwrap();
        assert!(omega.apply(&lost.vector).norm() < 1e-14);
        let d = push_state(&omega, &lost.vector).unwrap();
        assert!(d.represented_trace().abs() < 1e-14);
        assert!(max_abs(d.elements()) < 1e-14);
        assert_eq!(omega.represented_rank(), 6);
    }

    #[test]
    fn push_density_validation() {
        let omega = construct_omega(&decompose_angular_basis(1).unwrap()).unwrap();
        let up = SpinState::all_up(1).unwrap();
        let d = push_density(&omega, &up.projector()).unwrap();
        let fock = omega.fock();
        let i = fock.index(1, 0).unwrap();
        assert!((d.elements()[(i, i)] - c(1.0)).norm() < 1e-15);
        assert!((d.represented_trace() - 1.0).abs() < 1e-15);

        let mut bad = DMatrix::<C64>::zeros(2, 2);
        bad[(0, 0)] = c(1.5);
        bad[(1, 1)] = c(-0.5);
        let err = push_density(&omega, &SpinOperator::new(1, bad).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));

        let mut skew = DMatrix::<C64>::zeros(2, 2);
        skew[(0, 0)] = c(1.0);
        skew[(0, 1)] = c(0.3);
        let err = push_density(&omega, &SpinOperator::new(1, skew).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn push_state_matches_push_of_projector() {
        let n = 3;
        let omega = construct_omega(&decompose_angular_basis(n).unwrap()).unwrap();
        let psi = SpinState::normalized(
            n,
            DVector::from_fn(8, |i, _| C64::new((i as f64).cos(), 0.3 * i as f64)),
        )
        .unwrap();
        let a = push_state(&omega, &psi).unwrap();
        let b = push_density(&omega, &psi.projector()).unwrap();
        assert!(max_abs(&(a.elements() - b.elements())) < 1e-14);
        assert!((a.s2_residual() - b.s2_residual()).abs() < 1e-12);
    }

    #[test]
    fn shell_mixing_hook() {
        let basis = decompose_angular_basis(3).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut config = OmegaConfig::default();
        config
            .shell_mixing
            .insert(HalfInt::from_twice(1), vec![c(s), C64::new(0.0, s)]);
        let omega = construct_omega_with(&basis, &config).unwrap();
        assert!(omega.dense_intertwining_residual().unwrap() < 1e-10);
        let p = omega.projection();
        assert!(max_abs(&(&p * &p - &p)) < 1e-12);

        config.shell_mixing.insert(HalfInt::from_twice(1), vec![c(1.0), c(1.0)]);
        assert!(construct_omega_with(&basis, &config).is_err());
    }

    #[test]
    fn outer_shell_is_norm_preserving() {
        for n in 1..=6 {
            let basis = SpinSystem::new(n).unwrap().angular_basis().unwrap();
            let omega = construct_omega(&basis).unwrap();
            let top = HalfInt::from_twice(n as i32);
            for e in basis.entries().iter().filter(|e| e.l == top) {
                assert!((omega.apply(&e.vector).norm() - 1.0).abs() < 1e-10);
            }
        }
    }
}
