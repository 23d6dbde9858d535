//! Collective spin operators for `N` spin-half particles and the
//! simultaneous `(S², S₃)` eigenbasis.
//!
//! Computational basis states are indexed by bit strings: bit value 1 means
//! spin up, and spin 1 is the most significant bit. For one spin, index 1 is
//! `|↑⟩` and index 0 is `|↓⟩`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result, C64};

/// Default ceiling on the number of spins (4096-dimensional dense matrices).
pub const DEFAULT_MAX_SPINS: usize = 12;

/// Residual below which a Gram–Schmidt candidate is considered dependent.
const DEPENDENCE_THRESHOLD: f64 = 1e-6;

/// A half-integer stored as twice its value, so labels compare exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        HalfInt(2 * value)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Validation(format!("'{s}' is not an integer or half-integer"));
        match s.split_once('/') {
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "2" => Ok(HalfInt(num)),
                    "1" => Ok(HalfInt(2 * num)),
                    _ => Err(bad()),
                }
            }
            None => {
                let v: f64 = s.parse().map_err(|_| bad())?;
                let twice = 2.0 * v;
                if twice.fract() != 0.0 || twice.abs() > f64::from(i32::MAX) {
                    return Err(bad());
                }
                Ok(HalfInt(twice as i32))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Maps the numeric labels 1, 2, 3 onto x, y, z.
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            3 => Ok(Axis::Z),
            _ => Err(Error::Validation(format!("axis must be 1, 2 or 3, got {i}"))),
        }
    }

    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderDirection {
    Raise,
    Lower,
}

/// A pure state of `n` spins as a complex amplitude vector of length `2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    n: usize,
    amplitudes: DVector<C64>,
}

impl SpinState {
    /// Wraps an amplitude vector, requiring unit norm within 1e-12.
    pub fn new(n: usize, amplitudes: DVector<C64>) -> Result<Self> {
        check_length(n, amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm * norm - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!(
                "state is not normalised: squared norm {}",
                norm * norm
            )));
        }
        Ok(SpinState { n, amplitudes })
    }

    /// Scales an arbitrary nonzero amplitude vector to unit norm.
    pub fn normalized(n: usize, amplitudes: DVector<C64>) -> Result<Self> {
        check_length(n, amplitudes.len())?;
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Validation("cannot normalise a zero or non-finite vector".into()));
        }
        Ok(SpinState {
            n,
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// A computational basis state.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_length(n, 1 << n.min(usize::BITS as usize - 1))?;
        if index >= 1 << n {
            return Err(Error::Validation(format!(
                "basis index {index} out of range for {n} spins"
            )));
        }
        let mut v = DVector::zeros(1 << n);
        v[index] = C64::new(1.0, 0.0);
        Ok(SpinState { n, amplitudes: v })
    }

    /// `|↑…↑⟩`.
    pub fn all_up(n: usize) -> Result<Self> {
        Self::basis(n, (1usize << n) - 1)
    }

    /// `|↓…↓⟩`.
    pub fn all_down(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub(crate) fn from_raw(n: usize, amplitudes: DVector<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        SpinState { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SpinState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, op: &SpinOperator) -> C64 {
        self.amplitudes.dotc(&(&op.matrix * &self.amplitudes))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> SpinOperator {
        SpinOperator {
            n: self.n,
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &SpinState) -> Result<SpinOperator> {
        if self.n != other.n {
            return Err(Error::Validation(
                "outer product of states with different spin counts".into(),
            ));
        }
        Ok(SpinOperator {
            n: self.n,
            matrix: &self.amplitudes * other.amplitudes.adjoint(),
        })
    }
}

/// A dense operator on the `2^n`-dimensional spin space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperator {
    n: usize,
    matrix: DMatrix<C64>,
}

impl SpinOperator {
    pub fn new(n: usize, matrix: DMatrix<C64>) -> Result<Self> {
        check_length(n, matrix.nrows())?;
        if !matrix.is_square() {
            return Err(Error::Validation("operator matrix must be square".into()));
        }
        Ok(SpinOperator { n, matrix })
    }

    pub fn zeros(n: usize) -> Self {
        SpinOperator {
            n,
            matrix: DMatrix::zeros(1 << n, 1 << n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    /// `max |M − M†|`.
    pub fn hermitian_residual(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &SpinOperator) -> DMatrix<C64> {
        &self.matrix * &other.matrix - &other.matrix * &self.matrix
    }

    /// `max |[self, S²]|`, evaluated without forming `S²` densely.
    pub fn s2_commutator_residual(&self) -> f64 {
        s2_commutator_residual(self.n, &self.matrix)
    }

    pub fn apply(&self, state: &SpinState) -> DVector<C64> {
        &self.matrix * &state.amplitudes
    }
}

/// Entrywise maximum modulus.
pub(crate) fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

fn check_length(n: usize, len: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Capacity("at least one spin is required".into()));
    }
    if n >= usize::BITS as usize - 1 || len != 1 << n {
        return Err(Error::Validation(format!(
            "expected a {}-dimensional object for {n} spins, got {len}",
            if n < 63 { 1u64 << n } else { u64::MAX }
        )));
    }
    Ok(())
}

/// A validated spin count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpinSystem {
    n: usize,
}

impl SpinSystem {
    /// Validates `n` against [`DEFAULT_MAX_SPINS`].
    pub fn new(n: usize) -> Result<Self> {
        Self::with_capacity(n, DEFAULT_MAX_SPINS)
    }

    pub fn with_capacity(n: usize, max_spins: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Capacity("at least one spin is required".into()));
        }
        if n > max_spins {
            return Err(Error::Capacity(format!(
                "{n} spins exceeds the configured maximum of {max_spins}"
            )));
        }
        Ok(SpinSystem { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// `S_axis = ½ Σ_k σ_axis^(k)`, built from the Pauli matrices.
    pub fn collective_spin(&self, axis: Axis) -> SpinOperator {
        let dim = self.dim();
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for col in 0..dim {
            for bit in 0..self.n {
                let mask = 1usize << bit;
                let up = col & mask != 0;
                match axis {
                    Axis::Z => {
                        m[(col, col)] += C64::new(if up { 0.5 } else { -0.5 }, 0.0);
                    }
                    Axis::X => {
                        m[(col ^ mask, col)] += C64::new(0.5, 0.0);
                    }
                    // σ_y|↑⟩ = i|↓⟩, σ_y|↓⟩ = −i|↑⟩
                    Axis::Y => {
                        m[(col ^ mask, col)] += C64::new(0.0, if up { 0.5 } else { -0.5 });
                    }
                }
            }
        }
        SpinOperator { n: self.n, matrix: m }
    }

    /// `S² = S₁² + S₂² + S₃²`.
    pub fn total_spin_squared(&self) -> SpinOperator {
        let mut total = DMatrix::<C64>::zeros(self.dim(), self.dim());
        for axis in Axis::ALL {
            let s = self.collective_spin(axis).matrix;
            total += &s * &s;
        }
        SpinOperator {
            n: self.n,
            matrix: total,
        }
    }

    /// `S± = S₁ ± i S₂`.
    pub fn ladder(&self, direction: LadderDirection) -> SpinOperator {
        let sx = self.collective_spin(Axis::X).matrix;
        let sy = self.collective_spin(Axis::Y).matrix;
        let i = C64::new(0.0, 1.0);
        let matrix = match direction {
            LadderDirection::Raise => sx + sy * i,
            LadderDirection::Lower => sx - sy * i,
        };
        SpinOperator { n: self.n, matrix }
    }

    pub fn angular_basis(&self) -> Result<AngularBasis> {
        AngularBasis::build(self.n)
    }
}

pub fn build_collective_spin(n: usize, axis: Axis) -> Result<SpinOperator> {
    Ok(SpinSystem::new(n)?.collective_spin(axis))
}

pub fn total_spin_squared(n: usize) -> Result<SpinOperator> {
    Ok(SpinSystem::new(n)?.total_spin_squared())
}

pub fn ladder(n: usize, direction: LadderDirection) -> Result<SpinOperator> {
    Ok(SpinSystem::new(n)?.ladder(direction))
}

pub fn decompose_angular_basis(n: usize) -> Result<AngularBasis> {
    SpinSystem::new(n)?.angular_basis()
}

// Matrix-free actions of the collective operators on amplitude vectors.

/// `S₃ v`.
pub(crate) fn apply_sz(n: usize, v: &DVector<C64>) -> DVector<C64> {
    let half_n = n as f64 / 2.0;
    DVector::from_fn(v.len(), |i, _| v[i] * (f64::from(i.count_ones()) - half_n))
}

/// `S₊ v`.
pub(crate) fn apply_raise(n: usize, v: &DVector<C64>) -> DVector<C64> {
    let mut out = DVector::zeros(v.len());
    for (i, &a) in v.iter().enumerate() {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        for bit in 0..n {
            let mask = 1usize << bit;
            if i & mask == 0 {
                out[i | mask] += a;
            }
        }
    }
    out
}

/// `S₋ v`.
pub(crate) fn apply_lower(n: usize, v: &DVector<C64>) -> DVector<C64> {
    let mut out = DVector::zeros(v.len());
    for (i, &a) in v.iter().enumerate() {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        for bit in 0..n {
            let mask = 1usize << bit;
            if i & mask != 0 {
                out[i & !mask] += a;
            }
        }
    }
    out
}

/// `S² v = (S₋S₊ + S₃² + S₃) v`.
pub(crate) fn apply_s2(n: usize, v: &DVector<C64>) -> DVector<C64> {
    let sz = apply_sz(n, v);
    apply_lower(n, &apply_raise(n, v)) + apply_sz(n, &sz) + sz
}

/// `max |A S² − S² A|` for a dense operator `A` on `n` spins.
pub(crate) fn s2_commutator_residual(n: usize, a: &DMatrix<C64>) -> f64 {
    let dim = a.nrows();
    let mut worst = 0.0_f64;
    // S² is real symmetric, so (A S²)ᵀ = S² Aᵀ.
    let mut left = DMatrix::<C64>::zeros(dim, dim);
    for j in 0..dim {
        let col = apply_s2(n, &a.column(j).into_owned());
        left.set_column(j, &col);
    }
    for i in 0..dim {
        let row = apply_s2(n, &a.row(i).transpose());
        for j in 0..dim {
            worst = worst.max((row[j] - left[(i, j)]).norm());
        }
    }
    worst
}

/// One simultaneous eigenvector of `S²` and `S₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisEntry {
    /// Degeneracy index within the `l` shell, assigned in construction order.
    pub k: usize,
    pub l: HalfInt,
    pub m: HalfInt,
    pub vector: SpinState,
}

/// Multiplicity of one angular-momentum shell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shell {
    pub l: HalfInt,
    pub multiplicity: usize,
}

/// Orthonormal basis `{|k, l, m⟩}` of the `n`-spin space.
///
/// Shells are built from the largest `l` downwards. The highest-weight
/// vectors of a shell span the part of the `m = l` eigenspace of `S₃`
/// orthogonal to every larger shell; they are obtained by Gram–Schmidt over
/// computational basis states in increasing index order, so the kernel of
/// `S₊` never has to be found with a general eigensolver. Lower `m` follow
/// by repeated application of `S₋` and normalisation, which realises the
/// usual Condon–Shortley phases. Every vector is real; each highest-weight
/// vector has its last nonzero amplitude (largest index, spin 1 up first)
/// positive, which makes the two-spin singlet `(|↑↓⟩ − |↓↑⟩)/√2`.
#[derive(Clone, Debug)]
pub struct AngularBasis {
    n: usize,
    entries: Vec<BasisEntry>,
}

impl AngularBasis {
    fn build(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        let mut entries: Vec<BasisEntry> = Vec::with_capacity(dim);
        let n_i32 = n as i32;

        let mut twice_l = n_i32;
        while twice_l >= 0 {
            let ups = ((n_i32 + twice_l) / 2) as u32;
            let sector: Vec<usize> = (0..dim).filter(|i| i.count_ones() == ups).collect();
            let expected = binomial(n, ups as usize) - binomial(n, ups as usize + 1);

            // Orthonormal set in compressed sector coordinates, seeded with the
            // larger shells' vectors at this m.
            let mut ortho: Vec<Vec<f64>> = entries
                .iter()
                .filter(|e| e.m.twice() == twice_l)
                .map(|e| sector.iter().map(|&i| e.vector.amplitudes[i].re).collect())
                .collect();
            let seeded = ortho.len();

            for pos in 0..sector.len() {
                if ortho.len() - seeded == expected {
                    break;
                }
                let mut v = vec![0.0; sector.len()];
                v[pos] = 1.0;
                // two passes of modified Gram–Schmidt
                for _ in 0..2 {
                    for q in &ortho {
                        let proj: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                        for (vi, qi) in v.iter_mut().zip(q) {
                            *vi -= proj * qi;
                        }
                    }
                }
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > DEPENDENCE_THRESHOLD {
                    let sign = v.iter().rev().find(|x| x.abs() > 1e-14).map_or(1.0, |x| x.signum());
                    for x in v.iter_mut() {
                        *x *= sign / norm;
                    }
                    ortho.push(v);
                }
            }
            let found = ortho.len() - seeded;
            if found != expected {
                return Err(Error::Numeric(format!(
                    "highest-weight search for l = {} found {found} vectors, expected {expected}",
                    HalfInt(twice_l)
                )));
            }

            for (k, compressed) in ortho.into_iter().skip(seeded).enumerate() {
                let mut amps = DVector::<C64>::zeros(dim);
                for (&i, &a) in sector.iter().zip(&compressed) {
                    amps[i] = C64::new(a, 0.0);
                }
                let mut current = SpinState::from_raw(n, amps);
                let mut twice_m = twice_l;
                loop {
                    let next = apply_lower(n, &current.amplitudes);
                    entries.push(BasisEntry {
                        k,
                        l: HalfInt(twice_l),
                        m: HalfInt(twice_m),
                        vector: current,
                    });
                    if twice_m == -twice_l {
                        break;
                    }
                    let norm = next.norm();
                    if norm < 1e-10 {
                        return Err(Error::Numeric(format!(
                            "ladder descent vanished at l = {}, m = {}",
                            HalfInt(twice_l),
                            HalfInt(twice_m)
                        )));
                    }
                    current = SpinState::from_raw(n, next.unscale(norm));
                    twice_m -= 2;
                }
            }
            twice_l -= 2;
        }

        if entries.len() != dim {
            return Err(Error::Numeric(format!(
                "angular basis has {} vectors, expected {dim}",
                entries.len()
            )));
        }
        Ok(AngularBasis { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries ordered by `l` descending, then `k`, then `m` descending.
    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: usize, l: HalfInt, m: HalfInt) -> Option<&BasisEntry> {
        self.entries.iter().find(|e| e.k == k && e.l == l && e.m == m)
    }

    /// Distinct `l` values, largest first, with their degeneracy counts.
    pub fn shells(&self) -> Vec<Shell> {
        let mut shells: Vec<Shell> = Vec::new();
        for e in &self.entries {
            if e.m != e.l {
                continue;
            }
            match shells.iter_mut().find(|s| s.l == e.l) {
                Some(s) => s.multiplicity += 1,
                None => shells.push(Shell {
                    l: e.l,
                    multiplicity: 1,
                }),
            }
        }
        shells
    }

    /// Columns are the basis vectors in [`entries`](Self::entries) order.
    pub fn unitary(&self) -> DMatrix<C64> {
        let dim = 1 << self.n;
        let mut u = DMatrix::zeros(dim, dim);
        for (j, e) in self.entries.iter().enumerate() {
            u.set_column(j, e.vector.amplitudes());
        }
        u
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn single_spin_sz_is_half_pauli() {
        let sz = build_collective_spin(1, Axis::Z).unwrap();
        // index 1 = up, index 0 = down
        assert_eq!(sz.matrix()[(1, 1)], c(0.5));
        assert_eq!(sz.matrix()[(0, 0)], c(-0.5));
        assert_eq!(sz.matrix()[(0, 1)], c(0.0));
    }

    #[test]
    fn all_up_eigenvalues() {
        for (n, expected) in [(2, 1.0), (3, 1.5)] {
            let sz = build_collective_spin(n, Axis::Z).unwrap();
            let up = SpinState::all_up(n).unwrap();
            let image = sz.apply(&up);
            assert!((image - up.amplitudes() * c(expected)).norm() < 1e-15);
        }
    }

    #[test]
    fn single_spin_s2_is_three_quarters() {
        let s2 = total_spin_squared(1).unwrap();
        let expected = DMatrix::<C64>::identity(2, 2) * c(0.75);
        assert!(max_abs(&(s2.matrix() - expected)) < 1e-15);
    }

    #[test]
    fn s2_spectrum_two_and_three_spins() {
        for (n, want) in [(2usize, vec![(0.0, 1), (2.0, 3)]), (3, vec![(0.75, 4), (3.75, 4)])] {
            let s2 = total_spin_squared(n).unwrap();
            let eig = s2.matrix().clone().symmetric_eigen();
            let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            vals.sort_by(f64::total_cmp);
            for (value, mult) in want {
                let count = vals.iter().filter(|v| (*v - value).abs() < 1e-10).count();
                assert_eq!(count, mult, "n={n}, eigenvalue {value}");
            }
        }
    }

    #[test]
    fn ladder_annihilates_extremal_states() {
        let raise = ladder(1, LadderDirection::Raise).unwrap();
        assert!(raise.apply(&SpinState::all_up(1).unwrap()).norm() < 1e-15);
        let lower = ladder(4, LadderDirection::Lower).unwrap();
        assert!(lower.apply(&SpinState::all_down(4).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn lowering_after_raising_the_bottom_state_scales_by_n() {
        // l(l+1) − m(m+1) with l = N/2, m = −N/2 equals N
        for n in 1..=6 {
            let sys = SpinSystem::new(n).unwrap();
            let product = sys.ladder(LadderDirection::Lower).matrix() * sys.ladder(LadderDirection::Raise).matrix();
            let down = SpinState::all_down(n).unwrap();
            let image = &product * down.amplitudes();
            assert!((image - down.amplitudes() * c(n as f64)).norm() < 1e-12);
        }
    }

    #[test]
    fn matrix_free_actions_match_dense_operators() {
        let n = 4;
        let sys = SpinSystem::new(n).unwrap();
        let v = DVector::from_fn(16, |i, _| C64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()));
        let pairs = [
            (sys.ladder(LadderDirection::Raise), apply_raise(n, &v)),
            (sys.ladder(LadderDirection::Lower), apply_lower(n, &v)),
            (sys.collective_spin(Axis::Z), apply_sz(n, &v)),
            (sys.total_spin_squared(), apply_s2(n, &v)),
        ];
        for (op, fast) in pairs {
            assert!((op.matrix() * &v - fast).norm() < 1e-12);
        }
    }

    #[test]
    fn shell_counts() {
        let shells = |n| decompose_angular_basis(n).unwrap().shells();
        assert_eq!(
            shells(2),
            vec![
                Shell {
                    l: HalfInt::from_int(1),
                    multiplicity: 1
                },
                Shell {
                    l: HalfInt::from_int(0),
                    multiplicity: 1
                }
            ]
        );
        assert_eq!(
            shells(3),
            vec![
                Shell {
                    l: HalfInt::from_twice(3),
                    multiplicity: 1
                },
                Shell {
                    l: HalfInt::from_twice(1),
                    multiplicity: 2
                }
            ]
        );
        for n in 1..=8 {
            let total: usize = shells(n)
                .iter()
                .map(|s| s.multiplicity * (s.l.twice() as usize + 1))
                .sum();
            assert_eq!(total, 1 << n);
        }
    }

    #[test]
    fn one_spin_basis_is_computational() {
        let basis = decompose_angular_basis(1).unwrap();
        let up = basis.get(0, HalfInt::from_twice(1), HalfInt::from_twice(1)).unwrap();
        let down = basis.get(0, HalfInt::from_twice(1), HalfInt::from_twice(-1)).unwrap();
        assert_eq!(up.vector, SpinState::all_up(1).unwrap());
        assert_eq!(down.vector, SpinState::all_down(1).unwrap());
    }

    #[test]
    fn catalan_multiplicities() {
        // multiplicity of l in N spins: C(N, N/2 − l) − C(N, N/2 − l − 1)
        let basis = decompose_angular_basis(6).unwrap();
        let counts: Vec<usize> = basis.shells().iter().map(|s| s.multiplicity).collect();
        assert_eq!(counts, vec![1, 5, 9, 5]);
    }

    #[test]
    fn half_int_parse_and_display() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert_eq!("0.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(1));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt::from_twice(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_int(1).to_string(), "1");
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(SpinSystem::new(0), Err(Error::Capacity(_))));
        assert!(matches!(SpinSystem::new(13), Err(Error::Capacity(_))));
        assert!(SpinSystem::with_capacity(13, 13).is_ok());
    }
}
