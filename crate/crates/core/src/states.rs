//! Pure-state primitives: overlaps, Gram matrices, linear independence,
//! coherence rank, and mutual unbiasedness.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result, TOL};

/// A normalized pure state with a canonical global phase: the first amplitude
/// of modulus above [`TOL`] is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Builds a state from amplitudes, checking normalization and fixing the
    /// global phase.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let v = DVector::from_vec(amplitudes);
        let norm_sq: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self::canonicalize(v))
    }

    /// Builds a state from arbitrary nonzero amplitudes, rescaling to unit
    /// norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let v = DVector::from_vec(amplitudes);
        let norm_sq: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq < TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self::canonicalize(v / Complex64::from(libm::sqrt(norm_sq))))
    }

    /// Real-amplitude convenience constructor (checked like [`PureState::new`]).
    pub fn real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// The computational basis state `|k>` in the given dimension.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dim {dim}");
        let mut v = DVector::from_element(dim, Complex64::ZERO);
        v[k] = Complex64::ONE;
        Self { amplitudes: v }
    }

    /// A qubit `a|0> + b|1>` with real coefficients.
    pub fn qubit(a: f64, b: f64) -> Result<Self> {
        Self::real(&[a, b])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    /// True when both states agree entrywise within `tol` (canonical phases
    /// make this a physical equality test).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    fn canonicalize(v: DVector<Complex64>) -> Self {
        let mut v = v;
        if let Some(lead) = v.iter().find(|a| a.norm() > TOL) {
            let phase = lead / lead.norm();
            v /= phase;
        }
        Self { amplitudes: v }
    }
}

/// An orthonormal basis: `dim` pairwise-orthogonal states of dimension `dim`.
#[derive(Debug, Clone)]
pub struct Basis {
    states: Vec<PureState>,
}

impl Basis {
    pub fn new(states: Vec<PureState>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyInput);
        }
        let dim = states[0].dim();
        if states.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: states.len(),
            });
        }
        for i in 0..states.len() {
            for k in 0..i {
                if overlap(&states[i], &states[k])?.norm() >= TOL {
                    return Err(Error::InvalidInput("basis states are not orthogonal"));
                }
            }
        }
        Ok(Self { states })
    }

    /// The computational basis of the given dimension.
    pub fn computational(dim: usize) -> Self {
        Self {
            states: (0..dim).map(|k| PureState::basis_state(dim, k)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }
}

/// The inner product `<s1|s2>`.
pub fn overlap(s1: &PureState, s2: &PureState) -> Result<Complex64> {
    if s1.dim() != s2.dim() {
        return Err(Error::DimensionMismatch {
            expected: s1.dim(),
            got: s2.dim(),
        });
    }
    Ok(s1.amplitudes().dotc(s2.amplitudes()))
}

/// Stacks states as matrix columns.
pub(crate) fn column_matrix(states: &[PureState]) -> DMatrix<Complex64> {
    let dim = states[0].dim();
    DMatrix::from_fn(dim, states.len(), |r, c| states[c].amplitude(r))
}

fn check_common_dim(states: &[PureState]) -> Result<usize> {
    let dim = states.first().ok_or(Error::EmptyInput)?.dim();
    for s in states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: s.dim(),
            });
        }
    }
    Ok(dim)
}

/// True iff the smallest singular value of the column matrix exceeds `tol`.
/// Use [`INDEPENDENCE_TOL`] unless there is a reason not to.
pub fn is_linearly_independent(states: &[PureState], tol: f64) -> Result<bool> {
    let dim = check_common_dim(states)?;
    if states.len() > dim {
        return Ok(false);
    }
    let m = column_matrix(states);
    let sigma_min = m
        .svd(false, false)
        .singular_values
        .iter()
        .fold(f64::INFINITY, |acc, &s| acc.min(s));
    Ok(sigma_min > tol)
}

/// Number of basis states with amplitude of modulus above [`TOL`] in `s`.
pub fn coherence_rank(s: &PureState, basis: &Basis) -> Result<usize> {
    if s.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: s.dim(),
        });
    }
    let mut rank = 0;
    for b in basis.states() {
        if overlap(b, s)?.norm() > TOL {
            rank += 1;
        }
    }
    Ok(rank)
}

/// True iff every cross overlap between the two bases has modulus
/// `1/sqrt(D)` within `tol`.
pub fn are_mutually_unbiased(b1: &Basis, b2: &Basis, tol: f64) -> Result<bool> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch {
            expected: b1.dim(),
            got: b2.dim(),
        });
    }
    let target = 1.0 / libm::sqrt(b1.dim() as f64);
    for s1 in b1.states() {
        for s2 in b2.states() {
            if (overlap(s1, s2)?.norm() - target).abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Gram matrix: entry `(i, k)` is `<states[i]|states[k]>`.
pub fn gram(states: &[PureState]) -> Result<DMatrix<Complex64>> {
    check_common_dim(states)?;
    let n = states.len();
    let mut g = DMatrix::from_element(n, n, Complex64::ZERO);
    for i in 0..n {
        for k in 0..n {
            g[(i, k)] = overlap(&states[i], &states[k])?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::INDEPENDENCE_TOL;
    use approx::assert_abs_diff_eq;

    const SQRT_2_INV: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn trine() -> Vec<PureState> {
        crate::families::trine_states().states().to_vec()
    }

    #[test]
    fn overlap_identity_and_orthogonal() {
        let zero = PureState::basis_state(2, 0);
        let one = PureState::basis_state(2, 1);
        assert_abs_diff_eq!(overlap(&zero, &zero).unwrap().norm(), 1.0, epsilon = TOL);
        assert_abs_diff_eq!(overlap(&zero, &one).unwrap().norm(), 0.0, epsilon = TOL);
    }

    #[test]
    fn overlap_trine_pair_is_half() {
        let t = trine();
        assert_abs_diff_eq!(overlap(&t[0], &t[1]).unwrap().norm(), 0.5, epsilon = TOL);
    }

    #[test]
    fn overlap_dimension_mismatch() {
        let q = PureState::basis_state(2, 0);
        let t = PureState::basis_state(3, 0);
        assert!(matches!(
            overlap(&q, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn independence_basics() {
        let zero = PureState::basis_state(2, 0);
        let one = PureState::basis_state(2, 1);
        assert!(is_linearly_independent(&[zero.clone(), one], INDEPENDENCE_TOL).unwrap());
        assert!(!is_linearly_independent(&[zero.clone(), zero], INDEPENDENCE_TOL).unwrap());
    }

    #[test]
    fn independence_matches_determinant_oracle() {
        // 2x2 determinant |ab' - a'b| = 0.28 > 0 for these coefficients.
        let s1 = PureState::qubit(0.6, 0.8).unwrap();
        let s2 = PureState::qubit(0.8, 0.6).unwrap();
        assert!(is_linearly_independent(&[s1, s2], INDEPENDENCE_TOL).unwrap());
    }

    #[test]
    fn independence_empty_input() {
        assert!(matches!(
            is_linearly_independent(&[], INDEPENDENCE_TOL),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn coherence_rank_examples() {
        let b3 = Basis::computational(3);
        assert_eq!(
            coherence_rank(&PureState::basis_state(3, 1), &b3).unwrap(),
            1
        );
        let s = 1.0 / libm::sqrt(3.0);
        let uniform = PureState::real(&[s, s, s]).unwrap();
        assert_eq!(coherence_rank(&uniform, &b3).unwrap(), 3);

        let b2 = Basis::computational(2);
        let plus = PureState::qubit(SQRT_2_INV, SQRT_2_INV).unwrap();
        assert_eq!(coherence_rank(&plus, &b2).unwrap(), 2);
    }

    #[test]
    fn mutual_unbiasedness_examples() {
        let comp = Basis::computational(2);
        let hadamard = Basis::new(alloc::vec![
            PureState::qubit(SQRT_2_INV, SQRT_2_INV).unwrap(),
            PureState::qubit(SQRT_2_INV, -SQRT_2_INV).unwrap(),
        ])
        .unwrap();
        assert!(are_mutually_unbiased(&comp, &hadamard, TOL).unwrap());
        assert!(!are_mutually_unbiased(&comp, &comp, TOL).unwrap());

        // Overlap 0.866 != 1/sqrt(2).
        let skew = Basis::new(alloc::vec![
            PureState::qubit(libm::sqrt(3.0) / 2.0, 0.5).unwrap(),
            PureState::qubit(0.5, -libm::sqrt(3.0) / 2.0).unwrap(),
        ])
        .unwrap();
        assert!(!are_mutually_unbiased(&comp, &skew, TOL).unwrap());
    }

    #[test]
    fn gram_examples() {
        let g = gram(&[PureState::basis_state(2, 0), PureState::basis_state(2, 1)]).unwrap();
        assert!(crate::usd::is_identity(&g, TOL));

        let g = gram(&trine()).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let expected = if i == k { 1.0 } else { 0.5 };
                assert_abs_diff_eq!(g[(i, k)].norm(), expected, epsilon = TOL);
            }
        }

        // Direct inner products of the three-state family at eps = 0.1.
        let f = crate::families::solution_eq8(0.1).unwrap();
        let g = gram(f.states()).unwrap();
        assert_abs_diff_eq!(g[(0, 1)].norm(), 0.9, epsilon = TOL);
        assert_abs_diff_eq!(g[(1, 2)].norm(), libm::sqrt(0.19), epsilon = TOL);
        assert_abs_diff_eq!(g[(0, 2)].norm(), 0.0, epsilon = TOL);
        for i in 0..3 {
            assert_abs_diff_eq!(g[(i, i)].norm(), 1.0, epsilon = TOL);
        }
    }

    #[test]
    fn canonical_phase_is_applied() {
        let phase = Complex64::new(0.0, 1.0);
        let s = PureState::new(alloc::vec![
            phase * Complex64::from(SQRT_2_INV),
            phase * Complex64::from(SQRT_2_INV),
        ])
        .unwrap();
        assert_abs_diff_eq!(s.amplitude(0).im, 0.0, epsilon = TOL);
        assert!(s.amplitude(0).re > 0.0);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(
            PureState::qubit(1.0, 1.0),
            Err(Error::NotNormalized { .. })
        ));
    }
}
