//! Unambiguous-discrimination measurements: optimal two-state USD,
//! state-elimination POVMs for qubit triples, and reciprocal-basis
//! measurements for n linearly independent states.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::states::{column_matrix, overlap, PureState};
use crate::{Error, Result, INDEPENDENCE_TOL, TOL};

/// PSD slack used when maximizing the conclusive scale; tighter than [`TOL`]
/// so that the completion keeps negligible weight at the optimum.
const SCALE_PSD_SLACK: f64 = 1e-12;

/// A discrimination measurement: one PSD element per conclusive outcome plus
/// an inconclusive element, summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    conclusive: Vec<DMatrix<Complex64>>,
    inconclusive: DMatrix<Complex64>,
}

impl Povm {
    pub fn new(conclusive: Vec<DMatrix<Complex64>>, inconclusive: DMatrix<Complex64>) -> Self {
        Self {
            conclusive,
            inconclusive,
        }
    }

    pub fn dim(&self) -> usize {
        self.inconclusive.nrows()
    }

    pub fn conclusive(&self) -> &[DMatrix<Complex64>] {
        &self.conclusive
    }

    pub fn inconclusive(&self) -> &DMatrix<Complex64> {
        &self.inconclusive
    }

    /// All elements, conclusive first, inconclusive last.
    pub fn elements(&self) -> impl Iterator<Item = &DMatrix<Complex64>> {
        self.conclusive.iter().chain(core::iter::once(&self.inconclusive))
    }
}

/// A constructed USD measurement together with its per-state success
/// probabilities under equal priors.
#[derive(Debug, Clone)]
pub struct UsdResult {
    pub povm: Povm,
    pub success_per_state: Vec<f64>,
    pub average_success: f64,
}

impl UsdResult {
    fn new(povm: Povm, success_per_state: Vec<f64>) -> Self {
        let average_success =
            success_per_state.iter().sum::<f64>() / success_per_state.len() as f64;
        Self {
            povm,
            success_per_state,
            average_success,
        }
    }
}

/// Born probability `<s|E|s>` of POVM element `e` on state `s`.
pub fn born(s: &PureState, e: &DMatrix<Complex64>) -> f64 {
    (s.amplitudes().dotc(&(e * s.amplitudes()))).re
}

fn projector(v: &DVector<Complex64>) -> DMatrix<Complex64> {
    v * v.adjoint()
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &l| acc.min(l))
}

/// Entrywise comparison against the identity within `tol`.
pub(crate) fn is_identity(m: &DMatrix<Complex64>, tol: f64) -> bool {
    m.nrows() == m.ncols()
        && (0..m.nrows()).all(|r| {
            (0..m.ncols()).all(|c| {
                let target = if r == c { Complex64::ONE } else { Complex64::ZERO };
                (m[(r, c)] - target).norm() <= tol
            })
        })
}

/// True iff all elements are PSD (smallest eigenvalue >= -[`TOL`]) and the
/// elements sum to the identity entrywise within [`TOL`].
pub fn validate_povm(p: &Povm) -> bool {
    let dim = p.dim();
    let mut sum = DMatrix::from_element(dim, dim, Complex64::ZERO);
    for e in p.elements() {
        if e.nrows() != dim || e.ncols() != dim {
            return false;
        }
        if min_eigenvalue(e) < -TOL {
            return false;
        }
        sum += e;
    }
    is_identity(&sum, TOL)
}

/// The qubit state orthogonal to `s`.
pub fn orthogonal_qubit(s: &PureState) -> Result<PureState> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: s.dim(),
        });
    }
    PureState::new(alloc::vec![-s.amplitude(1).conj(), s.amplitude(0).conj()])
}

/// Largest `c` such that `I - c * m` stays PSD, found by bisection on the
/// smallest eigenvalue.
fn max_scale(m: &DMatrix<Complex64>) -> f64 {
    let identity = DMatrix::identity(m.nrows(), m.ncols());
    let psd_at = |c: f64| min_eigenvalue(&(&identity - m * Complex64::from(c))) >= -SCALE_PSD_SLACK;
    let (mut lo, mut hi) = (0.0_f64, 2.0_f64);
    debug_assert!(psd_at(lo));
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if psd_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Optimal equal-prior unambiguous discrimination of two pure states: each
/// conclusive element annihilates the other state and succeeds with
/// probability `1 - |<s1|s2>|`.
pub fn usd_two_states(s1: &PureState, s2: &PureState) -> Result<UsdResult> {
    let ov = overlap(s1, s2)?.norm();
    if ov >= 1.0 - TOL {
        return Err(Error::UnambiguousImpossible(
            "two-state USD needs linearly independent states",
        ));
    }
    let scale = Complex64::from(1.0 / (1.0 + ov));
    // Component of s1 orthogonal to s2 (and vice versa), within their span.
    let perp = |kept: &PureState, killed: &PureState| -> Result<DVector<Complex64>> {
        let c = overlap(killed, kept)?;
        let v = kept.amplitudes() - killed.amplitudes() * c;
        let norm = libm::sqrt(v.iter().map(|a| a.norm_sqr()).sum());
        Ok(v / Complex64::from(norm))
    };
    let p1 = projector(&perp(s1, s2)?) * scale;
    let p2 = projector(&perp(s2, s1)?) * scale;
    let inconclusive = DMatrix::identity(s1.dim(), s1.dim()) - &p1 - &p2;
    let povm = Povm::new(alloc::vec![p1, p2], inconclusive);
    let successes = alloc::vec![
        born(s1, &povm.conclusive()[0]),
        born(s2, &povm.conclusive()[1]),
    ];
    Ok(UsdResult::new(povm, successes))
}

/// Elimination measurement for three pairwise independent qubit states:
/// outcome `i` certifies the input was not state `i`, with the common scale
/// pushed as high as the completion allows. Success probabilities average the
/// identification probability over the two candidate pairs containing each
/// state.
pub fn elimination_povm(states: &[PureState]) -> Result<UsdResult> {
    if states.len() != 3 {
        return Err(Error::InvalidEnsemble("elimination needs exactly 3 states"));
    }
    for s in states {
        if s.dim() != 2 {
            return Err(Error::InvalidEnsemble("elimination is a qubit construction"));
        }
    }
    for i in 0..3 {
        for k in 0..i {
            if overlap(&states[i], &states[k])?.norm() >= 1.0 - TOL {
                return Err(Error::InvalidEnsemble(
                    "states must be pairwise linearly independent",
                ));
            }
        }
    }
    let tilted: Vec<PureState> = states
        .iter()
        .map(orthogonal_qubit)
        .collect::<Result<_>>()?;
    let sum: DMatrix<Complex64> = tilted
        .iter()
        .map(|t| projector(t.amplitudes()))
        .fold(DMatrix::from_element(2, 2, Complex64::ZERO), |a, b| a + b);
    let c = Complex64::from(max_scale(&sum));
    let conclusive: Vec<_> = tilted
        .iter()
        .map(|t| projector(t.amplitudes()) * c)
        .collect();
    let inconclusive = DMatrix::identity(2, 2) - &sum * c;
    let povm = Povm::new(conclusive, inconclusive);
    // Identifying state i in the pair {i, k} means observing outcome k.
    let successes: Vec<f64> = (0..3)
        .map(|i| {
            (0..3)
                .filter(|&k| k != i)
                .map(|k| born(&states[i], &povm.conclusive()[k]))
                .sum::<f64>()
                / 2.0
        })
        .collect();
    Ok(UsdResult::new(povm, successes))
}

/// Reciprocal-basis USD for n linearly independent states in dimension n:
/// conclusive element `i` projects onto the dual vector annihilating every
/// other state, under one uniform scale maximized against the completion.
pub fn usd_reciprocal(states: &[PureState]) -> Result<UsdResult> {
    let n = states.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let dim = states[0].dim();
    if dim != n {
        return Err(Error::DimensionMismatch { expected: n, got: dim });
    }
    if !crate::states::is_linearly_independent(states, INDEPENDENCE_TOL)? {
        return Err(Error::UnambiguousImpossible(
            "reciprocal USD needs linearly independent states",
        ));
    }
    let a = column_matrix(states);
    let a_inv = a
        .try_inverse()
        .ok_or(Error::UnambiguousImpossible("state matrix is singular"))?;
    // Row i of the inverse is the dual bra: <chi_i|phi_k> = delta_ik.
    let duals: Vec<DVector<Complex64>> = (0..n)
        .map(|i| {
            let v: DVector<Complex64> = a_inv.row(i).adjoint();
            let norm = libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum());
            v / Complex64::from(norm)
        })
        .collect();
    let sum: DMatrix<Complex64> = duals
        .iter()
        .map(projector)
        .fold(DMatrix::from_element(n, n, Complex64::ZERO), |acc, p| acc + p);
    let c = Complex64::from(max_scale(&sum));
    let conclusive: Vec<_> = duals.iter().map(|d| projector(d) * c).collect();
    let inconclusive = DMatrix::identity(n, n) - &sum * c;
    let povm = Povm::new(conclusive, inconclusive);
    let successes: Vec<f64> = states
        .iter()
        .enumerate()
        .map(|(i, s)| born(s, &povm.conclusive()[i]))
        .collect();
    Ok(UsdResult::new(povm, successes))
}
