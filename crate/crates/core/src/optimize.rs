//! Derivative-free maximization over real qubit encodings: exhaustive grid
//! search with local refinement, deterministic and reproducible.
//!
//! States are parametrized by angles on the real great circle,
//! `theta -> cos(theta)|0> + sin(theta)|1>`, with the first state pinned to
//! `|0>`; all objectives are invariant under a common rotation, so this
//! reaches every real optimum.

use alloc::vec;
use alloc::vec::Vec;

use crate::states::{overlap, PureState};
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;

/// Rounds of local grid refinement after the coarse sweep, each shrinking the
/// step tenfold.
pub const REFINEMENT_ROUNDS: usize = 3;

/// A maximization outcome: the value, the attaining parameters, and the
/// search configuration that produced it.
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub objective_name: &'static str,
    pub best_value: f64,
    pub best_parameters: Vec<(&'static str, f64)>,
    pub grid_resolution: f64,
    pub refinement_rounds: usize,
}

impl OptimizationResult {
    /// Angles of the encoded states, including the pinned leading zero.
    pub fn angles(&self) -> Vec<f64> {
        let mut angles = vec![0.0];
        angles.extend(self.best_parameters.iter().map(|(_, v)| *v));
        angles
    }
}

/// The encoding named by a parameter point.
pub fn states_from_angles(angles: &[f64]) -> Vec<PureState> {
    angles
        .iter()
        .map(|&t| PureState::qubit(libm::cos(t), libm::sin(t)).unwrap())
        .collect()
}

/// Smallest pairwise success `1 - |overlap|` over all state pairs.
pub fn epsilon_objective(states: &[PureState]) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..states.len() {
        for k in 0..i {
            min = min.min(1.0 - overlap(&states[i], &states[k]).unwrap().norm());
        }
    }
    min
}

/// Average pairwise success of the n = 2 game.
pub fn average_objective(states: &[PureState]) -> f64 {
    crate::game::avg_success_pairwise(states).unwrap()
}

fn check_resolution(resolution: f64) -> Result<()> {
    if !(resolution > 0.0 && resolution <= 0.01) {
        return Err(Error::InvalidParameter(
            "grid resolution must lie in (0, 0.01]",
        ));
    }
    Ok(())
}

/// Exhaustive grid over a box followed by shrinking local grids around the
/// incumbent. Ties keep the lexicographically smallest parameters, so runs
/// are order-independent and repeatable.
fn grid_refine<F>(f: F, lo: &[f64], hi: &[f64], resolution: f64) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64,
{
    let dims = lo.len();
    let mut best_value = f64::NEG_INFINITY;
    let mut best = lo.to_vec();

    let sweep = |center: &[f64], half_width: f64, step: f64,
                     best_value: &mut f64,
                     best: &mut Vec<f64>| {
        let counts: Vec<usize> = (0..dims)
            .map(|_| (2.0 * half_width / step) as usize + 1)
            .collect();
        let mut idx = vec![0usize; dims];
        let mut point = vec![0.0; dims];
        loop {
            for d in 0..dims {
                point[d] = (center[d] - half_width + idx[d] as f64 * step)
                    .clamp(lo[d], hi[d]);
            }
            let v = f(&point);
            if v > *best_value {
                *best_value = v;
                best.clone_from(&point);
            }
            // Odometer increment.
            let mut d = dims;
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < counts[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
    };

    let center: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let half_width = 0.5 * (hi[0] - lo[0]);
    sweep(&center, half_width, resolution, &mut best_value, &mut best);

    let mut step = resolution;
    for _ in 0..REFINEMENT_ROUNDS {
        let prev = step;
        step /= 10.0;
        let center = best.clone();
        sweep(&center, prev, step, &mut best_value, &mut best);
    }
    (best_value, best)
}

fn angle_objective<F>(f: F) -> impl Fn(&[f64]) -> f64
where
    F: Fn(&[PureState]) -> f64,
{
    move |params: &[f64]| {
        let mut angles = vec![0.0];
        angles.extend_from_slice(params);
        f(&states_from_angles(&angles))
    }
}

/// Maximal worst-case pairwise success over three-state encodings; the
/// optimum is the trine at 0.5.
pub fn maximize_epsilon_d3(resolution: f64) -> Result<OptimizationResult> {
    check_resolution(resolution)?;
    let (best_value, p) = grid_refine(
        angle_objective(epsilon_objective),
        &[0.0, 0.0],
        &[PI, PI],
        resolution,
    );
    Ok(OptimizationResult {
        objective_name: "eps-d3",
        best_value,
        best_parameters: vec![("theta2", p[0]), ("theta3", p[1])],
        grid_resolution: resolution,
        refinement_rounds: REFINEMENT_ROUNDS,
    })
}

/// Same objective restricted to the subfamily with the second and third
/// states orthogonal; caps at `1 - 1/sqrt(2)`.
pub fn maximize_epsilon_d3_orthogonal(resolution: f64) -> Result<OptimizationResult> {
    check_resolution(resolution)?;
    let objective = |params: &[f64]| {
        let angles = [0.0, params[0], PI / 2.0];
        epsilon_objective(&states_from_angles(&angles))
    };
    let (best_value, p) = grid_refine(objective, &[0.0], &[PI], resolution);
    Ok(OptimizationResult {
        objective_name: "eps-d3-orthogonal",
        best_value,
        best_parameters: vec![("theta2", p[0])],
        grid_resolution: resolution,
        refinement_rounds: REFINEMENT_ROUNDS,
    })
}

/// Maximal average success over three-state encodings subject to every
/// pairwise success staying at least `eps`.
pub fn maximize_avg_given_epsilon(eps: f64, resolution: f64) -> Result<OptimizationResult> {
    check_resolution(resolution)?;
    if eps <= 0.0 {
        return Err(Error::InvalidParameter("eps must be positive"));
    }
    if eps > 0.5 {
        return Err(Error::Infeasible(
            "no three-state encoding reaches pairwise success above 0.5",
        ));
    }
    let objective = angle_objective(move |states: &[PureState]| {
        if epsilon_objective(states) >= eps - 1e-9 {
            average_objective(states)
        } else {
            f64::NEG_INFINITY
        }
    });
    let (best_value, p) = grid_refine(objective, &[0.0, 0.0], &[PI, PI], resolution);
    Ok(OptimizationResult {
        objective_name: "avg-given-eps",
        best_value,
        best_parameters: vec![("theta2", p[0]), ("theta3", p[1])],
        grid_resolution: resolution,
        refinement_rounds: REFINEMENT_ROUNDS,
    })
}

/// Maximal worst-case pairwise success over four-state encodings; the
/// optimum is a pair of mutually unbiased bases at `1 - 1/sqrt(2)`.
pub fn maximize_epsilon_d4(resolution: f64) -> Result<OptimizationResult> {
    check_resolution_d4(resolution)?;
    let (best_value, p) = grid_refine(
        angle_objective(epsilon_objective),
        &[0.0, 0.0, 0.0],
        &[PI, PI, PI],
        resolution,
    );
    Ok(OptimizationResult {
        objective_name: "eps-d4",
        best_value,
        best_parameters: vec![("theta2", p[0]), ("theta3", p[1]), ("theta4", p[2])],
        grid_resolution: resolution,
        refinement_rounds: REFINEMENT_ROUNDS,
    })
}

// The three-angle sweep visits (pi / resolution)^3 points; cap the work at
// roughly 10^8 evaluations.
fn check_resolution_d4(resolution: f64) -> Result<()> {
    if !(resolution > 0.0 && resolution <= 0.02) {
        return Err(Error::InvalidParameter(
            "grid resolution must lie in (0, 0.02]",
        ));
    }
    if resolution < 0.005 {
        return Err(Error::InvalidParameter(
            "three-angle grids finer than 0.005 are impractical",
        ));
    }
    Ok(())
}

/// Unconstrained maximal average over three-state encodings; tops out at 2/3
/// exactly where two states coincide and the game is lost.
pub fn verify_prop3_sup(resolution: f64) -> Result<OptimizationResult> {
    check_resolution(resolution)?;
    let (best_value, p) = grid_refine(
        angle_objective(average_objective),
        &[0.0, 0.0],
        &[PI, PI],
        resolution,
    );
    Ok(OptimizationResult {
        objective_name: "prop3-sup",
        best_value,
        best_parameters: vec![("theta2", p[0]), ("theta3", p[1])],
        grid_resolution: resolution,
        refinement_rounds: REFINEMENT_ROUNDS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EPS_CAP: f64 = crate::families::EPS_CAP;

    fn closed_form_avg(eps: f64) -> f64 {
        (2.0 + eps - libm::sqrt(2.0 * eps - eps * eps)) / 3.0
    }

    /// Distance to the nearest trine configuration modulo the symmetries of
    /// the parametrization (state order and angle reflection).
    fn trine_distance(p: &[f64]) -> f64 {
        let candidates = [
            [PI / 3.0, 2.0 * PI / 3.0],
            [2.0 * PI / 3.0, PI / 3.0],
        ];
        candidates
            .iter()
            .map(|c| {
                p.iter()
                    .zip(c)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0_f64, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn epsilon_d3_finds_trine() {
        let r = maximize_epsilon_d3(0.005).unwrap();
        assert_abs_diff_eq!(r.best_value, 0.5, epsilon = 1e-4);
        assert!(trine_distance(&[r.best_parameters[0].1, r.best_parameters[1].1]) < 1e-3);
        // Objective at the exact trine parameters.
        let exact = epsilon_objective(&states_from_angles(&[0.0, PI / 3.0, 2.0 * PI / 3.0]));
        assert_abs_diff_eq!(exact, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn epsilon_d3_orthogonal_subfamily_caps_lower() {
        let r = maximize_epsilon_d3_orthogonal(0.005).unwrap();
        assert_abs_diff_eq!(r.best_value, EPS_CAP, epsilon = 1e-4);
    }

    #[test]
    fn avg_given_eps_matches_closed_form() {
        for eps in [0.1, EPS_CAP] {
            let r = maximize_avg_given_epsilon(eps, 0.005).unwrap();
            assert_abs_diff_eq!(r.best_value, closed_form_avg(eps), epsilon = 1e-4);
        }
        // Beyond the closed-form regime: the trine is feasible (all pairwise
        // successes 0.5 >= 0.45), so the optimum is at least its average, and
        // the returned configuration must itself satisfy the constraint.
        let r = maximize_avg_given_epsilon(0.45, 0.005).unwrap();
        assert!(r.best_value >= 0.5 - 1e-4);
        assert!(epsilon_objective(&states_from_angles(&r.angles())) >= 0.45 - 1e-9);
        assert!(matches!(
            maximize_avg_given_epsilon(0.51, 0.005),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn epsilon_d4_finds_mub() {
        let r = maximize_epsilon_d4(0.02).unwrap();
        assert_abs_diff_eq!(r.best_value, EPS_CAP, epsilon = 1e-4);
        // Evaluated at the known optima directly.
        let at_mub = epsilon_objective(crate::families::mub_states_d4().states());
        assert_abs_diff_eq!(at_mub, EPS_CAP, epsilon = 1e-12);
        let at_eq14 = epsilon_objective(crate::families::solution_eq14(0.1).unwrap().states());
        assert_abs_diff_eq!(at_eq14, 0.1, epsilon = 1e-12);
    }

    #[test]
    fn prop3_supremum_and_exclusion() {
        let r = verify_prop3_sup(0.005).unwrap();
        assert_abs_diff_eq!(r.best_value, 2.0 / 3.0, epsilon = 1e-4);
        // At the optimum the worst pair is (numerically) fully overlapping,
        // so the game is lost there.
        let states = states_from_angles(&r.angles());
        assert!(epsilon_objective(&states) < 1e-3);
        // A degenerate pair of coinciding states attains the same average
        // while losing the game.
        let degenerate = states_from_angles(&[0.0, PI / 2.0, PI / 2.0]);
        assert_abs_diff_eq!(average_objective(&degenerate), 2.0 / 3.0, epsilon = 1e-12);
        // At the trine the average is strictly lower.
        let trine = states_from_angles(&[0.0, PI / 3.0, 2.0 * PI / 3.0]);
        assert_abs_diff_eq!(average_objective(&trine), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn results_reevaluate_to_their_best_value() {
        let r = maximize_epsilon_d3(0.01).unwrap();
        let v = epsilon_objective(&states_from_angles(&r.angles()));
        assert_abs_diff_eq!(v, r.best_value, epsilon = 1e-9);

        let r = verify_prop3_sup(0.01).unwrap();
        let v = average_objective(&states_from_angles(&r.angles()));
        assert_abs_diff_eq!(v, r.best_value, epsilon = 1e-9);
    }

    #[test]
    fn refinement_never_hurts() {
        // The refined optimum is at least as good as the coarse-grid optimum.
        let coarse = {
            let obj = angle_objective(epsilon_objective);
            let mut best = f64::NEG_INFINITY;
            let steps = (PI / 0.01) as usize + 1;
            for i in 0..steps {
                for k in 0..steps {
                    best = best.max(obj(&[i as f64 * 0.01, k as f64 * 0.01]));
                }
            }
            best
        };
        let refined = maximize_epsilon_d3(0.01).unwrap().best_value;
        assert!(refined >= coarse - 1e-12);
    }

    #[test]
    fn objectives_rotation_invariant() {
        use nalgebra::DMatrix;
        use num_complex::Complex64;
        // A fixed rotation applied to every state leaves both objectives
        // unchanged.
        let (c, s) = (libm::cos(0.7), libm::sin(0.7));
        let rot = DMatrix::from_row_slice(2, 2, &[
            Complex64::from(c),
            Complex64::from(-s),
            Complex64::from(s),
            Complex64::from(c),
        ]);
        let states = states_from_angles(&[0.0, 0.9, 2.1]);
        let rotated: alloc::vec::Vec<PureState> = states
            .iter()
            .map(|st| {
                PureState::new((&rot * st.amplitudes()).iter().copied().collect()).unwrap()
            })
            .collect();
        assert_abs_diff_eq!(
            epsilon_objective(&states),
            epsilon_objective(&rotated),
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            average_objective(&states),
            average_objective(&rotated),
            epsilon = 1e-9
        );
    }

    #[test]
    fn rejects_coarse_resolution() {
        assert!(maximize_epsilon_d3(0.02).is_err());
        assert!(verify_prop3_sup(0.0).is_err());
    }
}
