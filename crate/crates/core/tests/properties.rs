//! Randomized invariant checks over the whole parameter space: state
//! canonicalization, overlap algebra, measurement validity, and the
//! equivalence of the two average-success decompositions.

use num_complex::Complex64;
use proptest::prelude::*;

use unambig_core::game::{avg_success_pairwise, avg_success_via_triples};
use unambig_core::states::{overlap, PureState};
use unambig_core::usd::{born, usd_two_states, validate_povm};
use unambig_core::TOL;

fn qubit(theta: f64, phase: f64) -> PureState {
    PureState::new(vec![
        Complex64::from(theta.cos()),
        Complex64::from(theta.sin()) * Complex64::new(phase.cos(), phase.sin()),
    ])
    .unwrap()
}

fn angle() -> impl Strategy<Value = f64> {
    0.0..std::f64::consts::PI
}

fn phase() -> impl Strategy<Value = f64> {
    0.0..std::f64::consts::TAU
}

proptest! {
    #[test]
    fn states_are_normalized_with_canonical_phase(t in angle(), p in phase()) {
        let s = qubit(t, p);
        let norm_sq: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        prop_assert!((norm_sq - 1.0).abs() <= TOL);
        let leading = s.amplitudes().iter().find(|a| a.norm() > TOL).unwrap();
        prop_assert!(leading.im.abs() <= TOL && leading.re > 0.0);
    }

    #[test]
    fn overlap_is_hermitian_and_bounded(
        t1 in angle(), p1 in phase(), t2 in angle(), p2 in phase()
    ) {
        let (s1, s2) = (qubit(t1, p1), qubit(t2, p2));
        let fwd = overlap(&s1, &s2).unwrap();
        let bwd = overlap(&s2, &s1).unwrap();
        prop_assert!((fwd - bwd.conj()).norm() <= TOL);
        prop_assert!(fwd.norm() <= 1.0 + TOL);
    }

    #[test]
    fn two_state_usd_is_optimal_valid_and_unambiguous(
        t1 in angle(), p1 in phase(), t2 in angle(), p2 in phase()
    ) {
        let (s1, s2) = (qubit(t1, p1), qubit(t2, p2));
        let ov = overlap(&s1, &s2).unwrap().norm();
        prop_assume!(ov < 1.0 - 1e-6);
        let r = usd_two_states(&s1, &s2).unwrap();
        prop_assert!(validate_povm(&r.povm));
        prop_assert!((r.average_success - (1.0 - ov)).abs() <= TOL);
        // Conclusive outcomes never misidentify.
        prop_assert!(born(&s2, &r.povm.conclusive()[0]) <= TOL);
        prop_assert!(born(&s1, &r.povm.conclusive()[1]) <= TOL);
    }

    #[test]
    fn average_decompositions_agree(
        angles in prop::collection::vec((angle(), phase()), 3..7)
    ) {
        let states: Vec<PureState> =
            angles.iter().map(|&(t, p)| qubit(t, p)).collect();
        let direct = avg_success_pairwise(&states).unwrap();
        let via_triples = avg_success_via_triples(&states).unwrap();
        prop_assert!((direct - via_triples).abs() <= 1e-9);
        prop_assert!((0.0..=1.0 + TOL).contains(&direct));
    }
}
