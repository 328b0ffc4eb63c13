//! Constructors for the named encoding families, each carrying its
//! analytically expected success metrics where a closed form exists.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::game::SuccessReport;
use crate::states::PureState;
use crate::{Error, Result, TOL};

const SQRT_2_INV: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// The largest epsilon reachable inside the overlap-sum-constrained problems:
/// `1 - 1/sqrt(2)`.
pub const EPS_CAP: f64 = 1.0 - SQRT_2_INV;

/// A named encoding with its parameters and, when known in closed form, the
/// expected per-event success report of the associated pairwise game.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    name: &'static str,
    parameters: Vec<(&'static str, f64)>,
    states: Vec<PureState>,
    expected: Option<SuccessReport>,
}

impl FamilyInstance {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn parameters(&self) -> &[(&'static str, f64)] {
        &self.parameters
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn expected(&self) -> Option<&SuccessReport> {
        self.expected.as_ref()
    }
}

/// The general three-state family: `phi1 = |0>`, `phi2 = a|0> + b|1>`,
/// `phi3 = a1|1> + a2 (b* |0> - a* |1>)`. The pairwise overlap sum collapses
/// to `|a| + |b| (|a1| + |a2|)`.
pub fn family_eq2(
    a: Complex64,
    b: Complex64,
    a1: Complex64,
    a2: Complex64,
) -> Result<FamilyInstance> {
    if (a.norm_sqr() + b.norm_sqr() - 1.0).abs() > TOL {
        return Err(Error::InvalidParameter("|a|^2 + |b|^2 must equal 1"));
    }
    let phi3 = vec![a2 * b.conj(), a1 - a2 * a.conj()];
    let norm_sq: f64 = phi3.iter().map(|c| c.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > TOL {
        return Err(Error::InvalidParameter(
            "a1, a2 do not yield a normalized third state",
        ));
    }
    Ok(FamilyInstance {
        name: "eq2",
        parameters: vec![
            ("abs_a", a.norm()),
            ("abs_b", b.norm()),
            ("abs_a1", a1.norm()),
            ("abs_a2", a2.norm()),
        ],
        states: vec![
            PureState::basis_state(2, 0),
            PureState::new(vec![a, b])?,
            PureState::new(phi3)?,
        ],
        expected: None,
    })
}

/// The minimal-overlap-sum solution with per-pair success at least `eps`:
/// `|0>`, `(1-eps)|0> + sqrt(2 eps - eps^2)|1>`, `|1>`.
pub fn solution_eq8(eps: f64) -> Result<FamilyInstance> {
    if eps <= 0.0 || eps > EPS_CAP + TOL {
        return Err(Error::InvalidParameter(
            "eps must lie in (0, 1 - 1/sqrt(2)]",
        ));
    }
    let cross = libm::sqrt(2.0 * eps - eps * eps);
    let states = vec![
        PureState::basis_state(2, 0),
        PureState::qubit(1.0 - eps, cross)?,
        PureState::basis_state(2, 1),
    ];
    // Lexicographic events {0,1}, {0,2}, {1,2}.
    let expected = SuccessReport::new(vec![eps, 1.0, 1.0 - cross]);
    Ok(FamilyInstance {
        name: "eq8",
        parameters: vec![("eps", eps)],
        states,
        expected: Some(expected),
    })
}

/// The trine ensemble: three qubit states with pairwise overlap 1/2.
pub fn trine_states() -> FamilyInstance {
    let r3 = libm::sqrt(3.0);
    FamilyInstance {
        name: "trine",
        parameters: vec![],
        states: vec![
            PureState::basis_state(2, 0),
            PureState::qubit(0.5, 0.5 * r3).unwrap(),
            PureState::qubit(0.5, -0.5 * r3).unwrap(),
        ],
        expected: Some(SuccessReport::new(vec![0.5, 0.5, 0.5])),
    }
}

/// One-parameter deformation of the trine: `|0>`, `a|0> +- b|1>` with
/// `|a|^2 = 1/2 - delta`. Recovers the trine at `delta = 1/4`.
pub fn trine_family(delta: f64) -> Result<FamilyInstance> {
    if delta <= 0.0 || delta >= 0.5 {
        return Err(Error::InvalidParameter("delta must lie in (0, 1/2)"));
    }
    let a = libm::sqrt(0.5 - delta);
    let b = libm::sqrt(0.5 + delta);
    let states = vec![
        PureState::basis_state(2, 0),
        PureState::qubit(a, b)?,
        PureState::qubit(a, -b)?,
    ];
    // Events {0,1} and {0,2} succeed with 1 - sqrt(1/2 - delta); event {1,2}
    // with 1 - 2 delta.
    let expected = SuccessReport::new(vec![1.0 - a, 1.0 - a, 1.0 - 2.0 * delta]);
    Ok(FamilyInstance {
        name: "trine-family",
        parameters: vec![("delta", delta)],
        states,
        expected: Some(expected),
    })
}

/// The four-state qubit solution whose every triple shares one overlap sum:
/// extends [`solution_eq8`] by `phi4 = sqrt(2 eps - eps^2)|0> - (1-eps)|1>`.
pub fn solution_eq14(eps: f64) -> Result<FamilyInstance> {
    if eps <= 0.0 || eps > EPS_CAP + TOL {
        return Err(Error::InvalidParameter(
            "eps must lie in (0, 1 - 1/sqrt(2)]",
        ));
    }
    let cross = libm::sqrt(2.0 * eps - eps * eps);
    let states = vec![
        PureState::basis_state(2, 0),
        PureState::qubit(1.0 - eps, cross)?,
        PureState::basis_state(2, 1),
        PureState::qubit(cross, -(1.0 - eps))?,
    ];
    // Lexicographic events over pairs of {0,1,2,3}; overlaps
    // (1-eps, 0, cross, cross, 0, 1-eps).
    let expected = SuccessReport::new(vec![
        eps,
        1.0,
        1.0 - cross,
        1.0 - cross,
        1.0,
        eps,
    ]);
    Ok(FamilyInstance {
        name: "eq14",
        parameters: vec![("eps", eps)],
        states,
        expected: Some(expected),
    })
}

/// The maximal-epsilon four-state encoding: the states of two mutually
/// unbiased qubit bases.
pub fn mub_states_d4() -> FamilyInstance {
    let states = vec![
        PureState::basis_state(2, 0),
        PureState::qubit(SQRT_2_INV, SQRT_2_INV).unwrap(),
        PureState::basis_state(2, 1),
        PureState::qubit(SQRT_2_INV, -SQRT_2_INV).unwrap(),
    ];
    let expected = SuccessReport::new(vec![
        EPS_CAP,
        1.0,
        1.0 - SQRT_2_INV,
        1.0 - SQRT_2_INV,
        1.0,
        EPS_CAP,
    ]);
    FamilyInstance {
        name: "mub4",
        parameters: vec![],
        states,
        expected: Some(expected),
    }
}

/// `d` qubit states on a uniform angle schedule `theta_i = i pi / (2(d+1))`:
/// all coefficients positive and distinct, so every pair is linearly
/// independent and the pairwise game is won for any `d`.
pub fn large_d_encoding(d: usize) -> FamilyInstance {
    assert!(d >= 2, "need at least two values");
    let states = (1..=d)
        .map(|i| {
            let theta = i as f64 * core::f64::consts::PI / (2.0 * (d + 1) as f64);
            PureState::qubit(libm::cos(theta), libm::sin(theta)).unwrap()
        })
        .collect();
    FamilyInstance {
        name: "large-d",
        parameters: vec![("d", d as f64)],
        states,
        expected: None,
    }
}

/// The qutrit strategy for the (4, 3) game: the computational basis plus the
/// uniform superposition, which has coherence rank three.
pub fn qutrit_d4_encoding() -> FamilyInstance {
    let s = 1.0 / libm::sqrt(3.0);
    FamilyInstance {
        name: "qutrit-d4",
        parameters: vec![],
        states: vec![
            PureState::basis_state(3, 0),
            PureState::basis_state(3, 1),
            PureState::basis_state(3, 2),
            PureState::real(&[s, s, s]).unwrap(),
        ],
        expected: None,
    }
}

/// Exploratory d = 5 or 6 encoding: the four MUB states extended by the
/// circular states `(|0> +- i|1>)/sqrt(2)`. No optimality is claimed.
pub fn pauli_y_extension(d: usize) -> Result<FamilyInstance> {
    if d != 5 && d != 6 {
        return Err(Error::InvalidParameter("pauli-y extension covers d = 5, 6"));
    }
    let mut states = mub_states_d4().states.clone();
    states.push(
        PureState::new(vec![
            Complex64::from(SQRT_2_INV),
            Complex64::new(0.0, SQRT_2_INV),
        ])
        .unwrap(),
    );
    if d == 6 {
        states.push(
            PureState::new(vec![
                Complex64::from(SQRT_2_INV),
                Complex64::new(0.0, -SQRT_2_INV),
            ])
            .unwrap(),
        );
    }
    Ok(FamilyInstance {
        name: "pauli-y",
        parameters: vec![("d", d as f64)],
        states,
        expected: None,
    })
}
