//! The (d, n) identification game: candidate-set enumeration, strategy
//! representations, winning-condition checks, and success metrics.
//!
//! Values are 0-based indices into `{0, .., d-1}`; candidate sets are the
//! `binom(d, n)` n-element subsets in lexicographic order.

use alloc::vec::Vec;

use crate::states::{is_linearly_independent, overlap, PureState};
use crate::usd::{born, usd_reciprocal, Povm};
use crate::{Error, Result, INDEPENDENCE_TOL, TOL};

/// All n-element subsets of `{0, .., d-1}` in lexicographic order.
pub fn enumerate_sets(d: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    if n < 2 || n >= d {
        return Err(Error::InvalidGame { d, n });
    }
    let mut sets = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        sets.push(current.clone());
        // Rightmost position that can still advance.
        let Some(i) = (0..n).rev().find(|&i| current[i] < i + d - n) else {
            return Ok(sets);
        };
        current[i] += 1;
        for k in i + 1..n {
            current[k] = current[k - 1] + 1;
        }
    }
}

/// A game instance: dimension `d` of the random variable, candidate-set size
/// `n` (also the message alphabet size), and the enumerated events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    d: usize,
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl GameSpec {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        let sets = enumerate_sets(d, n)?;
        Ok(Self { d, n, sets })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn num_events(&self) -> usize {
        self.sets.len()
    }

    /// Indices of events whose candidate set contains `value`.
    pub fn events_containing(&self, value: usize) -> Vec<usize> {
        self.sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(&value))
            .map(|(j, _)| j)
            .collect()
    }
}

/// How Bob measures: a fresh optimal USD per event, or one fixed POVM whose
/// conclusive outcome `i` eliminates value `i` (certified for (3, 2) only).
#[derive(Debug, Clone)]
pub enum MeasurementMode {
    PerEvent,
    Fixed(Povm),
}

/// Alice's quantum encoding plus Bob's measurement mode.
#[derive(Debug, Clone)]
pub struct QuantumStrategy {
    pub encoding: Vec<PureState>,
    pub measurement: MeasurementMode,
}

impl QuantumStrategy {
    pub fn per_event(encoding: Vec<PureState>) -> Self {
        Self {
            encoding,
            measurement: MeasurementMode::PerEvent,
        }
    }

    pub fn fixed(encoding: Vec<PureState>, povm: Povm) -> Self {
        Self {
            encoding,
            measurement: MeasurementMode::Fixed(povm),
        }
    }

    pub(crate) fn validate(&self, spec: &GameSpec) -> Result<()> {
        if self.encoding.len() != spec.d() {
            return Err(Error::Strategy("encoding must cover every value"));
        }
        for s in &self.encoding {
            if s.dim() != spec.n() {
                return Err(Error::Strategy("encoded states must have dimension n"));
            }
        }
        if let MeasurementMode::Fixed(povm) = &self.measurement {
            if spec.d() != 3 || spec.n() != 2 {
                return Err(Error::Unsupported(
                    "fixed-measurement mode is only certified for (d, n) = (3, 2)",
                ));
            }
            if povm.dim() != 2 || povm.conclusive().len() != 3 {
                return Err(Error::Strategy(
                    "fixed POVM needs one elimination outcome per value",
                ));
            }
        }
        Ok(())
    }
}

/// Decoder output for one (event, message) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decode {
    Value(usize),
    Inconclusive,
}

/// Alice's message assignment plus Bob's per-event decoding table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalStrategy {
    pub encoding: Vec<usize>,
    /// `decoder[event][message]` for messages `0..n`.
    pub decoder: Vec<Vec<Decode>>,
}

impl ClassicalStrategy {
    pub fn new(spec: &GameSpec, encoding: Vec<usize>, decoder: Vec<Vec<Decode>>) -> Result<Self> {
        let s = Self { encoding, decoder };
        s.validate(spec)?;
        Ok(s)
    }

    /// The natural decoder: a message maps to the unique candidate carrying
    /// it, or to inconclusive when the encoding is ambiguous on the event.
    pub fn with_induced_decoder(spec: &GameSpec, encoding: Vec<usize>) -> Result<Self> {
        if encoding.len() != spec.d() || encoding.iter().any(|&m| m >= spec.n()) {
            return Err(Error::Strategy("encoding must map every value into 0..n"));
        }
        let decoder = spec
            .sets()
            .iter()
            .map(|set| {
                (0..spec.n())
                    .map(|msg| {
                        let mut preimages = set.iter().filter(|&&v| encoding[v] == msg);
                        match (preimages.next(), preimages.next()) {
                            (Some(&v), None) => Decode::Value(v),
                            _ => Decode::Inconclusive,
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self { encoding, decoder })
    }

    pub(crate) fn validate(&self, spec: &GameSpec) -> Result<()> {
        if self.encoding.len() != spec.d() || self.encoding.iter().any(|&m| m >= spec.n()) {
            return Err(Error::Strategy("encoding must map every value into 0..n"));
        }
        if self.decoder.len() != spec.num_events() {
            return Err(Error::Strategy("decoder must cover every event"));
        }
        for (set, row) in spec.sets().iter().zip(&self.decoder) {
            if row.len() != spec.n() {
                return Err(Error::Strategy("decoder must cover every message"));
            }
            for d in row {
                if let Decode::Value(v) = d {
                    if !set.contains(v) {
                        return Err(Error::Strategy(
                            "decoder may only name values inside the event's set",
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Per-event success probabilities with their mean and minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessReport {
    pub per_event: Vec<f64>,
    pub average: f64,
    pub epsilon: f64,
}

impl SuccessReport {
    pub fn new(per_event: Vec<f64>) -> Self {
        let average = per_event.iter().sum::<f64>() / per_event.len() as f64;
        let epsilon = per_event.iter().fold(f64::INFINITY, |a, &p| a.min(p));
        Self {
            per_event,
            average,
            epsilon,
        }
    }
}

/// True iff the strategy wins every event: per-event USD exists (linear
/// independence of every candidate set), or the fixed POVM identifies every
/// consistent value error-freely with positive probability.
pub fn wins_quantum(spec: &GameSpec, strat: &QuantumStrategy) -> Result<bool> {
    strat.validate(spec)?;
    match &strat.measurement {
        MeasurementMode::PerEvent => {
            for set in spec.sets() {
                let states: Vec<PureState> =
                    set.iter().map(|&v| strat.encoding[v].clone()).collect();
                if !is_linearly_independent(&states, INDEPENDENCE_TOL)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        MeasurementMode::Fixed(povm) => {
            for set in spec.sets() {
                for &v in set {
                    let other = set.iter().copied().find(|&w| w != v).unwrap();
                    let correct = born(&strat.encoding[v], &povm.conclusive()[other]);
                    let wrong = born(&strat.encoding[v], &povm.conclusive()[v]);
                    if correct <= TOL || wrong >= TOL {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// True iff the decoder names the right value for every (event, candidate)
/// pair; in the deterministic setting this is certainty, equivalently the
/// encoding being injective on every candidate set.
pub fn wins_classical(spec: &GameSpec, strat: &ClassicalStrategy) -> Result<bool> {
    strat.validate(spec)?;
    for (j, set) in spec.sets().iter().enumerate() {
        for &v in set {
            if strat.decoder[j][strat.encoding[v]] != Decode::Value(v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-event success probabilities of a quantum strategy under equal event
/// weights.
pub fn success_report(spec: &GameSpec, strat: &QuantumStrategy) -> Result<SuccessReport> {
    strat.validate(spec)?;
    let mut per_event = Vec::with_capacity(spec.num_events());
    for set in spec.sets() {
        let states: Vec<PureState> = set.iter().map(|&v| strat.encoding[v].clone()).collect();
        let p = match &strat.measurement {
            MeasurementMode::PerEvent => {
                if spec.n() == 2 {
                    let ov = overlap(&states[0], &states[1])?.norm();
                    if ov >= 1.0 - TOL {
                        return Err(Error::UnambiguousImpossible(
                            "an event's candidate states are linearly dependent",
                        ));
                    }
                    1.0 - ov
                } else {
                    usd_reciprocal(&states)?.average_success
                }
            }
            MeasurementMode::Fixed(povm) => {
                // Average over the event's candidates of the probability of
                // the eliminating (hence identifying) outcome.
                set.iter()
                    .map(|&v| {
                        let other = set.iter().copied().find(|&w| w != v).unwrap();
                        born(&strat.encoding[v], &povm.conclusive()[other])
                    })
                    .sum::<f64>()
                    / set.len() as f64
            }
        };
        per_event.push(p);
    }
    Ok(SuccessReport::new(per_event))
}

/// Sum of the three pairwise overlap moduli of a state triple.
pub fn overlap_sum(states: &[PureState]) -> Result<f64> {
    if states.len() != 3 {
        return Err(Error::InvalidInput("overlap_sum takes exactly 3 states"));
    }
    Ok(overlap(&states[0], &states[1])?.norm()
        + overlap(&states[1], &states[2])?.norm()
        + overlap(&states[2], &states[0])?.norm())
}

/// Average success of the pairwise (n = 2) game on `d` encoded states,
/// computed directly from the pairwise overlaps.
pub fn avg_success_pairwise(states: &[PureState]) -> Result<f64> {
    let d = states.len();
    if d < 2 {
        return Err(Error::InvalidInput("need at least two states"));
    }
    let mut sum = 0.0;
    for i in 0..d {
        for k in 0..i {
            sum += overlap(&states[i], &states[k])?.norm();
        }
    }
    Ok(1.0 - 2.0 / (d * (d - 1)) as f64 * sum)
}

/// The same average recomposed from all three-value sub-game averages; agrees
/// with [`avg_success_pairwise`] identically.
pub fn avg_success_via_triples(states: &[PureState]) -> Result<f64> {
    let d = states.len();
    if d < 3 {
        return Err(Error::InvalidInput("need at least three states"));
    }
    let mut sum = 0.0;
    for k in 0..d {
        for l in 0..k {
            for m in 0..l {
                let triple = [states[m].clone(), states[l].clone(), states[k].clone()];
                sum += 1.0 - overlap_sum(&triple)? / 3.0;
            }
        }
    }
    Ok(6.0 / (d * (d - 1) * (d - 2)) as f64 * sum)
}
