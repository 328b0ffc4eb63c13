//! Seeded Monte Carlo play of the identification game: sample a value and a
//! consistent event, run the strategy's measurement (or decoder), and tally
//! correct / wrong / inconclusive outcomes per event.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{
    ClassicalStrategy, Decode, GameSpec, MeasurementMode, QuantumStrategy,
};
use crate::states::PureState;
use crate::usd::{born, usd_reciprocal, usd_two_states, Povm};
use crate::{Error, Result};

/// Outcome tallies for one event.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EventCounts {
    pub correct: u64,
    pub wrong: u64,
    pub inconclusive: u64,
}

impl EventCounts {
    pub fn rounds(&self) -> u64 {
        self.correct + self.wrong + self.inconclusive
    }

    /// Empirical conclusive-and-correct rate; 0 for an unplayed event.
    pub fn rate(&self) -> f64 {
        let r = self.rounds();
        if r == 0 {
            0.0
        } else {
            self.correct as f64 / r as f64
        }
    }
}

/// Tallies of a full simulation run, keyed by event index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimStats {
    pub d: usize,
    pub n: usize,
    pub rounds: u64,
    pub seed: u64,
    pub per_event: Vec<EventCounts>,
}

impl SimStats {
    pub fn total_correct(&self) -> u64 {
        self.per_event.iter().map(|c| c.correct).sum()
    }

    /// Conclusive-but-wrong identifications; must be zero for any strategy
    /// that actually wins the game.
    pub fn total_wrong(&self) -> u64 {
        self.per_event.iter().map(|c| c.wrong).sum()
    }

    pub fn total_inconclusive(&self) -> u64 {
        self.per_event.iter().map(|c| c.inconclusive).sum()
    }
}

/// A value identified by the measurement, or no claim.
enum Outcome {
    Value(usize),
    Inconclusive,
}

/// Per-event sampling table: `probs[candidate_position]` is the outcome
/// distribution (conclusive outcomes first, inconclusive last) and `guesses`
/// maps each conclusive outcome to the value it identifies within the event.
struct EventTable {
    probs: Vec<Vec<f64>>,
    guesses: Vec<Option<usize>>,
}

fn outcome_distribution(state: &PureState, povm: &Povm) -> Vec<f64> {
    let mut probs: Vec<f64> = povm
        .conclusive()
        .iter()
        .map(|e| born(state, e).max(0.0))
        .collect();
    let rest = 1.0 - probs.iter().sum::<f64>();
    probs.push(rest.max(0.0));
    probs
}

fn event_table(spec: &GameSpec, strat: &QuantumStrategy, set: &[usize]) -> Result<EventTable> {
    let states: Vec<PureState> = set.iter().map(|&v| strat.encoding[v].clone()).collect();
    match &strat.measurement {
        MeasurementMode::PerEvent => {
            let usd = if spec.n() == 2 {
                usd_two_states(&states[0], &states[1])?
            } else {
                usd_reciprocal(&states)?
            };
            Ok(EventTable {
                probs: states
                    .iter()
                    .map(|s| outcome_distribution(s, &usd.povm))
                    .collect(),
                guesses: set.iter().map(|&v| Some(v)).collect(),
            })
        }
        MeasurementMode::Fixed(povm) => {
            // Elimination semantics: conclusive outcome i rules out value i,
            // which identifies the other candidate when i is in the set and
            // says nothing otherwise.
            let guesses = (0..povm.conclusive().len())
                .map(|i| {
                    if set.contains(&i) {
                        set.iter().copied().find(|&w| w != i)
                    } else {
                        None
                    }
                })
                .collect();
            Ok(EventTable {
                probs: states
                    .iter()
                    .map(|s| outcome_distribution(s, povm))
                    .collect(),
                guesses,
            })
        }
    }
}

fn sample_outcome(rng: &mut ChaCha8Rng, table: &EventTable, candidate: usize) -> Outcome {
    let probs = &table.probs[candidate];
    let mut u: f64 = rng.random();
    for (o, &p) in probs.iter().enumerate() {
        u -= p;
        if u < 0.0 {
            return match table.guesses.get(o) {
                Some(&Some(v)) => Outcome::Value(v),
                _ => Outcome::Inconclusive,
            };
        }
    }
    Outcome::Inconclusive
}

fn tally<F>(spec: &GameSpec, rounds: u64, seed: u64, mut play: F) -> SimStats
where
    F: FnMut(&mut ChaCha8Rng, usize, usize, usize) -> Outcome,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let events_by_value: Vec<Vec<usize>> =
        (0..spec.d()).map(|v| spec.events_containing(v)).collect();
    let mut per_event = vec![EventCounts::default(); spec.num_events()];
    for _ in 0..rounds {
        let value = rng.random_range(0..spec.d());
        let options = &events_by_value[value];
        let event = options[rng.random_range(0..options.len())];
        let position = spec.sets()[event].iter().position(|&v| v == value).unwrap();
        match play(&mut rng, event, position, value) {
            Outcome::Value(g) if g == value => per_event[event].correct += 1,
            Outcome::Value(_) => per_event[event].wrong += 1,
            Outcome::Inconclusive => per_event[event].inconclusive += 1,
        }
    }
    SimStats {
        d: spec.d(),
        n: spec.n(),
        rounds,
        seed,
        per_event,
    }
}

/// Plays `rounds` rounds of the game with a quantum strategy: the referee
/// draws a value uniformly, then an event uniformly among those containing
/// it; Bob's measurement outcome is sampled from the Born probabilities.
pub fn run_rounds(
    spec: &GameSpec,
    strat: &QuantumStrategy,
    rounds: u64,
    seed: u64,
) -> Result<SimStats> {
    strat.validate(spec)?;
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be positive"));
    }
    let tables: Vec<EventTable> = spec
        .sets()
        .iter()
        .map(|set| event_table(spec, strat, set))
        .collect::<Result<_>>()?;
    Ok(tally(spec, rounds, seed, |rng, event, position, _| {
        sample_outcome(rng, &tables[event], position)
    }))
}

/// Same referee, classical strategy: Bob applies the event's decoding table
/// to Alice's deterministic message.
pub fn run_classical(
    spec: &GameSpec,
    strat: &ClassicalStrategy,
    rounds: u64,
    seed: u64,
) -> Result<SimStats> {
    strat.validate(spec)?;
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be positive"));
    }
    Ok(tally(spec, rounds, seed, |_, event, _, value| {
        match strat.decoder[event][strat.encoding[value]] {
            Decode::Value(g) => Outcome::Value(g),
            Decode::Inconclusive => Outcome::Inconclusive,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::success_report;
    use alloc::vec;

    const SQRT_2_INV: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn assert_within_3_sigma(counts: &EventCounts, p: f64) {
        let n = counts.rounds() as f64;
        assert!(n > 0.0);
        let sigma = libm::sqrt((p * (1.0 - p) / n).max(1e-12));
        let dev = (counts.rate() - p).abs();
        assert!(
            dev <= 3.0 * sigma + 1e-9,
            "rate {} vs expected {p} (3 sigma = {})",
            counts.rate(),
            3.0 * sigma
        );
    }

    #[test]
    fn trine_fixed_povm_matches_analytic_rates() {
        let spec = GameSpec::new(3, 2).unwrap();
        let trine = crate::families::trine_states().states().to_vec();
        let povm = crate::usd::elimination_povm(&trine).unwrap().povm;
        let strat = QuantumStrategy::fixed(trine, povm);
        let stats = run_rounds(&spec, &strat, 100_000, 7).unwrap();
        assert_eq!(stats.total_wrong(), 0);
        assert_eq!(
            stats.per_event.iter().map(EventCounts::rounds).sum::<u64>(),
            100_000
        );
        for counts in &stats.per_event {
            assert_within_3_sigma(counts, 0.5);
        }
    }

    #[test]
    fn per_event_usd_matches_report_rates() {
        let spec = GameSpec::new(3, 2).unwrap();
        let encoding = vec![
            PureState::basis_state(2, 0),
            PureState::basis_state(2, 1),
            PureState::qubit(SQRT_2_INV, SQRT_2_INV).unwrap(),
        ];
        let strat = QuantumStrategy::per_event(encoding);
        let report = success_report(&spec, &strat).unwrap();
        let stats = run_rounds(&spec, &strat, 100_000, 42).unwrap();
        assert_eq!(stats.total_wrong(), 0);
        for (counts, &p) in stats.per_event.iter().zip(&report.per_event) {
            assert_within_3_sigma(counts, p);
        }
    }

    #[test]
    fn qutrit_game_rates_match_report() {
        let spec = GameSpec::new(4, 3).unwrap();
        let strat = QuantumStrategy::per_event(
            crate::families::qutrit_d4_encoding().states().to_vec(),
        );
        let report = success_report(&spec, &strat).unwrap();
        let stats = run_rounds(&spec, &strat, 100_000, 3).unwrap();
        assert_eq!(stats.total_wrong(), 0);
        for (counts, &p) in stats.per_event.iter().zip(&report.per_event) {
            assert_within_3_sigma(counts, p);
        }
    }

    #[test]
    fn same_seed_reproduces_different_seed_diverges() {
        let spec = GameSpec::new(3, 2).unwrap();
        let f = crate::families::solution_eq8(0.1).unwrap();
        let strat = QuantumStrategy::per_event(f.states().to_vec());
        let a = run_rounds(&spec, &strat, 20_000, 123).unwrap();
        let b = run_rounds(&spec, &strat, 20_000, 123).unwrap();
        assert_eq!(a, b);
        let c = run_rounds(&spec, &strat, 20_000, 124).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn classical_induced_decoder_never_wrong() {
        let spec = GameSpec::new(3, 2).unwrap();
        let strat = ClassicalStrategy::with_induced_decoder(&spec, vec![0, 1, 0]).unwrap();
        let stats = run_classical(&spec, &strat, 30_000, 9).unwrap();
        assert_eq!(stats.total_wrong(), 0);
        // Events {0,1} and {1,2} are decoded perfectly; {0,2} never is.
        assert_eq!(stats.per_event[0].inconclusive, 0);
        assert_eq!(stats.per_event[1].correct, 0);
        assert!(stats.per_event[1].inconclusive > 0);
        assert_eq!(stats.per_event[2].inconclusive, 0);
    }

    #[test]
    fn classical_bad_decoder_records_wrong() {
        let spec = GameSpec::new(3, 2).unwrap();
        // Event {0,1} decodes both messages as value 0: wrong half the time.
        let decoder = vec![
            vec![Decode::Value(0), Decode::Value(0)],
            vec![Decode::Value(0), Decode::Value(2)],
            vec![Decode::Value(1), Decode::Value(2)],
        ];
        let strat = ClassicalStrategy::new(&spec, vec![0, 1, 0], decoder).unwrap();
        let stats = run_classical(&spec, &strat, 30_000, 5).unwrap();
        assert!(stats.per_event[0].wrong > 0);
        assert!(stats.total_wrong() > 0);
    }

    #[test]
    fn rejects_zero_rounds_and_bad_strategies() {
        let spec = GameSpec::new(3, 2).unwrap();
        let f = crate::families::trine_states();
        let strat = QuantumStrategy::per_event(f.states().to_vec());
        assert!(run_rounds(&spec, &strat, 0, 1).is_err());

        let degenerate = QuantumStrategy::per_event(vec![
            PureState::basis_state(2, 0),
            PureState::basis_state(2, 0),
            PureState::basis_state(2, 1),
        ]);
        // An event with coinciding states has no USD measurement to sample.
        assert!(run_rounds(&spec, &degenerate, 10, 1).is_err());
    }
}
