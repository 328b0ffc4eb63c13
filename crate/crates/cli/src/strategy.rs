//! JSON strategy files: a self-contained description of a game strategy,
//! quantum or classical, with complex amplitudes written as [re, im] pairs.

use anyhow::{bail, Context, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use unambig_core::game::{ClassicalStrategy, GameSpec, QuantumStrategy};
use unambig_core::states::PureState;
use unambig_core::usd::Povm;

/// One complex number as a [re, im] pair.
type C = [f64; 2];

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Quantum,
    Classical,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measurement {
    PerEvent,
    Fixed,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PovmFile {
    /// One square matrix per conclusive outcome, row-major.
    pub conclusive: Vec<Vec<Vec<C>>>,
    pub inconclusive: Vec<Vec<C>>,
}

/// Per-value encoding: amplitude vectors for quantum strategies, message
/// integers for classical ones.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Encoding {
    States(Vec<Vec<C>>),
    Messages(Vec<usize>),
}

/// On-disk schema. Classical decoding uses the induced decoder (a message
/// names the unique candidate carrying it).
#[derive(Debug, Serialize, Deserialize)]
pub struct StrategyFile {
    pub d: usize,
    pub n: usize,
    pub kind: Kind,
    pub encoding: Encoding,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurement: Option<Measurement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub povm: Option<PovmFile>,
}

pub enum LoadedStrategy {
    Quantum(QuantumStrategy),
    Classical(ClassicalStrategy),
}

fn to_state(amps: &[C]) -> Result<PureState> {
    PureState::new(amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .context("encoding state is not a normalized amplitude vector")
}

fn to_matrix(rows: &[Vec<C>]) -> Result<DMatrix<Complex64>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        bail!("POVM elements must be square matrices");
    }
    Ok(DMatrix::from_fn(n, n, |r, c| {
        let [re, im] = rows[r][c];
        Complex64::new(re, im)
    }))
}

impl StrategyFile {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read strategy file {}", path.display()))?;
        serde_json::from_str(&text).context("strategy file is not valid JSON for the schema")
    }

    pub fn into_strategy(self, spec: &GameSpec) -> Result<LoadedStrategy> {
        if self.d != spec.d() || self.n != spec.n() {
            bail!(
                "strategy is for ({}, {}), game is ({}, {})",
                self.d,
                self.n,
                spec.d(),
                spec.n()
            );
        }
        match (self.kind, self.encoding) {
            (Kind::Quantum, Encoding::States(states)) => {
                let encoding = states
                    .iter()
                    .map(|amps| to_state(amps))
                    .collect::<Result<Vec<_>>>()?;
                let strat = match self.measurement.unwrap_or(Measurement::PerEvent) {
                    Measurement::PerEvent => QuantumStrategy::per_event(encoding),
                    Measurement::Fixed => {
                        let povm = self
                            .povm
                            .as_ref()
                            .context("fixed measurement needs a \"povm\" object")?;
                        let conclusive = povm
                            .conclusive
                            .iter()
                            .map(|m| to_matrix(m))
                            .collect::<Result<Vec<_>>>()?;
                        let inconclusive = to_matrix(&povm.inconclusive)?;
                        let povm = Povm::new(conclusive, inconclusive);
                        if !unambig_core::usd::validate_povm(&povm) {
                            bail!("povm elements are not PSD or do not sum to identity");
                        }
                        QuantumStrategy::fixed(encoding, povm)
                    }
                };
                Ok(LoadedStrategy::Quantum(strat))
            }
            (Kind::Classical, Encoding::Messages(messages)) => {
                let strat = ClassicalStrategy::with_induced_decoder(spec, messages)
                    .map_err(|e| anyhow::anyhow!("invalid classical strategy: {e}"))?;
                Ok(LoadedStrategy::Classical(strat))
            }
            (Kind::Quantum, _) => bail!("quantum strategy needs amplitude-vector encoding"),
            (Kind::Classical, _) => bail!("classical strategy needs integer-message encoding"),
        }
    }
}
