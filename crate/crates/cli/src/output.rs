//! Table and stats rendering: aligned text for the terminal, CSV and JSON
//! for files, with a frozen column layout.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use unambig_core::sim::SimStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// One expected-vs-computed check in a reproduction table.
#[derive(Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
}

impl Row {
    pub fn new(name: impl Into<String>, expected: f64, computed: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            expected,
            computed,
            tolerance,
        }
    }

    pub fn delta(&self) -> f64 {
        (self.computed - self.expected).abs()
    }

    pub fn pass(&self) -> bool {
        self.delta() <= self.tolerance
    }
}

#[derive(Debug, Serialize)]
struct RowRecord<'a> {
    name: &'a str,
    expected: f64,
    computed: f64,
    delta: f64,
    tolerance: f64,
    status: &'a str,
}

fn row_record(r: &Row) -> RowRecord<'_> {
    RowRecord {
        name: &r.name,
        expected: r.expected,
        computed: r.computed,
        delta: r.delta(),
        tolerance: r.tolerance,
        status: if r.pass() { "pass" } else { "FAIL" },
    }
}

fn sink(output: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match output {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    })
}

/// Renders a reproduction table and reports whether every row passed.
pub fn write_rows(rows: &[Row], format: Format, output: Option<&Path>) -> Result<bool> {
    let mut w = sink(output)?;
    match format {
        Format::Text => {
            writeln!(
                w,
                "{:<44} {:>12} {:>12} {:>10} {:>8} {:>6}",
                "check", "expected", "computed", "|delta|", "tol", "status"
            )?;
            for r in rows {
                writeln!(
                    w,
                    "{:<44} {:>12.8} {:>12.8} {:>10.2e} {:>8.0e} {:>6}",
                    r.name,
                    r.expected,
                    r.computed,
                    r.delta(),
                    r.tolerance,
                    if r.pass() { "pass" } else { "FAIL" }
                )?;
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for r in rows {
                csv.serialize(row_record(r))?;
            }
            csv.flush()?;
        }
        Format::Json => {
            let records: Vec<_> = rows.iter().map(row_record).collect();
            serde_json::to_writer_pretty(&mut w, &records)?;
            writeln!(w)?;
        }
    }
    Ok(rows.iter().all(Row::pass))
}

#[derive(Debug, Serialize)]
struct StatsRecord<'a> {
    d: usize,
    n: usize,
    strategy_name: &'a str,
    j: usize,
    rounds: u64,
    correct: u64,
    wrong: u64,
    inconclusive: u64,
    rate: f64,
    seed: u64,
}

fn stats_records<'a>(stats: &SimStats, name: &'a str) -> Vec<StatsRecord<'a>> {
    stats
        .per_event
        .iter()
        .enumerate()
        .map(|(j, c)| StatsRecord {
            d: stats.d,
            n: stats.n,
            strategy_name: name,
            j,
            rounds: c.rounds(),
            correct: c.correct,
            wrong: c.wrong,
            inconclusive: c.inconclusive,
            rate: c.rate(),
            seed: stats.seed,
        })
        .collect()
}

/// Writes per-event simulation stats with the frozen column set
/// (d, n, strategy_name, j, rounds, correct, wrong, inconclusive, rate, seed).
pub fn write_stats(
    stats: &SimStats,
    name: &str,
    format: Format,
    output: Option<&Path>,
) -> Result<()> {
    let mut w = sink(output)?;
    let records = stats_records(stats, name);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &records)?;
            writeln!(w)?;
        }
        // Text and CSV share the CSV layout; it is already terminal-friendly.
        Format::Text | Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for r in &records {
                csv.serialize(r)?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}
