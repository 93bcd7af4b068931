//! Timing harness over a directory of instance files.
//!
//! Every `.json` file in the corpus directory is treated as one covering
//! system; records come out sorted by instance id (the file stem), one per
//! file, and a failing instance is recorded rather than aborting the run.
//! Wall times are measured, so the CSV is the one output that is not
//! byte-deterministic across runs.

use std::path::Path;
use std::time::Instant;

use crate::io::scarf_instance_from_json;
use crate::scarf::{solve_with, SolveError, SolveOptions};

pub const CSV_HEADER: &str = "id,m,n,pivots,wall_ms,outcome";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub id: String,
    pub m: usize,
    pub n: usize,
    pub pivots: u64,
    pub wall_ms: u128,
    pub outcome: String,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.id, self.m, self.n, self.pivots, self.wall_ms, self.outcome
        )
    }
}

/// The whole table as CSV text, header included.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.csv_row());
        out.push('\n');
    }
    out
}

fn outcome_of(err: &SolveError) -> &'static str {
    match err {
        SolveError::Invalid(_) => "invalid",
        SolveError::Pivot(_) => "unbounded",
        SolveError::StepLimitExceeded { .. } => "step-limit",
        SolveError::Lemma(_) => "lemma-violation",
    }
}

/// Solves one already-parsed instance and records the timing.
pub fn bench_instance(id: &str, text: &str, opts: &SolveOptions) -> BenchRecord {
    let started = Instant::now();
    let (m, n, pivots, outcome) = match scarf_instance_from_json(text) {
        Err(_) => (0, 0, 0, "parse-error".to_string()),
        Ok(inst) => match solve_with(&inst, opts) {
            Ok(report) => (inst.m, inst.n, report.steps, "ok".to_string()),
            Err(err) => (inst.m, inst.n, 0, outcome_of(&err).to_string()),
        },
    };
    BenchRecord {
        id: id.to_string(),
        m,
        n,
        pivots,
        wall_ms: started.elapsed().as_millis(),
        outcome,
    }
}

/// Benchmarks every `.json` file under `dir`, in id order. Unreadable or
/// unsolvable entries become records with a non-`ok` outcome.
pub fn bench_corpus(dir: &Path, opts: &SolveOptions) -> std::io::Result<Vec<BenchRecord>> {
    let mut ids = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                ids.push((stem.to_string(), path.clone()));
            }
        }
    }
    ids.sort();
    let mut records = Vec::new();
    for (id, path) in ids {
        let record = match std::fs::read_to_string(&path) {
            Ok(text) => bench_instance(&id, &text, opts),
            Err(err) => BenchRecord {
                id,
                m: 0,
                n: 0,
                pivots: 0,
                wall_ms: 0,
                outcome: format!("read-error: {err}"),
            },
        };
        records.push(record);
    }
    Ok(records)
}
