//! Cost measurements over generated words and a log-log scaling fit.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::Audit;
use crate::engine::{reduce_with, EngineError, EngineOptions};
use crate::gen::{generate, GenError, GenMode, GenProfile};
use crate::rewriting::{Replayer, TraceError};

/// One `(n, seed)` cell. `n` is the target length; `bound` is computed
/// from the length of the generated word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    pub cost: u64,
    pub bound: u64,
    pub max_len: usize,
    pub wall_time_ms: f64,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no lengths given")]
    EmptyLengths,
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("n={n} seed={seed}: {source}")]
    Engine { n: usize, seed: u64, source: EngineError },
    #[error("n={n} seed={seed}: trace does not replay: {source}")]
    Replay { n: usize, seed: u64, source: TraceError },
    #[error("n={n} seed={seed}: trace ends at a nonempty word")]
    NotEmpty { n: usize, seed: u64 },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub lengths: Vec<usize>,
    pub seeds: u64,
    pub mode: GenMode,
    pub options: EngineOptions,
}

impl BenchConfig {
    pub fn new(lengths: Vec<usize>, seeds: u64) -> BenchConfig {
        BenchConfig {
            lengths,
            seeds,
            mode: GenMode::CommutatorHeavy,
            options: EngineOptions::bench(),
        }
    }
}

/// Generates, reduces and replays one word.
pub fn run_cell(n: usize, seed: u64, mode: GenMode, options: EngineOptions) -> Result<(BenchRow, Audit), BenchError> {
    let w = generate(&GenProfile::new(mode, seed), n)?;
    let start = Instant::now();
    let (report, replayer) =
        reduce_with(&w, Replayer::new(&w), options).map_err(|source| BenchError::Engine { n, seed, source })?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let verified = replayer
        .finish()
        .map_err(|source| BenchError::Replay { n, seed, source })?;
    if !verified.end.is_empty() {
        return Err(BenchError::NotEmpty { n, seed });
    }
    Ok((
        BenchRow {
            n,
            seed,
            cost: verified.cost,
            bound: report.bound,
            max_len: verified.max_len,
            wall_time_ms,
        },
        report.audit,
    ))
}

#[derive(Debug, Clone)]
pub struct BenchSummary {
    /// Ordered by `(n, seed)`.
    pub rows: Vec<BenchRow>,
    /// Slope of `log(mean cost)` against `log(n)`, if it is defined.
    pub slope: Option<f64>,
    /// Largest `cost / bound` over all rows.
    pub max_ratio: f64,
    pub audit: Audit,
}

pub fn bench(config: &BenchConfig) -> Result<BenchSummary, BenchError> {
    if config.lengths.is_empty() {
        return Err(BenchError::EmptyLengths);
    }
    let mut cells: Vec<(usize, u64)> = config
        .lengths
        .iter()
        .flat_map(|&n| (0..config.seeds).map(move |s| (n, s)))
        .collect();
    cells.sort_unstable();
    // Largest cells first keeps the pool busy; results are reordered below.
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(cells[i].0));
    let mut done: Vec<(usize, BenchRow, Audit)> = order
        .par_iter()
        .map(|&i| {
            let (n, seed) = cells[i];
            run_cell(n, seed, config.mode, config.options).map(|(row, audit)| (i, row, audit))
        })
        .collect::<Result<_, _>>()?;
    done.sort_by_key(|(i, ..)| *i);
    let mut audit = Audit::new(config.options.audit);
    let mut rows = Vec::with_capacity(done.len());
    for (_, row, a) in done {
        audit.absorb(&a);
        rows.push(row);
    }
    let max_ratio = rows
        .iter()
        .filter(|r| r.bound > 0)
        .map(|r| r.cost as f64 / r.bound as f64)
        .fold(0.0, f64::max);
    Ok(BenchSummary {
        slope: fit_slope(&rows),
        rows,
        max_ratio,
        audit,
    })
}

/// Least-squares slope of `ln(mean cost)` against `ln(n)` over the
/// lengths with positive mean cost.
pub fn fit_slope(rows: &[BenchRow]) -> Option<f64> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let points: Vec<(f64, f64)> = ns
        .into_iter()
        .filter_map(|n| {
            let costs: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.cost as f64).collect();
            let mean = costs.iter().sum::<f64>() / costs.len() as f64;
            (n > 0 && mean > 0.0).then(|| ((n as f64).ln(), mean.ln()))
        })
        .collect();
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Writes the rows with a header line.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), BenchError> {
    let mut wtr = csv::Writer::from_writer(out);
    for r in rows {
        wtr.serialize(r)?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}
