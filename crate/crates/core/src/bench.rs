//! Benchmark harness: generate ensembles, run every solver, compare against
//! the exact optimum where affordable, and summarize success rate, gaps,
//! the tree "optimum + 1" rate and operation-count scaling.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::time::Instant;

use crate::baseline::two_approx_vc;
use crate::exact::{exact_cvck, exact_min_vc, ExactError, ExactStatus};
use crate::gen::{gen_kpartite, gen_tree_with_budgets, BudgetMode, GenError, GenRng, GenSpec};
use crate::graph::Instance;
use crate::heuristic::{solve_cvck, CoverStatus};
use crate::io::SolveRecord;

/// Default vertex cutoff for running the exact oracle.
pub const DEFAULT_EXACT_CUTOFF: usize = 22;

/// Column names of the per-record CSV.
pub const BENCH_CSV_HEADER: [&str; 13] = [
    "instance_id",
    "n",
    "k",
    "density",
    "seed",
    "budget_mode",
    "algo",
    "status",
    "size",
    "optimum",
    "gap",
    "op_count",
    "wall_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    KPartite,
    Tree,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub ensemble: Ensemble,
    pub sizes: Vec<usize>,
    pub trials: usize,
    /// Part count for the k-partite ensemble (trees always have two).
    pub k: usize,
    pub density: f64,
    pub seed: u64,
    pub budget_mode: BudgetMode,
    pub exact_cutoff: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            ensemble: Ensemble::KPartite,
            sizes: vec![10],
            trials: 5,
            k: 3,
            density: 0.3,
            seed: 1,
            budget_mode: BudgetMode::Slack(1),
            exact_cutoff: DEFAULT_EXACT_CUTOFF,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("solver rejected generated instance: {0}")]
    Solver(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub instance_id: String,
    pub n: usize,
    pub k: usize,
    /// `None` for trees.
    pub density: Option<f64>,
    pub seed: u64,
    pub budget_mode: BudgetMode,
    pub algo: String,
    pub status: String,
    pub size: Option<usize>,
    /// Constrained optimum for `cvck`/`exact`, unconstrained optimum for
    /// `2approx`.
    pub optimum: Option<usize>,
    pub gap: Option<i64>,
    pub op_count: u64,
    pub wall_ms: f64,
}

impl BenchRecord {
    fn csv_fields(&self) -> [String; 13] {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        [
            self.instance_id.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.density.map(|d| d.to_string()).unwrap_or_default(),
            self.seed.to_string(),
            self.budget_mode.to_string(),
            self.algo.clone(),
            self.status.clone(),
            opt(self.size),
            opt(self.optimum),
            self.gap.map(|g| g.to_string()).unwrap_or_default(),
            self.op_count.to_string(),
            format!("{:.3}", self.wall_ms),
        ]
    }
}

/// Least-squares fit of `log(mean op_count)` against `log(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub ensemble: String,
    pub instances: usize,
    pub successes: usize,
    pub success_denominator: usize,
    /// `oracle-feasible`, `all`, or `mixed` when only some sizes were
    /// within the exact cutoff.
    pub denominator_policy: &'static str,
    pub success_rate: f64,
    /// Heuristic gap (size minus optimum) to count, over successful runs
    /// with a known optimum.
    pub gap_histogram: BTreeMap<usize, usize>,
    pub tree_claim_rate: Option<f64>,
    pub two_approx_bound_violations: usize,
    pub mean_op_count: Vec<(usize, f64)>,
    pub scaling: Option<ScalingFit>,
}

impl fmt::Display for BenchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ensemble: {}", self.ensemble)?;
        writeln!(f, "instances: {}", self.instances)?;
        writeln!(
            f,
            "success_rate: {:.4} ({}/{}, denominator: {})",
            self.success_rate, self.successes, self.success_denominator, self.denominator_policy
        )?;
        let hist: Vec<String> = self
            .gap_histogram
            .iter()
            .map(|(gap, count)| format!("{gap}:{count}"))
            .collect();
        writeln!(f, "gap_histogram: {}", hist.join(" "))?;
        match self.tree_claim_rate {
            Some(rate) => writeln!(f, "tree_claim_rate: {rate:.4}")?,
            None => writeln!(f, "tree_claim_rate: n/a")?,
        }
        writeln!(f, "two_approx_bound_violations: {}", self.two_approx_bound_violations)?;
        for (n, mean) in &self.mean_op_count {
            writeln!(f, "mean_op_count n={n}: {mean:.1}")?;
        }
        match self.scaling {
            Some(fit) => writeln!(
                f,
                "scaling_slope: {:.4} (r_squared {:.4})",
                fit.slope, fit.r_squared
            ),
            None => writeln!(f, "scaling_slope: n/a"),
        }
    }
}

/// Seed of trial `trial` at size `n`: the first SplitMix64 output for the
/// state `base + (n << 32) + trial`.
pub fn instance_seed(base: u64, n: usize, trial: usize) -> u64 {
    GenRng::new(base.wrapping_add((n as u64) << 32).wrapping_add(trial as u64)).next_u64()
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Slope and R² of the least-squares line through `(ln x, ln y)`.
pub fn log_log_fit(points: &[(f64, f64)]) -> Option<ScalingFit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(ScalingFit { slope, r_squared })
}

fn generate(config: &BenchConfig, n: usize, seed: u64) -> Result<Instance, GenError> {
    match config.ensemble {
        Ensemble::KPartite => gen_kpartite(&GenSpec {
            n,
            k: config.k,
            density: config.density,
            seed,
            budget_mode: config.budget_mode.clone(),
        }),
        Ensemble::Tree => gen_tree_with_budgets(n, seed, &config.budget_mode),
    }
}

/// Per-instance outcome kept for the summary.
struct Outcome {
    n: usize,
    within_cutoff: bool,
    feasible: Option<bool>,
    heuristic_size: Option<usize>,
    optimum: Option<usize>,
    op_count: u64,
}

/// Runs the benchmark. Records come out in `(n, trial, algo)` order with
/// algos `cvck`, `2approx`, `exact` (the last only within the cutoff).
pub fn run_bench(config: &BenchConfig) -> Result<(Vec<BenchRecord>, BenchSummary), BenchError> {
    let mut records = Vec::new();
    let mut outcomes = Vec::new();
    for &n in &config.sizes {
        for trial in 0..config.trials {
            let seed = instance_seed(config.seed, n, trial);
            let inst = generate(config, n, seed)?;
            let within_cutoff = n <= config.exact_cutoff;
            let base = BenchRecord {
                instance_id: format!("n{n}-t{trial}"),
                n,
                k: inst.k(),
                density: (config.ensemble == Ensemble::KPartite).then_some(config.density),
                seed,
                budget_mode: config.budget_mode.clone(),
                algo: String::new(),
                status: String::new(),
                size: None,
                optimum: None,
                gap: None,
                op_count: 0,
                wall_ms: 0.0,
            };

            let start = Instant::now();
            let heuristic = solve_cvck(&inst).map_err(|e| BenchError::Solver(e.to_string()))?;
            let heuristic_rec = SolveRecord::from_heuristic(&heuristic, elapsed_ms(start));

            let start = Instant::now();
            let approx_cover = two_approx_vc(&inst.graph);
            let approx_rec = SolveRecord::from_two_approx(&inst, &approx_cover, elapsed_ms(start));

            let (exact_rec, feasible, optimum, unconstrained_optimum) = if within_cutoff {
                let start = Instant::now();
                let exact = exact_cvck(&inst)?;
                let rec = SolveRecord::from_exact(&exact, elapsed_ms(start));
                let unconstrained = exact_min_vc(&inst.graph)?.len();
                let feasible = exact.status == ExactStatus::Feasible;
                (Some(rec), Some(feasible), exact.size, Some(unconstrained))
            } else {
                (None, None, None, None)
            };

            let mut push = |rec: &SolveRecord, reference: Option<usize>| {
                let size = rec.size();
                records.push(BenchRecord {
                    algo: rec.algo.clone(),
                    status: rec.status.clone(),
                    size,
                    optimum: reference,
                    gap: size.zip(reference).map(|(s, o)| s as i64 - o as i64),
                    op_count: rec.effort.value(),
                    wall_ms: rec.wall_ms,
                    ..base.clone()
                });
            };
            push(&heuristic_rec, optimum);
            push(&approx_rec, unconstrained_optimum);
            if let Some(rec) = &exact_rec {
                push(rec, optimum);
            }

            outcomes.push(Outcome {
                n,
                within_cutoff,
                feasible,
                heuristic_size: (heuristic.status == CoverStatus::Success)
                    .then_some(heuristic.cover.len()),
                optimum,
                op_count: heuristic.op_count,
            });
        }
    }
    let summary = summarize(config, &records, &outcomes);
    Ok((records, summary))
}

fn summarize(config: &BenchConfig, records: &[BenchRecord], outcomes: &[Outcome]) -> BenchSummary {
    let in_denominator =
        |o: &Outcome| !o.within_cutoff || o.feasible == Some(true);
    let denominator = outcomes.iter().filter(|o| in_denominator(o)).count();
    let successes = outcomes
        .iter()
        .filter(|o| in_denominator(o) && o.heuristic_size.is_some())
        .count();
    let policy = if outcomes.iter().all(|o| o.within_cutoff) {
        "oracle-feasible"
    } else if outcomes.iter().all(|o| !o.within_cutoff) {
        "all"
    } else {
        "mixed"
    };

    let mut gap_histogram = BTreeMap::new();
    for o in outcomes {
        if let (Some(size), Some(opt)) = (o.heuristic_size, o.optimum) {
            *gap_histogram.entry(size.saturating_sub(opt)).or_insert(0) += 1;
        }
    }

    let tree_claim_rate = (config.ensemble == Ensemble::Tree).then(|| {
        let judged: Vec<&Outcome> = outcomes.iter().filter(|o| o.optimum.is_some()).collect();
        let hits = judged
            .iter()
            .filter(|o| matches!((o.heuristic_size, o.optimum), (Some(s), Some(opt)) if s <= opt + 1))
            .count();
        if judged.is_empty() {
            0.0
        } else {
            hits as f64 / judged.len() as f64
        }
    });

    let two_approx_bound_violations = records
        .iter()
        .filter(|r| r.algo == "2approx")
        .filter(|r| matches!((r.size, r.optimum), (Some(s), Some(o)) if s > 2 * o))
        .count();

    let mut sums: BTreeMap<usize, (u64, usize)> = BTreeMap::new();
    for o in outcomes {
        let entry = sums.entry(o.n).or_insert((0, 0));
        entry.0 += o.op_count;
        entry.1 += 1;
    }
    let mean_op_count: Vec<(usize, f64)> = sums
        .into_iter()
        .map(|(n, (total, count))| (n, total as f64 / count as f64))
        .collect();
    let points: Vec<(f64, f64)> = mean_op_count.iter().map(|&(n, m)| (n as f64, m)).collect();

    let ensemble = match config.ensemble {
        Ensemble::KPartite => format!(
            "kpartite k={} density={} budget_mode={} sizes={:?} trials={} seed={}",
            config.k, config.density, config.budget_mode, config.sizes, config.trials, config.seed
        ),
        Ensemble::Tree => format!(
            "tree budget_mode={} sizes={:?} trials={} seed={}",
            config.budget_mode, config.sizes, config.trials, config.seed
        ),
    };

    BenchSummary {
        ensemble,
        instances: outcomes.len(),
        successes,
        success_denominator: denominator,
        denominator_policy: policy,
        success_rate: if denominator == 0 {
            0.0
        } else {
            successes as f64 / denominator as f64
        },
        gap_histogram,
        tree_claim_rate,
        two_approx_bound_violations,
        mean_op_count,
        scaling: log_log_fit(&points),
    }
}

/// Writes records as CSV with [`BENCH_CSV_HEADER`].
pub fn write_bench_csv<W: io::Write>(sink: W, records: &[BenchRecord]) -> Result<W, BenchError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    writer.write_record(BENCH_CSV_HEADER)?;
    for record in records {
        writer.write_record(record.csv_fields())?;
    }
    writer
        .into_inner()
        .map_err(|e| BenchError::Io(io::Error::other(e.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_arithmetic_for_small_sizes() {
        let config = BenchConfig {
            sizes: vec![10],
            trials: 5,
            seed: 1,
            budget_mode: BudgetMode::Slack(1),
            ..BenchConfig::default()
        };
        let (records, summary) = run_bench(&config).unwrap();
        assert_eq!(records.len(), 15);
        assert_eq!(summary.instances, 5);
        assert_eq!(summary.denominator_policy, "oracle-feasible");
        // Slack budgets are feasible by construction.
        assert_eq!(summary.success_denominator, 5);
        let algos: Vec<&str> = records.iter().take(3).map(|r| r.algo.as_str()).collect();
        assert_eq!(algos, ["cvck", "2approx", "exact"]);
        for r in &records {
            if let Some(gap) = r.gap {
                assert!(gap >= 0, "{r:?}");
            }
        }
    }

    #[test]
    fn exact_skipped_above_cutoff() {
        let config = BenchConfig {
            sizes: vec![30],
            trials: 2,
            exact_cutoff: 22,
            ..BenchConfig::default()
        };
        let (records, summary) = run_bench(&config).unwrap();
        assert_eq!(records.len(), 4);
        assert!(records.iter().all(|r| r.algo != "exact" && r.optimum.is_none()));
        assert_eq!(summary.denominator_policy, "all");
        assert_eq!(summary.success_denominator, 2);
    }

    #[test]
    fn tree_ensemble_reports_claim_rate() {
        let config = BenchConfig {
            ensemble: Ensemble::Tree,
            sizes: vec![8, 12],
            trials: 4,
            ..BenchConfig::default()
        };
        let (records, summary) = run_bench(&config).unwrap();
        assert!(records.iter().all(|r| r.density.is_none()));
        let rate = summary.tree_claim_rate.unwrap();
        assert!((0.0..=1.0).contains(&rate));
        assert!(summary.to_string().contains("tree_claim_rate"));
    }

    #[test]
    fn log_log_fit_recovers_power_law() {
        let points: Vec<(f64, f64)> = [10.0, 20.0, 40.0, 80.0]
            .iter()
            .map(|&x: &f64| (x, 3.0 * x.powf(2.5)))
            .collect();
        let fit = log_log_fit(&points).unwrap();
        assert!((fit.slope - 2.5).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
        assert!(log_log_fit(&points[..1]).is_none());
    }

    #[test]
    fn csv_has_header_and_empty_optional_fields() {
        let config = BenchConfig {
            sizes: vec![30],
            trials: 1,
            ..BenchConfig::default()
        };
        let (records, _) = run_bench(&config).unwrap();
        let bytes = write_bench_csv(Vec::new(), &records).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), BENCH_CSV_HEADER.join(","));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 13);
        assert_eq!(first[9], "");
    }
}
