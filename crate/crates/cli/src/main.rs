//! `kpvc` command-line front end.
//!
//! Exit codes: 0 ok, 1 I/O failure, 2 malformed input or arguments,
//! 3 invalid instance, 4 heuristic failure, 5 infeasible.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kpvc::baseline::two_approx_vc;
use kpvc::bench::{run_bench, write_bench_csv, BenchConfig, Ensemble, DEFAULT_EXACT_CUTOFF};
use kpvc::exact::{exact_cvck, ExactStatus};
use kpvc::gen::{gen_complete_kpartite, gen_kpartite, gen_tree_with_budgets, BudgetMode, GenSpec};
use kpvc::io::{emit_result, parse_instance, serialize_instance, ResultFormat, SolveRecord};
use kpvc::reduction::reduce_clique_to_vc;
use kpvc::{greedy_partition, solve_cvck, Budgets, CoverStatus, Instance};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_HEURISTIC_FAILURE: u8 = 4;
const EXIT_INFEASIBLE: u8 = 5;

#[derive(Parser)]
#[command(name = "kpvc", version, about = "Constrained minimum vertex cover on k-partite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Cvck,
    Exact,
    #[value(name = "2approx")]
    TwoApprox,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { path: PathBuf },
    /// Solve an instance file.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "cvck")]
        algo: Algo,
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
    },
    /// Reduce a clique question on the file's graph to vertex cover on its
    /// complement.
    ReduceClique {
        path: PathBuf,
        /// Clique size.
        #[arg(long)]
        k: usize,
        /// Output instance file.
        #[arg(long = "out")]
        out_path: PathBuf,
    },
    /// Generate an instance file on standard output.
    Gen {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// exact | slack:<s> | fixed:<l1>,<l2>,...
        #[arg(long, default_value = "slack:1")]
        budget_mode: String,
        /// Uniform random tree instead of a k-partite graph.
        #[arg(long, conflicts_with = "complete")]
        tree: bool,
        /// Complete k-partite graph with these part sizes.
        #[arg(long, value_delimiter = ',')]
        complete: Option<Vec<usize>>,
    },
    /// Run the benchmark and print a summary.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "slack:1")]
        budget_mode: String,
        #[arg(long, default_value_t = DEFAULT_EXACT_CUTOFF)]
        exact_cutoff: usize,
        /// Random trees instead of random k-partite graphs.
        #[arg(long)]
        tree: bool,
        /// Per-record CSV output.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| {
        let code = if e.is_invalid_instance() {
            EXIT_INVALID
        } else {
            EXIT_PARSE
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    })
}

fn parse_budget_mode(s: &str) -> Result<BudgetMode, Failure> {
    s.parse().map_err(|e| Failure::new(EXIT_PARSE, format!("{e}")))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn cmd_validate(path: &Path) -> CmdResult {
    let inst = read_instance(path)?;
    for warning in inst.validate().warnings {
        eprintln!("warning: {warning}");
    }
    println!("ok");
    Ok(0)
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn cmd_solve(path: &Path, algo: Algo, output: Output) -> CmdResult {
    let inst = read_instance(path)?;
    let start = Instant::now();
    let (record, code, uncovered) = match algo {
        Algo::Cvck => {
            let result = solve_cvck(&inst).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
            let code = match result.status {
                CoverStatus::Success => 0,
                CoverStatus::HeuristicFailure => EXIT_HEURISTIC_FAILURE,
            };
            let rec = SolveRecord::from_heuristic(&result, ms_since(start));
            (rec, code, result.uncovered_edges)
        }
        Algo::Exact => {
            let result = exact_cvck(&inst).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
            let code = match result.status {
                ExactStatus::Feasible => 0,
                ExactStatus::Infeasible => EXIT_INFEASIBLE,
            };
            (SolveRecord::from_exact(&result, ms_since(start)), code, Vec::new())
        }
        Algo::TwoApprox => {
            let cover = two_approx_vc(&inst.graph);
            (SolveRecord::from_two_approx(&inst, &cover, ms_since(start)), 0, Vec::new())
        }
    };
    match output {
        Output::Json => println!("{}", emit_result(&record, ResultFormat::Json)),
        Output::Text => {
            println!("algo: {}", record.algo);
            println!("status: {}", record.status);
            if let Some(cover) = &record.cover {
                let ids: Vec<String> = cover.iter().map(ToString::to_string).collect();
                println!("cover: {}", ids.join(" "));
                println!("size: {}", cover.len());
            }
            let usage: Vec<String> = record.per_part_usage.iter().map(ToString::to_string).collect();
            println!("per_part_usage: {}", usage.join(" "));
            println!("effort: {}", record.effort.value());
            for (u, v) in uncovered {
                println!("uncovered: {u} {v}");
            }
        }
    }
    Ok(code)
}

fn cmd_reduce_clique(path: &Path, k: usize, out_path: &Path) -> CmdResult {
    let inst = read_instance(path)?;
    let out = reduce_clique_to_vc(&inst.graph, k).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let partition = greedy_partition(&out.complement_graph);
    let budgets = Budgets::new(partition.part_sizes());
    let target = Instance::new(out.complement_graph, partition, budgets);
    let body = serialize_instance(&target).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
    let text = format!("c target_cover_size {}\n{body}", out.target_cover_size);
    write_file(out_path, text.as_bytes())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    n: usize,
    k: usize,
    density: f64,
    seed: u64,
    budget_mode: &str,
    tree: bool,
    complete: Option<Vec<usize>>,
) -> CmdResult {
    let mode = parse_budget_mode(budget_mode)?;
    let generated = if let Some(sizes) = complete {
        gen_complete_kpartite(&sizes)
    } else if tree {
        gen_tree_with_budgets(n, seed, &mode)
    } else {
        gen_kpartite(&GenSpec {
            n,
            k,
            density,
            seed,
            budget_mode: mode,
        })
    };
    let inst = generated.map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let text = serialize_instance(&inst).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
    print!("{text}");
    Ok(0)
}

fn cmd_bench(config: BenchConfig, out: &Path) -> CmdResult {
    let (records, summary) = run_bench(&config).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let bytes = write_bench_csv(Vec::new(), &records).map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
    write_file(out, &bytes)?;
    print!("{summary}");
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Solve { path, algo, output } => cmd_solve(&path, algo, output),
        Command::ReduceClique { path, k, out_path } => cmd_reduce_clique(&path, k, &out_path),
        Command::Gen {
            n,
            k,
            density,
            seed,
            budget_mode,
            tree,
            complete,
        } => cmd_gen(n, k, density, seed, &budget_mode, tree, complete),
        Command::Bench {
            sizes,
            trials,
            k,
            density,
            seed,
            budget_mode,
            exact_cutoff,
            tree,
            out,
        } => {
            let config = BenchConfig {
                ensemble: if tree { Ensemble::Tree } else { Ensemble::KPartite },
                sizes,
                trials,
                k,
                density,
                seed,
                budget_mode: parse_budget_mode(&budget_mode)?,
                exact_cutoff,
            };
            cmd_bench(config, &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
