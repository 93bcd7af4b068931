//! The command-line front end. One thin binary exposes every pipeline;
//! all the logic lives in the library modules.
//!
//! Exit codes: 0 on success (including "verified"), 1 when a verifier
//! rejects its input, 2 on malformed or invalid input, and 3 when an
//! internal guarantee fails (lemma violation, step cap, unrepairable
//! equilibrium). Machine-readable output goes to stdout or `-o`;
//! diagnostics go to stderr. An input path of `-` reads stdin.

use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{bench_corpus, to_csv};
use crate::fspp::{
    digraph_to_fspp, fspp_solution_to_kernel, verify_eps_solution, verify_eps_stable,
    verify_stable,
};
use crate::gen::{directed_cycle, random_clique_acyclic, random_scarf};
use crate::io::{
    digraph_from_json, digraph_to_json, fspp_instance_from_json, fspp_instance_to_json,
    fspp_weights_from_json, hypergraph_from_json, kernel_from_json, kernel_to_json,
    matching_from_json, matching_to_json, scarf_instance_from_json, scarf_instance_to_json,
    solution_from_json, solution_to_json, solutions_to_json,
};
use crate::kernels::{
    compute_nash_with, solve_strong_kernel_with, verify_fractional_kernel, verify_nash,
    verify_strong_kernel, NashError, NashOptions, StrongKernelError,
};
use crate::matchings::{solve_stable_matching_with, verify_stable_matching, StableMatchingError};
use crate::oracle::{
    brute_solve, build_path_graph, enumerate_feasible_bases, enumerate_subordinating,
    DEFAULT_COLUMN_CAP,
};
use crate::rational::{parse_rational, Rational};
use crate::scarf::{canonicalize, solve_with, verify_solution, SolveError, SolveOptions};

#[derive(Parser)]
#[command(name = "scarfkit", version, about = "Exact pivoting on dual-ordered covering systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and check covering systems directly.
    #[command(subcommand)]
    Scarf(ScarfCmd),
    /// Strong kernels and fractional-kernel equilibria of digraphs.
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Stable fractional matchings of hypergraph preference systems.
    #[command(subcommand)]
    Matching(MatchingCmd),
    /// Fractional stable paths instances and their audits.
    #[command(subcommand)]
    Fspp(FsppCmd),
    /// Emit the covering system or path instance behind a reduction.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Exhaustive ground truth for small instances.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Seeded instance generators.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Timing runs over instance corpora.
    #[command(subcommand)]
    Bench(BenchCmd),
}

#[derive(Subcommand)]
enum ScarfCmd {
    /// Solve an instance; writes the solution JSON.
    Solve {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        step_cap: Option<u64>,
        /// Waive the nonnegative-B boundedness check.
        #[arg(long)]
        assume_bounded: bool,
    },
    /// Check a claimed solution against an instance.
    Verify { instance: String, solution: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum KernelProperty {
    Fractional,
    #[default]
    Strong,
    Nash,
}

#[derive(Subcommand)]
enum KernelCmd {
    /// Solve for a strong fractional kernel; writes the weight JSON.
    Solve {
        digraph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        step_cap: Option<u64>,
    },
    /// Audit a weight function against a digraph.
    Verify {
        digraph: String,
        kernel: String,
        #[arg(long, value_enum, default_value_t)]
        property: KernelProperty,
    },
    /// Repair a fractional kernel into a Nash equilibrium.
    Nash {
        digraph: String,
        weights: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        iteration_cap: Option<u64>,
    },
}

#[derive(Subcommand)]
enum MatchingCmd {
    /// Solve for a stable fractional matching; writes the weight JSON.
    Solve {
        hypergraph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        step_cap: Option<u64>,
    },
    /// Audit matching weights against a preference system.
    Verify { hypergraph: String, weights: String },
}

#[derive(Subcommand)]
enum FsppCmd {
    /// Audit path weights: stability by default, or a relaxation.
    Verify {
        instance: String,
        weights: String,
        /// Accept tree-condition overshoot up to this much, and require the
        /// matching equality on the stability side.
        #[arg(long, value_name = "P/Q", conflicts_with = "eps_stable")]
        eps_solution: Option<String>,
        /// Accept saturation shortfall up to this much.
        #[arg(long, value_name = "P/Q")]
        eps_stable: Option<String>,
    },
    /// Reduce a digraph to its path preference instance.
    Reduce {
        digraph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Map path weights on a reduced digraph back to kernel weights.
    Map {
        digraph: String,
        weights: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Covering system whose solutions are strong kernels.
    DigraphToScarf {
        digraph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Path preference instance whose stable weights are equilibria.
    DigraphToFspp {
        digraph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Covering system whose solutions are stable matchings.
    HypergraphToScarf {
        hypergraph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// List all feasible bases and all subordinating column sets.
    Enumerate {
        instance: String,
        #[arg(long, default_value_t = DEFAULT_COLUMN_CAP)]
        cap: usize,
    },
    /// Emit the walk graph as DOT and audit its degrees.
    PathGraph {
        instance: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_COLUMN_CAP)]
        cap: usize,
    },
    /// List every solution by exhaustive search.
    BruteSolve {
        instance: String,
        #[arg(long, default_value_t = DEFAULT_COLUMN_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// A random valid covering system.
    Scarf {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A random clique-acyclic digraph.
    Digraph {
        #[arg(long)]
        nv: usize,
        #[arg(long, default_value_t = 0.5)]
        arc_prob: f64,
        #[arg(long, default_value_t = 0.25)]
        rev_prob: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The directed cycle on k vertices.
    Cycle {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Solve every .json instance under a directory; writes CSV.
    Run {
        corpus: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        step_cap: Option<u64>,
    },
}

/// A failure with its process exit code: 2 for bad input, 3 for broken
/// internal guarantees.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Failure {
        Failure { code: 2, message: message.to_string() }
    }

    fn internal(message: impl ToString) -> Failure {
        Failure { code: 3, message: message.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version surface here too; only real usage
            // errors take the invalid-input exit code.
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::invalid(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("reading {path}: {e}")))
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::invalid(format!("writing {}: {e}", path.display()))),
    }
}

fn parse_eps(text: &str) -> Result<Rational, Failure> {
    let eps = parse_rational(text).map_err(Failure::invalid)?;
    if eps < crate::rational::int(0) {
        return Err(Failure::invalid(format!("negative tolerance {text}")));
    }
    Ok(eps)
}

fn audit_exit(passed: bool, detail: &str) -> i32 {
    if passed {
        eprintln!("ok");
        0
    } else {
        eprintln!("{detail}");
        1
    }
}

fn solve_failure(err: SolveError) -> Failure {
    match err {
        SolveError::Invalid(report) => Failure::invalid(format!("invalid instance: {report}")),
        SolveError::Pivot(e) => Failure::invalid(e),
        e @ SolveError::StepLimitExceeded { .. } => Failure::internal(e),
        SolveError::Lemma(e) => Failure::internal(e),
    }
}

fn kernel_failure(err: StrongKernelError) -> Failure {
    match err {
        StrongKernelError::Reduce(e) => Failure::invalid(e),
        StrongKernelError::Solve(e) => solve_failure(e),
        e @ StrongKernelError::ExtractionInvariant { .. } => Failure::internal(e),
    }
}

fn matching_failure(err: StableMatchingError) -> Failure {
    match err {
        StableMatchingError::Reduce(e) => Failure::invalid(e),
        StableMatchingError::Solve(e) => solve_failure(e),
        e @ StableMatchingError::ExtractionInvariant { .. } => Failure::internal(e),
    }
}

fn nash_failure(err: NashError) -> Failure {
    match err {
        e @ NashError::WrongLength { .. } => Failure::invalid(e),
        e @ NashError::IterationCap { .. } => Failure::internal(e),
        e @ NashError::Unrepairable { .. } => Failure::internal(e),
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Scarf(cmd) => run_scarf(cmd),
        Command::Kernel(cmd) => run_kernel(cmd),
        Command::Matching(cmd) => run_matching(cmd),
        Command::Fspp(cmd) => run_fspp(cmd),
        Command::Reduce(cmd) => run_reduce(cmd),
        Command::Oracle(cmd) => run_oracle(cmd),
        Command::Gen(cmd) => run_gen(cmd),
        Command::Bench(cmd) => run_bench(cmd),
    }
}

fn run_scarf(cmd: ScarfCmd) -> CmdResult {
    match cmd {
        ScarfCmd::Solve { input, output, step_cap, assume_bounded } => {
            let inst =
                scarf_instance_from_json(&read_input(&input)?).map_err(Failure::invalid)?;
            let opts = SolveOptions { step_cap, assume_bounded };
            let report = solve_with(&inst, &opts).map_err(solve_failure)?;
            eprintln!("solved in {} steps", report.steps);
            emit(&output, &solution_to_json(&report.solution))?;
            Ok(0)
        }
        ScarfCmd::Verify { instance, solution } => {
            let inst =
                scarf_instance_from_json(&read_input(&instance)?).map_err(Failure::invalid)?;
            let sol = solution_from_json(&read_input(&solution)?).map_err(Failure::invalid)?;
            let audit = verify_solution(&inst, &sol);
            Ok(audit_exit(audit.passed(), &audit.to_string()))
        }
    }
}

fn run_kernel(cmd: KernelCmd) -> CmdResult {
    match cmd {
        KernelCmd::Solve { digraph, output, step_cap } => {
            let d = digraph_from_json(&read_input(&digraph)?).map_err(Failure::invalid)?;
            let opts = SolveOptions { step_cap, ..SolveOptions::default() };
            let run = solve_strong_kernel_with(&d, opts).map_err(kernel_failure)?;
            eprintln!("solved in {} steps", run.report.steps);
            emit(&output, &kernel_to_json(&run.kernel, &d))?;
            Ok(0)
        }
        KernelCmd::Verify { digraph, kernel, property } => {
            let d = digraph_from_json(&read_input(&digraph)?).map_err(Failure::invalid)?;
            let f = kernel_from_json(&read_input(&kernel)?, &d).map_err(Failure::invalid)?;
            let audit = match property {
                KernelProperty::Fractional => verify_fractional_kernel(&d, &f),
                KernelProperty::Strong => verify_strong_kernel(&d, &f),
                KernelProperty::Nash => verify_nash(&d, &f),
            };
            Ok(audit_exit(audit.passed(), &audit.to_string()))
        }
        KernelCmd::Nash { digraph, weights, output, iteration_cap } => {
            let d = digraph_from_json(&read_input(&digraph)?).map_err(Failure::invalid)?;
            let start = kernel_from_json(&read_input(&weights)?, &d).map_err(Failure::invalid)?;
            let opts = NashOptions {
                iteration_cap: iteration_cap.unwrap_or(NashOptions::default().iteration_cap),
            };
            let repaired = compute_nash_with(&d, &start, opts).map_err(nash_failure)?;
            emit(&output, &kernel_to_json(&repaired, &d))?;
            Ok(0)
        }
    }
}

fn run_matching(cmd: MatchingCmd) -> CmdResult {
    match cmd {
        MatchingCmd::Solve { hypergraph, output, step_cap } => {
            let sys = hypergraph_from_json(&read_input(&hypergraph)?).map_err(Failure::invalid)?;
            let opts = SolveOptions { step_cap, ..SolveOptions::default() };
            let run = solve_stable_matching_with(&sys, opts).map_err(matching_failure)?;
            eprintln!("solved in {} steps", run.report.steps);
            emit(&output, &matching_to_json(&run.matching))?;
            Ok(0)
        }
        MatchingCmd::Verify { hypergraph, weights } => {
            let sys = hypergraph_from_json(&read_input(&hypergraph)?).map_err(Failure::invalid)?;
            let w = matching_from_json(&read_input(&weights)?, &sys).map_err(Failure::invalid)?;
            let audit = verify_stable_matching(&sys, &w);
            Ok(audit_exit(audit.passed(), &audit.to_string()))
        }
    }
}

fn run_fspp(cmd: FsppCmd) -> CmdResult {
    match cmd {
        FsppCmd::Verify { instance, weights, eps_solution, eps_stable } => {
            let inst =
                fspp_instance_from_json(&read_input(&instance)?).map_err(Failure::invalid)?;
            let w = fspp_weights_from_json(&read_input(&weights)?, &inst)
                .map_err(Failure::invalid)?;
            let audit = if let Some(text) = eps_solution {
                verify_eps_solution(&inst, &w, &parse_eps(&text)?)
            } else if let Some(text) = eps_stable {
                verify_eps_stable(&inst, &w, &parse_eps(&text)?)
            } else {
                verify_stable(&inst, &w)
            };
            Ok(audit_exit(audit.passed(), &audit.to_string()))
        }
        FsppCmd::Reduce { digraph, output } => {
            let d = digraph_from_json(&read_input(&digraph)?).map_err(Failure::invalid)?;
            let (inst, _) = digraph_to_fspp(&d);
            emit(&output, &fspp_instance_to_json(&inst))?;
            Ok(0)
        }
        FsppCmd::Map { digraph, weights, output } => {
            let d = digraph_from_json(&read_input(&digraph)?).map_err(Failure::invalid)?;
            let (inst, map) = digraph_to_fspp(&d);
            let w = fspp_weights_from_json(&read_input(&weights)?, &inst)
                .map_err(Failure::invalid)?;
            let kernel = fspp_solution_to_kernel(&w, &map);
            emit(&output, &kernel_to_json(&kernel, &d))?;
            Ok(0)
        }
    }
}

fn run_reduce(cmd: ReduceCmd) -> CmdResult {
    match cmd {
        ReduceCmd::DigraphToScarf { digraph, output } => {
            let d = digraph_from_json(&read_input(&digraph)?).map_err(Failure::invalid)?;
            let (inst, _) = crate::kernels::reduce_to_scarf(&d).map_err(Failure::invalid)?;
            emit(&output, &scarf_instance_to_json(&inst))?;
            Ok(0)
        }
        ReduceCmd::DigraphToFspp { digraph, output } => {
            let d = digraph_from_json(&read_input(&digraph)?).map_err(Failure::invalid)?;
            let (inst, _) = digraph_to_fspp(&d);
            emit(&output, &fspp_instance_to_json(&inst))?;
            Ok(0)
        }
        ReduceCmd::HypergraphToScarf { hypergraph, output } => {
            let sys = hypergraph_from_json(&read_input(&hypergraph)?).map_err(Failure::invalid)?;
            let (inst, _) = crate::matchings::reduce_to_scarf(&sys).map_err(Failure::invalid)?;
            emit(&output, &scarf_instance_to_json(&inst))?;
            Ok(0)
        }
    }
}

fn run_oracle(cmd: OracleCmd) -> CmdResult {
    match cmd {
        OracleCmd::Enumerate { instance, cap } => {
            let inst =
                scarf_instance_from_json(&read_input(&instance)?).map_err(Failure::invalid)?;
            let feasible = enumerate_feasible_bases(&inst, cap).map_err(Failure::invalid)?;
            let canon = canonicalize(&inst);
            let subordinating = enumerate_subordinating(&canon, cap).map_err(Failure::invalid)?;
            let one_based = |cols: &std::collections::BTreeSet<usize>| -> Vec<usize> {
                cols.iter().map(|&j| j + 1).collect()
            };
            let value = serde_json::json!({
                "feasible": feasible.iter().map(&one_based).collect::<Vec<_>>(),
                "subordinating": subordinating.iter().map(&one_based).collect::<Vec<_>>(),
            });
            let mut text = serde_json::to_string_pretty(&value).expect("serializable");
            text.push('\n');
            print!("{text}");
            Ok(0)
        }
        OracleCmd::PathGraph { instance, output, cap } => {
            let inst =
                scarf_instance_from_json(&read_input(&instance)?).map_err(Failure::invalid)?;
            let graph = build_path_graph(&inst, cap).map_err(Failure::invalid)?;
            emit(&output, &graph.to_dot())?;
            let findings = graph.audit();
            if findings.is_empty() {
                eprintln!("path graph audit: ok");
                Ok(0)
            } else {
                for finding in &findings {
                    eprintln!("path graph audit: {finding}");
                }
                Err(Failure::internal("path graph degrees contradict the walk theorem"))
            }
        }
        OracleCmd::BruteSolve { instance, cap } => {
            let inst =
                scarf_instance_from_json(&read_input(&instance)?).map_err(Failure::invalid)?;
            let solutions = brute_solve(&inst, cap).map_err(Failure::invalid)?;
            eprintln!("{} solution(s)", solutions.len());
            print!("{}", solutions_to_json(&solutions));
            Ok(0)
        }
    }
}

fn run_gen(cmd: GenCmd) -> CmdResult {
    match cmd {
        GenCmd::Scarf { m, n, seed, output } => {
            let inst = random_scarf(m, n, seed).map_err(Failure::invalid)?;
            emit(&output, &scarf_instance_to_json(&inst))?;
            Ok(0)
        }
        GenCmd::Digraph { nv, arc_prob, rev_prob, seed, output } => {
            if nv == 0 {
                return Err(Failure::invalid("need at least one vertex"));
            }
            for (name, p) in [("arc-prob", arc_prob), ("rev-prob", rev_prob)] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Failure::invalid(format!("{name} {p} is outside [0, 1]")));
                }
            }
            let d = random_clique_acyclic(nv, arc_prob, rev_prob, seed);
            emit(&output, &digraph_to_json(&d))?;
            Ok(0)
        }
        GenCmd::Cycle { k, output } => {
            if k < 2 {
                return Err(Failure::invalid("a cycle needs at least two vertices"));
            }
            emit(&output, &digraph_to_json(&directed_cycle(k)))?;
            Ok(0)
        }
    }
}

fn run_bench(cmd: BenchCmd) -> CmdResult {
    match cmd {
        BenchCmd::Run { corpus, output, step_cap } => {
            let opts = SolveOptions { step_cap, ..SolveOptions::default() };
            let records = bench_corpus(&corpus, &opts)
                .map_err(|e| Failure::invalid(format!("reading {}: {e}", corpus.display())))?;
            let failures = records.iter().filter(|r| r.outcome != "ok").count();
            eprintln!("{} instance(s), {} failure(s)", records.len(), failures);
            emit(&output, &to_csv(&records))?;
            Ok(0)
        }
    }
}
