// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dinnerplan_core::bounds::BoundsReport;
use dinnerplan_core::constructions::{build_case, ConstructionError, SpecialCase};
use dinnerplan_core::transforms::{best_feasible, build_eucli, build_ub1, build_ub2};
use dinnerplan_core::{
    bounds, decode_schedule, encode_schedule, solve_exact, validate_schedule, Instance, Schedule, SolveLimits,
    SolveStatus,
};

/// `println!` that ignores a closed stdout (output piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

mod tables;

const EXIT_SEMANTIC: u8 = 1;
const EXIT_PARAM: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_BUILD_BUDGET: u8 = 4;
const EXIT_SOLVE_BUDGET: u8 = 5;

/// Bounds, constructions, validation and exact solving for business dinner
/// schedules.
#[derive(Parser)]
#[command(name = "dinnerplan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every lower and upper bound of an instance.
    Bounds {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build a schedule with one construction.
    Build {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        /// Write the schedule here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a schedule file; exits 0 iff it is feasible.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find the optimal dinner count by exhaustive search.
    Solve {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Search node budget [default: $DINNER_NODE_BUDGET or 10000000]
        #[arg(long)]
        budget: Option<u64>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long, default_value_t = 64)]
        max_dinners: u32,
        /// Write the witness schedule here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the lower-bound dominance table and the upper-bound
    /// comparisons, checking every cell against its expected value.
    ReferenceTables,
}

#[derive(Args)]
struct InstanceArgs {
    /// Tables per dinner
    t: u32,
    /// Suppliers
    s: u32,
    /// Customers
    c: u32,
    /// Suppliers per table
    sigma: u32,
    /// Customers per table
    gamma: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Auto,
    Trivial,
    Sigma1,
    Howell,
    Caspar,
    Prime,
    Ub1,
    Ub2,
    Eucli,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds { inst, json } => bounds_cmd(&inst, json),
        Command::Build { inst, strategy, out } => build_cmd(&inst, strategy, out.as_deref()),
        Command::Validate { file, json } => validate_cmd(&file, json),
        Command::Solve { inst, budget, timeout, max_dinners, out, json } => {
            solve_cmd(&inst, budget, timeout, max_dinners, out.as_deref(), json)
        }
        Command::ReferenceTables => tables::run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn instance(args: &InstanceArgs) -> Result<Instance, Failure> {
    Instance::new(args.t, args.s, args.c, args.sigma, args.gamma).map_err(|e| Failure::new(EXIT_PARAM, e.to_string()))
}

fn optional(v: Option<u64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

fn bounds_cmd(args: &InstanceArgs, as_json: bool) -> Outcome {
    let inst = instance(args)?;
    let r = BoundsReport::compute(&inst);
    if as_json {
        out!("{}", serde_json::to_string(&r).expect("report serializes"));
        return Ok(());
    }
    out!("instance  {inst}");
    out!("lb1       {}", r.lb1);
    out!("lb2       {}", r.lb2);
    out!("lb3       {}", r.lb3);
    out!("lb4       {}", optional(r.lb4));
    match r.lb5_argmax {
        Some(j) => out!("lb5       {} (j = {j})", r.lb5),
        None => out!("lb5       {}", r.lb5),
    }
    out!("j*        {}", r.j_star);
    out!("lb_best   {}", r.lb_best);
    out!("ub1       {}", r.ub1);
    out!("ub1_impr  {}", optional(r.ub1_improved));
    out!("ub2       {}", optional(r.ub2));
    out!("ub_eucli  {}", r.ub_eucli);
    out!("ub_best   {}", r.ub_best);
    if !r.ub_excluded.is_empty() {
        out!("no witness for {}", r.ub_excluded.join(", "));
    }
    Ok(())
}

fn construction_failure(e: ConstructionError) -> Failure {
    let code = if e.is_budget() {
        EXIT_BUILD_BUDGET
    } else if matches!(e, ConstructionError::Coloring(_)) {
        EXIT_SEMANTIC
    } else {
        EXIT_PRECONDITION
    };
    Failure::new(code, e.to_string())
}

fn build_cmd(args: &InstanceArgs, strategy: Strategy, out: Option<&Path>) -> Outcome {
    let inst = instance(args)?;
    let case = |case| build_case(&inst, case).map_err(construction_failure);
    let (sched, label, proven) = match strategy {
        Strategy::Auto => {
            let best = best_feasible(&inst);
            (best.schedule, best.source.name(), best.proven_optimal)
        }
        Strategy::Trivial => (case(SpecialCase::Trivial)?, "trivial", true),
        Strategy::Sigma1 => (case(SpecialCase::SigmaOne)?, "sigma1", true),
        Strategy::Howell => (case(SpecialCase::Howell)?, "howell", true),
        Strategy::Caspar => (case(SpecialCase::CasPar)?, "caspar", true),
        Strategy::Prime => (case(SpecialCase::Prime)?, "prime", true),
        Strategy::Ub1 => (build_ub1(&inst).schedule, "ub1", false),
        Strategy::Ub2 => (build_ub2(&inst).map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?, "ub2", false),
        Strategy::Eucli => (build_eucli(&inst), "eucli", false),
    };
    let proven = proven || sched.dinner_count() as u64 == bounds::lb_best(&inst);
    let report = validate_schedule(&sched);
    if !report.feasible {
        return Err(Failure::new(EXIT_SEMANTIC, format!("{label} produced an infeasible schedule")));
    }
    write_schedule(&sched, out)?;
    let summary =
        format!("{} dinners via {label}, optimal={}", sched.dinner_count(), if proven { "yes" } else { "unknown" });
    if out.is_some() {
        out!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn write_schedule(sched: &Schedule, out: Option<&Path>) -> Outcome {
    let text = encode_schedule(sched);
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure::new(EXIT_SEMANTIC, format!("cannot write {}: {e}", path.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn validate_cmd(file: &Path, as_json: bool) -> Outcome {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::new(EXIT_PARAM, format!("cannot read {}: {e}", file.display())))?;
    let sched = decode_schedule(&text).map_err(|e| Failure::new(EXIT_PARAM, e.to_string()))?;
    let report = validate_schedule(&sched);
    if as_json {
        out!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else if report.feasible {
        out!("feasible: {} dinners for {}", sched.dinner_count(), sched.instance);
    } else {
        out!("infeasible: {} violations", report.violations.len());
        for v in &report.violations {
            out!("  {:?}: {v}", v.kind());
        }
    }
    if report.feasible {
        Ok(())
    } else {
        Err(Failure::new(EXIT_SEMANTIC, ""))
    }
}

fn node_budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("DINNER_NODE_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_PARAM, format!("DINNER_NODE_BUDGET must be an integer, got {v:?}"))),
        Err(_) => Ok(SolveLimits::default().node_budget),
    }
}

fn solve_cmd(
    args: &InstanceArgs,
    budget: Option<u64>,
    timeout: Option<f64>,
    max_dinners: u32,
    out: Option<&Path>,
    as_json: bool,
) -> Outcome {
    let inst = instance(args)?;
    let time_budget = match timeout {
        Some(secs) if secs.is_finite() && secs > 0.0 => Some(Duration::from_secs_f64(secs)),
        Some(_) => return Err(Failure::new(EXIT_PARAM, "--timeout must be a positive number of seconds")),
        None => None,
    };
    let limits = SolveLimits { node_budget: node_budget(budget)?, time_budget, max_dinners, ..SolveLimits::default() };
    let result = solve_exact(&inst, &limits).map_err(|e| Failure::new(EXIT_PARAM, e.to_string()))?;

    if let (Some(path), Some(w)) = (out, &result.witness) {
        write_schedule(w, Some(path))?;
    }
    if as_json {
        let v = json!({
            "status": result.status,
            "value": result.value,
            "nodes": result.nodes,
            "lower_bound": result.lower_bound,
            "witness": result.witness,
        });
        out!("{v}");
    } else {
        let status = serde_json::to_value(result.status).expect("status serializes");
        out!("status       {}", status.as_str().unwrap_or_default());
        if let Some(v) = result.value {
            out!("value        {v}");
        }
        out!("lower bound  {}", result.lower_bound);
        out!("nodes        {}", result.nodes);
        if let (Some(path), Some(_)) = (out, &result.witness) {
            out!("witness      {}", path.display());
        }
    }
    match result.status {
        SolveStatus::Optimal => Ok(()),
        SolveStatus::InfeasibleAtBound => {
            Err(Failure::new(EXIT_SEMANTIC, format!("no schedule with at most {max_dinners} dinners")))
        }
        SolveStatus::FeasibleOnly | SolveStatus::BudgetExhausted => {
            Err(Failure::new(EXIT_SOLVE_BUDGET, "budget exhausted before optimality was proven"))
        }
    }
}
