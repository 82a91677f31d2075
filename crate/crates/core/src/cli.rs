//! Command-line front end. Exit codes: 0 success, 1 validation or
//! verification failure, 2 usage or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::auxgraph::{build_aux_graph, emit_dot};
use crate::error::Error;
use crate::pipeline::{solve_bmp, verify, Solver};
use crate::timetable::{generate_circle, HaAssignment, Timetable};

#[derive(Debug, Parser)]
#[command(
    name = "breakmin",
    version,
    about = "Break-minimal home/away assignments for round-robin timetables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a timetable and write the assignment and report.
    Solve(SolveArgs),
    /// Generate a circle-method timetable.
    Gen(GenArgs),
    /// Validate a timetable, or verify an assignment against one.
    Check(CheckArgs),
    /// Write the auxiliary graph in DOT format.
    Graph(GraphArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Exact,
    Brute,
    Heuristic,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    pub solver: SolverArg,
    /// Seed for the heuristic solver.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// HA-assignment CSV destination.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON report destination; printed to stdout when omitted.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Repaired 0/1/2 label map destination.
    #[arg(long)]
    pub oct: Option<PathBuf>,
    /// Re-verify the produced assignment.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub teams: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub timetable: PathBuf,
    #[arg(long)]
    pub assignment: Option<PathBuf>,
    /// Expected break count of the assignment.
    #[arg(long)]
    pub claimed: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, alias = "dot")]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Io(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn load_timetable(path: &Path, err: &mut dyn Write) -> Result<Timetable, Failure> {
    match Timetable::parse_csv(&read(path)?) {
        Ok(tt) => Ok(tt),
        Err(Error::InvalidTimetable(violations)) => {
            for v in &violations {
                let _ = writeln!(err, "violation: {v}");
            }
            Err(Failure::Domain(format!(
                "{}: {} timetable violation(s)",
                path.display(),
                violations.len()
            )))
        }
        Err(e) => Err(Failure::Domain(format!("{}: {e}", path.display()))),
    }
}

fn run_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let tt = load_timetable(&a.input, err)?;
    let solver = match a.solver {
        SolverArg::Exact => Solver::Exact,
        SolverArg::Brute => Solver::Brute,
        SolverArg::Heuristic => Solver::Heuristic { seed: a.seed },
    };
    let report = solve_bmp(&tt, solver)?;
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if let Some(p) = &a.output {
        write_or_print(Some(p), &report.assignment.to_csv(), out)?;
    }
    if let Some(p) = &a.oct {
        write_or_print(Some(p), &report.octmap.to_csv(), out)?;
    }
    let json = serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n";
    write_or_print(a.stats.as_deref(), &json, out)?;
    if a.stats.is_some() {
        let _ = writeln!(out, "b_min = {} (oct_size = {})", report.b_min, report.oct_size);
    }
    if a.verify {
        let v = verify(&tt, &report.assignment, Some(report.b_min));
        if !v.passed() {
            for c in v.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(err, "verify {}: {}", c.name, c.detail);
            }
            return Err(Failure::Domain("verification of the solution failed".into()));
        }
    }
    Ok(())
}

fn run_gen(a: &GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let tt = generate_circle(a.teams, a.seed)?;
    write_or_print(a.output.as_deref(), &tt.to_csv(), out)
}

fn run_check(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let tt = load_timetable(&a.timetable, err)?;
    let Some(path) = &a.assignment else {
        let _ = writeln!(out, "valid timetable: {} teams, {} slots", tt.n_teams(), tt.n_slots());
        return Ok(());
    };
    let z = HaAssignment::parse_csv(&read(path)?).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    let report = verify(&tt, &z, a.claimed);
    for c in &report.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{mark} {}: {}", c.name, c.detail);
    }
    if let Some(b) = &report.breaks {
        let positions: Vec<String> = b
            .positions
            .iter()
            .map(|(t, s)| format!("({},{})", t + 1, s + 1))
            .collect();
        let _ = writeln!(out, "breaks = {} {}", b.total, positions.join(" "));
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Domain("assignment failed verification".into()))
    }
}

fn run_graph(a: &GraphArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let tt = load_timetable(&a.input, err)?;
    write_or_print(a.output.as_deref(), &emit_dot(&build_aux_graph(&tt)), out)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => run_solve(a, out, err),
        Command::Gen(a) => run_gen(a, out),
        Command::Check(a) => run_check(a, out, err),
        Command::Graph(a) => run_graph(a, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let (Failure::Domain(msg) | Failure::Io(msg)) = &f;
            let _ = writeln!(err, "error: {msg}");
            f.code()
        }
    }
}
