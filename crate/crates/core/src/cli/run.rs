use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use super::oracle::{oracle_check, OracleReport};
use super::parse::{parse_system, ProblemFile};
use crate::cadbase::{cad_solve, CadError, CadOptions};
use crate::formula::{CylFormula, DEFAULT_ATOM_LIMIT};
use crate::lpcad::{solve, LpcadError, LpcadOptions, TraceEvent};
use crate::projection::ProjKind;

pub const EXIT_OK: i32 = 0;
/// The oracle found a point where the result and the input disagree.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Unreadable input, a parse error or a bad option.
pub const EXIT_INPUT: i32 = 2;
/// A step, cell or normal-form budget ran out.
pub const EXIT_RESOURCE: i32 = 3;
/// An internal invariant failed.
pub const EXIT_INTERNAL: i32 = 4;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Lpcad,
    CadMc,
    CadHong,
    LpcadHongOnly,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lpcad => "lpcad",
            Method::CadMc => "cad-mc",
            Method::CadHong => "cad-hong",
            Method::LpcadHongOnly => "lpcad-hong-only",
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Method as ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// The formula as one line of text.
    Caf,
    /// Statistics and the formula tree as JSON.
    Json,
    /// `key = value` statistics.
    Stats,
    /// One line per processed interval, then the formula.
    Trace,
}

/// Solve a quantifier-free polynomial system and print a cylindrical algebraic formula.
#[derive(Clone, Debug, Parser)]
#[command(name = "lpcad", version)]
pub struct Args {
    /// Problem file, or `-` for standard input.
    pub problem: PathBuf,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Output kinds; may be repeated.
    #[arg(long, value_enum)]
    pub emit: Vec<Emit>,
    /// Compare the result with the input on this many sample points.
    #[arg(long, value_name = "N")]
    pub check: Option<usize>,
    /// Seed for the sampling check.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Keep projection levels whose coordinate is a single point.
    #[arg(long)]
    pub no_skip_levels: bool,
    /// Stack pops allowed per recursive call.
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Largest CNF or DNF, in atoms, before giving up.
    #[arg(long)]
    pub max_nf_atoms: Option<usize>,
    /// Print the formula as an indented tree.
    #[arg(long)]
    pub tree: bool,
}

/// Solver settings after merging the problem's options block with the flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub method: Method,
    pub check: Option<usize>,
    pub seed: u64,
    pub skip_levels: bool,
    pub max_steps: usize,
    pub max_nf_atoms: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { method: Method::Lpcad, check: None, seed: 0, skip_levels: true, max_steps: 1_000_000, max_nf_atoms: DEFAULT_ATOM_LIMIT }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Parse(#[from] super::ParseError),
    #[error("bad option `{0}`: {1}")]
    Option(String, String),
    #[error(transparent)]
    Lpcad(#[from] LpcadError),
    #[error(transparent)]
    Cad(#[from] CadError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(..) | RunError::Parse(_) | RunError::Option(..) => EXIT_INPUT,
            RunError::Lpcad(LpcadError::Internal(_)) => EXIT_INTERNAL,
            RunError::Lpcad(_) | RunError::Cad(_) => EXIT_RESOURCE,
        }
    }
}

fn parse_opt<T: FromStr>(key: &str, v: &str) -> Result<T, RunError> {
    v.parse().map_err(|_| RunError::Option(key.to_string(), format!("cannot parse `{}`", v)))
}

impl Settings {
    /// Options from the problem file, overridden by explicit flags.
    pub fn resolve(options: &BTreeMap<String, String>, args: &Args) -> Result<Settings, RunError> {
        let mut s = Settings::default();
        for (k, v) in options {
            match k.as_str() {
                "method" => s.method = v.parse().map_err(|e| RunError::Option(k.clone(), e))?,
                "check" => s.check = Some(parse_opt(k, v)?),
                "seed" => s.seed = parse_opt(k, v)?,
                "skip_levels" => s.skip_levels = parse_opt(k, v)?,
                "max_steps" => s.max_steps = parse_opt(k, v)?,
                "max_nf_atoms" => s.max_nf_atoms = parse_opt(k, v)?,
                _ => return Err(RunError::Option(k.clone(), "unknown option".into())),
            }
        }
        if let Some(m) = args.method {
            s.method = m;
        }
        if args.check.is_some() {
            s.check = args.check;
        }
        if let Some(seed) = args.seed {
            s.seed = seed;
        }
        if args.no_skip_levels {
            s.skip_levels = false;
        }
        if let Some(m) = args.max_steps {
            s.max_steps = m;
        }
        if let Some(m) = args.max_nf_atoms {
            s.max_nf_atoms = m;
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSize {
    pub k: usize,
    pub proj_size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PevalCounts {
    pub decided_cnf: usize,
    pub decided_dnf: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub schema_version: u32,
    pub method: Method,
    pub cells: usize,
    pub atomic_cells: usize,
    pub levels: Vec<LevelSize>,
    pub peval: PevalCounts,
    pub iterations: usize,
    pub well_oriented: bool,
    pub time_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<OracleReport>,
}

impl StatsReport {
    /// Deterministic JSON with sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

fn levels(sizes: &[usize]) -> Vec<LevelSize> {
    sizes.iter().enumerate().map(|(i, &n)| LevelSize { k: i + 1, proj_size: n }).collect()
}

/// Runs the selected method and, if requested, the oracle.
pub fn solve_problem(p: &ProblemFile, s: &Settings, trace: Option<&dyn Fn(&TraceEvent)>) -> Result<(CylFormula, StatsReport), RunError> {
    let (formula, mut report) = match s.method {
        Method::Lpcad | Method::LpcadHongOnly => {
            let opts = LpcadOptions {
                skip_levels: s.skip_levels,
                hong_only: s.method == Method::LpcadHongOnly,
                max_steps: s.max_steps,
                atom_limit: s.max_nf_atoms,
                trace,
            };
            let (f, st) = solve(&p.formula, &p.vars, &opts)?;
            let report = StatsReport {
                schema_version: SCHEMA_VERSION,
                method: s.method,
                cells: st.cells,
                atomic_cells: st.atomic_cells,
                levels: levels(&st.level_sizes),
                peval: PevalCounts { decided_cnf: st.decided_cnf, decided_dnf: st.decided_dnf, undecided: st.undecided },
                iterations: st.iterations,
                well_oriented: st.well_oriented(),
                time_ms: st.time_ms,
                check: None,
            };
            (f, report)
        }
        Method::CadMc | Method::CadHong => {
            let kind = if s.method == Method::CadMc { ProjKind::McCallum } else { ProjKind::Hong };
            let (f, st) = cad_solve(&p.formula, &p.vars, &CadOptions { kind, ..Default::default() })?;
            let report = StatsReport {
                schema_version: SCHEMA_VERSION,
                method: s.method,
                cells: st.cells,
                atomic_cells: st.atomic_cells,
                levels: levels(&st.level_sizes),
                peval: PevalCounts::default(),
                iterations: st.cells,
                well_oriented: st.well_oriented,
                time_ms: st.time_ms,
                check: None,
            };
            (f, report)
        }
    };
    if let Some(n) = s.check {
        report.check = Some(oracle_check(&p.formula, &formula, p.vars.len(), n, s.seed));
    }
    Ok((formula, report))
}

fn read_problem(path: &PathBuf) -> Result<String, RunError> {
    let name = path.display().to_string();
    if name == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| RunError::Io(name, e))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| RunError::Io(name, e))
    }
}

fn execute(args: &Args, text: &str, out: &mut dyn Write) -> Result<i32, RunError> {
    let problem = parse_system(text)?;
    let settings = Settings::resolve(&problem.options, args)?;
    let emits = if args.emit.is_empty() { vec![Emit::Caf] } else { args.emit.clone() };
    let lines = std::cell::RefCell::new(Vec::new());
    let record = |e: &TraceEvent| lines.borrow_mut().push(format!("level {} interval {} sample {} -> {:?} ({} witnesses)", e.k + 1, e.interval, e.sample, e.decision, e.witnesses));
    let want_trace = emits.contains(&Emit::Trace);
    let (formula, report) = solve_problem(&problem, &settings, if want_trace { Some(&record) } else { None })?;
    let vars = &problem.vars;
    let text_form = || if args.tree { formula.render_tree(vars) } else { format!("{}\n", formula.render(vars)) };
    let io = |e: std::io::Error| RunError::Io("standard output".into(), e);
    for e in emits {
        match e {
            Emit::Caf => write!(out, "{}", text_form()).map_err(io)?,
            Emit::Trace => {
                for l in lines.borrow().iter() {
                    writeln!(out, "{}", l).map_err(io)?;
                }
                write!(out, "{}", text_form()).map_err(io)?;
            }
            Emit::Stats => {
                writeln!(out, "method = {}", report.method.name()).map_err(io)?;
                writeln!(out, "cells = {}", report.cells).map_err(io)?;
                writeln!(out, "atomic_cells = {}", report.atomic_cells).map_err(io)?;
                let sizes: Vec<String> = report.levels.iter().map(|l| l.proj_size.to_string()).collect();
                writeln!(out, "proj_sizes = [{}]", sizes.join(", ")).map_err(io)?;
                writeln!(
                    out,
                    "peval = cnf {} dnf {} undecided {}",
                    report.peval.decided_cnf, report.peval.decided_dnf, report.peval.undecided
                )
                .map_err(io)?;
                writeln!(out, "iterations = {}", report.iterations).map_err(io)?;
                writeln!(out, "well_oriented = {}", report.well_oriented).map_err(io)?;
                writeln!(out, "time_ms = {}", report.time_ms).map_err(io)?;
                if let Some(c) = &report.check {
                    writeln!(out, "check = {} on {} samples", if c.passed() { "pass" } else { "FAIL" }, c.samples).map_err(io)?;
                }
            }
            Emit::Json => {
                let mut v = report.to_json();
                v["formula"] = formula.to_json(vars);
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("plain data")).map_err(io)?;
            }
        }
    }
    if let Some(c) = &report.check {
        if !c.passed() {
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line; returns the process exit code.
pub fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match read_problem(&args.problem) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            return e.exit_code();
        }
    };
    run_text(args, &text, out, err)
}

/// As [`run`], with the problem text supplied directly.
pub fn run_text(args: &Args, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        let mut buf = Vec::new();
        let r = execute(args, text, &mut buf);
        (r, buf)
    }));
    match outcome {
        Ok((Ok(code), buf)) => {
            let _ = out.write_all(&buf);
            if code == EXIT_CHECK_FAILED {
                let _ = writeln!(err, "error: the result disagrees with the input on a sampled point");
            }
            code
        }
        Ok((Err(e), _)) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal failure");
            EXIT_INTERNAL
        }
    }
}
