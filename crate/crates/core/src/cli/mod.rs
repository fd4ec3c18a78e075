//! Command-line front end: problem files, solver driver, statistics and the
//! sampling equivalence oracle.

mod oracle;
mod parse;
mod random;
mod run;

pub use oracle::{oracle_check, OracleReport};
pub use parse::{parse_formula, parse_system, ParseError, ProblemFile};
pub use random::{random_poly, random_system, RandomShape};
pub use run::{
    run, run_text, solve_problem, Args, Emit, LevelSize, Method, PevalCounts, RunError, Settings, StatsReport, EXIT_CHECK_FAILED, EXIT_INPUT,
    EXIT_INTERNAL, EXIT_OK, EXIT_RESOURCE, SCHEMA_VERSION,
};
