//! The sampling oracle accepts a correct formula and rejects a wrong one.

use lpcad::cli::{oracle_check, parse_system};
use lpcad::formula::CylFormula;
use lpcad::lpcad::{solve, LpcadOptions};

fn main() {
    let problem = parse_system(include_str!("../problems/ball.cad")).unwrap();
    let n = problem.vars.len();
    let (formula, _) = solve(&problem.formula, &problem.vars, &LpcadOptions::default()).unwrap();
    println!("{}", formula.render(&problem.vars));

    let good = oracle_check(&problem.formula, &formula, n, 10_000, 1);
    println!("solver output: passed {} ({} samples)", good.passed(), good.samples);
    let bad = oracle_check(&problem.formula, &CylFormula::Const(true), n, 10_000, 1);
    println!("constant true: passed {}, first disagreement {:?}", bad.passed(), bad.disagreement);
}
