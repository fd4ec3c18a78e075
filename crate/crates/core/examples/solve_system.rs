//! Solves a two-variable system and prints the cylindrical formula.

use lpcad::cli::{oracle_check, parse_system};
use lpcad::lpcad::{solve, LpcadOptions};

fn main() {
    let problem = parse_system(include_str!("../problems/ellipse_lobes.cad")).expect("problem parses");
    let (formula, stats) = solve(&problem.formula, &problem.vars, &LpcadOptions::default()).expect("solve");

    println!("input: {}", problem.formula.render(&problem.vars));
    println!("{}", formula.render_tree(&problem.vars));
    println!("cells {}, atomic {}, levels {:?}", stats.cells, stats.atomic_cells, stats.level_sizes);

    let report = oracle_check(&problem.formula, &formula, problem.vars.len(), 5_000, 7);
    println!("sampling oracle: agrees {} on {} points", report.passed(), report.samples);
}
