//! Prints each interval the solver visits and how it was decided.

use lpcad::cli::parse_system;
use lpcad::lpcad::{solve, LpcadOptions, TraceEvent};

fn main() {
    let problem = parse_system(include_str!("../problems/ellipse_lobes.cad")).unwrap();
    let show = |e: &TraceEvent| {
        let indent = "  ".repeat(e.k);
        println!("{}{} sample {} -> {:?} ({} witnesses)", indent, e.interval, e.sample, e.decision, e.witnesses);
    };
    let opts = LpcadOptions { trace: Some(&show), ..LpcadOptions::default() };
    let (_, stats) = solve(&problem.formula, &problem.vars, &opts).unwrap();
    println!("{} calls, {} restarts, depth {}", stats.calls, stats.restarts, stats.max_depth);
}
