//! Compares the local-projection solver with the classical CAD on the same input.

use std::time::Instant;

use lpcad::cadbase::{cad_solve, CadOptions};
use lpcad::cli::parse_system;
use lpcad::lpcad::{solve, LpcadOptions};
use lpcad::projection::ProjKind;

fn main() {
    let problem = parse_system(include_str!("../problems/ellipse_lobes.cad")).unwrap();
    let (s, vars) = (&problem.formula, &problem.vars);

    let t = Instant::now();
    let (_, local) = solve(s, vars, &LpcadOptions::default()).unwrap();
    println!("local projections: {:>5} cells in {:?}", local.cells, t.elapsed());

    for kind in [ProjKind::McCallum, ProjKind::Hong] {
        let t = Instant::now();
        let (_, st) = cad_solve(s, vars, &CadOptions { kind, ..CadOptions::default() }).unwrap();
        println!("classical {:?}: {:>5} cells in {:?} (well oriented: {})", kind, st.cells, t.elapsed(), st.well_oriented);
    }
}
