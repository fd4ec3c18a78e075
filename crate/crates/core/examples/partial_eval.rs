//! Partial evaluation of normal forms at sample points, with the polynomials
//! that justify each decided value.

use lpcad::cli::parse_system;
use lpcad::exact::{int, rat};
use lpcad::formula::{peval, to_cnf, to_dnf, PEvalResult, DEFAULT_ATOM_LIMIT};
use lpcad::realalg::SamplePoint;

fn main() {
    let problem = parse_system(include_str!("../problems/ellipse_lobes.cad")).unwrap();
    let vars = &problem.vars;
    let cnf = to_cnf(&problem.formula, DEFAULT_ATOM_LIMIT).unwrap();
    let dnf = to_dnf(&problem.formula, DEFAULT_ATOM_LIMIT).unwrap();
    println!("cnf: {}", cnf.render(vars));
    println!("dnf: {}", dnf.render(vars));

    let points = [vec![int(0), int(0)], vec![int(0), int(-4)], vec![int(-1), int(0)], vec![rat(1, 2)], vec![int(3)]];
    for coords in &points {
        let at = SamplePoint::from_rationals(coords);
        for (name, nf) in [("cnf", &cnf), ("dnf", &dnf)] {
            match peval(nf, &at) {
                PEvalResult::Decided(v, ws) => {
                    let ws: Vec<String> = ws.iter().map(|p| p.render(vars)).collect();
                    println!("{} at {}: {} because of {:?}", name, at.render(), v, ws);
                }
                PEvalResult::Undecided => println!("{} at {}: undecided", name, at.render()),
            }
        }
    }
}
