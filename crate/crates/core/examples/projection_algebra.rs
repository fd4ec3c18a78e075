//! Resultants, discriminants, principal subresultant coefficients and the
//! squarefree coprime factor basis.

use lpcad::cadbase::global_projection;
use lpcad::cli::parse_formula;
use lpcad::poly::{discriminant, factor_basis, psc_sequence, resultant, MultiPoly, VarOrder};
use lpcad::projection::ProjKind;

fn poly(vars: &VarOrder, text: &str) -> MultiPoly {
    parse_formula(&format!("{} = 0", text), vars).unwrap().atoms()[0].poly.clone()
}

fn main() {
    let vars = VarOrder::new(&["x", "y"]).unwrap();
    let f = poly(&vars, "4*x^2 + y^2 - 4");
    let g = poly(&vars, "x^2 + y^2 - 1");
    println!("res_y(f, g) = {}", resultant(&f, &g, 1).unwrap().render(&vars));
    println!("disc_y(f)   = {}", discriminant(&f, 1).unwrap().render(&vars));
    let psc: Vec<String> = psc_sequence(&f, &g, 1).unwrap().iter().map(|p| p.render(&vars)).collect();
    println!("psc_y(f, g) = {:?}", psc);

    let inputs = [poly(&vars, "(x^2 - 1)^2*(y - x)"), poly(&vars, "(x - 1)*(x^2 + y^2 - 1)^3")];
    let basis = factor_basis(inputs.iter());
    for p in basis.iter() {
        println!("basis factor: {}", p.render(&vars));
    }
    for p in &inputs {
        println!("{} has exponents {:?}", p.render(&vars), basis.exponents_of(p).unwrap());
    }

    for (j, level) in global_projection(&[f, g], 2, ProjKind::McCallum).iter().enumerate() {
        let ps: Vec<String> = level.iter().map(|p| p.render(&vars)).collect();
        println!("global projection level {}: {:?}", j + 1, ps);
    }
}
