//! Exact real roots, comparisons, and roots over algebraic sample points.

use lpcad::cli::parse_formula;
use lpcad::poly::{VarOrder, ZPoly};
use lpcad::realalg::{real_roots, SamplePoint};

fn main() {
    // (x^2 - 2)(x - 1)^2 (x^3 - x - 1)
    let p = ZPoly::from_i64(&[-2, 0, 1]).mul(&ZPoly::from_i64(&[1, -2, 1])).mul(&ZPoly::from_i64(&[-1, -1, 0, 1]));
    let roots = real_roots(&p);
    for r in &roots {
        println!("{:<28} ~ {}", r.render("x"), r.to_decimal(20));
    }
    println!("plastic number vs sqrt 2: {:?}", roots[2].compare(&roots[3]));

    // roots of y^2 - x over x = sqrt 2 live in a degree-4 extension
    let vars = VarOrder::new(&["x", "y"]).unwrap();
    let f = parse_formula("y^2 - x = 0", &vars).unwrap().atoms()[0].poly.clone();
    let base = SamplePoint::from_nums(&[roots[3].clone()]);
    for root in base.anchored_roots(&f).unwrap() {
        let point = base.push(root.value.clone(), true);
        println!("root {} of {} at x = sqrt 2: {}  (field degree {})", root.index, f.render(&vars), point.render(), point.field_degree());
    }
    let g = parse_formula("x*y - 1 = 0", &vars).unwrap().atoms()[0].poly.clone();
    let point = base.push(base.roots_at(&f).unwrap()[1].clone(), true);
    println!("sign of {} there: {}", g.render(&vars), point.sign_at(&g));
}
