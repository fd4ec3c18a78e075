//! Local projection sets at a sample point, including a restart with the
//! Hong operator when a coefficient vanishes identically over the point.

use lpcad::cli::parse_formula;
use lpcad::exact::int;
use lpcad::poly::{MultiPoly, VarOrder};
use lpcad::projection::{local_projection, local_projection_with, lproj_h, lproj_mc, ProjectionOptions, ProjectionStep};
use lpcad::realalg::SamplePoint;

fn poly(vars: &VarOrder, text: &str) -> MultiPoly {
    parse_formula(&format!("{} = 0", text), vars).unwrap().atoms()[0].poly.clone()
}

fn show(vars: &VarOrder, levels: &[Vec<MultiPoly>]) {
    for (j, level) in levels.iter().enumerate() {
        let ps: Vec<String> = level.iter().map(|p| p.render(vars)).collect();
        println!("  level {}: {{{}}}", j + 1, ps.join(", "));
    }
}

fn main() {
    let vars = VarOrder::new(&["x", "y"]).unwrap();
    let ellipse = poly(&vars, "4*x^2 + y^2 - 4");
    let origin = SamplePoint::from_rationals(&[int(0)]);
    let one_step: Vec<String> = lproj_mc(&[ellipse.clone()], &origin).iter().map(|p| p.render(&vars)).collect();
    println!("one McCallum step at x = 0: {:?}", one_step);
    let one_step: Vec<String> = lproj_h(&[ellipse.clone()], &origin).iter().map(|p| p.render(&vars)).collect();
    println!("one Hong step at x = 0: {:?}", one_step);

    let seq = local_projection(&[ellipse], &origin);
    println!("full sequence at x = 0:");
    show(&vars, &seq.levels);

    // b*c - a vanishes identically over a = b = 0, so the McCallum pass is not well oriented
    let vars = VarOrder::new(&["a", "b", "c", "d"]).unwrap();
    let ps = [poly(&vars, "d"), poly(&vars, "b*c - a")];
    let point = SamplePoint::from_rationals(&[int(0), int(0), int(5)]);
    let step = |s: &ProjectionStep| println!("  step k={} {:?}: {} projected, {} kept, well oriented {}", s.k, s.kind, s.projected, s.accumulated, s.well_oriented);
    let seq = local_projection_with(&ps, &point, &ProjectionOptions { trace: Some(&step), ..ProjectionOptions::default() });
    println!("sequence at (0, 0, 5), restarted {}, {} iterations:", seq.restarted, seq.iterations);
    show(&vars, &seq.levels);
}
