use clap::Parser;
use lpcad::cadbase::{cad_solve, CadOptions};
use lpcad::cli::{oracle_check, parse_formula, parse_system, random_poly, run_text, Args, RandomShape, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE};
use lpcad::exact::{int, rat};
use lpcad::formula::{eval_caf, Bound, Constraint, CylFormula, Rel, RootFunction, SystemFormula};
use lpcad::lpcad::{lpcad, normalize_caf, solve, LpcadOptions};
use lpcad::poly::VarOrder;
use lpcad::realalg::SamplePoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXAMPLE: &str = "vars x, y;\n4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and 16*x^6 - 24*x^4 + 9*x^2 + 4*y^4 - 4*y^2 <= 0);\n";

fn example() -> (VarOrder, SystemFormula) {
    let p = parse_system(EXAMPLE).unwrap();
    (p.vars, p.formula)
}

fn cli(argv: &[&str], text: &str) -> (i32, String, String) {
    let args = Args::parse_from(std::iter::once("lpcad").chain(argv.iter().copied()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_text(&args, text, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn random_quadratic_systems_agree_with_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..20 {
        let n = 1 + i % 3;
        let shape = RandomShape { nvars: n, min_terms: 2, max_terms: 5, coeff_bits: 4, degree: 2 };
        let vars = VarOrder::numbered(n);
        let rels = [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ne, Rel::Ge, Rel::Gt];
        let atoms: Vec<SystemFormula> = (0..2).map(|_| SystemFormula::atom(random_poly(&shape, &mut rng), rels[rng.gen_range(0..6)])).collect();
        let s = if rng.gen_bool(0.5) { SystemFormula::and(atoms) } else { SystemFormula::or(atoms) };
        let (f, st) = solve(&s, &vars, &LpcadOptions::default()).unwrap();
        assert_eq!(st.partition_checks, st.calls, "system {}", i);
        assert!(st.max_depth <= n);
        let r = oracle_check(&s, &f, n, 10_000, i as u64);
        assert!(r.passed(), "lpcad on system {}: {:?}", s.render(&vars), r);
        let (g, _) = cad_solve(&s, &vars, &CadOptions::default()).unwrap();
        let r = oracle_check(&s, &g, n, 10_000, i as u64);
        assert!(r.passed(), "baseline on system {}: {:?}", s.render(&vars), r);
    }
}

// Moves the first root index it finds by `delta`.
fn shift_root(f: &CylFormula, delta: isize, done: &mut bool) -> CylFormula {
    let bump = |b: &Bound, done: &mut bool| match b {
        Bound::Root(r) if !*done => {
            *done = true;
            let index = (r.index as isize + delta).max(1) as usize;
            Bound::Root(RootFunction::new(r.defpoly.clone(), index))
        }
        other => other.clone(),
    };
    match f {
        CylFormula::Const(b) => CylFormula::Const(*b),
        CylFormula::Node { var, branches } => {
            let mut out = Vec::new();
            for (c, sub) in branches {
                let sub = shift_root(sub, delta, done);
                let c = match c {
                    Constraint::Eq(b) => Constraint::Eq(bump(b, done)),
                    Constraint::Between { lower, upper, lower_strict, upper_strict } => {
                        let lower = bump(lower, done);
                        Constraint::Between { lower, upper: bump(upper, done), lower_strict: *lower_strict, upper_strict: *upper_strict }
                    }
                };
                out.push((c, sub));
            }
            CylFormula::Node { var: *var, branches: out }
        }
    }
}

#[test]
fn oracle_catches_wrong_root_indices() {
    let (vars, s) = example();
    let (f, _) = solve(&s, &vars, &LpcadOptions::default()).unwrap();
    assert!(oracle_check(&s, &f, 2, 10_000, 1).passed());
    // the innermost bound is Root(f1, 1); the outer ones are simple roots of linear factors
    for delta in [1isize, -1] {
        let mut done = false;
        let g = shift_root(&f, delta, &mut done);
        assert!(done);
        if g != f {
            assert!(!oracle_check(&s, &g, 2, 10_000, 1).passed(), "shift by {}", delta);
        }
    }
    let wrong_inner = match &f {
        CylFormula::Node { var, branches } => {
            let (c, sub) = &branches[0];
            let mut done = false;
            CylFormula::Node { var: *var, branches: vec![(c.clone(), shift_root(sub, 1, &mut done))] }
        }
        _ => unreachable!(),
    };
    assert!(!oracle_check(&s, &wrong_inner, 2, 10_000, 1).passed());
}

#[test]
fn oracle_catches_constant_false() {
    let (_, s) = example();
    let r = oracle_check(&s, &CylFormula::Const(false), 2, 1_000, 7);
    assert!(!r.passed());
    assert!(r.disagreement.is_some());
}

#[test]
fn dependencies_keep_the_formula_valid() {
    let (_, s) = example();
    let opts = LpcadOptions::default();
    let at_zero = lpcad(&s, 2, &SamplePoint::from_rationals(&[int(0)]), &opts).unwrap();
    let at_half = lpcad(&s, 2, &SamplePoint::from_rationals(&[rat(1, 2)]), &opts).unwrap();
    // both points lie between the roots of x - 1 and x + 1, so the same formula is valid at both
    assert_eq!(normalize_caf(&at_zero.formula), normalize_caf(&at_half.formula));
    for (j, v) in at_zero.deps.iter().enumerate() {
        assert!(v.iter().all(|p| p.level() == j + 1));
    }
    for y in -25..=25 {
        let p = [rat(1, 2), rat(y, 10)];
        assert_eq!(eval_caf(&at_half.formula, &p), s.eval(&p), "y = {}", y);
    }
}

#[test]
fn baseline_on_example() {
    let (vars, s) = example();
    let (f, st) = cad_solve(&s, &vars, &CadOptions::default()).unwrap();
    assert_eq!(st.cells, 357);
    assert!(oracle_check(&s, &f, 2, 10_000, 3).passed());
}

#[test]
fn json_is_deterministic() {
    let strip = |t: &str| {
        let mut v: serde_json::Value = serde_json::from_str(t).unwrap();
        v.as_object_mut().unwrap().remove("time_ms");
        v
    };
    let (c1, a, _) = cli(&["-", "--emit", "json"], EXAMPLE);
    let (c2, b, _) = cli(&["-", "--emit", "json"], EXAMPLE);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    let a = strip(&a);
    assert_eq!(a, strip(&b));
    assert_eq!(a["cells"], 13);
    assert_eq!(a["schema_version"], 1);
    assert_eq!(a["method"], "lpcad");
}

#[test]
fn cli_exit_codes() {
    let (code, out, _) = cli(&["-", "--emit", "stats", "--check", "2000"], EXAMPLE);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cells = 13"), "{}", out);
    let (code, _, err) = cli(&["-"], "vars x, y;\nx + < 0;\n");
    assert_eq!(code, EXIT_INPUT);
    assert!(err.starts_with("error:"));
    assert_eq!(cli(&["-"], "vars x;\nexists y (x + y < 0);\n").0, EXIT_INPUT);
    assert_eq!(cli(&["-", "--max-steps", "2"], EXAMPLE).0, EXIT_RESOURCE);
    let (code, out, _) = cli(&["-", "--method", "cad-mc", "--emit", "stats"], EXAMPLE);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cells = 357"), "{}", out);
    let args = Args::parse_from(["lpcad", "/nonexistent/problem.cad"]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(lpcad::cli::run(&args, &mut out, &mut err), EXIT_INPUT);
}

#[test]
fn single_quadratic_family() {
    let vars = VarOrder::new(&["a", "b", "c", "x"]).unwrap();
    let s = parse_formula("a*x^2 + b*x + c >= 0", &vars).unwrap();
    let (f, _) = solve(&s, &vars, &LpcadOptions::default()).unwrap();
    assert!(oracle_check(&s, &f, 4, 10_000, 11).passed());
}
