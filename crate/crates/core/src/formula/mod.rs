//! Quantifier-free polynomial systems, their Boolean normal forms, partial
//! evaluation at sample points, and cylindrical algebraic formulas.

mod caf;
mod normal;
mod peval;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::BigRat;
use crate::poly::{MultiPoly, VarOrder};
use crate::realalg::SamplePoint;

pub use caf::{atomic_cells, count_leaves, eval_caf, eval_caf_strict, satisfied_cells, Bound, CafError, Constraint, CylFormula, RootFunction};
pub use normal::{to_cnf, to_dnf, NormalFormError, DEFAULT_ATOM_LIMIT};
pub use peval::{peval, PEvalResult};

/// Sign condition `f ρ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, sign: i32) -> bool {
        match self {
            Rel::Lt => sign < 0,
            Rel::Le => sign <= 0,
            Rel::Eq => sign == 0,
            Rel::Ne => sign != 0,
            Rel::Ge => sign >= 0,
            Rel::Gt => sign > 0,
        }
    }

    pub fn negate(self) -> Rel {
        match self {
            Rel::Lt => Rel::Ge,
            Rel::Le => Rel::Gt,
            Rel::Eq => Rel::Ne,
            Rel::Ne => Rel::Eq,
            Rel::Ge => Rel::Lt,
            Rel::Gt => Rel::Le,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

/// A sign condition on one polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub poly: MultiPoly,
    pub rel: Rel,
}

/// An and/or tree of sign conditions. Negation is pushed into the atoms on
/// construction, so it never appears in the tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SystemFormula {
    True,
    False,
    Atom(Atom),
    And(Vec<SystemFormula>),
    Or(Vec<SystemFormula>),
}

impl SystemFormula {
    /// `p ρ 0`; constant polynomials fold to truth values.
    pub fn atom(poly: MultiPoly, rel: Rel) -> Self {
        match poly.constant_value() {
            Some(c) => Self::from_bool(rel.holds(sign_of(&c))),
            None => SystemFormula::Atom(Atom { poly, rel }),
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            SystemFormula::True
        } else {
            SystemFormula::False
        }
    }

    /// Conjunction; empty means true and a single child is returned as is.
    pub fn and(mut children: Vec<SystemFormula>) -> Self {
        match children.len() {
            0 => SystemFormula::True,
            1 => children.pop().expect("one child"),
            _ => SystemFormula::And(children),
        }
    }

    /// Disjunction; empty means false and a single child is returned as is.
    pub fn or(mut children: Vec<SystemFormula>) -> Self {
        match children.len() {
            0 => SystemFormula::False,
            1 => children.pop().expect("one child"),
            _ => SystemFormula::Or(children),
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            SystemFormula::True => SystemFormula::False,
            SystemFormula::False => SystemFormula::True,
            SystemFormula::Atom(a) => SystemFormula::Atom(Atom { poly: a.poly.clone(), rel: a.rel.negate() }),
            SystemFormula::And(c) => SystemFormula::Or(c.iter().map(|t| t.negate()).collect()),
            SystemFormula::Or(c) => SystemFormula::And(c.iter().map(|t| t.negate()).collect()),
        }
    }

    /// Atoms in left-to-right order, with repetitions.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            SystemFormula::Atom(a) => out.push(a),
            SystemFormula::And(c) | SystemFormula::Or(c) => c.iter().for_each(|t| t.collect_atoms(out)),
            _ => {}
        }
    }

    /// Distinct polynomials of the atoms, in canonical order.
    pub fn polys(&self) -> Vec<MultiPoly> {
        let mut ps: Vec<MultiPoly> = self.atoms().into_iter().map(|a| a.poly.clone()).collect();
        ps.sort();
        ps.dedup();
        ps
    }

    /// Highest variable level among the atoms.
    pub fn level(&self) -> usize {
        self.atoms().iter().map(|a| a.poly.level()).max().unwrap_or(0)
    }

    /// Truth at a rational point with one coordinate per variable.
    pub fn eval(&self, point: &[BigRat]) -> bool {
        self.eval_with(&mut |p| sign_rat(&p.eval(point)))
    }

    /// Truth at an exact sample point covering every variable that occurs.
    pub fn eval_at(&self, point: &SamplePoint) -> bool {
        self.eval_with(&mut |p| point.sign_at(p))
    }

    fn eval_with(&self, sign: &mut dyn FnMut(&MultiPoly) -> i32) -> bool {
        match self {
            SystemFormula::True => true,
            SystemFormula::False => false,
            SystemFormula::Atom(a) => a.rel.holds(sign(&a.poly)),
            SystemFormula::And(c) => c.iter().all(|t| t.eval_with(sign)),
            SystemFormula::Or(c) => c.iter().any(|t| t.eval_with(sign)),
        }
    }

    /// Text in the problem-file expression syntax; compound children are
    /// always parenthesized so the text parses back to the same tree.
    pub fn render(&self, vars: &VarOrder) -> String {
        match self {
            SystemFormula::True => "true".into(),
            SystemFormula::False => "false".into(),
            SystemFormula::Atom(a) => format!("{} {} 0", a.poly.render(vars), a.rel.symbol()),
            SystemFormula::And(c) | SystemFormula::Or(c) => {
                let op = if matches!(self, SystemFormula::And(_)) { " and " } else { " or " };
                c.iter()
                    .map(|t| match t {
                        SystemFormula::And(_) | SystemFormula::Or(_) => format!("({})", t.render(vars)),
                        _ => t.render(vars),
                    })
                    .collect::<Vec<_>>()
                    .join(op)
            }
        }
    }
}

impl fmt::Display for SystemFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.atoms().first().map(|a| a.poly.nvars()).unwrap_or(0);
        write!(f, "{}", self.render(&VarOrder::numbered(n)))
    }
}

pub(crate) fn sign_of(c: &num_bigint::BigInt) -> i32 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn sign_rat(c: &BigRat) -> i32 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::cli::{parse_formula, parse_system};
    use crate::exact::{int, rat};
    use crate::realalg::RealNum;

    const EXAMPLE: &str = "vars x, y; 4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and 16*x^6 - 24*x^4 + 9*x^2 + 4*y^4 - 4*y^2 <= 0)";

    fn example() -> (VarOrder, SystemFormula, [MultiPoly; 3]) {
        let p = parse_system(EXAMPLE).unwrap();
        let atoms = p.formula.atoms();
        let fs = [atoms[0].poly.clone(), atoms[1].poly.clone(), atoms[2].poly.clone()];
        (p.vars, p.formula, fs)
    }

    #[test]
    fn example_normal_forms() {
        let (vars, s, _) = example();
        let cnf = to_cnf(&s, DEFAULT_ATOM_LIMIT).unwrap();
        let dnf = to_dnf(&s, DEFAULT_ATOM_LIMIT).unwrap();
        let f1 = "4*x^2 + y^2 - 4 < 0";
        let f2 = "x^2 + y^2 - 1 <= 0";
        let f3 = "16*x^6 - 24*x^4 + 9*x^2 + 4*y^4 - 4*y^2 <= 0";
        assert_eq!(cnf, parse_formula(&format!("({f1} or {f2}) and ({f1} or {f3})"), &vars).unwrap());
        assert_eq!(dnf, parse_formula(&format!("{f1} or ({f2} and {f3})"), &vars).unwrap());
        let a = parse_formula("x < 0", &vars).unwrap();
        assert_eq!(to_cnf(&a, 10).unwrap(), a);
        assert_eq!(to_dnf(&a, 10).unwrap(), a);
    }

    #[test]
    fn normal_form_constants_and_absorption() {
        let vars = VarOrder::new(&["x", "y"]).unwrap();
        let f = |t: &str| parse_formula(t, &vars).unwrap();
        assert_eq!(to_dnf(&f("x < 0 or (x < 0 and y > 0)"), 100).unwrap(), f("x < 0"));
        assert_eq!(to_cnf(&f("x < 0 and (x < 0 or y > 0)"), 100).unwrap(), f("x < 0"));
        assert_eq!(to_dnf(&f("x < 0 and false"), 100).unwrap(), SystemFormula::False);
        assert_eq!(to_cnf(&f("x < 0 or true"), 100).unwrap(), SystemFormula::True);
        assert_eq!(to_dnf(&f("true and (false or y > 0)"), 100).unwrap(), f("y > 0"));
        let big = f("(x < 0 or y < 0) and (x > 1 or y > 1) and (x > 2 or y > 2) and (x > 3 or y > 3)");
        assert!(matches!(to_dnf(&big, 20), Err(NormalFormError::TooLarge(20))));
        assert!(to_dnf(&big, 1000).is_ok());
    }

    fn set(ps: &[&MultiPoly]) -> BTreeSet<MultiPoly> {
        ps.iter().map(|p| (*p).clone()).collect()
    }

    #[test]
    fn example_partial_evaluations() {
        let (_, s, [f1, f2, f3]) = example();
        let cnf = to_cnf(&s, DEFAULT_ATOM_LIMIT).unwrap();
        let dnf = to_dnf(&s, DEFAULT_ATOM_LIMIT).unwrap();
        let at = |a: i64, b: i64| SamplePoint::from_rationals(&[int(a), int(b)]);
        assert_eq!(peval(&cnf, &at(0, 0)), PEvalResult::Decided(true, set(&[&f1, &f2, &f3])));
        assert_eq!(peval(&dnf, &at(0, 0)), PEvalResult::Decided(true, set(&[&f1])));
        assert_eq!(peval(&cnf, &at(0, -4)), PEvalResult::Decided(false, set(&[&f1, &f2])));
        assert_eq!(peval(&cnf, &at(0, -2)), PEvalResult::Decided(false, set(&[&f1, &f2])));
        assert_eq!(peval(&cnf, &at(-1, 0)), PEvalResult::Decided(false, set(&[&f1, &f3])));
        assert_eq!(peval(&cnf, &at(-1, -1)), PEvalResult::Decided(false, set(&[&f1, &f2])));
        assert_eq!(peval(&cnf, &at(-2, 0)), PEvalResult::Decided(false, set(&[&f1, &f2])));
        let x0 = SamplePoint::from_rationals(&[int(0)]);
        assert_eq!(peval(&cnf, &x0), PEvalResult::Undecided);
        assert_eq!(peval(&dnf, &x0), PEvalResult::Undecided);
        assert_eq!(peval(&SystemFormula::True, &x0), PEvalResult::Decided(true, BTreeSet::new()));
    }

    #[test]
    fn vanishing_factor_decides_early() {
        let vars = VarOrder::new(&["x", "y"]).unwrap();
        let s = parse_formula("(x - 1)*(y^2 + 1) > 0", &vars).unwrap();
        let x_minus_1 = parse_formula("x - 1 > 0", &vars).unwrap().atoms()[0].poly.clone();
        let r = peval(&s, &SamplePoint::from_rationals(&[int(1)]));
        assert_eq!(r, PEvalResult::Decided(false, set(&[&x_minus_1])));
        assert_eq!(peval(&s, &SamplePoint::from_rationals(&[int(2)])), PEvalResult::Undecided);
    }

    fn root(vars: &VarOrder, text: &str, index: usize) -> Bound {
        let p = parse_formula(&format!("{} = 0", text), vars).unwrap().atoms()[0].poly.clone();
        Bound::Root(RootFunction::new(p, index))
    }

    // The printed ball formula, with the constant term restored in the
    // defining polynomials.
    fn ball() -> (VarOrder, CylFormula) {
        let vars = VarOrder::new(&["x", "y", "z"]).unwrap();
        let num = |n: i64| Bound::Number(RealNum::from_int(n));
        let zero_z = |_: ()| CylFormula::Node { var: 2, branches: vec![(Constraint::Eq(root(&vars, "z", 1)), CylFormula::Const(true))] };
        let zero_yz = CylFormula::Node { var: 1, branches: vec![(Constraint::Eq(root(&vars, "y", 1)), zero_z(()))] };
        let r3 = root(&vars, "x^2 + y^2 + z^2 - 1", 1);
        let r4 = root(&vars, "x^2 + y^2 + z^2 - 1", 2);
        let b22 = CylFormula::Node {
            var: 2,
            branches: vec![
                (Constraint::Eq(r3.clone()), CylFormula::Const(true)),
                (Constraint::open(r3, r4.clone()), CylFormula::Const(true)),
                (Constraint::Eq(r4), CylFormula::Const(true)),
            ],
        };
        let r1 = root(&vars, "x^2 + y^2 - 1", 1);
        let r2 = root(&vars, "x^2 + y^2 - 1", 2);
        let b2 = CylFormula::Node {
            var: 1,
            branches: vec![
                (Constraint::Eq(r1.clone()), zero_z(())),
                (Constraint::open(r1, r2.clone()), b22),
                (Constraint::Eq(r2), zero_z(())),
            ],
        };
        let f = CylFormula::Node {
            var: 0,
            branches: vec![
                (Constraint::Eq(num(-1)), zero_yz.clone()),
                (Constraint::open(num(-1), num(1)), b2),
                (Constraint::Eq(root(&vars, "x - 1", 1)), zero_yz),
            ],
        };
        (vars, f)
    }

    #[test]
    fn ball_formula() {
        let (vars, f) = ball();
        assert_eq!(atomic_cells(&f), 7);
        assert_eq!(count_leaves(&f), 7);
        assert!(eval_caf(&f, &[int(0), int(0), int(0)]));
        assert!(!eval_caf(&f, &[int(2), int(0), int(0)]));
        assert!(eval_caf(&f, &[int(1), int(0), int(0)]));
        assert!(eval_caf(&f, &[rat(3, 5), rat(4, 5), int(0)]));
        assert!(!eval_caf(&f, &[rat(3, 5), rat(4, 5), rat(1, 100)]));
        assert!(eval_caf(&f, &[rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(!eval_caf(&f, &[rat(1, 2), rat(1, 2), rat(3, 4)]));
        let ball = parse_formula("x^2 + y^2 + z^2 - 1 <= 0", &vars).unwrap();
        for i in -6..=6 {
            for j in -6..=6 {
                for k in -6..=6 {
                    let p = [rat(i, 5), rat(j, 5), rat(k, 5)];
                    assert_eq!(eval_caf(&f, &p), ball.eval(&p), "{:?}", p);
                }
            }
        }
        let text = f.render(&vars);
        assert!(text.starts_with("x = -1 && y = 0 && z = 0 || -1 < x < 1 && ("), "{}", text);
        let j = f.to_json(&vars);
        assert_eq!(j["var"], "x");
        assert_eq!(j["cells"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn undefined_bounds() {
        let vars = VarOrder::new(&["x", "y"]).unwrap();
        let f = CylFormula::Node {
            var: 0,
            branches: vec![(
                Constraint::whole_line(),
                CylFormula::Node { var: 1, branches: vec![(Constraint::Eq(root(&vars, "x^2 + y^2 - 1", 2)), CylFormula::Const(true))] },
            )],
        };
        assert!(!eval_caf(&f, &[int(2), int(0)]));
        assert!(eval_caf_strict(&f, &[int(2), int(0)]).is_err());
        assert_eq!(eval_caf_strict(&f, &[int(0), int(1)]), Ok(true));
        assert_eq!(atomic_cells(&CylFormula::Const(false)), 0);
    }
}
