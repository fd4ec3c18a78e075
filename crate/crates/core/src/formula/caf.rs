use std::cmp::Ordering;

use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::BigRat;
use crate::poly::{MultiPoly, VarOrder};
use crate::realalg::{RealNum, SamplePoint};

/// `Root_{y,index} defpoly`: the `index`-th real root of `defpoly(ā, y)` as a
/// function of `ā`, where `y` is the main variable of `defpoly`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootFunction {
    pub defpoly: MultiPoly,
    pub index: usize,
}

impl RootFunction {
    pub fn new(defpoly: MultiPoly, index: usize) -> Self {
        assert!(index >= 1, "root numbers start at 1");
        RootFunction { defpoly, index }
    }

    /// Value at a point giving values to all variables below the main one.
    pub fn value_at(&self, base: &SamplePoint) -> Result<RealNum, CafError> {
        let roots = base.roots_at(&self.defpoly).map_err(|_| CafError::UndefinedBound(self.index, 0))?;
        roots.get(self.index - 1).cloned().ok_or(CafError::UndefinedBound(self.index, roots.len()))
    }

    /// The value when it does not depend on the base point: `c1*y + c0` with
    /// constant coefficients.
    pub fn constant_value(&self) -> Option<BigRat> {
        let v = self.defpoly.level().checked_sub(1)?;
        let cs = self.defpoly.coeff_vec(v);
        if cs.len() != 2 || self.index != 1 {
            return None;
        }
        let c0 = cs[0].constant_value()?;
        let c1 = cs[1].constant_value()?;
        Some(-BigRat::new(c0, c1))
    }

    pub fn render(&self, vars: &VarOrder) -> String {
        let v = self.defpoly.level().max(1) - 1;
        format!("Root[{}, {}, {}]", self.defpoly.render(vars), self.index, vars.name(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    /// A fixed number; only meaningful for the first variable.
    Number(RealNum),
    Root(RootFunction),
}

impl Bound {
    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Number(_) | Bound::Root(_))
    }

    pub fn root_function(&self) -> Option<&RootFunction> {
        match self {
            Bound::Root(r) => Some(r),
            _ => None,
        }
    }

    // Finite value at the base point; `None` for the infinities.
    fn value_at(&self, base: &SamplePoint) -> Result<Option<RealNum>, CafError> {
        match self {
            Bound::NegInf | Bound::PosInf => Ok(None),
            Bound::Number(x) => Ok(Some(x.clone())),
            Bound::Root(r) => r.value_at(base).map(Some),
        }
    }

    pub fn render(&self, vars: &VarOrder) -> String {
        match self {
            Bound::NegInf => "-inf".into(),
            Bound::PosInf => "inf".into(),
            Bound::Number(x) => x.to_string(),
            Bound::Root(r) => match r.constant_value() {
                Some(v) => v.to_string(),
                None => r.render(vars),
            },
        }
    }

    fn to_json(&self, vars: &VarOrder) -> Value {
        match self {
            Bound::NegInf => json!("-inf"),
            Bound::PosInf => json!("inf"),
            Bound::Number(x) => json!({ "value": x.to_string(), "approx": x.to_decimal(12) }),
            Bound::Root(r) => json!({ "poly": r.defpoly.render(vars), "index": r.index }),
        }
    }
}

/// An algebraic constraint on one variable over a cell of the preceding ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Eq(Bound),
    Between { lower: Bound, upper: Bound, lower_strict: bool, upper_strict: bool },
}

impl Constraint {
    pub fn open(lower: Bound, upper: Bound) -> Self {
        Constraint::Between { lower, upper, lower_strict: true, upper_strict: true }
    }

    pub fn whole_line() -> Self {
        Self::open(Bound::NegInf, Bound::PosInf)
    }

    pub fn is_section(&self) -> bool {
        matches!(self, Constraint::Eq(_))
    }

    /// Whether `(base, x)` satisfies the constraint.
    pub fn holds_at(&self, base: &SamplePoint, x: &RealNum) -> Result<bool, CafError> {
        match self {
            Constraint::Eq(b) => Ok(match b.value_at(base)? {
                Some(v) => v.compare(x) == Ordering::Equal,
                None => false,
            }),
            Constraint::Between { lower, upper, lower_strict, upper_strict } => {
                if let Some(lo) = lower.value_at(base)? {
                    match lo.compare(x) {
                        Ordering::Greater => return Ok(false),
                        Ordering::Equal if *lower_strict => return Ok(false),
                        _ => {}
                    }
                }
                if let Some(hi) = upper.value_at(base)? {
                    match x.compare(&hi) {
                        Ordering::Greater => return Ok(false),
                        Ordering::Equal if *upper_strict => return Ok(false),
                        _ => {}
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn render(&self, var: usize, vars: &VarOrder) -> String {
        let name = vars.name(var);
        match self {
            Constraint::Eq(b) => format!("{} = {}", name, b.render(vars)),
            Constraint::Between { lower, upper, lower_strict, upper_strict } => {
                let mut s = String::new();
                if lower.is_finite() {
                    s.push_str(&format!("{} {} ", lower.render(vars), if *lower_strict { "<" } else { "<=" }));
                }
                s.push_str(name);
                if upper.is_finite() {
                    s.push_str(&format!(" {} {}", if *upper_strict { "<" } else { "<=" }, upper.render(vars)));
                }
                if !lower.is_finite() && !upper.is_finite() {
                    s = format!("-inf < {} < inf", name);
                }
                s
            }
        }
    }

    fn to_json(&self, vars: &VarOrder) -> Value {
        match self {
            Constraint::Eq(b) => json!({ "kind": "eq", "bound": b.to_json(vars) }),
            Constraint::Between { lower, upper, lower_strict, upper_strict } => json!({
                "kind": "between",
                "lower": lower.to_json(vars),
                "upper": upper.to_json(vars),
                "lower_strict": lower_strict,
                "upper_strict": upper_strict,
            }),
        }
    }
}

/// A cylindrical subformula: a disjunction of `constraint ∧ subformula` over
/// one variable (0-based `var`), or a truth constant. A node without
/// branches is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CylFormula {
    Const(bool),
    Node { var: usize, branches: Vec<(Constraint, CylFormula)> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CafError {
    #[error("root number {0} is undefined where only {1} real roots exist")]
    UndefinedBound(usize, usize),
}

impl CylFormula {
    pub fn is_false(&self) -> bool {
        match self {
            CylFormula::Const(b) => !b,
            CylFormula::Node { branches, .. } => branches.is_empty(),
        }
    }

    pub fn is_true_const(&self) -> bool {
        matches!(self, CylFormula::Const(true))
    }

    fn eval_inner(&self, point: &[BigRat], strict: bool) -> Result<bool, CafError> {
        match self {
            CylFormula::Const(b) => Ok(*b),
            CylFormula::Node { var, branches } => {
                let base = SamplePoint::from_rationals(&point[..*var]);
                let x = RealNum::Rat(point[*var].clone());
                for (c, sub) in branches {
                    let holds = match c.holds_at(&base, &x) {
                        Ok(h) => h,
                        Err(e) if strict => return Err(e),
                        Err(_) => false,
                    };
                    if holds && sub.eval_inner(point, strict)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Single-line text with `Root[poly, index, var]` bounds.
    pub fn render(&self, vars: &VarOrder) -> String {
        match self {
            CylFormula::Const(b) => b.to_string(),
            CylFormula::Node { var, branches } => {
                if branches.is_empty() {
                    return "false".into();
                }
                let parts: Vec<String> = branches
                    .iter()
                    .map(|(c, sub)| {
                        let cs = c.render(*var, vars);
                        match sub {
                            CylFormula::Const(true) => cs,
                            CylFormula::Node { branches: b, .. } if b.len() == 1 => format!("{} && {}", cs, sub.render(vars)),
                            _ => format!("{} && ({})", cs, sub.render(vars)),
                        }
                    })
                    .collect();
                parts.join(" || ")
            }
        }
    }

    /// One line per constraint, indented by depth.
    pub fn render_tree(&self, vars: &VarOrder) -> String {
        let mut out = String::new();
        self.tree_lines(vars, 0, &mut out);
        out
    }

    fn tree_lines(&self, vars: &VarOrder, depth: usize, out: &mut String) {
        match self {
            CylFormula::Const(b) => {
                out.push_str(&format!("{}{}\n", "  ".repeat(depth), b));
            }
            CylFormula::Node { var, branches } => {
                if branches.is_empty() {
                    out.push_str(&format!("{}false\n", "  ".repeat(depth)));
                }
                for (c, sub) in branches {
                    match sub {
                        CylFormula::Const(b) => out.push_str(&format!("{}{}  : {}\n", "  ".repeat(depth), c.render(*var, vars), b)),
                        _ => {
                            out.push_str(&format!("{}{}\n", "  ".repeat(depth), c.render(*var, vars)));
                            sub.tree_lines(vars, depth + 1, out);
                        }
                    }
                }
            }
        }
    }

    /// Structured export of the cell tree.
    pub fn to_json(&self, vars: &VarOrder) -> Value {
        match self {
            CylFormula::Const(b) => json!(b),
            CylFormula::Node { var, branches } => json!({
                "var": vars.name(*var),
                "cells": branches
                    .iter()
                    .map(|(c, sub)| json!({ "constraint": c.to_json(vars), "sub": sub.to_json(vars) }))
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

/// Truth of `f` at a rational point; an undefined bound makes its constraint false.
pub fn eval_caf(f: &CylFormula, point: &[BigRat]) -> bool {
    f.eval_inner(point, false).expect("lenient evaluation does not fail")
}

/// As [`eval_caf`], but an undefined bound is an error.
pub fn eval_caf_strict(f: &CylFormula, point: &[BigRat]) -> Result<bool, CafError> {
    f.eval_inner(point, true)
}

/// Number of atomic formulas of the disjunctive normal form that hold at a
/// rational point; at most one for a well-formed formula.
pub fn satisfied_cells(f: &CylFormula, point: &[BigRat]) -> usize {
    match f {
        CylFormula::Const(b) => usize::from(*b),
        CylFormula::Node { var, branches } => {
            let base = SamplePoint::from_rationals(&point[..*var]);
            let x = RealNum::Rat(point[*var].clone());
            branches
                .iter()
                .filter(|(c, _)| c.holds_at(&base, &x).unwrap_or(false))
                .map(|(_, sub)| satisfied_cells(sub, point))
                .sum()
        }
    }
}

/// Number of atomic formulas in the disjunctive normal form: paths ending in true.
pub fn atomic_cells(f: &CylFormula) -> usize {
    match f {
        CylFormula::Const(b) => usize::from(*b),
        CylFormula::Node { branches, .. } => branches.iter().map(|(_, s)| atomic_cells(s)).sum(),
    }
}

/// Number of cells in the decomposition: paths ending in either truth value.
pub fn count_leaves(f: &CylFormula) -> usize {
    match f {
        CylFormula::Const(_) => 1,
        CylFormula::Node { branches, .. } => branches.iter().map(|(_, s)| count_leaves(s)).sum(),
    }
}
