//! Cylindrical algebraic decomposition with per-cell local projections.
//!
//! For a point `ā` of length `k` the engine splits the `x_{k+1}` axis into
//! intervals, decides each one by partial evaluation or by recursion, and
//! bounds it by the nearest roots of a local projection. The polynomials whose
//! sign-invariance keeps the result valid near `ā` are returned alongside.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::formula::{count_leaves, atomic_cells, peval, to_cnf, to_dnf, Bound, Constraint, CylFormula, NormalFormError, PEvalResult, RootFunction, SystemFormula, DEFAULT_ATOM_LIMIT};
use crate::poly::{MultiPoly, VarOrder};
use crate::projection::{local_projection_with, LocalProjSeq, ProjectionOptions};
use crate::realalg::{simplest_between, RealNum, SamplePoint};

#[derive(Clone, Copy)]
pub struct LpcadOptions<'a> {
    /// Drop projection levels of leading single-point coordinates.
    pub skip_levels: bool,
    /// Use Hong's operator for every local projection.
    pub hong_only: bool,
    /// Maximum stack pops per call.
    pub max_steps: usize,
    /// Cap on atoms in the normal forms.
    pub atom_limit: usize,
    pub trace: Option<&'a dyn Fn(&TraceEvent)>,
}

impl Default for LpcadOptions<'_> {
    fn default() -> Self {
        LpcadOptions { skip_levels: true, hong_only: false, max_steps: 1_000_000, atom_limit: DEFAULT_ATOM_LIMIT, trace: None }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpcadError {
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error("step budget of {budget} exhausted at level {level}")]
    StepBudget { level: usize, budget: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// How one interval was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    Cnf,
    Dnf,
    Recurse,
}

/// One processed interval.
#[derive(Clone, Debug)]
pub struct TraceEvent {
    /// Length of the base point.
    pub k: usize,
    pub interval: String,
    pub sample: String,
    pub decision: Decision,
    pub witnesses: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LpcadStats {
    /// Cells of the decomposition: leaves after splitting weak bounds.
    pub cells: usize,
    /// Atomic formulas in the final (pruned) formula.
    pub atomic_cells: usize,
    /// Distinct factors seen per level over all local projections.
    pub level_sizes: Vec<usize>,
    pub decided_cnf: usize,
    pub decided_dnf: usize,
    pub undecided: usize,
    /// Stack pops over all calls.
    pub iterations: usize,
    pub calls: usize,
    pub max_depth: usize,
    /// Local projections that fell back to Hong's operator.
    pub restarts: usize,
    pub partition_checks: usize,
    pub time_ms: u128,
}

impl LpcadStats {
    pub fn well_oriented(&self) -> bool {
        self.restarts == 0
    }
}

/// `(F, V)`: a cylindrical subformula over `x_{k+1}, …` and, per level
/// `j <= k`, the polynomials that must keep their signs for `F` to stay valid.
#[derive(Clone, Debug)]
pub struct LpcadResult {
    pub formula: CylFormula,
    pub deps: Vec<BTreeSet<MultiPoly>>,
}

#[derive(Clone)]
struct End {
    value: Option<RealNum>,
    bound: Bound,
    weak: bool,
}

#[derive(Clone)]
struct Tuple {
    lo: End,
    hi: End,
}

struct Cell {
    sample: RealNum,
    constraint: Constraint,
    lo: Option<RealNum>,
    lo_closed: bool,
    hi: Option<RealNum>,
    hi_closed: bool,
    sub: CylFormula,
}

struct Engine<'a> {
    cnf: SystemFormula,
    dnf: SystemFormula,
    n: usize,
    opts: LpcadOptions<'a>,
    stats: LpcadStats,
    seen: Vec<FxHashSet<MultiPoly>>,
}

fn describe(t: &Tuple) -> String {
    let side = |e: &End, neg: bool| match &e.value {
        None => if neg { "-inf".to_string() } else { "inf".to_string() },
        Some(v) => v.to_string(),
    };
    format!(
        "{}{}, {}{}",
        if t.lo.weak { "[" } else { "(" },
        side(&t.lo, true),
        side(&t.hi, false),
        if t.hi.weak { "]" } else { ")" }
    )
}

fn same_value(a: &Option<RealNum>, b: &Option<RealNum>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x.compare(y) == Ordering::Equal,
        _ => false,
    }
}

// Ordering of interval ends where `None` is -inf on the lower side and +inf
// on the upper side.
fn cmp_lower(a: &Option<RealNum>, b: &Option<RealNum>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(x), Some(y)) => x.compare(y),
    }
}

fn cmp_upper(a: &Option<RealNum>, b: &Option<RealNum>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some(x), Some(y)) => x.compare(y),
    }
}

impl<'a> Engine<'a> {
    fn project(&mut self, ps: &BTreeSet<MultiPoly>, point: &SamplePoint) -> LocalProjSeq {
        let list: Vec<MultiPoly> = ps.iter().cloned().collect();
        let popts = ProjectionOptions { skip_levels: self.opts.skip_levels, hong_only: self.opts.hong_only, trace: None };
        let w = local_projection_with(&list, point, &popts);
        if w.restarted {
            self.stats.restarts += 1;
        }
        for (j, lv) in w.levels.iter().enumerate() {
            for p in lv {
                self.seen[j].insert(p.clone());
            }
        }
        w
    }

    fn run(&mut self, point: &SamplePoint) -> Result<LpcadResult, LpcadError> {
        let k = point.len();
        self.stats.calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(k + 1);
        let mut deps: Vec<BTreeSet<MultiPoly>> = vec![BTreeSet::new(); k];
        let mut bounds_used: BTreeSet<MultiPoly> = BTreeSet::new();
        let mut cells: Vec<Cell> = Vec::new();
        let mut stack = vec![Tuple {
            lo: End { value: None, bound: Bound::NegInf, weak: false },
            hi: End { value: None, bound: Bound::PosInf, weak: false },
        }];
        let mut steps = 0usize;
        while let Some(t) = stack.pop() {
            steps += 1;
            self.stats.iterations += 1;
            if steps > self.opts.max_steps {
                return Err(LpcadError::StepBudget { level: k + 1, budget: self.opts.max_steps });
            }
            let point_interval = same_value(&t.lo.value, &t.hi.value);
            let mut extra: BTreeSet<MultiPoly> = BTreeSet::new();
            let sample = if point_interval {
                let rf = t.lo.bound.root_function().ok_or_else(|| LpcadError::Internal("point interval without a root bound".into()))?;
                extra.insert(rf.defpoly.clone());
                t.lo.value.clone().expect("finite")
            } else {
                RealNum::Rat(simplest_between(t.lo.value.as_ref(), t.hi.value.as_ref()))
            };
            let next = point.push(sample.clone(), point_interval);

            let (sub, mut w_src, decision, wits) = match peval(&self.cnf, &next) {
                PEvalResult::Decided(false, p) => {
                    self.stats.decided_cnf += 1;
                    let n = p.len();
                    (CylFormula::Const(false), p, Decision::Cnf, n)
                }
                _ => match peval(&self.dnf, &next) {
                    PEvalResult::Decided(true, p) => {
                        self.stats.decided_dnf += 1;
                        let n = p.len();
                        (CylFormula::Const(true), p, Decision::Dnf, n)
                    }
                    _ => {
                        if k + 1 >= self.n {
                            return Err(LpcadError::Internal("undecided at a full sample point".into()));
                        }
                        self.stats.undecided += 1;
                        let r = self.run(&next)?;
                        let mut deps_in = r.deps;
                        let top = deps_in.pop().expect("one more level");
                        for (j, u) in deps_in.into_iter().enumerate() {
                            deps[j].extend(u);
                        }
                        let n = top.len();
                        (r.formula, top, Decision::Recurse, n)
                    }
                },
            };
            if let Some(tr) = self.opts.trace {
                tr(&TraceEvent { k, interval: describe(&t), sample: sample.to_string(), decision, witnesses: wits });
            }
            w_src.extend(extra);
            let w = self.project(&w_src, point);
            for j in 0..k {
                deps[j].extend(w.levels[j].iter().cloned());
            }

            if point_interval {
                cells.push(Cell {
                    sample: sample.clone(),
                    constraint: Constraint::Eq(t.lo.bound.clone()),
                    lo: t.lo.value.clone(),
                    lo_closed: true,
                    hi: t.hi.value.clone(),
                    hi_closed: true,
                    sub,
                });
                continue;
            }
            let a = sample.as_rat().expect("interior samples are rational").clone();

            // nearest roots of the level-(k+1) projection factors around the sample
            let mut hit: Option<(RealNum, Bound)> = None;
            let mut below: Option<(RealNum, Bound)> = None;
            let mut above: Option<(RealNum, Bound)> = None;
            for f in &w.levels[k] {
                let roots = match point.roots_at(f) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                for (i, r) in roots.iter().enumerate() {
                    let rb = || Bound::Root(RootFunction::new(f.clone(), i + 1));
                    match r.cmp_rat(&a) {
                        Ordering::Equal => {
                            if hit.is_none() {
                                hit = Some((r.clone(), rb()));
                            }
                        }
                        Ordering::Less => {
                            if below.as_ref().is_none_or(|(v, _)| r.compare(v) == Ordering::Greater) {
                                below = Some((r.clone(), rb()));
                            }
                        }
                        Ordering::Greater => {
                            if above.as_ref().is_none_or(|(v, _)| r.compare(v) == Ordering::Less) {
                                above = Some((r.clone(), rb()));
                            }
                            break;
                        }
                    }
                }
            }

            if let Some((v, s)) = hit {
                bounds_used.insert(s.root_function().expect("root").defpoly.clone());
                stack.push(Tuple { lo: End { value: Some(v.clone()), bound: s.clone(), weak: false }, hi: t.hi.clone() });
                stack.push(Tuple { lo: t.lo.clone(), hi: End { value: Some(v.clone()), bound: s.clone(), weak: false } });
                cells.push(Cell {
                    sample,
                    constraint: Constraint::Eq(s),
                    lo: Some(v.clone()),
                    lo_closed: true,
                    hi: Some(v),
                    hi_closed: true,
                    sub,
                });
                continue;
            }
            let (v1, s1) = match below {
                Some((v, s)) => (Some(v), s),
                None => (None, Bound::NegInf),
            };
            let (v2, s2) = match above {
                Some((v, s)) => (Some(v), s),
                None => (None, Bound::PosInf),
            };
            for s in [&s1, &s2] {
                if let Some(rf) = s.root_function() {
                    bounds_used.insert(rf.defpoly.clone());
                }
            }

            let (t2, weak2, hi_val) = if cmp_upper(&t.hi.value, &v2) == Ordering::Less {
                (t.hi.bound.clone(), t.hi.weak, t.hi.value.clone())
            } else {
                if cmp_upper(&t.hi.value, &v2) == Ordering::Greater || t.hi.weak {
                    stack.push(Tuple { lo: End { value: v2.clone(), bound: s2.clone(), weak: true }, hi: t.hi.clone() });
                }
                (s2, false, v2)
            };
            let (t1, weak1, lo_val) = if cmp_lower(&v1, &t.lo.value) == Ordering::Less {
                (t.lo.bound.clone(), t.lo.weak, t.lo.value.clone())
            } else {
                if cmp_lower(&v1, &t.lo.value) == Ordering::Greater || t.lo.weak {
                    stack.push(Tuple { lo: t.lo.clone(), hi: End { value: v1.clone(), bound: s1.clone(), weak: true } });
                }
                (s1, false, v1)
            };
            cells.push(Cell {
                sample,
                constraint: Constraint::Between { lower: t1, upper: t2, lower_strict: !weak1, upper_strict: !weak2 },
                lo: lo_val,
                lo_closed: weak1,
                hi: hi_val,
                hi_closed: weak2,
                sub,
            });
        }

        cells.sort_by(|x, y| x.sample.compare(&y.sample));
        check_partition(&cells)?;
        self.stats.partition_checks += 1;
        let formula = CylFormula::Node { var: k, branches: cells.into_iter().map(|c| (c.constraint, c.sub)).collect() };
        let w = self.project(&bounds_used, point);
        for j in 0..k {
            deps[j].extend(w.levels[j].iter().cloned());
        }
        Ok(LpcadResult { formula, deps })
    }
}

// The recorded intervals must tile the line: sorted, abutting, with each
// shared endpoint belonging to exactly one side.
fn check_partition(cells: &[Cell]) -> Result<(), LpcadError> {
    let fail = |m: &str| Err(LpcadError::Internal(format!("cells do not partition the line: {}", m)));
    if cells.is_empty() {
        return fail("no cells");
    }
    for w in cells.windows(2) {
        if w[0].sample.compare(&w[1].sample) != Ordering::Less {
            return fail("two cells share a sample");
        }
    }
    if cells[0].lo.is_some() || cells[cells.len() - 1].hi.is_some() {
        return fail("unbounded ends missing");
    }
    for w in cells.windows(2) {
        let (c, d) = (&w[0], &w[1]);
        match (&c.hi, &d.lo) {
            (Some(x), Some(y)) if x.compare(y) == Ordering::Equal => {}
            _ => return fail("gap or overlap between neighbors"),
        }
        if c.hi_closed == d.lo_closed {
            return fail("shared endpoint claimed by both or neither side");
        }
    }
    Ok(())
}

/// Runs the engine at `point`; normal forms are computed once here.
pub fn lpcad(s: &SystemFormula, nvars: usize, point: &SamplePoint, opts: &LpcadOptions) -> Result<LpcadResult, LpcadError> {
    lpcad_with_stats(s, nvars, point, opts).map(|(r, _)| r)
}

fn lpcad_with_stats(s: &SystemFormula, nvars: usize, point: &SamplePoint, opts: &LpcadOptions) -> Result<(LpcadResult, LpcadStats), LpcadError> {
    assert!(point.len() < nvars, "the base point must leave a variable free");
    let cnf = to_cnf(s, opts.atom_limit)?;
    let dnf = to_dnf(s, opts.atom_limit)?;
    let mut e = Engine { cnf, dnf, n: nvars, opts: *opts, stats: LpcadStats::default(), seen: vec![FxHashSet::default(); nvars] };
    let r = e.run(point)?;
    e.stats.level_sizes = e.seen.iter().map(|s| s.len()).collect();
    Ok((r, e.stats))
}

/// Replaces weak bounds by a section plus an open sector; with `prune`,
/// false branches are removed and empty nodes collapse to false.
pub fn normalize_caf_with(f: &CylFormula, prune: bool) -> CylFormula {
    match f {
        CylFormula::Const(b) => CylFormula::Const(*b),
        CylFormula::Node { var, branches } => {
            let mut out = Vec::new();
            for (c, sub) in branches {
                let sub = normalize_caf_with(sub, prune);
                if prune && sub.is_false() {
                    continue;
                }
                match c {
                    Constraint::Between { lower, upper, lower_strict, upper_strict } if !lower_strict || !upper_strict => {
                        if !lower_strict {
                            out.push((Constraint::Eq(lower.clone()), sub.clone()));
                        }
                        out.push((Constraint::open(lower.clone(), upper.clone()), sub.clone()));
                        if !upper_strict {
                            out.push((Constraint::Eq(upper.clone()), sub));
                        }
                    }
                    _ => out.push((c.clone(), sub)),
                }
            }
            if prune && out.is_empty() {
                CylFormula::Const(false)
            } else {
                CylFormula::Node { var: *var, branches: out }
            }
        }
    }
}

/// Strict/equational form with false branches pruned.
pub fn normalize_caf(f: &CylFormula) -> CylFormula {
    normalize_caf_with(f, true)
}

/// Solution of a full system: a cylindrical algebraic formula equivalent to `s`.
pub fn solve(s: &SystemFormula, vars: &VarOrder, opts: &LpcadOptions) -> Result<(CylFormula, LpcadStats), LpcadError> {
    let start = Instant::now();
    let (r, mut stats) = lpcad_with_stats(s, vars.len(), &SamplePoint::empty(), opts)?;
    stats.cells = count_leaves(&normalize_caf_with(&r.formula, false));
    let f = normalize_caf(&r.formula);
    stats.atomic_cells = atomic_cells(&f);
    stats.time_ms = start.elapsed().as_millis();
    Ok((f, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_formula;
    use crate::exact::{int, BigRat};
    use crate::formula::eval_caf;
    use std::cell::RefCell;

    fn xy() -> VarOrder {
        VarOrder::new(&["x", "y"]).unwrap()
    }

    fn poly(vars: &VarOrder, t: &str) -> MultiPoly {
        parse_formula(&format!("{} = 0", t), vars).unwrap().atoms()[0].poly.clone()
    }

    fn system(vars: &VarOrder) -> SystemFormula {
        parse_formula("4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and 16*x^6 - 24*x^4 + 9*x^2 + 4*y^4 - 4*y^2 <= 0)", vars).unwrap()
    }

    fn set(vars: &VarOrder, ts: &[&str]) -> BTreeSet<MultiPoly> {
        ts.iter().map(|t| poly(vars, t)).collect()
    }

    #[test]
    fn inner_call_at_zero() {
        let v = xy();
        let at = SamplePoint::from_rationals(&[int(0)]);
        let r = lpcad(&system(&v), 2, &at, &LpcadOptions::default()).unwrap();
        let f1 = poly(&v, "4*x^2 + y^2 - 4");
        let expect = CylFormula::Node {
            var: 1,
            branches: vec![(
                Constraint::open(Bound::Root(RootFunction::new(f1.clone(), 1)), Bound::Root(RootFunction::new(f1, 2))),
                CylFormula::Const(true),
            )],
        };
        assert_eq!(normalize_caf(&r.formula), expect);
        assert_eq!(r.deps, vec![set(&v, &["x - 1", "x + 1"])]);
    }

    #[test]
    fn inner_call_outside() {
        let v = xy();
        let at = SamplePoint::from_rationals(&[int(-2)]);
        let r = lpcad(&system(&v), 2, &at, &LpcadOptions::default()).unwrap();
        assert_eq!(normalize_caf(&r.formula), CylFormula::Const(false));
        assert_eq!(r.deps, vec![set(&v, &["x - 1", "x + 1"])]);
    }

    #[test]
    fn inner_call_on_section() {
        let v = xy();
        let at = SamplePoint::empty().push(RealNum::Rat(int(-1)), true);
        let r = lpcad(&system(&v), 2, &at, &LpcadOptions::default()).unwrap();
        assert_eq!(normalize_caf(&r.formula), CylFormula::Const(false));
        assert_eq!(r.deps, vec![BTreeSet::new()]);
    }

    #[test]
    fn whole_example() {
        let v = xy();
        let (f, st) = solve(&system(&v), &v, &LpcadOptions::default()).unwrap();
        assert_eq!(st.cells, 13);
        assert_eq!(st.atomic_cells, 1);
        assert_eq!(st.partition_checks, st.calls);
        assert!(st.well_oriented());
        let f1 = poly(&v, "4*x^2 + y^2 - 4");
        let inner = CylFormula::Node {
            var: 1,
            branches: vec![(
                Constraint::open(Bound::Root(RootFunction::new(f1.clone(), 1)), Bound::Root(RootFunction::new(f1, 2))),
                CylFormula::Const(true),
            )],
        };
        let expect = CylFormula::Node {
            var: 0,
            branches: vec![(
                Constraint::open(Bound::Root(RootFunction::new(poly(&v, "x + 1"), 1)), Bound::Root(RootFunction::new(poly(&v, "x - 1"), 1))),
                inner,
            )],
        };
        assert_eq!(f, expect);
        assert!(eval_caf(&f, &[int(0), BigRat::new(19.into(), 10.into())]));
    }

    #[test]
    fn trace_order() {
        let v = xy();
        let log = RefCell::new(Vec::new());
        let cb = |e: &TraceEvent| log.borrow_mut().push((e.k, e.sample.clone(), e.decision));
        let opts = LpcadOptions { trace: Some(&cb), ..Default::default() };
        solve(&system(&v), &v, &opts).unwrap();
        let log = log.into_inner();
        // the first inner sample is 0 at x = 0, then the lower half is explored
        assert_eq!(log[0], (1, "0".to_string(), Decision::Dnf));
        assert_eq!(log[1], (1, "-3".to_string(), Decision::Cnf));
        assert_eq!(log[2], (1, "-2".to_string(), Decision::Cnf));
        assert_eq!((log.last().unwrap().0, log.last().unwrap().2), (0, Decision::Recurse));
    }

    #[test]
    fn trivial_systems() {
        let v = VarOrder::new(&["x"]).unwrap();
        let (f, st) = solve(&parse_formula("x^2 + 1 > 0", &v).unwrap(), &v, &LpcadOptions::default()).unwrap();
        assert_eq!(st.atomic_cells, 1);
        assert!(eval_caf(&f, &[int(5)]));
        let (f, st) = solve(&parse_formula("x^2 < 0", &v).unwrap(), &v, &LpcadOptions::default()).unwrap();
        assert_eq!(f, CylFormula::Const(false));
        assert_eq!(st.atomic_cells, 0);
    }

    #[test]
    fn weak_bounds_split() {
        let v = xy();
        let r1 = Bound::Root(RootFunction::new(poly(&v, "x"), 1));
        let r2 = Bound::Root(RootFunction::new(poly(&v, "x - 1"), 1));
        let f = CylFormula::Node {
            var: 0,
            branches: vec![(Constraint::Between { lower: r1.clone(), upper: r2.clone(), lower_strict: false, upper_strict: true }, CylFormula::Const(true))],
        };
        let expect = CylFormula::Node {
            var: 0,
            branches: vec![(Constraint::Eq(r1.clone()), CylFormula::Const(true)), (Constraint::open(r1, r2), CylFormula::Const(true))],
        };
        assert_eq!(normalize_caf(&f), expect);
        let all_false = CylFormula::Node { var: 0, branches: vec![(Constraint::whole_line(), CylFormula::Const(false))] };
        assert_eq!(normalize_caf(&all_false), CylFormula::Const(false));
    }
}
