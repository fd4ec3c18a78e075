use std::collections::BTreeSet;

use super::SystemFormula;
use crate::poly::{factors_of, MultiPoly};
use crate::realalg::SamplePoint;

/// Outcome of partial evaluation: the truth value is fixed on every point
/// where the witness polynomials keep their signs at the sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PEvalResult {
    Undecided,
    Decided(bool, BTreeSet<MultiPoly>),
}

impl PEvalResult {
    pub fn is_decided(&self) -> bool {
        matches!(self, PEvalResult::Decided(..))
    }

    pub fn value(&self) -> Option<bool> {
        match self {
            PEvalResult::Decided(v, _) => Some(*v),
            PEvalResult::Undecided => None,
        }
    }

    pub fn witnesses(&self) -> Option<&BTreeSet<MultiPoly>> {
        match self {
            PEvalResult::Decided(_, p) => Some(p),
            PEvalResult::Undecided => None,
        }
    }
}

/// Evaluates `s` at a point giving values to the first `point.len()` variables.
///
/// A false conjunction reports the witnesses of its first false child. A true
/// disjunction reports the union of the smallest witness sets among its true
/// children, which reproduces both the single-child and the all-children
/// witness sets seen in practice.
pub fn peval(s: &SystemFormula, point: &SamplePoint) -> PEvalResult {
    let k = point.len();
    match s {
        SystemFormula::True => PEvalResult::Decided(true, BTreeSet::new()),
        SystemFormula::False => PEvalResult::Decided(false, BTreeSet::new()),
        SystemFormula::Atom(a) => {
            let f = &a.poly;
            if f.level() <= k {
                let sg = point.sign_at(f);
                if sg == 0 {
                    let g = factors_of(f).into_iter().find(|g| point.vanishes(g)).expect("a vanishing product has a vanishing factor");
                    return PEvalResult::Decided(a.rel.holds(0), BTreeSet::from([g]));
                }
                return PEvalResult::Decided(a.rel.holds(sg), BTreeSet::from([f.clone()]));
            }
            for g in factors_of(f) {
                if g.level() <= k && point.vanishes(&g) {
                    return PEvalResult::Decided(a.rel.holds(0), BTreeSet::from([g]));
                }
            }
            PEvalResult::Undecided
        }
        SystemFormula::And(children) => {
            let mut all = BTreeSet::new();
            let mut undecided = false;
            for t in children {
                match peval(t, point) {
                    PEvalResult::Decided(false, p) => return PEvalResult::Decided(false, p),
                    PEvalResult::Decided(true, p) => all.extend(p),
                    PEvalResult::Undecided => undecided = true,
                }
            }
            if undecided {
                PEvalResult::Undecided
            } else {
                PEvalResult::Decided(true, all)
            }
        }
        SystemFormula::Or(children) => {
            let mut falses = BTreeSet::new();
            let mut trues: Vec<BTreeSet<MultiPoly>> = Vec::new();
            let mut undecided = false;
            for t in children {
                match peval(t, point) {
                    PEvalResult::Decided(true, p) => trues.push(p),
                    PEvalResult::Decided(false, p) => falses.extend(p),
                    PEvalResult::Undecided => undecided = true,
                }
            }
            if let Some(min) = trues.iter().map(|p| p.len()).min() {
                let mut out = BTreeSet::new();
                for p in trues.into_iter().filter(|p| p.len() == min) {
                    out.extend(p);
                }
                return PEvalResult::Decided(true, out);
            }
            if undecided {
                PEvalResult::Undecided
            } else {
                PEvalResult::Decided(false, falses)
            }
        }
    }
}
