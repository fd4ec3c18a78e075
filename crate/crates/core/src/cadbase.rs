//! Classical CAD: one global projection, then lifting over every cell.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{atomic_cells, Bound, Constraint, CylFormula, RootFunction, SystemFormula};
use crate::lpcad::normalize_caf;
use crate::poly::{discriminant, factor_basis, psc_sequence, resultant, MultiPoly, VarOrder};
use crate::projection::ProjKind;
use crate::realalg::{simplest_between, RealNum, SamplePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CadError {
    #[error("cell budget of {0} exhausted")]
    CellBudget(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct CadOptions {
    pub kind: ProjKind,
    /// Abort after this many cells.
    pub max_cells: usize,
}

impl Default for CadOptions {
    fn default() -> Self {
        CadOptions { kind: ProjKind::McCallum, max_cells: 5_000_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CadStats {
    /// Full-dimensional and lower-dimensional cells of `R^n`.
    pub cells: usize,
    pub atomic_cells: usize,
    /// Projection factors per level.
    pub level_sizes: Vec<usize>,
    /// Whether McCallum's operator was valid; false means the run restarted with Hong's.
    pub well_oriented: bool,
    pub time_ms: u128,
}

// Reducta of `p` in `v`: p, p minus its leading term, and so on while nonconstant.
fn reducta(p: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let mut cs = p.coeff_vec(v);
    while cs.len() > 1 {
        let r = MultiPoly::from_coeff_vec(p.nvars(), v, &cs);
        out.push(r);
        cs.pop();
        while cs.len() > 1 && cs.last().is_some_and(|c| c.is_zero()) {
            cs.pop();
        }
    }
    out
}

fn projection_step(ps: &[MultiPoly], v: usize, kind: ProjKind) -> Vec<MultiPoly> {
    let mut q = Vec::new();
    match kind {
        ProjKind::McCallum => {
            for (i, p) in ps.iter().enumerate() {
                q.extend(p.coeff_vec(v).into_iter().rev().take(1));
                if p.degree_in(v) >= 2 {
                    q.push(discriminant(p, v).expect("degree checked"));
                }
                for r in &ps[i + 1..] {
                    q.push(resultant(p, r, v).expect("positive degrees"));
                }
            }
        }
        ProjKind::Hong => {
            for (i, p) in ps.iter().enumerate() {
                let reds = reducta(p, v);
                for r in &reds {
                    q.push(r.lc_in(v));
                    if r.degree_in(v) >= 2 {
                        q.extend(psc_sequence(r, &r.derivative(v), v).expect("positive degrees").iter().cloned());
                    }
                    for other in &ps[i + 1..] {
                        q.extend(psc_sequence(r, other, v).expect("positive degrees").iter().cloned());
                    }
                }
            }
        }
    }
    q
}

/// Projection factor sets per level, `levels[k - 1]` holding level `k`.
pub fn global_projection(ps: &[MultiPoly], n: usize, kind: ProjKind) -> Vec<Vec<MultiPoly>> {
    let mut levels = vec![Vec::new(); n];
    let mut pool: Vec<MultiPoly> = ps.to_vec();
    for k in (1..=n).rev() {
        let (top, rest) = factor_basis(pool.iter()).level_split(k);
        pool = rest;
        if k > 1 {
            pool.extend(projection_step(&top, k - 1, kind));
        }
        levels[k - 1] = top;
    }
    levels
}

struct Lifter<'a> {
    system: &'a SystemFormula,
    levels: Vec<Vec<MultiPoly>>,
    check_orientation: bool,
    well_oriented: bool,
    cells: usize,
    max_cells: usize,
}

impl Lifter<'_> {
    fn lift(&mut self, point: &SamplePoint) -> Result<CylFormula, CadError> {
        let k = point.len();
        if k == self.levels.len() {
            self.cells += 1;
            if self.cells > self.max_cells {
                return Err(CadError::CellBudget(self.max_cells));
            }
            return Ok(CylFormula::Const(self.system.eval_at(point)));
        }
        let positive_dim = point.section_flags().iter().any(|s| !s);
        // distinct roots, each with the first factor that has it
        let mut roots: Vec<(RealNum, RootFunction)> = Vec::new();
        for f in &self.levels[k] {
            let rs = match point.roots_at(f) {
                Ok(r) => r,
                Err(_) => {
                    if self.check_orientation && k + 1 >= 3 && positive_dim {
                        self.well_oriented = false;
                    }
                    continue;
                }
            };
            for (i, r) in rs.iter().enumerate() {
                let pos = roots.binary_search_by(|(x, _)| x.compare(r));
                if let Err(at) = pos {
                    roots.insert(at, (r.clone(), RootFunction::new(f.clone(), i + 1)));
                }
            }
            if !self.well_oriented {
                return Ok(CylFormula::Const(false));
            }
        }
        let mut branches = Vec::with_capacity(2 * roots.len() + 1);
        let mut lower: (Option<RealNum>, Bound) = (None, Bound::NegInf);
        for (value, rf) in roots.iter().map(|(v, r)| (Some(v.clone()), Bound::Root(r.clone()))).chain(std::iter::once((None, Bound::PosInf))) {
            let s = simplest_between(lower.0.as_ref(), value.as_ref());
            let sub = self.lift(&point.push(RealNum::Rat(s), false))?;
            branches.push((Constraint::open(lower.1.clone(), rf.clone()), sub));
            if let Some(v) = &value {
                let sub = self.lift(&point.push(v.clone(), true))?;
                branches.push((Constraint::Eq(rf.clone()), sub));
            }
            if !self.well_oriented {
                return Ok(CylFormula::Const(false));
            }
            lower = (value, rf);
        }
        debug_assert!(branches.windows(2).all(|w| w[0].0 != w[1].0));
        Ok(CylFormula::Node { var: k, branches })
    }
}

/// Full CAD of the polynomials of `s` and the truth of `s` on every cell.
/// The returned formula is normalized; `stats.cells` counts all cells.
pub fn cad_solve(s: &SystemFormula, vars: &VarOrder, opts: &CadOptions) -> Result<(CylFormula, CadStats), CadError> {
    let start = Instant::now();
    let n = vars.len();
    let polys = s.polys();
    let mut kind = opts.kind;
    loop {
        let levels = global_projection(&polys, n, kind);
        let mut lifter = Lifter {
            system: s,
            levels: levels.clone(),
            check_orientation: kind == ProjKind::McCallum,
            well_oriented: true,
            cells: 0,
            max_cells: opts.max_cells,
        };
        let raw = lifter.lift(&SamplePoint::empty())?;
        if !lifter.well_oriented {
            kind = ProjKind::Hong;
            continue;
        }
        let f = normalize_caf(&raw);
        let stats = CadStats {
            cells: lifter.cells,
            atomic_cells: atomic_cells(&f),
            level_sizes: levels.iter().map(|l| l.len()).collect(),
            well_oriented: kind == opts.kind,
            time_ms: start.elapsed().as_millis(),
        };
        return Ok((f, stats));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_formula;
    use crate::exact::int;
    use crate::formula::eval_caf;

    #[test]
    fn example_baseline() {
        let v = VarOrder::new(&["x", "y"]).unwrap();
        let s = parse_formula("4*x^2 + y^2 - 4 < 0 or (x^2 + y^2 - 1 <= 0 and 16*x^6 - 24*x^4 + 9*x^2 + 4*y^4 - 4*y^2 <= 0)", &v).unwrap();
        let (f, st) = cad_solve(&s, &v, &CadOptions::default()).unwrap();
        assert_eq!(st.cells, 357);
        assert!(st.well_oriented);
        assert!(eval_caf(&f, &[int(0), int(1)]));
        assert!(!eval_caf(&f, &[int(1), int(0)]));
    }

    #[test]
    fn reducta_of_quadratic() {
        let v = VarOrder::new(&["a", "x"]).unwrap();
        let p = parse_formula("a*x^2 + x + a = 0", &v).unwrap().atoms()[0].poly.clone();
        let r = reducta(&p, 1);
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].degree_in(1), 1);
    }

    #[test]
    fn single_line() {
        let v = VarOrder::new(&["x"]).unwrap();
        let s = parse_formula("x^2 - 2 < 0", &v).unwrap();
        let (_, st) = cad_solve(&s, &v, &CadOptions::default()).unwrap();
        assert_eq!(st.cells, 5);
        assert_eq!(st.atomic_cells, 1);
    }
}
