//! Local projection: for polynomials `P` and a point `a`, sets of factors per
//! level whose sign-invariance on a cell around `a` makes the next level up
//! delineable.

use thiserror::Error;

use crate::poly::{discriminant, factor_basis, resultant, truncated_psc, MultiPoly};
use crate::realalg::SamplePoint;

/// Which projection operator a step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ProjKind {
    McCallum,
    Hong,
}

/// `levels[k - 1]` holds the level-`k` factors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LocalProjSeq {
    pub levels: Vec<Vec<MultiPoly>>,
    /// Whether the McCallum-based pass was abandoned for Hong's operator.
    pub restarted: bool,
    /// Loop iterations used.
    pub iterations: usize,
}

impl LocalProjSeq {
    /// Factors of level `k` (1-based).
    pub fn level(&self, k: usize) -> &[MultiPoly] {
        &self.levels[k - 1]
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// One projection step, reported to the trace hook.
#[derive(Clone, Debug)]
pub struct ProjectionStep {
    /// Number of coordinates of the base point.
    pub k: usize,
    pub kind: Option<ProjKind>,
    /// Size of the level-`k + 1` factor set being projected.
    pub projected: usize,
    /// Size of the accumulated lower-level set after the step.
    pub accumulated: usize,
    pub well_oriented: bool,
}

#[derive(Clone, Copy, Default)]
pub struct ProjectionOptions<'a> {
    /// Leave out the levels that belong to leading single-point coordinates.
    pub skip_levels: bool,
    /// Use Hong's operator at every level.
    pub hong_only: bool,
    pub trace: Option<&'a dyn Fn(&ProjectionStep)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("cannot skip {0} levels: only {1} leading coordinates are single points")]
    TooManySkipped(usize, usize),
}

// R: the members with a real root over the point. A specialization that
// vanishes identically counts as having roots.
fn with_roots(ps: &[MultiPoly], point: &SamplePoint) -> Vec<bool> {
    ps.iter()
        .map(|p| match point.roots_at(p) {
            Ok(r) => !r.is_empty(),
            Err(_) => true,
        })
        .collect()
}

// Constants carry no sign information and are left out.
fn push_unique(q: &mut Vec<MultiPoly>, p: MultiPoly) {
    if !p.is_constant() && !q.contains(&p) {
        q.push(p);
    }
}

/// McCallum-based local projection of level-`k + 1` factors at a point of
/// length `k >= 1`.
pub fn lproj_mc(ps: &[MultiPoly], point: &SamplePoint) -> Vec<MultiPoly> {
    let k = point.len();
    assert!(k >= 1, "projection needs a nonempty base point");
    let in_r = with_roots(ps, point);
    let mut q = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        let coeffs = p.coeff_vec(k);
        let d = coeffs.len() - 1;
        push_unique(&mut q, coeffs[d].clone());
        if k > 1 {
            let zero: Vec<bool> = coeffs.iter().map(|c| point.vanishes(c)).collect();
            if zero.iter().all(|&z| z) {
                for c in coeffs[..d].iter().rev() {
                    push_unique(&mut q, c.clone());
                }
                continue;
            }
            let has_const = coeffs[..d].iter().any(|c| c.is_constant() && !c.is_zero());
            if zero[d] && !has_const {
                // any nonvanishing coefficient will do; take the simplest
                let pick = (0..d).filter(|&l| !zero[l]).min_by(|&a, &b| {
                    coeffs[a].total_degree().cmp(&coeffs[b].total_degree()).then_with(|| coeffs[a].cmp(&coeffs[b]))
                });
                if let Some(l) = pick {
                    push_unique(&mut q, coeffs[l].clone());
                }
            }
        }
        if d >= 2 {
            push_unique(&mut q, discriminant(p, k).expect("degree checked"));
        }
        if in_r[i] && d >= 1 {
            for (j, pj) in ps.iter().enumerate().skip(i + 1) {
                if in_r[j] && pj.degree_in(k) >= 1 {
                    push_unique(&mut q, resultant(p, pj, k).expect("positive degrees"));
                }
            }
        }
    }
    q
}

/// Hong-based local projection with point-truncated reducta and
/// subresultant sets.
pub fn lproj_h(ps: &[MultiPoly], point: &SamplePoint) -> Vec<MultiPoly> {
    let k = point.len();
    assert!(k >= 1, "projection needs a nonempty base point");
    let in_r = with_roots(ps, point);
    let nonzero = |p: &MultiPoly| !point.vanishes(p);
    let mut q = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        let coeffs = p.coeff_vec(k);
        let d = coeffs.len() - 1;
        push_unique(&mut q, coeffs[d].clone());
        let zero: Vec<bool> = coeffs.iter().map(|c| point.vanishes(c)).collect();
        if zero.iter().all(|&z| z) {
            for c in coeffs[..d].iter().rev() {
                push_unique(&mut q, c.clone());
            }
            continue;
        }
        let mut red = p.clone();
        if zero[d] {
            let l = (0..d).rev().find(|&l| !zero[l]).expect("some coefficient is nonzero");
            for c in coeffs[l..d].iter().rev() {
                push_unique(&mut q, c.clone());
            }
            red = MultiPoly::from_coeff_vec(p.nvars(), k, &coeffs[..=l]);
        }
        let dr = red.degree_in(k);
        if dr >= 2 {
            let dred = red.derivative(k);
            for c in truncated_psc(&red, &dred, k, nonzero).expect("positive degrees") {
                push_unique(&mut q, c);
            }
        }
        if in_r[i] && dr >= 1 {
            for (j, pj) in ps.iter().enumerate().skip(i + 1) {
                if in_r[j] && pj.degree_in(k) >= 1 {
                    for c in truncated_psc(&red, pj, k, nonzero).expect("positive degrees") {
                        push_unique(&mut q, c);
                    }
                }
            }
        }
    }
    q
}

/// Local projection sequence for `ps` at a point of length `n - 1`, where
/// `n` is the number of levels returned.
pub fn local_projection(ps: &[MultiPoly], point: &SamplePoint) -> LocalProjSeq {
    local_projection_with(ps, point, &ProjectionOptions::default())
}

/// As [`local_projection`] with the first `skip` levels left empty. The
/// skipped coordinates must all be single points.
pub fn local_projection_skipping(ps: &[MultiPoly], point: &SamplePoint, skip: usize) -> Result<LocalProjSeq, ProjectionError> {
    let flagged = point.section_prefix();
    if skip > flagged {
        return Err(ProjectionError::TooManySkipped(skip, flagged));
    }
    Ok(project(ps, point, skip, &ProjectionOptions::default()))
}

pub fn local_projection_with(ps: &[MultiPoly], point: &SamplePoint, opts: &ProjectionOptions) -> LocalProjSeq {
    let skip = if opts.skip_levels { point.section_prefix() } else { 0 };
    project(ps, point, skip, opts)
}

fn project(ps: &[MultiPoly], point: &SamplePoint, skip: usize, opts: &ProjectionOptions) -> LocalProjSeq {
    let n = point.len() + 1;
    assert!(ps.iter().all(|p| p.level() <= n), "polynomial above the projection level");
    let mut levels: Vec<Vec<MultiPoly>> = vec![Vec::new(); n];
    let mut wo = true;
    let mut restarted = false;
    let mut q: Vec<MultiPoly> = ps.to_vec();
    let mut k = n - 1;
    let mut iterations = 0;
    let bound = (2 * n).saturating_sub(2);
    while k >= 1 {
        iterations += 1;
        assert!(iterations <= bound, "local projection exceeded {} iterations", bound);
        let base = point.prefix(k);
        let basis = factor_basis(q.iter());
        let (top, rest) = basis.level_split(k + 1);
        q = rest;
        if wo && !opts.hong_only && 1 < k && k < n - 1 && top.iter().any(|p| base.vanishes_identically(p)) {
            wo = false;
            restarted = true;
            q = ps.to_vec();
            k = n - 1;
            continue;
        }
        let projected = top.len();
        levels[k] = top;
        if k <= skip {
            break;
        }
        let kind = if opts.hong_only || (!wo && k > 2) { ProjKind::Hong } else { ProjKind::McCallum };
        let extra = match kind {
            ProjKind::McCallum => lproj_mc(&levels[k], &base),
            ProjKind::Hong => lproj_h(&levels[k], &base),
        };
        for p in extra {
            push_unique(&mut q, p);
        }
        if let Some(t) = opts.trace {
            t(&ProjectionStep { k, kind: Some(kind), projected, accumulated: q.len(), well_oriented: wo });
        }
        k -= 1;
    }
    if skip == 0 {
        let (bottom, _) = factor_basis(q.iter()).level_split(1);
        levels[0] = bottom;
    }
    LocalProjSeq { levels, restarted, iterations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_formula;
    use crate::exact::int;
    use crate::poly::VarOrder;
    use crate::realalg::RealNum;

    fn polys(vars: &VarOrder, texts: &[&str]) -> Vec<MultiPoly> {
        texts.iter().map(|t| parse_formula(&format!("{} = 0", t), vars).unwrap().atoms()[0].poly.clone()).collect()
    }

    fn xy() -> VarOrder {
        VarOrder::new(&["x", "y"]).unwrap()
    }

    const F1: &str = "4*x^2 + y^2 - 4";
    const F2: &str = "x^2 + y^2 - 1";
    const F3: &str = "16*x^6 - 24*x^4 + 9*x^2 + 4*y^4 - 4*y^2";

    fn sorted(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
        v.sort();
        v
    }

    #[test]
    fn mccallum_steps() {
        let v = xy();
        let f = polys(&v, &[F2, F1]);
        let at0 = SamplePoint::from_rationals(&[int(0)]);
        let got = sorted(lproj_mc(&f, &at0));
        assert_eq!(got, sorted(polys(&v, &["4*x^2 - 4", "16*x^2 - 16", "9*(x^2 - 1)^2"])));
        let atm2 = SamplePoint::from_rationals(&[int(-2)]);
        assert_eq!(sorted(lproj_mc(&f, &atm2)), sorted(polys(&v, &["4*x^2 - 4", "16*x^2 - 16"])));
        let g = polys(&v, &["x*y - 1"]);
        assert_eq!(lproj_mc(&g, &at0), polys(&v, &["x"]));
    }

    #[test]
    fn hong_steps() {
        let v = xy();
        let at0 = SamplePoint::from_rationals(&[int(0)]);
        assert_eq!(lproj_h(&polys(&v, &["x*y^2 + 1"]), &at0), polys(&v, &["x"]));
        let at1 = SamplePoint::from_rationals(&[int(1)]);
        assert_eq!(lproj_h(&polys(&v, &["y^2 + x"]), &at1), polys(&v, &["4*x"]));
        assert!(lproj_h(&polys(&v, &["y"]), &at1).is_empty());
    }

    #[test]
    fn example_local_projections() {
        let v = xy();
        let lin = polys(&v, &["x + 1", "x - 1"]);
        let w = local_projection(&polys(&v, &[F1]), &SamplePoint::from_rationals(&[int(0)]));
        assert_eq!(w.levels, vec![sorted(lin.clone()), polys(&v, &[F1])]);
        let w = local_projection(&polys(&v, &[F1, F2]), &SamplePoint::from_rationals(&[int(0)]));
        assert_eq!(w.levels, vec![sorted(lin.clone()), sorted(polys(&v, &[F1, F2]))]);
        let w = local_projection(&polys(&v, &[F1, F2]), &SamplePoint::from_rationals(&[int(-2)]));
        assert_eq!(w.levels, vec![sorted(lin.clone()), sorted(polys(&v, &[F1, F2]))]);
        let w = local_projection(&lin, &SamplePoint::empty());
        assert_eq!(w.levels, vec![sorted(lin.clone())]);
        assert_eq!(w.iterations, 0);
        // x = -1 came from a single-point interval
        let sec = SamplePoint::empty().push(RealNum::from_int(-1), true);
        let w = local_projection_skipping(&polys(&v, &[F1, F3]), &sec, 1).unwrap();
        assert_eq!(w.levels, vec![vec![], sorted(polys(&v, &[F1, F3]))]);
        let w = local_projection_skipping(&polys(&v, &[F1]), &sec, 1).unwrap();
        assert_eq!(w.levels, vec![vec![], polys(&v, &[F1])]);
        assert_eq!(local_projection_skipping(&polys(&v, &[F1]), &sec, 0).unwrap().levels[0], sorted(lin.clone()));
        let opts = ProjectionOptions { skip_levels: true, ..Default::default() };
        assert_eq!(local_projection_with(&polys(&v, &[F1]), &sec, &opts).levels[0], vec![]);
        let plain = SamplePoint::from_rationals(&[int(-1)]);
        assert!(local_projection_skipping(&polys(&v, &[F1]), &plain, 1).is_err());
    }

    #[test]
    fn restart_when_not_well_oriented() {
        let v = VarOrder::new(&["a", "b", "c", "d"]).unwrap();
        let ps = polys(&v, &["d", "b*c - a"]);
        let pt = SamplePoint::from_rationals(&[int(0), int(0), int(5)]);
        let w = local_projection(&ps, &pt);
        assert!(w.restarted);
        assert!(w.iterations <= 6);
        // every coefficient of b*c - a vanishes at (0, 0), so -a joins the projection
        assert_eq!(w.levels, vec![polys(&v, &["a"]), polys(&v, &["b"]), polys(&v, &["b*c - a"]), polys(&v, &["d"])]);
        let pt = SamplePoint::from_rationals(&[int(1), int(0), int(5)]);
        assert!(!local_projection(&ps, &pt).restarted);
    }
}
