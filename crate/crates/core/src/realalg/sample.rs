use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use parking_lot::Mutex;
use rustc_hash::FxHashMap;

use super::field::{KPoly, NumberField};
use super::number::{real_roots, RealNum};
use super::RealAlgError;
use crate::exact::BigRat;
use crate::poly::{resultant, MultiPoly, QPoly, ZPoly};

// Everything known about one prefix (a_1, …, a_k) of a sample point.
struct Level {
    field: NumberField,
    // images of a_1..a_k in the field
    images: Vec<QPoly>,
    rational: Option<Vec<BigRat>>,
    signs: Mutex<FxHashMap<MultiPoly, i32>>,
    roots: Mutex<FxHashMap<MultiPoly, Arc<Vec<RealNum>>>>,
}

impl Level {
    fn new(field: NumberField, images: Vec<QPoly>, rational: Option<Vec<BigRat>>) -> Self {
        Level { field, images, rational, signs: Mutex::new(FxHashMap::default()), roots: Mutex::new(FxHashMap::default()) }
    }
}

/// A point `(a_1, …, a_k)` with exact real algebraic coordinates. Each prefix
/// carries a number field containing its coordinates, so polynomial signs are
/// decided exactly. Cheap to clone; prefixes share state and caches.
#[derive(Clone)]
pub struct SamplePoint {
    coords: Vec<RealNum>,
    section: Vec<bool>,
    levels: Vec<Arc<Level>>,
}

impl Default for SamplePoint {
    fn default() -> Self {
        Self::empty()
    }
}

impl SamplePoint {
    /// The only point of `R^0`.
    pub fn empty() -> Self {
        SamplePoint {
            coords: Vec::new(),
            section: Vec::new(),
            levels: vec![Arc::new(Level::new(NumberField::rationals(), Vec::new(), Some(Vec::new())))],
        }
    }

    pub fn from_rationals(xs: &[BigRat]) -> Self {
        let mut p = Self::empty();
        for x in xs {
            p = p.push(RealNum::Rat(x.clone()), false);
        }
        p
    }

    pub fn from_nums(xs: &[RealNum]) -> Self {
        let mut p = Self::empty();
        for x in xs {
            p = p.push(x.clone(), false);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[RealNum] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &RealNum {
        &self.coords[i]
    }

    pub fn section_flags(&self) -> &[bool] {
        &self.section
    }

    /// Length of the leading run of coordinates that came from single-point intervals.
    pub fn section_prefix(&self) -> usize {
        self.section.iter().take_while(|&&s| s).count()
    }

    /// All coordinates as rationals, if they are.
    pub fn rational_coords(&self) -> Option<&[BigRat]> {
        self.levels.last().expect("level 0").rational.as_deref()
    }

    /// Degree of the number field generated by the coordinates.
    pub fn field_degree(&self) -> usize {
        self.levels.last().expect("level 0").field.degree()
    }

    pub fn prefix(&self, k: usize) -> SamplePoint {
        SamplePoint { coords: self.coords[..k].to_vec(), section: self.section[..k].to_vec(), levels: self.levels[..=k].to_vec() }
    }

    /// Appends a coordinate; `section` marks values taken from a single-point interval.
    pub fn push(&self, value: RealNum, section: bool) -> SamplePoint {
        let top = self.levels.last().expect("level 0");
        let level = match (&value, &top.rational) {
            (RealNum::Rat(x), rational) => {
                let mut images = top.images.clone();
                images.push(QPoly::constant(x.clone()));
                let rational = rational.as_ref().map(|r| {
                    let mut r = r.clone();
                    r.push(x.clone());
                    r
                });
                Level::new(top.field.clone(), images, rational)
            }
            (RealNum::Alg(_), _) => {
                let (field, theta, b) = top.field.extend(&value);
                let images: Vec<QPoly> = if top.field.is_rational() {
                    top.images.clone()
                } else {
                    top.images.iter().map(|p| field.compose(p, &theta)).collect()
                };
                let mut images = images;
                images.push(b);
                Level::new(field, images, None)
            }
        };
        let mut coords = self.coords.clone();
        coords.push(value);
        let mut flags = self.section.clone();
        flags.push(section);
        let mut levels = self.levels.clone();
        levels.push(Arc::new(level));
        SamplePoint { coords, section: flags, levels }
    }

    // Image of a polynomial in the field of the prefix of length `k`, with
    // variable `k` (0-based) left symbolic when `keep_next` is set.
    fn specialize(&self, p: &MultiPoly, k: usize) -> KPoly {
        let lv = &self.levels[k];
        let f = &lv.field;
        let dy = if k < p.nvars() { p.degree_in(k) as usize } else { 0 };
        let mut out: KPoly = vec![QPoly::zero(); dy + 1];
        // powers of each image, built on demand
        let mut pows: Vec<Vec<QPoly>> = lv.images.iter().map(|x| vec![QPoly::constant(BigRat::from_integer(BigInt::from(1))), x.clone()]).collect();
        for (e, c) in p.terms() {
            let mut t = QPoly::constant(BigRat::from_integer(c.clone()));
            for (i, &d) in e.iter().enumerate().take(k) {
                if d == 0 {
                    continue;
                }
                let pw = &mut pows[i];
                while pw.len() <= d as usize {
                    let next = f.mul(pw.last().expect("nonempty"), &pw[1]);
                    pw.push(next);
                }
                t = f.mul(&t, &pw[d as usize]);
            }
            let j = if k < e.len() { e[k] as usize } else { 0 };
            out[j] = out[j].add(&t);
        }
        f.ktrim(out)
    }

    /// Exact sign of `g` at the point; `g` may only involve the first `len()` variables.
    pub fn sign_at(&self, g: &MultiPoly) -> i32 {
        let k = g.level();
        assert!(k <= self.len(), "polynomial of level {} at a point of length {}", k, self.len());
        if let Some(c) = g.constant_value() {
            return sign_int(&c);
        }
        let lv = &self.levels[k];
        if let Some(s) = lv.signs.lock().get(g) {
            return *s;
        }
        let s = match &lv.rational {
            Some(xs) => sign_rat(&g.eval(xs)),
            None => {
                let v = self.specialize(g, k);
                match v.first() {
                    None => 0,
                    Some(x) => lv.field.sign(x),
                }
            }
        };
        lv.signs.lock().insert(g.clone(), s);
        s
    }

    pub fn vanishes(&self, g: &MultiPoly) -> bool {
        self.sign_at(g) == 0
    }

    /// Whether `f(a, y)` is the zero polynomial, for `f` of level `len() + 1`.
    pub fn vanishes_identically(&self, f: &MultiPoly) -> bool {
        let k = self.len();
        f.coeff_vec(k).iter().all(|c| self.vanishes(c))
    }

    /// Distinct real roots of `f(a, y)` in increasing order, where `y` is
    /// variable `len()` (0-based) and `f` involves no later variable.
    pub fn roots_at(&self, f: &MultiPoly) -> Result<Arc<Vec<RealNum>>, RealAlgError> {
        let k = self.len();
        if f.level() > k + 1 {
            return Err(RealAlgError::LevelTooHigh(f.level(), k + 1));
        }
        let lv = &self.levels[k];
        if let Some(r) = lv.roots.lock().get(f) {
            return Ok(r.clone());
        }
        let roots = match &lv.rational {
            Some(xs) => {
                let specialized = f.substitute_prefix(xs);
                let u = ZPoly::from_multi(&specialized, k);
                if u.is_zero() {
                    return Err(RealAlgError::IdenticallyZero);
                }
                real_roots(&u)
            }
            None => self.roots_in_field(f)?,
        };
        let roots = Arc::new(roots);
        lv.roots.lock().insert(f.clone(), roots.clone());
        Ok(roots)
    }

    fn roots_in_field(&self, f: &MultiPoly) -> Result<Vec<RealNum>, RealAlgError> {
        let k = self.len();
        let field = &self.levels[k].field;
        let fk = self.specialize(f, k);
        if fk.is_empty() {
            return Err(RealAlgError::IdenticallyZero);
        }
        if fk.len() == 1 {
            return Ok(Vec::new());
        }
        if fk.iter().all(|c| c.degree() == 0) {
            let q = QPoly::new(fk.iter().map(|c| c.coeff(0)).collect());
            return Ok(real_roots(&q.to_z_primitive()));
        }
        // squarefree part over the field
        let g = field.kgcd(&fk, &field.kderivative(&fk));
        let sqf = if g.len() > 1 { field.kdivrem(&fk, &g).0 } else { fk };
        // norm: every root of sqf is a root of res_t(M(t), sqf(t, y))
        let norm = norm_poly(field, &sqf);
        let cands = real_roots(&norm);
        let mut out = Vec::new();
        for (i, c) in cands.iter().enumerate() {
            let is_root = match c {
                RealNum::Rat(x) => field.keval_rat(&sqf, x).is_zero(),
                RealNum::Alg(_) => {
                    // cands are separated, so (lower, upper) holds no other norm root
                    let _ = i;
                    let sl = field.sign(&field.keval_rat(&sqf, &c.lower()));
                    let su = field.sign(&field.keval_rat(&sqf, &c.upper()));
                    sl * su < 0
                }
            };
            if is_root {
                out.push(c.clone());
            }
        }
        Ok(out)
    }

    /// The roots of `f(a, y)` as anchored root values.
    pub fn anchored_roots(&self, f: &MultiPoly) -> Result<Vec<AnchoredRoot>, RealAlgError> {
        let roots = self.roots_at(f)?;
        Ok(roots
            .iter()
            .enumerate()
            .map(|(i, v)| AnchoredRoot { defpoly: f.clone(), index: i + 1, value: v.clone() })
            .collect())
    }

    /// Compact rendering with decimal approximations of irrational coordinates.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl std::fmt::Debug for SamplePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

// res_t(M(t), F(t, y)) for F with coefficients in Q(θ) written as polynomials in t.
fn norm_poly(field: &NumberField, f: &KPoly) -> ZPoly {
    let m = field.min_poly().to_z_primitive().to_multi(2, 0);
    let r = resultant(&m, &field.lift(f), 0).expect("M has positive degree");
    ZPoly::from_multi(&r, 1)
}

fn sign_int(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_rat(x: &BigRat) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// The value at a fixed base point of `Root_{y, index} defpoly`.
#[derive(Clone, Debug)]
pub struct AnchoredRoot {
    pub defpoly: MultiPoly,
    pub index: usize,
    pub value: RealNum,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::realalg::number::roots_of_irreducible;

    fn x() -> MultiPoly {
        MultiPoly::var(3, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(3, 1)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(3, 2)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::from_int(3, n)
    }

    #[test]
    fn signs_and_roots_at_rational_points() {
        let f1 = &(&(&c(4) * &x().pow(2)) + &y().pow(2)) - &c(4);
        let p0 = SamplePoint::from_rationals(&[int(0)]);
        let r = p0.roots_at(&f1).unwrap();
        assert_eq!(r.iter().map(|v| v.as_rat().cloned()).collect::<Vec<_>>(), vec![Some(int(-2)), Some(int(2))]);
        assert!(SamplePoint::from_rationals(&[int(-2)]).roots_at(&f1).unwrap().is_empty());
        let pm1 = SamplePoint::from_rationals(&[int(-1)]);
        assert_eq!(pm1.roots_at(&f1).unwrap().len(), 1);
        assert_eq!(SamplePoint::from_rationals(&[int(0), int(0)]).sign_at(&f1), -1);
    }

    #[test]
    fn algebraic_points() {
        // x = sqrt 2, then y on x^2 + y^2 - 3 = 0 gives y = ±1
        let s2 = roots_of_irreducible(&ZPoly::from_i64(&[-2, 0, 1]))[1].clone();
        let p = SamplePoint::empty().push(s2.clone(), true);
        assert_eq!(p.sign_at(&(&x().pow(2) - &c(1))), 1);
        assert_eq!(p.sign_at(&(&x().pow(2) - &c(2))), 0);
        let circ = &(&x().pow(2) + &y().pow(2)) - &c(3);
        let r = p.roots_at(&circ).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].as_rat(), Some(&int(1)));
        // y^2 = sqrt2 + 1
        let g = &y().pow(2) - &(&x() + &c(1));
        let r = p.roots_at(&g).unwrap();
        assert_eq!(r.len(), 2);
        let q = p.push(r[1].clone(), true);
        assert_eq!(q.sign_at(&g), 0);
        assert_eq!(q.sign_at(&(&y() - &x())), 1);
        assert_eq!(q.sign_at(&(&y() - &c(2))), -1);
        // z^2 = x y has two roots over (sqrt2, sqrt(sqrt2 + 1))
        let h = &z().pow(2) - &(&x() * &y());
        assert_eq!(q.roots_at(&h).unwrap().len(), 2);
        assert_eq!(q.prefix(1).sign_at(&(&x().pow(2) - &c(2))), 0);
    }
}
