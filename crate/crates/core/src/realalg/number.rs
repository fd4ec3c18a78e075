use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use parking_lot::Mutex;

use super::isolate::{bisect, isolate_squarefree, Isolated};
use crate::exact::{self, BigRat, Endpoint};
use crate::poly::factor::irreducible_factors;
use crate::poly::{QPoly, ZPoly};

/// An irrational real algebraic number: the `index`-th real root (1-based,
/// increasing) of an irreducible primitive integer polynomial of degree at
/// least 2, with a shared, refinable isolating interval.
#[derive(Clone)]
pub struct RealAlg {
    poly: Arc<ZPoly>,
    index: usize,
    iv: Arc<Mutex<(BigRat, BigRat)>>,
}

impl RealAlg {
    /// `lo < root < hi` must isolate the `index`-th real root of `poly`.
    pub fn new(poly: ZPoly, index: usize, lo: BigRat, hi: BigRat) -> Self {
        debug_assert!(poly.degree() >= 2);
        debug_assert!(poly.sign_at(&lo) * poly.sign_at(&hi) < 0);
        RealAlg { poly: Arc::new(poly), index, iv: Arc::new(Mutex::new((lo, hi))) }
    }

    pub fn poly(&self) -> &ZPoly {
        &self.poly
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn interval(&self) -> (BigRat, BigRat) {
        self.iv.lock().clone()
    }

    pub fn lower(&self) -> BigRat {
        self.iv.lock().0.clone()
    }

    pub fn upper(&self) -> BigRat {
        self.iv.lock().1.clone()
    }

    /// Halves the isolating interval.
    pub fn refine(&self) {
        let mut g = self.iv.lock();
        match bisect(&self.poly, &g.0, &g.1) {
            Ok(next) => *g = next,
            Err(_) => unreachable!("irreducible polynomial of degree >= 2 has no rational root"),
        }
    }

    /// Refines until the interval is narrower than `w`.
    pub fn refine_to(&self, w: &BigRat) {
        loop {
            let (lo, hi) = self.interval();
            if &(hi - lo) < w {
                return;
            }
            self.refine();
        }
    }
}

/// A real algebraic number: rational, or irrational with an irreducible
/// defining polynomial.
#[derive(Clone)]
pub enum RealNum {
    Rat(BigRat),
    Alg(RealAlg),
}

impl RealNum {
    pub fn from_int(n: i64) -> Self {
        RealNum::Rat(exact::int(n))
    }

    pub fn as_rat(&self) -> Option<&BigRat> {
        match self {
            RealNum::Rat(x) => Some(x),
            RealNum::Alg(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealNum::Rat(_))
    }

    /// Current rational lower bound (the value itself when rational).
    pub fn lower(&self) -> BigRat {
        match self {
            RealNum::Rat(x) => x.clone(),
            RealNum::Alg(a) => a.lower(),
        }
    }

    pub fn upper(&self) -> BigRat {
        match self {
            RealNum::Rat(x) => x.clone(),
            RealNum::Alg(a) => a.upper(),
        }
    }

    pub fn refine(&self) {
        if let RealNum::Alg(a) = self {
            a.refine();
        }
    }

    /// Monic-free integer minimal polynomial (primitive, positive leading coefficient).
    pub fn minimal_poly(&self) -> ZPoly {
        match self {
            RealNum::Rat(x) => ZPoly::linear_root(x),
            RealNum::Alg(a) => a.poly().clone(),
        }
    }

    pub fn sign(&self) -> i32 {
        self.cmp_rat(&BigRat::zero()) as i32
    }

    /// Exact comparison with a rational.
    pub fn cmp_rat(&self, r: &BigRat) -> Ordering {
        match self {
            RealNum::Rat(x) => x.cmp(r),
            RealNum::Alg(a) => loop {
                let (lo, hi) = a.interval();
                if &hi <= r {
                    return Ordering::Less;
                }
                if &lo >= r {
                    return Ordering::Greater;
                }
                a.refine();
            },
        }
    }

    /// Exact total order; refines intervals as needed.
    pub fn compare(&self, other: &RealNum) -> Ordering {
        match (self, other) {
            (RealNum::Rat(x), _) => other.cmp_rat(x).reverse(),
            (_, RealNum::Rat(y)) => self.cmp_rat(y),
            (RealNum::Alg(a), RealNum::Alg(b)) => {
                if Arc::ptr_eq(&a.poly, &b.poly) || a.poly == b.poly {
                    return a.index.cmp(&b.index);
                }
                // distinct irreducible polynomials share no root
                loop {
                    let (alo, ahi) = a.interval();
                    let (blo, bhi) = b.interval();
                    if ahi <= blo {
                        return Ordering::Less;
                    }
                    if bhi <= alo {
                        return Ordering::Greater;
                    }
                    if ahi - alo >= bhi - blo {
                        a.refine();
                    } else {
                        b.refine();
                    }
                }
            }
        }
    }

    /// Approximation with absolute error below `2^-bits`.
    pub fn approx(&self, bits: u32) -> BigRat {
        match self {
            RealNum::Rat(x) => x.clone(),
            RealNum::Alg(a) => {
                let w = BigRat::new(BigInt::from(1), BigInt::from(1) << bits as usize);
                a.refine_to(&w);
                let (lo, hi) = a.interval();
                (lo + hi) / exact::int(2)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        exact::to_f64(&self.approx(60))
    }

    /// Decimal rendering truncated to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * 3.33).ceil() as u32 + 8;
        exact::to_decimal(&self.approx(bits), digits)
    }

    /// `Root[poly, index]` for irrationals, the fraction otherwise.
    pub fn render(&self, var: &str) -> String {
        match self {
            RealNum::Rat(x) => x.to_string(),
            RealNum::Alg(a) => format!("Root[{}, {}, {}]", a.poly().render(var), a.index(), var),
        }
    }
}

impl PartialEq for RealNum {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealNum {}

impl PartialOrd for RealNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Debug for RealNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealNum::Rat(x) => write!(f, "{}", x),
            RealNum::Alg(a) => write!(f, "Root[{}, {}] ~ {}", a.poly().render("x"), a.index(), self.to_decimal(6)),
        }
    }
}

impl fmt::Display for RealNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealNum::Rat(x) => write!(f, "{}", x),
            RealNum::Alg(_) => write!(f, "{}", self.to_decimal(6)),
        }
    }
}

impl From<BigRat> for RealNum {
    fn from(x: BigRat) -> Self {
        RealNum::Rat(x)
    }
}

/// Real roots of an irreducible polynomial, increasing.
pub fn roots_of_irreducible(p: &ZPoly) -> Vec<RealNum> {
    if p.degree() == 0 {
        return Vec::new();
    }
    if p.degree() == 1 {
        return vec![RealNum::Rat(BigRat::new(-p.coeff(0), p.coeff(1)))];
    }
    let shared = Arc::new(p.clone());
    isolate_squarefree(p)
        .into_iter()
        .enumerate()
        .map(|(i, r)| match r {
            Isolated::Open(lo, hi) => {
                RealNum::Alg(RealAlg { poly: shared.clone(), index: i + 1, iv: Arc::new(Mutex::new((lo, hi))) })
            }
            Isolated::Exact(_) => unreachable!("irreducible polynomial of degree >= 2 has no rational root"),
        })
        .collect()
}

/// Distinct real roots of a nonzero polynomial, increasing, with consecutive
/// roots separated (`upper(r_i) < lower(r_{i+1})`).
pub fn real_roots(p: &ZPoly) -> Vec<RealNum> {
    assert!(!p.is_zero(), "real roots of the zero polynomial");
    let mut out: Vec<RealNum> = Vec::new();
    for f in irreducible_factors(p) {
        out.extend(roots_of_irreducible(&f));
    }
    out.sort();
    separate_all(&out);
    out
}

/// Refines neighbours until each interval lies strictly between its neighbours' bounds.
pub fn separate_all(sorted: &[RealNum]) {
    for w in sorted.windows(2) {
        separate(&w[0], &w[1]);
    }
}

/// For `a < b`, refines until `upper(a) < lower(b)`.
pub fn separate(a: &RealNum, b: &RealNum) {
    loop {
        let au = a.upper();
        let bl = b.lower();
        if au < bl {
            return;
        }
        let wa = &au - a.lower();
        let wb = b.upper() - &bl;
        if wa >= wb && !wa.is_zero() {
            a.refine();
        } else {
            b.refine();
        }
    }
}

/// The simplest rational strictly between two bounds (`None` is infinite).
pub fn simplest_between(lo: Option<&RealNum>, hi: Option<&RealNum>) -> BigRat {
    loop {
        let le = lo.map_or(Endpoint::NegInf, |x| Endpoint::Finite(x.lower()));
        let he = hi.map_or(Endpoint::PosInf, |x| Endpoint::Finite(x.upper()));
        if let Ok(s) = exact::simplest_between(&le, &he) {
            let above = lo.is_none_or(|x| x.cmp_rat(&s) == Ordering::Less);
            let below = hi.is_none_or(|x| x.cmp_rat(&s) == Ordering::Greater);
            if above && below {
                return s;
            }
        }
        if let Some(x) = lo {
            x.refine();
        }
        if let Some(x) = hi {
            x.refine();
        }
    }
}

/// Interval enclosure of a rational polynomial over `[lo, hi]`.
pub fn eval_interval(p: &QPoly, lo: &BigRat, hi: &BigRat) -> (BigRat, BigRat) {
    let mut acc_lo = BigRat::zero();
    let mut acc_hi = BigRat::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let mn = prods.iter().min().expect("four").clone();
        let mx = prods.iter().max().expect("four").clone();
        acc_lo = mn + c;
        acc_hi = mx + c;
    }
    (acc_lo, acc_hi)
}
