//! Real root isolation by Descartes' rule of signs with bisection.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::BigRat;
use crate::poly::ZPoly;

/// One isolated root: an exact rational, or an open interval with dyadic
/// endpoints containing exactly one root. An endpoint can be a root only if
/// it is reported as `Exact` as well, so polynomials without rational roots
/// never have roots at endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isolated {
    Exact(BigRat),
    Open(BigRat, BigRat),
}

impl Isolated {
    pub fn lower(&self) -> &BigRat {
        match self {
            Isolated::Exact(x) => x,
            Isolated::Open(a, _) => a,
        }
    }

    // an exact root sorts before an interval opening at the same value
    fn key(&self) -> (&BigRat, bool) {
        (self.lower(), matches!(self, Isolated::Open(..)))
    }
}

// c_i · 2^(k·i): the polynomial f(2^k x).
fn scale_down_roots(p: &ZPoly, k: u64) -> ZPoly {
    ZPoly::new(p.coeffs().iter().enumerate().map(|(i, c)| c << (k as usize * i)).collect())
}

fn strip_x(p: &ZPoly) -> ZPoly {
    ZPoly::new(p.coeffs()[1..].to_vec())
}

// Upper bound on the number of roots in (0, 1).
fn descartes_01(q: &ZPoly) -> usize {
    q.reverse().taylor_shift(&BigInt::one()).sign_variations()
}

// Roots in (0, 1) of a squarefree q with q(0) != 0: dyadic intervals
// (c / 2^j, (c + 1) / 2^j) or exact dyadic roots.
fn isolate_01(q: &ZPoly) -> Vec<Isolated> {
    let mut out = Vec::new();
    let mut stack: Vec<(ZPoly, BigInt, u64)> = vec![(q.clone(), BigInt::zero(), 0)];
    while let Some((p, c, j)) = stack.pop() {
        let v = descartes_01(&p);
        if v == 0 {
            continue;
        }
        let den = BigInt::one() << j as usize;
        if v == 1 {
            out.push(Isolated::Open(BigRat::new(c.clone(), den.clone()), BigRat::new(&c + 1u32, den)));
            continue;
        }
        // halves: left(x) = 2^n p(x/2), right(x) = left(x + 1)
        let left = p.scale_arg_pow2(1);
        let mut right = left.taylor_shift(&BigInt::one());
        let c2 = &c * 2u32;
        if right.coeff(0).is_zero() {
            out.push(Isolated::Exact(BigRat::new(&c2 + 1u32, den * 2u32)));
            right = strip_x(&right);
        }
        stack.push((right, &c2 + 1u32, j + 1));
        stack.push((left, c2, j + 1));
    }
    out
}

fn positive_roots(p: &ZPoly) -> Vec<Isolated> {
    let k = p.root_bound_log2();
    let scaled = scale_down_roots(p, k);
    let unit = BigRat::from_integer(BigInt::one() << k as usize);
    isolate_01(&scaled)
        .into_iter()
        .map(|r| match r {
            Isolated::Exact(x) => Isolated::Exact(x * &unit),
            Isolated::Open(a, b) => Isolated::Open(a * &unit, b * &unit),
        })
        .collect()
}

/// Isolates all real roots of a squarefree nonzero polynomial, in increasing order.
pub fn isolate_squarefree(p: &ZPoly) -> Vec<Isolated> {
    assert!(!p.is_zero(), "isolating roots of the zero polynomial");
    if p.degree() == 0 {
        return Vec::new();
    }
    let mut p = p.clone();
    let mut zero = false;
    if p.coeff(0).is_zero() {
        zero = true;
        p = strip_x(&p);
    }
    let mut out: Vec<Isolated> = Vec::new();
    if p.degree() > 0 {
        let mut neg: Vec<Isolated> = positive_roots(&p.reflect())
            .into_iter()
            .map(|r| match r {
                Isolated::Exact(x) => Isolated::Exact(-x),
                Isolated::Open(a, b) => Isolated::Open(-b, -a),
            })
            .collect();
        neg.sort_by(|a, b| a.key().cmp(&b.key()));
        out.extend(neg);
    }
    if zero {
        out.push(Isolated::Exact(BigRat::zero()));
    }
    if p.degree() > 0 {
        let mut pos = positive_roots(&p);
        pos.sort_by(|a, b| a.key().cmp(&b.key()));
        out.extend(pos);
    }
    out
}

/// Isolates the distinct real roots of any nonzero polynomial.
pub fn isolate_roots(p: &ZPoly) -> Vec<Isolated> {
    isolate_squarefree(&p.squarefree_part())
}

/// Halves an isolating interval of a root of `p`; returns the exact root if
/// the midpoint hits it.
pub fn bisect(p: &ZPoly, lo: &BigRat, hi: &BigRat) -> Result<(BigRat, BigRat), BigRat> {
    let mid = (lo + hi) / BigRat::from_integer(BigInt::from(2));
    let sm = p.sign_at(&mid);
    if sm == 0 {
        return Err(mid);
    }
    let sl = p.sign_at(lo);
    if sl == sm {
        Ok((mid, hi.clone()))
    } else {
        Ok((lo.clone(), mid))
    }
}
