//! Dense univariate polynomials over the integers and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::BigRat;

use super::MultiPoly;

/// Dense integer polynomial, coefficients in ascending degree. Never has a
/// zero leading coefficient; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn constant(x: BigInt) -> Self {
        Self::new(vec![x])
    }

    /// `x - r` scaled to integers: `den*x - num`.
    pub fn linear_root(r: &BigRat) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    /// Univariate view of a polynomial that only involves variable `v`.
    pub fn from_multi(p: &MultiPoly, v: usize) -> Self {
        let d = p.degree_in(v) as usize;
        let mut c = vec![BigInt::zero(); if p.is_zero() { 0 } else { d + 1 }];
        for (e, x) in p.terms() {
            debug_assert!(e.iter().enumerate().all(|(i, &k)| i == v || k == 0), "not univariate in {}", v);
            c[e[v] as usize] += x;
        }
        Self::new(c)
    }

    pub fn to_multi(&self, nvars: usize, v: usize) -> MultiPoly {
        let terms = self.c.iter().enumerate().map(|(i, x)| {
            let mut e: super::Exps = smallvec::SmallVec::from_elem(0, nvars);
            e[v] = i as u32;
            (e, x.clone())
        });
        MultiPoly::from_terms(nvars, terms.collect::<Vec<_>>())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        ZPoly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    pub fn neg(&self) -> Self {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &ZPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect())
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) a mod d`.
    pub fn prem(&self, d: &ZPoly) -> Self {
        assert!(!d.is_zero());
        if self.degree() < d.degree() || self.is_zero() {
            return self.clone();
        }
        let mut r = self.c.clone();
        let dl = d.lc().clone();
        let dd = d.degree();
        let mut steps = self.degree() - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            for x in r.iter_mut() {
                *x *= &dl;
            }
            let shift = k - dd;
            for (j, dc) in d.c.iter().enumerate() {
                r[shift + j] -= &lr * dc;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
            steps -= 1;
        }
        let mut out = ZPoly::new(r);
        if steps > 0 {
            out = out.scale(&num_traits::pow(dl, steps));
        }
        out
    }

    /// Exact division over the integers; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.c.clone();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (dd..r.len()).rev() {
            let (qc, rem) = r[k].div_rem(d.lc());
            if !rem.is_zero() {
                return None;
            }
            if !qc.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[k - dd + j] -= &qc * dc;
                }
            }
            q[k - dd] = qc;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(ZPoly::new(q))
    }

    /// Gcd over the rationals, returned primitive with positive leading coefficient.
    pub fn gcd(&self, o: &ZPoly) -> ZPoly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.degree() > 0 && super::factor::coprime_mod_p(&a, &b) {
            return ZPoly::from_i64(&[1]);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return ZPoly::from_i64(&[1]);
            }
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Squarefree part, primitive.
    pub fn squarefree_part(&self) -> ZPoly {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        self.primitive().div_exact(&g).expect("gcd divides").primitive()
    }

    /// Squarefree decomposition `[(s_1, 1), (s_2, 2), …]` of a primitive polynomial
    /// (Yun); constant parts are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(ZPoly, u32)> {
        let f = self.primitive();
        if f.degree() == 0 {
            return Vec::new();
        }
        if super::factor::squarefree_mod_p(&f) {
            return vec![(f, 1)];
        }
        // repeated gcds: a holds the parts of multiplicity above i
        let mut a = f.gcd(&f.derivative());
        let mut b = f.div_exact(&a).expect("gcd divides").primitive();
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let c = a.gcd(&b);
            let part = b.div_exact(&c).expect("gcd divides").primitive();
            if part.degree() > 0 {
                out.push((part, i));
            }
            a = a.div_exact(&c).expect("gcd divides").primitive();
            b = c;
            i += 1;
        }
        out
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the value at a rational point, computed with integer arithmetic.
    pub fn sign_at(&self, x: &BigRat) -> i32 {
        // sum c_i p^i q^(n-i) = q^n f(p/q)
        let p = x.numer();
        let q = x.denom();
        let mut acc = BigInt::zero();
        let mut qp = BigInt::one();
        for c in self.c.iter().rev() {
            acc = acc * p + c * &qp;
            qp *= q;
        }
        sign_of(&acc)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `f(x + s)`.
    pub fn taylor_shift(&self, s: &BigInt) -> ZPoly {
        let mut a = self.c.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * s;
                a[j] += t;
            }
        }
        ZPoly::new(a)
    }

    /// `x^deg f(1/x)`.
    pub fn reverse(&self) -> ZPoly {
        let mut a = self.c.clone();
        a.reverse();
        ZPoly::new(a)
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> ZPoly {
        ZPoly::new(self.c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect())
    }

    /// `2^(k·deg) f(x / 2^k)` for `k >= 0`, i.e. coefficient i times `2^(k(deg-i))`.
    pub fn scale_arg_pow2(&self, k: u32) -> ZPoly {
        let n = self.degree();
        ZPoly::new(self.c.iter().enumerate().map(|(i, x)| x << ((k as usize) * (n - i))).collect())
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let mut last = 0;
        let mut v = 0;
        for x in &self.c {
            let s = sign_of(x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Cauchy bound: every real root has absolute value below `2^k`.
    pub fn root_bound_log2(&self) -> u64 {
        let lc = self.lc().abs();
        let m = self.c[..self.c.len() - 1].iter().map(|x| x.abs()).max().unwrap_or_default();
        // 1 + max|c_i|/|lc| <= 2^k
        let q = m / lc + 1u32;
        q.bits() + 1
    }

    pub fn max_norm(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn render(&self, var: &str) -> String {
        let vo = super::VarOrder::new(&[var]).expect("one name");
        self.to_multi(1, 0).render(&vo)
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// Dense rational polynomial, ascending, no zero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPoly {
    c: Vec<BigRat>,
}

impl QPoly {
    pub fn new(mut c: Vec<BigRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn constant(x: BigRat) -> Self {
        Self::new(vec![x])
    }

    pub fn x() -> Self {
        Self::new(vec![BigRat::zero(), BigRat::one()])
    }

    pub fn from_z(p: &ZPoly) -> Self {
        QPoly { c: p.coeffs().iter().map(|x| BigRat::from_integer(x.clone())).collect() }
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigRat {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.c.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn constant_value(&self) -> Option<BigRat> {
        match self.c.len() {
            0 => Some(BigRat::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, s: &BigRat) -> QPoly {
        Self::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.degree();
        let inv = d.lc().recip();
        let mut q = vec![BigRat::zero(); self.degree() - dd + 1];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let qc = &r[k] * &inv;
            for (j, dc) in d.c.iter().enumerate() {
                r[k - dd + j] -= &qc * dc;
            }
            q[k - dd] = qc;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g (mod m)`.
    pub fn gcdex_inverse_part(&self, m: &QPoly) -> (QPoly, QPoly) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(BigRat::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv))
    }

    pub fn derivative(&self) -> QPoly {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * BigRat::from_integer(BigInt::from(i))).collect())
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Integer polynomial with the same roots: denominators cleared, primitive.
    pub fn to_z_primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut den = BigInt::one();
        for x in &self.c {
            den = den.lcm(x.denom());
        }
        ZPoly::new(self.c.iter().map(|x| x.numer() * (&den / x.denom())).collect()).primitive()
    }

    /// `(den, p)` with `self = p / den`, `den > 0`, `p` integral.
    pub fn to_z_with_den(&self) -> (BigInt, ZPoly) {
        let mut den = BigInt::one();
        for x in &self.c {
            den = den.lcm(x.denom());
        }
        (den.clone(), ZPoly::new(self.c.iter().map(|x| x.numer() * (&den / x.denom())).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn arithmetic() {
        let a = z(&[-1, 1]);
        let b = z(&[1, 1]);
        assert_eq!(a.mul(&b), z(&[-1, 0, 1]));
        assert_eq!(z(&[-1, 0, 1]).div_exact(&a), Some(b.clone()));
        assert_eq!(z(&[-1, 0, 1]).div_exact(&z(&[1, 2])), None);
        assert_eq!(z(&[-1, 0, 1]).gcd(&z(&[1, 2, 1])), b);
        assert_eq!(z(&[0, 0, 1]).taylor_shift(&BigInt::from(1)), z(&[1, 2, 1]));
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x+2)
        let f = z(&[-1, 1]).mul(&z(&[-1, 1])).mul(&z(&[2, 1]));
        assert_eq!(f.squarefree_part(), z(&[-1, 1]).mul(&z(&[2, 1])));
        let d = f.scale(&BigInt::from(3)).squarefree_decomposition();
        assert_eq!(d, vec![(z(&[2, 1]), 1), (z(&[-1, 1]), 2)]);
    }

    #[test]
    fn sign_at_rational() {
        let f = z(&[-2, 0, 1]);
        assert_eq!(f.sign_at(&crate::exact::rat(3, 2)), 1);
        assert_eq!(f.sign_at(&crate::exact::rat(1, 2)), -1);
        assert_eq!(z(&[-1, 2]).sign_at(&crate::exact::rat(1, 2)), 0);
    }

    #[test]
    fn qpoly_inverse() {
        // inverse of x mod x^2 - 2 is x/2
        let m = QPoly::from_z(&z(&[-2, 0, 1]));
        let (g, s) = QPoly::x().gcdex_inverse_part(&m);
        assert_eq!(g, QPoly::constant(BigRat::one()));
        assert_eq!(s.mul(&QPoly::x()).rem(&m), QPoly::constant(BigRat::one()));
    }
}
