use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::exact::BigRat;

use super::PolyError;

pub type Exps = SmallVec<[u32; 8]>;

/// Ordered list of variable names. Indices are 0-based in code; the level of
/// variable `i` is `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        if names.is_empty() {
            return Err(PolyError::EmptyVarOrder);
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(PolyError::DuplicateVariable(a.clone()));
            }
        }
        Ok(VarOrder { names })
    }

    /// `x1, …, xn`.
    pub fn numbered(n: usize) -> Self {
        VarOrder { names: (1..=n).map(|i| format!("x{}", i)).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Sparse polynomial with integer coefficients in a fixed number of variables.
///
/// Terms are kept sorted by a lexicographic order in which the *last*
/// variable is most significant, so the leading term is the leading term of
/// the leading coefficient with respect to the main variable. No zero
/// coefficient is ever stored.
///
/// Rational input is handled by clearing denominators: every sign question the
/// engine asks is invariant under positive scaling.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Exps, BigInt)>,
}

/// Storage order: last variable most significant.
pub(crate) fn exps_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn sort_desc(terms: &mut [(Exps, BigInt)]) {
    terms.sort_unstable_by(|a, b| exps_cmp(&b.0, &a.0));
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly { nvars, terms: vec![(SmallVec::from_elem(0, nvars), c)] }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigInt::from(c))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, i, 1, BigInt::one())
    }

    pub fn monomial(nvars: usize, i: usize, deg: u32, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        let mut e: Exps = SmallVec::from_elem(0, nvars);
        e[i] = deg;
        MultiPoly { nvars, terms: vec![(e, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, BigInt)>) -> Self {
        let mut v: Vec<(Exps, BigInt)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for (e, _) in &v {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
        }
        sort_desc(&mut v);
        let mut out: Vec<(Exps, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 += c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push((e, c));
        }
        MultiPoly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&d| d == 0))
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Highest 1-based index of a variable that occurs; 0 for constants.
    pub fn level(&self) -> usize {
        match self.terms.first() {
            None => 0,
            // the leading term carries the most significant variable
            Some((e, _)) => e.iter().rposition(|&d| d > 0).map(|i| i + 1).unwrap_or(0),
        }
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        if self.level() == v + 1 {
            return self.terms[0].0[v];
        }
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Variables (0-based) that occur with positive degree.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for (e, _) in &self.terms {
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    /// Coefficient of the largest term in storage order.
    pub fn leading_int(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> MultiPoly {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    /// Divides every coefficient by `s`, which must divide all of them.
    pub fn div_int(&self, s: &BigInt) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!((c % s).is_zero());
                    (e.clone(), c / s)
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable orders");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match exps_cmp(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (e, c) in &other.terms[j..] {
            out.push((e.clone(), if negate { -c } else { c.clone() }));
        }
        MultiPoly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable orders");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: FxHashMap<Exps, BigInt> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                let p = ca * cb;
                match acc.entry(e) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += p;
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                }
            }
        }
        let mut terms: Vec<(Exps, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_desc(&mut terms);
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn mul_term(&self, e: &[u32], c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(ea, ca)| (ea.iter().zip(e.iter()).map(|(a, b)| a + b).collect(), ca * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Coefficients with respect to variable `v`, in ascending degree order.
    pub fn coeff_vec(&self, v: usize) -> Vec<MultiPoly> {
        if self.is_zero() {
            return vec![Self::zero(self.nvars)];
        }
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            buckets[k].push((e2, c.clone()));
        }
        let main = self.level() == v + 1;
        buckets
            .into_iter()
            .map(|mut b| {
                // with v most significant the runs are already sorted
                if !main {
                    sort_desc(&mut b);
                }
                MultiPoly { nvars: self.nvars, terms: b }
            })
            .collect()
    }

    /// Coefficients `(q_d, …, q_0)` with respect to `v`, leading first.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let mut c = self.coeff_vec(v);
        c.reverse();
        c
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: usize) -> MultiPoly {
        self.coeff_vec(v).pop().expect("nonempty coefficient vector")
    }

    /// Inverse of [`coeff_vec`](Self::coeff_vec): `Σ coeffs[i] · v^i`.
    pub fn from_coeff_vec(nvars: usize, v: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, cc) in &c.terms {
                debug_assert_eq!(e[v], 0);
                let mut e2 = e.clone();
                e2[v] = k as u32;
                terms.push((e2, cc.clone()));
            }
        }
        sort_desc(&mut terms);
        MultiPoly { nvars, terms }
    }

    pub fn derivative(&self, v: usize) -> MultiPoly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            terms.push((e2, c * BigInt::from(e[v])));
        }
        sort_desc(&mut terms);
        MultiPoly { nvars: self.nvars, terms }
    }

    /// `q^deg · self(…, v = p/q, …)` where `value = p/q` and `deg = deg_v(self)`:
    /// the substitution with denominators cleared by a positive factor.
    pub fn substitute(&self, v: usize, value: &BigRat) -> MultiPoly {
        let maxd = self.degree_in(v) as usize;
        if maxd == 0 {
            return self.clone();
        }
        let p = value.numer();
        let q = value.denom();
        // p^i q^(maxd-i)
        let mut ppow = Vec::with_capacity(maxd + 1);
        let mut qpow = Vec::with_capacity(maxd + 1);
        ppow.push(BigInt::one());
        qpow.push(BigInt::one());
        for i in 1..=maxd {
            ppow.push(&ppow[i - 1] * p);
            qpow.push(&qpow[i - 1] * q);
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            (e2, c * &ppow[k] * &qpow[maxd - k])
        });
        Self::from_terms(self.nvars, terms.collect::<Vec<_>>())
    }

    /// Substitutes integers for variable `v` exactly.
    pub fn substitute_int(&self, v: usize, value: &BigInt) -> MultiPoly {
        self.substitute(v, &BigRat::from_integer(value.clone()))
    }

    /// Substitutes rationals for the leading variables `0..point.len()`, clearing
    /// denominators by a positive factor.
    pub fn substitute_prefix(&self, point: &[BigRat]) -> MultiPoly {
        let mut p = self.clone();
        for (i, x) in point.iter().enumerate() {
            p = p.substitute(i, x);
        }
        p
    }

    /// Exact value at a rational point covering every variable that occurs.
    pub fn eval(&self, point: &[BigRat]) -> BigRat {
        let mut acc = BigRat::zero();
        let maxdeg = self.terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
        let mut pows: Vec<Vec<BigRat>> = Vec::with_capacity(point.len());
        for x in point {
            let mut pw = Vec::with_capacity(maxdeg + 1);
            pw.push(BigRat::one());
            for i in 1..=maxdeg {
                let n = &pw[i - 1] * x;
                pw.push(n);
            }
            pows.push(pw);
        }
        for (e, c) in &self.terms {
            let mut t = BigRat::from_integer(c.clone());
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    assert!(i < point.len(), "point does not cover variable {}", i);
                    t *= &pows[i][d as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / d` over the rationals, or `None` when `d` does not
    /// divide `self` with an integer quotient.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = d.constant_value() {
            if self.terms.iter().all(|(_, x)| (x % &c).is_zero()) {
                return Some(self.div_int(&c));
            }
            return None;
        }
        let (lde, ldc) = &d.terms[0];
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((re, rc)) = rem.terms.first() {
            if re.iter().zip(lde.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(ldc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exps = re.iter().zip(lde.iter()).map(|(a, b)| a - b).collect();
            rem = rem.sub(&d.mul_term(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(MultiPoly { nvars: self.nvars, terms: quot })
    }

    /// Gcd of the integer coefficients, with the sign of the leading term.
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if let Some((_, c)) = self.terms.first() {
            if c.is_negative() {
                g = -g;
            }
        }
        g
    }

    /// Same polynomial divided by its integer content: coprime coefficients,
    /// positive leading term.
    pub fn primitive_int(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.int_content();
        if g.is_one() {
            return self.clone();
        }
        self.div_int(&g)
    }

    /// Changes the number of variables; dropped variables must not occur.
    pub fn with_nvars(&self, n: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2: Exps = SmallVec::from_elem(0, n);
                for (i, &d) in e.iter().enumerate() {
                    if d > 0 {
                        assert!(i < n, "variable {} occurs", i);
                        e2[i] = d;
                    }
                }
                (e2, c.clone())
            })
            .collect::<Vec<_>>();
        Self::from_terms(n, terms)
    }

    /// Canonical polynomial order: level, total degree, number of terms, then
    /// exponents and coefficients in storage order.
    pub fn canonical_cmp(&self, other: &MultiPoly) -> Ordering {
        self.level()
            .cmp(&other.level())
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| self.terms.len().cmp(&other.terms.len()))
            .then_with(|| {
                for (x, y) in self.terms.iter().zip(other.terms.iter()) {
                    let o = exps_cmp(&x.0, &y.0);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                for (x, y) in self.terms.iter().zip(other.terms.iter()) {
                    let o = x.1.cmp(&y.1);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }

    /// Terms in descending graded-lex order (`x_1 > x_2 > …` among equal total degree).
    pub fn grlex_terms(&self) -> Vec<(Exps, BigInt)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        t
    }

    pub fn render(&self, vars: &VarOrder) -> String {
        render_terms(&self.grlex_terms(), vars)
    }

    pub(crate) fn check_same_ring(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::MismatchedVarOrder(self.nvars, other.nvars));
        }
        Ok(())
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| self.canonical_cmp(other))
    }
}

pub(crate) fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn render_terms(terms: &[(Exps, BigInt)], vars: &VarOrder) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| if d == 1 { vars.name(i).to_string() } else { format!("{}^{}", vars.name(i), d) })
            .collect();
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push('*');
            }
            s.push_str(&mono.join("*"));
        }
    }
    s
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&VarOrder::numbered(self.nvars)))
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Ring operation selector for [`poly_ring_ops`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// Checked ring operation; `Pow` ignores `q`.
pub fn poly_ring_ops(p: &MultiPoly, q: &MultiPoly, op: RingOp) -> Result<MultiPoly, PolyError> {
    p.check_same_ring(q)?;
    Ok(match op {
        RingOp::Add => p.add(q),
        RingOp::Sub => p.sub(q),
        RingOp::Mul => p.mul(q),
        RingOp::Pow(k) => p.pow(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::from_int(2, n)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p, &x().pow(2) - &y().pow(2));
        assert_eq!(&p + &MultiPoly::zero(2), p);
    }

    #[test]
    fn coefficients_in_main_variable() {
        let f1 = &(&c(4) * &x().pow(2)) + &(&y().pow(2) - &c(4));
        let cs = f1.coeffs_in(1);
        assert_eq!(cs, vec![c(1), c(0), &(&c(4) * &x().pow(2)) - &c(4)]);
        assert_eq!(c(5).coeffs_in(1), vec![c(5)]);
        let g = &(&x() * &y().pow(2)) + &c(1);
        assert_eq!(g.coeffs_in(1), vec![x(), c(0), c(1)]);
        assert_eq!(MultiPoly::from_coeff_vec(2, 1, &g.coeff_vec(1)), g);
        assert_eq!(g.coeffs_in(0), vec![y().pow(2), c(1)]);
    }

    #[test]
    fn derivative_and_level() {
        let f1 = &(&c(4) * &x().pow(2)) + &(&y().pow(2) - &c(4));
        assert_eq!(f1.derivative(1), &c(2) * &y());
        assert!(c(3).derivative(1).is_zero());
        assert_eq!(f1.level(), 2);
        assert_eq!(x().level(), 1);
        assert_eq!(c(7).level(), 0);
        assert_eq!(f1.degree_in(0), 2);
    }

    #[test]
    fn substitution_clears_denominators() {
        let p = &x().pow(2) + &y();
        let s = p.substitute(0, &rat(1, 2));
        // 4 * (1/4 + y)
        assert_eq!(s, &c(1) + &(&c(4) * &y()));
        assert_eq!(p.eval(&[rat(1, 2), int(3)]), rat(13, 4));
    }

    #[test]
    fn exact_division() {
        let a = &x() - &y();
        let b = &(&x() + &y()) * &a;
        assert_eq!(b.div_exact(&a).unwrap(), &x() + &y());
        assert!(b.div_exact(&(&x() + &c(1))).is_none());
        assert_eq!((&c(6) * &x()).primitive_int(), x());
        assert_eq!((&c(-6) * &x()).primitive_int(), x());
    }

    #[test]
    fn rendering() {
        let vo = VarOrder::new(&["x", "y"]).unwrap();
        let f1 = &(&c(4) * &x().pow(2)) + &(&y().pow(2) - &c(4));
        assert_eq!(f1.render(&vo), "4*x^2 + y^2 - 4");
        assert!(VarOrder::new(&["x", "x"]).is_err());
        assert!(poly_ring_ops(&x(), &MultiPoly::var(3, 0), RingOp::Add).is_err());
    }
}
