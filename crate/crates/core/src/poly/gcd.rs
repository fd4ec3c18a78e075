//! Multivariate gcd, content and squarefree decomposition over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::resultant::last_subresultant;
use super::upoly::ZPoly;
use super::MultiPoly;

const PRIME: u64 = (1u64 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn addm(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn reduce(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(PRIME)).to_u64().expect("residue fits")
}

// Image of p in GF(P)[x_v] after evaluating every other variable at `point`.
fn image(p: &MultiPoly, v: usize, point: &[u64]) -> Vec<u64> {
    let d = p.degree_in(v) as usize;
    let mut out = vec![0u64; d + 1];
    for (e, c) in p.terms() {
        let mut t = reduce(c);
        for (i, &k) in e.iter().enumerate() {
            if i != v && k > 0 {
                t = mulm(t, powm(point[i], k as u64));
            }
        }
        out[e[v] as usize] = addm(out[e[v] as usize], t);
    }
    out
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem_mod(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = powm(*b.last().expect("nonzero"), PRIME - 2);
    while r.len() > db {
        let k = r.len() - 1;
        let c = mulm(r[k], inv);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k - db + j] = addm(r[k - db + j], PRIME - mulm(c, bj));
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn gcd_degree_mod(a: Vec<u64>, b: Vec<u64>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem_mod(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Cheap certificate of coprimality for two polynomials with positive degree
/// in `v`: an evaluation image with preserved degrees whose gcd is constant
/// forces the true gcd to be free of `v`. `false` means "unknown".
pub fn coprime_in_var_hint(a: &MultiPoly, b: &MultiPoly, v: usize, seed: u64) -> bool {
    let nv = a.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..2 {
        let point: Vec<u64> = (0..nv).map(|_| rng.gen_range(1..PRIME)).collect();
        let ia = trim(image(a, v, &point));
        let ib = trim(image(b, v, &point));
        if ia.len() != a.degree_in(v) as usize + 1 || ib.len() != b.degree_in(v) as usize + 1 {
            continue;
        }
        return gcd_degree_mod(ia, ib) == 0;
    }
    false
}

fn to_coeffs(p: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let mut c = p.coeff_vec(v);
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

/// Gcd of a list of polynomials, primitive with positive leading term.
pub fn gcd_many(ps: &[MultiPoly]) -> MultiPoly {
    let nv = ps.first().map(|p| p.nvars()).unwrap_or(0);
    let mut nonzero: Vec<&MultiPoly> = ps.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return MultiPoly::zero(nv);
    }
    // small and constant ones first: they end the search early
    nonzero.sort_by_key(|p| (p.level(), p.num_terms()));
    let mut g = nonzero[0].primitive_int();
    for p in &nonzero[1..] {
        if g.is_constant() {
            return MultiPoly::one(nv);
        }
        g = gcd(&g, p);
    }
    if g.is_constant() {
        MultiPoly::one(nv)
    } else {
        g
    }
}

/// Content with respect to `v`: gcd of the coefficients in `v`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let cs = to_coeffs(p, v);
    if cs.iter().any(|c| c.is_constant() && !c.is_zero()) {
        return MultiPoly::one(p.nvars());
    }
    gcd_many(&cs)
}

/// Splits off the content in the main variable: `(content, primitive part)`,
/// both primitive over the integers with positive leading terms.
pub fn primitive_in_main(p: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let nv = p.nvars();
    let lvl = p.level();
    if lvl == 0 {
        return (MultiPoly::one(nv), p.primitive_int());
    }
    let c = content_in(p, lvl - 1);
    if c.is_constant() {
        return (MultiPoly::one(nv), p.primitive_int());
    }
    let q = p.primitive_int().div_exact(&c).expect("content divides").primitive_int();
    (c, q)
}

/// Greatest common divisor, primitive over the integers with positive leading term.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let nv = a.nvars();
    if a.is_zero() {
        return b.primitive_int();
    }
    if b.is_zero() {
        return a.primitive_int();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(nv);
    }
    if a == b {
        return a.primitive_int();
    }
    let la = a.level();
    let lb = b.level();
    if la != lb {
        // the higher one contributes only its content
        let (hi, lo) = if la > lb { (a, b) } else { (b, a) };
        let c = content_in(hi, hi.level() - 1);
        return gcd(&c, lo);
    }
    let v = la - 1;
    if a.degree_in(v) == 0 || b.degree_in(v) == 0 {
        unreachable!("level implies positive degree");
    }
    let (ca, pa) = primitive_in_main(a);
    let (cb, pb) = primitive_in_main(b);
    let cg = gcd(&ca, &cb);
    let pg = gcd_primitive(&pa, &pb, v);
    cg.mul(&pg).primitive_int()
}

// Both primitive in v with positive degree in v.
fn gcd_primitive(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let nv = a.nvars();
    if a == b {
        return a.clone();
    }
    if coprime_in_var_hint(a, b, v, 0x9cd_1) {
        return MultiPoly::one(nv);
    }
    // divisibility shortcuts
    let (small, big) = if a.degree_in(v) <= b.degree_in(v) { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return small.clone();
    }
    if univariate(a) && univariate(b) {
        let za = ZPoly::from_multi(a, v);
        let zb = ZPoly::from_multi(b, v);
        return za.gcd(&zb).to_multi(nv, v);
    }
    let last = last_subresultant(big, small, v);
    if last.degree_in(v) == 0 {
        return MultiPoly::one(nv);
    }
    primitive_in_main(&last).1
}

fn univariate(p: &MultiPoly) -> bool {
    p.support_vars().len() <= 1
}

/// Squarefree decomposition in the main variable of a polynomial primitive in
/// that variable: `[(s_i, i)]` with `p = c · Π s_i^i`, parts of degree 0 dropped.
pub fn squarefree_decomposition_main(p: &MultiPoly) -> Vec<(MultiPoly, u32)> {
    let lvl = p.level();
    if lvl == 0 {
        return Vec::new();
    }
    let v = lvl - 1;
    let p = p.primitive_int();
    let dp = p.derivative(v);
    if coprime_in_var_hint(&p, &dp, v, 0x51f) {
        return vec![(p, 1)];
    }
    // Yun over Q(lower vars)[v]; all gcds primitive in v
    let a0 = gcd(&p, &dp);
    if a0.degree_in(v) == 0 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut b = quotient(&p, &a0);
    let mut c = quotient(&dp, &a0);
    let mut d = c.sub(&b.derivative(v));
    let mut i = 1;
    while b.degree_in(v) > 0 {
        let a = if d.is_zero() { b.primitive_int() } else { gcd(&b, &d) };
        if a.degree_in(v) > 0 {
            out.push((primitive_in_main(&a).1, i));
        }
        let nb = quotient(&b, &a);
        c = if d.is_zero() { d.clone() } else { quotient(&d, &a) };
        b = nb;
        d = c.sub(&b.derivative(v));
        i += 1;
    }
    out
}

// a / b where b divides a up to a rational constant; result scaled to integers.
fn quotient(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if let Some(q) = a.div_exact(b) {
        return q;
    }
    // scale a by lc powers until the division is integral
    let lb = b.leading_int().expect("nonzero").abs();
    let mut s = lb.clone();
    for _ in 0..64 {
        if let Some(q) = a.scale(&s).div_exact(b) {
            return q;
        }
        s *= &lb;
    }
    panic!("non-exact polynomial quotient");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::from_int(3, n)
    }

    #[test]
    fn gcd_examples() {
        let a = &v(0) + &v(2);
        let b = &(&v(1) * &v(2)) - &c(1);
        let p = &a * &b;
        let q = &a * &(&v(2) + &c(3));
        assert_eq!(gcd(&p, &q), a);
        assert!(gcd(&b, &(&v(2) + &c(3))).is_constant());
        // content in the main variable
        let r = &(&v(0) * &v(2)) + &v(0);
        assert_eq!(content_in(&r, 2), v(0));
        assert_eq!(primitive_in_main(&r).1, &v(2) + &c(1));
    }

    #[test]
    fn squarefree_parts() {
        let a = &(&v(0) * &v(2)) + &c(1);
        let b = &v(2) - &v(1);
        let p = &(&a * &a) * &b;
        let d = squarefree_decomposition_main(&p);
        assert_eq!(d.len(), 2);
        assert!(d.contains(&(b.clone(), 1)));
        assert!(d.contains(&(a.clone(), 2)));
    }
}
