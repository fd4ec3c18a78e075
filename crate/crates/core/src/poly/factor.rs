//! Factorization of univariate integer polynomials (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::ZPoly;

// ---- arithmetic in GF(p)[x], p < 2^31, ascending coefficient vectors ----

type Gf = Vec<u64>;

fn gf_trim(mut a: Gf) -> Gf {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn gf_from_z(f: &ZPoly, p: u64) -> Gf {
    let pb = BigInt::from(p);
    gf_trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("small residue")).collect())
}

fn gf_sub(a: &Gf, b: &Gf, p: u64) -> Gf {
    let n = a.len().max(b.len());
    gf_trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

fn gf_mul(a: &Gf, b: &Gf, p: u64) -> Gf {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    gf_trim(c)
}

fn gf_monic(a: &Gf, p: u64) -> Gf {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&x| x * inv % p).collect()
        }
    }
}

fn gf_divrem(a: &Gf, b: &Gf, p: u64) -> (Gf, Gf) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().expect("nonzero"), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k] * inv % p;
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k - db + j] = (r[k - db + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(db);
    (gf_trim(q), gf_trim(r))
}

fn gf_rem(a: &Gf, b: &Gf, p: u64) -> Gf {
    gf_divrem(a, b, p).1
}

fn gf_gcd(a: &Gf, b: &Gf, p: u64) -> Gf {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = gf_rem(&a, &b, p);
        a = b;
        b = r;
    }
    gf_monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
fn gf_gcdex(a: &Gf, b: &Gf, p: u64) -> (Gf, Gf, Gf) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = gf_divrem(&r0, &r1, p);
        let s = gf_sub(&s0, &gf_mul(&q, &s1, p), p);
        let t = gf_sub(&t0, &gf_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let inv = inv_mod(*r0.last().expect("nonzero gcd"), p);
    let sc = |v: &Gf| gf_trim(v.iter().map(|&x| x * inv % p).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn gf_powmod(base: &Gf, mut e: u128, m: &Gf, p: u64) -> Gf {
    let mut r: Gf = vec![1];
    let mut b = gf_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = gf_rem(&gf_mul(&r, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = gf_rem(&gf_mul(&b, &b, p), m, p);
        }
    }
    r
}

fn gf_derivative(a: &Gf, p: u64) -> Gf {
    gf_trim(a.iter().enumerate().skip(1).map(|(i, &x)| (i as u64 % p) * x % p).collect())
}

fn gf_is_squarefree(a: &Gf, p: u64) -> bool {
    let d = gf_derivative(a, p);
    !d.is_empty() && gf_gcd(a, &d, p).len() == 1
}

// primes below 2^31 for the modular shortcuts
const CHECK_PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

// Reduction mod p when it keeps the degree.
fn gf_image(f: &ZPoly, p: u64) -> Option<Gf> {
    let g = gf_from_z(f, p);
    (g.len() == f.degree() + 1).then_some(g)
}

/// True when a modular image proves `f` squarefree; false means unknown.
pub(crate) fn squarefree_mod_p(f: &ZPoly) -> bool {
    CHECK_PRIMES.iter().any(|&p| gf_image(f, p).is_some_and(|g| f.degree() < p as usize && gf_is_squarefree(&g, p)))
}

/// True when a modular image proves `a` and `b` coprime; false means unknown.
pub(crate) fn coprime_mod_p(a: &ZPoly, b: &ZPoly) -> bool {
    CHECK_PRIMES.iter().any(|&p| match (gf_image(a, p), gf_image(b, p)) {
        (Some(x), Some(y)) => gf_gcd(&x, &y, p).len() == 1,
        _ => false,
    })
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn gf_ddf(f: &Gf, p: u64) -> Vec<(Gf, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Gf = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while 2 * i <= f.len() - 1 {
        h = gf_powmod(&h, p as u128, &f, p);
        let g = gf_gcd(&f, &gf_sub(&h, &x, p), p);
        if g.len() > 1 {
            out.push((g.clone(), i));
            f = gf_divrem(&f, &g, p).0;
            h = gf_rem(&h, &f, p);
        }
        i += 1;
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus), odd p.
fn gf_edf(f: &Gf, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Gf> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: Gf = gf_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        // a^((p^d - 1)/2) = (a · a^p · … · a^(p^(d-1)))^((p-1)/2)
        let mut t = a.clone();
        let mut r = a.clone();
        for _ in 1..d {
            t = gf_powmod(&t, p as u128, f, p);
            r = gf_rem(&gf_mul(&r, &t, p), f, p);
        }
        let mut b = gf_powmod(&r, ((p - 1) / 2) as u128, f, p);
        if b.is_empty() {
            continue;
        }
        b[0] = (b[0] + p - 1) % p;
        let b = gf_trim(b);
        let g = gf_gcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = gf_divrem(f, &g, p).0;
            let mut out = gf_edf(&g, d, p, rng);
            out.extend(gf_edf(&gf_monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn gf_factor_sqf(f: &Gf, p: u64, rng: &mut ChaCha8Rng) -> Vec<Gf> {
    let f = gf_monic(f, p);
    let mut out = Vec::new();
    for (g, d) in gf_ddf(&f, p) {
        out.extend(gf_edf(&g, d, p, rng));
    }
    out
}

// ---- Hensel lifting over the integers ----

fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zp_trunc(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|c| sym_mod(c, m)).collect())
}

fn z_from_gf(a: &Gf) -> ZPoly {
    ZPoly::new(a.iter().map(|&x| BigInt::from(x)).collect())
}

// Division by a monic polynomial modulo m.
fn zp_divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.lc().is_one());
    if a.is_zero() || a.degree() < b.degree() {
        return (ZPoly::zero(), zp_trunc(a, m));
    }
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let db = b.degree();
    let mut q = vec![BigInt::zero(); a.degree() - db + 1];
    for k in (db..r.len()).rev() {
        let c = r[k].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            r[k - db + j] -= &c * bj;
        }
        q[k - db] = c;
    }
    r.truncate(db);
    (zp_trunc(&ZPoly::new(q), m), zp_trunc(&ZPoly::new(r), m))
}

// One quadratic Hensel step: from f ≡ g h, s g + t h ≡ 1 (mod m) to mod m^2.
// g, h monic-ish as required by the division steps (h monic).
fn hensel_step(m: &BigInt, f: &ZPoly, g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let mm = m * m;
    let e = zp_trunc(&f.sub(&g.mul(h)), &mm);
    let (q, r) = zp_divrem_monic(&zp_trunc(&s.mul(&e), &mm), h, &mm);
    let u = zp_trunc(&t.mul(&e).add(&q.mul(g)), &mm);
    let gg = zp_trunc(&g.add(&u), &mm);
    let hh = zp_trunc(&h.add(&r), &mm);
    let b = zp_trunc(&s.mul(&gg).add(&t.mul(&hh)).sub(&ZPoly::from_i64(&[1])), &mm);
    let (c, d) = zp_divrem_monic(&zp_trunc(&s.mul(&b), &mm), &hh, &mm);
    let u2 = zp_trunc(&t.mul(&b).add(&c.mul(&gg)), &mm);
    let ss = zp_trunc(&s.sub(&d), &mm);
    let tt = zp_trunc(&t.sub(&u2), &mm);
    (gg, hh, ss, tt)
}

// Lifts f ≡ lc(f) · Π factors (mod p) to modulus >= p^l; factors monic mod p.
fn hensel_lift(p: u64, f: &ZPoly, factors: &[Gf], l: u32) -> Vec<ZPoly> {
    let pl = BigInt::from(p).pow(l);
    let r = factors.len();
    if r == 1 {
        let lc = f.lc().mod_floor(&pl);
        let inv = lc.modinv(&pl).expect("lc invertible");
        return vec![zp_trunc(&f.scale(&inv), &pl)];
    }
    let k = r / 2;
    let d = (l as f64).log2().ceil() as u32;
    let pb = BigInt::from(p);
    let lc_mod = f.lc().mod_floor(&pb).to_u64().expect("small");
    let mut g: Gf = vec![lc_mod];
    for fi in &factors[..k] {
        g = gf_mul(&g, fi, p);
    }
    let mut h: Gf = factors[k].clone();
    for fi in &factors[k + 1..] {
        h = gf_mul(&h, fi, p);
    }
    let (_, s, t) = gf_gcdex(&g, &h, p);
    let mut gz = zp_trunc(&z_from_gf(&g), &pb);
    let mut hz = zp_trunc(&z_from_gf(&h), &pb);
    let mut sz = zp_trunc(&z_from_gf(&s), &pb);
    let mut tz = zp_trunc(&z_from_gf(&t), &pb);
    let mut m = pb.clone();
    for _ in 0..d.max(1) {
        let (a, b, c, e) = hensel_step(&m, f, &gz, &hz, &sz, &tz);
        gz = a;
        hz = b;
        sz = c;
        tz = e;
        m = &m * &m;
    }
    let mut out = hensel_lift(p, &gz, &factors[..k], l);
    out.extend(hensel_lift(p, &hz, &factors[k..], l));
    out
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

// Primitive, squarefree, degree >= 2, nonzero constant term.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ n as u64);
    // pick the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Gf>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        if (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = gf_from_z(f, p);
        if fp.len() != n + 1 || !gf_is_squarefree(&fp, p) {
            continue;
        }
        let fs = gf_factor_sqf(&fp, p, &mut rng);
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, modular) = match best {
        Some(b) => b,
        None => return zassenhaus_large_prime(f),
    };
    recombine(f, p, modular)
}

// Fallback when every small prime divides the discriminant or leading coefficient.
fn zassenhaus_large_prime(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(0xbead);
    let mut p: u64 = 181;
    loop {
        p += 2;
        if !is_prime(p) {
            continue;
        }
        if (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = gf_from_z(f, p);
        if fp.len() != n + 1 || !gf_is_squarefree(&fp, p) {
            continue;
        }
        let fs = gf_factor_sqf(&fp, p, &mut rng);
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        return recombine(f, p, fs);
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn recombine(f: &ZPoly, p: u64, modular: Vec<Gf>) -> Vec<ZPoly> {
    let n = f.degree();
    // factor coefficient bound: 2^n * ||f||_2 * |lc| (loose Mignotte), doubled for sign
    let norm2 = {
        let s: BigInt = f.coeffs().iter().map(|c| c * c).sum();
        s.sqrt() + 1u32
    };
    let b = f.lc().abs();
    let bound: BigInt = (BigInt::one() << n) * norm2 * &b * 2u32 + 1u32;
    let pb = BigInt::from(p);
    let mut l = 1u32;
    let mut pl = pb.clone();
    while pl <= bound {
        pl *= &pb;
        l += 1;
    }
    let lifted = hensel_lift(p, f, &modular, l);
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut f = f.clone();
    let mut factors = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        let lc = f.lc().clone();
        for subset in combinations(&remaining, s) {
            // constant-term filter
            let mut q = lc.clone();
            for &i in &subset {
                q = sym_mod(&(q * lifted[i].coeff(0)), &pl);
            }
            let fc = f.coeff(0) * &lc;
            if q.is_zero() || !(fc % &q).is_zero() {
                continue;
            }
            let mut g = ZPoly::constant(lc.clone());
            for &i in &subset {
                g = zp_trunc(&g.mul(&lifted[i]), &pl);
            }
            let g = g.primitive();
            if g.degree() == 0 {
                continue;
            }
            if let Some(h) = f.div_exact(&g) {
                factors.push(g);
                f = h.primitive();
                remaining.retain(|i| !subset.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f.degree() > 0 {
        factors.push(f);
    }
    factors
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Irreducible factors over the rationals of a nonzero integer polynomial,
/// with multiplicities. Factors are primitive with positive leading
/// coefficient and sorted; constants are dropped.
pub fn factor_z(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut out: Vec<(ZPoly, u32)> = Vec::new();
    for (s, m) in f.primitive().squarefree_decomposition() {
        let mut s = s;
        // powers of x
        if s.coeff(0).is_zero() {
            out.push((ZPoly::from_i64(&[0, 1]), m));
            s = ZPoly::new(s.coeffs()[1..].to_vec());
        }
        if s.degree() == 0 {
            continue;
        }
        let parts = if s.degree() == 1 { vec![s.primitive()] } else { zassenhaus(&s.primitive()) };
        for g in parts {
            out.push((g.primitive(), m));
        }
    }
    out.sort();
    out
}

/// Irreducible factors without multiplicities.
pub fn irreducible_factors(f: &ZPoly) -> Vec<ZPoly> {
    factor_z(f).into_iter().map(|(g, _)| g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    fn product(fs: &[(ZPoly, u32)]) -> ZPoly {
        let mut p = z(&[1]);
        for (g, m) in fs {
            for _ in 0..*m {
                p = p.mul(g);
            }
        }
        p
    }

    #[test]
    fn factors_small_examples() {
        assert_eq!(irreducible_factors(&z(&[-16, 0, 16])), vec![z(&[-1, 1]), z(&[1, 1])]);
        assert_eq!(irreducible_factors(&z(&[1, 0, 1])), vec![z(&[1, 0, 1])]);
        // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
        let f = irreducible_factors(&z(&[4, 0, 0, 0, 1]));
        assert_eq!(f.len(), 2);
        // Swinnerton-Dyer style: x^4 - 10x^2 + 1 is irreducible but splits mod every prime
        assert_eq!(irreducible_factors(&z(&[1, 0, -10, 0, 1])).len(), 1);
    }

    #[test]
    fn reconstructs_products() {
        let a = z(&[3, -2, 5]);
        let b = z(&[-7, 0, 0, 2]);
        let c = z(&[1, 1]);
        let f = a.mul(&b).mul(&c).mul(&c).scale(&BigInt::from(-6));
        let fs = factor_z(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f.primitive());
    }

    #[test]
    fn nine_squared_shape() {
        // 9 (x^2 - 1)^2
        let f = z(&[-1, 0, 1]).mul(&z(&[-1, 0, 1])).scale(&BigInt::from(9));
        assert_eq!(factor_z(&f), vec![(z(&[-1, 1]), 2), (z(&[1, 1]), 2)]);
    }
}
