//! Canonical factor bases and the memo caches of the eliminant toolkit.

use std::collections::BTreeSet;
use std::hash::Hash;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use parking_lot::Mutex;
use rustc_hash::FxHashMap;

use super::factor::factor_z;
use super::gcd::{coprime_in_var_hint, gcd, primitive_in_main, squarefree_decomposition_main};
use super::upoly::ZPoly;
use super::{resultant as res_mod, MultiPoly, PolyError};

/// `p = unit · Π f_i^{e_i}` with canonical factors `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(MultiPoly, u32)>,
}

/// Canonical stand-in for the set of irreducible factors of a polynomial set.
///
/// Factors involving a single variable are irreducible over the rationals;
/// the others are primitive in their main variable, squarefree and pairwise
/// coprime. All have coprime integer coefficients and a positive leading
/// term, and are sorted by the canonical polynomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorBasis {
    pub factors: Vec<MultiPoly>,
}

struct Memo<K, V> {
    map: Mutex<FxHashMap<K, V>>,
}

impl<K: Hash + Eq + Clone, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo { map: Mutex::new(FxHashMap::default()) }
    }

    fn get_or(&self, k: &K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.map.lock().get(k) {
            return v.clone();
        }
        // computed outside the lock; a racing insert stores an equal value
        let v = f();
        self.map.lock().insert(k.clone(), v.clone());
        v
    }

    fn clear(&self) {
        self.map.lock().clear();
    }

    fn len(&self) -> usize {
        self.map.lock().len()
    }
}

static FACTOR_CACHE: LazyLock<Memo<MultiPoly, Arc<Factorization>>> = LazyLock::new(Memo::new);
static RES_CACHE: LazyLock<Memo<(MultiPoly, MultiPoly, usize), MultiPoly>> = LazyLock::new(Memo::new);
static DISC_CACHE: LazyLock<Memo<(MultiPoly, usize), MultiPoly>> = LazyLock::new(Memo::new);
static PSC_CACHE: LazyLock<Memo<(MultiPoly, MultiPoly, usize), Arc<Vec<MultiPoly>>>> = LazyLock::new(Memo::new);
static COPRIME_CACHE: LazyLock<Memo<(MultiPoly, MultiPoly), Option<MultiPoly>>> = LazyLock::new(Memo::new);

/// Drops every memoized result.
pub fn clear_caches() {
    FACTOR_CACHE.clear();
    RES_CACHE.clear();
    DISC_CACHE.clear();
    PSC_CACHE.clear();
    COPRIME_CACHE.clear();
}

/// Number of memoized entries across all caches.
pub fn cache_entries() -> usize {
    FACTOR_CACHE.len() + RES_CACHE.len() + DISC_CACHE.len() + PSC_CACHE.len() + COPRIME_CACHE.len()
}

/// Memoized resultant.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, v: usize) -> Result<MultiPoly, PolyError> {
    f.check_same_ring(g)?;
    if f.degree_in(v) == 0 && g.degree_in(v) == 0 {
        return Err(PolyError::ConstantInVariable);
    }
    Ok(RES_CACHE.get_or(&(f.clone(), g.clone(), v), || res_mod::resultant(f, g, v).expect("checked")))
}

/// Memoized discriminant.
pub fn discriminant(f: &MultiPoly, v: usize) -> Result<MultiPoly, PolyError> {
    if f.degree_in(v) < 2 {
        return Err(PolyError::DegreeTooSmall);
    }
    Ok(DISC_CACHE.get_or(&(f.clone(), v), || res_mod::discriminant(f, v).expect("checked")))
}

/// Memoized principal subresultant coefficients.
pub fn psc_sequence(f: &MultiPoly, g: &MultiPoly, v: usize) -> Result<Arc<Vec<MultiPoly>>, PolyError> {
    f.check_same_ring(g)?;
    if f.degree_in(v).min(g.degree_in(v)) == 0 {
        return Err(PolyError::ConstantInVariable);
    }
    Ok(PSC_CACHE.get_or(&(f.clone(), g.clone(), v), || Arc::new(res_mod::psc_sequence(f, g, v).expect("checked"))))
}

/// `PSC(f, g, ā)`, with the point supplied as a nonvanishing predicate.
pub fn truncated_psc<F: FnMut(&MultiPoly) -> bool>(f: &MultiPoly, g: &MultiPoly, v: usize, nonzero_at: F) -> Result<Vec<MultiPoly>, PolyError> {
    let seq = psc_sequence(f, g, v)?;
    Ok(match res_mod::truncation_index(&seq, nonzero_at) {
        Some(l) => seq[..=l].to_vec(),
        None => seq.as_ref().clone(),
    })
}

fn single_variable(p: &MultiPoly) -> Option<usize> {
    let s = p.support_vars();
    if s.len() == 1 {
        Some(s[0])
    } else {
        None
    }
}

fn factor_uncached(p: &MultiPoly) -> Factorization {
    let nv = p.nvars();
    if p.is_constant() {
        return Factorization { unit: p.constant_value().expect("constant"), factors: Vec::new() };
    }
    let unit = p.int_content();
    let p = p.div_int(&unit);
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
    if let Some(v) = single_variable(&p) {
        for (g, m) in factor_z(&ZPoly::from_multi(&p, v)) {
            factors.push((g.to_multi(nv, v), m));
        }
    } else {
        let (content, prim) = primitive_in_main(&p);
        if !content.is_constant() {
            let cf = factor_poly(&content);
            factors.extend(cf.factors.iter().cloned());
        }
        for (part, m) in squarefree_decomposition_main(&prim) {
            if let Some(v) = single_variable(&part) {
                for (g, k) in factor_z(&ZPoly::from_multi(&part, v)) {
                    factors.push((g.to_multi(nv, v), k * m));
                }
            } else {
                factors.push((part.primitive_int(), m));
            }
        }
    }
    // the unit absorbs any sign left over by the canonical factors
    let mut prod = MultiPoly::one(nv);
    for (g, m) in &factors {
        prod = prod.mul(&g.pow(*m));
    }
    let sign_fix = if prod.leading_int().is_some_and(|c| num_traits::Signed::is_negative(c)) { -BigInt::one() } else { BigInt::one() };
    factors.sort();
    Factorization { unit: unit * sign_fix, factors }
}

/// Canonical factorization of one polynomial (memoized). Factors of a single
/// polynomial are pairwise coprime.
pub fn factor_poly(p: &MultiPoly) -> Arc<Factorization> {
    FACTOR_CACHE.get_or(p, || Arc::new(factor_uncached(p)))
}

/// Canonical factors of one polynomial, without multiplicities.
pub fn factors_of(p: &MultiPoly) -> Vec<MultiPoly> {
    factor_poly(p).factors.iter().map(|(g, _)| g.clone()).collect()
}

// Nontrivial common factor of two canonical factors of the same level, if any.
fn common_factor(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let lvl = a.level();
    if lvl != b.level() || lvl == 0 {
        return None;
    }
    if a == b {
        return Some(a.clone());
    }
    let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    COPRIME_CACHE.get_or(&key, || {
        let v = lvl - 1;
        // two distinct irreducibles in one variable never share a factor
        if single_variable(a).is_some() && single_variable(b).is_some() {
            return None;
        }
        if coprime_in_var_hint(a, b, v, 0xc0c0) {
            return None;
        }
        let g = gcd(a, b);
        if g.is_constant() {
            None
        } else {
            Some(g)
        }
    })
}

/// Builds the canonical factor basis of a polynomial set; zeros and constants
/// are dropped.
pub fn factor_basis<'a, I: IntoIterator<Item = &'a MultiPoly>>(ps: I) -> FactorBasis {
    let mut queue: Vec<MultiPoly> = Vec::new();
    for p in ps {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        queue.extend(factors_of(p));
    }
    queue.sort();
    queue.dedup();
    queue.reverse();
    let mut basis: BTreeSet<MultiPoly> = BTreeSet::new();
    while let Some(f) = queue.pop() {
        if basis.contains(&f) {
            continue;
        }
        let mut clash: Option<(MultiPoly, MultiPoly)> = None;
        for b in basis.iter() {
            if b.level() != f.level() {
                continue;
            }
            if let Some(g) = common_factor(&f, b) {
                clash = Some((b.clone(), g));
                break;
            }
        }
        match clash {
            None => {
                basis.insert(f);
            }
            Some((b, g)) => {
                basis.remove(&b);
                for piece in [g.clone(), cofactor(&b, &g), cofactor(&f, &g)] {
                    if !piece.is_constant() {
                        queue.extend(factors_of(&piece));
                    }
                }
            }
        }
    }
    FactorBasis { factors: basis.into_iter().collect() }
}

fn cofactor(a: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    match a.div_exact(g) {
        Some(q) => q.primitive_int(),
        None => {
            // g is primitive, so a / g is integral up to the unit
            let q = a.primitive_int().div_exact(g).expect("common factor divides");
            q.primitive_int()
        }
    }
}

impl FactorBasis {
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiPoly> {
        self.factors.iter()
    }

    /// `(level-k factors, the rest)`.
    pub fn level_split(&self, k: usize) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
        level_split(&self.factors, k)
    }

    /// Recovers `p = unit · Π f_i^{e_i}` over this basis by trial division;
    /// `None` if `p` does not factor over the basis.
    pub fn exponents_of(&self, p: &MultiPoly) -> Option<(BigInt, Vec<u32>)> {
        if p.is_zero() {
            return None;
        }
        let mut rest = p.clone();
        let mut exps = vec![0u32; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate() {
            while let Some(q) = rest.div_exact(f) {
                if q.is_zero() {
                    break;
                }
                rest = q;
                exps[i] += 1;
            }
        }
        let unit = rest.constant_value()?;
        if unit.is_zero() {
            return None;
        }
        Some((unit, exps))
    }
}

/// Partitions by whether the level (highest variable index, 1-based) equals `k`.
pub fn level_split(ps: &[MultiPoly], k: usize) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
    let mut at = Vec::new();
    let mut rest = Vec::new();
    for p in ps {
        if p.level() == k {
            at.push(p.clone());
        } else {
            rest.push(p.clone());
        }
    }
    (at, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn example_bases() {
        let x21 = &x().pow(2) - &c(1);
        let b = factor_basis([&(&c(16) * &x21)]);
        assert_eq!(b.factors, vec![&x() - &c(1), &x() + &c(1)]);
        let b2 = factor_basis([&(&c(9) * &x21.pow(2)), &(&c(4) * &x21)]);
        assert_eq!(b2.factors, b.factors);
        let irr = &x().pow(2) + &c(1);
        assert_eq!(factor_basis([&irr]).factors, vec![irr]);
    }

    #[test]
    fn split_by_level() {
        let f1 = &(&(&c(4) * &x().pow(2)) + &y().pow(2)) - &c(4);
        let b = factor_basis([&f1, &(&x().pow(2) - &c(1))]);
        let (at, rest) = b.level_split(2);
        assert_eq!(at, vec![f1]);
        assert_eq!(rest, vec![&x() - &c(1), &x() + &c(1)]);
        assert_eq!(FactorBasis::default().level_split(2), (vec![], vec![]));
    }

    #[test]
    fn coprime_refinement() {
        // (y - x)(y + x) and (y - x)(y + 1) share y - x
        let a = &(&y() - &x()) * &(&y() + &x());
        let b = &(&y() - &x()) * &(&y() + &c(1));
        let basis = factor_basis([&a, &b]);
        assert_eq!(basis.len(), 3);
        let (u, e) = basis.exponents_of(&a.scale(&BigInt::from(-3))).unwrap();
        assert_eq!(u, BigInt::from(-3));
        assert_eq!(e.iter().sum::<u32>(), 2);
    }

    #[test]
    fn factorization_reconstructs() {
        let p = &(&c(-6) * &x()) * &(&y().pow(2) - &x()).pow(2);
        let f = factor_poly(&p);
        let mut prod = MultiPoly::constant(2, f.unit.clone());
        for (g, m) in &f.factors {
            prod = prod.mul(&g.pow(*m));
        }
        assert_eq!(prod, p);
    }
}
