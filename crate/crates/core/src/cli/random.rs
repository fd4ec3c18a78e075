use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Rel, SystemFormula};
use crate::poly::{Exps, MultiPoly, VarOrder};

/// Shape of randomly generated systems `f < 0` or `f <= 0`.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub nvars: usize,
    pub min_terms: usize,
    pub max_terms: usize,
    pub coeff_bits: u32,
    pub degree: u32,
}

impl RandomShape {
    /// Quadratics with 6 to 15 terms and 10-bit coefficients.
    pub fn benchmark(nvars: usize) -> Self {
        RandomShape { nvars, min_terms: 6, max_terms: 15, coeff_bits: 10, degree: 2 }
    }
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; nvars]];
    for _ in 0..degree {
        let mut next = out.clone();
        for m in &out {
            for v in 0..nvars {
                let mut e = m.clone();
                e[v] += 1;
                next.push(e);
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

/// A random polynomial of the given shape; it always has a term of full degree.
pub fn random_poly<R: Rng>(shape: &RandomShape, rng: &mut R) -> MultiPoly {
    let all = monomials(shape.nvars, shape.degree);
    let (top, rest): (Vec<_>, Vec<_>) = all.into_iter().partition(|m| m.iter().sum::<u32>() == shape.degree);
    let terms = rng.gen_range(shape.min_terms..=shape.max_terms).clamp(1, top.len() + rest.len());
    let mut chosen = vec![top.choose(rng).expect("some monomial").clone()];
    let mut pool: Vec<Vec<u32>> = top.into_iter().chain(rest).filter(|m| *m != chosen[0]).collect();
    pool.shuffle(rng);
    chosen.extend(pool.into_iter().take(terms - 1));
    let bound = (1i64 << shape.coeff_bits) - 1;
    let coeff = |rng: &mut R| loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return BigInt::from(c);
        }
    };
    MultiPoly::from_terms(shape.nvars, chosen.into_iter().map(|e| (Exps::from(e), coeff(rng))).collect::<Vec<_>>())
}

/// A system `f < 0` or `f <= 0` over variables `x1, x2, ...`.
pub fn random_system<R: Rng>(shape: &RandomShape, rng: &mut R) -> (VarOrder, SystemFormula) {
    let vars = VarOrder::numbered(shape.nvars);
    let f = random_poly(shape, rng);
    let rel = if rng.gen_bool(0.5) { Rel::Lt } else { Rel::Le };
    (vars, SystemFormula::atom(f, rel))
}
