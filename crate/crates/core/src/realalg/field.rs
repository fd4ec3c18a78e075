//! Real number fields `Q(θ)` given by a primitive element, with exact zero
//! tests and interval-refined signs.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::number::{eval_interval, roots_of_irreducible, separate_all, RealNum};
use crate::exact::BigRat;
use crate::poly::factor::irreducible_factors;
use crate::poly::resultant::subresultant_prs;
use crate::poly::{resultant, MultiPoly, QPoly, ZPoly};

/// `Q(θ)` with `θ` a real root of the irreducible `min`. Elements are rational
/// polynomials in `θ` reduced modulo `min`; the degree-1 field is `Q` itself
/// and all its elements are constants.
#[derive(Clone, Debug)]
pub struct NumberField {
    min: QPoly,
    gen: RealNum,
}

/// Polynomial in one variable over a number field, ascending, trimmed.
pub type KPoly = Vec<QPoly>;

impl NumberField {
    pub fn rationals() -> Self {
        NumberField { min: QPoly::x(), gen: RealNum::Rat(BigRat::zero()) }
    }

    /// `Q(alpha)` for a real algebraic number.
    pub fn generated_by(alpha: &RealNum) -> Self {
        match alpha {
            RealNum::Rat(_) => Self::rationals(),
            RealNum::Alg(a) => NumberField { min: QPoly::from_z(a.poly()).monic(), gen: alpha.clone() },
        }
    }

    pub fn degree(&self) -> usize {
        self.min.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn generator(&self) -> &RealNum {
        &self.gen
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min
    }

    pub fn reduce(&self, p: &QPoly) -> QPoly {
        if p.degree() < self.degree() || p.is_zero() {
            return p.clone();
        }
        p.rem(&self.min)
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        if let Some(c) = a.constant_value() {
            return b.scale(&c);
        }
        if let Some(c) = b.constant_value() {
            return a.scale(&c);
        }
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &QPoly) -> QPoly {
        assert!(!a.is_zero(), "inverting zero in a number field");
        if let Some(c) = a.constant_value() {
            return QPoly::constant(c.recip());
        }
        // solve a·s = 1 for the coordinates of s, fraction-free over the integers
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut col = self.reduce(a);
        for _ in 0..d {
            cols.push(col.clone());
            col = self.reduce(&col.mul(&QPoly::x()));
        }
        let mut m: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRat> = cols.iter().map(|c| c.coeff(i)).collect();
                row.push(if i == 0 { BigRat::from_integer(BigInt::from(1)) } else { BigRat::zero() });
                let den = row.iter().fold(BigInt::from(1), |l, x| num_integer::Integer::lcm(&l, x.denom()));
                row.iter().map(|x| (x * BigRat::from_integer(den.clone())).to_integer()).collect()
            })
            .collect();
        let mut prev = BigInt::from(1);
        for k in 0..d {
            let p = (k..d).find(|&r| !m[r][k].is_zero()).expect("a nonzero element is invertible");
            m.swap(k, p);
            for r in k + 1..d {
                for c in k + 1..=d {
                    let v = (&m[r][c] * &m[k][k] - &m[r][k] * &m[k][c]) / &prev;
                    m[r][c] = v;
                }
                m[r][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let mut x = vec![BigRat::zero(); d];
        for k in (0..d).rev() {
            let mut acc = BigRat::from_integer(m[k][d].clone());
            for c in k + 1..d {
                acc -= BigRat::from_integer(m[k][c].clone()) * &x[c];
            }
            x[k] = acc / BigRat::from_integer(m[k][k].clone());
        }
        QPoly::new(x)
    }

    /// Exact sign of an element.
    pub fn sign(&self, a: &QPoly) -> i32 {
        if a.is_zero() {
            return 0;
        }
        if let Some(c) = a.constant_value() {
            return if c.is_positive() { 1 } else { -1 };
        }
        match &self.gen {
            RealNum::Rat(x) => {
                let v = a.eval(x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            }
            RealNum::Alg(g) => loop {
                let (lo, hi) = g.interval();
                let (vl, vh) = eval_interval(a, &lo, &hi);
                if vl.is_positive() {
                    return 1;
                }
                if vh.is_negative() {
                    return -1;
                }
                g.refine();
            },
        }
    }

    /// Rational enclosure of an element at the current precision of `θ`.
    pub fn enclose(&self, a: &QPoly) -> (BigRat, BigRat) {
        if let Some(c) = a.constant_value() {
            return (c.clone(), c);
        }
        let lo = self.gen.lower();
        let hi = self.gen.upper();
        eval_interval(a, &lo, &hi)
    }

    pub fn refine(&self) {
        self.gen.refine();
    }

    // ---- polynomials over the field ----

    pub fn ktrim(&self, mut p: KPoly) -> KPoly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn kmul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![QPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&self.mul(x, y));
            }
        }
        self.ktrim(out)
    }

    pub fn kderivative(&self, a: &KPoly) -> KPoly {
        let out = a.iter().enumerate().skip(1).map(|(i, c)| c.scale(&BigRat::from_integer(BigInt::from(i)))).collect();
        self.ktrim(out)
    }

    pub fn kmonic(&self, a: &KPoly) -> KPoly {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.inv(l);
                a.iter().map(|c| self.mul(c, &inv)).collect()
            }
        }
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn kdivrem(&self, a: &KPoly, b: &KPoly) -> (KPoly, KPoly) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let db = b.len() - 1;
        let inv = self.inv(b.last().expect("nonzero"));
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![QPoly::zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(&r[k], &inv);
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k - db + j] = r[k - db + j].sub(&self.mul(&c, bj));
                }
                q[k - db] = c;
            }
            r.pop();
            r = self.ktrim(r);
        }
        (self.ktrim(q), r)
    }

    /// Monic gcd.
    pub fn kgcd(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let a = self.ktrim(a.clone());
        let b = self.ktrim(b.clone());
        if a.is_empty() || b.is_empty() {
            return self.kmonic(if a.is_empty() { &b } else { &a });
        }
        if a.len() == 1 || b.len() == 1 {
            return vec![QPoly::constant(BigRat::from_integer(BigInt::from(1)))];
        }
        self.kmonic(&self.gcd_of_lifts(&self.lift(&a), &self.lift(&b)))
    }

    /// Integer polynomial in `(t, y)` that is a positive rational multiple of
    /// `a`, with `t` standing for the generator.
    pub fn lift(&self, a: &KPoly) -> MultiPoly {
        let mut den = BigInt::from(1);
        for c in a {
            for x in c.coeffs() {
                den = num_integer::Integer::lcm(&den, x.denom());
            }
        }
        let mut terms = Vec::new();
        for (j, c) in a.iter().enumerate() {
            for (i, x) in c.coeffs().iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let v = (x * BigRat::from_integer(den.clone())).to_integer();
                let mut e = crate::poly::Exps::from_elem(0, 2);
                e[0] = i as u32;
                e[1] = j as u32;
                terms.push((e, v));
            }
        }
        MultiPoly::from_terms(2, terms)
    }

    fn lower(&self, p: &MultiPoly) -> KPoly {
        let cs = p.coeff_vec(1).iter().map(|c| self.reduce(&QPoly::from_z(&ZPoly::from_multi(c, 0)))).collect();
        self.ktrim(cs)
    }

    // Gcd over the field of two lifts of positive degree in y, up to a unit:
    // the lowest member of their subresultant sequence whose principal
    // coefficient survives at the generator.
    fn gcd_of_lifts(&self, f: &MultiPoly, g: &MultiPoly) -> KPoly {
        let (seq, pscs) = subresultant_prs(f, g, 1);
        for (r, s) in seq.iter().zip(pscs.iter()).rev() {
            if r.degree_in(1) == 0 && seq.len() > 2 {
                // the resultant: zero at the generator unless the gcd is trivial
                if !self.reduce(&QPoly::from_z(&ZPoly::from_multi(r, 0))).is_zero() {
                    return vec![QPoly::constant(BigRat::from_integer(BigInt::from(1)))];
                }
                continue;
            }
            if !self.reduce(&QPoly::from_z(&ZPoly::from_multi(s, 0))).is_zero() {
                let out = self.lower(r);
                debug_assert_eq!(out.len() as u32, r.degree_in(1) + 1);
                return out;
            }
        }
        unreachable!("the leading coefficient of a trimmed polynomial is nonzero")
    }

    /// Value at a rational point.
    pub fn keval_rat(&self, a: &KPoly, x: &BigRat) -> QPoly {
        let mut acc = QPoly::zero();
        for c in a.iter().rev() {
            acc = acc.scale(x).add(c);
        }
        acc
    }

    /// Value at a field element.
    pub fn keval(&self, a: &KPoly, x: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in a.iter().rev() {
            acc = self.mul(&acc, x).add(c);
        }
        acc
    }

    /// Adjoins a real algebraic number: returns the extended field, the
    /// images of this field's generator and of `b` in it.
    pub fn extend(&self, b: &RealNum) -> (NumberField, QPoly, QPoly) {
        let b_alg = match b {
            RealNum::Rat(x) => return (self.clone(), self.reduce(&QPoly::x()), QPoly::constant(x.clone())),
            RealNum::Alg(a) => a,
        };
        if self.is_rational() {
            return (NumberField::generated_by(b), QPoly::constant(self.gen.lower()), QPoly::x());
        }
        let mb = b_alg.poly();
        let mz = self.min.to_z_primitive();
        // bivariate ring: t = var 0, y = var 1
        let mb2 = mb.to_multi(2, 1);
        for c in [1i64, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11, 13] {
            let h = compose_shift(&mz, c);
            let r = resultant(&mb2, &h, 1).expect("positive degree in y");
            let rz = ZPoly::from_multi(&r, 0);
            if rz.is_zero() || rz.gcd(&rz.derivative()).degree() > 0 {
                continue;
            }
            let new_gen = self.locate_sum(&rz, b, c);
            let new_field = NumberField::generated_by(&new_gen);
            // b is the unique common root of mb(y) and M(θ' - c y) over Q(θ')
            let g = new_field.gcd_of_lifts(&mb2, &h);
            assert_eq!(g.len(), 2, "primitive element gcd must be linear");
            let beta = new_field.mul(&g[0].neg(), &new_field.inv(&g[1]));
            let theta = new_field.reduce(&QPoly::x().sub(&beta.scale(&BigRat::from_integer(BigInt::from(c)))));
            return (new_field, theta, beta);
        }
        panic!("no primitive element found among the tried shifts");
    }

    // The root of rz equal to θ + c·b.
    fn locate_sum(&self, rz: &ZPoly, b: &RealNum, c: i64) -> RealNum {
        let mut cands: Vec<RealNum> = Vec::new();
        for f in irreducible_factors(rz) {
            cands.extend(roots_of_irreducible(&f));
        }
        cands.sort();
        separate_all(&cands);
        let cr = BigRat::from_integer(BigInt::from(c));
        loop {
            let (tl, th) = (self.gen.lower(), self.gen.upper());
            let (bl, bh) = (b.lower(), b.upper());
            let (sl, sh) = if c > 0 { (&tl + &bl * &cr, &th + &bh * &cr) } else { (&tl + &bh * &cr, &th + &bl * &cr) };
            let hits: Vec<&RealNum> = cands.iter().filter(|x| x.upper() >= sl && x.lower() <= sh).collect();
            if hits.len() == 1 {
                return hits[0].clone();
            }
            assert!(!hits.is_empty(), "sum of generators lost");
            self.gen.refine();
            b.refine();
            for h in hits {
                h.refine();
            }
        }
    }

    /// Substitutes `x ↦ img` into an element of another representation.
    pub fn compose(&self, p: &QPoly, img: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, img).add(&QPoly::constant(c.clone()));
        }
        acc
    }
}

// M(t - c y) as a polynomial in (t, y).
fn compose_shift(m: &ZPoly, c: i64) -> MultiPoly {
    let t = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let arg = t.sub(&y.scale(&BigInt::from(c)));
    let mut acc = MultiPoly::zero(2);
    for k in m.coeffs().iter().rev() {
        acc = acc.mul(&arg).add(&MultiPoly::constant(2, k.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::realalg::number::roots_of_irreducible;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn signs_in_quadratic_field() {
        let s2 = roots_of_irreducible(&z(&[-2, 0, 1]))[1].clone();
        let k = NumberField::generated_by(&s2);
        // θ^2 - 2 reduces to zero
        let t = QPoly::x();
        let sq = k.mul(&t, &t);
        assert_eq!(sq, QPoly::constant(int(2)));
        assert_eq!(k.sign(&t.sub(&QPoly::constant(BigRat::new(3.into(), 2.into())))), -1);
        let inv = k.inv(&t);
        assert_eq!(k.mul(&inv, &t), QPoly::constant(int(1)));
    }

    #[test]
    fn extension_by_second_root() {
        let s2 = roots_of_irreducible(&z(&[-2, 0, 1]))[1].clone();
        let s3 = roots_of_irreducible(&z(&[-3, 0, 1]))[1].clone();
        let k = NumberField::generated_by(&s2);
        let (k2, th, b) = k.extend(&s3);
        assert_eq!(k2.degree(), 4);
        // images satisfy their minimal polynomials and have the right signs
        assert!(k2.reduce(&k2.mul(&th, &th).sub(&QPoly::constant(int(2)))).is_zero());
        assert!(k2.reduce(&k2.mul(&b, &b).sub(&QPoly::constant(int(3)))).is_zero());
        assert_eq!(k2.sign(&th), 1);
        assert_eq!(k2.sign(&b), 1);
        assert_eq!(k2.sign(&b.sub(&th)), 1);
        // extending by an element already in the field keeps the degree
        let m2 = roots_of_irreducible(&z(&[-2, 0, 1]))[0].clone();
        let (k3, _, img) = k.extend(&m2);
        assert_eq!(k3.degree(), 2);
        assert_eq!(k3.sign(&img), -1);
    }
}
