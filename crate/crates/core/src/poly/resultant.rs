//! Subresultant PRS over `Z[x_1..][v]`: resultants, discriminants and
//! principal subresultant coefficients.
//!
//! Conventions: `res(f, g)` is the determinant of the Sylvester matrix with the
//! rows of `f` first; `disc(f) = res(f, ∂f/∂v)` with no leading-coefficient
//! division; `psc_j(f, g)` is the determinant of the leading `m+n-2j` columns of
//! the j-th subresultant matrix (again `f` rows first).

use super::{MultiPoly, PolyError};

type Coeffs = Vec<MultiPoly>;

fn deg(a: &Coeffs) -> usize {
    a.len() - 1
}

fn is_zero_c(a: &Coeffs) -> bool {
    a.is_empty()
}

fn trim(mut a: Coeffs) -> Coeffs {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn lc(a: &Coeffs) -> &MultiPoly {
    a.last().expect("nonzero")
}

/// Pseudo-remainder `lc(g)^(deg f - deg g + 1) f mod g`.
fn prem(f: &Coeffs, g: &Coeffs) -> Coeffs {
    let dg = deg(g);
    if f.len() < g.len() {
        return f.clone();
    }
    let lg = lc(g);
    let mut r = f.clone();
    let mut steps = deg(f) - dg + 1;
    while !r.is_empty() && r.len() > dg {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for x in r.iter_mut() {
            *x = x.mul(lg);
        }
        let shift = k - dg;
        for (j, gj) in g.iter().enumerate() {
            if !gj.is_zero() {
                r[shift + j] = r[shift + j].sub(&lr.mul(gj));
            }
        }
        r.pop();
        r = trim(r);
        steps -= 1;
    }
    if steps > 0 && !r.is_empty() {
        let s = lg.pow(steps as u32);
        for x in r.iter_mut() {
            *x = x.mul(&s);
        }
    }
    r
}

fn mul_ground(a: &Coeffs, c: &MultiPoly) -> Coeffs {
    a.iter().map(|x| x.mul(c)).collect()
}

fn quo_ground(a: &Coeffs, c: &MultiPoly) -> Coeffs {
    a.iter().map(|x| x.div_exact(c).expect("exact subresultant division")).collect()
}

/// Subresultant PRS of `f, g` with `deg f >= deg g >= 0` (both nonzero).
/// Returns the sequence and, aligned with it, the principal subresultant
/// coefficient of each member's degree (the first entry is the conventional 1).
fn inner_subresultants(f: &Coeffs, g: &Coeffs) -> (Vec<Coeffs>, Vec<MultiPoly>) {
    let nv = f[0].nvars();
    let n = deg(f);
    let m = deg(g);
    debug_assert!(n >= m);
    let mut r = vec![f.clone(), g.clone()];
    let d0 = n - m;
    let b = if (d0 + 1) % 2 == 0 { MultiPoly::one(nv) } else { MultiPoly::from_int(nv, -1) };
    let mut h = mul_ground(&prem(f, g), &b);
    let mut lcg = lc(g).clone();
    let mut c = lcg.pow(d0 as u32);
    let mut s = vec![MultiPoly::one(nv), c.clone()];
    c = c.neg();
    let mut fcur;
    let mut gcur = g.clone();
    let mut mcur = m;
    while !is_zero_c(&h) {
        let k = deg(&h);
        r.push(h.clone());
        fcur = gcur;
        gcur = h;
        let d = mcur - k;
        mcur = k;
        let b = lcg.neg().mul(&c.pow(d as u32));
        h = prem(&fcur, &gcur);
        h = quo_ground(&h, &b);
        lcg = lc(&gcur).clone();
        if d > 1 {
            let q = c.pow((d - 1) as u32);
            c = lcg.neg().pow(d as u32).div_exact(&q).expect("exact subresultant division");
        } else {
            c = lcg.neg();
        }
        s.push(c.neg());
    }
    (r, s)
}

/// Last nonzero member of the subresultant PRS in `v`; for `f, g` of positive
/// degree in `v` its primitive part in `v` is their gcd up to content.
pub fn last_subresultant(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let (a, b) = (to_coeffs(f, v), to_coeffs(g, v));
    let (a, b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let (seq, _) = inner_subresultants(&a, &b);
    MultiPoly::from_coeff_vec(f.nvars(), v, seq.last().expect("nonempty"))
}

/// Subresultant PRS in `v` of `f` and `g`, both of positive degree in `v`,
/// the higher-degree one first, and the principal subresultant coefficient
/// of each member's degree.
pub fn subresultant_prs(f: &MultiPoly, g: &MultiPoly, v: usize) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
    let (a, b) = (to_coeffs(f, v), to_coeffs(g, v));
    let (a, b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let (seq, pscs) = inner_subresultants(&a, &b);
    (seq.iter().map(|c| MultiPoly::from_coeff_vec(f.nvars(), v, c)).collect(), pscs)
}

fn to_coeffs(p: &MultiPoly, v: usize) -> Coeffs {
    trim(p.coeff_vec(v))
}

fn sign_for_swap(n: usize, m: usize, j: usize) -> bool {
    ((n - j) * (m - j)) % 2 == 1
}

/// Resultant of `f` and `g` with respect to variable `v`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, v: usize) -> Result<MultiPoly, PolyError> {
    f.check_same_ring(g)?;
    let nv = f.nvars();
    if f.is_zero() || g.is_zero() {
        return Ok(MultiPoly::zero(nv));
    }
    let n = f.degree_in(v) as usize;
    let m = g.degree_in(v) as usize;
    if n == 0 && m == 0 {
        return Err(PolyError::ConstantInVariable);
    }
    if m == 0 {
        return Ok(g.pow(n as u32));
    }
    if n == 0 {
        return Ok(f.pow(m as u32));
    }
    let (fc, gc, swapped) = if n >= m { (to_coeffs(f, v), to_coeffs(g, v), false) } else { (to_coeffs(g, v), to_coeffs(f, v), true) };
    let (r, s) = inner_subresultants(&fc, &gc);
    let last = r.last().expect("nonempty");
    let res = if deg(last) > 0 { MultiPoly::zero(nv) } else { s.last().expect("nonempty").clone() };
    Ok(if swapped && (n * m) % 2 == 1 { res.neg() } else { res })
}

/// `[psc_0, …, psc_{d-1}]` with `d = min(deg f, deg g)`.
pub fn psc_sequence(f: &MultiPoly, g: &MultiPoly, v: usize) -> Result<Vec<MultiPoly>, PolyError> {
    f.check_same_ring(g)?;
    let nv = f.nvars();
    let n = f.degree_in(v) as usize;
    let m = g.degree_in(v) as usize;
    if f.is_zero() || g.is_zero() || n.min(m) == 0 {
        return Err(PolyError::ConstantInVariable);
    }
    let d = n.min(m);
    let (fc, gc, swapped) = if n >= m { (to_coeffs(f, v), to_coeffs(g, v), false) } else { (to_coeffs(g, v), to_coeffs(f, v), true) };
    let (r, s) = inner_subresultants(&fc, &gc);
    let mut out = vec![MultiPoly::zero(nv); d];
    for (member, coeff) in r.iter().zip(s.iter()).skip(2) {
        let k = deg(member);
        if k < d {
            out[k] = coeff.clone();
        }
    }
    // psc_j(g, f) = (-1)^((n-j)(m-j)) psc_j(f, g)
    if swapped {
        for (j, x) in out.iter_mut().enumerate() {
            if sign_for_swap(n, m, j) {
                *x = x.neg();
            }
        }
    }
    Ok(out)
}

/// `res(f, ∂f/∂v)`.
pub fn discriminant(f: &MultiPoly, v: usize) -> Result<MultiPoly, PolyError> {
    if f.degree_in(v) < 2 {
        return Err(PolyError::DegreeTooSmall);
    }
    resultant(f, &f.derivative(v), v)
}

/// Index of the first entry that is nonzero under `nonzero_at`, if any.
pub fn truncation_index<F: FnMut(&MultiPoly) -> bool>(seq: &[MultiPoly], mut nonzero_at: F) -> Option<usize> {
    seq.iter().position(|p| !p.is_zero() && nonzero_at(p))
}

/// `PSC(f, g, ā)`: `psc_0..psc_l` where `l` is the first index with
/// `psc_l(ā) != 0`, or the full sequence when all vanish at ā.
pub fn truncated_psc<F: FnMut(&MultiPoly) -> bool>(f: &MultiPoly, g: &MultiPoly, v: usize, nonzero_at: F) -> Result<Vec<MultiPoly>, PolyError> {
    let seq = psc_sequence(f, g, v)?;
    Ok(match truncation_index(&seq, nonzero_at) {
        Some(l) => seq[..=l].to_vec(),
        None => seq,
    })
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

    fn f1() -> MultiPoly {
        &(&(&c(4) * &x().pow(2)) + &y().pow(2)) - &c(4)
    }
    fn f2() -> MultiPoly {
        &(&x().pow(2) + &y().pow(2)) - &c(1)
    }

    #[test]
    fn example_values() {
        let r = resultant(&f1(), &f2(), 1).unwrap();
        let x21 = &x().pow(2) - &c(1);
        assert_eq!(r, &c(9) * &x21.pow(2));
        assert_eq!(discriminant(&f1(), 1).unwrap(), &c(16) * &x21);
        assert_eq!(discriminant(&f2(), 1).unwrap(), &c(4) * &x21);
        assert_eq!(psc_sequence(&f1(), &f2(), 1).unwrap()[0], r);
    }

    #[test]
    fn linear_resultant_sign() {
        // res_x(x - a, x - b) = a - b with a = x1, b = x2 as coefficients
        let nv = 3;
        let xv = MultiPoly::var(nv, 2);
        let a = MultiPoly::var(nv, 0);
        let b = MultiPoly::var(nv, 1);
        let r = resultant(&(&xv - &a), &(&xv - &b), 2).unwrap();
        // Sylvester [[1, -a], [1, -b]] has determinant a - b
        assert_eq!(r, &a - &b);
    }

    #[test]
    fn psc_small() {
        // f = y^2 + x, g = y + 1: psc_0 = x + 1
        let f = &y().pow(2) + &x();
        let g = &y() + &c(1);
        assert_eq!(psc_sequence(&f, &g, 1).unwrap(), vec![&x() + &c(1)]);
        assert_eq!(psc_sequence(&g, &f, 1).unwrap(), vec![&x() + &c(1)]);
        assert!(psc_sequence(&c(1), &g, 1).is_err());
    }
}
