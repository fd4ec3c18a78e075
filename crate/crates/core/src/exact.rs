//! Exact rationals and rational-endpoint intervals.
//!
//! Rationals come from `num-rational`; this module adds the interval type used
//! for isolating and stack intervals, the simplest-rational sample rule, and a
//! few helpers for outward rounding onto dyadic grids.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("empty interval")]
    EmptyInterval,
}

/// Arithmetic operator selector for [`rat_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &BigRat, b: &BigRat, op: RatOp) -> Result<BigRat, ExactError> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// One end of a [`RatInterval`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Endpoint {
    NegInf,
    PosInf,
    Finite(BigRat),
}

impl Endpoint {
    pub fn finite(&self) -> Option<&BigRat> {
        match self {
            Endpoint::Finite(r) => Some(r),
            _ => None,
        }
    }
}

/// Interval with rational (or infinite) endpoints, each open or closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl RatInterval {
    pub fn open(lo: Endpoint, hi: Endpoint) -> Self {
        RatInterval { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn closed(lo: BigRat, hi: BigRat) -> Self {
        RatInterval { lo: Endpoint::Finite(lo), hi: Endpoint::Finite(hi), lo_open: false, hi_open: false }
    }

    pub fn whole_line() -> Self {
        Self::open(Endpoint::NegInf, Endpoint::PosInf)
    }

    pub fn point(x: BigRat) -> Self {
        Self::closed(x.clone(), x)
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => true,
            (Endpoint::Finite(a), Endpoint::Finite(b)) => match a.cmp(b) {
                Ordering::Greater => true,
                Ordering::Equal => self.lo_open || self.hi_open,
                Ordering::Less => false,
            },
            _ => false,
        }
    }

    pub fn contains(&self, x: &BigRat) -> bool {
        let above = match &self.lo {
            Endpoint::NegInf => true,
            Endpoint::PosInf => false,
            Endpoint::Finite(a) => {
                if self.lo_open {
                    x > a
                } else {
                    x >= a
                }
            }
        };
        let below = match &self.hi {
            Endpoint::PosInf => true,
            Endpoint::NegInf => false,
            Endpoint::Finite(b) => {
                if self.hi_open {
                    x < b
                } else {
                    x <= b
                }
            }
        };
        above && below
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match &self.lo {
            Endpoint::NegInf => "-inf".to_string(),
            Endpoint::PosInf => "inf".to_string(),
            Endpoint::Finite(r) => r.to_string(),
        };
        let h = match &self.hi {
            Endpoint::NegInf => "-inf".to_string(),
            Endpoint::PosInf => "inf".to_string(),
            Endpoint::Finite(r) => r.to_string(),
        };
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            l,
            h,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// The rational of smallest denominator strictly inside an open interval;
/// among those the one of smallest absolute numerator, nonnegative on ties.
///
/// Endpoint open/closed flags are ignored: the search is always over the open
/// interval `(lo, hi)`.
pub fn simplest_rational(iv: &RatInterval) -> Result<BigRat, ExactError> {
    simplest_between(&iv.lo, &iv.hi)
}

pub fn simplest_between(lo: &Endpoint, hi: &Endpoint) -> Result<BigRat, ExactError> {
    match (lo, hi) {
        (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => Err(ExactError::EmptyInterval),
        (Endpoint::NegInf, Endpoint::PosInf) => Ok(BigRat::zero()),
        (Endpoint::NegInf, Endpoint::Finite(b)) => {
            if b.is_positive() {
                Ok(BigRat::zero())
            } else {
                // largest integer strictly below b
                Ok(BigRat::from_integer(b.ceil().to_integer() - 1))
            }
        }
        (Endpoint::Finite(a), Endpoint::PosInf) => {
            if a.is_negative() {
                Ok(BigRat::zero())
            } else {
                Ok(BigRat::from_integer(a.floor().to_integer() + 1))
            }
        }
        (Endpoint::Finite(a), Endpoint::Finite(b)) => {
            if a >= b {
                return Err(ExactError::EmptyInterval);
            }
            Ok(simplest_finite(a, b))
        }
    }
}

fn simplest_finite(a: &BigRat, b: &BigRat) -> BigRat {
    if a.is_negative() && b.is_positive() {
        return BigRat::zero();
    }
    if !b.is_positive() {
        return -simplest_positive(&-b, &-a);
    }
    simplest_positive(a, b)
}

// 0 <= a < b, open interval.
fn simplest_positive(a: &BigRat, b: &BigRat) -> BigRat {
    let n = a.floor();
    let next = &n + BigRat::one();
    if &next < b {
        return next;
    }
    // a and b both lie in [n, n + 1]; recurse on reciprocals of the fractional parts.
    let fa = a - &n;
    let fb = b - &n;
    let inner = if fa.is_zero() {
        simplest_between(&Endpoint::Finite(fb.recip()), &Endpoint::PosInf).expect("nonempty")
    } else {
        simplest_positive(&fb.recip(), &fa.recip())
    };
    n + inner.recip()
}

/// Largest multiple of `2^-prec` that is `<= x`.
pub fn round_down(x: &BigRat, prec: u32) -> BigRat {
    if x.denom().is_one() {
        return x.clone();
    }
    let scale = BigInt::one() << prec;
    let scaled = x.numer() * &scale;
    let q = scaled.div_floor(x.denom());
    BigRat::new(q, scale)
}

/// Smallest multiple of `2^-prec` that is `>= x`.
pub fn round_up(x: &BigRat, prec: u32) -> BigRat {
    if x.denom().is_one() {
        return x.clone();
    }
    let scale = BigInt::one() << prec;
    let scaled = x.numer() * &scale;
    let q = scaled.div_ceil(x.denom());
    BigRat::new(q, scale)
}

/// Rough `log2 |x|`, for sizing refinement precision. Zero maps to `i64::MIN`.
pub fn log2_abs(x: &BigRat) -> i64 {
    if x.is_zero() {
        return i64::MIN;
    }
    x.numer().bits() as i64 - x.denom().bits() as i64
}

pub fn to_f64(x: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        let e = log2_abs(x);
        if e > 0 {
            if x.is_positive() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            0.0
        }
    })
}

/// Decimal rendering with `digits` digits after the point (truncated toward zero).
pub fn to_decimal(x: &BigRat, digits: usize) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (ax.numer() * &scale) / ax.denom();
    let s = scaled.to_string();
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (ip, fp) = s.split_at(s.len() - digits);
    let mut out = String::new();
    if neg && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(ip);
    if digits > 0 {
        out.push('.');
        out.push_str(fp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(r: BigRat) -> Endpoint {
        Endpoint::Finite(r)
    }

    #[test]
    fn arith_basics() {
        assert_eq!(rat_arith(&rat(1, 3), &rat(1, 6), RatOp::Add).unwrap(), rat(1, 2));
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(*rat(2, 4).numer(), BigInt::from(1));
        assert_eq!(rat_arith(&rat(1, 3), &BigRat::zero(), RatOp::Div), Err(ExactError::DivisionByZero));
        assert!(rat(0, 5).denom().is_one());
    }

    #[test]
    fn simplest_examples() {
        assert_eq!(simplest_rational(&RatInterval::whole_line()).unwrap(), int(0));
        assert_eq!(simplest_between(&fin(int(-2)), &fin(int(2))).unwrap(), int(0));
        assert_eq!(simplest_between(&fin(rat(1, 3)), &fin(rat(1, 2))).unwrap(), rat(2, 5));
        assert_eq!(simplest_between(&Endpoint::NegInf, &fin(int(-2))).unwrap(), int(-3));
        assert_eq!(simplest_between(&fin(int(2)), &Endpoint::PosInf).unwrap(), int(3));
        assert_eq!(simplest_between(&fin(int(-1)), &fin(int(0))).unwrap(), rat(-1, 2));
        assert_eq!(simplest_between(&fin(int(0)), &fin(int(1))).unwrap(), rat(1, 2));
        assert_eq!(simplest_between(&fin(rat(7, 2)), &fin(int(4))).unwrap(), rat(11, 3));
        assert!(simplest_between(&fin(int(1)), &fin(int(1))).is_err());
    }

    #[test]
    fn rounding_is_outward() {
        let x = rat(1, 3);
        let lo = round_down(&x, 10);
        let hi = round_up(&x, 10);
        assert!(lo <= x && x <= hi);
        assert!(&hi - &lo <= rat(1, 1024));
        assert_eq!(round_down(&int(5), 3), int(5));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(to_decimal(&rat(5, 2), 2), "2.50");
        assert_eq!(to_decimal(&int(7), 0), "7");
    }

    #[test]
    fn interval_membership() {
        let iv = RatInterval { lo: fin(int(0)), hi: fin(int(1)), lo_open: true, hi_open: false };
        assert!(!iv.contains(&int(0)));
        assert!(iv.contains(&int(1)));
        assert!(!RatInterval::point(int(3)).is_empty());
        let e = RatInterval { lo: fin(int(1)), hi: fin(int(1)), lo_open: true, hi_open: false };
        assert!(e.is_empty());
    }
}
