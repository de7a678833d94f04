//! Big rationals, outward-rounded rational intervals and root enclosures.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn pow(base: &BigRational, exp: u64) -> BigRational {
    let exp = u32::try_from(exp).expect("exponent fits in u32");
    BigRational::new(base.numer().pow(exp), base.denom().pow(exp))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_rat(n: u64, k: u64) -> BigRational {
    int(BigInt::from(binomial(n, k)))
}

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(invalid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: BigRational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Scales by a nonnegative factor.
    pub fn scale(&self, factor: &BigRational) -> Interval {
        debug_assert!(!factor.is_negative());
        Interval {
            lo: &self.lo * factor,
            hi: &self.hi * factor,
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / int(2))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Sign of the interval relative to `v`: `Less` if entirely below,
    /// `Greater` if entirely above, `None` if it straddles or touches `v`.
    pub fn compare(&self, v: &BigRational) -> Option<Ordering> {
        if &self.hi < v {
            Some(Ordering::Less)
        } else if &self.lo > v {
            Some(Ordering::Greater)
        } else if self.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            to_scientific(&self.lo, 12, Rounding::Down),
            to_scientific(&self.hi, 12, Rounding::Up)
        )
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 4)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("lo_approx", &to_scientific(&self.lo, 17, Rounding::Down))?;
        st.serialize_field("hi_approx", &to_scientific(&self.hi, 17, Rounding::Up))?;
        st.end()
    }
}

/// Exact rational m-th root of a nonnegative rational, if one exists.
pub fn exact_root(q: &BigRational, m: u32) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let (rn, rd) = (num.nth_root(m), den.nth_root(m));
    (rn.pow(m) == *num && rd.pow(m) == *den)
        .then(|| BigRational::new(BigInt::from(rn), BigInt::from(rd)))
}

/// Encloses `q^(1/m)` for `q >= 0`, `m >= 1`.
///
/// Exact roots give a point interval. Otherwise dyadic bisection runs on a
/// fixed bracket until the width is at most `max_width`, so a smaller
/// `max_width` always yields a nested interval.
pub fn root_interval(q: &BigRational, m: u32, max_width: &BigRational) -> Result<Interval> {
    if q.is_negative() || m == 0 || !max_width.is_positive() {
        return Err(invalid("root needs q >= 0, m >= 1 and a positive width"));
    }
    if let Some(r) = exact_root(q, m) {
        return Ok(Interval::point(r));
    }
    // Bracket [0, 2^e] with 2^(e m) >= q; work with integer numerators over 2^j.
    let (p, s) = (q.numer().magnitude(), q.denom().magnitude());
    let mut e = 0u64;
    while (BigUint::one() << (e * u64::from(m))) * s < *p {
        e += 1;
    }
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << e;
    let mut j = 0u64;
    let width = |j: u64| BigRational::new(BigInt::one(), BigInt::one() << j);
    // Invariant: (lo/2^j)^m < q < (hi/2^j)^m, i.e. lo^m s < p 2^(jm) < hi^m s.
    while width(j) * int(BigInt::from(&hi - &lo)) > *max_width {
        lo <<= 1;
        hi <<= 1;
        j += 1;
        let mid: BigUint = (&lo + &hi) >> 1u32;
        let lhs = mid.pow(m) * s;
        let rhs = p << (j * u64::from(m));
        match lhs.cmp(&rhs) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => unreachable!("exact roots are handled above"),
        }
    }
    let scale = BigInt::one() << j;
    Interval::new(
        BigRational::new(BigInt::from(lo), scale.clone()),
        BigRational::new(BigInt::from(hi), scale),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// Decimal scientific notation with `digits` significant digits, rounded in
/// the given direction so the printed value bounds `q`.
pub fn to_scientific(q: &BigRational, digits: u32, rounding: Rounding) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    if q.is_negative() {
        let flipped = match rounding {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        };
        return format!("-{}", to_scientific(&-q, digits, flipped));
    }
    let digits = digits.max(1);
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            int(ten.pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), ten.pow((-e) as u32))
        }
    };
    // Estimate floor(log10 q) from bit lengths, then correct exactly.
    let bits = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut exp = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    while pow10(exp) > *q {
        exp -= 1;
    }
    while pow10(exp + 1) <= *q {
        exp += 1;
    }
    let scaled = q * pow10(i64::from(digits) - 1 - exp);
    let mut mantissa = match rounding {
        Rounding::Down => scaled.floor(),
        Rounding::Up => scaled.ceil(),
    }
    .to_integer();
    if mantissa == ten.pow(digits) {
        mantissa = ten.pow(digits - 1);
        exp += 1;
    }
    let m = mantissa.to_string();
    let (head, tail) = m.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{head}e{exp}")
    } else {
        format!("{head}.{tail}e{exp}")
    }
}
