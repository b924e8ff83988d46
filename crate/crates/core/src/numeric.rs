//! Exact scalars: unbounded rationals, extended reals and integer square roots.
//!
//! Every value in this crate is carried as a [`Ratio`] (a canonical
//! big-integer fraction) or an [`XReal`] (a rational or one of the two
//! infinities). Nothing here touches floating point.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational with unbounded numerator and denominator.
///
/// `BigRational` keeps the denominator positive and the fraction reduced, so
/// structural equality is numeric equality.
pub type Ratio = num_rational::BigRational;

/// Rational from a pair of machine integers. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Ratio {
    Ratio::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from a machine integer.
pub fn int(n: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(n))
}

/// Rational from an unbounded integer.
pub fn from_big(n: BigInt) -> Ratio {
    Ratio::from_integer(n)
}

/// `⌊√n⌋` for a nonnegative integer.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    match n.sign() {
        Sign::Minus => Err(Error::Domain("isqrt of a negative integer")),
        _ => Ok(BigInt::from(isqrt_unsigned(n.magnitude()))),
    }
}

/// `⌊√n⌋` by Newton iteration from an upper bound; converges monotonically
/// downward, so the first non-decreasing step is the answer.
pub fn isqrt_unsigned(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // 2^ceil(bits/2) >= sqrt(n)
    let bits = n.bits();
    let mut x = BigUint::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `⌊√k⌋` for a machine index.
pub fn isqrt_u64(k: u64) -> u64 {
    let r = isqrt_unsigned(&BigUint::from(k));
    // r <= 2^32
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Largest integer `<= q`.
pub fn floor(q: &Ratio) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Smallest integer `>= q`.
pub fn ceil(q: &Ratio) -> BigInt {
    q.numer().div_ceil(q.denom())
}

/// Parses the textual form `p/q`, `p`, with an optional leading `-`.
///
/// The numerator and denominator are plain decimal digit strings; the
/// denominator must be nonzero. Non-canonical input such as `2/4` is
/// accepted and reduced.
pub fn parse_ratio(text: &str) -> Result<Ratio> {
    let bad = || Error::Parse {
        what: "rational",
        text: String::from(text),
    };
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return Err(bad());
    }
    let mut numer = BigUint::from_str(num).map_err(|_| bad())?;
    let denom = match den {
        Some(d) => BigUint::from_str(d).map_err(|_| bad())?,
        None => BigUint::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    let g = numer.gcd(&denom);
    numer /= &g;
    let sign = if neg { Sign::Minus } else { Sign::Plus };
    Ok(Ratio::new_raw(
        BigInt::from_biguint(sign, numer),
        BigInt::from(denom / g),
    ))
}

/// Extended real: a rational or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum XReal {
    NegInf,
    Finite(Ratio),
    PosInf,
}

impl XReal {
    pub fn zero() -> Self {
        XReal::Finite(Ratio::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&Ratio> {
        match self {
            XReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn into_finite(self) -> Option<Ratio> {
        match self {
            XReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Sum, rejecting `+inf + -inf`.
    pub fn checked_add(&self, other: &XReal) -> Result<XReal> {
        use XReal::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::Indeterminate("inf + -inf")),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    /// Difference, rejecting `inf - inf`.
    pub fn checked_sub(&self, other: &XReal) -> Result<XReal> {
        self.checked_add(&-other.clone())
    }

    /// Product with a rational scalar; `0 * ±inf` is rejected.
    pub fn scale(&self, factor: &Ratio) -> Result<XReal> {
        use XReal::*;
        match self {
            Finite(a) => Ok(Finite(a * factor)),
            _ if factor.is_zero() => Err(Error::Indeterminate("0 * inf")),
            PosInf if factor.is_positive() => Ok(PosInf),
            NegInf if factor.is_positive() => Ok(NegInf),
            PosInf => Ok(NegInf),
            NegInf => Ok(PosInf),
        }
    }

    pub fn min(self, other: XReal) -> XReal {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: XReal) -> XReal {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<Ratio> for XReal {
    fn from(q: Ratio) -> Self {
        XReal::Finite(q)
    }
}

impl core::ops::Neg for XReal {
    type Output = XReal;

    fn neg(self) -> XReal {
        match self {
            XReal::NegInf => XReal::PosInf,
            XReal::PosInf => XReal::NegInf,
            XReal::Finite(q) => XReal::Finite(-q),
        }
    }
}

/// Total order with `-inf` below every rational and `+inf` above.
pub fn xreal_cmp(a: &XReal, b: &XReal) -> Ordering {
    use XReal::*;
    match (a, b) {
        (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
        (NegInf, _) | (_, PosInf) => Ordering::Less,
        (_, NegInf) | (PosInf, _) => Ordering::Greater,
        (Finite(x), Finite(y)) => x.cmp(y),
    }
}

impl Ord for XReal {
    fn cmp(&self, other: &Self) -> Ordering {
        xreal_cmp(self, other)
    }
}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XReal::NegInf => f.write_str("-inf"),
            XReal::PosInf => f.write_str("inf"),
            // BigRational prints `p` for integers and `p/q` otherwise
            XReal::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for XReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(XReal::PosInf),
            "-inf" => Ok(XReal::NegInf),
            _ => parse_ratio(s).map(XReal::Finite),
        }
    }
}
