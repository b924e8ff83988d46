//! Nonnegative sequences `(β_k)` with a finite prefix and an eventually
//! closed-form tail `a·k + b + s·⌊√k⌋`.
//!
//! The class is small enough that the asymptotic slope `liminf β_k / k` and
//! the shifted infimum `inf { β_k − β'·k | k ≥ k_min }` are computable
//! exactly, and large enough (through the `s < 0` square-root term) to
//! contain sequences whose shifted infimum at the slope itself is `-inf`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{ceil, floor, isqrt_unsigned, parse_ratio, Ratio, XReal};

/// Closed-form tail `a·k + b + s·⌊√k⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    /// `a`
    pub slope: Ratio,
    /// `b`
    pub offset: Ratio,
    /// `s`
    pub sqrt_coeff: Ratio,
}

impl Tail {
    pub fn new(slope: Ratio, offset: Ratio, sqrt_coeff: Ratio) -> Self {
        Tail {
            slope,
            offset,
            sqrt_coeff,
        }
    }

    pub fn eval(&self, k: &BigUint) -> Ratio {
        let k_int = BigInt::from(k.clone());
        let root = BigInt::from(isqrt_unsigned(k));
        &self.slope * Ratio::from_integer(k_int)
            + &self.offset
            + &self.sqrt_coeff * Ratio::from_integer(root)
    }
}

/// A sequence given by `prefix[k]` for `k < K` and by the tail for `k ≥ K`,
/// where `K = prefix.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailSeq {
    prefix: Vec<Ratio>,
    tail: Tail,
}

/// Exact value of `inf { β_k − β'·k | k ≥ k_min }` together with the
/// smallest index attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftedInf {
    NegInf,
    Finite { value: Ratio, argmin: BigUint },
}

impl ShiftedInf {
    pub fn to_xreal(&self) -> XReal {
        match self {
            ShiftedInf::NegInf => XReal::NegInf,
            ShiftedInf::Finite { value, .. } => XReal::Finite(value.clone()),
        }
    }
}

impl TailSeq {
    pub fn new(prefix: Vec<Ratio>, tail: Tail) -> Self {
        TailSeq { prefix, tail }
    }

    /// Sequence equal to the tail from index 0 on.
    pub fn pure_tail(tail: Tail) -> Self {
        TailSeq::new(Vec::new(), tail)
    }

    pub fn prefix(&self) -> &[Ratio] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// `K`, the index from which the tail formula applies.
    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn eval(&self, k: u64) -> Ratio {
        match usize::try_from(k).ok().and_then(|i| self.prefix.get(i)) {
            Some(q) => q.clone(),
            None => self.tail.eval(&BigUint::from(k)),
        }
    }

    pub fn eval_big(&self, k: &BigUint) -> Ratio {
        match usize::try_from(k).ok().and_then(|i| self.prefix.get(i)) {
            Some(q) => q.clone(),
            None => self.tail.eval(k),
        }
    }

    /// `β̄ = liminf β_k / k`. In this class `β_k / k → a`, so the liminf is
    /// the tail slope and always finite.
    pub fn liminf_ratio(&self) -> XReal {
        XReal::Finite(self.tail.slope.clone())
    }

    /// `inf { β_k − β'·k | k ≥ k_min }`.
    pub fn inf_shifted(&self, beta_prime: &Ratio, k_min: u64) -> Result<XReal> {
        self.inf_shifted_argmin(beta_prime, k_min)
            .map(|r| r.to_xreal())
    }

    /// [`TailSeq::inf_shifted`] with the minimizing index.
    ///
    /// Writing `d = a − β'`, the tail term is `d·k + b + s·⌊√k⌋`. It is
    /// unbounded below when `d < 0`, or `d = 0` and `s < 0`. Otherwise, on
    /// each block `m² ≤ k < (m+1)²` the term increases with `k`, so only the
    /// block starts (and the first admissible index) compete; over block
    /// starts the value `d·m² + s·m + b` is a convex quadratic in `m`,
    /// minimized next to `m = −s / 2d`.
    pub fn inf_shifted_argmin(&self, beta_prime: &Ratio, k_min: u64) -> Result<ShiftedInf> {
        if k_min == 0 {
            return Err(Error::Domain("shifted infimum starts at k = 1"));
        }
        let d = &self.tail.slope - beta_prime;
        let s = &self.tail.sqrt_coeff;
        if d.is_negative() || (d.is_zero() && s.is_negative()) {
            return Ok(ShiftedInf::NegInf);
        }

        let shifted = |k: &BigUint| -> Ratio {
            self.eval_big(k) - beta_prime * Ratio::from_integer(BigInt::from(k.clone()))
        };

        let mut best: Option<(Ratio, BigUint)> = None;
        let mut offer = |k: BigUint| {
            let value = shifted(&k);
            // candidates arrive in increasing k: strict improvement keeps the smallest argmin
            if best.as_ref().is_none_or(|(v, _)| value < *v) {
                best = Some((value, k));
            }
        };

        let k_len = self.prefix.len() as u64;
        for k in k_min..k_len {
            offer(BigUint::from(k));
        }

        let first = BigUint::from(k_min.max(k_len));
        if s.is_negative() {
            // here d > 0
            let block = isqrt_unsigned(&first);
            let vertex = -s / (Ratio::from_integer(BigInt::from(2)) * &d);
            let lowest = BigInt::from(&block + 1u32);
            let mut blocks: Vec<BigInt> = [floor(&vertex), ceil(&vertex)]
                .into_iter()
                .map(|m| if m < lowest { lowest.clone() } else { m })
                .collect();
            blocks.dedup();
            offer(first);
            for m in blocks {
                // m >= block + 1 >= 1
                let m = m.to_biguint().unwrap_or_default();
                offer(&m * &m);
            }
        } else {
            offer(first);
        }

        let (value, argmin) = best.expect("at least one tail candidate");
        Ok(ShiftedInf::Finite { value, argmin })
    }

    /// Whether every term is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        if self.prefix.iter().any(Signed::is_negative) {
            return false;
        }
        if self.prefix.is_empty() && self.tail.offset.is_negative() {
            return false;
        }
        let from = (self.prefix.len() as u64).max(1);
        match self.inf_shifted(&Ratio::zero(), from) {
            Ok(XReal::Finite(v)) => !v.is_negative(),
            _ => false,
        }
    }
}

impl fmt::Display for TailSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("prefix=[")?;
        for (i, q) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        let t = &self.tail;
        write!(f, "]; tail=({},{},{})", t.slope, t.offset, t.sqrt_coeff)
    }
}

/// Parses `prefix=[r0,r1,...]; tail=(a,b,s)`; whitespace around tokens is
/// ignored.
impl FromStr for TailSeq {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "sequence",
            text: String::from(text),
        };
        let (prefix_part, tail_part) = text.split_once(';').ok_or_else(bad)?;
        let list = |part: &str, key: &str, open: char, close: char| -> Result<Vec<Ratio>> {
            let rest = part.trim().strip_prefix(key).ok_or_else(bad)?;
            let rest = rest.trim_start().strip_prefix('=').ok_or_else(bad)?;
            let inner = rest
                .trim()
                .strip_prefix(open)
                .and_then(|r| r.strip_suffix(close))
                .ok_or_else(bad)?;
            if inner.trim().is_empty() {
                return Ok(Vec::new());
            }
            inner.split(',').map(|tok| parse_ratio(tok.trim())).collect()
        };
        let prefix = list(prefix_part, "prefix", '[', ']')?;
        let tail = list(tail_part, "tail", '(', ')')?;
        let [a, b, s]: [Ratio; 3] = tail.try_into().map_err(|_| bad())?;
        Ok(TailSeq::new(prefix, Tail::new(a, b, s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn gale() -> TailSeq {
        TailSeq::new(vec![int(1)], Tail::new(int(0), int(0), int(0)))
    }

    fn sqrt_dip() -> TailSeq {
        TailSeq::new(vec![int(0)], Tail::new(int(1), int(0), int(-1)))
    }

    /// Brute-force minimum over `k_min..=k_max`, smallest argmin.
    fn brute_min(seq: &TailSeq, beta_prime: &Ratio, k_min: u64, k_max: u64) -> (Ratio, u64) {
        let mut best: Option<(Ratio, u64)> = None;
        for k in k_min..=k_max {
            let v = seq.eval(k) - beta_prime * int(k as i64);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, k));
            }
        }
        best.unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(gale().eval(0), int(1));
        assert_eq!(gale().eval(7), int(0));
        let seq = TailSeq::pure_tail(Tail::new(int(1), int(0), int(-1)));
        assert_eq!(seq.eval(9), int(6));
    }

    #[test]
    fn liminf_examples() {
        assert_eq!(gale().liminf_ratio(), XReal::zero());
        let t = TailSeq::pure_tail(Tail::new(int(2), int(5), int(0)));
        assert_eq!(t.liminf_ratio(), XReal::Finite(int(2)));
        let t = TailSeq::pure_tail(Tail::new(int(1), int(0), int(-3)));
        assert_eq!(t.liminf_ratio(), XReal::Finite(int(1)));
    }

    #[test]
    fn inf_shifted_examples() {
        assert_eq!(gale().inf_shifted(&int(0), 1).unwrap(), XReal::zero());
        assert_eq!(sqrt_dip().inf_shifted(&int(1), 1).unwrap(), XReal::NegInf);
        assert_eq!(
            sqrt_dip().inf_shifted_argmin(&int(0), 1).unwrap(),
            ShiftedInf::Finite {
                value: int(0),
                argmin: BigUint::from(1u32)
            }
        );
        assert!(matches!(
            gale().inf_shifted(&int(0), 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn nonneg_examples() {
        assert!(gale().is_nonneg());
        assert!(sqrt_dip().is_nonneg());
        assert!(!TailSeq::pure_tail(Tail::new(int(0), int(0), int(-1))).is_nonneg());
        assert!(!TailSeq::pure_tail(Tail::new(int(1), int(-1), int(0))).is_nonneg());
        assert!(!TailSeq::new(vec![int(-1)], Tail::new(int(0), int(0), int(0))).is_nonneg());
    }

    #[test]
    fn deep_minimizer_is_found() {
        // d = 1/100, s = -10: vertex at m = 500, k = 250000
        let seq = TailSeq::pure_tail(Tail::new(ratio(1, 100), int(0), int(-10)));
        let r = seq.inf_shifted_argmin(&int(0), 1).unwrap();
        assert_eq!(
            r,
            ShiftedInf::Finite {
                value: int(-2500),
                argmin: BigUint::from(250_000u32)
            }
        );
    }

    #[test]
    fn text_round_trip() {
        let seq: TailSeq = "prefix=[1, 2/3]; tail=(1,0,-1/2)".parse().unwrap();
        assert_eq!(seq.prefix(), &[int(1), ratio(2, 3)]);
        assert_eq!(seq.to_string(), "prefix=[1,2/3]; tail=(1,0,-1/2)");
        assert_eq!(seq.to_string().parse::<TailSeq>().unwrap(), seq);
        let empty: TailSeq = "prefix=[]; tail=(0,0,0)".parse().unwrap();
        assert_eq!(empty.prefix_len(), 0);
        for bad in [
            "prefix=[x]; tail=(0,0,0)",
            "prefix=[1]; tail=(0,0)",
            "prefix=[1] tail=(0,0,0)",
            "prefix=[1]; tail=(0,0,0,0)",
            "prefix=[1]; tail=(0.5,0,0)",
            "prefix=(1); tail=(0,0,0)",
            "beta=[1]; tail=(0,0,0)",
        ] {
            assert!(bad.parse::<TailSeq>().is_err(), "{bad} accepted");
        }
    }

    fn small_ratio(lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Ratio> {
        (lo * den..=hi * den).prop_map(move |n| ratio(n, den))
    }

    /// Sequences whose tail minimizer (if any) sits below k = 2000 for every
    /// shift with `a − β' ≥ 1/8`: vertex m ≤ 8 / (2/8) = 32.
    fn arb_seq() -> impl Strategy<Value = TailSeq> {
        (
            proptest::collection::vec(small_ratio(0, 6, 4), 0..6),
            small_ratio(0, 3, 4),
            small_ratio(-4, 4, 2),
            small_ratio(-8, 8, 2),
        )
            .prop_map(|(prefix, a, b, s)| TailSeq::new(prefix, Tail::new(a, b, s)))
    }

    proptest! {
        #[test]
        fn inf_shifted_matches_brute_force(seq in arb_seq(), shift in small_ratio(-2, 3, 8), k_min in 1u64..8) {
            let d = &seq.tail().slope - &shift;
            let got = seq.inf_shifted_argmin(&shift, k_min).unwrap();
            let neg = seq.tail().sqrt_coeff.is_negative();
            if d.is_negative() || (d.is_zero() && neg) {
                prop_assert_eq!(got, ShiftedInf::NegInf);
            } else if d >= ratio(1, 8) || !neg {
                let (v, k) = brute_min(&seq, &shift, k_min, 2000);
                prop_assert_eq!(got, ShiftedInf::Finite { value: v, argmin: BigUint::from(k) });
            }
        }

        #[test]
        fn inf_shifted_lower_bounds_samples(seq in arb_seq(), shift in small_ratio(-2, 3, 8), ks in proptest::collection::vec(1u64..1_000_000, 20)) {
            match seq.inf_shifted_argmin(&shift, 1).unwrap() {
                ShiftedInf::NegInf => {}
                ShiftedInf::Finite { value, argmin } => {
                    for k in ks {
                        prop_assert!(value <= seq.eval(k) - &shift * int(k as i64));
                    }
                    let k = BigInt::from(argmin.clone());
                    prop_assert_eq!(value, seq.eval_big(&argmin) - &shift * Ratio::from_integer(k));
                }
            }
        }

        #[test]
        fn inf_shifted_monotone_in_shift(seq in arb_seq(), p in small_ratio(-2, 3, 8), q in small_ratio(-2, 3, 8)) {
            let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
            prop_assert!(seq.inf_shifted(&lo, 1).unwrap() >= seq.inf_shifted(&hi, 1).unwrap());
        }

        #[test]
        fn neg_inf_iff_shift_beyond_slope(seq in arb_seq(), shift in small_ratio(-2, 3, 8)) {
            let a = &seq.tail().slope;
            let expect = shift > *a || (shift == *a && seq.tail().sqrt_coeff.is_negative());
            prop_assert_eq!(seq.inf_shifted(&shift, 1).unwrap() == XReal::NegInf, expect);
        }

        #[test]
        fn liminf_bounds_eventual_ratios(seq in arb_seq(), q in 1i64..50, ks in proptest::collection::vec(1u64..1_000_000, 20)) {
            // β_k/k ≥ a − 1/q  ⟸  (1/q)·k + b + s·⌊√k⌋ ≥ 0, i.e. a shifted infimum at a − 1/q
            let eps = ratio(1, q);
            let beta_bar = seq.liminf_ratio().into_finite().unwrap();
            let shift = &beta_bar - &eps;
            // first index from which the shifted terms stay nonnegative: past the
            // tail vertex and the positive root in √k of (1/q)x² − |s|x + b
            let t = seq.tail();
            let s_abs = t.sqrt_coeff.abs();
            let root = (&s_abs + int(1)) * int(q) + t.offset.abs() + int(1);
            let root = root.to_integer().to_biguint().unwrap();
            let k0 = (&root * &root).max(BigUint::from(seq.prefix_len() as u64 + 1));
            let k0 = u64::try_from(k0).unwrap();
            for k in ks.into_iter().map(|k| k + k0) {
                let v = seq.eval(k) - &shift * int(k as i64);
                prop_assert!(!v.is_negative(), "k = {}", k);
            }
        }

        #[test]
        fn text_form_round_trips(seq in arb_seq()) {
            prop_assert_eq!(seq.to_string().parse::<TailSeq>().unwrap(), seq);
        }
    }
}
