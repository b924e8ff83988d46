//! Sets in `ℝ × ℝ²` built from the sequence map `x ↦ (Σ xₙ, Σ n·xₙ)`, whose
//! image of the nonnegative cone is not closed.
//!
//! `C₀ = {(η, y₁, 0) | y₁ ≤ 1, η ≥ 1 − y₁}`, `C₁ = {(η, y₁, y₂) | y₁ − 1 ≤ y₂ < 0, η ≥ 0}`
//! and `C′ = C₀ ∪ C₁`. On the line `L = {(η, 0, 0)}` the set `C′` only reaches
//! `η ≥ 1` while its closure reaches `η ≥ 0`.
//!
//! Also carries partial sums for a handful of fixed sequences that separate
//! the summability spaces `D₀ᵃ ⊂ D₀ ⊂ D₁`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{contract, Error, Result};
use crate::numeric::{ceil, int, Ratio};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaPoint {
    pub eta: Ratio,
    pub y1: Ratio,
    pub y2: Ratio,
}

impl EtaPoint {
    pub fn new(eta: Ratio, y1: Ratio, y2: Ratio) -> Self {
        EtaPoint { eta, y1, y2 }
    }
}

/// Finitely supported sequence, `(index, value)` sorted by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseSeq {
    entries: Vec<(u64, Ratio)>,
}

impl SparseSeq {
    /// Sorts by index, drops zeros; duplicate indices are a contract error.
    pub fn new(mut entries: Vec<(u64, Ratio)>) -> Result<Self> {
        entries.retain(|(_, x)| !x.is_zero());
        entries.sort_by_key(|(n, _)| *n);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return contract("SparseSeq indices must be distinct");
        }
        Ok(SparseSeq { entries })
    }

    pub fn entries(&self) -> &[(u64, Ratio)] {
        &self.entries
    }

    pub fn get(&self, n: u64) -> Ratio {
        self.entries
            .binary_search_by_key(&n, |(k, _)| *k)
            .map(|i| self.entries[i].1.clone())
            .unwrap_or_else(|_| Ratio::zero())
    }

    pub fn is_nonneg(&self) -> bool {
        self.entries.iter().all(|(_, x)| !x.is_negative())
    }

    /// `Σ xₙ`
    pub fn sum(&self) -> Ratio {
        self.entries.iter().map(|(_, x)| x).sum()
    }

    /// `Σ n·xₙ`
    pub fn weighted_sum(&self) -> Ratio {
        self.entries.iter().map(|(n, x)| Ratio::from_integer(BigInt::from(*n)) * x).sum()
    }

    /// `(x₀, 1 − Σ n·xₙ, −Σ_{n≥1} xₙ)`, the point this sequence certifies.
    pub fn image(&self) -> EtaPoint {
        let x0 = self.get(0);
        EtaPoint::new(x0.clone(), int(1) - self.weighted_sum(), x0 - self.sum())
    }
}

pub fn in_c0(p: &EtaPoint) -> bool {
    p.y2.is_zero() && p.y1 <= int(1) && p.eta >= int(1) - &p.y1
}

pub fn in_c1(p: &EtaPoint) -> bool {
    &p.y1 - int(1) <= p.y2 && p.y2.is_negative() && !p.eta.is_negative()
}

pub fn in_cprime(p: &EtaPoint) -> bool {
    in_c0(p) || in_c1(p)
}

pub fn in_cl_cprime(p: &EtaPoint) -> bool {
    &p.y1 - int(1) <= p.y2 && !p.y2.is_positive() && !p.eta.is_negative()
}

/// Nonnegative `x` supported on `{1, n̄}` with `Σ xₙ = −y₂` and `Σ n·xₙ = 1 − y₁`.
pub fn c1_witness(p: &EtaPoint) -> Result<SparseSeq> {
    if !in_c1(p) {
        return contract("c1_witness needs a point of C1");
    }
    let alpha = int(1) - &p.y1;
    let beta = -&p.y2;
    let ratio_ceil = ceil(&(&alpha / &beta));
    let nbar = ratio_ceil.max(BigInt::from(2));
    let nbar = u64::try_from(&nbar).map_err(|_| Error::Domain("witness index exceeds u64"))?;
    let denom = int(nbar as i64 - 1);
    let n_r = Ratio::from_integer(BigInt::from(nbar));
    let x1 = (&n_r * &beta - &alpha) / &denom;
    let xn = (&alpha - &beta) / &denom;
    SparseSeq::new(alloc::vec![(1, x1), (nbar, xn)])
}

/// Membership of a point in `L`, `L ∩ C′` and `L ∩ cl C′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineReport {
    pub on_line: bool,
    pub in_l_cprime: bool,
    pub in_l_cl_cprime: bool,
}

/// Closed-form characterisation: `L ∩ C′ = {η ≥ 1}`, `L ∩ cl C′ = {η ≥ 0}`.
pub fn line_intersections(p: &EtaPoint) -> LineReport {
    let on_line = p.y1.is_zero() && p.y2.is_zero();
    LineReport {
        on_line,
        in_l_cprime: on_line && p.eta >= int(1),
        in_l_cl_cprime: on_line && !p.eta.is_negative(),
    }
}

/// Closed rational interval; degenerate when the value is known exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Ratio,
    pub hi: Ratio,
}

impl Interval {
    pub fn point(x: Ratio) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Ratio {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Ratio) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    /// `1/x` for a strictly positive interval.
    fn recip_pos(&self) -> Interval {
        debug_assert!(self.lo.is_positive());
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    fn scale_pos(&self, k: &Ratio) -> Interval {
        Interval { lo: k * &self.lo, hi: k * &self.hi }
    }

    fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval { lo: Ratio::zero(), hi: self.lo.abs().max(self.hi.abs()) }
        }
    }

    fn outward(&self) -> Interval {
        Interval { lo: dyadic_floor(&self.lo), hi: dyadic_ceil(&self.hi) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

const DYADIC_BITS: usize = 64;

fn dyadic_floor(x: &Ratio) -> Ratio {
    let scale = BigInt::one() << DYADIC_BITS;
    let n = (x * Ratio::from_integer(scale.clone())).floor().to_integer();
    Ratio::new(n, scale)
}

fn dyadic_ceil(x: &Ratio) -> Ratio {
    let scale = BigInt::one() << DYADIC_BITS;
    let n = (x * Ratio::from_integer(scale.clone())).ceil().to_integer();
    Ratio::new(n, scale)
}

/// `atanh t` for `0 ≤ t ≤ 1/3`, enclosed by the truncated series and its geometric tail bound.
fn atanh_enclosure(t: &Ratio) -> Interval {
    const TERMS: u32 = 32;
    let t2 = t * t;
    let mut pow = t.clone();
    let mut sum = Ratio::zero();
    for j in 0..TERMS {
        sum += &pow / int(2 * j as i64 + 1);
        pow *= &t2;
    }
    // remaining terms ≤ t^(2J+1)/(2J+1) · 1/(1 − t²)
    let tail = &pow / int(2 * TERMS as i64 + 1) / (int(1) - &t2);
    Interval { lo: sum.clone(), hi: sum + tail }
}

/// `ln 2 = 2·atanh(1/3)`, rounded outward to `2^-64`.
pub fn ln2_enclosure() -> Interval {
    atanh_enclosure(&Ratio::new(BigInt::one(), BigInt::from(3)))
        .scale_pos(&int(2))
        .outward()
}

/// Certified enclosure of `ln n` for `n ≥ 1`, endpoints on the `2^-64` grid.
pub fn ln_enclosure(n: u64) -> Result<Interval> {
    if n == 0 {
        return Err(Error::Domain("ln of zero"));
    }
    if n == 1 {
        return Ok(Interval::point(Ratio::zero()));
    }
    // n = 2^k · m with m ∈ [1, 2); ln m = 2·atanh((m − 1)/(m + 1)), argument ≤ 1/3
    let k = 63 - n.leading_zeros() as i64;
    let m = Ratio::new(BigInt::from(n), BigInt::one() << k as usize);
    let t = (&m - int(1)) / (&m + int(1));
    let ln_m = atanh_enclosure(&t).scale_pos(&int(2));
    Ok(ln2_enclosure().scale_pos(&int(k)).add(&ln_m).outward())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    Geometric,
    AltInvSquare,
    Harmonic,
    AltHarmonic,
    LogAlternating,
}

impl Fixture {
    pub const ALL: [Fixture; 5] = [
        Fixture::Geometric,
        Fixture::AltInvSquare,
        Fixture::Harmonic,
        Fixture::AltHarmonic,
        Fixture::LogAlternating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Geometric => "geometric",
            Fixture::AltInvSquare => "alt-inv-square",
            Fixture::Harmonic => "harmonic",
            Fixture::AltHarmonic => "alt-harmonic",
            Fixture::LogAlternating => "log-alternating",
        }
    }

    /// Where the sequence sits among `ℝ^(ℕ) ⊂ D₀ᵃ ⊂ D₀ ⊂ D₁`, `ℓ₁`, `ℓ_r`, `c₀`. A label, not computed.
    pub fn classification(self) -> &'static str {
        match self {
            Fixture::Geometric => "D0a \\ R^(N)",
            Fixture::AltInvSquare => "(D0 ∩ l1) \\ D0a",
            Fixture::Harmonic => "c0 \\ l1",
            Fixture::AltHarmonic => "(D1 ∩ lr) \\ D0",
            Fixture::LogAlternating => "D0 \\ l1",
        }
    }

    /// `(zₙ, n·zₙ)` as enclosures; exact for every fixture except the logarithmic one.
    fn term(self, n: u64) -> Result<(Interval, Interval)> {
        let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
        let nr = Ratio::from_integer(BigInt::from(n));
        let z = match self {
            Fixture::Geometric => Ratio::new(BigInt::one(), BigInt::one() << n as usize),
            Fixture::AltInvSquare => sign / int(n as i64 + 1).pow(2),
            Fixture::Harmonic => int(n as i64 + 1).recip(),
            Fixture::AltHarmonic => sign / int(n as i64 + 1),
            Fixture::LogAlternating => {
                if n < 2 {
                    return Ok((Interval::point(Ratio::zero()), Interval::point(Ratio::zero())));
                }
                // n·zₙ = ±1/ln n, zₙ = ±1/(n ln n)
                let inv_ln = ln_enclosure(n)?.recip_pos().outward();
                let nz = if n.is_multiple_of(2) { inv_ln } else { inv_ln.neg() };
                let z = nz.scale_pos(&nr.recip()).outward();
                return Ok((z, nz));
            }
        };
        let nz = &nr * &z;
        Ok((Interval::point(z), Interval::point(nz)))
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse { what: "fixture", text: s.into() })
    }
}

/// Partial sums over `0 ≤ n ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSums {
    pub fixture: Fixture,
    pub n: u64,
    /// `Σ zₙ`
    pub sum: Interval,
    /// `Σ |zₙ|`
    pub abs_sum: Interval,
    /// `Σ n·zₙ`
    pub weighted: Interval,
    /// `Σ n·|zₙ|`
    pub abs_weighted: Interval,
}

pub fn dspace_fixture_partial_sums(fixture: Fixture, n_max: u64) -> Result<PartialSums> {
    if n_max == 0 {
        return Err(Error::Domain("partial sums need N >= 1"));
    }
    let zero = Interval::point(Ratio::zero());
    let (mut sum, mut abs_sum, mut weighted, mut abs_weighted) =
        (zero.clone(), zero.clone(), zero.clone(), zero);
    for n in 0..=n_max {
        let (z, nz) = fixture.term(n)?;
        sum = sum.add(&z);
        abs_sum = abs_sum.add(&z.abs());
        weighted = weighted.add(&nz);
        abs_weighted = abs_weighted.add(&nz.abs());
    }
    Ok(PartialSums { fixture, n: n_max, sum, abs_sum, weighted, abs_weighted })
}

/// By name; unknown names are an error.
pub fn dspace_fixture_partial_sums_by_name(name: &str, n_max: u64) -> Result<PartialSums> {
    dspace_fixture_partial_sums(name.parse()?, n_max)
}
