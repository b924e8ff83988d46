#![allow(dead_code)]

use galegap_core::numeric::{int, ratio, Ratio};
use galegap_core::{CostSpec, Rhs, Tail, TailSeq};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p ∈ [lo, hi]`, `q ∈ [1, den]`.
pub fn rat(r: &mut impl Rng, lo: i64, hi: i64, den: i64) -> Ratio {
    ratio(r.gen_range(lo..=hi), r.gen_range(1..=den))
}

pub fn nonneg(r: &mut impl Rng, hi: i64, den: i64) -> Ratio {
    rat(r, 0, hi, den)
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TailKind {
    /// `s = 0`
    Linear,
    /// `s` of either sign
    Any,
}

pub fn cost(r: &mut impl Rng, kind: TailKind) -> CostSpec {
    loop {
        let u = rat(r, -6, 6, 4);
        let v = rat(r, -6, 6, 4);
        let len = r.gen_range(0..=3);
        let prefix = (0..len).map(|_| nonneg(r, 12, 4)).collect();
        let a = if r.gen_bool(0.2) { int(0) } else { nonneg(r, 12, 4) };
        let s = match kind {
            TailKind::Linear => int(0),
            TailKind::Any if r.gen_bool(0.4) => int(0),
            TailKind::Any => rat(r, -8, 8, 4),
        };
        let b = nonneg(r, 40, 4);
        let beta = TailSeq::new(prefix, Tail::new(a, b, s));
        if let Ok(c) = CostSpec::new(u, v, beta) {
            return c;
        }
    }
}

/// `b1 > b2 > 0` with `b1/b2 ≤ max_ratio`.
pub fn interior_rhs(r: &mut impl Rng, max_ratio: i64) -> Rhs {
    loop {
        let b2 = ratio(r.gen_range(1..=12), r.gen_range(1..=3));
        let b1 = &b2 * rat(r, 1, 4 * max_ratio, 4);
        if b1 > b2 {
            return Rhs::new(b1, b2);
        }
    }
}

pub fn axis_rhs(r: &mut impl Rng) -> Rhs {
    Rhs::new(ratio(r.gen_range(1..=20), r.gen_range(1..=4)), int(0))
}

/// Any right-hand side, including infeasible ones.
pub fn any_rhs(r: &mut impl Rng) -> Rhs {
    match r.gen_range(0..6) {
        0 => axis_rhs(r),
        1 => {
            let b = ratio(r.gen_range(1..=12), r.gen_range(1..=3));
            Rhs::new(b.clone(), b)
        }
        2 => Rhs::new(int(0), int(0)),
        3 => Rhs::new(rat(r, -10, 10, 3), rat(r, -10, 10, 3)),
        _ => interior_rhs(r, 6),
    }
}
