//! The truncation solvers and the dual supremum against naive enumeration.

mod common;

use common::{any_rhs, cost, rat, rng, TailKind};
use galegap_core::gale::{dual_sup_general, gap_report, DualSup};
use galegap_core::lp_oracle::{Certificate, Ray, TruncDual, TruncPrimal, Witness};
use galegap_core::numeric::{int, ratio, Ratio, XReal};
use galegap_core::{DualPoint, Rhs, RhsCase};
use num_traits::{Signed, Zero};
use rand::Rng;

fn col(k: usize) -> (Ratio, Ratio) {
    if k == 0 {
        (int(1), int(0))
    } else {
        (int(k as i64), int(1))
    }
}

/// Minimum over every nonnegative basic solution with support of size ≤ 2.
fn brute_primal(costs: &[Ratio], b: &Rhs) -> Option<Ratio> {
    let n = costs.len();
    let mut best: Option<Ratio> = None;
    let mut offer = |v: Ratio| {
        if best.as_ref().is_none_or(|b| &v < b) {
            best = Some(v);
        }
    };
    if b.b1.is_zero() && b.b2.is_zero() {
        offer(int(0));
    }
    for i in 0..n {
        let (a1, a2) = col(i);
        // single column: b = t·a
        let t = if !a1.is_zero() { &b.b1 / &a1 } else { continue };
        if !t.is_negative() && &a2 * &t == b.b2 {
            offer(&costs[i] * &t);
        }
        for j in i + 1..n {
            let (c1, c2) = col(j);
            let det = &a1 * &c2 - &c1 * &a2;
            if det.is_zero() {
                continue;
            }
            let xi = (&b.b1 * &c2 - &c1 * &b.b2) / &det;
            let xj = (&a1 * &b.b2 - &b.b1 * &a2) / &det;
            if !xi.is_negative() && !xj.is_negative() {
                offer(&costs[i] * xi + &costs[j] * xj);
            }
        }
    }
    best
}

fn dual_ok(costs: &[Ratio], y: &DualPoint) -> bool {
    (0..costs.len()).all(|k| {
        let (a1, a2) = col(k);
        a1 * &y.y1 + a2 * &y.y2 <= costs[k]
    })
}

/// Maximum over pairwise constraint intersections, assuming the LP is bounded.
fn brute_dual(costs: &[Ratio], b: &Rhs) -> Option<Ratio> {
    let n = costs.len();
    let mut best: Option<Ratio> = None;
    for i in 0..n {
        for j in i + 1..n {
            let ((a1, a2), (c1, c2)) = (col(i), col(j));
            let det = &a1 * &c2 - &c1 * &a2;
            if det.is_zero() {
                continue;
            }
            let y1 = (&costs[i] * &c2 - &a2 * &costs[j]) / &det;
            let y2 = (&a1 * &costs[j] - &c1 * &costs[i]) / &det;
            let y = DualPoint::new(y1, y2);
            if dual_ok(costs, &y) {
                let v = b.objective(&y);
                if best.as_ref().is_none_or(|b| &v > b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

#[test]
fn primal_matches_enumeration_on_small_truncations() {
    let mut r = rng(101);
    for case in 0..400 {
        let n = r.gen_range(1..=6);
        let costs: Vec<Ratio> = (0..=n).map(|_| rat(&mut r, -10, 10, 3)).collect();
        let b = any_rhs(&mut r);
        let out = TruncPrimal::from_costs(costs.clone(), b.clone()).unwrap().solve();
        let brute = brute_primal(&costs, &b);
        match (&out.certificate, brute) {
            (Certificate::Infeasible, None) => assert_eq!(out.value, XReal::PosInf),
            (Certificate::OptimalBasis, Some(v)) => {
                assert_eq!(out.value, XReal::Finite(v), "case {case}");
                let Some(Witness::Primal(x)) = &out.witness else { panic!("case {case}: no witness") };
                let p = TruncPrimal::from_costs(costs.clone(), b.clone()).unwrap();
                assert!(p.is_feasible(x), "case {case}");
            }
            (cert, brute) => panic!("case {case}: {cert:?} vs enumeration {brute:?}"),
        }
    }
}

#[test]
fn dual_matches_enumeration_on_small_truncations() {
    let mut r = rng(102);
    let mut bounded = 0;
    for case in 0..400 {
        let n = r.gen_range(1..=6);
        let costs: Vec<Ratio> = (0..=n).map(|_| rat(&mut r, -10, 10, 3)).collect();
        let b = any_rhs(&mut r);
        let out = TruncDual::from_costs(costs.clone(), b.clone()).unwrap().solve();
        match &out.certificate {
            Certificate::OptimalBasis => {
                bounded += 1;
                let v = brute_dual(&costs, &b).expect("bounded dual has a vertex");
                assert_eq!(out.value, XReal::Finite(v), "case {case}");
                let Some(Witness::Dual(y)) = &out.witness else { panic!("case {case}: no witness") };
                assert!(dual_ok(&costs, y), "case {case}");
            }
            Certificate::UnboundedRay(Ray::Dual(d1, d2)) => {
                assert_eq!(out.value, XReal::PosInf);
                // recession direction with positive objective
                assert!((0..=n).all(|k| {
                    let (a1, a2) = col(k);
                    a1 * d1 + a2 * d2 <= int(0)
                }));
                assert!(&b.b1 * d1 + &b.b2 * d2 > int(0), "case {case}");
            }
            other => panic!("case {case}: dual certificate {other:?}"),
        }
    }
    assert!(bounded > 100);
}

#[test]
fn dual_sup_sits_below_every_truncated_dual() {
    let mut r = rng(103);
    for case in 0..120 {
        let c = cost(&mut r, TailKind::Any);
        let b = any_rhs(&mut r);
        if b.classify() == RhsCase::Infeasible {
            continue;
        }
        let sup = dual_sup_general(&c, &b, &ratio(1, 1_000_000)).unwrap();
        for n in [1, 3, 10, 40] {
            let d = TruncDual::new(&c, &b, n).unwrap().solve();
            assert!(sup.lower() <= d.value, "case {case}, N = {n}: {:?} vs {}", sup, d.value);
        }
    }
}

#[test]
fn interior_sup_bounds_sampled_objectives() {
    let mut r = rng(104);
    let mut sqrt_tails = 0;
    for case in 0..80 {
        let c = cost(&mut r, TailKind::Any);
        let b = common::interior_rhs(&mut r, 5);
        let eps = ratio(1, 1_000_000);
        let sup = dual_sup_general(&c, &b, &eps).unwrap();
        match &sup {
            DualSup::Enclosure { lo, hi, witness } => {
                assert!(hi - lo <= eps);
                assert!(c.dual_feasible(witness) && &b.objective(witness) == lo);
            }
            DualSup::Exact { value, witness } => {
                // with b2 > 0 the supremum sits at a breakpoint, so it is attained
                let y = witness.as_ref().expect("interior supremum is attained");
                assert!(c.dual_feasible(y) && &b.objective(y) == value, "case {case}");
                sqrt_tails += usize::from(!c.beta().tail().sqrt_coeff.is_zero());
            }
            DualSup::Unbounded { .. } => panic!("case {case}: interior dual unbounded"),
        }
        // every feasible point on the cap curve stays below the certified upper end
        for t in -40..=0 {
            let y1 = c.c0() + ratio(t, 4);
            if let XReal::Finite(cap) = c.y2_cap(&y1) {
                let y = DualPoint::new(y1, cap);
                assert!(XReal::Finite(b.objective(&y)) <= sup.upper(), "case {case}");
            }
        }
    }
    assert!(sqrt_tails > 10, "too few sqrt tails exercised");
}

#[test]
fn reports_agree_with_truncations() {
    let mut r = rng(105);
    for case in 0..60 {
        let c = cost(&mut r, TailKind::Linear);
        let b = any_rhs(&mut r);
        let rep = gap_report(&c, &b);
        if rep.rhs_case == RhsCase::Infeasible {
            assert_eq!(rep.phi, XReal::PosInf);
            assert!(!rep.gap_defined);
            continue;
        }
        let p = TruncPrimal::new(&c, &b, 60).unwrap().solve();
        assert!(p.value >= rep.phi, "case {case}: val(P_60) {} < phi {}", p.value, rep.phi);
    }
}
