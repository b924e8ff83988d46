//! The perturbed Gale family.
//!
//! Primal (variables `x_k ≥ 0`, finitely many nonzero):
//!
//! ```text
//!   minimize  Σ c_k x_k   s.t.  x_0 + Σ_{k≥1} k·x_k = b1,   Σ_{k≥1} x_k = b2
//! ```
//!
//! Dual (variables `(y1, y2)` free):
//!
//! ```text
//!   maximize  b1·y1 + b2·y2   s.t.  y1 ≤ c_0,   k·y1 + y2 ≤ c_k  (k ≥ 1)
//! ```
//!
//! Costs are given in the decomposed form `c_0 = u + β_0`,
//! `c_k = k·u + v + β_k` with `β ≥ 0`, which is exactly the set of costs for
//! which the dual is feasible.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{Signed, Zero};

use crate::error::{contract, Error, Result};
use crate::numeric::{int, Ratio, XReal};
use crate::seqcore::{ShiftedInf, TailSeq};

/// Default enclosure width for dual values that are not computed exactly:
/// `10⁻⁹`.
pub fn default_eps() -> Ratio {
    Ratio::new(1.into(), 1_000_000_000u64.into())
}

/// Cost sequence `c` in the form `(u, v, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostSpec {
    u: Ratio,
    v: Ratio,
    beta: TailSeq,
}

impl CostSpec {
    /// Rejects `β` with a negative term.
    pub fn new(u: Ratio, v: Ratio, beta: TailSeq) -> Result<Self> {
        if !beta.is_nonneg() {
            return contract("cost decomposition requires beta >= 0");
        }
        Ok(CostSpec { u, v, beta })
    }

    /// `c = e_0`: `u = v = 0`, `β_0 = 1`, `β_k = 0` for `k ≥ 1`.
    pub fn gale() -> Self {
        use crate::seqcore::Tail;
        let beta = TailSeq::new(alloc::vec![int(1)], Tail::new(int(0), int(0), int(0)));
        CostSpec::new(int(0), int(0), beta).expect("e0 is a valid cost")
    }

    pub fn u(&self) -> &Ratio {
        &self.u
    }

    pub fn v(&self) -> &Ratio {
        &self.v
    }

    pub fn beta(&self) -> &TailSeq {
        &self.beta
    }

    pub fn beta0(&self) -> Ratio {
        self.beta.eval(0)
    }

    /// `β̄ = liminf β_k / k`.
    pub fn beta_bar(&self) -> XReal {
        self.beta.liminf_ratio()
    }

    fn beta_bar_finite(&self) -> Ratio {
        self.beta_bar()
            .into_finite()
            .expect("slope of a tail sequence is finite")
    }

    /// `c_k`.
    pub fn eval(&self, k: u64) -> Ratio {
        if k == 0 {
            &self.u + self.beta.eval(0)
        } else {
            Ratio::from_integer(k.into()) * &self.u + &self.v + self.beta.eval(k)
        }
    }

    pub fn c0(&self) -> Ratio {
        self.eval(0)
    }

    /// `ū = u + min{β_0, β̄}`.
    pub fn u_bar(&self) -> Ratio {
        let b0 = self.beta0();
        let bb = self.beta_bar_finite();
        &self.u + b0.min(bb)
    }

    /// Largest `y2` with `(y1, y2)` satisfying every constraint with `k ≥ 1`:
    /// `v + inf { β_k − (y1 − u)·k | k ≥ 1 }`.
    pub fn y2_cap(&self, y1: &Ratio) -> XReal {
        match self.shifted_inf(&(y1 - &self.u)) {
            ShiftedInf::NegInf => XReal::NegInf,
            ShiftedInf::Finite { value, .. } => XReal::Finite(&self.v + value),
        }
    }

    fn shifted_inf(&self, shift: &Ratio) -> ShiftedInf {
        self.beta
            .inf_shifted_argmin(shift, 1)
            .expect("k_min = 1 is admissible")
    }

    /// Dual feasibility of `y`.
    pub fn dual_feasible(&self, y: &DualPoint) -> bool {
        y.y1 <= self.c0() && XReal::Finite(y.y2.clone()) <= self.y2_cap(&y.y1)
    }

    /// Conjugate of the value function `h_c`: the indicator of the dual
    /// feasible set (0 inside, `+inf` outside).
    pub fn hc_conjugate(&self, y: &DualPoint) -> XReal {
        if self.dual_feasible(y) {
            XReal::zero()
        } else {
            XReal::PosInf
        }
    }
}

/// Right-hand side `b = (b1, b2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rhs {
    pub b1: Ratio,
    pub b2: Ratio,
}

/// Position of `b` relative to `A(P) = { b1 ≥ b2 ≥ 0 }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhsCase {
    /// `b ∉ A(P)`; the primal has no feasible point.
    Infeasible,
    /// `b2 = 0 < b1`.
    Axis,
    /// `b1 = b2 > 0`.
    Edge,
    /// `b1 > b2 > 0`, the core of `A(P)`.
    Interior,
    Origin,
}

impl RhsCase {
    pub fn as_str(self) -> &'static str {
        match self {
            RhsCase::Infeasible => "infeasible",
            RhsCase::Axis => "axis",
            RhsCase::Edge => "edge",
            RhsCase::Interior => "interior",
            RhsCase::Origin => "origin",
        }
    }
}

impl Rhs {
    pub fn new(b1: Ratio, b2: Ratio) -> Self {
        Rhs { b1, b2 }
    }

    pub fn classify(&self) -> RhsCase {
        rhs_classify(self)
    }

    pub fn objective(&self, y: &DualPoint) -> Ratio {
        &self.b1 * &y.y1 + &self.b2 * &y.y2
    }
}

pub fn rhs_classify(b: &Rhs) -> RhsCase {
    let (b1, b2) = (&b.b1, &b.b2);
    if b2.is_negative() || b1 < b2 {
        RhsCase::Infeasible
    } else if b1.is_zero() {
        RhsCase::Origin
    } else if b2.is_zero() {
        RhsCase::Axis
    } else if b1 == b2 {
        RhsCase::Edge
    } else {
        RhsCase::Interior
    }
}

/// Whether `b` lies in the core `{ b1 > b2 > 0 }` of `A(P)`.
pub fn icr_membership(b: &Rhs) -> bool {
    rhs_classify(b) == RhsCase::Interior
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualPoint {
    pub y1: Ratio,
    pub y2: Ratio,
}

impl DualPoint {
    pub fn new(y1: Ratio, y2: Ratio) -> Self {
        DualPoint { y1, y2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attainment {
    AttainedWithWitness(DualPoint),
    NotAttained,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    /// Primal value `φ(c, b)`.
    pub phi: XReal,
    /// Dual value `ψ(c, b)`. When only an enclosure is known this is its
    /// lower end, achieved by a feasible dual point.
    pub psi: XReal,
    /// `φ − ψ`; `+inf` with `gap_defined = false` when both values are `+inf`.
    pub gap: XReal,
    pub gap_defined: bool,
    pub beta_bar: XReal,
    pub u_bar: XReal,
    pub attainment: Attainment,
    pub rhs_case: RhsCase,
    /// Certified `[lo, hi]` around `ψ` when it was not computed exactly.
    pub psi_enclosure: Option<(Ratio, Ratio)>,
}

/// Closed-form values on the axis `b = (b1, 0)`, `b1 > 0`:
/// `φ = b1·c_0`, `ψ = b1·ū`, `g = b1·max{0, β_0 − β̄}`.
pub fn gap_closed_form(c: &CostSpec, b: &Rhs) -> Result<GapReport> {
    if rhs_classify(b) != RhsCase::Axis {
        return contract("closed form needs b = (b1, 0) with b1 > 0; use gap_report");
    }
    let b1 = &b.b1;
    let beta0 = c.beta0();
    let beta_bar = c.beta_bar_finite();
    let u_bar = c.u_bar();
    let excess = (&beta0 - &beta_bar).max(Ratio::zero());
    Ok(GapReport {
        phi: XReal::Finite(b1 * c.c0()),
        psi: XReal::Finite(b1 * &u_bar),
        gap: XReal::Finite(b1 * excess),
        gap_defined: true,
        beta_bar: XReal::Finite(beta_bar),
        u_bar: XReal::Finite(u_bar),
        attainment: dual_optimum_status(c, b)?,
        rhs_case: RhsCase::Axis,
        psi_enclosure: None,
    })
}

/// The dual point `(u + β', v'')` with `v'' = min{v, v + inf{β_k − β'·k}}`.
///
/// Requires `0 ≤ β' ≤ β_0` and a finite shifted infimum (guaranteed when
/// `β' < β̄`).
pub fn construct_dual_optimal(c: &CostSpec, beta_prime: &Ratio) -> Result<DualPoint> {
    if beta_prime.is_negative() || *beta_prime > c.beta0() {
        return contract("construct_dual_optimal needs 0 <= beta' <= beta_0");
    }
    match c.shifted_inf(beta_prime) {
        ShiftedInf::NegInf => contract("inf { beta_k - beta' k } is -inf: no dual point with this y1"),
        ShiftedInf::Finite { value, .. } => Ok(DualPoint::new(
            c.u() + beta_prime,
            c.v() + value.min(Ratio::zero()),
        )),
    }
}

/// Whether the axis dual problem attains its supremum, with a maximizer.
pub fn dual_optimum_status(c: &CostSpec, b: &Rhs) -> Result<Attainment> {
    if rhs_classify(b) != RhsCase::Axis {
        return contract("dual_optimum_status needs b = (b1, 0) with b1 > 0");
    }
    let beta0 = c.beta0();
    let beta_bar = c.beta_bar_finite();
    if beta0.is_zero() || beta_bar.is_zero() {
        return Ok(Attainment::AttainedWithWitness(DualPoint::new(
            c.u().clone(),
            c.v().clone(),
        )));
    }
    if beta0 < beta_bar {
        return construct_dual_optimal(c, &beta0).map(Attainment::AttainedWithWitness);
    }
    // β_0 ≥ β̄ > 0
    match c.shifted_inf(&beta_bar) {
        ShiftedInf::NegInf => Ok(Attainment::NotAttained),
        ShiftedInf::Finite { .. } => {
            construct_dual_optimal(c, &beta_bar).map(Attainment::AttainedWithWitness)
        }
    }
}

/// Dual optimal value for an arbitrary right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualSup {
    /// Exact supremum, with a maximizer when it is attained.
    Exact {
        value: Ratio,
        witness: Option<DualPoint>,
    },
    /// `lo ≤ ψ ≤ hi`; `witness` is feasible with objective `lo`.
    Enclosure {
        lo: Ratio,
        hi: Ratio,
        witness: DualPoint,
    },
    /// `ψ = +inf`: `ray` is a recession direction of the dual feasible set
    /// with positive objective.
    Unbounded { ray: (Ratio, Ratio) },
}

impl DualSup {
    /// Certified lower bound.
    pub fn lower(&self) -> XReal {
        match self {
            DualSup::Exact { value, .. } => XReal::Finite(value.clone()),
            DualSup::Enclosure { lo, .. } => XReal::Finite(lo.clone()),
            DualSup::Unbounded { .. } => XReal::PosInf,
        }
    }

    /// Certified upper bound.
    pub fn upper(&self) -> XReal {
        match self {
            DualSup::Exact { value, .. } => XReal::Finite(value.clone()),
            DualSup::Enclosure { hi, .. } => XReal::Finite(hi.clone()),
            DualSup::Unbounded { .. } => XReal::PosInf,
        }
    }

    /// The value when it is known exactly.
    pub fn exact(&self) -> Option<XReal> {
        match self {
            DualSup::Exact { value, .. } => Some(XReal::Finite(value.clone())),
            DualSup::Unbounded { .. } => Some(XReal::PosInf),
            DualSup::Enclosure { .. } => None,
        }
    }
}

/// `ψ(c, b) = sup { b1·y1 + b2·y2 | y dual feasible }`.
///
/// Outside `A(P)` the supremum is `+inf` and a recession ray is returned.
/// On the axis the value is `b1·min{c_0, u + β̄}`. With `b2 > 0` and a
/// linear tail (`s = 0`) it is computed exactly from finitely many
/// constraints; with `s ≠ 0` it is bracketed by a supergradient search and
/// returned exactly when the bracket closes, otherwise as an enclosure of
/// width at most `eps`.
pub fn dual_sup_general(c: &CostSpec, b: &Rhs, eps: &Ratio) -> Result<DualSup> {
    if !eps.is_positive() {
        return contract("enclosure width eps must be positive");
    }
    match rhs_classify(b) {
        RhsCase::Infeasible => {
            let ray = if b.b2.is_negative() {
                (int(0), int(-1))
            } else {
                (int(-1), int(1))
            };
            Ok(DualSup::Unbounded { ray })
        }
        RhsCase::Origin => Ok(DualSup::Exact {
            value: Ratio::zero(),
            witness: Some(DualPoint::new(c.u().clone(), c.v().clone())),
        }),
        RhsCase::Axis => Ok(axis_sup(c, &b.b1)),
        RhsCase::Edge | RhsCase::Interior => {
            let problem = SlopeProblem::new(c, b);
            if c.beta().tail().sqrt_coeff.is_zero() {
                Ok(problem.maximize_linear_tail())
            } else {
                problem.maximize_bracketed(eps)
            }
        }
    }
}

fn axis_sup(c: &CostSpec, b1: &Ratio) -> DualSup {
    let top = c.c0().min(c.u() + c.beta_bar_finite());
    let witness = match c.y2_cap(&top) {
        XReal::Finite(cap) => Some(DualPoint::new(top.clone(), cap.min(c.v().clone()))),
        _ => None,
    };
    DualSup::Exact {
        value: b1 * top,
        witness,
    }
}

/// The dual with `b2 > 0` reduced to one variable `t = y1 − u`:
/// maximize `f(t) = b1·(u + t) + b2·(v + m(t))` over `t ≤ β_0`, where
/// `m(t) = inf { β_k − t·k | k ≥ 1 }` is concave. At `t` with minimizing
/// index `k*`, `b1 − b2·k*` is a supergradient of `f`.
struct SlopeProblem<'a> {
    c: &'a CostSpec,
    b: &'a Rhs,
}

struct Probe {
    t: Ratio,
    value: Ratio,
    slope: Ratio,
    point: DualPoint,
}

impl<'a> SlopeProblem<'a> {
    fn new(c: &'a CostSpec, b: &'a Rhs) -> Self {
        SlopeProblem { c, b }
    }

    fn probe(&self, t: Ratio) -> Option<Probe> {
        if t > self.c.beta0() {
            return None;
        }
        match self.c.shifted_inf(&t) {
            ShiftedInf::NegInf => None,
            ShiftedInf::Finite { value: m, argmin } => {
                let point = DualPoint::new(self.c.u() + &t, self.c.v() + m);
                let value = self.b.objective(&point);
                let k = Ratio::from_integer(BigUint::into(argmin));
                let slope = &self.b.b1 - &self.b.b2 * k;
                Some(Probe {
                    t,
                    value,
                    slope,
                    point,
                })
            }
        }
    }

    fn exact(p: Probe) -> DualSup {
        DualSup::Exact {
            value: p.value,
            witness: Some(p.point),
        }
    }

    /// Right end of the domain of `f`: `min{β_0, a}`.
    fn right_end(&self) -> Ratio {
        self.c.beta0().min(self.c.beta_bar_finite())
    }

    /// `s = 0`: for `t ≤ a` the tail terms `(a − t)·k + b` are nondecreasing in
    /// `k`, so only `k = 1..=max(K, 1)` can be active. The concave piecewise
    /// linear `f` peaks at the right end or at an intersection of two of these
    /// lines.
    fn maximize_linear_tail(&self) -> DualSup {
        let beta = self.c.beta();
        let last = beta.prefix_len().max(1) as u64;
        let lines: Vec<(Ratio, Ratio)> = (1..=last)
            .map(|k| (Ratio::from_integer(k.into()), beta.eval(k)))
            .collect();
        let right = self.right_end();
        let mut candidates = alloc::vec![right.clone()];
        for (i, (ki, bi)) in lines.iter().enumerate() {
            for (kj, bj) in &lines[i + 1..] {
                let t = (bj - bi) / (kj - ki);
                if t <= right {
                    candidates.push(t);
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut best: Option<Probe> = None;
        for t in candidates {
            let p = self.probe(t).expect("t <= min(beta0, a) with a linear tail");
            if best.as_ref().is_none_or(|q| p.value > q.value) {
                best = Some(p);
            }
        }
        Self::exact(best.expect("right end is a candidate"))
    }

    fn maximize_bracketed(&self, eps: &Ratio) -> Result<DualSup> {
        let right = self.right_end();
        let half = Ratio::new(1.into(), 2.into());

        let mut left: Option<Probe> = None;
        let mut rightp: Probe = match self.probe(right.clone()) {
            Some(p) if !p.slope.is_negative() => return Ok(Self::exact(p)),
            Some(p) => p,
            None => {
                // open at t = a: walk toward a until the supergradient turns negative
                let mut delta = int(1);
                loop {
                    let p = self
                        .probe(&right - &delta)
                        .expect("points left of the slope are in the domain");
                    if p.slope.is_zero() {
                        return Ok(Self::exact(p));
                    }
                    if p.slope.is_negative() {
                        break p;
                    }
                    left = Some(p);
                    delta *= &half;
                }
            }
        };

        let mut leftp = match left {
            Some(p) => p,
            None => {
                let mut step = int(1);
                loop {
                    let p = self.probe(&rightp.t - &step).expect("domain extends to -inf");
                    if p.slope.is_zero() {
                        return Ok(Self::exact(p));
                    }
                    if p.slope.is_positive() {
                        break p;
                    }
                    rightp = p;
                    step *= int(2);
                }
            }
        };

        for round in 0u32..100_000 {
            // f ≤ both supporting lines; their crossing bounds the maximum
            let gap_slope = &leftp.slope - &rightp.slope;
            let cross = (&rightp.value - &leftp.value + &leftp.slope * &leftp.t
                - &rightp.slope * &rightp.t)
                / gap_slope;
            let hi = &leftp.value + &leftp.slope * (&cross - &leftp.t);
            let best = if leftp.value >= rightp.value {
                &leftp
            } else {
                &rightp
            };
            if hi == best.value {
                return Ok(DualSup::Exact {
                    value: best.value.clone(),
                    witness: Some(best.point.clone()),
                });
            }
            if &hi - &best.value <= *eps {
                return Ok(DualSup::Enclosure {
                    lo: best.value.clone(),
                    hi,
                    witness: best.point.clone(),
                });
            }
            // alternate the cut point with plain bisection so the bracket shrinks
            let t = if round % 2 == 0 {
                cross
            } else {
                (&leftp.t + &rightp.t) * &half
            };
            let p = self.probe(t).expect("bracket lies in the domain");
            if p.slope.is_zero() || (round % 2 == 0 && p.value == hi) {
                return Ok(Self::exact(p));
            }
            if p.slope.is_positive() {
                leftp = p;
            } else {
                rightp = p;
            }
        }
        Err(Error::Domain("dual enclosure did not converge"))
    }
}

/// `φ`, `ψ` and the gap for any right-hand side, using [`default_eps`] for
/// enclosures.
pub fn gap_report(c: &CostSpec, b: &Rhs) -> GapReport {
    gap_report_with_eps(c, b, &default_eps())
}

/// [`gap_report`] with an explicit enclosure width.
///
/// * infeasible `b`: `φ = +inf` (empty infimum), `ψ = +inf`, gap undefined;
/// * axis: closed form;
/// * origin: everything 0;
/// * edge `b1 = b2`: the only primal point is `b1·e_1`, so `φ = b1·c_1`;
/// * interior: `φ = ψ`.
pub fn gap_report_with_eps(c: &CostSpec, b: &Rhs, eps: &Ratio) -> GapReport {
    let case = rhs_classify(b);
    let beta_bar = c.beta_bar();
    let u_bar = XReal::Finite(c.u_bar());
    if case == RhsCase::Axis {
        return gap_closed_form(c, b).expect("axis case");
    }
    let eps = if eps.is_positive() {
        eps.clone()
    } else {
        default_eps()
    };
    let sup = dual_sup_general(c, b, &eps).expect("eps is positive");
    let (psi, enclosure, attainment) = match &sup {
        DualSup::Exact { value, witness } => (
            XReal::Finite(value.clone()),
            None,
            witness
                .clone()
                .map_or(Attainment::Unknown, Attainment::AttainedWithWitness),
        ),
        DualSup::Enclosure { lo, hi, .. } => (
            XReal::Finite(lo.clone()),
            Some((lo.clone(), hi.clone())),
            Attainment::Unknown,
        ),
        DualSup::Unbounded { .. } => (XReal::PosInf, None, Attainment::NotAttained),
    };
    let phi = match case {
        RhsCase::Infeasible => XReal::PosInf,
        RhsCase::Origin => XReal::zero(),
        RhsCase::Edge => XReal::Finite(&b.b1 * c.eval(1)),
        RhsCase::Interior => psi.clone(),
        RhsCase::Axis => unreachable!(),
    };
    let (gap, gap_defined) = match phi.checked_sub(&psi) {
        Ok(g) => (g, true),
        Err(_) => (XReal::PosInf, false),
    };
    GapReport {
        phi,
        psi,
        gap,
        gap_defined,
        beta_bar,
        u_bar,
        attainment,
        rhs_case: case,
        psi_enclosure: enclosure,
    }
}
