//! Finite truncations of the Gale primal and dual, solved exactly by
//! exhaustive enumeration.
//!
//! `P_N` keeps the variables `x_0..=x_N`; `D_N` keeps the constraints
//! `k ≤ N`. `D_N` is the LP dual of `P_N`, so the two values agree whenever
//! both are finite. Neither routine uses the closed forms in [`crate::gale`].

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{contract, Result};
use crate::gale::{CostSpec, DualPoint, GapReport, Rhs};
use crate::numeric::{int, Ratio, XReal};

/// Truncated primal: minimize `Σ_{k≤N} c_k x_k` subject to
/// `x_0 + Σ k·x_k = b1`, `Σ_{k≥1} x_k = b2`, `x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPrimal {
    cost: Vec<Ratio>,
    b: Rhs,
}

/// Truncated dual: maximize `b1·y1 + b2·y2` subject to `y1 ≤ c_0`,
/// `k·y1 + y2 ≤ c_k` for `1 ≤ k ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncDual {
    cost: Vec<Ratio>,
    b: Rhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Nonzero entries `(k, x_k)` in increasing `k`.
    Primal(Vec<(u64, Ratio)>),
    Dual(DualPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ray {
    Primal(Vec<(u64, Ratio)>),
    Dual(Ratio, Ratio),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    OptimalBasis,
    UnboundedRay(Ray),
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub value: XReal,
    pub witness: Option<Witness>,
    pub certificate: Certificate,
}

impl LpOutcome {
    fn infeasible(value: XReal) -> Self {
        LpOutcome {
            value,
            witness: None,
            certificate: Certificate::Infeasible,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.certificate == Certificate::OptimalBasis
    }
}

fn costs(c: &CostSpec, n: u64) -> Result<Vec<Ratio>> {
    if n == 0 {
        return contract("truncation level N must be at least 1");
    }
    Ok((0..=n).map(|k| c.eval(k)).collect())
}

fn idx(k: u64) -> Ratio {
    Ratio::from_integer(BigInt::from(k))
}

impl TruncPrimal {
    pub fn new(c: &CostSpec, b: &Rhs, n: u64) -> Result<Self> {
        Ok(TruncPrimal {
            cost: costs(c, n)?,
            b: b.clone(),
        })
    }

    /// From raw costs `c_0..=c_N`, `N ≥ 1`.
    pub fn from_costs(cost: Vec<Ratio>, b: Rhs) -> Result<Self> {
        if cost.len() < 2 {
            return contract("truncation needs costs c_0..=c_N with N >= 1");
        }
        Ok(TruncPrimal { cost, b })
    }

    pub fn n(&self) -> u64 {
        self.cost.len() as u64 - 1
    }

    pub fn cost(&self) -> &[Ratio] {
        &self.cost
    }

    pub fn rhs(&self) -> &Rhs {
        &self.b
    }

    /// Column `k` of the constraint matrix: `(1, 0)` for `k = 0`, else `(k, 1)`.
    pub fn column(k: u64) -> (u64, u64) {
        if k == 0 {
            (1, 0)
        } else {
            (k, 1)
        }
    }

    fn objective(&self, x: &[(u64, Ratio)]) -> Ratio {
        x.iter()
            .map(|(k, xk)| &self.cost[*k as usize] * xk)
            .fold(Ratio::zero(), |acc, t| acc + t)
    }

    /// Whether `x` satisfies both rows and `x ≥ 0` exactly.
    pub fn is_feasible(&self, x: &[(u64, Ratio)]) -> bool {
        let mut row1 = Ratio::zero();
        let mut row2 = Ratio::zero();
        for (k, xk) in x {
            if xk.is_negative() || *k > self.n() {
                return false;
            }
            let (a1, a2) = Self::column(*k);
            row1 += idx(a1) * xk;
            row2 += idx(a2) * xk;
        }
        row1 == self.b.b1 && row2 == self.b.b2
    }

    /// A direction `d ≥ 0`, `A d = 0`, `c·d < 0` supported on two linearly
    /// dependent columns, if one exists.
    fn recession_ray(&self) -> Option<Vec<(u64, Ratio)>> {
        let n = self.n();
        for i in 0..=n {
            let (a1, a2) = Self::column(i);
            for j in i + 1..=n {
                let (b1, b2) = Self::column(j);
                if (a1 as i128) * (b2 as i128) - (a2 as i128) * (b1 as i128) != 0 {
                    continue;
                }
                // col_j = λ·col_i; a ray needs λ < 0, impossible for nonnegative
                // columns, so this stays empty unless the column family changes
                let lambda = if a1 != 0 {
                    Ratio::new((b1 as i64).into(), (a1 as i64).into())
                } else {
                    Ratio::new((b2 as i64).into(), (a2 as i64).into())
                };
                if lambda.is_negative() {
                    let d = alloc::vec![(i, -lambda.clone()), (j, int(1))];
                    if self.objective(&d).is_negative() {
                        return Some(d);
                    }
                }
            }
        }
        None
    }

    /// Exact optimum over all basic solutions (supports of size ≤ 2).
    ///
    /// Supports are scanned in lexicographic order and only strict
    /// improvements replace the incumbent, so the reported witness has the
    /// lexicographically smallest optimal support. With `r = b1 / b2`, a
    /// two-column support `{i, j}` has strictly positive entries iff
    /// `i < r < j` (`i ≥ 1`) or `j < r` (`i = 0`); other supports are
    /// skipped without solving.
    pub fn solve(&self) -> LpOutcome {
        let (b1, b2) = (&self.b.b1, &self.b.b2);
        if b1.is_negative() || b2.is_negative() || b1 < b2 {
            return LpOutcome::infeasible(XReal::PosInf);
        }
        if let Some(ray) = self.recession_ray() {
            return LpOutcome {
                value: XReal::NegInf,
                witness: None,
                certificate: Certificate::UnboundedRay(Ray::Primal(ray)),
            };
        }

        let mut best: Option<(Ratio, Vec<(u64, Ratio)>)> = None;
        let mut offer = |x: Vec<(u64, Ratio)>, value: Ratio| {
            if best.as_ref().is_none_or(|(v, _)| value < *v) {
                best = Some((value, x));
            }
        };

        if b1.is_zero() {
            // b2 = 0 too: only x = 0
            offer(Vec::new(), Ratio::zero());
        }
        let n = self.n();
        for i in 0..=n {
            // single column i
            if i == 0 && b2.is_zero() && b1.is_positive() {
                offer(alloc::vec![(0, b1.clone())], &self.cost[0] * b1);
            }
            if i >= 1 && b2.is_positive() && idx(i) * b2 == *b1 {
                offer(alloc::vec![(i, b2.clone())], &self.cost[i as usize] * b2);
            }
            if !b2.is_positive() {
                continue;
            }
            // pairs {i, j}, j > i
            if i == 0 {
                // x_j = b2, x_0 = b1 − j·b2 > 0
                for j in 1..=n {
                    let x0 = b1 - idx(j) * b2;
                    if !x0.is_positive() {
                        break;
                    }
                    let value = &self.cost[0] * &x0 + &self.cost[j as usize] * b2;
                    offer(alloc::vec![(0, x0), (j, b2.clone())], value);
                }
            } else {
                if idx(i) * b2 >= *b1 {
                    continue;
                }
                // i < r: every j > r works
                let r = b1 / b2;
                let first = (r.floor().to_integer() + 1u32).max(BigInt::from(i + 1));
                let Ok(first) = u64::try_from(first) else {
                    continue;
                };
                let ci = &self.cost[i as usize];
                for j in first..=n {
                    let span = idx(j - i);
                    let xi = (idx(j) * b2 - b1) / &span;
                    let xj = (b1 - idx(i) * b2) / &span;
                    let value = ci * &xi + &self.cost[j as usize] * &xj;
                    offer(alloc::vec![(i, xi), (j, xj)], value);
                }
            }
        }

        match best {
            Some((value, x)) => LpOutcome {
                value: XReal::Finite(value),
                witness: Some(Witness::Primal(x)),
                certificate: Certificate::OptimalBasis,
            },
            None => LpOutcome::infeasible(XReal::PosInf),
        }
    }
}

/// Index of the angularly extreme normals of a set lying in the closed first
/// quadrant, by cross product.
fn extreme_normals(normals: &[(Ratio, Ratio)]) -> (usize, usize) {
    let cross = |a: &(Ratio, Ratio), b: &(Ratio, Ratio)| &a.0 * &b.1 - &a.1 * &b.0;
    let (mut lo, mut hi) = (0, 0);
    for i in 1..normals.len() {
        if cross(&normals[i], &normals[lo]).is_positive() {
            lo = i;
        }
        if cross(&normals[hi], &normals[i]).is_positive() {
            hi = i;
        }
    }
    (lo, hi)
}

impl TruncDual {
    pub fn new(c: &CostSpec, b: &Rhs, n: u64) -> Result<Self> {
        Ok(TruncDual {
            cost: costs(c, n)?,
            b: b.clone(),
        })
    }

    pub fn from_costs(cost: Vec<Ratio>, b: Rhs) -> Result<Self> {
        if cost.len() < 2 {
            return contract("truncation needs costs c_0..=c_N with N >= 1");
        }
        Ok(TruncDual { cost, b })
    }

    pub fn n(&self) -> u64 {
        self.cost.len() as u64 - 1
    }

    pub fn is_feasible(&self, y: &DualPoint) -> bool {
        y.y1 <= self.cost[0]
            && (1..=self.n()).all(|k| idx(k) * &y.y1 + &y.y2 <= self.cost[k as usize])
    }

    /// Constraint normals `(1, 0)` and `(k, 1)`, in constraint order.
    fn normals(&self) -> Vec<(Ratio, Ratio)> {
        core::iter::once((int(1), int(0)))
            .chain((1..=self.n()).map(|k| (idx(k), int(1))))
            .collect()
    }

    /// Exact optimum over the vertices of the feasible polygon.
    ///
    /// The recession cone `{d | n·d ≤ 0}` is spanned by the two directions
    /// orthogonal to the angularly extreme normals; a positive objective
    /// along either one certifies `+inf`. Otherwise the vertices are the
    /// breakpoints of the lower envelope `min_k (c_k − k·y1)` left of
    /// `y1 = c_0`, plus the point on `y1 = c_0`. Among optimal vertices the
    /// one with the smallest `y1` is reported.
    pub fn solve(&self) -> LpOutcome {
        let normals = self.normals();
        let (lo, hi) = extreme_normals(&normals);
        let rays = [
            (normals[lo].1.clone(), -normals[lo].0.clone()),
            (-normals[hi].1.clone(), normals[hi].0.clone()),
        ];
        for (d1, d2) in rays {
            let gain = &self.b.b1 * &d1 + &self.b.b2 * &d2;
            if gain.is_positive() {
                return LpOutcome {
                    value: XReal::PosInf,
                    witness: None,
                    certificate: Certificate::UnboundedRay(Ray::Dual(d1, d2)),
                };
            }
        }

        let c0 = &self.cost[0];
        let line = |k: u64, y1: &Ratio| &self.cost[k as usize] - idx(k) * y1;
        let meet = |j: u64, k: u64| (&self.cost[k as usize] - &self.cost[j as usize]) / idx(k - j);

        // slopes −1, −2, … arrive in decreasing order
        let mut hull: Vec<u64> = Vec::new();
        for k in 1..=self.n() {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if meet(a, k) <= meet(a, b) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(k);
        }

        let mut vertices: Vec<DualPoint> = hull
            .windows(2)
            .map(|w| meet(w[0], w[1]))
            .filter(|x| x < c0)
            .map(|x| {
                let y2 = hull
                    .iter()
                    .map(|&k| line(k, &x))
                    .min()
                    .expect("hull is nonempty");
                DualPoint::new(x, y2)
            })
            .collect();
        let cap = hull
            .iter()
            .map(|&k| line(k, c0))
            .min()
            .expect("N >= 1");
        vertices.push(DualPoint::new(c0.clone(), cap));

        let mut best: Option<(Ratio, DualPoint)> = None;
        for p in vertices {
            let value = self.b.objective(&p);
            let better = match &best {
                None => true,
                Some((v, q)) => match value.cmp(v) {
                    Ordering::Greater => true,
                    Ordering::Equal => (&p.y1, &p.y2) < (&q.y1, &q.y2),
                    Ordering::Less => false,
                },
            };
            if better {
                best = Some((value, p));
            }
        }
        let (value, point) = best.expect("at least one vertex");
        LpOutcome {
            value: XReal::Finite(value),
            witness: Some(Witness::Dual(point)),
            certificate: Certificate::OptimalBasis,
        }
    }
}

pub fn solve_trunc_primal(c: &CostSpec, b: &Rhs, n: u64) -> Result<LpOutcome> {
    Ok(TruncPrimal::new(c, b, n)?.solve())
}

pub fn solve_trunc_dual(c: &CostSpec, b: &Rhs, n: u64) -> Result<LpOutcome> {
    Ok(TruncDual::new(c, b, n)?.solve())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: u64,
    pub primal: XReal,
    pub dual: XReal,
}

/// `(N, val(P_N), val(D_N))` for strictly increasing `N ≥ 1`.
pub fn truncation_sweep(c: &CostSpec, b: &Rhs, ns: &[u64]) -> Result<Vec<SweepRow>> {
    if ns.is_empty() {
        return contract("sweep needs at least one truncation level");
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return contract("sweep levels must be strictly increasing");
    }
    ns.iter()
        .map(|&n| {
            Ok(SweepRow {
                n,
                primal: solve_trunc_primal(c, b, n)?.value,
                dual: solve_trunc_dual(c, b, n)?.value,
            })
        })
        .collect()
}

/// Checks a report against truncations: every `val(P_N)` bounds `φ` from
/// above and every `val(D_N)` bounds `ψ` from above (the reported upper end
/// of an enclosure counts as `ψ`), and both columns are nonincreasing.
pub fn confirm_report(report: &GapReport, c: &CostSpec, b: &Rhs, ns: &[u64]) -> Result<bool> {
    let rows = truncation_sweep(c, b, ns)?;
    let psi_floor = report.psi.clone();
    let sandwich = rows
        .iter()
        .all(|r| r.primal >= report.phi && r.dual >= psi_floor);
    let monotone = rows
        .windows(2)
        .all(|w| w[1].primal <= w[0].primal && w[1].dual <= w[0].dual);
    Ok(sandwich && monotone)
}
