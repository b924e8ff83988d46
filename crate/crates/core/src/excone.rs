//! A three-dimensional second-order-cone program with a positive duality gap.
//!
//! For `y ∈ ℝ³` the problem is: minimize `x2` over `x = (x1, x2)` with
//! `x2 ≥ 0` and `(x1 − y1, x2 − y2, −y3) ∈ Q0`, where
//! `Q0 = { (z1, z2, z3) | z1, z3 ≥ 0, z2² ≤ 2·z1·z3 }`. Its value function
//! `h0` is `y2` on `ℝ × ℝ₊ × {0}`, `0` when `y3 < 0` and `+inf` elsewhere,
//! while its closed convex hull vanishes on all of `y3 ≤ 0`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{int, Ratio, XReal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub y1: Ratio,
    pub y2: Ratio,
    pub y3: Ratio,
}

impl Point3 {
    pub fn new(y1: Ratio, y2: Ratio, y3: Ratio) -> Self {
        Point3 { y1, y2, y3 }
    }

    pub fn scaled(&self, alpha: &Ratio) -> Self {
        Point3::new(alpha * &self.y1, alpha * &self.y2, alpha * &self.y3)
    }
}

/// Primal point; feasible points have `x2 ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimalPoint2 {
    pub x1: Ratio,
    pub x2: Ratio,
}

impl PrimalPoint2 {
    pub fn new(x1: Ratio, x2: Ratio) -> Self {
        PrimalPoint2 { x1, x2 }
    }
}

pub fn h0_closed(y: &Point3) -> XReal {
    if y.y3.is_negative() {
        XReal::zero()
    } else if y.y3.is_zero() && !y.y2.is_negative() {
        XReal::Finite(y.y2.clone())
    } else {
        XReal::PosInf
    }
}

/// `x ∈ ℝ × ℝ₊` and `A0·x − y ∈ Q0`, checked exactly.
pub fn soc_feasible(x: &PrimalPoint2, y: &Point3) -> bool {
    let z1 = &x.x1 - &y.y1;
    let z2 = &x.x2 - &y.y2;
    let z3 = -&y.y3;
    !x.x2.is_negative()
        && !z1.is_negative()
        && !z3.is_negative()
        && &z2 * &z2 <= int(2) * &z1 * &z3
}

/// A feasible point attaining `h0(y)`, or `None` when `h0(y) = +inf`.
pub fn h0_witness(y: &Point3) -> Option<(PrimalPoint2, XReal)> {
    let value = h0_closed(y);
    let x = match &value {
        XReal::PosInf | XReal::NegInf => return None,
        _ if y.y3.is_zero() => PrimalPoint2::new(y.y1.clone(), y.y2.clone()),
        // y3 < 0: x2 = 0 and x1 − y1 = y2² / (−2·y3) puts the point on the cone boundary
        _ => {
            let lift = &y.y2 * &y.y2 / (int(-2) * &y.y3);
            PrimalPoint2::new(&y.y1 + lift, Ratio::zero())
        }
    };
    Some((x, value))
}

/// `h0**(y)`: `0` for `y3 ≤ 0`, `+inf` otherwise.
pub fn h0_biconjugate(y: &Point3) -> XReal {
    if y.y3.is_positive() {
        XReal::PosInf
    } else {
        XReal::zero()
    }
}

/// `(φ, ψ, g)` = `(h0(y), h0**(y), h0(y) − h0**(y))` for `y3 ≤ 0`.
pub fn gap_exz(y: &Point3) -> Result<(XReal, XReal, XReal)> {
    if y.y3.is_positive() {
        return Err(Error::Domain("gap_exz needs y3 <= 0"));
    }
    let phi = h0_closed(y);
    let psi = h0_biconjugate(y);
    let gap = phi.checked_sub(&psi)?;
    Ok((phi, psi, gap))
}
