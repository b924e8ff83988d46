//! Exact duality gaps for the perturbed Gale family of semi-infinite linear
//! programs
//!
//! ```text
//! minimize   Σₖ cₖ·xₖ
//! subject to x₀ + Σ_{k≥1} k·xₖ = b₁,   Σ_{k≥1} xₖ = b₂,   x ∈ ℝ₊^(ℕ)
//! ```
//!
//! with costs `c₀ = u + β₀`, `cₖ = k·u + v + βₖ` for a nonnegative sequence `β`.
//! Everything is rational and exact; where a supremum has no finite
//! description the result is a certified enclosure.
//!
//! Also included: a small conic program with a positive gap ([`excone`]) and
//! a non-closed image of a sequence cone ([`vsw`]).

#![no_std]

extern crate alloc;

pub mod error;
pub mod excone;
pub mod gale;
pub mod lp_oracle;
pub mod numeric;
pub mod seqcore;
pub mod vsw;

pub use error::{Error, Result};
pub use gale::{CostSpec, DualPoint, GapReport, Rhs, RhsCase};
pub use numeric::{Ratio, XReal};
pub use seqcore::{Tail, TailSeq};
