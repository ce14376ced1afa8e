//! Truncated Chow rings and a formal projective-bundle calculus.
//!
//! Two base rings implement [`ChowRing`]: [`ChowClass`] for `A_*(P^n) = Z[h]/(h^{n+1})`
//! and [`FormalClass`] for integer polynomials in weighted Chern symbols
//! truncated above the base dimension. The bundle operations in [`bundle`] and
//! the chain check in [`chain`] are generic over both.

pub mod bundle;
pub mod chain;
mod class;
mod formal;

use std::fmt;

pub use bundle::{top_chern_twist, BundleModel, ProjBundleClass};
pub use chain::{proof_chain_check, ChainStep, ProofChainReport, MAX_CHAIN_DIMENSION};
pub use class::{csm_projective_subspace, dual_class, segre_of_bundle, whitney_product, ChowClass};
pub use formal::{FormalClass, FormalSpace};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ChowError {
    #[error("classes live in different truncations (n = {left} vs n = {right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("class is not invertible: constant term is {constant}, expected 1")]
    NonUnit { constant: i64 },
    #[error("{what} = {value} is outside the allowed range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("bundle has rank {found}, expected rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("a class needs at least one coefficient")]
    Empty,
}

/// A commutative ring graded by codimension and truncated above `dimension()`.
///
/// Binary operations assume both operands come from the same truncation.
pub trait ChowRing: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Highest codimension that survives truncation.
    fn dimension(&self) -> usize;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn constant_term(&self) -> i64;
    /// Codimension-`k` component.
    fn graded_part(&self, k: usize) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }

    fn negated(&self) -> Self {
        self.scaled(-1)
    }
}

/// Multiplicative inverse of a class with constant term 1.
///
/// `u = 1 - x` with `x` nilpotent of order `dimension() + 1`, so the geometric
/// series terminates.
pub fn inverse<R: ChowRing>(u: &R) -> Result<R, ChowError> {
    let constant = u.constant_term();
    if constant != 1 {
        return Err(ChowError::NonUnit { constant });
    }
    let one = u.one_like();
    let x = one.minus(u);
    let mut sum = one.clone();
    let mut power = one;
    for _ in 0..u.dimension() {
        power = power.times(&x);
        if power.is_zero() {
            break;
        }
        sum = sum.plus(&power);
    }
    Ok(sum)
}
