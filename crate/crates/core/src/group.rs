//! Finite groups as validated Cayley tables.

use crate::table::OpTable;
use thiserror::Error;

/// Why a table fails to be a group. A diagnostic value, not an exception.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupDefect {
    #[error("not associative at ({}, {}, {})", .0[0], .0[1], .0[2])]
    NotAssociative([usize; 3]),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
}

/// A finite group: an associative table together with its located
/// identity and the full inverse array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    op: OpTable,
    identity: usize,
    inverse: Vec<usize>,
}

/// Checks the group axioms exhaustively, locating the identity and
/// computing the inverse of every element.
pub fn check_group(op: &OpTable) -> Result<FiniteGroup, GroupDefect> {
    if let Some(triple) = op.associativity_counterexample() {
        return Err(GroupDefect::NotAssociative(triple));
    }
    let n = op.size();
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| op.apply(e, x) == x && op.apply(x, e) == x))
        .ok_or(GroupDefect::NoIdentity)?;
    let mut inverse = Vec::with_capacity(n);
    for x in 0..n {
        let inv = (0..n)
            .find(|&y| op.apply(x, y) == identity && op.apply(y, x) == identity)
            .ok_or(GroupDefect::NoInverse { element: x })?;
        inverse.push(inv);
    }
    Ok(FiniteGroup {
        op: op.clone(),
        identity,
        inverse,
    })
}

impl FiniteGroup {
    /// Validates and wraps an operation table; same as [`check_group`].
    pub fn from_table(op: OpTable) -> Result<Self, GroupDefect> {
        check_group(&op)
    }

    pub fn order(&self) -> usize {
        self.op.size()
    }

    pub fn op(&self) -> &OpTable {
        &self.op
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.op.apply(x, y)
    }

    #[inline]
    pub fn inverse_of(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.op.elements()
    }
}
