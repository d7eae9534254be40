//! Finite distributive lattices given by explicit join and meet tables.
//!
//! A lattice here is a pair of tables on a shared carrier satisfying,
//! exhaustively checked:
//!
//! * join and meet each associative, commutative, idempotent;
//! * absorption both ways: `a ∨ (a ∧ b) = a` and `a ∧ (a ∨ b) = a`;
//! * distributivity: `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` (and dually);
//! * the meet-derived order (`b ≤ a` iff `a ∧ b = b`) agrees with the
//!   join-derived order (`b ≤ a` iff `a ∨ b = a`).
//!
//! The derived partial order, the bottom element and element heights are
//! all computed from the tables.

use crate::table::OpTable;
use std::collections::BTreeSet;
use thiserror::Error;

/// Which of the two lattice operations a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
}

impl std::fmt::Display for LatticeOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeOp::Join => write!(f, "join"),
            LatticeOp::Meet => write!(f, "meet"),
        }
    }
}

/// First violated lattice law, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeDefect {
    #[error("join table has {join} elements but meet table has {meet}")]
    SizeMismatch { join: usize, meet: usize },
    #[error("{op} is not associative at ({}, {}, {})", .triple[0], .triple[1], .triple[2])]
    NotAssociative { op: LatticeOp, triple: [usize; 3] },
    #[error("{op} is not commutative at ({}, {})", .pair[0], .pair[1])]
    NotCommutative { op: LatticeOp, pair: [usize; 2] },
    #[error("{op} is not idempotent at {element}")]
    NotIdempotent { op: LatticeOp, element: usize },
    #[error("absorption a ∨ (a ∧ b) = a fails at ({}, {})", .pair[0], .pair[1])]
    JoinAbsorptionFails { pair: [usize; 2] },
    #[error("absorption a ∧ (a ∨ b) = a fails at ({}, {})", .pair[0], .pair[1])]
    MeetAbsorptionFails { pair: [usize; 2] },
    #[error("distributivity a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c) fails at ({}, {}, {})", .triple[0], .triple[1], .triple[2])]
    MeetOverJoinFails { triple: [usize; 3] },
    #[error("distributivity a ∨ (b ∧ c) = (a ∨ b) ∧ (a ∨ c) fails at ({}, {}, {})", .triple[0], .triple[1], .triple[2])]
    JoinOverMeetFails { triple: [usize; 3] },
    #[error("meet-derived and join-derived orders disagree at ({}, {})", .pair[0], .pair[1])]
    OrderDisagreement { pair: [usize; 2] },
}

/// A validated finite distributive lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDistributiveLattice {
    join: OpTable,
    meet: OpTable,
}

/// Verifies every distributive-lattice law exhaustively; the returned
/// defect names the first violated law in the order listed on
/// [`LatticeDefect`].
pub fn check_distributive_lattice(
    join: &OpTable,
    meet: &OpTable,
) -> Result<FiniteDistributiveLattice, LatticeDefect> {
    if join.size() != meet.size() {
        return Err(LatticeDefect::SizeMismatch {
            join: join.size(),
            meet: meet.size(),
        });
    }
    for (op, table) in [(LatticeOp::Join, join), (LatticeOp::Meet, meet)] {
        if let Some(triple) = table.associativity_counterexample() {
            return Err(LatticeDefect::NotAssociative { op, triple });
        }
        if let Some(pair) = table.commutativity_counterexample() {
            return Err(LatticeDefect::NotCommutative { op, pair });
        }
        if let Some(element) = table.idempotency_counterexample() {
            return Err(LatticeDefect::NotIdempotent { op, element });
        }
    }
    let n = join.size();
    for a in 0..n {
        for b in 0..n {
            if join.apply(a, meet.apply(a, b)) != a {
                return Err(LatticeDefect::JoinAbsorptionFails { pair: [a, b] });
            }
            if meet.apply(a, join.apply(a, b)) != a {
                return Err(LatticeDefect::MeetAbsorptionFails { pair: [a, b] });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = meet.apply(a, join.apply(b, c));
                let rhs = join.apply(meet.apply(a, b), meet.apply(a, c));
                if lhs != rhs {
                    return Err(LatticeDefect::MeetOverJoinFails { triple: [a, b, c] });
                }
            }
        }
    }
    // In a lattice each distributive law implies the other; both are
    // still checked so the diagnostic names whichever form is violated.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = join.apply(a, meet.apply(b, c));
                let rhs = meet.apply(join.apply(a, b), join.apply(a, c));
                if lhs != rhs {
                    return Err(LatticeDefect::JoinOverMeetFails { triple: [a, b, c] });
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let by_meet = meet.apply(a, b) == b;
            let by_join = join.apply(a, b) == a;
            if by_meet != by_join {
                return Err(LatticeDefect::OrderDisagreement { pair: [b, a] });
            }
        }
    }
    Ok(FiniteDistributiveLattice {
        join: join.clone(),
        meet: meet.clone(),
    })
}

impl FiniteDistributiveLattice {
    pub fn size(&self) -> usize {
        self.join.size()
    }

    pub fn join_table(&self) -> &OpTable {
        &self.join
    }

    pub fn meet_table(&self) -> &OpTable {
        &self.meet
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join.apply(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet.apply(a, b)
    }

    /// `b ≤ a` in the derived order, i.e. `a ∧ b = b`.
    #[inline]
    pub fn leq(&self, b: usize, a: usize) -> bool {
        self.meet(a, b) == b
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// The derived partial order as a set of `(lower, upper)` pairs.
    pub fn order_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut pairs = BTreeSet::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.leq(b, a) {
                    pairs.insert((b, a));
                }
            }
        }
        pairs
    }

    /// All `(lower, upper)` pairs in lexicographic order, including the
    /// reflexive ones. Convenient for indexing map families.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for upper in self.elements() {
            for lower in self.elements() {
                if self.leq(lower, upper) {
                    pairs.push((lower, upper));
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }

    /// The least element (meet of everything).
    pub fn bottom(&self) -> usize {
        let mut b = 0;
        for x in self.elements() {
            b = self.meet(b, x);
        }
        b
    }

    /// The greatest element (join of everything).
    pub fn top(&self) -> usize {
        let mut t = 0;
        for x in self.elements() {
            t = self.join(t, x);
        }
        t
    }

    /// Height of every element: the length of the longest chain from the
    /// bottom element up to it.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.size();
        // Order elements by how many elements lie below them; heights can
        // then be filled in a single pass.
        let below_count: Vec<usize> = (0..n)
            .map(|a| (0..n).filter(|&b| self.leq(b, a)).count())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| below_count[a]);
        let mut heights = vec![0usize; n];
        for &a in &order {
            heights[a] = (0..n)
                .filter(|&b| b != a && self.leq(b, a))
                .map(|b| heights[b] + 1)
                .max()
                .unwrap_or(0);
        }
        heights
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain() -> FiniteDistributiveLattice {
        let join = OpTable::from_fn(2, |a, b| a.max(b)).unwrap();
        let meet = OpTable::from_fn(2, |a, b| a.min(b)).unwrap();
        check_distributive_lattice(&join, &meet).unwrap()
    }

    #[test]
    fn two_chain_is_distributive() {
        let l = two_chain();
        assert_eq!(l.order_pairs(), BTreeSet::from([(0, 0), (1, 1), (0, 1)]));
    }

    #[test]
    fn boolean_four_element_lattice() {
        // 2-bit masks, join = or, meet = and: the power-set lattice of a
        // 2-element set.
        let join = OpTable::from_fn(4, |a, b| a | b).unwrap();
        let meet = OpTable::from_fn(4, |a, b| a & b).unwrap();
        let l = check_distributive_lattice(&join, &meet).unwrap();
        assert_eq!(l.order_pairs().len(), 9);
        // Subset order, independently: b ≤ a iff a | b == a.
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(l.leq(b, a), (a | b) == a);
            }
        }
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 3);
        assert_eq!(l.heights(), vec![0, 1, 1, 2]);
    }

    /// The diamond M3: bottom 0, three incomparable atoms 1,2,3, top 4.
    /// The standard non-distributive (modular) lattice.
    pub(crate) fn m3_tables() -> (OpTable, OpTable) {
        let join = OpTable::from_fn(5, |a, b| {
            if a == b {
                a
            } else if a == 0 {
                b
            } else if b == 0 {
                a
            } else {
                // distinct nonzero elements join at the top
                4
            }
        })
        .unwrap();
        let meet = OpTable::from_fn(5, |a, b| {
            if a == b {
                a
            } else if a == 4 {
                b
            } else if b == 4 {
                a
            } else {
                0
            }
        })
        .unwrap();
        (join, meet)
    }

    #[test]
    fn m3_fails_distributivity() {
        let (join, meet) = m3_tables();
        // Oracle: find the first failing distributivity triple by direct
        // enumeration, independent of the checker's internal order.
        let mut first = None;
        'outer: for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let lhs = meet.apply(a, join.apply(b, c));
                    let rhs = join.apply(meet.apply(a, b), meet.apply(a, c));
                    if lhs != rhs {
                        first = Some([a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(first, Some([1, 2, 3]));
        assert_eq!(
            check_distributive_lattice(&join, &meet),
            Err(LatticeDefect::MeetOverJoinFails { triple: [1, 2, 3] })
        );
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let join = OpTable::from_fn(2, |a, b| a.max(b)).unwrap();
        let meet = OpTable::from_fn(3, |a, b| a.min(b)).unwrap();
        assert_eq!(
            check_distributive_lattice(&join, &meet),
            Err(LatticeDefect::SizeMismatch { join: 2, meet: 3 })
        );
    }

    #[test]
    fn order_from_meet_equals_order_from_join() {
        // Divisors of 12 with lcm/gcd; compare the two derivations.
        let divs = [1usize, 2, 3, 4, 6, 12];
        let gcd = |mut a: usize, mut b: usize| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let idx = |v: usize| divs.iter().position(|&d| d == v).unwrap();
        let join =
            OpTable::from_fn(6, |a, b| idx(divs[a] * divs[b] / gcd(divs[a], divs[b]))).unwrap();
        let meet = OpTable::from_fn(6, |a, b| idx(gcd(divs[a], divs[b]))).unwrap();
        let l = check_distributive_lattice(&join, &meet).unwrap();
        let from_meet: Vec<(usize, usize)> = l.leq_pairs();
        let mut from_join: Vec<(usize, usize)> = Vec::new();
        for a in 0..6 {
            for b in 0..6 {
                if join.apply(a, b) == a {
                    from_join.push((b, a));
                }
            }
        }
        from_join.sort_unstable();
        assert_eq!(from_meet, from_join);
    }

    #[test]
    fn chain_heights_count_levels() {
        let join = OpTable::from_fn(4, |a, b| a.max(b)).unwrap();
        let meet = OpTable::from_fn(4, |a, b| a.min(b)).unwrap();
        let l = check_distributive_lattice(&join, &meet).unwrap();
        assert_eq!(l.heights(), vec![0, 1, 2, 3]);
    }
}
