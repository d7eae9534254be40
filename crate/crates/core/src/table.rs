//! Finite binary operations as explicit Cayley tables.
//!
//! An [`OpTable`] stores an n×n operation table over the dense element
//! indices `0..n`. Every structure in this crate (semigroups, groups,
//! lattice joins and meets, semiring addition and multiplication) is one
//! or two of these tables, and every law is checked by exhaustive
//! enumeration. Checkers report the lexicographically first
//! counterexample so that diagnostics are deterministic.

use thiserror::Error;

/// Errors raised while constructing an [`OpTable`].
///
/// Malformed tables are the only hard errors in this layer; violated
/// algebraic laws are reported as values by the checkers instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("operation table must have at least one element")]
    Empty,
    #[error("expected {expected} entries for size {size}, got {actual}")]
    WrongLength {
        size: usize,
        expected: usize,
        actual: usize,
    },
    #[error("entry at ({row}, {col}) is {value}, outside 0..{size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("row {row} has {actual} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        actual: usize,
    },
}

/// An n×n operation table over element indices `0..n`.
///
/// Immutable after construction; construction validates closure, so
/// `apply` never yields an out-of-range element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    size: usize,
    entries: Vec<usize>, // row-major: entries[x * size + y] = x ∘ y
}

impl OpTable {
    /// Builds a table from row-major entries, validating size and closure.
    pub fn new(size: usize, entries: Vec<usize>) -> Result<Self, TableError> {
        if size == 0 {
            return Err(TableError::Empty);
        }
        if entries.len() != size * size {
            return Err(TableError::WrongLength {
                size,
                expected: size * size,
                actual: entries.len(),
            });
        }
        for (i, &v) in entries.iter().enumerate() {
            if v >= size {
                return Err(TableError::OutOfRange {
                    row: i / size,
                    col: i % size,
                    value: v,
                    size,
                });
            }
        }
        Ok(OpTable { size, entries })
    }

    /// Builds a table from explicit rows.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let size = rows.len();
        if size == 0 {
            return Err(TableError::Empty);
        }
        let mut entries = Vec::with_capacity(size * size);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(TableError::RaggedRow {
                    row,
                    expected: size,
                    actual: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Self::new(size, entries)
    }

    /// Tabulates `f` over all pairs. `f` must return indices below `size`.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, TableError> {
        let mut entries = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                entries.push(f(x, y));
            }
        }
        Self::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Applies the operation: `x ∘ y`.
    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.size && y < self.size);
        self.entries[x * self.size + y]
    }

    /// Iterates the element indices `0..n`.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.entries[x * self.size..(x + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.entries.chunks(self.size)
    }

    /// First triple (x, y, z) with `(xy)z ≠ x(yz)`, in lexicographic order.
    pub fn associativity_counterexample(&self) -> Option<[usize; 3]> {
        for x in 0..self.size {
            for y in 0..self.size {
                let xy = self.apply(x, y);
                for z in 0..self.size {
                    if self.apply(xy, z) != self.apply(x, self.apply(y, z)) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_counterexample().is_none()
    }

    /// First pair (x, y) with `xy ≠ yx`.
    pub fn commutativity_counterexample(&self) -> Option<[usize; 2]> {
        for x in 0..self.size {
            for y in x + 1..self.size {
                if self.apply(x, y) != self.apply(y, x) {
                    return Some([x, y]);
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_counterexample().is_none()
    }

    /// First element with `xx ≠ x`.
    pub fn idempotency_counterexample(&self) -> Option<usize> {
        (0..self.size).find(|&x| self.apply(x, x) != x)
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotency_counterexample().is_none()
    }

    /// Restricts the table to `elements`, re-indexed by position.
    ///
    /// Returns `None` if the subset is not closed under the operation;
    /// the offending pair (as positions into `elements`) is reported by
    /// [`OpTable::closure_counterexample`].
    pub fn restrict(&self, elements: &[usize]) -> Option<OpTable> {
        if self.closure_counterexample(elements).is_some() {
            return None;
        }
        let pos = self.positions(elements);
        let table = OpTable::from_fn(elements.len(), |i, j| {
            pos[self.apply(elements[i], elements[j])].expect("closed subset")
        })
        .expect("restriction of a valid table is valid");
        Some(table)
    }

    /// First pair of positions (i, j) whose product leaves `elements`.
    pub fn closure_counterexample(&self, elements: &[usize]) -> Option<[usize; 2]> {
        let pos = self.positions(elements);
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if pos[self.apply(x, y)].is_none() {
                    return Some([i, j]);
                }
            }
        }
        None
    }

    fn positions(&self, elements: &[usize]) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.size];
        for (i, &x) in elements.iter().enumerate() {
            pos[x] = Some(i);
        }
        pos
    }
}
