//! Maps between finite carriers, with homomorphism and isomorphism
//! predicates.
//!
//! A [`HomMap`] is just a total function `0..source_size -> 0..target_size`
//! stored as an array. Whether it respects a given pair of operation
//! tables is a separate, exhaustively checked question.
//!
//! Composition is written left to right: `f.then(g)` applies `f` first.

use crate::group::FiniteGroup;
use crate::table::OpTable;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {actual} entries, expected {expected}")]
    WrongLength { expected: usize, actual: usize },
    #[error("image of {element} is {value}, outside 0..{target_size}")]
    OutOfRange {
        element: usize,
        value: usize,
        target_size: usize,
    },
    #[error("map expects source of size {map_source} / target of size {map_target}, got {actual_source} / {actual_target}")]
    SizeMismatch {
        map_source: usize,
        map_target: usize,
        actual_source: usize,
        actual_target: usize,
    },
    #[error(
        "cannot compose: first map targets {first_target}, second map sources {second_source}"
    )]
    NotComposable {
        first_target: usize,
        second_source: usize,
    },
    #[error("map is not bijective")]
    NotBijective,
}

/// A total map between element index ranges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomMap {
    source_size: usize,
    target_size: usize,
    map: Vec<usize>,
}

impl HomMap {
    pub fn new(source_size: usize, target_size: usize, map: Vec<usize>) -> Result<Self, HomError> {
        if map.len() != source_size {
            return Err(HomError::WrongLength {
                expected: source_size,
                actual: map.len(),
            });
        }
        if let Some((element, &value)) = map.iter().enumerate().find(|(_, &v)| v >= target_size) {
            return Err(HomError::OutOfRange {
                element,
                value,
                target_size,
            });
        }
        Ok(HomMap {
            source_size,
            target_size,
            map,
        })
    }

    pub fn identity(size: usize) -> Self {
        HomMap {
            source_size: size,
            target_size: size,
            map: (0..size).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.source_size == self.target_size && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_size != self.target_size {
            return false;
        }
        let mut seen = vec![false; self.target_size];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Two-sided inverse, if the map is a bijection.
    pub fn inverse(&self) -> Result<HomMap, HomError> {
        if !self.is_bijective() {
            return Err(HomError::NotBijective);
        }
        let mut inv = vec![0usize; self.source_size];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(HomMap {
            source_size: self.target_size,
            target_size: self.source_size,
            map: inv,
        })
    }

    /// Left-to-right composition: apply `self`, then `next`.
    pub fn then(&self, next: &HomMap) -> Result<HomMap, HomError> {
        if self.target_size != next.source_size {
            return Err(HomError::NotComposable {
                first_target: self.target_size,
                second_source: next.source_size,
            });
        }
        Ok(HomMap {
            source_size: self.source_size,
            target_size: next.target_size,
            map: self.map.iter().map(|&x| next.apply(x)).collect(),
        })
    }

    /// k-fold self-composition of an endomap.
    pub fn pow(&self, k: usize) -> Result<HomMap, HomError> {
        if self.source_size != self.target_size {
            return Err(HomError::NotComposable {
                first_target: self.target_size,
                second_source: self.source_size,
            });
        }
        let mut acc = HomMap::identity(self.source_size);
        for _ in 0..k {
            acc = acc.then(self).expect("endomap composes with itself");
        }
        Ok(acc)
    }
}

/// First pair (x, y) with `f(xy) ≠ f(x)f(y)`, or `None` if `f` is a
/// homomorphism from `src` to `dst`.
pub fn homomorphism_counterexample(
    f: &HomMap,
    src: &OpTable,
    dst: &OpTable,
) -> Result<Option<[usize; 2]>, HomError> {
    if f.source_size() != src.size() || f.target_size() != dst.size() {
        return Err(HomError::SizeMismatch {
            map_source: f.source_size(),
            map_target: f.target_size(),
            actual_source: src.size(),
            actual_target: dst.size(),
        });
    }
    for x in src.elements() {
        for y in src.elements() {
            if f.apply(src.apply(x, y)) != dst.apply(f.apply(x), f.apply(y)) {
                return Ok(Some([x, y]));
            }
        }
    }
    Ok(None)
}

pub fn is_homomorphism(f: &HomMap, src: &OpTable, dst: &OpTable) -> Result<bool, HomError> {
    Ok(homomorphism_counterexample(f, src, dst)?.is_none())
}

/// Semiring variant: `f` must respect both the additive and the
/// multiplicative table.
pub fn is_semiring_homomorphism(
    f: &HomMap,
    src_add: &OpTable,
    src_mul: &OpTable,
    dst_add: &OpTable,
    dst_mul: &OpTable,
) -> Result<bool, HomError> {
    Ok(is_homomorphism(f, src_add, dst_add)? && is_homomorphism(f, src_mul, dst_mul)?)
}

pub fn is_group_homomorphism(
    f: &HomMap,
    src: &FiniteGroup,
    dst: &FiniteGroup,
) -> Result<bool, HomError> {
    is_homomorphism(f, src.op(), dst.op())
}

pub fn is_group_isomorphism(
    f: &HomMap,
    src: &FiniteGroup,
    dst: &FiniteGroup,
) -> Result<bool, HomError> {
    Ok(is_group_homomorphism(f, src, dst)? && f.is_bijective())
}

/// An automorphism is an isomorphism of a group with itself.
pub fn is_automorphism(f: &HomMap, group: &FiniteGroup) -> Result<bool, HomError> {
    is_group_isomorphism(f, group, group)
}
