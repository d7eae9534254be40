//! Group semirings: any finite group becomes a semiring by pairing the
//! group product with left-zero addition `x + y = x` (or dually,
//! right-zero addition `x + y = y`).

use crate::group::FiniteGroup;
use crate::table::OpTable;

/// Which trivial band is used for addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdditionFlavor {
    /// `x + y = x`. The convention used throughout unless stated otherwise.
    #[default]
    LeftZero,
    /// `x + y = y`.
    RightZero,
}

impl std::fmt::Display for AdditionFlavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdditionFlavor::LeftZero => write!(f, "left"),
            AdditionFlavor::RightZero => write!(f, "right"),
        }
    }
}

/// A group together with its band addition; multiplication is the group
/// operation, bit-identical to the group's own table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSemiring {
    group: FiniteGroup,
    flavor: AdditionFlavor,
    add: OpTable,
    mul: OpTable,
}

/// Realizes a group as a semiring with left-zero (or right-zero) addition.
pub fn make_group_semiring(group: FiniteGroup, flavor: AdditionFlavor) -> GroupSemiring {
    let n = group.order();
    let add = match flavor {
        AdditionFlavor::LeftZero => OpTable::from_fn(n, |x, _| x),
        AdditionFlavor::RightZero => OpTable::from_fn(n, |_, y| y),
    }
    .expect("band table over a nonempty carrier is valid");
    let mul = group.op().clone();
    GroupSemiring {
        group,
        flavor,
        add,
        mul,
    }
}

impl GroupSemiring {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn flavor(&self) -> AdditionFlavor {
        self.flavor
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    pub fn size(&self) -> usize {
        self.group.order()
    }
}
