//! Deterministic factories for small groups, lattices, connecting-map
//! families, and fixed test instances. Every factory output passes its
//! corresponding checker before being returned.

use crate::analyze::check_semiring;
use crate::group::{check_group, FiniteGroup};
use crate::group_semiring::AdditionFlavor;
use crate::hom::{is_automorphism, HomMap};
use crate::lattice::{check_distributive_lattice, FiniteDistributiveLattice};
use crate::sdl::{
    validate_iso_family, ComponentLabel, GroupComponentFamily, IsoFamily, SemiringTable,
};
use crate::table::OpTable;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("cyclic group order must be at least 1")]
    ZeroOrder,
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("boolean lattice rank must be at most 4 (got {0})")]
    RankTooLarge(usize),
    #[error("divisor lattice base must be at least 1")]
    ZeroBase,
    #[error("{0} has {1} divisors; at most 16 are supported")]
    TooManyDivisors(u64, usize),
    #[error("the supplied map is not an automorphism of the group")]
    NotAnAutomorphism,
    #[error("bounded search exhausted without finding a table")]
    SearchExhausted,
}

/// The cyclic group of order n, addition mod n.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::ZeroOrder);
    }
    let table = OpTable::from_fn(n, |x, y| (x + y) % n).expect("valid by construction");
    Ok(check_group(&table).expect("cyclic table is a group"))
}

/// All six permutations of three points, in lexicographic one-line order.
pub const SYM3_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The symmetric group on three points. Element i is
/// [`SYM3_PERMUTATIONS`]`[i]`; the product `a · b` applies `b` first.
pub fn symmetric_group_3() -> FiniteGroup {
    let index_of = |p: [usize; 3]| {
        SYM3_PERMUTATIONS
            .iter()
            .position(|&q| q == p)
            .expect("composition of permutations is a permutation")
    };
    let table = OpTable::from_fn(6, |a, b| {
        let (pa, pb) = (SYM3_PERMUTATIONS[a], SYM3_PERMUTATIONS[b]);
        index_of([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
    })
    .expect("valid by construction");
    check_group(&table).expect("permutation composition forms a group")
}

/// The Klein four-group as bitwise xor on two bits.
pub fn klein_four() -> FiniteGroup {
    let table = OpTable::from_fn(4, |x, y| x ^ y).expect("valid by construction");
    check_group(&table).expect("xor on masks forms a group")
}

/// The chain 0 < 1 < … < n−1 with join = max and meet = min.
pub fn chain_lattice(n: usize) -> Result<FiniteDistributiveLattice, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::EmptyChain);
    }
    let join = OpTable::from_fn(n, |a, b| a.max(b)).expect("valid");
    let meet = OpTable::from_fn(n, |a, b| a.min(b)).expect("valid");
    Ok(check_distributive_lattice(&join, &meet).expect("a chain is distributive"))
}

/// The lattice of subsets of a k-element set, as k-bit masks with
/// join = or and meet = and. Size 2^k; k ≤ 4.
pub fn boolean_lattice(k: usize) -> Result<FiniteDistributiveLattice, GeneratorError> {
    if k > 4 {
        return Err(GeneratorError::RankTooLarge(k));
    }
    let n = 1usize << k;
    let join = OpTable::from_fn(n, |a, b| a | b).expect("valid");
    let meet = OpTable::from_fn(n, |a, b| a & b).expect("valid");
    Ok(check_distributive_lattice(&join, &meet).expect("a power set is distributive"))
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The sorted divisors of n.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

/// The divisors of n ordered ascending, with join = lcm and meet = gcd.
pub fn divisor_lattice(n: u64) -> Result<FiniteDistributiveLattice, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::ZeroBase);
    }
    let divs = divisors(n);
    if divs.len() > 16 {
        return Err(GeneratorError::TooManyDivisors(n, divs.len()));
    }
    let idx = |v: u64| divs.iter().position(|&d| d == v).expect("divisor of n");
    let join = OpTable::from_fn(divs.len(), |a, b| {
        idx(divs[a] / gcd(divs[a], divs[b]) * divs[b])
    })
    .expect("valid");
    let meet = OpTable::from_fn(divs.len(), |a, b| idx(gcd(divs[a], divs[b]))).expect("valid");
    Ok(check_distributive_lattice(&join, &meet).expect("divisor lattices are distributive"))
}

/// The constant family: every component is a copy of `group`, every
/// connecting map the identity. Trivially satisfies the identity and
/// composition clauses.
pub fn constant_family(
    lattice: FiniteDistributiveLattice,
    group: FiniteGroup,
) -> (GroupComponentFamily, IsoFamily) {
    let components = vec![group; lattice.size()];
    let fam = GroupComponentFamily::new(lattice, components).expect("one group per element");
    let isos = IsoFamily::identity_family(&fam);
    debug_assert!(validate_iso_family(&fam, &isos).is_valid());
    (fam, isos)
}

/// A family with every component a copy of `group` and the map for each
/// pair `b ≤ a` equal to `automorphism` raised to the height difference
/// `h(a) − h(b)`. Exponent additivity makes the composition clause hold.
pub fn twisted_family(
    lattice: FiniteDistributiveLattice,
    group: FiniteGroup,
    automorphism: &HomMap,
) -> Result<(GroupComponentFamily, IsoFamily), GeneratorError> {
    let ok = automorphism.source_size() == group.order()
        && is_automorphism(automorphism, &group).unwrap_or(false);
    if !ok {
        return Err(GeneratorError::NotAnAutomorphism);
    }
    let heights = lattice.heights();
    let components = vec![group; lattice.size()];
    let fam = GroupComponentFamily::new(lattice, components).expect("one group per element");
    let mut isos = IsoFamily::default();
    for (lower, upper) in fam.lattice().leq_pairs() {
        let power = heights[upper] - heights[lower];
        isos.insert(
            upper,
            lower,
            automorphism.pow(power).expect("automorphism is an endomap"),
        );
    }
    debug_assert!(validate_iso_family(&fam, &isos).is_valid());
    Ok((fam, isos))
}

/// A fixed 3-element semiring that is a distributive lattice of group
/// semirings with components of different orders — so it cannot be a
/// strong one — found by bounded search over the free table entries.
///
/// The components are the trivial group and Z2 over the 2-chain. Within
/// each component the tables are forced (the group product, left-zero
/// addition) and cross-component entries are confined to the component
/// prescribed by the lattice; the search enumerates the remaining free
/// entries in lexicographic order and keeps the first completion that
/// passes the full semiring check. Both placements of the two groups are
/// tried; only trivial-at-bottom admits a semiring, and exactly one.
pub fn non_strong_counterexample() -> SemiringTable {
    let trivial = cyclic_group(1).expect("order 1");
    let z2 = cyclic_group(2).expect("order 2");
    let lattice = chain_lattice(2).expect("length 2");
    for assignment in [
        vec![z2.clone(), trivial.clone()],
        vec![trivial.clone(), z2.clone()],
    ] {
        let fam = GroupComponentFamily::new(lattice.clone(), assignment).expect("two components");
        if let Some(found) = search_lattice_of_group_semirings(&fam) {
            return found;
        }
    }
    unreachable!("the trivial-at-bottom placement admits a semiring");
}

/// Enumerates all table completions for a distributive lattice of group
/// semirings over `fam` (component-internal entries forced, cross
/// entries ranging over the target component) and returns the first one
/// satisfying every semiring axiom. Completions are enumerated by a
/// fixed odometer over the free cells, so the result is deterministic.
fn search_lattice_of_group_semirings(fam: &GroupComponentFamily) -> Option<SemiringTable> {
    let lattice = fam.lattice();
    let offsets = fam.offsets();
    let size = fam.total_size();
    let mut labels = Vec::with_capacity(size);
    for alpha in lattice.elements() {
        for member in 0..fam.component(alpha).order() {
            labels.push(ComponentLabel {
                component: alpha,
                member,
            });
        }
    }

    // Cell values: fixed Some(v) inside components, None for free cross
    // cells. Free cells range over the elements of their target component.
    let mut add_base = vec![None::<usize>; size * size];
    let mut mul_base = vec![None::<usize>; size * size];
    let mut free: Vec<(bool, usize, usize, usize)> = Vec::new(); // (is_add, x, y, target component)
    for x in 0..size {
        for y in 0..size {
            let (cx, cy) = (labels[x].component, labels[y].component);
            let join = lattice.join(cx, cy);
            let meet = lattice.meet(cx, cy);
            if cx == cy {
                add_base[x * size + y] = Some(x); // left-zero inside a component
                mul_base[x * size + y] =
                    Some(offsets[cx] + fam.component(cx).mul(labels[x].member, labels[y].member));
            } else {
                if fam.component(join).order() == 1 {
                    add_base[x * size + y] = Some(offsets[join]);
                } else {
                    free.push((true, x, y, join));
                }
                if fam.component(meet).order() == 1 {
                    mul_base[x * size + y] = Some(offsets[meet]);
                } else {
                    free.push((false, x, y, meet));
                }
            }
        }
    }

    let combinations: usize = free
        .iter()
        .map(|&(_, _, _, c)| fam.component(c).order())
        .product();
    const SEARCH_BOUND: usize = 1 << 20;
    assert!(
        combinations <= SEARCH_BOUND,
        "search space of {combinations} completions exceeds the bound"
    );

    for mut code in 0..combinations {
        let mut add = add_base.clone();
        let mut mul = mul_base.clone();
        for &(is_add, x, y, target) in &free {
            let order = fam.component(target).order();
            let value = offsets[target] + code % order;
            code /= order;
            let cells = if is_add { &mut add } else { &mut mul };
            cells[x * size + y] = Some(value);
        }
        let add = OpTable::new(size, add.into_iter().map(|v| v.expect("filled")).collect())
            .expect("values in range");
        let mul = OpTable::new(size, mul.into_iter().map(|v| v.expect("filled")).collect())
            .expect("values in range");
        if check_semiring(&add, &mul).is_ok() {
            return Some(SemiringTable::new(add, mul, Some(labels.clone())).expect("same carrier"));
        }
    }
    None
}

/// What a text instance description can ask for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeKind {
    Chain(usize),
    Boolean(usize),
    Divisor(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Klein4,
    Sym3,
}

/// How the connecting maps of an instance are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiRecipe {
    /// Every map is the identity.
    Identity,
    /// The given automorphism raised to the height difference.
    Twist(Vec<usize>),
    /// Explicit maps for each `(source, target)` pair; pairs not listed
    /// default to nothing and will be rejected at validation.
    Explicit(Vec<ExplicitMap>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitMap {
    pub source: usize,
    pub target: usize,
    pub images: Vec<usize>,
}

/// A reproducible recipe for one construction instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub lattice: LatticeKind,
    pub group: GroupKind,
    pub phi: PhiRecipe,
    pub flavor: AdditionFlavor,
    /// Marks shipped negative fixtures whose recipe intentionally fails
    /// validation.
    pub expected_invalid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("explicit map entry ({src} -> {target}) is malformed: {reason}")]
    BadExplicitMap {
        src: usize,
        target: usize,
        reason: String,
    },
}

pub fn make_lattice(kind: &LatticeKind) -> Result<FiniteDistributiveLattice, GeneratorError> {
    match kind {
        LatticeKind::Chain(n) => chain_lattice(*n),
        LatticeKind::Boolean(k) => boolean_lattice(*k),
        LatticeKind::Divisor(n) => divisor_lattice(*n),
    }
}

pub fn make_group(kind: &GroupKind) -> Result<FiniteGroup, GeneratorError> {
    match kind {
        GroupKind::Cyclic(n) => cyclic_group(*n),
        GroupKind::Klein4 => Ok(klein_four()),
        GroupKind::Sym3 => Ok(symmetric_group_3()),
    }
}

/// Turns a spec into a concrete family and map family. Explicit recipes
/// are passed through untouched; validation happens at build time.
pub fn realize(spec: &InstanceSpec) -> Result<(GroupComponentFamily, IsoFamily), RealizeError> {
    let lattice = make_lattice(&spec.lattice)?;
    let group = make_group(&spec.group)?;
    match &spec.phi {
        PhiRecipe::Identity => Ok(constant_family(lattice, group)),
        PhiRecipe::Twist(images) => {
            let map = HomMap::new(group.order(), group.order(), images.clone())
                .map_err(|_| GeneratorError::NotAnAutomorphism)?;
            Ok(twisted_family(lattice, group, &map)?)
        }
        PhiRecipe::Explicit(entries) => {
            let components = vec![group.clone(); lattice.size()];
            let fam =
                GroupComponentFamily::new(lattice, components).expect("one group per element");
            let mut isos = IsoFamily::default();
            for entry in entries {
                let map = HomMap::new(group.order(), group.order(), entry.images.clone()).map_err(
                    |e| RealizeError::BadExplicitMap {
                        src: entry.source,
                        target: entry.target,
                        reason: e.to_string(),
                    },
                )?;
                isos.insert(entry.source, entry.target, map);
            }
            Ok((fam, isos))
        }
    }
}
