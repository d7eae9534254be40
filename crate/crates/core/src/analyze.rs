//! Decomposition and classification of arbitrary finite semirings.
//!
//! Given a pair of tables (add, mul) on a shared carrier, the pipeline
//! in [`full_analysis`] decides, with witnesses at every step:
//!
//! 1. whether the pair is a semiring at all;
//! 2. the multiplicative idempotents E(S) and whether they form a
//!    distributive lattice under the restricted operations;
//! 3. whether (S, ·) is a Clifford semigroup (every element lies in a
//!    subgroup, idempotents central), via brute-force Green's relations;
//! 4. whether (S, +) is a left normal band (`x+x = x`, `x+y+z = x+z+y`);
//! 5. the maximal-subgroup components attached to each idempotent and
//!    whether products and sums stay in the lattice-prescribed component;
//! 6. the connecting maps recovered as `x ↦ x·e` (down) and `y ↦ y+e`
//!    (up; `e+y` under the right-zero flavor), and whether they certify
//!    the semiring as a strong distributive lattice of group semirings.
//!
//! When a prerequisite fails, dependent steps are reported as not
//! evaluated rather than false, so each defect is reported exactly once.

use crate::group::{check_group, GroupDefect};
use crate::group_semiring::AdditionFlavor;
use crate::hom::HomMap;
use crate::lattice::{check_distributive_lattice, FiniteDistributiveLattice, LatticeDefect};
use crate::sdl::IsoFamily;
use crate::table::OpTable;
use std::collections::BTreeMap;
use thiserror::Error;

/// Outcome of one analysis step: a computed value, a witnessed failure,
/// or skipped because a prerequisite already failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding<T, W> {
    Ok(T),
    Failed(W),
    NotEvaluated,
}

impl<T, W> Finding<T, W> {
    pub fn is_ok(&self) -> bool {
        matches!(self, Finding::Ok(_))
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Finding::Failed(_))
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Finding::Ok(v) => Some(v),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Finding::Failed(w) => Some(w),
            _ => None,
        }
    }
}

/// First violated semiring axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringViolation {
    #[error("addition table has {add} elements but multiplication table has {mul}")]
    SizeMismatch { add: usize, mul: usize },
    #[error("addition is not associative at ({}, {}, {})", .0[0], .0[1], .0[2])]
    AddNotAssociative([usize; 3]),
    #[error("multiplication is not associative at ({}, {}, {})", .0[0], .0[1], .0[2])]
    MulNotAssociative([usize; 3]),
    #[error("left distributivity x(y+z) = xy+xz fails at ({}, {}, {})", .0[0], .0[1], .0[2])]
    LeftDistributivityFails([usize; 3]),
    #[error("right distributivity (x+y)z = xz+yz fails at ({}, {}, {})", .0[0], .0[1], .0[2])]
    RightDistributivityFails([usize; 3]),
}

/// Verifies both associativities and both distributive laws over all
/// n³ triples, reporting the first counterexample.
pub fn check_semiring(add: &OpTable, mul: &OpTable) -> Result<(), SemiringViolation> {
    if add.size() != mul.size() {
        return Err(SemiringViolation::SizeMismatch {
            add: add.size(),
            mul: mul.size(),
        });
    }
    if let Some(t) = add.associativity_counterexample() {
        return Err(SemiringViolation::AddNotAssociative(t));
    }
    if let Some(t) = mul.associativity_counterexample() {
        return Err(SemiringViolation::MulNotAssociative(t));
    }
    let n = add.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if mul.apply(x, add.apply(y, z)) != add.apply(mul.apply(x, y), mul.apply(x, z)) {
                    return Err(SemiringViolation::LeftDistributivityFails([x, y, z]));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if mul.apply(add.apply(x, y), z) != add.apply(mul.apply(x, z), mul.apply(y, z)) {
                    return Err(SemiringViolation::RightDistributivityFails([x, y, z]));
                }
            }
        }
    }
    Ok(())
}

/// All x with `x·x = x`, ascending.
pub fn multiplicative_idempotents(mul: &OpTable) -> Vec<usize> {
    mul.elements().filter(|&x| mul.apply(x, x) == x).collect()
}

/// Why E(S) fails to induce a distributive lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdempotentDefect {
    #[error("E(S) is not closed under addition: {} + {} leaves E(S)", .witness[0], .witness[1])]
    NotAddClosed { witness: [usize; 2] },
    #[error("E(S) is not closed under multiplication: {} · {} leaves E(S)", .witness[0], .witness[1])]
    NotMulClosed { witness: [usize; 2] },
    #[error("restricted tables are not a distributive lattice: {0}")]
    NotDistributiveLattice(LatticeDefect),
}

/// The lattice induced on a closed idempotent set, with `elements[i]`
/// giving the original carrier index of induced element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedLattice {
    pub lattice: FiniteDistributiveLattice,
    pub elements: Vec<usize>,
}

/// Checks E(S) is closed under both operations, restricts the tables to
/// it (addition as join, multiplication as meet) and verifies the
/// distributive-lattice laws on the restriction.
pub fn idempotent_subsemiring(
    add: &OpTable,
    mul: &OpTable,
    idempotents: &[usize],
) -> Result<InducedLattice, IdempotentDefect> {
    if let Some([i, j]) = add.closure_counterexample(idempotents) {
        return Err(IdempotentDefect::NotAddClosed {
            witness: [idempotents[i], idempotents[j]],
        });
    }
    if let Some([i, j]) = mul.closure_counterexample(idempotents) {
        return Err(IdempotentDefect::NotMulClosed {
            witness: [idempotents[i], idempotents[j]],
        });
    }
    let join = add.restrict(idempotents).expect("closure checked");
    let meet = mul.restrict(idempotents).expect("closure checked");
    let lattice = check_distributive_lattice(&join, &meet)
        .map_err(IdempotentDefect::NotDistributiveLattice)?;
    Ok(InducedLattice {
        lattice,
        elements: idempotents.to_vec(),
    })
}

/// Why a multiplication table fails to be a Clifford semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordViolation {
    #[error("not associative at ({}, {}, {})", .0[0], .0[1], .0[2])]
    NotAssociative([usize; 3]),
    #[error("element {element} is not completely regular (its H-class has no idempotent)")]
    NotCompletelyRegular { element: usize },
    #[error("idempotent {idempotent} is not central: it does not commute with {element}")]
    NonCentralIdempotent { idempotent: usize, element: usize },
}

/// Principal right ideals xS¹ = {x} ∪ xS, one bitmask row per element.
fn right_ideals(mul: &OpTable) -> Vec<Vec<bool>> {
    let n = mul.size();
    (0..n)
        .map(|x| {
            let mut row = vec![false; n];
            row[x] = true;
            for s in 0..n {
                row[mul.apply(x, s)] = true;
            }
            row
        })
        .collect()
}

fn left_ideals(mul: &OpTable) -> Vec<Vec<bool>> {
    let n = mul.size();
    (0..n)
        .map(|x| {
            let mut row = vec![false; n];
            row[x] = true;
            for s in 0..n {
                row[mul.apply(s, x)] = true;
            }
            row
        })
        .collect()
}

/// The H-class of every element, via Green's relations by brute-force
/// comparison of principal ideals: x H y iff xS¹ = yS¹ and S¹x = S¹y.
pub fn h_classes(mul: &OpTable) -> Vec<Vec<usize>> {
    let n = mul.size();
    let r = right_ideals(mul);
    let l = left_ideals(mul);
    (0..n)
        .map(|x| (0..n).filter(|&y| r[x] == r[y] && l[x] == l[y]).collect())
        .collect()
}

/// Clifford test, H-class form: every element's H-class contains an
/// idempotent (so the element lies in a subgroup) and every idempotent
/// commutes with everything.
pub fn is_clifford(mul: &OpTable) -> Result<(), CliffordViolation> {
    if let Some(t) = mul.associativity_counterexample() {
        return Err(CliffordViolation::NotAssociative(t));
    }
    let classes = h_classes(mul);
    for x in mul.elements() {
        if !classes[x].iter().any(|&y| mul.apply(y, y) == y) {
            return Err(CliffordViolation::NotCompletelyRegular { element: x });
        }
    }
    for e in multiplicative_idempotents(mul) {
        for x in mul.elements() {
            if mul.apply(e, x) != mul.apply(x, e) {
                return Err(CliffordViolation::NonCentralIdempotent {
                    idempotent: e,
                    element: x,
                });
            }
        }
    }
    Ok(())
}

/// Clifford test, completely-regular form: for every x there is a y with
/// `x = xyx` and `xy = yx`, plus central idempotents. Kept independent
/// of the H-class machinery so the two definitions cross-validate.
pub fn is_clifford_via_regularity(mul: &OpTable) -> Result<(), CliffordViolation> {
    if let Some(t) = mul.associativity_counterexample() {
        return Err(CliffordViolation::NotAssociative(t));
    }
    let n = mul.size();
    for x in 0..n {
        let witness = (0..n)
            .any(|y| mul.apply(mul.apply(x, y), x) == x && mul.apply(x, y) == mul.apply(y, x));
        if !witness {
            return Err(CliffordViolation::NotCompletelyRegular { element: x });
        }
    }
    for e in 0..n {
        if mul.apply(e, e) != e {
            continue;
        }
        for x in 0..n {
            if mul.apply(e, x) != mul.apply(x, e) {
                return Err(CliffordViolation::NonCentralIdempotent {
                    idempotent: e,
                    element: x,
                });
            }
        }
    }
    Ok(())
}

/// Why an addition table fails the band identities.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandViolation {
    #[error("not associative at ({}, {}, {})", .0[0], .0[1], .0[2])]
    NotAssociative([usize; 3]),
    #[error("not idempotent at {element}")]
    NotIdempotent { element: usize },
    #[error("x+y+z = x+z+y fails at ({}, {}, {})", .0[0], .0[1], .0[2])]
    NotLeftNormal([usize; 3]),
    #[error("x+y+z = y+x+z fails at ({}, {}, {})", .0[0], .0[1], .0[2])]
    NotRightNormal([usize; 3]),
    #[error("w+x+y+z = w+y+x+z fails at ({}, {}, {}, {})", .0[0], .0[1], .0[2], .0[3])]
    NotNormal([usize; 4]),
}

fn band_precheck(add: &OpTable) -> Result<(), BandViolation> {
    if let Some(t) = add.associativity_counterexample() {
        return Err(BandViolation::NotAssociative(t));
    }
    if let Some(x) = add.idempotency_counterexample() {
        return Err(BandViolation::NotIdempotent { element: x });
    }
    Ok(())
}

/// Band with `x+y+z = x+z+y` for all triples.
pub fn is_left_normal_band(add: &OpTable) -> Result<(), BandViolation> {
    band_precheck(add)?;
    let n = add.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if add.apply(add.apply(x, y), z) != add.apply(add.apply(x, z), y) {
                    return Err(BandViolation::NotLeftNormal([x, y, z]));
                }
            }
        }
    }
    Ok(())
}

/// Dual band identity `x+y+z = y+x+z`, for right-zero-flavored semirings.
pub fn is_right_normal_band(add: &OpTable) -> Result<(), BandViolation> {
    band_precheck(add)?;
    let n = add.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if add.apply(add.apply(x, y), z) != add.apply(add.apply(y, x), z) {
                    return Err(BandViolation::NotRightNormal([x, y, z]));
                }
            }
        }
    }
    Ok(())
}

/// Plain normality `w+x+y+z = w+y+x+z`; implied by either one-sided
/// version, kept as a separate predicate.
pub fn is_normal_band(add: &OpTable) -> Result<(), BandViolation> {
    band_precheck(add)?;
    let n = add.size();
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = add.apply(add.apply(add.apply(w, x), y), z);
                    let rhs = add.apply(add.apply(add.apply(w, y), x), z);
                    if lhs != rhs {
                        return Err(BandViolation::NotNormal([w, x, y, z]));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentDefect {
    #[error("multiplication is not Clifford: {0}")]
    NotClifford(CliffordViolation),
    #[error("H-classes do not partition the carrier at element {element}")]
    NotAPartition { element: usize },
    #[error("component of idempotent {idempotent} is not a group: {defect}")]
    ComponentNotGroup {
        idempotent: usize,
        defect: GroupDefect,
    },
    #[error("component of idempotent {idempotent} is not closed under multiplication")]
    ComponentNotClosed { idempotent: usize },
}

/// The maximal-subgroup decomposition of a Clifford multiplication:
/// idempotent → sorted H-class, plus per-element (component, position)
/// labels in the order of ascending idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub by_idempotent: BTreeMap<usize, Vec<usize>>,
    /// component index (into ascending idempotent order) of each element
    pub component_of: Vec<usize>,
    /// position of each element inside its sorted component
    pub position_of: Vec<usize>,
    /// the component groups, indexed like the ascending idempotents
    pub groups: Vec<crate::group::FiniteGroup>,
}

impl Components {
    pub fn idempotents(&self) -> Vec<usize> {
        self.by_idempotent.keys().copied().collect()
    }

    pub fn count(&self) -> usize {
        self.by_idempotent.len()
    }

    pub fn members(&self, component: usize) -> &[usize] {
        self.by_idempotent
            .values()
            .nth(component)
            .expect("component index in range")
    }
}

/// Splits a Clifford multiplication into the H-classes of its
/// idempotents and verifies each is a group under the restricted table.
pub fn decompose_components(mul: &OpTable) -> Result<Components, ComponentDefect> {
    is_clifford(mul).map_err(ComponentDefect::NotClifford)?;
    let classes = h_classes(mul);
    let mut by_idempotent: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in multiplicative_idempotents(mul) {
        let mut members = classes[e].clone();
        members.sort_unstable();
        by_idempotent.insert(e, members);
    }
    let n = mul.size();
    let mut component_of = vec![usize::MAX; n];
    let mut position_of = vec![usize::MAX; n];
    for (k, members) in by_idempotent.values().enumerate() {
        for (pos, &x) in members.iter().enumerate() {
            if component_of[x] != usize::MAX {
                return Err(ComponentDefect::NotAPartition { element: x });
            }
            component_of[x] = k;
            position_of[x] = pos;
        }
    }
    if let Some(element) = component_of.iter().position(|&c| c == usize::MAX) {
        return Err(ComponentDefect::NotAPartition { element });
    }
    let mut groups = Vec::with_capacity(by_idempotent.len());
    for (&e, members) in &by_idempotent {
        let table = mul
            .restrict(members)
            .ok_or(ComponentDefect::ComponentNotClosed { idempotent: e })?;
        let group = check_group(&table).map_err(|defect| ComponentDefect::ComponentNotGroup {
            idempotent: e,
            defect,
        })?;
        groups.push(group);
    }
    Ok(Components {
        by_idempotent,
        component_of,
        position_of,
        groups,
    })
}

/// Products or sums leaving their lattice-prescribed component.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureDefect {
    #[error(
        "product {x} · {y} lands in component {actual}, expected the meet component {expected}"
    )]
    MulEscapes {
        x: usize,
        y: usize,
        expected: usize,
        actual: usize,
    },
    #[error("sum {x} + {y} lands in component {actual}, expected the join component {expected}")]
    AddEscapes {
        x: usize,
        y: usize,
        expected: usize,
        actual: usize,
    },
}

/// Checks `component(x·y) = component(x) ∧ component(y)` and
/// `component(x+y) = component(x) ∨ component(y)` for all pairs, where
/// the lattice structure is the one induced on the idempotents.
pub fn check_component_closure(
    add: &OpTable,
    mul: &OpTable,
    comps: &Components,
    induced: &InducedLattice,
) -> Result<(), ClosureDefect> {
    let n = mul.size();
    for x in 0..n {
        for y in 0..n {
            let expected = induced
                .lattice
                .meet(comps.component_of[x], comps.component_of[y]);
            let actual = comps.component_of[mul.apply(x, y)];
            if actual != expected {
                return Err(ClosureDefect::MulEscapes {
                    x,
                    y,
                    expected,
                    actual,
                });
            }
            let expected = induced
                .lattice
                .join(comps.component_of[x], comps.component_of[y]);
            let actual = comps.component_of[add.apply(x, y)];
            if actual != expected {
                return Err(ClosureDefect::AddEscapes {
                    x,
                    y,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(())
}

/// The families recovered from a decomposed semiring: downward maps
/// `x ↦ x·e_b` and upward maps `y ↦ y+e_a`, indexed by induced-lattice
/// component pairs and positions within sorted components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredMaps {
    pub phi: IsoFamily,
    pub psi: IsoFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryDefect {
    #[error("x·e for x in component {src} escapes component {target}")]
    PhiEscapes { src: usize, target: usize },
    #[error("y+e for y in component {src} escapes component {target}")]
    PsiEscapes { src: usize, target: usize },
}

/// Reads the connecting maps off the tables: down as `x ↦ x·e`, up as
/// `y ↦ y+e` (left flavor) or `y ↦ e+y` (right flavor). Requires the
/// component closure check to have passed; under it the maps cannot
/// escape.
pub fn recover_connecting_maps(
    add: &OpTable,
    mul: &OpTable,
    comps: &Components,
    induced: &InducedLattice,
    flavor: AdditionFlavor,
) -> Result<RecoveredMaps, RecoveryDefect> {
    let mut phi = IsoFamily::default();
    let mut psi = IsoFamily::default();
    for (lower, upper) in induced.lattice.leq_pairs() {
        let e_lower = induced.elements[lower];
        let e_upper = induced.elements[upper];
        let down: Result<Vec<usize>, RecoveryDefect> = comps
            .members(upper)
            .iter()
            .map(|&x| {
                let image = mul.apply(x, e_lower);
                (comps.component_of[image] == lower)
                    .then(|| comps.position_of[image])
                    .ok_or(RecoveryDefect::PhiEscapes {
                        src: upper,
                        target: lower,
                    })
            })
            .collect();
        let up: Result<Vec<usize>, RecoveryDefect> = comps
            .members(lower)
            .iter()
            .map(|&y| {
                let image = match flavor {
                    AdditionFlavor::LeftZero => add.apply(y, e_upper),
                    AdditionFlavor::RightZero => add.apply(e_upper, y),
                };
                (comps.component_of[image] == upper)
                    .then(|| comps.position_of[image])
                    .ok_or(RecoveryDefect::PsiEscapes {
                        src: lower,
                        target: upper,
                    })
            })
            .collect();
        phi.insert(
            upper,
            lower,
            HomMap::new(
                comps.members(upper).len(),
                comps.members(lower).len(),
                down?,
            )
            .expect("positions are in range"),
        );
        psi.insert(
            lower,
            upper,
            HomMap::new(comps.members(lower).len(), comps.members(upper).len(), up?)
                .expect("positions are in range"),
        );
    }
    Ok(RecoveredMaps { phi, psi })
}

/// Why the recovered maps fail to certify a strong structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrongDefect {
    #[error("recovered map ({src} -> {target}) is not a group isomorphism")]
    NotIsomorphism { src: usize, target: usize },
    #[error("recovered diagonal map of component {component} moves element {element}")]
    DiagonalNotIdentity { component: usize, element: usize },
    #[error(
        "recovered maps break composition at ({upper} -> {mid} -> {lower}) on element {element}"
    )]
    CompositionFails {
        upper: usize,
        mid: usize,
        lower: usize,
        element: usize,
    },
    #[error("recovered up and down maps of pair ({lower} ≤ {upper}) are not mutually inverse at element {element}")]
    NotMutuallyInverse {
        lower: usize,
        upper: usize,
        element: usize,
    },
    #[error("product {x} · {y} does not factor through the recovered maps")]
    MulDoesNotFactor { x: usize, y: usize },
    #[error("sum {x} + {y} does not factor through the recovered maps")]
    AddDoesNotFactor { x: usize, y: usize },
}

/// Certifies strongness: every recovered map is a group isomorphism, the
/// family satisfies the identity and composition clauses, the two
/// directions are mutually inverse, and — the defining property — every
/// product and sum in the table factors through the maps.
pub fn check_strong(
    add: &OpTable,
    mul: &OpTable,
    comps: &Components,
    induced: &InducedLattice,
    recovered: &RecoveredMaps,
    flavor: AdditionFlavor,
) -> Result<(), StrongDefect> {
    let lattice = &induced.lattice;
    for (lower, upper) in lattice.leq_pairs() {
        let phi = recovered
            .phi
            .get(upper, lower)
            .expect("recovered for all pairs");
        let is_iso =
            crate::hom::is_group_isomorphism(phi, &comps.groups[upper], &comps.groups[lower])
                .expect("shapes match by construction");
        if !is_iso {
            return Err(StrongDefect::NotIsomorphism {
                src: upper,
                target: lower,
            });
        }
        if lower == upper {
            if let Some(element) = (0..phi.source_size()).find(|&x| phi.apply(x) != x) {
                return Err(StrongDefect::DiagonalNotIdentity {
                    component: upper,
                    element,
                });
            }
        }
        let psi = recovered
            .psi
            .get(lower, upper)
            .expect("recovered for all pairs");
        let round = phi.then(psi).expect("shapes chain");
        if let Some(element) = (0..round.source_size()).find(|&x| round.apply(x) != x) {
            return Err(StrongDefect::NotMutuallyInverse {
                lower,
                upper,
                element,
            });
        }
        let round = psi.then(phi).expect("shapes chain");
        if let Some(element) = (0..round.source_size()).find(|&x| round.apply(x) != x) {
            return Err(StrongDefect::NotMutuallyInverse {
                lower,
                upper,
                element,
            });
        }
    }
    for upper in lattice.elements() {
        for mid in lattice.elements() {
            if mid == upper || !lattice.leq(mid, upper) {
                continue;
            }
            for lower in lattice.elements() {
                if lower == mid || !lattice.leq(lower, mid) {
                    continue;
                }
                let two_step = recovered
                    .phi
                    .get(upper, mid)
                    .expect("recovered")
                    .then(recovered.phi.get(mid, lower).expect("recovered"))
                    .expect("shapes chain");
                let one_step = recovered.phi.get(upper, lower).expect("recovered");
                if let Some(element) =
                    (0..two_step.source_size()).find(|&x| two_step.apply(x) != one_step.apply(x))
                {
                    return Err(StrongDefect::CompositionFails {
                        upper,
                        mid,
                        lower,
                        element,
                    });
                }
            }
        }
    }
    // The defining factorizations.
    let n = mul.size();
    for x in 0..n {
        let cx = comps.component_of[x];
        let px = comps.position_of[x];
        for y in 0..n {
            let cy = comps.component_of[y];
            let py = comps.position_of[y];
            let meet = lattice.meet(cx, cy);
            let xm = recovered.phi.get(cx, meet).expect("recovered").apply(px);
            let ym = recovered.phi.get(cy, meet).expect("recovered").apply(py);
            let product = comps.members(meet)[comps.groups[meet].mul(xm, ym)];
            if mul.apply(x, y) != product {
                return Err(StrongDefect::MulDoesNotFactor { x, y });
            }
            let join = lattice.join(cx, cy);
            let lifted = match flavor {
                AdditionFlavor::LeftZero => {
                    recovered.psi.get(cx, join).expect("recovered").apply(px)
                }
                AdditionFlavor::RightZero => {
                    recovered.psi.get(cy, join).expect("recovered").apply(py)
                }
            };
            if add.apply(x, y) != comps.members(join)[lifted] {
                return Err(StrongDefect::AddDoesNotFactor { x, y });
            }
        }
    }
    Ok(())
}

/// Everything [`full_analysis`] determines about a table pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub flavor: AdditionFlavor,
    pub semiring: Result<(), SemiringViolation>,
    pub idempotents: Finding<Vec<usize>, SemiringViolation>,
    pub idempotent_lattice: Finding<InducedLattice, IdempotentDefect>,
    pub clifford_mul: Finding<(), CliffordViolation>,
    pub additive_band: Finding<(), BandViolation>,
    pub components: Finding<Components, ComponentDefect>,
    pub component_closure: Finding<(), ClosureDefect>,
    pub recovered: Finding<RecoveredMaps, RecoveryDefect>,
    pub strong: Finding<(), StrongDefect>,
}

impl AnalysisReport {
    /// The headline verdict: is this a strong distributive lattice of
    /// group semirings?
    pub fn is_strong(&self) -> bool {
        self.strong.is_ok()
    }
}

/// Runs the whole pipeline with left-zero conventions.
pub fn full_analysis(add: &OpTable, mul: &OpTable) -> AnalysisReport {
    full_analysis_with_flavor(add, mul, AdditionFlavor::LeftZero)
}

/// Runs the whole pipeline. The flavor selects which normal-band
/// identity is demanded of addition and which argument a sum lifts.
pub fn full_analysis_with_flavor(
    add: &OpTable,
    mul: &OpTable,
    flavor: AdditionFlavor,
) -> AnalysisReport {
    let semiring = check_semiring(add, mul);
    let mut report = AnalysisReport {
        flavor,
        semiring: semiring.clone(),
        idempotents: Finding::NotEvaluated,
        idempotent_lattice: Finding::NotEvaluated,
        clifford_mul: Finding::NotEvaluated,
        additive_band: Finding::NotEvaluated,
        components: Finding::NotEvaluated,
        component_closure: Finding::NotEvaluated,
        recovered: Finding::NotEvaluated,
        strong: Finding::NotEvaluated,
    };
    if semiring.is_err() {
        return report;
    }
    let idempotents = multiplicative_idempotents(mul);
    report.idempotent_lattice = match idempotent_subsemiring(add, mul, &idempotents) {
        Ok(induced) => Finding::Ok(induced),
        Err(defect) => Finding::Failed(defect),
    };
    report.idempotents = Finding::Ok(idempotents);
    report.clifford_mul = match is_clifford(mul) {
        Ok(()) => Finding::Ok(()),
        Err(v) => Finding::Failed(v),
    };
    report.additive_band = match flavor {
        AdditionFlavor::LeftZero => is_left_normal_band(add),
        AdditionFlavor::RightZero => is_right_normal_band(add),
    }
    .map_or_else(Finding::Failed, Finding::Ok);
    if report.clifford_mul.is_ok() {
        report.components = match decompose_components(mul) {
            Ok(c) => Finding::Ok(c),
            Err(d) => Finding::Failed(d),
        };
    }
    if let (Finding::Ok(comps), Finding::Ok(induced)) =
        (&report.components, &report.idempotent_lattice)
    {
        report.component_closure = match check_component_closure(add, mul, comps, induced) {
            Ok(()) => Finding::Ok(()),
            Err(d) => Finding::Failed(d),
        };
        if report.component_closure.is_ok() {
            report.recovered = match recover_connecting_maps(add, mul, comps, induced, flavor) {
                Ok(maps) => Finding::Ok(maps),
                Err(d) => Finding::Failed(d),
            };
        }
        if let Finding::Ok(recovered) = &report.recovered {
            report.strong = match check_strong(add, mul, comps, induced, recovered, flavor) {
                Ok(()) => Finding::Ok(()),
                Err(d) => Finding::Failed(d),
            };
        }
    }
    report
}

/// Searches for a bijection between two lattices preserving join and
/// meet, by backtracking over images. Intended for small lattices (the
/// search space is n!).
pub fn lattice_isomorphism(
    a: &FiniteDistributiveLattice,
    b: &FiniteDistributiveLattice,
) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(
        a: &FiniteDistributiveLattice,
        b: &FiniteDistributiveLattice,
        image: &[usize],
        placed: usize,
    ) -> bool {
        let x = placed;
        for y in 0..=placed {
            let jl = image[a.join(x, y)];
            let jr = b.join(image[x], image[y]);
            if jl != usize::MAX && jl != jr {
                return false;
            }
            let ml = image[a.meet(x, y)];
            let mr = b.meet(image[x], image[y]);
            if ml != usize::MAX && ml != mr {
                return false;
            }
            let jl = image[a.join(y, x)];
            if jl != usize::MAX && jl != b.join(image[y], image[x]) {
                return false;
            }
            let ml = image[a.meet(y, x)];
            if ml != usize::MAX && ml != b.meet(image[y], image[x]) {
                return false;
            }
        }
        true
    }

    fn place(
        a: &FiniteDistributiveLattice,
        b: &FiniteDistributiveLattice,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        if next == a.size() {
            return true;
        }
        for candidate in 0..b.size() {
            if used[candidate] {
                continue;
            }
            image[next] = candidate;
            used[candidate] = true;
            if consistent(a, b, image, next) && place(a, b, image, used, next + 1) {
                return true;
            }
            image[next] = usize::MAX;
            used[candidate] = false;
        }
        false
    }

    place(a, b, &mut image, &mut used, 0).then_some(image)
}
