//! Construction of semirings as strong distributive lattices of group
//! semirings.
//!
//! The input is a finite distributive lattice `D`, one finite group
//! `G_a` per lattice element, and a family of connecting isomorphisms
//! `phi[a -> b] : G_a -> G_b` for every pair `b ≤ a`, subject to:
//!
//! * **SDL1** — `phi[a -> a]` is the identity on `G_a`;
//! * **SDL2** — `phi[a -> b]` followed by `phi[b -> c]` equals
//!   `phi[a -> c]` whenever `c ≤ b ≤ a`.
//!
//! The upward family `psi[b -> a] = phi[a -> b]⁻¹` is always derived,
//! never user-supplied. On the disjoint union `S = ∪ G_a` the semiring
//! operations are, for `x ∈ G_a` and `y ∈ G_b`:
//!
//! ```text
//! x · y = phi[a -> a∧b](x) · phi[b -> a∧b](y)     (product in G_{a∧b})
//! x + y = psi[a -> a∨b](x)                        (left-zero flavor)
//! ```
//!
//! [`build_strong_sdl`] validates the family, lays the components out in
//! lattice-element order, fills both tables, and then re-verifies every
//! semiring axiom on the result before returning it.

use crate::group::FiniteGroup;
use crate::group_semiring::AdditionFlavor;
use crate::hom::{homomorphism_counterexample, HomMap};
use crate::lattice::FiniteDistributiveLattice;
use crate::table::OpTable;
use std::collections::BTreeMap;
use thiserror::Error;

/// A lattice-indexed family of groups: one component per lattice element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupComponentFamily {
    lattice: FiniteDistributiveLattice,
    components: Vec<FiniteGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("lattice has {lattice_size} elements but {component_count} component groups were given")]
pub struct FamilyShapeError {
    pub lattice_size: usize,
    pub component_count: usize,
}

impl GroupComponentFamily {
    pub fn new(
        lattice: FiniteDistributiveLattice,
        components: Vec<FiniteGroup>,
    ) -> Result<Self, FamilyShapeError> {
        if lattice.size() != components.len() {
            return Err(FamilyShapeError {
                lattice_size: lattice.size(),
                component_count: components.len(),
            });
        }
        Ok(GroupComponentFamily {
            lattice,
            components,
        })
    }

    pub fn lattice(&self) -> &FiniteDistributiveLattice {
        &self.lattice
    }

    pub fn component(&self, alpha: usize) -> &FiniteGroup {
        &self.components[alpha]
    }

    pub fn components(&self) -> &[FiniteGroup] {
        &self.components
    }

    /// Start offset of each component in the disjoint-union layout, plus
    /// the total carrier size as a final sentinel entry.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.components.len() + 1);
        let mut acc = 0;
        for g in &self.components {
            offsets.push(acc);
            acc += g.order();
        }
        offsets.push(acc);
        offsets
    }

    pub fn total_size(&self) -> usize {
        self.components.iter().map(|g| g.order()).sum()
    }
}

/// A family of maps between components, keyed by `(source, target)`
/// lattice elements. Downward families hold `phi[a -> b]` for `b ≤ a`;
/// derived upward families hold `psi[b -> a]` for `b ≤ a`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IsoFamily {
    maps: BTreeMap<(usize, usize), HomMap>,
}

impl IsoFamily {
    pub fn new(maps: BTreeMap<(usize, usize), HomMap>) -> Self {
        IsoFamily { maps }
    }

    /// The all-identity downward family over `fam`'s lattice. Only valid
    /// when every component has the same order as its targets; used by
    /// the constant-family generator where all components coincide.
    pub fn identity_family(fam: &GroupComponentFamily) -> Self {
        let mut maps = BTreeMap::new();
        for (lower, upper) in fam.lattice().leq_pairs() {
            maps.insert(
                (upper, lower),
                HomMap::identity(fam.component(upper).order()),
            );
        }
        IsoFamily { maps }
    }

    pub fn get(&self, source: usize, target: usize) -> Option<&HomMap> {
        self.maps.get(&(source, target))
    }

    pub fn insert(&mut self, source: usize, target: usize, map: HomMap) {
        self.maps.insert((source, target), map);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &HomMap)> {
        self.maps.iter()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

/// One violated clause of the connecting-family contract, with witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyViolation {
    #[error("missing map for pair ({src} -> {target})")]
    MissingMap { src: usize, target: usize },
    #[error("unexpected map for pair ({src} -> {target}); target is not below source")]
    UnexpectedMap { src: usize, target: usize },
    #[error("map ({src} -> {target}) has shape {map_src}->{map_target}, expected {expected_src}->{expected_target}")]
    ShapeMismatch {
        src: usize,
        target: usize,
        map_src: usize,
        map_target: usize,
        expected_src: usize,
        expected_target: usize,
    },
    #[error("map ({src} -> {target}) is not a homomorphism: images of ({}, {}) multiply wrong", .witness[0], .witness[1])]
    NotHomomorphism {
        src: usize,
        target: usize,
        witness: [usize; 2],
    },
    #[error("map ({src} -> {target}) is not bijective")]
    NotBijective { src: usize, target: usize },
    #[error("identity clause fails: map ({component} -> {component}) moves element {element}")]
    IdentityClauseFails { component: usize, element: usize },
    #[error("composition clause fails at ({upper} -> {mid} -> {lower}) on element {element}")]
    CompositionClauseFails {
        upper: usize,
        mid: usize,
        lower: usize,
        element: usize,
    },
}

/// Everything wrong with a candidate family, in deterministic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<FamilyViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Checks a downward family against the full contract: keys are exactly
/// the `≤` pairs, every map is a group isomorphism of the right shape,
/// and SDL1/SDL2 hold. All violations are collected, each with a witness.
pub fn validate_iso_family(fam: &GroupComponentFamily, isos: &IsoFamily) -> ValidationReport {
    let lattice = fam.lattice();
    let mut report = ValidationReport::default();
    let expected: Vec<(usize, usize)> = lattice
        .leq_pairs()
        .into_iter()
        .map(|(lower, upper)| (upper, lower))
        .collect();
    for &(source, target) in &expected {
        if isos.get(source, target).is_none() {
            report.violations.push(FamilyViolation::MissingMap {
                src: source,
                target,
            });
        }
    }
    for (&(source, target), _) in isos.iter() {
        let valid_key =
            source < lattice.size() && target < lattice.size() && lattice.leq(target, source);
        if !valid_key {
            report.violations.push(FamilyViolation::UnexpectedMap {
                src: source,
                target,
            });
        }
    }
    // A map usable for the clause checks below: correct key and shape.
    let usable = |source: usize, target: usize| -> Option<&HomMap> {
        let map = isos.get(source, target)?;
        (map.source_size() == fam.component(source).order()
            && map.target_size() == fam.component(target).order())
        .then_some(map)
    };
    for &(source, target) in &expected {
        let Some(map) = isos.get(source, target) else {
            continue;
        };
        let expected_source = fam.component(source).order();
        let expected_target = fam.component(target).order();
        if map.source_size() != expected_source || map.target_size() != expected_target {
            report.violations.push(FamilyViolation::ShapeMismatch {
                src: source,
                target,
                map_src: map.source_size(),
                map_target: map.target_size(),
                expected_src: expected_source,
                expected_target,
            });
            continue;
        }
        match homomorphism_counterexample(
            map,
            fam.component(source).op(),
            fam.component(target).op(),
        ) {
            Ok(None) => {}
            Ok(Some(witness)) => report.violations.push(FamilyViolation::NotHomomorphism {
                src: source,
                target,
                witness,
            }),
            Err(_) => unreachable!("shape checked above"),
        }
        if !map.is_bijective() {
            report.violations.push(FamilyViolation::NotBijective {
                src: source,
                target,
            });
        }
    }
    // SDL1: the diagonal maps are identities.
    for alpha in lattice.elements() {
        if let Some(map) = usable(alpha, alpha) {
            if let Some(element) = (0..map.source_size()).find(|&x| map.apply(x) != x) {
                report
                    .violations
                    .push(FamilyViolation::IdentityClauseFails {
                        component: alpha,
                        element,
                    });
            }
        }
    }
    // SDL2: going down in two steps equals going down in one.
    for upper in lattice.elements() {
        for mid in lattice.elements() {
            if mid == upper || !lattice.leq(mid, upper) {
                continue;
            }
            for lower in lattice.elements() {
                if lower == mid || !lattice.leq(lower, mid) {
                    continue;
                }
                let (Some(um), Some(ml), Some(ul)) =
                    (usable(upper, mid), usable(mid, lower), usable(upper, lower))
                else {
                    continue;
                };
                let composed = um.then(ml).expect("shapes chain");
                if let Some(element) =
                    (0..composed.source_size()).find(|&x| composed.apply(x) != ul.apply(x))
                {
                    report
                        .violations
                        .push(FamilyViolation::CompositionClauseFails {
                            upper,
                            mid,
                            lower,
                            element,
                        });
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("map ({src} -> {target}) is not bijective; the upward family is undefined")]
pub struct DerivePsiError {
    pub src: usize,
    pub target: usize,
}

/// Derives the upward family as the pointwise inverse of the downward
/// one: `psi[b -> a] = phi[a -> b]⁻¹`.
pub fn derive_psi(isos: &IsoFamily) -> Result<IsoFamily, DerivePsiError> {
    let mut maps = BTreeMap::new();
    for (&(source, target), map) in isos.iter() {
        let inv = map.inverse().map_err(|_| DerivePsiError {
            src: source,
            target,
        })?;
        maps.insert((target, source), inv);
    }
    Ok(IsoFamily { maps })
}

/// Witness that the compatibility identity failed for some qualifying
/// quadruple. For a family passing [`validate_iso_family`] this cannot
/// happen; the check exists as a machine verification of that fact.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("compatibility fails at (a={a}, b={b}, c={c}, d={d}) on element {element}: {lhs} vs {rhs}")]
pub struct CompatibilityWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub element: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// Checks, over every quadruple (a, b, c, d) with `a∨b ≤ d` and
/// `c ≤ a∧b`, that going `phi[a -> c]` then `psi[c -> b]` agrees with
/// going `psi[a -> d]` then `phi[d -> b]`, pointwise on `G_a`.
pub fn check_compatibility(
    fam: &GroupComponentFamily,
    isos: &IsoFamily,
) -> Result<(), Box<CompatibilityWitness>> {
    let lattice = fam.lattice();
    let psi = derive_psi(isos).expect("compatibility requires an invertible family");
    for a in lattice.elements() {
        for b in lattice.elements() {
            let join = lattice.join(a, b);
            let meet = lattice.meet(a, b);
            for c in lattice.elements() {
                if !lattice.leq(c, meet) {
                    continue;
                }
                for d in lattice.elements() {
                    if !lattice.leq(join, d) {
                        continue;
                    }
                    let down_up = isos
                        .get(a, c)
                        .expect("c ≤ a")
                        .then(psi.get(c, b).expect("c ≤ b"))
                        .expect("shapes chain");
                    let up_down = psi
                        .get(a, d)
                        .expect("a ≤ d")
                        .then(isos.get(d, b).expect("b ≤ d"))
                        .expect("shapes chain");
                    for x in 0..down_up.source_size() {
                        let lhs = down_up.apply(x);
                        let rhs = up_down.apply(x);
                        if lhs != rhs {
                            return Err(Box::new(CompatibilityWitness {
                                a,
                                b,
                                c,
                                d,
                                element: x,
                                lhs,
                                rhs,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Label of a carrier element in a constructed semiring: which lattice
/// component it lives in and its index within that component's group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentLabel {
    pub component: usize,
    pub member: usize,
}

/// A finished semiring: one carrier, addition and multiplication tables,
/// and (for constructed instances) the component labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringTable {
    add: OpTable,
    mul: OpTable,
    labels: Option<Vec<ComponentLabel>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringTableError {
    #[error("addition table has {add} elements but multiplication table has {mul}")]
    SizeMismatch { add: usize, mul: usize },
    #[error("labeling has {labels} entries for a carrier of {size}")]
    LabelCountMismatch { labels: usize, size: usize },
}

impl SemiringTable {
    pub fn new(
        add: OpTable,
        mul: OpTable,
        labels: Option<Vec<ComponentLabel>>,
    ) -> Result<Self, SemiringTableError> {
        if add.size() != mul.size() {
            return Err(SemiringTableError::SizeMismatch {
                add: add.size(),
                mul: mul.size(),
            });
        }
        if let Some(ref l) = labels {
            if l.len() != add.size() {
                return Err(SemiringTableError::LabelCountMismatch {
                    labels: l.len(),
                    size: add.size(),
                });
            }
        }
        Ok(SemiringTable { add, mul, labels })
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add.apply(x, y)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul.apply(x, y)
    }

    pub fn labels(&self) -> Option<&[ComponentLabel]> {
        self.labels.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

/// Options for [`build_strong_sdl`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub flavor: AdditionFlavor,
    /// Re-verify every semiring axiom and the component-closure property
    /// on the constructed tables. On by default; turning it off is for
    /// benchmarking only.
    pub self_check: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            flavor: AdditionFlavor::LeftZero,
            self_check: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("connecting family rejected:\n{0}")]
    Rejected(ValidationReport),
    #[error("constructed table failed its self-check: {0}")]
    SelfCheckFailed(String),
}

/// Builds the semiring on the disjoint union of the component groups.
///
/// Components are laid out in lattice-element index order, elements
/// within a component in the component's own order, so tables are
/// reproducible. The family is validated before construction — there is
/// no partial build — and the output is re-verified afterwards unless
/// [`BuildOptions::self_check`] is off.
pub fn build_strong_sdl(
    fam: &GroupComponentFamily,
    isos: &IsoFamily,
    options: BuildOptions,
) -> Result<SemiringTable, BuildError> {
    let report = validate_iso_family(fam, isos);
    if !report.is_valid() {
        return Err(BuildError::Rejected(report));
    }
    let psi = derive_psi(isos).expect("validated family is invertible");
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

    let mut mul_entries = Vec::with_capacity(size * size);
    let mut add_entries = Vec::with_capacity(size * size);
    for &lx in &labels {
        for &ly in &labels {
            let meet = lattice.meet(lx.component, ly.component);
            let xm = isos
                .get(lx.component, meet)
                .expect("validated")
                .apply(lx.member);
            let ym = isos
                .get(ly.component, meet)
                .expect("validated")
                .apply(ly.member);
            mul_entries.push(offsets[meet] + fam.component(meet).mul(xm, ym));

            let join = lattice.join(lx.component, ly.component);
            let lifted = match options.flavor {
                AdditionFlavor::LeftZero => psi
                    .get(lx.component, join)
                    .expect("validated")
                    .apply(lx.member),
                AdditionFlavor::RightZero => psi
                    .get(ly.component, join)
                    .expect("validated")
                    .apply(ly.member),
            };
            add_entries.push(offsets[join] + lifted);
        }
    }
    let add = OpTable::new(size, add_entries).expect("offsets stay in range");
    let mul = OpTable::new(size, mul_entries).expect("offsets stay in range");
    let result = SemiringTable::new(add, mul, Some(labels)).expect("same carrier");

    if options.self_check {
        self_check(fam, &result).map_err(BuildError::SelfCheckFailed)?;
    }
    Ok(result)
}

/// Verifies the constructed table: all four semiring laws plus the
/// component-closure property of products and sums.
fn self_check(fam: &GroupComponentFamily, s: &SemiringTable) -> Result<(), String> {
    crate::analyze::check_semiring(s.add_table(), s.mul_table()).map_err(|v| v.to_string())?;
    let lattice = fam.lattice();
    let labels = s.labels().expect("constructed tables carry labels");
    for x in s.elements() {
        for y in s.elements() {
            let meet = lattice.meet(labels[x].component, labels[y].component);
            if labels[s.mul(x, y)].component != meet {
                return Err(format!("product of {x} and {y} escapes component {meet}"));
            }
            let join = lattice.join(labels[x].component, labels[y].component);
            if labels[s.add(x, y)].component != join {
                return Err(format!("sum of {x} and {y} escapes component {join}"));
            }
        }
    }
    Ok(())
}
