//! A finite computational-algebra toolkit for semirings that decompose
//! as distributive lattices of group semirings.
//!
//! The library works entirely with explicit Cayley tables over dense
//! element indices and checks every algebraic law by exhaustive
//! enumeration, reporting the first counterexample. It covers:
//!
//! * core checkers for semigroups, groups and distributive lattices
//!   ([`table`], [`group`], [`lattice`], [`hom`]);
//! * group semirings — groups with left-zero (or right-zero) addition
//!   ([`group_semiring`]);
//! * the strong-distributive-lattice construction: validate a family of
//!   connecting isomorphisms and synthesize the semiring on the disjoint
//!   union of the component groups ([`sdl`]);
//! * decomposition of arbitrary finite semirings: multiplicative
//!   idempotents, the induced idempotent lattice, Clifford and normal
//!   band tests, maximal-subgroup components via Green's relations, and
//!   recovery of the connecting maps ([`analyze`], [`roundtrip`]);
//! * deterministic factories for small groups, lattices and test
//!   instances ([`generators`]);
//! * a plain-text file format and a CLI front end ([`fileformat`],
//!   [`cli`]).
//!
//! All types are immutable after construction and all operations are
//! pure functions, so everything is safe to share across threads.
//! Intended scale is desk-size carriers (a few hundred elements); the
//! checkers are O(n³) by design, favoring auditability over speed.

pub mod analyze;
pub mod cli;
pub mod fileformat;
pub mod generators;
pub mod group;
pub mod group_semiring;
pub mod hom;
pub mod lattice;
pub mod roundtrip;
pub mod sdl;
pub mod table;

pub use analyze::{
    check_semiring, decompose_components, full_analysis, full_analysis_with_flavor, h_classes,
    idempotent_subsemiring, is_clifford, is_clifford_via_regularity, is_left_normal_band,
    is_normal_band, is_right_normal_band, lattice_isomorphism, multiplicative_idempotents,
    recover_connecting_maps, AnalysisReport, Finding,
};
pub use fileformat::{parse, serialize, ParseError, Structure};
pub use generators::{
    boolean_lattice, chain_lattice, constant_family, cyclic_group, divisor_lattice, klein_four,
    non_strong_counterexample, symmetric_group_3, twisted_family, InstanceSpec,
};
pub use group::{check_group, FiniteGroup, GroupDefect};
pub use group_semiring::{make_group_semiring, AdditionFlavor, GroupSemiring};
pub use hom::{is_homomorphism, is_semiring_homomorphism, HomError, HomMap};
pub use lattice::{check_distributive_lattice, FiniteDistributiveLattice, LatticeDefect};
pub use roundtrip::verify_roundtrip;
pub use sdl::{
    build_strong_sdl, check_compatibility, derive_psi, validate_iso_family, BuildOptions,
    GroupComponentFamily, IsoFamily, SemiringTable, ValidationReport,
};
pub use table::{OpTable, TableError};

/// The constant family under its construction-operation name: every
/// component a copy of the group, every connecting map the identity.
pub use generators::constant_family as build_free_product_example;
