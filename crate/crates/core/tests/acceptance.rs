//! Acceptance suite: one test per criterion, each checked exhaustively
//! at desk scale and printing a single PASS line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! The corpus crosses every factory lattice (chains of length 1–4, the
//! boolean lattices of rank 1–2, the divisors of 12) with every factory
//! group (Z1–Z4, the Klein four-group, the symmetric group on three
//! points), under both the identity family and — where the group has a
//! nontrivial automorphism — a twisted family. All checks are exact:
//! table equality, no tolerances.

use latring::analyze::{
    check_semiring, full_analysis, is_clifford, is_clifford_via_regularity, is_left_normal_band,
    lattice_isomorphism, Finding,
};
use latring::fileformat::{parse, serialize, Structure};
use latring::generators::{
    non_strong_counterexample, realize, GroupKind, InstanceSpec, LatticeKind, PhiRecipe,
};
use latring::group_semiring::AdditionFlavor;
use latring::hom::is_group_isomorphism;
use latring::lattice::{check_distributive_lattice, LatticeDefect};
use latring::sdl::{
    build_strong_sdl, check_compatibility, derive_psi, validate_iso_family, BuildOptions,
    FamilyViolation, GroupComponentFamily, IsoFamily, SemiringTable,
};
use latring::table::OpTable;
use latring::verify_roundtrip;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;

struct Instance {
    name: String,
    spec: InstanceSpec,
    fam: GroupComponentFamily,
    isos: IsoFamily,
    built: SemiringTable,
}

fn lattice_kinds() -> Vec<(&'static str, LatticeKind)> {
    vec![
        ("chain1", LatticeKind::Chain(1)),
        ("chain2", LatticeKind::Chain(2)),
        ("chain3", LatticeKind::Chain(3)),
        ("chain4", LatticeKind::Chain(4)),
        ("boolean1", LatticeKind::Boolean(1)),
        ("boolean2", LatticeKind::Boolean(2)),
        ("divisor12", LatticeKind::Divisor(12)),
    ]
}

fn group_kinds() -> Vec<(&'static str, GroupKind)> {
    vec![
        ("z1", GroupKind::Cyclic(1)),
        ("z2", GroupKind::Cyclic(2)),
        ("z3", GroupKind::Cyclic(3)),
        ("z4", GroupKind::Cyclic(4)),
        ("klein4", GroupKind::Klein4),
        ("sym3", GroupKind::Sym3),
    ]
}

/// A nontrivial automorphism for each group that has one, in one-line
/// permutation form: negation on the cyclic groups, a 3-cycle of the
/// involutions on the Klein group, conjugation by a transposition on
/// the symmetric group.
fn twist_for(kind: &GroupKind) -> Option<Vec<usize>> {
    match kind {
        GroupKind::Cyclic(1) | GroupKind::Cyclic(2) => None,
        GroupKind::Cyclic(3) => Some(vec![0, 2, 1]),
        GroupKind::Cyclic(4) => Some(vec![0, 3, 2, 1]),
        GroupKind::Cyclic(_) => None,
        GroupKind::Klein4 => Some(vec![0, 2, 3, 1]),
        GroupKind::Sym3 => Some(vec![0, 5, 2, 4, 3, 1]),
    }
}

fn corpus() -> Vec<Instance> {
    let mut instances = Vec::new();
    for (lname, lkind) in lattice_kinds() {
        for (gname, gkind) in group_kinds() {
            let mut recipes = vec![("identity", PhiRecipe::Identity)];
            if let Some(perm) = twist_for(&gkind) {
                recipes.push(("twisted", PhiRecipe::Twist(perm)));
            }
            for (rname, phi) in recipes {
                let spec = InstanceSpec {
                    lattice: lkind.clone(),
                    group: gkind.clone(),
                    phi,
                    flavor: AdditionFlavor::LeftZero,
                    expected_invalid: false,
                };
                let (fam, isos) = realize(&spec).expect("factory instance realizes");
                let built = build_strong_sdl(&fam, &isos, BuildOptions::default())
                    .expect("factory instance builds");
                assert!(built.size() <= 48, "corpus instances stay desk-size");
                instances.push(Instance {
                    name: format!("{lname}/{gname}/{rname}"),
                    spec,
                    fam,
                    isos,
                    built,
                });
            }
        }
    }
    instances
}

/// Global index of group element `member` of component `alpha`.
fn global(fam: &GroupComponentFamily, alpha: usize, member: usize) -> usize {
    fam.offsets()[alpha] + member
}

/// Global index of the identity of component `alpha`.
fn identity_of(fam: &GroupComponentFamily, alpha: usize) -> usize {
    global(fam, alpha, fam.component(alpha).identity())
}

#[test]
fn criterion_1_construction_soundness() {
    let start = std::time::Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 12, "corpus must span at least 12 instances");
    for inst in &corpus {
        check_semiring(inst.built.add_table(), inst.built.mul_table())
            .unwrap_or_else(|v| panic!("{}: {v}", inst.name));
    }
    println!(
        "criterion 1 (construction soundness): PASS — {} instances, all semiring axioms exact, {:.2?}",
        corpus.len(),
        start.elapsed()
    );
}

#[test]
fn criterion_2_final_theorem_suite() {
    let corpus = corpus();
    for inst in &corpus {
        let report = full_analysis(inst.built.add_table(), inst.built.mul_table());
        let idems = report
            .idempotents
            .value()
            .unwrap_or_else(|| panic!("{}: idempotents not evaluated", inst.name));
        assert_eq!(
            idems.len(),
            inst.fam.lattice().size(),
            "{}: one idempotent per lattice element",
            inst.name
        );
        let induced = match &report.idempotent_lattice {
            Finding::Ok(l) => l,
            other => panic!("{}: idempotent lattice: {other:?}", inst.name),
        };
        lattice_isomorphism(&induced.lattice, inst.fam.lattice())
            .unwrap_or_else(|| panic!("{}: induced lattice not isomorphic to input", inst.name));
        is_clifford(inst.built.mul_table()).unwrap_or_else(|v| panic!("{}: {v}", inst.name));
        is_left_normal_band(inst.built.add_table())
            .unwrap_or_else(|v| panic!("{}: {v}", inst.name));
    }
    println!(
        "criterion 2 (final-theorem suite): PASS — |E(S)|=|D|, E-lattice ≅ D, Clifford, left normal band on {} instances",
        corpus.len()
    );
}

#[test]
fn criterion_3_structure_theorem_clauses() {
    let corpus = corpus();
    for inst in &corpus {
        let fam = &inst.fam;
        let lattice = fam.lattice();
        let s = &inst.built;
        let labels = s.labels().expect("built tables carry labels");
        let psi = derive_psi(&inst.isos).expect("validated family");

        // (i) identities multiply down and add up: e_a e_b = e_b and
        // e_a + e_b = e_a for b ≤ a.
        for (lower, upper) in lattice.leq_pairs() {
            let e_lower = identity_of(fam, lower);
            let e_upper = identity_of(fam, upper);
            assert_eq!(s.mul(e_upper, e_lower), e_lower, "{} (i) mul", inst.name);
            assert_eq!(s.add(e_upper, e_lower), e_upper, "{} (i) add", inst.name);
        }

        // (ii) sums ignore everything about the right argument except its
        // component.
        for x in s.elements() {
            for y in s.elements() {
                for y2 in s.elements() {
                    if labels[y].component == labels[y2].component {
                        assert_eq!(s.add(x, y), s.add(x, y2), "{} (ii)", inst.name);
                    }
                }
            }
        }

        // (iii) the construction maps agree with right-multiplication by
        // the lower identity and right-addition of the upper identity.
        for (lower, upper) in lattice.leq_pairs() {
            let phi = inst.isos.get(upper, lower).expect("input family");
            let e_lower = identity_of(fam, lower);
            for x in 0..fam.component(upper).order() {
                assert_eq!(
                    s.mul(global(fam, upper, x), e_lower),
                    global(fam, lower, phi.apply(x)),
                    "{} (iii) phi",
                    inst.name
                );
            }
            let up = psi.get(lower, upper).expect("derived family");
            let e_upper = identity_of(fam, upper);
            for y in 0..fam.component(lower).order() {
                assert_eq!(
                    s.add(global(fam, lower, y), e_upper),
                    global(fam, upper, up.apply(y)),
                    "{} (iii) psi",
                    inst.name
                );
            }
        }

        // (iv) composition along chains, on the recovered family.
        let report = full_analysis(s.add_table(), s.mul_table());
        let recovered = match &report.recovered {
            Finding::Ok(r) => r,
            other => panic!("{}: recovery: {other:?}", inst.name),
        };
        for upper in lattice.elements() {
            for mid in lattice.elements() {
                if !lattice.leq(mid, upper) {
                    continue;
                }
                for lower in lattice.elements() {
                    if !lattice.leq(lower, mid) {
                        continue;
                    }
                    let two = recovered
                        .phi
                        .get(upper, mid)
                        .unwrap()
                        .then(recovered.phi.get(mid, lower).unwrap())
                        .unwrap();
                    let one = recovered.phi.get(upper, lower).unwrap();
                    assert_eq!(&two, one, "{} (iv) at {upper}->{mid}->{lower}", inst.name);
                }
            }
        }

        // (v) the two recovered directions are mutually inverse.
        for (lower, upper) in lattice.leq_pairs() {
            let phi = recovered.phi.get(upper, lower).unwrap();
            let up = recovered.psi.get(lower, upper).unwrap();
            assert!(phi.then(up).unwrap().is_identity(), "{} (v)", inst.name);
            assert!(up.then(phi).unwrap().is_identity(), "{} (v)", inst.name);
        }

        // (vi) the compatibility identity over all qualifying quadruples,
        // on the construction input.
        check_compatibility(fam, &inst.isos).unwrap_or_else(|w| panic!("{} (vi): {w}", inst.name));
    }
    println!(
        "criterion 3 (structure-theorem clauses i–vi): PASS — exhaustively verified on {} instances",
        corpus.len()
    );
}

#[test]
fn criterion_4_roundtrip_fidelity() {
    let corpus = corpus();
    for inst in &corpus {
        verify_roundtrip(&inst.fam, &inst.isos, &inst.built, AdditionFlavor::LeftZero)
            .unwrap_or_else(|e| panic!("{}: {e}", inst.name));
    }
    println!(
        "criterion 4 (round-trip fidelity): PASS — recovered maps pointwise equal to inputs on {} instances",
        corpus.len()
    );
}

#[test]
fn criterion_5_mutual_isomorphism() {
    let corpus = corpus();
    let mut exhibited = 0usize;
    for inst in &corpus {
        let report = full_analysis(inst.built.add_table(), inst.built.mul_table());
        assert!(report.is_strong(), "{}: classified strong", inst.name);
        let recovered = report.recovered.value().unwrap();
        let comps = report.components.value().unwrap();
        let induced = report.idempotent_lattice.value().unwrap();
        let orders: Vec<usize> = comps.by_idempotent.values().map(|m| m.len()).collect();
        assert!(
            orders.windows(2).all(|w| w[0] == w[1]),
            "{}: all components equal order",
            inst.name
        );
        // Exhibit an explicit isomorphism for every ordered pair by going
        // up to the join and back down.
        for a in induced.lattice.elements() {
            for b in induced.lattice.elements() {
                let join = induced.lattice.join(a, b);
                let via = recovered
                    .psi
                    .get(a, join)
                    .unwrap()
                    .then(recovered.phi.get(join, b).unwrap())
                    .unwrap();
                let ok = is_group_isomorphism(&via, &comps.groups[a], &comps.groups[b])
                    .expect("shapes match");
                assert!(ok, "{}: composite map {a}->{join}->{b}", inst.name);
                exhibited += 1;
            }
        }
    }
    println!(
        "criterion 5 (mutual isomorphism): PASS — {exhibited} explicit pairwise isomorphisms exhibited"
    );
}

#[test]
fn criterion_6_negative_controls() {
    // (a) a family violating the composition clause is rejected with the
    // correct witness triple.
    let spec_text = include_str!("golden/instance_sdl2_violation.txt");
    let Structure::InstanceSpec(spec) = parse(spec_text).unwrap() else {
        panic!("fixture is an instance-spec");
    };
    assert!(spec.expected_invalid);
    let (fam, isos) = realize(&spec).unwrap();
    let report = validate_iso_family(&fam, &isos);
    assert!(!report.is_valid());
    assert!(
        report.violations.iter().any(|v| matches!(
            v,
            FamilyViolation::CompositionClauseFails {
                upper: 2,
                mid: 1,
                lower: 0,
                ..
            }
        )),
        "expected a composition witness at (2, 1, 0), got {:?}",
        report.violations
    );
    assert!(build_strong_sdl(&fam, &isos, BuildOptions::default()).is_err());

    // (b) the fixed counterexample is a semiring but not strong.
    let ce = non_strong_counterexample();
    assert!(check_semiring(ce.add_table(), ce.mul_table()).is_ok());
    let report = full_analysis(ce.add_table(), ce.mul_table());
    assert!(report.semiring.is_ok());
    assert!(report.component_closure.is_ok());
    assert!(matches!(report.strong, Finding::Failed(_)));

    // (c) the diamond is rejected as a distributive lattice, with the
    // standard counterexample triple.
    let m3_text = include_str!("golden/lattice_m3.txt");
    let Structure::Lattice(m3) = parse(m3_text).unwrap() else {
        panic!("fixture is a lattice");
    };
    assert_eq!(
        check_distributive_lattice(&m3.join, &m3.meet),
        Err(LatticeDefect::MeetOverJoinFails { triple: [1, 2, 3] })
    );

    println!("criterion 6 (negative controls): PASS — composition-clause witness, non-strong verdict, diamond rejection");
}

/// Draws a random associative table of size ≤ 5 from a mixture of
/// structured families, then scrambles it by a random relabeling.
/// Rejection sampling over raw tables is hopeless at size 5, so the
/// variety comes from the families: bands, null semigroups, groups,
/// chain semilattices, two-component Clifford semigroups with a
/// collapsing homomorphism, and a left-zero band with adjoined identity
/// (not Clifford).
fn random_associative(rng: &mut ChaCha8Rng) -> OpTable {
    let family = rng.random_range(0..7u32);
    let table = match family {
        0 => {
            let n = rng.random_range(1..=5);
            OpTable::from_fn(n, |x, _| x).unwrap()
        }
        1 => {
            let n = rng.random_range(1..=5);
            OpTable::from_fn(n, |_, y| y).unwrap()
        }
        2 => {
            let n = rng.random_range(1..=5);
            let c = rng.random_range(0..n);
            OpTable::from_fn(n, |_, _| c).unwrap()
        }
        3 => {
            let n = rng.random_range(1..=5);
            OpTable::from_fn(n, |x, y| (x + y) % n).unwrap()
        }
        4 => {
            let n = rng.random_range(1..=5);
            OpTable::from_fn(n, |x, y| x.min(y)).unwrap()
        }
        5 => {
            // Two groups joined over a 2-chain through a homomorphism
            // f(t) = c·t mod m from the top group Z_k into the bottom
            // group Z_m, with m dividing k. Clifford but not a group.
            let (k, m) = *[(2, 1), (3, 1), (4, 1), (2, 2)]
                .get(rng.random_range(0..4usize))
                .unwrap();
            let c = rng.random_range(0..m);
            let f = move |t: usize| (c * t) % m;
            OpTable::from_fn(m + k, move |x, y| match (x < m, y < m) {
                (true, true) => (x + y) % m,
                (false, false) => m + (x + y - 2 * m) % k,
                (true, false) => (x + f(y - m)) % m,
                (false, true) => (f(x - m) + y) % m,
            })
            .unwrap()
        }
        _ => {
            // Left-zero band with an adjoined identity: idempotents are
            // not central once the band has two elements. Rows below the
            // identity are constant, including at the identity column.
            let n = rng.random_range(2..=5);
            OpTable::from_fn(n, |x, y| if x == n - 1 { y } else { x }).unwrap()
        }
    };
    // Scramble by conjugating with a random permutation.
    let n = table.size();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut inv = vec![0usize; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let scrambled = OpTable::from_fn(n, |x, y| perm[table.apply(inv[x], inv[y])]).unwrap();
    assert!(
        scrambled.is_associative(),
        "mixture families are associative"
    );
    scrambled
}

#[test]
fn criterion_7_clifford_oracle_cross_validation() {
    let corpus = corpus();
    let mut checked = 0usize;
    for inst in &corpus {
        let a = is_clifford(inst.built.mul_table()).is_ok();
        let b = is_clifford_via_regularity(inst.built.mul_table()).is_ok();
        assert_eq!(a, b, "{}: definitions disagree", inst.name);
        assert!(a, "{}: built multiplications are Clifford", inst.name);
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a77);
    let mut non_clifford = 0usize;
    for i in 0..100 {
        let table = random_associative(&mut rng);
        let a = is_clifford(&table).is_ok();
        let b = is_clifford_via_regularity(&table).is_ok();
        assert_eq!(a, b, "random table {i}: definitions disagree");
        non_clifford += usize::from(!a);
        checked += 1;
    }
    assert!(
        non_clifford > 0,
        "the sample must include non-Clifford tables"
    );
    println!(
        "criterion 7 (Clifford oracle cross-validation): PASS — {checked} tables, H-class and regularity definitions agree ({non_clifford} non-Clifford among the random 100)"
    );
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_latring"))
}

fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn criterion_8_cli_contract() {
    // Shipped golden files serialize back to themselves byte for byte.
    let mut golden_count = 0usize;
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let structure = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(
            serialize(&structure),
            text,
            "{}: canonical round trip",
            path.display()
        );
        golden_count += 1;
    }
    assert!(golden_count >= 12, "golden corpus present");

    // Every valid corpus family round-trips through the binary.
    let tmp = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-cli");
    std::fs::create_dir_all(&tmp).unwrap();
    let corpus = corpus();
    for inst in &corpus {
        let file = tmp.join(format!("{}.txt", inst.name.replace('/', "_")));
        std::fs::write(
            &file,
            serialize(&Structure::InstanceSpec(inst.spec.clone())),
        )
        .unwrap();
        let output = bin().arg("roundtrip").arg(&file).output().unwrap();
        assert_eq!(
            output.status.code(),
            Some(0),
            "{}: roundtrip exit 0; stdout: {} stderr: {}",
            inst.name,
            String::from_utf8_lossy(&output.stdout),
            String::from_utf8_lossy(&output.stderr)
        );
    }

    // Documented nonzero exits on the negative controls.
    let m3 = golden_dir().join("lattice_m3.txt");
    let output = bin().arg("check").arg(&m3).output().unwrap();
    assert_eq!(output.status.code(), Some(1), "law violation exits 1");
    assert!(
        String::from_utf8_lossy(&output.stdout).contains("distributivity"),
        "diagnostic names the violated law"
    );

    let sdl2 = golden_dir().join("instance_sdl2_violation.txt");
    let output = bin().arg("check").arg(&sdl2).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let output = bin().arg("build").arg(&sdl2).output().unwrap();
    assert_eq!(output.status.code(), Some(1), "rejected family exits 1");

    let bad = tmp.join("bad.txt");
    std::fs::write(&bad, "kind: widget\n").unwrap();
    let output = bin().arg("check").arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(3), "parse error exits 3");

    let output = bin()
        .arg("check")
        .arg(tmp.join("missing.txt"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(4), "i/o error exits 4");

    println!(
        "criterion 8 (CLI contract): PASS — {golden_count} golden files byte-identical, {} corpus round trips exit 0, negative exits 1/3/4",
        corpus.len()
    );
}
