//! CLI behavior beyond the acceptance contract: command output shapes,
//! flags, and report contents on the shipped fixtures.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_latring"))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn tmp_dir() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let output = bin().args(args).output().unwrap();
    (
        output.status.code(),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

#[test]
fn check_passes_on_valid_fixtures() {
    for file in [
        "group_z2.txt",
        "group_sym3.txt",
        "group_klein4.txt",
        "lattice_chain2.txt",
        "lattice_boolean2.txt",
        "lattice_divisor12.txt",
        "semigroup_leftzero2.txt",
        "semiring_chain2_z2.txt",
        "semiring_non_strong.txt",
        "instance_chain2_z2.txt",
        "instance_boolean2_sym3_twist.txt",
    ] {
        let (code, stdout, stderr) = run(&["check", golden(file).to_str().unwrap()]);
        assert_eq!(code, Some(0), "{file}: {stdout}{stderr}");
        assert!(stdout.contains("check: pass"), "{file}: {stdout}");
    }
}

#[test]
fn check_reports_group_identity_by_name() {
    let (code, stdout, _) = run(&["check", golden("group_sym3.txt").to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("identity: 012"), "{stdout}");
    assert!(stdout.contains("order: 6"), "{stdout}");
}

#[test]
fn check_kv_format_is_sorted_keys() {
    let (code, stdout, _) = run(&[
        "check",
        golden("lattice_divisor12.txt").to_str().unwrap(),
        "--format",
        "kv",
    ]);
    assert_eq!(code, Some(0));
    let keys: Vec<&str> = stdout
        .lines()
        .map(|l| l.split('=').next().unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "kv keys must be emitted sorted: {stdout}");
    assert!(stdout.contains("bottom=1"), "{stdout}");
    assert!(stdout.contains("top=12"), "{stdout}");
    assert!(stdout.contains("order_pairs=18"), "{stdout}");
}

#[test]
fn analyze_counterexample_reports_not_strong() {
    let (code, stdout, _) = run(&[
        "analyze",
        golden("semiring_non_strong.txt").to_str().unwrap(),
        "--format",
        "kv",
    ]);
    // Analysis of a genuine semiring succeeds even when it is not strong.
    assert_eq!(code, Some(0), "{stdout}");
    assert!(stdout.contains("semiring=pass"), "{stdout}");
    assert!(stdout.contains("component_closure=pass"), "{stdout}");
    assert!(stdout.contains("idempotent_count=2"), "{stdout}");
    assert!(stdout.contains("strong_sdl=fail"), "{stdout}");
    assert!(
        stdout.contains("is not a group isomorphism"),
        "the witness names the failing clause: {stdout}"
    );
    assert!(stdout.contains("left_normal_band=fail"), "{stdout}");
}

#[test]
fn analyze_built_instance_reports_strong() {
    let (code, stdout, _) = run(&[
        "analyze",
        golden("semiring_chain2_z2.txt").to_str().unwrap(),
        "--format",
        "kv",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("strong_sdl=pass"), "{stdout}");
    assert!(stdout.contains("component_count=2"), "{stdout}");
    assert!(stdout.contains("component_orders=2 2"), "{stdout}");
    assert!(stdout.contains("idempotents=0:0 1:0"), "{stdout}");
}

#[test]
fn analyze_rejects_non_semiring_with_exit_1() {
    let dir = tmp_dir();
    let file = dir.join("not_semiring.txt");
    // add = mul = the two-element group: distributivity fails.
    std::fs::write(
        &file,
        "kind: semiring\nsize: 2\nnames: 0 1\ntable: add\n0 1\n1 0\ntable: mul\n0 1\n1 0\n",
    )
    .unwrap();
    let (code, stdout, _) = run(&["analyze", file.to_str().unwrap()]);
    assert_eq!(code, Some(1));
    assert!(stdout.contains("semiring: fail"), "{stdout}");
    assert!(stdout.contains("strong_sdl: not-evaluated"), "{stdout}");
}

#[test]
fn build_writes_deterministic_output() {
    let dir = tmp_dir();
    let out1 = dir.join("a.txt");
    let out2 = dir.join("b.txt");
    let spec = golden("instance_chain3_z3_twist.txt");
    let (code, _, stderr) = run(&[
        "build",
        spec.to_str().unwrap(),
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0), "{stderr}");
    let (code, _, _) = run(&[
        "build",
        spec.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    let a = std::fs::read_to_string(&out1).unwrap();
    let b = std::fs::read_to_string(&out2).unwrap();
    assert_eq!(a, b);
    // The built file itself passes check and analyzes as strong.
    let (code, stdout, _) = run(&["analyze", out1.to_str().unwrap(), "--format", "kv"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("strong_sdl=pass"), "{stdout}");
    assert!(stdout.contains("size=9"), "{stdout}");
}

#[test]
fn build_no_self_check_produces_the_same_table() {
    let dir = tmp_dir();
    let with = dir.join("with_check.txt");
    let without = dir.join("without_check.txt");
    let spec = golden("instance_divisor12_klein4.txt");
    let (code, _, _) = run(&[
        "build",
        spec.to_str().unwrap(),
        "--out",
        with.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    let (code, _, _) = run(&[
        "build",
        spec.to_str().unwrap(),
        "--no-self-check",
        "--out",
        without.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(
        std::fs::read_to_string(&with).unwrap(),
        std::fs::read_to_string(&without).unwrap()
    );
}

#[test]
fn build_respects_right_flavor_override() {
    let dir = tmp_dir();
    let out = dir.join("right.txt");
    let spec = golden("instance_chain2_z2.txt");
    let (code, _, _) = run(&[
        "build",
        spec.to_str().unwrap(),
        "--flavor",
        "right",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    // Right flavor analyzed as right-zero is strong; as left-zero it is not.
    let (code, stdout, _) = run(&[
        "analyze",
        out.to_str().unwrap(),
        "--flavor",
        "right",
        "--format",
        "kv",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("strong_sdl=pass"), "{stdout}");
    assert!(stdout.contains("right_normal_band=pass"), "{stdout}");
    let (_, stdout, _) = run(&["analyze", out.to_str().unwrap(), "--format", "kv"]);
    assert!(stdout.contains("strong_sdl=fail"), "{stdout}");
}

#[test]
fn gen_counterexample_matches_the_shipped_certificate() {
    let (code, stdout, _) = run(&["gen", "counterexample"]);
    assert_eq!(code, Some(0));
    let shipped = std::fs::read_to_string(golden("semiring_non_strong.txt")).unwrap();
    assert_eq!(stdout, shipped, "search certificate is stable");
}

#[test]
fn gen_rejects_unknown_kinds() {
    let (code, _, stderr) = run(&["gen", "group", "dihedral:4"]);
    assert_eq!(code, Some(3));
    assert!(stderr.contains("unknown group kind"), "{stderr}");
    let (code, _, stderr) = run(&["gen", "lattice", "pentagon"]);
    assert_eq!(code, Some(3));
    assert!(stderr.contains("unknown lattice kind"), "{stderr}");
}

#[test]
fn gen_instance_rejects_non_automorphism_twist() {
    let (code, _, stderr) = run(&[
        "gen",
        "instance",
        "chain:2",
        "cyclic:4",
        "--phi",
        "twist:0,2,0,2",
    ]);
    assert_eq!(code, Some(1), "{stderr}");
    assert!(stderr.contains("not an automorphism"), "{stderr}");
}

#[test]
fn roundtrip_reports_sizes() {
    let (code, stdout, _) = run(&[
        "roundtrip",
        golden("instance_boolean2_sym3_twist.txt").to_str().unwrap(),
        "--format",
        "kv",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("roundtrip=pass"), "{stdout}");
    assert!(stdout.contains("carrier_size=24"), "{stdout}");
    assert!(stdout.contains("lattice_size=4"), "{stdout}");
}

#[test]
fn usage_error_exits_2() {
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, Some(2));
}
