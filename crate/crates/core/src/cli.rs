//! Command-line front end: `gen`, `build`, `check`, `analyze`,
//! `roundtrip`.
//!
//! Exit codes are stable and documented:
//!
//! * 0 — success / all checks pass
//! * 1 — a well-formed structure violates its laws (check failure,
//!   rejected family, round-trip mismatch)
//! * 2 — command-line usage error (from the argument parser)
//! * 3 — file parse error
//! * 4 — I/O error
//!
//! Reports are deterministic; `--format kv` emits sorted `key=value`
//! lines for machine consumption. Elements are named by the
//! user-supplied names from the input file; witnesses inside defect
//! messages use element indices, with a `names` legend line mapping
//! indices back to names.

use crate::analyze::{full_analysis_with_flavor, AnalysisReport, Finding};
use crate::fileformat::{parse, serialize, NamedSemiring, Structure};
use crate::generators::{
    self, divisors, make_group, make_lattice, GroupKind, InstanceSpec, LatticeKind, PhiRecipe,
};
use crate::group::check_group;
use crate::group_semiring::AdditionFlavor;
use crate::lattice::check_distributive_lattice;
use crate::sdl::{build_strong_sdl, validate_iso_family, BuildOptions, SemiringTable};
use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE_ERROR: u8 = 3;
pub const EXIT_IO_ERROR: u8 = 4;

#[derive(Parser)]
#[command(
    name = "latring",
    version,
    about = "Construct and analyze finite semirings built as distributive lattices of group semirings"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate structure files from the built-in factories
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
    /// Build a semiring from an instance-spec file
    Build {
        /// instance-spec file
        file: PathBuf,
        /// Write the semiring file here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the addition flavor of the spec
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        /// Skip re-verifying the constructed tables (benchmarking only)
        #[arg(long)]
        no_self_check: bool,
    },
    /// Check the laws appropriate to a structure file
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full decomposition pipeline on a semiring file
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Addition flavor assumed by the band and factorization checks
        #[arg(long, value_enum, default_value_t = FlavorArg::Left)]
        flavor: FlavorArg,
    },
    /// Build from an instance-spec, analyze the result, and compare the
    /// recovered connecting maps with the construction input
    Roundtrip {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GenWhat {
    /// A group file: cyclic:<n>, klein4 or sym3
    Group {
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A lattice file: chain:<n>, boolean:<k> or divisor:<n>
    Lattice {
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// An instance-spec file combining a lattice, a group and a recipe
    Instance {
        /// chain:<n>, boolean:<k> or divisor:<n>
        lattice: String,
        /// cyclic:<n>, klein4 or sym3
        group: String,
        /// identity or twist:<i0,i1,…> (an automorphism in one-line form)
        #[arg(long, default_value = "identity")]
        phi: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Left)]
        flavor: FlavorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The fixed 3-element semiring that is a (non-strong) distributive
    /// lattice of group semirings with components of different orders
    Counterexample {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Left,
    Right,
}

impl From<FlavorArg> for AdditionFlavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Left => AdditionFlavor::LeftZero,
            FlavorArg::Right => AdditionFlavor::RightZero,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_IO_ERROR,
            message: format!("i/o error: {e}"),
        }
    }

    fn parse(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_PARSE_ERROR,
            message: format!("parse error: {e}"),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(f) => {
            eprintln!("latring: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { what } => gen(what),
        Command::Build {
            file,
            out,
            flavor,
            no_self_check,
        } => build(&file, out.as_deref(), flavor, no_self_check),
        Command::Check { file, format } => check(&file, format),
        Command::Analyze {
            file,
            format,
            flavor,
        } => analyze(&file, format, flavor.into()),
        Command::Roundtrip { file, format } => roundtrip(&file, format),
    }
}

fn read_structure(path: &Path) -> Result<Structure, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => {
            write_stdout(content);
            Ok(())
        }
    }
}

fn split_kind(spec: &str) -> (&str, Option<&str>) {
    match spec.split_once(':') {
        Some((kind, param)) => (kind, Some(param)),
        None => (spec, None),
    }
}

fn parse_lattice_kind(spec: &str) -> Result<LatticeKind, Failure> {
    let bad = || {
        Failure::parse(format!(
            "unknown lattice kind `{spec}`; expected chain:<n>, boolean:<k> or divisor:<n>"
        ))
    };
    let (kind, param) = split_kind(spec);
    let number = |p: Option<&str>| p.and_then(|v| v.parse::<usize>().ok()).ok_or_else(bad);
    match kind {
        "chain" => Ok(LatticeKind::Chain(number(param)?)),
        "boolean" => Ok(LatticeKind::Boolean(number(param)?)),
        "divisor" => Ok(LatticeKind::Divisor(number(param)? as u64)),
        _ => Err(bad()),
    }
}

fn parse_group_kind(spec: &str) -> Result<GroupKind, Failure> {
    let bad = || {
        Failure::parse(format!(
            "unknown group kind `{spec}`; expected cyclic:<n>, klein4 or sym3"
        ))
    };
    let (kind, param) = split_kind(spec);
    match (kind, param) {
        ("cyclic", Some(n)) => n.parse::<usize>().map(GroupKind::Cyclic).map_err(|_| bad()),
        ("klein4", None) => Ok(GroupKind::Klein4),
        ("sym3", None) => Ok(GroupKind::Sym3),
        _ => Err(bad()),
    }
}

fn parse_phi_recipe(spec: &str) -> Result<PhiRecipe, Failure> {
    let (kind, param) = split_kind(spec);
    match (kind, param) {
        ("identity", None) => Ok(PhiRecipe::Identity),
        ("twist", Some(perm)) => {
            let images: Result<Vec<usize>, _> =
                perm.split(',').map(|v| v.trim().parse::<usize>()).collect();
            images.map(PhiRecipe::Twist).map_err(|_| {
                Failure::parse(format!(
                    "bad twist permutation `{perm}`; expected comma-separated indices"
                ))
            })
        }
        _ => Err(Failure::parse(format!(
            "unknown phi recipe `{spec}`; expected identity or twist:<i0,i1,…>"
        ))),
    }
}

/// Presentation names for the elements of a generated lattice.
fn lattice_names(kind: &LatticeKind) -> Vec<String> {
    match kind {
        LatticeKind::Chain(n) => (0..*n).map(|i| i.to_string()).collect(),
        LatticeKind::Boolean(k) => (0..1usize << k).map(|m| m.to_string()).collect(),
        LatticeKind::Divisor(n) => divisors(*n).iter().map(|d| d.to_string()).collect(),
    }
}

/// Presentation names for the elements of a generated group.
fn group_names(kind: &GroupKind) -> Vec<String> {
    match kind {
        GroupKind::Cyclic(n) => (0..*n).map(|i| i.to_string()).collect(),
        GroupKind::Klein4 => ["e", "a", "b", "c"].map(String::from).to_vec(),
        GroupKind::Sym3 => generators::SYM3_PERMUTATIONS
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
            .collect(),
    }
}

/// Names of a built carrier: `<component name>:<group element name>`.
fn built_names(spec_lattice: &LatticeKind, spec_group: &GroupKind, size: usize) -> Vec<String> {
    let comps = lattice_names(spec_lattice);
    let members = group_names(spec_group);
    let mut names = Vec::with_capacity(size);
    for c in &comps {
        for m in &members {
            names.push(format!("{c}:{m}"));
        }
    }
    debug_assert_eq!(names.len(), size);
    names
}

fn gen(what: GenWhat) -> Result<(), Failure> {
    match what {
        GenWhat::Group { kind, out } => {
            let gk = parse_group_kind(&kind)?;
            let group = make_group(&gk).map_err(|e| Failure::parse(e.to_string()))?;
            let structure = Structure::Group(crate::fileformat::NamedTable {
                names: group_names(&gk),
                op: group.op().clone(),
            });
            emit(out.as_deref(), &serialize(&structure))
        }
        GenWhat::Lattice { kind, out } => {
            let lk = parse_lattice_kind(&kind)?;
            let lattice = make_lattice(&lk).map_err(|e| Failure::parse(e.to_string()))?;
            let structure = Structure::Lattice(crate::fileformat::NamedLattice {
                names: lattice_names(&lk),
                join: lattice.join_table().clone(),
                meet: lattice.meet_table().clone(),
            });
            emit(out.as_deref(), &serialize(&structure))
        }
        GenWhat::Instance {
            lattice,
            group,
            phi,
            flavor,
            out,
        } => {
            let spec = InstanceSpec {
                lattice: parse_lattice_kind(&lattice)?,
                group: parse_group_kind(&group)?,
                phi: parse_phi_recipe(&phi)?,
                flavor: flavor.into(),
                expected_invalid: false,
            };
            // Fail fast if the recipe does not realize.
            generators::realize(&spec).map_err(|e| Failure::check(e.to_string()))?;
            emit(out.as_deref(), &serialize(&Structure::InstanceSpec(spec)))
        }
        GenWhat::Counterexample { out } => {
            let s = generators::non_strong_counterexample();
            let names = counterexample_names(&s);
            let structure = Structure::Semiring(NamedSemiring {
                names,
                add: s.add_table().clone(),
                mul: s.mul_table().clone(),
            });
            emit(out.as_deref(), &serialize(&structure))
        }
    }
}

fn counterexample_names(s: &SemiringTable) -> Vec<String> {
    match s.labels() {
        Some(labels) => labels
            .iter()
            .map(|l| format!("{}:{}", l.component, l.member))
            .collect(),
        None => (0..s.size()).map(|i| i.to_string()).collect(),
    }
}

fn build(
    path: &Path,
    out: Option<&Path>,
    flavor: Option<FlavorArg>,
    no_self_check: bool,
) -> Result<(), Failure> {
    let Structure::InstanceSpec(spec) = read_structure(path)? else {
        return Err(Failure::parse(format!(
            "{}: expected an instance-spec file",
            path.display()
        )));
    };
    let (fam, isos) = generators::realize(&spec).map_err(|e| Failure::check(e.to_string()))?;
    let options = BuildOptions {
        flavor: flavor.map(Into::into).unwrap_or(spec.flavor),
        self_check: !no_self_check,
    };
    let built =
        build_strong_sdl(&fam, &isos, options).map_err(|e| Failure::check(e.to_string()))?;
    let structure = Structure::Semiring(NamedSemiring {
        names: built_names(&spec.lattice, &spec.group, built.size()),
        add: built.add_table().clone(),
        mul: built.mul_table().clone(),
    });
    emit(out, &serialize(&structure))
}

/// Renders `index -> name` legends for witness decoding.
fn names_legend(names: &[String]) -> String {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| format!("{i}={n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Writes to stdout without panicking when the reader hangs up early
/// (`latring analyze … | head` must not abort on the broken pipe).
fn write_stdout(content: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let outcome = stdout
        .write_all(content.as_bytes())
        .and_then(|()| stdout.flush());
    if let Err(e) = outcome {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(i32::from(EXIT_OK));
        }
        eprintln!("latring: i/o error: {e}");
        std::process::exit(i32::from(EXIT_IO_ERROR));
    }
}

fn print_report(format: Format, pairs: &[(String, String)]) {
    let mut sorted: Vec<&(String, String)> = pairs.iter().collect();
    sorted.sort();
    let mut out = String::new();
    for (k, v) in sorted {
        match format {
            Format::Kv => writeln!(out, "{k}={v}").unwrap(),
            Format::Text => writeln!(out, "{k}: {v}").unwrap(),
        }
    }
    write_stdout(&out);
}

fn check(path: &Path, format: Format) -> Result<(), Failure> {
    let structure = read_structure(path)?;
    let mut pairs: Vec<(String, String)> = vec![("kind".into(), structure.kind_tag().into())];
    let verdict: Result<Vec<(String, String)>, String> = match &structure {
        Structure::Semigroup(t) => {
            pairs.push(("names".into(), names_legend(&t.names)));
            match t.op.associativity_counterexample() {
                None => Ok(vec![("associative".into(), "yes".into())]),
                Some([x, y, z]) => Err(format!("not associative at ({x}, {y}, {z})")),
            }
        }
        Structure::Group(t) => {
            pairs.push(("names".into(), names_legend(&t.names)));
            match check_group(&t.op) {
                Ok(g) => Ok(vec![
                    ("identity".into(), t.names[g.identity()].clone()),
                    ("order".into(), g.order().to_string()),
                ]),
                Err(defect) => Err(defect.to_string()),
            }
        }
        Structure::Lattice(l) => {
            pairs.push(("names".into(), names_legend(&l.names)));
            match check_distributive_lattice(&l.join, &l.meet) {
                Ok(lattice) => Ok(vec![
                    ("bottom".into(), l.names[lattice.bottom()].clone()),
                    ("top".into(), l.names[lattice.top()].clone()),
                    (
                        "order_pairs".into(),
                        lattice.order_pairs().len().to_string(),
                    ),
                ]),
                Err(defect) => Err(defect.to_string()),
            }
        }
        Structure::Semiring(s) => {
            pairs.push(("names".into(), names_legend(&s.names)));
            match crate::analyze::check_semiring(&s.add, &s.mul) {
                Ok(()) => Ok(vec![("semiring".into(), "yes".into())]),
                Err(v) => Err(v.to_string()),
            }
        }
        Structure::IsoFamily(f) => {
            pairs.push(("names".into(), names_legend(&f.names)));
            let non_bijective = f.maps.iter().find(|m| {
                let mut seen = vec![false; m.images.len()];
                m.images
                    .iter()
                    .any(|&v| v >= seen.len() || std::mem::replace(&mut seen[v], true))
            });
            match non_bijective {
                None => Ok(vec![("maps".into(), f.maps.len().to_string())]),
                Some(m) => Err(format!(
                    "map ({} -> {}) is not a bijection onto its source indices",
                    m.source, m.target
                )),
            }
        }
        Structure::InstanceSpec(spec) => {
            let (fam, isos) =
                generators::realize(spec).map_err(|e| Failure::check(e.to_string()))?;
            let report = validate_iso_family(&fam, &isos);
            if report.is_valid() {
                Ok(vec![
                    ("family".into(), "valid".into()),
                    ("lattice_size".into(), fam.lattice().size().to_string()),
                    ("carrier_size".into(), fam.total_size().to_string()),
                ])
            } else {
                Err(report.to_string())
            }
        }
    };
    match verdict {
        Ok(mut extra) => {
            pairs.push(("check".into(), "pass".into()));
            pairs.append(&mut extra);
            print_report(format, &pairs);
            Ok(())
        }
        Err(defect) => {
            pairs.push(("check".into(), "fail".into()));
            pairs.push(("defect".into(), defect.clone()));
            print_report(format, &pairs);
            Err(Failure::check(defect))
        }
    }
}

fn finding_value<T, W: std::fmt::Display>(f: &Finding<T, W>) -> String {
    match f {
        Finding::Ok(_) => "pass".into(),
        Finding::Failed(w) => format!("fail ({w})"),
        Finding::NotEvaluated => "not-evaluated".into(),
    }
}

/// Flattens an analysis report into deterministic key-value pairs.
pub fn report_pairs(report: &AnalysisReport, names: &[String]) -> Vec<(String, String)> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    pairs.push(("size".into(), names.len().to_string()));
    pairs.push(("flavor".into(), report.flavor.to_string()));
    pairs.push((
        "semiring".into(),
        match &report.semiring {
            Ok(()) => "pass".into(),
            Err(v) => format!("fail ({v})"),
        },
    ));
    pairs.push((
        "idempotents".into(),
        match &report.idempotents {
            Finding::Ok(e) => e
                .iter()
                .map(|&i| names[i].as_str())
                .collect::<Vec<_>>()
                .join(" "),
            Finding::Failed(_) => "fail".into(),
            Finding::NotEvaluated => "not-evaluated".into(),
        },
    ));
    if let Finding::Ok(e) = &report.idempotents {
        pairs.push(("idempotent_count".into(), e.len().to_string()));
    }
    pairs.push((
        "idempotent_lattice".into(),
        finding_value(&report.idempotent_lattice),
    ));
    pairs.push(("clifford".into(), finding_value(&report.clifford_mul)));
    let band_key = match report.flavor {
        AdditionFlavor::LeftZero => "left_normal_band",
        AdditionFlavor::RightZero => "right_normal_band",
    };
    pairs.push((band_key.into(), finding_value(&report.additive_band)));
    pairs.push(("components".into(), finding_value(&report.components)));
    if let Finding::Ok(comps) = &report.components {
        pairs.push(("component_count".into(), comps.count().to_string()));
        let orders: Vec<String> = comps
            .by_idempotent
            .values()
            .map(|m| m.len().to_string())
            .collect();
        pairs.push(("component_orders".into(), orders.join(" ")));
    }
    pairs.push((
        "component_closure".into(),
        finding_value(&report.component_closure),
    ));
    pairs.push(("strong_sdl".into(), finding_value(&report.strong)));
    pairs
}

fn analyze(path: &Path, format: Format, flavor: AdditionFlavor) -> Result<(), Failure> {
    let Structure::Semiring(s) = read_structure(path)? else {
        return Err(Failure::parse(format!(
            "{}: expected a semiring file",
            path.display()
        )));
    };
    let report = full_analysis_with_flavor(&s.add, &s.mul, flavor);
    let mut pairs = report_pairs(&report, &s.names);
    pairs.push(("names".into(), names_legend(&s.names)));
    print_report(format, &pairs);
    if report.semiring.is_ok() {
        Ok(())
    } else {
        Err(Failure::check("not a semiring".to_string()))
    }
}

fn roundtrip(path: &Path, format: Format) -> Result<(), Failure> {
    let Structure::InstanceSpec(spec) = read_structure(path)? else {
        return Err(Failure::parse(format!(
            "{}: expected an instance-spec file",
            path.display()
        )));
    };
    let (fam, isos) = generators::realize(&spec).map_err(|e| Failure::check(e.to_string()))?;
    let options = BuildOptions {
        flavor: spec.flavor,
        self_check: true,
    };
    let built =
        build_strong_sdl(&fam, &isos, options).map_err(|e| Failure::check(e.to_string()))?;
    let outcome = crate::roundtrip::verify_roundtrip(&fam, &isos, &built, spec.flavor);
    let mut pairs = vec![
        ("carrier_size".into(), built.size().to_string()),
        ("lattice_size".into(), fam.lattice().size().to_string()),
    ];
    match outcome {
        Ok(()) => {
            pairs.push(("roundtrip".into(), "pass".into()));
            print_report(format, &pairs);
            Ok(())
        }
        Err(reason) => {
            pairs.push(("roundtrip".into(), format!("fail ({reason})")));
            print_report(format, &pairs);
            Err(Failure::check(reason.to_string()))
        }
    }
}

/// Renders an analysis report as indented text (used by error paths that
/// want the whole picture in one string).
pub fn report_to_string(report: &AnalysisReport, names: &[String]) -> String {
    let mut out = String::new();
    for (k, v) in report_pairs(report, names) {
        writeln!(out, "{k}: {v}").unwrap();
    }
    out
}
