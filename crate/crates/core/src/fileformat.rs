//! The plain-text structure file format.
//!
//! Files are line oriented; `#` starts a comment and blank lines are
//! ignored. Table-bearing kinds follow the same layout:
//!
//! ```text
//! kind: lattice          # semigroup | group | lattice | semiring
//! size: 2
//! names: bot top
//! table: join            # op | add | mul | join | meet, kind-dependent
//! 0 1
//! 1 1
//! table: meet
//! 0 0
//! 0 1
//! ```
//!
//! `iso-family` files carry the lattice element names and one
//! `map: <source> <target>` header per connecting map, each followed by
//! a single line of image indices. `instance-spec` files are key-value
//! recipes (`lattice:`, `group:`, `phi:`, `flavor:`, `expect:`) for the
//! generator factories.
//!
//! Serialization is canonical, so `parse` then `serialize` reproduces a
//! canonical file byte for byte.

use crate::generators::{ExplicitMap, GroupKind, InstanceSpec, LatticeKind, PhiRecipe};
use crate::group_semiring::AdditionFlavor;
use crate::table::{OpTable, TableError};
use std::fmt::Write as _;
use thiserror::Error;

/// A parse failure, locating the offending line (1-based) and, where it
/// identifies a single token, the column (1-based byte offset).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}{}: {message}", .column.map(|c| format!(", column {c}")).unwrap_or_default())]
pub struct ParseError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column: None,
            message: message.into(),
        }
    }

    fn at_col(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column: Some(column),
            message: message.into(),
        }
    }
}

/// A table-bearing structure with one operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedTable {
    pub names: Vec<String>,
    pub op: OpTable,
}

/// Raw join/meet tables; lattice laws are checked separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedLattice {
    pub names: Vec<String>,
    pub join: OpTable,
    pub meet: OpTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSemiring {
    pub names: Vec<String>,
    pub add: OpTable,
    pub mul: OpTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoFamilyFile {
    /// Names of the lattice elements the maps are indexed by.
    pub names: Vec<String>,
    pub maps: Vec<ExplicitMap>,
}

/// Any structure a file can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Semigroup(NamedTable),
    Group(NamedTable),
    Lattice(NamedLattice),
    Semiring(NamedSemiring),
    IsoFamily(IsoFamilyFile),
    InstanceSpec(InstanceSpec),
}

impl Structure {
    pub fn kind_tag(&self) -> &'static str {
        match self {
            Structure::Semigroup(_) => "semigroup",
            Structure::Group(_) => "group",
            Structure::Lattice(_) => "lattice",
            Structure::Semiring(_) => "semiring",
            Structure::IsoFamily(_) => "iso-family",
            Structure::InstanceSpec(_) => "instance-spec",
        }
    }
}

/// A significant line: original line number plus its content with
/// comments stripped.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = raw.split('#').next().unwrap_or("");
            if stripped.trim().is_empty() {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    text: stripped,
                })
            }
        })
        .collect()
}

/// Splits a `key: value` line; returns (key, value-with-position).
fn key_value(line: &Line<'_>) -> Result<(String, String), ParseError> {
    let Some((key, value)) = line.text.split_once(':') else {
        return Err(ParseError::at(
            line.number,
            format!("expected `key: value`, got `{}`", line.text.trim()),
        ));
    };
    Ok((key.trim().to_string(), value.trim().to_string()))
}

fn parse_usize(line: usize, column: usize, token: &str) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| {
        ParseError::at_col(line, column, format!("expected an integer, got `{token}`"))
    })
}

/// Tokens of a line together with their 1-based byte columns.
fn tokens_with_columns(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let token_start = offset + start;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        out.push((token_start + 1, &tail[..len]));
        offset = token_start + len;
        rest = &tail[len..];
    }
    out
}

fn parse_index_row(line: &Line<'_>, size: usize) -> Result<Vec<usize>, ParseError> {
    let tokens = tokens_with_columns(line.text);
    if tokens.len() != size {
        return Err(ParseError::at(
            line.number,
            format!("expected {size} entries in this row, got {}", tokens.len()),
        ));
    }
    let mut row = Vec::with_capacity(size);
    for (column, token) in tokens {
        let value = parse_usize(line.number, column, token)?;
        if value >= size {
            return Err(ParseError::at_col(
                line.number,
                column,
                format!("index {value} is out of range for size {size}"),
            ));
        }
        row.push(value);
    }
    Ok(row)
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> Option<&Line<'a>> {
        let line = self.lines.get(self.pos);
        if line.is_some() {
            self.pos += 1;
        }
        line
    }

    fn expect(&mut self, what: &str) -> Result<&Line<'a>, ParseError> {
        let eof_line = self.lines.last().map_or(1, |l| l.number + 1);
        match self.lines.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.lines[self.pos - 1])
            }
            None => Err(ParseError::at(
                eof_line,
                format!("unexpected end of file, expected {what}"),
            )),
        }
    }
}

fn expect_key<'a>(cursor: &mut Cursor<'a>, key: &str) -> Result<(usize, String), ParseError> {
    let line = cursor.expect(&format!("`{key}:`"))?;
    let number = line.number;
    let (k, v) = key_value(line)?;
    if k != key {
        return Err(ParseError::at(
            number,
            format!("expected `{key}:`, found `{k}:`"),
        ));
    }
    Ok((number, v))
}

fn parse_table_block(
    cursor: &mut Cursor<'_>,
    expected_label: &str,
    size: usize,
) -> Result<OpTable, ParseError> {
    let (number, label) = expect_key(cursor, "table")?;
    if label != expected_label {
        return Err(ParseError::at(
            number,
            format!("expected `table: {expected_label}`, found `table: {label}`"),
        ));
    }
    let mut rows = Vec::with_capacity(size);
    for _ in 0..size {
        let line = cursor.expect("a table row")?;
        let line = Line {
            number: line.number,
            text: line.text,
        };
        rows.push(parse_index_row(&line, size)?);
    }
    OpTable::from_rows(&rows).map_err(|e: TableError| ParseError::at(number, e.to_string()))
}

/// Parses one structure from text.
pub fn parse(text: &str) -> Result<Structure, ParseError> {
    let mut cursor = Cursor {
        lines: significant_lines(text),
        pos: 0,
    };
    let (kind_line, kind) = expect_key(&mut cursor, "kind")?;
    match kind.as_str() {
        "instance-spec" => parse_instance_spec(&mut cursor),
        "semigroup" | "group" | "lattice" | "semiring" | "iso-family" => {
            let (size_line, size_text) = expect_key(&mut cursor, "size")?;
            let size = parse_usize(size_line, 1, &size_text)?;
            if size == 0 {
                return Err(ParseError::at(size_line, "size must be at least 1"));
            }
            let (names_line, names_text) = expect_key(&mut cursor, "names")?;
            let names: Vec<String> = names_text.split_whitespace().map(String::from).collect();
            if names.len() != size {
                return Err(ParseError::at(
                    names_line,
                    format!("expected {size} names, got {}", names.len()),
                ));
            }
            let structure = match kind.as_str() {
                "semigroup" => Structure::Semigroup(NamedTable {
                    names,
                    op: parse_table_block(&mut cursor, "op", size)?,
                }),
                "group" => Structure::Group(NamedTable {
                    names,
                    op: parse_table_block(&mut cursor, "op", size)?,
                }),
                "lattice" => {
                    let join = parse_table_block(&mut cursor, "join", size)?;
                    let meet = parse_table_block(&mut cursor, "meet", size)?;
                    Structure::Lattice(NamedLattice { names, join, meet })
                }
                "semiring" => {
                    let add = parse_table_block(&mut cursor, "add", size)?;
                    let mul = parse_table_block(&mut cursor, "mul", size)?;
                    Structure::Semiring(NamedSemiring { names, add, mul })
                }
                "iso-family" => Structure::IsoFamily(parse_iso_family(&mut cursor, size, names)?),
                _ => unreachable!(),
            };
            if let Some(extra) = cursor.next() {
                return Err(ParseError::at(
                    extra.number,
                    format!("unexpected content after structure: `{}`", extra.text.trim()),
                ));
            }
            Ok(structure)
        }
        other => Err(ParseError::at(
            kind_line,
            format!(
                "unknown kind `{other}`; expected semigroup, group, lattice, semiring, iso-family or instance-spec"
            ),
        )),
    }
}

fn parse_iso_family(
    cursor: &mut Cursor<'_>,
    size: usize,
    names: Vec<String>,
) -> Result<IsoFamilyFile, ParseError> {
    let mut maps = Vec::new();
    while cursor.pos < cursor.lines.len() {
        let (number, value) = expect_key(cursor, "map")?;
        let tokens = tokens_with_columns(&value);
        if tokens.len() != 2 {
            return Err(ParseError::at(
                number,
                format!("expected `map: <source> <target>`, got `{value}`"),
            ));
        }
        let source = parse_usize(number, tokens[0].0, tokens[0].1)?;
        let target = parse_usize(number, tokens[1].0, tokens[1].1)?;
        for (index, name) in [(source, "source"), (target, "target")] {
            if index >= size {
                return Err(ParseError::at(
                    number,
                    format!("map {name} {index} is out of range for {size} lattice elements"),
                ));
            }
        }
        let images_line = cursor.expect("a line of image indices")?;
        let mut images = Vec::new();
        for (column, token) in tokens_with_columns(images_line.text) {
            images.push(parse_usize(images_line.number, column, token)?);
        }
        maps.push(ExplicitMap {
            source,
            target,
            images,
        });
    }
    Ok(IsoFamilyFile { names, maps })
}

fn parse_instance_spec(cursor: &mut Cursor<'_>) -> Result<Structure, ParseError> {
    let mut lattice = None;
    let mut group = None;
    let mut phi = PhiRecipe::Identity;
    let mut flavor = AdditionFlavor::LeftZero;
    let mut expected_invalid = false;
    let mut explicit_maps: Option<Vec<ExplicitMap>> = None;

    while cursor.pos < cursor.lines.len() {
        let line_number = cursor.lines[cursor.pos].number;
        let (key, value) = key_value(&cursor.lines[cursor.pos])?;
        cursor.pos += 1;
        match key.as_str() {
            "lattice" => {
                let tokens: Vec<&str> = value.split_whitespace().collect();
                lattice = Some(match tokens.as_slice() {
                    ["chain", n] => LatticeKind::Chain(parse_usize(line_number, 1, n)?),
                    ["boolean", k] => LatticeKind::Boolean(parse_usize(line_number, 1, k)?),
                    ["divisor", n] => {
                        LatticeKind::Divisor(parse_usize(line_number, 1, n)? as u64)
                    }
                    _ => {
                        return Err(ParseError::at(
                            line_number,
                            format!("unknown lattice `{value}`; expected `chain <n>`, `boolean <k>` or `divisor <n>`"),
                        ))
                    }
                });
            }
            "group" => {
                let tokens: Vec<&str> = value.split_whitespace().collect();
                group = Some(match tokens.as_slice() {
                    ["cyclic", n] => GroupKind::Cyclic(parse_usize(line_number, 1, n)?),
                    ["klein4"] => GroupKind::Klein4,
                    ["sym3"] => GroupKind::Sym3,
                    _ => {
                        return Err(ParseError::at(
                            line_number,
                            format!(
                            "unknown group `{value}`; expected `cyclic <n>`, `klein4` or `sym3`"
                        ),
                        ))
                    }
                });
            }
            "phi" => {
                let tokens: Vec<&str> = value.split_whitespace().collect();
                phi = match tokens.as_slice() {
                    ["identity"] => PhiRecipe::Identity,
                    ["explicit"] => {
                        explicit_maps = Some(Vec::new());
                        PhiRecipe::Explicit(Vec::new())
                    }
                    ["twist", rest @ ..] if !rest.is_empty() => {
                        let mut images = Vec::new();
                        for token in rest {
                            images.push(parse_usize(line_number, 1, token)?);
                        }
                        PhiRecipe::Twist(images)
                    }
                    _ => {
                        return Err(ParseError::at(
                            line_number,
                            format!("unknown phi recipe `{value}`; expected `identity`, `twist <perm…>` or `explicit`"),
                        ))
                    }
                };
            }
            "map" => {
                let Some(maps) = explicit_maps.as_mut() else {
                    return Err(ParseError::at(
                        line_number,
                        "`map:` blocks are only allowed after `phi: explicit`",
                    ));
                };
                let tokens = tokens_with_columns(&value);
                if tokens.len() != 2 {
                    return Err(ParseError::at(
                        line_number,
                        format!("expected `map: <source> <target>`, got `{value}`"),
                    ));
                }
                let source = parse_usize(line_number, tokens[0].0, tokens[0].1)?;
                let target = parse_usize(line_number, tokens[1].0, tokens[1].1)?;
                let images_line = cursor.expect("a line of image indices")?;
                let mut images = Vec::new();
                for (column, token) in tokens_with_columns(images_line.text) {
                    images.push(parse_usize(images_line.number, column, token)?);
                }
                maps.push(ExplicitMap {
                    source,
                    target,
                    images,
                });
            }
            "flavor" => {
                flavor = match value.as_str() {
                    "left" => AdditionFlavor::LeftZero,
                    "right" => AdditionFlavor::RightZero,
                    _ => {
                        return Err(ParseError::at(
                            line_number,
                            format!("unknown flavor `{value}`; expected `left` or `right`"),
                        ))
                    }
                };
            }
            "expect" => {
                expected_invalid = match value.as_str() {
                    "valid" => false,
                    "invalid" => true,
                    _ => {
                        return Err(ParseError::at(
                            line_number,
                            format!("unknown expectation `{value}`; expected `valid` or `invalid`"),
                        ))
                    }
                };
            }
            other => {
                return Err(ParseError::at(
                    line_number,
                    format!("unknown instance-spec key `{other}`"),
                ))
            }
        }
    }
    if let Some(maps) = explicit_maps {
        phi = PhiRecipe::Explicit(maps);
    }
    let eof = 1 + cursor.lines.last().map_or(0, |l| l.number);
    let lattice =
        lattice.ok_or_else(|| ParseError::at(eof, "instance-spec is missing `lattice:`"))?;
    let group = group.ok_or_else(|| ParseError::at(eof, "instance-spec is missing `group:`"))?;
    Ok(Structure::InstanceSpec(InstanceSpec {
        lattice,
        group,
        phi,
        flavor,
        expected_invalid,
    }))
}

fn write_table(out: &mut String, label: &str, table: &OpTable) {
    writeln!(out, "table: {label}").unwrap();
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
}

fn write_header(out: &mut String, kind: &str, names: &[String]) {
    writeln!(out, "kind: {kind}").unwrap();
    writeln!(out, "size: {}", names.len()).unwrap();
    writeln!(out, "names: {}", names.join(" ")).unwrap();
}

/// Canonical serialization; the inverse of [`parse`] on canonical files.
pub fn serialize(structure: &Structure) -> String {
    let mut out = String::new();
    match structure {
        Structure::Semigroup(t) => {
            write_header(&mut out, "semigroup", &t.names);
            write_table(&mut out, "op", &t.op);
        }
        Structure::Group(t) => {
            write_header(&mut out, "group", &t.names);
            write_table(&mut out, "op", &t.op);
        }
        Structure::Lattice(l) => {
            write_header(&mut out, "lattice", &l.names);
            write_table(&mut out, "join", &l.join);
            write_table(&mut out, "meet", &l.meet);
        }
        Structure::Semiring(s) => {
            write_header(&mut out, "semiring", &s.names);
            write_table(&mut out, "add", &s.add);
            write_table(&mut out, "mul", &s.mul);
        }
        Structure::IsoFamily(f) => {
            write_header(&mut out, "iso-family", &f.names);
            for map in &f.maps {
                writeln!(out, "map: {} {}", map.source, map.target).unwrap();
                let cells: Vec<String> = map.images.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
        }
        Structure::InstanceSpec(spec) => {
            writeln!(out, "kind: instance-spec").unwrap();
            match &spec.lattice {
                LatticeKind::Chain(n) => writeln!(out, "lattice: chain {n}").unwrap(),
                LatticeKind::Boolean(k) => writeln!(out, "lattice: boolean {k}").unwrap(),
                LatticeKind::Divisor(n) => writeln!(out, "lattice: divisor {n}").unwrap(),
            }
            match &spec.group {
                GroupKind::Cyclic(n) => writeln!(out, "group: cyclic {n}").unwrap(),
                GroupKind::Klein4 => writeln!(out, "group: klein4").unwrap(),
                GroupKind::Sym3 => writeln!(out, "group: sym3").unwrap(),
            }
            match &spec.phi {
                PhiRecipe::Identity => writeln!(out, "phi: identity").unwrap(),
                PhiRecipe::Twist(images) => {
                    let cells: Vec<String> = images.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "phi: twist {}", cells.join(" ")).unwrap();
                }
                PhiRecipe::Explicit(maps) => {
                    writeln!(out, "phi: explicit").unwrap();
                    for map in maps {
                        writeln!(out, "map: {} {}", map.source, map.target).unwrap();
                        let cells: Vec<String> = map.images.iter().map(|v| v.to_string()).collect();
                        writeln!(out, "{}", cells.join(" ")).unwrap();
                    }
                }
            }
            writeln!(out, "flavor: {}", spec.flavor).unwrap();
            if spec.expected_invalid {
                writeln!(out, "expect: invalid").unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::check_group;
    use proptest::prelude::*;

    #[test]
    fn parses_a_group_file_and_checks_it() {
        let text = "\
# the two-element group
kind: group
size: 2
names: 0 1
table: op
0 1
1 0
";
        let Structure::Group(g) = parse(text).unwrap() else {
            panic!("expected a group structure");
        };
        assert_eq!(g.names, vec!["0", "1"]);
        let group = check_group(&g.op).unwrap();
        assert_eq!(group.identity(), 0);
    }

    #[test]
    fn wrong_row_length_names_the_line() {
        let text = "kind: semigroup\nsize: 2\nnames: a b\ntable: op\n0 1\n1\n";
        let err = parse(text).unwrap_err();
        assert_eq!(err.line, 6);
        assert!(err.message.contains("expected 2 entries"));
    }

    #[test]
    fn out_of_range_index_names_line_and_column() {
        let text = "kind: semigroup\nsize: 2\nnames: a b\ntable: op\n0 1\n1 5\n";
        let err = parse(text).unwrap_err();
        assert_eq!((err.line, err.column), (6, Some(3)));
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let err = parse("kind: widget\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("unknown kind"));
    }

    #[test]
    fn round_trips_a_lattice_file() {
        let text = "\
kind: lattice
size: 2
names: bot top
table: join
0 1
1 1
table: meet
0 0
0 1
";
        let parsed = parse(text).unwrap();
        assert_eq!(serialize(&parsed), text);
    }

    #[test]
    fn round_trips_an_instance_spec() {
        let text = "\
kind: instance-spec
lattice: chain 3
group: cyclic 3
phi: twist 0 2 1
flavor: left
";
        let parsed = parse(text).unwrap();
        assert_eq!(serialize(&parsed), text);
        let Structure::InstanceSpec(spec) = parsed else {
            panic!("expected an instance-spec");
        };
        assert_eq!(spec.phi, PhiRecipe::Twist(vec![0, 2, 1]));
    }

    #[test]
    fn round_trips_an_explicit_instance_spec() {
        let text = "\
kind: instance-spec
lattice: chain 2
group: cyclic 2
phi: explicit
map: 0 0
0 1
map: 1 1
0 1
map: 1 0
0 1
flavor: left
expect: invalid
";
        let parsed = parse(text).unwrap();
        assert_eq!(serialize(&parsed), text);
    }

    #[test]
    fn round_trips_an_iso_family() {
        let text = "\
kind: iso-family
size: 2
names: 0 1
map: 0 0
0 1 2
map: 1 1
0 1 2
map: 1 0
0 2 1
";
        let parsed = parse(text).unwrap();
        assert_eq!(serialize(&parsed), text);
    }

    #[test]
    fn missing_required_spec_keys_are_reported() {
        let err = parse("kind: instance-spec\ngroup: sym3\n").unwrap_err();
        assert!(err.message.contains("missing `lattice:`"));
    }

    fn arb_names(n: usize) -> impl Strategy<Value = Vec<String>> {
        proptest::collection::vec("[a-z][a-z0-9]{0,3}", n..=n)
    }

    proptest! {
        #[test]
        fn semiring_files_round_trip(n in 1usize..6, seed in proptest::collection::vec(0usize..36, 72)) {
            let add = OpTable::from_fn(n, |x, y| seed[x * n + y] % n).unwrap();
            let mul = OpTable::from_fn(n, |x, y| seed[36 + x * n + y] % n).unwrap();
            let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let s = Structure::Semiring(NamedSemiring { names, add, mul });
            prop_assert_eq!(parse(&serialize(&s)).unwrap(), s);
        }

        #[test]
        fn semigroup_files_round_trip_with_arbitrary_names(n in 1usize..5, names in (1usize..5).prop_flat_map(arb_names), seed in proptest::collection::vec(0usize..25, 25)) {
            let n = n.min(names.len());
            let names = names[..n].to_vec();
            let op = OpTable::from_fn(n, |x, y| seed[x * 5 + y] % n).unwrap();
            let s = Structure::Semigroup(NamedTable { names, op });
            prop_assert_eq!(parse(&serialize(&s)).unwrap(), s);
        }
    }
}
