//! Text file formats and the dedup store.
//!
//! Point files:
//! ```text
//! points <d> <n>
//! <d whitespace-separated integers per line, n lines>
//! ```
//!
//! Chirotope files:
//! ```text
//! chirotope <r> <n>
//! <i1 ... ir s>   one line per sorted r-subset, s in {+,-,0}
//! ```
//!
//! The dedup store is a line-oriented append-only file of
//! `<id>\t<canonical string>` records grouped by exact string equality.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::chirotope::{validate_chirotope, ChirotopeTable};
use crate::predicates::{Orientation, PointSet};
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parse the point file grammar from a string.
pub fn parse_points_str(text: &str) -> Result<PointSet> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected 'points d n' header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "points" {
        return Err(parse_err(1, "malformed header, expected 'points d n'"));
    }
    let d: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(1, "dimension is not an integer"))?;
    let n: usize = fields[2]
        .parse()
        .map_err(|_| parse_err(1, "count is not an integer"))?;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if rows.len() == n {
            return Err(parse_err(lineno, format!("expected exactly {n} data lines")));
        }
        let mut row = Vec::with_capacity(d);
        for tok in line.split_whitespace() {
            let v: BigInt = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("non-integer token '{tok}'")))?;
            row.push(v);
        }
        if row.len() != d {
            return Err(parse_err(
                lineno,
                format!("expected {d} coordinates, got {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {n} data lines, got {}", rows.len()),
        ));
    }
    PointSet::new(d, rows)
}

pub fn parse_point_file(path: &Path) -> Result<PointSet> {
    parse_points_str(&std::fs::read_to_string(path)?)
}

/// Normalized point file text.
pub fn print_points(ps: &PointSet) -> String {
    let mut out = format!("points {} {}\n", ps.dim(), ps.len());
    for p in ps.points() {
        let row = p.iter().map(|c| c.to_string()).join(" ");
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Parse the chirotope file grammar from a string. Runs the cheap
/// validation checks (non-zero table, alternating lookups).
pub fn parse_chirotope_str(text: &str) -> Result<ChirotopeTable> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected 'chirotope r n' header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "chirotope" {
        return Err(parse_err(1, "malformed header, expected 'chirotope r n'"));
    }
    let r: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(1, "rank is not an integer"))?;
    let n: usize = fields[2]
        .parse()
        .map_err(|_| parse_err(1, "count is not an integer"))?;
    if r < 2 || n < r {
        return Err(parse_err(1, "need n >= r >= 2"));
    }
    let mut seen: HashMap<Vec<usize>, Orientation> = HashMap::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != r + 1 {
            return Err(parse_err(
                lineno,
                format!("expected {r} indices and a sign, got {} tokens", toks.len()),
            ));
        }
        let mut tuple = Vec::with_capacity(r);
        for t in &toks[..r] {
            let v: usize = t
                .parse()
                .map_err(|_| parse_err(lineno, format!("non-integer index '{t}'")))?;
            if v >= n {
                return Err(parse_err(lineno, format!("index {v} out of range for n={n}")));
            }
            tuple.push(v);
        }
        if !tuple.windows(2).all(|w| w[0] < w[1]) {
            return Err(parse_err(lineno, "indices must be strictly increasing"));
        }
        let sign = toks[r];
        let o = (sign.len() == 1)
            .then(|| Orientation::from_char(sign.chars().next().unwrap()))
            .flatten()
            .ok_or_else(|| parse_err(lineno, format!("sign must be +, - or 0, got '{sign}'")))?;
        if seen.insert(tuple.clone(), o).is_some() {
            return Err(parse_err(lineno, format!("duplicate tuple {tuple:?}")));
        }
    }
    let mut lex_signs = Vec::with_capacity(seen.len());
    for subset in (0..n).combinations(r) {
        match seen.get(&subset) {
            Some(&o) => lex_signs.push(o),
            None => {
                return Err(Error::Invalid(format!(
                    "missing tuple {subset:?}: file must cover every sorted {r}-subset"
                )))
            }
        }
    }
    let table = ChirotopeTable::from_signs_lex(r, n, &lex_signs)?;
    let report = validate_chirotope(&table, false);
    if !report.nonzero || !report.alternating_ok {
        return Err(Error::Invalid(
            "chirotope table fails basic validation".into(),
        ));
    }
    Ok(table)
}

pub fn parse_chirotope_file(path: &Path) -> Result<ChirotopeTable> {
    parse_chirotope_str(&std::fs::read_to_string(path)?)
}

/// Normalized chirotope file text, tuples in lexicographic order.
pub fn print_chirotope(t: &ChirotopeTable) -> String {
    let mut out = format!("chirotope {} {}\n", t.rank(), t.n());
    for subset in t.iter_sorted_subsets() {
        let idx = subset.iter().map(|v| v.to_string()).join(" ");
        let _ = writeln!(out, "{} {}", idx, t.sorted_entry(&subset).as_char());
    }
    out
}

/// A parsed input that is either realizable or abstract.
pub enum InputData {
    Points(PointSet),
    Table(ChirotopeTable),
}

/// Sniff the header keyword and parse accordingly.
pub fn parse_input_file(path: &Path) -> Result<InputData> {
    let text = std::fs::read_to_string(path)?;
    let first = text.lines().next().unwrap_or_default();
    if first.starts_with("points") {
        Ok(InputData::Points(parse_points_str(&text)?))
    } else if first.starts_with("chirotope") {
        Ok(InputData::Table(parse_chirotope_str(&text)?))
    } else {
        Err(parse_err(1, "unknown header: expected 'points' or 'chirotope'"))
    }
}

/// Append-only store of canonical strings keyed by input id.
#[derive(Debug, Default)]
pub struct DedupStore {
    entries: Vec<(String, String)>,
}

impl DedupStore {
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(DedupStore::default());
        }
        let mut entries = Vec::new();
        for (idx, line) in std::fs::read_to_string(path)?.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (id, canon) = line
                .split_once('\t')
                .ok_or_else(|| parse_err(idx + 1, "store line lacks a tab separator"))?;
            entries.push((id.to_string(), canon.to_string()));
        }
        Ok(DedupStore { entries })
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Record an id/canonical pair. Re-adding an identical record is a
    /// no-op; the same id with a different string is a corruption error.
    pub fn add(&mut self, id: &str, canonical: &str) -> Result<bool> {
        if let Some((_, existing)) = self.entries.iter().find(|(i, _)| i == id) {
            if existing == canonical {
                return Ok(false);
            }
            return Err(Error::Invalid(format!(
                "store already holds a different canonical string for id '{id}'"
            )));
        }
        self.entries.push((id.to_string(), canonical.to_string()));
        Ok(true)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for (id, canon) in &self.entries {
            let _ = writeln!(out, "{id}\t{canon}");
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    /// Groups of ids sharing a canonical string, ordered by first
    /// appearance; ids keep insertion order within each group.
    pub fn groups(&self) -> Vec<Vec<String>> {
        let mut order: Vec<&str> = Vec::new();
        let mut by_canon: HashMap<&str, Vec<String>> = HashMap::new();
        for (id, canon) in &self.entries {
            let slot = by_canon.entry(canon).or_insert_with(|| {
                order.push(canon);
                Vec::new()
            });
            slot.push(id.clone());
        }
        order
            .into_iter()
            .map(|c| by_canon.remove(c).unwrap())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_file_round_trip() {
        let text = "points 2 3\n0 0\n2 0\n0 2\n";
        let ps = parse_points_str(text).unwrap();
        assert_eq!(ps.dim(), 2);
        assert_eq!(ps.len(), 3);
        assert_eq!(print_points(&ps), text);
    }

    #[test]
    fn point_file_errors_carry_line_numbers() {
        let bad = "points 2 3\n0 0\n2 x\n0 2\n";
        match parse_points_str(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let dup = "points 2 3\n0 0\n0 0\n0 2\n";
        assert!(matches!(
            parse_points_str(dup),
            Err(Error::DuplicatePoints(0, 1))
        ));
        let short = "points 2 3\n0 0\n1 1\n";
        assert!(parse_points_str(short).is_err());
    }

    #[test]
    fn chirotope_file_round_trip() {
        let text = "chirotope 3 3\n0 1 2 +\n";
        let t = parse_chirotope_str(text).unwrap();
        assert_eq!(t.sorted_entry(&[0, 1, 2]), Orientation::Plus);
        assert_eq!(print_chirotope(&t), text);
    }

    #[test]
    fn chirotope_missing_tuple_is_named() {
        let text = "chirotope 3 4\n0 1 2 +\n0 1 3 +\n0 2 3 +\n";
        match parse_chirotope_str(text) {
            Err(Error::Invalid(msg)) => assert!(msg.contains("[1, 2, 3]"), "{msg}"),
            other => panic!("expected missing-tuple error, got {other:?}"),
        }
    }

    #[test]
    fn chirotope_duplicate_and_order_errors() {
        let dup = "chirotope 3 3\n0 1 2 +\n0 1 2 -\n";
        assert!(matches!(
            parse_chirotope_str(dup),
            Err(Error::Parse { line: 3, .. })
        ));
        let unordered = "chirotope 3 3\n1 0 2 +\n";
        assert!(matches!(
            parse_chirotope_str(unordered),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn dedup_store_round_trip_and_groups() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("store.tsv");
        let mut store = DedupStore::load(&path).unwrap();
        assert!(store.add("a", "OT2 n=3 m=1 x").unwrap());
        assert!(store.add("b", "OT2 n=3 m=1 y").unwrap());
        assert!(store.add("c", "OT2 n=3 m=1 x").unwrap());
        assert!(!store.add("a", "OT2 n=3 m=1 x").unwrap());
        assert!(store.add("a", "OT2 n=3 m=1 zzz").is_err());
        store.save(&path).unwrap();
        let reloaded = DedupStore::load(&path).unwrap();
        assert_eq!(reloaded.entries().len(), 3);
        let groups = reloaded.groups();
        assert_eq!(groups, vec![vec!["a", "c"], vec!["b"]]);
    }
}
