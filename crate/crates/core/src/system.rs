//! Sparse GF(2) linear systems and their on-disk formats.
//!
//! Text format: `#` lines are comments and may appear anywhere. Header
//! comments of the form `# key=value` carry `weight`, `family`, `columns` and
//! `rows`; only `weight` is required when reading. Every other non-empty line
//! is one row of ascending 1-based column ids, optionally terminated by `0`.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::index::{ColumnTable, MultIndex};
use crate::relations::{Family, Pair};

/// A GF(2) combination of columns, stored as its strictly increasing support.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Combination {
    ids: Vec<u32>,
}

impl Gf2Combination {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sorts the ids; rejects zero and repeated ids.
    pub fn from_ids(mut ids: Vec<u32>) -> Result<Self> {
        ids.sort_unstable();
        if ids.first() == Some(&0) {
            return Err(Error::Precondition("column id 0 is reserved".into()));
        }
        if let Some(p) = ids.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::Precondition(format!("column id {} repeated", p[0])));
        }
        Ok(Gf2Combination { ids })
    }

    pub(crate) fn from_sorted_unchecked(ids: Vec<u32>) -> Self {
        debug_assert!(ids.windows(2).all(|p| p[0] < p[1]));
        Gf2Combination { ids }
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn into_ids(self) -> Vec<u32> {
        self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: u32) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    /// Smallest column in the support.
    pub fn leading(&self) -> Option<u32> {
        self.ids.first().copied()
    }

    pub fn xor(&self, other: &Gf2Combination) -> Gf2Combination {
        let (a, b) = (&self.ids, &other.ids);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Gf2Combination { ids: out }
    }
}

impl std::fmt::Debug for Gf2Combination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(&self.ids).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub combination: Gf2Combination,
    /// The pair the relation came from, when known.
    pub pair: Option<Pair>,
}

impl Row {
    pub fn new(combination: Gf2Combination) -> Self {
        Row {
            combination,
            pair: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    columns: ColumnTable,
    family: Option<Family>,
    rows: Vec<Row>,
}

const COMPACT_MAGIC: &[u8; 4] = b"MZF2";
const COMPACT_VERSION: u8 = 1;

impl LinearSystem {
    pub fn new(columns: ColumnTable, family: Option<Family>, rows: Vec<Row>) -> Self {
        LinearSystem {
            columns,
            family,
            rows,
        }
    }

    /// A system over the weight-`k` columns from bare supports.
    pub fn from_combinations(k: u32, rows: Vec<Gf2Combination>) -> Result<Self> {
        let columns = ColumnTable::build(k)?;
        let n = columns.len() as u32;
        if let Some(bad) = rows.iter().flat_map(|r| r.ids()).find(|&&id| id > n) {
            return Err(Error::Precondition(format!(
                "column id {bad} exceeds {n} columns"
            )));
        }
        Ok(LinearSystem::new(
            columns,
            None,
            rows.into_iter().map(Row::new).collect(),
        ))
    }

    pub fn weight(&self) -> u32 {
        self.columns.weight()
    }

    pub fn columns(&self) -> &ColumnTable {
        &self.columns
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn combinations(&self) -> impl Iterator<Item = &Gf2Combination> + '_ {
        self.rows.iter().map(|r| &r.combination)
    }

    /// The sub-system made of the given row positions, in that order.
    pub fn select_rows(&self, positions: &[usize]) -> LinearSystem {
        LinearSystem {
            columns: self.columns.clone(),
            family: self.family,
            rows: positions.iter().map(|&p| self.rows[p].clone()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# weight={}", self.weight()).unwrap();
        if let Some(f) = self.family {
            writeln!(out, "# family={f}").unwrap();
        }
        writeln!(out, "# columns={}", self.num_columns()).unwrap();
        writeln!(out, "# rows={}", self.rows.len()).unwrap();
        for row in &self.rows {
            for id in row.combination.ids() {
                write!(out, "{id} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn write_text_file(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn parse_text<R: Read>(reader: R) -> Result<Self> {
        let mut weight = None;
        let mut family = None;
        let mut declared_rows = None;
        let mut declared_columns = None;
        let mut pending: Vec<(usize, Vec<u32>)> = Vec::new();

        for (pos, line) in BufReader::new(reader).lines().enumerate() {
            let line_no = pos + 1;
            let line = line?;
            let trimmed = line.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some((key, value)) = comment.trim().split_once('=') {
                    let value = value.trim();
                    let number = || {
                        value.parse::<u64>().map_err(|_| {
                            Error::parse(line_no, format!("bad {key} value `{value}`"))
                        })
                    };
                    match key.trim() {
                        "weight" => weight = Some(number()? as u32),
                        "rows" => declared_rows = Some(number()? as usize),
                        "columns" => declared_columns = Some(number()? as usize),
                        "family" => {
                            family = Some(
                                value
                                    .parse::<Family>()
                                    .map_err(|e| Error::parse(line_no, e.to_string()))?,
                            )
                        }
                        _ => {}
                    }
                }
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            let mut ids = Vec::new();
            let mut terminated = false;
            for token in trimmed.split_whitespace() {
                if terminated {
                    return Err(Error::parse(
                        line_no,
                        format!("token `{token}` after terminator 0"),
                    ));
                }
                let id: u32 = token
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("`{token}` is not a column id")))?;
                if id == 0 {
                    terminated = true;
                } else {
                    ids.push(id);
                }
            }
            pending.push((line_no, ids));
        }

        let weight = weight.ok_or_else(|| Error::parse(0, "missing `# weight=` header"))?;
        let columns = ColumnTable::build(weight).map_err(|e| Error::parse(0, e.to_string()))?;
        let n = columns.len() as u32;
        if let Some(c) = declared_columns {
            if c != columns.len() {
                return Err(Error::parse(
                    0,
                    format!("header declares {c} columns, weight {weight} has {n}"),
                ));
            }
        }
        let mut rows = Vec::with_capacity(pending.len());
        for (line_no, ids) in pending {
            if let Some(&bad) = ids.iter().find(|&&id| id > n) {
                return Err(Error::parse(
                    line_no,
                    format!("column id {bad} out of range 1..={n}"),
                ));
            }
            let comb =
                Gf2Combination::from_ids(ids).map_err(|e| Error::parse(line_no, e.to_string()))?;
            if !comb.is_empty() {
                rows.push(Row::new(comb));
            }
        }
        if let Some(r) = declared_rows {
            if r != rows.len() {
                return Err(Error::parse(
                    0,
                    format!("header declares {r} rows, found {}", rows.len()),
                ));
            }
        }
        Ok(LinearSystem::new(columns, family, rows))
    }

    pub fn parse_text_file(path: impl AsRef<Path>) -> Result<Self> {
        LinearSystem::parse_text(fs::File::open(path)?)
    }

    /// Compact binary layout: magic `MZF2`, version byte, weight as `u16`,
    /// row count as `u64` (little-endian), then per row a varint length and
    /// the delta-encoded varint ids.
    pub fn compact_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(COMPACT_MAGIC);
        out.push(COMPACT_VERSION);
        out.extend_from_slice(&(self.weight() as u16).to_le_bytes());
        out.extend_from_slice(&(self.rows.len() as u64).to_le_bytes());
        for row in &self.rows {
            let ids = row.combination.ids();
            put_varint(&mut out, ids.len() as u64);
            let mut prev = 0u32;
            for &id in ids {
                put_varint(&mut out, (id - prev) as u64);
                prev = id;
            }
        }
        out
    }

    pub fn compact_write<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&self.compact_bytes())?;
        Ok(())
    }

    pub fn compact_read<R: Read>(mut reader: R) -> Result<Self> {
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        LinearSystem::from_compact_bytes(&bytes)
    }

    pub fn from_compact_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = Cursor { bytes, pos: 0 };
        if cur.take(4)? != COMPACT_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = cur.take(1)?[0];
        if version != COMPACT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let weight = u16::from_le_bytes(cur.take(2)?.try_into().unwrap()) as u32;
        let count = u64::from_le_bytes(cur.take(8)?.try_into().unwrap());
        let columns = ColumnTable::build(weight).map_err(|e| Error::Format(e.to_string()))?;
        let n = columns.len() as u64;
        let mut rows = Vec::with_capacity(count.min(1 << 20) as usize);
        for _ in 0..count {
            let len = cur.varint()?;
            if len > n {
                return Err(Error::Format(format!(
                    "row length {len} exceeds {n} columns"
                )));
            }
            let mut ids = Vec::with_capacity(len as usize);
            let mut prev = 0u64;
            for _ in 0..len {
                let delta = cur.varint()?;
                if delta == 0 || prev + delta > n {
                    return Err(Error::Format("invalid column delta".into()));
                }
                prev += delta;
                ids.push(prev as u32);
            }
            rows.push(Row::new(Gf2Combination::from_sorted_unchecked(ids)));
        }
        if cur.pos != bytes.len() {
            return Err(Error::Format("trailing bytes".into()));
        }
        Ok(LinearSystem::new(columns, None, rows))
    }

    /// The provenance sidecar: one `K | L` line per row, `-` when unknown.
    pub fn pairs_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            match &row.pair {
                Some((k, l)) => writeln!(out, "{k} | {l}").unwrap(),
                None => out.push_str("-\n"),
            }
        }
        out
    }

    /// Attaches provenance read from a sidecar written by [`Self::pairs_text`].
    pub fn attach_pairs<R: Read>(&mut self, reader: R) -> Result<()> {
        let mut pairs = Vec::with_capacity(self.rows.len());
        for (pos, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "-" {
                pairs.push(None);
                continue;
            }
            let (k, l) = line
                .split_once('|')
                .ok_or_else(|| Error::parse(pos + 1, "expected `K | L`"))?;
            let parse = |s: &str| {
                s.parse::<MultIndex>()
                    .map_err(|e| Error::parse(pos + 1, e.to_string()))
            };
            pairs.push(Some((parse(k)?, parse(l)?)));
        }
        if pairs.len() != self.rows.len() {
            return Err(Error::parse(
                0,
                format!("{} pairs for {} rows", pairs.len(), self.rows.len()),
            ));
        }
        for (row, pair) in self.rows.iter_mut().zip(pairs) {
            row.pair = pair;
        }
        Ok(())
    }
}

impl PartialEq for LinearSystem {
    fn eq(&self, other: &Self) -> bool {
        self.weight() == other.weight() && self.family == other.family && self.rows == other.rows
    }
}

fn put_varint(out: &mut Vec<u8>, v: u64) {
    leb128::write::unsigned(out, v).expect("writing to a Vec cannot fail");
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(Error::Format("truncated input".into()));
        }
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn varint(&mut self) -> Result<u64> {
        let mut rest = &self.bytes[self.pos..];
        let before = rest.len();
        let v = leb128::read::unsigned(&mut rest).map_err(|e| match e {
            leb128::read::Error::IoError(_) => Error::Format("truncated input".into()),
            leb128::read::Error::Overflow => Error::Format("varint overflow".into()),
        })?;
        self.pos += before - rest.len();
        Ok(v)
    }
}
