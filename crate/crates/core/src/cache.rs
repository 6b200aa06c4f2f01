//! On-disk persistence of multiplicity tables.
//!
//! ```text
//! BRANCHKIT-MULTS v1 <algebra> <l0,...,lr> <N>
//! <n0> <n1> ... <nr> <multiplicity>
//! ```
//!
//! Entries are written in `(depth, coordinates)` order, so a table always
//! serializes to the same bytes.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::cartan::{format_labels, AffineAlgebra, AlgebraId, RootVec};
use crate::characters::MultTable;
use crate::error::{Error, Result};

const MAGIC: &str = "BRANCHKIT-MULTS";
const VERSION: &str = "v1";
const EXT: &str = "mults";

pub fn encode(table: &MultTable) -> String {
    let mut out = format!(
        "{MAGIC} {VERSION} {} {} {}\n",
        table.algebra(),
        format_labels(table.highest()),
        table.trunc()
    );
    for (beta, m) in table.sorted_entries() {
        for c in &beta.0 {
            out.push_str(&c.to_string());
            out.push(' ');
        }
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

/// Header fields of a cache file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheHeader {
    pub algebra: AlgebraId,
    pub highest: Vec<i64>,
    pub trunc: i64,
}

fn parse_header(line: &str) -> Result<CacheHeader> {
    let bad = |what: &str| Error::Cache(format!("{what} in header {line:?}"));
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 5 || parts[0] != MAGIC {
        return Err(bad("not a multiplicity table"));
    }
    if parts[1] != VERSION {
        return Err(Error::Cache(format!("unsupported cache version {}", parts[1])));
    }
    let algebra: AlgebraId = parts[2].parse().map_err(|_| bad("bad algebra"))?;
    let highest = parts[3]
        .split(',')
        .map(|s| s.parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| bad("bad labels"))?;
    let trunc = parts[4].parse().map_err(|_| bad("bad truncation"))?;
    Ok(CacheHeader { algebra, highest, trunc })
}

pub fn decode(alg: &AffineAlgebra, text: &str) -> Result<MultTable> {
    let mut lines = text.lines();
    let header = parse_header(lines.next().ok_or_else(|| Error::Cache("empty file".into()))?)?;
    if header.algebra != alg.id() {
        return Err(Error::Cache(format!(
            "table is for {}, not {}",
            header.algebra,
            alg.id()
        )));
    }
    if header.highest.len() != alg.n_nodes() {
        return Err(Error::Cache("label count does not match the algebra".into()));
    }
    let width = alg.n_nodes() + 1;
    let mut entries = HashMap::new();
    for (no, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != width {
            return Err(Error::Cache(format!("line {}: expected {width} fields", no + 2)));
        }
        let coords = fields[..width - 1]
            .iter()
            .map(|s| s.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Cache(format!("line {}: {e}", no + 2)))?;
        let m: BigInt = fields[width - 1]
            .parse()
            .map_err(|e| Error::Cache(format!("line {}: {e}", no + 2)))?;
        entries.insert(RootVec(coords), m);
    }
    Ok(MultTable::from_entries(alg, header.highest, header.trunc, entries))
}

/// A directory of `.mults` files, one per `(algebra, highest weight)`; the
/// file for a weight holds its deepest table computed so far.
#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub path: PathBuf,
    pub header: CacheHeader,
    pub entries: usize,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, alg: AlgebraId, highest: &[i64]) -> PathBuf {
        let labels: Vec<String> = highest.iter().map(|l| l.to_string()).collect();
        self.dir.join(format!("{}_{}.{EXT}", alg.to_string().replace('~', "-"), labels.join("_")))
    }

    /// The stored table for `highest`, if one exists with truncation at least `trunc`.
    pub fn load(&self, alg: &AffineAlgebra, highest: &[i64], trunc: i64) -> Result<Option<MultTable>> {
        let path = self.path_for(alg.id(), highest);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let table = decode(alg, &text)?;
        if table.highest() != highest {
            return Err(Error::Cache(format!("{}: header names another weight", path.display())));
        }
        Ok((table.trunc() >= trunc).then_some(table))
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// partial table.
    pub fn store(&self, table: &MultTable) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let path = self.path_for(table.algebra(), table.highest());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(encode(table).as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(&path).map(drop).map_err(|e| io(e.error))
    }

    pub fn list(&self) -> Result<Vec<CacheEntry>> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", self.dir.display()))),
        };
        let mut out = Vec::new();
        for ent in rd {
            let path = ent.map_err(|e| Error::Cache(e.to_string()))?.path();
            if path.extension().and_then(|s| s.to_str()) != Some(EXT) {
                continue;
            }
            let text = fs::read_to_string(&path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
            let header = parse_header(text.lines().next().unwrap_or(""))?;
            let entries = text.lines().count().saturating_sub(1);
            out.push(CacheEntry { path, header, entries });
        }
        out.sort_by(|a, b| a.path.cmp(&b.path));
        Ok(out)
    }

    /// Removes every table file; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let entries = self.list()?;
        for e in &entries {
            fs::remove_file(&e.path).map_err(|err| Error::Cache(format!("{}: {err}", e.path.display())))?;
        }
        Ok(entries.len())
    }
}
