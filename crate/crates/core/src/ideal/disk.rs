use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::basis::BasisStats;
use super::{GradedBasis, IdealError, IdealSpec};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring::{enumerate_monomials, Monomial, Multidegree};

pub const FORMAT_VERSION: u32 = 1;

/// Serialized graded piece. Columns are the monomials of degree `d` in
/// increasing order, each written as its edge list; they are checked against
/// a fresh enumeration on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDump {
    pub format_version: u32,
    pub spec: IdealSpec,
    pub d: Multidegree,
    pub columns: Vec<Vec<[usize; 2]>>,
    pub rank: usize,
    pub stats: BasisStats,
    /// Rows of the reduced echelon matrix as `0`/`1` strings.
    pub rows: Vec<String>,
    /// Hex SHA-256 of the fields above, see [`BasisDump::digest`].
    pub checksum: String,
}

impl BasisDump {
    pub fn from_basis(b: &GradedBasis) -> Self {
        let mut dump = Self {
            format_version: FORMAT_VERSION,
            spec: b.spec,
            d: b.degree.clone(),
            columns: b.columns().iter().map(|m| m.edges().map(|e| [e.u(), e.v()]).collect()).collect(),
            rank: b.rank(),
            stats: b.stats,
            rows: b.matrix().rows().iter().map(BitVector::to_bitstring).collect(),
            checksum: String::new(),
        };
        dump.checksum = dump.digest();
        dump
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "{}|{}|{}|{}|{}|{}|{}|{}|",
            self.format_version,
            self.spec.n,
            self.spec.vertices,
            self.d,
            self.stats.columns,
            self.stats.monomial_columns,
            self.stats.spanning_rows,
            self.stats.rank
        ));
        for c in &self.columns {
            for [u, v] in c {
                h.update(format!("{u}-{v},"));
            }
            h.update(b";");
        }
        h.update(format!("|{}|", self.rank));
        for r in &self.rows {
            h.update(r.as_bytes());
            h.update(b"\n");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Checks version, checksum and shape, then rebuilds the piece.
    pub fn into_basis(self) -> Result<GradedBasis, IdealError> {
        let bad = |why: &str| IdealError::InvalidSpec(format!("corrupt basis dump: {why}"));
        if self.format_version != FORMAT_VERSION {
            return Err(bad("format version"));
        }
        if self.checksum != self.digest() {
            return Err(bad("checksum"));
        }
        let columns = enumerate_monomials(&self.d);
        let listed = self
            .columns
            .iter()
            .map(|c| Monomial::from_pairs(&c.iter().map(|&[u, v]| (u, v)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("column"))?;
        if listed != columns || self.rank != self.stats.rank || self.rows.len() != self.rank {
            return Err(bad("shape"));
        }
        let rows = self
            .rows
            .iter()
            .map(|s| BitVector::from_bitstring(s).filter(|v| v.len() == columns.len()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("row"))?;
        let matrix = BitMatrix::from_rref_parts(columns.len(), rows)?;
        Ok(GradedBasis::from_parts(self.spec, self.d, columns, matrix, self.stats))
    }
}

/// Directory of [`BasisDump`] files, one per `(n, N, d)`.
#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, spec: IdealSpec, d: &Multidegree) -> PathBuf {
        let degs: Vec<String> = d.as_slice().iter().map(u32::to_string).collect();
        self.dir.join(format!(
            "basis-v{FORMAT_VERSION}-n{}-N{}-d{}.json",
            spec.n,
            spec.vertices,
            degs.join("_")
        ))
    }

    /// A missing, unreadable or corrupt file yields `None`.
    pub fn load(&self, spec: IdealSpec, d: &Multidegree) -> Option<GradedBasis> {
        let text = fs::read_to_string(self.path_for(spec, d)).ok()?;
        let dump: BasisDump = serde_json::from_str(&text).ok()?;
        if dump.spec != spec || &dump.d != d {
            return None;
        }
        dump.into_basis().ok()
    }

    /// Writes through a temporary file so readers never see a partial dump.
    pub fn store(&self, b: &GradedBasis) -> std::io::Result<PathBuf> {
        let path = self.path_for(b.spec, &b.degree);
        let json = serde_json::to_string(&BasisDump::from_basis(b))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(json.as_bytes())?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}
