//! Self-describing tensor containers: JSON text and a little-endian binary
//! variant with magic bytes `STNS`.

use serde::{Deserialize, Serialize};

use super::TensorMap;
use crate::error::{Result, SymError};
use crate::linalg::Matrix;
use crate::sector::{SectorDescriptor, C64};
use crate::spaces::{HomSpace, ProductSpace};
use crate::zoo::SectorKind;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"STNS";

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BlockRecord {
    pub coupled: String,
    pub rows: usize,
    pub cols: usize,
    /// Column-major, interleaved real and imaginary parts.
    pub data: Vec<f64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TensorRecord {
    pub format_version: u32,
    pub sector_kind: String,
    pub codomain: String,
    pub domain: String,
    pub blocks: Vec<BlockRecord>,
}

fn fmt_err(m: impl Into<String>) -> SymError {
    SymError::Format(m.into())
}

impl TensorMap {
    pub fn to_record(&self) -> TensorRecord {
        let kind = self.kind();
        TensorRecord {
            format_version: FORMAT_VERSION,
            sector_kind: kind.name(),
            codomain: self.codomain().to_string(),
            domain: self.domain().to_string(),
            blocks: self
                .blocks()
                .map(|(c, b)| BlockRecord {
                    coupled: kind.format_label(c),
                    rows: b.rows(),
                    cols: b.cols(),
                    data: b.data().iter().flat_map(|x| [x.re, x.im]).collect(),
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &TensorRecord) -> Result<TensorMap> {
        if rec.format_version != FORMAT_VERSION {
            return Err(fmt_err(format!("unsupported format version {}", rec.format_version)));
        }
        let kind: SectorKind = rec.sector_kind.parse()?;
        let space = HomSpace::new(ProductSpace::parse(&kind, &rec.codomain)?, ProductSpace::parse(&kind, &rec.domain)?)?;
        let mut blocks = Vec::with_capacity(rec.blocks.len());
        for b in &rec.blocks {
            if b.data.len() != 2 * b.rows * b.cols {
                return Err(fmt_err(format!("block {} has {} numbers for {}x{}", b.coupled, b.data.len(), b.rows, b.cols)));
            }
            let data = b.data.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
            blocks.push((kind.parse_label(&b.coupled)?, Matrix::from_col_major(b.rows, b.cols, data)));
        }
        TensorMap::from_blocks(space, blocks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("tensor record serializes")
    }

    pub fn from_json(s: &str) -> Result<TensorMap> {
        let rec: TensorRecord = serde_json::from_str(s).map_err(|e| fmt_err(e.to_string()))?;
        TensorMap::from_record(&rec)
    }

    /// `STNS`, version, then length-prefixed UTF-8 strings and raw `f64`
    /// data, all little-endian.
    pub fn to_binary(&self) -> Vec<u8> {
        let rec = self.to_record();
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&rec.format_version.to_le_bytes());
        for s in [&rec.sector_kind, &rec.codomain, &rec.domain] {
            put_str(&mut out, s);
        }
        out.extend_from_slice(&(rec.blocks.len() as u64).to_le_bytes());
        for b in &rec.blocks {
            put_str(&mut out, &b.coupled);
            out.extend_from_slice(&(b.rows as u64).to_le_bytes());
            out.extend_from_slice(&(b.cols as u64).to_le_bytes());
            for x in &b.data {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<TensorMap> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(fmt_err("missing STNS magic"));
        }
        let format_version = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
        let sector_kind = r.string()?;
        let codomain = r.string()?;
        let domain = r.string()?;
        let n = r.u64()? as usize;
        let mut blocks = Vec::new();
        for _ in 0..n {
            let coupled = r.string()?;
            let rows = r.u64()? as usize;
            let cols = r.u64()? as usize;
            let len = rows.checked_mul(cols).and_then(|x| x.checked_mul(2)).ok_or_else(|| fmt_err("block too large"))?;
            let raw = r.take(len.checked_mul(8).ok_or_else(|| fmt_err("block too large"))?)?;
            let data = raw.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
            blocks.push(BlockRecord { coupled, rows, cols, data });
        }
        if r.pos != bytes.len() {
            return Err(fmt_err("trailing bytes"));
        }
        TensorMap::from_record(&TensorRecord { format_version, sector_kind, codomain, domain, blocks })
    }
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    out.extend_from_slice(&(s.len() as u32).to_le_bytes());
    out.extend_from_slice(s.as_bytes());
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len()).ok_or_else(|| fmt_err("unexpected end of data"))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let n = u32::from_le_bytes(self.take(4)?.try_into().unwrap()) as usize;
        String::from_utf8(self.take(n)?.to_vec()).map_err(|_| fmt_err("invalid UTF-8"))
    }
}
