//! JSON-lines group dumps and matrix input parsing.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::matrix::Mat3;
use crate::modular::Modulus;
use crate::qubit::PadicMat3;

/// One dump line: `{"m": [[..], [..], [..]], "mod": p^k}` with canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpLine {
    pub m: [[u64; 3]; 3],
    #[serde(rename = "mod")]
    pub modulus: u64,
}

impl DumpLine {
    pub fn from_mat(l: &Mat3) -> Self {
        Self {
            m: l.rows(),
            modulus: l.modulus().value(),
        }
    }
}

pub fn write_dump<W: Write>(group: &FiniteMatrixGroup, mut w: W) -> std::io::Result<()> {
    for l in group.elements() {
        serde_json::to_writer(&mut w, &DumpLine::from_mat(l))?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads a dump back; blank lines are skipped and every line must share one modulus.
pub fn read_dump<R: BufRead>(r: R) -> Result<FiniteMatrixGroup> {
    let mut modulus: Option<Modulus> = None;
    let mut elements = Vec::new();
    for (no, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let d: DumpLine = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        let m = match modulus {
            Some(m) if m.value() == d.modulus => m,
            Some(m) => {
                return Err(Error::ModulusMismatch {
                    left: m.value(),
                    right: d.modulus,
                })
            }
            None => *modulus.insert(Modulus::from_prime_power(d.modulus)?),
        };
        elements.push(Mat3::from_rows(m, d.m.map(|row| row.map(|x| x as i64))));
    }
    let m = modulus.ok_or_else(|| Error::Parse("empty dump".into()))?;
    FiniteMatrixGroup::from_elements(m, elements)
}

/// Parses a matrix for the prime `p`: either a 3×3 integer array, read mod `p`,
/// or a 3×3 array of coherent sequences `[a₁, a₂, …]`.
pub fn parse_matrix_json(text: &str, p: u64) -> Result<PadicMat3> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = v
        .as_array()
        .filter(|r| r.len() == 3)
        .ok_or_else(|| Error::Parse("expected a 3×3 array".into()))?;
    let mut entries = Vec::with_capacity(9);
    for row in rows {
        let row = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| Error::Parse("expected rows of length 3".into()))?;
        for x in row {
            let seq = match x {
                Value::Number(n) => vec![n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("{n} is not an integer")))?],
                Value::Array(a) => a
                    .iter()
                    .map(|y| {
                        y.as_i64()
                            .ok_or_else(|| Error::Parse(format!("{y} is not an integer")))
                    })
                    .collect::<Result<_>>()?,
                other => return Err(Error::Parse(format!("unexpected entry {other}"))),
            };
            entries.push(seq);
        }
    }
    let depth = entries.iter().map(Vec::len).max().unwrap_or(0);
    if entries.iter().any(|e| e.len() == 1) && depth > 1 {
        // plain integers mixed with sequences: a plain integer x stands for the constant sequence
        for e in entries.iter_mut().filter(|e| e.len() == 1) {
            *e = vec![e[0]; depth];
        }
    }
    PadicMat3::new(p, entries)
}
