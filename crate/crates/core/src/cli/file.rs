//! Line-oriented presentation files.
//!
//! ```text
//! # L(7,1)
//! name lens7
//! n 1
//! 7
//! spinc chern 7 label=a
//! spinc charge 1
//! torsion s=7 1/5 -8/35 -18/35
//!   -23/35 -23/35 -18/35 -8/35
//! ```
//!
//! `#` starts a comment. After `n`, the next `n` lines are matrix rows. A
//! `torsion` block continues over following lines until the next keyword.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::homology::{parse_rational, SurgeryPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Chern,
    Charge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpincEntry {
    pub encoding: Encoding,
    pub vector: Vec<BigInt>,
    pub label: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionBlock {
    pub sigma: String,
    pub values: Vec<BigRational>,
    pub line: usize,
}

/// A parsed presentation file. The matrix is kept raw so that domain
/// errors (asymmetry, `det B = 0`) surface separately from parse errors.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub rows: Vec<Vec<BigInt>>,
    pub spinc: Vec<SpincEntry>,
    pub torsion: Vec<TorsionBlock>,
}

impl PresentationFile {
    pub fn presentation(&self) -> Result<SurgeryPresentation> {
        let n = self.rows.len();
        SurgeryPresentation::new(IntMatrix::new(n, n, self.rows.concat())?)
    }

    /// Entry whose `label=` matches.
    pub fn labelled(&self, label: &str) -> Option<&SpincEntry> {
        self.spinc.iter().find(|e| e.label.as_deref() == Some(label))
    }
}

fn ints(tokens: &[&str], line: usize, field: &str) -> Result<Vec<BigInt>> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::parse(line, format!("{field}: '{t}' is not an integer")))
        })
        .collect()
}

fn rationals(tokens: &[&str], line: usize) -> Result<Vec<BigRational>> {
    tokens
        .iter()
        .map(|t| {
            parse_rational(t)
                .map_err(|e| Error::parse(line, format!("torsion: '{t}' is not a rational ({e})")))
        })
        .collect()
}

const KEYWORDS: [&str; 4] = ["name", "n", "spinc", "torsion"];

/// Parses a full presentation file.
pub fn parse_presentation(text: &str) -> Result<PresentationFile> {
    parse(text, true)
}

/// Parses a file holding only `torsion` blocks (and optionally `name`).
pub fn parse_fixture(text: &str) -> Result<Vec<TorsionBlock>> {
    Ok(parse(text, false)?.torsion)
}

fn parse(text: &str, need_matrix: bool) -> Result<PresentationFile> {
    let mut file = PresentationFile { name: None, rows: Vec::new(), spinc: Vec::new(), torsion: Vec::new() };
    let mut n: Option<usize> = None;
    let mut pending_rows = 0usize;
    let mut in_torsion = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();

        if pending_rows > 0 {
            let dim = n.expect("set with pending rows");
            let row = ints(&tokens, line, "matrix row")?;
            if row.len() != dim {
                return Err(Error::parse(
                    line,
                    format!("matrix row: expected {dim} integers, got {}", row.len()),
                ));
            }
            file.rows.push(row);
            pending_rows -= 1;
            continue;
        }

        if in_torsion && !KEYWORDS.contains(&tokens[0]) {
            let block = file.torsion.last_mut().expect("open torsion block");
            block.values.extend(rationals(&tokens, line)?);
            continue;
        }
        in_torsion = false;

        match tokens[0] {
            "name" => {
                let rest = content["name".len()..].trim();
                if rest.is_empty() {
                    return Err(Error::parse(line, "name: missing value"));
                }
                file.name = Some(rest.to_string());
            }
            "n" => {
                if !need_matrix {
                    return Err(Error::parse(line, "n: not allowed in a torsion fixture"));
                }
                if n.is_some() {
                    return Err(Error::parse(line, "n: given twice"));
                }
                let dim = match tokens.as_slice() {
                    [_, v] => v.parse::<usize>().ok().filter(|&d| d > 0),
                    _ => None,
                }
                .ok_or_else(|| Error::parse(line, "n: expected one positive integer"))?;
                n = Some(dim);
                pending_rows = dim;
            }
            "spinc" => {
                if !need_matrix {
                    return Err(Error::parse(line, "spinc: not allowed in a torsion fixture"));
                }
                let encoding = match tokens.get(1) {
                    Some(&"chern") => Encoding::Chern,
                    Some(&"charge") => Encoding::Charge,
                    _ => return Err(Error::parse(line, "spinc: expected 'chern' or 'charge'")),
                };
                let mut label = None;
                let mut values = Vec::new();
                for t in &tokens[2..] {
                    match t.strip_prefix("label=") {
                        Some(l) if !l.is_empty() => label = Some(l.to_string()),
                        Some(_) => return Err(Error::parse(line, "spinc: empty label")),
                        None => values.push(*t),
                    }
                }
                let vector = ints(&values, line, "spinc")?;
                file.spinc.push(SpincEntry { encoding, vector, label, line });
            }
            "torsion" => {
                let sigma = tokens
                    .get(1)
                    .ok_or_else(|| Error::parse(line, "torsion: missing Spin^c label"))?
                    .to_string();
                let values = rationals(&tokens[2..], line)?;
                file.torsion.push(TorsionBlock { sigma, values, line });
                in_torsion = true;
            }
            other => return Err(Error::parse(line, format!("unknown keyword '{other}'"))),
        }
    }

    if need_matrix {
        let dim = n.ok_or_else(|| Error::parse(text.lines().count().max(1), "n: missing header"))?;
        if pending_rows > 0 {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("matrix: expected {dim} rows, got {}", dim - pending_rows),
            ));
        }
        for e in &file.spinc {
            if e.vector.len() != dim {
                return Err(Error::parse(
                    e.line,
                    format!("spinc: expected {dim} integers, got {}", e.vector.len()),
                ));
            }
        }
    }
    Ok(file)
}
