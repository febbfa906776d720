//! Vertex matrix text format: a `V n` header followed by `V` rows of `n`
//! integers. Lines starting with `#` and blank lines are ignored.

use std::path::Path;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::vector::LatticeVector;

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses vertex rows, keeping their order and repetitions.
pub fn parse_vertex_text(text: &str) -> Result<Vec<LatticeVector>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing `V n` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [v, n] = fields[..] else {
        return Err(parse_error(
            hline,
            format!(
                "header must hold two integers, found {} fields",
                fields.len()
            ),
        ));
    };
    let count: usize = v
        .parse()
        .map_err(|_| parse_error(hline, format!("bad vertex count `{v}`")))?;
    let dim: usize = n
        .parse()
        .map_err(|_| parse_error(hline, format!("bad dimension `{n}`")))?;
    let mut rows = Vec::with_capacity(count);
    let mut last = hline;
    for (line, row) in lines {
        last = line;
        if rows.len() == count {
            return Err(parse_error(
                line,
                format!("more than the {count} declared rows"),
            ));
        }
        let coords = row
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| parse_error(line, format!("bad integer `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(parse_error(
                line,
                format!("expected {dim} entries, found {}", coords.len()),
            ));
        }
        rows.push(LatticeVector::new(coords));
    }
    if rows.len() != count {
        return Err(parse_error(
            last,
            format!("declared {count} rows, found {}", rows.len()),
        ));
    }
    Ok(rows)
}

/// Renders rows in the vertex matrix format; inverse of [`parse_vertex_text`].
pub fn write_vertex_text(rows: &[LatticeVector]) -> String {
    let n = rows.first().map_or(0, LatticeVector::dim);
    let mut out = format!("{} {n}\n", rows.len());
    for r in rows {
        let cells: Vec<String> = r.coords().iter().map(BigInt::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_vertex_file(path: &Path) -> Result<LatticePolytope> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    LatticePolytope::from_vertices(&parse_vertex_text(&text)?)
}

/// Hex SHA-256 of the vertex text of the lexicographically sorted vertices.
pub fn canonical_hash(vertices: &[LatticeVector]) -> String {
    let mut sorted = vertices.to_vec();
    sorted.sort();
    let digest = Sha256::digest(write_vertex_text(&sorted).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
