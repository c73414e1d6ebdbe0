//! Text format for modules:
//!
//! ```text
//! module M3
//! dims 0 1 1 1 0
//! map β = [[1]]
//! ```
//!
//! Maps not listed are zero. A map for arrow `a: s → t` is a
//! `dims[s] × dims[t]` matrix written as a JSON array of rows.

use std::fmt::Write as _;

use super::Representation;
use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

struct Pending {
    name: String,
    line: usize,
    dims: Option<Vec<usize>>,
    maps: Vec<Option<Matrix>>,
}

fn finish(alg: &AlgebraData, p: Pending) -> Result<(String, Representation)> {
    let f = alg.field();
    let dims = p.dims.ok_or_else(|| Error::parse(p.line, 1, format!("module `{}` has no dims line", p.name)))?;
    let maps = alg
        .arrows
        .iter()
        .zip(p.maps)
        .map(|(ar, m)| m.unwrap_or_else(|| Matrix::zeros(f, dims[ar.source], dims[ar.target])))
        .collect();
    let rep = Representation::new(alg, dims, maps).map_err(|e| Error::parse(p.line, 1, format!("module `{}`: {e}", p.name)))?;
    Ok((p.name, rep))
}

pub fn parse_modules(alg: &AlgebraData, text: &str) -> Result<Vec<(String, Representation)>> {
    let f = alg.field();
    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let col = raw.find(rest).unwrap_or(0) + 1;
        match kw {
            "module" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(Error::parse(ln, col, "expected a single module name"));
                }
                if let Some(p) = cur.take() {
                    out.push(finish(alg, p)?);
                }
                cur = Some(Pending {
                    name: rest.to_string(),
                    line: ln,
                    dims: None,
                    maps: vec![None; alg.arrows.len()],
                });
            }
            "dims" => {
                let p = cur.as_mut().ok_or_else(|| Error::parse(ln, 1, "`dims` before any `module`"))?;
                let dims: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::parse(ln, col, format!("bad dimension `{t}`"))))
                    .collect::<Result<_>>()?;
                if dims.len() != alg.n_vertices() {
                    return Err(Error::parse(ln, col, format!("expected {} dimensions, got {}", alg.n_vertices(), dims.len())));
                }
                p.dims = Some(dims);
            }
            "map" => {
                let p = cur.as_mut().ok_or_else(|| Error::parse(ln, 1, "`map` before any `module`"))?;
                let dims = p.dims.as_ref().ok_or_else(|| Error::parse(ln, 1, "`map` before `dims`"))?;
                let (name, json) = rest.split_once('=').ok_or_else(|| Error::parse(ln, col, "expected `map <arrow> = [[...]]`"))?;
                let name = name.trim();
                let a = alg.arrow_index(name).ok_or_else(|| Error::parse(ln, col, format!("unknown arrow `{name}`")))?;
                let jcol = raw.find('=').unwrap_or(0) + 2;
                let rows: Vec<Vec<i64>> = serde_json::from_str(json.trim()).map_err(|e| Error::parse(ln, jcol, format!("bad matrix: {e}")))?;
                let (r, c) = (dims[alg.arrows[a].source], dims[alg.arrows[a].target]);
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(Error::parse(ln, jcol, format!("map `{name}` must be {r}×{c}")));
                }
                p.maps[a] = Some(Matrix::from_fn(f, r, c, |i, j| f.from_i64(rows[i][j])));
            }
            other => return Err(Error::parse(ln, 1, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(p) = cur.take() {
        out.push(finish(alg, p)?);
    }
    Ok(out)
}

/// Inverse of [`parse_modules`] for one module. Zero maps are omitted and
/// entries are printed as residues in `[0, p)`.
pub fn format_module(alg: &AlgebraData, name: &str, m: &Representation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "module {name}");
    let dims: Vec<String> = m.dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(s, "dims {}", dims.join(" "));
    for (ar, x) in alg.arrows.iter().zip(&m.maps) {
        if x.is_zero() {
            continue;
        }
        let rows: Vec<String> = (0..x.rows())
            .map(|i| format!("[{}]", x.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(s, "map {} = [{}]", ar.name, rows.join(","));
    }
    s
}
