//! Line-oriented quiver-with-relations format.
//!
//! ```text
//! field 32003
//! vertices 1 2
//! arrow alpha 1 2
//! arrow beta 2 1
//! relation alpha*beta*alpha
//! relation beta*alpha*beta
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Field, DEFAULT_PRIME};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of path words. Words are stored in written order,
/// so the last arrow is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub terms: Vec<(u32, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverSpec {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl QuiverSpec {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// `(source, target)` of a written word, or `None` if not composable.
    pub fn word_ends(&self, word: &[usize]) -> Option<(usize, usize)> {
        word_ends(&self.arrows, word)
    }
}

pub(crate) fn word_ends(arrows: &[Arrow], word: &[usize]) -> Option<(usize, usize)> {
    let first = arrows[*word.first()?].target;
    let last = arrows[*word.last()?].source;
    for w in word.windows(2) {
        if arrows[w[0]].source != arrows[w[1]].target {
            return None;
        }
    }
    Some((last, first))
}

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '*' | '+' | '-' | '#')
}

/// Parses the algebra text format. `field_override` replaces any `field` line.
pub fn parse_spec(text: &str, field_override: Option<Field>) -> Result<QuiverSpec> {
    let mut field = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut rel_lines: Vec<(usize, usize, &str)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = line.chars().count() - trimmed.chars().count();
        let mut toks = tokens(trimmed, indent);
        let (kw_col, kw) = toks.remove(0);
        match kw {
            "field" => {
                let [(c, p)] = toks[..] else {
                    return Err(Error::parse(line_no, kw_col, "expected `field <p>`"));
                };
                let p: u32 = p.parse().map_err(|_| Error::parse(line_no, c, format!("bad modulus `{p}`")))?;
                field = Some(Field::new(p).map_err(|e| Error::parse(line_no, c, e.to_string()))?);
            }
            "vertices" => {
                if toks.is_empty() {
                    return Err(Error::parse(line_no, kw_col, "no vertices listed"));
                }
                for (c, v) in toks {
                    if vertices.iter().any(|x| x == v) {
                        return Err(Error::parse(line_no, c, format!("duplicate vertex `{v}`")));
                    }
                    vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let [(nc, name), (sc, src), (tc, dst)] = toks[..] else {
                    return Err(Error::parse(line_no, kw_col, "expected `arrow <name> <src> <dst>`"));
                };
                if !name.chars().all(is_name_char) || name.parse::<i64>().is_ok() {
                    return Err(Error::parse(line_no, nc, format!("invalid arrow name `{name}`")));
                }
                if arrows.iter().any(|a| a.name == name) {
                    return Err(Error::parse(line_no, nc, format!("duplicate arrow `{name}`")));
                }
                let find = |v: &str, c: usize| {
                    vertices
                        .iter()
                        .position(|x| x == v)
                        .ok_or_else(|| Error::parse(line_no, c, format!("unknown vertex `{v}`")))
                };
                let source = find(src, sc)?;
                let target = find(dst, tc)?;
                arrows.push(Arrow {
                    name: name.to_string(),
                    source,
                    target,
                });
            }
            "relation" => {
                let col = toks.first().map_or(kw_col + kw.len(), |t| t.0);
                let start = trimmed.find(|c: char| c.is_whitespace()).unwrap_or(trimmed.len());
                rel_lines.push((line_no, col, &trimmed[start..]));
            }
            other => return Err(Error::parse(line_no, kw_col, format!("unknown keyword `{other}`"))),
        }
    }
    if vertices.is_empty() {
        return Err(Error::parse(1, 1, "missing `vertices` line"));
    }
    let field = field_override.or(field).unwrap_or(Field::new(DEFAULT_PRIME)?);

    let mut relations = Vec::new();
    for (line_no, col, body) in rel_lines {
        relations.push(parse_relation(body, line_no, col, field, &arrows)?);
    }
    Ok(QuiverSpec {
        field,
        vertices,
        arrows,
        relations,
    })
}

fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col = offset;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some((b, bc)) = start.take() {
                out.push((bc + 1, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some((i, col));
        }
        col += 1;
    }
    if let Some((b, bc)) = start {
        out.push((bc + 1, &s[b..]));
    }
    out
}

fn parse_relation(body: &str, line: usize, col0: usize, field: Field, arrows: &[Arrow]) -> Result<Relation> {
    // Split into signed terms, tracking columns.
    let chars: Vec<char> = body.chars().collect();
    let lead = chars.iter().take_while(|c| c.is_whitespace()).count();
    let base = col0 - lead;
    let mut terms: Vec<(usize, i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut cur_col = 0;
    let mut expect_term = true;
    for (i, &c) in chars.iter().enumerate() {
        let col = base + i;
        match c {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    terms.push((cur_col, sign, std::mem::take(&mut cur)));
                    sign = 1;
                } else if !expect_term {
                    return Err(Error::parse(line, col, "dangling operator"));
                }
                if c == '-' {
                    sign = -sign;
                }
                expect_term = true;
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    cur.push(c);
                }
            }
            _ => {
                if cur.is_empty() {
                    cur_col = col;
                }
                cur.push(c);
                expect_term = false;
            }
        }
    }
    if !cur.trim().is_empty() {
        terms.push((cur_col, sign, cur));
    } else if expect_term {
        return Err(Error::parse(line, base + chars.len(), "relation ends without a term"));
    }
    if terms.is_empty() {
        return Err(Error::parse(line, col0, "empty relation"));
    }

    let mut parsed: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut ends: Option<(usize, usize, usize)> = None;
    for (col, sign, text) in terms {
        let factors: Vec<&str> = text.split('*').map(str::trim).collect();
        let mut coeff = sign;
        let mut word = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::parse(line, col, "empty factor"));
            }
            if k == 0 {
                if let Ok(c) = f.parse::<i64>() {
                    coeff *= c;
                    continue;
                }
            }
            let Some(a) = arrows.iter().position(|a| a.name == *f) else {
                return Err(Error::parse(line, col, format!("unknown arrow `{f}`")));
            };
            word.push(a);
        }
        if word.len() < 2 {
            return Err(Error::parse(
                line,
                col,
                format!("term `{}` has length {}; relations need paths of length at least 2", text.trim(), word.len()),
            ));
        }
        let Some((s, t)) = word_ends(arrows, &word) else {
            return Err(Error::parse(line, col, format!("`{}` is not composable", text.trim())));
        };
        match ends {
            None => ends = Some((s, t, word.len())),
            Some((s0, t0, l0)) => {
                if (s0, t0) != (s, t) {
                    return Err(Error::parse(line, col, "relation terms are not parallel"));
                }
                if l0 != word.len() {
                    return Err(Error::parse(line, col, "relation terms must all have the same length"));
                }
            }
        }
        let c = field.from_i64(coeff);
        if let Some(slot) = parsed.iter_mut().find(|(_, w)| *w == word) {
            slot.0 = field.add(slot.0, c);
        } else {
            parsed.push((c, word));
        }
    }
    parsed.retain(|(c, _)| *c != 0);
    Ok(Relation { terms: parsed })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "vertices 1 2\narrow α 1 2\narrow β 2 1\nrelation α*β*α\nrelation β*α*β\n";

    #[test]
    fn parses_two_vertex() {
        let s = parse_spec(TWO, None).unwrap();
        assert_eq!(s.vertices, vec!["1", "2"]);
        assert_eq!(s.arrows.len(), 2);
        assert_eq!(s.relations.len(), 2);
        assert_eq!(s.field.p(), DEFAULT_PRIME);
    }

    #[test]
    fn relation_with_difference() {
        let t = "vertices 1 2 3 4 5\narrow α 2 1\narrow β 4 2\narrow γ 3 1\narrow δ 4 3\narrow ε 5 3\n\
                 relation α*β - γ*δ\nrelation γ*ε\n";
        let s = parse_spec(t, None).unwrap();
        let r = &s.relations[0];
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[1].0, s.field.p() - 1);
    }

    #[test]
    fn left_to_right_order_is_rejected() {
        let t = "vertices 1 3 5\narrow γ 3 1\narrow ε 5 3\nrelation ε*γ\n";
        match parse_spec(t, None) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("not composable"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_short_and_mixed_terms() {
        let t = "vertices 1 2\narrow a 1 2\narrow b 2 1\nrelation a\n";
        assert!(matches!(parse_spec(t, None), Err(Error::Parse { .. })));
        let t = "vertices 1\narrow x 1 1\nrelation x*x - x*x*x\n";
        assert!(matches!(parse_spec(t, None), Err(Error::Parse { .. })));
        let t = "vertices 1 2\narrow a 1 2\narrow b 1 2\narrow c 2 1\nrelation c*a - a*c\n";
        assert!(matches!(parse_spec(t, None), Err(Error::Parse { .. })));
    }

    #[test]
    fn reports_columns() {
        let t = "vertices 1 2\narrow a 1 3\n";
        match parse_spec(t, None) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 11)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coefficients_and_comments() {
        let t = "# loop\nfield 7\nvertices v\narrow x v v  # the loop\nrelation 3*x*x*x - 2*x*x*x\n";
        let s = parse_spec(t, None).unwrap();
        assert_eq!(s.field.p(), 7);
        assert_eq!(s.relations[0].terms, vec![(1, vec![0, 0, 0])]);
    }
}
