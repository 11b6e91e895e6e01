//! Text and JSON formats for complexes and matrices.
//!
//! Complex text format, one statement per line, `#` starting a comment:
//!
//! ```text
//! m 4
//! facet 1 2
//! facet 2 3
//! ```
//!
//! `nonsimplex <v...>` lines may replace the `facet` lines (the two kinds
//! cannot be mixed). A `facet` line without vertices is the empty face.

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<VertexSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nonsimplices: Option<Vec<VertexSet>>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Meaningful lines with their 1-based line numbers.
fn statements(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_complex_text(input: &str) -> Result<SimplicialComplex> {
    let mut m: Option<usize> = None;
    let mut facets = Vec::new();
    let mut nonsimplices = Vec::new();
    for (line, text) in statements(input) {
        let mut words = text.split_whitespace();
        let keyword = words.next().expect("non-empty line");
        match keyword {
            "m" => {
                if m.is_some() {
                    return Err(parse_error(line, "vertex count given twice"));
                }
                let value = words.next().ok_or_else(|| parse_error(line, "missing vertex count"))?;
                let value = value
                    .parse()
                    .map_err(|_| parse_error(line, format!("vertex count {value:?} is not an integer")))?;
                if let Some(extra) = words.next() {
                    return Err(parse_error(line, format!("unexpected {extra:?} after vertex count")));
                }
                m = Some(value);
            }
            "facet" | "nonsimplex" => {
                let m = m.ok_or_else(|| parse_error(line, "`m` must come before faces"))?;
                let vertices = words
                    .map(|w| w.parse::<u64>().map_err(|_| parse_error(line, format!("{w:?} is not a vertex"))))
                    .collect::<Result<Vec<_>>>()?;
                let set = VertexSet::from_vertices(m, vertices).map_err(|e| parse_error(line, e.to_string()))?;
                if keyword == "facet" {
                    facets.push((line, set));
                } else {
                    nonsimplices.push((line, set));
                }
            }
            other => return Err(parse_error(line, format!("unknown statement {other:?}"))),
        }
    }
    let m = m.ok_or_else(|| parse_error(0, "missing `m` statement"))?;
    match (facets.is_empty(), nonsimplices.is_empty()) {
        (false, false) => Err(parse_error(nonsimplices[0].0.max(facets[0].0), "cannot mix facet and nonsimplex lines")),
        (true, true) => Err(parse_error(0, "no facet or nonsimplex lines")),
        (false, true) => SimplicialComplex::from_facets(m, facets.into_iter().map(|(_, s)| s)),
        (true, false) => SimplicialComplex::from_min_nonsimplices(m, nonsimplices.into_iter().map(|(_, s)| s)),
    }
}

pub fn parse_complex_json(input: &str) -> Result<SimplicialComplex> {
    let file: ComplexJson = serde_json::from_str(input)?;
    if file.m == 0 || file.m > crate::complex::MAX_VERTICES {
        return Err(Error::VertexCount(file.m));
    }
    match (file.facets, file.nonsimplices) {
        (Some(facets), None) => SimplicialComplex::from_facets(file.m, facets),
        (None, Some(nonsimplices)) => SimplicialComplex::from_min_nonsimplices(file.m, nonsimplices),
        _ => Err(Error::InvalidParameter("expected exactly one of \"facets\" and \"nonsimplices\"".into())),
    }
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn parse_complex(input: &str) -> Result<SimplicialComplex> {
    if input.trim_start().starts_with('{') {
        parse_complex_json(input)
    } else {
        parse_complex_text(input)
    }
}

pub fn complex_to_text(k: &SimplicialComplex) -> String {
    let mut out = format!("m {}\n", k.vertex_count());
    for f in k.maximal_simplices() {
        out.push_str("facet");
        for v in f.vertices() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    let file = ComplexJson {
        m: k.vertex_count(),
        facets: Some(k.maximal_simplices().to_vec()),
        nonsimplices: None,
    };
    serde_json::to_string(&file).expect("serializable")
}

fn matrix_rows(input: &str) -> Vec<(usize, Vec<&str>)> {
    statements(input)
        .map(|(line, text)| (line, text.split_whitespace().collect()))
        .collect()
}

/// A 0/1 matrix, one row per line.
pub fn parse_gf2_matrix(input: &str) -> Result<Gf2Matrix> {
    let rows = matrix_rows(input);
    let mut entries = Vec::with_capacity(rows.len());
    for (line, words) in rows {
        let row = words
            .iter()
            .map(|w| match *w {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                _ => Err(parse_error(line, format!("{w:?} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    if entries.is_empty() {
        return Err(parse_error(0, "empty matrix"));
    }
    Gf2Matrix::from_entries(&entries)
}

/// An integer matrix, one row per line.
pub fn parse_int_matrix(input: &str) -> Result<IntMatrix> {
    let rows = matrix_rows(input);
    let cols = rows.first().map_or(0, |(_, w)| w.len());
    let mut out = Vec::with_capacity(rows.len());
    for (line, words) in rows {
        let row = words
            .iter()
            .map(|w| w.parse().map_err(|_| parse_error(line, format!("{w:?} is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    if out.is_empty() {
        return Err(parse_error(0, "empty matrix"));
    }
    IntMatrix::from_rows(cols, out)
}
