//! Facet files: one facet per line, optional `vertices:` header, `#`
//! comments.
//!
//! ```text
//! # a path of edges
//! vertices: x1 x2 x3
//! x1 x2
//! x2 x3
//! ```

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// How a facet line is split into vertex names.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tokenize {
    /// Whitespace-separated names.
    #[default]
    Whitespace,
    /// Every non-space character is a vertex (`ABC`).
    Letters,
}

#[derive(Clone, Debug)]
pub struct ParsedFacets {
    pub complex: SimplicialComplex,
    pub warnings: Vec<String>,
}

struct Names {
    index: HashMap<String, usize>,
    list: Vec<String>,
    fixed: bool,
}

impl Names {
    fn lookup(&mut self, name: &str, line: usize) -> Result<usize> {
        if let Some(&v) = self.index.get(name) {
            return Ok(v);
        }
        if self.fixed {
            return Err(Error::Parse {
                line,
                message: format!("vertex {name:?} is not in the header"),
            });
        }
        self.register(name, line)
    }

    fn register(&mut self, name: &str, line: usize) -> Result<usize> {
        if self.list.len() == MAX_VERTICES {
            return Err(Error::UniverseTooLarge {
                requested: MAX_VERTICES + 1,
                max: MAX_VERTICES,
            });
        }
        if self.index.contains_key(name) {
            return Err(Error::Parse {
                line,
                message: format!("vertex {name:?} listed twice in the header"),
            });
        }
        let v = self.list.len();
        self.index.insert(name.to_string(), v);
        self.list.push(name.to_string());
        Ok(v)
    }
}

/// Parses a facet file. Without a header, vertices are numbered in order of
/// first appearance. Facets contained in other facets are dropped with a
/// warning.
pub fn parse_facet_file(text: &str, mode: Tokenize) -> Result<ParsedFacets> {
    let mut names = Names {
        index: HashMap::new(),
        list: Vec::new(),
        fixed: false,
    };
    let mut facets: Vec<(usize, VertexSet)> = Vec::new();
    let mut warnings = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix("vertices:") {
            if names.fixed || !facets.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "the vertices: header must come before any facet".into(),
                });
            }
            for name in header.split_whitespace() {
                names.register(name, line_no)?;
            }
            names.fixed = true;
            continue;
        }
        let tokens: Vec<String> = match mode {
            Tokenize::Whitespace => line.split_whitespace().map(str::to_string).collect(),
            Tokenize::Letters => line
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(String::from)
                .collect(),
        };
        let mut facet = VertexSet::EMPTY;
        for t in &tokens {
            let v = names.lookup(t, line_no)?;
            if facet.contains(v) {
                warnings.push(format!("line {line_no}: vertex {t} repeated"));
            }
            facet = facet.with(v);
        }
        facets.push((line_no, facet));
    }
    if facets.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sets: Vec<VertexSet> = facets.iter().map(|&(_, f)| f).collect();
    let (cx, dropped) = SimplicialComplex::from_facets_reporting(sets, Some(names.list.len()))?;
    let cx = cx.with_names(names.list)?;
    for f in dropped {
        let lines: Vec<String> = facets
            .iter()
            .filter(|&&(_, g)| g == f)
            .map(|(l, _)| l.to_string())
            .collect();
        let line = lines.first().cloned().unwrap_or_default();
        warnings.push(format!(
            "line {line}: {} is contained in another facet and was dropped",
            cx.label(f)
        ));
    }
    warnings.sort();
    warnings.dedup();
    Ok(ParsedFacets {
        complex: cx,
        warnings,
    })
}

/// Writes a header listing every vertex, then one facet per line in
/// canonical order. `Letters` concatenates names when all of them are single
/// characters and falls back to spaces otherwise.
pub fn serialize_facet_file(cx: &SimplicialComplex, mode: Tokenize) -> String {
    let single = cx.names().iter().all(|n| n.chars().count() == 1);
    let mode = if single { mode } else { Tokenize::Whitespace };
    let mut out = format!("vertices: {}\n", cx.names().join(" "));
    for &f in cx.facets() {
        let parts: Vec<&str> = f.iter().map(|v| cx.name(v)).collect();
        match mode {
            Tokenize::Letters => out.push_str(&parts.concat()),
            Tokenize::Whitespace => out.push_str(&parts.join(" ")),
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_path() {
        let p = parse_facet_file("AB\nBC\nCD\nDE\n", Tokenize::Letters).unwrap();
        assert_eq!(p.complex.to_string(), "[AB, BC, CD, DE]");
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn whitespace_names() {
        let p = parse_facet_file("x1 x2\nx1 x3  # second\n", Tokenize::Whitespace).unwrap();
        assert_eq!(p.complex.d(), Some(2));
        assert_eq!(p.complex.names(), &["x1", "x2", "x3"]);
        assert_eq!(p.complex.num_facets(), 2);
    }

    #[test]
    fn contained_facet_warns() {
        let p = parse_facet_file("A B C\nA B\n", Tokenize::Whitespace).unwrap();
        assert_eq!(p.complex.num_facets(), 1);
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].starts_with("line 2"), "{:?}", p.warnings);
    }

    #[test]
    fn header_errors() {
        let e = parse_facet_file("vertices: a b\na c\n", Tokenize::Whitespace).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                message: "vertex \"c\" is not in the header".into()
            }
        );
        assert_eq!(
            parse_facet_file("# nothing\n\n", Tokenize::Whitespace).unwrap_err(),
            Error::EmptyInput
        );
        assert!(matches!(
            parse_facet_file("vertices: a b c\na b\n", Tokenize::Whitespace),
            Err(Error::IsolatedVertex { vertex: 2 })
        ));
    }

    #[test]
    fn round_trip_keeps_indices() {
        let p = parse_facet_file("CDG\nAEG\nABD\n", Tokenize::Letters).unwrap();
        for mode in [Tokenize::Letters, Tokenize::Whitespace] {
            let text = serialize_facet_file(&p.complex, mode);
            assert_eq!(parse_facet_file(&text, mode).unwrap().complex, p.complex);
        }
    }
}
