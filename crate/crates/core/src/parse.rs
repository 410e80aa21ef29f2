//! Line-oriented text format for bound quivers.
//!
//! ```text
//! quiver <name>
//! vertex <id> [<id> ...]
//! arrow <name> <source> <target>
//! rel <first> <second>        # the path first·second, t(first) = s(second)
//! ```
//!
//! `#` starts a comment. Apart from `quiver` coming first, lines may appear
//! in any order.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::quiver::{BoundQuiver, QuiverBuilder, QuiverError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Invalid(#[from] QuiverError),
}

/// A parse failure with its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn err(self, kind: impl Into<ParseErrorKind>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind: kind.into(),
        }
    }

    fn syntax(self, msg: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn ident(pos: Pos, tok: &str) -> Result<String, ParseError> {
    if !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(tok.to_owned())
    } else {
        Err(pos.err(QuiverError::InvalidIdent(tok.to_owned())))
    }
}

pub fn parse_bound_quiver(text: &str) -> Result<BoundQuiver, ParseError> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<(Pos, String)> = Vec::new();
    let mut arrows: Vec<(Pos, String, (Pos, String), (Pos, String))> = Vec::new();
    let mut rels: Vec<(Pos, (Pos, String), (Pos, String))> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let at = |i: usize| Pos {
            line: lineno + 1,
            column: toks.get(i).map_or(line.chars().count() + 1, |t| t.0),
        };
        let here = Pos {
            line: lineno + 1,
            column: col,
        };
        if name.is_none() && keyword != "quiver" {
            return Err(here.syntax(format!("expected `quiver <name>` before `{keyword}`")));
        }
        let arity = |n: usize| -> Result<(), ParseError> {
            match toks.len().cmp(&(n + 1)) {
                std::cmp::Ordering::Less => {
                    Err(at(toks.len()).syntax(format!("`{keyword}` expects {n} argument(s)")))
                }
                std::cmp::Ordering::Greater => {
                    Err(at(n + 1).syntax(format!("unexpected token `{}`", toks[n + 1].1)))
                }
                std::cmp::Ordering::Equal => Ok(()),
            }
        };
        match keyword {
            "quiver" => {
                if name.is_some() {
                    return Err(here.syntax("duplicate `quiver` line"));
                }
                arity(1)?;
                name = Some(ident(at(1), toks[1].1)?);
            }
            "vertex" => {
                if toks.len() < 2 {
                    return Err(at(1).syntax("`vertex` expects at least one id"));
                }
                for i in 1..toks.len() {
                    vertices.push((at(i), ident(at(i), toks[i].1)?));
                }
            }
            "arrow" => {
                arity(3)?;
                arrows.push((
                    at(1),
                    ident(at(1), toks[1].1)?,
                    (at(2), ident(at(2), toks[2].1)?),
                    (at(3), ident(at(3), toks[3].1)?),
                ));
            }
            "rel" => {
                arity(2)?;
                rels.push((
                    here,
                    (at(1), ident(at(1), toks[1].1)?),
                    (at(2), ident(at(2), toks[2].1)?),
                ));
            }
            other => return Err(here.syntax(format!("unknown keyword `{other}`"))),
        }
    }

    let Some(name) = name else {
        return Err(Pos { line: 1, column: 1 }.syntax("missing `quiver <name>` line"));
    };

    // Validate references here so every error carries a position; the builder
    // below then cannot fail.
    let mut seen_v = HashSet::new();
    for (pos, v) in &vertices {
        if !seen_v.insert(v.as_str()) {
            return Err(pos.err(QuiverError::DuplicateVertex(v.clone())));
        }
    }
    let mut ends: HashMap<&str, (&str, &str)> = HashMap::new();
    for (pos, a, (sp, s), (tp, t)) in &arrows {
        for (p, v) in [(sp, s), (tp, t)] {
            if !seen_v.contains(v.as_str()) {
                return Err(p.err(QuiverError::UnknownVertex(v.clone())));
            }
        }
        if ends.insert(a, (s, t)).is_some() {
            return Err(pos.err(QuiverError::DuplicateArrow(a.clone())));
        }
    }
    let mut seen_r = HashSet::new();
    for (pos, (fp, f), (sp, s)) in &rels {
        let (Some(&(_, tf)), Some(&(ss, _))) = (ends.get(f.as_str()), ends.get(s.as_str())) else {
            let (p, missing) = if ends.contains_key(f.as_str()) { (sp, s) } else { (fp, f) };
            return Err(p.err(QuiverError::UnknownArrow(missing.clone())));
        };
        if tf != ss {
            return Err(pos.err(QuiverError::NonComposing {
                first: f.clone(),
                second: s.clone(),
                target: tf.to_owned(),
                start: ss.to_owned(),
            }));
        }
        if !seen_r.insert((f.as_str(), s.as_str())) {
            return Err(pos.err(QuiverError::DuplicateRelation(f.clone(), s.clone())));
        }
    }

    let mut b = QuiverBuilder::new(name);
    for (_, v) in vertices {
        b = b.vertex(v);
    }
    for (_, a, (_, s), (_, t)) in arrows {
        b = b.arrow(a, s, t);
    }
    for (_, (_, f), (_, s)) in rels {
        b = b.relation(f, s);
    }
    b.build().map_err(|e| Pos { line: 1, column: 1 }.err(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_quiver_a() {
        let q = parse_bound_quiver(fixtures::QUIVER_A).unwrap();
        assert_eq!((q.vertex_count(), q.arrow_count(), q.relation_count()), (7, 8, 4));
        assert_eq!(q.name(), "quiverA");
    }

    #[test]
    fn single_vertex_no_arrows() {
        let q = parse_bound_quiver("quiver pt\nvertex x\n").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 0);
        assert_eq!(q.relation_count(), 0);
    }

    #[test]
    fn non_composing_relation() {
        let text = "quiver bad\nvertex v1 v2 v4 v5\narrow a0 v4 v5\narrow b1 v2 v1\nrel a0 b1\n";
        let err = parse_bound_quiver(text).unwrap_err();
        assert_eq!((err.line, err.column), (5, 1));
        assert!(matches!(
            err.kind,
            ParseErrorKind::Invalid(QuiverError::NonComposing { .. })
        ));
    }

    #[test]
    fn error_positions() {
        let err = parse_bound_quiver("vertex a\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));

        let err = parse_bound_quiver("quiver q\nvertex a b\narrow x a  c\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 12));
        assert_eq!(err.kind, ParseErrorKind::Invalid(QuiverError::UnknownVertex("c".into())));

        let err = parse_bound_quiver("quiver q\nvertex a b a\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 12));

        let err = parse_bound_quiver("quiver q\nvertex a\narrow x a a\narrow x a a\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(matches!(err.kind, ParseErrorKind::Invalid(QuiverError::DuplicateArrow(_))));

        let err = parse_bound_quiver("quiver q\nvertex a\narrow x a a\nrel x y\n").unwrap_err();
        assert_eq!((err.line, err.column), (4, 7));

        let err = parse_bound_quiver("quiver q\n  arrow x a\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 12));
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));

        let err = parse_bound_quiver("quiver q\nfoo\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));

        let err = parse_bound_quiver("quiver q\nvertex a-b\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Invalid(QuiverError::InvalidIdent("a-b".into())));

        let err = parse_bound_quiver("# only a comment\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn comments_and_section_order() {
        let text = "# header\nquiver k # trailing\nrel a b\narrow b y x\narrow a x y\nvertex x y\n";
        let q = parse_bound_quiver(text).unwrap();
        assert_eq!(q.relation_count(), 1);
    }

    #[test]
    fn serializer_output_is_stable() {
        let q = fixtures::kronecker();
        assert_eq!(
            q.to_text(),
            "# rel a b denotes the path a·b, with t(a) = s(b)\n\
             quiver kronecker\n\
             vertex x y\n\
             arrow alpha x y\n\
             arrow beta x y\n"
        );
        assert_eq!(parse_bound_quiver(&q.to_text()).unwrap(), q);
    }
}
