//! The line-oriented algebra file format.
//!
//! ```text
//! # comments start with '#'
//! field Q            # or: field F 5
//! vertex e1
//! vertex e2
//! vertex e3
//! arrow alpha e1 e2
//! arrow eta e2 e3
//! rel alpha eta      # traversal order: alpha first, then eta
//! ```
//!
//! A relation lists its arrows in the order they are traversed, so
//! `rel alpha eta` is the path written `ηα` in right-to-left notation.

use std::fmt;

use crate::algebra::{AlgebraError, MonomialAlgebra};
use crate::field::Field;
use crate::quiver::{ArrowId, Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &content[s..i], column: content[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &content[s..], column: content[..s].chars().count() + 1 });
    }
    out
}

pub fn parse(text: &str) -> Result<MonomialAlgebra, ParseError> {
    let mut q = Quiver::new();
    let mut field: Option<Field> = None;
    let mut rels: Vec<(Path, usize)> = Vec::new();
    let mut last_line = 1;
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        last_line = line_no;
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let err = |column: usize, message: String| ParseError { line: line_no, column, message };
        let args = &toks[1..];
        let arity = |k: usize, usage: &str| -> Result<(), ParseError> {
            if args.len() == k {
                Ok(())
            } else {
                let col = args.get(k).map_or(head.column, |t| t.column);
                Err(err(col, format!("expected `{usage}`")))
            }
        };
        match head.text {
            "field" => {
                if field.is_some() {
                    return Err(err(head.column, "field declared twice".into()));
                }
                field = Some(match args {
                    [t] if t.text == "Q" => Field::Rationals,
                    [t, p] if t.text == "F" => {
                        let value: u64 = p
                            .text
                            .parse()
                            .map_err(|_| err(p.column, format!("`{}` is not a number", p.text)))?;
                        Field::prime(value).map_err(|e| err(p.column, e.to_string()))?
                    }
                    _ => return Err(err(head.column, "expected `field Q` or `field F <p>`".into())),
                });
            }
            "vertex" => {
                arity(1, "vertex <name>")?;
                q.add_vertex(args[0].text).map_err(|e| err(args[0].column, e.to_string()))?;
            }
            "arrow" => {
                arity(3, "arrow <name> <source> <target>")?;
                let lookup = |t: &Token<'_>| {
                    q.vertex_by_name(t.text)
                        .ok_or_else(|| err(t.column, format!("unknown vertex `{}`", t.text)))
                };
                let (s, t) = (lookup(&args[1])?, lookup(&args[2])?);
                q.add_arrow(args[0].text, s, t).map_err(|e| err(args[0].column, e.to_string()))?;
            }
            "rel" => {
                if args.len() < 2 {
                    return Err(err(head.column, "relations need at least two arrows".into()));
                }
                let mut arrows: Vec<ArrowId> = Vec::with_capacity(args.len());
                for (i, t) in args.iter().enumerate() {
                    let a = q
                        .arrow_by_name(t.text)
                        .ok_or_else(|| err(t.column, format!("unknown arrow `{}`", t.text)))?;
                    if let Some(&prev) = arrows.last() {
                        if q.target(prev) != q.source(a) {
                            return Err(err(
                                t.column,
                                format!("`{}` does not start where `{}` ends", t.text, args[i - 1].text),
                            ));
                        }
                    }
                    arrows.push(a);
                }
                rels.push((q.path(&arrows).expect("checked composable"), line_no));
            }
            other => return Err(err(head.column, format!("unknown directive `{other}`"))),
        }
    }
    let field = field.unwrap_or(Field::Rationals);
    let relations: Vec<Path> = rels.iter().map(|(p, _)| p.clone()).collect();
    MonomialAlgebra::build(q.clone(), relations, field).map_err(|e| {
        let line = match &e {
            AlgebraError::NonMinimal { containing, .. } => rels
                .iter()
                .find(|(p, _)| q.display_path(p) == *containing)
                .map_or(last_line, |(_, l)| *l),
            _ => last_line,
        };
        ParseError { line, column: 1, message: e.to_string() }
    })
}

pub fn print(a: &MonomialAlgebra) -> String {
    let q = a.quiver();
    let mut out = String::new();
    match a.field() {
        Field::Rationals => out.push_str("field Q\n"),
        Field::Prime(p) => out.push_str(&format!("field F {p}\n")),
    }
    for v in q.vertices() {
        out.push_str(&format!("vertex {}\n", q.vertex_name(v)));
    }
    for x in q.arrow_ids() {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            q.arrow_name(x),
            q.vertex_name(q.source(x)),
            q.vertex_name(q.target(x))
        ));
    }
    for r in a.relations() {
        out.push_str(&format!("rel {}\n", q.traversal_string(r)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = "field Q\nvertex e1\nvertex e2\nvertex e3\nvertex e4\n\
        arrow alpha e1 e2\narrow eta e2 e3\narrow beta e3 e4\nrel alpha eta\nrel eta beta\n";

    #[test]
    fn round_trip() {
        let a = parse(LINE).unwrap();
        assert_eq!(a.dim(), 7);
        assert_eq!(parse(&print(&a)).unwrap(), a);
        assert_eq!(print(&a), LINE);
    }

    #[test]
    fn relation_is_in_traversal_order() {
        let a = parse(LINE).unwrap();
        let q = a.quiver();
        let shown: Vec<String> = a.relations().iter().map(|r| q.display_path(r)).collect();
        assert!(shown.contains(&"eta·alpha".to_string()), "{shown:?}");
    }

    #[test]
    fn diagnostics_have_positions() {
        let e = parse("vertex a\nvertex b\narrow x a b\nrel x\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 1));
        let e = parse("vertex a\n  frob a\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse("vertex a\nvertex a\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        let e = parse("vertex a\nvertex b\narrow x a b\narrow y a b\nrel x y\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 7));
        let e = parse("field F 4\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
    }

    #[test]
    fn infinite_algebras_are_rejected() {
        let e = parse("vertex a\narrow l a a\n").unwrap_err();
        assert!(e.message.contains("infinite"), "{}", e.message);
    }
}
