//! The line-oriented `.polog` format:
//!
//! ```text
//! # comment
//! atoms a b            (optional; otherwise the sorted atoms of the formulas)
//! f1: ~a
//! f2: a
//! order f2 < f1        (f2 strictly preferred)
//! order f1 <= f3       (f1 at least as preferred)
//! order f3 = f4        (equally preferred)
//! ```

use std::fmt::Write as _;

use super::{is_label, PartiallyOrderedKb};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Universe};
use crate::order::{Edge, EdgeKind, PartialPreorder};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::KbSyntax {
        line,
        message: message.into(),
    }
}

pub fn load_kb(text: &str) -> Result<PartiallyOrderedKb> {
    let mut atoms: Option<(usize, Vec<String>)> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut formulas = Vec::new();
    let mut formula_lines = Vec::new();
    let mut edges: Vec<(usize, Edge)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        match words.next() {
            Some("atoms") => {
                if atoms.is_some() {
                    return Err(syntax(line, "`atoms` declared twice"));
                }
                atoms = Some((line, words.map(str::to_string).collect()));
            }
            Some("order") => {
                let parts: Vec<&str> = words.collect();
                let [from, op, to] = parts[..] else {
                    return Err(syntax(line, "expected `order <label> (<|<=|=) <label>`"));
                };
                let mut push = |from: &str, kind, to: &str| edges.push((line, Edge { from: from.into(), kind, to: to.into() }));
                match op {
                    "<" => push(from, EdgeKind::Strict, to),
                    "<=" => push(from, EdgeKind::Weak, to),
                    "=" => {
                        push(from, EdgeKind::Weak, to);
                        push(to, EdgeKind::Weak, from);
                    }
                    other => return Err(syntax(line, format!("unknown order relation `{other}`"))),
                }
            }
            _ => {
                let Some((label, body)) = content.split_once(':') else {
                    return Err(syntax(line, "expected `atoms ...`, `order ...` or `<label>: <formula>`"));
                };
                let label = label.trim();
                if !is_label(label) {
                    return Err(syntax(line, format!("`{label}` is not a valid label")));
                }
                if labels.iter().any(|l| l == label) {
                    return Err(Error::DuplicateLabel(label.to_string()).at_line(line));
                }
                let f = parse_formula(body).map_err(|e| syntax(line, e.to_string()))?;
                labels.push(label.to_string());
                formulas.push(f);
                formula_lines.push(line);
            }
        }
    }

    let universe = match atoms {
        Some((line, names)) => {
            let u = Universe::new(names).map_err(|e| e.at_line(line))?;
            for (f, &l) in formulas.iter().zip(&formula_lines) {
                u.check(f).map_err(|e| e.at_line(l))?;
            }
            Some(u)
        }
        None => None,
    };

    for (line, e) in &edges {
        for label in [&e.from, &e.to] {
            if !labels.contains(label) {
                return Err(Error::UnknownElement(label.clone()).at_line(*line));
            }
        }
    }
    let plain: Vec<Edge> = edges.iter().map(|(_, e)| e.clone()).collect();
    let order = PartialPreorder::build(labels.clone(), &plain).map_err(|err| match &err {
        Error::StrictContradiction(x, y) => {
            let line = edges
                .iter()
                .find(|(_, e)| e.kind == EdgeKind::Strict && &e.from == x && &e.to == y)
                .map_or(0, |(l, _)| *l);
            err.at_line(line)
        }
        _ => err,
    })?;
    PartiallyOrderedKb::from_parts(universe, formulas, order).map_err(|err| match &err {
        Error::DuplicateFormula { second, .. } => {
            let line = labels.iter().position(|l| l == second).map_or(0, |i| formula_lines[i]);
            err.at_line(line)
        }
        _ => err,
    })
}

/// Serializes a base; `load_kb(write_kb(kb))` reproduces it.
pub fn write_kb(kb: &PartiallyOrderedKb) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "atoms {}", kb.universe().atoms().join(" "));
    for (label, f) in kb.labels().iter().zip(kb.formulas()) {
        let _ = writeln!(out, "{label}: {f}");
    }
    let order = kb.order();
    for e in order.generating_edges() {
        match e.kind {
            EdgeKind::Strict => {
                let _ = writeln!(out, "order {} < {}", e.from, e.to);
            }
            // Equivalences come as a symmetric pair; print each once.
            EdgeKind::Weak => {
                if order.index_of(&e.from) < order.index_of(&e.to) {
                    let _ = writeln!(out, "order {} = {}", e.from, e.to);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Relation;

    const EX1: &str = "atoms a b\nf1: ~a\nf2: a\nf3: ~b\nf4: b\norder f2 < f3\norder f4 < f1\n";

    #[test]
    fn loads_ex1() {
        let kb = load_kb(EX1).unwrap();
        assert_eq!(kb.len(), 4);
        assert_eq!(kb.universe().atoms(), ["a", "b"]);
        let o = kb.order();
        let strict: Vec<(usize, usize)> = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .filter(|&(x, y)| o.strict(x, y))
            .collect();
        assert_eq!(strict, [(1, 2), (3, 0)]);
    }

    #[test]
    fn comments_blank_lines_and_sugar() {
        let kb = load_kb("# header\n\nx: a # trailing\ny: b\n  order x = y\n").unwrap();
        assert_eq!(kb.order().relate(0, 1), Relation::Equivalent);
        assert_eq!(kb.universe().atoms(), ["a", "b"]);
        let kb = load_kb("x: a\ny: b\norder x <= y\n").unwrap();
        assert_eq!(kb.order().relate(0, 1), Relation::FirstPreferred);
    }

    #[test]
    fn rejects_duplicate_formula() {
        let err = load_kb("f1: a\nf2: a\n").unwrap_err();
        assert_eq!(err.clone().root().clone(), err.root().clone());
        match err {
            Error::Located { line, error } => {
                assert_eq!(line, 2);
                assert!(matches!(*error, Error::DuplicateFormula { .. }));
                assert!(error.to_string().contains("equivalent"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_contradiction() {
        let err = load_kb("f1: a\nf2: b\norder f1 < f2\norder f2 < f1\n").unwrap_err();
        assert!(matches!(err.root(), Error::StrictContradiction(..)));
        assert!(matches!(err, Error::Located { line: 3 | 4, .. }));
    }

    #[test]
    fn other_errors() {
        assert!(matches!(load_kb("f1: a\norder f1 < g\n").unwrap_err().root(), Error::UnknownElement(_)));
        assert!(matches!(load_kb("f1 a\n"), Err(Error::KbSyntax { line: 1, .. })));
        assert!(matches!(load_kb("f1: a &\n"), Err(Error::KbSyntax { line: 1, .. })));
        assert!(matches!(load_kb("f1: a\norder f1 > f1\n"), Err(Error::KbSyntax { line: 2, .. })));
        assert!(matches!(load_kb("atoms a\nf1: b\n").unwrap_err().root(), Error::UnknownAtom(_)));
        assert!(matches!(load_kb("f1: a\nf1: b\n").unwrap_err().root(), Error::DuplicateLabel(_)));
        assert!(matches!(load_kb("atoms a\natoms b\n"), Err(Error::KbSyntax { line: 2, .. })));
    }

    #[test]
    fn declared_atoms_may_exceed_used_ones() {
        let kb = load_kb("atoms a b c\nf: a\n").unwrap();
        assert_eq!(kb.universe().len(), 3);
    }

    #[test]
    fn write_then_load_is_identity() {
        let kb = load_kb("atoms a b c\nx: a -> b\ny: ~c\nz: c | a\nw: b\norder x < y\norder y = z\norder z < w\n").unwrap();
        let text = write_kb(&kb);
        assert_eq!(load_kb(&text).unwrap(), kb);
        assert!(text.contains("order y = z"));
    }
}
