//! Arc-list text format and DOT export.
//!
//! ```text
//! # n=3
//! label 0 a
//! label 2 c
//! 0 1
//! 1 2
//! ```
//!
//! Blank lines and other `#` lines are ignored. Without a header the order
//! is one more than the largest id mentioned. [`emit`] writes the header,
//! labels by id and arcs in sorted order, and `emit(parse(t)) == t` for any
//! text `emit` produced.

use std::fmt::Write;

use crate::digraph::{Arc, Digraph};
use crate::error::ParseError;

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a vertex id, found `{tok}`")))
}

pub fn parse(text: &str) -> Result<Digraph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut labels: Vec<(usize, String, usize)> = Vec::new();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut max_id: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                if declared.is_some() {
                    return Err(syntax(line, "repeated `# n=` header"));
                }
                declared =
                    Some(value.trim().parse().map_err(|_| {
                        syntax(line, format!("bad vertex count `{}`", value.trim()))
                    })?);
            }
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("label") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(syntax(line, format!("unrecognized line `{trimmed}`")));
            }
            let rest = rest.trim_start();
            let (id, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let id = parse_id(id, line)?;
            let text = text.trim();
            if text.is_empty() {
                return Err(syntax(line, "empty label"));
            }
            if labels.iter().any(|(other, _, _)| *other == id) {
                return Err(syntax(line, format!("vertex {id} labelled twice")));
            }
            max_id = max_id.max(Some(id));
            labels.push((id, text.to_string(), line));
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let [t, h] = toks[..] else {
            return Err(syntax(
                line,
                format!("expected `tail head`, found `{trimmed}`"),
            ));
        };
        let arc = (parse_id(t, line)?, parse_id(h, line)?);
        if arc.0 == arc.1 {
            return Err(syntax(line, format!("loop at vertex {}", arc.0)));
        }
        if arcs.contains(&arc) {
            return Err(syntax(line, format!("duplicate arc {} {}", arc.0, arc.1)));
        }
        max_id = max_id.max(Some(arc.0.max(arc.1)));
        arcs.push(arc);
    }
    let n = match (declared, max_id) {
        (Some(n), Some(m)) if m >= n => {
            return Err(syntax(1, format!("vertex {m} out of range for n={n}")));
        }
        (Some(n), _) => n,
        (None, m) => m.map_or(0, |m| m + 1),
    };
    let mut names = vec![None; n];
    for (id, text, _) in labels {
        names[id] = Some(text);
    }
    Ok(Digraph::with_labels(n, arcs, names)?)
}

pub fn emit(g: &Digraph) -> String {
    let mut out = format!("# n={}\n", g.vertex_count());
    for (v, label) in g.labels().iter().enumerate() {
        if let Some(l) = label {
            writeln!(out, "label {v} {l}").expect("write to string");
        }
    }
    for &(t, h) in g.arcs() {
        writeln!(out, "{t} {h}").expect("write to string");
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text with vertexes named by id and labelled by display name.
pub fn to_dot(g: &Digraph, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n", dot_escape(name));
    for v in 0..g.vertex_count() {
        writeln!(out, "  {v} [label=\"{}\"];", dot_escape(&g.display_name(v))).expect("write");
    }
    for &(t, h) in g.arcs() {
        writeln!(out, "  {t} -> {h};").expect("write");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::GraphError;

    #[test]
    fn round_trip() {
        let text = "# n=4\nlabel 0 a\nlabel 3 d e\n0 1\n1 2\n2 3\n3 1\n";
        let g = parse(text).unwrap();
        assert_eq!(g.label(3), Some("d e"));
        assert_eq!(emit(&g), text);
        assert_eq!(parse(&emit(&g)).unwrap(), g);
    }

    #[test]
    fn normalizes_loose_input() {
        let g = parse("\n# a comment\n2 0\n 0 1 \n").unwrap();
        assert_eq!(emit(&g), "# n=3\n0 1\n2 0\n");
        assert_eq!(emit(&parse("").unwrap()), "# n=0\n");
        assert_eq!(parse("# n=5\n").unwrap().vertex_count(), 5);
    }

    #[test]
    fn errors_carry_lines() {
        let err = |t: &str| match parse(t) {
            Err(ParseError::Syntax { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(err("0 1\n1 x\n"), 2);
        assert_eq!(err("0 1\n\n1 1\n"), 3);
        assert_eq!(err("0 1\n0 1\n"), 2);
        assert_eq!(err("0 1 2\n"), 1);
        assert_eq!(err("label 0\n"), 1);
        assert_eq!(err("# n=2\n0 5\n"), 1);
        assert!(matches!(
            parse("label 0 a\nlabel 1 a\n0 1\n"),
            Err(ParseError::Graph(GraphError::DuplicateLabel(_)))
        ));
    }

    #[test]
    fn dot() {
        let g = parse("label 0 a\"b\n0 1\n").unwrap();
        assert_eq!(
            to_dot(&g, "g"),
            "digraph \"g\" {\n  0 [label=\"a\\\"b\"];\n  1 [label=\"1\"];\n  0 -> 1;\n}\n"
        );
    }
}
