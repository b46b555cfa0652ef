use kla_core::raag::Graph;

use super::lexer::{tokenize, Cursor, Tok};
use super::ParseError;

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSource {
    pub name: String,
    pub graph: Graph,
}

pub fn parse_graph(text: &str) -> Result<GraphSource, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?, text);
    cur.keyword("graph")?;
    let (name, _) = cur.name()?;
    cur.expect(Tok::Newline)?;
    cur.keyword("vertices")?;
    let mut vertices: Vec<String> = Vec::new();
    while let Some(Tok::Name(_)) = cur.peek() {
        let (v, pos) = cur.name()?;
        if vertices.contains(&v) {
            return Err(ParseError::DuplicateVertex { pos, name: v });
        }
        vertices.push(v);
    }
    if vertices.is_empty() {
        return Err(ParseError::new(cur.pos(), "expected at least one vertex"));
    }
    cur.expect(Tok::Newline)?;
    cur.keyword("edges")?;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let find = |v: &str| vertices.iter().position(|n| n == v);
    while let Some(Tok::Name(_)) = cur.peek() {
        let (a, apos) = cur.name()?;
        cur.expect(Tok::Minus)?;
        let (b, bpos) = cur.name()?;
        let ia = find(&a).ok_or(ParseError::UndeclaredVertex { pos: apos, name: a.clone() })?;
        let ib = find(&b).ok_or(ParseError::UndeclaredVertex { pos: bpos, name: b.clone() })?;
        if ia == ib {
            return Err(ParseError::LoopEdge { pos: apos, name: a });
        }
        if edges.iter().any(|&(x, y)| (x, y) == (ia, ib) || (y, x) == (ia, ib)) {
            return Err(ParseError::DuplicateEdge { pos: apos, a, b });
        }
        edges.push((ia, ib));
    }
    cur.expect(Tok::Newline)?;
    if !cur.at_end() {
        return Err(cur.unexpected());
    }
    let pos = cur.pos();
    let graph = Graph::new(vertices, &edges).map_err(|e| ParseError::new(pos, e.to_string()))?;
    Ok(GraphSource { name, graph })
}

pub fn render_graph(name: &str, g: &Graph) -> String {
    let edges: Vec<String> = g
        .edges()
        .into_iter()
        .map(|(a, b)| format!("{}-{}", g.names()[a], g.names()[b]))
        .collect();
    let mut out = format!("graph {name}\nvertices {}\n", g.names().join(" "));
    if edges.is_empty() {
        out.push_str("edges\n");
    } else {
        out.push_str(&format!("edges {}\n", edges.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::Pos;
    use kla_core::raag::library;

    #[test]
    fn square_and_path() {
        let c4 = parse_graph("graph C4\nvertices a b c d\nedges a-b b-c c-d d-a\n").unwrap();
        assert_eq!(c4.graph.names(), ["a", "b", "c", "d"]);
        assert_eq!(c4.graph.edge_count(), 4);
        let p4 = parse_graph("graph P4\nvertices a b c d\nedges a-b b-c c-d\n").unwrap();
        assert_eq!(p4.graph.edges(), library::path(4).edges());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_graph("graph L\nvertices a\nedges a-a\n").unwrap_err(),
            ParseError::LoopEdge { pos: Pos { line: 3, col: 7 }, name: "a".into() }
        );
        assert!(matches!(
            parse_graph("graph G\nvertices a b\nedges a-c\n"),
            Err(ParseError::UndeclaredVertex { pos: Pos { line: 3, col: 9 }, .. })
        ));
        assert!(matches!(
            parse_graph("graph G\nvertices a b\nedges a-b b-a\n"),
            Err(ParseError::DuplicateEdge { pos: Pos { line: 3, col: 11 }, .. })
        ));
        assert!(matches!(parse_graph("graph G\nvertices a a\nedges\n"), Err(ParseError::DuplicateVertex { .. })));
        assert!(matches!(parse_graph("graph G\nvertices a b\n"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn render_round_trip() {
        let g = library::k7_plus_8();
        let back = parse_graph(&render_graph("K", &g)).unwrap();
        assert_eq!(back.graph, g);
        let e = library::empty(3);
        assert_eq!(parse_graph(&render_graph("E", &e)).unwrap().graph, e);
    }
}
