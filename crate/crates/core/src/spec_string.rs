//! Textual graph specs such as `path:7`, `biclique:3,4`, `corona:path:3`,
//! `union:path:2+cycle:3`, `g6:<record>` and `file:<path>`.

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, make_family, FamilySpec, SeedGraph};
use crate::graph6::parse_graph6;

/// A parsed spec: the seed graph, plus its family when it has one.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: SeedGraph,
    pub family: Option<FamilySpec>,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::SpecParse {
        pos,
        msg: msg.into(),
    }
}

pub fn parse_graph_spec(text: &str) -> Result<ParsedGraph> {
    let parsed = parse_at(text.trim(), 0)?;
    let name = text.trim().to_string();
    Ok(ParsedGraph {
        graph: parsed.graph.with_name(name),
        family: parsed.family,
    })
}

fn parse_at(text: &str, pos: usize) -> Result<ParsedGraph> {
    let Some((kind, rest)) = text.split_once(':') else {
        return Err(err(
            pos,
            format!("expected '<kind>:<args>', found '{text}'"),
        ));
    };
    let arg_pos = pos + kind.len() + 1;
    let family = match kind {
        "path" => FamilySpec::Path {
            n: int(rest, arg_pos)?,
        },
        "cycle" => FamilySpec::Cycle {
            n: int(rest, arg_pos)?,
        },
        "complete" => FamilySpec::Complete {
            n: int(rest, arg_pos)?,
        },
        "star" => FamilySpec::Star {
            n: int(rest, arg_pos)?,
        },
        "cocktail" => FamilySpec::Cocktail {
            n: int(rest, arg_pos)?,
        },
        "biclique" => {
            let (m, n) = pair(rest, arg_pos)?;
            FamilySpec::CompleteBipartite { m, n }
        }
        "turan" => {
            let (n, r) = pair(rest, arg_pos)?;
            FamilySpec::Turan { n, r }
        }
        "corona" => {
            let inner = parse_at(rest, arg_pos)?;
            if inner.graph.n() < 2 {
                return Err(err(arg_pos, "corona requires an inner graph with n >= 2"));
            }
            let graph = crate::graph::corona(&inner.graph).map_err(|e| at(arg_pos, e))?;
            return Ok(ParsedGraph {
                graph,
                family: inner.family.map(FamilySpec::corona),
            });
        }
        "union" => return parse_union(rest, arg_pos),
        "g6" => {
            let graph = parse_graph6(rest).map_err(|e| at(arg_pos, e))?;
            return Ok(ParsedGraph {
                graph,
                family: None,
            });
        }
        "file" => {
            let graph = read_edge_list(rest).map_err(|e| at(arg_pos, e))?;
            return Ok(ParsedGraph {
                graph,
                family: None,
            });
        }
        other => return Err(err(pos, format!("unknown graph kind '{other}'"))),
    };
    let graph = make_family(&family).map_err(|e| at(arg_pos, e))?;
    Ok(ParsedGraph {
        graph,
        family: Some(family),
    })
}

fn at(pos: usize, e: Error) -> Error {
    match e {
        Error::SpecParse { .. } | Error::CapacityExceeded { .. } => e,
        other => err(pos, other.to_string()),
    }
}

fn parse_union(rest: &str, pos: usize) -> Result<ParsedGraph> {
    let mut parts = Vec::new();
    let mut offset = pos;
    for piece in rest.split('+') {
        if piece.is_empty() {
            return Err(err(offset, "empty union operand"));
        }
        parts.push(parse_at(piece, offset)?);
        offset += piece.len() + 1;
    }
    if parts.len() < 2 {
        return Err(err(pos, "union needs at least two operands joined by '+'"));
    }
    let mut iter = parts.into_iter();
    let first = iter.next().expect("non-empty");
    let (mut graph, mut family) = (first.graph, first.family);
    for p in iter {
        graph = disjoint_union(&graph, &p.graph)?;
        family = match (family, p.family) {
            (Some(a), Some(b)) => Some(FamilySpec::union(a, b)),
            _ => None,
        };
    }
    Ok(ParsedGraph { graph, family })
}

fn int(s: &str, pos: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| err(pos, format!("expected a non-negative integer, found '{s}'")))
}

fn pair(s: &str, pos: usize) -> Result<(usize, usize)> {
    let Some((a, b)) = s.split_once(',') else {
        return Err(err(pos, format!("expected '<int>,<int>', found '{s}'")));
    };
    Ok((int(a, pos)?, int(b, pos + a.len() + 1)?))
}

/// Edge list: one `u v` pair per line, `#` comments and blank lines
/// ignored. The vertex count is one more than the largest id.
pub fn read_edge_list(path: &str) -> Result<SeedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

pub fn parse_edge_list(text: &str) -> Result<SeedGraph> {
    let mut edges = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[u, v]) => edges.push((u, v)),
            _ => {
                return Err(err(
                    line_no + 1,
                    format!("line {}: expected 'u v', found '{line}'", line_no + 1),
                ))
            }
        }
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    SeedGraph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_documented_form_parses() {
        for (text, n) in [
            ("path:7", 7),
            ("cycle:7", 7),
            ("complete:5", 5),
            ("biclique:3,4", 7),
            ("star:5", 6),
            ("cocktail:6", 6),
            ("turan:6,3", 6),
            ("corona:path:3", 6),
            ("union:path:2+cycle:3", 5),
            ("g6:A_", 2),
            ("union:g6:A_+path:3+corona:cycle:3", 11),
        ] {
            let p = parse_graph_spec(text).unwrap();
            assert_eq!(p.graph.n(), n, "{text}");
        }
        let p = parse_graph_spec("union:path:2+cycle:3").unwrap();
        assert_eq!(p.family.unwrap().to_string(), "union:path:2+cycle:3");
        assert!(parse_graph_spec("union:g6:A_+path:2")
            .unwrap()
            .family
            .is_none());
        assert_eq!(
            parse_graph_spec("corona:path:3")
                .unwrap()
                .family
                .unwrap()
                .to_string(),
            "corona:path:3"
        );
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("path", 0),
            ("path:x", 5),
            ("biclique:3", 9),
            ("biclique:3,y", 11),
            ("union:path:2+", 13),
            ("union:path:2+cycle:q", 19),
            ("wheel:5", 0),
            ("cycle:2", 6),
            ("corona:path:1", 7),
        ];
        for (text, pos) in cases {
            match parse_graph_spec(text) {
                Err(Error::SpecParse { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_graph_spec("path:40"),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn edge_list_files() {
        let g = parse_edge_list("# a triangle\n0 1\n1 2\n\n2 0\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("0 0\n").is_err());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        std::fs::write(&path, "0 1\n1 2\n").unwrap();
        let p = parse_graph_spec(&format!("file:{}", path.display())).unwrap();
        assert_eq!(p.graph.edges(), vec![(0, 1), (1, 2)]);
    }
}
