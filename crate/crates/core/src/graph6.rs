//! graph6 interchange: 6-bit big-endian packing of the upper triangle,
//! printable offset 63.

use crate::error::{Error, Result};
use crate::graph::{edge_slots, SeedGraph, MAX_VERTICES};

pub const HEADER: &str = ">>graph6<<";

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedGraph6(msg.into())
}

pub fn encode_graph6(g: &SeedGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in edge_slots(n) {
        acc = acc << 1 | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            out.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(text: &str) -> Result<SeedGraph> {
    let body = text.trim_end_matches(['\n', '\r']);
    let body = body.strip_prefix(HEADER).unwrap_or(body).as_bytes();
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(malformed(format!(
            "byte {:#04x} at offset {pos} is outside the printable range",
            body[pos]
        )));
    }
    let (n, rest) = match body {
        [] => return Err(malformed("empty record")),
        [126, 126, ..] => {
            if body.len() < 8 {
                return Err(malformed("truncated 36-bit vertex count"));
            }
            let n = body[2..8]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | usize::from(b - 63));
            (n, &body[8..])
        }
        [126, ..] => {
            if body.len() < 4 {
                return Err(malformed("truncated 18-bit vertex count"));
            }
            let n = body[1..4]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | usize::from(b - 63));
            (n, &body[4..])
        }
        [b, ..] => (usize::from(b - 63), &body[1..]),
    };
    if n > MAX_VERTICES {
        return Err(Error::CapacityExceeded {
            n,
            cap: MAX_VERTICES,
        });
    }
    let slots = edge_slots(n);
    let expected = slots.len().div_ceil(6);
    if rest.len() != expected {
        return Err(malformed(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            rest.len()
        )));
    }
    let mut g = SeedGraph::empty(n)?;
    for (b, &(i, j)) in slots.iter().enumerate() {
        let byte = rest[b / 6] - 63;
        if byte >> (5 - b % 6) & 1 == 1 {
            g.add_edge(i, j)?;
        }
    }
    let pad = expected * 6 - slots.len();
    if pad > 0 && (rest[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(malformed("nonzero padding bits"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};

    #[test]
    fn decode_single_edge() {
        let g = parse_graph6("A_").unwrap();
        assert_eq!(g, make_family(&FamilySpec::Path { n: 2 }).unwrap());
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), g);
    }

    #[test]
    fn decode_empty_record() {
        let g = parse_graph6("?").unwrap();
        assert_eq!(g.n(), 0);
    }

    #[test]
    fn encode_known_values() {
        assert_eq!(encode_graph6(&SeedGraph::empty(0).unwrap()), "?");
        assert_eq!(
            encode_graph6(&make_family(&FamilySpec::Path { n: 2 }).unwrap()),
            "A_"
        );
        // published example: 5-vertex graph with edges 0-2, 0-4, 1-3, 3-4
        let g = SeedGraph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn error_paths() {
        assert!(matches!(parse_graph6("D"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("DQ"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("DQcc"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(
            parse_graph6("A\x20"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(parse_graph6(""), Err(Error::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("A`"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("~?@"),
            Err(Error::MalformedGraph6(_))
        ));
        // 27 vertices
        let mut big = String::from("Z");
        big.push_str(&"?".repeat(59));
        assert!(matches!(
            parse_graph6(&big),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
