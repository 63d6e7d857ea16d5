//! Structural invariants every seed-built reconfiguration graph must satisfy.

use crate::domination::CoverTable;
use crate::reconfig::{eulerian_report, parity_bipartition_valid, ReconfigGraph};

/// Returns a description of every violated invariant; empty when sound.
///
/// Checked for all `D_k`: symmetric loop-free adjacency, the cardinality
/// parity bipartition, and that each materialized degree equals the
/// closed-form down-degree plus up-degree. For `k = n` additionally:
/// connected, odd node count, and at least one even-degree node.
pub fn structural_violations(r: &ReconfigGraph) -> Vec<String> {
    let mut out = Vec::new();
    let Some(g) = r.seed() else {
        out.push("not built from a seed".to_string());
        return out;
    };
    let n = g.n();
    let k = r.k();
    for i in 0..r.node_count() {
        for &j in r.neighbors(i) {
            let j = j as usize;
            if j == i {
                out.push(format!("self-loop at node {i}"));
            } else if !r.has_edge(j, i) {
                out.push(format!("edge {i}->{j} has no reverse"));
            }
        }
    }
    if !matches!(parity_bipartition_valid(r), Ok(true)) {
        out.push("an edge joins sets of equal cardinality parity".to_string());
    }
    let table = CoverTable::new(g);
    for (i, s) in r.nodes().iter().enumerate() {
        let up = if s.len() < k { n - s.len() } else { 0 };
        let expected = table.removable_count(s.bits()) + up;
        if expected != r.degree(i) {
            out.push(format!(
                "node {s} has degree {} but the degree formula gives {expected}",
                r.degree(i)
            ));
            break;
        }
    }
    if k == n {
        let rep = eulerian_report(r);
        if !rep.is_connected {
            out.push("D(G) is disconnected".to_string());
        }
        if rep.node_count % 2 == 0 {
            out.push(format!("D(G) has an even node count {}", rep.node_count));
        }
        if rep.odd_degree_count == rep.node_count {
            out.push("D(G) has no even-degree node".to_string());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};
    use crate::reconfig::{build_reconfig, cartesian_product};

    #[test]
    fn families_are_sound() {
        for spec in [
            FamilySpec::Path { n: 6 },
            FamilySpec::Cycle { n: 7 },
            FamilySpec::Cocktail { n: 6 },
            FamilySpec::CompleteBipartite { m: 2, n: 4 },
        ] {
            let g = make_family(&spec).unwrap();
            for k in 3..=g.n() {
                let r = build_reconfig(&g, k).unwrap();
                assert!(structural_violations(&r).is_empty(), "{spec} k={k}");
            }
        }
    }

    #[test]
    fn product_is_flagged() {
        let g = make_family(&FamilySpec::Path { n: 2 }).unwrap();
        let r = build_reconfig(&g, 2).unwrap();
        let p = cartesian_product(&r, &r).unwrap();
        assert_eq!(structural_violations(&p).len(), 1);
    }
}
