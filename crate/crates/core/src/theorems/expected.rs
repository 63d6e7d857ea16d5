//! Closed-form Eulerian verdicts for the characterized families, computed
//! without building any reconfiguration graph.

use crate::error::{Error, Result};
use crate::graph::{connected_components, is_cocktail_party, make_family, FamilySpec, SeedGraph};

fn uncharacterized(spec: &FamilySpec, k: usize) -> Error {
    Error::UncharacterizedInstance(format!("{spec} with k = {k}"))
}

/// Predicted verdict for `D_k` of a family member.
///
/// Restricted ranges (`γ < k < n`) use the per-family characterizations;
/// `k = n` falls back to [`expected_full`].
pub fn expected_eulerian(spec: &FamilySpec, k: usize) -> Result<bool> {
    let n = spec.order();
    if k == n {
        return expected_full(&make_family(spec)?).ok_or_else(|| uncharacterized(spec, k));
    }
    let verdict = match *spec {
        FamilySpec::Path { n } if n >= 3 && n.div_ceil(3) < k && k < n => n == 4 && k == 3,
        FamilySpec::Cycle { n } if n >= 3 && n.div_ceil(3) < k && k < n => {
            (n == 7 && k == 4) || (n == 3 && k == 2)
        }
        FamilySpec::Complete { n } if n >= 2 && 1 < k && k < n => n % 2 == 1 && k == 2,
        FamilySpec::CompleteBipartite { m, n } => {
            biclique_verdict(m.min(n), m.max(n), k).ok_or_else(|| uncharacterized(spec, k))?
        }
        FamilySpec::Star { n } => {
            biclique_verdict(1, n, k).ok_or_else(|| uncharacterized(spec, k))?
        }
        FamilySpec::Cocktail { n } if 2 < k && k < n => k % 2 == 0,
        FamilySpec::Turan { n, r } if r >= 2 && 2 * r == n && n >= 4 => {
            return expected_eulerian(&FamilySpec::Cocktail { n }, k);
        }
        FamilySpec::Turan { n, r } if r == n => {
            return expected_eulerian(&FamilySpec::Complete { n }, k);
        }
        FamilySpec::Corona { ref inner } => {
            let m = inner.order();
            if m >= 2 && m < k && k < 2 * m {
                corona_verdict(m, k)
            } else {
                return Err(uncharacterized(spec, k));
            }
        }
        _ => return Err(uncharacterized(spec, k)),
    };
    Ok(verdict)
}

/// Corona of an `m`-vertex graph, `m < k < 2m`.
pub(crate) fn corona_verdict(m: usize, k: usize) -> bool {
    m % 2 == 0 && k == m + 1
}

fn biclique_verdict(m: usize, n: usize, k: usize) -> Option<bool> {
    let gamma = if m == 1 { 1 } else { 2 };
    if !(gamma < k && k < m + n) {
        return None;
    }
    Some((m == 1 && n % 2 == 0 && k % 2 == 1) || (m >= 3 && m % 2 == n % 2 && k == 3))
}

/// Predicted verdict for the full dominating graph `D(G)`.
///
/// A single vertex is trivially Eulerian, a connected graph on at least two
/// vertices is Eulerian exactly when it is a cocktail party graph, and a
/// disconnected graph is Eulerian exactly when every component is.
/// `None` for the graph on zero vertices.
pub fn expected_full(g: &SeedGraph) -> Option<bool> {
    match g.n() {
        0 => None,
        1 => Some(true),
        _ => {
            let comps = connected_components(g);
            if comps.len() == 1 {
                Some(is_cocktail_party(g))
            } else {
                Some(comps.iter().all(|&c| {
                    let part = g.induced(c);
                    part.n() == 1 || is_cocktail_party(&part)
                }))
            }
        }
    }
}

/// Best available prediction for an arbitrary seed: the family rule when a
/// family is known, otherwise the full-graph rule when `k = n`.
pub fn expected_for_graph(g: &SeedGraph, family: Option<&FamilySpec>, k: usize) -> Option<bool> {
    if let Some(spec) = family {
        if let Ok(v) = expected_eulerian(spec, k) {
            return Some(v);
        }
    }
    if k == g.n() {
        expected_full(g)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_verdicts() {
        assert!(expected_eulerian(&FamilySpec::Path { n: 4 }, 3).unwrap());
        assert!(expected_eulerian(&FamilySpec::CompleteBipartite { m: 1, n: 6 }, 3).unwrap());
        assert!(!expected_eulerian(&FamilySpec::Cocktail { n: 8 }, 5).unwrap());
        assert!(expected_eulerian(&FamilySpec::Cocktail { n: 8 }, 8).unwrap());
        assert!(expected_eulerian(&FamilySpec::Cycle { n: 7 }, 4).unwrap());
        assert!(expected_eulerian(&FamilySpec::Cycle { n: 4 }, 4).unwrap());
        assert!(!expected_eulerian(&FamilySpec::Cycle { n: 4 }, 3).unwrap());
        assert!(expected_eulerian(&FamilySpec::Complete { n: 5 }, 2).unwrap());
        assert!(!expected_eulerian(&FamilySpec::Complete { n: 5 }, 5).unwrap());
        assert!(expected_eulerian(&FamilySpec::Star { n: 4 }, 3).unwrap());
        assert!(expected_eulerian(&FamilySpec::corona(FamilySpec::Path { n: 4 }), 5).unwrap());
        assert!(!expected_eulerian(&FamilySpec::corona(FamilySpec::Path { n: 3 }), 4).unwrap());
        assert!(expected_eulerian(&FamilySpec::Turan { n: 6, r: 3 }, 4).unwrap());
    }

    #[test]
    fn out_of_scope() {
        for (spec, k) in [
            (FamilySpec::Path { n: 6 }, 2),
            (FamilySpec::Cocktail { n: 6 }, 2),
            (FamilySpec::CompleteBipartite { m: 1, n: 1 }, 1),
            (FamilySpec::Turan { n: 7, r: 3 }, 4),
            (FamilySpec::corona(FamilySpec::Path { n: 3 }), 3),
        ] {
            assert!(
                matches!(
                    expected_eulerian(&spec, k),
                    Err(Error::UncharacterizedInstance(_))
                ),
                "{spec} k={k}"
            );
        }
    }

    #[test]
    fn full_graph_rule() {
        let union = FamilySpec::union(FamilySpec::Cocktail { n: 4 }, FamilySpec::Cocktail { n: 6 });
        assert!(expected_eulerian(&union, 10).unwrap());
        let union = FamilySpec::union(FamilySpec::Path { n: 3 }, FamilySpec::Cocktail { n: 4 });
        assert!(!expected_eulerian(&union, 7).unwrap());
        assert_eq!(expected_full(&SeedGraph::empty(0).unwrap()), None);
        assert_eq!(expected_full(&SeedGraph::empty(3).unwrap()), Some(true));
    }
}
