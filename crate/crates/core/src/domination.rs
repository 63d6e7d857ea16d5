//! Dominating-set predicates, enumeration and summary statistics.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, SeedGraph, MAX_VERTICES};

/// A subset of the vertices of an `n`-vertex seed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u32,
    n: u8,
}

impl VertexSet {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded {
                n,
                cap: MAX_VERTICES,
            });
        }
        if bits & !full_mask(n) != 0 {
            return Err(Error::DimensionMismatch {
                set: 32 - bits.leading_zeros() as usize,
                graph: n,
            });
        }
        Ok(VertexSet { bits, n: n as u8 })
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut mask = 0u32;
        for v in vertices {
            if v >= n {
                return Err(Error::DimensionMismatch {
                    set: v + 1,
                    graph: n,
                });
            }
            mask |= 1 << v;
        }
        VertexSet::new(n, mask)
    }

    pub fn full(n: usize) -> Result<Self> {
        VertexSet::new(n, full_mask(n))
    }

    pub(crate) fn from_raw(n: usize, bits: u32) -> Self {
        VertexSet { bits, n: n as u8 }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        usize::from(self.n)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.bits >> v & 1 == 1
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        bits(self.bits)
    }

    /// Characteristic string with vertex 0 first, e.g. `"0110"`.
    pub fn bitstring(self) -> String {
        (0..self.n())
            .map(|v| if self.contains(v) { '1' } else { '0' })
            .collect()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.bits).cmp(&(other.len(), other.bits))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

/// Closed-neighborhood unions for every subset, split into two half tables
/// so a lookup is two loads and an OR.
#[derive(Debug, Clone)]
pub struct CoverTable {
    low_bits: usize,
    low: Vec<u32>,
    high: Vec<u32>,
    full: u32,
}

impl CoverTable {
    pub fn new(g: &SeedGraph) -> Self {
        let n = g.n();
        let low_bits = n.div_ceil(2);
        let table = |offset: usize, width: usize| {
            let mut t = vec![0u32; 1 << width];
            for mask in 1usize..t.len() {
                let v = mask.trailing_zeros() as usize;
                t[mask] = t[mask & (mask - 1)] | g.closed_neighborhood(offset + v);
            }
            t
        };
        CoverTable {
            low_bits,
            low: table(0, low_bits),
            high: table(low_bits, n - low_bits),
            full: g.vertex_mask(),
        }
    }

    /// Union of closed neighborhoods of the vertices in `mask`.
    #[inline]
    pub fn cover(&self, mask: u32) -> u32 {
        let lo = mask & ((1u32 << self.low_bits) - 1);
        self.low[lo as usize] | self.high[(mask >> self.low_bits) as usize]
    }

    #[inline]
    pub fn dominates(&self, mask: u32) -> bool {
        self.cover(mask) == self.full
    }

    /// Number of `v` in `mask` whose removal leaves a dominating set.
    #[inline]
    pub fn removable_count(&self, mask: u32) -> usize {
        bits(mask)
            .filter(|&v| self.dominates(mask & !(1 << v)))
            .count()
    }
}

fn check_dims(g: &SeedGraph, s: VertexSet) -> Result<()> {
    if s.n() != g.n() {
        Err(Error::DimensionMismatch {
            set: s.n(),
            graph: g.n(),
        })
    } else {
        Ok(())
    }
}

fn cover_of(g: &SeedGraph, mask: u32) -> u32 {
    bits(mask).fold(0, |acc, v| acc | g.closed_neighborhood(v))
}

pub fn is_dominating(g: &SeedGraph, s: VertexSet) -> Result<bool> {
    check_dims(g, s)?;
    Ok(cover_of(g, s.bits()) == g.vertex_mask())
}

pub fn is_minimal_dominating(g: &SeedGraph, s: VertexSet) -> Result<bool> {
    if !is_dominating(g, s)? {
        return Ok(false);
    }
    let full = g.vertex_mask();
    Ok(s.vertices()
        .all(|v| cover_of(g, s.bits() & !(1 << v)) != full))
}

/// Masks of popcount `c` below `2^n` in increasing order (Gosper's hack).
pub(crate) fn combinations(n: usize, c: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let mut cur: Option<u64> = if c > n { None } else { Some((1u64 << c) - 1) };
    std::iter::from_fn(move || {
        let x = cur?;
        if x >= limit {
            cur = None;
            return None;
        }
        cur = if x == 0 {
            None
        } else {
            let low = x & x.wrapping_neg();
            let ripple = x + low;
            Some((((ripple ^ x) >> 2) / low) | ripple)
        };
        Some(x as u32)
    })
}

/// Dominating-set masks of size at most `k`, sorted by (size, mask).
/// Stops with [`Error::ReconfigTooLarge`] once more than `cap` are found.
pub(crate) fn dominating_masks(
    table: &CoverTable,
    n: usize,
    k: usize,
    cap: usize,
) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for c in 0..=k.min(n) {
        for mask in combinations(n, c) {
            if table.dominates(mask) {
                if out.len() == cap {
                    return Err(Error::ReconfigTooLarge { cap });
                }
                out.push(mask);
            }
        }
    }
    Ok(out)
}

pub fn enumerate_dominating_sets(g: &SeedGraph, k: usize) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if k > n {
        return Err(Error::BoundExceeded(format!(
            "k = {k} exceeds the vertex count {n}"
        )));
    }
    let table = CoverTable::new(g);
    Ok(dominating_masks(&table, n, k, usize::MAX)?
        .into_iter()
        .map(|m| VertexSet::from_raw(n, m))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationProfile {
    pub n: usize,
    pub gamma: usize,
    pub upper_gamma: usize,
    pub counts_by_size: Vec<u64>,
    pub total_count: u64,
    pub universal_threshold: usize,
    pub well_dominated: bool,
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn domination_profile(g: &SeedGraph) -> Result<DominationProfile> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let table = CoverTable::new(g);
    let mut counts = vec![0u64; n + 1];
    let mut upper_gamma = 0;
    for mask in 0..=g.vertex_mask() {
        if table.dominates(mask) {
            let size = mask.count_ones() as usize;
            counts[size] += 1;
            if size > upper_gamma && table.removable_count(mask) == 0 {
                upper_gamma = size;
            }
        }
    }
    let gamma = counts.iter().position(|&c| c > 0).unwrap_or(n);
    let universal_threshold = (0..=n).find(|&t| counts[t] == binomial(n, t)).unwrap_or(n);
    Ok(DominationProfile {
        n,
        gamma,
        upper_gamma,
        total_count: counts.iter().sum(),
        counts_by_size: counts,
        universal_threshold,
        well_dominated: gamma == upper_gamma,
    })
}

/// Domination number alone; cheaper than a full profile.
pub fn domination_number(g: &SeedGraph) -> Result<usize> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let table = CoverTable::new(g);
    Ok((0..=n)
        .find(|&c| combinations(n, c).any(|m| table.dominates(m)))
        .unwrap_or(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};

    fn fam(spec: FamilySpec) -> SeedGraph {
        make_family(&spec).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    // Independent filter over all subsets, testing each vertex explicitly.
    fn naive_dominating(g: &SeedGraph) -> Vec<u32> {
        let n = g.n();
        let mut out: Vec<u32> = (0u32..1 << n)
            .filter(|&m| {
                (0..n)
                    .all(|v| m >> v & 1 == 1 || (0..n).any(|u| m >> u & 1 == 1 && g.has_edge(u, v)))
            })
            .collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    #[test]
    fn p4_dominating_sets() {
        let p4 = fam(FamilySpec::Path { n: 4 });
        assert_eq!(naive_dominating(&p4).len(), 9);
        assert!(is_dominating(&p4, set(4, &[1, 2])).unwrap());
        assert_eq!(enumerate_dominating_sets(&p4, 4).unwrap().len(), 9);
        assert_eq!(enumerate_dominating_sets(&p4, 3).unwrap().len(), 8);
    }

    #[test]
    fn empty_set_never_dominates() {
        for n in 1..6 {
            let g = fam(FamilySpec::Complete { n });
            assert!(!is_dominating(&g, VertexSet::new(n, 0).unwrap()).unwrap());
        }
    }

    #[test]
    fn star_leaves_minimal() {
        let k13 = fam(FamilySpec::Star { n: 3 });
        let leaves = set(4, &[1, 2, 3]);
        assert!(is_dominating(&k13, leaves).unwrap());
        assert!(is_minimal_dominating(&k13, leaves).unwrap());
    }

    #[test]
    fn minimality() {
        let p4 = fam(FamilySpec::Path { n: 4 });
        assert!(!is_minimal_dominating(&p4, VertexSet::full(4).unwrap()).unwrap());
        let c7 = fam(FamilySpec::Cycle { n: 7 });
        let s = set(7, &[0, 3, 5]);
        assert!(is_dominating(&c7, s).unwrap());
        for drop in [0, 3, 5] {
            let t = set(
                7,
                &[0, 3, 5]
                    .into_iter()
                    .filter(|&v| v != drop)
                    .collect::<Vec<_>>(),
            );
            assert!(!is_dominating(&c7, t).unwrap());
        }
        assert!(is_minimal_dominating(&c7, s).unwrap());
    }

    #[test]
    fn complete_singletons() {
        for n in 1..8 {
            let g = fam(FamilySpec::Complete { n });
            let sets = enumerate_dominating_sets(&g, 1).unwrap();
            assert_eq!(sets.len(), n);
            assert!(sets.iter().all(|s| s.len() == 1));
        }
    }

    #[test]
    fn dimension_mismatch() {
        let p4 = fam(FamilySpec::Path { n: 4 });
        let s = VertexSet::new(5, 0b11).unwrap();
        assert!(matches!(
            is_dominating(&p4, s),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            is_minimal_dominating(&p4, s),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(VertexSet::new(3, 0b1000).is_err());
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        let specs = [
            FamilySpec::Path { n: 9 },
            FamilySpec::Cycle { n: 10 },
            FamilySpec::CompleteBipartite { m: 3, n: 4 },
            FamilySpec::Cocktail { n: 8 },
            FamilySpec::corona(FamilySpec::Cycle { n: 5 }),
            FamilySpec::Turan { n: 11, r: 3 },
            FamilySpec::union(FamilySpec::Path { n: 3 }, FamilySpec::Star { n: 4 }),
            FamilySpec::Path { n: 12 },
        ];
        for spec in specs {
            let g = fam(spec.clone());
            let got: Vec<u32> = enumerate_dominating_sets(&g, g.n())
                .unwrap()
                .iter()
                .map(|s| s.bits())
                .collect();
            assert_eq!(got, naive_dominating(&g), "{spec}");
        }
    }

    #[test]
    fn profiles() {
        let p = domination_profile(&fam(FamilySpec::Path { n: 7 })).unwrap();
        assert_eq!(p.gamma, 3);
        let h6 = domination_profile(&fam(FamilySpec::Cocktail { n: 6 })).unwrap();
        assert_eq!((h6.gamma, h6.universal_threshold), (2, 2));
        let c = domination_profile(&fam(FamilySpec::corona(FamilySpec::Path { n: 3 }))).unwrap();
        assert_eq!((c.gamma, c.upper_gamma), (3, 3));
        assert!(c.well_dominated);
        assert!(matches!(
            domination_profile(&SeedGraph::empty(0).unwrap()),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn isolated_vertex_threshold_is_n() {
        let g = crate::graph::disjoint_union(
            &fam(FamilySpec::Path { n: 3 }),
            &SeedGraph::empty(1).unwrap(),
        )
        .unwrap();
        let p = domination_profile(&g).unwrap();
        assert_eq!(p.universal_threshold, 4);
    }

    #[test]
    fn closed_form_gammas() {
        for n in 1..=15 {
            let gp = domination_number(&fam(FamilySpec::Path { n })).unwrap();
            assert_eq!(gp, n.div_ceil(3));
            if n >= 3 {
                assert_eq!(
                    domination_number(&fam(FamilySpec::Cycle { n })).unwrap(),
                    n.div_ceil(3)
                );
            }
        }
        for m in 1..=5 {
            for n in m..=5 {
                let g = domination_number(&fam(FamilySpec::CompleteBipartite { m, n })).unwrap();
                assert_eq!(g, if m == 1 { 1 } else { 2 });
            }
        }
    }

    #[test]
    fn combinations_in_order() {
        let v: Vec<u32> = combinations(4, 2).collect();
        assert_eq!(v, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(combinations(3, 4).count(), 0);
        assert_eq!(combinations(26, 26).count(), 1);
    }

    #[test]
    fn display_forms() {
        let s = set(5, &[0, 2]);
        assert_eq!(s.to_string(), "{0,2}");
        assert_eq!(s.bitstring(), "10100");
        assert_eq!(VertexSet::new(3, 0).unwrap().to_string(), "{}");
    }
}
