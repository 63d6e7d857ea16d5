//! Explicit k-dominating reconfiguration graphs `D_k(G)`.
//!
//! Nodes are the dominating sets of the seed of size at most `k`, ordered
//! by (cardinality, mask). Two nodes are adjacent when one set is obtained
//! from the other by adding or removing a single vertex. Adjacency is held
//! in compressed sparse rows with each row sorted.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::domination::{dominating_masks, CoverTable, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{bits, SeedGraph};

pub const DEFAULT_NODE_CAP: usize = 1 << 22;

/// Largest seed order for which node lookup uses a dense `2^n` table.
const DENSE_INDEX_MAX_N: usize = 20;

/// Number of odd-degree witnesses kept in an [`EulerReport`].
pub const WITNESS_CAP: usize = 16;

#[derive(Debug, Clone)]
pub struct ReconfigGraph {
    seed: Option<SeedGraph>,
    k: usize,
    nodes: Vec<VertexSet>,
    /// Product labels: `arity` factor indices per node, row-major.
    tuples: Option<(usize, Vec<u32>)>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl ReconfigGraph {
    pub fn seed(&self) -> Option<&SeedGraph> {
        self.seed.as_ref()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Vertex sets of the nodes; empty for product graphs.
    pub fn nodes(&self) -> &[VertexSet] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> Option<VertexSet> {
        self.nodes.get(i).copied()
    }

    /// Factor indices of node `i` in a product graph.
    pub fn tuple(&self, i: usize) -> Option<&[u32]> {
        self.tuples
            .as_ref()
            .map(|(arity, data)| &data[i * arity..(i + 1) * arity])
    }

    pub fn is_seed_built(&self) -> bool {
        self.seed.is_some()
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&(j as u32)).is_ok()
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .map(|&j| j as usize)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    pub fn index_of(&self, s: VertexSet) -> Option<usize> {
        self.nodes.binary_search(&s).ok()
    }

    /// Index of the product node with the given factor indices.
    pub fn index_of_tuple(&self, tuple: &[u32]) -> Option<usize> {
        let (arity, data) = self.tuples.as_ref()?;
        if tuple.len() != *arity {
            return None;
        }
        let (mut lo, mut hi) = (0, self.node_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match data[mid * arity..(mid + 1) * arity].cmp(tuple) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for d in self.degrees() {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    pub fn node_label(&self, i: usize, style: LabelStyle) -> String {
        if let Some(s) = self.node(i) {
            return match style {
                LabelStyle::Set => s.to_string(),
                LabelStyle::Bits => s.bitstring(),
            };
        }
        match self.tuple(i) {
            Some(t) => {
                let parts: Vec<String> = t.iter().map(u32::to_string).collect();
                format!("({})", parts.join(","))
            }
            None => i.to_string(),
        }
    }

    pub fn to_dot(&self, style: LabelStyle) -> String {
        let mut s = String::from("graph D {\n");
        for i in 0..self.node_count() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", self.node_label(i, style));
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  n{i} -- n{j};");
        }
        s.push_str("}\n");
        s
    }

    /// `node_id,neighbor_ids` rows, neighbor ids space-separated.
    pub fn to_adjacency_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["node_id", "neighbor_ids"]).map_err(io)?;
        for i in 0..self.node_count() {
            let nb: Vec<String> = self.neighbors(i).iter().map(u32::to_string).collect();
            w.write_record([i.to_string(), nb.join(" ")]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    fn from_rows(
        seed: Option<SeedGraph>,
        k: usize,
        nodes: Vec<VertexSet>,
        tuples: Option<(usize, Vec<u32>)>,
        rows: impl Iterator<Item = Vec<u32>>,
        node_count: usize,
    ) -> Self {
        let mut offsets = Vec::with_capacity(node_count + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for row in rows {
            targets.extend_from_slice(&row);
            offsets.push(targets.len());
        }
        ReconfigGraph {
            seed,
            k,
            nodes,
            tuples,
            offsets,
            targets,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelStyle {
    #[default]
    Set,
    Bits,
}

pub fn build_reconfig(g: &SeedGraph, k: usize) -> Result<ReconfigGraph> {
    build_reconfig_capped(g, k, DEFAULT_NODE_CAP)
}

pub fn build_reconfig_capped(g: &SeedGraph, k: usize, node_cap: usize) -> Result<ReconfigGraph> {
    let n = g.n();
    if k > n {
        return Err(Error::BoundExceeded(format!(
            "k = {k} exceeds the vertex count {n}"
        )));
    }
    let table = CoverTable::new(g);
    let masks = dominating_masks(&table, n, k, node_cap)?;
    if masks.is_empty() {
        let gamma = crate::domination::domination_number(g)?;
        return Err(Error::BoundBelowGamma { k, gamma });
    }
    let lookup: Box<dyn Fn(u32) -> u32> = if n <= DENSE_INDEX_MAX_N {
        let mut dense = vec![u32::MAX; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            dense[m as usize] = i as u32;
        }
        Box::new(move |m| dense[m as usize])
    } else {
        let masks = masks.clone();
        Box::new(move |m| {
            masks
                .binary_search_by_key(&(m.count_ones(), m), |&x| (x.count_ones(), x))
                .expect("neighbor set is a node") as u32
        })
    };
    let full = g.vertex_mask();
    let rows = masks.iter().map(|&s| {
        let mut row: Vec<u32> = bits(s)
            .map(|v| s & !(1 << v))
            .filter(|&t| table.dominates(t))
            .map(&lookup)
            .collect();
        if (s.count_ones() as usize) < k {
            // supersets of dominating sets dominate
            row.extend(bits(full & !s).map(|v| lookup(s | 1 << v)));
        }
        row.sort_unstable();
        row
    });
    let rows: Vec<Vec<u32>> = rows.collect();
    let nodes = masks.iter().map(|&m| VertexSet::from_raw(n, m)).collect();
    Ok(ReconfigGraph::from_rows(
        Some(g.clone()),
        k,
        nodes,
        None,
        rows.into_iter(),
        masks.len(),
    ))
}

/// Degree of `s` in `D_k(g)` without materializing the graph.
pub fn node_degree(g: &SeedGraph, s: VertexSet, k: usize) -> Result<usize> {
    if s.n() != g.n() {
        return Err(Error::DimensionMismatch {
            set: s.n(),
            graph: g.n(),
        });
    }
    let table = CoverTable::new(g);
    if !table.dominates(s.bits()) {
        return Err(Error::NotDominating(s.to_string()));
    }
    if s.len() > k {
        return Err(Error::AboveBound {
            set: s.to_string(),
            k,
        });
    }
    let up = if s.len() < k { g.n() - s.len() } else { 0 };
    Ok(table.removable_count(s.bits()) + up)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub odd_degree_count: usize,
    /// Up to [`WITNESS_CAP`] node indices of odd degree.
    pub odd_degree_nodes: Vec<usize>,
    pub isolated_count: usize,
    pub nontrivial_component_count: usize,
    pub is_connected: bool,
    pub is_eulerian: bool,
}

/// Component id of every node, numbered in order of first appearance.
pub fn component_ids(r: &ReconfigGraph) -> (Vec<u32>, usize) {
    let count = r.node_count();
    let mut comp = vec![u32::MAX; count];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for s in 0..count {
        if comp[s] != u32::MAX {
            continue;
        }
        comp[s] = next;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in r.neighbors(v) {
                if comp[u as usize] == u32::MAX {
                    comp[u as usize] = next;
                    queue.push_back(u as usize);
                }
            }
        }
        next += 1;
    }
    (comp, next as usize)
}

pub fn eulerian_report(r: &ReconfigGraph) -> EulerReport {
    let (comp, components) = component_ids(r);
    let mut nontrivial = vec![false; components];
    let mut odd = Vec::new();
    let mut odd_count = 0;
    let mut isolated = 0;
    for (i, d) in r.degrees().enumerate() {
        if d == 0 {
            isolated += 1;
        } else {
            nontrivial[comp[i] as usize] = true;
        }
        if d % 2 == 1 {
            odd_count += 1;
            if odd.len() < WITNESS_CAP {
                odd.push(i);
            }
        }
    }
    let nontrivial_component_count = nontrivial.iter().filter(|&&b| b).count();
    EulerReport {
        node_count: r.node_count(),
        edge_count: r.edge_count(),
        odd_degree_count: odd_count,
        odd_degree_nodes: odd,
        isolated_count: isolated,
        nontrivial_component_count,
        is_connected: components <= 1,
        is_eulerian: odd_count == 0 && nontrivial_component_count <= 1,
    }
}

/// Euler circuit of the unique non-trivial component as a node sequence of
/// length `edge_count + 1`. Always follows the lowest-index unused edge.
pub fn euler_circuit(r: &ReconfigGraph) -> Result<Vec<usize>> {
    if !eulerian_report(r).is_eulerian {
        return Err(Error::NotEulerian);
    }
    if r.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    // Edge id for every adjacency slot; both directions share an id.
    let mut slot_edge = vec![u32::MAX; r.targets.len()];
    let mut next_id = 0u32;
    for i in 0..r.node_count() {
        for (p, &j) in r.neighbors(i).iter().enumerate() {
            let j = j as usize;
            if i < j {
                slot_edge[r.offsets[i] + p] = next_id;
                let q = r
                    .neighbors(j)
                    .binary_search(&(i as u32))
                    .expect("symmetric");
                slot_edge[r.offsets[j] + q] = next_id;
                next_id += 1;
            }
        }
    }
    let mut used = vec![false; next_id as usize];
    let mut cursor: Vec<usize> = r.offsets[..r.node_count()].to_vec();
    let start = (0..r.node_count())
        .find(|&i| r.degree(i) > 0)
        .expect("has edges");
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(r.edge_count() + 1);
    while let Some(&v) = stack.last() {
        let end = r.offsets[v + 1];
        while cursor[v] < end && used[slot_edge[cursor[v]] as usize] {
            cursor[v] += 1;
        }
        if cursor[v] == end {
            circuit.push(v);
            stack.pop();
        } else {
            let slot = cursor[v];
            used[slot_edge[slot] as usize] = true;
            cursor[v] += 1;
            stack.push(r.targets[slot] as usize);
        }
    }
    circuit.reverse();
    Ok(circuit)
}

/// Cartesian product with the default node cap.
pub fn cartesian_product(a: &ReconfigGraph, b: &ReconfigGraph) -> Result<ReconfigGraph> {
    cartesian_product_capped(a, b, DEFAULT_NODE_CAP)
}

pub fn cartesian_product_capped(
    a: &ReconfigGraph,
    b: &ReconfigGraph,
    node_cap: usize,
) -> Result<ReconfigGraph> {
    let (na, nb) = (a.node_count(), b.node_count());
    let count = na
        .checked_mul(nb)
        .filter(|&c| c <= node_cap)
        .ok_or(Error::ReconfigTooLarge { cap: node_cap })?;
    let label = |r: &ReconfigGraph, i: usize| -> Vec<u32> {
        r.tuple(i).map_or_else(|| vec![i as u32], <[u32]>::to_vec)
    };
    let arity = label(a, 0).len() + label(b, 0).len();
    let mut data = Vec::with_capacity(count * arity);
    for u in 0..na {
        let lu = label(a, u);
        for v in 0..nb {
            data.extend_from_slice(&lu);
            data.extend(label(b, v));
        }
    }
    // (x, v) for x < u, then (u, y), then (x, v) for x > u: already sorted.
    let rows = (0..count).map(|idx| {
        let (u, v) = (idx / nb, idx % nb);
        let mut row = Vec::with_capacity(a.degree(u) + b.degree(v));
        let (below, above): (Vec<u32>, Vec<u32>) =
            a.neighbors(u).iter().partition(|&&x| (x as usize) < u);
        row.extend(below.iter().map(|&x| (x as usize * nb + v) as u32));
        row.extend(b.neighbors(v).iter().map(|&y| (u * nb + y as usize) as u32));
        row.extend(above.iter().map(|&x| (x as usize * nb + v) as u32));
        row
    });
    let rows: Vec<Vec<u32>> = rows.collect();
    Ok(ReconfigGraph::from_rows(
        None,
        a.k + b.k,
        Vec::new(),
        Some((arity, data)),
        rows.into_iter(),
        count,
    ))
}

/// True iff every edge joins sets whose cardinalities differ by one.
pub fn parity_bipartition_valid(r: &ReconfigGraph) -> Result<bool> {
    if !r.is_seed_built() {
        return Err(Error::NotSeedBuilt);
    }
    Ok(r.edges()
        .all(|(i, j)| r.nodes[i].len().abs_diff(r.nodes[j].len()) == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::enumerate_dominating_sets;
    use crate::graph::{make_family, FamilySpec};

    fn fam(spec: FamilySpec) -> SeedGraph {
        make_family(&spec).unwrap()
    }

    fn build(spec: FamilySpec, k: usize) -> ReconfigGraph {
        build_reconfig(&fam(spec), k).unwrap()
    }

    #[test]
    fn p4_k3_has_eight_nodes() {
        let r = build(FamilySpec::Path { n: 4 }, 3);
        assert_eq!(r.node_count(), 8);
        assert!(eulerian_report(&r).is_eulerian);
    }

    #[test]
    fn star_leaves_isolated() {
        let g = fam(FamilySpec::Star { n: 3 });
        let r = build_reconfig(&g, 3).unwrap();
        let leaves = VertexSet::from_vertices(4, [1, 2, 3]).unwrap();
        let i = r.index_of(leaves).unwrap();
        assert_eq!(r.degree(i), 0);
    }

    #[test]
    fn triangle_k2_all_degree_two() {
        let r = build(FamilySpec::Cycle { n: 3 }, 2);
        assert!(r.degrees().all(|d| d == 2));
    }

    #[test]
    fn degree_formula_examples() {
        let p5 = fam(FamilySpec::Path { n: 5 });
        assert_eq!(node_degree(&p5, VertexSet::full(5).unwrap(), 5).unwrap(), 5);
        let c9 = fam(FamilySpec::Cycle { n: 9 });
        let min = VertexSet::from_vertices(9, [0, 3, 6]).unwrap();
        for k in 4..=9 {
            assert_eq!(node_degree(&c9, min, k).unwrap(), 6);
        }
        let h8 = fam(FamilySpec::Cocktail { n: 8 });
        let pair = VertexSet::from_vertices(8, [0, 1]).unwrap();
        assert_eq!(node_degree(&h8, pair, 8).unwrap(), 6);
    }

    #[test]
    fn degree_errors() {
        let p4 = fam(FamilySpec::Path { n: 4 });
        let s = VertexSet::from_vertices(4, [0]).unwrap();
        assert!(matches!(
            node_degree(&p4, s, 4),
            Err(Error::NotDominating(_))
        ));
        let full = VertexSet::full(4).unwrap();
        assert!(matches!(
            node_degree(&p4, full, 3),
            Err(Error::AboveBound { .. })
        ));
    }

    #[test]
    fn build_errors() {
        let p6 = fam(FamilySpec::Path { n: 6 });
        assert!(matches!(
            build_reconfig(&p6, 1),
            Err(Error::BoundBelowGamma { k: 1, gamma: 2 })
        ));
        assert!(matches!(
            build_reconfig_capped(&p6, 6, 5),
            Err(Error::ReconfigTooLarge { cap: 5 })
        ));
    }

    #[test]
    fn cycle_verdicts() {
        let r = build(FamilySpec::Cycle { n: 4 }, 3);
        let rep = eulerian_report(&r);
        assert!(!rep.is_eulerian);
        let witness = VertexSet::from_vertices(4, [0, 1, 2]).unwrap();
        let w = r.index_of(witness).unwrap();
        assert!(rep.odd_degree_nodes.contains(&w));
        assert_eq!(r.degree(w), 3);
        assert!(eulerian_report(&build(FamilySpec::Cycle { n: 7 }, 4)).is_eulerian);
    }

    fn replay(r: &ReconfigGraph, walk: &[usize]) {
        assert_eq!(walk.len(), r.edge_count() + 1);
        assert_eq!(walk.first(), walk.last());
        let mut seen = std::collections::HashSet::new();
        for w in walk.windows(2) {
            assert!(r.has_edge(w[0], w[1]));
            assert!(seen.insert((w[0].min(w[1]), w[0].max(w[1]))), "edge reused");
        }
        assert_eq!(seen.len(), r.edge_count());
    }

    #[test]
    fn circuits() {
        for (spec, k) in [
            (FamilySpec::Cycle { n: 3 }, 2),
            (FamilySpec::Path { n: 4 }, 3),
            (FamilySpec::Cycle { n: 7 }, 4),
            (FamilySpec::Cocktail { n: 6 }, 6),
        ] {
            let r = build(spec, k);
            replay(&r, &euler_circuit(&r).unwrap());
        }
        let c4 = build(FamilySpec::Cycle { n: 4 }, 3);
        assert_eq!(euler_circuit(&c4), Err(Error::NotEulerian));
        let edgeless = build(FamilySpec::Cycle { n: 6 }, 2);
        assert_eq!(edgeless.edge_count(), 0);
        assert!(eulerian_report(&edgeless).is_eulerian);
        assert_eq!(euler_circuit(&edgeless), Err(Error::NoEdges));
    }

    #[test]
    fn circuit_is_deterministic() {
        let r = build(FamilySpec::Cycle { n: 3 }, 2);
        let walk = euler_circuit(&r).unwrap();
        assert_eq!(walk[0], 0);
        // lowest-index neighbor first
        assert_eq!(walk[1], r.neighbors(0)[0] as usize);
        assert_eq!(walk, euler_circuit(&r).unwrap());
    }

    #[test]
    fn products() {
        let p2 = build(FamilySpec::Path { n: 2 }, 2);
        assert_eq!(p2.node_count(), 3);
        let prod = cartesian_product(&p2, &p2).unwrap();
        assert_eq!(prod.node_count(), 9);
        for i in 0..prod.node_count() {
            let t = prod.tuple(i).unwrap();
            assert_eq!(
                prod.degree(i),
                p2.degree(t[0] as usize) + p2.degree(t[1] as usize)
            );
            assert_eq!(prod.index_of_tuple(t), Some(i));
        }
        let trip = cartesian_product(&prod, &p2).unwrap();
        assert_eq!(trip.tuple(26).unwrap(), &[2, 2, 2]);
        assert!(matches!(
            parity_bipartition_valid(&prod),
            Err(Error::NotSeedBuilt)
        ));
        assert!(matches!(
            cartesian_product_capped(&prod, &p2, 20),
            Err(Error::ReconfigTooLarge { .. })
        ));
    }

    #[test]
    fn identity_factor() {
        let k1 = build_reconfig(&SeedGraph::empty(1).unwrap(), 1).unwrap();
        assert_eq!(k1.node_count(), 1);
        let b = build(FamilySpec::Cycle { n: 5 }, 4);
        let prod = cartesian_product(&k1, &b).unwrap();
        assert_eq!(prod.node_count(), b.node_count());
        let edges: Vec<_> = prod.edges().collect();
        assert_eq!(edges, b.edges().collect::<Vec<_>>());
    }

    #[test]
    fn bipartition() {
        assert!(parity_bipartition_valid(&build(FamilySpec::Path { n: 4 }, 4)).unwrap());
        assert!(parity_bipartition_valid(&build(FamilySpec::Cycle { n: 7 }, 4)).unwrap());
        let g = fam(FamilySpec::CompleteBipartite { m: 3, n: 3 });
        let r = build_reconfig(&g, 3).unwrap();
        assert!(parity_bipartition_valid(&r).unwrap());
        // brute-force count of dominating sets of K_{3,3}
        let count = (0u32..64)
            .filter(|&m| {
                (0..6)
                    .all(|v| m >> v & 1 == 1 || (0..6).any(|u| m >> u & 1 == 1 && g.has_edge(u, v)))
            })
            .count();
        assert_eq!(count % 2, 1);
        assert_eq!(build_reconfig(&g, 6).unwrap().node_count(), count);
    }

    #[test]
    fn node_order_matches_enumeration() {
        let g = fam(FamilySpec::Cycle { n: 8 });
        let r = build_reconfig(&g, 5).unwrap();
        assert_eq!(
            r.nodes(),
            enumerate_dominating_sets(&g, 5).unwrap().as_slice()
        );
    }

    #[test]
    fn large_seed_uses_sparse_index() {
        // K_22 with k = 2: 22 + 231 nodes
        let g = fam(FamilySpec::Complete { n: 22 });
        let r = build_reconfig(&g, 2).unwrap();
        assert_eq!(r.node_count(), 22 + 231);
        assert!(r.degrees().take(22).all(|d| d == 21));
        assert!(r.degrees().skip(22).all(|d| d == 2));
    }

    #[test]
    fn exports() {
        let r = build(FamilySpec::Path { n: 2 }, 2);
        let dot = r.to_dot(LabelStyle::Set);
        assert!(dot.contains("n0 [label=\"{0}\"];"));
        assert!(dot.contains("n0 -- n2;"));
        assert!(r.to_dot(LabelStyle::Bits).contains("label=\"11\""));
        let csv = r.to_adjacency_csv().unwrap();
        assert_eq!(csv, "node_id,neighbor_ids\n0,2\n1,2\n2,0 1\n");
    }
}
