//! Seed graphs: small simple undirected graphs stored as per-vertex
//! neighbor bitmasks, plus the canonical families and exhaustive
//! enumeration of labeled graphs.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on seed-graph order. Vertex sets are single `u32` words and
/// subset enumeration is `2^n`.
pub const MAX_VERTICES: usize = 26;

/// Largest order accepted by [`enumerate_labeled_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 7;

#[derive(Debug, Clone)]
pub struct SeedGraph {
    n: usize,
    adj: Vec<u32>,
    name: Option<String>,
}

impl PartialEq for SeedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for SeedGraph {}

impl SeedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(SeedGraph {
            n,
            adj: vec![0; n],
            name: None,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SeedGraph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks, validating every invariant.
    pub fn from_adjacency(adj: Vec<u32>) -> Result<Self> {
        let n = adj.len();
        check_capacity(n)?;
        let full = full_mask(n);
        for (v, &nb) in adj.iter().enumerate() {
            if nb & !full != 0 {
                return Err(Error::InvalidFamilyParameters(format!(
                    "neighbors of vertex {v} fall outside [0, {n})"
                )));
            }
            if nb & (1 << v) != 0 {
                return Err(Error::InvalidFamilyParameters(format!(
                    "self-loop at vertex {v}"
                )));
            }
            for u in bits(nb) {
                if adj[u] & (1 << v) == 0 {
                    return Err(Error::InvalidFamilyParameters(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
        }
        Ok(SeedGraph { n, adj, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidFamilyParameters(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidFamilyParameters(format!(
                "self-loop at vertex {u}"
            )));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adj(&self) -> &[u32] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    /// Closed neighborhood `N[v]` as a mask.
    #[inline]
    pub fn closed_neighborhood(&self, v: usize) -> u32 {
        self.adj[v] | (1 << v)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Mask with every vertex bit set.
    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0) == self.vertex_mask()
    }

    /// Vertices reachable from `start`, as a mask.
    fn reach(&self, start: usize) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for u in bits(self.adj[v]) {
                    match color[u] {
                        None => {
                            color[u] = Some(!c);
                            stack.push(u);
                        }
                        Some(cu) if cu == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced by `mask`, relabeled to `0..popcount(mask)` in
    /// increasing vertex order.
    pub fn induced(&self, mask: u32) -> SeedGraph {
        let verts: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut adj = vec![0u32; verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for (j, &u) in verts.iter().enumerate() {
                if self.adj[v] & (1 << u) != 0 {
                    adj[i] |= 1 << j;
                }
            }
        }
        SeedGraph {
            n: verts.len(),
            adj,
            name: None,
        }
    }

    /// Undirected DOT rendering with vertex ids as labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for SeedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "{name}"),
            None => write!(f, "{}", crate::graph6::encode_graph6(self)),
        }
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the indices of set bits in increasing order.
#[inline]
pub fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::CapacityExceeded {
            n,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FamilySpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    Star {
        n: usize,
    },
    Cocktail {
        n: usize,
    },
    Turan {
        n: usize,
        r: usize,
    },
    Corona {
        inner: Box<FamilySpec>,
    },
    DisjointUnion {
        left: Box<FamilySpec>,
        right: Box<FamilySpec>,
    },
}

impl FamilySpec {
    pub fn corona(inner: FamilySpec) -> Self {
        FamilySpec::Corona {
            inner: Box::new(inner),
        }
    }

    pub fn union(left: FamilySpec, right: FamilySpec) -> Self {
        FamilySpec::DisjointUnion {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Vertex count of the graph this spec produces.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Cocktail { n }
            | FamilySpec::Turan { n, .. } => *n,
            FamilySpec::CompleteBipartite { m, n } => m + n,
            FamilySpec::Star { n } => n + 1,
            FamilySpec::Corona { inner } => 2 * inner.order(),
            FamilySpec::DisjointUnion { left, right } => left.order() + right.order(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite { m, n } => write!(f, "biclique:{m},{n}"),
            FamilySpec::Star { n } => write!(f, "star:{n}"),
            FamilySpec::Cocktail { n } => write!(f, "cocktail:{n}"),
            FamilySpec::Turan { n, r } => write!(f, "turan:{n},{r}"),
            FamilySpec::Corona { inner } => write!(f, "corona:{inner}"),
            FamilySpec::DisjointUnion { left, right } => {
                write!(f, "union:{}+{}", union_part(left), union_part(right))
            }
        }
    }
}

// Nested unions flatten into one `+`-separated list.
fn union_part(spec: &FamilySpec) -> String {
    match spec {
        FamilySpec::DisjointUnion { left, right } => {
            format!("{}+{}", union_part(left), union_part(right))
        }
        other => other.to_string(),
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFamilyParameters(msg.into())
}

/// Builds the canonical labeled member of a family.
pub fn make_family(spec: &FamilySpec) -> Result<SeedGraph> {
    let order = spec.order();
    check_capacity(order)?;
    let g = match spec {
        FamilySpec::Path { n } => {
            if *n < 1 {
                return Err(invalid("path requires n >= 1"));
            }
            SeedGraph::from_edges(*n, (1..*n).map(|i| (i - 1, i)))?
        }
        FamilySpec::Cycle { n } => {
            if *n < 3 {
                return Err(invalid("cycle requires n >= 3"));
            }
            SeedGraph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n)))?
        }
        FamilySpec::Complete { n } => {
            if *n < 1 {
                return Err(invalid("complete requires n >= 1"));
            }
            complete(*n)
        }
        FamilySpec::CompleteBipartite { m, n } => {
            if *m < 1 || *n < 1 {
                return Err(invalid("complete_bipartite requires m, n >= 1"));
            }
            biclique(*m, *n)?
        }
        FamilySpec::Star { n } => {
            if *n < 1 {
                return Err(invalid("star requires n >= 1"));
            }
            biclique(1, *n)?
        }
        FamilySpec::Cocktail { n } => {
            if *n < 4 || n % 2 != 0 {
                return Err(invalid("cocktail requires an even n >= 4"));
            }
            let mut g = complete(*n);
            for i in 0..n / 2 {
                g.remove_edge(2 * i, 2 * i + 1);
            }
            g
        }
        FamilySpec::Turan { n, r } => {
            if *r < 1 || n < r {
                return Err(invalid("turan requires n >= r >= 1"));
            }
            turan(*n, *r)?
        }
        FamilySpec::Corona { inner } => {
            if inner.order() < 2 {
                return Err(invalid("corona requires an inner graph with n >= 2"));
            }
            corona(&make_family(inner)?)?
        }
        FamilySpec::DisjointUnion { left, right } => {
            disjoint_union(&make_family(left)?, &make_family(right)?)?
        }
    };
    Ok(g.with_name(spec.to_string()))
}

fn complete(n: usize) -> SeedGraph {
    let full = full_mask(n);
    SeedGraph {
        n,
        adj: (0..n).map(|v| full & !(1 << v)).collect(),
        name: None,
    }
}

fn biclique(m: usize, n: usize) -> Result<SeedGraph> {
    let left = full_mask(m);
    let right = full_mask(m + n) & !left;
    let adj = (0..m + n)
        .map(|v| if v < m { right } else { left })
        .collect();
    SeedGraph::from_adjacency(adj)
}

// Parts are contiguous blocks; the first `n mod r` parts get the extra vertex.
fn turan(n: usize, r: usize) -> Result<SeedGraph> {
    let (base, extra) = (n / r, n % r);
    let mut part = vec![0u32; n];
    let mut start = 0;
    for p in 0..r {
        let size = base + usize::from(p < extra);
        let mask = full_mask(start + size) & !full_mask(start);
        for slot in &mut part[start..start + size] {
            *slot = mask;
        }
        start += size;
    }
    let full = full_mask(n);
    SeedGraph::from_adjacency(part.iter().map(|p| full & !p).collect())
}

/// `G ∘ K_1`: pendant vertex `n + i` attached to each vertex `i`.
pub fn corona(g: &SeedGraph) -> Result<SeedGraph> {
    let n = g.n;
    check_capacity(2 * n)?;
    let mut out = SeedGraph::empty(2 * n)?;
    out.adj[..n].copy_from_slice(&g.adj);
    for i in 0..n {
        out.add_edge(i, n + i)?;
    }
    Ok(out)
}

/// Disjoint union; the second operand is shifted by `a.n()`.
pub fn disjoint_union(a: &SeedGraph, b: &SeedGraph) -> Result<SeedGraph> {
    let n = a.n + b.n;
    check_capacity(n)?;
    let mut adj = a.adj.clone();
    adj.extend(b.adj.iter().map(|&m| m << a.n));
    Ok(SeedGraph { n, adj, name: None })
}

/// True iff `g` is `K_n` minus a perfect matching with `n >= 4` even.
pub fn is_cocktail_party(g: &SeedGraph) -> bool {
    let n = g.n;
    if n < 4 || n % 2 != 0 {
        return false;
    }
    let full = g.vertex_mask();
    (0..n).all(|v| {
        let missing = full & !g.closed_neighborhood(v);
        if missing.count_ones() != 1 {
            return false;
        }
        let partner = missing.trailing_zeros() as usize;
        full & !g.closed_neighborhood(partner) == 1 << v
    })
}

/// Component vertex masks, ordered by minimum vertex.
pub fn connected_components(g: &SeedGraph) -> Vec<u32> {
    let mut left = g.vertex_mask();
    let mut out = Vec::new();
    while left != 0 {
        let comp = g.reach(left.trailing_zeros() as usize);
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Potential edges of `K_n` in graph6 order: `(i, j)` with `i < j`, by `j` then `i`.
pub fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Labeled graph whose edge set is selected by `mask` over [`edge_slots`].
pub fn labeled_graph(n: usize, mask: u64) -> Result<SeedGraph> {
    check_capacity(n)?;
    let slots = edge_slots(n);
    if slots.len() < 64 && mask >> slots.len() != 0 {
        return Err(invalid(format!(
            "edge mask {mask:#x} too wide for {n} vertices"
        )));
    }
    Ok(graph_from_slots(n, &slots, mask))
}

/// Unchecked form of [`labeled_graph`] with precomputed slots.
pub(crate) fn graph_from_slots(n: usize, slots: &[(usize, usize)], mask: u64) -> SeedGraph {
    let mut adj = vec![0u32; n];
    for (b, &(i, j)) in slots.iter().enumerate() {
        if mask >> b & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    SeedGraph { n, adj, name: None }
}

/// All labeled graphs on `n` vertices, ordered by edge mask.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    slots: Vec<(usize, usize)>,
    next: u64,
    end: u64,
    connected_only: bool,
}

impl LabeledGraphs {
    pub fn total(&self) -> u64 {
        self.end
    }

    /// Restricts the stream to edge masks in `[start, end)`.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.next = start.min(self.end);
        self.end = end.min(self.end);
        self
    }
}

impl Iterator for LabeledGraphs {
    type Item = SeedGraph;

    fn next(&mut self) -> Option<SeedGraph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let g = graph_from_slots(self.n, &self.slots, mask);
            if !self.connected_only || g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}

pub fn enumerate_labeled_graphs(n: usize, connected_only: bool) -> Result<LabeledGraphs> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::BoundExceeded(format!(
            "labeled graph enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let slots = edge_slots(n);
    let end = 1u64 << slots.len();
    Ok(LabeledGraphs {
        n,
        slots,
        next: 0,
        end,
        connected_only,
    })
}
