//! Graphs with dense edge indexing, random generation, and the shared-label
//! coupling.
//!
//! Edges are indexed row-major over the upper triangle of the vertex grid,
//! so the pair (u, v) with u < v sits at a fixed position independent of
//! which edges exist. Every [`EdgeSubset`] remembers which graph's indexing
//! its bits refer to; mixing hosts is an error rather than silent drift.

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};

static NEXT_HOST_ID: AtomicU64 = AtomicU64::new(1);

/// Row-major upper-triangle index of the pair (u, v), u < v.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Total number of vertex pairs.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: usize, mut idx: usize) -> (usize, usize) {
    debug_assert!(idx < pair_count(n));
    let mut u = 0usize;
    loop {
        let row = n - u - 1;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}

/// A simple undirected graph on vertices [0, n) with loop-free, duplicate-free
/// edges held in index order.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    host_id: u64,
}

impl LabeledGraph {
    pub fn from_edges(n: usize, mut edges: Vec<(u32, u32)>) -> Result<Self> {
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(Error::Degenerate(format!("loop at vertex {}", e.0)));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.1 as usize >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: e.1 as usize,
                    n,
                });
            }
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate("duplicate edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        Ok(LabeledGraph {
            n,
            edges,
            adj,
            host_id: NEXT_HOST_ID.fetch_add(1, Ordering::Relaxed),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, Vec::new()).expect("empty graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(pair_count(n));
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u as u32, v as u32));
            }
        }
        Self::from_edges(n, edges).expect("complete graph is valid")
    }

    /// Cycle on n >= 3 vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges = (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect();
        Self::from_edges(n, edges).expect("cycle is valid")
    }

    /// Path on n vertices (n - 1 edges).
    pub fn path(n: usize) -> Self {
        let edges = (0..n.saturating_sub(1))
            .map(|i| (i as u32, (i + 1) as u32))
            .collect();
        Self::from_edges(n, edges).expect("path is valid")
    }

    /// Star with `leaves` leaves; vertex 0 is the center.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|i| (0u32, i as u32)).collect();
        Self::from_edges(leaves + 1, edges).expect("star is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn host_id(&self) -> u64 {
        self.host_id
    }

    /// Edges in index order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> (u32, u32) {
        self.edges[idx]
    }

    /// Position of the pair in the edge list, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u == v || u >= self.n || v >= self.n {
            return None;
        }
        let key = if u < v {
            (u as u32, v as u32)
        } else {
            (v as u32, u as u32)
        };
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Adjacency rows as bitsets (n bits each); built on demand by callers
    /// that batch triangle or common-neighbor queries.
    pub fn adjacency_bits(&self) -> Vec<Gf2Vector> {
        let mut rows = vec![Gf2Vector::zeros(self.n); self.n];
        for &(u, v) in &self.edges {
            rows[u as usize].set(v as usize);
            rows[v as usize].set(u as usize);
        }
        rows
    }

    /// Connected components as sorted vertex lists, in order of least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s as u32];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        stack.push(w as usize);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Bridge edges (edge indices), via Tarjan lowlinks.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0usize;
        // Iterative DFS frames: (vertex, parent edge index, neighbor cursor).
        let mut frames: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            frames.push((root, usize::MAX, 0));
            while !frames.is_empty() {
                let fi = frames.len() - 1;
                let (u, pe, cur) = frames[fi];
                if cur < self.adj[u].len() {
                    frames[fi].2 += 1;
                    let w = self.adj[u][cur] as usize;
                    let ei = self.edge_index(u, w).expect("adjacency edge exists");
                    if ei == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        frames.push((w, ei, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(parent, _, _)) = frames.last() {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] > disc[parent] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Fresh all-zero subset over this graph's edges.
    pub fn empty_subset(&self) -> EdgeSubset {
        EdgeSubset {
            host_id: self.host_id,
            vec: Gf2Vector::zeros(self.m()),
        }
    }

    pub fn subset_from_vec(&self, vec: Gf2Vector) -> Result<EdgeSubset> {
        if vec.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: vec.len(),
            });
        }
        Ok(EdgeSubset {
            host_id: self.host_id,
            vec,
        })
    }

    pub fn subset_from_edge_indices(&self, idxs: &[usize]) -> EdgeSubset {
        EdgeSubset {
            host_id: self.host_id,
            vec: Gf2Vector::from_support(self.m(), idxs),
        }
    }

    /// Star of v as an edge subset.
    pub fn vertex_star(&self, v: usize) -> Result<EdgeSubset> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let idxs: Vec<usize> = self.adj[v]
            .iter()
            .map(|&w| self.edge_index(v, w as usize).expect("adjacency edge"))
            .collect();
        Ok(self.subset_from_edge_indices(&idxs))
    }

    /// Serializes as "n m" followed by one "u v" line per edge in index
    /// order; the round trip is bit-exact.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {}", self.n, self.m())?;
        for &(u, v) in &self.edges {
            writeln!(w, "{} {}", u, v)?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::BadGraphFile("empty file".into()))??;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadGraphFile("bad header".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BadGraphFile("bad header".into()))?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| Error::BadGraphFile("missing edge line".into()))??;
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::BadGraphFile(format!("bad edge line: {line}")))?;
            let v: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::BadGraphFile(format!("bad edge line: {line}")))?;
            if u >= v {
                return Err(Error::BadGraphFile(format!(
                    "edge {u} {v} not in canonical u < v order"
                )));
            }
            edges.push((u, v));
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadGraphFile("edges not in index order".into()));
        }
        Self::from_edges(n, edges)
    }
}

/// An element of the host graph's edge space.
#[derive(Clone, Debug)]
pub struct EdgeSubset {
    host_id: u64,
    vec: Gf2Vector,
}

impl EdgeSubset {
    pub fn vec(&self) -> &Gf2Vector {
        &self.vec
    }

    pub fn into_vec(self) -> Gf2Vector {
        self.vec
    }

    pub fn weight(&self) -> usize {
        self.vec.weight()
    }

    pub fn is_empty_set(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn check_host(&self, g: &LabeledGraph) -> Result<()> {
        if self.host_id != g.host_id {
            return Err(Error::HostMismatch);
        }
        Ok(())
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.vec.get(idx)
    }

    /// Edges of the subset as vertex pairs.
    pub fn edge_pairs(&self, g: &LabeledGraph) -> Result<Vec<(u32, u32)>> {
        self.check_host(g)?;
        Ok(self.vec.support().iter().map(|&i| g.edge(i)).collect())
    }

    /// Degree of v within the subset.
    pub fn degree(&self, g: &LabeledGraph, v: usize) -> Result<usize> {
        self.check_host(g)?;
        let mut d = 0;
        for &w in g.neighbors(v) {
            let idx = g.edge_index(v, w as usize).expect("adjacency edge");
            if self.vec.get(idx) {
                d += 1;
            }
        }
        Ok(d)
    }

    pub fn xor_assign(&mut self, other: &EdgeSubset) -> Result<()> {
        if self.host_id != other.host_id {
            return Err(Error::HostMismatch);
        }
        self.vec.xor_assign(&other.vec);
        Ok(())
    }

    /// Re-expresses this subset (held over `g`) in the indexing of a
    /// subgraph `sub` of `g`: bit e of the result is set iff `sub` has the
    /// edge and this subset contains it. Realizes intersection-with-`sub`.
    pub fn restrict_to(&self, g: &LabeledGraph, sub: &LabeledGraph) -> Result<EdgeSubset> {
        self.check_host(g)?;
        let mut vec = Gf2Vector::zeros(sub.m());
        for (i, &(u, v)) in sub.edges().iter().enumerate() {
            if let Some(gi) = g.edge_index(u as usize, v as usize) {
                if self.vec.get(gi) {
                    vec.set(i);
                }
            }
        }
        Ok(EdgeSubset {
            host_id: sub.host_id,
            vec,
        })
    }
}

/// G(n, p): each pair present independently with probability p,
/// reproducibly from the seed.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<LabeledGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u as u32, v as u32));
            }
        }
    }
    LabeledGraph::from_edges(n, edges)
}

/// A reusable per-pair uniform label sample: slicing at increasing
/// thresholds yields nested graphs with the G(n, p) marginal at each level.
///
/// Labels are derived lazily from (master_seed, pair index) through a
/// 64-bit mixer, so nothing quadratic is ever materialized.
#[derive(Clone, Copy, Debug)]
pub struct CoupledSample {
    n: usize,
    master_seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable combination of seed words into a fresh 64-bit stream value.
pub fn mix_seed(parts: &[u64]) -> u64 {
    let mut acc = 0x517C_C1B7_2722_0A95_u64;
    for &p in parts {
        acc = splitmix64(acc ^ p);
    }
    acc
}

pub fn gen_coupled(n: usize, master_seed: u64) -> CoupledSample {
    CoupledSample { n, master_seed }
}

impl CoupledSample {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Uniform label of the pair with the given index, in [0, 1).
    pub fn label(&self, pair_idx: usize) -> f64 {
        let z =
            splitmix64(self.master_seed ^ (pair_idx as u64).wrapping_mul(0xA24B_AED4_963E_E407));
        (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// The graph of pairs whose label falls below p.
    pub fn slice(&self, p: f64) -> Result<LabeledGraph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        let mut edges = Vec::new();
        let mut idx = 0usize;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.label(idx) < p {
                    edges.push((u as u32, v as u32));
                }
                idx += 1;
            }
        }
        LabeledGraph::from_edges(self.n, edges)
    }
}

fn check_vertex_set(g: &LabeledGraph, a: &[usize]) -> Result<()> {
    for &v in a {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    Ok(())
}

/// Indicator of the cut between A and its complement: exactly the edges
/// with one endpoint in A.
pub fn cut_vector(g: &LabeledGraph, a: &[usize]) -> Result<EdgeSubset> {
    check_vertex_set(g, a)?;
    let mut in_a = vec![false; g.n()];
    for &v in a {
        in_a[v] = true;
    }
    let mut vec = Gf2Vector::zeros(g.m());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if in_a[u as usize] != in_a[v as usize] {
            vec.set(i);
        }
    }
    g.subset_from_vec(vec)
}

/// Exact (cross-edge count, inside-edge count) for disjoint vertex sets
/// S and T: the size of the S-T cut and of the subgraph induced on S.
pub fn density_report(g: &LabeledGraph, s: &[usize], t: &[usize]) -> Result<(usize, usize)> {
    check_vertex_set(g, s)?;
    check_vertex_set(g, t)?;
    let mut mark = vec![0u8; g.n()];
    for &v in s {
        mark[v] = 1;
    }
    for &v in t {
        if mark[v] == 1 {
            return Err(Error::OverlappingSets(v));
        }
        mark[v] = 2;
    }
    let mut between = 0usize;
    let mut inside = 0usize;
    for &(u, v) in g.edges() {
        let (a, b) = (mark[u as usize], mark[v as usize]);
        if (a == 1 && b == 2) || (a == 2 && b == 1) {
            between += 1;
        } else if a == 1 && b == 1 {
            inside += 1;
        }
    }
    Ok((between, inside))
}

/// Global minimum nonzero cut weight: the least |∇(A)| over vertex sets A
/// whose cut indicator is a nonzero vector. None when no component has two
/// vertices. Stoer-Wagner per component.
pub fn min_nonzero_cut(g: &LabeledGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let w = stoer_wagner(g, &comp);
        best = Some(best.map_or(w, |b| b.min(w)));
    }
    best
}

fn stoer_wagner(g: &LabeledGraph, comp: &[u32]) -> usize {
    let k = comp.len();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        local[v as usize] = i;
    }
    // Dense weight matrix of the induced subgraph; contractions merge rows.
    let mut w = vec![vec![0u64; k]; k];
    for &v in comp {
        for &u in g.neighbors(v as usize) {
            let (a, b) = (local[v as usize], local[u as usize]);
            if a < b {
                w[a][b] += 1;
                w[b][a] += 1;
            }
        }
    }
    let mut active: Vec<usize> = (0..k).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        // Maximum adjacency order.
        let mut weights = vec![0u64; k];
        let mut in_a = vec![false; k];
        let mut prev = usize::MAX;
        let mut last = usize::MAX;
        for _ in 0..active.len() {
            let mut sel = usize::MAX;
            for &v in &active {
                if !in_a[v] && (sel == usize::MAX || weights[v] > weights[sel]) {
                    sel = v;
                }
            }
            in_a[sel] = true;
            prev = last;
            last = sel;
            for &v in &active {
                if !in_a[v] {
                    weights[v] += w[sel][v];
                }
            }
        }
        best = best.min(weights[last]);
        // Contract last into prev.
        for &v in &active {
            if v != last && v != prev {
                w[prev][v] += w[last][v];
                w[v][prev] += w[v][last];
            }
        }
        active.retain(|&v| v != last);
    }
    best as usize
}
