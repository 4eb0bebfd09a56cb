//! Immutable simple undirected graphs backed by bit-indexed adjacency rows.
//!
//! Every vertex owns a row of `words = ceil(order / 64)` machine words; bit
//! `v` of row `u` is set iff `{u, v}` is an edge. Graphs of order at most 64
//! therefore use a single word per vertex, which keeps codegree and
//! embedding inner loops to one `and` plus one `popcount`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[inline]
pub(crate) fn words_for(order: usize) -> usize {
    order.div_ceil(64).max(1)
}

/// Borrowed view of a bit adjacency matrix. Used by the counting and oracle
/// cores so they can run on scratch matrices without building a `Graph`.
#[derive(Clone, Copy)]
pub struct BitAdj<'a> {
    pub order: usize,
    pub words: usize,
    pub bits: &'a [u64],
}

impl<'a> BitAdj<'a> {
    #[inline]
    pub fn row(&self, v: usize) -> &'a [u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    bits: Vec<u64>,
    nbrs: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, collapsing duplicate pairs. Rejects loops and
    /// out-of-range endpoints.
    pub fn new<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = words_for(order);
        let mut bits = vec![0u64; order * words];
        for (u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::VertexOutOfRange(u, v, order));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        Ok(Self::from_bits(order, bits))
    }

    /// Builds from a symmetric, loop-free bit matrix with `words_for(order)`
    /// words per row.
    pub(crate) fn from_bits(order: usize, bits: Vec<u64>) -> Self {
        let words = words_for(order);
        debug_assert_eq!(bits.len(), order * words);
        let mut nbrs = Vec::with_capacity(order);
        let mut twice_edges = 0;
        for u in 0..order {
            let row = &bits[u * words..(u + 1) * words];
            let list: Vec<usize> = iter_bits(row).collect();
            twice_edges += list.len();
            nbrs.push(list);
        }
        Graph {
            order,
            words,
            bits,
            nbrs,
            edge_count: twice_edges / 2,
        }
    }

    pub fn empty(order: usize) -> Self {
        Self::from_bits(order, vec![0; order * words_for(order)])
    }

    pub fn complete(order: usize) -> Self {
        let pairs = (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v)));
        Self::new(order, pairs).expect("valid complete graph")
    }

    /// Path on `order` vertices `0 - 1 - ... - (order-1)`.
    pub fn path(order: usize) -> Self {
        Self::new(order, (1..order).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::InvalidArgument(format!(
                "a cycle needs at least 3 vertices, got {order}"
            )));
        }
        Self::new(order, (0..order).map(|v| (v, (v + 1) % order)))
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Self::new(10, edges).expect("valid Petersen graph")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn bit_adj(&self) -> BitAdj<'_> {
        BitAdj {
            order: self.order,
            words: self.words,
            bits: &self.bits,
        }
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            self.nbrs[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Number of common neighbors of two distinct vertices.
    pub fn codegree(&self, u: usize, v: usize) -> Result<usize> {
        if u >= self.order || v >= self.order {
            return Err(Error::VertexOutOfRange(u, v, self.order));
        }
        if u == v {
            return Err(Error::InvalidPair(u, v));
        }
        Ok(self.codegree_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn codegree_unchecked(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Copy of this graph with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.with_edges(std::iter::once((u, v)))
    }

    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(self.order, self.edges().chain(extra))
    }

    /// Copy with `extra` isolated vertices appended.
    pub fn padded(&self, extra: usize) -> Self {
        Self::new(self.order + extra, self.edges()).expect("padding keeps edges valid")
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.order {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, graph has order {}",
                perm.len(),
                self.order
            )));
        }
        let mut seen = vec![false; self.order];
        for &p in perm {
            if p >= self.order || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        Self::new(self.order, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        Self::new(vertices.len(), edges).expect("induced subgraph is valid")
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.nbrs[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.order >= 1 && self.edge_count + 1 == self.order && self.is_connected()
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.nbrs[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Complete multipartite graph; parts occupy contiguous vertex ranges in
    /// the given order.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("no parts given".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("parts must be positive".into()));
        }
        let order: usize = parts.iter().sum();
        let mut part_of = Vec::with_capacity(order);
        for (i, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, size));
        }
        let edges = (0..order)
            .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
            .filter(|&(u, v)| part_of[u] != part_of[v]);
        Self::new(order, edges)
    }

    /// Vertex-disjoint union; the `i`-th graph's vertices are shifted by the
    /// total order of the graphs before it.
    pub fn disjoint_union(gs: &[Graph]) -> Self {
        let order = gs.iter().map(Graph::order).sum();
        let mut edges = Vec::new();
        let mut offset = 0;
        for g in gs {
            edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
            offset += g.order;
        }
        Self::new(order, edges).expect("shifted edges stay in range")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Indices of set bits in a multi-word row, ascending.
pub(crate) fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut word = w;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(wi * 64 + b)
        })
    })
}
