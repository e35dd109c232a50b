//! Simple undirected graphs stored as fixed-width adjacency bit rows.
//!
//! A [`Graph`] is an immutable value; every construction goes through
//! [`GraphBuilder`] or one of the family constructors below.

mod edgelist;
mod graph6;
mod recipe;

pub use edgelist::{from_edge_list, to_edge_list};
pub use graph6::{from_graph6, to_graph6};
pub use recipe::Recipe;

use std::fmt;

use crate::error::GraphError;

/// Largest vertex count any graph may have.
pub const MAX_ORDER: usize = 1024;

const WORD: usize = 64;

fn words_for(order: usize) -> usize {
    order.div_ceil(WORD)
}

/// Undirected simple graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// Graph with `order` vertices and no edges. Panics past [`MAX_ORDER`].
    pub fn empty(order: usize) -> Graph {
        GraphBuilder::new(order).build()
    }

    /// The complete graph K_a.
    pub fn complete(a: usize) -> Graph {
        let mut b = GraphBuilder::new(a);
        for u in 0..a {
            for v in u + 1..a {
                b.insert(u, v);
            }
        }
        b.build()
    }

    /// The complete bipartite graph K_{a,b}; the first `a` vertices form one side.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::complete_join(&Graph::empty(a), &Graph::empty(b))
    }

    /// The cycle C_p (p ≥ 3).
    pub fn cycle(p: usize) -> Graph {
        assert!(p >= 3, "a cycle needs at least 3 vertices");
        let mut b = GraphBuilder::new(p);
        for v in 0..p {
            b.insert(v, (v + 1) % p);
        }
        b.build()
    }

    /// The path P_p on `p` vertices, `0 - 1 - ... - (p-1)`.
    pub fn path(p: usize) -> Graph {
        let mut b = GraphBuilder::new(p);
        for v in 1..p {
            b.insert(v - 1, v);
        }
        b.build()
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range endpoints.
    /// Repeated edges are merged.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::try_new(order)?;
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Disjoint union; the vertices of `h` are shifted by `g.order()`.
    pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
        let mut b = GraphBuilder::new(g.order + h.order);
        for (u, v) in g.edges() {
            b.insert(u, v);
        }
        for (u, v) in h.edges() {
            b.insert(g.order + u, g.order + v);
        }
        b.build()
    }

    /// Disjoint union plus every edge between `V(g)` and `V(h)`.
    pub fn complete_join(g: &Graph, h: &Graph) -> Graph {
        let mut b = GraphBuilder::new(g.order + h.order);
        for (u, v) in g.edges() {
            b.insert(u, v);
        }
        for (u, v) in h.edges() {
            b.insert(g.order + u, g.order + v);
        }
        for u in 0..g.order {
            for v in 0..h.order {
                b.insert(u, g.order + v);
            }
        }
        b.build()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.row(u)[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Adjacency bit row of `v`; bit `w` is set iff `vw` is an edge.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        Neighbors::new(self.row(v))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    /// Edges as `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.insert(i, j);
                }
            }
        }
        b.build()
    }

    /// True when every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.order == other.order && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            order: self.order,
            words: self.words,
            rows: self.rows.clone(),
            edges: self.edges,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(p={}, e={}, [", self.order, self.edges)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Iterator over set bits of an adjacency row.
pub struct Neighbors<'a> {
    row: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> Neighbors<'a> {
    fn new(row: &'a [u64]) -> Self {
        Neighbors {
            row,
            idx: 0,
            cur: row.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.idx];
        }
    }
}

/// Mutable staging area for a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl GraphBuilder {
    /// Panics when `order` exceeds [`MAX_ORDER`].
    pub fn new(order: usize) -> GraphBuilder {
        match GraphBuilder::try_new(order) {
            Ok(b) => b,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_new(order: usize) -> Result<GraphBuilder, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::TooLarge { order, cap: MAX_ORDER });
        }
        let words = words_for(order);
        Ok(GraphBuilder {
            order,
            words,
            rows: vec![0; order * words],
            edges: 0,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    fn check(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.order {
                return Err(GraphError::VertexOutOfRange { vertex: x, order: self.order });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Adds `uv`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u, v)?;
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.flip(u, v);
        self.edges += 1;
        Ok(true)
    }

    /// Removes `uv`; returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u, v)?;
        if !self.has_edge(u, v) {
            return Ok(false);
        }
        self.flip(u, v);
        self.edges -= 1;
        Ok(true)
    }

    /// Drops vertex `v` and renumbers the vertices above it down by one.
    pub fn remove_vertex(&mut self, v: usize) -> Result<(), GraphError> {
        if v >= self.order {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: self.order });
        }
        let keep: Vec<usize> = (0..self.order).filter(|&x| x != v).collect();
        let g = self.clone().build().induced(&keep);
        *self = g.to_builder();
        Ok(())
    }

    // Internal constructors only insert valid, fresh pairs.
    fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order && v < self.order);
        if !self.has_edge(u, v) {
            self.flip(u, v);
            self.edges += 1;
        }
    }

    fn flip(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] ^= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] ^= 1 << (u % WORD);
    }

    pub fn build(self) -> Graph {
        Graph {
            order: self.order,
            words: self.words,
            rows: self.rows,
            edges: self.edges,
        }
    }
}
