//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertices are the dense integers `0..n`. Adjacency is one `u64` bitset per
//! vertex, which keeps every structural query a handful of word operations
//! on the graph sizes this crate deals with.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let v = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(v)
        }
    })
}

/// An undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge `{a, b}`; panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    #[inline]
    pub fn mask(self) -> u64 {
        bit(self.u) | bit(self.v)
    }

    #[inline]
    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.mask() & other.mask() != 0
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of pairwise vertex-disjoint edges, sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<Edge>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True when no two edges share an endpoint.
    pub fn is_valid(&self) -> bool {
        let mut used = 0u64;
        for e in &self.edges {
            if used & e.mask() != 0 {
                return false;
            }
            used |= e.mask();
        }
        true
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// A graph may carry isolated vertices (parsers produce such "raw" graphs);
/// [`Graph::normalize`] strips them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// The result of [`Graph::normalize`] or [`Graph::non_adjacent_subgraph`]:
/// a densely relabeled graph plus the original id of every new vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    /// `original[i]` is the id in the source graph of new vertex `i`.
    pub original: Vec<usize>,
}

impl Relabeled {
    /// Maps an edge of the relabeled graph back into the source graph.
    pub fn original_edge(&self, e: Edge) -> Edge {
        Edge::new(self.original[e.u], self.original[e.v])
    }
}

/// Connectivity, bipartiteness and degree data of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralSummary {
    pub is_connected: bool,
    pub components: Vec<Vec<usize>>,
    pub is_bipartite: bool,
    /// Two sides, when bipartite. Within each component the side holding its
    /// smallest vertex goes first.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    pub degree_sequence: Vec<usize>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::capability(format!(
                "graph has {n} vertices; at most {MAX_VERTICES} are supported"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph from a list of edges, sizing it to the largest endpoint.
    pub fn from_edge_list(edges: &[(usize, usize)]) -> Result<Self> {
        let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Graph::from_edges(n, edges)
    }

    pub(crate) fn from_adjacency(n: usize, adj: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), n);
        debug_assert!((0..n).all(|v| adj[v] & bit(v) == 0));
        Graph { n, adj }
    }

    /// Inserts `{a, b}`. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::input(format!("self-loop at vertex {a}")));
        }
        if a >= self.n || b >= self.n {
            return Err(Error::input(format!(
                "edge {a}-{b} references a vertex outside 0..{}",
                self.n
            )));
        }
        self.adj[a] |= bit(b);
        self.adj[b] |= bit(a);
        Ok(())
    }

    pub fn remove_edge(&mut self, e: Edge) {
        if e.v < self.n {
            self.adj[e.u] &= !bit(e.v);
            self.adj[e.v] &= !bit(e.u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] & bit(b) != 0
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !low_mask(u + 1)) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.adj.contains(&0)
    }

    /// Removes isolated vertices, relabeling the rest densely in increasing order.
    pub fn normalize(&self) -> Relabeled {
        let keep = (0..self.n).fold(0u64, |m, v| if self.adj[v] != 0 { m | bit(v) } else { m });
        self.induced_subgraph(keep)
    }

    /// The subgraph induced on the vertices in `mask`, relabeled densely.
    pub fn induced_subgraph(&self, mask: u64) -> Relabeled {
        let mask = mask & self.vertex_mask();
        let original: Vec<usize> = bits(mask).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let adj = original
            .iter()
            .map(|&v| bits(self.adj[v] & mask).fold(0u64, |w, u| w | bit(index[u])))
            .collect();
        Relabeled {
            graph: Graph::from_adjacency(original.len(), adj),
            original,
        }
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Graph::from_adjacency(self.n, adj)
    }

    /// Places `other` on fresh vertices after this graph's.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for e in self.edges() {
            g.add_edge(e.u, e.v)?;
        }
        for e in other.edges() {
            g.add_edge(e.u + self.n, e.v + self.n)?;
        }
        Ok(g)
    }

    /// `N_e`: the graph on the edges of `self` sharing no endpoint with `e`,
    /// with isolated vertices dropped.
    pub fn non_adjacent_subgraph(&self, e: Edge) -> Result<Relabeled> {
        if !self.contains_edge(e) {
            return Err(Error::input(format!("edge {e} is not in the graph")));
        }
        let blocked = e.mask();
        let mut adj = vec![0u64; self.n];
        for u in bits(self.vertex_mask() & !blocked) {
            adj[u] = self.adj[u] & !blocked;
        }
        Ok(Graph::from_adjacency(self.n, adj).normalize())
    }

    /// `min(cap, size of a maximum matching)`, by bounded backtracking over
    /// edges in index order.
    pub fn max_matching_size(&self, cap: usize) -> usize {
        fn search(edges: &[u64], start: usize, used: u64, size: usize, cap: usize, best: &mut usize) {
            if size > *best {
                *best = size;
            }
            if *best >= cap || size + (edges.len() - start) <= *best {
                return;
            }
            for (j, &m) in edges.iter().enumerate().skip(start) {
                if used & m == 0 {
                    search(edges, j + 1, used | m, size + 1, cap, best);
                    if *best >= cap {
                        return;
                    }
                }
            }
        }
        let masks: Vec<u64> = self.edges().iter().map(|e| e.mask()).collect();
        let mut best = 0;
        search(&masks, 0, 0, 0, cap, &mut best);
        best.min(cap)
    }

    /// All matchings with at most `max_size` edges, each once. Ordered by
    /// size, then lexicographically by sorted edge list; the empty matching
    /// comes first.
    pub fn enumerate_matchings(&self, max_size: usize) -> Vec<Matching> {
        let edges = self.edges();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        fn grow(
            edges: &[Edge],
            start: usize,
            used: u64,
            max_size: usize,
            stack: &mut Vec<usize>,
            found: &mut Vec<Vec<usize>>,
        ) {
            found.push(stack.clone());
            if stack.len() == max_size {
                return;
            }
            for j in start..edges.len() {
                if used & edges[j].mask() == 0 {
                    stack.push(j);
                    grow(edges, j + 1, used | edges[j].mask(), max_size, stack, found);
                    stack.pop();
                }
            }
        }
        grow(&edges, 0, 0, max_size, &mut stack, &mut found);
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
            .into_iter()
            .map(|idx| Matching {
                edges: idx.into_iter().map(|i| edges[i]).collect(),
            })
            .collect()
    }

    /// Whether some cycle of length exactly `k` is a subgraph.
    pub fn contains_cycle(&self, k: usize) -> bool {
        self.find_cycle(k).is_some()
    }

    /// A `k`-cycle as a vertex sequence starting at its smallest vertex.
    ///
    /// Each cycle is searched from its smallest vertex only, walking through
    /// larger vertices.
    pub fn find_cycle(&self, k: usize) -> Option<Vec<usize>> {
        if k < 3 || k > self.n {
            return None;
        }
        fn walk(g: &Graph, start: usize, path: &mut Vec<usize>, visited: u64, k: usize) -> bool {
            let at = *path.last().unwrap();
            if path.len() == k {
                return g.adj[at] & bit(start) != 0;
            }
            let allowed = g.adj[at] & !visited & !low_mask(start + 1);
            for next in bits(allowed) {
                path.push(next);
                if walk(g, start, path, visited | bit(next), k) {
                    return true;
                }
                path.pop();
            }
            false
        }
        (0..self.n).find_map(|s| {
            let mut path = vec![s];
            walk(self, s, &mut path, bit(s), k).then_some(path)
        })
    }

    /// Whether a simple path with at least `len` edges exists.
    pub fn longest_path_at_least(&self, len: usize) -> bool {
        if len == 0 {
            return self.n > 0;
        }
        fn walk(g: &Graph, at: usize, visited: u64, edges: usize, target: usize) -> bool {
            if edges >= target {
                return true;
            }
            bits(g.adj[at] & !visited).any(|next| walk(g, next, visited | bit(next), edges + 1, target))
        }
        (0..self.n).any(|s| walk(self, s, bit(s), 0, len))
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex. Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.component_masks().into_iter().map(|m| bits(m).collect()).collect()
    }

    pub(crate) fn component_masks(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let comp = self.reach(s);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s`.
    pub(crate) fn reach(&self, s: usize) -> u64 {
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let next = bits(frontier).fold(0u64, |m, v| m | self.adj[v]) & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.reach(0) == self.vertex_mask()
    }

    /// Proper 2-colouring if one exists; colour 0 holds the smallest vertex of
    /// each component.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for v in bits(self.adj[u]) {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    pub fn structural_predicates(&self) -> StructuralSummary {
        let colouring = self.two_colouring();
        let bipartition = colouring.as_ref().map(|c| {
            let left = (0..self.n).filter(|&v| c[v] == 0).collect();
            let right = (0..self.n).filter(|&v| c[v] == 1).collect();
            (left, right)
        });
        StructuralSummary {
            is_connected: self.is_connected(),
            components: self.components(),
            is_bipartite: colouring.is_some(),
            bipartition,
            degree_sequence: (0..self.n).map(|v| self.degree(v)).collect(),
        }
    }

    /// True for `K3` (exactly).
    pub fn is_triangle(&self) -> bool {
        self.n == 3 && self.edge_count() == 3
    }

    /// True for a star `S_k`, `k >= 1`: a tree with a vertex adjacent to all others.
    pub fn is_star(&self) -> bool {
        self.n >= 2
            && self.edge_count() == self.n - 1
            && (0..self.n).any(|v| self.degree(v) == self.n - 1)
    }
}

/// Named graphs used throughout the crate and its tests.
pub mod named {
    use super::{Graph, Result};

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }

    /// `C_n` with edges `i -- i+1 mod n`.
    pub fn cycle(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            g.add_edge(i, (i + 1) % n)?;
        }
        Ok(g)
    }

    /// Path on `n` vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for i in 1..n {
            g.add_edge(i - 1, i)?;
        }
        Ok(g)
    }

    /// `S_k`: centre 0 with leaves `1..=k`.
    pub fn star(k: usize) -> Result<Graph> {
        let mut g = Graph::empty(k + 1)?;
        for i in 1..=k {
            g.add_edge(0, i)?;
        }
        Ok(g)
    }

    /// `K_{m,n}` with sides `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
        let mut g = Graph::empty(m + n)?;
        for a in 0..m {
            for b in 0..n {
                g.add_edge(a, m + b)?;
            }
        }
        Ok(g)
    }

    /// Two triangles sharing vertex 2: `0-1-2-0`, `2-3-4-2`.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }
}
