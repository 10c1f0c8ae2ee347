//! Finite simplicial complexes and the matching complex `M(G)`.
//!
//! A face is a bitmask over at most [`MAX_COMPLEX_VERTICES`] vertex ids; each
//! complex keeps its full face set (including the empty face) computed once
//! at construction. Complexes in this crate have at most a few thousand faces.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub const MAX_COMPLEX_VERTICES: usize = 128;

/// A face as a set of vertex ids.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(pub u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        Face(vs.into_iter().fold(0u128, |m, v| {
            assert!(v < MAX_COMPLEX_VERTICES, "vertex id {v} out of range");
            m | (1u128 << v)
        }))
    }

    pub fn singleton(v: usize) -> Self {
        Face::from_vertices([v])
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let v = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1u128 << v))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    /// Every face, sorted by size and then by mask.
    faces: Vec<Face>,
    members: HashSet<Face>,
    facets: Vec<Face>,
}

/// JSON shape of an exported complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexExport {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub f_vector: Vec<usize>,
    pub dimension: isize,
}

impl SimplicialComplex {
    /// The complex generated by `facets`. Vertex ids index into `labels`.
    pub fn from_facets(labels: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        if labels.len() > MAX_COMPLEX_VERTICES {
            return Err(Error::capability(format!(
                "complexes are limited to {MAX_COMPLEX_VERTICES} vertices, got {}",
                labels.len()
            )));
        }
        let mut all = HashSet::new();
        all.insert(Face::EMPTY);
        for facet in facets {
            if let Some(&v) = facet.iter().find(|&&v| v >= labels.len()) {
                return Err(Error::input(format!("facet vertex {v} has no label")));
            }
            if facet.len() > 24 {
                return Err(Error::capability("facets of more than 24 vertices"));
            }
            let verts: Vec<usize> = Face::from_vertices(facet.iter().copied()).to_vec();
            for sub in 0u32..(1 << verts.len()) {
                let f = Face::from_vertices(
                    verts.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).map(|(_, &v)| v),
                );
                all.insert(f);
            }
        }
        Ok(Self::from_closed(labels, all))
    }

    /// `faces` must already be closed under taking subsets.
    fn from_closed(labels: Vec<String>, members: HashSet<Face>) -> Self {
        let mut faces: Vec<Face> = members.iter().copied().collect();
        faces.sort_by_key(|f| (f.len(), f.0));
        let mut covered: HashSet<Face> = HashSet::new();
        for f in &faces {
            for v in f.vertices() {
                covered.insert(f.without(v));
            }
        }
        let mut facets: Vec<Face> = faces.iter().copied().filter(|f| !covered.contains(f)).collect();
        facets.sort_by_key(|f| f.to_vec());
        SimplicialComplex {
            labels,
            faces,
            members,
            facets,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, d: isize) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied().filter(move |f| f.dim() == d)
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn contains(&self, face: Face) -> bool {
        self.members.contains(&face)
    }

    /// Vertices of the complex (ids whose singleton is a face).
    pub fn vertices(&self) -> Vec<usize> {
        self.faces_of_dim(0).map(|f| f.0.trailing_zeros() as usize).collect()
    }

    /// Largest face dimension; `-1` for the complex `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.dim())
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// `f_i` = number of `i`-dimensional faces, for `i = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dimension();
        let mut f = vec![0; (d + 1).max(0) as usize];
        for face in &self.faces {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// `lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}`, on the same vertex labels.
    pub fn link(&self, face: Face) -> Result<SimplicialComplex> {
        if !self.contains(face) {
            return Err(Error::input(format!("{face:?} is not a face of the complex")));
        }
        let members: HashSet<Face> = self
            .faces
            .iter()
            .filter(|f| face.is_subset_of(**f))
            .map(|f| Face(f.0 & !face.0))
            .collect();
        Ok(Self::from_closed(self.labels.clone(), members))
    }

    /// Connected components of the 1-skeleton, as vertex lists.
    pub fn skeleton_components(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let next = p[x];
                p[x] = r;
                x = next;
            }
            r
        }
        for e in self.faces_of_dim(1) {
            let vs = e.to_vec();
            let (a, b) = (find(&mut parent, pos[&vs[0]]), find(&mut parent, pos[&vs[1]]));
            parent[a] = b;
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// The complex is a connected graph with at least one edge.
    pub fn one_skeleton_is_connected_graph_with_edge(&self) -> bool {
        self.dimension() == 1 && self.skeleton_components().len() == 1
    }

    /// One facet per line, labels joined by commas.
    pub fn facets_text(&self) -> String {
        let mut s = String::new();
        for f in &self.facets {
            let names: Vec<&str> = f.vertices().map(|v| self.labels[v].as_str()).collect();
            s.push_str(&names.join(","));
            s.push('\n');
        }
        s
    }

    pub fn export(&self) -> ComplexExport {
        ComplexExport {
            vertices: self.vertices().into_iter().map(|v| self.labels[v].clone()).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| f.vertices().map(|v| self.labels[v].clone()).collect())
                .collect(),
            f_vector: self.f_vector(),
            dimension: self.dimension(),
        }
    }

    /// DOT rendering of the 1-skeleton.
    pub fn skeleton_dot(&self) -> String {
        let mut s = String::from("graph M {\n");
        for v in self.vertices() {
            s.push_str(&format!("  \"{}\";\n", self.labels[v]));
        }
        for e in self.faces_of_dim(1) {
            let vs = e.to_vec();
            s.push_str(&format!("  \"{}\" -- \"{}\";\n", self.labels[vs[0]], self.labels[vs[1]]));
        }
        s.push_str("}\n");
        s
    }
}

/// `M(G)`: vertex `i` is the `i`-th edge of `g` in lexicographic order and
/// the faces are the matchings of `g`. Labels are `u-v` over vertex ids.
pub fn matching_complex(g: &Graph) -> Result<SimplicialComplex> {
    let names: Vec<String> = (0..g.n()).map(|v| v.to_string()).collect();
    matching_complex_with_labels(g, &names)
}

/// As [`matching_complex`], labelling the edge `{u, v}` as `"{lu}-{lv}"`.
pub fn matching_complex_with_labels(g: &Graph, vertex_labels: &[String]) -> Result<SimplicialComplex> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::input("the matching complex needs a graph with at least one edge"));
    }
    if edges.len() > MAX_COMPLEX_VERTICES {
        return Err(Error::capability(format!(
            "graph has {} edges; matching complexes are limited to {MAX_COMPLEX_VERTICES}",
            edges.len()
        )));
    }
    let labels = edges
        .iter()
        .map(|e| format!("{}-{}", vertex_labels[e.u], vertex_labels[e.v]))
        .collect();

    let direct: HashSet<Face> = g
        .enumerate_matchings(usize::MAX)
        .iter()
        .map(|m| Face::from_vertices(m.edges.iter().map(|e| edges.binary_search(e).unwrap())))
        .collect();
    let via_cliques = clique_complex_of_disjointness(&edges);
    assert_eq!(
        direct, via_cliques,
        "matching enumeration and clique complex disagree for {g:?}"
    );
    Ok(SimplicialComplex::from_closed(labels, direct))
}

/// All cliques (including the empty one) of the graph on `edges` in which
/// two edges are adjacent when they share no endpoint.
fn clique_complex_of_disjointness(edges: &[Edge]) -> HashSet<Face> {
    let m = edges.len();
    let compatible: Vec<u128> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && !edges[i].shares_endpoint(edges[j]))
                .fold(0u128, |w, j| w | (1u128 << j))
        })
        .collect();
    let mut out = HashSet::new();
    fn extend(compatible: &[u128], clique: u128, candidates: u128, out: &mut HashSet<Face>) {
        out.insert(Face(clique));
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // only extend with larger ids so each clique is built once
            extend(compatible, clique | (1u128 << v), rest & compatible[v], out);
        }
    }
    let all = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    extend(&compatible, 0, all, &mut out);
    out
}
