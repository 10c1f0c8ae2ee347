//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's complex, homology or classification code.

#![allow(dead_code)]

use matchtop::Graph;
use petgraph::algo::connected_components;
use petgraph::graph::UnGraph;

pub type Face = Vec<(usize, usize)>;

pub fn edge_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if g.has_edge(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn disjoint(x: (usize, usize), y: (usize, usize)) -> bool {
    x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1
}

/// All matchings as sorted lists of edge indices, by plain recursion.
pub fn matchings(edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn go(edges: &[(usize, usize)], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for j in from..edges.len() {
            if cur.iter().all(|&i| disjoint(edges[i], edges[j])) {
                cur.push(j);
                go(edges, j + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(edges, 0, &mut Vec::new(), &mut out);
    out
}

pub fn matching_number(g: &Graph) -> usize {
    matchings(&edge_pairs(g)).iter().map(Vec::len).max().unwrap_or(0)
}

fn is_connected_graph(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut h = UnGraph::<(), ()>::new_undirected();
    let ids: Vec<_> = (0..n).map(|_| h.add_node(())).collect();
    for &(a, b) in edges {
        h.add_edge(ids[a], ids[b], ());
    }
    n > 0 && connected_components(&h) == 1
}

/// `(cm, buchsbaum)` for a graph whose matching complex is a graph:
/// connected, and without isolated vertices.
pub fn one_dim_verdicts(g: &Graph) -> (bool, bool) {
    let edges = edge_pairs(g);
    let mut m_edges = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if disjoint(edges[i], edges[j]) {
                m_edges.push((i, j));
            }
        }
    }
    let no_isolated = (0..edges.len()).all(|i| m_edges.iter().any(|&(a, b)| a == i || b == i));
    (is_connected_graph(edges.len(), &m_edges), no_isolated)
}

/// Every vertex link of the two-dimensional matching complex is a
/// connected graph with at least one edge.
pub fn two_dim_buchsbaum(g: &Graph) -> bool {
    let edges = edge_pairs(g);
    let all = matchings(&edges);
    (0..edges.len()).all(|e| {
        let verts: Vec<usize> = (0..edges.len()).filter(|&f| f != e && disjoint(edges[e], edges[f])).collect();
        let idx = |f: usize| verts.iter().position(|&x| x == f).unwrap();
        let link_edges: Vec<(usize, usize)> = all
            .iter()
            .filter(|m| m.len() == 3 && m.contains(&e))
            .map(|m| {
                let rest: Vec<usize> = m.iter().copied().filter(|&f| f != e).collect();
                (idx(rest[0]), idx(rest[1]))
            })
            .collect();
        !link_edges.is_empty() && is_connected_graph(verts.len(), &link_edges)
    })
}

/// Simple cycle of length `k` through any vertices, by exhaustive DFS.
pub fn has_cycle(g: &Graph, k: usize) -> bool {
    fn dfs(g: &Graph, start: usize, v: usize, depth: usize, k: usize, seen: &mut Vec<bool>) -> bool {
        if depth == k {
            return g.has_edge(v, start);
        }
        for w in 0..g.n() {
            if w > start && !seen[w] && g.has_edge(v, w) {
                seen[w] = true;
                if dfs(g, start, w, depth + 1, k, seen) {
                    return true;
                }
                seen[w] = false;
            }
        }
        false
    }
    (0..g.n()).any(|s| {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        dfs(g, s, s, 1, k, &mut seen)
    })
}

/// Sizes of the two colour classes when `g` is connected and bipartite.
pub fn bipartition_sides(g: &Graph) -> Option<(usize, usize)> {
    let mut colour = vec![usize::MAX; g.n()];
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in 0..g.n() {
            if g.has_edge(v, w) {
                if colour[w] == usize::MAX {
                    colour[w] = 1 - colour[v];
                    stack.push(w);
                } else if colour[w] == colour[v] {
                    return None;
                }
            }
        }
    }
    let left = colour.iter().filter(|&&c| c == 0).count();
    Some((left, g.n() - left))
}

pub fn is_connected(g: &Graph) -> bool {
    is_connected_graph(g.n(), &edge_pairs(g))
}

/// A path with three edges exists.
pub fn has_p4(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|a| {
        (0..n).any(|b| {
            b != a
                && g.has_edge(a, b)
                && (0..n).any(|c| {
                    c != a && c != b && g.has_edge(b, c) && (0..n).any(|d| d != a && d != b && d != c && g.has_edge(c, d))
                })
        })
    })
}

/// Same unlabelled graph, by trying every vertex bijection.
pub fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    fn next_perm(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    loop {
        if (0..n).all(|x| (x + 1..n).all(|y| a.has_edge(x, y) == b.has_edge(perm[x], perm[y]))) {
            return true;
        }
        if !next_perm(&mut perm) {
            return false;
        }
    }
}

/// `N_e` by definition: drop both endpoints, then isolated vertices.
pub fn non_adjacent(g: &Graph, e: (usize, usize)) -> Graph {
    let keep: Vec<usize> = (0..g.n())
        .filter(|&v| v != e.0 && v != e.1 && (0..g.n()).any(|w| w != e.0 && w != e.1 && g.has_edge(v, w)))
        .collect();
    let mut edges = Vec::new();
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate().skip(i + 1) {
            if g.has_edge(a, b) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(keep.len(), &edges).unwrap()
}

pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (1u64..1 << pairs.len()).map(move |mask| {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        Graph::from_edges(n, &chosen).unwrap().normalize().graph
    })
}

/// Largest matching size, stopping once `cap` is reached.
pub fn matching_number_capped(g: &Graph, cap: usize) -> usize {
    fn go(edges: &[(usize, usize)], from: usize, used: &mut Vec<usize>, size: usize, cap: usize) -> usize {
        let mut best = size;
        for j in from..edges.len() {
            if best >= cap {
                break;
            }
            let (a, b) = edges[j];
            if !used.contains(&a) && !used.contains(&b) {
                used.push(a);
                used.push(b);
                best = best.max(go(edges, j + 1, used, size + 1, cap));
                used.truncate(used.len() - 2);
            }
        }
        best
    }
    go(&edge_pairs(g), 0, &mut Vec::new(), 0, cap)
}

/// Faces of `lk e` and of `M(N_e)` as sorted lists of `(u, v)` edges of
/// `g`, both built from scratch.
pub fn link_and_ne_faces(g: &Graph, e: usize) -> (Vec<Face>, Vec<Face>) {
    let edges = edge_pairs(g);
    let mut link: Vec<Vec<(usize, usize)>> = matchings(&edges)
        .into_iter()
        .filter(|m| m.contains(&e))
        .map(|m| m.into_iter().filter(|&f| f != e).map(|f| edges[f]).collect())
        .collect();
    let (x, y) = edges[e];
    let keep: Vec<usize> = (0..g.n())
        .filter(|&v| v != x && v != y && (0..g.n()).any(|w| w != x && w != y && g.has_edge(v, w)))
        .collect();
    let ne = non_adjacent(g, (x, y));
    let ne_edges = edge_pairs(&ne);
    let mut from_ne: Vec<Vec<(usize, usize)>> = matchings(&ne_edges)
        .into_iter()
        .map(|m| m.into_iter().map(|f| (keep[ne_edges[f].0], keep[ne_edges[f].1])).collect())
        .collect();
    link.iter_mut().for_each(|f| f.sort());
    from_ne.iter_mut().for_each(|f| f.sort());
    link.sort();
    from_ne.sort();
    (link, from_ne)
}
