use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::patterns::{fixed_graph, pattern, FamilyId, Part, Shape, Witness};
use super::{is_2d_buchsbaum_direct, link_failure, ClassificationResult};
use crate::complex::matching_complex;
use crate::graph::{bit, bits, Edge, Graph};
use crate::homology::{is_buchsbaum_homological, is_cm_homological};

/// Why the link of a vertex `e` of `M(G)`, i.e. `M(N_e)`, is not a
/// connected graph with at least one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LinkFailure {
    /// `N_e` has no edges, so the link is empty.
    NoEdges,
    /// `N_e` has no two disjoint edges, so the link has no edge.
    NoMatchingEdge,
    Disconnected { components: usize },
    /// `N_e` has three disjoint edges, so the link is at least two-dimensional.
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Witness { witness: Witness },
    FailingEdge { edge: Edge, reason: LinkFailure },
    Unrecognized { dim: isize, note: String },
}

impl Certificate {
    pub(crate) fn remap(&mut self, f: &impl Fn(usize) -> usize) {
        match self {
            Certificate::Witness { witness } => witness.remap(f),
            Certificate::FailingEdge { edge, .. } => *edge = Edge::new(f(edge.u), f(edge.v)),
            Certificate::Unrecognized { .. } => {}
        }
    }
}

/// Re-checks a classification certificate against `g` without running
/// the recognizers.
pub fn verify_certificate(g: &Graph, result: &ClassificationResult) -> bool {
    match &result.certificate {
        Certificate::Witness { witness } => {
            result.families.contains(&witness.family()) && verify_witness(g, witness)
        }
        Certificate::FailingEdge { edge, reason } => {
            if result.buchsbaum || !g.contains_edge(*edge) {
                return false;
            }
            match result.dim {
                1 => {
                    *reason == LinkFailure::NoEdges
                        && g.non_adjacent_subgraph(*edge).unwrap().graph.edge_count() == 0
                }
                2 => link_failure(g, *edge).ok().flatten() == Some(*reason),
                _ => false,
            }
        }
        Certificate::Unrecognized { dim, .. } => {
            if *dim != result.dim || !result.families.is_empty() {
                return false;
            }
            match dim {
                -1 | 0 => result.buchsbaum && result.cm,
                1 | 2 => false,
                _ => {
                    let m = match matching_complex(&g.normalize().graph) {
                        Ok(m) => m,
                        Err(_) => return false,
                    };
                    m.dimension() == *dim
                        && is_buchsbaum_homological(&m) == result.buchsbaum
                        && is_cm_homological(&m) == result.cm
                }
            }
        }
    }
}

/// Checks a witness against `g`; isolated vertices of `g` are ignored.
pub fn verify_witness(g: &Graph, witness: &Witness) -> bool {
    let norm = g.normalize();
    let mut inverse = vec![usize::MAX; g.n()];
    for (new, &old) in norm.original.iter().enumerate() {
        inverse[old] = new;
    }
    let mut w = witness.clone();
    let in_range = Cell::new(true);
    w.remap(&|v| match inverse.get(v) {
        Some(&x) if x != usize::MAX => x,
        _ => {
            in_range.set(false);
            0
        }
    });
    in_range.get() && check(&norm.graph, &w)
}

fn check(h: &Graph, w: &Witness) -> bool {
    match w {
        Witness::Pattern { family, map, satellites } => {
            let Some(p) = pattern(*family) else { return false };
            let Some(assign) = p
                .names
                .iter()
                .map(|n| map.get(*n).copied())
                .collect::<Option<Vec<usize>>>()
            else {
                return false;
            };
            if map.len() != p.len() {
                return false;
            }
            let image = assign.iter().fold(0u64, |m, &v| m | bit(v));
            let listed = satellites.iter().fold(0u64, |m, &v| m | bit(v));
            listed == h.vertex_mask() & !image
                && satellites.len() == listed.count_ones() as usize
                && p.accepts(h, &assign)
        }
        Witness::Isomorphism { family, map } => {
            let Some(f) = fixed_graph(*family) else { return false };
            if map.len() != f.n() || h.n() != f.n() {
                return false;
            }
            let image = map.iter().fold(0u64, |m, &v| m | bit(v));
            image == h.vertex_mask()
                && (0..f.n()).all(|a| (a + 1..f.n()).all(|b| f.has_edge(a, b) == h.has_edge(map[a], map[b])))
        }
        Witness::Petal { centre, petals } => {
            if *centre >= h.n() || petals.len() != 3 {
                return false;
            }
            let c = *centre;
            let mut rest = h.clone();
            for v in bits(h.neighbors(c)) {
                rest.remove_edge(Edge::new(c, v));
            }
            let mut comps: Vec<Vec<usize>> =
                rest.components().into_iter().filter(|comp| comp != &vec![c]).collect();
            let mut claimed = petals.clone();
            claimed.iter_mut().for_each(|p| p.sort_unstable());
            comps.sort();
            claimed.sort();
            comps == claimed
                && petals.iter().all(|p| {
                    let sub = h.induced_subgraph(p.iter().fold(bit(c), |m, &v| m | bit(v)));
                    let lc = sub.original.iter().position(|&v| v == c).unwrap();
                    sub.graph.is_triangle()
                        || (sub.graph.is_star() && sub.graph.edge_count() >= 2 && sub.graph.degree(lc) == 1)
                })
        }
        Witness::HamiltonianCycle { cycle } => {
            let image = cycle.iter().fold(0u64, |m, &v| if v < 64 { m | bit(v) } else { m });
            h.n() == 7
                && cycle.len() == 7
                && image == h.vertex_mask()
                && (0..7).all(|i| h.has_edge(cycle[i], cycle[(i + 1) % 7]))
                && is_2d_buchsbaum_direct(h)
        }
        Witness::Components { family, parts } => {
            let mut comps = h.components();
            let mut claimed: Vec<Vec<usize>> = parts
                .iter()
                .map(|p| {
                    let mut v = p.vertices.clone();
                    v.sort_unstable();
                    v
                })
                .collect();
            comps.sort();
            claimed.sort();
            if comps != claimed || !parts.iter().all(|p| part_ok(h, p)) {
                return false;
            }
            let members = parts.iter().filter(|p| matches!(p.shape, Shape::Member { .. })).count();
            match family {
                FamilyId::Disc1d => parts.len() == 2 && members == 0,
                FamilyId::Disc2dThree => parts.len() == 3 && members == 0,
                FamilyId::Disc2dTwo => parts.len() == 2 && members == 1,
                _ => false,
            }
        }
    }
}

fn part_ok(h: &Graph, part: &Part) -> bool {
    let mask = part.vertices.iter().fold(0u64, |m, &v| m | bit(v));
    let sub = h.induced_subgraph(mask);
    match &part.shape {
        Shape::Triangle => sub.graph.is_triangle(),
        Shape::Star { centre } => {
            sub.graph.is_star()
                && sub
                    .original
                    .iter()
                    .position(|v| v == centre)
                    .is_some_and(|c| sub.graph.degree(c) == sub.graph.n() - 1)
        }
        Shape::Member { witness } => {
            if !matches!(
                witness.family(),
                FamilyId::G1 | FamilyId::G2 | FamilyId::G3 | FamilyId::Bowtie
            ) {
                return false;
            }
            let mut local = (**witness).clone();
            let ok = Cell::new(true);
            local.remap(&|v| {
                sub.original.iter().position(|&x| x == v).unwrap_or_else(|| {
                    ok.set(false);
                    0
                })
            });
            ok.get() && check(&sub.graph, &local)
        }
    }
}
