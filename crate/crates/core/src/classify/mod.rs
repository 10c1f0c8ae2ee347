//! Buchsbaum and Cohen–Macaulay decisions for one- and two-dimensional
//! matching complexes, the family recognizers, and related checks.

mod certificate;
mod patterns;

use serde::{Deserialize, Serialize};

pub use certificate::{verify_certificate, verify_witness, Certificate, LinkFailure};
pub use patterns::{
    fixed_form, fixed_graph, pattern, patterns, recognize_family, recognize_fixed, FamilyId,
    FamilyPattern, Part, Shape, Witness,
};

use crate::complex::{matching_complex, Face};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, Edge, Graph};
use crate::homology::{is_buchsbaum_homological, is_cm_homological, reduced_betti_numbers};

/// Graphs with more edges than this are not classified above dimension two.
pub const MAX_EDGES_HIGH_DIM: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    /// Dimension of `M(G)`; `-1` when the graph has no edges.
    pub dim: isize,
    pub buchsbaum: bool,
    pub cm: bool,
    pub families: Vec<FamilyId>,
    pub certificate: Certificate,
    pub matroid: bool,
}

/// `dim M(G)` when it is at most 3, otherwise 3 (`= cap`).
fn dim_capped(g: &Graph) -> isize {
    g.max_matching_size(4) as isize - 1
}

/// Every vertex link of a two-dimensional `M(G)` is a connected graph with
/// at least one edge.
pub fn is_2d_buchsbaum_direct(g: &Graph) -> bool {
    if dim_capped(g) != 2 {
        return false;
    }
    let m = matching_complex(g).expect("graph has edges");
    m.vertices()
        .into_iter()
        .all(|v| m.link(Face::singleton(v)).unwrap().one_skeleton_is_connected_graph_with_edge())
}

/// Why `M(N_e)` fails to be a connected graph with an edge, if it does.
pub fn link_failure(g: &Graph, e: Edge) -> Result<Option<LinkFailure>> {
    let ne = g.non_adjacent_subgraph(e)?.graph;
    Ok(match ne.max_matching_size(3) {
        0 => Some(LinkFailure::NoEdges),
        1 => Some(LinkFailure::NoMatchingEdge),
        2 => {
            let components = matching_complex(&ne)?.skeleton_components().len();
            (components > 1).then_some(LinkFailure::Disconnected { components })
        }
        _ => Some(LinkFailure::TooLarge),
    })
}

/// `M(N_e)` is a connected graph with at least one edge for every edge `e`.
pub fn is_2d_buchsbaum_via_ne(g: &Graph) -> bool {
    let edges = g.edges();
    !edges.is_empty() && edges.iter().all(|&e| link_failure(g, e).unwrap().is_none())
}

/// `N_e` is connected for every edge; an `N_e` without edges is not.
pub fn is_link_connected(g: &Graph) -> Result<bool> {
    let g = g.normalize().graph;
    if !g.is_connected() {
        return Err(Error::precondition("link connectivity is defined for connected graphs"));
    }
    Ok(g
        .edges()
        .into_iter()
        .all(|e| g.non_adjacent_subgraph(e).unwrap().graph.is_connected()))
}

/// No path with three edges; checked against the stars-and-triangles
/// description.
pub fn is_matroid(g: &Graph) -> bool {
    let (by_path, by_shape) = matroid_routes(g);
    assert_eq!(by_path, by_shape, "matroid criteria disagree on {g:?}");
    by_path
}

/// `(no path of length three, every component is a star or a triangle)`.
pub fn matroid_routes(g: &Graph) -> (bool, bool) {
    let by_path = !g.longest_path_at_least(3);
    let by_shape = g
        .component_masks()
        .into_iter()
        .filter(|m| m.count_ones() > 1)
        .all(|m| {
            let c = g.induced_subgraph(m).graph;
            c.is_triangle() || c.is_star()
        });
    (by_path, by_shape)
}

fn star_or_triangle(g: &Graph, mask: u64) -> Option<Part> {
    let sub = g.induced_subgraph(mask);
    let vertices: Vec<usize> = bits(mask).collect();
    if sub.graph.is_triangle() {
        return Some(Part { vertices, shape: Shape::Triangle });
    }
    if sub.graph.is_star() {
        let centre = (0..sub.graph.n()).max_by_key(|&v| (sub.graph.degree(v), std::cmp::Reverse(v))).unwrap();
        return Some(Part {
            vertices,
            shape: Shape::Star { centre: sub.original[centre] },
        });
    }
    None
}

fn one_dim_cm_member(g: &Graph, mask: u64) -> Option<Part> {
    let sub = g.induced_subgraph(mask);
    let mut w = [FamilyId::G1, FamilyId::G2, FamilyId::G3]
        .into_iter()
        .find_map(|id| recognize_family(&sub.graph, pattern(id).unwrap()))
        .or_else(|| recognize_fixed(&sub.graph, FamilyId::Bowtie))?;
    w.remap(&|v| sub.original[v]);
    Some(Part {
        vertices: bits(mask).collect(),
        shape: Shape::Member { witness: Box::new(w) },
    })
}

/// Disconnected families. `g` must have no isolated vertices.
fn recognize_components(g: &Graph, dim: isize) -> Option<Witness> {
    let comps = g.component_masks();
    match (dim, comps.len()) {
        (1, 2) | (2, 3) => {
            let parts: Option<Vec<Part>> = comps.iter().map(|&m| star_or_triangle(g, m)).collect();
            let family = if dim == 1 { FamilyId::Disc1d } else { FamilyId::Disc2dThree };
            parts.map(|parts| Witness::Components { family, parts })
        }
        (2, 2) => {
            for (a, b) in [(0, 1), (1, 0)] {
                if let (Some(small), Some(big)) =
                    (star_or_triangle(g, comps[a]), one_dim_cm_member(g, comps[b]))
                {
                    let mut parts = vec![small, big];
                    parts.sort_by_key(|p| p.vertices[0]);
                    return Some(Witness::Components { family: FamilyId::Disc2dTwo, parts });
                }
            }
            None
        }
        _ => None,
    }
}

/// A centre whose removal leaves exactly three petals, each forming a
/// triangle with the centre or a star of at least two edges not centred
/// at it.
pub fn recognize_petal(g: &Graph) -> Option<Witness> {
    let norm = g.normalize();
    let mut w = petal_in(&norm.graph)?;
    w.remap(&|v| norm.original[v]);
    Some(w)
}

fn petal_in(g: &Graph) -> Option<Witness> {
    for c in 0..g.n() {
        let mut rest = g.clone();
        for v in bits(g.neighbors(c)) {
            rest.remove_edge(Edge::new(c, v));
        }
        let petals: Vec<u64> = rest
            .component_masks()
            .into_iter()
            .filter(|&m| m != bit(c))
            .collect();
        if petals.len() != 3 {
            continue;
        }
        let ok = petals.iter().all(|&m| {
            let sub = g.induced_subgraph(m | bit(c));
            let local_c = sub.original.iter().position(|&v| v == c).unwrap();
            sub.graph.is_triangle()
                || (sub.graph.is_star()
                    && sub.graph.edge_count() >= 2
                    && sub.graph.degree(local_c) == 1)
        });
        if ok {
            return Some(Witness::Petal {
                centre: c,
                petals: petals.iter().map(|&m| bits(m).collect()).collect(),
            });
        }
    }
    None
}

/// Exactly seven vertices, a Hamiltonian cycle, and a two-dimensional
/// Buchsbaum matching complex.
pub fn recognize_bc7(g: &Graph) -> Option<Witness> {
    let norm = g.normalize();
    let h = &norm.graph;
    if h.n() != 7 || !is_2d_buchsbaum_direct(h) {
        return None;
    }
    let cycle = h.find_cycle(7)?;
    Some(Witness::HamiltonianCycle { cycle: cycle.into_iter().map(|v| norm.original[v]).collect() })
}

fn first_failing_edge(g: &Graph, dim: isize) -> Option<Certificate> {
    g.edges().into_iter().find_map(|e| {
        let reason = if dim == 1 {
            let ne = g.non_adjacent_subgraph(e).unwrap().graph;
            (ne.edge_count() == 0).then_some(LinkFailure::NoEdges)?
        } else {
            link_failure(g, e).unwrap()?
        };
        Some(Certificate::FailingEdge { edge: e, reason })
    })
}

fn sorted_witnesses(mut ws: Vec<Witness>) -> (Vec<FamilyId>, Vec<Witness>) {
    ws.sort_by_key(Witness::family);
    (ws.iter().map(Witness::family).collect(), ws)
}

/// One-dimensional case. Verdicts follow the family recognizers.
pub fn classify_1d(g: &Graph) -> Result<ClassificationResult> {
    let norm = g.normalize();
    let h = &norm.graph;
    let dim = dim_capped(h);
    if dim != 1 {
        return Err(Error::wrong_dimension(1, dim));
    }
    let mut found = Vec::new();
    found.extend(recognize_components(h, 1));
    for id in [FamilyId::G1, FamilyId::G2, FamilyId::G3] {
        found.extend(recognize_family(h, pattern(id).unwrap()));
    }
    for id in [FamilyId::Bowtie, FamilyId::K4, FamilyId::C4] {
        found.extend(recognize_fixed(h, id));
    }
    let (families, witnesses) = sorted_witnesses(found);
    let cm = families.iter().any(|f| f.is_1d_cm());
    let buchsbaum = !families.is_empty();
    let certificate = match witnesses.into_iter().next() {
        Some(w) => Certificate::Witness { witness: w },
        None => first_failing_edge(h, 1).unwrap_or(Certificate::Unrecognized {
            dim,
            note: "no family matched and every link is nonempty".into(),
        }),
    };
    let mut result = ClassificationResult {
        dim,
        buchsbaum,
        cm,
        families,
        certificate,
        matroid: is_matroid(h),
    };
    result.certificate.remap(&|v| norm.original[v]);
    Ok(result)
}

/// Two-dimensional case. The verdict is the direct link check; the family
/// list comes from the recognizers.
pub fn classify_2d(g: &Graph) -> Result<ClassificationResult> {
    let norm = g.normalize();
    let h = &norm.graph;
    let dim = dim_capped(h);
    if dim != 2 {
        return Err(Error::wrong_dimension(2, dim));
    }
    let buchsbaum = is_2d_buchsbaum_direct(h);
    let mut found = Vec::new();
    found.extend(recognize_components(h, 2));
    for id in [
        FamilyId::B1,
        FamilyId::B2,
        FamilyId::B3,
        FamilyId::B4,
        FamilyId::B5,
        FamilyId::B6,
        FamilyId::B7,
        FamilyId::B8,
        FamilyId::B9,
    ] {
        found.extend(recognize_family(h, pattern(id).unwrap()));
    }
    for id in [FamilyId::E1, FamilyId::E2] {
        found.extend(recognize_fixed(h, id));
    }
    found.extend(petal_in(h));
    if buchsbaum && h.n() == 7 {
        if let Some(cycle) = h.find_cycle(7) {
            found.push(Witness::HamiltonianCycle { cycle });
        }
    }
    let (families, witnesses) = sorted_witnesses(found);
    let cm = buchsbaum && {
        let betti = reduced_betti_numbers(&matching_complex(h)?);
        betti[0] == 0 && betti[1] == 0
    };
    let certificate = if buchsbaum {
        match witnesses.into_iter().next() {
            Some(w) => Certificate::Witness { witness: w },
            None => Certificate::Unrecognized {
                dim,
                note: "every vertex link passes but no family matched".into(),
            },
        }
    } else {
        first_failing_edge(h, 2).expect("a non-Buchsbaum complex has a failing vertex link")
    };
    let mut result = ClassificationResult {
        dim,
        buchsbaum,
        cm,
        families,
        certificate,
        matroid: is_matroid(h),
    };
    result.certificate.remap(&|v| norm.original[v]);
    Ok(result)
}

/// Dispatches on the dimension of `M(G)`. Outside dimensions one and two
/// the verdicts are homological and no families are reported.
pub fn classify(g: &Graph) -> Result<ClassificationResult> {
    let norm = g.normalize();
    if norm.graph.n() < g.n() {
        log::warn!("ignoring {} isolated vertices", g.n() - norm.graph.n());
    }
    let h = &norm.graph;
    match dim_capped(h) {
        1 => classify_1d(g),
        2 => classify_2d(g),
        d @ (-1 | 0) => Ok(ClassificationResult {
            dim: d,
            buchsbaum: true,
            cm: true,
            families: Vec::new(),
            certificate: Certificate::Unrecognized {
                dim: d,
                note: "complexes of dimension at most zero are Cohen-Macaulay".into(),
            },
            matroid: is_matroid(h),
        }),
        _ => {
            if h.edge_count() > MAX_EDGES_HIGH_DIM {
                return Err(Error::capability(format!(
                    "classification above dimension two is limited to {MAX_EDGES_HIGH_DIM} edges"
                )));
            }
            let m = matching_complex(h)?;
            let dim = m.dimension();
            Ok(ClassificationResult {
                dim,
                buchsbaum: is_buchsbaum_homological(&m),
                cm: is_cm_homological(&m),
                families: Vec::new(),
                certificate: Certificate::Unrecognized {
                    dim,
                    note: "no family classification in this dimension; verdicts are homological".into(),
                },
                matroid: is_matroid(h),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmnThresholds {
    pub m: usize,
    pub n: usize,
    pub cm_predicted: bool,
    pub cm_computed: bool,
    pub buchsbaum_predicted: bool,
    pub buchsbaum_computed: bool,
}

/// Closed-form thresholds for `M(K_{m,n})` next to the homological verdicts.
pub fn kmn_thresholds(m: usize, n: usize) -> Result<KmnThresholds> {
    if !(1..=3).contains(&m) || n < m || n > 8 {
        return Err(Error::capability(format!(
            "K_{{m,n}} checks need 1 <= m <= 3 and m <= n <= 8, got m={m}, n={n}"
        )));
    }
    let c = matching_complex(&crate::graph::named::complete_bipartite(m, n)?)?;
    Ok(KmnThresholds {
        m,
        n,
        cm_predicted: n + 1 >= 2 * m,
        cm_computed: is_cm_homological(&c),
        buchsbaum_predicted: n + 2 >= 2 * m,
        buchsbaum_computed: is_buchsbaum_homological(&c),
    })
}
