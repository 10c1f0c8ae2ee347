mod common;

use std::collections::BTreeSet;

use matchtop::classify::{
    classify, classify_1d, classify_2d, fixed_graph, is_2d_buchsbaum_direct, is_2d_buchsbaum_via_ne,
    is_link_connected, is_matroid, kmn_thresholds, pattern, patterns, recognize_bc7, recognize_family,
    recognize_petal, verify_certificate, verify_witness, Certificate, FamilyId,
};
use matchtop::enumerate::{c7_class_representatives, exhaustive_verify, random_graph, random_verify};
use matchtop::graph::named::{bowtie, complete, complete_bipartite, cycle, path, star};
use matchtop::iso::{canonical_form, CanonicalForm};
use matchtop::Graph;

fn union(parts: &[Graph]) -> Graph {
    parts[1..].iter().fold(parts[0].clone(), |acc, g| acc.disjoint_union(g).unwrap())
}

/// Stars or triangles glued at one vertex; `Some(k)` is a star with `k`
/// leaves glued at a leaf, `None` a triangle.
fn petal_graph(petals: &[Option<usize>]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for p in petals {
        match p {
            None => {
                edges.extend([(0, next), (next, next + 1), (0, next + 1)]);
                next += 2;
            }
            Some(k) => {
                let centre = next;
                edges.push((0, centre));
                for i in 1..*k {
                    edges.push((centre, next + i));
                }
                next += k;
            }
        }
    }
    Graph::from_edge_list(&edges).unwrap()
}

#[test]
fn direct_buchsbaum_examples() {
    assert!(is_2d_buchsbaum_direct(&cycle(7).unwrap()));
    assert!(is_2d_buchsbaum_direct(&complete(7).unwrap()));
    assert!(!is_2d_buchsbaum_direct(&cycle(8).unwrap()));
    assert!(is_2d_buchsbaum_via_ne(&cycle(7).unwrap()));
    let three_p3 = petal_graph(&[Some(2), Some(2), Some(2)]);
    assert!(is_2d_buchsbaum_via_ne(&three_p3));
    assert!(!is_2d_buchsbaum_via_ne(&cycle(4).unwrap()));
}

#[test]
fn one_dimensional_examples() {
    let r = classify_1d(&union(&[complete(3).unwrap(), star(2).unwrap()])).unwrap();
    assert!(r.cm && r.families.contains(&FamilyId::Disc1d));
    let r = classify_1d(&bowtie()).unwrap();
    assert!(r.cm);
    assert_eq!(r.families, vec![FamilyId::Bowtie]);
    let r = classify_1d(&complete(4).unwrap()).unwrap();
    assert!(r.buchsbaum && !r.cm);
    assert_eq!(r.families, vec![FamilyId::K4]);
    assert!(classify_1d(&cycle(7).unwrap()).is_err());
}

#[test]
fn pattern_examples() {
    let w = recognize_family(&path(5).unwrap(), pattern(FamilyId::G1).unwrap()).unwrap();
    match w {
        matchtop::classify::Witness::Pattern { map, .. } => {
            let mut hubs = vec![map["2"], map["4"]];
            hubs.sort();
            assert_eq!(hubs, vec![1, 3]);
        }
        other => panic!("{other:?}"),
    }
    assert!(recognize_family(&complete_bipartite(2, 3).unwrap(), pattern(FamilyId::G1).unwrap()).is_some());

    // Three disjoint edges with two extra vertices joined to one end of each.
    let mut b1 = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5)]).unwrap();
    for extra in [6, 7] {
        for hub in [1, 3, 5] {
            b1.add_edge(extra, hub).unwrap();
        }
    }
    let w = recognize_family(&b1, pattern(FamilyId::B1).unwrap()).expect("B1 example");
    assert!(verify_witness(&b1, &w));
    assert!(is_2d_buchsbaum_direct(&b1));
    b1.add_edge(6, 7).unwrap();
    assert!(recognize_family(&b1, pattern(FamilyId::B1).unwrap()).is_none());
}

#[test]
fn petal_examples() {
    let g = petal_graph(&[Some(2), Some(2), Some(2)]);
    assert!(verify_witness(&g, &recognize_petal(&g).unwrap()));
    let g = petal_graph(&[Some(2), Some(3), None]);
    assert!(verify_witness(&g, &recognize_petal(&g).unwrap()));
    assert!(is_2d_buchsbaum_direct(&g));
    assert!(recognize_petal(&bowtie()).is_none());
    assert!(!is_link_connected(&g).unwrap());
}

#[test]
fn seven_cycle_family() {
    let c7 = cycle(7).unwrap();
    match recognize_bc7(&c7).unwrap() {
        matchtop::classify::Witness::HamiltonianCycle { cycle } => {
            assert!((0..7).all(|i| c7.has_edge(cycle[i], cycle[(i + 1) % 7])));
        }
        other => panic!("{other:?}"),
    }
    assert!(recognize_bc7(&complete(7).unwrap()).is_some());
    let mut pendant = Graph::empty(8).unwrap();
    for e in c7.edges() {
        pendant.add_edge(e.u, e.v).unwrap();
    }
    pendant.add_edge(0, 7).unwrap();
    assert!(recognize_bc7(&pendant).is_none());
    assert!(is_link_connected(&c7).unwrap());
    assert!(is_link_connected(&complete(7).unwrap()).unwrap());
}

#[test]
fn two_dimensional_examples() {
    let g = union(&[complete(3).unwrap(), complete(3).unwrap(), star(4).unwrap()]);
    let r = classify_2d(&g).unwrap();
    assert!(r.buchsbaum);
    assert!(r.families.contains(&FamilyId::Disc2dThree));
    let g = union(&[complete(3).unwrap(), bowtie()]);
    let r = classify_2d(&g).unwrap();
    assert!(r.buchsbaum && r.families.contains(&FamilyId::Disc2dTwo));
    let e1 = fixed_graph(FamilyId::E1).unwrap();
    let r = classify_2d(&e1).unwrap();
    assert!(r.buchsbaum);
    assert_eq!(r.families, vec![FamilyId::E1]);
    let e2 = fixed_graph(FamilyId::E2).unwrap();
    let r = classify(&e2).unwrap();
    assert_eq!((r.dim, r.buchsbaum), (2, true));
    assert_eq!(r.families, vec![FamilyId::E2]);
    assert!(verify_certificate(&e2, &r));
}

#[test]
fn bad_chord_has_failing_edge() {
    let c7 = cycle(7).unwrap();
    let bad: Vec<Graph> = (0..7)
        .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
        .filter(|&(a, b)| !c7.has_edge(a, b))
        .map(|(a, b)| {
            let mut g = c7.clone();
            g.add_edge(a, b).unwrap();
            g
        })
        .filter(|g| !common::two_dim_buchsbaum(g))
        .collect();
    assert_eq!(bad.len(), 7);
    for g in bad {
        let r = classify(&g).unwrap();
        assert!(!r.buchsbaum);
        assert!(matches!(r.certificate, Certificate::FailingEdge { .. }));
        assert!(verify_certificate(&g, &r));
    }
}

#[test]
fn matroid_and_kmn() {
    assert!(is_matroid(&union(&[complete(3).unwrap(), star(5).unwrap()])));
    assert!(!is_matroid(&path(4).unwrap()));
    assert!(!is_matroid(&cycle(4).unwrap()));
    let k = kmn_thresholds(2, 3).unwrap();
    assert!(k.cm_computed && k.cm_predicted);
    let k = kmn_thresholds(3, 4).unwrap();
    assert!(k.buchsbaum_computed && !k.cm_computed);
    assert!(!kmn_thresholds(3, 3).unwrap().buchsbaum_computed);
    assert!(kmn_thresholds(4, 4).is_err());
}

#[test]
fn degenerate_inputs() {
    let r = classify(&Graph::empty(3).unwrap()).unwrap();
    assert_eq!(r.dim, -1);
    assert!(r.families.is_empty());
    let r = classify(&complete(2).unwrap()).unwrap();
    assert_eq!((r.dim, r.cm), (0, true));
    let mut padded = Graph::empty(9).unwrap();
    for e in bowtie().edges() {
        padded.add_edge(e.u + 2, e.v + 2).unwrap();
    }
    let r = classify(&padded).unwrap();
    assert_eq!(r.families, vec![FamilyId::Bowtie]);
    assert!(verify_certificate(&padded, &r));
}

/// Every instance of every pattern, with up to two satellites, belongs to
/// the family's verdict class by the brute-force oracle; one-edge
/// perturbations keep the classifier and the oracle in agreement.
#[test]
fn pattern_instances_and_perturbations() {
    for p in patterns() {
        let hub_types: Vec<u64> = if p.satellites { (1..1u64 << p.hubs.len()).collect() } else { Vec::new() };
        let mut sat_sets: Vec<Vec<u64>> = vec![vec![]];
        for &a in &hub_types {
            sat_sets.push(vec![a]);
            for &b in &hub_types {
                if b >= a {
                    sat_sets.push(vec![a, b]);
                }
            }
        }
        for opt in 0..1u64 << p.optional.len() {
            for sats in &sat_sets {
                let g = p.instance(opt, sats);
                let nu = common::matching_number_capped(&g, 4);
                if p.id.is_1d_cm() {
                    assert_eq!(nu, 2, "{} instance {opt} {sats:?}", p.id);
                    assert_eq!(common::one_dim_verdicts(&g), (true, true), "{} {opt} {sats:?}", p.id);
                } else {
                    assert_eq!(nu, 3, "{} instance {opt} {sats:?}", p.id);
                    assert!(common::two_dim_buchsbaum(&g), "{} {opt} {sats:?}", p.id);
                }
                let r = classify(&g).unwrap();
                assert!(r.families.contains(&p.id), "{} not recognized: {opt} {sats:?}", p.id);
                assert!(verify_certificate(&g, &r));
                if sats.len() > 1 {
                    continue;
                }
                for a in 0..g.n() {
                    for b in a + 1..g.n() {
                        let mut h = g.clone();
                        if h.has_edge(a, b) {
                            h.remove_edge(matchtop::Edge::new(a, b));
                        } else {
                            h.add_edge(a, b).unwrap();
                        }
                        let h = h.normalize().graph;
                        match common::matching_number_capped(&h, 4) {
                            2 => {
                                let (cm, bb) = common::one_dim_verdicts(&h);
                                let r = classify_1d(&h).unwrap();
                                assert_eq!((r.cm, r.buchsbaum), (cm, bb), "{h:?}");
                            }
                            3 => {
                                let r = classify_2d(&h).unwrap();
                                assert_eq!(!r.families.is_empty(), common::two_dim_buchsbaum(&h), "{h:?}");
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
}

fn form(g: &Graph) -> CanonicalForm {
    canonical_form(g).unwrap()
}

/// Five-vertex graphs whose matching complex is a connected graph: a path
/// of length two plus a disjoint edge, the bases of the first two
/// one-dimensional families, the 5-cycle and the bowtie, each with every
/// subset of its optional edges.
fn connected_complex_list() -> BTreeSet<CanonicalForm> {
    let with_optional = |required: &[(usize, usize)], optional: &[(usize, usize)]| -> Vec<Graph> {
        (0..1u32 << optional.len())
            .map(|mask| {
                let mut edges = required.to_vec();
                edges.extend(optional.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
                Graph::from_edges(5, &edges).unwrap()
            })
            .collect()
    };
    let (a, b, c, d, e) = (0, 1, 2, 3, 4);
    let mut all = Vec::new();
    all.extend(with_optional(&[(a, b), (b, c), (d, e)], &[(a, c)]));
    all.extend(with_optional(&[(a, b), (b, c), (c, d), (d, e)], &[(a, d), (b, e)]));
    all.extend(with_optional(&[(a, b), (b, c), (c, d), (d, e), (a, c)], &[(a, d), (d, b)]));
    all.extend(with_optional(
        &[(a, b), (b, c), (c, d), (d, e), (e, a)],
        &[(a, c), (c, e), (e, b), (b, d), (d, a)],
    ));
    all.extend(with_optional(&[(a, b), (b, c), (c, d), (d, e), (a, c), (c, e)], &[]));
    all.iter().map(form).collect()
}

#[test]
fn five_vertex_connected_complexes_are_listed() {
    let listed = connected_complex_list();
    let mut found = BTreeSet::new();
    for g in common::labelled_graphs(5) {
        if g.n() == 5 && common::matching_number_capped(&g, 4) == 2 && common::one_dim_verdicts(&g).0 {
            found.insert(form(&g));
        }
    }
    assert_eq!(found, listed);
}

#[test]
fn seven_cycle_links_are_listed() {
    let listed = connected_complex_list();
    let reps = c7_class_representatives();
    let buchsbaum: Vec<&Graph> = reps.iter().filter(|r| r.2).map(|r| &r.1).collect();
    assert_eq!(buchsbaum.len(), 125);
    for g in buchsbaum {
        for e in g.edges() {
            let ne = common::non_adjacent(g, (e.u, e.v));
            assert!(listed.contains(&form(&ne)), "N_{e} of {g:?} is {ne:?}");
        }
    }
}

#[test]
fn small_exhaustive_sweeps() {
    let r = exhaustive_verify(4).unwrap();
    assert!(r.is_clean());
    let mut expect = vec![form(&complete(4).unwrap()), form(&cycle(4).unwrap())];
    expect.sort();
    assert_eq!(r.buchsbaum_not_cm_1d, expect);

    let r = exhaustive_verify(5).unwrap();
    assert!(r.is_clean());
    for g in common::labelled_graphs(5) {
        if g.n() == 5 && common::has_cycle(&g, 5) && common::matching_number_capped(&g, 4) == 2 {
            assert!(classify_1d(&g).unwrap().families.contains(&FamilyId::G3), "{g:?}");
        }
    }
}

#[test]
fn random_sweep_on_seven_vertices() {
    let r = random_verify(7, 10_000, 3).unwrap();
    assert!(r.is_clean(), "{:?}", r.discrepancies);
    let mut seen = 0;
    for i in 0..10_000 {
        let g = random_graph(7, 3, i).normalize().graph;
        if g.edge_count() > 0
            && common::is_connected(&g)
            && common::matching_number_capped(&g, 4) == 3
            && common::two_dim_buchsbaum(&g)
        {
            seen += 1;
            assert!(!common::has_cycle(&g, 5) || common::has_cycle(&g, 7), "{g:?}");
        }
    }
    assert!(seen > 0);
    // Connectivity matters: a 5-cycle plus a disjoint edge is Buchsbaum.
    let c5_k2 = union(&[cycle(5).unwrap(), complete(2).unwrap()]);
    assert!(common::two_dim_buchsbaum(&c5_k2) && !common::has_cycle(&c5_k2, 7));
    assert!(random_verify(8, 0, 1).unwrap().graphs_checked == 0);
}

#[test]
fn random_reports_are_deterministic() {
    let a = random_verify(9, 500, 7).unwrap();
    let b = random_verify(9, 500, 7).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
