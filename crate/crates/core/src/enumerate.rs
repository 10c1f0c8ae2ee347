//! Corpus sweeps: the chord scan over a labelled 7-cycle, exhaustive
//! labelled graphs, and seeded random graphs.
//!
//! Random draws use ChaCha8 seeded with `seed_from_u64(seed)`; draw `i`
//! runs on stream `i` with edge density `DENSITIES[i % 3]`, so a report
//! depends only on `(n, count, seed)` and not on the thread count.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    classify_1d, classify_2d, is_2d_buchsbaum_direct, is_2d_buchsbaum_via_ne, matroid_routes,
    verify_certificate,
};
use crate::complex::{matching_complex, Face};
use crate::error::{Error, Result};
use crate::graph::{named, Graph};
use crate::homology::{is_buchsbaum_homological, is_cm_homological};
use crate::io::{encode_graph6, write_edge_list};
use crate::iso::{canonical_form, CanonicalForm};

pub const DENSITIES: [f64; 3] = [0.2, 0.4, 0.6];
pub const MAX_EXHAUSTIVE_N: usize = 7;
pub const RANDOM_N: std::ops::RangeInclusive<usize> = 7..=12;
/// Expected `(iso classes, Buchsbaum classes)` totals of the chord scan.
pub const C7_SCAN_TOTALS: (usize, usize) = (383, 125);
pub const PRNG: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64(seed), stream = draw index";

/// Graphs above this many vertices with `dim M(G) > 2` get the
/// link/`M(N_e)` comparison on bitmask face sets instead of full complexes.
const LIBRARY_LINK_CHECK_MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Direct vertex-link check agrees with the `N_e` reformulation.
    DirectVsNe,
    /// `lk_{M(G)} e = M(N_e)` for every edge, via complex objects.
    LinkIsMatchingComplex,
    /// The same identity checked on bitmask face sets.
    LinkIsMatchingComplexBitmask,
    OneDimFamilies,
    TwoDimFamilies,
    Homological,
    Certificate,
    C5ImpliesC7,
    C6C3ImpliesC7,
    C7HasSevenVertices,
    BipartiteSideOfThree,
    Matroid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub added_edges: usize,
    pub graphs: usize,
    pub iso_classes: usize,
    pub buchsbaum_classes: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Vertex count after dropping isolated vertices.
    pub vertices: usize,
    pub graphs: usize,
    pub dim1: usize,
    pub dim1_buchsbaum: usize,
    pub dim1_cm: usize,
    pub dim2: usize,
    pub dim2_buchsbaum: usize,
    pub dim2_cm: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub iso_classes: usize,
    pub buchsbaum_classes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub check: Check,
    pub detail: String,
    pub graph6: String,
    /// Greedily minimized graph that still fails the same check.
    pub minimized_graph6: String,
    pub minimized_edge_list: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    ScanC7,
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub kind: ReportKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prng: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub totals: Option<Totals>,
    /// Classes after deduplicating across all chord counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_iso_classes: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepRow>,
    pub graphs_checked: usize,
    pub skipped_edgeless: usize,
    /// How many graphs each check ran on.
    pub checks: BTreeMap<Check, usize>,
    /// Canonical forms of graphs whose one-dimensional complex is
    /// Buchsbaum but not Cohen–Macaulay.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub buchsbaum_not_cm_1d: Vec<CanonicalForm>,
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl EnumerationReport {
    fn new(kind: ReportKind) -> Self {
        EnumerationReport {
            kind,
            max_n: None,
            n: None,
            count: None,
            seed: None,
            prng: None,
            rows: Vec::new(),
            totals: None,
            global_iso_classes: None,
            sweep: Vec::new(),
            graphs_checked: 0,
            skipped_edgeless: 0,
            checks: BTreeMap::new(),
            buchsbaum_not_cm_1d: Vec::new(),
            discrepancies: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    /// Table-shaped CSV: one line per measure, one column per chord count.
    pub fn table_csv(&self) -> String {
        let mut s = String::from("row");
        for r in &self.rows {
            let _ = write!(s, ",{}", r.added_edges);
        }
        s.push_str(",total\n");
        let line = |name: &str, f: &dyn Fn(&TableRow) -> usize| {
            let vals: Vec<String> = self.rows.iter().map(|r| f(r).to_string()).collect();
            let total: usize = self.rows.iter().map(f).sum();
            format!("{name},{},{total}\n", vals.join(","))
        };
        s.push_str(&line("iso_classes", &|r| r.iso_classes));
        s.push_str(&line("buchsbaum_classes", &|r| r.buchsbaum_classes));
        s
    }
}

/// Supergraphs of the labelled cycle `0-1-...-6-0`, one per chord subset;
/// chord `j` is the `j`-th non-edge in lexicographic order.
pub fn c7_chords() -> Vec<(usize, usize)> {
    let c7 = named::cycle(7).unwrap();
    (0..7)
        .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
        .filter(|&(a, b)| !c7.has_edge(a, b))
        .collect()
}

pub fn c7_with_chords(subset: u32) -> Graph {
    let mut g = named::cycle(7).unwrap();
    for (j, (a, b)) in c7_chords().into_iter().enumerate() {
        if subset >> j & 1 == 1 {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// One representative per isomorphism class and chord count:
/// `(chord count, representative, Buchsbaum)`, first occurrence kept.
pub fn c7_class_representatives() -> Vec<(usize, Graph, bool)> {
    let chords = c7_chords().len();
    let forms: Vec<(usize, CanonicalForm)> = (0u32..1 << chords)
        .into_par_iter()
        .map(|s| (s.count_ones() as usize, canonical_form(&c7_with_chords(s)).unwrap()))
        .collect();
    let mut seen: HashSet<(usize, CanonicalForm)> = HashSet::new();
    let firsts: Vec<(usize, u32)> = forms
        .into_iter()
        .zip(0u32..)
        .filter(|(key, _)| seen.insert(key.clone()))
        .map(|((k, _), s)| (k, s))
        .collect();
    let mut reps: Vec<(usize, Graph, bool)> = firsts
        .into_par_iter()
        .map(|(k, s)| {
            let g = c7_with_chords(s);
            let bb = is_2d_buchsbaum_direct(&g);
            (k, g, bb)
        })
        .collect();
    reps.sort_by_key(|(k, _, _)| *k);
    reps
}

pub fn scan_c7() -> EnumerationReport {
    let start = Instant::now();
    let chords = c7_chords().len();
    let reps = c7_class_representatives();
    let mut report = EnumerationReport::new(ReportKind::ScanC7);
    report.rows = (0..=chords)
        .map(|k| {
            let in_row: Vec<&(usize, Graph, bool)> = reps.iter().filter(|r| r.0 == k).collect();
            TableRow {
                added_edges: k,
                graphs: binomial(chords, k),
                iso_classes: in_row.len(),
                buchsbaum_classes: in_row.iter().filter(|r| r.2).count(),
            }
        })
        .collect();
    report.totals = Some(Totals {
        iso_classes: report.rows.iter().map(|r| r.iso_classes).sum(),
        buchsbaum_classes: report.rows.iter().map(|r| r.buchsbaum_classes).sum(),
    });
    let global: BTreeSet<CanonicalForm> = reps.iter().map(|(_, g, _)| canonical_form(g).unwrap()).collect();
    report.global_iso_classes = Some(global.len());
    report.graphs_checked = 1 << chords;
    report.runtime = start.elapsed();
    report
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every labelled graph on `max_n` vertices, i.e. every graph on at most
/// `max_n` vertices once isolated vertices are dropped.
pub fn exhaustive_verify(max_n: usize) -> Result<EnumerationReport> {
    if max_n > MAX_EXHAUSTIVE_N {
        return Err(Error::capability(format!(
            "exhaustive sweeps are limited to {MAX_EXHAUSTIVE_N} vertices"
        )));
    }
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> =
        (0..max_n).flat_map(|a| (a + 1..max_n).map(move |b| (a, b))).collect();
    let total: u64 = 1 << pairs.len();
    let mut report = EnumerationReport::new(ReportKind::Exhaustive);
    report.max_n = Some(max_n);
    let outcomes: Vec<Option<Outcome>> = (1..total)
        .into_par_iter()
        .map(|mask| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edges(max_n, &chosen).unwrap().normalize().graph;
            Some(examine(&g))
        })
        .collect();
    report.skipped_edgeless = 1;
    absorb(&mut report, outcomes);
    report.runtime = start.elapsed();
    Ok(report)
}

pub fn random_graph(n: usize, seed: u64, index: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let p = DENSITIES[index % DENSITIES.len()];
    let mut g = Graph::empty(n).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// `count` draws in total, cycling through the three densities.
pub fn random_verify(n: usize, count: usize, seed: u64) -> Result<EnumerationReport> {
    if !RANDOM_N.contains(&n) {
        return Err(Error::capability(format!(
            "random sweeps need {} <= n <= {}",
            RANDOM_N.start(),
            RANDOM_N.end()
        )));
    }
    let start = Instant::now();
    let mut report = EnumerationReport::new(ReportKind::Random);
    report.n = Some(n);
    report.count = Some(count);
    report.seed = Some(seed);
    report.prng = Some(PRNG.to_string());
    let outcomes: Vec<Option<Outcome>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let g = random_graph(n, seed, i).normalize().graph;
            (g.edge_count() > 0).then(|| examine(&g))
        })
        .collect();
    report.skipped_edgeless = outcomes.iter().filter(|o| o.is_none()).count();
    absorb(&mut report, outcomes);
    report.runtime = start.elapsed();
    Ok(report)
}

/// Sequential, order-preserving merge of per-graph outcomes.
fn absorb(report: &mut EnumerationReport, outcomes: Vec<Option<Outcome>>) {
    let mut rows: BTreeMap<usize, SweepRow> = BTreeMap::new();
    let mut bnc: BTreeSet<CanonicalForm> = BTreeSet::new();
    for o in outcomes.into_iter().flatten() {
        report.graphs_checked += 1;
        let row = rows.entry(o.vertices).or_insert_with(|| SweepRow {
            vertices: o.vertices,
            ..SweepRow::default()
        });
        row.graphs += 1;
        match o.dim {
            1 => {
                row.dim1 += 1;
                row.dim1_buchsbaum += o.buchsbaum as usize;
                row.dim1_cm += o.cm as usize;
            }
            2 => {
                row.dim2 += 1;
                row.dim2_buchsbaum += o.buchsbaum as usize;
                row.dim2_cm += o.cm as usize;
            }
            _ => {}
        }
        for c in o.ran {
            *report.checks.entry(c).or_default() += 1;
        }
        if let Some(f) = o.buchsbaum_not_cm {
            bnc.insert(f);
        }
        for (check, detail) in o.failures {
            let min = minimize(&o.graph, check);
            report.discrepancies.push(Discrepancy {
                check,
                detail,
                graph6: encode_graph6(&o.graph),
                minimized_graph6: encode_graph6(&min),
                minimized_edge_list: write_edge_list(&min),
            });
        }
    }
    report.sweep = rows.into_values().collect();
    report.buchsbaum_not_cm_1d = bnc.into_iter().collect();
}

struct Outcome {
    graph: Graph,
    vertices: usize,
    dim: isize,
    buchsbaum: bool,
    cm: bool,
    buchsbaum_not_cm: Option<CanonicalForm>,
    ran: Vec<Check>,
    failures: Vec<(Check, String)>,
}

/// Runs every applicable check on a graph without isolated vertices.
pub fn failing_checks(g: &Graph) -> Vec<(Check, String)> {
    examine(g).failures
}

fn examine(g: &Graph) -> Outcome {
    let dim = g.max_matching_size(4) as isize - 1;
    let mut o = Outcome {
        graph: g.clone(),
        vertices: g.n(),
        dim,
        buchsbaum: false,
        cm: false,
        buchsbaum_not_cm: None,
        ran: Vec::new(),
        failures: Vec::new(),
    };
    let check = |o: &mut Outcome, c: Check, ok: bool, detail: &dyn Fn() -> String| {
        o.ran.push(c);
        if !ok {
            o.failures.push((c, detail()));
        }
    };

    let direct = is_2d_buchsbaum_direct(g);
    let via_ne = is_2d_buchsbaum_via_ne(g);
    check(&mut o, Check::DirectVsNe, direct == via_ne, &|| {
        format!("direct={direct} via_ne={via_ne}")
    });

    if dim <= 2 || g.n() <= LIBRARY_LINK_CHECK_MAX_N {
        let r = link_identity_complexes(g);
        check(&mut o, Check::LinkIsMatchingComplex, r.is_ok(), &|| r.clone().unwrap_err());
    } else {
        let r = link_identity_bitmask(g);
        check(&mut o, Check::LinkIsMatchingComplexBitmask, r.is_ok(), &|| r.clone().unwrap_err());
    }

    let (by_path, by_shape) = matroid_routes(g);
    check(&mut o, Check::Matroid, by_path == by_shape, &|| {
        format!("no P4 = {by_path}, stars and triangles = {by_shape}")
    });

    match dim {
        1 => {
            let m = matching_complex(g).unwrap();
            let connected = m.skeleton_components().len() == 1;
            let no_isolated = m.is_pure();
            o.buchsbaum = no_isolated;
            o.cm = connected;
            let r = classify_1d(g).unwrap();
            check(&mut o, Check::OneDimFamilies, r.cm == connected && r.buchsbaum == no_isolated, &|| {
                format!(
                    "families {:?}: cm={} buchsbaum={}, complex connected={connected} no isolated={no_isolated}",
                    r.families, r.cm, r.buchsbaum
                )
            });
            let (hcm, hbb) = (is_cm_homological(&m), is_buchsbaum_homological(&m));
            check(&mut o, Check::Homological, hcm == connected && hbb == no_isolated, &|| {
                format!("homological cm={hcm} buchsbaum={hbb}")
            });
            check(&mut o, Check::Certificate, verify_certificate(g, &r), &|| {
                format!("certificate {:?} does not verify", r.certificate)
            });
            if no_isolated && !connected {
                o.buchsbaum_not_cm = Some(canonical_form(g).unwrap());
            }
        }
        2 => {
            o.buchsbaum = direct;
            let r = classify_2d(g).unwrap();
            o.cm = r.cm;
            check(&mut o, Check::TwoDimFamilies, r.families.is_empty() != direct, &|| {
                format!("direct={direct}, families {:?}", r.families)
            });
            let m = matching_complex(g).unwrap();
            let hbb = is_buchsbaum_homological(&m);
            check(&mut o, Check::Homological, hbb == direct, &|| {
                format!("homological buchsbaum={hbb}, direct={direct}")
            });
            check(&mut o, Check::Certificate, verify_certificate(g, &r), &|| {
                format!("certificate {:?} does not verify", r.certificate)
            });
            if direct && g.is_connected() {
                let c7 = g.contains_cycle(7);
                if g.contains_cycle(5) {
                    check(&mut o, Check::C5ImpliesC7, c7, &|| "contains C5 but not C7".into());
                }
                if g.contains_cycle(6) && g.contains_cycle(3) {
                    check(&mut o, Check::C6C3ImpliesC7, c7, &|| "contains C6 and C3 but not C7".into());
                }
                if c7 {
                    check(&mut o, Check::C7HasSevenVertices, g.n() == 7, &|| {
                        format!("contains C7 with {} vertices", g.n())
                    });
                }
                if let Some(colour) = g.two_colouring() {
                    let left = colour.iter().filter(|&&c| c == 0).count();
                    let right = g.n() - left;
                    check(&mut o, Check::BipartiteSideOfThree, left == 3 || right == 3, &|| {
                        format!("bipartition sides {left} and {right}")
                    });
                }
            }
        }
        _ => {}
    }
    o
}

/// Compares `lk_{M(G)} e` with `M(N_e)` as complexes on the edges of `g`.
fn link_identity_complexes(g: &Graph) -> std::result::Result<(), String> {
    let edges = g.edges();
    let m = matching_complex(g).map_err(|e| e.to_string())?;
    for (i, &e) in edges.iter().enumerate() {
        let lk = m.link(Face::singleton(i)).map_err(|e| e.to_string())?;
        let mut from_link: Vec<Face> = lk.faces().to_vec();
        let ne = g.non_adjacent_subgraph(e).unwrap();
        let mut from_ne: Vec<Face> = if ne.graph.edge_count() == 0 {
            vec![Face::EMPTY]
        } else {
            let ne_edges = ne.graph.edges();
            let mn = matching_complex(&ne.graph).map_err(|e| e.to_string())?;
            mn.faces()
                .iter()
                .map(|f| {
                    Face::from_vertices(f.vertices().map(|j| {
                        edges.binary_search(&ne.original_edge(ne_edges[j])).unwrap()
                    }))
                })
                .collect()
        };
        from_link.sort();
        from_ne.sort();
        if from_link != from_ne {
            return Err(format!(
                "edge {e}: link has {} faces, M(N_e) has {}",
                from_link.len(),
                from_ne.len()
            ));
        }
    }
    Ok(())
}

fn matching_masks(edges: &[crate::graph::Edge]) -> Vec<u128> {
    fn grow(edges: &[crate::graph::Edge], start: usize, used: u64, face: u128, out: &mut Vec<u128>) {
        out.push(face);
        for j in start..edges.len() {
            if used & edges[j].mask() == 0 {
                grow(edges, j + 1, used | edges[j].mask(), face | 1 << j, out);
            }
        }
    }
    let mut out = Vec::new();
    grow(edges, 0, 0, 0, &mut out);
    out
}

/// The same identity on face bitmasks, for graphs whose complexes are too
/// large to rebuild once per edge.
fn link_identity_bitmask(g: &Graph) -> std::result::Result<(), String> {
    let edges = g.edges();
    if edges.len() > 128 {
        return Err("too many edges".into());
    }
    let faces = matching_masks(&edges);
    for (i, &e) in edges.iter().enumerate() {
        let mut from_link: Vec<u128> = faces
            .iter()
            .filter(|&&f| f >> i & 1 == 1)
            .map(|&f| f & !(1u128 << i))
            .collect();
        let ne = g.non_adjacent_subgraph(e).unwrap();
        let ne_edges = ne.graph.edges();
        let to_g: Vec<usize> = ne_edges
            .iter()
            .map(|&x| edges.binary_search(&ne.original_edge(x)).unwrap())
            .collect();
        let mut from_ne: Vec<u128> = matching_masks(&ne_edges)
            .into_iter()
            .map(|f| {
                let mut out = 0u128;
                let mut w = f;
                while w != 0 {
                    let j = w.trailing_zeros() as usize;
                    w &= w - 1;
                    out |= 1 << to_g[j];
                }
                out
            })
            .collect();
        from_link.sort_unstable();
        from_ne.sort_unstable();
        if from_link != from_ne {
            return Err(format!(
                "edge {e}: link has {} faces, M(N_e) has {}",
                from_link.len(),
                from_ne.len()
            ));
        }
    }
    Ok(())
}

/// Greedy vertex and edge deletion while `check` keeps failing.
pub fn minimize(g: &Graph, check: Check) -> Graph {
    let still_fails = |h: &Graph| h.edge_count() > 0 && examine(h).failures.iter().any(|(c, _)| *c == check);
    let mut cur = g.clone();
    loop {
        let mut next = None;
        for v in 0..cur.n() {
            let keep = cur.vertex_mask() & !(1u64 << v);
            let h = cur.induced_subgraph(keep).graph.normalize().graph;
            if still_fails(&h) {
                next = Some(h);
                break;
            }
        }
        if next.is_none() {
            for e in cur.edges() {
                let mut h = cur.clone();
                h.remove_edge(e);
                let h = h.normalize().graph;
                if still_fails(&h) {
                    next = Some(h);
                    break;
                }
            }
        }
        match next {
            Some(h) => cur = h,
            None => return cur,
        }
    }
}
