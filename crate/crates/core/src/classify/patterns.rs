//! Hub/satellite templates for the parameterized graph families.
//!
//! A pattern is a small core graph with some vertices marked as hubs.
//! Required core edges must be present, optional ones may be, and no other
//! edge may join two core vertices. When satellites are allowed, every
//! vertex outside the core must have a nonempty neighbourhood made of hubs
//! only; otherwise the graph must be exactly the core.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, bits, Graph};
use crate::iso::{canonical_form, find_isomorphism, CanonicalForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    G1,
    G2,
    G3,
    #[serde(rename = "BOWTIE")]
    Bowtie,
    K4,
    C4,
    #[serde(rename = "DISC_1D")]
    Disc1d,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
    E1,
    E2,
    #[serde(rename = "B_P")]
    Petal,
    #[serde(rename = "B_C7")]
    C7,
    #[serde(rename = "DISC_2D_3COMP")]
    Disc2dThree,
    #[serde(rename = "DISC_2D_2COMP")]
    Disc2dTwo,
}

impl FamilyId {
    pub const ALL: [FamilyId; 22] = [
        FamilyId::G1,
        FamilyId::G2,
        FamilyId::G3,
        FamilyId::Bowtie,
        FamilyId::K4,
        FamilyId::C4,
        FamilyId::Disc1d,
        FamilyId::B1,
        FamilyId::B2,
        FamilyId::B3,
        FamilyId::B4,
        FamilyId::B5,
        FamilyId::B6,
        FamilyId::B7,
        FamilyId::B8,
        FamilyId::B9,
        FamilyId::E1,
        FamilyId::E2,
        FamilyId::Petal,
        FamilyId::C7,
        FamilyId::Disc2dThree,
        FamilyId::Disc2dTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::G1 => "G1",
            FamilyId::G2 => "G2",
            FamilyId::G3 => "G3",
            FamilyId::Bowtie => "BOWTIE",
            FamilyId::K4 => "K4",
            FamilyId::C4 => "C4",
            FamilyId::Disc1d => "DISC_1D",
            FamilyId::B1 => "B1",
            FamilyId::B2 => "B2",
            FamilyId::B3 => "B3",
            FamilyId::B4 => "B4",
            FamilyId::B5 => "B5",
            FamilyId::B6 => "B6",
            FamilyId::B7 => "B7",
            FamilyId::B8 => "B8",
            FamilyId::B9 => "B9",
            FamilyId::E1 => "E1",
            FamilyId::E2 => "E2",
            FamilyId::Petal => "B_P",
            FamilyId::C7 => "B_C7",
            FamilyId::Disc2dThree => "DISC_2D_3COMP",
            FamilyId::Disc2dTwo => "DISC_2D_2COMP",
        }
    }

    pub fn from_name(s: &str) -> Option<FamilyId> {
        FamilyId::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Families whose matching complex is one-dimensional and Cohen–Macaulay.
    pub fn is_1d_cm(self) -> bool {
        matches!(
            self,
            FamilyId::G1 | FamilyId::G2 | FamilyId::G3 | FamilyId::Bowtie | FamilyId::Disc1d
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPattern {
    pub id: FamilyId,
    pub names: Vec<&'static str>,
    pub hubs: Vec<usize>,
    pub required: Vec<(usize, usize)>,
    pub optional: Vec<(usize, usize)>,
    pub satellites: bool,
    req: Vec<u64>,
    allowed: Vec<u64>,
    order: Vec<usize>,
}

impl FamilyPattern {
    /// Builds a pattern from whitespace-separated vertex names and `a-b`
    /// edge tokens. Panics on malformed data; patterns are compiled in.
    pub fn parse(
        id: FamilyId,
        names: &'static str,
        hubs: &str,
        required: &str,
        optional: &str,
        satellites: bool,
    ) -> Self {
        let names: Vec<&'static str> = names.split_whitespace().collect();
        let idx = |s: &str| -> usize {
            names
                .iter()
                .position(|n| *n == s)
                .unwrap_or_else(|| panic!("{id}: unknown pattern vertex {s}"))
        };
        let edges = |s: &str| -> Vec<(usize, usize)> {
            s.split_whitespace()
                .map(|tok| {
                    let (a, b) = tok.split_once('-').expect("edge token a-b");
                    (idx(a), idx(b))
                })
                .collect()
        };
        let hubs: Vec<usize> = hubs.split_whitespace().map(idx).collect();
        let required = edges(required);
        let optional = edges(optional);
        let k = names.len();
        let mut req = vec![0u64; k];
        let mut allowed = vec![0u64; k];
        for &(a, b) in &required {
            req[a] |= bit(b);
            req[b] |= bit(a);
        }
        for &(a, b) in required.iter().chain(&optional) {
            allowed[a] |= bit(b);
            allowed[b] |= bit(a);
        }
        // hubs first, then breadth-first along required edges
        let mut order = hubs.clone();
        let mut placed = order.iter().fold(0u64, |m, &h| m | bit(h));
        let mut head = 0;
        while order.len() < k {
            if head == order.len() {
                let next = (0..k).find(|&v| placed & bit(v) == 0).unwrap();
                order.push(next);
                placed |= bit(next);
            }
            let at = order[head];
            head += 1;
            for v in bits(req[at] & !placed) {
                order.push(v);
                placed |= bit(v);
            }
        }
        let p = FamilyPattern {
            id,
            names,
            hubs,
            required,
            optional,
            satellites,
            req,
            allowed,
            order,
        };
        p.validate().unwrap_or_else(|e| panic!("{id}: {e}"));
        p
    }

    pub fn validate(&self) -> Result<(), String> {
        let k = self.names.len();
        if k > 64 {
            return Err("too many pattern vertices".into());
        }
        for &(a, b) in self.required.iter().chain(&self.optional) {
            if a == b || a >= k || b >= k {
                return Err(format!("bad edge {a}-{b}"));
            }
        }
        let mut all: Vec<(usize, usize)> = self
            .required
            .iter()
            .chain(&self.optional)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err("edge listed twice".into());
        }
        if self.satellites && self.hubs.is_empty() {
            return Err("satellites need at least one hub".into());
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn hub_mask(&self) -> u64 {
        self.hubs.iter().fold(0, |m, &h| m | bit(h))
    }

    /// The member with the optional edges selected by `optional_mask` and
    /// one extra vertex per entry of `satellites`, each attached to the
    /// hubs whose positions in `self.hubs` are set in that entry.
    pub fn instance(&self, optional_mask: u64, satellites: &[u64]) -> Graph {
        let k = self.len();
        let mut g = Graph::empty(k + satellites.len()).expect("pattern instances are small");
        for &(a, b) in &self.required {
            g.add_edge(a, b).unwrap();
        }
        for (i, &(a, b)) in self.optional.iter().enumerate() {
            if optional_mask >> i & 1 == 1 {
                g.add_edge(a, b).unwrap();
            }
        }
        for (s, &hubs) in satellites.iter().enumerate() {
            assert!(hubs != 0 && self.satellites, "satellites need a nonempty hub set");
            for (i, &h) in self.hubs.iter().enumerate() {
                if hubs >> i & 1 == 1 {
                    g.add_edge(k + s, h).unwrap();
                }
            }
        }
        g
    }

    /// Checks a complete assignment `map` (pattern vertex -> graph vertex).
    pub fn accepts(&self, g: &Graph, map: &[usize]) -> bool {
        let k = self.len();
        if map.len() != k || map.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let image = map.iter().fold(0u64, |m, &v| m | bit(v));
        if image.count_ones() as usize != k {
            return false;
        }
        for a in 0..k {
            for b in a + 1..k {
                let present = g.has_edge(map[a], map[b]);
                let required = self.req[a] & bit(b) != 0;
                let allowed = self.allowed[a] & bit(b) != 0;
                if present != required && !(present && allowed) {
                    return false;
                }
            }
        }
        let hub_image = self.hubs.iter().fold(0u64, |m, &h| m | bit(map[h]));
        bits(g.vertex_mask() & !image).all(|w| {
            let nb = g.neighbors(w);
            self.satellites && nb != 0 && nb & !hub_image == 0
        })
    }
}

/// Looks for an assignment of the pattern into `g`.
pub fn recognize_family(g: &Graph, pattern: &FamilyPattern) -> Option<Witness> {
    let k = pattern.len();
    if g.n() < k || (!pattern.satellites && g.n() != k) {
        return None;
    }
    let mut map = vec![usize::MAX; k];
    if extend(g, pattern, 0, &mut map, 0) {
        let image = map.iter().fold(0u64, |m, &v| m | bit(v));
        Some(Witness::Pattern {
            family: pattern.id,
            map: pattern
                .names
                .iter()
                .zip(&map)
                .map(|(n, &v)| (n.to_string(), v))
                .collect(),
            satellites: bits(g.vertex_mask() & !image).collect(),
        })
    } else {
        None
    }
}

fn extend(g: &Graph, p: &FamilyPattern, step: usize, map: &mut [usize], used: u64) -> bool {
    if step == p.len() {
        return p.accepts(g, map);
    }
    let v = p.order[step];
    let placed = &p.order[..step];
    let is_hub = p.hub_mask() & bit(v) != 0;
    let req_deg = p.req[v].count_ones() as usize;
    let max_deg = p.allowed[v].count_ones() as usize;
    let anchor = placed.iter().find(|&&q| p.req[v] & bit(q) != 0);
    let candidates = match anchor {
        Some(&q) => g.neighbors(map[q]) & !used,
        None => g.vertex_mask() & !used,
    };
    for c in bits(candidates) {
        let d = g.degree(c);
        if d < req_deg || (!is_hub && d > max_deg) {
            continue;
        }
        let consistent = placed.iter().all(|&q| {
            let present = g.has_edge(c, map[q]);
            if p.req[v] & bit(q) != 0 {
                present
            } else {
                !present || p.allowed[v] & bit(q) != 0
            }
        });
        if !consistent {
            continue;
        }
        map[v] = c;
        let used = used | bit(c);
        if step + 1 == p.hubs.len() && p.satellites && !hubs_leave_room(g, p, map, used) {
            continue;
        }
        if extend(g, p, step + 1, map, used) {
            return true;
        }
    }
    map[v] = usize::MAX;
    false
}

/// Once the hubs are placed, every other vertex with a neighbour outside
/// the hub image has to be a core vertex.
fn hubs_leave_room(g: &Graph, p: &FamilyPattern, map: &[usize], used: u64) -> bool {
    let hub_image = p.hubs.iter().fold(0u64, |m, &h| m | bit(map[h]));
    let forced = bits(g.vertex_mask() & !used)
        .filter(|&w| g.neighbors(w) & !hub_image != 0)
        .count();
    forced <= p.len() - p.hubs.len()
}

/// A certificate that `g` belongs to a family. Vertex ids refer to the
/// graph the witness was produced for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Pattern vertex name -> graph vertex, plus the satellite vertices.
    Pattern {
        family: FamilyId,
        map: BTreeMap<String, usize>,
        satellites: Vec<usize>,
    },
    /// `map[i]` is the image of vertex `i` of the family's fixed graph.
    Isomorphism { family: FamilyId, map: Vec<usize> },
    Petal { centre: usize, petals: Vec<Vec<usize>> },
    HamiltonianCycle { cycle: Vec<usize> },
    Components { family: FamilyId, parts: Vec<Part> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub vertices: Vec<usize>,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    Triangle,
    Star { centre: usize },
    Member { witness: Box<Witness> },
}

impl Witness {
    pub fn family(&self) -> FamilyId {
        match self {
            Witness::Pattern { family, .. }
            | Witness::Isomorphism { family, .. }
            | Witness::Components { family, .. } => *family,
            Witness::Petal { .. } => FamilyId::Petal,
            Witness::HamiltonianCycle { .. } => FamilyId::C7,
        }
    }

    /// Rewrites every vertex id through `f`.
    pub fn remap(&mut self, f: &impl Fn(usize) -> usize) {
        match self {
            Witness::Pattern { map, satellites, .. } => {
                map.values_mut().for_each(|v| *v = f(*v));
                satellites.iter_mut().for_each(|v| *v = f(*v));
            }
            Witness::Isomorphism { map, .. } => map.iter_mut().for_each(|v| *v = f(*v)),
            Witness::Petal { centre, petals } => {
                *centre = f(*centre);
                petals.iter_mut().flatten().for_each(|v| *v = f(*v));
            }
            Witness::HamiltonianCycle { cycle } => cycle.iter_mut().for_each(|v| *v = f(*v)),
            Witness::Components { parts, .. } => {
                for part in parts {
                    part.vertices.iter_mut().for_each(|v| *v = f(*v));
                    match &mut part.shape {
                        Shape::Triangle => {}
                        Shape::Star { centre } => *centre = f(*centre),
                        Shape::Member { witness } => witness.remap(f),
                    }
                }
            }
        }
    }
}

fn graph_of(edges: &[(usize, usize)]) -> Graph {
    Graph::from_edge_list(edges).expect("fixed family graphs are valid")
}

/// The fixed graph of a single-member family.
pub fn fixed_graph(id: FamilyId) -> Option<Graph> {
    Some(match id {
        FamilyId::Bowtie => crate::graph::named::bowtie(),
        FamilyId::K4 => crate::graph::named::complete(4).unwrap(),
        FamilyId::C4 => crate::graph::named::cycle(4).unwrap(),
        // two K4s sharing vertex 0
        FamilyId::E1 => graph_of(&[
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
            (0, 4), (0, 5), (0, 6), (4, 5), (4, 6), (5, 6),
        ]),
        // K4 on {0,1,2,3} and the 4-cycle 0-4-5-6-0
        FamilyId::E2 => graph_of(&[
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
            (0, 4), (4, 5), (5, 6), (6, 0),
        ]),
        _ => return None,
    })
}

fn fixed_forms() -> &'static Vec<(FamilyId, Graph, CanonicalForm)> {
    static FORMS: OnceLock<Vec<(FamilyId, Graph, CanonicalForm)>> = OnceLock::new();
    FORMS.get_or_init(|| {
        [FamilyId::Bowtie, FamilyId::K4, FamilyId::C4, FamilyId::E1, FamilyId::E2]
            .into_iter()
            .map(|id| {
                let g = fixed_graph(id).unwrap();
                let form = canonical_form(&g).unwrap();
                (id, g, form)
            })
            .collect()
    })
}

/// Canonical certificate of a fixed family graph.
pub fn fixed_form(id: FamilyId) -> Option<&'static CanonicalForm> {
    fixed_forms().iter().find(|(f, _, _)| *f == id).map(|(_, _, c)| c)
}

/// Recognition of a fixed family graph by canonical-form equality.
pub fn recognize_fixed(g: &Graph, id: FamilyId) -> Option<Witness> {
    let (_, fixed, form) = fixed_forms().iter().find(|(f, _, _)| *f == id)?;
    if g.n() != fixed.n() || g.edge_count() != fixed.edge_count() {
        return None;
    }
    if canonical_form(g).ok()? != *form {
        return None;
    }
    let map = find_isomorphism(fixed, g).ok()??;
    Some(Witness::Isomorphism { family: id, map })
}

pub fn patterns() -> &'static [FamilyPattern] {
    static PATTERNS: OnceLock<Vec<FamilyPattern>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        use FamilyId::*;
        vec![
            FamilyPattern::parse(G1, "1 2 3 4 5", "2 4", "1-2 2-3 3-4 4-5", "1-4 2-5", true),
            FamilyPattern::parse(G2, "1 2 3 4 5", "4", "1-2 2-3 3-4 4-5 1-3", "1-4 2-4", true),
            FamilyPattern::parse(
                G3,
                "1 2 3 4 5",
                "",
                "1-2 2-3 3-4 4-5 5-1",
                "1-3 3-5 5-2 2-4 4-1",
                false,
            ),
            FamilyPattern::parse(B1, "g1 g2 g3 v1 v2 v3", "g1 g2 g3", "g1-v1 g2-v2 g3-v3", "", true),
            FamilyPattern::parse(
                B2,
                "g1 g2 g3 v1 v2 v3 v4",
                "g1 g2 g3",
                "g1-v1 v1-g2 g2-v2 v2-g3 g3-v4 v4-g2 g2-v3 v3-g1",
                "",
                true,
            ),
            FamilyPattern::parse(
                B3,
                "g1 g2 g3 v1 v2 v3 v4",
                "g1 g2 g3",
                "g1-v2 v2-g2 g2-v3 v3-g3 g3-v4 v4-g1 v1-g1 v1-g2 v1-g3",
                "g1-v3 g2-v4 g3-v2",
                true,
            ),
            FamilyPattern::parse(
                B4,
                "g1 g2 g3 v1 v2 v3 v4 v5",
                "g1 g2 g3",
                "g1-v2 v2-g2 g2-v3 v3-g3 g3-v4 v4-g1 g1-v5 g2-v1 v1-g3",
                "g1-v3 g2-v4 g3-v2",
                true,
            ),
            FamilyPattern::parse(
                B5,
                "g1 g2 g3 v1 v2 v3 v4 v5",
                "g1 g2 g3",
                "v2-g1 g1-v1 v1-g2 g2-v3 v3-g1 v3-g3 g3-v4 g3-v5 v5-g2",
                "v4-g2 g2-v2 g1-v5 g3-v1",
                true,
            ),
            FamilyPattern::parse(
                B6,
                "g1 g2 g3 v1 v2 v3 v4 v5",
                "g1 g2 g3",
                "v1-g1 g1-v2 v2-g2 g2-v5 v5-g3 g3-v4 g2-v3",
                "v2-g3 g3-v3 v4-g2",
                true,
            ),
            FamilyPattern::parse(
                B7,
                "g v1 v2 v3 v4 v5 v6 v7",
                "g",
                "v1-v2 v2-v3 v3-v1 v1-g g-v4 v4-v5 v5-v6 v6-v4 g-v7",
                "v2-g g-v3 v5-g g-v6",
                true,
            ),
            FamilyPattern::parse(
                B8,
                "g1 g2 v1 v2 v3 v4 v5 v6",
                "g1 g2",
                "v1-v2 v2-v3 v3-v1 v1-g1 g1-v4 v4-g2 g2-v6 g1-v5",
                "v2-g1 g1-v3 v5-g2 g1-v6",
                true,
            ),
            FamilyPattern::parse(
                B9,
                "g1 g2 v1 v2 v3 v4 v5 v6",
                "g1 g2",
                "g2-v1 v1-v2 v2-v3 v3-v1 v1-g1 g1-v6 v6-g2 g2-v5 g1-v4",
                "g2-v4 g1-v5",
                true,
            ),
        ]
    })
}

pub fn pattern(id: FamilyId) -> Option<&'static FamilyPattern> {
    patterns().iter().find(|p| p.id == id)
}
