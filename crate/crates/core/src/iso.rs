//! Exact canonical labelling for small graphs.
//!
//! Colour refinement to an equitable ordered partition, then a full
//! individualise-and-refine search over every branch. Each leaf is a
//! discrete partition, i.e. a relabelling; the certificate is the graph6
//! string of the relabelled graph whose upper-triangle bit string is
//! lexicographically smallest. Branches on twin vertices (same neighbourhood
//! up to each other) are explored once, since the transposition swapping
//! them is an automorphism fixing the current partition.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::io::encode_graph6;

/// Largest order accepted by [`canonical_form`]; the packed code is a `u128`.
pub const MAX_CANON_VERTICES: usize = 16;

/// Canonical certificate: graph6 text of the canonically relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A canonical form together with the labelling that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `labelling[v]` is the canonical position of vertex `v`.
    pub labelling: Vec<usize>,
}

type Partition = Vec<Vec<usize>>;

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labelling(g).map(|c| c.form)
}

pub fn canonical_labelling(g: &Graph) -> Result<Canonical> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::capability(format!(
            "canonical form supports at most {MAX_CANON_VERTICES} vertices, got {n}"
        )));
    }
    let mut root: Partition = if n == 0 { vec![] } else { vec![(0..n).collect()] };
    refine(g, &mut root);
    let mut best: Option<(u128, Vec<usize>)> = None;
    search(g, root, &mut best);
    let labelling = best.map(|(_, p)| p).unwrap_or_default();
    let form = CanonicalForm(encode_graph6(&g.relabel(&labelling)));
    Ok(Canonical { form, labelling })
}

/// An isomorphism `self -> other` as a vertex map, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let ca = canonical_labelling(a)?;
    let cb = canonical_labelling(b)?;
    if ca.form != cb.form {
        return Ok(None);
    }
    let mut inverse_b = vec![0; b.n()];
    for (v, &pos) in cb.labelling.iter().enumerate() {
        inverse_b[pos] = v;
    }
    Ok(Some(ca.labelling.iter().map(|&pos| inverse_b[pos]).collect()))
}

/// Keeps the first graph of each isomorphism class, preserving input order.
pub fn dedup_by_iso(graphs: &[Graph]) -> Result<Vec<Graph>> {
    let forms: Vec<CanonicalForm> = graphs
        .par_iter()
        .map(canonical_form)
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    Ok(graphs
        .iter()
        .zip(forms)
        .filter(|(_, f)| seen.insert(f.clone()))
        .map(|(g, _)| g.clone())
        .collect())
}

/// Splits cells by neighbour counts into every cell until stable. New
/// sub-cells replace their parent in increasing signature order, so the
/// result depends only on the graph and the incoming ordered partition.
fn refine(g: &Graph, partition: &mut Partition) {
    loop {
        let masks: Vec<u64> = partition
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | bit(v)))
            .collect();
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(partition.len());
        for cell in partition.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks
                        .iter()
                        .map(|m| (g.neighbors(v) & m).count_ones())
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut sub: Vec<usize> = keyed[start..i].iter().map(|(_, v)| *v).collect();
                    sub.sort_unstable();
                    next.push(sub);
                    start = i;
                }
            }
        }
        if next.len() != partition.len() {
            changed = true;
        }
        *partition = next;
        if !changed {
            return;
        }
    }
}

fn search(g: &Graph, partition: Partition, best: &mut Option<(u128, Vec<usize>)>) {
    let target = partition
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(t) = target else {
        let mut labelling = vec![0; g.n()];
        for (pos, cell) in partition.iter().enumerate() {
            labelling[cell[0]] = pos;
        }
        let code = leaf_code(g, &labelling);
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            *best = Some((code, labelling));
        }
        return;
    };
    let cell = &partition[t];
    let mut explored: Vec<usize> = Vec::new();
    for &v in cell {
        if explored.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        explored.push(v);
        let mut child: Partition = Vec::with_capacity(partition.len() + 1);
        child.extend_from_slice(&partition[..t]);
        child.push(vec![v]);
        child.push(cell.iter().copied().filter(|&u| u != v).collect());
        child.extend_from_slice(&partition[t + 1..]);
        refine(g, &mut child);
        search(g, child, best);
    }
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u) & !bit(v) == g.neighbors(v) & !bit(u)
}

/// Upper-triangle bits of the relabelled graph in graph6 order, packed
/// most-significant first so integer order is lexicographic order.
fn leaf_code(g: &Graph, labelling: &[usize]) -> u128 {
    let n = g.n();
    let mut inverse = vec![0; n];
    for (v, &pos) in labelling.iter().enumerate() {
        inverse[pos] = v;
    }
    let mut code = 0u128;
    for j in 1..n {
        let row = g.neighbors(inverse[j]);
        for &w in &inverse[..j] {
            code = (code << 1) | ((row >> w) & 1) as u128;
        }
    }
    code
}
