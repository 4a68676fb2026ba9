//! Arc subdivision (`Δn`) and its inverse contraction.
//!
//! Subdividing `x -> y` into `x -> w -> y` with a fresh vertex `w` keeps the
//! reachability relation among the old vertexes unchanged, and enough
//! subdivisions bring any relation matrix into quasi-canonical or canonical
//! form.

use serde::{Deserialize, Serialize};

use crate::digraph::{Arc, Digraph, VertexId};
use crate::duality::{branch_into_merge_arcs, quasi_verdict};
use crate::error::NormalizeError;
use crate::matrix::RoleMatrix;

const INSERTED_PREFIX: &str = "x+";

/// Index `k` of an inserted-vertex label `x+<k>`.
pub fn inserted_index(label: &str) -> Option<usize> {
    label.strip_prefix(INSERTED_PREFIX)?.parse().ok()
}

fn next_inserted_index(g: &Digraph) -> usize {
    g.labels()
        .iter()
        .flatten()
        .filter_map(|l| inserted_index(l))
        .max()
        .unwrap_or(0)
        + 1
}

/// One subdivision: `tail -> head` became `tail -> vertex -> head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Insertion {
    pub tail: VertexId,
    pub head: VertexId,
    pub vertex: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    QuasiCanonical,
    Canonical,
}

/// How often the deviation matrix is recomputed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Subdivide every violating arc found in one evaluation, then re-evaluate.
    #[default]
    Sweep,
    /// Re-evaluate after each single subdivision.
    Immediate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub target: Target,
    pub strategy: Strategy,
    pub input_order: usize,
    pub steps: Vec<Insertion>,
    pub s_q: usize,
    pub rounds: usize,
    pub converged: bool,
    pub cap: usize,
    /// Set when the insertion count lands on `n² - 1`.
    pub s_q_is_n2_minus_1: bool,
    pub result: RoleMatrix,
}

fn subdivide(g: &Digraph, (x, y): Arc) -> Result<Digraph, NormalizeError> {
    if !g.has_arc(x, y) {
        return Err(NormalizeError::ArcAbsent(x, y));
    }
    let w = g.vertex_count();
    let mut arcs: Vec<Arc> = g.arcs().iter().copied().filter(|&a| a != (x, y)).collect();
    arcs.push((x, w));
    arcs.push((w, y));
    arcs.sort_unstable();
    let mut labels = g.labels().to_vec();
    labels.push(Some(format!("{INSERTED_PREFIX}{}", next_inserted_index(g))));
    Ok(Digraph::from_sorted_unchecked(w + 1, arcs, labels))
}

/// `Δn`: replaces `x -> y` by `x -> n -> y`, where `n` is the old order.
pub fn delta_n_insert(l: &RoleMatrix, arc: Arc) -> Result<RoleMatrix, NormalizeError> {
    Ok(RoleMatrix::new(l.role(), subdivide(l.graph(), arc)?))
}

fn violations(m: &RoleMatrix, target: Target) -> Vec<Arc> {
    if target == Target::Canonical {
        let deg: Vec<Arc> = branch_into_merge_arcs(m)
            .into_iter()
            .map(|v| (v.tail, v.head))
            .collect();
        if !deg.is_empty() {
            return deg;
        }
    }
    let verdict = quasi_verdict(m);
    if !verdict.violating_arcs.is_empty() {
        verdict
            .violating_arcs
            .into_iter()
            .map(|v| (v.tail, v.head))
            .collect()
    } else {
        verdict.minor_failures
    }
}

/// Insertion cap `10·n²` for an input of order `n` (at least 10).
pub fn insertion_cap(n: usize) -> usize {
    10 * n.max(1) * n.max(1)
}

pub fn normalize(
    l: &RoleMatrix,
    target: Target,
    strategy: Strategy,
) -> Result<NormalizationReport, NormalizeError> {
    let n = l.order();
    let cap = insertion_cap(n);
    let mut g = l.graph().clone();
    let mut steps = Vec::new();
    let mut rounds = 0;
    loop {
        let current = RoleMatrix::new(l.role(), g.clone());
        let todo = violations(&current, target);
        if todo.is_empty() {
            break;
        }
        rounds += 1;
        let batch: &[Arc] = match strategy {
            Strategy::Sweep => &todo,
            Strategy::Immediate => &todo[..1],
        };
        for &arc in batch {
            if steps.len() >= cap {
                return Err(NormalizeError::NotConverged {
                    insertions: steps.len(),
                    cap,
                });
            }
            let vertex = g.vertex_count();
            g = subdivide(&g, arc)?;
            steps.push(Insertion {
                tail: arc.0,
                head: arc.1,
                vertex,
            });
        }
    }
    let s_q = steps.len();
    Ok(NormalizationReport {
        target,
        strategy,
        input_order: n,
        steps,
        s_q,
        rounds,
        converged: true,
        cap,
        s_q_is_n2_minus_1: n > 0 && s_q == n * n - 1,
        result: RoleMatrix::new(l.role(), g),
    })
}

pub fn quasi_normalize(l: &RoleMatrix) -> Result<NormalizationReport, NormalizeError> {
    normalize(l, Target::QuasiCanonical, Strategy::Sweep)
}

pub fn normalize_canonical(l: &RoleMatrix) -> Result<NormalizationReport, NormalizeError> {
    normalize(l, Target::Canonical, Strategy::Sweep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReduceScope {
    /// Only vertexes labeled `x+<k>`.
    Inserted,
    /// Any vertex with in- and out-degree 1.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preserve {
    Nothing,
    QuasiCanonical,
    Canonical,
}

/// `tail -> vertex -> head` became `tail -> head`. Ids are those before the
/// contraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    pub vertex: VertexId,
    pub label: Option<String>,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub result: RoleMatrix,
    pub log: Vec<Contraction>,
}

fn contract(g: &Digraph, v: VertexId) -> (Digraph, Contraction) {
    let x = g.predecessors(v)[0];
    let y = g.successors(v)[0];
    let shift = |u: VertexId| if u > v { u - 1 } else { u };
    let mut arcs: Vec<Arc> = g
        .arcs()
        .iter()
        .filter(|&&(t, h)| t != v && h != v)
        .map(|&(t, h)| (shift(t), shift(h)))
        .collect();
    arcs.push((shift(x), shift(y)));
    arcs.sort_unstable();
    let mut labels = g.labels().to_vec();
    let label = labels.remove(v);
    (
        Digraph::from_sorted_unchecked(g.vertex_count() - 1, arcs, labels),
        Contraction {
            vertex: v,
            label,
            tail: x,
            head: y,
        },
    )
}

fn passes(m: &RoleMatrix, preserve: Preserve) -> bool {
    match preserve {
        Preserve::Nothing => true,
        Preserve::QuasiCanonical => quasi_verdict(m).quasi_canonical,
        Preserve::Canonical => {
            quasi_verdict(m).quasi_canonical && branch_into_merge_arcs(m).is_empty()
        }
    }
}

/// `-Δn`: contracts degree-(1,1) vertexes in ascending id order until none
/// qualifies. A contraction is skipped if it would create a loop or a
/// duplicate arc, or break the requested form.
pub fn reduce(l: &RoleMatrix, scope: ReduceScope, preserve: Preserve) -> Reduction {
    let mut g = l.graph().clone();
    let mut log = Vec::new();
    'outer: loop {
        for v in 0..g.vertex_count() {
            if g.indeg(v) != 1 || g.outdeg(v) != 1 {
                continue;
            }
            if scope == ReduceScope::Inserted
                && !g.label(v).is_some_and(|l| inserted_index(l).is_some())
            {
                continue;
            }
            let (x, y) = (g.predecessors(v)[0], g.successors(v)[0]);
            if x == y || g.has_arc(x, y) {
                continue;
            }
            let (next, entry) = contract(&g, v);
            if !passes(&RoleMatrix::new(l.role(), next.clone()), preserve) {
                continue;
            }
            g = next;
            log.push(entry);
            continue 'outer;
        }
        break;
    }
    Reduction {
        result: RoleMatrix::new(l.role(), g),
        log,
    }
}

/// Re-inserts contracted vertexes, newest first, restoring the input of
/// [`reduce`] exactly.
pub fn undo_reduction(reduction: &Reduction) -> RoleMatrix {
    let mut g = reduction.result.graph().clone();
    for c in reduction.log.iter().rev() {
        let v = c.vertex;
        let lift = |u: VertexId| if u >= v { u + 1 } else { u };
        let (x, y) = (
            if c.tail > v { c.tail - 1 } else { c.tail },
            if c.head > v { c.head - 1 } else { c.head },
        );
        let mut arcs: Vec<Arc> = g
            .arcs()
            .iter()
            .filter(|&&a| a != (x, y))
            .map(|&(t, h)| (lift(t), lift(h)))
            .collect();
        arcs.push((c.tail, v));
        arcs.push((v, c.head));
        arcs.sort_unstable();
        let mut labels = g.labels().to_vec();
        labels.insert(v, c.label.clone());
        g = Digraph::from_sorted_unchecked(g.vertex_count() + 1, arcs, labels);
    }
    RoleMatrix::new(reduction.result.role(), g)
}

/// Undoes a normalization run from its insertion log, newest insertion first.
pub fn undo_normalization(report: &NormalizationReport) -> RoleMatrix {
    let mut g = report.result.graph().clone();
    for ins in report.steps.iter().rev() {
        // the newest inserted vertex always carries the highest id
        debug_assert_eq!(ins.vertex + 1, g.vertex_count());
        g = contract(&g, ins.vertex).0;
    }
    RoleMatrix::new(report.result.role(), g)
}
