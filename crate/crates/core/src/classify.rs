//! Growth classes of repeated straight converting.
//!
//! After `j` convertings a vertex is a walk `w` of `j` arcs in the starting
//! graph, with the in-degree of its first vertex and the out-degree of its
//! last. The cyclomatic number therefore grows at converting `j + 1` by the
//! weighted count of walks of length `j` from a merge vertex (in-degree
//! `>= 2`) to a branch vertex (out-degree `>= 2`). Shortest such paths are
//! the `l31` intervals:
//!
//! * no interval: `ν` never changes (H1, homonomic);
//! * intervals, but no walk between a merge and a branch vertex passes a
//!   contour: `ν` grows for a bounded number of steps (H2, bounded
//!   heteronomous);
//! * some merge-to-branch walk runs through a contour: `ν` keeps growing
//!   (H3, progressive heteronomous).
//!
//! On graphs where every vertex lies on an entrance-to-exit path the last
//! case is exactly "has a contour"; [`ClassReport::contour_rule_class`] keeps
//! that reading alongside.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::convert::AugmentMode;
use crate::digraph::{
    has_contour, on_contour, reachable_from, validate_f_requirements, Digraph, FMode, VertexId,
};
use crate::duality::is_canonical;
use crate::matrix::{Role, RoleMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    H1,
    H2,
    H3,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::H1 => "homonomic",
            GraphClass::H2 => "bounded-heteronomous",
            GraphClass::H3 => "progressive-heteronomous",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphClass::H1 => "H1",
            GraphClass::H2 => "H2",
            GraphClass::H3 => "H3",
        };
        f.write_str(s)
    }
}

/// Shortest directed path from a merge vertex to a branch vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct L31Interval {
    pub start: VertexId,
    pub end: VertexId,
    pub path: Vec<VertexId>,
    pub length: usize,
}

fn is_merge(h: &Digraph, v: VertexId) -> bool {
    h.indeg(v) >= 2
}

fn is_branch(h: &Digraph, v: VertexId) -> bool {
    h.outdeg(v) >= 2
}

/// BFS distances and parents from `start`, visiting successors in id order.
fn bfs(h: &Digraph, start: VertexId) -> (Vec<usize>, Vec<VertexId>) {
    let mut dist = vec![usize::MAX; h.vertex_count()];
    let mut parent = vec![usize::MAX; h.vertex_count()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in h.successors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Every merge/branch pair joined by a directed path, with one shortest path
/// each. Sorted by length, then start, then end.
pub fn find_l31_intervals(h: &Digraph) -> Vec<L31Interval> {
    let mut out = Vec::new();
    for start in (0..h.vertex_count()).filter(|&v| is_merge(h, v)) {
        let (dist, parent) = bfs(h, start);
        for end in (0..h.vertex_count()).filter(|&v| is_branch(h, v)) {
            if dist[end] == usize::MAX {
                continue;
            }
            let mut path = vec![end];
            let mut v = end;
            while v != start {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            out.push(L31Interval {
                start,
                end,
                length: dist[end],
                path,
            });
        }
    }
    out.sort_by_key(|i| (i.length, i.start, i.end));
    out
}

/// Both holonomic readings side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomicReport {
    /// No `l31` interval exists.
    pub holonomic: bool,
    /// Shortest interval widened by one predecessor and one successor.
    pub offending_path: Option<Vec<VertexId>>,
    /// Degree sums monotone along every maximal simple path; `None` if the
    /// path enumeration limit was hit.
    pub literal_holonomic: Option<bool>,
    pub literal_offending_path: Option<Vec<VertexId>>,
    pub agree: bool,
}

/// Path enumeration limit for the literal degree-sum test.
pub const LITERAL_PATH_LIMIT: usize = 100_000;

fn monotone(seq: &[usize]) -> bool {
    seq.windows(2).all(|w| w[0] <= w[1]) || seq.windows(2).all(|w| w[0] >= w[1])
}

/// First maximal simple path whose degree sums are not monotone.
/// `Err(())` when more than [`LITERAL_PATH_LIMIT`] paths were examined.
fn literal_violation(h: &Digraph) -> Result<Option<Vec<VertexId>>, ()> {
    struct Search<'a> {
        h: &'a Digraph,
        on_path: Vec<bool>,
        path: Vec<VertexId>,
        visited: usize,
    }
    impl Search<'_> {
        fn run(&mut self) -> Result<Option<Vec<VertexId>>, ()> {
            self.visited += 1;
            if self.visited > LITERAL_PATH_LIMIT {
                return Err(());
            }
            let last = *self.path.last().expect("non-empty");
            let mut extended = false;
            for &w in self.h.successors(last) {
                if self.on_path[w] {
                    continue;
                }
                extended = true;
                self.on_path[w] = true;
                self.path.push(w);
                let found = self.run()?;
                self.path.pop();
                self.on_path[w] = false;
                if found.is_some() {
                    return Ok(found);
                }
            }
            if !extended {
                let first = self.path[0];
                let extendable_back = self.h.predecessors(first).iter().any(|&p| !self.on_path[p]);
                if !extendable_back {
                    let sums: Vec<usize> = self
                        .path
                        .iter()
                        .map(|&v| self.h.indeg(v) + self.h.outdeg(v))
                        .collect();
                    if !monotone(&sums) {
                        return Ok(Some(self.path.clone()));
                    }
                }
            }
            Ok(None)
        }
    }
    let mut search = Search {
        h,
        on_path: vec![false; h.vertex_count()],
        path: Vec::new(),
        visited: 0,
    };
    for v in 0..h.vertex_count() {
        search.on_path[v] = true;
        search.path.push(v);
        let found = search.run()?;
        search.path.pop();
        search.on_path[v] = false;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn widen(h: &Digraph, interval: &L31Interval) -> Vec<VertexId> {
    let mut path = interval.path.clone();
    if let Some(&p) = h
        .predecessors(interval.start)
        .iter()
        .find(|p| !path.contains(p))
    {
        path.insert(0, p);
    }
    if let Some(&s) = h
        .successors(interval.end)
        .iter()
        .find(|s| !path.contains(s))
    {
        path.push(s);
    }
    path
}

pub fn holonomic_check(h: &Digraph) -> HolonomicReport {
    let intervals = find_l31_intervals(h);
    let offending_path = intervals.first().map(|i| widen(h, i));
    let literal = literal_violation(h);
    let (literal_holonomic, literal_offending_path) = match literal {
        Ok(found) => (Some(found.is_none()), found),
        Err(()) => (None, None),
    };
    let holonomic = intervals.is_empty();
    HolonomicReport {
        holonomic,
        offending_path,
        agree: literal_holonomic.is_none_or(|l| l == holonomic),
        literal_holonomic,
        literal_offending_path,
    }
}

/// `Σ (indeg - 1)(outdeg - 1)` over vertexes with both degrees non-zero.
pub fn delta_nu(h: &Digraph) -> i64 {
    (0..h.vertex_count())
        .filter(|&v| h.indeg(v) > 0 && h.outdeg(v) > 0)
        .map(|v| (h.indeg(v) as i64 - 1) * (h.outdeg(v) as i64 - 1))
        .sum()
}

/// Class from the merge/branch/contour structure, plus the length of the
/// shortest interval. Linear time.
pub fn structural_class(h: &Digraph) -> (GraphClass, Option<usize>) {
    let merges: Vec<VertexId> = (0..h.vertex_count()).filter(|&v| is_merge(h, v)).collect();
    let branches: Vec<VertexId> = (0..h.vertex_count()).filter(|&v| is_branch(h, v)).collect();
    // multi-source BFS from all merges
    let mut dist = vec![usize::MAX; h.vertex_count()];
    let mut queue = VecDeque::new();
    for &m in &merges {
        dist[m] = 0;
        queue.push_back(m);
    }
    while let Some(v) = queue.pop_front() {
        for &w in h.successors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let j_max = branches
        .iter()
        .map(|&b| dist[b])
        .filter(|&d| d != usize::MAX)
        .min();
    let Some(j_max) = j_max else {
        return (GraphClass::H1, None);
    };
    (
        if growth_contour_vertex(h, &merges, &branches).is_some() {
            GraphClass::H3
        } else {
            GraphClass::H2
        },
        Some(j_max),
    )
}

/// A contour vertex lying on some merge-to-branch walk.
fn growth_contour_vertex(
    h: &Digraph,
    merges: &[VertexId],
    branches: &[VertexId],
) -> Option<VertexId> {
    let from_merge = reachable_from(h, merges, false);
    let to_branch = reachable_from(h, branches, true);
    let cyclic = on_contour(h);
    (0..h.vertex_count()).find(|&v| from_merge[v] && to_branch[v] && cyclic[v])
}

/// Shortest cycle through `v`.
fn cycle_through(h: &Digraph, v: VertexId) -> Option<Vec<VertexId>> {
    let (dist, parent) = bfs(h, v);
    let last = h
        .predecessors(v)
        .iter()
        .copied()
        .filter(|&p| dist[p] != usize::MAX)
        .min_by_key(|&p| (dist[p], p))?;
    let mut cycle = vec![v];
    let mut u = last;
    while u != v {
        cycle.push(u);
        u = parent[u];
    }
    cycle.push(v);
    cycle.reverse();
    Some(cycle)
}

/// Predicted vertex counts `n_1, n_2, ...` with the per-step terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthPrediction {
    pub augment: AugmentMode,
    /// `n[0]` is the input's vertex count.
    pub n: Vec<i128>,
    /// `delta_n[k] = n[k+1] - n[k]`.
    pub delta_n: Vec<i128>,
    /// Predicted `ν` increase at each converting.
    pub delta_nu: Vec<i128>,
    /// Entrance/exit vertexes added after each converting.
    pub added: Vec<usize>,
    /// Counts left `i128` range; the sequences stop early.
    pub overflow: bool,
}

/// Tracks where the source walk ends along the entrance chain, and where the
/// sink walk starts along the exit chain, to tell when `AsNeeded` augments.
struct TerminalChains<'a> {
    h: &'a Digraph,
    entrance: Option<VertexId>,
    exit: Option<VertexId>,
}

impl TerminalChains<'_> {
    fn needs_augmenting(&self) -> bool {
        let ent = self
            .entrance
            .filter(|&e| self.h.outdeg(e) == 1)
            .map(|e| self.h.successors(e)[0])
            .is_some_and(|next| self.h.outdeg(next) >= 2);
        let ext = self
            .exit
            .filter(|&x| self.h.indeg(x) == 1)
            .map(|x| self.h.predecessors(x)[0])
            .is_some_and(|prev| self.h.indeg(prev) >= 2);
        ent || ext
    }

    fn advance(&mut self) {
        self.entrance = self
            .entrance
            .filter(|&e| self.h.outdeg(e) == 1)
            .map(|e| self.h.successors(e)[0]);
        self.exit = self
            .exit
            .filter(|&x| self.h.indeg(x) == 1)
            .map(|x| self.h.predecessors(x)[0]);
    }
}

/// Predicts the vertex counts of `steps` convertings without building the
/// graphs.
///
/// `Δn_1 = m_1 - n_1 + added_1` and `Δn_{k+1} = Δn_k + Δν_k + (added_{k+1} -
/// added_k)`, where `Δν_k` is the merge-to-branch walk count of length
/// `k - 1` weighted by `(indeg - 1)(outdeg - 1)` of the walk's ends. With
/// `Faithful` augmentation `added` is constant and this is the plain
/// `Δn_ξ = Δn_{ξ-1} + Δν(H_{ξ-1})` recurrence. Exact whenever the number of
/// weak components stays fixed, which holds for connected single
/// entrance/exit inputs under augmentation. Without augmentation a source
/// that starts to branch splits its component and the prediction drifts.
pub fn predict_growth(h: &Digraph, steps: usize, augment: AugmentMode) -> GrowthPrediction {
    let nv = h.vertex_count();
    // terminals fed by entrance/exit vertexes have degree 1 on that side
    let weight = |d: usize| match augment {
        AugmentMode::Never => d as i128 - 1,
        _ => d.saturating_sub(1) as i128,
    };
    let a: Vec<i128> = (0..nv).map(|v| weight(h.indeg(v))).collect();
    let mut walk: Vec<i128> = (0..nv).map(|v| weight(h.outdeg(v))).collect();

    let sources = h.sources();
    let sinks = h.sinks();
    let terminals = usize::from(sources.len() == 1) + usize::from(sinks.len() == 1);
    let mut chains = TerminalChains {
        h,
        entrance: (sources.len() == 1).then(|| sources[0]),
        exit: (sinks.len() == 1).then(|| sinks[0]),
    };
    let mut next_added = || match augment {
        AugmentMode::Never => 0,
        AugmentMode::Faithful => terminals,
        AugmentMode::AsNeeded => {
            if chains.needs_augmenting() {
                terminals
            } else {
                chains.advance();
                0
            }
        }
    };

    let mut pred = GrowthPrediction {
        augment,
        n: vec![nv as i128],
        delta_n: Vec::new(),
        delta_nu: Vec::new(),
        added: Vec::new(),
        overflow: false,
    };
    if steps == 0 {
        return pred;
    }
    let mut added = next_added();
    let mut dn = h.arc_count() as i128 - nv as i128 + added as i128;
    for k in 0..steps {
        let dnu = a
            .iter()
            .zip(&walk)
            .try_fold(0i128, |acc, (&x, &y)| acc.checked_add(x.checked_mul(y)?));
        let next_n = pred.n[k].checked_add(dn);
        let (Some(dnu), Some(next_n)) = (dnu, next_n) else {
            pred.overflow = true;
            break;
        };
        pred.n.push(next_n);
        pred.delta_n.push(dn);
        pred.delta_nu.push(dnu);
        pred.added.push(added);
        if k + 1 == steps {
            break;
        }
        let mut next_walk = vec![0i128; nv];
        for (u, slot) in next_walk.iter_mut().enumerate() {
            let s = h
                .successors(u)
                .iter()
                .try_fold(0i128, |acc, &w| acc.checked_add(walk[w]));
            match s {
                Some(s) => *slot = s,
                None => {
                    pred.overflow = true;
                    return pred;
                }
            }
        }
        walk = next_walk;
        let next_added = next_added();
        match dn
            .checked_add(dnu)
            .and_then(|d| d.checked_add(next_added as i128 - added as i128))
        {
            Some(d) => dn = d,
            None => {
                pred.overflow = true;
                return pred;
            }
        }
        added = next_added;
    }
    pred
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: GraphClass,
    /// Class by the contour-only rule: H3 iff any contour.
    pub contour_rule_class: GraphClass,
    /// Shortest contour, if any.
    pub contours: Vec<Vec<VertexId>>,
    /// A contour on a merge-to-branch walk (H3 witness).
    pub growth_contour: Option<Vec<VertexId>>,
    pub intervals: Vec<L31Interval>,
    /// Convertings with constant `ν` before the first increase; `None` when
    /// `ν` never grows.
    pub j_max: Option<usize>,
    /// The input read as a relation matrix is canonical.
    pub canonical: bool,
    pub holonomic: HolonomicReport,
    pub predicted_growth: GrowthPrediction,
    pub warnings: Vec<String>,
}

/// Prediction horizon used by [`classify_graph`].
pub const REPORT_HORIZON: usize = 6;

pub fn classify_graph(h: &Digraph) -> ClassReport {
    let (class, j_max) = structural_class(h);
    let shortest = has_contour(h);
    let contour_rule_class = if shortest.is_some() {
        GraphClass::H3
    } else if j_max.is_some() {
        GraphClass::H2
    } else {
        GraphClass::H1
    };
    let merges: Vec<VertexId> = (0..h.vertex_count()).filter(|&v| is_merge(h, v)).collect();
    let branches: Vec<VertexId> = (0..h.vertex_count()).filter(|&v| is_branch(h, v)).collect();
    let growth_contour = (class == GraphClass::H3)
        .then(|| growth_contour_vertex(h, &merges, &branches))
        .flatten()
        .and_then(|v| cycle_through(h, v));

    let mut warnings = Vec::new();
    let f = validate_f_requirements(h, FMode::Quasicanonical);
    if !f.ok {
        for v in &f.violations {
            warnings.push(format!("standing assumption violated: {}", v.description));
        }
    }
    if class != contour_rule_class {
        if merges.is_empty() && branches.is_empty() {
            warnings.push("pure contour: ν is invariant under converting".to_string());
        } else {
            warnings.push(format!(
                "contour lies on no merge-to-branch walk: contour rule gives {contour_rule_class}, growth gives {class}"
            ));
        }
    }
    let augment = if f.ok {
        AugmentMode::Faithful
    } else {
        AugmentMode::Never
    };
    ClassReport {
        class,
        contour_rule_class,
        contours: shortest.into_iter().collect(),
        growth_contour,
        intervals: find_l31_intervals(h),
        j_max,
        canonical: is_canonical(&RoleMatrix::new(Role::L, h.clone()))
            .canonical
            .unwrap_or(false),
        holonomic: holonomic_check(h),
        predicted_growth: predict_growth(h, REPORT_HORIZON, augment),
        warnings,
    }
}
