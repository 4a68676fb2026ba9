//! The directed-graph substrate shared by every other module.
//!
//! A [`Digraph`] is immutable once built: vertexes are the dense range
//! `0..n`, arcs are kept sorted lexicographically by `(tail, head)` and
//! loops or duplicate arcs are rejected at construction.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// A directed arc `tail -> head`.
pub type Arc = (VertexId, VertexId);

/// Loop-free, simple directed graph with optional unique vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
    labels: Vec<Option<String>>,
    #[serde(skip)]
    out_adj: Vec<Vec<VertexId>>,
    #[serde(skip)]
    in_adj: Vec<Vec<VertexId>>,
}

impl Digraph {
    /// Builds a graph on `n` vertexes. Arcs are sorted; loops, duplicates and
    /// out-of-range endpoints are errors.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, GraphError> {
        Self::with_labels(n, arcs, vec![None; n])
    }

    pub fn with_labels(
        n: usize,
        arcs: impl IntoIterator<Item = Arc>,
        labels: Vec<Option<String>>,
    ) -> Result<Self, GraphError> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        for &(t, h) in &arcs {
            if t >= n || h >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: t.max(h),
                    n,
                });
            }
            if t == h {
                return Err(GraphError::SelfLoop { vertex: t });
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateArc {
                tail: w[0].0,
                head: w[0].1,
            });
        }
        if labels.len() != n {
            return Err(GraphError::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        let mut seen: Vec<&str> = labels.iter().flatten().map(String::as_str).collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateLabel(w[0].to_string()));
        }
        Ok(Self::from_sorted_unchecked(n, arcs, labels))
    }

    /// Internal constructor for arc lists already known to be sorted, unique
    /// and loop-free.
    pub(crate) fn from_sorted_unchecked(
        n: usize,
        arcs: Vec<Arc>,
        labels: Vec<Option<String>>,
    ) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(arcs.iter().all(|&(t, h)| t != h && t < n && h < n));
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(t, h) in &arcs {
            out_adj[t].push(h);
            in_adj[h].push(t);
        }
        for l in &mut in_adj {
            l.sort_unstable();
        }
        Digraph {
            n,
            arcs,
            labels,
            out_adj,
            in_adj,
        }
    }

    /// Rebuilds adjacency lists after deserialization.
    pub fn rehydrate(self) -> Result<Self, GraphError> {
        Self::with_labels(self.n, self.arcs, self.labels)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn has_arc(&self, tail: VertexId, head: VertexId) -> bool {
        self.arcs.binary_search(&(tail, head)).is_ok()
    }

    /// Position of an arc in [`Digraph::arcs`].
    pub fn arc_index(&self, tail: VertexId, head: VertexId) -> Option<usize> {
        self.arcs.binary_search(&(tail, head)).ok()
    }

    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn outdeg(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn indeg(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels[v].as_deref()
    }

    /// Label text if present, otherwise the decimal id.
    pub fn display_name(&self, v: VertexId) -> String {
        match &self.labels[v] {
            Some(l) => l.clone(),
            None => v.to_string(),
        }
    }

    /// Same arcs, labels dropped.
    pub fn unlabeled(&self) -> Digraph {
        Digraph::from_sorted_unchecked(self.n, self.arcs.clone(), vec![None; self.n])
    }

    /// Vertexes with in-degree zero.
    pub fn sources(&self) -> Vec<VertexId> {
        (0..self.n).filter(|&v| self.indeg(v) == 0).collect()
    }

    /// Vertexes with out-degree zero.
    pub fn sinks(&self) -> Vec<VertexId> {
        (0..self.n).filter(|&v| self.outdeg(v) == 0).collect()
    }

    /// Renders the 0/1 adjacency matrix row by row.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.n]; self.n];
        for &(t, h) in &self.arcs {
            m[t][h] = 1;
        }
        m
    }
}

/// In- and out-degree of every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub indeg: Vec<usize>,
    pub outdeg: Vec<usize>,
}

pub fn build_digraph(n: usize, arcs: &[Arc]) -> Result<Digraph, GraphError> {
    Digraph::new(n, arcs.iter().copied())
}

pub fn degrees(g: &Digraph) -> DegreeProfile {
    DegreeProfile {
        indeg: (0..g.n).map(|v| g.indeg(v)).collect(),
        outdeg: (0..g.n).map(|v| g.outdeg(v)).collect(),
    }
}

/// Weak component index of every vertex plus the component count.
pub fn component_labels(g: &Digraph) -> (Vec<usize>, usize) {
    let mut comp = vec![usize::MAX; g.n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..g.n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in g.successors(v).iter().chain(g.predecessors(v)) {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

pub fn weak_components(g: &Digraph) -> usize {
    component_labels(g).1
}

/// `m - n + p`, with `p` counted on weak connectivity.
pub fn cyclomatic_number(g: &Digraph) -> i64 {
    g.arc_count() as i64 - g.vertex_count() as i64 + weak_components(g) as i64
}

/// Finds a shortest directed cycle, returned closed (`first == last`).
pub fn has_contour(g: &Digraph) -> Option<Vec<VertexId>> {
    let mut best: Option<Vec<VertexId>> = None;
    let mut dist = vec![usize::MAX; g.n];
    let mut parent = vec![usize::MAX; g.n];
    for start in 0..g.n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut closing = None;
        'bfs: while let Some(v) = queue.pop_front() {
            if let Some(b) = &best {
                if dist[v] + 1 >= b.len() - 1 {
                    break;
                }
            }
            for &w in g.successors(v) {
                if w == start {
                    closing = Some(v);
                    break 'bfs;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if let Some(last) = closing {
            let mut cycle = vec![last];
            let mut v = last;
            while v != start {
                v = parent[v];
                cycle.push(v);
            }
            cycle.reverse();
            cycle.push(start);
            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                best = Some(cycle);
            }
        }
    }
    best
}

/// Kahn's algorithm; `None` when the graph has a contour.
pub fn topological_order(g: &Digraph) -> Option<Vec<VertexId>> {
    let mut indeg: Vec<usize> = (0..g.n).map(|v| g.indeg(v)).collect();
    let mut queue: VecDeque<VertexId> = (0..g.n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(g.n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.successors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == g.n).then_some(order)
}

/// Strongly connected component index per vertex (iterative Tarjan).
pub fn strong_components(g: &Digraph) -> Vec<usize> {
    let n = g.n;
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(VertexId, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = g.successors(v).get(*i) {
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Vertexes lying on at least one directed cycle.
pub fn on_contour(g: &Digraph) -> Vec<bool> {
    let comp = strong_components(g);
    let mut size = vec![0usize; g.n];
    for &c in &comp {
        size[c] += 1;
    }
    (0..g.n).map(|v| size[comp[v]] > 1).collect()
}

/// Vertexes reachable from any of `starts` (inclusive), following arcs
/// forward or, with `reverse`, backward.
pub fn reachable_from(g: &Digraph, starts: &[VertexId], reverse: bool) -> Vec<bool> {
    let mut seen = vec![false; g.n];
    let mut queue = VecDeque::new();
    for &s in starts {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let next = if reverse {
            g.predecessors(v)
        } else {
            g.successors(v)
        };
        for &w in next {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Reachability matrix by repeated BFS; `closure[u][v]` iff a directed path
/// of length >= 1 leads from `u` to `v`.
pub fn transitive_closure(g: &Digraph) -> Vec<Vec<bool>> {
    (0..g.n)
        .map(|u| {
            let mut seen = vec![false; g.n];
            let mut queue: VecDeque<VertexId> = g.successors(u).iter().copied().collect();
            for &w in g.successors(u) {
                seen[w] = true;
            }
            while let Some(v) = queue.pop_front() {
                for &w in g.successors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Which requirement list to check in [`validate_f_requirements`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FMode {
    Quasicanonical,
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FViolation {
    pub rule: FRule,
    pub description: String,
    pub vertices: Vec<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FRule {
    SingleEmptyColumn,
    EmptyColumnRow,
    SingleEmptyRow,
    EmptyRowColumn,
    BranchRowColumn,
    MergeColumnRow,
}

impl FRule {
    pub fn id(self) -> &'static str {
        match self {
            FRule::SingleEmptyColumn => "single-empty-column",
            FRule::EmptyColumnRow => "empty-column-row",
            FRule::SingleEmptyRow => "single-empty-row",
            FRule::EmptyRowColumn => "empty-row-column",
            FRule::BranchRowColumn => "branch-row-column",
            FRule::MergeColumnRow => "merge-column-row",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FValidityReport {
    pub ok: bool,
    pub violations: Vec<FViolation>,
}

/// Checks the single-entrance/single-exit requirements on a graph read as an
/// `F` matrix. Violations are reported, never raised. The zero-diagonal rule
/// holds by construction since [`Digraph`] rejects loops.
pub fn validate_f_requirements(g: &Digraph, mode: FMode) -> FValidityReport {
    let mut violations = Vec::new();
    let sources = g.sources();
    let sinks = g.sinks();
    if sources.len() > 1 {
        violations.push(FViolation {
            rule: FRule::SingleEmptyColumn,
            description: format!("more than one empty column ({} sources)", sources.len()),
            vertices: sources.clone(),
        });
    }
    for &s in &sources {
        if g.outdeg(s) != 1 {
            violations.push(FViolation {
                rule: FRule::EmptyColumnRow,
                description: format!(
                    "empty column {s} but row {s} has {} non-zero elements",
                    g.outdeg(s)
                ),
                vertices: vec![s],
            });
        }
    }
    if sinks.len() > 1 {
        violations.push(FViolation {
            rule: FRule::SingleEmptyRow,
            description: format!("more than one empty row ({} sinks)", sinks.len()),
            vertices: sinks.clone(),
        });
    }
    for &t in &sinks {
        if g.indeg(t) != 1 {
            violations.push(FViolation {
                rule: FRule::EmptyRowColumn,
                description: format!(
                    "empty row {t} but column {t} has {} non-zero elements",
                    g.indeg(t)
                ),
                vertices: vec![t],
            });
        }
    }
    if mode == FMode::Canonical {
        for v in 0..g.n {
            if g.outdeg(v) > 1 && g.indeg(v) != 1 {
                violations.push(FViolation {
                    rule: FRule::BranchRowColumn,
                    description: format!(
                        "row {v} has {} non-zero elements but column {v} has {}",
                        g.outdeg(v),
                        g.indeg(v)
                    ),
                    vertices: vec![v],
                });
            }
            if g.indeg(v) > 1 && g.outdeg(v) != 1 {
                violations.push(FViolation {
                    rule: FRule::MergeColumnRow,
                    description: format!(
                        "column {v} has {} non-zero elements but row {v} has {}",
                        g.indeg(v),
                        g.outdeg(v)
                    ),
                    vertices: vec![v],
                });
            }
        }
    }
    FValidityReport {
        ok: violations.is_empty(),
        violations,
    }
}
