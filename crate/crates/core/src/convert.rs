//! Straight converting (edge graph to the graph of its arc adjacencies),
//! reverse converting (root graph reconstruction) and iterated traces.
//!
//! After `j` straight convertings every vertex stands for a directed walk of
//! `j` arcs in the starting graph. Traces carry that walk as a tuple of
//! [`Symbol`]s; entrance and exit vertexes added between steps get fresh
//! `ω<k>` / `φ<k>` symbols.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{cyclomatic_number, validate_f_requirements, Arc, Digraph, FMode, VertexId};
use crate::duality::quasi_verdict;
use crate::error::{ConvertError, DualityError};
use crate::matrix::{Role, RoleMatrix};

/// Default per-step vertex cap for iterated converting.
pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

/// One position of a walk label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    /// Vertex of the starting graph.
    Vertex(VertexId),
    /// Entrance added at converting step `k`.
    Entrance(usize),
    /// Exit added at converting step `k`.
    Exit(usize),
}

impl Symbol {
    pub fn render(self, base: &Digraph) -> String {
        match self {
            Symbol::Vertex(v) => base.display_name(v),
            Symbol::Entrance(k) => format!("ω{k}"),
            Symbol::Exit(k) => format!("φ{k}"),
        }
    }
}

/// Concatenates single-character tokens, joins anything longer with `.`.
pub fn join_tokens(tokens: &[String]) -> String {
    if tokens.iter().all(|t| t.chars().count() == 1) {
        tokens.concat()
    } else {
        tokens.join(".")
    }
}

pub fn render_tuple(base: &Digraph, tuple: &[Symbol]) -> String {
    let tokens: Vec<String> = tuple.iter().map(|s| s.render(base)).collect();
    join_tokens(&tokens)
}

/// Keeps labels only if they are pairwise distinct.
fn unique_or_none(labels: Vec<String>) -> Vec<Option<String>> {
    let mut sorted: Vec<&String> = labels.iter().collect();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        vec![None; labels.len()]
    } else {
        labels.into_iter().map(Some).collect()
    }
}

/// Arc-adjacency structure: output vertex `i` is input arc `i`, and
/// `a -> b` iff `head(a) == tail(b)`. Output arcs come out sorted.
fn line_arcs(h: &Digraph) -> Vec<Arc> {
    let arcs = h.arcs();
    let mut first_out = vec![0usize; h.vertex_count() + 1];
    for &(t, _) in arcs {
        first_out[t + 1] += 1;
    }
    for v in 0..h.vertex_count() {
        first_out[v + 1] += first_out[v];
    }
    let total: usize = (0..h.vertex_count())
        .map(|v| h.indeg(v) * h.outdeg(v))
        .sum();
    let mut out = Vec::with_capacity(total);
    for (a, &(_, v)) in arcs.iter().enumerate() {
        out.extend((first_out[v]..first_out[v + 1]).map(|b| (a, b)));
    }
    out
}

/// Straight converting. Output vertex `i` corresponds to `h.arcs()[i]` and is
/// labeled with the joined labels of that arc's endpoints.
pub fn straight_convert(h: &Digraph) -> Digraph {
    let arcs = line_arcs(h);
    let labels = h
        .arcs()
        .iter()
        .map(|&(t, v)| join_tokens(&[h.display_name(t), h.display_name(v)]))
        .collect();
    Digraph::from_sorted_unchecked(h.arc_count(), arcs, unique_or_none(labels))
}

/// Straight converting without labels.
pub fn straight_convert_unlabeled(h: &Digraph) -> Digraph {
    Digraph::from_sorted_unchecked(h.arc_count(), line_arcs(h), vec![None; h.arc_count()])
}

/// Result of adding an entrance and/or exit vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmented {
    pub graph: Digraph,
    /// The new entrance and the old source it feeds.
    pub entrance: Option<(VertexId, VertexId)>,
    /// The old sink and the new exit it feeds.
    pub exit: Option<(VertexId, VertexId)>,
}

fn terminals(h: &Digraph) -> Result<(Option<VertexId>, Option<VertexId>), ConvertError> {
    let sources = h.sources();
    let sinks = h.sinks();
    if sources.len() > 1 {
        return Err(ConvertError::MultipleSources {
            count: sources.len(),
            vertices: sources,
        });
    }
    if sinks.len() > 1 {
        return Err(ConvertError::MultipleSinks {
            count: sinks.len(),
            vertices: sinks,
        });
    }
    if sources.is_empty() && sinks.is_empty() {
        return Err(ConvertError::NoTerminals);
    }
    Ok((sources.first().copied(), sinks.first().copied()))
}

fn augment_with(
    h: &Digraph,
    entrance_label: Option<String>,
    exit_label: Option<String>,
) -> Result<Augmented, ConvertError> {
    let (source, sink) = terminals(h)?;
    let mut n = h.vertex_count();
    let mut arcs = h.arcs().to_vec();
    let mut labels = h.labels().to_vec();
    let entrance = source.map(|s| {
        arcs.push((n, s));
        labels.push(entrance_label.clone());
        n += 1;
        (n - 1, s)
    });
    let exit = sink.map(|t| {
        arcs.push((t, n));
        labels.push(exit_label.clone());
        n += 1;
        (t, n - 1)
    });
    arcs.sort_unstable();
    let present: Vec<String> = labels.iter().flatten().cloned().collect();
    if unique_or_none(present).iter().any(Option::is_none) {
        labels = vec![None; n];
    }
    Ok(Augmented {
        graph: Digraph::from_sorted_unchecked(n, arcs, labels),
        entrance,
        exit,
    })
}

/// Adds a fresh entrance vertex feeding the unique source and a fresh exit
/// vertex fed by the unique sink. A side without a terminal is left alone;
/// several sources or sinks, or none at all, are errors.
pub fn augment_entrance_exit(h: &Digraph) -> Result<Augmented, ConvertError> {
    let used = |l: &str| h.labels().iter().flatten().any(|x| x == l);
    let k = (1..)
        .find(|k| !used(&format!("ω{k}")) && !used(&format!("φ{k}")))
        .expect("unbounded range");
    augment_with(h, Some(format!("ω{k}")), Some(format!("φ{k}")))
}

/// Root graph recovered from an arc-adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootGraph {
    pub graph: Digraph,
    /// `arc_of[e]` is the root-graph arc standing for matrix vertex `e`.
    pub arc_of: Vec<Arc>,
}

impl RootGraph {
    /// Vertex bijection from `g` onto the root graph carrying arc `i` of `g`
    /// to `arc_of[i]`, when the root was recovered from `straight_convert(g)`.
    /// `None` if no such bijection exists; vertexes without arcs cannot be
    /// recovered.
    pub fn vertex_map(&self, g: &Digraph) -> Option<Vec<VertexId>> {
        if g.arc_count() != self.arc_of.len() || g.vertex_count() != self.graph.vertex_count() {
            return None;
        }
        let mut map = vec![usize::MAX; g.vertex_count()];
        let mut inverse = vec![usize::MAX; g.vertex_count()];
        for (&(t, h), &(rt, rh)) in g.arcs().iter().zip(&self.arc_of) {
            for (v, w) in [(t, rt), (h, rh)] {
                if map[v] == usize::MAX && inverse[w] == usize::MAX {
                    map[v] = w;
                    inverse[w] = v;
                } else if map[v] != w || inverse[w] != v {
                    return None;
                }
            }
        }
        map.iter().all(|&w| w != usize::MAX).then_some(map)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Reverse converting. Every matrix vertex `e` becomes an arc with endpoint
/// slots `tail(e)`, `head(e)`; each entry `e -> f` glues `head(e)` to
/// `tail(f)`. Endpoint classes become the root graph's vertexes, numbered in
/// order of first appearance over `tail(0), head(0), tail(1), ...`.
///
/// Requires the quasi-canonical form. Matrices that are arc adjacencies of a
/// multigraph only (two matrix vertexes with identical non-empty in- and
/// out-neighbourhoods) are rejected with [`DualityError::ParallelArcs`].
pub fn reverse_convert(r: &RoleMatrix) -> Result<RootGraph, DualityError> {
    r.expect_role(Role::R)?;
    let verdict = quasi_verdict(r);
    if !verdict.quasi_canonical {
        return Err(DualityError::NotQuasiCanonical {
            violations: verdict.violating_arcs.len(),
            minor_failures: verdict.minor_failures.len(),
        });
    }
    reconstruct(r.graph())
}

pub(crate) fn reconstruct(g: &Digraph) -> Result<RootGraph, DualityError> {
    let m = g.vertex_count();
    let mut uf = UnionFind::new(2 * m);
    for &(e, f) in g.arcs() {
        uf.union(2 * e + 1, 2 * f);
    }
    let mut id = vec![usize::MAX; 2 * m];
    let mut n = 0;
    let slot_vertex: Vec<VertexId> = (0..2 * m)
        .map(|slot| {
            let root = uf.find(slot);
            if id[root] == usize::MAX {
                id[root] = n;
                n += 1;
            }
            id[root]
        })
        .collect();
    let arc_of: Vec<Arc> = (0..m)
        .map(|e| (slot_vertex[2 * e], slot_vertex[2 * e + 1]))
        .collect();
    if arc_of.iter().any(|&(t, h)| t == h) {
        return Err(DualityError::NotLineDigraph);
    }
    let mut arcs = arc_of.clone();
    arcs.sort_unstable();
    if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
        return Err(DualityError::ParallelArcs {
            tail: w[0].0,
            head: w[0].1,
        });
    }
    let graph = Digraph::from_sorted_unchecked(n, arcs, vec![None; n]);
    // Every entry satisfies head(e) == tail(f) by construction, so equal
    // counts mean equal arc sets.
    let induced: usize = (0..n).map(|v| graph.indeg(v) * graph.outdeg(v)).sum();
    if induced != g.arc_count() {
        return Err(DualityError::NotLineDigraph);
    }
    Ok(RootGraph { graph, arc_of })
}

/// When to add entrance/exit vertexes between convertings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AugmentMode {
    Never,
    /// Only when the converted graph's source has out-degree >= 2 or its sink
    /// has in-degree >= 2.
    AsNeeded,
    /// After every converting, as in the hand-worked walkthrough.
    Faithful,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvertStep {
    /// 0 for the input graph.
    pub index: usize,
    pub graph: Digraph,
    pub n: usize,
    pub m: usize,
    pub nu: i64,
    /// Walk labels; empty when labels were not requested.
    pub labels: Vec<Vec<Symbol>>,
    /// Entrance/exit vertexes added after this step's converting.
    pub added: usize,
}

/// Size-cap stop: the step that would have been built next and its size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapEvent {
    pub step: usize,
    pub predicted_n: usize,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvertTrace {
    pub steps: Vec<ConvertStep>,
    pub augment: AugmentMode,
    pub cap_event: Option<CapEvent>,
}

impl ConvertTrace {
    pub fn nus(&self) -> Vec<i64> {
        self.steps.iter().map(|s| s.nu).collect()
    }

    pub fn ns(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.n).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConvertOptions {
    pub steps: usize,
    pub augment: AugmentMode,
    pub cap: usize,
    pub labels: bool,
}

impl ConvertOptions {
    pub fn new(steps: usize, augment: AugmentMode) -> Self {
        ConvertOptions {
            steps,
            augment,
            cap: DEFAULT_SIZE_CAP,
            labels: true,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = false;
        self
    }
}

/// Lazily produces the graphs of repeated converting.
pub struct Converter<'a> {
    base: &'a Digraph,
    current: Digraph,
    labels: Option<Vec<Vec<Symbol>>>,
    augment: AugmentMode,
    cap: usize,
    index: usize,
    pub cap_event: Option<CapEvent>,
}

impl<'a> Converter<'a> {
    pub fn new(base: &'a Digraph, opts: &ConvertOptions) -> Result<Self, ConvertError> {
        if opts.augment != AugmentMode::Never {
            let report = validate_f_requirements(base, FMode::Quasicanonical);
            if !report.ok {
                let msgs: Vec<String> = report
                    .violations
                    .iter()
                    .map(|v| v.description.clone())
                    .collect();
                return Err(ConvertError::Requirements(msgs.join("; ")));
            }
        }
        let labels = opts.labels.then(|| {
            (0..base.vertex_count())
                .map(|v| vec![Symbol::Vertex(v)])
                .collect()
        });
        Ok(Converter {
            base,
            current: base.clone(),
            labels,
            augment: opts.augment,
            cap: opts.cap,
            index: 0,
            cap_event: None,
        })
    }

    pub fn current(&self) -> &Digraph {
        &self.current
    }

    pub fn current_labels(&self) -> Option<&[Vec<Symbol>]> {
        self.labels.as_deref()
    }

    /// Converts once; `None` (with `cap_event` set) when the cap would be
    /// exceeded. Returns the number of entrance/exit vertexes added.
    pub fn advance(&mut self) -> Result<Option<usize>, ConvertError> {
        let next_n = self.current.arc_count();
        let (source, sink) = (
            self.current.sources().len() == 1,
            self.current.sinks().len() == 1,
        );
        let max_added = if self.augment == AugmentMode::Never {
            0
        } else {
            usize::from(source) + usize::from(sink)
        };
        if next_n + max_added > self.cap {
            self.cap_event = Some(CapEvent {
                step: self.index + 1,
                predicted_n: next_n + max_added,
                cap: self.cap,
            });
            return Ok(None);
        }
        let mut next = straight_convert_unlabeled(&self.current);
        let step = self.index + 1;
        let mut next_labels = self.labels.as_ref().map(|labels| {
            self.current
                .arcs()
                .iter()
                .map(|&(a, b)| {
                    let mut t = labels[a].clone();
                    t.push(*labels[b].last().expect("labels are non-empty"));
                    t
                })
                .collect::<Vec<_>>()
        });
        let augment = match self.augment {
            AugmentMode::Never => false,
            AugmentMode::Faithful => !(next.sources().is_empty() && next.sinks().is_empty()),
            AugmentMode::AsNeeded => {
                let src = next.sources();
                let snk = next.sinks();
                (src.len() == 1 && next.outdeg(src[0]) >= 2)
                    || (snk.len() == 1 && next.indeg(snk[0]) >= 2)
            }
        };
        let mut added = 0;
        if augment {
            let aug = augment_with(&next, None, None)?;
            if let Some(labels) = next_labels.as_mut() {
                if let Some((_, s)) = aug.entrance {
                    let src = &labels[s];
                    let mut t = vec![Symbol::Entrance(step)];
                    t.extend_from_slice(&src[..src.len() - 1]);
                    labels.push(t);
                }
                if let Some((t_old, _)) = aug.exit {
                    let snk = &labels[t_old];
                    let mut t = snk[1..].to_vec();
                    t.push(Symbol::Exit(step));
                    labels.push(t);
                }
            }
            added = aug.graph.vertex_count() - next.vertex_count();
            next = aug.graph;
        }
        self.current = next;
        self.labels = next_labels;
        self.index = step;
        Ok(Some(added))
    }

    fn labeled_current(&self) -> Digraph {
        match &self.labels {
            Some(labels) if self.index > 0 => {
                let rendered = labels.iter().map(|t| render_tuple(self.base, t)).collect();
                Digraph::from_sorted_unchecked(
                    self.current.vertex_count(),
                    self.current.arcs().to_vec(),
                    unique_or_none(rendered),
                )
            }
            _ => self.current.clone(),
        }
    }
}

fn make_step(conv: &Converter<'_>, added: usize) -> ConvertStep {
    let graph = conv.labeled_current();
    ConvertStep {
        index: conv.index,
        n: graph.vertex_count(),
        m: graph.arc_count(),
        nu: cyclomatic_number(&graph),
        labels: conv.labels.clone().unwrap_or_default(),
        graph,
        added,
    }
}

/// Converts `h` up to `opts.steps` times. A size-cap stop is not an error:
/// the partial trace comes back with `cap_event` set.
pub fn iterate_convert(h: &Digraph, opts: &ConvertOptions) -> Result<ConvertTrace, ConvertError> {
    let mut conv = Converter::new(h, opts)?;
    let mut steps = vec![make_step(&conv, 0)];
    for _ in 0..opts.steps {
        match conv.advance()? {
            Some(added) => {
                if let Some(prev) = steps.last_mut() {
                    prev.added = added;
                }
                steps.push(make_step(&conv, 0));
            }
            None => break,
        }
    }
    Ok(ConvertTrace {
        steps,
        augment: opts.augment,
        cap_event: conv.cap_event,
    })
}

/// All directed walks with exactly `m` arcs, as vertex sequences, in
/// lexicographic order.
pub fn paths_of_length(h: &Digraph, m: usize) -> Vec<Vec<VertexId>> {
    fn extend(h: &Digraph, walk: &mut Vec<VertexId>, left: usize, out: &mut Vec<Vec<VertexId>>) {
        if left == 0 {
            out.push(walk.clone());
            return;
        }
        let last = *walk.last().expect("non-empty walk");
        for &w in h.successors(last) {
            walk.push(w);
            extend(h, walk, left - 1, out);
            walk.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..h.vertex_count() {
        extend(h, &mut vec![v], m, &mut out);
    }
    out
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Vertex(v) => write!(f, "{v}"),
            Symbol::Entrance(k) => write!(f, "ω{k}"),
            Symbol::Exit(k) => write!(f, "φ{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::cyclomatic_number;

    fn labeled(n: usize, arcs: &[Arc], names: &str) -> Digraph {
        let labels = names.chars().map(|c| Some(c.to_string())).collect();
        Digraph::with_labels(n, arcs.iter().copied(), labels).unwrap()
    }

    fn names(g: &Digraph) -> Vec<String> {
        (0..g.vertex_count()).map(|v| g.display_name(v)).collect()
    }

    #[test]
    fn straight_examples() {
        let l = straight_convert(&labeled(3, &[(0, 1), (1, 2)], "abc"));
        assert_eq!(names(&l), vec!["ab", "bc"]);
        assert_eq!(l.arcs(), &[(0, 1)]);

        let tri = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let l = straight_convert(&tri);
        // arcs sorted: 01, 12, 20
        assert_eq!(l.arcs(), &[(0, 1), (1, 2), (2, 0)]);

        let mb = Digraph::new(5, [(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap();
        let l = straight_convert(&mb);
        assert_eq!(names(&l), vec!["02", "12", "23", "24"]);
        assert_eq!(l.arcs(), &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!((cyclomatic_number(&mb), cyclomatic_number(&l)), (0, 1));
    }

    #[test]
    fn augment_examples() {
        let g = labeled(2, &[(0, 1)], "ab");
        let aug = augment_entrance_exit(&g).unwrap();
        assert_eq!(aug.graph.arcs(), &[(0, 1), (1, 3), (2, 0)]);
        assert_eq!(aug.entrance, Some((2, 0)));
        assert_eq!(aug.exit, Some((1, 3)));
        assert_eq!(aug.graph.label(2), Some("ω1"));

        let again = augment_entrance_exit(&aug.graph).unwrap();
        assert_eq!(again.graph.vertex_count(), 6);
        assert_eq!(again.graph.label(4), Some("ω2"));
        assert_eq!(again.graph.label(5), Some("φ2"));

        let two_sources = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        assert!(matches!(
            augment_entrance_exit(&two_sources),
            Err(ConvertError::MultipleSources { count: 2, .. })
        ));
        let tri = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(augment_entrance_exit(&tri), Err(ConvertError::NoTerminals));
    }

    #[test]
    fn reverse_examples() {
        let r = RoleMatrix::new(Role::R, Digraph::new(2, [(0, 1)]).unwrap());
        let root = reverse_convert(&r).unwrap();
        assert_eq!(root.graph.arcs(), &[(0, 1), (1, 2)]);
        assert_eq!(root.arc_of, vec![(0, 1), (1, 2)]);

        let bad = RoleMatrix::new(Role::R, Digraph::new(4, [(0, 1), (0, 2), (3, 1)]).unwrap());
        assert!(matches!(
            reverse_convert(&bad),
            Err(DualityError::NotQuasiCanonical { .. })
        ));

        let l_role = RoleMatrix::new(Role::L, Digraph::new(2, [(0, 1)]).unwrap());
        assert!(matches!(
            reverse_convert(&l_role),
            Err(DualityError::WrongRole { .. })
        ));
    }

    #[test]
    fn reverse_rejects_multigraph_roots() {
        // x feeds e and e', both feed y: the root needs two parallel arcs
        let r = RoleMatrix::new(
            Role::R,
            Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
        );
        assert!(matches!(
            reverse_convert(&r),
            Err(DualityError::ParallelArcs { .. })
        ));
    }

    #[test]
    fn iterate_path_shrinks() {
        let g = labeled(3, &[(0, 1), (1, 2)], "abc");
        let trace = iterate_convert(&g, &ConvertOptions::new(2, AugmentMode::Never)).unwrap();
        assert_eq!(trace.ns(), vec![3, 2, 1]);
        assert_eq!(trace.nus(), vec![0, 0, 0]);
        assert_eq!(
            trace.steps[2].labels,
            vec![vec![
                Symbol::Vertex(0),
                Symbol::Vertex(1),
                Symbol::Vertex(2)
            ]]
        );
        assert_eq!(trace.steps[2].graph.label(0), Some("abc"));
    }

    #[test]
    fn iterate_faithful_labels_entrance_and_exit() {
        let g = labeled(3, &[(0, 1), (1, 2)], "abc");
        let trace = iterate_convert(&g, &ConvertOptions::new(2, AugmentMode::Faithful)).unwrap();
        // 3 -> 2 arcs + ω1 + φ1 = 4 -> 3 arcs + 2 = 5
        assert_eq!(trace.ns(), vec![3, 4, 5]);
        let step1 = &trace.steps[1];
        assert_eq!(
            step1.labels,
            vec![
                vec![Symbol::Vertex(0), Symbol::Vertex(1)],
                vec![Symbol::Vertex(1), Symbol::Vertex(2)],
                vec![Symbol::Entrance(1), Symbol::Vertex(0)],
                vec![Symbol::Vertex(2), Symbol::Exit(1)],
            ]
        );
        assert_eq!(step1.graph.label(2), Some("ω1.a"));
        assert_eq!(trace.steps[0].added, 2);
    }

    #[test]
    fn iterate_respects_cap() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 1), (2, 3)]).unwrap();
        let opts = ConvertOptions::new(10, AugmentMode::Faithful).with_cap(8);
        let trace = iterate_convert(&g, &opts).unwrap();
        let ev = trace.cap_event.as_ref().expect("cap hit");
        assert!(ev.predicted_n > 8);
        assert!(trace.steps.iter().all(|s| s.n <= 8));
    }

    #[test]
    fn iterate_requires_single_terminals_when_augmenting() {
        let g = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        assert!(matches!(
            iterate_convert(&g, &ConvertOptions::new(1, AugmentMode::Faithful)),
            Err(ConvertError::Requirements(_))
        ));
        assert!(iterate_convert(&g, &ConvertOptions::new(1, AugmentMode::Never)).is_ok());
    }

    #[test]
    fn paths_examples() {
        let p = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(paths_of_length(&p, 2), vec![vec![0, 1, 2]]);
        let tri = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            paths_of_length(&tri, 3),
            vec![vec![0, 1, 2, 0], vec![1, 2, 0, 1], vec![2, 0, 1, 2]]
        );
        let mb = Digraph::new(5, [(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(
            paths_of_length(&mb, 2),
            vec![vec![0, 2, 3], vec![0, 2, 4], vec![1, 2, 3], vec![1, 2, 4]]
        );
    }
}
