//! Hamilton cycles through the vertex/arc duality.
//!
//! The graph `G` is read as a relation matrix, normalized, and
//! reverse-converted into a root graph `H` whose arcs are the vertexes of the
//! normalized matrix. Arcs standing for vertexes of `G` are marked. A cycle of
//! `G` through every vertex once is then a vertex-simple circuit of `H` that
//! uses every marked arc.

use serde::{Deserialize, Serialize};

use crate::convert::{reverse_convert, RootGraph};
use crate::digraph::{Arc, Digraph, VertexId};
use crate::error::{DualityError, HamiltonError};
use crate::matrix::{Role, RoleMatrix};
use crate::normalize::{delta_n_insert, normalize_canonical, NormalizationReport};

/// Default vertex bound for [`brute_force_hamilton`].
pub const ORACLE_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedEdgeGraph {
    pub order: usize,
    pub root: RootGraph,
    /// `vertex_of[i]`: vertex of `G` carried by arc `i` of `root.graph`.
    pub vertex_of: Vec<Option<VertexId>>,
    pub normalization: NormalizationReport,
    /// Subdivisions added after normalization to separate twin vertexes.
    pub twin_splits: Vec<Arc>,
}

impl MarkedEdgeGraph {
    pub fn graph(&self) -> &Digraph {
        &self.root.graph
    }

    pub fn marked_arcs(&self) -> Vec<usize> {
        (0..self.vertex_of.len())
            .filter(|&i| self.vertex_of[i].is_some())
            .collect()
    }
}

/// A closed circuit with in- and out-degree 1 at every touched vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerPartialSubgraph {
    /// Arc ids of the marked edge graph in circuit order.
    pub arcs: Vec<usize>,
    /// Circuit vertexes in order, first not repeated.
    pub vertices: Vec<VertexId>,
}

/// Groups of matrix vertexes with identical non-empty in- and
/// out-neighbourhoods; their root arcs would be parallel.
fn twin_arcs(g: &Digraph) -> Vec<Arc> {
    let mut keyed: Vec<(&[VertexId], &[VertexId], VertexId)> = (0..g.vertex_count())
        .filter(|&v| g.indeg(v) > 0 && g.outdeg(v) > 0)
        .map(|v| (g.predecessors(v), g.successors(v), v))
        .collect();
    keyed.sort_unstable();
    keyed
        .windows(2)
        .filter(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1)
        .map(|w| (w[1].0[0], w[1].2))
        .collect()
}

pub fn build_marked_edge_graph(g: &Digraph) -> Result<MarkedEdgeGraph, HamiltonError> {
    let normalization = normalize_canonical(&RoleMatrix::new(Role::L, g.clone()))?;
    let mut matrix = normalization.result.clone();
    let mut twin_splits = Vec::new();
    let root = loop {
        match reverse_convert(&matrix.with_role(Role::R)) {
            Ok(root) => break root,
            Err(DualityError::ParallelArcs { .. }) => {
                let twins = twin_arcs(matrix.graph());
                if twins.is_empty() {
                    return Err(DualityError::NotLineDigraph.into());
                }
                for arc in twins {
                    matrix = delta_n_insert(&matrix, arc)?;
                    twin_splits.push(arc);
                }
            }
            Err(e) => return Err(e.into()),
        }
    };
    let mut vertex_of = vec![None; root.graph.arc_count()];
    for (e, &(t, h)) in root.arc_of.iter().enumerate().take(g.vertex_count()) {
        let id = root.graph.arc_index(t, h).expect("root arc exists");
        vertex_of[id] = Some(e);
    }
    Ok(MarkedEdgeGraph {
        order: g.vertex_count(),
        root,
        vertex_of,
        normalization,
        twin_splits,
    })
}

struct CircuitSearch<'a> {
    m: &'a MarkedEdgeGraph,
    /// Marked out-arc and in-arc of each vertex, if any.
    marked_out: Vec<Option<usize>>,
    marked_in: Vec<Option<usize>>,
    visited: Vec<bool>,
    arcs: Vec<usize>,
    vertices: Vec<VertexId>,
    marked_used: usize,
    marked_total: usize,
    out: Vec<EulerPartialSubgraph>,
}

impl CircuitSearch<'_> {
    fn extend(&mut self, v: VertexId) {
        let h = self.m.graph();
        let start = self.vertices[0];
        for &w in h.successors(v) {
            let a = h.arc_index(v, w).expect("successor arc");
            if self.marked_out[v].is_some_and(|x| x != a) {
                continue;
            }
            if self.marked_in[w].is_some_and(|x| x != a) {
                continue;
            }
            let is_marked = self.m.vertex_of[a].is_some();
            if w == start {
                if self.marked_used + usize::from(is_marked) == self.marked_total {
                    self.arcs.push(a);
                    self.out.push(EulerPartialSubgraph {
                        arcs: self.arcs.clone(),
                        vertices: self.vertices.clone(),
                    });
                    self.arcs.pop();
                }
                continue;
            }
            if self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.arcs.push(a);
            self.vertices.push(w);
            self.marked_used += usize::from(is_marked);
            self.extend(w);
            self.marked_used -= usize::from(is_marked);
            self.vertices.pop();
            self.arcs.pop();
            self.visited[w] = false;
        }
    }
}

/// Every vertex-simple circuit of the marked edge graph that contains all
/// marked arcs, starting from the first marked arc.
pub fn euler_partial_subgraphs(m: &MarkedEdgeGraph) -> Vec<EulerPartialSubgraph> {
    let h = m.graph();
    let marked = m.marked_arcs();
    let Some(&first) = marked.first() else {
        return Vec::new();
    };
    let mut marked_out = vec![None; h.vertex_count()];
    let mut marked_in = vec![None; h.vertex_count()];
    for &a in &marked {
        let (t, hd) = h.arcs()[a];
        if marked_out[t].replace(a).is_some() || marked_in[hd].replace(a).is_some() {
            // two marked arcs share an endpoint: no circuit can hold both
            return Vec::new();
        }
    }
    let (t, hd) = h.arcs()[first];
    let mut search = CircuitSearch {
        m,
        marked_out,
        marked_in,
        visited: vec![false; h.vertex_count()],
        arcs: vec![first],
        vertices: vec![t, hd],
        marked_used: 1,
        marked_total: marked.len(),
        out: Vec::new(),
    };
    search.visited[t] = true;
    search.visited[hd] = true;
    search.extend(hd);
    search.out
}

/// Rotates a cycle to start at its smallest vertex and closes it.
fn canonical_cycle(mut cycle: Vec<VertexId>) -> Vec<VertexId> {
    if let Some(pos) = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
    {
        cycle.rotate_left(pos);
        cycle.push(cycle[0]);
    }
    cycle
}

/// Hamilton cycles of `g` as closed vertex sequences starting at their
/// smallest vertex, sorted.
pub fn hamilton_cycles_via_duality(g: &Digraph) -> Result<Vec<Vec<VertexId>>, HamiltonError> {
    if g.vertex_count() == 0 {
        return Ok(Vec::new());
    }
    let m = build_marked_edge_graph(g)?;
    let mut cycles: Vec<Vec<VertexId>> = euler_partial_subgraphs(&m)
        .into_iter()
        .map(|e| canonical_cycle(e.arcs.iter().filter_map(|&a| m.vertex_of[a]).collect()))
        .collect();
    cycles.sort();
    cycles.dedup();
    Ok(cycles)
}

/// `true` if `cycle` is closed and visits every vertex of `g` once along
/// existing arcs.
pub fn is_hamilton_cycle(g: &Digraph, cycle: &[VertexId]) -> bool {
    let n = g.vertex_count();
    if n == 0 || cycle.len() != n + 1 || cycle[0] != cycle[n] {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in &cycle[..n] {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    cycle.windows(2).all(|w| g.has_arc(w[0], w[1]))
}

/// Exhaustive backtracking from vertex 0. Errors above `bound` vertexes.
pub fn brute_force_hamilton(
    g: &Digraph,
    bound: usize,
) -> Result<Vec<Vec<VertexId>>, HamiltonError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(HamiltonError::BoundExceeded { n, bound });
    }
    fn go(g: &Digraph, path: &mut Vec<VertexId>, used: &mut [bool], out: &mut Vec<Vec<VertexId>>) {
        let v = *path.last().expect("non-empty");
        if path.len() == used.len() {
            if g.has_arc(v, path[0]) {
                let mut c = path.clone();
                c.push(path[0]);
                out.push(c);
            }
            return;
        }
        for &w in g.successors(v) {
            if !used[w] {
                used[w] = true;
                path.push(w);
                go(g, path, used, out);
                path.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        let mut used = vec![false; n];
        used[0] = true;
        go(g, &mut vec![0], &mut used, &mut out);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Digraph {
        g(
            n,
            &(0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j)
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn three_cycle() {
        let c3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let m = build_marked_edge_graph(&c3).unwrap();
        assert_eq!(m.marked_arcs().len(), 3);
        assert_eq!(euler_partial_subgraphs(&m).len(), 1);
        assert_eq!(
            hamilton_cycles_via_duality(&c3).unwrap(),
            vec![vec![0, 1, 2, 0]]
        );
        assert_eq!(brute_force_hamilton(&c3, ORACLE_BOUND).unwrap().len(), 1);
    }

    #[test]
    fn complete_graphs() {
        let k3 = complete(3);
        assert_eq!(
            hamilton_cycles_via_duality(&k3).unwrap(),
            vec![vec![0, 1, 2, 0], vec![0, 2, 1, 0]]
        );
        assert_eq!(
            euler_partial_subgraphs(&build_marked_edge_graph(&k3).unwrap()).len(),
            2
        );
        assert_eq!(
            brute_force_hamilton(&complete(4), ORACLE_BOUND)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(hamilton_cycles_via_duality(&complete(4)).unwrap().len(), 6);
    }

    #[test]
    fn acyclic_path() {
        let p = g(3, &[(0, 1), (1, 2)]);
        assert!(hamilton_cycles_via_duality(&p).unwrap().is_empty());
        assert!(brute_force_hamilton(&p, ORACLE_BOUND).unwrap().is_empty());
    }

    #[test]
    fn small_cases() {
        assert!(hamilton_cycles_via_duality(&g(1, &[])).unwrap().is_empty());
        let two = g(2, &[(0, 1), (1, 0)]);
        assert_eq!(
            hamilton_cycles_via_duality(&two).unwrap(),
            vec![vec![0, 1, 0]]
        );
        assert_eq!(
            brute_force_hamilton(&two, ORACLE_BOUND).unwrap(),
            vec![vec![0, 1, 0]]
        );
    }

    #[test]
    fn quasi_form_is_not_enough() {
        // x1,x2 -> y1,y2 plus y1 -> x1, y2 -> x2
        let h = g(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (3, 1)]);
        let expected = brute_force_hamilton(&h, ORACLE_BOUND).unwrap();
        assert_eq!(hamilton_cycles_via_duality(&h).unwrap(), expected);
    }

    #[test]
    fn bound() {
        assert!(matches!(
            brute_force_hamilton(&g(11, &[]), ORACLE_BOUND),
            Err(HamiltonError::BoundExceeded { n: 11, bound: 10 })
        ));
    }

    #[test]
    fn validity_check() {
        let c3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(is_hamilton_cycle(&c3, &[0, 1, 2, 0]));
        assert!(!is_hamilton_cycle(&c3, &[0, 2, 1, 0]));
        assert!(!is_hamilton_cycle(&c3, &[0, 1, 0]));
    }
}
