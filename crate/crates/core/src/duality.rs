//! Recognition of matrices that are at once a vertex-adjacency matrix and an
//! arc-adjacency matrix.
//!
//! For a relation matrix `L` every non-zero entry `(i, j)` gets the weight
//! `s_ij = (row sum of i) + (column sum of j)`. The deviation matrix
//! `c_ij = (s_ij - min over row i) + (s_ij - min over column j)` vanishes
//! exactly when every row and every column carries a single `s` value. A
//! matrix is quasi-canonical when `c` vanishes on the full matrix and on each
//! minor obtained by deleting the row and column of a non-zero entry. It is
//! canonical when, additionally, no entry joins a branching row to a merging
//! column, so that every vertex shared between arcs of the edge graph is
//! simple.

use serde::{Deserialize, Serialize};

use crate::convert::reverse_convert;
use crate::digraph::{Arc, VertexId};
use crate::error::DualityError;
use crate::matrix::{Role, RoleMatrix};

/// Dense `s` and `c` matrices with per-row and per-column minima of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CQuantities {
    pub s: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    /// Minimum of `s` over the non-zero entries of each row; `None` for an
    /// empty row.
    pub row_min: Vec<Option<i64>>,
    pub col_min: Vec<Option<i64>>,
}

impl CQuantities {
    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ViolationReason {
    /// The deviation `c` is non-zero on this entry.
    NonZeroC { c: i64 },
    /// Tail branches and head merges: the shared vertex would be complicated.
    BranchIntoMerge { outdeg: usize, indeg: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcViolation {
    pub tail: VertexId,
    pub head: VertexId,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityVerdict {
    pub quasi_canonical: bool,
    /// `None` when only the quasi-canonical test was run.
    pub canonical: Option<bool>,
    pub violating_arcs: Vec<ArcViolation>,
    /// Entries whose minor has a non-zero deviation.
    pub minor_failures: Vec<Arc>,
    /// The full matrix passes but some minor fails.
    pub minor_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Simple,
    Elementary,
    Complicated,
}

/// Classification of a vertex shared between incoming and outgoing arcs of
/// the reconstructed edge graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexKind {
    /// Vertex of the reconstructed edge graph.
    pub vertex: VertexId,
    pub kind: Kind,
    /// Number of incoming arcs.
    pub k: usize,
    /// Number of outgoing arcs.
    pub p: usize,
    /// Matrix indexes of the incoming arcs.
    pub in_arcs: Vec<VertexId>,
    pub out_arcs: Vec<VertexId>,
}

impl VertexKind {
    pub fn from_block_sizes(vertex: VertexId, k: usize, p: usize) -> Self {
        let kind = if k == 1 && p == 1 {
            Kind::Elementary
        } else if k >= 2 && p >= 2 {
            Kind::Complicated
        } else {
            Kind::Simple
        };
        VertexKind {
            vertex,
            kind,
            k,
            p,
            in_arcs: Vec::new(),
            out_arcs: Vec::new(),
        }
    }

    /// Elementary vertexes are simple too.
    pub fn is_simple(&self) -> bool {
        self.kind != Kind::Complicated
    }
}

/// Sparse `(s, c)` for a set of entries. Row and column sums are taken over
/// the given entries only, which is what a minor needs.
pub(crate) fn sparse_c(n: usize, entries: &[Arc]) -> Vec<(i64, i64)> {
    let mut row_sum = vec![0i64; n];
    let mut col_sum = vec![0i64; n];
    for &(i, j) in entries {
        row_sum[i] += 1;
        col_sum[j] += 1;
    }
    let s: Vec<i64> = entries
        .iter()
        .map(|&(i, j)| row_sum[i] + col_sum[j])
        .collect();
    let mut row_min = vec![i64::MAX; n];
    let mut col_min = vec![i64::MAX; n];
    for (&(i, j), &sv) in entries.iter().zip(&s) {
        row_min[i] = row_min[i].min(sv);
        col_min[j] = col_min[j].min(sv);
    }
    entries
        .iter()
        .zip(&s)
        .map(|(&(i, j), &sv)| (sv, (sv - row_min[i]) + (sv - col_min[j])))
        .collect()
}

fn minor_is_zero(n: usize, arcs: &[Arc], row: VertexId, col: VertexId, buf: &mut Vec<Arc>) -> bool {
    buf.clear();
    buf.extend(arcs.iter().filter(|&&(i, j)| i != row && j != col));
    sparse_c(n, buf).iter().all(|&(_, c)| c == 0)
}

pub fn s_matrix(l: &RoleMatrix) -> Result<Vec<Vec<i64>>, DualityError> {
    l.expect_role(Role::L)?;
    Ok(c_quantities(l).s)
}

pub fn c_matrix(l: &RoleMatrix) -> Result<CQuantities, DualityError> {
    l.expect_role(Role::L)?;
    Ok(c_quantities(l))
}

fn c_quantities(l: &RoleMatrix) -> CQuantities {
    let n = l.order();
    let arcs = l.graph().arcs();
    let sc = sparse_c(n, arcs);
    let mut s = vec![vec![0; n]; n];
    let mut c = vec![vec![0; n]; n];
    let mut row_min = vec![None; n];
    let mut col_min = vec![None; n];
    for (&(i, j), &(sv, cv)) in arcs.iter().zip(&sc) {
        s[i][j] = sv;
        c[i][j] = cv;
        row_min[i] = Some(row_min[i].map_or(sv, |m: i64| m.min(sv)));
        col_min[j] = Some(col_min[j].map_or(sv, |m: i64| m.min(sv)));
    }
    CQuantities {
        s,
        c,
        row_min,
        col_min,
    }
}

/// Quasi-canonical test without the role check; shared with normalization
/// and reverse converting.
pub(crate) fn quasi_verdict(m: &RoleMatrix) -> DualityVerdict {
    let n = m.order();
    let arcs = m.graph().arcs();
    let violating_arcs: Vec<ArcViolation> = arcs
        .iter()
        .zip(sparse_c(n, arcs))
        .filter(|(_, (_, c))| *c != 0)
        .map(|(&(tail, head), (_, c))| ArcViolation {
            tail,
            head,
            reason: ViolationReason::NonZeroC { c },
        })
        .collect();
    let mut buf = Vec::with_capacity(arcs.len());
    let minor_failures: Vec<Arc> = arcs
        .iter()
        .copied()
        .filter(|&(i, j)| !minor_is_zero(n, arcs, i, j, &mut buf))
        .collect();
    DualityVerdict {
        quasi_canonical: violating_arcs.is_empty() && minor_failures.is_empty(),
        canonical: None,
        minor_only: violating_arcs.is_empty() && !minor_failures.is_empty(),
        violating_arcs,
        minor_failures,
    }
}

pub fn is_quasi_canonical(l: &RoleMatrix) -> Result<DualityVerdict, DualityError> {
    l.expect_role(Role::L)?;
    Ok(quasi_verdict(l))
}

/// Arcs whose tail has out-degree >= 2 and whose head has in-degree >= 2.
pub fn branch_into_merge_arcs(m: &RoleMatrix) -> Vec<ArcViolation> {
    let g = m.graph();
    g.arcs()
        .iter()
        .filter(|&&(x, y)| g.outdeg(x) >= 2 && g.indeg(y) >= 2)
        .map(|&(x, y)| ArcViolation {
            tail: x,
            head: y,
            reason: ViolationReason::BranchIntoMerge {
                outdeg: g.outdeg(x),
                indeg: g.indeg(y),
            },
        })
        .collect()
}

/// Full verdict. The role tag is not checked.
pub fn is_canonical(l: &RoleMatrix) -> DualityVerdict {
    let mut verdict = quasi_verdict(l);
    let degree_violations = branch_into_merge_arcs(l);
    verdict.canonical = Some(verdict.quasi_canonical && degree_violations.is_empty());
    verdict.violating_arcs.extend(degree_violations);
    verdict.violating_arcs.sort_by_key(|v| {
        (
            v.tail,
            v.head,
            matches!(v.reason, ViolationReason::BranchIntoMerge { .. }),
        )
    });
    verdict
}

/// Kinds of the vertexes shared by incoming and outgoing arcs in the edge
/// graph reconstructed from `r`.
pub fn classify_vertices(r: &RoleMatrix) -> Result<Vec<VertexKind>, DualityError> {
    let root = reverse_convert(&r.with_role(Role::R))?;
    let h = &root.graph;
    let mut kinds = Vec::new();
    for v in 0..h.vertex_count() {
        let (k, p) = (h.indeg(v), h.outdeg(v));
        if k == 0 || p == 0 {
            continue;
        }
        let mut kind = VertexKind::from_block_sizes(v, k, p);
        for (e, &(t, hd)) in root.arc_of.iter().enumerate() {
            if hd == v {
                kind.in_arcs.push(e);
            }
            if t == v {
                kind.out_arcs.push(e);
            }
        }
        kinds.push(kind);
    }
    Ok(kinds)
}
