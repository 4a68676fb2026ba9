//! 0/1 relation matrices tagged with the role they are read in.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::DualityError;

/// How a 0/1 matrix is interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    /// Binary relation / direct-path matrix.
    L,
    /// Arc adjacency of an edge graph.
    R,
    /// Vertex adjacency of an edge graph.
    F,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::L => "L",
            Role::R => "R",
            Role::F => "F",
        };
        f.write_str(s)
    }
}

/// Square 0/1 matrix with zero diagonal, stored as the digraph whose arcs are
/// its non-zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleMatrix {
    role: Role,
    graph: Digraph,
}

impl RoleMatrix {
    pub fn new(role: Role, graph: Digraph) -> Self {
        RoleMatrix { role, graph }
    }

    pub fn from_rows(role: Role, rows: &[Vec<u8>]) -> Result<Self, DualityError> {
        let n = rows.len();
        let mut arcs = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(DualityError::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 if i == j => {
                        return Err(DualityError::InvalidMatrix(format!(
                            "non-zero diagonal entry at {i}"
                        )))
                    }
                    1 => arcs.push((i, j)),
                    other => {
                        return Err(DualityError::InvalidMatrix(format!(
                            "entry ({i},{j}) = {other} is not 0/1"
                        )))
                    }
                }
            }
        }
        let graph =
            Digraph::new(n, arcs).map_err(|e| DualityError::InvalidMatrix(e.to_string()))?;
        Ok(RoleMatrix { role, graph })
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn order(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn into_graph(self) -> Digraph {
        self.graph
    }

    /// Same entries read in another role.
    pub fn with_role(&self, role: Role) -> RoleMatrix {
        RoleMatrix {
            role,
            graph: self.graph.clone(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        u8::from(self.graph.has_arc(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.graph.adjacency_matrix()
    }

    pub(crate) fn expect_role(&self, expected: Role) -> Result<(), DualityError> {
        if self.role == expected {
            Ok(())
        } else {
            Err(DualityError::WrongRole {
                expected,
                found: self.role,
            })
        }
    }
}

impl fmt::Display for RoleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
