//! Seeded graph generators and small exhaustive corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{weak_components, Arc, Digraph, VertexId};

pub type GraphRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every ordered pair `(i, j)`, `i != j`, is an arc with probability `p`.
pub fn random_digraph(rng: &mut GraphRng, n: usize, p: f64) -> Digraph {
    let arcs: Vec<Arc> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, arcs).expect("generated arcs are valid")
}

/// Exactly one source and one sink, with out- and in-degree 1 respectively,
/// and weakly connected.
pub fn is_entrance_exit(g: &Digraph) -> bool {
    let sources = g.sources();
    let sinks = g.sinks();
    g.vertex_count() >= 2
        && sources.len() == 1
        && sinks.len() == 1
        && g.outdeg(sources[0]) == 1
        && g.indeg(sinks[0]) == 1
        && weak_components(g) == 1
}

/// Random single entrance/exit graph on `n >= 2` vertexes, randomly
/// relabelled. Interior arcs appear with probability `p`; draws are repeated
/// until the shape holds.
pub fn random_entrance_exit(rng: &mut GraphRng, n: usize, p: f64) -> Digraph {
    entrance_exit_draw(rng, n, p, false)
}

/// As [`random_entrance_exit`], without contours.
pub fn random_acyclic_entrance_exit(rng: &mut GraphRng, n: usize, p: f64) -> Digraph {
    entrance_exit_draw(rng, n, p, true)
}

fn entrance_exit_draw(rng: &mut GraphRng, n: usize, p: f64, acyclic: bool) -> Digraph {
    assert!(n >= 2, "need room for an entrance and an exit");
    if n == 2 {
        return Digraph::new(2, [(0, 1)]).expect("valid");
    }
    let k = n - 2;
    let (s, t) = (0, n - 1);
    loop {
        let mut arcs = if acyclic {
            vec![(s, 1), (k, t)]
        } else {
            vec![(s, rng.gen_range(1..=k)), (rng.gen_range(1..=k), t)]
        };
        for i in 1..=k {
            for j in 1..=k {
                if i != j && (!acyclic || i < j) && rng.gen_bool(p) {
                    arcs.push((i, j));
                }
            }
        }
        let mut perm: Vec<VertexId> = (0..n).collect();
        perm.shuffle(rng);
        let g = Digraph::new(n, arcs.iter().map(|&(a, b)| (perm[a], perm[b]))).expect("valid");
        if is_entrance_exit(&g) {
            return g;
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Adjacency bitmask over the off-diagonal pairs, with relabelling tables.
struct PairCode {
    n: usize,
    pairs: Vec<Arc>,
    /// `tables[p][chunk][byte]`: image of 8 bits of a mask under perm `p`.
    tables: Vec<Vec<[u64; 256]>>,
}

impl PairCode {
    fn new(n: usize, perms: &[Vec<usize>]) -> Self {
        let pairs: Vec<Arc> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .collect();
        let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
        let chunks = pairs.len().div_ceil(8);
        let tables = perms
            .iter()
            .map(|perm| {
                (0..chunks)
                    .map(|c| {
                        let mut table = [0u64; 256];
                        for (byte, slot) in table.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let b = c * 8 + bit;
                                if byte >> bit & 1 == 1 && b < pairs.len() {
                                    let (i, j) = pairs[b];
                                    *slot |= 1 << index(perm[i], perm[j]);
                                }
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        PairCode { n, pairs, tables }
    }

    fn canonical(&self, mask: u64) -> u64 {
        self.tables
            .iter()
            .map(|chunks| {
                chunks
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (c, t)| acc | t[(mask >> (8 * c)) as usize & 0xff])
            })
            .min()
            .expect("at least one permutation")
    }

    fn graph(&self, mask: u64) -> Digraph {
        let arcs = (0..self.pairs.len())
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| self.pairs[b]);
        Digraph::new(self.n, arcs).expect("valid")
    }
}

/// One representative of every isomorphism class of loop-free digraphs on
/// `n` vertexes. Practical up to `n = 5` (9608 classes).
pub fn digraph_classes(n: usize) -> Vec<Digraph> {
    assert!(n <= 5, "exhaustive enumeration only up to 5 vertexes");
    let code = PairCode::new(n, &permutations(n));
    (0..1u64 << code.pairs.len())
        .filter(|&mask| code.canonical(mask) == mask)
        .map(|mask| code.graph(mask))
        .collect()
}

/// One representative of every isomorphism class of single entrance/exit
/// digraphs on `n` vertexes (`2 <= n <= 7`). Representatives use vertex 0 as
/// the entrance and `n - 1` as the exit.
pub fn entrance_exit_classes(n: usize) -> Vec<Digraph> {
    assert!(
        (2..=7).contains(&n),
        "entrance/exit enumeration covers 2..=7 vertexes"
    );
    if n == 2 {
        return vec![Digraph::new(2, [(0, 1)]).expect("valid")];
    }
    let k = n - 2;
    let code = PairCode::new(k, &permutations(k));
    let mut out = Vec::new();
    for mask in 0..1u64 << code.pairs.len() {
        let interior = code.graph(mask);
        for first in 0..k {
            for last in 0..k {
                let arcs = interior
                    .arcs()
                    .iter()
                    .map(|&(a, b)| (a + 1, b + 1))
                    .chain([(0, first + 1), (last + 1, n - 1)]);
                let g = Digraph::new(n, arcs).expect("valid");
                if !is_entrance_exit(&g) {
                    continue;
                }
                // canonical: minimal (interior mask, first, last) over interior relabellings
                let best = code
                    .tables
                    .iter()
                    .zip(permutations(k))
                    .map(|(chunks, perm)| {
                        let m = chunks
                            .iter()
                            .enumerate()
                            .fold(0, |acc, (c, t)| acc | t[(mask >> (8 * c)) as usize & 0xff]);
                        (m, perm[first], perm[last])
                    })
                    .min()
                    .expect("at least one permutation");
                if best == (mask, first, last) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Brute-force isomorphism test for small graphs (`n <= 8`).
pub fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.arc_count() != b.arc_count() {
        return false;
    }
    let mut da: Vec<(usize, usize)> = (0..n).map(|v| (a.indeg(v), a.outdeg(v))).collect();
    let mut db: Vec<(usize, usize)> = (0..n).map(|v| (b.indeg(v), b.outdeg(v))).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    assert!(n <= 8, "brute-force isomorphism is limited to 8 vertexes");
    permutations(n)
        .iter()
        .any(|perm| a.arcs().iter().all(|&(t, h)| b.has_arc(perm[t], perm[h])))
}

/// Entrance/exit graph with `ν = 4` and a single complicated vertex `c`. Its
/// `ν` trace under faithful converting is 4, 5, 5, 5, ...
pub fn trace_example() -> Digraph {
    let names = ["s", "b", "c", "u", "w", "v", "p", "q", "m", "t"];
    let arcs = [
        (0, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (3, 2),
        (2, 6),
        (2, 7),
        (6, 8),
        (7, 8),
        (4, 8),
        (5, 8),
        (8, 9),
    ];
    Digraph::with_labels(
        names.len(),
        arcs,
        names.iter().map(|s| Some(s.to_string())).collect(),
    )
    .expect("valid")
}
