use dualgraph_core::classify::{classify_graph, predict_growth, GraphClass};
use dualgraph_core::convert::{
    augment_entrance_exit, iterate_convert, paths_of_length, reverse_convert, straight_convert,
    AugmentMode, ConvertOptions,
};
use dualgraph_core::digraph::{cyclomatic_number, Digraph};
use dualgraph_core::error::DualityError;
use dualgraph_core::gen::{random_digraph, seeded};
use dualgraph_core::hamilton::{build_marked_edge_graph, euler_partial_subgraphs};
use dualgraph_core::matrix::{Role, RoleMatrix};

fn g(n: usize, arcs: &[(usize, usize)]) -> Digraph {
    Digraph::new(n, arcs.iter().copied()).unwrap()
}

fn labelled(names: &[&str], arcs: &[(usize, usize)]) -> Digraph {
    Digraph::with_labels(
        names.len(),
        arcs.iter().copied(),
        names.iter().map(|s| Some(s.to_string())).collect(),
    )
    .unwrap()
}

#[test]
fn augmentation_adds_fresh_terminals() {
    let h = labelled(&["ab", "bc"], &[(0, 1)]);
    let aug = augment_entrance_exit(&h).unwrap();
    assert_eq!(aug.graph.arcs(), &[(0, 1), (1, 3), (2, 0)]);
    assert_eq!(aug.graph.label(2), Some("ω1"));
    assert_eq!(aug.graph.label(3), Some("φ1"));
    let again = augment_entrance_exit(&aug.graph).unwrap();
    assert_eq!(again.graph.label(4), Some("ω2"));
    assert_eq!(again.graph.label(5), Some("φ2"));
    assert!(augment_entrance_exit(&g(3, &[(0, 2), (1, 2)])).is_err());
}

#[test]
fn reverse_examples() {
    let root = reverse_convert(&RoleMatrix::new(Role::R, g(2, &[(0, 1)]))).unwrap();
    assert_eq!(root.graph.arcs(), &[(0, 1), (1, 2)]);
    // two arcs entering one but not a line digraph: 0->2, 1->2, 1->3
    let err = reverse_convert(&RoleMatrix::new(Role::R, g(4, &[(0, 2), (1, 2), (1, 3)])));
    assert!(matches!(err, Err(DualityError::NotQuasiCanonical { .. })));
}

#[test]
fn walks() {
    assert_eq!(
        paths_of_length(&g(3, &[(0, 1), (1, 2)]), 2),
        vec![vec![0, 1, 2]]
    );
    assert_eq!(
        paths_of_length(&g(3, &[(0, 1), (1, 2), (2, 0)]), 3),
        vec![vec![0, 1, 2, 0], vec![1, 2, 0, 1], vec![2, 0, 1, 2]]
    );
    assert_eq!(
        paths_of_length(&g(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]), 2),
        vec![vec![0, 2, 3], vec![0, 2, 4], vec![1, 2, 3], vec![1, 2, 4]]
    );
}

#[test]
fn three_cycle_converts_to_itself() {
    let c3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
    let l = straight_convert(&c3);
    assert_eq!(l.arcs(), &[(0, 1), (1, 2), (2, 0)]);
}

#[test]
fn linear_and_super_linear_growth() {
    // s->a, a splits three ways, all rejoin at d, d->t
    let h1 = g(
        7,
        &[
            (0, 1),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (3, 5),
            (4, 5),
            (5, 6),
        ],
    );
    assert!(h1.arc_count() > h1.vertex_count());
    assert_eq!(classify_graph(&h1).class, GraphClass::H1);
    let trace = iterate_convert(&h1, &ConvertOptions::new(6, AugmentMode::Faithful)).unwrap();
    let ns = trace.ns();
    let d = ns[1] - ns[0];
    assert!(d > 0);
    assert!(ns.windows(2).all(|w| w[1] - w[0] == d), "{ns:?}");

    let h3 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)]);
    let pred = predict_growth(&h3, 10, AugmentMode::Faithful);
    let dn = &pred.delta_n;
    assert!(dn.windows(2).all(|w| w[1] >= w[0]));
    assert!(dn.last() > dn.first());
    let trace = iterate_convert(&h3, &ConvertOptions::new(10, AugmentMode::Faithful)).unwrap();
    let observed: Vec<i128> = trace.ns().iter().map(|&n| n as i128).collect();
    assert_eq!(pred.n, observed);
    let nus = trace.nus();
    assert!(nus.windows(2).filter(|w| w[1] > w[0]).count() >= 2);
}

#[test]
fn complicated_vertex_raises_nu_once() {
    let mb = g(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]);
    let l = straight_convert(&mb);
    assert_eq!(l.arcs(), &[(0, 2), (0, 3), (1, 2), (1, 3)]);
    assert_eq!((cyclomatic_number(&mb), cyclomatic_number(&l)), (0, 1));
}

/// Arc subsets of the marked edge graph holding every marked arc, with in-
/// and out-degree 1 on touched vertexes and forming one circuit.
fn subset_oracle(h: &Digraph, marked: &[usize]) -> usize {
    let m = h.arc_count();
    let free: Vec<usize> = (0..m).filter(|a| !marked.contains(a)).collect();
    assert!(free.len() <= 20, "oracle too large");
    let mut count = 0;
    for mask in 0u32..1 << free.len() {
        let chosen: Vec<usize> = marked
            .iter()
            .copied()
            .chain(
                (0..free.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| free[b]),
            )
            .collect();
        let mut indeg = vec![0; h.vertex_count()];
        let mut next = vec![usize::MAX; h.vertex_count()];
        for &a in &chosen {
            let (t, hd) = h.arcs()[a];
            indeg[hd] += 1;
            if next[t] != usize::MAX {
                next[t] = usize::MAX - 1;
            } else {
                next[t] = hd;
            }
        }
        let touched: Vec<usize> = (0..h.vertex_count())
            .filter(|&v| indeg[v] > 0 || next[v] != usize::MAX)
            .collect();
        if touched.is_empty()
            || touched
                .iter()
                .any(|&v| indeg[v] != 1 || next[v] >= usize::MAX - 1)
        {
            continue;
        }
        let mut v = touched[0];
        let mut steps = 0;
        loop {
            v = next[v];
            steps += 1;
            if v == touched[0] {
                break;
            }
        }
        if steps == touched.len() {
            count += 1;
        }
    }
    count
}

#[test]
fn euler_partial_enumeration_matches_subset_oracle() {
    let mut rng = seeded(11);
    let mut checked = 0;
    for fixed in [
        g(3, &[(0, 1), (1, 2), (2, 0)]),
        g(3, &[(0, 1), (1, 2)]),
        g(3, &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]),
    ] {
        let m = build_marked_edge_graph(&fixed).unwrap();
        assert_eq!(
            euler_partial_subgraphs(&m).len(),
            subset_oracle(m.graph(), &m.marked_arcs())
        );
    }
    while checked < 200 {
        let n = 2 + checked % 3;
        let graph = random_digraph(&mut rng, n, 0.5);
        let m = build_marked_edge_graph(&graph).unwrap();
        if m.graph().arc_count() - m.marked_arcs().len() > 16 {
            continue;
        }
        checked += 1;
        assert_eq!(
            euler_partial_subgraphs(&m).len(),
            subset_oracle(m.graph(), &m.marked_arcs()),
            "{:?}",
            graph.arcs()
        );
    }
}
