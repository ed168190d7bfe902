//! Shared fixtures for unit tests.

use crate::graph::{Graph, VertSet};
use crate::hyperprism::Hyperprism;

/// Cycle on `n` vertices.
pub(crate) fn c_n(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Complete graph on `n` vertices.
pub(crate) fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Petersen graph: outer C5 on 0..5, inner pentagram on 5..10, spokes i to i+5.
pub(crate) fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Structure whose first strip carries two connecting paths that cross and
/// share their final vertex: 3-7-8-9-0 and 4-10-11-9-0 overlap on 9-0, with
/// the extra edge 8-11 between their interiors. Relation building over this
/// strip reports convergence. The other two strips are plain even paths.
///
/// The corner triangles {0,1,2} and {3,5,6} take the smallest labels so that
/// prism discovery, which scans triangle pairs in ascending order, lands on
/// this frame; growth then absorbs vertex 4 as a second side vertex and the
/// full pipeline hits the convergent side.
pub(crate) fn converging_graph() -> (Graph, Hyperprism) {
    let mut edges = vec![
        (3, 4),
        (3, 7),
        (7, 8),
        (8, 9),
        (9, 0),
        (4, 10),
        (10, 11),
        (11, 9),
        (8, 11),
    ];
    let mut path = |vs: &[usize]| {
        for w in vs.windows(2) {
            edges.push((w[0], w[1]));
        }
    };
    path(&[5, 12, 13, 14, 15, 16, 17, 18, 1]); // second strip
    path(&[6, 19, 20, 21, 22, 23, 24, 25, 2]); // third strip
    drop(path);
    for pair in [(3, 5), (4, 5), (3, 6), (4, 6), (5, 6)] {
        edges.push(pair);
    }
    for pair in [(0, 1), (0, 2), (1, 2)] {
        edges.push(pair);
    }
    let g = Graph::from_edges(26, &edges).unwrap();
    let h = Hyperprism {
        a: [
            VertSet::from_iter([3, 4]),
            VertSet::singleton(5),
            VertSet::singleton(6),
        ],
        c: [
            VertSet::from_iter([7, 8, 9, 10, 11]),
            VertSet::from_iter(12..19),
            VertSet::from_iter(19..26),
        ],
        b: [
            VertSet::singleton(0),
            VertSet::singleton(1),
            VertSet::singleton(2),
        ],
    };
    (g, h)
}
