//! Small named instances used throughout the tests, the CLI and the docs.
//!
//! Inner vertices `x, y, z, t` are numbered `0, 1, 2, 3`; base vertices
//! `a, b, c, ...` are numbered from 0.

use crate::family::{CircInstance, EdgeAssignment, GraphFamily, OtimesInstance};
use crate::graph::Graph;

fn g(order: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(order, edges.iter().copied()).expect("catalog graphs are valid")
}

/// The three perfect matchings of `K4`.
pub fn perfect_matchings_k4() -> [Graph; 3] {
    [
        g(4, &[(0, 2), (1, 3)]),
        g(4, &[(0, 1), (2, 3)]),
        g(4, &[(0, 3), (1, 2)]),
    ]
}

/// `C3` with the three perfect matchings of `K4` assigned bijectively:
/// `h(01) = {02,13}`, `h(12) = {01,23}`, `h(02) = {03,12}`. The product is
/// four disjoint triangles even though `C3` and `h(C3) = K4` are both
/// connected and nonbipartite.
pub fn four_triangles() -> OtimesInstance {
    let base = Graph::cycle(3);
    let family = GraphFamily::new(perfect_matchings_k4().to_vec()).unwrap();
    let h = EdgeAssignment::from_fn(&base, |u, v| match (u, v) {
        (0, 1) => 0,
        (1, 2) => 1,
        _ => 2,
    });
    OtimesInstance::new(base, family, h).unwrap()
}

/// `C3` with `{02,13}` on `ab` and `bc` and `{03,12}` on `ac`; the product
/// is two disjoint hexagons.
pub fn two_hexagons() -> OtimesInstance {
    let base = Graph::cycle(3);
    let family = GraphFamily::new(vec![g(4, &[(0, 2), (1, 3)]), g(4, &[(0, 3), (1, 2)])]).unwrap();
    let h = EdgeAssignment::from_fn(&base, |u, v| usize::from((u, v) == (0, 2)));
    OtimesInstance::new(base, family, h).unwrap()
}

/// `K4` with `{xz,yz,zt}` everywhere except edge `ab`, which gets
/// `{xy,xz,zt}`. The chromatic upper bound `χ(h(G)) = 3` is attained.
pub fn k4_bound_attained() -> OtimesInstance {
    let base = Graph::complete(4);
    let family =
        GraphFamily::new(vec![g(4, &[(0, 2), (1, 2), (2, 3)]), g(4, &[(0, 1), (0, 2), (2, 3)])]).unwrap();
    let h = EdgeAssignment::from_fn(&base, |u, v| usize::from((u, v) == (0, 1)));
    OtimesInstance::new(base, family, h).unwrap()
}

/// `K4` with `{xy,yz,zt}` everywhere except `ac`, which gets `{xz,xt,yt}`.
/// Here `h(G) = K4` but the product is 3-chromatic.
pub fn k4_bound_strict() -> OtimesInstance {
    let base = Graph::complete(4);
    let family =
        GraphFamily::new(vec![g(4, &[(0, 1), (1, 2), (2, 3)]), g(4, &[(0, 2), (0, 3), (1, 3)])]).unwrap();
    let h = EdgeAssignment::from_fn(&base, |u, v| usize::from((u, v) == (0, 2)));
    OtimesInstance::new(base, family, h).unwrap()
}

/// The 3-coloring of [`k4_bound_strict`]'s product listed with the example,
/// as `(base, inner, color)` triples.
pub fn k4_bound_strict_coloring() -> Vec<(usize, usize, usize)> {
    let (a, b, c, d) = (0, 1, 2, 3);
    let (x, y, z, t) = (0, 1, 2, 3);
    vec![
        (a, x, 0),
        (b, x, 0),
        (b, z, 0),
        (c, x, 0),
        (d, z, 0),
        (a, y, 1),
        (b, y, 1),
        (b, t, 1),
        (c, y, 1),
        (d, y, 1),
        (d, t, 1),
        (a, z, 2),
        (a, t, 2),
        (c, z, 2),
        (c, t, 2),
        (d, x, 2),
    ]
}

/// `C3` with `h(a) = h(b) = K2` and `h(c) = K2 ∪ K1`.
pub fn triangle_circ() -> CircInstance {
    let k2 = Graph::complete(2);
    let k2k1 = g(3, &[(0, 1)]);
    CircInstance::from_members(Graph::cycle(3), vec![k2.clone(), k2, k2k1]).unwrap()
}

/// `C5` with `h(a) = Kn`, `h(b) = K2` and `2K1` on the other three vertices.
pub fn pentagon_circ(n: usize) -> CircInstance {
    let members = vec![
        Graph::complete(n),
        Graph::complete(2),
        Graph::empty(2),
        Graph::empty(2),
        Graph::empty(2),
    ];
    CircInstance::from_members(Graph::cycle(5), members).unwrap()
}

/// `K2` with `h(a) = K2` and `h(b) = 2K1`; the product is the diamond.
pub fn diamond_circ() -> CircInstance {
    CircInstance::from_members(Graph::complete(2), vec![Graph::complete(2), Graph::empty(2)]).unwrap()
}

/// `K4` minus the edge `23`.
pub fn diamond() -> Graph {
    g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
}
