//! Tuple colorings, generalized Kneser graphs and `χ_h`.

use serde::Serialize;

use super::exact::{bits, check_guard, mask_to_vec, HARD_CAP};
use super::{Invariant, InvariantReport, InvariantWitness};
use crate::error::{Error, Result};
use crate::family::CircInstance;
use crate::graph::Graph;
use crate::product::ProductGraph;

/// Color sets drawn from `0..palette_size`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleColoring {
    pub colors_per_vertex: Vec<Vec<usize>>,
    pub palette_size: usize,
}

impl TupleColoring {
    /// Demanded sizes, palette range and disjointness along edges.
    pub fn is_valid_for(&self, g: &Graph, demands: &[usize]) -> bool {
        let sets = &self.colors_per_vertex;
        sets.len() == g.order()
            && demands.len() == g.order()
            && sets.iter().zip(demands).all(|(s, &d)| {
                s.len() == d && s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&c| c < self.palette_size)
            })
            && g.edges()
                .all(|(u, v)| u != v && sets[u].iter().all(|c| !sets[v].contains(c)))
    }

    fn masks(&self) -> Vec<u64> {
        self.colors_per_vertex
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &c| m | 1 << c))
            .collect()
    }
}

fn check_palette(s: usize) -> Result<()> {
    if s > HARD_CAP {
        return Err(Error::GuardExceeded {
            what: "palette size",
            order: s,
            limit: HARD_CAP,
        });
    }
    Ok(())
}

fn check_demands(g: &Graph, demands: &[usize]) -> Result<()> {
    if demands.len() != g.order() {
        return Err(Error::InvalidInput(format!(
            "{} demands for {} vertices",
            demands.len(),
            g.order()
        )));
    }
    if demands.contains(&0) {
        return Err(Error::InvalidInput("demands must be positive".into()));
    }
    Ok(())
}

/// The `r`-subsets of `0..s` as bitmasks in colexicographic order, which is
/// ascending numeric order of the masks.
fn subsets_colex(s: usize, r: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if r > s {
        return out;
    }
    if r == 0 {
        return vec![0];
    }
    if r == 64 {
        return vec![u64::MAX];
    }
    let mut m: u64 = (1u64 << r) - 1;
    let limit = if s == 64 { None } else { Some(1u64 << s) };
    loop {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let Some(r2) = m.checked_add(c) else { break };
        m = (((r2 ^ m) >> 2) / c) | r2;
        if limit.is_some_and(|l| m >= l) {
            break;
        }
    }
    out
}

/// `K({r_i}, s)`: every `r_i`-subset of `0..s`, adjacent when disjoint.
///
/// Equal demands contribute their subsets once. Vertices are grouped by
/// distinct demand in ascending order and colexicographic within a group;
/// the subsets are returned alongside the graph.
pub fn kneser_graph(demands: &[usize], s: usize) -> Result<(Graph, Vec<Vec<usize>>)> {
    check_palette(s)?;
    if demands.is_empty() || demands.contains(&0) {
        return Err(Error::InvalidInput("demands must be a nonempty list of positive counts".into()));
    }
    if let Some(&d) = demands.iter().find(|&&d| d > s) {
        return Err(Error::InvalidInput(format!("demand {d} exceeds palette size {s}")));
    }
    let mut distinct = demands.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let masks: Vec<u64> = distinct.iter().flat_map(|&r| subsets_colex(s, r)).collect();
    let mut edges = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(masks.len(), edges)?;
    Ok((graph, masks.into_iter().map(mask_to_vec).collect()))
}

/// The `∘_h` instance whose fiber over `v` is `K_{demands[v]}`.
pub fn complete_fiber_instance(g: &Graph, demands: &[usize]) -> Result<CircInstance> {
    check_demands(g, demands)?;
    CircInstance::from_members(g.clone(), demands.iter().map(|&d| Graph::complete(d)).collect())
}

/// Read a tuple coloring off a proper coloring of the complete-fiber product:
/// the colors of fiber `v` form the set of `v`.
pub fn tuple_from_product_coloring(product: &ProductGraph, colors: &[usize]) -> TupleColoring {
    let mut sets: Vec<Vec<usize>> = (0..product.base_order())
        .map(|a| product.fiber(a).map(|i| colors[i]).collect())
        .collect();
    for s in &mut sets {
        s.sort_unstable();
    }
    TupleColoring {
        colors_per_vertex: sets,
        palette_size: colors.iter().max().map_or(0, |&m| m + 1),
    }
}

/// A proper coloring of the complete-fiber product from a tuple coloring:
/// the `x`-th vertex of fiber `a` gets the `x`-th smallest color of `a`.
pub fn product_coloring_from_tuple(product: &ProductGraph, tuple: &TupleColoring) -> Vec<usize> {
    (0..product.graph.order())
        .map(|i| {
            let (a, x) = product.pair(i);
            tuple.colors_per_vertex[a][x]
        })
        .collect()
}

/// The homomorphism `g → K({demands}, s)` carried by a tuple coloring, as
/// the index of each vertex's color set among the Kneser vertices.
pub fn kneser_homomorphism(tuple: &TupleColoring, kneser_sets: &[Vec<usize>]) -> Option<Vec<usize>> {
    tuple
        .colors_per_vertex
        .iter()
        .map(|s| kneser_sets.iter().position(|k| k == s))
        .collect()
}

fn tuple_search(
    adj: &[u64],
    demands: &[usize],
    s: usize,
    v: usize,
    used: usize,
    assigned: &mut [u64],
) -> bool {
    if v == adj.len() {
        return true;
    }
    let blocked = bits(adj[v]).fold(0u64, |m, u| if u < v { m | assigned[u] } else { m });
    let fresh_mask = |m: u64| m.checked_shr(used as u32).unwrap_or(0);
    for m in subsets_colex(s, demands[v]) {
        if m & blocked != 0 {
            continue;
        }
        // unused colors are interchangeable: only take a prefix of them
        let fresh = fresh_mask(m);
        if fresh & fresh.wrapping_add(1) != 0 {
            continue;
        }
        assigned[v] = m;
        let used2 = used + fresh.count_ones() as usize;
        if tuple_search(adj, demands, s, v + 1, used2, assigned) {
            return true;
        }
    }
    assigned[v] = 0;
    false
}

/// A tuple coloring of `g` with `demands[v]` colors at `v` from a palette of
/// size `s`, or `None` when none exists.
pub fn tuple_coloring_with_palette(g: &Graph, demands: &[usize], s: usize, guard: usize) -> Result<Option<TupleColoring>> {
    check_guard(g, "tuple coloring", guard)?;
    check_demands(g, demands)?;
    check_palette(s)?;
    let adj = g.adjacency_masks();
    let mut assigned = vec![0u64; g.order()];
    if !tuple_search(&adj, demands, s, 0, 0, &mut assigned) {
        return Ok(None);
    }
    let t = TupleColoring {
        colors_per_vertex: assigned.into_iter().map(mask_to_vec).collect(),
        palette_size: s,
    };
    debug_assert_eq!(t.masks().len(), g.order());
    Ok(Some(t))
}

/// `χ_h(g)`: the smallest palette admitting a tuple coloring with the given
/// demands. Palettes are tried upward from the largest demand sum on a
/// single vertex or edge.
pub fn h_tuple_chromatic(g: &Graph, demands: &[usize], guard: usize) -> Result<InvariantReport> {
    check_guard(g, "tuple coloring", guard)?;
    check_demands(g, demands)?;
    let lower = g
        .edges()
        .map(|(u, v)| demands[u] + demands[v])
        .chain(demands.iter().copied())
        .max()
        .unwrap_or(0);
    let upper: usize = demands.iter().sum();
    for s in lower..=upper {
        if let Some(t) = tuple_coloring_with_palette(g, demands, s, guard)? {
            return Ok(InvariantReport::new(
                Invariant::ChiH,
                s,
                Some(InvariantWitness::TupleColoring(t)),
            ));
        }
    }
    Ok(InvariantReport::new(Invariant::ChiH, 0, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use crate::invariants::{chromatic, is_proper_coloring};
    use crate::product::circ_h;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn kneser_examples() {
        let (k3, sets) = kneser_graph(&[1], 3).unwrap();
        assert!(k3.is_complete() && k3.order() == 3);
        assert_eq!(sets, vec![vec![0], vec![1], vec![2]]);

        let (p, sets) = kneser_graph(&[2], 5).unwrap();
        assert_eq!((p.order(), p.size()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(is_isomorphic(&p, &petersen()).unwrap().is_some());
        assert_eq!(sets[..4], [vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3]]);

        let (g, sets) = kneser_graph(&[3, 2], 5).unwrap();
        assert_eq!(g.order(), 20);
        for (v, s) in sets.iter().enumerate() {
            if s.len() == 3 {
                assert_eq!(g.degree(v), 1);
                let w = g.neighbors(v)[0];
                assert_eq!(sets[w].len(), 2);
            }
        }
        assert_eq!(kneser_graph(&[2, 2], 4).unwrap().0.order(), 6);
        assert!(kneser_graph(&[6], 5).is_err());
        assert!(kneser_graph(&[0], 5).is_err());
        assert_eq!(subsets_colex(64, 64), vec![u64::MAX]);
        assert_eq!(subsets_colex(64, 1).len(), 64);
    }

    #[test]
    fn tuple_chromatic_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(h_tuple_chromatic(&c5, &[1; 5], 20).unwrap().value, 3);
        let r = h_tuple_chromatic(&c5, &[2; 5], 20).unwrap();
        assert_eq!(r.value, 5);
        let Some(InvariantWitness::TupleColoring(t)) = &r.witness else { panic!() };
        assert!(t.is_valid_for(&c5, &[2; 5]));
        let inst = complete_fiber_instance(&c5, &[2; 5]).unwrap();
        assert_eq!(chromatic(&circ_h(&inst).graph, 20).unwrap().0, 5);

        let star = Graph::star(3);
        let demands = [2, 1, 1, 1];
        let r = h_tuple_chromatic(&star, &demands, 20).unwrap();
        assert_eq!(r.value, 3);
        let Some(InvariantWitness::TupleColoring(t)) = &r.witness else { panic!() };
        assert_eq!(t.colors_per_vertex, vec![vec![0, 1], vec![2], vec![2], vec![2]]);
        assert!(h_tuple_chromatic(&star, &[1, 0, 1, 1], 20).is_err());
    }

    #[test]
    fn conversions_round_trip() {
        let g = Graph::path(3);
        let demands = [2, 1, 2];
        let inst = complete_fiber_instance(&g, &demands).unwrap();
        let product = circ_h(&inst);
        let (_, colors) = chromatic(&product.graph, 20).unwrap();
        let t = tuple_from_product_coloring(&product, &colors);
        assert!(t.is_valid_for(&g, &demands));
        let back = product_coloring_from_tuple(&product, &t);
        assert!(is_proper_coloring(&product.graph, &back));

        let (_, sets) = kneser_graph(&demands, t.palette_size).unwrap();
        let (k, _) = kneser_graph(&demands, t.palette_size).unwrap();
        let f = kneser_homomorphism(&t, &sets).unwrap();
        assert!(g.edges().all(|(u, v)| k.has_edge(f[u], f[v])));
    }
}
