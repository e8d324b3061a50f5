//! Exact solvers for α, ω, χ, γ and γ_t on bitset graphs.
//!
//! All searches visit vertices in index order and break ties by the lowest
//! index, so witnesses are reproducible.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Absolute ceiling for every configurable guard (one machine word).
pub const HARD_CAP: usize = 64;

/// Largest order each solver accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// χ and χ_h.
    pub coloring: usize,
    /// γ and γ_t.
    pub domination: usize,
    /// α and ω.
    pub clique: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            coloring: 20,
            domination: 20,
            clique: 24,
        }
    }
}

impl Guards {
    /// Every guard set to `n`, clamped to [`HARD_CAP`].
    pub fn uniform(n: usize) -> Self {
        let n = n.min(HARD_CAP);
        Self {
            coloring: n,
            domination: n,
            clique: n,
        }
    }
}

pub(crate) fn check_guard(g: &Graph, what: &'static str, guard: usize) -> Result<()> {
    let limit = guard.min(HARD_CAP);
    if g.order() > limit {
        return Err(Error::GuardExceeded {
            what,
            order: g.order(),
            limit,
        });
    }
    if g.has_loops() {
        return Err(Error::InvalidInput(format!("{what} needs a loopless graph")));
    }
    Ok(())
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

pub(crate) fn mask_to_vec(m: u64) -> Vec<usize> {
    bits(m).collect()
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Greedy sequential coloring of `p`; returns vertices in color order with
/// their color numbers (1-based), as used by the clique bound.
fn color_sort(adj: &[u64], p: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.count_ones() as usize);
    let mut left = p;
    let mut color = 0;
    while left != 0 {
        color += 1;
        let mut avail = left;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            left &= !(1 << v);
            out.push((v, color));
        }
    }
    out
}

fn clique_search(adj: &[u64], r: u64, p: u64, best: &mut u64) {
    let order = color_sort(adj, p);
    let mut p = p;
    for &(v, c) in order.iter().rev() {
        if r.count_ones() as usize + c <= best.count_ones() as usize {
            return;
        }
        let r2 = r | 1 << v;
        let p2 = p & adj[v];
        if p2 == 0 {
            if r2.count_ones() > best.count_ones() {
                *best = r2;
            }
        } else {
            clique_search(adj, r2, p2, best);
        }
        p &= !(1 << v);
    }
}

fn max_clique_masks(adj: &[u64]) -> u64 {
    let mut best = 0;
    if !adj.is_empty() {
        clique_search(adj, 0, full(adj.len()), &mut best);
    }
    best
}

/// A maximum clique, sorted.
pub fn max_clique(g: &Graph, guard: usize) -> Result<Vec<usize>> {
    check_guard(g, "clique number", guard)?;
    Ok(mask_to_vec(max_clique_masks(&g.adjacency_masks())))
}

/// A maximum independent set, sorted.
pub fn max_independent_set(g: &Graph, guard: usize) -> Result<Vec<usize>> {
    check_guard(g, "independence number", guard)?;
    let n = g.order();
    let adj: Vec<u64> = g
        .adjacency_masks()
        .iter()
        .enumerate()
        .map(|(v, &m)| !m & full(n) & !(1 << v))
        .collect();
    Ok(mask_to_vec(max_clique_masks(&adj)))
}

/// Maximum total weight of an independent set, with a witness.
pub fn max_weight_independent_set(g: &Graph, weights: &[usize], guard: usize) -> Result<(usize, Vec<usize>)> {
    check_guard(g, "weighted independence", guard)?;
    if weights.len() != g.order() {
        return Err(Error::InvalidInput(format!(
            "{} weights for {} vertices",
            weights.len(),
            g.order()
        )));
    }
    fn go(adj: &[u64], w: &[usize], p: u64, cur: usize, chosen: u64, best: &mut (usize, u64)) {
        if p == 0 {
            if cur > best.0 {
                *best = (cur, chosen);
            }
            return;
        }
        let rest: usize = bits(p).map(|v| w[v]).sum();
        if cur + rest <= best.0 {
            return;
        }
        let v = p.trailing_zeros() as usize;
        go(adj, w, p & !adj[v] & !(1 << v), cur + w[v], chosen | 1 << v, best);
        go(adj, w, p & !(1 << v), cur, chosen, best);
    }
    let adj = g.adjacency_masks();
    let mut best = (0, 0);
    go(&adj, weights, full(g.order()), 0, 0, &mut best);
    Ok((best.0, mask_to_vec(best.1)))
}

/// Try to color with `k` colors, picking the most saturated vertex first.
fn k_colorable(adj: &[u64], k: usize, colors: &mut [usize], used: usize) -> bool {
    const NONE: usize = usize::MAX;
    let n = adj.len();
    let mut pick = None;
    let mut best_sat = 0;
    for v in 0..n {
        if colors[v] != NONE {
            continue;
        }
        let sat = bits(adj[v])
            .filter(|&u| colors[u] != NONE)
            .fold(0u64, |m, u| m | 1 << colors[u])
            .count_ones() as usize;
        if pick.is_none() || sat > best_sat {
            pick = Some(v);
            best_sat = sat;
        }
    }
    let Some(v) = pick else {
        return true;
    };
    let blocked = bits(adj[v])
        .filter(|&u| colors[u] != NONE)
        .fold(0u64, |m, u| m | 1 << colors[u]);
    // a color never used before is interchangeable with any other unused one
    for c in 0..k.min(used + 1) {
        if blocked >> c & 1 == 1 {
            continue;
        }
        colors[v] = c;
        if k_colorable(adj, k, colors, used.max(c + 1)) {
            return true;
        }
    }
    colors[v] = NONE;
    false
}

/// `χ(g)` with a proper coloring using colors `0..χ`.
///
/// Iterative deepening from the clique number upward.
pub fn chromatic(g: &Graph, guard: usize) -> Result<(usize, Vec<usize>)> {
    check_guard(g, "chromatic number", guard)?;
    let n = g.order();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = g.adjacency_masks();
    let lower = max_clique_masks(&adj).count_ones() as usize;
    for k in lower.max(1)..=n {
        let mut colors = vec![usize::MAX; n];
        if k_colorable(&adj, k, &mut colors, 0) {
            return Ok((k, colors));
        }
    }
    unreachable!("n colors always suffice")
}

fn dominate(closed: &[u64], target: u64, k: usize, chosen: u64, covered: u64, max_cover: usize) -> Option<u64> {
    let open = target & !covered;
    if open == 0 {
        return Some(chosen);
    }
    if k == 0 || (open.count_ones() as usize) > k * max_cover {
        return None;
    }
    let u = open.trailing_zeros() as usize;
    // some chosen vertex must cover u: branch over its candidates in order
    for w in bits(closed[u]) {
        if chosen >> w & 1 == 1 {
            continue;
        }
        if let Some(s) = dominate(closed, target, k - 1, chosen | 1 << w, covered | closed[w], max_cover) {
            return Some(s);
        }
    }
    None
}

/// A minimum dominating set (`total = false`) or total dominating set.
///
/// Total domination needs every vertex to have a neighbor; graphs with an
/// isolated vertex are refused.
pub fn min_dominating_set(g: &Graph, total: bool, guard: usize) -> Result<Vec<usize>> {
    check_guard(g, if total { "total domination" } else { "domination" }, guard)?;
    let n = g.order();
    if n == 0 {
        return Ok(Vec::new());
    }
    if total && g.min_degree() == 0 {
        return Err(Error::Hypothesis(
            "total domination needs a graph without isolated vertices".into(),
        ));
    }
    let adj = g.adjacency_masks();
    // "w covers u" is symmetric, so the same masks serve as candidate lists
    let cover: Vec<u64> = if total {
        adj
    } else {
        adj.iter().enumerate().map(|(v, &m)| m | 1 << v).collect()
    };
    let max_cover = cover.iter().map(|m| m.count_ones() as usize).max().unwrap_or(1);
    for k in 1..=n {
        if let Some(s) = dominate(&cover, full(n), k, 0, 0, max_cover) {
            return Ok(mask_to_vec(s));
        }
    }
    unreachable!("the whole vertex set dominates")
}

pub fn is_independent(g: &Graph, s: &[usize]) -> bool {
    s.iter().all(|&u| s.iter().all(|&v| !g.has_edge(u, v)))
}

pub fn is_clique(g: &Graph, s: &[usize]) -> bool {
    s.iter().all(|&u| s.iter().all(|&v| u == v || g.has_edge(u, v)))
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.order() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

pub fn is_dominating(g: &Graph, s: &[usize]) -> bool {
    let mut hit = vec![false; g.order()];
    for &v in s {
        hit[v] = true;
        for &w in g.neighbors(v) {
            hit[w] = true;
        }
    }
    hit.into_iter().all(|b| b)
}

pub fn is_total_dominating(g: &Graph, s: &[usize]) -> bool {
    let mut hit = vec![false; g.order()];
    for &v in s {
        for &w in g.neighbors(v) {
            hit[w] = true;
        }
    }
    hit.into_iter().all(|b| b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute<F: Fn(&[usize]) -> bool>(n: usize, ok: F) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| ok(s))
            .collect()
    }

    fn brute_chi(g: &Graph) -> usize {
        let n = g.order();
        (1..=n.max(1))
            .find(|&k| {
                (0..k.pow(n as u32)).any(|mut code| {
                    let colors: Vec<usize> = (0..n)
                        .map(|_| {
                            let c = code % k;
                            code /= k;
                            c
                        })
                        .collect();
                    is_proper_coloring(g, &colors)
                })
            })
            .unwrap()
    }

    #[test]
    fn cycle_values() {
        let c5 = Graph::cycle(5);
        assert_eq!(chromatic(&c5, 20).unwrap().0, 3);
        assert_eq!(max_independent_set(&c5, 24).unwrap().len(), 2);
        assert_eq!(min_dominating_set(&c5, false, 20).unwrap().len(), 2);
        assert_eq!(max_clique(&c5, 24).unwrap().len(), 2);
        assert_eq!(min_dominating_set(&Graph::cycle(4), true, 20).unwrap(), vec![0, 1]);
    }

    #[test]
    fn edge_cases() {
        let e = Graph::empty(0);
        assert_eq!(chromatic(&e, 20).unwrap().0, 0);
        assert_eq!(max_clique(&e, 24).unwrap().len(), 0);
        assert_eq!(min_dominating_set(&e, false, 20).unwrap().len(), 0);
        let three = Graph::empty(3);
        assert_eq!(chromatic(&three, 20).unwrap(), (1, vec![0, 0, 0]));
        assert_eq!(min_dominating_set(&three, false, 20).unwrap(), vec![0, 1, 2]);
        assert!(matches!(min_dominating_set(&three, true, 20), Err(Error::Hypothesis(_))));
        let looped = Graph::with_loops(2, [(0, 0)]).unwrap();
        assert!(matches!(chromatic(&looped, 20), Err(Error::InvalidInput(_))));
        assert!(matches!(
            chromatic(&Graph::cycle(21), 20),
            Err(Error::GuardExceeded { limit: 20, .. })
        ));
        assert!(chromatic(&Graph::cycle(21), 100).is_ok());
    }

    #[test]
    fn larger_graphs_within_cap() {
        let k = Graph::complete(12);
        assert_eq!(chromatic(&k, 64).unwrap().0, 12);
        let kb = Graph::complete_bipartite(10, 12);
        assert_eq!(chromatic(&kb, 64).unwrap().0, 2);
        assert_eq!(max_independent_set(&kb, 64).unwrap().len(), 12);
        assert_eq!(min_dominating_set(&kb, false, 64).unwrap().len(), 2);
        let c = Graph::cycle(64);
        assert_eq!(max_independent_set(&c, 64).unwrap().len(), 32);
    }

    #[test]
    fn weighted_independence() {
        let p3 = Graph::path(3);
        assert_eq!(max_weight_independent_set(&p3, &[2, 2, 2], 24).unwrap(), (4, vec![0, 2]));
        assert_eq!(max_weight_independent_set(&p3, &[1, 5, 1], 24).unwrap(), (5, vec![1]));
        assert!(max_weight_independent_set(&p3, &[1], 24).is_err());
    }

    fn arb_graph(max: usize) -> impl Strategy<Value = Graph> {
        (1usize..=max).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn solvers_match_brute_force(g in arb_graph(7)) {
            let n = g.order();
            let best = |ok: &dyn Fn(&[usize]) -> bool, max: bool| {
                let all = brute(n, |s| ok(s));
                let sizes = all.iter().map(Vec::len);
                if max { sizes.max().unwrap() } else { sizes.min().unwrap() }
            };
            let a = max_independent_set(&g, 24).unwrap();
            prop_assert!(is_independent(&g, &a));
            prop_assert_eq!(a.len(), best(&|s| is_independent(&g, s), true));
            let w = max_clique(&g, 24).unwrap();
            prop_assert!(is_clique(&g, &w));
            prop_assert_eq!(w.len(), best(&|s| is_clique(&g, s), true));
            let d = min_dominating_set(&g, false, 20).unwrap();
            prop_assert!(is_dominating(&g, &d));
            prop_assert_eq!(d.len(), best(&|s| is_dominating(&g, s), false));
            if g.min_degree() > 0 {
                let t = min_dominating_set(&g, true, 20).unwrap();
                prop_assert!(is_total_dominating(&g, &t));
                prop_assert_eq!(t.len(), best(&|s| is_total_dominating(&g, s), false));
            }
            let (chi, colors) = chromatic(&g, 20).unwrap();
            prop_assert!(is_proper_coloring(&g, &colors));
            prop_assert!(colors.iter().all(|&c| c < chi));
            prop_assert_eq!(chi, brute_chi(&g));
        }

        #[test]
        fn weighted_matches_brute_force(g in arb_graph(7), seed in any::<u64>()) {
            let w: Vec<usize> = (0..g.order()).map(|i| ((seed >> (3 * i)) & 7) as usize).collect();
            let (value, set) = max_weight_independent_set(&g, &w, 24).unwrap();
            prop_assert!(is_independent(&g, &set));
            prop_assert_eq!(set.iter().map(|&v| w[v]).sum::<usize>(), value);
            let brute_best = brute(g.order(), |s| is_independent(&g, s))
                .iter()
                .map(|s| s.iter().map(|&v| w[v]).sum::<usize>())
                .max()
                .unwrap();
            prop_assert_eq!(value, brute_best);
        }
    }
}
