//! Exact vertex and edge connectivity.
//!
//! Two independent routes are provided: exhaustive enumeration, ordered by
//! size then lexicographically, and unit-capacity max-flow (Menger). The
//! dispatching entry points use enumeration up to [`ENUMERATION_GUARD`]
//! vertices and flow above it. Loops never affect connectivity.
//!
//! Conventions: `κ(K_n) = n - 1`, `κ(K_1) = 0`, `λ(K_1) = 0`, and both are
//! 0 on disconnected graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ENUMERATION_GUARD: usize = 12;

/// `κ(g)`.
pub fn kappa_exact(g: &Graph) -> usize {
    if g.order() <= ENUMERATION_GUARD {
        min_vertex_cut(g, ENUMERATION_GUARD).expect("within guard").0
    } else {
        kappa_by_flow(g)
    }
}

/// `λ(g)`.
pub fn lambda_exact(g: &Graph) -> usize {
    if g.order() <= ENUMERATION_GUARD {
        min_edge_cut(g, ENUMERATION_GUARD).expect("within guard").0
    } else {
        lambda_by_flow(g)
    }
}

fn connected_without(g: &Graph, removed: u64) -> bool {
    let n = g.order();
    let Some(start) = (0..n).find(|&v| removed >> v & 1 == 0) else {
        return true;
    };
    let mut seen = removed | 1 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize == n
}

/// Visit the `k`-subsets of `0..n` as bitmasks in lexicographic order of
/// their sorted element lists; stop when `f` returns `true`.
fn first_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> Option<u64> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if f(mask) {
            return Some(mask);
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Minimum separating vertex set by enumeration: `(κ, set)`.
///
/// The set is the first separating set in (size, lexicographic) order. For a
/// complete graph there is none and `(n - 1, [])` is returned.
pub fn min_vertex_cut(g: &Graph, guard: usize) -> Result<(usize, Vec<usize>)> {
    let n = g.order();
    if n > guard.min(64) {
        return Err(Error::GuardExceeded {
            what: "vertex cut enumeration",
            order: n,
            limit: guard.min(64),
        });
    }
    if n <= 1 {
        return Ok((0, Vec::new()));
    }
    for k in 0..=n - 2 {
        if let Some(mask) = first_subset(n, k, |m| !connected_without(g, m)) {
            return Ok((k, mask_to_vec(mask)));
        }
    }
    Ok((n - 1, Vec::new()))
}

/// Minimum edge cut by enumerating vertex bipartitions: `(λ, cut edges)`.
///
/// Shores containing vertex 0 are visited in (size, lexicographic) order and
/// the first minimum is kept.
pub fn min_edge_cut(g: &Graph, guard: usize) -> Result<(usize, Vec<(usize, usize)>)> {
    let n = g.order();
    if n > guard.min(63) {
        return Err(Error::GuardExceeded {
            what: "edge cut enumeration",
            order: n,
            limit: guard.min(63),
        });
    }
    if n <= 1 {
        return Ok((0, Vec::new()));
    }
    let cut_of = |shore: u64| -> Vec<(usize, usize)> {
        g.edges()
            .filter(|&(u, v)| (shore >> u & 1) != (shore >> v & 1))
            .collect()
    };
    let mut best: Option<(usize, u64)> = None;
    for k in 0..n - 1 {
        // shore = {0} ∪ (k-subset of 1..n)
        first_subset(n - 1, k, |m| {
            let shore = 1 | m << 1;
            let size = g
                .edges()
                .filter(|&(u, v)| (shore >> u & 1) != (shore >> v & 1))
                .count();
            if best.is_none_or(|(b, _)| size < b) {
                best = Some((size, shore));
            }
            false
        });
    }
    let (size, shore) = best.expect("n >= 2 gives at least one shore");
    Ok((size, cut_of(shore)))
}

/// Unit-capacity max-flow on a small directed network.
struct FlowNet {
    cap: Vec<Vec<i32>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        Self {
            cap: vec![vec![0; n]; n],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: i32) {
        self.cap[u][v] += c;
    }

    fn max_flow(mut self, s: usize, t: usize, limit: usize) -> usize {
        let n = self.cap.len();
        let mut flow = 0;
        while flow < limit {
            let mut prev = vec![usize::MAX; n];
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for v in 0..n {
                    if prev[v] == usize::MAX && self.cap[u][v] > 0 {
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                break;
            }
            let mut v = t;
            while v != s {
                let u = prev[v];
                self.cap[u][v] -= 1;
                self.cap[v][u] += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally disjoint `s`-`t` paths, `s`, `t` nonadjacent.
fn local_vertex_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.order();
    let big = n as i32;
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.add(2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        if u != v {
            net.add(2 * u + 1, 2 * v, big);
            net.add(2 * v + 1, 2 * u, big);
        }
    }
    net.max_flow(2 * s + 1, 2 * t, n)
}

/// `κ` via Menger: the minimum local connectivity over nonadjacent pairs.
pub fn kappa_by_flow(g: &Graph) -> usize {
    let n = g.order();
    let mut best = n.saturating_sub(1);
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(local_vertex_connectivity(g, s, t));
            }
        }
    }
    best
}

/// `λ` via Menger: `min_t maxflow(0, t)` with unit edge capacities.
pub fn lambda_by_flow(g: &Graph) -> usize {
    let n = g.order();
    (1..n)
        .map(|t| {
            let mut net = FlowNet::new(n);
            for (u, v) in g.edges() {
                if u != v {
                    net.add(u, v, 1);
                    net.add(v, u, 1);
                }
            }
            net.max_flow(0, t, n * n)
        })
        .min()
        .unwrap_or(0)
}
