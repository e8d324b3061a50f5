//! Associativity of both products and `⊗_h`-decompositions.
//!
//! Associativity is checked as equality of edge sets after mapping every
//! vertex of each side to its triple `(α, a, x)`, which is stronger than
//! isomorphism.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{CircInstance, EdgeAssignment, GraphFamily, OtimesInstance, VertexAssignment};
use crate::graph::{is_isomorphism, Graph};
use crate::product::{circ_h, direct_product, lex_product, otimes_h, ProductGraph};

fn dedup_members(graphs: Vec<Graph>) -> (Vec<Graph>, Vec<usize>) {
    let mut members: Vec<Graph> = Vec::new();
    let idx = graphs
        .into_iter()
        .map(|g| match members.iter().position(|m| *m == g) {
            Some(i) => i,
            None => {
                members.push(g);
                members.len() - 1
            }
        })
        .collect();
    (members, idx)
}

/// `G ⊗ (H ⊗_h Γ) → (G ⊗ H) ⊗_{h'} Γ` with `h'((α,a)(β,b)) = h(ab)`.
pub fn assoc_otimes_left(g: &Graph, inner: &OtimesInstance) -> Result<OtimesInstance> {
    let base = direct_product(g, &inner.base);
    let h = EdgeAssignment::from_fn(&base.graph, |i, j| {
        let (_, a) = base.pair(i);
        let (_, b) = base.pair(j);
        inner.member_index(a, b)
    });
    OtimesInstance::new(base.graph, inner.family.clone(), h)
}

/// Check that `symmetric(h)` holds on a base `G ⊗ H` and split it into the
/// per-edge family `Γ' = {H ⊗_{h_{αβ}} Γ}` with its assignment on `G`.
pub fn assoc_otimes_right(g: &Graph, hgraph: &Graph, inst: &OtimesInstance) -> Result<(GraphFamily, EdgeAssignment)> {
    let base = direct_product(g, hgraph);
    if base.graph != inst.base {
        return Err(Error::InvalidInput("base is not the direct product of the given factors".into()));
    }
    let m = hgraph.order();
    let at = |alpha: usize, a: usize, beta: usize, b: usize| inst.member_index(alpha * m + a, beta * m + b);
    let mut per_edge = Vec::new();
    for (alpha, beta) in g.edges() {
        for (a, b) in hgraph.edges() {
            if at(alpha, a, beta, b) != at(alpha, b, beta, a) {
                return Err(Error::AsymmetricAssignment { alpha, beta, a, b });
            }
        }
        let h_ab = EdgeAssignment::from_fn(hgraph, |a, b| at(alpha, a, beta, b));
        let piece = OtimesInstance::new(hgraph.clone(), inst.family.clone(), h_ab)?;
        per_edge.push(otimes_h(&piece).graph);
    }
    if per_edge.is_empty() {
        // no edges: any family works, keep the product shape
        per_edge.push(Graph::empty(m * inst.inner_order()));
        let (members, _) = dedup_members(per_edge);
        return Ok((GraphFamily::new(members)?, EdgeAssignment::from_fn(g, |_, _| 0)));
    }
    let (members, idx) = dedup_members(per_edge);
    let by_edge: BTreeMap<(usize, usize), usize> = g.edges().zip(idx).collect();
    Ok((GraphFamily::new(members)?, EdgeAssignment::from_fn(g, |u, v| by_edge[&(u, v)])))
}

/// `G ∘ (H ∘_h Γ) → (G ∘ H) ∘_{h'} Γ` with `h'(α, a) = h(a)`.
pub fn assoc_circ_left(g: &Graph, inner: &CircInstance) -> Result<CircInstance> {
    let base = lex_product(g, &inner.base);
    let idx = (0..base.graph.order()).map(|i| inner.h.get(base.pair(i).1)).collect();
    let h = VertexAssignment::new(&base.graph, inner.family.len(), idx)?;
    CircInstance::new(base.graph, inner.family.clone(), h)
}

/// Split an instance on `G ∘ H` into `Γ' = {H ∘_{h_α} Γ}` with
/// `h_α(a) = h(α, a)`, assigned to the vertices of `G`.
pub fn assoc_circ_right(g: &Graph, hgraph: &Graph, inst: &CircInstance) -> Result<(GraphFamily, VertexAssignment)> {
    let base = lex_product(g, hgraph);
    if base.graph != inst.base {
        return Err(Error::InvalidInput("base is not the lexicographic product of the given factors".into()));
    }
    let m = hgraph.order();
    let per_vertex: Vec<Graph> = (0..g.order())
        .map(|alpha| {
            let idx = (0..m).map(|a| inst.h.get(alpha * m + a)).collect();
            let h = VertexAssignment::new(hgraph, inst.family.len(), idx)?;
            Ok(circ_h(&CircInstance::new(hgraph.clone(), inst.family.clone(), h)?).graph)
        })
        .collect::<Result<_>>()?;
    if per_vertex.is_empty() {
        return Err(Error::InvalidInput("outer graph has no vertices".into()));
    }
    let (members, idx) = dedup_members(per_vertex);
    let family = GraphFamily::new(members)?;
    let h = VertexAssignment::new(g, family.len(), idx)?;
    Ok((family, h))
}

/// Whether two graphs have equal edge sets once both are mapped onto
/// triples by `left` and `right`.
pub fn flattened_equal(
    left: &Graph,
    left_triple: impl Fn(usize) -> (usize, usize, usize),
    right: &Graph,
    right_triple: impl Fn(usize) -> (usize, usize, usize),
) -> bool {
    if left.order() != right.order() {
        return false;
    }
    let map = |g: &Graph, f: &dyn Fn(usize) -> (usize, usize, usize)| -> BTreeSet<_> {
        g.edges()
            .map(|(u, v)| {
                let (a, b) = (f(u), f(v));
                (a.min(b), a.max(b))
            })
            .collect()
    };
    let verts_l: BTreeSet<_> = (0..left.order()).map(&left_triple).collect();
    let verts_r: BTreeSet<_> = (0..right.order()).map(&right_triple).collect();
    verts_l == verts_r && map(left, &left_triple) == map(right, &right_triple)
}

fn merged_triple<'a>(product: &'a ProductGraph, base: &'a ProductGraph) -> impl Fn(usize) -> (usize, usize, usize) + 'a {
    move |i| {
        let (b, x) = product.pair(i);
        let (alpha, a) = base.pair(b);
        (alpha, a, x)
    }
}

fn nested_triple<'a>(outer: &'a ProductGraph, inner: &'a ProductGraph) -> impl Fn(usize) -> (usize, usize, usize) + 'a {
    move |i| {
        let (alpha, p) = outer.pair(i);
        let (a, x) = inner.pair(p);
        (alpha, a, x)
    }
}

/// `G ⊗ (H ⊗_h Γ)` against `(G ⊗ H) ⊗_{h'} Γ`.
pub fn check_assoc_otimes(g: &Graph, inner: &OtimesInstance, merged: &OtimesInstance) -> bool {
    let base = direct_product(g, &inner.base);
    let inner_product = otimes_h(inner);
    let right = direct_product(g, &inner_product.graph);
    let left = otimes_h(merged);
    flattened_equal(&left.graph, merged_triple(&left, &base), &right.graph, nested_triple(&right, &inner_product))
}

/// `(G ⊗ H) ⊗_h Γ` against `G ⊗_{h'} Γ'`, where `Γ'` lives on `V(H) × V`.
pub fn check_assoc_otimes_split(g: &Graph, hgraph: &Graph, inst: &OtimesInstance, family: &GraphFamily, h: &EdgeAssignment) -> Result<bool> {
    let outer = OtimesInstance::new(g.clone(), family.clone(), h.clone())?;
    let right = otimes_h(&outer);
    let left = otimes_h(inst);
    let base = direct_product(g, hgraph);
    let n = inst.inner_order();
    let split = |i: usize| {
        let (alpha, p) = right.pair(i);
        (alpha, p / n, p % n)
    };
    Ok(flattened_equal(&left.graph, merged_triple(&left, &base), &right.graph, split))
}

/// `G ∘ (H ∘_h Γ)` against `(G ∘ H) ∘_{h'} Γ`.
pub fn check_assoc_circ(g: &Graph, inner: &CircInstance, merged: &CircInstance) -> bool {
    let base = lex_product(g, &inner.base);
    let inner_product = circ_h(inner);
    let right = lex_product(g, &inner_product.graph);
    let left = circ_h(merged);
    flattened_equal(&left.graph, merged_triple(&left, &base), &right.graph, nested_triple(&right, &inner_product))
}

/// `(G ∘ H) ∘_h Γ` against `G ∘_{h'} Γ'`, where each member of `Γ'` is an
/// `H ∘_{h_α} Γ` product.
pub fn check_assoc_circ_split(g: &Graph, hgraph: &Graph, inst: &CircInstance, family: &GraphFamily, h: &VertexAssignment) -> Result<bool> {
    let outer = CircInstance::new(g.clone(), family.clone(), h.clone())?;
    let right = circ_h(&outer);
    let left = circ_h(inst);
    let base = lex_product(g, hgraph);
    let m = hgraph.order();
    let pieces: Vec<ProductGraph> = (0..g.order())
        .map(|alpha| {
            let idx = (0..m).map(|a| inst.h.get(alpha * m + a)).collect();
            let h = VertexAssignment::new(hgraph, inst.family.len(), idx)?;
            Ok(circ_h(&CircInstance::new(hgraph.clone(), inst.family.clone(), h)?))
        })
        .collect::<Result<_>>()?;
    let split = |i: usize| {
        let (alpha, p) = right.pair(i);
        let (a, x) = pieces[alpha].pair(p);
        (alpha, a, x)
    };
    Ok(flattened_equal(&left.graph, merged_triple(&left, &base), &right.graph, split))
}

/// A nontrivial `⊗_h`-decomposition of a graph.
///
/// `bijections[i][s]` is the image in block `i` of the `s`-th vertex of block
/// 0 (blocks sorted). Inner vertex `s` of the reconstruction corresponds to
/// that position, and input vertex `bijections[i][s]` maps to `(i, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub base: Graph,
    pub family: Vec<Graph>,
    pub assignment: Vec<((usize, usize), usize)>,
    pub blocks: Vec<Vec<usize>>,
    pub bijections: Vec<Vec<usize>>,
    pub loop_mode: bool,
}

impl Decomposition {
    pub fn instance(&self) -> Result<OtimesInstance> {
        let family = GraphFamily::new(self.family.clone())?;
        let h = EdgeAssignment::new(&self.base, family.len(), self.assignment.iter().copied().collect())?;
        OtimesInstance::new(self.base.clone(), family, h)
    }

    /// `v ↦ (a_i, s)` as product indices, indexed by input vertex.
    pub fn vertex_map(&self) -> Vec<usize> {
        let m = self.bijections.first().map_or(0, Vec::len);
        let n = self.bijections.len() * m;
        let mut map = vec![0; n];
        for (i, phi) in self.bijections.iter().enumerate() {
            for (s, &v) in phi.iter().enumerate() {
                map[v] = i * m + s;
            }
        }
        map
    }

    /// Condition (3) for every `i ≤ j` and every `u, v`, re-checked from scratch.
    pub fn satisfies_condition(&self, g: &Graph) -> bool {
        let k = self.bijections.len();
        let m = self.bijections.first().map_or(0, Vec::len);
        (0..k).all(|i| {
            (i..k).all(|j| {
                let (pi, pj) = (&self.bijections[i], &self.bijections[j]);
                (0..m).all(|u| (0..m).all(|v| g.has_edge(pi[u], pj[v]) == g.has_edge(pi[v], pj[u])))
            })
        })
    }
}

fn validate_blocks(g: &Graph, blocks: &[Vec<usize>], bijections: &[Vec<usize>]) -> Result<usize> {
    let bad = |msg: String| Err(Error::InvalidInput(msg));
    let k = blocks.len();
    if k < 2 {
        return bad("a nontrivial decomposition needs at least two blocks".into());
    }
    let m = blocks[0].len();
    if m == 0 || blocks.iter().any(|b| b.len() != m) {
        return bad("blocks must be nonempty and of equal size".into());
    }
    let mut seen = vec![false; g.order()];
    for &v in blocks.iter().flatten() {
        if v >= g.order() || std::mem::replace(&mut seen[v], true) {
            return bad(format!("vertex {v} is out of range or repeated"));
        }
    }
    if seen.contains(&false) {
        return bad("blocks do not cover the vertex set".into());
    }
    if bijections.len() != k {
        return bad(format!("{} bijections for {k} blocks", bijections.len()));
    }
    for (i, (phi, block)) in bijections.iter().zip(blocks).enumerate() {
        let mut image = phi.clone();
        image.sort_unstable();
        let mut sorted = block.clone();
        sorted.sort_unstable();
        if image != sorted {
            return bad(format!("bijection {i} is not onto block {i}"));
        }
    }
    Ok(m)
}

/// Validate the block structure and condition (3), then build `H`, the
/// members `F_ij` and `h` as in the sufficiency construction.
///
/// In loopless mode blocks must be independent and `φ_i(u)φ_j(u)` must never
/// be an edge; in loop mode those become loops of `H` and of the members.
pub fn check_decomposition(g: &Graph, blocks: &[Vec<usize>], bijections: &[Vec<usize>], loop_mode: bool) -> Result<Decomposition> {
    let m = validate_blocks(g, blocks, bijections)?;
    if !loop_mode && g.has_loops() {
        return Err(Error::Hypothesis("loopless mode needs a loopless graph".into()));
    }
    let k = blocks.len();
    for i in 0..k {
        for j in i..k {
            let (pi, pj) = (&bijections[i], &bijections[j]);
            for u in 0..m {
                for v in 0..m {
                    if g.has_edge(pi[u], pj[v]) != g.has_edge(pi[v], pj[u]) {
                        return Err(Error::DecompositionCondition { i, j, u, v });
                    }
                }
                if !loop_mode && g.has_edge(pi[u], pj[u]) {
                    return Err(Error::DecompositionCondition { i, j, u, v: u });
                }
            }
            if !loop_mode && i == j && (0..m).any(|u| (0..m).any(|v| g.has_edge(pi[u], pi[v]))) {
                return Err(Error::Hypothesis(format!("block {i} is not independent")));
            }
        }
    }
    let mut base_edges = Vec::new();
    let mut per_edge = Vec::new();
    for i in 0..k {
        for j in i..k {
            let (pi, pj) = (&bijections[i], &bijections[j]);
            let edges: Vec<(usize, usize)> = (0..m)
                .flat_map(|s| (0..m).map(move |t| (s, t)))
                .filter(|&(s, t)| g.has_edge(pi[s], pj[t]))
                .collect();
            if !edges.is_empty() {
                base_edges.push((i, j));
                per_edge.push(Graph::build(m, edges, loop_mode)?);
            }
        }
    }
    let base = Graph::build(k, base_edges.iter().copied(), loop_mode)?;
    if per_edge.is_empty() {
        per_edge.push(Graph::build(m, [], loop_mode)?);
    }
    let (family, idx) = dedup_members(per_edge);
    let assignment = base_edges.into_iter().zip(idx).collect();
    let d = Decomposition {
        base,
        family,
        assignment,
        blocks: blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect(),
        bijections: bijections.to_vec(),
        loop_mode,
    };
    let product = otimes_h(&d.instance()?).graph;
    if !is_isomorphism(g, &product, &d.vertex_map()) {
        return Err(Error::InvalidInput("reconstruction does not match the input".into()));
    }
    Ok(d)
}

pub const DECOMPOSE_GUARD: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Partial bijection extensions examined.
    pub nodes: u64,
    /// Complete block structures handed to the final check.
    pub candidates: u64,
}

struct Search<'a> {
    g: &'a Graph,
    m: usize,
    k: usize,
    loop_mode: bool,
    used: Vec<bool>,
    phis: Vec<Vec<usize>>,
    stats: SearchStats,
}

impl Search<'_> {
    /// Can `v` be `φ_i(s)` given blocks `0..i` and `φ_i(0..s)`?
    fn compatible(&self, i: usize, s: usize, v: usize) -> bool {
        let g = self.g;
        let cur = &self.phis[i];
        for pj in &self.phis[..i] {
            // condition (3) for positions (t, s); (s, t) is the same statement
            if (0..s).any(|t| g.has_edge(pj[t], v) != g.has_edge(pj[s], cur[t])) {
                return false;
            }
            if !self.loop_mode && g.has_edge(pj[s], v) {
                return false;
            }
        }
        self.loop_mode || !cur.iter().any(|&w| g.has_edge(w, v))
    }

    fn fill(&mut self, i: usize, s: usize, lowest: usize) -> Option<Vec<Vec<usize>>> {
        if s == self.m {
            return self.next_block(i + 1);
        }
        // blocks are ordered by their minima, so block i must contain `lowest`
        let must_take_lowest = s + 1 == self.m && !self.phis[i].contains(&lowest);
        let candidates: Vec<usize> = if must_take_lowest {
            vec![lowest]
        } else {
            (lowest..self.g.order()).filter(|&v| !self.used[v]).collect()
        };
        for v in candidates {
            self.stats.nodes += 1;
            if !self.compatible(i, s, v) {
                continue;
            }
            self.used[v] = true;
            self.phis[i].push(v);
            if let Some(found) = self.fill(i, s + 1, lowest) {
                return Some(found);
            }
            self.phis[i].pop();
            self.used[v] = false;
        }
        None
    }

    fn next_block(&mut self, i: usize) -> Option<Vec<Vec<usize>>> {
        if i == self.k {
            self.stats.candidates += 1;
            return Some(self.phis.clone());
        }
        let lowest = self.used.iter().position(|&u| !u).expect("vertices remain");
        self.phis.push(Vec::with_capacity(self.m));
        let found = self.fill(i, 0, lowest);
        if found.is_none() {
            self.phis.pop();
        }
        found
    }

    fn first_block(&mut self, start: usize, chosen: &mut Vec<usize>) -> Option<Vec<Vec<usize>>> {
        if chosen.len() == self.m {
            self.phis = vec![chosen.clone()];
            return self.next_block(1);
        }
        for v in start..self.g.order() {
            self.stats.nodes += 1;
            if !self.loop_mode && chosen.iter().any(|&w| self.g.has_edge(w, v)) {
                continue;
            }
            if !self.loop_mode && self.g.has_edge(v, v) {
                continue;
            }
            chosen.push(v);
            self.used[v] = true;
            if let Some(found) = self.first_block(v + 1, chosen) {
                return Some(found);
            }
            self.used[v] = false;
            chosen.pop();
        }
        None
    }
}

/// First decomposition into `k` blocks in the search order, or `None` when
/// no nontrivial decomposition with `k` blocks exists.
///
/// Block 0 holds vertex 0 and is listed in increasing order, which fixes
/// `φ_0` as the identity; every later block starts at the smallest unused
/// vertex. Every decomposition is equivalent to one of this shape by
/// relabeling blocks and inner vertices, so the search is complete.
pub fn decompose(g: &Graph, k: usize, loop_mode: bool, guard: usize) -> Result<(Option<Decomposition>, SearchStats)> {
    let n = g.order();
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "decomposition search",
            order: n,
            limit: guard,
        });
    }
    if k < 2 || n == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidInput(format!("{k} blocks cannot split {n} vertices nontrivially")));
    }
    if !loop_mode && g.has_loops() {
        return Err(Error::Hypothesis("loopless mode needs a loopless graph".into()));
    }
    let m = n / k;
    let mut search = Search {
        g,
        m,
        k,
        loop_mode,
        used: vec![false; n],
        phis: Vec::new(),
        stats: SearchStats::default(),
    };
    search.used[0] = true;
    let found = search.first_block(1, &mut vec![0]);
    let stats = search.stats;
    match found {
        None => Ok((None, stats)),
        Some(phis) => {
            let blocks: Vec<Vec<usize>> = phis.clone();
            Ok((Some(check_decomposition(g, &blocks, &phis, loop_mode)?), stats))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{components, is_isomorphic};
    use proptest::prelude::*;

    fn g(order: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(order, edges.iter().copied()).unwrap()
    }

    fn fiber_blocks(base_order: usize, m: usize) -> Vec<Vec<usize>> {
        (0..base_order).map(|a| (a * m..(a + 1) * m).collect()).collect()
    }

    #[test]
    fn otimes_left_examples() {
        let k2 = Graph::complete(2);
        let inner = OtimesInstance::constant(k2.clone(), k2.clone());
        let merged = assoc_otimes_left(&k2, &inner).unwrap();
        assert!(check_assoc_otimes(&k2, &inner, &merged));
        assert_eq!(components(&otimes_h(&merged).graph).blocks.len(), 4);

        let tri = catalog::four_triangles();
        let merged = assoc_otimes_left(&k2, &tri).unwrap();
        assert_eq!(otimes_h(&merged).graph.order(), 24);
        assert!(check_assoc_otimes(&k2, &tri, &merged));

        let matching = OtimesInstance::constant(k2.clone(), g(4, &[(0, 2), (1, 3)]));
        let merged = assoc_otimes_left(&Graph::cycle(3), &matching).unwrap();
        assert!(check_assoc_otimes(&Graph::cycle(3), &matching, &merged));
    }

    #[test]
    fn otimes_right_examples() {
        let k2 = Graph::complete(2);
        let p3 = Graph::path(3);
        let base = direct_product(&k2, &p3).graph;
        let inst = OtimesInstance::constant(base, Graph::cycle(3));
        let (fam, h) = assoc_otimes_right(&k2, &p3, &inst).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.member(0), &direct_product(&p3, &Graph::cycle(3)).graph);
        assert!(check_assoc_otimes_split(&k2, &p3, &inst, &fam, &h).unwrap());

        // K2 ⊗ K2 has edges (0,0)-(1,1) and (0,1)-(1,0), i.e. 0-3 and 1-2
        let base = direct_product(&k2, &k2).graph;
        let fam = GraphFamily::new(vec![Graph::cycle(3), Graph::path(3)]).unwrap();
        let asym = EdgeAssignment::from_fn(&base, |u, _| usize::from(u == 1));
        let inst = OtimesInstance::new(base, fam, asym).unwrap();
        assert_eq!(
            assoc_otimes_right(&k2, &k2, &inst),
            Err(Error::AsymmetricAssignment { alpha: 0, beta: 1, a: 0, b: 1 })
        );
        assert!(assoc_otimes_right(&k2, &p3, &inst).is_err());
    }

    #[test]
    fn circ_examples() {
        let k2 = Graph::complete(2);
        let inner = CircInstance::constant(k2.clone(), k2.clone());
        let merged = assoc_circ_left(&k2, &inner).unwrap();
        assert!(check_assoc_circ(&k2, &inner, &merged));
        assert!(circ_h(&merged).graph.is_complete());
        assert_eq!(circ_h(&merged).graph.order(), 8);

        let tri = catalog::triangle_circ();
        let merged = assoc_circ_left(&Graph::path(3), &tri).unwrap();
        assert!(check_assoc_circ(&Graph::path(3), &tri, &merged));

        let merged = assoc_circ_left(&Graph::empty(1), &tri).unwrap();
        assert_eq!(circ_h(&merged).graph, circ_h(&tri).graph);

        let base = lex_product(&Graph::path(3), &k2).graph;
        let members = (0..6).map(|i| if i % 2 == 0 { Graph::cycle(3) } else { Graph::empty(2) }).collect();
        let inst = CircInstance::from_members(base, members).unwrap();
        let (fam, h) = assoc_circ_right(&Graph::path(3), &k2, &inst).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(check_assoc_circ_split(&Graph::path(3), &k2, &inst, &fam, &h).unwrap());
    }

    #[test]
    fn hexagon_as_k2_times_triangle() {
        let c6 = Graph::cycle(6);
        let d = check_decomposition(&c6, &[vec![0, 2, 4], vec![1, 3, 5]], &[vec![0, 2, 4], vec![3, 5, 1]], false).unwrap();
        assert_eq!(d.base, Graph::complete(2));
        assert_eq!(d.family.len(), 1);
        assert!(is_isomorphic(&d.family[0], &Graph::cycle(3)).unwrap().is_some());

        let (found, _) = decompose(&c6, 2, false, DECOMPOSE_GUARD).unwrap();
        let found = found.unwrap();
        assert!(found.satisfies_condition(&c6));
        assert!(is_isomorphic(&otimes_h(&found.instance().unwrap()).graph, &c6).unwrap().is_some());
    }

    #[test]
    fn two_hexagons_worked_blocks() {
        let inst = catalog::two_hexagons();
        let product = otimes_h(&inst).graph;
        let blocks = fiber_blocks(3, 4);
        let d = check_decomposition(&product, &blocks, &blocks, false).unwrap();
        assert_eq!(d.base, Graph::cycle(3));
        assert_eq!(d.family, inst.family.members().to_vec());
        assert_eq!(d.assignment, vec![((0, 1), 0), ((0, 2), 1), ((1, 2), 0)]);
    }

    #[test]
    fn two_hexagons_have_several_decompositions() {
        let product = otimes_h(&catalog::two_hexagons()).graph;
        let mut bases = Vec::new();
        for k in [2, 3, 4] {
            let (d, _) = decompose(&product, k, false, DECOMPOSE_GUARD).unwrap();
            let d = d.unwrap_or_else(|| panic!("no decomposition with {k} blocks"));
            assert!(d.satisfies_condition(&product));
            let rebuilt = otimes_h(&d.instance().unwrap()).graph;
            assert!(is_isomorphic(&rebuilt, &product).unwrap().is_some());
            bases.push(d.base);
        }
        assert_eq!(bases[0], Graph::complete(2));
        assert_eq!(bases[1].order(), 3);
        assert_eq!(bases[2].order(), 4);

        // a disconnected base also works: 2K2 ⊗ C3
        let split = OtimesInstance::constant(g(4, &[(0, 1), (2, 3)]), Graph::cycle(3));
        let split_product = otimes_h(&split).graph;
        assert!(is_isomorphic(&split_product, &product).unwrap().is_some());
        let blocks = fiber_blocks(4, 3);
        let d = check_decomposition(&split_product, &blocks, &blocks, false).unwrap();
        assert_eq!(d.base.component_count(), 2);
    }

    #[test]
    fn decomposition_refusals() {
        let k3 = Graph::complete(3);
        assert_eq!(decompose(&k3, 3, false, DECOMPOSE_GUARD).unwrap().0, None);
        assert!(decompose(&k3, 2, false, DECOMPOSE_GUARD).is_err());
        assert!(decompose(&Graph::cycle(13), 13, false, DECOMPOSE_GUARD).is_err());
        let c6 = Graph::cycle(6);
        assert!(check_decomposition(&c6, &[vec![0, 1, 2, 3, 4, 5]], &[vec![0, 1, 2, 3, 4, 5]], false).is_err());
        assert!(check_decomposition(&c6, &[vec![0, 2, 4, 1], vec![3, 5]], &[vec![0, 2, 4, 1], vec![3, 5]], false).is_err());
        // independent blocks whose bijection breaks condition (3)
        let err = check_decomposition(&c6, &[vec![0, 2, 4], vec![1, 3, 5]], &[vec![0, 2, 4], vec![1, 3, 5]], false);
        assert!(matches!(err, Err(Error::DecompositionCondition { .. })));
    }

    #[test]
    fn triangle_decomposes_with_loops() {
        // K3 = K3 ⊗ K1-with-loop once loops are allowed
        let k3 = Graph::complete(3);
        let (d, _) = decompose(&k3, 3, true, DECOMPOSE_GUARD).unwrap();
        let d = d.unwrap();
        assert!(d.family[0].has_loops());
        assert_eq!(otimes_h(&d.instance().unwrap()).graph.edge_set(), k3.edge_set());
    }

    fn arb_instance() -> impl Strategy<Value = OtimesInstance> {
        (2usize..=4, 1usize..=3, any::<u64>()).prop_map(|(k, m, seed)| {
            let mut bits = seed;
            let mut next = || {
                bits = bits.rotate_left(7) ^ 0x9e37_79b9_7f4a_7c15;
                bits & 1 == 1
            };
            let base = Graph::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect::<Vec<_>>().into_iter().filter(|_| next())).unwrap();
            let members: Vec<Graph> = (0..2)
                .map(|_| Graph::new(m, (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect::<Vec<_>>().into_iter().filter(|_| next())).unwrap())
                .collect();
            let fam = GraphFamily::new(members).unwrap();
            let h = EdgeAssignment::from_fn(&base, |u, v| (u + v) % 2);
            OtimesInstance::new(base, fam, h).unwrap()
        })
    }

    proptest! {
        #[test]
        fn natural_blocks_round_trip(inst in arb_instance()) {
            let product = otimes_h(&inst).graph;
            let blocks = fiber_blocks(inst.base.order(), inst.inner_order());
            let d = check_decomposition(&product, &blocks, &blocks, false).unwrap();
            prop_assert!(d.satisfies_condition(&product));
            let (found, _) = decompose(&product, inst.base.order(), false, DECOMPOSE_GUARD).unwrap();
            let found = found.expect("the natural blocks exist");
            prop_assert!(found.satisfies_condition(&product));
            let rebuilt = otimes_h(&found.instance().unwrap()).graph;
            prop_assert!(is_isomorphism(&product, &rebuilt, &found.vertex_map()));
        }

        #[test]
        fn associativity_is_edge_exact(inst in arb_instance(), outer in 1usize..=3) {
            let g = [Graph::path(2), Graph::path(3), Graph::cycle(3)][outer - 1].clone();
            let merged = assoc_otimes_left(&g, &inst).unwrap();
            prop_assert!(check_assoc_otimes(&g, &inst, &merged));
        }
    }
}
