//! The four products: direct, lexicographic, `⊗_h` and `∘_h`.
//!
//! Index layout is part of the public contract. For the direct product and
//! `⊗_h` the pair `(a, x)` sits at `a * |V| + x`. For the lexicographic
//! product and `∘_h` the fibers are laid out in base-vertex order, so `(a, x)`
//! sits at `offset(a) + x` where `offset` is the prefix sum of fiber sizes.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{CircInstance, Instance, OtimesInstance};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Direct,
    Lexicographic,
    OtimesH,
    CircH,
}

/// A product graph together with its `(base, inner)` bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub kind: ProductKind,
    /// `offsets[a]..offsets[a + 1]` is the fiber over base vertex `a`.
    offsets: Vec<usize>,
}

impl ProductGraph {
    fn new(graph: Graph, kind: ProductKind, fiber_sizes: impl Iterator<Item = usize>) -> Self {
        let mut offsets = vec![0];
        for s in fiber_sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        debug_assert_eq!(*offsets.last().unwrap(), graph.order());
        Self {
            graph,
            kind,
            offsets,
        }
    }

    pub fn base_order(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn fiber(&self, a: usize) -> Range<usize> {
        self.offsets[a]..self.offsets[a + 1]
    }

    /// Product vertex of `(a, x)`, if that pair exists.
    pub fn index_of(&self, a: usize, x: usize) -> Option<usize> {
        (a < self.base_order() && x < self.offsets[a + 1] - self.offsets[a]).then(|| self.offsets[a] + x)
    }

    /// `(base, inner)` pair of product vertex `i`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        assert!(i < self.graph.order(), "product vertex out of range");
        let a = self.offsets.partition_point(|&o| o <= i) - 1;
        (a, i - self.offsets[a])
    }

    /// All pairs, indexed by product vertex.
    pub fn index_map(&self) -> Vec<(usize, usize)> {
        (0..self.graph.order()).map(|i| self.pair(i)).collect()
    }
}

/// `(a,x) ~ (b,y)` iff `ab ∈ E(G)` and `xy ∈ E(H)`.
pub fn direct_product(g: &Graph, h: &Graph) -> ProductGraph {
    let n = h.order();
    let mut edges = Vec::with_capacity(2 * g.size() * h.size());
    for (a, b) in g.edges() {
        for (x, y) in h.edges() {
            edges.push((a * n + x, b * n + y));
            edges.push((a * n + y, b * n + x));
        }
    }
    let graph = Graph::build(g.order() * n, edges, g.allows_loops() && h.allows_loops())
        .expect("product indices are in range");
    ProductGraph::new(graph, ProductKind::Direct, std::iter::repeat_n(n, g.order()))
}

/// `(a,x) ~ (b,y)` iff `ab ∈ E(G)`, or `a = b` and `xy ∈ E(H)`.
pub fn lex_product(g: &Graph, h: &Graph) -> ProductGraph {
    let inst = CircInstance::constant(g.clone(), h.clone());
    let mut p = circ_h(&inst);
    p.kind = ProductKind::Lexicographic;
    p
}

/// `(a,x) ~ (b,y)` iff `ab ∈ E(G)` and `xy ∈ E(h(ab))`.
pub fn otimes_h(inst: &OtimesInstance) -> ProductGraph {
    let n = inst.inner_order();
    let mut edges = Vec::new();
    let mut loops = false;
    for (a, b) in inst.base.edges() {
        let member = inst.member(a, b);
        loops |= a == b && member.allows_loops();
        for (x, y) in member.edges() {
            edges.push((a * n + x, b * n + y));
            edges.push((a * n + y, b * n + x));
        }
    }
    let graph = Graph::build(inst.base.order() * n, edges, loops).expect("product indices are in range");
    ProductGraph::new(graph, ProductKind::OtimesH, std::iter::repeat_n(n, inst.base.order()))
}

/// `(a,x) ~ (b,y)` iff `ab ∈ E(G)`, or `a = b` and `xy ∈ E(h(a))`.
pub fn circ_h(inst: &CircInstance) -> ProductGraph {
    let g = &inst.base;
    let sizes: Vec<usize> = (0..g.order()).map(|a| inst.member(a).order()).collect();
    let mut offsets = vec![0];
    for s in &sizes {
        offsets.push(offsets.last().unwrap() + s);
    }
    let mut edges = Vec::new();
    let mut loops = false;
    for (a, b) in g.edges() {
        // a loop at a joins the fiber to itself, loops included
        loops |= a == b;
        for x in 0..sizes[a] {
            for y in 0..sizes[b] {
                edges.push((offsets[a] + x, offsets[b] + y));
            }
        }
    }
    for a in 0..g.order() {
        let member = inst.member(a);
        loops |= member.allows_loops();
        edges.extend(member.edges().map(|(x, y)| (offsets[a] + x, offsets[a] + y)));
    }
    let graph = Graph::build(offsets[g.order()], edges, loops).expect("product indices are in range");
    ProductGraph::new(graph, ProductKind::CircH, sizes.into_iter())
}

/// Build whichever product the instance describes.
pub fn build(inst: &Instance) -> ProductGraph {
    match inst {
        Instance::Otimes(i) => otimes_h(i),
        Instance::Circ(i) => circ_h(i),
    }
}

/// Degree of `(a, x)` from the factor data alone, without building the product.
///
/// For `⊗_h` this is `Σ_{b ∈ N(a)} d_{h(ab)}(x)`; for `∘_h` it is
/// `Σ_{b ∈ N(a)} |V(h(b))| + d_{h(a)}(x)`. Degrees count distinct neighbors.
pub fn product_degree(inst: &Instance, a: usize, x: usize) -> Result<usize> {
    inst.base().check_vertex(a)?;
    match inst {
        Instance::Otimes(i) => {
            if x >= i.inner_order() {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    order: i.inner_order(),
                });
            }
            Ok(i.base.neighbors(a).iter().map(|&b| i.member(a, b).degree(x)).sum())
        }
        Instance::Circ(i) => {
            i.member(a).check_vertex(x)?;
            if i.base.has_edge(a, a) {
                return Err(Error::Hypothesis(format!(
                    "degree formula needs a loopless base; vertex {a} has a loop"
                )));
            }
            let across: usize = i.base.neighbors(a).iter().map(|&b| i.member(b).order()).sum();
            Ok(across + i.member(a).degree(x))
        }
    }
}

/// `δ(G ∘_h Γ) = δ(G)|V| + min { δ(h(v)) : d_G(v) = δ(G) }`.
pub fn min_degree_circ(inst: &CircInstance) -> Result<usize> {
    let n = inst
        .shared_inner_order()
        .ok_or_else(|| Error::Hypothesis("members do not share a vertex set".into()))?;
    let g = &inst.base;
    if g.order() < 2 {
        return Err(Error::Hypothesis("base graph must be nontrivial".into()));
    }
    if g.has_loops() {
        return Err(Error::Hypothesis("base graph must be loopless".into()));
    }
    let delta = g.min_degree();
    let inner = (0..g.order())
        .filter(|&v| g.degree(v) == delta)
        .map(|v| inst.member(v).min_degree())
        .min()
        .expect("some vertex attains the minimum degree");
    Ok(delta * n + inner)
}
