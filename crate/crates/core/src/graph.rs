//! Finite simple graphs on dense vertex indices, with optional loops.
//!
//! Vertices are `0..order`. Edges are unordered; a pair `(v, v)` is a loop and
//! is accepted only by graphs built with loops enabled. All derived sets are
//! sorted so that anything serialized from them is byte-stable.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default order limit for [`is_isomorphic`].
pub const ISO_GUARD: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphDoc", try_from = "GraphDoc")]
pub struct Graph {
    order: usize,
    allows_loops: bool,
    /// Sorted neighbor lists. A loop at `v` shows up as `v` in `adj[v]`.
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Wire shape of a graph: `{"edges": [[u, v], ...], "loops": true, "order": n}`
/// with `loops` omitted when false. Keys and edges are written sorted.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub loops: bool,
    pub order: usize,
}

impl From<Graph> for GraphDoc {
    fn from(g: Graph) -> Self {
        GraphDoc {
            order: g.order,
            edges: g.edges().collect(),
            loops: g.allows_loops,
        }
    }
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(d: GraphDoc) -> Result<Self> {
        Graph::build(d.order, d.edges, d.loops)
    }
}

impl Graph {
    /// Loopless graph from an edge list. Duplicate edges collapse.
    pub fn new<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(order, edges, false)
    }

    /// Graph that may carry loops.
    pub fn with_loops<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(order, edges, true)
    }

    pub fn build<I>(order: usize, edges: I, allows_loops: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v && !allows_loops {
                return Err(Error::LoopNotAllowed(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in &set {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self {
            order,
            allows_loops,
            adj,
            edge_count: set.len(),
        })
    }

    pub fn empty(order: usize) -> Self {
        Self {
            order,
            allows_loops: false,
            adj: vec![Vec::new(); order],
            edge_count: 0,
        }
    }

    pub fn complete(order: usize) -> Self {
        let edges = (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v)));
        Self::new(order, edges).expect("complete graph edges are in range")
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(order: usize) -> Self {
        assert!(order >= 3, "a cycle needs at least 3 vertices");
        Self::new(order, (0..order).map(|i| (i, (i + 1) % order))).expect("cycle in range")
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(order: usize) -> Self {
        Self::new(order, (1..order).map(|i| (i - 1, i))).expect("path in range")
    }

    /// Star `K_{1,n}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star in range")
    }

    /// Complete bipartite graph with sides `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let edges = (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v)));
        Self::new(p + q, edges).expect("complete bipartite in range")
    }

    /// Disjoint union; vertices of later graphs are shifted past earlier ones.
    pub fn disjoint_union(parts: &[Graph]) -> Self {
        let mut offset = 0;
        let mut edges = Vec::new();
        let allows_loops = parts.iter().any(|g| g.allows_loops);
        for g in parts {
            edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
            offset += g.order;
        }
        Self::build(offset, edges, allows_loops).expect("union edges are in range")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn allows_loops(&self) -> bool {
        self.allows_loops
    }

    pub fn has_loops(&self) -> bool {
        (0..self.order).any(|v| self.has_edge(v, v))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Number of distinct neighbors; a loop counts once.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    /// Loopless and every pair of distinct vertices adjacent.
    pub fn is_complete(&self) -> bool {
        !self.has_loops() && self.edge_count == self.order * self.order.saturating_sub(1) / 2
    }

    /// Complement on the same vertex set, loopless.
    pub fn complement(&self) -> Graph {
        let edges = (0..self.order)
            .flat_map(|u| (u + 1..self.order).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect::<Vec<_>>();
        Graph::new(self.order, edges).expect("complement in range")
    }

    /// Same edges with loops removed.
    pub fn without_loops(&self) -> Graph {
        Graph::new(self.order, self.edges().filter(|&(u, v)| u != v)).expect("subset of edges")
    }

    /// `E(self) ⊆ E(other)` on equal vertex sets.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.order == other.order && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Neighborhood bitmasks; callers guarantee `order <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.order <= 64, "bitset solvers support at most 64 vertices");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        components(self).blocks.len() <= 1
    }

    pub fn is_bipartite(&self) -> bool {
        components(self).blocks.iter().all(|b| b.bipartition.is_some())
    }

    pub fn component_count(&self) -> usize {
        components(self).blocks.len()
    }
}

/// One connected component with its canonical bipartition, when it has one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// `(V1, V2)` where `V1` holds the component's smallest vertex.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    /// Components ordered by smallest vertex.
    pub blocks: Vec<Component>,
}

impl ComponentDecomposition {
    /// `label[v]` is the index of the block containing `v`.
    pub fn labels(&self, order: usize) -> Vec<usize> {
        let mut label = vec![usize::MAX; order];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in &b.vertices {
                label[v] = i;
            }
        }
        label
    }
}

/// Connected components by BFS, each with a 2-coloring when one exists.
pub fn components(g: &Graph) -> ComponentDecomposition {
    let n = g.order();
    let mut side: Vec<Option<u8>> = vec![None; n];
    let mut blocks = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(0);
        queue.push_back(start);
        let mut vertices = vec![start];
        let mut bipartite = true;
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(1 - su);
                        vertices.push(w);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => bipartite = false,
                    Some(_) => {}
                }
            }
        }
        vertices.sort_unstable();
        let bipartition = bipartite.then(|| {
            vertices
                .iter()
                .partition::<Vec<usize>, _>(|&&v| side[v] == Some(0))
        });
        blocks.push(Component {
            vertices,
            bipartition,
        });
    }
    ComponentDecomposition { blocks }
}

/// A partition of `0..ground_size` into disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground_size];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x >= ground_size {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside ground set of size {ground_size}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("element {x} in two blocks")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("element {x} not covered")));
        }
        Ok(Self {
            ground_size,
            blocks,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// Stable sets of bipartite components and vertex sets of the others.
///
/// Empty sides are dropped, so an isolated vertex is one singleton block.
pub fn stable_partition(f: &Graph) -> Partition {
    let mut blocks = Vec::new();
    for comp in components(f).blocks {
        match comp.bipartition {
            Some((s1, s2)) => {
                blocks.push(s1);
                if !s2.is_empty() {
                    blocks.push(s2);
                }
            }
            None => blocks.push(comp.vertices),
        }
    }
    Partition {
        ground_size: f.order(),
        blocks,
    }
}

/// Subgraph induced by `s`, relabeled `0..|s|` in increasing vertex order.
pub fn induced_subgraph(g: &Graph, s: &[usize]) -> Result<Graph> {
    let mut verts = s.to_vec();
    verts.sort_unstable();
    verts.dedup();
    let mut position = vec![usize::MAX; g.order()];
    for (i, &v) in verts.iter().enumerate() {
        g.check_vertex(v)?;
        position[v] = i;
    }
    let edges = g
        .edges()
        .filter(|&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
        .map(|(u, v)| (position[u], position[v]));
    Graph::build(verts.len(), edges, g.allows_loops())
}

/// [`is_isomorphic_with_guard`] at the default guard.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    is_isomorphic_with_guard(g, h, ISO_GUARD)
}

/// Backtracking isomorphism test.
///
/// Returns `Ok(Some(map))` with `map[v]` the image of `v`, chosen as the
/// lexicographically least adjacency-preserving bijection; `Ok(None)` when the
/// graphs are not isomorphic; `Err(GuardExceeded)` when either graph is too
/// large to search.
pub fn is_isomorphic_with_guard(g: &Graph, h: &Graph, guard: usize) -> Result<Option<Vec<usize>>> {
    for x in [g, h] {
        if x.order() > guard {
            return Err(Error::GuardExceeded {
                what: "isomorphism search",
                order: x.order(),
                limit: guard,
            });
        }
    }
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(None);
    }
    let signature = |x: &Graph| {
        let mut s: Vec<(usize, bool)> =
            (0..x.order()).map(|v| (x.degree(v), x.has_edge(v, v))).collect();
        s.sort_unstable();
        s
    };
    if signature(g) != signature(h) {
        return Ok(None);
    }
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(iso_extend(g, h, 0, &mut map, &mut used).then_some(map))
}

fn iso_extend(g: &Graph, h: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == g.order() {
        return true;
    }
    for w in 0..h.order() {
        if used[w] || h.degree(w) != g.degree(v) || h.has_edge(w, w) != g.has_edge(v, v) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(map[u], w)) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if iso_extend(g, h, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

/// Does `map` carry the edges of `g` exactly onto the edges of `h`?
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if g.order() != h.order() || g.size() != h.size() || map.len() != g.order() {
        return false;
    }
    let mut hit = vec![false; h.order()];
    for &w in map {
        if w >= h.order() || std::mem::replace(&mut hit[w], true) {
            return false;
        }
    }
    g.edges().all(|(u, v)| h.has_edge(map[u], map[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_two_color(g: &Graph, verts: &[usize]) -> bool {
        // try every assignment of sides to the block's vertices
        let k = verts.len();
        (0u32..1 << k).any(|mask| {
            g.edges()
                .filter(|(u, _)| verts.contains(u))
                .all(|(u, v)| {
                    let iu = verts.iter().position(|&x| x == u).unwrap();
                    let iv = verts.iter().position(|&x| x == v).unwrap();
                    (mask >> iu & 1) != (mask >> iv & 1)
                })
        })
    }

    #[test]
    fn components_of_small_graphs() {
        let c4 = components(&Graph::cycle(4));
        assert_eq!(c4.blocks.len(), 1);
        assert_eq!(c4.blocks[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(c4.blocks[0].bipartition, Some((vec![0, 2], vec![1, 3])));

        let k3 = components(&Graph::complete(3));
        assert_eq!(k3.blocks[0].vertices, vec![0, 1, 2]);
        assert!(k3.blocks[0].bipartition.is_none());

        let g = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let d = components(&g);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[0].vertices, vec![0, 2]);
        assert_eq!(d.blocks[0].bipartition, Some((vec![0], vec![2])));
        assert_eq!(d.blocks[1].bipartition, Some((vec![1], vec![3])));
        for b in &d.blocks {
            assert!(brute_two_color(&g, &b.vertices));
        }
    }

    #[test]
    fn loop_makes_component_nonbipartite() {
        let g = Graph::with_loops(3, [(0, 1), (1, 1)]).unwrap();
        let d = components(&g);
        assert!(d.blocks[0].bipartition.is_none());
        assert_eq!(d.blocks[1].bipartition, Some((vec![2], vec![])));
    }

    #[test]
    fn loops_rejected_unless_enabled() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::LoopNotAllowed(1)));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, order: 2 })
        ));
    }

    #[test]
    fn stable_partitions() {
        let f1 = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(stable_partition(&f1).blocks(), &[vec![0], vec![2], vec![1], vec![3]]);
        assert_eq!(stable_partition(&Graph::complete(3)).blocks(), &[vec![0, 1, 2]]);
        let k3k2 = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(2)]);
        assert_eq!(stable_partition(&k3k2).blocks(), &[vec![0, 1, 2], vec![3], vec![4]]);
        let isolated = Graph::empty(2);
        assert_eq!(stable_partition(&isolated).blocks(), &[vec![0], vec![1]]);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let k3 = induced_subgraph(&Graph::complete(4), &[0, 1, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        let p = induced_subgraph(&Graph::cycle(5), &[2, 0, 1]).unwrap();
        assert_eq!(p, Graph::path(3));
        assert!(induced_subgraph(&Graph::cycle(5), &[5]).is_err());
        let c5 = Graph::cycle(5);
        assert_eq!(induced_subgraph(&c5, &[0, 1, 2, 3, 4]).unwrap(), c5);
    }

    #[test]
    fn isomorphism_examples() {
        let c6 = Graph::cycle(6);
        let perm = [3, 5, 0, 4, 1, 2];
        let relabeled = Graph::new(6, c6.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        let map = is_isomorphic(&c6, &relabeled).unwrap().expect("relabeling");
        assert!(is_isomorphism(&c6, &relabeled, &map));

        let two_k3 = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        assert_eq!(is_isomorphic(&c6, &two_k3).unwrap(), None);

        // identity is the least bijection of a graph onto itself
        assert_eq!(is_isomorphic(&c6, &c6).unwrap(), Some((0..6).collect()));
    }

    #[test]
    fn isomorphism_guard_is_a_refusal() {
        let big = Graph::cycle(17);
        assert!(matches!(
            is_isomorphic(&big, &big),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(is_isomorphic_with_guard(&big, &big, 20).unwrap().is_some());
    }

    #[test]
    fn complement_and_completeness() {
        assert!(Graph::complete(4).is_complete());
        assert!(Graph::complete(1).is_complete());
        assert!(!Graph::cycle(4).is_complete());
        assert_eq!(Graph::cycle(5).complement().size(), 5);
    }
}
