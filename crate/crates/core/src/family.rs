//! Families of inner graphs, the assignments `h`, and the unions built from them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A nonempty list of inner graphs, referenced by index.
///
/// Members are stored as a list, not a set: two equal members with different
/// indices are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFamily {
    members: Vec<Graph>,
    shared_inner_order: Option<usize>,
}

impl GraphFamily {
    pub fn new(members: Vec<Graph>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidFamily("family has no members".into()));
        }
        if let Some(i) = members.iter().position(|m| m.order() == 0) {
            return Err(Error::InvalidFamily(format!("member {i} has no vertices")));
        }
        let first = members[0].order();
        let shared_inner_order = members.iter().all(|m| m.order() == first).then_some(first);
        Ok(Self {
            members,
            shared_inner_order,
        })
    }

    /// Family whose members must all live on `0..order`.
    pub fn on_shared(members: Vec<Graph>, order: usize) -> Result<Self> {
        let fam = Self::new(members)?;
        match fam.shared_inner_order {
            Some(n) if n == order => Ok(fam),
            _ => Err(Error::InvalidFamily(format!(
                "members must all have order {order}"
            ))),
        }
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Graph {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn shared_inner_order(&self) -> Option<usize> {
        self.shared_inner_order
    }

    fn require_shared(&self) -> Result<usize> {
        self.shared_inner_order
            .ok_or_else(|| Error::InvalidFamily("members do not share a vertex set".into()))
    }
}

/// `h : E(G) -> family index`, keyed by `(min, max)` endpoint pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAssignment(BTreeMap<(usize, usize), usize>);

impl EdgeAssignment {
    /// Validates totality on `E(base)` and index range.
    pub fn new(base: &Graph, family_len: usize, map: BTreeMap<(usize, usize), usize>) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for ((u, v), idx) in map {
            let key = (u.min(v), u.max(v));
            if !base.has_edge(key.0, key.1) {
                return Err(Error::InvalidAssignment(format!(
                    "{}-{} is not an edge of the base graph",
                    key.0, key.1
                )));
            }
            if idx >= family_len {
                return Err(Error::InvalidAssignment(format!(
                    "edge {}-{} assigned member {idx}, family has {family_len}",
                    key.0, key.1
                )));
            }
            if normalized.insert(key, idx).is_some_and(|old| old != idx) {
                return Err(Error::InvalidAssignment(format!(
                    "edge {}-{} assigned twice",
                    key.0, key.1
                )));
            }
        }
        if let Some((u, v)) = base.edges().find(|e| !normalized.contains_key(e)) {
            return Err(Error::InvalidAssignment(format!("edge {u}-{v} has no member")));
        }
        Ok(Self(normalized))
    }

    pub fn from_fn(base: &Graph, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        Self(base.edges().map(|(u, v)| ((u, v), f(u, v))).collect())
    }

    pub fn constant(base: &Graph, idx: usize) -> Self {
        Self::from_fn(base, |_, _| idx)
    }

    /// Member index of edge `uv` in either orientation.
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.0.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `h : V(G) -> family index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAssignment(Vec<usize>);

impl VertexAssignment {
    pub fn new(base: &Graph, family_len: usize, indices: Vec<usize>) -> Result<Self> {
        if indices.len() != base.order() {
            return Err(Error::InvalidAssignment(format!(
                "{} vertices assigned, base has {}",
                indices.len(),
                base.order()
            )));
        }
        if let Some((v, &idx)) = indices.iter().enumerate().find(|(_, &i)| i >= family_len) {
            return Err(Error::InvalidAssignment(format!(
                "vertex {v} assigned member {idx}, family has {family_len}"
            )));
        }
        Ok(Self(indices))
    }

    pub fn constant(base: &Graph, idx: usize) -> Self {
        Self(vec![idx; base.order()])
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Base graph, a family on a shared inner vertex set, and an edge assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OtimesInstance {
    pub base: Graph,
    pub family: GraphFamily,
    pub h: EdgeAssignment,
}

impl OtimesInstance {
    pub fn new(base: Graph, family: GraphFamily, h: EdgeAssignment) -> Result<Self> {
        family.require_shared()?;
        // re-run validation so hand-built maps cannot bypass it
        let h = EdgeAssignment::new(&base, family.len(), h.0)?;
        Ok(Self { base, family, h })
    }

    /// Single-member instance; the product is the direct product.
    pub fn constant(base: Graph, member: Graph) -> Self {
        let h = EdgeAssignment::constant(&base, 0);
        let family = GraphFamily::new(vec![member]).expect("nonempty member");
        Self { base, family, h }
    }

    pub fn inner_order(&self) -> usize {
        self.family.shared_inner_order.expect("validated at construction")
    }

    pub fn member_index(&self, u: usize, v: usize) -> usize {
        self.h.get(u, v).expect("edge of the base graph")
    }

    /// `h(uv)`; panics if `uv` is not a base edge.
    pub fn member(&self, u: usize, v: usize) -> &Graph {
        self.family.member(self.member_index(u, v))
    }

    /// Indices of the members that some base edge uses.
    pub fn used_members(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.h.iter().map(|(_, i)| i).collect();
        used.sort_unstable();
        used.dedup();
        used
    }
}

/// Base graph, any family, and a vertex assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircInstance {
    pub base: Graph,
    pub family: GraphFamily,
    pub h: VertexAssignment,
}

impl CircInstance {
    pub fn new(base: Graph, family: GraphFamily, h: VertexAssignment) -> Result<Self> {
        let h = VertexAssignment::new(&base, family.len(), h.0)?;
        Ok(Self { base, family, h })
    }

    pub fn constant(base: Graph, member: Graph) -> Self {
        let h = VertexAssignment::constant(&base, 0);
        let family = GraphFamily::new(vec![member]).expect("nonempty member");
        Self { base, family, h }
    }

    /// Build from a list of per-vertex graphs, deduplicating equal members.
    pub fn from_members(base: Graph, per_vertex: Vec<Graph>) -> Result<Self> {
        if per_vertex.len() != base.order() {
            return Err(Error::InvalidAssignment(format!(
                "{} members for {} base vertices",
                per_vertex.len(),
                base.order()
            )));
        }
        let mut members: Vec<Graph> = Vec::new();
        let mut idx = Vec::with_capacity(per_vertex.len());
        for g in per_vertex {
            let i = match members.iter().position(|m| *m == g) {
                Some(i) => i,
                None => {
                    members.push(g);
                    members.len() - 1
                }
            };
            idx.push(i);
        }
        let family = GraphFamily::new(members)?;
        Self::new(base, family, VertexAssignment(idx))
    }

    pub fn member(&self, a: usize) -> &Graph {
        self.family.member(self.h.get(a))
    }

    pub fn shared_inner_order(&self) -> Option<usize> {
        // only the members actually used matter for the product
        let mut orders = (0..self.base.order()).map(|a| self.member(a).order());
        let first = orders.next()?;
        orders.all(|o| o == first).then_some(first)
    }
}

/// Either kind of generalized product instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Otimes(OtimesInstance),
    Circ(CircInstance),
}

impl Instance {
    pub fn base(&self) -> &Graph {
        match self {
            Instance::Otimes(i) => &i.base,
            Instance::Circ(i) => &i.base,
        }
    }

    pub fn family(&self) -> &GraphFamily {
        match self {
            Instance::Otimes(i) => &i.family,
            Instance::Circ(i) => &i.family,
        }
    }
}

impl From<OtimesInstance> for Instance {
    fn from(i: OtimesInstance) -> Self {
        Instance::Otimes(i)
    }
}

impl From<CircInstance> for Instance {
    fn from(i: CircInstance) -> Self {
        Instance::Circ(i)
    }
}

fn union_of<'a>(order: usize, members: impl Iterator<Item = &'a Graph>) -> Graph {
    let mut loops = false;
    let mut edges = Vec::new();
    for m in members {
        loops |= m.allows_loops();
        edges.extend(m.edges());
    }
    Graph::build(order, edges, loops).expect("members share the vertex set")
}

/// `h(G)`: the union of the members assigned to base edges.
pub fn union_graph(inst: &OtimesInstance) -> Graph {
    let used = inst.used_members();
    union_of(inst.inner_order(), used.iter().map(|&i| inst.family.member(i)))
}

/// `h(G^a)`: the union of the members on edges incident to `a`.
pub fn local_union(inst: &OtimesInstance, a: usize) -> Result<Graph> {
    inst.base.check_vertex(a)?;
    let mut idx: Vec<usize> = inst
        .base
        .neighbors(a)
        .iter()
        .map(|&b| inst.member_index(a, b))
        .collect();
    idx.sort_unstable();
    idx.dedup();
    Ok(union_of(
        inst.inner_order(),
        idx.iter().map(|&i| inst.family.member(i)),
    ))
}

/// `ΣΓ`: the union of every member, assigned or not.
pub fn sigma_gamma(fam: &GraphFamily) -> Result<Graph> {
    let n = fam.require_shared()?;
    Ok(union_of(n, fam.members().iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn union_of_three_matchings_is_k4() {
        let inst = catalog::four_triangles();
        assert_eq!(union_graph(&inst), Graph::complete(4));
        assert_eq!(sigma_gamma(&inst.family).unwrap(), Graph::complete(4));
    }

    #[test]
    fn constant_assignment_union_is_the_member() {
        let f = Graph::cycle(4);
        let inst = OtimesInstance::constant(Graph::complete(3), f.clone());
        assert_eq!(union_graph(&inst), f);
        assert_eq!(local_union(&inst, 1).unwrap(), f);
    }

    #[test]
    fn union_skips_unassigned_members() {
        let base = Graph::complete(3);
        let fam = GraphFamily::new(vec![
            Graph::new(3, [(0, 1)]).unwrap(),
            Graph::new(3, [(1, 2)]).unwrap(),
            Graph::complete(3),
        ])
        .unwrap();
        let h = EdgeAssignment::from_fn(&base, |u, v| if (u, v) == (0, 2) { 1 } else { 0 });
        let inst = OtimesInstance::new(base, fam, h).unwrap();
        assert_eq!(union_graph(&inst), Graph::path(3));
    }

    #[test]
    fn local_union_at_vertex_zero_is_a_four_cycle() {
        let inst = catalog::four_triangles();
        let local = local_union(&inst, 0).unwrap();
        assert_eq!(local.edge_set(), [(0, 2), (0, 3), (1, 2), (1, 3)].into_iter().collect());
        let comps = crate::graph::components(&local);
        assert_eq!(comps.blocks.len(), 1);
        assert!(comps.blocks[0].bipartition.is_some());
        assert!((0..4).all(|v| local.degree(v) == 2));
    }

    #[test]
    fn local_union_of_isolated_base_vertex_is_edgeless() {
        let base = Graph::new(3, [(0, 1)]).unwrap();
        let inst = OtimesInstance::constant(base, Graph::complete(3));
        assert_eq!(local_union(&inst, 2).unwrap(), Graph::empty(3));
        assert!(local_union(&inst, 3).is_err());
    }

    #[test]
    fn sigma_gamma_examples() {
        let single = GraphFamily::new(vec![Graph::cycle(5)]).unwrap();
        assert_eq!(sigma_gamma(&single).unwrap(), Graph::cycle(5));
        let fam = GraphFamily::new(vec![
            Graph::new(3, [(0, 1)]).unwrap(),
            Graph::new(3, [(1, 2)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(sigma_gamma(&fam).unwrap(), Graph::path(3));
        let mixed = GraphFamily::new(vec![Graph::complete(2), Graph::complete(3)]).unwrap();
        assert!(sigma_gamma(&mixed).is_err());
    }

    #[test]
    fn assignments_must_be_total_and_in_range() {
        let base = Graph::complete(3);
        let mut map: BTreeMap<(usize, usize), usize> = [((0, 1), 0), ((1, 2), 0)].into();
        let err = EdgeAssignment::new(&base, 1, map.clone()).unwrap_err();
        assert!(err.to_string().contains("0-2"));
        map.insert((2, 0), 3);
        assert!(EdgeAssignment::new(&base, 1, map.clone()).is_err());
        map.insert((2, 0), 0);
        let h = EdgeAssignment::new(&base, 1, map).unwrap();
        assert_eq!(h.get(2, 0), Some(0));
        assert!(VertexAssignment::new(&base, 2, vec![0, 1]).is_err());
        assert!(VertexAssignment::new(&base, 2, vec![0, 1, 2]).is_err());
    }
}
