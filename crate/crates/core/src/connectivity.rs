//! Connectivity of `⊗_h` and `∘_h` products.
//!
//! Every predictor here decides connectivity from the factors alone; the
//! constructed product and [`bfs_verdict`] serve as the reference answer.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cuts::{kappa_exact, lambda_exact};
use crate::error::{Error, Result};
use crate::family::{union_graph, CircInstance, OtimesInstance};
use crate::graph::{components, stable_partition, Graph, Partition};
use crate::product::min_degree_circ;

/// Which product vertex set a fiber set came from: the base edge `(min, max)`,
/// the component index of `h(edge)`, and the endpoint `a` naming `S_a(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FiberLabel {
    pub edge: (usize, usize),
    pub component: usize,
    pub endpoint: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledSet {
    pub label: FiberLabel,
    pub vertices: Vec<usize>,
}

/// Labeled subsets of the product vertex set `0..ground_size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetFamily {
    pub ground_size: usize,
    pub sets: Vec<LabeledSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "value")]
pub enum Witness {
    /// Vertex set of one component of a disconnected graph.
    Component(Vec<usize>),
    /// Subfamilies with a common proper union, one per partition.
    Subfamilies(PartitionWitness),
    /// How connectivity was established, e.g. `"BFS"`.
    Certificate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityVerdict {
    pub connected: bool,
    pub component_count: usize,
    pub witness: Option<Witness>,
}

/// Reference verdict by graph search on a constructed graph.
pub fn bfs_verdict(g: &Graph) -> ConnectivityVerdict {
    let comps = components(g);
    let count = comps.blocks.len().max(1);
    let witness = if count == 1 {
        Witness::Certificate("BFS".into())
    } else {
        Witness::Component(comps.blocks[0].vertices.clone())
    };
    ConnectivityVerdict {
        connected: count == 1,
        component_count: count,
        witness: Some(witness),
    }
}

fn require_nontrivial_connected(base: &Graph) -> Result<()> {
    if base.order() < 2 || !base.is_connected() {
        return Err(Error::Hypothesis("base graph must be nontrivial and connected".into()));
    }
    Ok(())
}

/// Connectivity of `G ⊗_h Γ` when `G` and every assigned member are
/// nontrivial and connected: connected iff `G` or `h(G)` is nonbipartite.
///
/// When both are bipartite with sides `A ∪ B` and `C ∪ D`, the product has
/// two components and the witness is `(A × C) ∪ (B × D)`.
pub fn predict_otimes_connectivity(inst: &OtimesInstance) -> Result<ConnectivityVerdict> {
    require_nontrivial_connected(&inst.base)?;
    for i in inst.used_members() {
        let m = inst.family.member(i);
        if m.order() < 2 || !m.is_connected() {
            return Err(Error::Hypothesis(format!(
                "member {i} must be nontrivial and connected"
            )));
        }
    }
    let base_sides = components(&inst.base).blocks[0].bipartition.clone();
    let inner_sides = components(&union_graph(inst)).blocks[0].bipartition.clone();
    match (base_sides, inner_sides) {
        (Some((a, b)), Some((c, d))) => {
            let n = inst.inner_order();
            let mut part: Vec<usize> = a
                .iter()
                .flat_map(|&u| c.iter().map(move |&x| u * n + x))
                .chain(b.iter().flat_map(|&u| d.iter().map(move |&x| u * n + x)))
                .collect();
            part.sort_unstable();
            Ok(ConnectivityVerdict {
                connected: false,
                component_count: 2,
                witness: Some(Witness::Component(part)),
            })
        }
        _ => Ok(ConnectivityVerdict {
            connected: true,
            component_count: 1,
            witness: Some(Witness::Certificate("nonbipartite factor".into())),
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoEdgeCase {
    /// A nonbipartite component of `h(bc)` meets both sides of `h(ab)`.
    NonbipartiteComponent,
    /// One stable side of a bipartite component of `h(bc)` meets both sides
    /// of `h(ab)`.
    BipartiteSide,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "lemma")]
pub enum SufficientCertificate {
    /// `h(edge)` is nonbipartite and connected.
    OneEdge { edge: (usize, usize) },
    /// `h(ab)` is bipartite and connected and `h(bc)` satisfies `case`.
    TwoEdge {
        ab: (usize, usize),
        bc: (usize, usize),
        case: TwoEdgeCase,
    },
}

/// Sufficient conditions for connectivity of `G ⊗_h Γ` with `δ(member) ≥ 1`.
/// Returns the first certificate found, or `None` when no condition fires;
/// `None` says nothing about connectivity.
pub fn sufficient_connectivity_check(inst: &OtimesInstance) -> Result<Option<SufficientCertificate>> {
    require_nontrivial_connected(&inst.base)?;
    for i in inst.used_members() {
        if inst.family.member(i).min_degree() == 0 {
            return Err(Error::Hypothesis(format!("member {i} has an isolated vertex")));
        }
    }
    let base = &inst.base;
    for (a, b) in base.edges() {
        let m = inst.member(a, b);
        if m.is_connected() && !m.is_bipartite() {
            return Ok(Some(SufficientCertificate::OneEdge { edge: (a, b) }));
        }
    }
    for (a, b) in base.edges() {
        let first = inst.member(a, b);
        let comps = components(first);
        if comps.blocks.len() != 1 {
            continue;
        }
        let Some((s1, _)) = &comps.blocks[0].bipartition else {
            continue;
        };
        let mut in_first_side = vec![false; first.order()];
        for &x in s1 {
            in_first_side[x] = true;
        }
        let meets_both = |set: &[usize]| {
            set.iter().any(|&x| in_first_side[x]) && set.iter().any(|&x| !in_first_side[x])
        };
        // the shared vertex of the two edges can be either endpoint of ab
        for (shared, _) in [(b, a), (a, b)] {
            for &c in base.neighbors(shared) {
                let bc = (shared.min(c), shared.max(c));
                if bc == (a, b) {
                    continue;
                }
                for comp in components(inst.member(bc.0, bc.1)).blocks {
                    let case = match &comp.bipartition {
                        None if meets_both(&comp.vertices) => Some(TwoEdgeCase::NonbipartiteComponent),
                        Some((v1, v2)) if meets_both(v1) || meets_both(v2) => {
                            Some(TwoEdgeCase::BipartiteSide)
                        }
                        _ => None,
                    };
                    if let Some(case) = case {
                        return Ok(Some(SufficientCertificate::TwoEdge {
                            ab: (a, b),
                            bc,
                            case,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The family `ℱ(G, Γ, h)`.
///
/// For each ordered incidence `(a, b)` and each component `C` of `h(ab)`:
/// `S_a(C) = ({a} × V1(C)) ∪ ({b} × V2(C))` when `C` is bipartite, and
/// `{a, b} × V(C)` otherwise. An isolated inner vertex `x` is a bipartite
/// component with `V1 = {x}` and empty `V2`, giving `{(a, x)}`.
pub fn fiber_sets(inst: &OtimesInstance) -> SetFamily {
    let n = inst.inner_order();
    let mut sets = Vec::new();
    for (u, v) in inst.base.edges() {
        let comps = components(inst.member(u, v));
        let orientations: &[(usize, usize)] = if u == v { &[(u, u)] } else { &[(u, v), (v, u)] };
        for (ci, comp) in comps.blocks.iter().enumerate() {
            for &(a, b) in orientations {
                let mut vertices: Vec<usize> = match &comp.bipartition {
                    Some((v1, v2)) => v1
                        .iter()
                        .map(|&x| a * n + x)
                        .chain(v2.iter().map(|&x| b * n + x))
                        .collect(),
                    None => comp
                        .vertices
                        .iter()
                        .flat_map(|&x| [a * n + x, b * n + x])
                        .collect(),
                };
                vertices.sort_unstable();
                vertices.dedup();
                sets.push(LabeledSet {
                    label: FiberLabel {
                        edge: (u, v),
                        component: ci,
                        endpoint: a,
                    },
                    vertices,
                });
            }
        }
    }
    SetFamily {
        ground_size: inst.base.order() * n,
        sets,
    }
}

fn intersection_of(ground: usize, sets: &[&[usize]]) -> Graph {
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); ground];
    for (i, s) in sets.iter().enumerate() {
        for &x in s.iter() {
            holders[x].push(i);
        }
    }
    let mut edges = Vec::new();
    for list in &holders {
        for (k, &i) in list.iter().enumerate() {
            edges.extend(list[k + 1..].iter().map(|&j| (i, j)));
        }
    }
    Graph::new(sets.len(), edges).expect("set indices in range")
}

/// One vertex per set, adjacent when the sets intersect.
pub fn intersection_graph(fam: &SetFamily) -> Graph {
    let sets: Vec<&[usize]> = fam.sets.iter().map(|s| s.vertices.as_slice()).collect();
    intersection_of(fam.ground_size, &sets)
}

/// Connectivity of `G ⊗_h Γ` read off the intersection graph of
/// [`fiber_sets`]. The component count equals that of the product.
pub fn otimes_connected_via_family(inst: &OtimesInstance) -> Result<ConnectivityVerdict> {
    require_nontrivial_connected(&inst.base)?;
    let fam = fiber_sets(inst);
    let comps = components(&intersection_graph(&fam));
    let count = comps.blocks.len();
    let witness = if count == 1 {
        Witness::Certificate("intersection graph connected".into())
    } else {
        let mut union: Vec<usize> = comps.blocks[0]
            .vertices
            .iter()
            .flat_map(|&i| fam.sets[i].vertices.iter().copied())
            .collect();
        union.sort_unstable();
        union.dedup();
        Witness::Component(union)
    };
    Ok(ConnectivityVerdict {
        connected: count == 1,
        component_count: count,
        witness: Some(witness),
    })
}

/// Subfamilies `𝒜_i ⊆ 𝒫_i` sharing a common union that is not the whole
/// ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionWitness {
    /// `subfamilies[i]` lists blocks of partition `i`.
    pub subfamilies: Vec<Vec<Vec<usize>>>,
    pub union: Vec<usize>,
}

impl PartitionWitness {
    /// Check the witness condition literally against `parts`.
    pub fn is_valid_for(&self, parts: &[Partition]) -> bool {
        if self.subfamilies.len() != parts.len() || parts.is_empty() {
            return false;
        }
        let ground = parts[0].ground_size();
        let union_of = |fam: &[Vec<usize>]| {
            let mut u: Vec<usize> = fam.iter().flatten().copied().collect();
            u.sort_unstable();
            u.dedup();
            u
        };
        self.subfamilies.iter().zip(parts).all(|(fam, p)| {
            !fam.is_empty()
                && fam.iter().all(|b| p.blocks().contains(b))
                && union_of(fam) == self.union
        }) && self.union.len() < ground
    }
}

/// Disconnection witness for the intersection graph of all blocks of
/// `parts`, or `None` when that graph is connected.
///
/// The witness restricts one component of the intersection graph (the one
/// holding the first block of the first partition) to each partition.
pub fn partition_disconnection_witness(parts: &[Partition]) -> Result<Option<PartitionWitness>> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidPartition("no partitions given".into()));
    };
    let ground = first.ground_size();
    if ground == 0 {
        return Err(Error::InvalidPartition("empty ground set".into()));
    }
    if let Some(p) = parts.iter().find(|p| p.ground_size() != ground) {
        return Err(Error::InvalidPartition(format!(
            "ground sizes {ground} and {} differ",
            p.ground_size()
        )));
    }
    let mut owner = Vec::new();
    let mut sets: Vec<&[usize]> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for b in p.blocks() {
            owner.push(i);
            sets.push(b);
        }
    }
    let comps = components(&intersection_of(ground, &sets));
    if comps.blocks.len() == 1 {
        return Ok(None);
    }
    let mut subfamilies = vec![Vec::new(); parts.len()];
    for &k in &comps.blocks[0].vertices {
        subfamilies[owner[k]].push(sets[k].to_vec());
    }
    let mut union: Vec<usize> = subfamilies[0].iter().flatten().copied().collect();
    union.sort_unstable();
    Ok(Some(PartitionWitness { subfamilies, union }))
}

/// Which partition characterization applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionCase {
    /// Every component of every assigned member is nonbipartite.
    AllComponentsNonbipartite,
    /// The base is a star and every member is used.
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionPrediction {
    pub case: PartitionCase,
    /// Present exactly when the product is disconnected.
    pub witness: Option<PartitionWitness>,
}

/// Center of `g` when `g ≅ K_{1,n}`, `n ≥ 1`.
pub fn star_center(g: &Graph) -> Option<usize> {
    let n = g.order();
    if n < 2 || g.size() != n - 1 || g.has_loops() {
        return None;
    }
    (0..n).find(|&c| g.degree(c) == n - 1)
}

/// Disconnection of `G ⊗_h Γ` through stable partitions of the members.
///
/// Applies when every component of every assigned member is nonbipartite
/// (partitions taken per base edge), or when the base is a star, `h` is
/// onto the family and no member has an isolated vertex (partitions taken
/// per member).
pub fn predict_disconnection_via_partitions(inst: &OtimesInstance) -> Result<PartitionPrediction> {
    require_nontrivial_connected(&inst.base)?;
    let all_nonbipartite = inst.used_members().into_iter().all(|i| {
        components(inst.family.member(i))
            .blocks
            .iter()
            .all(|c| c.bipartition.is_none())
    });
    if all_nonbipartite {
        let parts: Vec<Partition> = inst
            .base
            .edges()
            .map(|(u, v)| stable_partition(inst.member(u, v)))
            .collect();
        return Ok(PartitionPrediction {
            case: PartitionCase::AllComponentsNonbipartite,
            witness: partition_disconnection_witness(&parts)?,
        });
    }
    if star_center(&inst.base).is_some() {
        if inst.used_members().len() != inst.family.len() {
            return Err(Error::Hypothesis("star case needs h onto the family".into()));
        }
        if let Some(i) = (0..inst.family.len()).find(|&i| inst.family.member(i).min_degree() == 0) {
            return Err(Error::Hypothesis(format!(
                "star case needs members without isolated vertices; member {i} has one"
            )));
        }
        let parts: Vec<Partition> = inst.family.members().iter().map(stable_partition).collect();
        return Ok(PartitionPrediction {
            case: PartitionCase::Star,
            witness: partition_disconnection_witness(&parts)?,
        });
    }
    Err(Error::Hypothesis(
        "needs all member components nonbipartite or a star base".into(),
    ))
}

fn require_circ_shared(inst: &CircInstance) -> Result<usize> {
    if !inst.base.is_connected() || inst.base.order() == 0 {
        return Err(Error::Hypothesis("base graph must be connected".into()));
    }
    if inst.base.has_loops() {
        return Err(Error::Hypothesis("base graph must be loopless".into()));
    }
    inst.shared_inner_order()
        .ok_or_else(|| Error::Hypothesis("members do not share a vertex set".into()))
}

/// `κ(G ∘_h Γ)` from the factors: `(n-1)|V| + min_v κ(h(v))` when the base is
/// `K_n`, and `κ(G)|V|` otherwise.
pub fn kappa_circ(inst: &CircInstance) -> Result<usize> {
    let size = require_circ_shared(inst)?;
    let g = &inst.base;
    if g.is_complete() {
        let inner = (0..g.order())
            .map(|v| kappa_exact(inst.member(v)))
            .min()
            .expect("base is nonempty");
        Ok((g.order() - 1) * size + inner)
    } else {
        Ok(kappa_exact(g) * size)
    }
}

/// `λ(G ∘_h Γ) = min { λ(G)|V|², δ(G ∘_h Γ) }` for a connected base of order
/// at least 2 and nontrivial members.
pub fn lambda_circ(inst: &CircInstance) -> Result<usize> {
    let size = require_circ_shared(inst)?;
    if inst.base.order() < 2 {
        return Err(Error::Hypothesis("base graph must have order at least 2".into()));
    }
    if size < 2 {
        return Err(Error::Hypothesis("members must be nontrivial".into()));
    }
    Ok((lambda_exact(&inst.base) * size * size).min(min_degree_circ(inst)?))
}

/// Sort-and-count helper shared by reports: sizes of the components of `g`.
pub fn component_sizes(g: &Graph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for c in components(g).blocks {
        *hist.entry(c.vertices.len()).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::family::{EdgeAssignment, GraphFamily};
    use crate::product::{circ_h, otimes_h};

    fn g(order: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(order, edges.iter().copied()).unwrap()
    }

    fn part(ground: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(ground, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn all_partitions(n: usize) -> Vec<Partition> {
        // restricted growth strings
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        loop {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let blocks = (0..k)
                .map(|b| (0..n).filter(|&i| rgs[i] == b).collect())
                .collect();
            out.push(Partition::new(n, blocks).unwrap());
            let mut i = n;
            loop {
                if i <= 1 {
                    return out;
                }
                i -= 1;
                let cap = rgs[..i].iter().max().unwrap() + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for r in &mut rgs[i + 1..] {
                        *r = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Exhaustive oracle: is there a nonempty proper subset of the ground set
    /// that is a union of blocks in every partition?
    fn common_proper_union_exists(parts: &[Partition]) -> bool {
        let n = parts[0].ground_size();
        (1u32..(1 << n) - 1).any(|u| {
            parts.iter().all(|p| {
                p.blocks().iter().all(|b| {
                    let inside = b.iter().filter(|&&x| u >> x & 1 == 1).count();
                    inside == 0 || inside == b.len()
                })
            })
        })
    }

    #[test]
    fn theorem_predictions() {
        let p4 = Graph::path(4);
        let c3 = OtimesInstance::constant(Graph::cycle(3), p4.clone());
        assert!(predict_otimes_connectivity(&c3).unwrap().connected);
        assert!(bfs_verdict(&otimes_h(&c3).graph).connected);

        let c4 = OtimesInstance::constant(Graph::cycle(4), p4.clone());
        let v = predict_otimes_connectivity(&c4).unwrap();
        assert!(!v.connected);
        assert_eq!(v.component_count, 2);
        let prod = otimes_h(&c4).graph;
        assert_eq!(bfs_verdict(&prod).component_count, 2);
        let Some(Witness::Component(side)) = v.witness else { panic!() };
        let comps = components(&prod);
        assert!(comps.blocks.iter().any(|b| b.vertices == side));

        // one edge carries a connected member containing a triangle
        let paw = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let fam = GraphFamily::new(vec![p4, paw]).unwrap();
        let base = Graph::cycle(4);
        let h = EdgeAssignment::from_fn(&base, |u, v| usize::from((u, v) == (0, 1)));
        let inst = OtimesInstance::new(base, fam, h).unwrap();
        assert!(predict_otimes_connectivity(&inst).unwrap().connected);
        assert!(bfs_verdict(&otimes_h(&inst).graph).connected);
    }

    #[test]
    fn theorem_refuses_outside_hypotheses() {
        let inst = catalog::four_triangles();
        assert!(matches!(predict_otimes_connectivity(&inst), Err(Error::Hypothesis(_))));
        let trivial = OtimesInstance::constant(Graph::empty(1), Graph::complete(2));
        assert!(predict_otimes_connectivity(&trivial).is_err());
    }

    #[test]
    fn sufficient_conditions() {
        let k3 = OtimesInstance::constant(Graph::path(3), Graph::complete(3));
        assert_eq!(
            sufficient_connectivity_check(&k3).unwrap(),
            Some(SufficientCertificate::OneEdge { edge: (0, 1) })
        );

        // h(ab) = P4 with sides {0,2},{1,3}
        let p4 = Graph::path(4);
        let base = Graph::path(3);
        let make = |second: Graph| {
            let fam = GraphFamily::new(vec![p4.clone(), second]).unwrap();
            let h = EdgeAssignment::from_fn(&base, |u, _| usize::from(u == 1));
            OtimesInstance::new(base.clone(), fam, h).unwrap()
        };
        // components {0,1} and {2,3}: sides {0},{1} and {2},{3} never mix
        let no = make(g(4, &[(0, 1), (2, 3)]));
        assert_eq!(sufficient_connectivity_check(&no).unwrap(), None);
        assert!(!bfs_verdict(&otimes_h(&no).graph).connected);
        // P4 relabeled 0-1-3-2 has sides {0,3},{1,2}: {0,3} meets both sides
        let yes = make(g(4, &[(0, 1), (1, 3), (3, 2)]));
        assert_eq!(
            sufficient_connectivity_check(&yes).unwrap(),
            Some(SufficientCertificate::TwoEdge {
                ab: (0, 1),
                bc: (1, 2),
                case: TwoEdgeCase::BipartiteSide
            })
        );
        assert!(bfs_verdict(&otimes_h(&yes).graph).connected);
        // 2K2 as {02,13}: each component sits inside one side, nothing fires
        let sides_aligned = make(g(4, &[(0, 2), (1, 3)]));
        assert_eq!(sufficient_connectivity_check(&sides_aligned).unwrap(), None);
    }

    #[test]
    fn sufficient_check_is_silent_on_connected_even_cycle_base_products() {
        // C3 base with a bipartite member is connected without any lemma
        let inst = OtimesInstance::constant(Graph::cycle(3), Graph::path(4));
        assert_eq!(sufficient_connectivity_check(&inst).unwrap(), None);
        assert!(bfs_verdict(&otimes_h(&inst).graph).connected);
    }

    #[test]
    fn fiber_sets_of_a_matching() {
        let base = Graph::complete(2);
        let inst = OtimesInstance::constant(base, g(4, &[(0, 2), (1, 3)]));
        let fam = fiber_sets(&inst);
        let sets: Vec<Vec<usize>> = fam.sets.iter().map(|s| s.vertices.clone()).collect();
        // (a,x) = a*4 + x
        assert_eq!(sets, vec![vec![0, 6], vec![2, 4], vec![1, 7], vec![3, 5]]);
        assert_eq!(intersection_graph(&fam).size(), 0);
    }

    #[test]
    fn fiber_sets_of_a_triangle() {
        let inst = OtimesInstance::constant(Graph::complete(2), Graph::complete(3));
        let fam = fiber_sets(&inst);
        assert_eq!(fam.sets.len(), 2);
        assert_eq!(fam.sets[0].vertices, (0..6).collect::<Vec<_>>());
        assert_eq!(fam.sets[0].vertices, fam.sets[1].vertices);
        assert_ne!(fam.sets[0].label, fam.sets[1].label);
    }

    #[test]
    fn fiber_sets_of_four_triangles() {
        let inst = catalog::four_triangles();
        let fam = fiber_sets(&inst);
        assert_eq!(fam.sets.len(), 12);
        assert!(fam.sets.iter().all(|s| s.vertices.len() == 2));
        let ig = intersection_graph(&fam);
        let comps = components(&ig);
        assert_eq!(comps.blocks.len(), 4);
        assert!(comps.blocks.iter().all(|b| b.vertices.len() == 3));
        let v = otimes_connected_via_family(&inst).unwrap();
        assert!(!v.connected);
        assert_eq!(v.component_count, 4);
    }

    #[test]
    fn intersection_graph_of_two_partitions() {
        let fam = SetFamily {
            ground_size: 4,
            sets: [vec![1, 2], vec![3], vec![1], vec![2, 3]]
                .into_iter()
                .enumerate()
                .map(|(i, vertices)| LabeledSet {
                    label: FiberLabel {
                        edge: (0, 1),
                        component: i,
                        endpoint: 0,
                    },
                    vertices,
                })
                .collect(),
        };
        let ig = intersection_graph(&fam);
        assert_eq!(ig.edge_set(), [(0, 2), (0, 3), (1, 3)].into_iter().collect());
        assert!(ig.is_connected());
    }

    #[test]
    fn family_verdict_on_constant_triangle() {
        let inst = OtimesInstance::constant(Graph::cycle(3), Graph::complete(3));
        assert!(otimes_connected_via_family(&inst).unwrap().connected);
    }

    #[test]
    fn partition_witnesses() {
        let p1 = part(4, &[&[0, 1], &[2, 3]]);
        let p2 = part(4, &[&[0, 1], &[2], &[3]]);
        let w = partition_disconnection_witness(&[p1.clone(), p2.clone()]).unwrap().unwrap();
        assert_eq!(w.subfamilies, vec![vec![vec![0, 1]], vec![vec![0, 1]]]);
        assert_eq!(w.union, vec![0, 1]);
        assert!(w.is_valid_for(&[p1, p2]));

        let q1 = part(3, &[&[0, 1], &[2]]);
        let q2 = part(3, &[&[0], &[1, 2]]);
        assert!(partition_disconnection_witness(&[q1.clone(), q2.clone()]).unwrap().is_none());
        assert!(!common_proper_union_exists(&[q1, q2]));

        let whole = part(3, &[&[0, 1, 2]]);
        assert!(partition_disconnection_witness(&[whole]).unwrap().is_none());

        assert!(partition_disconnection_witness(&[part(2, &[&[0, 1]]), part(3, &[&[0, 1, 2]])]).is_err());
        assert!(partition_disconnection_witness(&[]).is_err());
    }

    #[test]
    fn partition_witness_matches_exhaustive_union_search() {
        // all pairs of partitions of a 4-set
        let all = all_partitions(4);
        for p in &all {
            for q in &all {
                let parts = [p.clone(), q.clone()];
                let w = partition_disconnection_witness(&parts).unwrap();
                assert_eq!(w.is_some(), common_proper_union_exists(&parts));
                if let Some(w) = w {
                    assert!(w.is_valid_for(&parts));
                }
            }
        }
    }

    #[test]
    fn star_with_shared_block() {
        // members on V = {0,1,2,3} each keep {0,1} as a block
        let fam = GraphFamily::new(vec![
            g(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]),
            g(4, &[(0, 2), (1, 3), (2, 3)]),
            g(4, &[(0, 3), (1, 2), (1, 3)]),
        ])
        .unwrap();
        let base = Graph::star(3);
        let h = EdgeAssignment::from_fn(&base, |_, v| v - 1);
        let inst = OtimesInstance::new(base, fam, h).unwrap();
        let pred = predict_disconnection_via_partitions(&inst).unwrap();
        assert_eq!(pred.case, PartitionCase::Star);
        let truth = bfs_verdict(&otimes_h(&inst).graph);
        assert_eq!(pred.witness.is_some(), !truth.connected);
    }

    #[test]
    fn star_with_common_proper_union() {
        let m1 = g(4, &[(0, 1), (2, 3)]);
        let m2 = g(4, &[(0, 1), (2, 3), (1, 2)]);
        let fam = GraphFamily::new(vec![m1, m2]).unwrap();
        let base = Graph::star(2);
        let h = EdgeAssignment::from_fn(&base, |_, v| v - 1);
        let inst = OtimesInstance::new(base, fam, h).unwrap();
        let pred = predict_disconnection_via_partitions(&inst).unwrap();
        let truth = bfs_verdict(&otimes_h(&inst).graph);
        assert_eq!(pred.witness.is_some(), !truth.connected);
        assert!(pred.witness.is_some());
    }

    #[test]
    fn star_refuses_members_with_isolated_vertices() {
        // the partition test alone would miss the isolated product vertex
        let fam = GraphFamily::new(vec![g(3, &[(0, 1)]), Graph::complete(3)]).unwrap();
        let base = Graph::star(2);
        let h = EdgeAssignment::from_fn(&base, |_, v| v - 1);
        let inst = OtimesInstance::new(base, fam.clone(), h).unwrap();
        assert!(matches!(predict_disconnection_via_partitions(&inst), Err(Error::Hypothesis(_))));
        let parts: Vec<Partition> = fam.members().iter().map(stable_partition).collect();
        assert!(partition_disconnection_witness(&parts).unwrap().is_none());
        assert!(!bfs_verdict(&otimes_h(&inst).graph).connected);
    }

    #[test]
    fn all_nonbipartite_components() {
        let two_triangles = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        let inst = OtimesInstance::constant(Graph::path(3), two_triangles);
        let pred = predict_disconnection_via_partitions(&inst).unwrap();
        assert_eq!(pred.case, PartitionCase::AllComponentsNonbipartite);
        let w = pred.witness.expect("disconnected");
        assert_eq!(w.union, vec![0, 1, 2]);
        assert!(!bfs_verdict(&otimes_h(&inst).graph).connected);

        let k4 = OtimesInstance::constant(Graph::cycle(4), Graph::complete(4));
        assert!(predict_disconnection_via_partitions(&k4).unwrap().witness.is_none());
        assert!(bfs_verdict(&otimes_h(&k4).graph).connected);

        let bip = OtimesInstance::constant(Graph::path(4), Graph::path(3));
        assert!(predict_disconnection_via_partitions(&bip).is_err());
    }

    #[test]
    fn kappa_lambda_formulas() {
        let d = catalog::diamond_circ();
        assert_eq!(kappa_circ(&d).unwrap(), 2);
        assert_eq!(kappa_exact(&circ_h(&d).graph), 2);

        let p3 = CircInstance::constant(Graph::path(3), Graph::empty(2));
        assert_eq!(kappa_circ(&p3).unwrap(), 2);
        assert_eq!(kappa_exact(&circ_h(&p3).graph), 2);
        assert_eq!(lambda_circ(&p3).unwrap(), 2);
        assert_eq!(lambda_exact(&circ_h(&p3).graph), 2);

        let k1 = CircInstance::constant(Graph::empty(1), Graph::cycle(4));
        assert_eq!(kappa_circ(&k1).unwrap(), 2);
        assert!(lambda_circ(&k1).is_err());

        let k2 = CircInstance::constant(Graph::complete(2), Graph::complete(2));
        assert_eq!(lambda_circ(&k2).unwrap(), 3);

        let c4 = CircInstance::constant(Graph::cycle(4), Graph::complete(2));
        assert_eq!(lambda_circ(&c4).unwrap(), 5);
        assert_eq!(lambda_exact(&circ_h(&c4).graph), 5);
    }

    #[test]
    fn kappa_formula_refusals() {
        assert!(kappa_circ(&catalog::triangle_circ()).is_err());
        let disconnected = CircInstance::constant(Graph::empty(2), Graph::complete(2));
        assert!(kappa_circ(&disconnected).is_err());
        let trivial_members = CircInstance::constant(Graph::path(3), Graph::empty(1));
        assert!(lambda_circ(&trivial_members).is_err());
    }
}
