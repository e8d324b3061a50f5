//! Seeded verification suites: every characterization and bound is checked
//! against brute force on the constructed product.
//!
//! Each case is a pure function of its seed. Suites fan out over seeds with
//! rayon and return reports in seed order.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::connectivity::{
    bfs_verdict, intersection_graph, kappa_circ, lambda_circ, otimes_connected_via_family,
    partition_disconnection_witness, predict_disconnection_via_partitions, predict_otimes_connectivity,
    star_center, sufficient_connectivity_check, LabeledSet, SetFamily, FiberLabel, Witness,
};
use crate::cuts::{kappa_exact, lambda_exact};
use crate::error::{Error, Result};
use crate::family::{sigma_gamma, CircInstance, EdgeAssignment, GraphFamily, Instance, OtimesInstance, VertexAssignment};
use crate::graph::{components, Graph, Partition};
use crate::invariants::{
    alpha_circ, alpha_otimes_lower, chi_circ_upper, chi_omega_otimes_bounds, chromatic, clique_realizing_assignment,
    complete_fiber_instance, dominating_set_construct, gamma_circ_upper, gamma_otimes_lower, gamma_otimes_upper,
    h_tuple_chromatic, is_dominating, kneser_graph, kneser_homomorphism, max_clique, max_independent_set,
    min_dominating_set, product_coloring_from_tuple, reduce_to_complete_fibers, tuple_from_product_coloring,
    DominationInputs, Guards, InvariantWitness,
};
use crate::io::{serialize_instance, Kind};
use crate::product::{circ_h, direct_product, lex_product, min_degree_circ, otimes_h, product_degree, ProductGraph};
use crate::random::{random_graph, random_instance_with, rng_for, GraphSpec, InstanceRng, RandomParams};
use crate::structure::{
    assoc_circ_left, assoc_circ_right, assoc_otimes_left, assoc_otimes_right, check_assoc_circ, check_assoc_circ_split,
    check_assoc_otimes, check_assoc_otimes_split,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "hypothesis-unmet")]
    HypothesisUnmet,
    #[serde(rename = "VIOLATION")]
    Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub seed: u64,
    pub status: Status,
    pub details: Value,
    /// Canonical instance document, present on violations when the case
    /// has a single instance.
    pub instance: Option<String>,
}

/// Suite identifiers accepted by [`verify`].
pub const SUITES: &[&str] = &[
    "weichsel",
    "otimes-connectivity",
    "fiber-family",
    "partitions",
    "partition-products",
    "kappa-circ",
    "alpha-circ",
    "alpha-otimes",
    "domination",
    "gamma-circ",
    "chromatic",
    "chi-omega-otimes",
    "clique",
    "clique-chromatic",
    "tuple",
    "assoc-otimes-left",
    "assoc-otimes-right",
    "assoc-circ-left",
    "assoc-circ-right",
    "degrees",
];

/// Accumulates checks for one seeded case.
struct Case {
    details: BTreeMap<String, Value>,
    failures: Vec<String>,
    unmet: Option<String>,
    instance: Option<Instance>,
    degree_checks: usize,
}

impl Case {
    fn new() -> Self {
        Self {
            details: BTreeMap::new(),
            failures: Vec::new(),
            unmet: None,
            instance: None,
            degree_checks: 0,
        }
    }

    fn note(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.into(), json!(value));
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn unmet(&mut self, why: impl Into<String>) {
        self.unmet.get_or_insert(why.into());
    }

    /// Degree formula against the constructed product at every vertex, and
    /// the minimum-degree formula where it applies.
    fn degrees(&mut self, inst: &Instance, product: &ProductGraph) -> Result<()> {
        for i in 0..product.graph.order() {
            let (a, x) = product.pair(i);
            let formula = product_degree(inst, a, x)?;
            self.degree_checks += 1;
            if formula != product.graph.degree(i) {
                self.failures.push(format!(
                    "degree of ({a},{x}): formula {formula}, product {}",
                    product.graph.degree(i)
                ));
            }
        }
        if let Instance::Circ(c) = inst {
            if c.shared_inner_order().is_some() && c.base.order() >= 2 {
                let formula = min_degree_circ(c)?;
                self.degree_checks += 1;
                self.check(formula == product.graph.min_degree(), format!(
                    "minimum degree: formula {formula}, product {}",
                    product.graph.min_degree()
                ));
            }
        }
        Ok(())
    }

    fn finish(mut self, theorem: &str, seed: u64, outcome: Result<()>) -> VerifyReport {
        match outcome {
            Err(Error::Hypothesis(why)) => self.unmet(why),
            Err(e) => self.failures.push(format!("error: {e}")),
            Ok(()) => {}
        }
        if self.degree_checks > 0 {
            let n = self.degree_checks;
            self.note("degree_checks", n);
        }
        let status = if !self.failures.is_empty() {
            Status::Violation
        } else if self.unmet.is_some() {
            Status::HypothesisUnmet
        } else {
            Status::Confirmed
        };
        if !self.failures.is_empty() {
            let f = std::mem::take(&mut self.failures);
            self.note("failures", f);
        }
        if let Some(why) = self.unmet.take() {
            self.note("hypothesis", why);
        }
        let instance = match status {
            Status::Violation => self.instance.as_ref().map(serialize_instance),
            _ => None,
        };
        VerifyReport {
            theorem: theorem.to_string(),
            seed,
            status,
            details: json!(self.details),
            instance,
        }
    }
}

fn guards() -> Guards {
    Guards::uniform(64)
}

fn density(rng: &mut InstanceRng) -> f64 {
    rng.gen_range(0.15..0.85)
}

fn graph(rng: &mut InstanceRng, order: RangeInclusive<usize>, f: impl FnOnce(GraphSpec) -> GraphSpec) -> Result<Graph> {
    let n = rng.gen_range(order);
    let d = density(rng);
    random_graph(rng, &f(GraphSpec::new(n, d)))
}

fn instance(rng: &mut InstanceRng, f: impl FnOnce(&mut InstanceRng, RandomParams) -> RandomParams) -> Result<Instance> {
    let p = RandomParams {
        edge_density: density(rng),
        family_size: rng.gen_range(1..=3),
        ..RandomParams::default()
    };
    let p = f(rng, p);
    random_instance_with(rng, &p)
}

fn otimes(inst: Instance) -> OtimesInstance {
    match inst {
        Instance::Otimes(i) => i,
        Instance::Circ(_) => unreachable!("generator asked for otimes"),
    }
}

fn circ(inst: Instance) -> CircInstance {
    match inst {
        Instance::Circ(i) => i,
        Instance::Otimes(_) => unreachable!("generator asked for circ"),
    }
}

fn case_weichsel(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let g = graph(rng, 2..=5, GraphSpec::connected)?;
    let h = graph(rng, 2..=5, GraphSpec::connected)?;
    let product = direct_product(&g, &h);
    let count = components(&product.graph).blocks.len();
    let both_bipartite = g.is_bipartite() && h.is_bipartite();
    c.note("components", count);
    c.note("both_bipartite", both_bipartite);
    c.check((count == 1) != both_bipartite, "connectivity differs from the nonbipartite-factor rule");
    if both_bipartite {
        c.check(count == 2, "bipartite factors must give exactly two components");
    }
    if h.is_bipartite() {
        let k2 = direct_product(&Graph::complete(2), &h);
        let (v1, v2) = components(&h).blocks[0].bipartition.clone().expect("bipartite");
        let n = h.order();
        let side = |p: &[usize], q: &[usize]| {
            let mut s: Vec<usize> = p.iter().copied().chain(q.iter().map(|&y| n + y)).collect();
            s.sort_unstable();
            s
        };
        let expected = [side(&v1, &v2), side(&v2, &v1)];
        let got: Vec<Vec<usize>> = components(&k2.graph).blocks.into_iter().map(|b| b.vertices).collect();
        c.check(got.len() == 2 && expected.iter().all(|e| got.contains(e)), "K2 ⊗ H components are not the side sets");
    }
    let inst: Instance = OtimesInstance::constant(g, h).into();
    c.degrees(&inst, &product)?;
    c.instance = Some(inst);
    Ok(())
}

fn connected_members(rng: &mut InstanceRng, p: RandomParams, max_base: usize) -> RandomParams {
    RandomParams {
        base_order: rng.gen_range(2..=max_base),
        inner_order: rng.gen_range(2..=5),
        member_connected: true,
        ..p
    }
}

fn case_otimes_connectivity(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = otimes(instance(rng, |r, p| connected_members(r, p, 6))?);
    c.instance = Some(inst.clone().into());
    let product = otimes_h(&inst);
    let truth = bfs_verdict(&product.graph);
    let predicted = predict_otimes_connectivity(&inst)?;
    c.note("connected", truth.connected);
    c.check(predicted.connected == truth.connected, "predicted connectivity differs from BFS");
    c.check(predicted.component_count == truth.component_count, "predicted component count differs from BFS");
    if let Some(Witness::Component(side)) = &predicted.witness {
        let ok = components(&product.graph).blocks.iter().any(|b| &b.vertices == side);
        c.check(ok, "witness is not a component of the product");
    }
    if let Some(cert) = sufficient_connectivity_check(&inst)? {
        c.note("certificate", cert);
        c.check(truth.connected, "sufficient condition certified a disconnected product");
    }
    c.degrees(&inst.into(), &product)
}

fn case_fiber_family(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = otimes(instance(rng, |r, p| RandomParams {
        base_order: r.gen_range(2..=6),
        inner_order: r.gen_range(2..=5),
        member_min_degree_one: true,
        ..p
    })?);
    c.instance = Some(inst.clone().into());
    let product = otimes_h(&inst);
    let truth = bfs_verdict(&product.graph);
    let via = otimes_connected_via_family(&inst)?;
    c.note("components", truth.component_count);
    c.check(via.connected == truth.connected, "family verdict differs from BFS");
    c.check(via.component_count == truth.component_count, "family component count differs from BFS");
    c.degrees(&inst.into(), &product)
}

fn random_partition(rng: &mut InstanceRng, n: usize) -> Partition {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, l) in labels.into_iter().enumerate() {
        by_label.entry(l).or_default().push(v);
    }
    Partition::new(n, by_label.into_values().collect()).expect("labels give a partition")
}

/// Exhaustive search for a nonempty proper subset that is a union of blocks
/// of every partition.
fn common_proper_union(parts: &[Partition]) -> bool {
    let n = parts[0].ground_size();
    (1u64..(1 << n) - 1).any(|u| {
        parts.iter().all(|p| {
            p.blocks().iter().all(|b| {
                let inside = b.iter().filter(|&&x| u >> x & 1 == 1).count();
                inside == 0 || inside == b.len()
            })
        })
    })
}

fn case_partitions(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let n = rng.gen_range(1..=6);
    let t = rng.gen_range(1..=3);
    let parts: Vec<Partition> = (0..t).map(|_| random_partition(rng, n)).collect();
    c.note("partitions", parts.iter().map(|p| p.blocks().to_vec()).collect::<Vec<_>>());
    let witness = partition_disconnection_witness(&parts)?;
    let fam = SetFamily {
        ground_size: n,
        sets: parts
            .iter()
            .flat_map(|p| p.blocks().iter())
            .enumerate()
            .map(|(i, b)| LabeledSet {
                label: FiberLabel { edge: (0, 0), component: i, endpoint: 0 },
                vertices: b.clone(),
            })
            .collect(),
    };
    let disconnected = !intersection_graph(&fam).is_connected();
    let exhaustive = common_proper_union(&parts);
    c.note("witness", witness.is_some());
    c.check(witness.is_some() == exhaustive, "witness existence differs from exhaustive search");
    c.check(witness.is_some() == disconnected, "witness existence differs from intersection-graph disconnection");
    if let Some(w) = &witness {
        c.check(w.is_valid_for(&parts), "witness subfamilies do not share a proper union");
    }
    Ok(())
}

/// A graph on `n ≥ 3` vertices whose components are all nonbipartite.
fn all_nonbipartite(rng: &mut InstanceRng, n: usize) -> Result<Graph> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = if left < 6 { left } else { rng.gen_range(3..=left - 3) };
        sizes.push(s);
        left -= s;
    }
    let mut edges = Vec::new();
    let mut offset = 0;
    for s in sizes {
        let d = density(rng);
        let piece = random_graph(rng, &GraphSpec::new(s, d).connected().bipartite(Some(false)))?;
        edges.extend(piece.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += s;
    }
    // shuffle labels so components are not contiguous
    let mut perm: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    Graph::new(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
}

fn case_partition_products(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = if seed.is_multiple_of(2) {
        let base = graph(rng, 2..=4, GraphSpec::connected)?;
        let n = rng.gen_range(3..=6);
        let k = rng.gen_range(1..=3);
        let members = (0..k).map(|_| all_nonbipartite(rng, n)).collect::<Result<Vec<_>>>()?;
        let fam = GraphFamily::new(members)?;
        let h = EdgeAssignment::from_fn(&base, |_, _| rng.gen_range(0..k));
        OtimesInstance::new(base, fam, h)?
    } else {
        let leaves = rng.gen_range(1..=4);
        let base = Graph::star(leaves);
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=leaves.min(3));
        let members = (0..k)
            .map(|_| graph(rng, n..=n, GraphSpec::min_degree_one))
            .collect::<Result<Vec<_>>>()?;
        let fam = GraphFamily::new(members)?;
        // the first k leaves take distinct members so h is onto
        let h = EdgeAssignment::from_fn(&base, |_, v| if v <= k { v - 1 } else { rng.gen_range(0..k) });
        OtimesInstance::new(base, fam, h)?
    };
    c.instance = Some(inst.clone().into());
    c.note("star", star_center(&inst.base).is_some());
    let product = otimes_h(&inst);
    let truth = bfs_verdict(&product.graph);
    let prediction = predict_disconnection_via_partitions(&inst)?;
    c.note("case", prediction.case);
    c.note("connected", truth.connected);
    c.check(prediction.witness.is_some() == !truth.connected, "partition prediction differs from BFS");
    c.degrees(&inst.into(), &product)
}

fn case_kappa_circ(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = circ(instance(rng, |r, p| RandomParams {
        kind: Kind::Circ,
        base_order: r.gen_range(2..=5),
        inner_order: r.gen_range(2..=4),
        ..p
    })?);
    c.instance = Some(inst.clone().into());
    let product = circ_h(&inst);
    let (k, l) = (kappa_circ(&inst)?, lambda_circ(&inst)?);
    let (ke, le) = (kappa_exact(&product.graph), lambda_exact(&product.graph));
    c.note("kappa", (k, ke));
    c.note("lambda", (l, le));
    c.check(k == ke, "kappa formula differs from exact");
    c.check(l == le, "lambda formula differs from exact");
    c.degrees(&inst.into(), &product)
}

fn circ_mixed(rng: &mut InstanceRng, bases: RangeInclusive<usize>, inner: usize) -> Result<CircInstance> {
    let base_order = rng.gen_range(bases);
    Ok(circ(instance(rng, |r, p| RandomParams {
        kind: Kind::Circ,
        base_order,
        inner_order: inner,
        base_connected: r.gen_bool(0.5),
        mixed_inner_orders: true,
        ..p
    })?))
}

fn case_alpha_circ(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = circ_mixed(rng, 2..=5, 4)?;
    c.instance = Some(inst.clone().into());
    let product = circ_h(&inst);
    let report = alpha_circ(&inst, &guards())?;
    let exact = max_independent_set(&product.graph, 64)?.len();
    c.note("alpha", (report.value, exact));
    c.check(report.value == exact, "alpha formula differs from exact");
    if let Some(InvariantWitness::VertexSet(s)) = &report.witness {
        c.check(
            s.len() == exact && crate::invariants::is_independent(&product.graph, s),
            "alpha witness is not a maximum independent set",
        );
    }
    c.degrees(&inst.into(), &product)
}

fn case_alpha_otimes(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = otimes(instance(rng, |r, p| RandomParams {
        base_order: r.gen_range(1..=5),
        inner_order: r.gen_range(1..=5),
        base_connected: r.gen_bool(0.5),
        ..p
    })?);
    c.instance = Some(inst.clone().into());
    let product = otimes_h(&inst);
    let bound = alpha_otimes_lower(&inst, &guards())?;
    let exact = max_independent_set(&product.graph, 64)?.len();
    c.note("alpha", (bound, exact));
    c.check(bound <= exact, "alpha lower bound exceeds exact");
    c.degrees(&inst.into(), &product)
}

/// Drop vertices of `s` in order while the rest still satisfies `ok`.
fn shrink(s: &[usize], ok: impl Fn(&[usize]) -> bool) -> Vec<usize> {
    let mut cur = s.to_vec();
    let mut i = 0;
    while i < cur.len() {
        let mut trial = cur.clone();
        trial.remove(i);
        if ok(&trial) {
            cur = trial;
        } else {
            i += 1;
        }
    }
    cur
}

fn case_domination(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = otimes(instance(rng, |r, p| RandomParams {
        base_order: r.gen_range(2..=4),
        inner_order: r.gen_range(2..=4),
        member_min_degree_one: true,
        ..p
    })?);
    c.instance = Some(inst.clone().into());
    let gd = guards();
    let product = otimes_h(&inst);
    let gamma = min_dominating_set(&product.graph, false, 64)?.len();
    let lower = gamma_otimes_lower(&inst, &gd)?;
    c.note("gamma", gamma);
    c.note("lower", lower);
    c.check(gamma >= lower.theorem, "gamma below the local-union bound");
    c.check(lower.theorem >= lower.corollary, "local-union bound below the union bound");
    if product.graph.min_degree() > 0 {
        let gamma_t = min_dominating_set(&product.graph, true, 64)?.len();
        c.note("gamma_t", gamma_t);
        c.check(gamma_t >= lower.theorem, "gamma_t below the local-union bound");
    }
    // dominating-set construction from minimal choices
    let d = min_dominating_set(&inst.base, true, 64)?;
    let a = shrink(&d, |s| is_dominating(&inst.base, s));
    let mut input = DominationInputs { d, a, ..Default::default() };
    for (u, v) in inst.base.edges() {
        let m = inst.member(u, v);
        let de = min_dominating_set(m, true, 64)?;
        let be = shrink(&de, |s| is_dominating(m, s));
        input.d_e.insert((u, v), de);
        input.b_e.insert((u, v), be);
    }
    let x = dominating_set_construct(&inst, &input)?;
    c.note("constructed", x.len());
    c.check(is_dominating(&product.graph, &x), "constructed set does not dominate");
    c.check(gamma <= x.len(), "gamma exceeds the constructed set");
    // the largest common spanning subgraph of the assigned members
    let used = inst.used_members();
    let n = inst.inner_order();
    let f_edges: Vec<(usize, usize)> = inst
        .family
        .member(used[0])
        .edges()
        .filter(|&(x, y)| used.iter().all(|&i| inst.family.member(i).has_edge(x, y)))
        .collect();
    let f = Graph::new(n, f_edges)?;
    let upper = gamma_otimes_upper(&inst, &f, &gd)?;
    c.note("upper", upper);
    c.check(gamma <= upper, "gamma exceeds 3γ(G)γ(F)");
    c.degrees(&inst.into(), &product)
}

fn case_gamma_circ(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = circ_mixed(rng, 1..=5, 4)?;
    c.instance = Some(inst.clone().into());
    let product = circ_h(&inst);
    let (bound, _) = gamma_circ_upper(&inst, &guards())?;
    let exact = min_dominating_set(&product.graph, false, 64)?.len();
    c.note("gamma", (bound, exact));
    c.check(exact <= bound, "gamma exceeds the fiber-sum bound");
    c.degrees(&inst.into(), &product)
}

fn case_chromatic(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = circ_mixed(rng, 1..=5, 5)?;
    c.instance = Some(inst.clone().into());
    let gd = guards();
    let product = circ_h(&inst);
    let exact = chromatic(&product.graph, 64)?.0;
    let reduced = circ_h(&reduce_to_complete_fibers(&inst, &gd)?);
    let reduced_chi = chromatic(&reduced.graph, 64)?.0;
    let upper = chi_circ_upper(&inst, &gd)?;
    c.note("chi", (exact, reduced_chi, upper));
    c.check(exact == reduced_chi, "chromatic number changes under complete-fiber reduction");
    c.check(exact <= upper, "chromatic number exceeds χ(G)·max χ(h(v))");
    c.degrees(&inst.into(), &product)
}

fn case_chi_omega_otimes(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let inst = otimes(instance(rng, |r, p| RandomParams {
        base_order: r.gen_range(2..=5),
        inner_order: r.gen_range(2..=5),
        ..p
    })?);
    c.instance = Some(inst.clone().into());
    let product = otimes_h(&inst);
    let (chi_bound, omega_bound) = chi_omega_otimes_bounds(&inst, &guards())?;
    let chi = chromatic(&product.graph, 64)?.0;
    let omega = max_clique(&product.graph, 64)?.len();
    let alpha = max_independent_set(&product.graph, 64)?.len();
    c.note("chi", (chi, chi_bound));
    c.note("omega", (omega, omega_bound));
    c.check(chi <= chi_bound, "chromatic number exceeds its bound");
    c.check(omega <= omega_bound, "clique number exceeds its bound");
    // adding an edge to one member can only add product edges
    let i = rng.gen_range(0..inst.family.len());
    let member = inst.family.member(i);
    let n = member.order();
    let missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !member.has_edge(x, y))
        .collect();
    if !missing.is_empty() {
        let extra = missing[rng.gen_range(0..missing.len())];
        let grown = Graph::new(n, member.edges().chain([extra]))?;
        let mut members = inst.family.members().to_vec();
        members[i] = grown;
        let bigger = OtimesInstance::new(inst.base.clone(), GraphFamily::new(members)?, inst.h.clone())?;
        let p2 = otimes_h(&bigger).graph;
        c.check(chromatic(&p2, 64)?.0 >= chi, "adding a member edge lowered χ");
        c.check(max_clique(&p2, 64)?.len() >= omega, "adding a member edge lowered ω");
        c.check(max_independent_set(&p2, 64)?.len() <= alpha, "adding a member edge raised α");
    }
    c.degrees(&inst.into(), &product)
}

fn random_family(rng: &mut InstanceRng) -> Result<GraphFamily> {
    let n = rng.gen_range(2..=5);
    let k = rng.gen_range(1..=3);
    let members = (0..k).map(|_| graph(rng, n..=n, |s| s)).collect::<Result<Vec<_>>>()?;
    GraphFamily::new(members)
}

fn case_clique(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let g = graph(rng, 2..=6, |s| s)?;
    let fam = random_family(rng)?;
    let (h, k) = clique_realizing_assignment(&g, &fam, &guards())?;
    let inst = OtimesInstance::new(g, fam, h)?;
    c.instance = Some(inst.clone().into());
    let product = otimes_h(&inst);
    let omega = max_clique(&product.graph, 64)?.len();
    c.note("omega", (omega, k));
    c.check(omega == k, "realized clique number differs from min{ω(G), ω(ΣΓ)}");
    c.degrees(&inst.into(), &product)
}

fn case_clique_chromatic(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let fam = random_family(rng)?;
    let n = max_clique(&sigma_gamma(&fam)?, 64)?.len();
    let g = Graph::complete(n);
    let (h, k) = clique_realizing_assignment(&g, &fam, &guards())?;
    let inst = OtimesInstance::new(g, fam, h)?;
    c.instance = Some(inst.clone().into());
    let product = otimes_h(&inst);
    let chi = chromatic(&product.graph, 64)?.0;
    c.note("chi", (chi, n));
    c.check(k == n, "clique size is not ω(ΣΓ)");
    c.check(chi == n, "χ(K_n ⊗_h Γ) differs from n");
    c.degrees(&inst.into(), &product)
}

fn case_tuple(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let g = graph(rng, 1..=6, |s| s)?;
    let demands: Vec<usize> = if seed.is_multiple_of(4) {
        vec![1; g.order()]
    } else {
        (0..g.order()).map(|_| rng.gen_range(1..=3)).collect()
    };
    c.note("demands", &demands);
    let report = h_tuple_chromatic(&g, &demands, 64)?;
    let inst = complete_fiber_instance(&g, &demands)?;
    c.instance = Some(inst.clone().into());
    let product = circ_h(&inst);
    let (chi, colors) = chromatic(&product.graph, 64)?;
    c.note("chi_h", (report.value, chi));
    c.check(report.value == chi, "χ_h differs from χ of the complete-fiber product");
    if demands.iter().all(|&d| d == 1) {
        c.check(report.value == chromatic(&g, 64)?.0, "unit demands do not reproduce χ");
    }
    let Some(InvariantWitness::TupleColoring(t)) = &report.witness else {
        c.check(false, "missing tuple coloring");
        return Ok(());
    };
    c.check(t.is_valid_for(&g, &demands), "tuple coloring is invalid");
    let back = product_coloring_from_tuple(&product, t);
    c.check(crate::invariants::is_proper_coloring(&product.graph, &back), "tuple coloring does not color the product");
    let forth = tuple_from_product_coloring(&product, &colors);
    c.check(forth.is_valid_for(&g, &demands), "product coloring does not give a tuple coloring");
    let (kneser, sets) = kneser_graph(&demands, t.palette_size)?;
    match kneser_homomorphism(t, &sets) {
        Some(f) => c.check(g.edges().all(|(u, v)| kneser.has_edge(f[u], f[v])), "tuple coloring is not a Kneser homomorphism"),
        None => c.check(false, "color set missing from the Kneser graph"),
    }
    c.degrees(&inst.into(), &product)
}

fn case_assoc_otimes_left(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let g = graph(rng, 1..=3, |s| s)?;
    let inner = otimes(instance(rng, |r, p| RandomParams {
        base_order: r.gen_range(1..=3),
        inner_order: r.gen_range(1..=3),
        base_connected: false,
        ..p
    })?);
    let merged = assoc_otimes_left(&g, &inner)?;
    c.instance = Some(merged.clone().into());
    c.check(check_assoc_otimes(&g, &inner, &merged), "flattened edge sets differ");
    c.degrees(&merged.clone().into(), &otimes_h(&merged))
}

fn case_assoc_otimes_right(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let g = graph(rng, 1..=3, |s| s)?;
    let hg = graph(rng, 1..=3, |s| s)?;
    let m = hg.order();
    let base = direct_product(&g, &hg).graph;
    let fam = random_family(rng)?;
    let k = fam.len();
    let symmetric = !seed.is_multiple_of(5);
    let mut chosen = BTreeMap::new();
    let h = EdgeAssignment::from_fn(&base, |i, j| {
        let ((alpha, a), (beta, b)) = ((i / m, i % m), (j / m, j % m));
        if symmetric {
            let key = (alpha.min(beta), alpha.max(beta), a.min(b), a.max(b));
            *chosen.entry(key).or_insert_with(|| rng.gen_range(0..k))
        } else {
            rng.gen_range(0..k)
        }
    });
    let inst = OtimesInstance::new(base, fam, h)?;
    c.instance = Some(inst.clone().into());
    let asymmetric = g.edges().any(|(alpha, beta)| {
        hg.edges().any(|(a, b)| inst.member_index(alpha * m + a, beta * m + b) != inst.member_index(alpha * m + b, beta * m + a))
    });
    c.note("symmetric", !asymmetric);
    match assoc_otimes_right(&g, &hg, &inst) {
        Ok((family, h2)) => {
            c.check(!asymmetric, "asymmetric assignment was accepted");
            c.check(check_assoc_otimes_split(&g, &hg, &inst, &family, &h2)?, "flattened edge sets differ");
        }
        Err(Error::AsymmetricAssignment { alpha, beta, a, b }) => {
            let differs = inst.member_index(alpha * m + a, beta * m + b) != inst.member_index(alpha * m + b, beta * m + a);
            c.check(asymmetric && differs, "refusal names a symmetric quadruple");
        }
        Err(e) => return Err(e),
    }
    c.degrees(&inst.clone().into(), &otimes_h(&inst))
}

fn case_assoc_circ_left(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let g = graph(rng, 1..=3, |s| s)?;
    let inner = circ_mixed(rng, 1..=3, 3)?;
    let merged = assoc_circ_left(&g, &inner)?;
    c.instance = Some(merged.clone().into());
    c.check(check_assoc_circ(&g, &inner, &merged), "flattened edge sets differ");
    c.degrees(&merged.clone().into(), &circ_h(&merged))
}

fn case_assoc_circ_right(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let g = graph(rng, 1..=3, |s| s)?;
    let hg = graph(rng, 1..=3, |s| s)?;
    let base = lex_product(&g, &hg).graph;
    let k = rng.gen_range(1..=3);
    let members = (0..k)
        .map(|_| graph(rng, 1..=3, |s| s))
        .collect::<Result<Vec<_>>>()?;
    let fam = GraphFamily::new(members)?;
    let idx = (0..base.order()).map(|_| rng.gen_range(0..k)).collect();
    let h = VertexAssignment::new(&base, k, idx)?;
    let inst = CircInstance::new(base, fam, h)?;
    c.instance = Some(inst.clone().into());
    let (family, h2) = assoc_circ_right(&g, &hg, &inst)?;
    c.check(check_assoc_circ_split(&g, &hg, &inst, &family, &h2)?, "flattened edge sets differ");
    c.degrees(&inst.clone().into(), &circ_h(&inst))
}

fn case_degrees(seed: u64, c: &mut Case) -> Result<()> {
    let rng = &mut rng_for(seed);
    let kind = if seed.is_multiple_of(2) { Kind::Otimes } else { Kind::Circ };
    let inst = instance(rng, |r, p| RandomParams {
        kind,
        base_order: r.gen_range(1..=6),
        inner_order: r.gen_range(1..=5),
        base_connected: r.gen_bool(0.5),
        mixed_inner_orders: r.gen_bool(0.5),
        ..p
    })?;
    c.instance = Some(inst.clone());
    let product = crate::product::build(&inst);
    c.degrees(&inst, &product)
}

type CaseFn = fn(u64, &mut Case) -> Result<()>;

fn case_fn(suite: &str) -> Result<CaseFn> {
    Ok(match suite {
        "weichsel" => case_weichsel,
        "otimes-connectivity" => case_otimes_connectivity,
        "fiber-family" => case_fiber_family,
        "partitions" => case_partitions,
        "partition-products" => case_partition_products,
        "kappa-circ" => case_kappa_circ,
        "alpha-circ" => case_alpha_circ,
        "alpha-otimes" => case_alpha_otimes,
        "domination" => case_domination,
        "gamma-circ" => case_gamma_circ,
        "chromatic" => case_chromatic,
        "chi-omega-otimes" => case_chi_omega_otimes,
        "clique" => case_clique,
        "clique-chromatic" => case_clique_chromatic,
        "tuple" => case_tuple,
        "assoc-otimes-left" => case_assoc_otimes_left,
        "assoc-otimes-right" => case_assoc_otimes_right,
        "assoc-circ-left" => case_assoc_circ_left,
        "assoc-circ-right" => case_assoc_circ_right,
        "degrees" => case_degrees,
        _ => return Err(Error::InvalidInput(format!("unknown suite {suite:?}"))),
    })
}

/// Run one seeded case of `suite`.
pub fn run_case(suite: &str, seed: u64) -> Result<VerifyReport> {
    let f = case_fn(suite)?;
    let mut case = Case::new();
    let outcome = f(seed, &mut case);
    Ok(case.finish(suite, seed, outcome))
}

/// Run `suite` on every seed in `seeds`; reports come back in seed order.
pub fn verify(suite: &str, seeds: RangeInclusive<u64>) -> Result<Vec<VerifyReport>> {
    let f = case_fn(suite)?;
    Ok(seeds
        .into_par_iter()
        .map(|seed| {
            let mut case = Case::new();
            let outcome = f(seed, &mut case);
            case.finish(suite, seed, outcome)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub confirmed: usize,
    pub hypothesis_unmet: usize,
    pub violations: usize,
    pub degree_checks: usize,
}

pub fn tally(reports: &[VerifyReport]) -> Tally {
    let mut t = Tally::default();
    for r in reports {
        match r.status {
            Status::Confirmed => t.confirmed += 1,
            Status::HypothesisUnmet => t.hypothesis_unmet += 1,
            Status::Violation => t.violations += 1,
        }
        t.degree_checks += r.details.get("degree_checks").and_then(Value::as_u64).unwrap_or(0) as usize;
    }
    t
}
