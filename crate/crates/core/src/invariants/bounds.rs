//! Bounds and formulas for invariants of `⊗_h` and `∘_h` products.

use std::collections::BTreeMap;

use serde::Serialize;

use super::exact::{chromatic, is_dominating, is_total_dominating, max_clique, max_independent_set, max_weight_independent_set, min_dominating_set, Guards};
use super::{Invariant, InvariantReport, InvariantWitness};
use crate::error::{Error, Result};
use crate::family::{local_union, sigma_gamma, union_graph, CircInstance, EdgeAssignment, GraphFamily, OtimesInstance, VertexAssignment};
use crate::graph::Graph;
use crate::product::{circ_h, ProductGraph};

/// `max{α(G)|V|, α(h(G))|V(G)|} ≤ α(G ⊗_h Γ)`.
pub fn alpha_otimes_lower(inst: &OtimesInstance, guards: &Guards) -> Result<usize> {
    let base = max_independent_set(&inst.base, guards.clique)?.len();
    let inner = max_independent_set(&union_graph(inst), guards.clique)?.len();
    Ok((base * inst.inner_order()).max(inner * inst.base.order()))
}

/// `α(G ∘_h Γ)` as the heaviest independent set of `G` under the weights
/// `α(h(a))`. The witness is an independent set of the product: a maximum
/// independent set of `h(a)` in each chosen fiber.
///
/// The formula is stated for base order at least 2; on a single vertex the
/// value is `α(h(a))` and the report is flagged.
pub fn alpha_circ(inst: &CircInstance, guards: &Guards) -> Result<InvariantReport> {
    let g = &inst.base;
    if g.has_loops() {
        return Err(Error::Hypothesis("base graph must be loopless".into()));
    }
    let fiber_sets: Vec<Vec<usize>> = (0..g.order())
        .map(|a| max_independent_set(inst.member(a), guards.clique))
        .collect::<Result<_>>()?;
    let weights: Vec<usize> = fiber_sets.iter().map(Vec::len).collect();
    let (value, chosen) = max_weight_independent_set(g, &weights, guards.clique)?;
    let offsets: Vec<usize> = (0..g.order())
        .scan(0, |acc, a| {
            let start = *acc;
            *acc += inst.member(a).order();
            Some(start)
        })
        .collect();
    let witness: Vec<usize> = chosen
        .iter()
        .flat_map(|&a| fiber_sets[a].iter().map(|&x| offsets[a] + x).collect::<Vec<_>>())
        .collect();
    let mut report = InvariantReport::new(Invariant::Alpha, value, Some(InvariantWitness::VertexSet(witness)));
    report.hypotheses_met = g.order() >= 2;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaLowerBounds {
    /// `γ(G) + min_a γ(h(G^a)) - 1`.
    pub theorem: usize,
    /// `γ(G) + γ(h(G)) - 1`.
    pub corollary: usize,
}

/// Lower bounds for `γ(G ⊗_h Γ)`; the first also bounds `γ_t`.
pub fn gamma_otimes_lower(inst: &OtimesInstance, guards: &Guards) -> Result<GammaLowerBounds> {
    let gamma = |g: &Graph| min_dominating_set(g, false, guards.domination).map(|s| s.len());
    let base = gamma(&inst.base)?;
    let local = (0..inst.base.order())
        .map(|a| gamma(&local_union(inst, a)?))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or(0);
    let whole = gamma(&union_graph(inst))?;
    Ok(GammaLowerBounds {
        theorem: (base + local).saturating_sub(1),
        corollary: (base + whole).saturating_sub(1),
    })
}

/// `3γ(G)γ(F)` for a spanning subgraph `F` of every assigned member.
pub fn gamma_otimes_upper(inst: &OtimesInstance, f: &Graph, guards: &Guards) -> Result<usize> {
    if f.order() != inst.inner_order() {
        return Err(Error::InvalidInput(format!(
            "F has order {} but members have order {}",
            f.order(),
            inst.inner_order()
        )));
    }
    for i in inst.used_members() {
        if !f.is_spanning_subgraph_of(inst.family.member(i)) {
            return Err(Error::InvalidInput(format!("F is not a subgraph of member {i}")));
        }
    }
    let gb = min_dominating_set(&inst.base, false, guards.domination)?.len();
    let gf = min_dominating_set(f, false, guards.domination)?.len();
    Ok(3 * gb * gf)
}

/// Inputs of the dominating-set construction. Per-edge sets are keyed by
/// `(min, max)` and must cover every base edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DominationInputs {
    /// Total dominating set of the base.
    pub d: Vec<usize>,
    /// Dominating set of the base inside `d`.
    pub a: Vec<usize>,
    /// Total dominating set of `h(e)` for each edge.
    pub d_e: BTreeMap<(usize, usize), Vec<usize>>,
    /// Dominating set of `h(e)` inside `d_e[e]`.
    pub b_e: BTreeMap<(usize, usize), Vec<usize>>,
}

/// `X = (A × ∪D_e) ∪ (D × ∪B_e)` as sorted product indices after every input
/// set is validated.
pub fn dominating_set_construct(inst: &OtimesInstance, input: &DominationInputs) -> Result<Vec<usize>> {
    let g = &inst.base;
    let bad = |msg: String| Err(Error::InvalidInput(msg));
    let in_range = |s: &[usize], n: usize| s.iter().all(|&v| v < n);
    let subset = |small: &[usize], big: &[usize]| small.iter().all(|v| big.contains(v));
    if !in_range(&input.d, g.order()) || !is_total_dominating(g, &input.d) {
        return bad("D is not a total dominating set of the base".into());
    }
    if !subset(&input.a, &input.d) || !in_range(&input.a, g.order()) || !is_dominating(g, &input.a) {
        return bad("A is not a dominating set of the base inside D".into());
    }
    let n = inst.inner_order();
    let mut union_d = vec![false; n];
    let mut union_b = vec![false; n];
    for (u, v) in g.edges() {
        let m = inst.member(u, v);
        let (Some(de), Some(be)) = (input.d_e.get(&(u, v)), input.b_e.get(&(u, v))) else {
            return bad(format!("missing sets for edge {u}-{v}"));
        };
        if !in_range(de, n) || !is_total_dominating(m, de) {
            return bad(format!("D_e for edge {u}-{v} is not a total dominating set"));
        }
        if !in_range(be, n) || !subset(be, de) || !is_dominating(m, be) {
            return bad(format!("B_e for edge {u}-{v} is not a dominating set inside D_e"));
        }
        de.iter().for_each(|&x| union_d[x] = true);
        be.iter().for_each(|&x| union_b[x] = true);
    }
    let mut x: Vec<usize> = input
        .a
        .iter()
        .flat_map(|&a| (0..n).filter(|&y| union_d[y]).map(move |y| a * n + y))
        .chain(
            input
                .d
                .iter()
                .flat_map(|&a| (0..n).filter(|&y| union_b[y]).map(move |y| a * n + y)),
        )
        .collect();
    x.sort_unstable();
    x.dedup();
    Ok(x)
}

/// `min_D Σ_{a∈D} γ(h(a))` over dominating sets `D` of the base, with the
/// minimizing `D`.
pub fn gamma_circ_upper(inst: &CircInstance, guards: &Guards) -> Result<(usize, Vec<usize>)> {
    let g = &inst.base;
    super::exact::check_guard(g, "dominating set enumeration", guards.domination)?;
    let mut weight_of = BTreeMap::new();
    let weights: Vec<usize> = (0..g.order())
        .map(|a| {
            let idx = inst.h.get(a);
            if let Some(&w) = weight_of.get(&idx) {
                return Ok(w);
            }
            let w = min_dominating_set(inst.member(a), false, guards.domination)?.len();
            weight_of.insert(idx, w);
            Ok(w)
        })
        .collect::<Result<_>>()?;
    let closed: Vec<u64> = g
        .adjacency_masks()
        .iter()
        .enumerate()
        .map(|(v, &m)| m | 1 << v)
        .collect();
    let n = g.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: Option<(usize, u64)> = None;
    // every weight is at least 1, so sets larger than the incumbent lose
    let mut m: u64 = 0;
    loop {
        let size = m.count_ones() as usize;
        if best.is_none_or(|(b, _)| size < b) {
            let covered = super::exact::bits(m).fold(0u64, |c, v| c | closed[v]);
            if covered == all {
                let w: usize = super::exact::bits(m).map(|v| weights[v]).sum();
                if best.is_none_or(|(b, bm)| w < b || (w == b && m < bm)) {
                    best = Some((w, m));
                }
            }
        }
        if m == all {
            break;
        }
        m += 1;
    }
    let (w, m) = best.expect("the whole vertex set dominates");
    Ok((w, super::exact::mask_to_vec(m)))
}

/// `(min{χ(G), χ(h(G))}, min{ω(G), ω(h(G))})`, upper bounds for `χ` and `ω`
/// of `G ⊗_h Γ`.
pub fn chi_omega_otimes_bounds(inst: &OtimesInstance, guards: &Guards) -> Result<(usize, usize)> {
    let union = union_graph(inst);
    let chi = chromatic(&inst.base, guards.coloring)?.0.min(chromatic(&union, guards.coloring)?.0);
    let omega = max_clique(&inst.base, guards.clique)?
        .len()
        .min(max_clique(&union, guards.clique)?.len());
    Ok((chi, omega))
}

/// An assignment reaching `ω(G ⊗_h Γ) = k = min{ω(G), ω(ΣΓ)}`, and `k`.
///
/// Takes the first maximum cliques `{a_i}` of `G` and `{x_i}` of `ΣΓ`, puts
/// on `a_i a_j` the first member containing `x_i x_j` and member 0 on every
/// other edge.
pub fn clique_realizing_assignment(g: &Graph, fam: &GraphFamily, guards: &Guards) -> Result<(EdgeAssignment, usize)> {
    let sigma = sigma_gamma(fam)?;
    let base_clique = max_clique(g, guards.clique)?;
    let inner_clique = max_clique(&sigma, guards.clique)?;
    let k = base_clique.len().min(inner_clique.len());
    let mut pick = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (inner_clique[i], inner_clique[j]);
            let member = (0..fam.len())
                .find(|&m| fam.member(m).has_edge(x, y))
                .expect("every edge of the union lies in some member");
            let (a, b) = (base_clique[i], base_clique[j]);
            pick.insert((a.min(b), a.max(b)), member);
        }
    }
    let h = EdgeAssignment::from_fn(g, |u, v| pick.get(&(u, v)).copied().unwrap_or(0));
    Ok((h, k))
}

/// `χ(G) · max_v χ(h(v))`, an upper bound for `χ(G ∘_h Γ)`.
pub fn chi_circ_upper(inst: &CircInstance, guards: &Guards) -> Result<usize> {
    let base = chromatic(&inst.base, guards.coloring)?.0;
    let inner = (0..inst.family.len())
        .filter(|i| inst.h.as_slice().contains(i))
        .map(|i| chromatic(inst.family.member(i), guards.coloring).map(|c| c.0))
        .collect::<Result<Vec<_>>>()?;
    Ok(base * inner.into_iter().max().unwrap_or(0))
}

/// Replace every fiber `h(v)` by `K_{χ(h(v))}`. The new family lists the
/// needed complete graphs by increasing order.
pub fn reduce_to_complete_fibers(inst: &CircInstance, guards: &Guards) -> Result<CircInstance> {
    let chis = (0..inst.base.order())
        .map(|a| chromatic(inst.member(a), guards.coloring).map(|c| c.0))
        .collect::<Result<Vec<_>>>()?;
    let mut orders = chis.clone();
    orders.sort_unstable();
    orders.dedup();
    let family = GraphFamily::new(orders.iter().map(|&m| Graph::complete(m)).collect())?;
    let idx: Vec<usize> = chis
        .iter()
        .map(|c| orders.binary_search(c).expect("order listed"))
        .collect();
    let h = VertexAssignment::new(&inst.base, family.len(), idx)?;
    CircInstance::new(inst.base.clone(), family, h)
}

/// Exact `χ` of a `∘_h` product together with its reduced counterpart.
pub fn chi_circ_pair(inst: &CircInstance, guards: &Guards) -> Result<(ProductGraph, usize, usize)> {
    let product = circ_h(inst);
    let reduced = circ_h(&reduce_to_complete_fibers(inst, guards)?);
    let a = chromatic(&product.graph, guards.coloring)?.0;
    let b = chromatic(&reduced.graph, guards.coloring)?.0;
    Ok((product, a, b))
}
