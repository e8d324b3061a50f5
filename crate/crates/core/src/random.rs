//! Seeded random instances.
//!
//! The generator is `ChaCha8Rng::seed_from_u64(seed)` from `rand_chacha`;
//! every draw goes through `Rng::gen_range` / `Rng::gen_bool` from `rand`
//! 0.8, so a seed produces the same instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{CircInstance, EdgeAssignment, GraphFamily, Instance, OtimesInstance, VertexAssignment};
use crate::graph::Graph;
use crate::io::Kind;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_for(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Constraints on one random graph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GraphSpec {
    pub order: usize,
    /// Probability of each non-forced edge.
    pub density: f64,
    pub connected: bool,
    pub min_degree_one: bool,
    /// `Some(true)`: bipartite only; `Some(false)`: nonbipartite only.
    pub bipartite: Option<bool>,
}

impl GraphSpec {
    pub fn new(order: usize, density: f64) -> Self {
        Self {
            order,
            density,
            connected: false,
            min_degree_one: false,
            bipartite: None,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn min_degree_one(mut self) -> Self {
        self.min_degree_one = true;
        self
    }

    pub fn bipartite(mut self, b: Option<bool>) -> Self {
        self.bipartite = b;
        self
    }

    fn check(&self) -> Result<()> {
        let unsat = |msg: &str| Err(Error::InvalidInput(format!("unsatisfiable graph constraints: {msg}")));
        if !(0.0..=1.0).contains(&self.density) {
            return unsat("density must lie in [0, 1]");
        }
        if self.order == 0 {
            return unsat("order must be positive");
        }
        if self.min_degree_one && self.order == 1 {
            return unsat("a single vertex cannot have degree one");
        }
        if self.min_degree_one && !self.connected && self.density == 0.0 {
            return unsat("density 0 leaves every vertex isolated");
        }
        if self.bipartite == Some(false) && (self.order < 3 || self.density == 0.0) {
            return unsat("a nonbipartite graph needs at least 3 vertices and positive density");
        }
        Ok(())
    }
}

const ATTEMPTS: usize = 10_000;

fn attempt(rng: &mut InstanceRng, spec: &GraphSpec) -> Graph {
    let n = spec.order;
    let mut edges = Vec::new();
    if spec.connected {
        // random spanning tree: each vertex after the first hooks onto an earlier one
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for i in 1..n {
            let j = rng.gen_range(0..i);
            edges.push((perm[i], perm[j]));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(spec.density) {
                edges.push((u, v));
            }
        }
    }
    let mut g = Graph::new(n, edges.iter().copied()).expect("valid edges");
    if spec.min_degree_one {
        for v in 0..n {
            if g.degree(v) == 0 {
                let mut w = rng.gen_range(0..n - 1);
                if w >= v {
                    w += 1;
                }
                edges.push((v, w));
                g = Graph::new(n, edges.iter().copied()).expect("valid edges");
            }
        }
    }
    g
}

/// A random graph meeting `spec`, by construction where possible and
/// rejection for bipartiteness.
pub fn random_graph(rng: &mut InstanceRng, spec: &GraphSpec) -> Result<Graph> {
    spec.check()?;
    for _ in 0..ATTEMPTS {
        let g = attempt(rng, spec);
        if spec.bipartite.is_none_or(|b| g.is_bipartite() == b) {
            return Ok(g);
        }
    }
    Err(Error::InvalidInput(format!(
        "no graph met the constraints after {ATTEMPTS} attempts"
    )))
}

/// Parameters of [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RandomParams {
    pub kind: Kind,
    pub base_order: usize,
    pub inner_order: usize,
    pub edge_density: f64,
    pub family_size: usize,
    pub base_connected: bool,
    pub member_connected: bool,
    pub member_min_degree_one: bool,
    pub member_bipartite: Option<bool>,
    /// `circ` only: member orders drawn from `1..=inner_order`.
    pub mixed_inner_orders: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            kind: Kind::Otimes,
            base_order: 4,
            inner_order: 4,
            edge_density: 0.5,
            family_size: 2,
            base_connected: true,
            member_connected: false,
            member_min_degree_one: false,
            member_bipartite: None,
            mixed_inner_orders: false,
        }
    }
}

/// A deterministic function of `(seed, params)`.
pub fn random_instance(seed: u64, params: &RandomParams) -> Result<Instance> {
    random_instance_with(&mut rng_for(seed), params)
}

pub fn random_instance_with(rng: &mut InstanceRng, p: &RandomParams) -> Result<Instance> {
    if p.family_size == 0 {
        return Err(Error::InvalidInput("family must have at least one member".into()));
    }
    let mut base_spec = GraphSpec::new(p.base_order, p.edge_density);
    base_spec.connected = p.base_connected;
    let base = random_graph(rng, &base_spec)?;
    let mut members = Vec::with_capacity(p.family_size);
    for _ in 0..p.family_size {
        let order = if p.kind == Kind::Circ && p.mixed_inner_orders {
            rng.gen_range(1..=p.inner_order.max(1))
        } else {
            p.inner_order
        };
        let spec = GraphSpec {
            order,
            density: p.edge_density,
            connected: p.member_connected,
            min_degree_one: p.member_min_degree_one,
            bipartite: p.member_bipartite,
        };
        members.push(random_graph(rng, &spec)?);
    }
    let family = GraphFamily::new(members)?;
    let k = family.len();
    Ok(match p.kind {
        Kind::Otimes => {
            let h = EdgeAssignment::from_fn(&base, |_, _| rng.gen_range(0..k));
            OtimesInstance::new(base, family, h)?.into()
        }
        Kind::Circ => {
            let idx = (0..base.order()).map(|_| rng.gen_range(0..k)).collect();
            let h = VertexAssignment::new(&base, k, idx)?;
            CircInstance::new(base, family, h)?.into()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_instance;

    #[test]
    fn deterministic() {
        let p = RandomParams::default();
        let a = serialize_instance(&random_instance(1, &p).unwrap());
        let b = serialize_instance(&random_instance(1, &p).unwrap());
        assert_eq!(a, b);
        let c = serialize_instance(&random_instance(2, &p).unwrap());
        assert_ne!(a, c);
    }

    #[test]
    fn constraints_are_honored() {
        let p = RandomParams {
            member_bipartite: Some(false),
            inner_order: 5,
            family_size: 3,
            ..RandomParams::default()
        };
        for seed in 0..20 {
            let inst = random_instance(seed, &p).unwrap();
            assert!(inst.family().members().iter().all(|m| !m.is_bipartite()));
            assert!(inst.base().is_connected());
        }
        let p = RandomParams {
            member_min_degree_one: true,
            member_connected: true,
            member_bipartite: Some(true),
            edge_density: 0.3,
            ..RandomParams::default()
        };
        for seed in 0..20 {
            let inst = random_instance(seed, &p).unwrap();
            assert!(inst
                .family()
                .members()
                .iter()
                .all(|m| m.min_degree() >= 1 && m.is_connected() && m.is_bipartite()));
        }
    }

    #[test]
    fn unsatisfiable_constraints() {
        let p = RandomParams {
            edge_density: 0.0,
            base_connected: false,
            member_min_degree_one: true,
            ..RandomParams::default()
        };
        assert!(matches!(random_instance(1, &p), Err(Error::InvalidInput(_))));
        let one = RandomParams {
            inner_order: 1,
            member_connected: true,
            member_min_degree_one: true,
            ..RandomParams::default()
        };
        assert!(random_instance(1, &one).is_err());
        let p = RandomParams {
            inner_order: 2,
            member_bipartite: Some(false),
            ..RandomParams::default()
        };
        assert!(random_instance(1, &p).is_err());
    }
}
