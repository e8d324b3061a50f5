//! Exact invariants of small graphs and the product bounds built on them.

mod bounds;
mod exact;
mod tuple;

pub use bounds::*;
pub use exact::*;
pub use tuple::*;

use serde::Serialize;

use crate::cuts::{kappa_exact, lambda_exact, min_edge_cut, min_vertex_cut, ENUMERATION_GUARD};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Alpha,
    Omega,
    Chi,
    Gamma,
    GammaT,
    Kappa,
    Lambda,
    ChiH,
}

impl std::str::FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "alpha" => Self::Alpha,
            "omega" => Self::Omega,
            "chi" => Self::Chi,
            "gamma" => Self::Gamma,
            "gamma_t" => Self::GammaT,
            "kappa" => Self::Kappa,
            "lambda" => Self::Lambda,
            "chi_h" => Self::ChiH,
            _ => return Err(Error::InvalidInput(format!("unknown invariant {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "value")]
pub enum InvariantWitness {
    VertexSet(Vec<usize>),
    Coloring(Vec<usize>),
    EdgeSet(Vec<(usize, usize)>),
    TupleColoring(TupleColoring),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub kind: BoundKind,
    pub value: usize,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub invariant: Invariant,
    pub value: usize,
    pub witness: Option<InvariantWitness>,
    pub bounds: Vec<BoundCheck>,
    /// False when a formula was evaluated outside its stated hypotheses.
    pub hypotheses_met: bool,
}

impl InvariantReport {
    pub fn new(invariant: Invariant, value: usize, witness: Option<InvariantWitness>) -> Self {
        Self {
            invariant,
            value,
            witness,
            bounds: Vec::new(),
            hypotheses_met: true,
        }
    }

    /// Record a bound and whether the exact value respects it.
    pub fn with_bound(mut self, name: impl Into<String>, kind: BoundKind, value: usize) -> Self {
        let satisfied = match kind {
            BoundKind::Lower => self.value >= value,
            BoundKind::Upper => self.value <= value,
            BoundKind::Equal => self.value == value,
        };
        self.bounds.push(BoundCheck {
            name: name.into(),
            kind,
            value,
            satisfied,
        });
        self
    }

    pub fn all_bounds_satisfied(&self) -> bool {
        self.bounds.iter().all(|b| b.satisfied)
    }
}

/// Exact value of `which` on `g` with a witness.
///
/// `ChiH` needs demands and is served by [`h_tuple_chromatic`]. The κ and λ
/// witnesses are minimum cuts and are only produced up to the enumeration
/// guard.
pub fn exact(g: &Graph, which: Invariant, guards: &Guards) -> Result<InvariantReport> {
    use InvariantWitness as W;
    let report = match which {
        Invariant::Alpha => {
            let s = max_independent_set(g, guards.clique)?;
            InvariantReport::new(which, s.len(), Some(W::VertexSet(s)))
        }
        Invariant::Omega => {
            let s = max_clique(g, guards.clique)?;
            InvariantReport::new(which, s.len(), Some(W::VertexSet(s)))
        }
        Invariant::Chi => {
            let (k, colors) = chromatic(g, guards.coloring)?;
            InvariantReport::new(which, k, Some(W::Coloring(colors)))
        }
        Invariant::Gamma | Invariant::GammaT => {
            let s = min_dominating_set(g, which == Invariant::GammaT, guards.domination)?;
            InvariantReport::new(which, s.len(), Some(W::VertexSet(s)))
        }
        Invariant::Kappa if g.order() <= ENUMERATION_GUARD => {
            let (k, cut) = min_vertex_cut(g, ENUMERATION_GUARD)?;
            InvariantReport::new(which, k, Some(W::VertexSet(cut)))
        }
        Invariant::Kappa => InvariantReport::new(which, kappa_exact(g), None),
        Invariant::Lambda if g.order() <= ENUMERATION_GUARD => {
            let (l, cut) = min_edge_cut(g, ENUMERATION_GUARD)?;
            InvariantReport::new(which, l, Some(W::EdgeSet(cut)))
        }
        Invariant::Lambda => InvariantReport::new(which, lambda_exact(g), None),
        Invariant::ChiH => {
            return Err(Error::InvalidInput("chi_h needs per-vertex demands".into()));
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_for_c5() {
        let c5 = Graph::cycle(5);
        let g = Guards::default();
        let chi = exact(&c5, Invariant::Chi, &g).unwrap();
        assert_eq!(chi.value, 3);
        let Some(InvariantWitness::Coloring(c)) = &chi.witness else { panic!() };
        assert!(is_proper_coloring(&c5, c));
        assert_eq!(exact(&c5, Invariant::Alpha, &g).unwrap().value, 2);
        assert_eq!(exact(&c5, Invariant::Gamma, &g).unwrap().value, 2);
        assert_eq!(exact(&c5, Invariant::Omega, &g).unwrap().value, 2);
        assert_eq!(exact(&Graph::cycle(4), Invariant::GammaT, &g).unwrap().value, 2);
        let kappa = exact(&c5, Invariant::Kappa, &g).unwrap();
        assert_eq!(kappa.witness, Some(InvariantWitness::VertexSet(vec![0, 2])));
        assert!(exact(&c5, Invariant::ChiH, &g).is_err());
    }

    #[test]
    fn bound_flags() {
        let r = InvariantReport::new(Invariant::Chi, 3, None)
            .with_bound("upper", BoundKind::Upper, 4)
            .with_bound("lower", BoundKind::Lower, 4);
        assert_eq!(r.bounds.iter().map(|b| b.satisfied).collect::<Vec<_>>(), [true, false]);
        assert!(!r.all_bounds_satisfied());
        assert_eq!("gamma_t".parse::<Invariant>().unwrap(), Invariant::GammaT);
        assert!("beta".parse::<Invariant>().is_err());
    }
}
