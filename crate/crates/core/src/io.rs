//! Instance documents (JSON) and the edge-list text format for bare graphs.
//!
//! Canonical instance output is compact JSON with keys in alphabetical order,
//! edges sorted with `u <= v`, assignments sorted by key, and a trailing
//! newline. Parsing then serializing a canonical document reproduces it
//! byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{CircInstance, EdgeAssignment, GraphFamily, Instance, OtimesInstance, VertexAssignment};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Otimes,
    Circ,
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "otimes" => Ok(Kind::Otimes),
            "circ" => Ok(Kind::Circ),
            _ => Err(Error::InvalidInput(format!("unknown kind {s:?}, expected otimes or circ"))),
        }
    }
}

/// On-disk form of an instance. Assignment keys are `"u-v"` for `otimes`
/// and `"v"` for `circ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub assignment: Vec<(String, usize)>,
    pub base: Graph,
    pub family: Vec<Graph>,
    pub kind: Kind,
}

fn parse_edge_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("assignment key {key:?} is not of the form \"u-v\""));
    let (u, v) = key.split_once('-').ok_or_else(bad)?;
    Ok((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
}

impl InstanceDocument {
    pub fn from_instance(inst: &Instance) -> Self {
        match inst {
            Instance::Otimes(i) => InstanceDocument {
                assignment: i.h.iter().map(|((u, v), m)| (format!("{u}-{v}"), m)).collect(),
                base: i.base.clone(),
                family: i.family.members().to_vec(),
                kind: Kind::Otimes,
            },
            Instance::Circ(i) => InstanceDocument {
                assignment: i.h.as_slice().iter().enumerate().map(|(v, &m)| (v.to_string(), m)).collect(),
                base: i.base.clone(),
                family: i.family.members().to_vec(),
                kind: Kind::Circ,
            },
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        let family = GraphFamily::new(self.family)?;
        match self.kind {
            Kind::Otimes => {
                let mut map = BTreeMap::new();
                for (key, m) in &self.assignment {
                    let (u, v) = parse_edge_key(key)?;
                    let e = (u.min(v), u.max(v));
                    if map.insert(e, *m).is_some() {
                        return Err(Error::InvalidAssignment(format!("edge {}-{} assigned twice", e.0, e.1)));
                    }
                }
                let h = EdgeAssignment::new(&self.base, family.len(), map)?;
                Ok(OtimesInstance::new(self.base, family, h)?.into())
            }
            Kind::Circ => {
                let mut idx = vec![None; self.base.order()];
                for (key, m) in &self.assignment {
                    let v: usize = key
                        .parse()
                        .map_err(|_| Error::Parse(format!("assignment key {key:?} is not a vertex")))?;
                    self.base.check_vertex(v)?;
                    if idx[v].replace(*m).is_some() {
                        return Err(Error::InvalidAssignment(format!("vertex {v} assigned twice")));
                    }
                }
                let idx = idx
                    .into_iter()
                    .enumerate()
                    .map(|(v, m)| m.ok_or_else(|| Error::InvalidAssignment(format!("vertex {v} has no member"))))
                    .collect::<Result<Vec<_>>>()?;
                let h = VertexAssignment::new(&self.base, family.len(), idx)?;
                Ok(CircInstance::new(self.base, family, h)?.into())
            }
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.into_instance()
}

pub fn serialize_instance(inst: &Instance) -> String {
    to_canonical_json(&InstanceDocument::from_instance(inst))
}

/// Compact JSON plus a newline. Structs keep declaration order, which is
/// alphabetical for every document type here.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    serde_json::from_str(text).map_err(json_error)
}

/// `n m [loops]` on the first line, then `m` lines `u v`. Blank lines are
/// ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (no, header) = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let num = |s: &str, line: usize| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("line {line}: expected a count, found {s:?}")))
    };
    let (n, m, loops) = match fields.as_slice() {
        [n, m] => (num(n, no)?, num(m, no)?, false),
        [n, m, "loops"] => (num(n, no)?, num(m, no)?, true),
        _ => return Err(Error::Parse(format!("line {no}: header must be \"n m [loops]\""))),
    };
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines.by_ref().take(m) {
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            [u, v] => edges.push((num(u, no)?, num(v, no)?)),
            _ => return Err(Error::Parse(format!("line {no}: expected \"u v\""))),
        }
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header promises {m} edges, found {}", edges.len())));
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::Parse(format!("line {no}: unexpected content after {m} edges")));
    }
    Graph::build(n, edges, loops)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}{}\n", g.order(), g.size(), if g.allows_loops() { " loops" } else { "" });
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Accept either a JSON graph object or the edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_edge_list(text)
    }
}
