//! Generalized graph products `G ⊗_h Γ` and `G ∘_h Γ`.
//!
//! `⊗_h` generalizes the direct product: every base edge `ab` carries its own
//! inner graph `h(ab)` on a shared vertex set `V`. `∘_h` generalizes the
//! lexicographic product: every base vertex `a` is replaced by its own graph
//! `h(a)`. The crate builds both products, decides their connectivity through
//! structural characterizations, computes and bounds their invariants, and
//! searches for `⊗_h`-decompositions. Every characterization is paired with a
//! brute-force check on the constructed product.

pub mod catalog;
pub mod connectivity;
pub mod cuts;
pub mod error;
pub mod family;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod product;
pub mod random;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use family::{CircInstance, EdgeAssignment, GraphFamily, Instance, OtimesInstance, VertexAssignment};
pub use graph::{Graph, Partition};
pub use product::{ProductGraph, ProductKind};
