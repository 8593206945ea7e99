//! Constraint propagation over finite relational structures.
//!
//! The crate treats a CSP instance as a pair of similar structures `(A, B)`
//! and asks whether a homomorphism `A -> B` exists. It provides:
//!
//! - [`structure`]: signatures, structures, products, expansions, the power
//!   structure `℘(B)` and its `Sing`/`UnionSing` products, plus the JSON format.
//! - [`hom`]: homomorphism checking, search (propagation-pruned backtracking)
//!   and a naive enumeration oracle.
//! - [`consistency`]: arc consistency and its look-ahead, peek and singleton
//!   extensions, plus weak/strong strategy checkers.
//! - [`algebra`]: finite operation tables, polymorphisms, majority and
//!   2-semilattice laws, congruences, subalgebra closure, almost-trivial relations.
//! - [`solvability`]: deciders for which templates each method solves, and
//!   `k`-strategies.
//! - [`fixtures`]: the separating example structures and seeded generators.
//!
//! With the default `parallel` feature, independent work (peek arc consistency
//! probes, batch evaluation) can be dispatched on rayon's pool; results are
//! identical to the sequential path.

pub mod algebra;
pub mod consistency;
mod error;
pub mod fixtures;
pub mod hom;
mod instance;
pub mod par;
pub mod solvability;
pub mod structure;
mod valueset;

pub use error::{Error, Result};
pub use instance::{Assignment, Instance, PartialHom};
pub use structure::{Relation, Signature, Structure, Symbol};
pub use valueset::ValueSet;
