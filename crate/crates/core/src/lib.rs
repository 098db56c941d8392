//! Exact Hecke algebra modules attached to W-digraphs and W-graphs.
//!
//! Scalars live in ℚ(u) ([`arith::RatFun`]); a module is a [`coxeter::Representation`]
//! of generator matrices over the vertex basis. The [`compare`] module
//! searches for isomorphisms and re-derives, on a certified pair, the
//! statement that a W-digraph whose module is a W-graph module is acyclic
//! with matching In-set counts.

pub mod arith;
pub mod builders;
pub mod compare;
pub mod coxeter;
pub mod error;
pub mod io;
pub mod linalg;
pub mod search;
pub mod selftest;
pub mod wdigraph;
pub mod wgraph;

pub use error::{Error, Result};
