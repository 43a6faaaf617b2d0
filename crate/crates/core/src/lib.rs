//! Symbolic branching rules for irreducible representations of `SL2(k)`,
//! `k` a `p`-adic field with `p` odd, restricted to the maximal compact
//! subgroup `K = SL2(R)`.
//!
//! Field elements are kept at square-class resolution; every formula here
//! consumes only valuations and unit square classes.

pub mod arith;
pub mod engine;
pub mod error;
pub mod grep;
pub mod ktype;
pub mod tori;

pub use error::{Error, Result};
