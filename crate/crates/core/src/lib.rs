//! Requirements-to-code traceability recovery driven by consensual biterms.
//!
//! A biterm is an unordered pair of normalized terms. Requirement sentences
//! yield biterms through dependency relations, code identifiers yield them by
//! pairing their split fragments. The biterms found on both sides (the
//! consensual set) are injected into the IR corpus and then used to reweight
//! the initial similarity of every candidate link.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the Java
//! source walker and the command-line driver live in the `bitrace` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod biterm;
pub mod enrich;
mod error;
pub mod eval;
pub mod ir;
pub mod java;
pub mod model;
pub mod nlp;
pub mod pipeline;
pub mod rerank;
pub mod text;

pub use error::{Error, Result};
