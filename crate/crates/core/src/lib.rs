//! Core data model, converters, triple store and query engine for the MCS
//! Benchmark ontology. `no_std` with `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod adapters;
pub mod analytics;
pub mod jsonld;
pub mod model;
pub mod ntriples;
pub mod query;
pub mod store;
pub mod vocab;
