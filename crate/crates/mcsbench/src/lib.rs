//! File IO, command line and HTTP front ends for the MCS benchmark corpus.

pub mod cli;
pub mod corpus;
pub mod manifests;
pub mod output;
pub mod server;
