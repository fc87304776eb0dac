//! Experiment harness and verification suite behind the `modgraph` binary.

pub mod experiments;
pub mod verify;
