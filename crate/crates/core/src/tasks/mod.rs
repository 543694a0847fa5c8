//! Per-task generators, verifiers and baseline solvers.

pub mod graph;
pub mod partition;
pub mod planning;
pub mod scheduling;
pub mod selection;
