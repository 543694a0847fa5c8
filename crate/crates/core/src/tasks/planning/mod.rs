//! Path planning tasks: TSP and Hamiltonian Cycle.

pub mod hamiltonian;
pub mod tsp;
