//! Subset selection tasks: Subset Sum, Set Cover and Knapsack.

pub mod knapsack;
pub mod set_cover;
pub mod subset_sum;
