//! Exact and brute-force solvers for placing the edges of a small graph `H`
//! onto a host graph `G` so that the union becomes connected or
//! 2-edge-connected at minimum weight.

pub mod anchors;
pub mod assignment;
pub mod blocks;
pub mod connect;
pub mod cover;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod solver;
pub mod two_connect;
pub mod unweighted;

pub use connect::{decide_connect, solve_connect, solve_connect_with};
pub use error::{Error, Result};
pub use generate::Instance;
pub use graph::{stats, superpose, Graph, GraphStats, Mapping, WeightFn};
pub use oracle::{brute_force_feasible, brute_force_optimum, edge_connectivity};
pub use solver::{Solution, SolverConfig};
pub use two_connect::{decide_2connect, solve_2connect, solve_2connect_with};
pub use unweighted::{construct_2connect, construct_connect, feasible_2connect, feasible_connect};

/// Optimum for `k ∈ {1, 2}`.
pub fn solve(g: &Graph, h: &Graph, w: &WeightFn, k: usize, cfg: &SolverConfig) -> Result<Option<Solution>> {
    match k {
        1 => solve_connect_with(g, h, w, cfg),
        2 => solve_2connect_with(g, h, w, cfg),
        _ => Err(Error::InvalidParameter(format!("k must be 1 or 2, got {k}"))),
    }
}
