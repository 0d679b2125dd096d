//! Random graph generators: rank-1 inhomogeneous graphs under three kernels,
//! and approximately uniform graphs with a prescribed degree sequence.

mod irg;
mod kernel;
mod switch;

pub use irg::{sample_irg, sample_irg_naive};
pub use kernel::{kernel_probability, urg_edge_probability, KernelKind, WeightVector};
pub use switch::{default_swap_budget, initial_realization, switch_chain_sample, SwitchChain};
