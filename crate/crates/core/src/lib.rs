//! Partial covers of points on a line by intervals.
//!
//! * [`model`]: instances, normalization and the coverage measure.
//! * [`greedy`]: the greedy permutation and its competitive ratio.
//! * [`dp`]: exact optimal k-cover with a resumable dynamic program.
//! * [`approx`]: `(1 + eps) k`-interval covers beating the optimal k-cover.
//! * [`set_system`]: general set systems, brute force, and a family where
//!   optimal covers lose diminishing returns.

pub mod approx;
pub mod dp;
pub mod error;
pub mod generate;
pub mod greedy;
pub mod io;
pub mod model;
pub mod set_system;

pub use approx::{solve_approx, ApproxParams, ApproxResult};
pub use dp::{profit_sequence, solve, DpSolver, ProfitSequence};
pub use error::{CoverError, Result};
pub use greedy::{greedy_permutation, ratio_report, GreedyResult, RatioReport};
pub use model::{normalize, Cover, Instance, Interval};
pub use set_system::{CounterexampleSpec, SetSystem};
