//! Exact busy-period distribution of the transitory Δ(i)/M/1 queue.
//!
//! A single server faces a finite pool of `N` customers. Customer `j + 1`
//! arrives at rate `λ_j` once `j` customers have arrived, and services are
//! exponential with rate `μ`. The embedded jump chain traces a Dyck path from
//! `(0, 0)` to `(N, N)`; the size of the first busy period is the order of the
//! first excursion of that path above the diagonal.
//!
//! The crate computes the distribution `(s_1, …, s_N)` of that size along
//! several independent routes, all in exact rational arithmetic:
//!
//! * [`exact::busy_dist_recursion`]: the generating-function recursion,
//! * [`exact::busy_dist_matrix`]: the lower-triangular system `A·s = b`,
//! * [`exact::busy_dist_explicit`]: the alternating-sign sum over feasible
//!   allocations,
//! * [`oracle::busy_dist_bruteforce`] and [`oracle::busy_dist_enumeration`]:
//!   lattice dynamic programming and full Dyck-path enumeration,
//!
//! plus a seeded Monte Carlo estimator in [`montecarlo`].

pub mod error;
pub mod exact;
pub mod model;
pub mod montecarlo;
pub mod oracle;
pub mod paths;
pub mod rational;

pub use error::{Error, Result};
pub use exact::{BusyPeriodDistribution, Method, TriangularMatrix};
pub use model::{Model, RateSource};
pub use paths::{DyckPath, FeasibleAllocation};
pub use rational::ExactRational;
