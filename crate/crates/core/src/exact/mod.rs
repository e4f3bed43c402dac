//! The analytic routes to the busy-period distribution: the recursion, the
//! triangular linear system and its explicit inverse, the alternating-sign
//! sum over feasible allocations, the phase generating functions, and the
//! joint law of all busy periods.
//!
//! Every route is generic over [`Scalar`]; the exact entry points use
//! [`ExactRational`](crate::rational::ExactRational) and the `*_as::<f64>`
//! variants exist for benchmarking and cancellation measurement only.

mod distribution;
mod explicit;
mod float;
mod gf;
mod joint;
mod matrix;
mod rates;
mod recursion;
mod scalar;

pub use distribution::{BusyPeriodDistribution, Method};
pub use explicit::{
    a_inverse_explicit, a_inverse_explicit_as, b_coefficient, b_coefficient_binomial,
    busy_dist_explicit, busy_dist_explicit_as, explicit_term_mass, TermMass,
};
pub use float::{cancellation_report, CancellationReport};
pub use gf::{gf_coefficients, gf_evaluate, interpolate, GeneratingFunctionValue};
pub use joint::{joint_busy_dist, JointDistribution};
pub use matrix::{
    busy_dist_matrix, busy_dist_matrix_as, invert_lower_triangular, matrix_a, matrix_a_as,
    vector_b, vector_b_as, TriangularMatrix,
};
pub use recursion::{
    busy_dist_recursion, busy_dist_recursion_as, busy_dist_recursion_binomial,
    busy_dist_recursion_binomial_as,
};
pub use scalar::Scalar;
