//! Criterion benchmarks for the busy-period routes; see `benches/`.

use busyq_core::Model;

/// Proportional model with `λ = μ = 1`, the standard benchmark workload.
pub fn unit_model(n: usize) -> Model {
    Model::proportional(n, 1, 1).expect("valid model")
}
