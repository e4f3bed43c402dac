use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::model::Model;

/// Per-model quantities shared by the analytic routes, converted to `T`.
///
/// `run(l, n)` caches `∏_{k=l}^{n−1} λ_k / (λ_k − λ_n)` for `1 ≤ l ≤ n ≤ N`,
/// which is also `∏_{k=l}^{n−1} G_{ρ_k}(1/ρ_n)`; `run(n, n) = 1`.
#[derive(Debug, Clone)]
pub(crate) struct RateTable<T> {
    n: usize,
    rho: Vec<T>,
    // runs[n - 1][l - 1]
    runs: Vec<Vec<T>>,
}

impl<T: Scalar> RateTable<T> {
    pub(crate) fn new(model: &Model) -> Result<Self> {
        let n = model.n();
        let lambda: Vec<T> = model.lambda_seq().iter().map(T::from_exact).collect();
        let rho: Vec<T> = model.rhos().iter().map(T::from_exact).collect();
        let exact = model.lambda_seq();

        let mut runs = Vec::with_capacity(n);
        for top in 1..=n {
            let mut row = vec![T::one(); top];
            for l in (1..top).rev() {
                if exact[l - 1] == exact[top - 1] {
                    return Err(Error::DegenerateRates { k: l, n: top });
                }
                let ratio = lambda[l - 1].clone() / (lambda[l - 1].clone() - lambda[top - 1].clone());
                row[l - 1] = ratio * row[l].clone();
            }
            runs.push(row);
        }
        Ok(RateTable { n, rho, runs })
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn rho(&self, j: usize) -> &T {
        &self.rho[j - 1]
    }

    pub(crate) fn run(&self, l: usize, n: usize) -> &T {
        &self.runs[n - 1][l - 1]
    }
}
