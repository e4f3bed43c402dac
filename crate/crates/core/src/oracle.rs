//! Brute-force ground truth for the analytic routes.
//!
//! [`busy_dist_bruteforce`] pushes probability mass through the lattice with
//! the raw transition law of the embedded chain; it shares no formula code
//! with [`crate::exact`]. [`busy_dist_enumeration`] sums path weights over
//! every Dyck path instead.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{BusyPeriodDistribution, Method};
use crate::model::Model;
use crate::paths::{enumerate_dyck, first_return, path_weight};
use crate::rational::ExactRational;

pub const DEFAULT_CAP: usize = 16;
pub const ENUMERATION_CAP: usize = 14;

/// A lattice state: `services ≤ arrivals ≤ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeState {
    pub services: usize,
    pub arrivals: usize,
}

impl LatticeState {
    pub fn on_diagonal(&self) -> bool {
        self.services == self.arrivals
    }
}

/// Result of one forward sweep over the lattice, killing mass on its first
/// visit to a nonzero diagonal state `(k, k)`.
#[derive(Debug, Clone)]
pub struct PhaseSweep {
    /// `entry[n − 1][i] = p_n(i)`: mass that first enters phase `n` at state
    /// `(i, n)` without having touched the diagonal; `i ∈ 0..=n`.
    pub entry: Vec<Vec<ExactRational>>,
    /// `absorbed[k − 1] = s_k`: mass whose first diagonal visit is `(k, k)`.
    pub absorbed: Vec<ExactRational>,
}

impl PhaseSweep {
    /// For each phase `n`: `Σ_i p_n(i) + Σ_{k<n} s_k`. Every entry is one.
    pub fn conservation(&self) -> Vec<ExactRational> {
        let mut before = ExactRational::zero();
        self.entry
            .iter()
            .enumerate()
            .map(|(idx, row)| {
                let total = row.iter().fold(before.clone(), |a, x| a + x);
                before += &self.absorbed[idx];
                total
            })
            .collect()
    }
}

/// Forward dynamic programme over the lattice.
///
/// From `(i, j)` with `i < j` the chain moves to `(i + 1, j)` with
/// probability `μ/(μ + λ_j)` and to `(i, j + 1)` otherwise. `(0, 0)` steps up
/// with probability one.
pub fn sweep(model: &Model) -> PhaseSweep {
    let n = model.n();
    let mu = model.mu();
    let one = ExactRational::one();

    let mut entry = Vec::with_capacity(n);
    let mut absorbed = vec![ExactRational::zero(); n];
    // Phase 1 is entered at (0, 1) with certainty.
    let mut current = vec![ExactRational::one(), ExactRational::zero()];

    for j in 1..=n {
        let lambda_j = &model.lambda_seq()[j - 1];
        let right = mu / (mu + lambda_j);
        let up = &one - &right;
        entry.push(current.clone());

        let mut next = vec![ExactRational::zero(); j + 2];
        let mut carry = ExactRational::zero();
        for i in 0..j {
            let here = &current[i] + &carry;
            let moved = &here * &right;
            if i + 1 == j {
                absorbed[j - 1] += moved;
                carry = ExactRational::zero();
            } else {
                carry = moved;
            }
            if j < n {
                next[i] += &here * &up;
            }
        }
        current = next;
    }
    PhaseSweep { entry, absorbed }
}

fn check_cap(model: &Model, cap: usize) -> Result<()> {
    if model.n() > cap {
        Err(Error::CapExceeded { n: model.n(), cap })
    } else {
        Ok(())
    }
}

pub fn busy_dist_bruteforce(model: &Model) -> Result<BusyPeriodDistribution> {
    busy_dist_bruteforce_capped(model, DEFAULT_CAP)
}

/// Lattice DP with an explicit size cap.
pub fn busy_dist_bruteforce_capped(model: &Model, cap: usize) -> Result<BusyPeriodDistribution> {
    check_cap(model, cap)?;
    Ok(BusyPeriodDistribution::new(
        sweep(model).absorbed,
        Method::Oracle,
        model.digest(),
    ))
}

/// Groups the weight of every Dyck path of order `N` by its first return.
pub fn busy_dist_enumeration(model: &Model) -> Result<BusyPeriodDistribution> {
    check_cap(model, ENUMERATION_CAP)?;
    let mut s = vec![ExactRational::zero(); model.n()];
    for u in enumerate_dyck(model.n()) {
        let k = first_return(&u);
        s[k - 1] += path_weight(model, &u)?;
    }
    Ok(BusyPeriodDistribution::new(s, Method::Oracle, model.digest()))
}

/// `p_n(i)`: probability that the chain first reaches phase `n` at `(i, n)`
/// without visiting the diagonal.
pub fn p_n_i_bruteforce(model: &Model, n: usize, i: usize) -> Result<ExactRational> {
    if n < 1 || n > model.n() || i > n {
        return Err(Error::IndexOutOfRange(format!(
            "p_n(i) needs 1 <= n <= {} and 0 <= i <= n, got n = {n}, i = {i}",
            model.n()
        )));
    }
    check_cap(model, DEFAULT_CAP)?;
    Ok(sweep(model).entry[n - 1][i].clone())
}
