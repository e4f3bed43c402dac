//! Dyck paths encoded as right-jump counts per phase, and the feasible
//! allocations: Dyck paths that touch the diagonal after every right run.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::Model;
use crate::rational::{pow, ExactRational};

/// A Dyck path of order `n` as `(u_1, …, u_n)`, where `u_j` is the number of
/// right jumps (services) made while `j` customers have arrived.
///
/// Invariants: `u_1 + … + u_k ≤ k` for every `k < n` and the total is `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    jumps: Vec<u32>,
}

impl DyckPath {
    pub fn new(jumps: Vec<u32>) -> Result<Self> {
        if is_dyck(&jumps) {
            Ok(DyckPath { jumps })
        } else {
            Err(Error::InvalidPath(jumps))
        }
    }

    pub fn order(&self) -> usize {
        self.jumps.len()
    }

    pub fn jumps(&self) -> &[u32] {
        &self.jumps
    }

    pub fn into_jumps(self) -> Vec<u32> {
        self.jumps
    }

    /// Sizes of the successive excursions above the diagonal, i.e. the number
    /// of customers served in each busy period. Sums to the order.
    pub fn excursion_lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prefix = 0usize;
        let mut last = 0usize;
        for (idx, &u) in self.jumps.iter().enumerate() {
            prefix += u as usize;
            let k = idx + 1;
            if prefix == k {
                out.push(k - last);
                last = k;
            }
        }
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.jumps.iter().map(|u| u.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

fn is_dyck(jumps: &[u32]) -> bool {
    let n = jumps.len();
    let mut prefix = 0u64;
    for (idx, &u) in jumps.iter().enumerate() {
        prefix += u64::from(u);
        let k = idx as u64 + 1;
        if idx + 1 < n && prefix > k {
            return false;
        }
    }
    prefix == n as u64
}

/// A Dyck path in `𝒰_n`: whenever `u_j ≠ 0`, the path sits on the diagonal
/// after phase `j`. The last entry is necessarily nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeasibleAllocation {
    path: DyckPath,
}

impl FeasibleAllocation {
    pub fn new(jumps: Vec<u32>) -> Result<Self> {
        let path = DyckPath::new(jumps)?;
        Self::try_from(path)
    }

    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn jumps(&self) -> &[u32] {
        self.path.jumps()
    }

    pub fn order(&self) -> usize {
        self.path.order()
    }

    /// `𝒥`: 1-based phases with a nonzero jump.
    pub fn support(&self) -> Vec<usize> {
        self.jumps()
            .iter()
            .enumerate()
            .filter(|(_, &u)| u != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `𝒥ᶜ`: 1-based phases without a right jump.
    pub fn complement(&self) -> Vec<usize> {
        self.jumps()
            .iter()
            .enumerate()
            .filter(|(_, &u)| u == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl TryFrom<DyckPath> for FeasibleAllocation {
    type Error = Error;

    fn try_from(path: DyckPath) -> Result<Self> {
        if is_feasible(&path) {
            Ok(FeasibleAllocation { path })
        } else {
            Err(Error::NotFeasible(path.into_jumps()))
        }
    }
}

impl fmt::Display for FeasibleAllocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.path.fmt(f)
    }
}

/// Membership in `𝒰_n` by the prefix-sum test: `u_j ≠ 0` implies
/// `u_1 + … + u_j = j`. The empty path is not feasible.
pub fn is_feasible(u: &DyckPath) -> bool {
    if u.order() == 0 {
        return false;
    }
    let mut prefix = 0usize;
    for (idx, &x) in u.jumps().iter().enumerate() {
        prefix += x as usize;
        if x != 0 && prefix != idx + 1 {
            return false;
        }
    }
    true
}

/// Membership in `𝒰_n` by the recursive construction rules: `u_1 ∈ {0, 1}`;
/// after `k − 1` consecutive zeros `u_i ∈ {0, k}`; after a nonzero entry
/// `u_i ∈ {0, 1}`; and the entries sum to `n`.
pub fn is_feasible_by_rules(jumps: &[u32]) -> bool {
    if jumps.is_empty() {
        return false;
    }
    let mut zeros_before = 0u32;
    for &u in jumps {
        let allowed = zeros_before + 1;
        if u != 0 && u != allowed {
            return false;
        }
        zeros_before = if u == 0 { zeros_before + 1 } else { 0 };
    }
    jumps.iter().map(|&u| u as usize).sum::<usize>() == jumps.len()
}

/// All Dyck paths of order `n` in lexicographic order of `(u_1, …, u_n)`.
/// Order 0 yields the single empty path.
pub fn enumerate_dyck(n: usize) -> DyckPaths {
    DyckPaths { n, current: None, done: false }
}

/// Streaming enumerator behind [`enumerate_dyck`]; holds one path at a time.
#[derive(Debug, Clone)]
pub struct DyckPaths {
    n: usize,
    current: Option<Vec<u32>>,
    done: bool,
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        if self.done {
            return None;
        }
        let n = self.n;
        match self.current.as_mut() {
            None => {
                let mut first = vec![0u32; n];
                if n > 0 {
                    first[n - 1] = n as u32;
                }
                self.current = Some(first);
            }
            Some(u) => {
                // Rightmost non-final position that can grow by one.
                let mut prefix: Vec<u32> = Vec::with_capacity(n);
                let mut acc = 0u32;
                for &x in u.iter() {
                    acc += x;
                    prefix.push(acc);
                }
                let pivot = (0..n.saturating_sub(1))
                    .rev()
                    .find(|&j| prefix[j] < j as u32 + 1);
                match pivot {
                    None => {
                        self.done = true;
                        return None;
                    }
                    Some(j) => {
                        u[j] += 1;
                        let head = prefix[j] + 1;
                        for x in u[j + 1..n - 1].iter_mut() {
                            *x = 0;
                        }
                        u[n - 1] = n as u32 - head;
                    }
                }
            }
        }
        if n == 0 {
            self.done = true;
        }
        self.current.clone().map(|jumps| DyckPath { jumps })
    }
}

/// All feasible allocations of order `n`, lexicographically. There are
/// `2^(n−1)` of them for `n ≥ 1` and none for `n = 0`.
pub fn enumerate_feasible(n: usize) -> FeasibleAllocations {
    FeasibleAllocations { n, current: None, done: n == 0 }
}

/// Streaming enumerator behind [`enumerate_feasible`].
#[derive(Debug, Clone)]
pub struct FeasibleAllocations {
    n: usize,
    current: Option<Vec<u32>>,
    done: bool,
}

impl Iterator for FeasibleAllocations {
    type Item = FeasibleAllocation;

    fn next(&mut self) -> Option<FeasibleAllocation> {
        if self.done {
            return None;
        }
        let n = self.n;
        match self.current.as_mut() {
            None => {
                let mut first = vec![0u32; n];
                first[n - 1] = n as u32;
                self.current = Some(first);
            }
            Some(u) => {
                // Each position before the last is either 0 or closes the gap
                // to the diagonal; step the rightmost 0 up to its gap.
                let Some(j) = (0..n - 1).rev().find(|&j| u[j] == 0) else {
                    self.done = true;
                    return None;
                };
                let before: u32 = u[..j].iter().sum();
                u[j] = j as u32 + 1 - before;
                for x in u[j + 1..n - 1].iter_mut() {
                    *x = 0;
                }
                u[n - 1] = n as u32 - (j as u32 + 1);
            }
        }
        self.current.clone().map(|jumps| FeasibleAllocation {
            path: DyckPath { jumps },
        })
    }
}

/// Probability of the path under the embedded chain:
/// `∏_j ρ_j^{u_j} (1 − ρ_j)^{[u_1 + … + u_j < j]}`.
pub fn path_weight(model: &Model, u: &DyckPath) -> Result<ExactRational> {
    if u.order() != model.n() {
        return Err(Error::OrderMismatch {
            path: u.order(),
            model: model.n(),
        });
    }
    let rhos = model.rhos();
    let one = ExactRational::one();
    let mut weight = ExactRational::one();
    let mut prefix = 0usize;
    for (idx, (&x, rho)) in u.jumps().iter().zip(&rhos).enumerate() {
        prefix += x as usize;
        weight *= pow(rho, x);
        if prefix < idx + 1 {
            weight *= &one - rho;
        }
    }
    Ok(weight)
}

/// First `k ≥ 1` with `u_1 + … + u_k = k`: the size of the first busy period.
/// Returns 0 for the empty path.
pub fn first_return(u: &DyckPath) -> usize {
    let mut prefix = 0usize;
    for (idx, &x) in u.jumps().iter().enumerate() {
        prefix += x as usize;
        if prefix == idx + 1 {
            return idx + 1;
        }
    }
    0
}

/// Run structure of a feasible allocation, as used by the `b` coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excursions {
    /// Number of nonzero entries.
    pub m: usize,
    /// `(k_(0), k_(1), …, k_(M), k_(M+1))`: first index, the 1-based positions
    /// of the nonzero entries, last index.
    pub k_indices: Vec<usize>,
}

/// Nonzero-ness is decided on the exponent `u_j`, never on the value
/// `ρ_j^{u_j}` (which is 1 at `j = N` regardless of `u_N`).
pub fn excursion_decomposition(u: &DyckPath) -> Result<Excursions> {
    if !is_feasible(u) {
        return Err(Error::NotFeasible(u.jumps().to_vec()));
    }
    let support: Vec<usize> = u
        .jumps()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, _)| i + 1)
        .collect();
    let mut k_indices = Vec::with_capacity(support.len() + 2);
    k_indices.push(1);
    k_indices.extend_from_slice(&support);
    k_indices.push(u.order());
    Ok(Excursions {
        m: support.len(),
        k_indices,
    })
}

/// Catalan number `C(2n, n) / (n + 1)` as `u128`; exact for `n ≤ 60`.
pub fn catalan(n: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Weight of a feasible allocation through its factorized form
/// `∏_{j∈𝒥} ρ_j^{u_j} ∏_{k∈𝒥ᶜ} (1 − ρ_k)`.
pub fn feasible_weight(model: &Model, u: &FeasibleAllocation) -> Result<ExactRational> {
    if u.order() != model.n() {
        return Err(Error::OrderMismatch {
            path: u.order(),
            model: model.n(),
        });
    }
    let rhos = model.rhos();
    let mut w = ExactRational::one();
    for j in u.support() {
        w *= pow(&rhos[j - 1], u.jumps()[j - 1]);
    }
    for k in u.complement() {
        w *= ExactRational::one() - &rhos[k - 1];
    }
    Ok(w)
}

/// Sum of all path weights of order `model.n()`; equals one.
pub fn total_weight(model: &Model) -> Result<ExactRational> {
    enumerate_dyck(model.n()).try_fold(ExactRational::zero(), |acc, u| {
        Ok(acc + path_weight(model, &u)?)
    })
}
