use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::rates::RateTable;
use crate::exact::{BusyPeriodDistribution, Method, Scalar};
use crate::model::Model;
use crate::rational::{binomial, ExactRational};

/// Boundary indices `(k_(0), k_(1), …, k_(M), k_(M+1))` of an exponent vector
/// placed at phases `start, start+1, …`: the first phase, the phases with a
/// nonzero exponent, and the last phase.
fn boundaries(model: &Model, start: usize, exponents: &[u32]) -> Result<Vec<usize>> {
    if exponents.is_empty() {
        return Err(Error::EmptyAllocation);
    }
    let end = start + exponents.len() - 1;
    if start < 1 || end > model.n() {
        return Err(Error::IndexOutOfRange(format!(
            "phases {start}..={end} not within 1..={}",
            model.n()
        )));
    }
    let mut k = vec![start];
    k.extend(
        exponents
            .iter()
            .enumerate()
            .filter(|(_, &u)| u != 0)
            .map(|(idx, _)| start + idx),
    );
    if k.len() == 1 {
        return Err(Error::ZeroAllocation);
    }
    k.push(end);
    Ok(k)
}

/// The signed weight `b` of an exponent vector `(a_{k_1}, …, a_{k_n})` sitting
/// at phases `start..start+n`:
/// `(−1)^{M−1} ∏_{m=0}^{M} ∏_{k=k_(m)}^{k_(m+1)−1} λ_k/(λ_k − λ_{k_(m+1)})`,
/// with `M` the number of nonzero exponents.
pub fn b_coefficient(model: &Model, start: usize, exponents: &[u32]) -> Result<ExactRational> {
    let k = boundaries(model, start, exponents)?;
    let lambda = model.lambda_seq();
    let m = k.len() - 2;
    let mut value = ExactRational::one();
    for w in k.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        for j in lo..hi {
            let denom = &lambda[j - 1] - &lambda[hi - 1];
            if denom.is_zero() {
                return Err(Error::DegenerateRates { k: j, n: hi });
            }
            value *= &lambda[j - 1] / denom;
        }
    }
    Ok(if m % 2 == 0 { -value } else { value })
}

/// Proportional-rate form of [`b_coefficient`]:
/// `(−1)^{M−1} ∏_{m=0}^{M} C(N − k_(m), k_(m+1) − k_(m))`.
pub fn b_coefficient_binomial(model: &Model, start: usize, exponents: &[u32]) -> Result<ExactRational> {
    if !model.is_proportional() {
        return Err(Error::RequiresProportionalMode);
    }
    let k = boundaries(model, start, exponents)?;
    let big_n = model.n() as u64;
    let m = k.len() - 2;
    let value = k.windows(2).fold(ExactRational::one(), |acc, w| {
        acc * ExactRational::from_integer(binomial(big_n - w[0] as u64, (w[1] - w[0]) as u64))
    });
    Ok(if m % 2 == 0 { -value } else { value })
}

/// Depth-first walk over the feasible allocations of `order` placed at phases
/// `offset+1..=offset+order`, emitting `b(·)·∏ ρ^{u}` for each one in
/// lexicographic order. Partial products are shared between siblings.
struct TermWalk<'a, T, F> {
    table: &'a RateTable<T>,
    offset: usize,
    order: usize,
    emit: F,
}

impl<T: Scalar, F: FnMut(T)> TermWalk<'_, T, F> {
    /// `r`: relative position; `prefix`: relative jumps so far; `last`: phase
    /// of the latest boundary; `nonzero`: exponents already counted in `M`.
    fn walk(&mut self, r: usize, prefix: usize, last: usize, value: T, nonzero: usize) {
        if r < self.order {
            self.walk(r + 1, prefix, last, value.clone(), nonzero);
        }
        let phase = self.offset + r;
        let jump = (r - prefix) as u32;
        let mut next = value * self.table.rho(phase).powu(jump) * self.table.run(last, phase).clone();
        if nonzero > 0 {
            next = -next;
        }
        if r == self.order {
            (self.emit)(next);
        } else {
            self.walk(r + 1, r, phase, next, nonzero + 1);
        }
    }
}

fn walk_terms<T: Scalar, F: FnMut(T)>(
    table: &RateTable<T>,
    offset: usize,
    order: usize,
    seed: (usize, T, usize),
    emit: F,
) {
    let (last, value, nonzero) = seed;
    let mut walk = TermWalk { table, offset, order, emit };
    walk.walk(1, 0, last, value, nonzero);
}

fn signed_sum<T: Scalar>(table: &RateTable<T>, offset: usize, order: usize, seed: (usize, T, usize)) -> T {
    let mut total = T::zero();
    walk_terms(table, offset, order, seed, |t| total = total.clone() + t);
    total
}

/// `s_i` as the alternating sum over feasible allocations of order `i`.
fn explicit_entry<T: Scalar>(table: &RateTable<T>, i: usize) -> T {
    signed_sum(table, 0, i, (1, T::one(), 0))
}

/// `s_i = Σ_{u ∈ 𝒰_i} b(ρ_1^{u_1}, …, ρ_i^{u_i}) ρ_1^{u_1} ⋯ ρ_i^{u_i}` for every `i`.
///
/// Entries are computed in parallel on the current rayon pool; each entry is
/// summed sequentially in enumeration order, so results do not depend on the
/// worker count.
pub fn busy_dist_explicit(model: &Model) -> Result<BusyPeriodDistribution> {
    busy_dist_explicit_as::<ExactRational>(model)
}

pub fn busy_dist_explicit_as<T: Scalar>(model: &Model) -> Result<BusyPeriodDistribution<T>> {
    let table = RateTable::<T>::new(model)?;
    let s: Vec<T> = (1..=model.n())
        .into_par_iter()
        .map(|i| explicit_entry(&table, i))
        .collect();
    Ok(BusyPeriodDistribution::new(s, Method::ExplicitFormula, model.digest()))
}

/// `(A⁻¹)_{i,i−n}` as a signed sum over `𝒰_n`: the vector
/// `(ρ_{i−n}^{i−n}, ρ_{i−n+1}^{u_1}, …, ρ_i^{u_n})` weighted by its `b`.
/// `n = 0` gives the diagonal `ρ_i^i`.
pub fn a_inverse_explicit(model: &Model, i: usize, n: usize) -> Result<ExactRational> {
    a_inverse_explicit_as::<ExactRational>(model, i, n)
}

pub fn a_inverse_explicit_as<T: Scalar>(model: &Model, i: usize, n: usize) -> Result<T> {
    if i < 1 || i > model.n() || n >= i {
        return Err(Error::IndexOutOfRange(format!(
            "(i, n) = ({i}, {n}) needs 1 <= i <= {} and n < i",
            model.n()
        )));
    }
    let table = RateTable::<T>::new(model)?;
    let head = i - n;
    let diag = table.rho(head).powu(head as u32);
    if n == 0 {
        return Ok(diag);
    }
    Ok(signed_sum(&table, head, n, (head, diag, 1)))
}

/// Per-entry statistics of the alternating sum in `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermMass {
    /// `Σ |term|` for each `s_i`.
    pub absolute: Vec<f64>,
    /// Number of terms for each `s_i` (`2^(i−1)`).
    pub terms: Vec<u64>,
}

/// Sum of absolute term values per entry, the scale against which the
/// alternating sum cancels down to `s_i`.
pub fn explicit_term_mass(model: &Model) -> Result<TermMass> {
    let table = RateTable::<f64>::new(model)?;
    let mut absolute = Vec::with_capacity(model.n());
    let mut terms = Vec::with_capacity(model.n());
    for i in 1..=model.n() {
        let mut mass = 0.0;
        let mut count = 0u64;
        walk_terms(&table, 0, i, (1, 1.0, 0), |t: f64| {
            mass += t.abs();
            count += 1;
        });
        absolute.push(mass);
        terms.push(count);
    }
    Ok(TermMass { absolute, terms })
}
