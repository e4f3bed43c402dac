use crate::error::{Error, Result};
use crate::exact::rates::RateTable;
use crate::exact::{BusyPeriodDistribution, Method, Scalar};
use crate::model::Model;
use crate::rational::{binomial, ExactRational};

/// `s_1 = ρ_1` and, for `n ≥ 2`,
/// `s_n = ρ_n^n ∏_{k=1}^{n−1} λ_k/(λ_k−λ_n) − Σ_{i<n} s_i ρ_n^{n−i} ∏_{k=i}^{n−1} λ_k/(λ_k−λ_n)`.
pub fn busy_dist_recursion(model: &Model) -> Result<BusyPeriodDistribution> {
    busy_dist_recursion_as::<ExactRational>(model)
}

pub fn busy_dist_recursion_as<T: Scalar>(model: &Model) -> Result<BusyPeriodDistribution<T>> {
    let table = RateTable::<T>::new(model)?;
    let n_total = table.n();
    let mut s: Vec<T> = Vec::with_capacity(n_total);
    s.push(table.rho(1).clone());
    for n in 2..=n_total {
        let rho = table.rho(n);
        let mut value = rho.powu(n as u32) * table.run(1, n).clone();
        for (idx, s_i) in s.iter().enumerate() {
            let i = idx + 1;
            value = value - s_i.clone() * rho.powu((n - i) as u32) * table.run(i, n).clone();
        }
        s.push(value);
    }
    Ok(BusyPeriodDistribution::new(s, Method::Recursion, model.digest()))
}

/// Proportional-rate form: the rate products collapse to
/// `C(N−i, n−i)`, giving
/// `s_n = ρ_n^n C(N−1, n−1) − Σ_{i<n} s_i ρ_n^{n−i} C(N−i, n−i)`.
pub fn busy_dist_recursion_binomial(model: &Model) -> Result<BusyPeriodDistribution> {
    busy_dist_recursion_binomial_as::<ExactRational>(model)
}

pub fn busy_dist_recursion_binomial_as<T: Scalar>(model: &Model) -> Result<BusyPeriodDistribution<T>> {
    if !model.is_proportional() {
        return Err(Error::RequiresProportionalMode);
    }
    let big_n = model.n() as u64;
    let rhos: Vec<T> = model.rhos().iter().map(T::from_exact).collect();
    let choose = |a: u64, b: u64| T::from_exact(&ExactRational::from_integer(binomial(a, b)));

    let mut s: Vec<T> = Vec::with_capacity(rhos.len());
    s.push(rhos[0].clone());
    for n in 2..=rhos.len() {
        let rho = &rhos[n - 1];
        let nn = n as u64;
        let mut value = rho.powu(n as u32) * choose(big_n - 1, nn - 1);
        for (idx, s_i) in s.iter().enumerate() {
            let i = idx as u64 + 1;
            value = value - s_i.clone() * rho.powu((nn - i) as u32) * choose(big_n - i, nn - i);
        }
        s.push(value);
    }
    Ok(BusyPeriodDistribution::new(s, Method::RecursionBinomial, model.digest()))
}
