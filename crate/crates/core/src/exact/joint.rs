use num_traits::Zero;

use crate::error::Result;
use crate::exact::busy_dist_recursion;
use crate::model::Model;
use crate::rational::ExactRational;

/// Probabilities of the full sequence of busy-period sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    /// `(n_1, n_2, …)` with `Σ n_j = N` and at most `max_periods` parts, in
    /// lexicographic order.
    pub entries: Vec<(Vec<usize>, ExactRational)>,
    /// Mass of all sequences with more than `max_periods` busy periods.
    pub remainder: ExactRational,
}

impl JointDistribution {
    pub fn total(&self) -> ExactRational {
        self.entries
            .iter()
            .fold(self.remainder.clone(), |acc, (_, p)| acc + p)
    }

    pub fn probability(&self, composition: &[usize]) -> Option<&ExactRational> {
        self.entries
            .iter()
            .find(|(c, _)| c.as_slice() == composition)
            .map(|(_, p)| p)
    }
}

/// `P(n_1, n_2, …) = ∏_j s^{(m_j)}_{n_j}` with `m_j = N − n_1 − … − n_{j−1}`,
/// where `s^{(m)}` is the first-busy-period law of [`Model::residual`]`(m)`.
pub fn joint_busy_dist(model: &Model, max_periods: usize) -> Result<JointDistribution> {
    let n = model.n();
    // residual[m − 1] = s^{(m)}
    let residual = (1..=n)
        .map(|m| busy_dist_recursion(&model.residual(m)?).map(|d| d.into_values()))
        .collect::<Result<Vec<_>>>()?;

    let mut out = JointDistribution {
        entries: Vec::new(),
        remainder: ExactRational::zero(),
    };
    let mut parts = Vec::new();
    let one = ExactRational::from_integer(1.into());
    extend(&residual, n, max_periods.max(1), &mut parts, one, &mut out);
    Ok(out)
}

fn extend(
    residual: &[Vec<ExactRational>],
    remaining: usize,
    max_periods: usize,
    parts: &mut Vec<usize>,
    mass: ExactRational,
    out: &mut JointDistribution,
) {
    if remaining == 0 {
        out.entries.push((parts.clone(), mass));
        return;
    }
    if parts.len() == max_periods {
        out.remainder += mass;
        return;
    }
    let dist = &residual[remaining - 1];
    for size in 1..=remaining {
        parts.push(size);
        extend(residual, remaining - size, max_periods, parts, &mass * &dist[size - 1], out);
        parts.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::random_model;
    use crate::rational::{int, ratio};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_customers() {
        let m = Model::proportional(2, 1, 1).unwrap();
        let j = joint_busy_dist(&m, 4).unwrap();
        assert_eq!(j.probability(&[1, 1]).unwrap(), &ratio(1, 2));
        assert_eq!(j.probability(&[2]).unwrap(), &ratio(1, 2));
        assert_eq!(j.entries.len(), 2);
        assert!(j.remainder.is_zero());
    }

    #[test]
    fn all_compositions_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for n in 1..=8 {
            let m = random_model(n, &mut rng);
            let j = joint_busy_dist(&m, n).unwrap();
            assert_eq!(j.entries.len(), 1 << (n - 1));
            assert!(j.remainder.is_zero());
            assert_eq!(j.total(), int(1));
        }
    }

    #[test]
    fn truncation_moves_mass_to_remainder() {
        let m = Model::proportional(5, 1, 1).unwrap();
        let full = joint_busy_dist(&m, 5).unwrap();
        let cut = joint_busy_dist(&m, 2).unwrap();
        assert!(cut.entries.iter().all(|(c, _)| c.len() <= 2));
        assert_eq!(cut.total(), int(1));
        let long: ExactRational = full
            .entries
            .iter()
            .filter(|(c, _)| c.len() > 2)
            .fold(ExactRational::zero(), |a, (_, p)| a + p);
        assert_eq!(cut.remainder, long);
    }

    #[test]
    fn first_marginal_matches_busy_dist() {
        let m = Model::from_rate(6, ratio(2, 3), int(1)).unwrap();
        let s = busy_dist_recursion(&m).unwrap();
        let j = joint_busy_dist(&m, 6).unwrap();
        for i in 1..=6 {
            let marginal = j
                .entries
                .iter()
                .filter(|(c, _)| c[0] == i)
                .fold(ExactRational::zero(), |a, (_, p)| a + p);
            assert_eq!(&marginal, s.get(i).unwrap());
        }
    }
}
