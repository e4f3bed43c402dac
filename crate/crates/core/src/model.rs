//! Queue parameters and the per-phase service-first probabilities `ρ_j`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::{self, to_pq, ExactRational};

/// How the arrival-rate sequence was specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RateSource {
    /// `λ_j = λ·(N − j)` for the given base rate `λ`.
    Proportional(ExactRational),
    ExplicitSequence,
}

/// A validated parameter set: `N` customers, arrival rates
/// `λ_1 > λ_2 > … > λ_N = 0` and service rate `μ > 0`.
///
/// Phases are indexed `1..=N` in every public accessor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    lambda_seq: Vec<ExactRational>,
    mu: ExactRational,
    source: RateSource,
}

impl Model {
    /// Proportional arrivals: each of the `n − j` customers still outside the
    /// system arrives at rate `lambda`.
    pub fn from_rate(n: usize, lambda: ExactRational, mu: ExactRational) -> Result<Self> {
        if n < 1 {
            return Err(Error::NonPositiveParameter(format!("n = {n}")));
        }
        if !lambda.is_positive() {
            return Err(Error::NonPositiveParameter(format!("lambda = {}", to_pq(&lambda))));
        }
        if !mu.is_positive() {
            return Err(Error::NonPositiveParameter(format!("mu = {}", to_pq(&mu))));
        }
        let lambda_seq = (1..=n)
            .map(|j| &lambda * rational::int((n - j) as i64))
            .collect();
        Ok(Model {
            lambda_seq,
            mu,
            source: RateSource::Proportional(lambda),
        })
    }

    pub fn from_sequence(lambda_seq: Vec<ExactRational>, mu: ExactRational) -> Result<Self> {
        if lambda_seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        if !mu.is_positive() {
            return Err(Error::NonPositiveParameter(format!("mu = {}", to_pq(&mu))));
        }
        for (idx, value) in lambda_seq.iter().enumerate() {
            if value.is_negative() {
                return Err(Error::NegativeRate {
                    index: idx + 1,
                    value: to_pq(value),
                });
            }
        }
        for (idx, pair) in lambda_seq.windows(2).enumerate() {
            if pair[0] <= pair[1] {
                return Err(Error::NotStrictlyDecreasing {
                    index: idx + 1,
                    left: to_pq(&pair[0]),
                    right: to_pq(&pair[1]),
                });
            }
        }
        let last = lambda_seq.last().expect("nonempty");
        if !last.is_zero() {
            return Err(Error::LastRateNonzero(to_pq(last)));
        }
        Ok(Model {
            lambda_seq,
            mu,
            source: RateSource::ExplicitSequence,
        })
    }

    /// Convenience constructor from small integers, mainly for tests.
    pub fn proportional(n: usize, lambda: i64, mu: i64) -> Result<Self> {
        Self::from_rate(n, rational::int(lambda), rational::int(mu))
    }

    pub fn n(&self) -> usize {
        self.lambda_seq.len()
    }

    pub fn mu(&self) -> &ExactRational {
        &self.mu
    }

    pub fn source(&self) -> &RateSource {
        &self.source
    }

    pub fn lambda_seq(&self) -> &[ExactRational] {
        &self.lambda_seq
    }

    pub fn is_proportional(&self) -> bool {
        matches!(self.source, RateSource::Proportional(_))
    }

    /// `λ_j`, 1-based.
    pub fn lambda(&self, j: usize) -> Result<&ExactRational> {
        self.check_phase(j)?;
        Ok(&self.lambda_seq[j - 1])
    }

    /// `ρ_j = μ / (μ + λ_j)`, the probability that a service completes before
    /// the next arrival in phase `j`.
    pub fn rho(&self, j: usize) -> Result<ExactRational> {
        self.check_phase(j)?;
        Ok(&self.mu / (&self.mu + &self.lambda_seq[j - 1]))
    }

    /// `(ρ_1, …, ρ_N)`; element `j − 1` holds `ρ_j`.
    pub fn rhos(&self) -> Vec<ExactRational> {
        self.lambda_seq
            .iter()
            .map(|l| &self.mu / (&self.mu + l))
            .collect()
    }

    fn check_phase(&self, j: usize) -> Result<()> {
        if j < 1 || j > self.n() {
            Err(Error::PhaseOutOfRange { phase: j, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// The model seen after the first `N − m` customers have been served and
    /// the system is empty again: the last `m` rates re-indexed from 1.
    /// In proportional mode this is the same `λ, μ` with pool size `m`.
    pub fn residual(&self, m: usize) -> Result<Model> {
        if m < 1 || m > self.n() {
            return Err(Error::IndexOutOfRange(format!(
                "residual pool size {m} not in 1..={}",
                self.n()
            )));
        }
        let source = match &self.source {
            RateSource::Proportional(l) => RateSource::Proportional(l.clone()),
            RateSource::ExplicitSequence => RateSource::ExplicitSequence,
        };
        Ok(Model {
            lambda_seq: self.lambda_seq[self.n() - m..].to_vec(),
            mu: self.mu.clone(),
            source,
        })
    }

    /// SHA-256 over the rates only, so the rate source does not affect it.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("mu={};lambda=", to_pq(&self.mu)));
        for (idx, l) in self.lambda_seq.iter().enumerate() {
            if idx > 0 {
                hasher.update(",");
            }
            hasher.update(to_pq(l));
        }
        hex::encode(hasher.finalize())
    }

    pub fn to_config(&self) -> ModelConfig {
        match &self.source {
            RateSource::Proportional(l) => ModelConfig::Proportional {
                n: self.n(),
                lambda: l.clone(),
                mu: self.mu.clone(),
            },
            RateSource::ExplicitSequence => ModelConfig::Sequence {
                lambda_seq: self.lambda_seq.clone(),
                mu: self.mu.clone(),
            },
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            RateSource::Proportional(l) => write!(
                f,
                "N={} lambda={} mu={}",
                self.n(),
                to_pq(l),
                to_pq(&self.mu)
            ),
            RateSource::ExplicitSequence => {
                let seq: Vec<String> = self.lambda_seq.iter().map(to_pq).collect();
                write!(f, "lambda_seq=[{}] mu={}", seq.join(","), to_pq(&self.mu))
            }
        }
    }
}

/// JSON model file: `{"n", "lambda", "mu"}` or `{"lambda_seq", "mu"}`.
/// Rationals are `"p/q"` strings; plain integers are accepted on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelConfig {
    Proportional {
        n: usize,
        #[serde(with = "crate::rational::serde_pq")]
        lambda: ExactRational,
        #[serde(with = "crate::rational::serde_pq")]
        mu: ExactRational,
    },
    Sequence {
        #[serde(with = "crate::rational::serde_pq_vec")]
        lambda_seq: Vec<ExactRational>,
        #[serde(with = "crate::rational::serde_pq")]
        mu: ExactRational,
    },
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn build(self) -> Result<Model> {
        match self {
            ModelConfig::Proportional { n, lambda, mu } => Model::from_rate(n, lambda, mu),
            ModelConfig::Sequence { lambda_seq, mu } => Model::from_sequence(lambda_seq, mu),
        }
    }
}

/// A random valid model with `n` customers: `n − 1` distinct positive rates
/// `p/q` (`p ≤ 20`, `q ≤ 9`) in decreasing order followed by zero, and a
/// random `μ` of the same form.
pub fn random_model<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Model {
    assert!(n >= 1, "random_model needs n >= 1");
    let mut rates = BTreeSet::new();
    while rates.len() < n - 1 {
        rates.insert(small_positive(rng));
    }
    let mut seq: Vec<ExactRational> = rates.into_iter().rev().collect();
    seq.push(ExactRational::zero());
    Model::from_sequence(seq, small_positive(rng)).expect("generated sequence is valid")
}

fn small_positive<R: Rng + ?Sized>(rng: &mut R) -> ExactRational {
    let p: i64 = rng.random_range(1..=20);
    let q: i64 = rng.random_range(1..=9);
    rational::ratio(p, q)
}

/// True if `ρ_1 < ρ_2 < … < ρ_N = 1`.
pub fn rhos_strictly_increasing_to_one(model: &Model) -> bool {
    let rhos = model.rhos();
    rhos.windows(2).all(|w| w[0] < w[1])
        && rhos.last().is_some_and(|r| r.is_one())
        && rhos[0].is_positive()
}
