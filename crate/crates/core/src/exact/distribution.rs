use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::Scalar;
use crate::rational::ExactRational;

/// Which route produced a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursion,
    #[serde(rename = "binomial")]
    RecursionBinomial,
    #[serde(rename = "matrix")]
    MatrixInverse,
    #[serde(rename = "explicit")]
    ExplicitFormula,
    Oracle,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::RecursionBinomial => "binomial",
            Method::MatrixInverse => "matrix",
            Method::ExplicitFormula => "explicit",
            Method::Oracle => "oracle",
            Method::MonteCarlo => "montecarlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "recursion" => Method::Recursion,
            "binomial" => Method::RecursionBinomial,
            "matrix" => Method::MatrixInverse,
            "explicit" => Method::ExplicitFormula,
            "oracle" => Method::Oracle,
            "montecarlo" => Method::MonteCarlo,
            other => return Err(format!("unknown method {other:?}")),
        })
    }
}

/// `(s_1, …, s_N)` with `s_i = P(first busy period serves i customers)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BusyPeriodDistribution<T = ExactRational> {
    s: Vec<T>,
    method: Method,
    model_digest: String,
}

impl<T: Scalar> BusyPeriodDistribution<T> {
    pub fn new(s: Vec<T>, method: Method, model_digest: String) -> Self {
        BusyPeriodDistribution { s, method, model_digest }
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// `s_i`, 1-based.
    pub fn get(&self, i: usize) -> Option<&T> {
        i.checked_sub(1).and_then(|k| self.s.get(k))
    }

    pub fn values(&self) -> &[T] {
        &self.s
    }

    pub fn into_values(self) -> Vec<T> {
        self.s
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn model_digest(&self) -> &str {
        &self.model_digest
    }

    pub fn total(&self) -> T {
        self.s.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}

impl BusyPeriodDistribution<ExactRational> {
    /// First 1-based index where the two vectors differ, comparing reduced
    /// rationals. A length mismatch reports the first missing index.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let len = self.s.len().max(other.s.len());
        (0..len).find(|&k| self.s.get(k) != other.s.get(k)).map(|k| k + 1)
    }

    pub fn same_values(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    pub fn to_f64(&self) -> BusyPeriodDistribution<f64> {
        BusyPeriodDistribution {
            s: self.s.iter().map(crate::rational::to_f64).collect(),
            method: self.method,
            model_digest: self.model_digest.clone(),
        }
    }

    /// Probability-vector sanity: every entry in `[0, 1]` and the total is one.
    pub fn is_probability_vector(&self) -> bool {
        let one = ExactRational::from_integer(1.into());
        self.s.iter().all(|x| !(x < &ExactRational::zero()) && x <= &one) && self.total() == one
    }
}
