use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

use crate::rational::{to_f64, ExactRational};

/// Number type the analytic routes run on: [`ExactRational`] for results,
/// `f64` for benchmarking and cancellation measurements.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync {
    fn from_exact(q: &ExactRational) -> Self;

    fn from_u64(v: u64) -> Self;

    fn powu(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
}

impl Scalar for ExactRational {
    fn from_exact(q: &ExactRational) -> Self {
        q.clone()
    }

    fn from_u64(v: u64) -> Self {
        ExactRational::from_integer(v.into())
    }
}

impl Scalar for f64 {
    fn from_exact(q: &ExactRational) -> Self {
        to_f64(q)
    }

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn powu(&self, e: u32) -> Self {
        self.powi(e as i32)
    }
}
