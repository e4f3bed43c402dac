use serde::Serialize;

use crate::error::Result;
use crate::exact::{busy_dist_explicit, busy_dist_explicit_as, explicit_term_mass};
use crate::model::Model;
use crate::rational::to_f64;

/// How far the `f64` evaluation of the alternating-sign formula drifts from
/// the exact result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CancellationReport {
    pub n: usize,
    pub model_digest: String,
    /// `|s_i^{f64} − s_i|` per entry, the exact value rounded once to `f64`.
    pub abs_deviation: Vec<f64>,
    pub max_abs_deviation: f64,
    /// 1-based entry attaining the maximum.
    pub worst_index: usize,
    /// `Σ |term|` per entry: the magnitude that cancels down to `s_i`.
    pub term_mass: Vec<f64>,
}

pub fn cancellation_report(model: &Model) -> Result<CancellationReport> {
    let exact = busy_dist_explicit(model)?;
    let float = busy_dist_explicit_as::<f64>(model)?;
    let mass = explicit_term_mass(model)?;
    let abs_deviation: Vec<f64> = exact
        .values()
        .iter()
        .zip(float.values())
        .map(|(e, f)| (f - to_f64(e)).abs())
        .collect();
    let (worst, max) = abs_deviation
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(bi, bv), (i, &v)| if v > bv || v.is_nan() { (i, v) } else { (bi, bv) });
    Ok(CancellationReport {
        n: model.n(),
        model_digest: model.digest(),
        abs_deviation,
        max_abs_deviation: max,
        worst_index: worst + 1,
        term_mass: mass.absolute,
    })
}
