use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::busy_dist_recursion;
use crate::model::Model;
use crate::rational::{pow, ExactRational};

/// `P_n(z)` evaluated at a rational point.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingFunctionValue {
    pub phase: usize,
    pub z: ExactRational,
    pub value: ExactRational,
}

/// `G_p(z) = (1 − p)/(1 − p z)`, the generating function of a geometric
/// variable on `{0, 1, …}` with success probability `1 − p`.
fn geometric_gf(p: &ExactRational, z: &ExactRational) -> ExactRational {
    (ExactRational::one() - p) / (ExactRational::one() - p * z)
}

/// `P_n(z) = Σ_i p_n(i) z^i` through the product form
/// `P_n(z) = ∏_{i<n} G_{ρ_i}(z) − Σ_{i<n} s_i z^i ∏_{j=i}^{n−1} G_{ρ_j}(z)`,
/// with `s_1, …, s_{n−1}` taken from the recursion. `P_1 = 1`.
///
/// Fails with [`Error::PoleAtArgument`] when `z = 1/ρ_j` for some `j < n`.
pub fn gf_evaluate(model: &Model, n: usize, z: &ExactRational) -> Result<GeneratingFunctionValue> {
    if n < 1 || n > model.n() {
        return Err(Error::PhaseOutOfRange { phase: n, n: model.n() });
    }
    let rhos = model.rhos();
    for (idx, rho) in rhos.iter().take(n - 1).enumerate() {
        if (rho * z).is_one() {
            return Err(Error::PoleAtArgument(idx + 1));
        }
    }
    let value = if n == 1 {
        ExactRational::one()
    } else {
        let s = busy_dist_recursion(model)?.into_values();
        let g: Vec<ExactRational> = rhos[..n - 1].iter().map(|r| geometric_gf(r, z)).collect();
        // tail[i] = ∏_{j=i}^{n−1} G_{ρ_j}(z), 0-based i
        let mut tail = vec![ExactRational::one(); n];
        for i in (0..n - 1).rev() {
            tail[i] = &tail[i + 1] * &g[i];
        }
        let mut value = tail[0].clone();
        for i in 1..n {
            value -= &s[i - 1] * pow(z, i as u32) * &tail[i - 1];
        }
        value
    };
    Ok(GeneratingFunctionValue {
        phase: n,
        z: z.clone(),
        value,
    })
}

/// Power-series coefficients `(p_n(0), …, p_n(n−2))` of `P_n`, recovered by
/// evaluating [`gf_evaluate`] at `n − 1` points `0, 1/n, …, (n−2)/n` and
/// interpolating. For `n = 1` returns `[1]`.
pub fn gf_coefficients(model: &Model, n: usize) -> Result<Vec<ExactRational>> {
    if n < 1 || n > model.n() {
        return Err(Error::PhaseOutOfRange { phase: n, n: model.n() });
    }
    if n == 1 {
        return Ok(vec![ExactRational::one()]);
    }
    let points: Vec<ExactRational> = (0..n - 1)
        .map(|k| ExactRational::new(k.into(), n.into()))
        .collect();
    let values = points
        .iter()
        .map(|z| gf_evaluate(model, n, z).map(|v| v.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&points, &values))
}

/// Monomial coefficients of the unique polynomial of degree `< points.len()`
/// through the given points (Newton divided differences).
pub fn interpolate(points: &[ExactRational], values: &[ExactRational]) -> Vec<ExactRational> {
    assert_eq!(points.len(), values.len());
    let len = points.len();
    let mut dd = values.to_vec();
    for level in 1..len {
        for i in (level..len).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i] - &points[i - level]);
        }
    }
    // Horner over the Newton basis, highest term first.
    let mut coeffs = vec![ExactRational::zero(); len];
    for k in (0..len).rev() {
        // coeffs ← coeffs·(z − x_k) + dd[k]
        let mut next = vec![ExactRational::zero(); len];
        for d in 0..len {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < len {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &points[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}
