//! Acceptance gate. Every criterion runs at its stated tolerance and prints
//! one PASS/FAIL line; the test fails if any criterion fails.
//!
//! Run with `cargo test -p busyq-core --test acceptance -- --nocapture` to
//! see the report.

use std::time::Instant;

use busyq_core::exact::{
    a_inverse_explicit, b_coefficient, b_coefficient_binomial, busy_dist_explicit,
    busy_dist_matrix, busy_dist_recursion, busy_dist_recursion_binomial, cancellation_report,
    gf_coefficients, gf_evaluate, invert_lower_triangular, joint_busy_dist, matrix_a, vector_b,
};
use busyq_core::model::random_model;
use busyq_core::montecarlo::{compare_first, compare_joint, estimate_busy_dist, estimate_joint_busy};
use busyq_core::oracle::{busy_dist_bruteforce, sweep};
use busyq_core::paths::{catalan, enumerate_dyck, enumerate_feasible, is_feasible, is_feasible_by_rules, DyckPath};
use busyq_core::rational::{binomial, int, pow, ratio};
use busyq_core::{ExactRational, Model};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const RANDOM_SEED: u64 = 2024;
const MC_SEED: u64 = 20_190_601;
const MC_REPS: u64 = 1_000_000;
const SIGMAS: f64 = 4.0;

/// The deterministic model set shared by criteria 1 and 2.
fn criterion_one_models() -> Vec<Model> {
    let mut models = Vec::new();
    for n in 1..=12 {
        for (lambda, mu) in [(1, 1), (1, 3), (2, 1)] {
            models.push(Model::proportional(n, lambda, mu).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for n in 1..=10 {
        for _ in 0..20 {
            models.push(random_model(n, &mut rng));
        }
    }
    models
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_four_way_agreement() -> Outcome {
    let models = criterion_one_models();
    for m in &models {
        let rec = busy_dist_recursion(m).map_err(|e| e.to_string())?;
        let others = [
            busy_dist_matrix(m).map_err(|e| e.to_string())?,
            busy_dist_explicit(m).map_err(|e| e.to_string())?,
            busy_dist_bruteforce(m).map_err(|e| e.to_string())?,
        ];
        for other in &others {
            if let Some(i) = rec.first_mismatch(other) {
                return Err(format!("{m}: recursion vs {} differ at s_{i}", other.method()));
            }
        }
        if m.is_proportional() {
            let bin = busy_dist_recursion_binomial(m).map_err(|e| e.to_string())?;
            ensure(rec.same_values(&bin), || format!("{m}: binomial recursion differs"))?;
        }
    }
    Ok(format!("{} models, exact equality", models.len()))
}

fn c2_normalization_and_anchors() -> Outcome {
    let models = criterion_one_models();
    for m in &models {
        let d = busy_dist_recursion(m).map_err(|e| e.to_string())?;
        ensure(d.total() == int(1), || format!("{m}: Σ s_i = {}", d.total()))?;
        ensure(d.get(1) == Some(&m.rho(1).unwrap()), || format!("{m}: s_1 != ρ_1"))?;
        if m.n() == 1 {
            for route in [busy_dist_matrix(m), busy_dist_explicit(m), busy_dist_bruteforce(m)] {
                let r = route.map_err(|e| e.to_string())?;
                ensure(r.values() == [int(1)], || format!("{m}: N = 1 gives {:?}", r.values()))?;
            }
        }
    }
    Ok(format!("{} models: Σ s_i = 1, s_1 = ρ_1, N = 1 ⇒ s = (1)", models.len()))
}

fn c3_combinatorial_counts() -> Outcome {
    for n in 0..=12u32 {
        let count = enumerate_dyck(n as usize).count() as u128;
        ensure(count == catalan(n), || format!("|D_{n}| = {count}, Catalan = {}", catalan(n)))?;
    }
    for n in 1..=20usize {
        let count = enumerate_feasible(n).count();
        ensure(count == 1 << (n - 1), || format!("|U_{n}| = {count}"))?;
    }
    let classify = |v: &[u32]| {
        let by_prefix = DyckPath::new(v.to_vec()).map(|p| is_feasible(&p)).unwrap_or(false);
        (by_prefix, is_feasible_by_rules(v))
    };
    for ok in [[1, 1, 0, 2], [0, 0, 3, 1], [0, 2, 0, 2], [0, 0, 0, 4]] {
        ensure(classify(&ok) == (true, true), || format!("{ok:?} should be feasible"))?;
    }
    for bad in [[1, 0, 1, 2], [1, 0, 0, 2], [0, 0, 2, 2]] {
        ensure(classify(&bad) == (false, false), || format!("{bad:?} should be unfeasible"))?;
    }
    Ok("Catalan n ≤ 12, 2^(n−1) n ≤ 20, 4 feasible + 3 unfeasible examples".into())
}

fn c4_explicit_inverse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED + 4);
    let mut checked = 0usize;
    for n in 1..=10 {
        let mut models = vec![
            Model::proportional(n, 1, 1).unwrap(),
            Model::proportional(n, 1, 3).unwrap(),
            Model::proportional(n, 2, 1).unwrap(),
        ];
        models.extend((0..3).map(|_| random_model(n, &mut rng)));
        for m in &models {
            let inv = invert_lower_triangular(&matrix_a(m).unwrap()).map_err(|e| e.to_string())?;
            for i in 1..=n {
                for k in 0..i {
                    let explicit = a_inverse_explicit(m, i, k).map_err(|e| e.to_string())?;
                    ensure(explicit == inv.get(i, i - k), || format!("{m}: (A⁻¹)_({i},{})", i - k))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} entries equal to triangular inversion"))
}

fn c5_generating_functions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED + 5);
    let mut models = Vec::new();
    for n in 2..=10 {
        models.push(Model::proportional(n, 1, 1).unwrap());
        models.push(Model::proportional(n, 2, 1).unwrap());
        models.push(random_model(n, &mut rng));
    }
    for m in &models {
        let s = busy_dist_recursion(m).unwrap();
        let dp = sweep(m);
        for n in 2..=m.n() {
            let rho = m.rho(n).unwrap();
            let v = gf_evaluate(m, n, &rho.recip()).map_err(|e| e.to_string())?.value;
            ensure(pow(&rho, n as u32) * v == *s.get(n).unwrap(), || format!("{m}: ρ_n^n P_n(1/ρ_n) != s_{n}"))?;

            let coeffs = gf_coefficients(m, n).map_err(|e| e.to_string())?;
            for (i, c) in coeffs.iter().enumerate() {
                ensure(c == &dp.entry[n - 1][i], || format!("{m}: p_{n}({i}) mismatch"))?;
            }
        }
        let target = int(1) - m.rho(1).unwrap();
        for z in [int(0), ratio(1, 2), ratio(-3, 4), ratio(2, 7), int(1)] {
            let v = gf_evaluate(m, 2, &z).map_err(|e| e.to_string())?.value;
            ensure(v == target, || format!("{m}: P_2({z}) != 1 − ρ_1"))?;
        }
    }
    Ok(format!("{} models, N ≤ 10", models.len()))
}

fn c6_binomial_identity() -> Outcome {
    let mut checked = 0usize;
    for big_n in 1..=10usize {
        for (l, mu) in [(ratio(1, 1), ratio(1, 1)), (ratio(3, 2), ratio(2, 5))] {
            let m = Model::from_rate(big_n, l, mu).unwrap();
            for order in 1..=big_n {
                for start in 1..=big_n + 1 - order {
                    for a in enumerate_feasible(order) {
                        let general = b_coefficient(&m, start, a.jumps()).map_err(|e| e.to_string())?;
                        let binom = b_coefficient_binomial(&m, start, a.jumps()).map_err(|e| e.to_string())?;
                        ensure(general == binom, || format!("{m}: b differs on {a} at {start}"))?;
                        checked += 1;
                    }
                }
            }
            let b = vector_b(&m).unwrap();
            for (idx, entry) in b.iter().enumerate() {
                let expected = ExactRational::from_integer(binomial(big_n as u64 - 1, idx as u64));
                ensure(*entry == expected, || format!("{m}: b_{} != C(N−1, n−1)", idx + 1))?;
            }
        }
    }
    Ok(format!("{checked} allocations, vector_b = binomial row"))
}

fn c7_monte_carlo() -> Outcome {
    let mut lines = Vec::new();
    for n in [3usize, 8] {
        let m = Model::proportional(n, 1, 1).unwrap();
        let exact = busy_dist_recursion(&m).unwrap();
        let report = estimate_busy_dist(&m, MC_REPS, MC_SEED);
        for d in compare_first(&report, &exact, SIGMAS) {
            ensure(d.within, || {
                format!("N={n} {}: |{} − {}| > {}", d.label, d.frequency, d.exact, d.bound)
            })?;
        }
        lines.push(format!("N={n} ok"));
    }
    let m = Model::proportional(4, 1, 1).unwrap();
    let exact = joint_busy_dist(&m, 4).unwrap();
    let report = estimate_joint_busy(&m, MC_REPS, MC_SEED);
    let deviations = compare_joint(&report, &exact, SIGMAS);
    ensure(deviations.len() == 8, || format!("expected 8 compositions, got {}", deviations.len()))?;
    for d in deviations {
        ensure(d.within, || format!("joint {}: |{} − {}| > {}", d.label, d.frequency, d.exact, d.bound))?;
    }
    lines.push("joint N=4 ok".into());
    Ok(format!("R = 10^6, 4σ: {}", lines.join(", ")))
}

fn c8_cancellation() -> Outcome {
    let m = Model::proportional(12, 1, 1).unwrap();
    let r = cancellation_report(&m).map_err(|e| e.to_string())?;
    ensure(r.n == 12 && r.abs_deviation.len() == 12, || "report has wrong size".into())?;
    ensure(r.max_abs_deviation.is_finite(), || "deviation is not finite".into())?;
    Ok(format!(
        "N = 12 f64 explicit formula: max |Δ| = {:e} at s_{}, Σ|terms| at s_12 = {:e}",
        r.max_abs_deviation, r.worst_index, r.term_mass[11]
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("C1 four-way exact agreement", c1_four_way_agreement),
        ("C2 normalization and anchors", c2_normalization_and_anchors),
        ("C3 combinatorial counts", c3_combinatorial_counts),
        ("C4 explicit inverse vs triangular inversion", c4_explicit_inverse),
        ("C5 generating-function identities", c5_generating_functions),
        ("C6 binomial identity", c6_binomial_identity),
        ("C7 Monte Carlo consistency", c7_monte_carlo),
        ("C8 cancellation measurement", c8_cancellation),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                println!("[FAIL] {name} ({secs:.2}s): {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
