use std::fmt::Write as _;

use busyq_core::exact::{
    busy_dist_explicit, busy_dist_explicit_as, busy_dist_matrix, busy_dist_matrix_as, busy_dist_recursion,
    busy_dist_recursion_as, busy_dist_recursion_binomial, busy_dist_recursion_binomial_as,
    invert_lower_triangular, joint_busy_dist, matrix_a,
};
use busyq_core::model::random_model;
use busyq_core::montecarlo::{estimate_busy_dist, estimate_joint_busy};
use busyq_core::oracle::busy_dist_bruteforce_capped;
use busyq_core::paths::{enumerate_dyck, enumerate_feasible, first_return, is_feasible, path_weight, DyckPath};
use busyq_core::rational::{ratio, to_decimal17, to_pq};
use busyq_core::{BusyPeriodDistribution, Method, Model};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::failure::Failure;
use crate::output::{exact_cells, exact_json, float_json, json_text, Csv};
use crate::{DistArgs, Format, InverseArgs, JointArgs, MethodArg, Mode, PathsArgs, SimulateArgs, ValidateArgs};

fn core_method(m: MethodArg) -> Option<Method> {
    match m {
        MethodArg::Recursion => Some(Method::Recursion),
        MethodArg::Binomial => Some(Method::RecursionBinomial),
        MethodArg::Matrix => Some(Method::MatrixInverse),
        MethodArg::Explicit => Some(Method::ExplicitFormula),
        MethodArg::Oracle => Some(Method::Oracle),
        MethodArg::All => None,
    }
}

/// Routes run by `--method all` and `validate`. Binomial only for proportional rates.
fn all_methods(model: &Model) -> Vec<Method> {
    let mut out = vec![Method::Recursion];
    if model.is_proportional() {
        out.push(Method::RecursionBinomial);
    }
    out.extend([Method::MatrixInverse, Method::ExplicitFormula, Method::Oracle]);
    out
}

fn exact_route(model: &Model, method: Method, cap: usize) -> Result<BusyPeriodDistribution, Failure> {
    Ok(match method {
        Method::Recursion => busy_dist_recursion(model)?,
        Method::RecursionBinomial => busy_dist_recursion_binomial(model)?,
        Method::MatrixInverse => busy_dist_matrix(model)?,
        Method::ExplicitFormula => busy_dist_explicit(model)?,
        Method::Oracle => busy_dist_bruteforce_capped(model, cap)?,
        Method::MonteCarlo => return Err(Failure::BadInput("montecarlo is not an exact route".into())),
    })
}

fn float_route(model: &Model, method: Method) -> Result<BusyPeriodDistribution<f64>, Failure> {
    Ok(match method {
        Method::Recursion => busy_dist_recursion_as::<f64>(model)?,
        Method::RecursionBinomial => busy_dist_recursion_binomial_as::<f64>(model)?,
        Method::MatrixInverse => busy_dist_matrix_as::<f64>(model)?,
        Method::ExplicitFormula => busy_dist_explicit_as::<f64>(model)?,
        Method::Oracle | Method::MonteCarlo => {
            return Err(Failure::BadInput(format!("--mode float is not available for {method}")))
        }
    })
}

pub fn dist(args: &DistArgs) -> Result<String, Failure> {
    let model = args.model.build()?;
    let methods = match core_method(args.method) {
        Some(m) => vec![m],
        None => {
            let mut all = all_methods(&model);
            if args.mode == Mode::Float {
                all.retain(|m| *m != Method::Oracle);
            }
            all
        }
    };
    let single = args.method != MethodArg::All;

    match args.mode {
        Mode::Exact => {
            let dists = methods
                .iter()
                .map(|&m| exact_route(&model, m, args.cap))
                .collect::<Result<Vec<_>, _>>()?;
            match args.out.format {
                Format::Json if single => json_text(&exact_json(&dists[0])),
                Format::Json => json_text(&Value::Array(dists.iter().map(exact_json).collect())),
                Format::Csv => {
                    let mut header = vec!["i", "exact", "decimal"];
                    if !single {
                        header.insert(0, "method");
                    }
                    let mut csv = Csv::new(header)?;
                    for d in &dists {
                        for (idx, q) in d.values().iter().enumerate() {
                            let mut row = vec![(idx + 1).to_string()];
                            row.extend(exact_cells(q));
                            if !single {
                                row.insert(0, d.method().name().to_string());
                            }
                            csv.row(row)?;
                        }
                    }
                    csv.finish()
                }
            }
        }
        Mode::Float => {
            let dists = methods
                .iter()
                .map(|&m| float_route(&model, m))
                .collect::<Result<Vec<_>, _>>()?;
            match args.out.format {
                Format::Json if single => json_text(&float_json(&dists[0])),
                Format::Json => json_text(&Value::Array(dists.iter().map(float_json).collect())),
                Format::Csv => {
                    let mut header = vec!["i", "decimal"];
                    if !single {
                        header.insert(0, "method");
                    }
                    let mut csv = Csv::new(header)?;
                    for d in &dists {
                        for (idx, x) in d.values().iter().enumerate() {
                            let mut row = vec![(idx + 1).to_string(), busyq_core::rational::decimal17(*x)];
                            if !single {
                                row.insert(0, d.method().name().to_string());
                            }
                            csv.row(row)?;
                        }
                    }
                    csv.finish()
                }
            }
        }
    }
}

/// Runs every route on one model. Returns the diff table and, on failure,
/// a description of the first differing entry.
fn validate_model(model: &Model, cap: usize, corrupt: Option<Method>) -> Result<(String, Option<String>), Failure> {
    let methods = all_methods(model);
    if let Some(c) = corrupt {
        if !methods.contains(&c) {
            return Err(Failure::BadInput(format!("--corrupt {c}: route not run for this model")));
        }
    }
    let mut dists = Vec::with_capacity(methods.len());
    for &m in &methods {
        let d = exact_route(model, m, cap)?;
        if corrupt == Some(m) {
            let mut s = d.into_values();
            let last = s.len() - 1;
            s[last] += ratio(1, 1_000_000_007);
            dists.push(BusyPeriodDistribution::new(s, m, model.digest()));
        } else {
            dists.push(d);
        }
    }

    let n = model.n();
    let cells: Vec<Vec<String>> = (1..=n)
        .map(|i| dists.iter().map(|d| to_pq(d.get(i).unwrap())).collect())
        .collect();
    let mut width = vec![1usize; methods.len() + 1];
    width[0] = width[0].max(n.to_string().len());
    for (k, m) in methods.iter().enumerate() {
        width[k + 1] = m.name().len().max(cells.iter().map(|r| r[k].len()).max().unwrap_or(0));
    }

    let mut table = String::new();
    let _ = writeln!(table, "{model}");
    let _ = write!(table, "{:>w$}", "i", w = width[0]);
    for (k, m) in methods.iter().enumerate() {
        let _ = write!(table, "  {:>w$}", m.name(), w = width[k + 1]);
    }
    let _ = writeln!(table, "  status");

    let reference = &dists[0];
    let mut first_diff = None;
    for i in 1..=n {
        let r = reference.get(i).unwrap();
        let bad: Vec<&BusyPeriodDistribution> = dists[1..].iter().filter(|d| d.get(i).unwrap() != r).collect();
        let _ = write!(table, "{:>w$}", i, w = width[0]);
        for (k, c) in cells[i - 1].iter().enumerate() {
            let _ = write!(table, "  {:>w$}", c, w = width[k + 1]);
        }
        let _ = writeln!(table, "  {}", if bad.is_empty() { "ok" } else { "DIFF" });
        if first_diff.is_none() {
            if let Some(d) = bad.first() {
                first_diff = Some(format!(
                    "s_{i} differs: {} = {}, {} = {}",
                    reference.method(),
                    to_pq(r),
                    d.method(),
                    to_pq(d.get(i).unwrap())
                ));
            }
        }
    }

    let mut failure = first_diff;
    for d in &dists {
        let total = d.total();
        let _ = writeln!(table, "sum {:>9}: {}", d.method().name(), to_pq(&total));
        if failure.is_none() && !total.is_one() {
            failure = Some(format!("{} sums to {}, not 1", d.method(), to_pq(&total)));
        }
    }
    Ok((table, failure))
}

pub fn validate(args: &ValidateArgs) -> Result<String, Failure> {
    let corrupt = match args.corrupt {
        None => None,
        Some(MethodArg::All) => return Err(Failure::BadInput("--corrupt needs a single route".into())),
        Some(m) => core_method(m),
    };

    let Some(trials) = args.random_trials else {
        let model = args.model.build()?;
        let (table, failure) = validate_model(&model, args.cap, corrupt)?;
        print!("{table}");
        return match failure {
            Some(msg) => Err(Failure::Mismatch(msg)),
            None => Ok("all routes agree exactly; sum = 1\n".into()),
        };
    };

    let m = &args.model;
    let n = match m.n {
        Some(n) if m.lambda.is_none() && m.mu.is_none() && m.lambda_seq.is_none() && m.config.is_none() => n,
        _ => return Err(Failure::BadInput("--random-trials takes --n and --seed only".into())),
    };
    if n == 0 {
        return Err(Failure::BadInput("--n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for t in 1..=trials {
        let model = random_model(n, &mut rng);
        let (table, failure) = validate_model(&model, args.cap, corrupt)?;
        if let Some(msg) = failure {
            print!("{table}");
            return Err(Failure::Mismatch(format!("trial {t}: {msg}")));
        }
        println!("trial {t}: ok  {model}");
    }
    Ok(format!("{trials} random models: all routes agree exactly; sum = 1\n"))
}

pub fn paths(args: &PathsArgs) -> Result<String, Failure> {
    let order = args.order;
    if order == 0 {
        return Err(Failure::BadInput("--order must be at least 1".into()));
    }
    if order > args.cap {
        return Err(Failure::CapExceeded(format!(
            "order {order} exceeds enumeration cap {} (raise --cap)",
            args.cap
        )));
    }
    let model = if args.model.is_empty() {
        None
    } else {
        let m = args.model.build_with_default_n(Some(order))?;
        if m.n() != order {
            return Err(Failure::BadInput(format!("model has N = {} but --order is {order}", m.n())));
        }
        Some(m)
    };

    let list: Box<dyn Iterator<Item = DyckPath>> = if args.feasible_only {
        Box::new(enumerate_feasible(order).map(|a| a.path().clone()))
    } else {
        Box::new(enumerate_dyck(order))
    };

    let mut rows = Vec::new();
    for u in list {
        let weight = model.as_ref().map(|m| path_weight(m, &u)).transpose()?;
        rows.push((is_feasible(&u), first_return(&u), weight, u));
    }

    match args.format {
        Format::Csv => {
            let mut csv = Csv::new(["u", "feasible", "weight", "first_return"])?;
            for (feasible, k, w, u) in &rows {
                csv.row([
                    u.to_string(),
                    u8::from(*feasible).to_string(),
                    w.as_ref().map(to_pq).unwrap_or_default(),
                    k.to_string(),
                ])?;
            }
            csv.finish()
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(feasible, k, w, u)| {
                    json!({
                        "u": u.jumps(),
                        "feasible": feasible,
                        "weight": w.as_ref().map(to_pq),
                        "first_return": k,
                    })
                })
                .collect();
            json_text(&json!({
                "order": order,
                "feasible_only": args.feasible_only,
                "count": items.len(),
                "paths": items,
            }))
        }
    }
}

fn fmt_f64(x: f64) -> String {
    busyq_core::rational::decimal17(x)
}

pub fn simulate(args: &SimulateArgs) -> Result<String, Failure> {
    let model = args.model.build()?;
    if args.reps == 0 {
        return Err(Failure::BadInput("--reps must be positive".into()));
    }
    let report = if args.joint {
        estimate_joint_busy(&model, args.reps, args.seed)
    } else {
        estimate_busy_dist(&model, args.reps, args.seed)
    };
    match args.out.format {
        Format::Json => json_text(&serde_json::to_value(&report).map_err(|e| Failure::BadInput(e.to_string()))?),
        Format::Csv => {
            let mut csv = Csv::new(["kind", "key", "count", "frequency", "standard_error"])?;
            for i in 0..report.n {
                csv.row([
                    "first".to_string(),
                    (i + 1).to_string(),
                    report.counts[i].to_string(),
                    fmt_f64(report.frequencies[i]),
                    fmt_f64(report.standard_errors[i]),
                ])?;
            }
            for c in report.joint.iter().flatten() {
                let key = c.composition.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                csv.row([
                    "joint".to_string(),
                    key,
                    c.count.to_string(),
                    fmt_f64(c.frequency),
                    fmt_f64(c.standard_error),
                ])?;
            }
            csv.finish()
        }
    }
}

pub fn inverse(args: &InverseArgs) -> Result<String, Failure> {
    let model = args.model.build()?;
    let a = matrix_a(&model)?;
    let inv = invert_lower_triangular(&a)?;
    let n = model.n();
    let mut header = vec!["matrix".to_string(), "row".to_string()];
    header.extend((1..=n).map(|c| format!("c{c}")));
    let mut csv = Csv::new(header)?;
    for (label, m) in [("A", &a), ("A_inv", &inv)] {
        for r in 1..=n {
            let mut row = vec![label.to_string(), r.to_string()];
            row.extend((1..=n).map(|c| to_pq(&m.get(r, c))));
            csv.row(row)?;
        }
    }
    csv.finish()
}

pub fn joint(args: &JointArgs) -> Result<String, Failure> {
    let model = args.model.build()?;
    let max_periods = args.max_periods.clamp(1, model.n());
    let d = joint_busy_dist(&model, max_periods)?;
    match args.out.format {
        Format::Json => {
            let entries: Vec<Value> = d
                .entries
                .iter()
                .map(|(c, p)| json!({"composition": c, "exact": to_pq(p), "decimal": to_decimal17(p)}))
                .collect();
            json_text(&json!({
                "n": model.n(),
                "max_periods": max_periods,
                "entries": entries,
                "remainder": {"exact": to_pq(&d.remainder), "decimal": to_decimal17(&d.remainder)},
                "sum_check": to_pq(&d.total()),
            }))
        }
        Format::Csv => {
            let mut csv = Csv::new(["composition", "exact", "decimal"])?;
            for (c, p) in &d.entries {
                let key = c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                let [e, dec] = exact_cells(p);
                csv.row([key, e, dec])?;
            }
            let [e, dec] = exact_cells(&d.remainder);
            csv.row(["remainder".to_string(), e, dec])?;
            csv.finish()
        }
    }
}
