use busyq_core::exact::{
    busy_dist_explicit, busy_dist_matrix, busy_dist_recursion, busy_dist_recursion_binomial,
    joint_busy_dist,
};
use busyq_core::model::random_model;
use busyq_core::oracle::{busy_dist_bruteforce, busy_dist_enumeration};
use busyq_core::paths::total_weight;
use busyq_core::rational::{int, ratio};
use busyq_core::{Method, Model};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_routes(m: &Model) -> Vec<busyq_core::BusyPeriodDistribution> {
    let mut out = vec![
        busy_dist_recursion(m).unwrap(),
        busy_dist_matrix(m).unwrap(),
        busy_dist_explicit(m).unwrap(),
        busy_dist_bruteforce(m).unwrap(),
    ];
    if m.is_proportional() {
        out.push(busy_dist_recursion_binomial(m).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree_on_random_sequences(n in 1usize..=12, seed in any::<u64>()) {
        let m = random_model(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let routes = all_routes(&m);
        for r in &routes[1..] {
            prop_assert_eq!(routes[0].first_mismatch(r), None, "{} vs {}", routes[0].method(), r.method());
        }
        prop_assert!(routes[0].is_probability_vector());
    }

    #[test]
    fn routes_agree_on_proportional_models(n in 1usize..=12, lp in 1i64..20, lq in 1i64..20, mp in 1i64..20, mq in 1i64..20) {
        let m = Model::from_rate(n, ratio(lp, lq), ratio(mp, mq)).unwrap();
        let routes = all_routes(&m);
        prop_assert_eq!(routes.len(), 5);
        for r in &routes[1..] {
            prop_assert!(routes[0].same_values(r));
        }
    }
}

#[test]
fn proportional_and_explicit_sources_are_indistinguishable() {
    for n in 1..=9 {
        let prop = Model::from_rate(n, ratio(3, 4), int(2)).unwrap();
        let seq = Model::from_sequence(prop.lambda_seq().to_vec(), int(2)).unwrap();
        assert_eq!(prop.digest(), seq.digest());
        assert_eq!(prop.rhos(), seq.rhos());
        for (a, b) in [
            (busy_dist_recursion(&prop), busy_dist_recursion(&seq)),
            (busy_dist_matrix(&prop), busy_dist_matrix(&seq)),
            (busy_dist_explicit(&prop), busy_dist_explicit(&seq)),
            (busy_dist_bruteforce(&prop), busy_dist_bruteforce(&seq)),
        ] {
            assert_eq!(a.unwrap(), b.unwrap());
        }
        assert_eq!(joint_busy_dist(&prop, n).unwrap(), joint_busy_dist(&seq, n).unwrap());
    }
}

#[test]
fn enumeration_oracle_agrees_up_to_twelve() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for n in 1..=12 {
        let m = if n <= 10 { random_model(n, &mut rng) } else { Model::proportional(n, 1, 3).unwrap() };
        let e = busy_dist_enumeration(&m).unwrap();
        assert_eq!(e.method(), Method::Oracle);
        assert!(e.same_values(&busy_dist_bruteforce(&m).unwrap()), "{m}");
        assert_eq!(total_weight(&m).unwrap(), int(1));
    }
}

#[test]
fn explicit_route_independent_of_worker_count() {
    let m = Model::proportional(12, 1, 1).unwrap();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(6).build().unwrap();
    let a = one.install(|| busyq_core::exact::busy_dist_explicit_as::<f64>(&m).unwrap());
    let b = many.install(|| busyq_core::exact::busy_dist_explicit_as::<f64>(&m).unwrap());
    let bits = |d: &busyq_core::BusyPeriodDistribution<f64>| d.values().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
}
