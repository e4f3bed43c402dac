//! Seeded simulation of the embedded jump chain.
//!
//! Replications are grouped into fixed blocks of [`BLOCK_SIZE`]; block `b`
//! draws from ChaCha8 seeded with the user seed on stream `b`. Reports are
//! therefore identical for any number of worker threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{BusyPeriodDistribution, JointDistribution};
use crate::model::Model;
use crate::paths::DyckPath;
use crate::rational::to_f64;

pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64/stream=block/block=16384";
pub const BLOCK_SIZE: u64 = 1 << 14;

/// Samples trajectories with `ρ_j` rounded to `f64` once per phase.
#[derive(Debug, Clone)]
pub struct ChainSampler {
    rho: Vec<f64>,
}

impl ChainSampler {
    pub fn new(model: &Model) -> Self {
        ChainSampler {
            rho: model.rhos().iter().map(to_f64).collect(),
        }
    }

    /// One trajectory from `(0, 0)` to `(N, N)` as right-jump counts.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, jumps: &mut [u32]) {
        let mut services = 0usize;
        for (idx, (slot, &rho)) in jumps.iter_mut().zip(&self.rho).enumerate() {
            let arrivals = idx + 1;
            *slot = 0;
            while services < arrivals && rng.random::<f64>() < rho {
                services += 1;
                *slot += 1;
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DyckPath {
        let mut jumps = vec![0u32; self.rho.len()];
        self.sample_into(rng, &mut jumps);
        DyckPath::new(jumps).expect("chain never crosses the diagonal")
    }
}

pub fn simulate_chain<R: Rng + ?Sized>(model: &Model, rng: &mut R) -> DyckPath {
    ChainSampler::new(model).sample(rng)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionFrequency {
    pub composition: Vec<usize>,
    pub count: u64,
    pub frequency: f64,
    pub standard_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub n: usize,
    pub replications: u64,
    pub seed: u64,
    pub rng: String,
    pub model_digest: String,
    /// `counts[i − 1]`: replications whose first busy period served `i`.
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    /// `sqrt(f_i (1 − f_i) / R)`.
    pub standard_errors: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub joint: Option<Vec<CompositionFrequency>>,
}

fn standard_error(f: f64, reps: u64) -> f64 {
    (f * (1.0 - f) / reps as f64).sqrt()
}

#[derive(Default)]
struct Tally {
    first: Vec<u64>,
    joint: BTreeMap<Vec<usize>, u64>,
}

fn run_block(sampler: &ChainSampler, n: usize, seed: u64, block: u64, reps: u64, joint: bool) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut tally = Tally {
        first: vec![0; n],
        joint: BTreeMap::new(),
    };
    let mut jumps = vec![0u32; n];
    let mut parts = Vec::with_capacity(n);
    for _ in 0..reps {
        sampler.sample_into(&mut rng, &mut jumps);
        parts.clear();
        let mut prefix = 0usize;
        let mut last = 0usize;
        for (idx, &u) in jumps.iter().enumerate() {
            prefix += u as usize;
            if prefix == idx + 1 {
                parts.push(idx + 1 - last);
                last = idx + 1;
                if !joint {
                    break;
                }
            }
        }
        tally.first[parts[0] - 1] += 1;
        if joint {
            *tally.joint.entry(parts.clone()).or_insert(0) += 1;
        }
    }
    tally
}

fn run(model: &Model, replications: u64, seed: u64, joint: bool) -> SimulationReport {
    assert!(replications >= 1, "need at least one replication");
    let n = model.n();
    let sampler = ChainSampler::new(model);
    let blocks = replications.div_ceil(BLOCK_SIZE);
    let tallies: Vec<Tally> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let reps = BLOCK_SIZE.min(replications - b * BLOCK_SIZE);
            run_block(&sampler, n, seed, b, reps, joint)
        })
        .collect();

    let mut total = Tally {
        first: vec![0; n],
        joint: BTreeMap::new(),
    };
    for t in tallies {
        for (acc, c) in total.first.iter_mut().zip(t.first) {
            *acc += c;
        }
        for (k, c) in t.joint {
            *total.joint.entry(k).or_insert(0) += c;
        }
    }

    let frequencies: Vec<f64> = total
        .first
        .iter()
        .map(|&c| c as f64 / replications as f64)
        .collect();
    let standard_errors = frequencies
        .iter()
        .map(|&f| standard_error(f, replications))
        .collect();
    let joint = joint.then(|| {
        total
            .joint
            .into_iter()
            .map(|(composition, count)| {
                let frequency = count as f64 / replications as f64;
                CompositionFrequency {
                    composition,
                    count,
                    frequency,
                    standard_error: standard_error(frequency, replications),
                }
            })
            .collect()
    });
    SimulationReport {
        n,
        replications,
        seed,
        rng: RNG_ALGORITHM.to_string(),
        model_digest: model.digest(),
        counts: total.first,
        frequencies,
        standard_errors,
        joint,
    }
}

/// Empirical law of the first busy-period size over `replications` runs.
pub fn estimate_busy_dist(model: &Model, replications: u64, seed: u64) -> SimulationReport {
    run(model, replications, seed, false)
}

/// As [`estimate_busy_dist`], also tallying the full sequence of busy-period
/// sizes of each trajectory.
pub fn estimate_joint_busy(model: &Model, replications: u64, seed: u64) -> SimulationReport {
    run(model, replications, seed, true)
}

/// One entry of a comparison between simulated and exact probabilities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub label: String,
    pub frequency: f64,
    pub exact: f64,
    /// `sigmas · sqrt(p(1 − p)/R)` with `p` the exact probability.
    pub bound: f64,
    pub within: bool,
}

fn deviation(label: String, frequency: f64, exact: f64, reps: u64, sigmas: f64) -> Deviation {
    let bound = sigmas * standard_error(exact, reps);
    Deviation {
        label,
        frequency,
        exact,
        bound,
        within: (frequency - exact).abs() <= bound,
    }
}

/// Checks `|f_i − s_i| ≤ sigmas · sqrt(s_i(1 − s_i)/R)` entrywise.
pub fn compare_first(report: &SimulationReport, exact: &BusyPeriodDistribution, sigmas: f64) -> Vec<Deviation> {
    exact
        .values()
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let f = report.frequencies.get(idx).copied().unwrap_or(0.0);
            deviation(format!("s_{}", idx + 1), f, to_f64(s), report.replications, sigmas)
        })
        .collect()
}

/// Same check over every composition of the exact joint law; compositions
/// never observed count as frequency zero.
pub fn compare_joint(report: &SimulationReport, exact: &JointDistribution, sigmas: f64) -> Vec<Deviation> {
    let observed: BTreeMap<&[usize], f64> = report
        .joint
        .iter()
        .flatten()
        .map(|c| (c.composition.as_slice(), c.frequency))
        .collect();
    exact
        .entries
        .iter()
        .map(|(composition, p)| {
            let f = observed.get(composition.as_slice()).copied().unwrap_or(0.0);
            let label = format!("{composition:?}");
            deviation(label, f, to_f64(p), report.replications, sigmas)
        })
        .collect()
}
