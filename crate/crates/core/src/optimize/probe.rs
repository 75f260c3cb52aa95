//! Random search for separable states with LQU above ½.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::lqu;
use crate::numfmt::round_json;
use crate::parallel::{par_map, Execution};
use crate::states::{random_separable_with, seeded_rng, to_state_json, DensityMatrix};

/// Values above `½ + PROBE_SLACK` are reported as counterexamples.
pub const PROBE_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct ProbeSummary {
    pub samples: usize,
    pub k_max: usize,
    pub seed: u64,
    pub max_lqu: f64,
    /// Position of the maximizer: pool states first, then random samples.
    pub argmax_index: usize,
    pub argmax_from_pool: bool,
    /// Canonical JSON of the maximizing state.
    pub argmax_state: serde_json::Value,
    /// Set when some state exceeded `½ + 1e-6`.
    pub counterexample: bool,
}

impl ProbeSummary {
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("summary serializes");
        serde_json::to_string_pretty(&round_json(v)).expect("value serializes")
    }
}

/// Max LQU over `samples` random separable mixtures of 1..=k_max product
/// states. Sample `i` uses the stream `seed ^ i`.
pub fn conjecture_probe(samples: usize, k_max: usize, seed: u64) -> Result<ProbeSummary> {
    conjecture_probe_with(samples, k_max, seed, &[], Execution::available())
}

/// As [`conjecture_probe`], with extra candidate states evaluated first.
pub fn conjecture_probe_with(
    samples: usize,
    k_max: usize,
    seed: u64,
    pool: &[DensityMatrix],
    exec: Execution,
) -> Result<ProbeSummary> {
    if samples == 0 {
        return Err(Error::InvalidParams("samples must be at least 1".into()));
    }
    if k_max == 0 {
        return Err(Error::InvalidParams("k_max must be at least 1".into()));
    }
    let drawn = par_map(exec, (0..samples).collect::<Vec<_>>(), |i| {
        let mut rng = seeded_rng(seed ^ i as u64);
        let k = rng.gen_range(1..=k_max);
        let rho = random_separable_with(&mut rng, k).expect("k >= 1");
        (lqu(&rho), rho)
    });
    let pooled: Vec<(f64, DensityMatrix)> = pool.iter().map(|r| (lqu(r), r.clone())).collect();
    let all: Vec<&(f64, DensityMatrix)> = pooled.iter().chain(drawn.iter()).collect();
    let mut best = 0;
    for (i, c) in all.iter().enumerate() {
        if c.0 > all[best].0 {
            best = i;
        }
    }
    let (max_lqu, state) = all[best];
    Ok(ProbeSummary {
        samples,
        k_max,
        seed,
        max_lqu: *max_lqu,
        argmax_index: best,
        argmax_from_pool: best < pooled.len(),
        argmax_state: serde_json::from_str(&to_state_json(state))?,
        counterexample: *max_lqu > 0.5 + PROBE_SLACK,
    })
}
