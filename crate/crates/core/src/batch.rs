//! Batch verification of forward-generated instances, across Williamson types.

use crate::oracles::random_instance;
use crate::par;
use crate::poincare::{check_cocycle, oracle_solve, solve, verify_decomposition};
use crate::williamson::{ModelSystem, WilliamsonType};

#[derive(Debug, Clone)]
pub struct BatchConfig {
    pub types: Vec<WilliamsonType>,
    pub per_type: usize,
    pub degree: u32,
    pub seed: u64,
    /// Also compare against the elimination solver.
    pub oracle: bool,
}

/// Outcome of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InstanceOutcome {
    pub cocycle: bool,
    pub solved: bool,
    pub sound: bool,
    pub matches_truth: bool,
    /// `None` when the oracle was not run.
    pub oracle_agrees: Option<bool>,
}

impl InstanceOutcome {
    /// Decomposition checks only; the oracle comparison is counted separately.
    pub fn ok(&self) -> bool {
        self.cocycle && self.solved && self.sound && self.matches_truth
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSummary {
    pub wtype: WilliamsonType,
    pub instances: usize,
    /// Seeds whose decomposition failed a check.
    pub failures: Vec<u64>,
    pub oracle_checked: usize,
    pub oracle_mismatches: usize,
}

impl TypeSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.oracle_mismatches == 0
    }
}

/// Seed of instance `k` of the type at position `t` in the batch.
pub fn instance_seed(base: u64, t: usize, k: usize) -> u64 {
    base.wrapping_add(((t as u64) << 32) | k as u64)
}

pub fn run_instance(system: &ModelSystem, degree: u32, seed: u64, oracle: bool) -> InstanceOutcome {
    let inst = random_instance(system, degree, seed);
    let mut out = InstanceOutcome {
        cocycle: check_cocycle(&inst.data).passed(),
        ..Default::default()
    };
    let Ok(dec) = solve(&inst.data) else {
        return out;
    };
    out.solved = true;
    out.sound = verify_decomposition(&inst.data, &dec).sound();
    out.matches_truth = dec == inst.truth;
    if oracle {
        out.oracle_agrees = Some(oracle_solve(&inst.data, degree).is_ok_and(|o| o == dec));
    }
    out
}

fn summarize(config: &BatchConfig, outcomes: Vec<(usize, u64, InstanceOutcome)>) -> Vec<TypeSummary> {
    let mut summaries: Vec<TypeSummary> = config
        .types
        .iter()
        .map(|&wtype| TypeSummary {
            wtype,
            instances: 0,
            failures: Vec::new(),
            oracle_checked: 0,
            oracle_mismatches: 0,
        })
        .collect();
    for (t, seed, o) in outcomes {
        let s = &mut summaries[t];
        s.instances += 1;
        if !o.ok() {
            s.failures.push(seed);
        }
        if let Some(agrees) = o.oracle_agrees {
            s.oracle_checked += 1;
            if !agrees {
                s.oracle_mismatches += 1;
            }
        }
    }
    summaries
}

fn jobs(config: &BatchConfig) -> Vec<(usize, ModelSystem, u64)> {
    let mut out = Vec::new();
    for (t, &wtype) in config.types.iter().enumerate() {
        let system = ModelSystem::standard(wtype).expect("enumerated types are valid");
        for k in 0..config.per_type {
            out.push((t, system.clone(), instance_seed(config.seed, t, k)));
        }
    }
    out
}

/// Runs the batch with instances distributed over the thread pool when the
/// `parallel` feature is on.
pub fn run_batch(config: &BatchConfig) -> Vec<TypeSummary> {
    let outcomes = par::map(&jobs(config), |(t, sys, seed)| {
        (*t, *seed, run_instance(sys, config.degree, *seed, config.oracle))
    });
    summarize(config, outcomes)
}

/// Same as [`run_batch`], one instance after another.
pub fn run_batch_sequential(config: &BatchConfig) -> Vec<TypeSummary> {
    let outcomes = par::map_sequential(&jobs(config), |(t, sys, seed)| {
        (*t, *seed, run_instance(sys, config.degree, *seed, config.oracle))
    });
    summarize(config, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batch_passes_both_ways() {
        let config = BatchConfig {
            types: WilliamsonType::enumerate(2, 2),
            per_type: 3,
            degree: 3,
            seed: 11,
            oracle: true,
        };
        let a = run_batch(&config);
        let b = run_batch_sequential(&config);
        assert_eq!(a, b);
        assert!(a.iter().all(TypeSummary::passed));
    }

    #[test]
    fn seeds_distinct_across_types() {
        assert_ne!(instance_seed(0, 0, 1), instance_seed(0, 1, 0));
    }
}
