//! The discovery engine: dichotomous mutation and crossover, one-to-one
//! Pareto selection, crowding truncation, and the seeded main loop.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::causality::{init_population, CausalityMatrix, Individual};
use crate::error::{Error, Result};
use crate::eventlog::{build_stats, EventLog};
use crate::metrics::{evaluate, QualityVector};
use crate::pareto::{dominates, non_dominated_sort, truncate, ObjectivePoint};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub population_size: usize,
    pub cr1: f64,
    pub cr2: f64,
    pub max_iterations: usize,
    pub stall_iterations: usize,
    pub seed: u64,
    pub runs: usize,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            population_size: 100,
            cr1: 0.2,
            cr2: 0.5,
            max_iterations: 100,
            stall_iterations: 10,
            seed: 0,
            runs: 1,
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 {
            return Err(Error::PopulationTooSmall(self.population_size));
        }
        for (name, v) in [("cr1", self.cr1), ("cr2", self.cr2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidConfig(format!("{name} = {v} not in [0, 1]")));
            }
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        if self.runs < 1 {
            return Err(Error::InvalidConfig("runs must be >= 1".into()));
        }
        Ok(())
    }
}

/// One non-dominated model with its full quality vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoEntry {
    pub model: CausalityMatrix,
    pub quality: QualityVector,
}

/// Outcome of a single seeded run.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub pareto: Vec<ParetoEntry>,
    pub iterations_used: usize,
    /// Wall time per iteration in milliseconds.
    pub per_iteration_ms: Vec<f64>,
    pub seed: u64,
    /// Best front completeness after initialization and after each
    /// iteration; non-decreasing under elitist selection.
    pub best_completeness: Vec<f64>,
}

/// Outcome of `runs` independent seeded runs plus their union front.
#[derive(Debug, Clone, Serialize)]
pub struct MultiRunResult {
    pub runs: Vec<RunResult>,
    pub union_front: Vec<ParetoEntry>,
}

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent RNG stream per (generation, individual). Evaluation order
/// across worker threads cannot change any draw.
fn stream_rng(seed: u64, generation: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed;
    for word in [generation, index] {
        z = splitmix(z.wrapping_add(word).wrapping_add(SPLITMIX_GAMMA));
    }
    ChaCha8Rng::seed_from_u64(z)
}

#[inline]
fn random_bit(rng: &mut impl Rng) -> u8 {
    (rng.next_u32() & 1) as u8
}

/// Dichotomous mutation from two explicit donors. Returns the mutant and
/// the donor disagreement mask: where the donors differ the mutant bit is
/// a fresh random bit, elsewhere it copies the first donor.
pub fn mutant_from_donors(
    d1: &CausalityMatrix,
    d2: &CausalityMatrix,
    rng: &mut impl Rng,
) -> (CausalityMatrix, CausalityMatrix) {
    let n = d1.n();
    assert_eq!(d2.n(), n);
    let mut mutant = Vec::with_capacity(n * n);
    let mut mask = Vec::with_capacity(n * n);
    for (&b1, &b2) in d1.bits().iter().zip(d2.bits()) {
        let xor = b1 ^ b2;
        mask.push(xor);
        mutant.push(if xor == 1 { random_bit(rng) } else { b1 });
    }
    (
        CausalityMatrix::from_bits(n, mutant),
        CausalityMatrix::from_bits(n, mask),
    )
}

/// Picks two distinct donors other than `base`, then applies
/// [`mutant_from_donors`]. Requires a population of at least 4.
pub fn dichotomous_mutate(
    base: usize,
    pop: &[Individual],
    rng: &mut impl Rng,
) -> (CausalityMatrix, CausalityMatrix) {
    assert!(pop.len() >= 4, "mutation needs two distinct other donors");
    let r1 = loop {
        let x = rng.random_range(0..pop.len());
        if x != base {
            break x;
        }
    };
    let r2 = loop {
        let x = rng.random_range(0..pop.len());
        if x != base && x != r1 {
            break x;
        }
    };
    mutant_from_donors(&pop[r1].model, &pop[r2].model, rng)
}

/// Dichotomous crossover: per bit the crossover rate is `cr1` where the
/// donors agreed and `cr2` where they differed; the mutant bit is taken
/// iff a fresh uniform draw falls below that rate.
pub fn dichotomous_crossover(
    current: &CausalityMatrix,
    mutant: &CausalityMatrix,
    donor_xor: &CausalityMatrix,
    cr1: f64,
    cr2: f64,
    rng: &mut impl Rng,
) -> CausalityMatrix {
    let n = current.n();
    assert_eq!(mutant.n(), n);
    assert_eq!(donor_xor.n(), n);
    let mut child = Vec::with_capacity(n * n);
    for i in 0..n * n {
        let rate = if donor_xor.bits()[i] == 1 { cr2 } else { cr1 };
        let r: f64 = rng.random();
        child.push(if r < rate {
            mutant.bits()[i]
        } else {
            current.bits()[i]
        });
    }
    CausalityMatrix::from_bits(n, child)
}

fn objective_of(ind: &Individual, index: usize) -> ObjectivePoint {
    let q = ind.fitness.expect("individual not evaluated");
    ObjectivePoint::new(q.completeness, q.generalization, index)
}

/// One-to-one selection: a child replaces its parent only when it
/// dominates it; a dominated child is dropped; otherwise both survive.
/// Output size lies in [N, 2N].
pub fn select(pop: Vec<Individual>, candidates: Vec<Individual>) -> Vec<Individual> {
    assert_eq!(pop.len(), candidates.len());
    let mut next = pop;
    let mut kept_children = Vec::new();
    for (i, child) in candidates.into_iter().enumerate() {
        let parent_pt = objective_of(&next[i], i);
        let child_pt = objective_of(&child, i);
        if dominates(&child_pt, &parent_pt) {
            next[i] = child;
        } else if dominates(&parent_pt, &child_pt) {
            // parent stays, child discarded
        } else {
            kept_children.push(child);
        }
    }
    next.extend(kept_children);
    next
}

/// Weighted average of the quality dimensions, completeness weighted ten
/// to one: `(10 f_c + f_p + f_s + f_g) / 13`.
pub fn weighted_sum(q: &QualityVector) -> f64 {
    (10.0 * q.completeness + q.preciseness + q.simplicity + q.generalization) / 13.0
}

fn population_points(pop: &[Individual]) -> Vec<ObjectivePoint> {
    pop.iter()
        .enumerate()
        .map(|(i, ind)| objective_of(ind, i))
        .collect()
}

/// Stall scalar: best completeness plus best generalization in the
/// population. Elitist selection makes it non-decreasing, so any strict
/// increase counts as improvement.
fn front_scalar(pop: &[Individual]) -> f64 {
    let best_c = pop
        .iter()
        .map(|i| i.fitness.unwrap().completeness)
        .fold(f64::NEG_INFINITY, f64::max);
    let best_g = pop
        .iter()
        .map(|i| i.fitness.unwrap().generalization)
        .fold(f64::NEG_INFINITY, f64::max);
    best_c + best_g
}

fn best_completeness(pop: &[Individual]) -> f64 {
    pop.iter()
        .map(|i| i.fitness.unwrap().completeness)
        .fold(f64::NEG_INFINITY, f64::max)
}

const IMPROVEMENT_EPS: f64 = 1e-12;

/// Runs one seeded evolution on the log and returns the final first
/// front with all four metrics. Candidate generation and evaluation fan
/// out across worker threads; results are independent of scheduling
/// because each individual draws from its own (generation, index) stream.
pub fn run(log: &EventLog, cfg: &EvolutionConfig) -> Result<RunResult> {
    cfg.validate()?;
    let stats = build_stats(log);
    let n = log.n();
    let pop_size = cfg.population_size;

    let mut init_rng = stream_rng(cfg.seed, 0, 0);
    let mut pop = init_population(n, pop_size, stats.dependency_matrix(), &mut init_rng)?;
    pop.par_iter_mut()
        .for_each(|ind| ind.fitness = Some(evaluate(&ind.model, &stats, log)));

    let mut best = front_scalar(&pop);
    let mut best_completeness_log = vec![best_completeness(&pop)];
    let mut stall = 0usize;
    let mut timings = Vec::new();
    let mut iterations_used = 0usize;

    for generation in 1..=cfg.max_iterations {
        let started = Instant::now();

        let candidates: Vec<Individual> = (0..pop_size)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(cfg.seed, generation as u64, i as u64 + 1);
                let (mutant, mask) = dichotomous_mutate(i, &pop, &mut rng);
                let child = dichotomous_crossover(
                    &pop[i].model,
                    &mutant,
                    &mask,
                    cfg.cr1,
                    cfg.cr2,
                    &mut rng,
                );
                let mut ind = Individual::new(child);
                ind.fitness = Some(evaluate(&ind.model, &stats, log));
                ind
            })
            .collect();

        let merged = select(std::mem::take(&mut pop), candidates);
        pop = if merged.len() > pop_size {
            let points = population_points(&merged);
            let partition = non_dominated_sort(&points);
            let keep = truncate(&partition, &points, pop_size);
            let mut rank_of = vec![0usize; merged.len()];
            for (r, front) in partition.fronts.iter().enumerate() {
                for &i in front {
                    rank_of[i] = r;
                }
            }
            let mut slots: Vec<Option<Individual>> = merged.into_iter().map(Some).collect();
            keep.iter()
                .map(|&i| {
                    let mut ind = slots[i].take().expect("kept index unique");
                    ind.rank = Some(rank_of[i]);
                    ind
                })
                .collect()
        } else {
            merged
        };

        debug_assert_eq!(pop.len(), pop_size);
        timings.push(started.elapsed().as_secs_f64() * 1e3);
        iterations_used = generation;
        best_completeness_log.push(best_completeness(&pop));

        let scalar = front_scalar(&pop);
        if scalar > best + IMPROVEMENT_EPS {
            best = scalar;
            stall = 0;
        } else {
            stall += 1;
            if stall >= cfg.stall_iterations {
                break;
            }
        }
    }

    let points = population_points(&pop);
    let partition = non_dominated_sort(&points);
    let first = partition.first();
    let distances =
        crate::pareto::crowding_distance(&first.iter().map(|&i| points[i]).collect::<Vec<_>>());
    let mut seen = std::collections::HashSet::new();
    let mut front = Vec::new();
    for (slot, &i) in first.iter().enumerate() {
        let ind = &mut pop[i];
        ind.rank = Some(0);
        ind.crowding = Some(distances[slot]);
        if seen.insert(ind.model.bits().to_vec()) {
            front.push(ParetoEntry {
                model: ind.model.clone(),
                quality: ind.fitness.unwrap(),
            });
        }
    }

    Ok(RunResult {
        pareto: front,
        iterations_used,
        per_iteration_ms: timings,
        seed: cfg.seed,
        best_completeness: best_completeness_log,
    })
}

/// Executes `cfg.runs` independent runs seeded `seed + run index` and
/// returns them together with the non-dominated union of their fronts.
pub fn run_many(log: &EventLog, cfg: &EvolutionConfig) -> Result<MultiRunResult> {
    cfg.validate()?;
    let mut runs = Vec::with_capacity(cfg.runs);
    for r in 0..cfg.runs {
        let mut run_cfg = cfg.clone();
        run_cfg.seed = cfg.seed.wrapping_add(r as u64);
        runs.push(run(log, &run_cfg)?);
    }

    let mut entries: Vec<ParetoEntry> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for result in &runs {
        for entry in &result.pareto {
            if seen.insert(entry.model.bits().to_vec()) {
                entries.push(entry.clone());
            }
        }
    }
    let points: Vec<ObjectivePoint> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| ObjectivePoint::new(e.quality.completeness, e.quality.generalization, i))
        .collect();
    let partition = non_dominated_sort(&points);
    let union_front = partition
        .first()
        .iter()
        .map(|&i| entries[i].clone())
        .collect();

    Ok(MultiRunResult { runs, union_front })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Forces every random bit to a fixed value.
    struct ConstRng(u32);

    impl rand::RngCore for ConstRng {
        fn next_u32(&mut self) -> u32 {
            self.0
        }
        fn next_u64(&mut self) -> u64 {
            self.0 as u64
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            dest.fill(self.0 as u8);
        }
    }

    fn matrix(n: usize, bits: &[u8]) -> CausalityMatrix {
        CausalityMatrix::from_bits(n, bits.to_vec())
    }

    #[test]
    fn mutation_copies_agreeing_bits() {
        let d1 = matrix(2, &[0, 1, 1, 0]);
        let d2 = matrix(2, &[0, 1, 1, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (mutant, mask) = mutant_from_donors(&d1, &d2, &mut rng);
        assert_eq!(mutant, d1);
        assert_eq!(mask.count_ones(), 0);
    }

    #[test]
    fn mutation_randomizes_disagreeing_bits() {
        let d1 = matrix(2, &[0, 1, 0, 1]);
        let d2 = matrix(2, &[1, 0, 1, 0]);
        // forced random bits: all zeros, then all ones
        let (m0, mask) = mutant_from_donors(&d1, &d2, &mut ConstRng(0));
        assert_eq!(m0.bits(), &[0, 0, 0, 0]);
        assert_eq!(mask.bits(), &[1, 1, 1, 1]);
        let (m1, _) = mutant_from_donors(&d1, &d2, &mut ConstRng(1));
        assert_eq!(m1.bits(), &[1, 1, 1, 1]);
    }

    #[test]
    fn mutation_mixed_donors_exhaustive() {
        // all four (bit1, bit2) combinations in one matrix
        let d1 = matrix(2, &[0, 0, 1, 1]);
        let d2 = matrix(2, &[0, 1, 0, 1]);
        for forced in [0u32, 1] {
            let (m, mask) = mutant_from_donors(&d1, &d2, &mut ConstRng(forced));
            assert_eq!(mask.bits(), &[0, 1, 1, 0]);
            assert_eq!(m.bits()[0], 0, "agreeing zeros copied");
            assert_eq!(m.bits()[3], 1, "agreeing ones copied");
            assert_eq!(m.bits()[1], forced as u8);
            assert_eq!(m.bits()[2], forced as u8);
        }
    }

    #[test]
    fn mutation_disagreement_is_balanced() {
        // over 10_000 disagreeing bits the mean is about one half
        let n = 100;
        let d1 = CausalityMatrix::zeros(n);
        let d2 = matrix(n, &vec![1u8; n * n]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (m, _) = mutant_from_donors(&d1, &d2, &mut rng);
        let mean = m.count_ones() as f64 / (n * n) as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn crossover_rate_zero_is_identity() {
        let current = matrix(2, &[1, 0, 0, 1]);
        let mutant = matrix(2, &[0, 1, 1, 0]);
        let mask = matrix(2, &[1, 1, 0, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let child = dichotomous_crossover(&current, &mutant, &mask, 0.0, 0.0, &mut rng);
        assert_eq!(child, current);
    }

    #[test]
    fn crossover_rate_one_returns_mutant() {
        let current = matrix(2, &[1, 0, 0, 1]);
        let mutant = matrix(2, &[0, 1, 1, 0]);
        let mask = matrix(2, &[0, 1, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let child = dichotomous_crossover(&current, &mutant, &mask, 1.0, 1.0, &mut rng);
        assert_eq!(child, mutant);
    }

    fn evaluated(bits: &[u8], c: f64, g: f64) -> Individual {
        let mut ind = Individual::new(matrix(2, bits));
        ind.fitness = Some(QualityVector {
            completeness: c,
            generalization: g,
            preciseness: 0.0,
            simplicity: 0.0,
        });
        ind
    }

    #[test]
    fn select_all_children_dominated() {
        let pop: Vec<Individual> = (0..4).map(|_| evaluated(&[1, 0, 0, 0], 0.9, 0.9)).collect();
        let children: Vec<Individual> =
            (0..4).map(|_| evaluated(&[0, 1, 0, 0], 0.1, 0.1)).collect();
        let out = select(pop, children);
        assert_eq!(out.len(), 4);
        assert!(out.iter().all(|i| i.fitness.unwrap().completeness == 0.9));
    }

    #[test]
    fn select_incomparable_keeps_both() {
        let pop: Vec<Individual> = (0..4).map(|_| evaluated(&[1, 0, 0, 0], 0.9, 0.1)).collect();
        let children: Vec<Individual> =
            (0..4).map(|_| evaluated(&[0, 1, 0, 0], 0.1, 0.9)).collect();
        assert_eq!(select(pop, children).len(), 8);
    }

    #[test]
    fn select_dominating_children_replace() {
        let pop: Vec<Individual> = (0..4).map(|_| evaluated(&[1, 0, 0, 0], 0.5, 0.5)).collect();
        let children: Vec<Individual> =
            (0..4).map(|_| evaluated(&[0, 1, 0, 0], 0.6, 0.6)).collect();
        let out = select(pop, children);
        assert_eq!(out.len(), 4);
        assert!(out.iter().all(|i| i.fitness.unwrap().completeness == 0.6));
    }

    #[test]
    fn weighted_sum_values() {
        let q = QualityVector {
            completeness: 1.0,
            generalization: 0.79,
            preciseness: 1.0,
            simplicity: 0.994,
        };
        assert!((weighted_sum(&q) - 0.983).abs() < 0.001);
        let ones = QualityVector {
            completeness: 1.0,
            generalization: 1.0,
            preciseness: 1.0,
            simplicity: 1.0,
        };
        assert_eq!(weighted_sum(&ones), 1.0);
        let zeros = QualityVector {
            completeness: 0.0,
            generalization: 0.0,
            preciseness: 0.0,
            simplicity: 0.0,
        };
        assert_eq!(weighted_sum(&zeros), 0.0);
    }

    fn small_log() -> EventLog {
        EventLog::parse_traces(b"a b c\na b c\na c b\nb a c").unwrap()
    }

    #[test]
    fn run_is_seed_reproducible() {
        let log = small_log();
        let cfg = EvolutionConfig {
            population_size: 10,
            max_iterations: 15,
            seed: 99,
            ..Default::default()
        };
        let a = run(&log, &cfg).unwrap();
        let b = run(&log, &cfg).unwrap();
        assert_eq!(a.pareto, b.pareto);
        assert_eq!(a.iterations_used, b.iterations_used);
        assert_eq!(a.best_completeness, b.best_completeness);
    }

    #[test]
    fn run_independent_of_thread_count() {
        let log = small_log();
        let cfg = EvolutionConfig {
            population_size: 12,
            max_iterations: 10,
            seed: 5,
            ..Default::default()
        };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run(&log, &cfg).unwrap());
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run(&log, &cfg).unwrap());
        assert_eq!(single.pareto, quad.pareto);
        assert_eq!(single.best_completeness, quad.best_completeness);
    }

    #[test]
    fn single_task_log_terminates_quickly() {
        let log = EventLog::parse_traces(b"a").unwrap();
        let cfg = EvolutionConfig {
            population_size: 8,
            seed: 1,
            ..Default::default()
        };
        let result = run(&log, &cfg).unwrap();
        assert!(result.iterations_used <= cfg.stall_iterations + 1);
        assert!(!result.pareto.is_empty());
        for entry in &result.pareto {
            assert_eq!(entry.model.n(), 1);
        }
    }

    #[test]
    fn zero_crossover_is_fixed_point() {
        let log = small_log();
        let cfg = EvolutionConfig {
            population_size: 8,
            cr1: 0.0,
            cr2: 0.0,
            max_iterations: 5,
            stall_iterations: 100,
            seed: 21,
            ..Default::default()
        };
        let result = run(&log, &cfg).unwrap();
        // the population never changes, so the front equals the front of
        // the freshly initialized population
        let stats = build_stats(&log);
        let mut rng = stream_rng(cfg.seed, 0, 0);
        let mut pop = init_population(
            log.n(),
            cfg.population_size,
            stats.dependency_matrix(),
            &mut rng,
        )
        .unwrap();
        for ind in &mut pop {
            ind.fitness = Some(evaluate(&ind.model, &stats, &log));
        }
        let points = population_points(&pop);
        let partition = non_dominated_sort(&points);
        let mut seen = std::collections::HashSet::new();
        let mut expected = Vec::new();
        for &i in partition.first() {
            if seen.insert(pop[i].model.bits().to_vec()) {
                expected.push(pop[i].model.clone());
            }
        }
        let got: Vec<CausalityMatrix> = result.pareto.iter().map(|e| e.model.clone()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn front_is_mutually_nondominating() {
        let log = small_log();
        let cfg = EvolutionConfig {
            population_size: 10,
            max_iterations: 20,
            seed: 3,
            ..Default::default()
        };
        let result = run(&log, &cfg).unwrap();
        for a in &result.pareto {
            for b in &result.pareto {
                let pa = ObjectivePoint::new(a.quality.completeness, a.quality.generalization, 0);
                let pb = ObjectivePoint::new(b.quality.completeness, b.quality.generalization, 1);
                assert!(!dominates(&pa, &pb));
            }
        }
    }

    #[test]
    fn best_completeness_never_decreases() {
        let log = small_log();
        for seed in 0..5u64 {
            let cfg = EvolutionConfig {
                population_size: 10,
                max_iterations: 25,
                seed,
                ..Default::default()
            };
            let result = run(&log, &cfg).unwrap();
            for w in result.best_completeness.windows(2) {
                assert!(w[1] >= w[0], "completeness dropped: {:?}", w);
            }
        }
    }

    #[test]
    fn run_many_union_front() {
        let log = small_log();
        let cfg = EvolutionConfig {
            population_size: 8,
            max_iterations: 10,
            seed: 7,
            runs: 3,
            ..Default::default()
        };
        let multi = run_many(&log, &cfg).unwrap();
        assert_eq!(multi.runs.len(), 3);
        assert_eq!(multi.runs[0].seed, 7);
        assert_eq!(multi.runs[2].seed, 9);
        assert!(!multi.union_front.is_empty());
        for a in &multi.union_front {
            for b in &multi.union_front {
                let pa = ObjectivePoint::new(a.quality.completeness, a.quality.generalization, 0);
                let pb = ObjectivePoint::new(b.quality.completeness, b.quality.generalization, 1);
                assert!(!dominates(&pa, &pb));
            }
        }
    }

    #[test]
    fn config_validation() {
        let log = small_log();
        let bad_pop = EvolutionConfig {
            population_size: 2,
            ..Default::default()
        };
        assert!(matches!(
            run(&log, &bad_pop),
            Err(Error::PopulationTooSmall(2))
        ));
        let bad_cr = EvolutionConfig {
            cr1: 1.5,
            ..Default::default()
        };
        assert!(matches!(run(&log, &bad_cr), Err(Error::InvalidConfig(_))));
    }
}
