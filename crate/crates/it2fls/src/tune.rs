//! Supervised tuning of rulebase parameters with a two-step swarm search.
//!
//! The pipeline mirrors how interval systems are usually obtained in
//! practice: first fit a crisp type-1 system to the data
//! ([`optimize_t1`]), then widen its memberships into footprints of
//! uncertainty and re-optimize ([`optimize_it2`]) with the zero-width blur
//! of the baseline seeded into the starting population. Because that seed
//! carries the baseline's own fitness and the population best is only ever
//! replaced by a strictly better candidate, the second step can never end
//! worse than the first — `final_fitness ≤ rmse(baseline, data)` holds
//! exactly, not statistically.
//!
//! The interval stage searches `(m, σ, δ₁, δ₂)` per membership function and
//! one half-width per consequent scalar, so the lower envelope keeps
//! `σ₁ = σ − δ₁ > 0` by construction (a repair step projects `δ₁` back when
//! the swarm overshoots). Rule structure — a full grid over each input's
//! membership functions — is fixed; only parameters move.
//!
//! The engine itself is a plain constriction-coefficient particle swarm
//! behind the private [`swarm_search`] function; any population method with
//! elitist bookkeeping could be swapped in without touching the public API.

use crate::rules::{Consequent, FuzzySystem, InputDomain, Reducer, Rule, SystemKind};
use crate::sets::FuzzySet;
use crate::{math, Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Supervised samples: one `(x, y)` row per observation.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Vec<(Vec<f64>, f64)>,
}

impl Dataset {
    /// Validates that there is at least one row, every row has the same
    /// nonzero input arity, and all values are finite.
    pub fn new(rows: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let arity = rows[0].0.len();
        for (row, (x, y)) in rows.iter().enumerate() {
            if x.is_empty()
                || x.len() != arity
                || !y.is_finite()
                || x.iter().any(|v| !v.is_finite())
            {
                return Err(Error::BadDataRow { row });
            }
        }
        Ok(Dataset { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_inputs(&self) -> usize {
        self.rows[0].0.len()
    }

    pub fn rows(&self) -> &[(Vec<f64>, f64)] {
        &self.rows
    }

    /// Smallest and largest target value.
    pub fn target_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (_, y) in &self.rows {
            lo = lo.min(*y);
            hi = hi.max(*y);
        }
        (lo, hi)
    }

    /// Smallest and largest value observed in input column `i`.
    pub fn input_bounds(&self, i: usize) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, _) in &self.rows {
            lo = lo.min(x[i]);
            hi = hi.max(x[i]);
        }
        (lo, hi)
    }
}

/// Which consequent family the tuned rulebase uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsequentKind {
    /// One constant per rule (interval constants after blurring).
    Constant,
    /// One affine form per rule: intercept plus one coefficient per input.
    Linear,
}

/// Hyperparameters and structural choices for both tuning steps.
///
/// `mf_count[i]` fixes how many membership functions input `i` gets; the
/// rulebase is the full grid over those counts. Search boxes are derived
/// from the input domains (`input_domains`, or the dataset's column ranges
/// when absent), from `sigma_frac` — the σ box as a fraction of each
/// domain's width — and from the dataset's target range (overridable via
/// `consequent_bounds`). `reducer` and `t_norm` configure the built systems;
/// the type-1 step always uses the type-1 weighted average, so `reducer`
/// only shapes the interval step.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub seed: u64,
    pub mf_count: Vec<usize>,
    pub consequent_kind: ConsequentKind,
    pub reducer: Reducer,
    pub t_norm: crate::rules::TNorm,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Residual charged to rows the system cannot evaluate; `None` derives
    /// ten times the dataset's target range.
    pub penalty: Option<f64>,
    /// σ search box as fractions of the input domain width.
    pub sigma_frac: (f64, f64),
    /// Search box for consequent scalars; `None` derives the dataset's
    /// target range.
    pub consequent_bounds: Option<(f64, f64)>,
    /// Input domains for the type-1 step; `None` derives them from the
    /// dataset's column ranges.
    pub input_domains: Option<Vec<InputDomain>>,
}

impl OptimizerConfig {
    pub fn new(mf_count: Vec<usize>) -> Self {
        OptimizerConfig {
            population_size: 30,
            max_generations: 200,
            seed: 0,
            mf_count,
            consequent_kind: ConsequentKind::Constant,
            reducer: Reducer::EiascCenterOfSets,
            t_norm: crate::rules::TNorm::Product,
            inertia: 0.7298,
            cognitive: 1.4962,
            social: 1.4962,
            penalty: None,
            sigma_frac: (0.05, 1.0),
            consequent_bounds: None,
            input_domains: None,
        }
    }

    fn check(&self, num_inputs: usize) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::BadRequest("population size must be at least 2"));
        }
        if self.mf_count.len() != num_inputs {
            return Err(Error::BadRequest(
                "mf_count must list one entry per dataset input",
            ));
        }
        if self.mf_count.contains(&0) {
            return Err(Error::BadRequest(
                "every input needs at least one membership function",
            ));
        }
        let (lo, hi) = self.sigma_frac;
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
            return Err(Error::BadRequest("sigma_frac must satisfy 0 < lo <= hi"));
        }
        if !(self.inertia.is_finite() && self.cognitive.is_finite() && self.social.is_finite()) {
            return Err(Error::BadRequest("swarm coefficients must be finite"));
        }
        if let Some((lo, hi)) = self.consequent_bounds {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::BadRequest(
                    "consequent bounds must be a finite nonempty interval",
                ));
            }
        }
        if let Some(domains) = &self.input_domains {
            if domains.len() != num_inputs {
                return Err(Error::BadRequest(
                    "input_domains must list one domain per dataset input",
                ));
            }
            if domains
                .iter()
                .any(|d| !(d.lo.is_finite() && d.hi.is_finite() && d.lo < d.hi))
            {
                return Err(Error::BadRequest(
                    "input domains must be finite and nonempty",
                ));
            }
        }
        Ok(())
    }
}

/// Fitness trace of one tuning run.
///
/// `best_per_generation[0]` is the best fitness in the initial population
/// and each later entry is the best seen after one more generation, so the
/// trace is non-increasing and has `max_generations + 1` entries. Wall time
/// is zero when the crate is built without `std`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitnessReport {
    pub best_per_generation: Vec<f64>,
    pub wall_time: Duration,
}

impl FitnessReport {
    /// Fitness of the returned system.
    pub fn final_fitness(&self) -> f64 {
        *self
            .best_per_generation
            .last()
            .expect("a fitness trace always holds the initial population")
    }
}

fn default_penalty(data: &Dataset) -> f64 {
    let (lo, hi) = data.target_bounds();
    let range = 10.0 * (hi - lo);
    if range > 0.0 {
        range
    } else {
        10.0
    }
}

/// Root-mean-square error of a system over a dataset, with the default
/// penalty (ten times the target range) charged to rows it cannot evaluate.
pub fn rmse(system: &FuzzySystem, data: &Dataset) -> f64 {
    rmse_with_penalty(system, data, default_penalty(data))
}

/// [`rmse`] with an explicit penalty residual.
///
/// This is a total function: an invalid system, a row the system cannot
/// fire on, or a non-finite output all contribute `penalty` as that row's
/// residual instead of failing. Non-positive or non-finite penalties fall
/// back to 10.
pub fn rmse_with_penalty(system: &FuzzySystem, data: &Dataset, penalty: f64) -> f64 {
    let penalty = if penalty.is_finite() && penalty > 0.0 {
        penalty
    } else {
        10.0
    };
    if !system.validate().is_ok() {
        return penalty;
    }
    let mut acc = 0.0;
    for (x, y) in data.rows() {
        let residual = match crate::reduce::evaluate_prevalidated(system, x) {
            Ok(out) if out.y.is_finite() => out.y - y,
            _ => penalty,
        };
        acc += residual * residual;
    }
    math::sqrt(acc / data.len() as f64)
}

/// Widen a type-1 system into an interval type-2 system by blurring each
/// membership function outward by `(delta_lower, delta_upper)`.
///
/// A Gaussian with spread σ becomes an uncertain-spread Gaussian on
/// [σ − δ₁, σ + δ₂]; crisp consequents become width-zero intervals. With
/// `delta = (0.0, 0.0)` the result evaluates identically to the input
/// (footprints of width zero), which is what seeds the second tuning step.
/// Trapezoids have no single spread to widen, so they are only accepted at
/// zero blur; the reducer is set to the interval center-of-sets default and
/// can be reassigned afterwards.
pub fn blur_to_it2(system: &FuzzySystem, delta: (f64, f64)) -> Result<FuzzySystem> {
    let report = system.validate();
    if !report.is_ok() {
        return Err(Error::InvalidSystem(report.violations));
    }
    if system.kind != SystemKind::T1 {
        return Err(Error::BadRequest("blur applies to type-1 systems"));
    }
    let (d1, d2) = delta;
    if !(d1 >= 0.0 && d2 >= 0.0 && d1.is_finite() && d2.is_finite()) {
        return Err(Error::BadRequest(
            "blur widths must be finite and nonnegative",
        ));
    }

    let mut rules = Vec::with_capacity(system.rules.len());
    for rule in &system.rules {
        let mut antecedents = Vec::with_capacity(rule.antecedents.len());
        for set in &rule.antecedents {
            let blurred = match set {
                FuzzySet::GaussianT1(g) => {
                    FuzzySet::gaussian_uncertain_std(g.mean(), g.sigma() - d1, g.sigma() + d2)?
                }
                FuzzySet::TrapezoidT1(t) if d1 == 0.0 && d2 == 0.0 => {
                    FuzzySet::trapezoid_it2(t.breakpoints(), t.breakpoints(), 1.0)?
                }
                _ => return Err(Error::UnsupportedBlur),
            };
            antecedents.push(blurred);
        }
        let consequent = match &rule.consequent {
            Consequent::Constant(c) => Consequent::Interval {
                lower: *c,
                upper: *c,
            },
            Consequent::Linear(coeffs) => Consequent::IntervalLinear {
                lower: coeffs.clone(),
                upper: coeffs.clone(),
            },
            other => other.clone(),
        };
        rules.push(Rule {
            antecedents,
            consequent,
        });
    }

    Ok(FuzzySystem {
        inputs: system.inputs.clone(),
        rules,
        t_norm: system.t_norm,
        reducer: Reducer::EiascCenterOfSets,
        kind: SystemKind::It2,
    })
}

struct SwarmSpec<'a> {
    bounds: &'a [(f64, f64)],
    population: usize,
    generations: usize,
    inertia: f64,
    cognitive: f64,
    social: f64,
    seed: u64,
}

fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Constriction-coefficient particle swarm over a box, with optional
/// seeding of particle 0 and a repair hook applied after every move.
///
/// The social term pulls each particle toward the best of its ring
/// neighborhood (itself and its two index neighbors) rather than the global
/// best, which lets distant parts of the swarm work different basins instead
/// of collapsing onto the first good one. The global incumbent is still
/// tracked for the trace and the result, and once per generation it gets an
/// elitist refinement pass to speed up the endgame.
///
/// A seed particle enters unclamped, and when it carries a precomputed
/// fitness that value is inherited instead of re-evaluated — the caller
/// vouches that it is the seed genome's true fitness. The incumbent is only
/// replaced on strict improvement (first index wins ties), so the returned
/// trace is non-increasing and everything is deterministic in the RNG seed.
fn swarm_search(
    spec: &SwarmSpec,
    seed_particle: Option<(Vec<f64>, Option<f64>)>,
    repair: &dyn Fn(&mut [f64]),
    fitness: &mut dyn FnMut(&[f64]) -> f64,
) -> (Vec<f64>, Vec<f64>) {
    let dim = spec.bounds.len();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut positions: Vec<Vec<f64>> = Vec::with_capacity(spec.population);
    let mut inherited: Option<f64> = None;
    if let Some((genome, known)) = seed_particle {
        debug_assert_eq!(genome.len(), dim);
        inherited = known;
        positions.push(genome);
    }
    while positions.len() < spec.population {
        let mut x: Vec<f64> = spec
            .bounds
            .iter()
            .map(|&(lo, hi)| lo + (hi - lo) * uniform01(&mut rng))
            .collect();
        repair(&mut x);
        positions.push(x);
    }

    let mut velocities: Vec<Vec<f64>> = (0..spec.population)
        .map(|_| {
            spec.bounds
                .iter()
                .map(|&(lo, hi)| (hi - lo) * (uniform01(&mut rng) - 0.5))
                .collect()
        })
        .collect();
    let mut pbest = positions.clone();
    let mut pbest_f: Vec<f64> = positions
        .iter()
        .enumerate()
        .map(|(i, x)| match (i, inherited) {
            (0, Some(f)) => f,
            _ => fitness(x),
        })
        .collect();

    let mut gbest = 0;
    for i in 1..spec.population {
        if pbest_f[i] < pbest_f[gbest] {
            gbest = i;
        }
    }
    let mut gbest_x = pbest[gbest].clone();
    let mut gbest_f = pbest_f[gbest];
    let mut trace = Vec::with_capacity(spec.generations + 1);
    trace.push(gbest_f);

    for _ in 0..spec.generations {
        let ring_best: Vec<usize> = (0..spec.population)
            .map(|i| {
                let prev = (i + spec.population - 1) % spec.population;
                let next = (i + 1) % spec.population;
                let mut best = prev;
                for j in [i, next] {
                    if pbest_f[j] < pbest_f[best] {
                        best = j;
                    }
                }
                best
            })
            .collect();
        for i in 0..spec.population {
            let local = ring_best[i];
            for d in 0..dim {
                let r1 = uniform01(&mut rng);
                let r2 = uniform01(&mut rng);
                velocities[i][d] = spec.inertia * velocities[i][d]
                    + spec.cognitive * r1 * (pbest[i][d] - positions[i][d])
                    + spec.social * r2 * (pbest[local][d] - positions[i][d]);
                let moved = positions[i][d] + velocities[i][d];
                let clamped = moved.clamp(spec.bounds[d].0, spec.bounds[d].1);
                if clamped != moved {
                    velocities[i][d] = 0.0;
                }
                positions[i][d] = clamped;
            }
            repair(&mut positions[i]);
        }
        for i in 0..spec.population {
            let f = fitness(&positions[i]);
            if f < pbest_f[i] {
                pbest_f[i] = f;
                pbest[i].clone_from(&positions[i]);
            }
        }
        for i in 0..spec.population {
            if pbest_f[i] < gbest_f {
                gbest_f = pbest_f[i];
                gbest_x.clone_from(&pbest[i]);
            }
        }
        // Elitist refinement: nudge the incumbent along one coordinate with a
        // log-uniform step and keep the move only when it strictly improves.
        // The swarm converges on promising basins quickly but descends them
        // slowly; this grinds the incumbent the rest of the way down.
        for _ in 0..2 {
            let d = ((uniform01(&mut rng) * dim as f64) as usize).min(dim - 1);
            let width = spec.bounds[d].1 - spec.bounds[d].0;
            let magnitude =
                width * math::exp(-4.0 * core::f64::consts::LN_10 * uniform01(&mut rng));
            let step = if uniform01(&mut rng) < 0.5 {
                magnitude
            } else {
                -magnitude
            };
            let mut candidate = gbest_x.clone();
            candidate[d] = (candidate[d] + step).clamp(spec.bounds[d].0, spec.bounds[d].1);
            repair(&mut candidate);
            let f = fitness(&candidate);
            if f < gbest_f {
                gbest_f = f;
                gbest_x = candidate;
            }
        }
        trace.push(gbest_f);
    }

    (gbest_x, trace)
}

struct GridStructure {
    domains: Vec<InputDomain>,
    mf_count: Vec<usize>,
    t_norm: crate::rules::TNorm,
}

impl GridStructure {
    fn num_rules(&self) -> usize {
        self.mf_count.iter().product()
    }

    fn num_sets(&self) -> usize {
        self.mf_count.iter().sum()
    }

    /// Membership-function index on axis `i` for grid rule `r`; the last
    /// axis varies fastest.
    fn combo_index(&self, r: usize, i: usize) -> usize {
        let stride: usize = self.mf_count[i + 1..].iter().product();
        (r / stride) % self.mf_count[i]
    }
}

fn consequent_scalar_bounds(
    data: &Dataset,
    config: &OptimizerConfig,
    domains: &[InputDomain],
) -> Vec<(f64, f64)> {
    let (lo, hi) = config.consequent_bounds.unwrap_or_else(|| {
        let (lo, hi) = data.target_bounds();
        if hi - lo > 1e-9 {
            // a weighted average of in-range constants cannot overshoot the
            // targets at the extremes, so leave the blend generous headroom
            let pad = 0.5 * (hi - lo);
            (lo - pad, hi + pad)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    });
    match config.consequent_kind {
        ConsequentKind::Constant => vec![(lo, hi)],
        ConsequentKind::Linear => {
            let mut bounds = vec![(lo, hi)];
            for d in domains {
                let half_width = ((d.hi - d.lo) / 2.0).max(1e-9);
                let slope = (hi - lo) / half_width;
                bounds.push((-slope, slope));
            }
            bounds
        }
    }
}

fn nearest_target(data: &Dataset, cell: &[f64]) -> f64 {
    let mut best = 0.0;
    let mut best_distance = f64::INFINITY;
    for (x, y) in data.rows() {
        let distance: f64 = x.iter().zip(cell).map(|(a, b)| (a - b) * (a - b)).sum();
        if distance < best_distance {
            best_distance = distance;
            best = *y;
        }
    }
    best
}

fn inferred_domains(data: &Dataset, config: &OptimizerConfig) -> Vec<InputDomain> {
    if let Some(domains) = &config.input_domains {
        return domains.clone();
    }
    (0..data.num_inputs())
        .map(|i| {
            let (mut lo, mut hi) = data.input_bounds(i);
            if hi - lo < 1e-9 {
                lo -= 0.5;
                hi += 0.5;
            }
            InputDomain::new(&format!("x{}", i + 1), lo, hi)
        })
        .collect()
}

fn decode_t1(
    structure: &GridStructure,
    kind: ConsequentKind,
    genome: &[f64],
) -> Result<FuzzySystem> {
    let p = structure.domains.len();
    let mut sets: Vec<Vec<FuzzySet>> = Vec::with_capacity(p);
    let mut offset = 0;
    for &count in &structure.mf_count {
        let mut axis = Vec::with_capacity(count);
        for _ in 0..count {
            axis.push(FuzzySet::gaussian_t1(genome[offset], genome[offset + 1])?);
            offset += 2;
        }
        sets.push(axis);
    }

    let per_rule = match kind {
        ConsequentKind::Constant => 1,
        ConsequentKind::Linear => p + 1,
    };
    let mut rules = Vec::with_capacity(structure.num_rules());
    for r in 0..structure.num_rules() {
        let antecedents = (0..p)
            .map(|i| sets[i][structure.combo_index(r, i)])
            .collect();
        let scalars = &genome[offset + r * per_rule..offset + (r + 1) * per_rule];
        let consequent = match kind {
            ConsequentKind::Constant => Consequent::Constant(scalars[0]),
            ConsequentKind::Linear => Consequent::Linear(scalars.into()),
        };
        rules.push(Rule {
            antecedents,
            consequent,
        });
    }

    Ok(FuzzySystem {
        inputs: structure.domains.clone(),
        rules,
        t_norm: structure.t_norm,
        reducer: Reducer::T1WeightedAverage,
        kind: SystemKind::T1,
    })
}

/// Fit a type-1 system to the dataset with a seeded particle swarm.
///
/// The rulebase is the full grid over `config.mf_count` Gaussian
/// memberships per input, with one constant or affine consequent per rule.
/// One particle starts from a deterministic heuristic — evenly spaced
/// centers, spread equal to the spacing, and each rule's consequent taken
/// from the data row nearest that rule's cell center — and the rest are
/// sampled uniformly inside the search box. Identical inputs and seed give
/// a bit-identical result.
pub fn optimize_t1(
    data: &Dataset,
    config: &OptimizerConfig,
) -> Result<(FuzzySystem, FitnessReport)> {
    config.check(data.num_inputs())?;
    let domains = inferred_domains(data, config);
    let structure = GridStructure {
        domains,
        mf_count: config.mf_count.clone(),
        t_norm: config.t_norm,
    };
    let penalty = config.penalty.unwrap_or_else(|| default_penalty(data));
    let scalar_bounds = consequent_scalar_bounds(data, config, &structure.domains);

    let mut bounds: Vec<(f64, f64)> = Vec::new();
    let mut heuristic: Vec<f64> = Vec::new();
    let mut axis_centers: Vec<Vec<f64>> = Vec::with_capacity(structure.domains.len());
    for (i, domain) in structure.domains.iter().enumerate() {
        let width = domain.hi - domain.lo;
        let sigma_box = (config.sigma_frac.0 * width, config.sigma_frac.1 * width);
        let count = structure.mf_count[i];
        let spacing = if count > 1 {
            width / (count - 1) as f64
        } else {
            width / 2.0
        };
        let mut centers = Vec::with_capacity(count);
        for k in 0..count {
            let center = if count > 1 {
                domain.lo + width * k as f64 / (count - 1) as f64
            } else {
                (domain.lo + domain.hi) / 2.0
            };
            centers.push(center);
            bounds.push((domain.lo, domain.hi));
            heuristic.push(center);
            bounds.push(sigma_box);
            heuristic.push(spacing.clamp(sigma_box.0, sigma_box.1));
        }
        axis_centers.push(centers);
    }
    let p = structure.domains.len();
    for r in 0..structure.num_rules() {
        bounds.extend_from_slice(&scalar_bounds);
        let cell: Vec<f64> = (0..p)
            .map(|i| axis_centers[i][structure.combo_index(r, i)])
            .collect();
        heuristic.push(nearest_target(data, &cell));
        if config.consequent_kind == ConsequentKind::Linear {
            heuristic.extend(core::iter::repeat_n(0.0, p));
        }
    }

    let spec = SwarmSpec {
        bounds: &bounds,
        population: config.population_size,
        generations: config.max_generations,
        inertia: config.inertia,
        cognitive: config.cognitive,
        social: config.social,
        seed: config.seed,
    };
    let kind = config.consequent_kind;
    let mut fitness = |genome: &[f64]| match decode_t1(&structure, kind, genome) {
        Ok(system) => rmse_with_penalty(&system, data, penalty),
        Err(_) => penalty,
    };

    #[cfg(feature = "std")]
    let start = std::time::Instant::now();
    let (best, trace) = swarm_search(
        &spec,
        Some((heuristic, None)),
        &|_: &mut [f64]| {},
        &mut fitness,
    );
    #[cfg(feature = "std")]
    let wall_time = start.elapsed();
    #[cfg(not(feature = "std"))]
    let wall_time = Duration::ZERO;

    let system = decode_t1(&structure, kind, &best)?;
    Ok((
        system,
        FitnessReport {
            best_per_generation: trace,
            wall_time,
        },
    ))
}

struct It2Structure {
    grid: GridStructure,
    consequent_kind: ConsequentKind,
    centers: Vec<Vec<f64>>,
    reducer: Reducer,
}

/// Recover the grid structure, per-axis membership functions, and
/// consequent centers from a type-1 baseline, verifying that its rulebase
/// really is the full grid over its distinct per-axis sets.
fn extract_baseline(
    baseline: &FuzzySystem,
    config: &OptimizerConfig,
) -> Result<(It2Structure, Vec<f64>)> {
    let report = baseline.validate();
    if !report.is_ok() {
        return Err(Error::InvalidSystem(report.violations));
    }
    if baseline.kind != SystemKind::T1 {
        return Err(Error::BadRequest("the baseline must be a type-1 system"));
    }

    let p = baseline.num_inputs();
    let mut axis_sets: Vec<Vec<(f64, f64)>> = vec![Vec::new(); p];
    for rule in &baseline.rules {
        for (i, set) in rule.antecedents.iter().enumerate() {
            let FuzzySet::GaussianT1(g) = set else {
                return Err(Error::BadRequest(
                    "the baseline antecedents must all be type-1 Gaussians",
                ));
            };
            let params = (g.mean(), g.sigma());
            if !axis_sets[i].contains(&params) {
                axis_sets[i].push(params);
            }
        }
    }

    let grid = GridStructure {
        domains: baseline.inputs.clone(),
        mf_count: axis_sets.iter().map(Vec::len).collect(),
        t_norm: baseline.t_norm,
    };
    if grid.num_rules() != baseline.num_rules() {
        return Err(Error::BadRequest(
            "the baseline rulebase must be a full grid of its membership functions",
        ));
    }
    for (r, rule) in baseline.rules.iter().enumerate() {
        for i in 0..p {
            let FuzzySet::GaussianT1(g) = &rule.antecedents[i] else {
                unreachable!("checked above");
            };
            if axis_sets[i][grid.combo_index(r, i)] != (g.mean(), g.sigma()) {
                return Err(Error::BadRequest(
                    "the baseline rulebase must enumerate membership combinations in grid order",
                ));
            }
        }
    }

    let mut consequent_kind = None;
    let mut centers = Vec::with_capacity(baseline.num_rules());
    for rule in &baseline.rules {
        let (kind, scalars) = match &rule.consequent {
            Consequent::Constant(c) => (ConsequentKind::Constant, vec![*c]),
            Consequent::Linear(coeffs) => (ConsequentKind::Linear, coeffs.clone()),
            _ => {
                return Err(Error::BadRequest(
                    "the baseline must use crisp constant or affine consequents",
                ))
            }
        };
        if *consequent_kind.get_or_insert(kind) != kind {
            return Err(Error::BadRequest(
                "the baseline must use one consequent family throughout",
            ));
        }
        centers.push(scalars);
    }

    let mut genome = Vec::with_capacity(4 * grid.num_sets() + centers.len());
    for axis in &axis_sets {
        for &(m, sigma) in axis {
            genome.extend_from_slice(&[m, sigma, 0.0, 0.0]);
        }
    }
    for scalars in &centers {
        genome.extend_from_slice(&vec![0.0; scalars.len()]);
    }

    Ok((
        It2Structure {
            grid,
            consequent_kind: consequent_kind.expect("validated systems have at least one rule"),
            centers,
            reducer: config.reducer,
        },
        genome,
    ))
}

fn decode_it2(structure: &It2Structure, genome: &[f64]) -> Result<FuzzySystem> {
    let p = structure.grid.domains.len();
    let mut sets: Vec<Vec<FuzzySet>> = Vec::with_capacity(p);
    let mut offset = 0;
    for &count in &structure.grid.mf_count {
        let mut axis = Vec::with_capacity(count);
        for _ in 0..count {
            let (m, sigma) = (genome[offset], genome[offset + 1]);
            let (d1, d2) = (genome[offset + 2], genome[offset + 3]);
            axis.push(FuzzySet::gaussian_uncertain_std(m, sigma - d1, sigma + d2)?);
            offset += 4;
        }
        sets.push(axis);
    }

    let mut rules = Vec::with_capacity(structure.grid.num_rules());
    for (r, center) in structure.centers.iter().enumerate() {
        let antecedents = (0..p)
            .map(|i| sets[i][structure.grid.combo_index(r, i)])
            .collect();
        let widths = &genome[offset..offset + center.len()];
        offset += center.len();
        let consequent = match structure.consequent_kind {
            ConsequentKind::Constant => Consequent::Interval {
                lower: center[0] - widths[0],
                upper: center[0] + widths[0],
            },
            ConsequentKind::Linear => Consequent::IntervalLinear {
                lower: center.iter().zip(widths).map(|(c, w)| c - w).collect(),
                upper: center.iter().zip(widths).map(|(c, w)| c + w).collect(),
            },
        };
        rules.push(Rule {
            antecedents,
            consequent,
        });
    }

    Ok(FuzzySystem {
        inputs: structure.grid.domains.clone(),
        rules,
        t_norm: structure.grid.t_norm,
        reducer: structure.reducer,
        kind: SystemKind::It2,
    })
}

/// Widen and re-tune a type-1 baseline into an interval type-2 system.
///
/// The baseline must be a validated type-1 system whose antecedents are
/// Gaussians arranged as a full rule grid (for example the output of
/// [`optimize_t1`]). The swarm searches `(m, σ, δ₁, δ₂)` per membership
/// function plus one half-width per consequent scalar, with consequent
/// centers frozen at the baseline's values. Particle 0 is the zero-width
/// blur of the baseline carrying the baseline's fitness, so the reported
/// final fitness never exceeds `rmse_with_penalty(baseline, data, penalty)`
/// — exactly, not approximately. `config.mf_count` is ignored; the
/// structure comes from the baseline itself.
pub fn optimize_it2(
    data: &Dataset,
    config: &OptimizerConfig,
    baseline: &FuzzySystem,
) -> Result<(FuzzySystem, FitnessReport)> {
    let mut structural = config.clone();
    structural.mf_count = vec![1; data.num_inputs()];
    structural.check(data.num_inputs())?;
    if config.reducer == Reducer::T1WeightedAverage {
        return Err(Error::BadRequest(
            "the interval step needs an interval reducer",
        ));
    }
    if let Reducer::Bmm { alpha, beta } = config.reducer {
        if !(alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta >= 0.0) {
            return Err(Error::BadRequest(
                "bmm weights must be finite and nonnegative",
            ));
        }
    }
    if baseline.num_inputs() != data.num_inputs() {
        return Err(Error::DimensionMismatch {
            expected: data.num_inputs(),
            got: baseline.num_inputs(),
        });
    }

    let (structure, seed_genome) = extract_baseline(baseline, config)?;
    let penalty = config.penalty.unwrap_or_else(|| default_penalty(data));
    let baseline_fitness = rmse_with_penalty(baseline, data, penalty);

    let mut bounds: Vec<(f64, f64)> = Vec::new();
    let mut sigma_floor: Vec<f64> = Vec::new();
    for (i, domain) in structure.grid.domains.iter().enumerate() {
        let width = domain.hi - domain.lo;
        let sigma_box = (config.sigma_frac.0 * width, config.sigma_frac.1 * width);
        for _ in 0..structure.grid.mf_count[i] {
            bounds.push((domain.lo, domain.hi));
            bounds.push(sigma_box);
            bounds.push((0.0, sigma_box.1 / 2.0));
            bounds.push((0.0, sigma_box.1 / 2.0));
            sigma_floor.push(sigma_box.0);
        }
    }
    let width_config = OptimizerConfig {
        consequent_kind: structure.consequent_kind,
        ..config.clone()
    };
    let scalar_bounds = consequent_scalar_bounds(data, &width_config, &structure.grid.domains);
    for center in &structure.centers {
        for (lo, hi) in scalar_bounds.iter().take(center.len()) {
            bounds.push((0.0, (hi - lo) / 2.0));
        }
    }

    let repair = |genome: &mut [f64]| {
        for (k, floor) in sigma_floor.iter().enumerate() {
            let base = 4 * k;
            let sigma = genome[base + 1];
            let max_d1 = sigma - 0.5 * floor;
            if genome[base + 2] > max_d1 {
                genome[base + 2] = max_d1.max(0.0);
            }
        }
    };
    let mut fitness = |genome: &[f64]| match decode_it2(&structure, genome) {
        Ok(system) => rmse_with_penalty(&system, data, penalty),
        Err(_) => penalty,
    };

    let spec = SwarmSpec {
        bounds: &bounds,
        population: config.population_size,
        generations: config.max_generations,
        inertia: config.inertia,
        cognitive: config.cognitive,
        social: config.social,
        seed: config.seed,
    };

    #[cfg(feature = "std")]
    let start = std::time::Instant::now();
    let (best, trace) = swarm_search(
        &spec,
        Some((seed_genome, Some(baseline_fitness))),
        &repair,
        &mut fitness,
    );
    #[cfg(feature = "std")]
    let wall_time = start.elapsed();
    #[cfg(not(feature = "std"))]
    let wall_time = Duration::ZERO;

    let system = decode_it2(&structure, &best)?;
    Ok((
        system,
        FitnessReport {
            best_per_generation: trace,
            wall_time,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::TNorm;

    const TOL: f64 = 5e-4;

    fn demo_t1_system() -> FuzzySystem {
        let neg = FuzzySet::gaussian_t1(-1.0, 0.6).unwrap();
        let pos = FuzzySet::gaussian_t1(1.0, 0.6).unwrap();
        let combos = [(neg, neg), (neg, pos), (pos, neg), (pos, pos)];
        FuzzySystem {
            inputs: vec![
                InputDomain::new("edot", -1.0, 1.0),
                InputDomain::new("e", -1.0, 1.0),
            ],
            rules: combos
                .iter()
                .zip([-1.0, -0.5, 0.5, 1.0])
                .map(|((a, b), c)| Rule {
                    antecedents: vec![*a, *b],
                    consequent: Consequent::Constant(c),
                })
                .collect(),
            t_norm: TNorm::Product,
            reducer: Reducer::T1WeightedAverage,
            kind: SystemKind::T1,
        }
    }

    fn quadratic_data() -> Dataset {
        let rows: Vec<(Vec<f64>, f64)> = (0..21)
            .map(|i| {
                let x = -1.0 + 0.1 * i as f64;
                (vec![x], x * x)
            })
            .collect();
        Dataset::new(rows).unwrap()
    }

    #[test]
    fn dataset_validates_rows() {
        assert!(matches!(Dataset::new(vec![]), Err(Error::EmptyDataset)));
        assert!(matches!(
            Dataset::new(vec![(vec![0.0], 1.0), (vec![0.0, 1.0], 1.0)]),
            Err(Error::BadDataRow { row: 1 })
        ));
        assert!(matches!(
            Dataset::new(vec![(vec![f64::NAN], 1.0)]),
            Err(Error::BadDataRow { row: 0 })
        ));
        assert!(matches!(
            Dataset::new(vec![(vec![], 1.0)]),
            Err(Error::BadDataRow { row: 0 })
        ));
        let data = Dataset::new(vec![(vec![0.0, 2.0], -1.0), (vec![1.0, 3.0], 5.0)]).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data.num_inputs(), 2);
        assert_eq!(data.target_bounds(), (-1.0, 5.0));
        assert_eq!(data.input_bounds(1), (2.0, 3.0));
    }

    #[test]
    fn rmse_is_zero_on_a_perfect_fit() {
        let system = demo_t1_system();
        let rows: Vec<(Vec<f64>, f64)> = [(-0.5, 0.25), (0.0, 0.0), (0.25, -0.75)]
            .iter()
            .map(|&(a, b)| {
                let y = system.evaluate(&[a, b]).unwrap().y;
                (vec![a, b], y)
            })
            .collect();
        let data = Dataset::new(rows).unwrap();
        assert_eq!(rmse(&system, &data), 0.0);
    }

    #[test]
    fn rmse_measures_plain_residuals() {
        let flat = FuzzySystem {
            inputs: vec![InputDomain::new("x", -1.0, 1.0)],
            rules: vec![Rule {
                antecedents: vec![FuzzySet::gaussian_t1(0.0, 1.0).unwrap()],
                consequent: Consequent::Constant(0.0),
            }],
            t_norm: TNorm::Product,
            reducer: Reducer::T1WeightedAverage,
            kind: SystemKind::T1,
        };
        let data = Dataset::new(vec![(vec![0.3], 1.0)]).unwrap();
        assert_eq!(rmse(&flat, &data), 1.0);
    }

    #[test]
    fn rmse_matches_the_demo_output() {
        let data = Dataset::new(vec![(vec![-0.2, -0.3], -0.5491)]).unwrap();
        assert!(rmse(&demo_t1_system(), &data) < TOL);
    }

    #[test]
    fn rmse_charges_the_penalty_for_unfired_rows() {
        let a = FuzzySet::trapezoid_t1(0.0, 0.1, 0.3, 0.4).unwrap();
        let b = FuzzySet::trapezoid_t1(0.6, 0.7, 0.9, 1.0).unwrap();
        let system = FuzzySystem {
            inputs: vec![InputDomain::new("x", 0.0, 1.0)],
            rules: vec![
                Rule {
                    antecedents: vec![a],
                    consequent: Consequent::Constant(0.0),
                },
                Rule {
                    antecedents: vec![b],
                    consequent: Consequent::Constant(0.0),
                },
            ],
            t_norm: TNorm::Product,
            reducer: Reducer::T1WeightedAverage,
            kind: SystemKind::T1,
        };
        let data = Dataset::new(vec![(vec![0.5], 0.0)]).unwrap();
        assert_eq!(rmse(&system, &data), 10.0);
        assert_eq!(rmse_with_penalty(&system, &data, 2.5), 2.5);
    }

    #[test]
    fn rmse_of_an_invalid_system_is_the_penalty() {
        let mut system = demo_t1_system();
        system.rules.clear();
        let data = Dataset::new(vec![(vec![0.0, 0.0], 0.5)]).unwrap();
        assert_eq!(rmse_with_penalty(&system, &data, 3.0), 3.0);
    }

    #[test]
    fn zero_blur_reproduces_the_t1_surface() {
        let t1 = demo_t1_system();
        let it2 = blur_to_it2(&t1, (0.0, 0.0)).unwrap();
        assert_eq!(it2.kind, SystemKind::It2);
        assert_eq!(it2.reducer, Reducer::EiascCenterOfSets);
        for i in 0..11 {
            for j in 0..11 {
                let x = [-1.0 + 0.2 * i as f64, -1.0 + 0.2 * j as f64];
                let a = t1.evaluate(&x).unwrap().y;
                let b = it2.evaluate(&x).unwrap().y;
                assert!((a - b).abs() < 1e-12, "blur drifted at {:?}", x);
            }
        }
    }

    #[test]
    fn blur_widens_sigma_into_an_interval() {
        let it2 = blur_to_it2(&demo_t1_system(), (0.1, 0.1)).unwrap();
        let FuzzySet::GaussianUncertainStd(g) = it2.rules[0].antecedents[0] else {
            panic!("expected an uncertain-spread Gaussian");
        };
        let (s1, s2) = g.sigma_bounds();
        assert!((s1 - 0.5).abs() < 1e-12);
        assert!((s2 - 0.7).abs() < 1e-12);
    }

    #[test]
    fn blur_rejects_a_collapsed_lower_spread() {
        assert!(matches!(
            blur_to_it2(&demo_t1_system(), (0.6, 0.0)),
            Err(Error::Set(_))
        ));
    }

    #[test]
    fn trapezoids_blur_only_at_zero_width() {
        let trap = FuzzySet::trapezoid_t1(0.0, 0.2, 0.8, 1.0).unwrap();
        let system = FuzzySystem {
            inputs: vec![InputDomain::new("x", 0.0, 1.0)],
            rules: vec![Rule {
                antecedents: vec![trap],
                consequent: Consequent::Constant(1.0),
            }],
            t_norm: TNorm::Product,
            reducer: Reducer::T1WeightedAverage,
            kind: SystemKind::T1,
        };
        let blurred = blur_to_it2(&system, (0.0, 0.0)).unwrap();
        let y = blurred.evaluate(&[0.5]).unwrap().y;
        assert!((y - 1.0).abs() < 1e-12);
        assert!(matches!(
            blur_to_it2(&system, (0.1, 0.0)),
            Err(Error::UnsupportedBlur)
        ));
    }

    #[test]
    fn optimize_t1_fits_a_quadratic() {
        let data = quadratic_data();
        let mut config = OptimizerConfig::new(vec![3]);
        config.max_generations = 200;
        let (system, report) = optimize_t1(&data, &config).unwrap();
        assert_eq!(report.best_per_generation.len(), 201);
        for pair in report.best_per_generation.windows(2) {
            assert!(pair[1] <= pair[0], "fitness trace increased");
        }
        assert!(
            report.final_fitness() < 0.05,
            "final rmse {} too high",
            report.final_fitness()
        );
        assert_eq!(rmse(&system, &data), report.final_fitness());
        assert_eq!(system.kind, SystemKind::T1);
        assert_eq!(system.num_rules(), 3);
    }

    #[test]
    fn zero_generations_returns_the_best_initial_candidate() {
        let data = quadratic_data();
        let mut config = OptimizerConfig::new(vec![2]);
        config.max_generations = 0;
        config.population_size = 5;
        let (_, report) = optimize_t1(&data, &config).unwrap();
        assert_eq!(report.best_per_generation.len(), 1);
    }

    #[test]
    fn optimization_is_deterministic_in_the_seed() {
        let data = quadratic_data();
        let mut config = OptimizerConfig::new(vec![2]);
        config.max_generations = 15;
        config.population_size = 8;
        config.seed = 42;
        let (sys_a, rep_a) = optimize_t1(&data, &config).unwrap();
        let (sys_b, rep_b) = optimize_t1(&data, &config).unwrap();
        assert_eq!(sys_a, sys_b);
        assert_eq!(rep_a.best_per_generation, rep_b.best_per_generation);

        config.seed = 43;
        let (_, rep_c) = optimize_t1(&data, &config).unwrap();
        assert_ne!(rep_a.best_per_generation, rep_c.best_per_generation);
    }

    #[test]
    fn the_interval_step_never_ends_worse_than_the_baseline() {
        let data = quadratic_data();
        let mut config = OptimizerConfig::new(vec![3]);
        config.max_generations = 25;
        config.population_size = 10;
        config.seed = 7;
        let (baseline, _) = optimize_t1(&data, &config).unwrap();
        let baseline_fitness = rmse(&baseline, &data);

        let (tuned, report) = optimize_it2(&data, &config, &baseline).unwrap();
        assert_eq!(tuned.kind, SystemKind::It2);
        assert!(report.final_fitness() <= baseline_fitness);
        for pair in report.best_per_generation.windows(2) {
            assert!(pair[1] <= pair[0]);
        }

        let (tuned_again, report_again) = optimize_it2(&data, &config, &baseline).unwrap();
        assert_eq!(tuned, tuned_again);
        assert_eq!(report.best_per_generation, report_again.best_per_generation);
    }

    #[test]
    fn the_interval_seed_survives_a_zero_generation_run() {
        let data = quadratic_data();
        let mut config = OptimizerConfig::new(vec![2]);
        config.max_generations = 12;
        config.population_size = 6;
        let (baseline, _) = optimize_t1(&data, &config).unwrap();

        config.max_generations = 0;
        config.population_size = 2;
        let (_, report) = optimize_it2(&data, &config, &baseline).unwrap();
        assert!(report.final_fitness() <= rmse(&baseline, &data));
    }

    #[test]
    fn lower_spreads_stay_positive_during_the_search() {
        let data = quadratic_data();
        let mut config = OptimizerConfig::new(vec![2]);
        config.max_generations = 30;
        config.population_size = 8;
        config.seed = 3;
        let (baseline, _) = optimize_t1(&data, &config).unwrap();
        let (tuned, _) = optimize_it2(&data, &config, &baseline).unwrap();
        for rule in &tuned.rules {
            for set in &rule.antecedents {
                let FuzzySet::GaussianUncertainStd(g) = set else {
                    panic!("expected uncertain-spread Gaussians");
                };
                let (s1, s2) = g.sigma_bounds();
                assert!(s1 > 0.0);
                assert!(s2 >= s1);
            }
        }
    }

    #[test]
    fn non_grid_baselines_are_rejected() {
        let a = FuzzySet::gaussian_t1(-0.5, 0.4).unwrap();
        let b = FuzzySet::gaussian_t1(0.5, 0.4).unwrap();
        let baseline = FuzzySystem {
            inputs: vec![InputDomain::new("x", -1.0, 1.0)],
            rules: vec![
                Rule {
                    antecedents: vec![a],
                    consequent: Consequent::Constant(0.0),
                },
                Rule {
                    antecedents: vec![b],
                    consequent: Consequent::Constant(1.0),
                },
                Rule {
                    antecedents: vec![a],
                    consequent: Consequent::Constant(2.0),
                },
            ],
            t_norm: TNorm::Product,
            reducer: Reducer::T1WeightedAverage,
            kind: SystemKind::T1,
        };
        let data = Dataset::new(vec![(vec![0.0], 0.5)]).unwrap();
        let config = OptimizerConfig::new(vec![2]);
        assert!(matches!(
            optimize_it2(&data, &config, &baseline),
            Err(Error::BadRequest(_))
        ));
    }

    #[test]
    fn configs_are_checked_before_running() {
        let data = quadratic_data();
        let mut config = OptimizerConfig::new(vec![1]);
        config.population_size = 1;
        assert!(matches!(
            optimize_t1(&data, &config),
            Err(Error::BadRequest(_))
        ));

        let config = OptimizerConfig::new(vec![1, 2]);
        assert!(matches!(
            optimize_t1(&data, &config),
            Err(Error::BadRequest(_))
        ));

        let config = OptimizerConfig::new(vec![0]);
        assert!(matches!(
            optimize_t1(&data, &config),
            Err(Error::BadRequest(_))
        ));

        let mut config = OptimizerConfig::new(vec![2]);
        config.reducer = Reducer::T1WeightedAverage;
        let (baseline, _) = optimize_t1(&data, &{
            let mut c = OptimizerConfig::new(vec![2]);
            c.max_generations = 1;
            c.population_size = 4;
            c
        })
        .unwrap();
        assert!(matches!(
            optimize_it2(&data, &config, &baseline),
            Err(Error::BadRequest(_))
        ));
    }
}
