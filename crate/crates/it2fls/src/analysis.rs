//! Coverage and continuity diagnostics, surface sampling, and parameter
//! accounting.
//!
//! A rulebase only defines an output where at least one rule fires. Whether
//! it fires everywhere depends on which membership envelope you ask about,
//! and the distinction drives a three-way continuity taxonomy:
//!
//! * every input axis is covered by the lower envelopes (at each point the
//!   LMF memberships sum to something positive) — the output surface is
//!   continuous;
//! * the upper envelopes cover every axis but the lower ones leave holes —
//!   the surface is defined everywhere but may jump where a rule's lower
//!   envelope cuts out;
//! * even the upper envelopes leave holes — inputs exist where no rule fires
//!   at all, so the surface has gaps as well as possible jumps.
//!
//! [`coverage_report`] predicts the class from the sets alone;
//! [`surface_sample`] evaluates the system on a grid and flags what actually
//! happens (gap cells, adjacent outputs that differ by more than a
//! threshold). [`param_count`] tallies stored parameters and compares them
//! with the closed-form counts for the four canonical system shapes.

use crate::rules::{Consequent, FuzzySystem, InputDomain};
use crate::sets::FuzzySet;
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Predicted behavior of the output surface, from least to most pathological.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuityClass {
    Continuous,
    JumpDiscontinuitiesPossible,
    GapAndJumpPossible,
}

impl fmt::Display for ContinuityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ContinuityClass::Continuous => "continuous",
            ContinuityClass::JumpDiscontinuitiesPossible => "jump_discontinuities_possible",
            ContinuityClass::GapAndJumpPossible => "gap_and_jump_possible",
        };
        f.write_str(s)
    }
}

/// Coverage of one input axis by the antecedent envelopes that reference it.
///
/// Uncovered intervals are `(lo, hi)` bands inside the declared domain where
/// the corresponding envelope vanishes; boundary points where an envelope
/// just reaches zero are attributed to the covered side.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisCoverage {
    pub input: String,
    pub umf_covered: bool,
    pub lmf_covered: bool,
    pub uncovered_umf_intervals: Vec<(f64, f64)>,
    pub uncovered_lmf_intervals: Vec<(f64, f64)>,
}

/// Per-axis coverage plus the continuity class it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub axes: Vec<AxisCoverage>,
    pub predicted_continuity: ContinuityClass,
}

/// Diagnose envelope coverage of every input axis and predict the
/// continuity class of the output surface.
///
/// A point is upper-covered when the maximum UMF membership over the axis's
/// antecedents is positive, and lower-covered when their LMF memberships sum
/// to something positive. Axes whose sets are all trapezoidal are analyzed
/// exactly from the support endpoints; any other mix is sampled at
/// `resolution` evenly spaced points (1001 is a sensible default) and
/// uncovered intervals are maximal runs of uncovered samples.
pub fn coverage_report(system: &FuzzySystem, resolution: usize) -> Result<CoverageReport> {
    let report = system.validate();
    if !report.is_ok() {
        return Err(Error::InvalidSystem(report.violations));
    }
    if resolution < 2 {
        return Err(Error::BadRequest("coverage resolution must be at least 2"));
    }

    let mut axes = Vec::with_capacity(system.num_inputs());
    for (i, input) in system.inputs.iter().enumerate() {
        let mut sets: Vec<FuzzySet> = Vec::new();
        for rule in &system.rules {
            if !sets.contains(&rule.antecedents[i]) {
                sets.push(rule.antecedents[i]);
            }
        }
        let axis = match trapezoid_supports(&sets) {
            Some(supports) => analytic_axis(input, &supports),
            None => sampled_axis(input, &sets, resolution),
        };
        axes.push(axis);
    }

    let predicted_continuity = if axes.iter().all(|a| a.lmf_covered) {
        ContinuityClass::Continuous
    } else if axes.iter().all(|a| a.umf_covered) {
        ContinuityClass::JumpDiscontinuitiesPossible
    } else {
        ContinuityClass::GapAndJumpPossible
    };

    Ok(CoverageReport {
        axes,
        predicted_continuity,
    })
}

fn trapezoid_supports(sets: &[FuzzySet]) -> Option<Vec<([f64; 2], [f64; 2])>> {
    let mut supports = Vec::with_capacity(sets.len());
    for set in sets {
        match set {
            FuzzySet::TrapezoidT1(t) => {
                let [a, _, _, d] = t.breakpoints();
                supports.push(([a, d], [a, d]));
            }
            FuzzySet::TrapezoidIt2(t) => {
                let umf = t.umf_breakpoints();
                let lmf = t.lmf_breakpoints();
                supports.push(([umf[0], umf[3]], [lmf[0], lmf[3]]));
            }
            _ => return None,
        }
    }
    Some(supports)
}

fn analytic_axis(input: &InputDomain, supports: &[([f64; 2], [f64; 2])]) -> AxisCoverage {
    let umf: Vec<[f64; 2]> = supports.iter().map(|s| s.0).collect();
    let lmf: Vec<[f64; 2]> = supports.iter().map(|s| s.1).collect();
    let uncovered_umf_intervals = complement(input.lo, input.hi, &umf);
    let uncovered_lmf_intervals = complement(input.lo, input.hi, &lmf);
    AxisCoverage {
        input: input.name.clone(),
        umf_covered: uncovered_umf_intervals.is_empty(),
        lmf_covered: uncovered_lmf_intervals.is_empty(),
        uncovered_umf_intervals,
        uncovered_lmf_intervals,
    }
}

fn complement(lo: f64, hi: f64, intervals: &[[f64; 2]]) -> Vec<(f64, f64)> {
    let mut clipped: Vec<(f64, f64)> = intervals
        .iter()
        .map(|s| (s[0].max(lo), s[1].min(hi)))
        .filter(|(a, b)| a <= b)
        .collect();
    clipped.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut gaps = Vec::new();
    let mut cursor = lo;
    for (start, end) in clipped {
        if start > cursor {
            gaps.push((cursor, start));
        }
        cursor = cursor.max(end);
    }
    if cursor < hi {
        gaps.push((cursor, hi));
    }
    gaps
}

fn sampled_axis(input: &InputDomain, sets: &[FuzzySet], resolution: usize) -> AxisCoverage {
    let xs = axis_points(input.lo, input.hi, resolution);
    let mut umf_runs = RunCollector::new();
    let mut lmf_runs = RunCollector::new();
    for &x in &xs {
        let mut umf_max = 0.0f64;
        let mut lmf_sum = 0.0f64;
        for set in sets {
            let grade = set.membership_interval(x);
            umf_max = umf_max.max(grade.upper);
            lmf_sum += grade.lower;
        }
        umf_runs.push(x, umf_max > 0.0);
        lmf_runs.push(x, lmf_sum > 0.0);
    }
    let uncovered_umf_intervals = umf_runs.finish();
    let uncovered_lmf_intervals = lmf_runs.finish();
    AxisCoverage {
        input: input.name.clone(),
        umf_covered: uncovered_umf_intervals.is_empty(),
        lmf_covered: uncovered_lmf_intervals.is_empty(),
        uncovered_umf_intervals,
        uncovered_lmf_intervals,
    }
}

struct RunCollector {
    runs: Vec<(f64, f64)>,
    open: Option<(f64, f64)>,
}

impl RunCollector {
    fn new() -> Self {
        RunCollector {
            runs: Vec::new(),
            open: None,
        }
    }

    fn push(&mut self, x: f64, covered: bool) {
        if covered {
            if let Some(run) = self.open.take() {
                self.runs.push(run);
            }
        } else {
            match &mut self.open {
                Some(run) => run.1 = x,
                None => self.open = Some((x, x)),
            }
        }
    }

    fn finish(mut self) -> Vec<(f64, f64)> {
        if let Some(run) = self.open.take() {
            self.runs.push(run);
        }
        self.runs
    }
}

fn axis_points(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    let last = (resolution - 1) as f64;
    (0..resolution)
        .map(|i| lo + (hi - lo) * i as f64 / last)
        .collect()
}

/// A pair of adjacent grid cells whose outputs differ by more than the jump
/// threshold. Cell coordinates are `[row, column]` grid indices; a
/// one-dimensional sweep uses column 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpCandidate {
    pub a: [usize; 2],
    pub b: [usize; 2],
    pub delta: f64,
}

/// A gridded evaluation of the output surface.
///
/// `axes[k]` holds the sample coordinates swept along grid dimension `k` and
/// `axis_inputs[k]` names the input it varies. `outputs` is row-major with
/// the first axis outermost; `None` marks a cell where no rule fired.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSample {
    pub axis_inputs: Vec<usize>,
    pub axes: Vec<Vec<f64>>,
    pub outputs: Vec<Option<f64>>,
    pub threshold: f64,
    pub jump_candidates: Vec<JumpCandidate>,
}

impl SurfaceSample {
    /// Output at grid position `(row, column)`; pass column 0 for a
    /// one-dimensional sweep.
    pub fn output_at(&self, row: usize, column: usize) -> Option<f64> {
        let width = self.axes.get(1).map_or(1, Vec::len);
        self.outputs[row * width + column]
    }

    pub fn gap_count(&self) -> usize {
        self.outputs.iter().filter(|o| o.is_none()).count()
    }
}

/// Sample the full output surface of a one- or two-input system.
///
/// Every input axis is swept over its declared domain at `resolution` points.
/// Cells where evaluation fails (no rule fires) become gap markers. Passing
/// `None` for the threshold derives one as ten times the median
/// adjacent-cell |Δy|; on surfaces that are mostly flat that median can be
/// zero, which flags every non-flat transition, so pass an explicit
/// threshold when scanning plateau-heavy systems. Systems with more inputs
/// need [`surface_slice`].
pub fn surface_sample(
    system: &FuzzySystem,
    resolution: usize,
    jump_threshold: Option<f64>,
) -> Result<SurfaceSample> {
    match system.num_inputs() {
        1 => surface_slice(system, 0, None, &[0.0], resolution, jump_threshold),
        2 => surface_slice(system, 0, Some(1), &[0.0, 0.0], resolution, jump_threshold),
        _ => Err(Error::BadRequest(
            "surface_sample sweeps one or two inputs; fix the rest with surface_slice",
        )),
    }
}

/// Sample a one- or two-axis slice through a system of any input count.
///
/// `axis_x` (and optionally `axis_y`) are the input indices to sweep over
/// their domains; every other input is held at its `base` value. `base` must
/// supply one value per input (entries at swept positions are ignored).
pub fn surface_slice(
    system: &FuzzySystem,
    axis_x: usize,
    axis_y: Option<usize>,
    base: &[f64],
    resolution: usize,
    jump_threshold: Option<f64>,
) -> Result<SurfaceSample> {
    let report = system.validate();
    if !report.is_ok() {
        return Err(Error::InvalidSystem(report.violations));
    }
    if resolution < 2 {
        return Err(Error::BadRequest("surface resolution must be at least 2"));
    }
    let p = system.num_inputs();
    if base.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: base.len(),
        });
    }
    if axis_x >= p || axis_y.is_some_and(|a| a >= p) {
        return Err(Error::BadRequest("swept axis index is out of range"));
    }
    if axis_y == Some(axis_x) {
        return Err(Error::BadRequest("swept axes must be distinct"));
    }
    for (index, v) in base.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                what: "input",
                index,
            });
        }
    }
    if let Some(t) = jump_threshold {
        if t.is_nan() || t < 0.0 {
            return Err(Error::BadRequest("jump threshold must be nonnegative"));
        }
    }

    let mut axis_inputs = Vec::with_capacity(2);
    axis_inputs.push(axis_x);
    if let Some(ay) = axis_y {
        axis_inputs.push(ay);
    }
    let axes: Vec<Vec<f64>> = axis_inputs
        .iter()
        .map(|&a| axis_points(system.inputs[a].lo, system.inputs[a].hi, resolution))
        .collect();

    let rows = axes[0].len();
    let columns = axes.get(1).map_or(1, Vec::len);
    let mut outputs = Vec::with_capacity(rows * columns);
    let mut x: Vec<f64> = base.into();
    let sample = |x: &[f64]| {
        crate::reduce::evaluate_prevalidated(system, x)
            .ok()
            .map(|r| r.y)
    };
    for row in 0..rows {
        x[axis_x] = axes[0][row];
        match axis_y {
            Some(ay) => {
                for &value in &axes[1] {
                    x[ay] = value;
                    outputs.push(sample(&x));
                }
            }
            None => outputs.push(sample(&x)),
        }
    }

    let pairs = adjacent_pairs(&outputs, rows, columns);
    let threshold = jump_threshold.unwrap_or_else(|| auto_threshold(&pairs));
    let jump_candidates = pairs
        .into_iter()
        .filter(|(_, _, delta)| *delta > threshold)
        .map(|(a, b, delta)| JumpCandidate { a, b, delta })
        .collect();

    Ok(SurfaceSample {
        axis_inputs,
        axes,
        outputs,
        threshold,
        jump_candidates,
    })
}

fn adjacent_pairs(
    outputs: &[Option<f64>],
    rows: usize,
    columns: usize,
) -> Vec<([usize; 2], [usize; 2], f64)> {
    let mut pairs = Vec::new();
    let mut consider = |a: [usize; 2], b: [usize; 2]| {
        if let (Some(ya), Some(yb)) = (
            outputs[a[0] * columns + a[1]],
            outputs[b[0] * columns + b[1]],
        ) {
            pairs.push((a, b, (ya - yb).abs()));
        }
    };
    for row in 0..rows {
        for column in 0..columns {
            if column + 1 < columns {
                consider([row, column], [row, column + 1]);
            }
            if row + 1 < rows {
                consider([row, column], [row + 1, column]);
            }
        }
    }
    pairs
}

fn auto_threshold(pairs: &[([usize; 2], [usize; 2], f64)]) -> f64 {
    if pairs.is_empty() {
        return f64::INFINITY;
    }
    let mut deltas: Vec<f64> = pairs.iter().map(|p| p.2).collect();
    deltas.sort_by(f64::total_cmp);
    let n = deltas.len();
    let median = if n % 2 == 1 {
        deltas[n / 2]
    } else {
        (deltas[n / 2 - 1] + deltas[n / 2]) / 2.0
    };
    10.0 * median
}

/// The canonical system shapes with closed-form parameter counts, plus a
/// catch-all for everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemForm {
    T1Mamdani,
    T1Tsk,
    It2Mamdani,
    It2Tsk,
    Custom,
}

impl fmt::Display for SystemForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SystemForm::T1Mamdani => "t1_mamdani",
            SystemForm::T1Tsk => "t1_tsk",
            SystemForm::It2Mamdani => "it2_mamdani",
            SystemForm::It2Tsk => "it2_tsk",
            SystemForm::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Stored-parameter tally for a system, with the closed-form count when the
/// system matches a canonical shape.
///
/// `stored` counts the scalars actually held by the antecedents and
/// consequents. `formula` applies the shape's closed form — (2p+1)N,
/// (3p+1)N, (3p+3)N, or (5p+2)N for p inputs and N rules — and is `None`
/// for custom shapes. When the two disagree, `note` says why.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamCount {
    pub stored: usize,
    pub formula: Option<usize>,
    pub form: SystemForm,
    pub note: Option<String>,
}

/// Count a system's tunable parameters and classify its shape.
pub fn param_count(system: &FuzzySystem) -> ParamCount {
    let stored: usize = system
        .rules
        .iter()
        .map(|rule| {
            rule.antecedents
                .iter()
                .map(FuzzySet::parameter_count)
                .sum::<usize>()
                + rule.consequent.parameter_count()
        })
        .sum();

    let p = system.num_inputs();
    let n = system.num_rules();
    let form = classify_form(system);
    let formula = match form {
        SystemForm::T1Mamdani => Some((2 * p + 1) * n),
        SystemForm::T1Tsk => Some((3 * p + 1) * n),
        SystemForm::It2Mamdani => Some((3 * p + 3) * n),
        SystemForm::It2Tsk => Some((5 * p + 2) * n),
        SystemForm::Custom => None,
    };
    let note = match (form, formula) {
        (SystemForm::It2Mamdani, Some(f)) if f != stored => Some(format!(
            "the {form} formula (3p+3)N = {f} budgets three consequent scalars per rule, \
             but an interval consequent stores two, so the stored count is (3p+2)N = {stored}"
        )),
        _ => None,
    };

    ParamCount {
        stored,
        formula,
        form,
        note,
    }
}

fn classify_form(system: &FuzzySystem) -> SystemForm {
    use crate::rules::SystemKind;
    if system.rules.is_empty() {
        return SystemForm::Custom;
    }
    let gaussian_t1 = system.kind == SystemKind::T1
        && all_antecedents(system, |s| matches!(s, FuzzySet::GaussianT1(_)));
    let gaussian_fou = system.kind == SystemKind::It2
        && all_antecedents(system, |s| {
            matches!(
                s,
                FuzzySet::GaussianUncertainMean(_) | FuzzySet::GaussianUncertainStd(_)
            )
        });
    let constant = all_consequents(system, |c| matches!(c, Consequent::Constant(_)));
    let linear = all_consequents(system, |c| matches!(c, Consequent::Linear(_)));
    let interval = all_consequents(system, |c| matches!(c, Consequent::Interval { .. }));
    let interval_linear =
        all_consequents(system, |c| matches!(c, Consequent::IntervalLinear { .. }));

    match (gaussian_t1, gaussian_fou) {
        (true, _) if constant => SystemForm::T1Mamdani,
        (true, _) if linear => SystemForm::T1Tsk,
        (_, true) if interval => SystemForm::It2Mamdani,
        (_, true) if interval_linear => SystemForm::It2Tsk,
        _ => SystemForm::Custom,
    }
}

fn all_antecedents(system: &FuzzySystem, pred: impl Fn(&FuzzySet) -> bool) -> bool {
    system
        .rules
        .iter()
        .all(|rule| rule.antecedents.iter().all(&pred))
}

fn all_consequents(system: &FuzzySystem, pred: impl Fn(&Consequent) -> bool) -> bool {
    system.rules.iter().all(|rule| pred(&rule.consequent))
}
