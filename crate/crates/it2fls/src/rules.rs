//! Rules, rule firing, and whole-system structure.
//!
//! A [`Rule`] pairs one antecedent set per input with a consequent. Firing a
//! rule combines the antecedent memberships under the system t-norm: type-1
//! antecedents produce a single firing level, interval type-2 antecedents a
//! [`FiringInterval`] obtained by combining the LMF grades for the lower end
//! and the UMF grades for the upper end.
//!
//! [`FuzzySystem::validate`] performs the structural checks that individual
//! constructors cannot see: rule arity, antecedent family versus system kind,
//! reducer compatibility, consequent coefficient counts, and an advisory
//! warning when an input carries more membership functions than anyone can
//! meaningfully label.

use crate::sets::FuzzySet;
use crate::{Error, Result};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// How antecedent memberships are combined into a firing degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TNorm {
    Product,
    Minimum,
}

impl TNorm {
    /// Fold one membership grade into an accumulated firing degree.
    pub fn combine(self, acc: f64, grade: f64) -> f64 {
        match self {
            TNorm::Product => acc * grade,
            TNorm::Minimum => {
                if grade < acc {
                    grade
                } else {
                    acc
                }
            }
        }
    }
}

/// Whether a system is type-1 or interval type-2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    T1,
    It2,
}

/// Output stage selection.
///
/// `EiascCenterOfSets` type-reduces to `[y_l, y_r]` and defuzzifies to the
/// midpoint. `NieTan` and `Bmm` map firing intervals directly to a crisp
/// output (interval consequents are collapsed to their midpoints first).
/// `T1WeightedAverage` is the plain type-1 height defuzzifier and is only
/// valid on type-1 systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reducer {
    EiascCenterOfSets,
    NieTan,
    Bmm { alpha: f64, beta: f64 },
    T1WeightedAverage,
}

/// A named input with its expected domain `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDomain {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

impl InputDomain {
    pub fn new(name: &str, lo: f64, hi: f64) -> Self {
        Self {
            name: String::from(name),
            lo,
            hi,
        }
    }
}

/// Rule consequent.
///
/// `Constant`/`Interval` are zeroth-order consequents; `Linear`/
/// `IntervalLinear` are first-order with coefficients `[c0, c1, ..., cp]`
/// applied as `c0 + c1 x1 + ... + cp xp`. Interval variants carry independent
/// lower and upper parameter sets; a centroid interval measured from a
/// consequent set can be written down directly as `Interval`.
#[derive(Debug, Clone, PartialEq)]
pub enum Consequent {
    Constant(f64),
    Interval { lower: f64, upper: f64 },
    Linear(Vec<f64>),
    IntervalLinear { lower: Vec<f64>, upper: Vec<f64> },
}

impl Consequent {
    /// Evaluate at `x`, returning the consequent value interval.
    ///
    /// Crisp consequents return a degenerate interval. For `IntervalLinear`
    /// the two affine forms are evaluated independently and the endpoints
    /// reordered, since nothing forces the "lower" form to stay below the
    /// "upper" one across the whole input space.
    pub fn value(&self, x: &[f64]) -> ValueInterval {
        match self {
            Consequent::Constant(c) => ValueInterval::new(*c, *c),
            Consequent::Interval { lower, upper } => ValueInterval::new(*lower, *upper),
            Consequent::Linear(coeffs) => {
                let v = affine(coeffs, x);
                ValueInterval::new(v, v)
            }
            Consequent::IntervalLinear { lower, upper } => {
                ValueInterval::new(affine(lower, x), affine(upper, x))
            }
        }
    }

    /// True for consequents that always produce a single crisp value.
    pub fn is_crisp(&self) -> bool {
        matches!(self, Consequent::Constant(_) | Consequent::Linear(_))
    }

    /// Number of scalar parameters stored.
    pub fn parameter_count(&self) -> usize {
        match self {
            Consequent::Constant(_) => 1,
            Consequent::Interval { .. } => 2,
            Consequent::Linear(coeffs) => coeffs.len(),
            Consequent::IntervalLinear { lower, upper } => lower.len() + upper.len(),
        }
    }

    fn params_finite(&self) -> bool {
        match self {
            Consequent::Constant(c) => c.is_finite(),
            Consequent::Interval { lower, upper } => lower.is_finite() && upper.is_finite(),
            Consequent::Linear(coeffs) => coeffs.iter().all(|c| c.is_finite()),
            Consequent::IntervalLinear { lower, upper } => {
                lower.iter().chain(upper.iter()).all(|c| c.is_finite())
            }
        }
    }
}

fn affine(coeffs: &[f64], x: &[f64]) -> f64 {
    let mut v = coeffs.first().copied().unwrap_or(0.0);
    for (c, xi) in coeffs.iter().skip(1).zip(x) {
        v += c * xi;
    }
    v
}

/// An ordered interval of consequent values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueInterval {
    lower: f64,
    upper: f64,
}

impl ValueInterval {
    /// Build from two endpoints in either order.
    pub fn new(a: f64, b: f64) -> Self {
        if b < a {
            Self { lower: b, upper: a }
        } else {
            Self { lower: a, upper: b }
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn midpoint(&self) -> f64 {
        (self.lower + self.upper) / 2.0
    }
}

/// A rule firing strength interval `[lower, upper]` within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiringInterval {
    lower: f64,
    upper: f64,
}

impl FiringInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || lower < 0.0 || upper > 1.0 || lower > upper
        {
            return Err(Error::BadFiringInterval);
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }
}

/// One fuzzy rule: an antecedent set per input plus a consequent.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedents: Vec<FuzzySet>,
    pub consequent: Consequent,
}

impl Rule {
    /// Type-1 firing level: the t-norm of the antecedent memberships.
    ///
    /// All antecedents must be type-1 sets.
    pub fn fire_t1(&self, x: &[f64], t_norm: TNorm) -> Result<f64> {
        check_input(x, self.antecedents.len())?;
        let mut level = 1.0;
        for (set, xi) in self.antecedents.iter().zip(x) {
            let grade = set.t1_membership(*xi).ok_or(Error::FamilyMismatch)?;
            level = t_norm.combine(level, grade);
        }
        Ok(level)
    }

    /// Interval firing strength: LMF grades combine into the lower end, UMF
    /// grades into the upper end. Type-1 antecedents participate as
    /// degenerate intervals, so mixed rules are allowed here.
    pub fn fire_it2(&self, x: &[f64], t_norm: TNorm) -> Result<FiringInterval> {
        check_input(x, self.antecedents.len())?;
        let mut lower = 1.0;
        let mut upper = 1.0;
        for (set, xi) in self.antecedents.iter().zip(x) {
            let grade = set.membership_interval(*xi);
            lower = t_norm.combine(lower, grade.lower);
            upper = t_norm.combine(upper, grade.upper);
        }
        FiringInterval::new(lower, upper)
    }
}

fn check_input(x: &[f64], expected: usize) -> Result<()> {
    if x.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: x.len(),
        });
    }
    for (i, v) in x.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                what: "input",
                index: i,
            });
        }
    }
    Ok(())
}

/// A structural defect that makes a system unusable.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoInputs,
    EmptyRulebase,
    BadDomain {
        input: usize,
    },
    AntecedentCount {
        rule: usize,
        expected: usize,
        got: usize,
    },
    AntecedentFamily {
        rule: usize,
    },
    CoefficientCount {
        rule: usize,
        expected: usize,
        got: usize,
    },
    IntervalOrder {
        rule: usize,
    },
    NonFiniteConsequent {
        rule: usize,
    },
    ConsequentKindMismatch {
        rule: usize,
    },
    ReducerKindMismatch,
    BadBmmWeights,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoInputs => write!(f, "system declares no inputs"),
            Violation::EmptyRulebase => write!(f, "rulebase is empty"),
            Violation::BadDomain { input } => {
                write!(f, "input {input}: domain must be finite with lo < hi")
            }
            Violation::AntecedentCount {
                rule,
                expected,
                got,
            } => write!(f, "rule {rule}: has {got} antecedents, expected {expected}"),
            Violation::AntecedentFamily { rule } => {
                write!(f, "rule {rule}: antecedent family does not match system kind")
            }
            Violation::CoefficientCount {
                rule,
                expected,
                got,
            } => write!(
                f,
                "rule {rule}: linear consequent has {got} coefficients, expected {expected}"
            ),
            Violation::IntervalOrder { rule } => {
                write!(f, "rule {rule}: interval consequent has lower > upper")
            }
            Violation::NonFiniteConsequent { rule } => {
                write!(f, "rule {rule}: consequent parameter is not finite")
            }
            Violation::ConsequentKindMismatch { rule } => write!(
                f,
                "rule {rule}: type-1 systems require crisp (constant or linear) consequents"
            ),
            Violation::ReducerKindMismatch => write!(
                f,
                "reducer and system kind disagree (t1_weighted_average pairs with type-1, the interval reducers with interval type-2)"
            ),
            Violation::BadBmmWeights => {
                write!(f, "bmm weights must be finite and non-negative")
            }
        }
    }
}

/// An advisory finding that does not block evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// More membership functions on one input than people can keep apart.
    ManySets { input: usize, count: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ManySets { input, count } => write!(
                f,
                "input {input} uses {count} membership functions; more than 7 is hard to interpret"
            ),
        }
    }
}

/// Outcome of [`FuzzySystem::validate`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    /// True when the system may be evaluated (warnings do not block).
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A complete fuzzy inference system.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySystem {
    pub inputs: Vec<InputDomain>,
    pub rules: Vec<Rule>,
    pub t_norm: TNorm,
    pub reducer: Reducer,
    pub kind: SystemKind,
}

impl FuzzySystem {
    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    /// Check every structural invariant and collect all findings.
    ///
    /// Violations block evaluation; warnings are advisory only.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let p = self.inputs.len();

        if p == 0 {
            report.violations.push(Violation::NoInputs);
        }
        if self.rules.is_empty() {
            report.violations.push(Violation::EmptyRulebase);
        }
        for (i, domain) in self.inputs.iter().enumerate() {
            if !(domain.lo.is_finite() && domain.hi.is_finite() && domain.lo < domain.hi) {
                report.violations.push(Violation::BadDomain { input: i });
            }
        }

        let want_t1 = self.kind == SystemKind::T1;
        for (r, rule) in self.rules.iter().enumerate() {
            if rule.antecedents.len() != p {
                report.violations.push(Violation::AntecedentCount {
                    rule: r,
                    expected: p,
                    got: rule.antecedents.len(),
                });
            }
            if rule.antecedents.iter().any(|s| s.is_t1() != want_t1) {
                report
                    .violations
                    .push(Violation::AntecedentFamily { rule: r });
            }
            match &rule.consequent {
                Consequent::Linear(coeffs) => {
                    if coeffs.len() != p + 1 {
                        report.violations.push(Violation::CoefficientCount {
                            rule: r,
                            expected: p + 1,
                            got: coeffs.len(),
                        });
                    }
                }
                Consequent::IntervalLinear { lower, upper } => {
                    for coeffs in [lower, upper] {
                        if coeffs.len() != p + 1 {
                            report.violations.push(Violation::CoefficientCount {
                                rule: r,
                                expected: p + 1,
                                got: coeffs.len(),
                            });
                        }
                    }
                }
                Consequent::Interval { lower, upper } => {
                    if lower > upper {
                        report.violations.push(Violation::IntervalOrder { rule: r });
                    }
                }
                Consequent::Constant(_) => {}
            }
            if !rule.consequent.params_finite() {
                report
                    .violations
                    .push(Violation::NonFiniteConsequent { rule: r });
            }
            if want_t1 && !rule.consequent.is_crisp() {
                report
                    .violations
                    .push(Violation::ConsequentKindMismatch { rule: r });
            }
        }

        let reducer_is_t1 = matches!(self.reducer, Reducer::T1WeightedAverage);
        if reducer_is_t1 != want_t1 {
            report.violations.push(Violation::ReducerKindMismatch);
        }
        if let Reducer::Bmm { alpha, beta } = self.reducer {
            if !(alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta >= 0.0) {
                report.violations.push(Violation::BadBmmWeights);
            }
        }

        for i in 0..p {
            let mut distinct: Vec<&FuzzySet> = Vec::new();
            for rule in &self.rules {
                if let Some(set) = rule.antecedents.get(i) {
                    if !distinct.contains(&set) {
                        distinct.push(set);
                    }
                }
            }
            if distinct.len() > 7 {
                report.warnings.push(Warning::ManySets {
                    input: i,
                    count: distinct.len(),
                });
            }
        }

        report
    }

    /// Type-1 firing levels for every rule.
    pub fn firing_levels(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.rules
            .iter()
            .map(|rule| rule.fire_t1(x, self.t_norm))
            .collect()
    }

    /// Interval firing strengths for every rule.
    pub fn firing_intervals(&self, x: &[f64]) -> Result<Vec<FiringInterval>> {
        self.rules
            .iter()
            .map(|rule| rule.fire_it2(x, self.t_norm))
            .collect()
    }

    /// Validate, then run inference at `x`. See [`crate::reduce::evaluate`].
    pub fn evaluate(&self, x: &[f64]) -> Result<crate::reduce::ReductionResult> {
        crate::reduce::evaluate(self, x)
    }
}
