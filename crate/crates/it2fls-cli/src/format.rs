//! JSON system-definition files.
//!
//! A definition names its sets once and lets rules refer to them by name, so
//! the on-disk form stays readable even when many rules share antecedents.
//! Parsing resolves every name, builds a [`FuzzySystem`], and runs full
//! validation; serialization inverts the mapping with synthesized set names.

use std::collections::HashMap;

use it2fls::{
    Consequent, FuzzySet, FuzzySystem, InputDomain, Reducer, Rule, SetError, SystemKind, TNorm,
};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    pub version: u32,
    pub kind: KindDto,
    pub inputs: Vec<InputDto>,
    pub sets: Vec<SetDto>,
    pub rules: Vec<RuleDto>,
    pub t_norm: TNormDto,
    pub reducer: ReducerDto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindDto {
    T1,
    It2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDto {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetDto {
    pub name: String,
    #[serde(flatten)]
    pub shape: ShapeDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ShapeDto {
    Gaussian {
        m: f64,
        sigma: f64,
    },
    Trapezoid {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    },
    GaussianUncertainMean {
        m1: f64,
        m2: f64,
        sigma: f64,
    },
    GaussianUncertainStd {
        m: f64,
        sigma1: f64,
        sigma2: f64,
    },
    TrapezoidIt2 {
        umf: [f64; 4],
        lmf: [f64; 4],
        h: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleDto {
    pub antecedents: Vec<String>,
    pub consequent: ConsequentDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConsequentDto {
    Constant { value: f64 },
    Interval { lower: f64, upper: f64 },
    Linear { coefficients: Vec<f64> },
    IntervalLinear { lower: Vec<f64>, upper: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TNormDto {
    Product,
    Minimum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ReducerDto {
    EiascCos,
    Nt,
    Bmm { alpha: f64, beta: f64 },
    T1WeightedAverage,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("version {0} is not supported; this build reads version 1")]
    Version(u32),
    #[error("sets[{index}]: duplicate set name '{name}'")]
    DuplicateSet { index: usize, name: String },
    #[error("sets[{index}] '{name}': {source}")]
    BadSet {
        index: usize,
        name: String,
        source: SetError,
    },
    #[error("rules[{rule}].antecedents[{slot}]: unknown set '{name}'")]
    UnknownSet {
        rule: usize,
        slot: usize,
        name: String,
    },
    #[error("system fails validation: {0}")]
    Invalid(String),
}

/// Parse a JSON system definition into a validated [`FuzzySystem`].
pub fn parse_system(text: &str) -> Result<FuzzySystem, FormatError> {
    let file: SystemFile = serde_json::from_str(text)?;
    into_system(&file)
}

/// Resolve a parsed document into a validated [`FuzzySystem`].
pub fn into_system(file: &SystemFile) -> Result<FuzzySystem, FormatError> {
    if file.version != FORMAT_VERSION {
        return Err(FormatError::Version(file.version));
    }

    let mut sets: HashMap<&str, FuzzySet> = HashMap::new();
    for (index, dto) in file.sets.iter().enumerate() {
        let set = build_set(&dto.shape).map_err(|source| FormatError::BadSet {
            index,
            name: dto.name.clone(),
            source,
        })?;
        if sets.insert(&dto.name, set).is_some() {
            return Err(FormatError::DuplicateSet {
                index,
                name: dto.name.clone(),
            });
        }
    }

    let rules = file
        .rules
        .iter()
        .enumerate()
        .map(|(rule, dto)| {
            let antecedents = dto
                .antecedents
                .iter()
                .enumerate()
                .map(|(slot, name)| {
                    sets.get(name.as_str())
                        .copied()
                        .ok_or_else(|| FormatError::UnknownSet {
                            rule,
                            slot,
                            name: name.clone(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Rule {
                antecedents,
                consequent: build_consequent(&dto.consequent),
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;

    let system = FuzzySystem {
        inputs: file
            .inputs
            .iter()
            .map(|i| InputDomain::new(&i.name, i.lo, i.hi))
            .collect(),
        rules,
        t_norm: match file.t_norm {
            TNormDto::Product => TNorm::Product,
            TNormDto::Minimum => TNorm::Minimum,
        },
        reducer: build_reducer(&file.reducer),
        kind: match file.kind {
            KindDto::T1 => SystemKind::T1,
            KindDto::It2 => SystemKind::It2,
        },
    };

    let report = system.validate();
    if !report.is_ok() {
        let listing = report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(FormatError::Invalid(listing));
    }
    Ok(system)
}

/// Serialize a system back into document form with synthesized set names.
///
/// Identical sets are written once and shared by name; names are stable
/// (`s1`, `s2`, ... in first-use order) so serialization is deterministic.
pub fn from_system(system: &FuzzySystem) -> SystemFile {
    let mut registry: Vec<(FuzzySet, String)> = Vec::new();
    let mut rules = Vec::with_capacity(system.rules.len());
    for rule in &system.rules {
        let antecedents = rule
            .antecedents
            .iter()
            .map(|set| {
                if let Some((_, name)) = registry.iter().find(|(known, _)| known == set) {
                    return name.clone();
                }
                let name = format!("s{}", registry.len() + 1);
                registry.push((*set, name.clone()));
                name
            })
            .collect();
        rules.push(RuleDto {
            antecedents,
            consequent: describe_consequent(&rule.consequent),
        });
    }

    SystemFile {
        version: FORMAT_VERSION,
        kind: match system.kind {
            SystemKind::T1 => KindDto::T1,
            SystemKind::It2 => KindDto::It2,
        },
        inputs: system
            .inputs
            .iter()
            .map(|d| InputDto {
                name: d.name.clone(),
                lo: d.lo,
                hi: d.hi,
            })
            .collect(),
        sets: registry
            .into_iter()
            .map(|(set, name)| SetDto {
                name,
                shape: describe_set(&set),
            })
            .collect(),
        rules,
        t_norm: match system.t_norm {
            TNorm::Product => TNormDto::Product,
            TNorm::Minimum => TNormDto::Minimum,
        },
        reducer: describe_reducer(&system.reducer),
    }
}

fn build_set(shape: &ShapeDto) -> Result<FuzzySet, SetError> {
    match *shape {
        ShapeDto::Gaussian { m, sigma } => FuzzySet::gaussian_t1(m, sigma),
        ShapeDto::Trapezoid { a, b, c, d } => FuzzySet::trapezoid_t1(a, b, c, d),
        ShapeDto::GaussianUncertainMean { m1, m2, sigma } => {
            FuzzySet::gaussian_uncertain_mean(m1, m2, sigma)
        }
        ShapeDto::GaussianUncertainStd { m, sigma1, sigma2 } => {
            FuzzySet::gaussian_uncertain_std(m, sigma1, sigma2)
        }
        ShapeDto::TrapezoidIt2 { umf, lmf, h } => FuzzySet::trapezoid_it2(umf, lmf, h),
    }
}

fn describe_set(set: &FuzzySet) -> ShapeDto {
    match set {
        FuzzySet::GaussianT1(g) => ShapeDto::Gaussian {
            m: g.mean(),
            sigma: g.sigma(),
        },
        FuzzySet::TrapezoidT1(t) => {
            let [a, b, c, d] = t.breakpoints();
            ShapeDto::Trapezoid { a, b, c, d }
        }
        FuzzySet::GaussianUncertainMean(g) => {
            let (m1, m2) = g.mean_bounds();
            ShapeDto::GaussianUncertainMean {
                m1,
                m2,
                sigma: g.sigma(),
            }
        }
        FuzzySet::GaussianUncertainStd(g) => {
            let (sigma1, sigma2) = g.sigma_bounds();
            ShapeDto::GaussianUncertainStd {
                m: g.mean(),
                sigma1,
                sigma2,
            }
        }
        FuzzySet::TrapezoidIt2(t) => ShapeDto::TrapezoidIt2 {
            umf: t.umf_breakpoints(),
            lmf: t.lmf_breakpoints(),
            h: t.lmf_height(),
        },
    }
}

fn build_consequent(dto: &ConsequentDto) -> Consequent {
    match dto {
        ConsequentDto::Constant { value } => Consequent::Constant(*value),
        ConsequentDto::Interval { lower, upper } => Consequent::Interval {
            lower: *lower,
            upper: *upper,
        },
        ConsequentDto::Linear { coefficients } => Consequent::Linear(coefficients.clone()),
        ConsequentDto::IntervalLinear { lower, upper } => Consequent::IntervalLinear {
            lower: lower.clone(),
            upper: upper.clone(),
        },
    }
}

fn describe_consequent(consequent: &Consequent) -> ConsequentDto {
    match consequent {
        Consequent::Constant(value) => ConsequentDto::Constant { value: *value },
        Consequent::Interval { lower, upper } => ConsequentDto::Interval {
            lower: *lower,
            upper: *upper,
        },
        Consequent::Linear(coefficients) => ConsequentDto::Linear {
            coefficients: coefficients.clone(),
        },
        Consequent::IntervalLinear { lower, upper } => ConsequentDto::IntervalLinear {
            lower: lower.clone(),
            upper: upper.clone(),
        },
    }
}

fn build_reducer(dto: &ReducerDto) -> Reducer {
    match dto {
        ReducerDto::EiascCos => Reducer::EiascCenterOfSets,
        ReducerDto::Nt => Reducer::NieTan,
        ReducerDto::Bmm { alpha, beta } => Reducer::Bmm {
            alpha: *alpha,
            beta: *beta,
        },
        ReducerDto::T1WeightedAverage => Reducer::T1WeightedAverage,
    }
}

fn describe_reducer(reducer: &Reducer) -> ReducerDto {
    match reducer {
        Reducer::EiascCenterOfSets => ReducerDto::EiascCos,
        Reducer::NieTan => ReducerDto::Nt,
        Reducer::Bmm { alpha, beta } => ReducerDto::Bmm {
            alpha: *alpha,
            beta: *beta,
        },
        Reducer::T1WeightedAverage => ReducerDto::T1WeightedAverage,
    }
}
