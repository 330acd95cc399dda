//! Type reduction and defuzzification.
//!
//! The centroid of an interval type-2 rule aggregate is itself an interval
//! `[y_l, y_r]`: the extrema of the firing-weighted average when every rule's
//! firing degree ranges freely over its firing interval. Because that
//! weighted average is monotone in each firing degree, both extrema are
//! attained at a corner where every degree sits on one of its interval
//! endpoints, with a single switch index separating upper-endpoint rules from
//! lower-endpoint ones once consequents are sorted.
//!
//! [`eiasc`] finds the switch indices by walking candidate switches in sorted
//! consequent order, maintaining the weighted sum incrementally. It is exact,
//! needs at most one pass per endpoint, and reports the switch indices it
//! settled on. [`corner_oracle`] brute-forces all `2^N` corners instead and
//! exists to cross-check `eiasc` on small instances; the two must agree to
//! floating-point accuracy.

use crate::rules::{FiringInterval, FuzzySystem, Reducer, SystemKind, ValueInterval};
use crate::{Error, Result};
use alloc::vec::Vec;

/// Rule-count limit for [`corner_oracle`]'s exhaustive enumeration.
pub const ORACLE_MAX_RULES: usize = 20;

/// The type-reduced centroid interval plus the switch indices that produced
/// each endpoint.
///
/// `switch_left` is the number of rules (in ascending lower-consequent order)
/// that use their upper firing degree for `y_l`; for `y_r`, rules strictly
/// after `switch_right` (in ascending upper-consequent order) use their upper
/// firing degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedInterval {
    pub y_l: f64,
    pub y_r: f64,
    pub switch_left: usize,
    pub switch_right: usize,
}

/// Result of a full inference pass.
///
/// Direct defuzzifiers (Nie-Tan, BMM, and the type-1 weighted average)
/// produce a single crisp value, reported with `y_l == y_r == y` and no
/// switch points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionResult {
    pub y_l: f64,
    pub y_r: f64,
    pub y: f64,
    pub reducer: Reducer,
    pub switch_points: Option<(usize, usize)>,
}

fn check_lengths(firings: usize, consequents: usize) -> Result<()> {
    if firings != consequents {
        return Err(Error::DimensionMismatch {
            expected: firings,
            got: consequents,
        });
    }
    Ok(())
}

fn all_upper_zero(firings: &[FiringInterval]) -> bool {
    firings.iter().all(|f| f.upper() <= 0.0)
}

/// EIASC type reduction.
///
/// Returns the exact centroid interval endpoints. For `y_l`, consequent
/// lower endpoints are sorted ascending (ties keep their original rule
/// order) and the accumulators start from the all-lower-firing corner; each
/// step moves one more rule to its upper firing degree until the running
/// average drops below the next consequent. `y_r` runs the mirror image from
/// the top of the upper-endpoint order. Steps where the accumulated firing
/// mass is still zero are skipped rather than tested, so leading zero-width,
/// zero-firing rules cannot produce a bogus stop.
///
/// Errors with [`Error::AllZeroFiring`] when every upper firing degree is
/// zero (then no corner carries any mass and the interval is undefined).
pub fn eiasc(firings: &[FiringInterval], consequents: &[ValueInterval]) -> Result<ReducedInterval> {
    check_lengths(firings.len(), consequents.len())?;
    let n = firings.len();
    if n == 0 || all_upper_zero(firings) {
        return Err(Error::AllZeroFiring);
    }

    let mut order: Vec<usize> = (0..n).collect();

    // Left endpoint: ascending lower-consequent order.
    order.sort_by(|&i, &j| consequents[i].lower().total_cmp(&consequents[j].lower()));
    let mut a = 0.0;
    let mut b = 0.0;
    for &i in &order {
        a += consequents[i].lower() * firings[i].lower();
        b += firings[i].lower();
    }
    let mut y_l = 0.0;
    let mut switch_left = n;
    for step in 0..n {
        let i = order[step];
        let spread = firings[i].upper() - firings[i].lower();
        a += consequents[i].lower() * spread;
        b += spread;
        if b > 0.0 {
            y_l = a / b;
            if step + 1 == n || y_l <= consequents[order[step + 1]].lower() {
                switch_left = step + 1;
                break;
            }
        }
    }

    // Right endpoint: descending walk over ascending upper-consequent order.
    order.sort_by(|&i, &j| consequents[i].upper().total_cmp(&consequents[j].upper()));
    let mut a = 0.0;
    let mut b = 0.0;
    for &i in &order {
        a += consequents[i].upper() * firings[i].lower();
        b += firings[i].lower();
    }
    let mut y_r = 0.0;
    let mut switch_right = 0;
    for step in (0..n).rev() {
        let i = order[step];
        let spread = firings[i].upper() - firings[i].lower();
        a += consequents[i].upper() * spread;
        b += spread;
        if b > 0.0 {
            y_r = a / b;
            if step == 0 || y_r >= consequents[order[step - 1]].upper() {
                switch_right = step;
                break;
            }
        }
    }

    Ok(ReducedInterval {
        y_l,
        y_r,
        switch_left,
        switch_right,
    })
}

/// Exhaustive reference for [`eiasc`].
///
/// Evaluates the firing-weighted average at all `2^N` corners of the firing
/// box, taking consequent lower endpoints for the minimum and upper endpoints
/// for the maximum. Corners with zero total firing carry no mass and are
/// skipped. Only practical for small `N`; refuses more than
/// [`ORACLE_MAX_RULES`] rules.
pub fn corner_oracle(
    firings: &[FiringInterval],
    consequents: &[ValueInterval],
) -> Result<(f64, f64)> {
    check_lengths(firings.len(), consequents.len())?;
    let n = firings.len();
    if n > ORACLE_MAX_RULES {
        return Err(Error::TooManyRules {
            count: n,
            max: ORACLE_MAX_RULES,
        });
    }
    if n == 0 || all_upper_zero(firings) {
        return Err(Error::AllZeroFiring);
    }

    let mut y_l = f64::INFINITY;
    let mut y_r = f64::NEG_INFINITY;
    for mask in 0u32..(1u32 << n) {
        let mut mass = 0.0;
        let mut low_sum = 0.0;
        let mut high_sum = 0.0;
        for (i, (f, c)) in firings.iter().zip(consequents).enumerate() {
            let degree = if mask & (1 << i) != 0 {
                f.upper()
            } else {
                f.lower()
            };
            mass += degree;
            low_sum += degree * c.lower();
            high_sum += degree * c.upper();
        }
        if mass > 0.0 {
            y_l = y_l.min(low_sum / mass);
            y_r = y_r.max(high_sum / mass);
        }
    }
    Ok((y_l, y_r))
}

/// Nie-Tan direct defuzzifier: the average of the two firing endpoints
/// weights each (crisp) consequent.
pub fn nie_tan(firings: &[FiringInterval], consequents: &[f64]) -> Result<f64> {
    check_lengths(firings.len(), consequents.len())?;
    check_values(consequents)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (f, y) in firings.iter().zip(consequents) {
        let w = f.lower() + f.upper();
        num += y * w;
        den += w;
    }
    if den > 0.0 {
        Ok(num / den)
    } else {
        Err(Error::AllZeroFiring)
    }
}

/// Weighted-bound (BMM) direct defuzzifier:
/// `alpha * avg_lower + beta * avg_upper`.
///
/// When the lower firing degrees carry no mass at all, the lower average is
/// taken from the upper one so the blend stays defined; if the upper degrees
/// are also massless the input fires no rule and the call errors.
pub fn bmm(firings: &[FiringInterval], consequents: &[f64], alpha: f64, beta: f64) -> Result<f64> {
    check_lengths(firings.len(), consequents.len())?;
    check_values(consequents)?;
    if !alpha.is_finite() {
        return Err(Error::NonFinite {
            what: "weight",
            index: 0,
        });
    }
    if !beta.is_finite() {
        return Err(Error::NonFinite {
            what: "weight",
            index: 1,
        });
    }
    let mut lower_num = 0.0;
    let mut lower_den = 0.0;
    let mut upper_num = 0.0;
    let mut upper_den = 0.0;
    for (f, y) in firings.iter().zip(consequents) {
        lower_num += y * f.lower();
        lower_den += f.lower();
        upper_num += y * f.upper();
        upper_den += f.upper();
    }
    if upper_den <= 0.0 {
        return Err(Error::AllZeroFiring);
    }
    let upper_avg = upper_num / upper_den;
    let lower_avg = if lower_den > 0.0 {
        lower_num / lower_den
    } else {
        upper_avg
    };
    Ok(alpha * lower_avg + beta * upper_avg)
}

/// Plain type-1 height defuzzifier: `sum(f y) / sum(f)`.
pub fn t1_weighted_average(levels: &[f64], consequents: &[f64]) -> Result<f64> {
    check_lengths(levels.len(), consequents.len())?;
    check_values(consequents)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, (f, y)) in levels.iter().zip(consequents).enumerate() {
        if !f.is_finite() || *f < 0.0 {
            return Err(Error::NonFinite {
                what: "firing level",
                index: i,
            });
        }
        num += f * y;
        den += f;
    }
    if den > 0.0 {
        Ok(num / den)
    } else {
        Err(Error::AllZeroFiring)
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                what: "consequent",
                index: i,
            });
        }
    }
    Ok(())
}

/// Validate a system and run one full inference pass at `x`.
///
/// Type-1 systems fire crisply and take the weighted average. Interval
/// type-2 systems fire interval strengths and dispatch on the configured
/// reducer; Nie-Tan and BMM collapse interval consequents to their midpoints
/// before weighting.
pub fn evaluate(system: &FuzzySystem, x: &[f64]) -> Result<ReductionResult> {
    let report = system.validate();
    if !report.is_ok() {
        return Err(Error::InvalidSystem(report.violations));
    }
    evaluate_prevalidated(system, x)
}

/// [`evaluate`] without the validation pass, for callers that have already
/// validated the system and evaluate it many times.
pub(crate) fn evaluate_prevalidated(system: &FuzzySystem, x: &[f64]) -> Result<ReductionResult> {
    match system.kind {
        SystemKind::T1 => {
            let levels = system.firing_levels(x)?;
            let values: Vec<f64> = system
                .rules
                .iter()
                .map(|rule| rule.consequent.value(x).midpoint())
                .collect();
            let y = t1_weighted_average(&levels, &values)?;
            Ok(ReductionResult {
                y_l: y,
                y_r: y,
                y,
                reducer: system.reducer,
                switch_points: None,
            })
        }
        SystemKind::It2 => {
            let firings = system.firing_intervals(x)?;
            match system.reducer {
                Reducer::EiascCenterOfSets => {
                    let values: Vec<ValueInterval> = system
                        .rules
                        .iter()
                        .map(|rule| rule.consequent.value(x))
                        .collect();
                    let reduced = eiasc(&firings, &values)?;
                    Ok(ReductionResult {
                        y_l: reduced.y_l,
                        y_r: reduced.y_r,
                        y: (reduced.y_l + reduced.y_r) / 2.0,
                        reducer: system.reducer,
                        switch_points: Some((reduced.switch_left, reduced.switch_right)),
                    })
                }
                Reducer::NieTan => {
                    let values = midpoints(system, x);
                    let y = nie_tan(&firings, &values)?;
                    Ok(direct(y, system.reducer))
                }
                Reducer::Bmm { alpha, beta } => {
                    let values = midpoints(system, x);
                    let y = bmm(&firings, &values, alpha, beta)?;
                    Ok(direct(y, system.reducer))
                }
                Reducer::T1WeightedAverage => Err(Error::BadRequest(
                    "t1_weighted_average requires a type-1 system",
                )),
            }
        }
    }
}

fn midpoints(system: &FuzzySystem, x: &[f64]) -> Vec<f64> {
    system
        .rules
        .iter()
        .map(|rule| rule.consequent.value(x).midpoint())
        .collect()
}

fn direct(y: f64, reducer: Reducer) -> ReductionResult {
    ReductionResult {
        y_l: y,
        y_r: y,
        y,
        reducer,
        switch_points: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{Consequent, FuzzySystem, InputDomain, Rule, TNorm};
    use crate::sets::FuzzySet;
    use alloc::vec;

    const TOL: f64 = 5e-4;

    fn demo_firings() -> Vec<FiringInterval> {
        let neg = FuzzySet::gaussian_uncertain_std(-1.0, 0.5, 0.7).unwrap();
        let pos = FuzzySet::gaussian_uncertain_std(1.0, 0.5, 0.7).unwrap();
        let combos = [(neg, neg), (neg, pos), (pos, neg), (pos, pos)];
        combos
            .iter()
            .map(|(a, b)| {
                Rule {
                    antecedents: vec![*a, *b],
                    consequent: Consequent::Constant(0.0),
                }
                .fire_it2(&[-0.2, -0.3], TNorm::Product)
                .unwrap()
            })
            .collect()
    }

    fn demo_consequents() -> Vec<ValueInterval> {
        [-1.0, -0.5, 0.5, 1.0]
            .iter()
            .map(|&c| ValueInterval::new(c, c))
            .collect()
    }

    #[test]
    fn eiasc_matches_published_endpoints() {
        let reduced = eiasc(&demo_firings(), &demo_consequents()).unwrap();
        assert!((reduced.y_l - -0.8846).abs() < TOL);
        assert!((reduced.y_r - 0.0058).abs() < TOL);
        assert_eq!(reduced.switch_left, 1);
        assert_eq!(reduced.switch_right, 2);
        let y = (reduced.y_l + reduced.y_r) / 2.0;
        assert!((y - -0.4394).abs() < TOL);
    }

    #[test]
    fn eiasc_agrees_with_oracle_on_the_demo() {
        let firings = demo_firings();
        let consequents = demo_consequents();
        let reduced = eiasc(&firings, &consequents).unwrap();
        let (lo, hi) = corner_oracle(&firings, &consequents).unwrap();
        assert!((reduced.y_l - lo).abs() < 1e-12);
        assert!((reduced.y_r - hi).abs() < 1e-12);
    }

    #[test]
    fn single_rule_reduces_to_its_consequent_interval() {
        let firings = vec![FiringInterval::new(0.5, 1.0).unwrap()];
        let consequents = vec![ValueInterval::new(2.0, 3.0)];
        let reduced = eiasc(&firings, &consequents).unwrap();
        assert_eq!(reduced.y_l, 2.0);
        assert_eq!(reduced.y_r, 3.0);
    }

    #[test]
    fn degenerate_intervals_reduce_to_the_weighted_average() {
        let firings = vec![
            FiringInterval::new(0.3, 0.3).unwrap(),
            FiringInterval::new(0.6, 0.6).unwrap(),
        ];
        let consequents = vec![ValueInterval::new(-1.0, -1.0), ValueInterval::new(2.0, 2.0)];
        let reduced = eiasc(&firings, &consequents).unwrap();
        let expected = (0.6 * 2.0 - 0.3) / 0.9;
        assert!((reduced.y_l - expected).abs() < 1e-12);
        assert!((reduced.y_r - expected).abs() < 1e-12);
    }

    #[test]
    fn zero_lower_mass_puts_endpoints_on_extreme_consequents() {
        let firings = vec![
            FiringInterval::new(0.0, 0.8).unwrap(),
            FiringInterval::new(0.0, 0.4).unwrap(),
        ];
        let consequents = vec![ValueInterval::new(-2.0, -2.0), ValueInterval::new(5.0, 5.0)];
        let reduced = eiasc(&firings, &consequents).unwrap();
        assert_eq!(reduced.y_l, -2.0);
        assert_eq!(reduced.y_r, 5.0);
    }

    #[test]
    fn all_zero_firing_is_an_error() {
        let firings = vec![
            FiringInterval::new(0.0, 0.0).unwrap(),
            FiringInterval::new(0.0, 0.0).unwrap(),
        ];
        let consequents = vec![ValueInterval::new(0.0, 1.0), ValueInterval::new(1.0, 2.0)];
        assert!(matches!(
            eiasc(&firings, &consequents),
            Err(Error::AllZeroFiring)
        ));
        assert!(matches!(
            corner_oracle(&firings, &consequents),
            Err(Error::AllZeroFiring)
        ));
        assert!(matches!(
            nie_tan(&firings, &[0.0, 1.0]),
            Err(Error::AllZeroFiring)
        ));
        assert!(matches!(
            bmm(&firings, &[0.0, 1.0], 0.5, 0.5),
            Err(Error::AllZeroFiring)
        ));
    }

    #[test]
    fn oracle_refuses_oversized_instances() {
        let firings = vec![FiringInterval::new(0.1, 0.9).unwrap(); 21];
        let consequents = vec![ValueInterval::new(0.0, 1.0); 21];
        assert!(matches!(
            corner_oracle(&firings, &consequents),
            Err(Error::TooManyRules { count: 21, max: 20 })
        ));
    }

    #[test]
    fn nie_tan_matches_published_value() {
        let values = [-1.0, -0.5, 0.5, 1.0];
        let y = nie_tan(&demo_firings(), &values).unwrap();
        assert!((y - -0.4794).abs() < TOL);
    }

    #[test]
    fn bmm_matches_published_value() {
        let values = [-1.0, -0.5, 0.5, 1.0];
        let y = bmm(&demo_firings(), &values, 0.5, 0.5).unwrap();
        assert!((y - -0.5665).abs() < TOL);
    }

    #[test]
    fn bmm_extreme_weights_select_one_average() {
        let firings = vec![
            FiringInterval::new(0.2, 0.8).unwrap(),
            FiringInterval::new(0.4, 0.5).unwrap(),
        ];
        let values = [1.0, 3.0];
        let lower_avg = (1.0 * 0.2 + 3.0 * 0.4) / 0.6;
        let upper_avg = (1.0 * 0.8 + 3.0 * 0.5) / 1.3;
        assert!((bmm(&firings, &values, 1.0, 0.0).unwrap() - lower_avg).abs() < 1e-12);
        assert!((bmm(&firings, &values, 0.0, 1.0).unwrap() - upper_avg).abs() < 1e-12);
    }

    #[test]
    fn t1_weighted_average_matches_published_value() {
        let levels = [0.2082, 0.0393, 0.0685, 0.0129];
        let values = [-1.0, -0.5, 0.5, 1.0];
        let y = t1_weighted_average(&levels, &values).unwrap();
        assert!((y - -0.5491).abs() < TOL);
    }

    fn demo_it2_system(reducer: Reducer) -> FuzzySystem {
        let neg = FuzzySet::gaussian_uncertain_std(-1.0, 0.5, 0.7).unwrap();
        let pos = FuzzySet::gaussian_uncertain_std(1.0, 0.5, 0.7).unwrap();
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
            reducer,
            kind: SystemKind::It2,
        }
    }

    #[test]
    fn evaluate_dispatches_on_the_reducer() {
        let out = demo_it2_system(Reducer::EiascCenterOfSets)
            .evaluate(&[-0.2, -0.3])
            .unwrap();
        assert!((out.y - -0.4394).abs() < TOL);
        assert_eq!(out.switch_points, Some((1, 2)));

        let out = demo_it2_system(Reducer::NieTan)
            .evaluate(&[-0.2, -0.3])
            .unwrap();
        assert!((out.y - -0.4794).abs() < TOL);
        assert_eq!(out.y_l, out.y);
        assert_eq!(out.switch_points, None);

        let out = demo_it2_system(Reducer::Bmm {
            alpha: 0.5,
            beta: 0.5,
        })
        .evaluate(&[-0.2, -0.3])
        .unwrap();
        assert!((out.y - -0.5665).abs() < TOL);
    }

    #[test]
    fn evaluate_rejects_invalid_systems() {
        let mut system = demo_it2_system(Reducer::EiascCenterOfSets);
        system.rules.clear();
        assert!(matches!(
            system.evaluate(&[0.0, 0.0]),
            Err(Error::InvalidSystem(_))
        ));
    }

    #[test]
    fn evaluate_t1_matches_published_output() {
        let neg = FuzzySet::gaussian_t1(-1.0, 0.6).unwrap();
        let pos = FuzzySet::gaussian_t1(1.0, 0.6).unwrap();
        let combos = [(neg, neg), (neg, pos), (pos, neg), (pos, pos)];
        let system = FuzzySystem {
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
        };
        let out = system.evaluate(&[-0.2, -0.3]).unwrap();
        assert!((out.y - -0.5491).abs() < TOL);
        assert_eq!(out.y_l, out.y);
        assert_eq!(out.y_r, out.y);
    }
}
