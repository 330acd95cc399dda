//! Membership function families.
//!
//! Two type-1 families (Gaussian, trapezoid) and three interval type-2
//! families (Gaussian with uncertain mean, Gaussian with uncertain standard
//! deviation, and a trapezoid with independent upper and lower bounds). An
//! interval type-2 set is described by its footprint of uncertainty: the band
//! between an upper membership function (UMF) and a lower membership function
//! (LMF). A type-1 set is the degenerate case where the two coincide.
//!
//! All constructors validate their parameters once; a successfully built set
//! is immutable and every evaluation is total over finite inputs.

use crate::math;
use core::fmt;

/// Number of grid points used to check LMF/UMF nesting at construction.
const NESTING_GRID: usize = 1001;

/// Tolerance for the numeric LMF <= UMF nesting check.
const NESTING_TOL: f64 = 1e-12;

/// A membership grade interval `[lower, upper]` with both ends in `[0, 1]`.
///
/// Type-1 sets produce degenerate intervals with `lower == upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipInterval {
    pub lower: f64,
    pub upper: f64,
}

/// Errors raised when a membership function is built with bad parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SetError {
    /// A parameter was NaN or infinite.
    NonFinite { param: &'static str },
    /// A standard deviation was zero or negative.
    NonPositiveSigma,
    /// The uncertain-mean bounds are out of order (`m1 > m2`).
    MeanOrder,
    /// The uncertain-sigma bounds are out of order (`sigma1 > sigma2`).
    SigmaOrder,
    /// Trapezoid breakpoints are not non-decreasing.
    BreakpointOrder,
    /// A trapezoid support collapsed to a single point (`a == d`).
    EmptySupport,
    /// The LMF height is outside `(0, 1]`.
    HeightOutOfRange,
    /// The LMF support extends past the UMF support.
    LmfSupportOutsideUmf,
    /// The LMF rose above the UMF at `x` (numeric nesting check).
    LmfAboveUmf { x: f64 },
}

impl fmt::Display for SetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetError::NonFinite { param } => write!(f, "parameter `{param}` is not finite"),
            SetError::NonPositiveSigma => write!(f, "sigma must be positive"),
            SetError::MeanOrder => write!(f, "mean bounds must satisfy m1 <= m2"),
            SetError::SigmaOrder => write!(f, "sigma bounds must satisfy sigma1 <= sigma2"),
            SetError::BreakpointOrder => {
                write!(f, "trapezoid breakpoints must be non-decreasing")
            }
            SetError::EmptySupport => write!(f, "trapezoid support must have positive width"),
            SetError::HeightOutOfRange => write!(f, "LMF height must lie in (0, 1]"),
            SetError::LmfSupportOutsideUmf => {
                write!(f, "LMF support must lie inside the UMF support")
            }
            SetError::LmfAboveUmf { x } => {
                write!(f, "LMF exceeds UMF at x = {x}")
            }
        }
    }
}

impl core::error::Error for SetError {}

fn ensure_finite(v: f64, param: &'static str) -> Result<(), SetError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(SetError::NonFinite { param })
    }
}

/// Gaussian bell: `exp(-(x - m)^2 / (2 sigma^2))`.
fn gaussian(x: f64, m: f64, sigma: f64) -> f64 {
    let d = x - m;
    math::clamp01(math::exp(-(d * d) / (2.0 * sigma * sigma)))
}

/// Trapezoid with plateau height `height`; zero outside `(a, d)`.
///
/// The plateau clause is checked first so that degenerate edges (`a == b` or
/// `c == d`) behave as steps: membership at the plateau boundary is `height`
/// and the open ramp range is simply empty.
fn trapezoid(x: f64, a: f64, b: f64, c: f64, d: f64, height: f64) -> f64 {
    if x >= b && x <= c {
        height
    } else if x > a && x < b {
        math::clamp01(height * (x - a) / (b - a))
    } else if x > c && x < d {
        math::clamp01(height * (d - x) / (d - c))
    } else {
        0.0
    }
}

/// Type-1 Gaussian set with mean `m` and width `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianT1 {
    m: f64,
    sigma: f64,
}

impl GaussianT1 {
    pub fn new(m: f64, sigma: f64) -> Result<Self, SetError> {
        ensure_finite(m, "m")?;
        ensure_finite(sigma, "sigma")?;
        if sigma <= 0.0 {
            return Err(SetError::NonPositiveSigma);
        }
        Ok(Self { m, sigma })
    }

    pub fn mean(&self) -> f64 {
        self.m
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `exp(-(x - m)^2 / (2 sigma^2))`; strictly positive, 1 at the mean.
    pub fn membership(&self, x: f64) -> f64 {
        gaussian(x, self.m, self.sigma)
    }
}

/// Type-1 trapezoid with breakpoints `a <= b <= c <= d` and unit plateau.
///
/// Degenerate edges are allowed: `a == b` or `c == d` gives a step and
/// `b == c` gives a triangle. Only `a == d` (an empty support) is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapezoidT1 {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TrapezoidT1 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, SetError> {
        ensure_finite(a, "a")?;
        ensure_finite(b, "b")?;
        ensure_finite(c, "c")?;
        ensure_finite(d, "d")?;
        if !(a <= b && b <= c && c <= d) {
            return Err(SetError::BreakpointOrder);
        }
        if a == d {
            return Err(SetError::EmptySupport);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn breakpoints(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Linear ramp up on `(a, b)`, 1 on `[b, c]`, ramp down on `(c, d)`.
    pub fn membership(&self, x: f64) -> f64 {
        trapezoid(x, self.a, self.b, self.c, self.d, 1.0)
    }
}

/// Interval type-2 Gaussian with a fixed `sigma` and a mean anywhere in
/// `[m1, m2]`.
///
/// The UMF is 1 across the mean interval and follows the nearer boundary
/// Gaussian outside it; the LMF is the pointwise minimum of the two boundary
/// Gaussians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianUncertainMean {
    m1: f64,
    m2: f64,
    sigma: f64,
}

impl GaussianUncertainMean {
    pub fn new(m1: f64, m2: f64, sigma: f64) -> Result<Self, SetError> {
        ensure_finite(m1, "m1")?;
        ensure_finite(m2, "m2")?;
        ensure_finite(sigma, "sigma")?;
        if sigma <= 0.0 {
            return Err(SetError::NonPositiveSigma);
        }
        if m1 > m2 {
            return Err(SetError::MeanOrder);
        }
        Ok(Self { m1, m2, sigma })
    }

    pub fn mean_bounds(&self) -> (f64, f64) {
        (self.m1, self.m2)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn upper(&self, x: f64) -> f64 {
        if x < self.m1 {
            gaussian(x, self.m1, self.sigma)
        } else if x <= self.m2 {
            1.0
        } else {
            gaussian(x, self.m2, self.sigma)
        }
    }

    pub fn lower(&self, x: f64) -> f64 {
        let left = gaussian(x, self.m1, self.sigma);
        let right = gaussian(x, self.m2, self.sigma);
        if left < right {
            left
        } else {
            right
        }
    }

    pub fn interval(&self, x: f64) -> MembershipInterval {
        MembershipInterval {
            lower: self.lower(x),
            upper: self.upper(x),
        }
    }
}

/// Interval type-2 Gaussian with a fixed mean and a standard deviation
/// anywhere in `[sigma1, sigma2]`.
///
/// The UMF is the wide Gaussian (`sigma2`), the LMF the narrow one
/// (`sigma1`); nesting holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianUncertainStd {
    m: f64,
    sigma1: f64,
    sigma2: f64,
}

impl GaussianUncertainStd {
    pub fn new(m: f64, sigma1: f64, sigma2: f64) -> Result<Self, SetError> {
        ensure_finite(m, "m")?;
        ensure_finite(sigma1, "sigma1")?;
        ensure_finite(sigma2, "sigma2")?;
        if sigma1 <= 0.0 {
            return Err(SetError::NonPositiveSigma);
        }
        if sigma1 > sigma2 {
            return Err(SetError::SigmaOrder);
        }
        Ok(Self { m, sigma1, sigma2 })
    }

    pub fn mean(&self) -> f64 {
        self.m
    }

    pub fn sigma_bounds(&self) -> (f64, f64) {
        (self.sigma1, self.sigma2)
    }

    pub fn upper(&self, x: f64) -> f64 {
        gaussian(x, self.m, self.sigma2)
    }

    pub fn lower(&self, x: f64) -> f64 {
        gaussian(x, self.m, self.sigma1)
    }

    pub fn interval(&self, x: f64) -> MembershipInterval {
        MembershipInterval {
            lower: self.lower(x),
            upper: self.upper(x),
        }
    }
}

/// Interval type-2 trapezoid: a unit-height UMF trapezoid `(a, b, c, d)` and
/// an LMF trapezoid `(e, f, g, i)` scaled to height `h` in `(0, 1]`.
///
/// The LMF support must sit inside the UMF support, and `LMF <= UMF` is
/// checked numerically on a 1001-point grid over `[a, d]` at construction, so
/// shapes that cross anywhere in between are rejected up front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapezoidIt2 {
    umf: [f64; 4],
    lmf: [f64; 4],
    height: f64,
}

impl TrapezoidIt2 {
    pub fn new(umf: [f64; 4], lmf: [f64; 4], height: f64) -> Result<Self, SetError> {
        for (v, name) in umf.iter().zip(["a", "b", "c", "d"]) {
            ensure_finite(*v, name)?;
        }
        for (v, name) in lmf.iter().zip(["e", "f", "g", "i"]) {
            ensure_finite(*v, name)?;
        }
        ensure_finite(height, "h")?;
        let [a, b, c, d] = umf;
        let [e, f, g, i] = lmf;
        if !(a <= b && b <= c && c <= d) || !(e <= f && f <= g && g <= i) {
            return Err(SetError::BreakpointOrder);
        }
        if a == d {
            return Err(SetError::EmptySupport);
        }
        if !(0.0 < height && height <= 1.0) {
            return Err(SetError::HeightOutOfRange);
        }
        if e < a || i > d {
            return Err(SetError::LmfSupportOutsideUmf);
        }
        let set = Self { umf, lmf, height };
        let step = (d - a) / (NESTING_GRID - 1) as f64;
        for k in 0..NESTING_GRID {
            let x = a + step * k as f64;
            if set.lower(x) > set.upper(x) + NESTING_TOL {
                return Err(SetError::LmfAboveUmf { x });
            }
        }
        Ok(set)
    }

    pub fn umf_breakpoints(&self) -> [f64; 4] {
        self.umf
    }

    pub fn lmf_breakpoints(&self) -> [f64; 4] {
        self.lmf
    }

    pub fn lmf_height(&self) -> f64 {
        self.height
    }

    pub fn upper(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.umf;
        trapezoid(x, a, b, c, d, 1.0)
    }

    pub fn lower(&self, x: f64) -> f64 {
        let [e, f, g, i] = self.lmf;
        trapezoid(x, e, f, g, i, self.height)
    }

    pub fn interval(&self, x: f64) -> MembershipInterval {
        MembershipInterval {
            lower: self.lower(x),
            upper: self.upper(x),
        }
    }
}

/// Any membership function the engine understands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FuzzySet {
    GaussianT1(GaussianT1),
    TrapezoidT1(TrapezoidT1),
    GaussianUncertainMean(GaussianUncertainMean),
    GaussianUncertainStd(GaussianUncertainStd),
    TrapezoidIt2(TrapezoidIt2),
}

impl FuzzySet {
    pub fn gaussian_t1(m: f64, sigma: f64) -> Result<Self, SetError> {
        Ok(FuzzySet::GaussianT1(GaussianT1::new(m, sigma)?))
    }

    pub fn trapezoid_t1(a: f64, b: f64, c: f64, d: f64) -> Result<Self, SetError> {
        Ok(FuzzySet::TrapezoidT1(TrapezoidT1::new(a, b, c, d)?))
    }

    pub fn gaussian_uncertain_mean(m1: f64, m2: f64, sigma: f64) -> Result<Self, SetError> {
        Ok(FuzzySet::GaussianUncertainMean(GaussianUncertainMean::new(
            m1, m2, sigma,
        )?))
    }

    pub fn gaussian_uncertain_std(m: f64, sigma1: f64, sigma2: f64) -> Result<Self, SetError> {
        Ok(FuzzySet::GaussianUncertainStd(GaussianUncertainStd::new(
            m, sigma1, sigma2,
        )?))
    }

    pub fn trapezoid_it2(umf: [f64; 4], lmf: [f64; 4], height: f64) -> Result<Self, SetError> {
        Ok(FuzzySet::TrapezoidIt2(TrapezoidIt2::new(umf, lmf, height)?))
    }

    /// True for the two type-1 families.
    pub fn is_t1(&self) -> bool {
        matches!(self, FuzzySet::GaussianT1(_) | FuzzySet::TrapezoidT1(_))
    }

    /// Membership grade for type-1 sets; `None` for interval type-2 sets.
    pub fn t1_membership(&self, x: f64) -> Option<f64> {
        match self {
            FuzzySet::GaussianT1(s) => Some(s.membership(x)),
            FuzzySet::TrapezoidT1(s) => Some(s.membership(x)),
            _ => None,
        }
    }

    /// Membership grade interval; degenerate for type-1 sets.
    pub fn membership_interval(&self, x: f64) -> MembershipInterval {
        match self {
            FuzzySet::GaussianT1(s) => {
                let v = s.membership(x);
                MembershipInterval { lower: v, upper: v }
            }
            FuzzySet::TrapezoidT1(s) => {
                let v = s.membership(x);
                MembershipInterval { lower: v, upper: v }
            }
            FuzzySet::GaussianUncertainMean(s) => s.interval(x),
            FuzzySet::GaussianUncertainStd(s) => s.interval(x),
            FuzzySet::TrapezoidIt2(s) => s.interval(x),
        }
    }

    /// Number of scalar parameters the set stores.
    pub fn parameter_count(&self) -> usize {
        match self {
            FuzzySet::GaussianT1(_) => 2,
            FuzzySet::TrapezoidT1(_) => 4,
            FuzzySet::GaussianUncertainMean(_) => 3,
            FuzzySet::GaussianUncertainStd(_) => 3,
            FuzzySet::TrapezoidIt2(_) => 9,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 5e-4;

    #[test]
    fn gaussian_matches_published_grades() {
        let set = GaussianT1::new(-1.0, 0.6).unwrap();
        assert!((set.membership(-0.2) - 0.4111).abs() < TOL);
        let set = GaussianT1::new(1.0, 0.6).unwrap();
        assert!((set.membership(-0.2) - 0.1353).abs() < TOL);
        assert!((set.membership(-0.3) - 0.0956).abs() < TOL);
        let set = GaussianT1::new(-1.0, 0.6).unwrap();
        assert!((set.membership(-0.3) - 0.5063).abs() < TOL);
    }

    #[test]
    fn gaussian_peaks_at_mean() {
        let set = GaussianT1::new(2.5, 0.3).unwrap();
        assert_eq!(set.membership(2.5), 1.0);
        assert!(set.membership(100.0) >= 0.0);
    }

    #[test]
    fn gaussian_rejects_bad_sigma() {
        assert_eq!(GaussianT1::new(0.0, 0.0), Err(SetError::NonPositiveSigma));
        assert_eq!(GaussianT1::new(0.0, -1.0), Err(SetError::NonPositiveSigma));
        assert_eq!(
            GaussianT1::new(f64::NAN, 1.0),
            Err(SetError::NonFinite { param: "m" })
        );
    }

    #[test]
    fn trapezoid_ramps_and_plateau() {
        let set = TrapezoidT1::new(0.0, 1.0, 2.0, 4.0).unwrap();
        assert_eq!(set.membership(-0.5), 0.0);
        assert_eq!(set.membership(0.5), 0.5);
        assert_eq!(set.membership(1.5), 1.0);
        assert_eq!(set.membership(3.0), 0.5);
        assert_eq!(set.membership(4.0), 0.0);
    }

    #[test]
    fn degenerate_trapezoid_edges_are_steps() {
        let step = TrapezoidT1::new(0.0, 0.0, 1.0, 2.0).unwrap();
        assert_eq!(step.membership(-1e-9), 0.0);
        assert_eq!(step.membership(0.0), 1.0);

        let triangle = TrapezoidT1::new(0.0, 1.0, 1.0, 2.0).unwrap();
        assert_eq!(triangle.membership(1.0), 1.0);
        assert_eq!(triangle.membership(0.5), 0.5);

        assert_eq!(
            TrapezoidT1::new(1.0, 1.0, 1.0, 1.0),
            Err(SetError::EmptySupport)
        );
        assert_eq!(
            TrapezoidT1::new(2.0, 1.0, 3.0, 4.0),
            Err(SetError::BreakpointOrder)
        );
    }

    #[test]
    fn uncertain_std_matches_published_grades() {
        let set = GaussianUncertainStd::new(-1.0, 0.5, 0.7).unwrap();
        let g = set.interval(-0.2);
        assert!((g.lower - 0.2780).abs() < TOL);
        assert!((g.upper - 0.5205).abs() < TOL);
        let set = GaussianUncertainStd::new(1.0, 0.5, 0.7).unwrap();
        let g = set.interval(-0.3);
        assert!((g.lower - 0.0340).abs() < TOL);
        assert!((g.upper - 0.1783).abs() < TOL);
    }

    #[test]
    fn uncertain_mean_plateau_and_shoulders() {
        let set = GaussianUncertainMean::new(0.0, 1.0, 0.5).unwrap();
        assert_eq!(set.upper(0.3), 1.0);
        assert_eq!(set.upper(1.0), 1.0);
        let g = set.interval(0.5);
        assert!((g.lower - 0.6065).abs() < TOL);
        assert_eq!(g.upper, 1.0);
        // the envelopes are mirror-symmetric about the plateau center
        assert!((set.upper(1.5) - set.upper(-0.5)).abs() < 1e-12);
        assert!((set.lower(1.5) - set.lower(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn uncertain_families_reject_bad_orders() {
        assert_eq!(
            GaussianUncertainMean::new(1.0, 0.0, 0.5),
            Err(SetError::MeanOrder)
        );
        assert_eq!(
            GaussianUncertainStd::new(0.0, 0.7, 0.5),
            Err(SetError::SigmaOrder)
        );
        assert_eq!(
            GaussianUncertainStd::new(0.0, 0.0, 0.5),
            Err(SetError::NonPositiveSigma)
        );
    }

    #[test]
    fn trapezoid_it2_envelopes() {
        let set = TrapezoidIt2::new([0.0, 1.0, 2.0, 3.0], [0.5, 1.2, 1.8, 2.5], 0.8).unwrap();
        assert_eq!(set.upper(1.5), 1.0);
        assert_eq!(set.lower(1.5), 0.8);
        assert_eq!(set.lower(0.4), 0.0);
        assert!(set.upper(0.4) > 0.0);
        let g = set.interval(2.4);
        assert!(g.lower <= g.upper);
    }

    #[test]
    fn trapezoid_it2_rejects_crossing_lmf() {
        // LMF plateau is taller than the UMF ramp near the right edge.
        let err = TrapezoidIt2::new([0.0, 0.1, 0.2, 1.0], [0.0, 0.1, 0.9, 1.0], 0.9);
        assert!(matches!(err, Err(SetError::LmfAboveUmf { .. })));
        assert_eq!(
            TrapezoidIt2::new([0.0, 1.0, 2.0, 3.0], [-0.5, 1.0, 2.0, 3.0], 0.5),
            Err(SetError::LmfSupportOutsideUmf)
        );
        assert_eq!(
            TrapezoidIt2::new([0.0, 1.0, 2.0, 3.0], [0.0, 1.0, 2.0, 3.0], 0.0),
            Err(SetError::HeightOutOfRange)
        );
    }

    #[test]
    fn interval_is_degenerate_for_t1_sets() {
        let set = FuzzySet::gaussian_t1(0.0, 1.0).unwrap();
        let g = set.membership_interval(0.7);
        assert_eq!(g.lower, g.upper);
        assert_eq!(set.t1_membership(0.7), Some(g.lower));
        let it2 = FuzzySet::gaussian_uncertain_std(0.0, 0.5, 1.0).unwrap();
        assert_eq!(it2.t1_membership(0.7), None);
    }
}
