//! Exponent-pair algebra, broken-logarithmic weights and Lorentz–Zygmund
//! space parameters.
//!
//! Extended exponents `p`, `b` live in `(0, ∞]` and every reciprocal follows
//! the convention `1/∞ = 0`. Conditions that compare real exponents use the
//! absolute tolerance [`TOL`] so that dispatch is deterministic.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::format;

use crate::error::{Error, Result};
use crate::math;

/// Absolute tolerance for equality tests between real exponents.
pub const TOL: f64 = 1e-12;

/// Compares two reals, treating values closer than [`TOL`] as equal.
pub fn cmp_tol(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= TOL {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

pub fn eq_tol(a: f64, b: f64) -> bool {
    cmp_tol(a, b) == Ordering::Equal
}

pub fn lt_tol(a: f64, b: f64) -> bool {
    cmp_tol(a, b) == Ordering::Less
}

pub fn le_tol(a: f64, b: f64) -> bool {
    cmp_tol(a, b) != Ordering::Greater
}

/// A value in `(0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal::Infinity;

    /// Accepts any positive real; `f64::INFINITY` maps to [`ExtReal::Infinity`].
    pub fn new(x: f64) -> Result<Self> {
        if x.is_nan() || x <= 0.0 {
            return Err(Error::invalid("exponent", format!("{x} is not in (0, ∞]")));
        }
        if x.is_infinite() {
            Ok(ExtReal::Infinity)
        } else {
            Ok(ExtReal::Finite(x))
        }
    }

    /// Inverse of [`ExtReal::recip`]: `0` maps to `∞`.
    pub fn from_recip(r: f64) -> Result<Self> {
        if r.is_nan() || r < 0.0 || r.is_infinite() {
            return Err(Error::invalid(
                "reciprocal exponent",
                format!("{r} is not in [0, ∞)"),
            ));
        }
        if r == 0.0 {
            Ok(ExtReal::Infinity)
        } else {
            Ok(ExtReal::Finite(1.0 / r))
        }
    }

    pub fn recip(self) -> f64 {
        match self {
            ExtReal::Finite(x) => 1.0 / x,
            ExtReal::Infinity => 0.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    pub fn value(self) -> f64 {
        match self {
            ExtReal::Finite(x) => x,
            ExtReal::Infinity => f64::INFINITY,
        }
    }

    /// `self / k`, with `∞ / k = ∞`.
    pub fn div_by(self, k: f64) -> ExtReal {
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(x / k),
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }

    /// Tolerant equality on reciprocals.
    pub fn approx_eq(self, other: ExtReal) -> bool {
        eq_tol(self.recip(), other.recip())
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::Infinity => f.write_str("inf"),
        }
    }
}

/// Ordered exponent pair `A = (α₀, α_∞)`; `α₀` governs `t ≤ 1`, `α_∞` governs `t > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LogPair {
    pub alpha0: f64,
    pub alpha_inf: f64,
}

/// `l(t) = 1 + |ln t|`.
pub fn log1(t: f64) -> f64 {
    1.0 + math::ln(t).abs()
}

/// `ll(t) = l(l(t))`.
pub fn loglog1(t: f64) -> f64 {
    log1(log1(t))
}

fn check_positive(t: f64) -> Result<()> {
    if !(t > 0.0) || t.is_infinite() {
        return Err(Error::invalid(
            "t",
            format!("{t} is not a positive finite real"),
        ));
    }
    Ok(())
}

impl LogPair {
    pub const ZERO: LogPair = LogPair {
        alpha0: 0.0,
        alpha_inf: 0.0,
    };

    pub fn new(alpha0: f64, alpha_inf: f64) -> Result<Self> {
        if !alpha0.is_finite() || !alpha_inf.is_finite() {
            return Err(Error::invalid(
                "log pair",
                format!("({alpha0}, {alpha_inf}) has a non-finite component"),
            ));
        }
        Ok(LogPair { alpha0, alpha_inf })
    }

    pub const fn splat(alpha: f64) -> Self {
        LogPair {
            alpha0: alpha,
            alpha_inf: alpha,
        }
    }

    /// Swapped pair `Ã = (α_∞, α₀)`.
    pub fn tilde(self) -> Self {
        LogPair {
            alpha0: self.alpha_inf,
            alpha_inf: self.alpha0,
        }
    }

    /// `A + σ = (α₀ + σ, α_∞ + σ)`.
    pub fn add_scalar(self, sigma: f64) -> Self {
        LogPair {
            alpha0: self.alpha0 + sigma,
            alpha_inf: self.alpha_inf + sigma,
        }
    }

    pub fn scale(self, k: f64) -> Self {
        LogPair {
            alpha0: self.alpha0 * k,
            alpha_inf: self.alpha_inf * k,
        }
    }

    pub fn is_zero(self) -> bool {
        eq_tol(self.alpha0, 0.0) && eq_tol(self.alpha_inf, 0.0)
    }

    pub fn approx_eq(self, other: LogPair) -> bool {
        eq_tol(self.alpha0, other.alpha0) && eq_tol(self.alpha_inf, other.alpha_inf)
    }

    /// The exponent in force at `t`.
    pub fn branch(self, t: f64) -> f64 {
        if t <= 1.0 {
            self.alpha0
        } else {
            self.alpha_inf
        }
    }

    /// Broken-logarithmic weight `l^A(t)`.
    pub fn l_pow(self, t: f64) -> Result<f64> {
        check_positive(t)?;
        Ok(self.l_pow_unchecked(t))
    }

    /// Iterated weight `ll^A(t)`, with the same branch convention as `l^A`.
    pub fn ll_pow(self, t: f64) -> Result<f64> {
        check_positive(t)?;
        Ok(math::powf(loglog1(t), self.branch(t)))
    }

    pub(crate) fn l_pow_unchecked(self, t: f64) -> f64 {
        math::powf(log1(t), self.branch(t))
    }
}

impl Add for LogPair {
    type Output = LogPair;
    fn add(self, rhs: LogPair) -> LogPair {
        LogPair {
            alpha0: self.alpha0 + rhs.alpha0,
            alpha_inf: self.alpha_inf + rhs.alpha_inf,
        }
    }
}

impl Sub for LogPair {
    type Output = LogPair;
    fn sub(self, rhs: LogPair) -> LogPair {
        LogPair {
            alpha0: self.alpha0 - rhs.alpha0,
            alpha_inf: self.alpha_inf - rhs.alpha_inf,
        }
    }
}

impl Neg for LogPair {
    type Output = LogPair;
    fn neg(self) -> LogPair {
        self.scale(-1.0)
    }
}

impl Mul<LogPair> for f64 {
    type Output = LogPair;
    fn mul(self, rhs: LogPair) -> LogPair {
        rhs.scale(self)
    }
}

impl fmt::Display for LogPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha0, self.alpha_inf)
    }
}

/// Parameters `(p, b, A)` of the Lorentz–Zygmund space `L_{p,b;A}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    pub p: ExtReal,
    pub b: ExtReal,
    pub a: LogPair,
}

impl SpaceParams {
    pub fn new(p: ExtReal, b: ExtReal, a: LogPair) -> Self {
        SpaceParams { p, b, a }
    }

    /// Convenience constructor from raw reals (`f64::INFINITY` allowed).
    pub fn from_reals(p: f64, b: f64, a: (f64, f64)) -> Result<Self> {
        Ok(SpaceParams {
            p: ExtReal::new(p)?,
            b: ExtReal::new(b)?,
            a: LogPair::new(a.0, a.1)?,
        })
    }

    /// The Lebesgue space `L_p = L_{p,p;0}`.
    pub fn lebesgue(p: ExtReal) -> Self {
        SpaceParams {
            p,
            b: p,
            a: LogPair::ZERO,
        }
    }

    /// The space is not `{0}` iff `p < ∞`; or `p = ∞` and `α₀ + 1/b < 0`;
    /// or `p = b = ∞` and `α₀ = 0`.
    pub fn is_nontrivial(&self) -> bool {
        match self.p {
            ExtReal::Finite(_) => true,
            ExtReal::Infinity => {
                lt_tol(self.a.alpha0 + self.b.recip(), 0.0)
                    || (self.b.is_infinite() && eq_tol(self.a.alpha0, 0.0))
            }
        }
    }

    pub fn ensure_nontrivial(&self) -> Result<()> {
        if self.is_nontrivial() {
            Ok(())
        } else {
            Err(Error::TrivialSpace {
                p: format!("{}", self.p),
                b: format!("{}", self.b),
                a0: self.a.alpha0,
                a_inf: self.a.alpha_inf,
            })
        }
    }

    /// Parameters of `L_{p/k, b/k; kA}`, the space holding `|f|^k`.
    pub fn power(&self, k: f64) -> Self {
        SpaceParams {
            p: self.p.div_by(k),
            b: self.b.div_by(k),
            a: self.a.scale(k),
        }
    }

    pub fn approx_eq(&self, other: &SpaceParams) -> bool {
        self.p.approx_eq(other.p) && self.b.approx_eq(other.b) && self.a.approx_eq(other.a)
    }
}

impl fmt::Display for SpaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{{{},{};{}}}", self.p, self.b, self.a)
    }
}

/// Hölder conjugate `p'` with `1/p' + 1/p = 1`, for `p ∈ [1, ∞]`.
pub fn conjugate(p: ExtReal) -> Result<ExtReal> {
    let r = p.recip();
    if r > 1.0 {
        return Err(Error::invalid(
            "p",
            format!("conjugate needs p ≥ 1, got {p}"),
        ));
    }
    ExtReal::from_recip(1.0 - r)
}

/// Parameters of the real interpolation functor `(·,·)_{θ,b;A}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpSpec {
    pub theta: f64,
    pub b: ExtReal,
    pub a: LogPair,
}

impl InterpSpec {
    /// The functor makes sense iff `0 < θ < 1`, or at an endpoint
    /// `θ ∈ {0, 1}` the matching log exponent satisfies `α + 1/b < 0`
    /// (or `b = ∞` with `α = 0`).
    pub fn is_admissible(&self) -> bool {
        let t = self.theta;
        if !(0.0..=1.0).contains(&t) {
            return false;
        }
        let endpoint = |alpha: f64| {
            lt_tol(alpha + self.b.recip(), 0.0) || (self.b.is_infinite() && eq_tol(alpha, 0.0))
        };
        if t > 0.0 && t < 1.0 {
            true
        } else if t == 0.0 {
            endpoint(self.a.alpha_inf)
        } else {
            endpoint(self.a.alpha0)
        }
    }
}

/// Parameter output of interpolating two Lorentz–Zygmund spaces.
///
/// For `0 < θ < 1` with `p0 ≠ p1` finite (or `p0 < p1 = b1 = ∞`, `A1 = 0`):
/// `1/p = (1−θ)/p0 + θ/p1`, `Γ = A + (1−θ)A0 + θA1`, second index from the
/// functor. For `θ = 1` with `s1 = L_∞` and `p0 < ∞` the result is
/// `L_{∞,b;A}`, valid when `α₀ + 1/b < 0`.
pub fn interp_params(spec: &InterpSpec, s0: &SpaceParams, s1: &SpaceParams) -> Result<SpaceParams> {
    let theta = spec.theta;
    if !spec.is_admissible() {
        return Err(Error::Inadmissible(format!(
            "functor (·,·)_{{{theta},{};{}}} does not make sense",
            spec.b, spec.a
        )));
    }
    if theta > 0.0 && theta < 1.0 {
        let both_finite = s0.p.is_finite() && s1.p.is_finite();
        let limiting =
            s0.p.is_finite() && s1.p.is_infinite() && s1.b.is_infinite() && s1.a.is_zero();
        if both_finite && s0.p.approx_eq(s1.p) {
            return Err(Error::Inadmissible("p0 = p1".into()));
        }
        if !both_finite && !limiting {
            return Err(Error::Inadmissible(
                "needs 0 < p0 ≠ p1 < ∞, or p0 < p1 = b1 = ∞ with A1 = 0".into(),
            ));
        }
        let recip = (1.0 - theta) * s0.p.recip() + theta * s1.p.recip();
        return Ok(SpaceParams {
            p: ExtReal::from_recip(recip)?,
            b: spec.b,
            a: spec.a + s0.a.scale(1.0 - theta) + s1.a.scale(theta),
        });
    }
    if theta == 1.0 {
        let s1_is_linf = s1.p.is_infinite() && s1.b.is_infinite() && s1.a.is_zero();
        if !s1_is_linf || s0.p.is_infinite() {
            return Err(Error::Inadmissible(
                "θ = 1 needs a couple (L_{p,c;B}, L_∞) with p < ∞".into(),
            ));
        }
        if !lt_tol(spec.a.alpha0 + spec.b.recip(), 0.0) {
            return Err(Error::Inadmissible("θ = 1 needs α₀ + 1/b < 0".into()));
        }
        return Ok(SpaceParams {
            p: ExtReal::Infinity,
            b: spec.b,
            a: spec.a,
        });
    }
    Err(Error::Inadmissible("no parameter formula for θ = 0".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: f64, b: f64, a: (f64, f64)) -> SpaceParams {
        SpaceParams::from_reals(p, b, a).unwrap()
    }

    const E: f64 = core::f64::consts::E;

    #[test]
    fn broken_log_examples() {
        let a = LogPair::new(2.0, 5.0).unwrap();
        assert_eq!(a.l_pow(1.0).unwrap(), 1.0);
        assert!((LogPair::new(0.0, 1.0).unwrap().l_pow(E).unwrap() - 2.0).abs() < 1e-15);
        assert!((a.l_pow(1.0 / E).unwrap() - 4.0).abs() < 1e-14);
        assert!(a.l_pow(0.0).is_err());
        assert!(a.l_pow(-1.0).is_err());
    }

    #[test]
    fn loglog_uses_same_branches() {
        let a = LogPair::new(1.0, 2.0).unwrap();
        let t = E * E;
        // l(e²) = 3, ll = 1 + ln 3
        let expected = (1.0 + libm::log(3.0)).powi(2);
        assert!((a.ll_pow(t).unwrap() - expected).abs() < 1e-14);
        assert_eq!(a.ll_pow(1.0).unwrap(), 1.0);
    }

    #[test]
    fn pair_ops_examples() {
        let a = LogPair::new(1.0, -2.0).unwrap();
        assert_eq!(a.tilde(), LogPair::new(-2.0, 1.0).unwrap());
        assert_eq!(a.add_scalar(1.0), LogPair::new(2.0, -1.0).unwrap());
        assert_eq!(a.scale(3.0), LogPair::new(3.0, -6.0).unwrap());
        assert!(LogPair::new(f64::NAN, 0.0).is_err());
        assert!(LogPair::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn nontrivial_examples() {
        assert!(sp(2.0, 3.0, (7.0, 7.0)).is_nontrivial());
        assert!(sp(f64::INFINITY, 2.0, (-1.0, 0.0)).is_nontrivial());
        assert!(!sp(f64::INFINITY, f64::INFINITY, (1.0, 0.0)).is_nontrivial());
        assert!(sp(f64::INFINITY, f64::INFINITY, (0.0, 3.0)).is_nontrivial());
        assert!(sp(f64::INFINITY, f64::INFINITY, (-0.5, 3.0)).is_nontrivial());
        assert!(!sp(f64::INFINITY, 2.0, (-0.5, 0.0)).is_nontrivial());
        assert!(sp(f64::INFINITY, 2.0, (-0.5, 0.0))
            .ensure_nontrivial()
            .is_err());
    }

    #[test]
    fn conjugate_examples() {
        let inf = ExtReal::Infinity;
        assert_eq!(conjugate(ExtReal::new(1.0).unwrap()).unwrap(), inf);
        assert_eq!(
            conjugate(ExtReal::new(2.0).unwrap()).unwrap(),
            ExtReal::Finite(2.0)
        );
        let c = conjugate(ExtReal::new(4.0 / 3.0).unwrap()).unwrap();
        assert!((c.value() - 4.0).abs() < 1e-12);
        assert_eq!(conjugate(inf).unwrap(), ExtReal::Finite(1.0));
        assert!(conjugate(ExtReal::new(0.5).unwrap()).is_err());
    }

    #[test]
    fn ext_real_rejects_nonpositive() {
        assert!(ExtReal::new(0.0).is_err());
        assert!(ExtReal::new(-2.0).is_err());
        assert!(ExtReal::new(f64::NAN).is_err());
        assert_eq!(ExtReal::new(f64::INFINITY).unwrap().recip(), 0.0);
    }

    #[test]
    fn interp_examples() {
        let spec = InterpSpec {
            theta: 0.5,
            b: ExtReal::Finite(2.0),
            a: LogPair::ZERO,
        };
        let r = interp_params(&spec, &sp(1.0, 1.0, (1.0, 0.0)), &sp(3.0, 3.0, (0.0, 1.0))).unwrap();
        assert!((r.p.value() - 1.5).abs() < 1e-15);
        assert_eq!(r.a, LogPair::new(0.5, 0.5).unwrap());

        let spec = InterpSpec {
            theta: 1.0 / 3.0,
            b: ExtReal::Finite(2.0),
            a: LogPair::ZERO,
        };
        let inf = f64::INFINITY;
        let r = interp_params(&spec, &sp(2.0, 2.0, (3.0, 0.0)), &sp(inf, inf, (0.0, 0.0))).unwrap();
        assert!((r.p.value() - 3.0).abs() < 1e-14);
        assert!((r.a.alpha0 - 2.0).abs() < 1e-15 && r.a.alpha_inf == 0.0);

        let r = interp_params(&spec, &sp(2.0, 2.0, (0.0, 0.0)), &sp(4.0, 2.0, (0.0, 0.0))).unwrap();
        assert!(r.a.is_zero());
    }

    #[test]
    fn interp_limiting_theta_one() {
        let inf = f64::INFINITY;
        let linf = sp(inf, inf, (0.0, 0.0));
        let ok = InterpSpec {
            theta: 1.0,
            b: ExtReal::Finite(2.0),
            a: LogPair::new(-1.0, 4.0).unwrap(),
        };
        let r = interp_params(&ok, &sp(2.0, 3.0, (1.0, 1.0)), &linf).unwrap();
        assert!(r.p.is_infinite() && r.is_nontrivial());

        let bad = InterpSpec {
            a: LogPair::new(-0.25, 4.0).unwrap(),
            ..ok
        };
        assert!(interp_params(&bad, &sp(2.0, 3.0, (1.0, 1.0)), &linf).is_err());
    }

    #[test]
    fn interp_rejects_inadmissible() {
        let spec = InterpSpec {
            theta: 0.5,
            b: ExtReal::Finite(2.0),
            a: LogPair::ZERO,
        };
        assert!(
            interp_params(&spec, &sp(2.0, 2.0, (0.0, 0.0)), &sp(2.0, 1.0, (1.0, 0.0))).is_err()
        );
        let inf = f64::INFINITY;
        assert!(
            interp_params(&spec, &sp(2.0, 2.0, (0.0, 0.0)), &sp(inf, 2.0, (-1.0, 0.0))).is_err()
        );
        let out_of_range = InterpSpec { theta: 1.5, ..spec };
        assert!(!out_of_range.is_admissible());
        let theta0 = InterpSpec { theta: 0.0, ..spec };
        assert!(!theta0.is_admissible());
    }
}
