//! Lorentz–Zygmund quasi-norms of step functions.
//!
//! For `b < ∞` the quasi-norm is
//! `(∫₀^μ (t^{1/p−1/b} l^A(t) f*(t))^b dt)^{1/b}`, which for a step function
//! is `(Σ vᵢ^b Wᵢ)^{1/b}` with `Wᵢ = ∫ t^{b/p−1} l^{bA}(t) dt` over the i-th
//! piece. `Wᵢ` is closed-form when the log exponent on the branch vanishes or
//! when `p = ∞`; otherwise it is integrated in `u = ln t` by adaptive
//! Gauss–Kronrod. For `b = ∞` the quasi-norm is
//! `sup t^{1/p} l^A(t) f*(t)`, maximised exactly piece by piece.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::quad::{self, QuadResult};
use crate::rearrange::{Piece, StepFunction};
use crate::spaces::{lt_tol, ExtReal, LogPair, SpaceParams};

const QUAD_REL_TOL: f64 = 1e-9;
const QUAD_MAX_PANELS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    /// Analytic value of a known function.
    ClosedForm,
    /// Every piece weight integrated in closed form.
    ExactStep,
    /// At least one piece weight integrated numerically.
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub method: NormMethod,
    pub estimated_rel_error: f64,
}

/// Weight `t^{λ−1} (1+|ln t|)^{γ}` with `γ` taken from the branch of `t`.
#[derive(Debug, Clone, Copy)]
struct Weight {
    lambda: f64,
    gamma: LogPair,
}

impl Weight {
    fn density_in_log(&self, u: f64) -> f64 {
        let g = if u <= 0.0 {
            self.gamma.alpha0
        } else {
            self.gamma.alpha_inf
        };
        let base = math::exp(self.lambda * u);
        if g == 0.0 {
            base
        } else {
            base * math::powf(1.0 + u.abs(), g)
        }
    }

    /// `∫_{x0}^{x1} t^{λ−1} l^γ(t) dt` with `0 ≤ x0 < x1 < ∞`.
    fn integral(&self, x0: f64, x1: f64) -> (QuadResult, bool) {
        if x0 < 1.0 && x1 > 1.0 {
            let (a, ca) = self.integral(x0, 1.0);
            let (b, cb) = self.integral(1.0, x1);
            return (
                QuadResult {
                    value: a.value + b.value,
                    abs_error: a.abs_error + b.abs_error,
                },
                ca && cb,
            );
        }
        let g = if x1 <= 1.0 {
            self.gamma.alpha0
        } else {
            self.gamma.alpha_inf
        };
        if let Some(v) = self.closed_form(g, x0, x1) {
            let abs_error = 4.0 * f64::EPSILON * v.abs();
            return (
                QuadResult {
                    value: v,
                    abs_error,
                },
                true,
            );
        }
        let u1 = math::ln(x1);
        let r = if x0 == 0.0 {
            quad::integrate_to_left_infinity(
                |u| self.density_in_log(u),
                u1,
                QUAD_REL_TOL,
                QUAD_MAX_PANELS,
            )
        } else {
            quad::integrate(
                |u| self.density_in_log(u),
                math::ln(x0),
                u1,
                QUAD_REL_TOL,
                QUAD_MAX_PANELS,
            )
        };
        (r, false)
    }

    fn closed_form(&self, g: f64, x0: f64, x1: f64) -> Option<f64> {
        let lambda = self.lambda;
        if g == 0.0 && lambda > 0.0 {
            // (x1^λ − x0^λ)/λ, written to avoid cancellation on narrow pieces.
            if x0 == 0.0 {
                return Some(math::powf(x1, lambda) / lambda);
            }
            let r = libm::log1p((x1 - x0) / x0);
            return Some(math::powf(x0, lambda) * libm::expm1(lambda * r) / lambda);
        }
        if lambda == 0.0 {
            // ∫ t^{-1} (1+|ln t|)^g dt, with s = 1+|ln t|.
            let s = |x: f64| 1.0 + math::ln(x).abs();
            let anti = |x: f64| -> f64 {
                if g == -1.0 {
                    math::ln(s(x))
                } else {
                    math::powf(s(x), g + 1.0) / (g + 1.0)
                }
            };
            if x1 <= 1.0 {
                let lo = if x0 == 0.0 {
                    if g + 1.0 < 0.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    anti(x0)
                };
                // s decreases in t on (0, 1]
                return Some(lo - anti(x1));
            }
            return Some(anti(x1) - anti(x0));
        }
        None
    }
}

/// `sup_{t ∈ [t0, t1]} t^{1/p} l^A(t)`, with the limit value at `t0 = 0`.
fn sup_weight(p: ExtReal, a: LogPair, t0: f64, t1: f64) -> f64 {
    let phi = |t: f64| math::powf(t, p.recip()) * a.l_pow_unchecked(t);
    let mut best = phi(t1);
    if t0 > 0.0 {
        best = best.max(phi(t0));
    } else {
        let at_zero = match p {
            ExtReal::Finite(_) => 0.0,
            ExtReal::Infinity => {
                if a.alpha0 < 0.0 {
                    0.0
                } else if a.alpha0 == 0.0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
        };
        best = best.max(at_zero);
    }
    if t0 < 1.0 && t1 > 1.0 {
        best = best.max(1.0);
    }
    // Interior maximum on the t ≤ 1 branch at ln t = 1 − α₀ p.
    if let ExtReal::Finite(pv) = p {
        if a.alpha0 > 0.0 {
            let u = 1.0 - a.alpha0 * pv;
            if u < 0.0 {
                let t = math::exp(u);
                if t > t0 && t < t1 {
                    best = best.max(phi(t));
                }
            }
        }
    }
    best
}

/// Lorentz–Zygmund quasi-norm `‖f‖_{p,b;A}` of a canonical `f*` on a domain
/// of measure `domain_measure` (possibly infinite).
pub fn lz_norm(
    fstar: &StepFunction,
    s: &SpaceParams,
    domain_measure: ExtReal,
) -> Result<NormResult> {
    s.ensure_nontrivial()?;
    if !fstar.is_canonical() {
        return Err(Error::NotCanonical);
    }
    let limit = domain_measure.value();
    let mut pieces: Vec<(f64, f64, f64)> = Vec::with_capacity(fstar.pieces().len());
    let mut start = 0.0;
    for &Piece { value, measure } in fstar.pieces() {
        if start >= limit {
            break;
        }
        let end = (start + measure).min(limit);
        if value > 0.0 {
            pieces.push((value, start, end));
        }
        start += measure;
    }
    if pieces.is_empty() {
        return Ok(NormResult {
            value: 0.0,
            method: NormMethod::ExactStep,
            estimated_rel_error: 0.0,
        });
    }

    let b = match s.b {
        ExtReal::Infinity => {
            let value = pieces
                .iter()
                .map(|&(v, t0, t1)| v * sup_weight(s.p, s.a, t0, t1))
                .fold(0.0, f64::max);
            return Ok(NormResult {
                value,
                method: NormMethod::ExactStep,
                estimated_rel_error: 4.0 * f64::EPSILON,
            });
        }
        ExtReal::Finite(b) => b,
    };

    let weight = Weight {
        lambda: b * s.p.recip(),
        gamma: s.a.scale(b),
    };
    // Normalise by the largest value to keep v^b in range.
    let vmax = pieces[0].0;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut all_closed = true;
    for &(v, t0, t1) in &pieces {
        let (w, closed) = weight.integral(t0, t1);
        all_closed &= closed;
        let c = math::powf(v / vmax, b);
        sum += c * w.value;
        err += c * w.abs_error;
    }
    if !sum.is_finite() {
        return Err(Error::invalid("f", format!("‖f‖ is infinite in {s}")));
    }
    let value = vmax * math::powf(sum, 1.0 / b);
    let rel = if sum > 0.0 { err / sum / b } else { 0.0 };
    Ok(NormResult {
        value,
        method: if all_closed {
            NormMethod::ExactStep
        } else {
            NormMethod::Quadrature
        },
        estimated_rel_error: rel.max(4.0 * f64::EPSILON),
    })
}

/// Both sides of `‖f‖_{p,b;A}^k = ‖f^k‖_{p/k,b/k;kA}`.
pub fn lz_norm_power_check(f: &StepFunction, s: &SpaceParams, k: u32) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::invalid("k", "must be a positive integer"));
    }
    let inf = ExtReal::Infinity;
    let lhs = math::powf(lz_norm(&f.rearrange(), s, inf)?.value, k as f64);
    let fk = f.powi(k as i32).rearrange();
    let rhs = lz_norm(&fk, &s.power(k as f64), inf)?.value;
    Ok((lhs, rhs))
}

/// The embedding factor `μ^{1/p−1/q} l^{A−B}(μ)` for
/// `L_{q,c;B}(M) ⊂ L_{p,b;A}(M)`, `μ = μ(M)`, `p < q`.
pub fn lemma2_factor(target: &SpaceParams, source: &SpaceParams, mu: f64) -> Result<f64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::invalid("μ(M)", format!("{mu} is not in (0, ∞)")));
    }
    if !lt_tol(source.p.recip(), target.p.recip()) {
        return Err(Error::hypothesis("embedding factor", "p < q"));
    }
    target.ensure_nontrivial()?;
    source.ensure_nontrivial()?;
    let power = target.p.recip() - source.p.recip();
    Ok(math::powf(mu, power) * (target.a - source.a).l_pow_unchecked(mu))
}

/// `‖s^{σ−1/b} l^B(s) χ_{(0,t)}(s)‖_b / (t^σ l^B(t))`.
pub fn weighted_power_equiv_ratio(sigma: f64, b: ExtReal, bpair: LogPair, t: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::invalid("σ", format!("{sigma} must be positive")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid("t", format!("{t} must be positive")));
    }
    let space = SpaceParams::new(ExtReal::Finite(1.0 / sigma), b, bpair);
    let chi = StepFunction::constant(1.0, t)?;
    let num = lz_norm(&chi, &space, ExtReal::Infinity)?.value;
    Ok(num / (math::powf(t, sigma) * bpair.l_pow_unchecked(t)))
}

/// Relative difference `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
