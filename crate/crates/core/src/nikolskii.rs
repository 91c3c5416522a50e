//! Classification of source triples, the bound-factor dispatcher, empirical
//! verification, scale sweeps and the randomized sharpness probe.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bandlimited::{
    self, make_random_bandlimited, make_sinc_power, BandlimitedFunction, BoxRegion, SincGrid,
    Spectrum, TorusGrid,
};
use crate::error::{Error, Result};
use crate::lznorm::lz_norm;
use crate::math;
use crate::spaces::{eq_tol, le_tol, log1, lt_tol, ExtReal, LogPair, SpaceParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    F0,
    F1,
    Frho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleClass {
    pub tag: ClassTag,
    /// 1 for `F1`, at least 2 for `Frho`, `None` for `F0`.
    pub rho: Option<u32>,
}

impl fmt::Display for TripleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.tag, self.rho) {
            (ClassTag::F0, _) => write!(f, "F0"),
            (ClassTag::F1, _) => write!(f, "F1"),
            (ClassTag::Frho, Some(r)) => write!(f, "Frho(rho={r})"),
            (ClassTag::Frho, None) => write!(f, "Frho"),
        }
    }
}

/// Membership in `F1`: `q = c = 1, B = 0`; or `1 < q < 2`; or `q = c = 2, B = 0`.
pub fn in_f1(q: f64, c: ExtReal, b: LogPair) -> bool {
    let c_is = |v: f64| matches!(c, ExtReal::Finite(x) if eq_tol(x, v));
    (eq_tol(q, 1.0) && c_is(1.0) && b.is_zero())
        || (lt_tol(1.0, q) && lt_tol(q, 2.0))
        || (eq_tol(q, 2.0) && c_is(2.0) && b.is_zero())
}

pub fn classify(q: f64, c: ExtReal, b: LogPair) -> Result<TripleClass> {
    if q.is_infinite() {
        return Err(Error::Unclassified("q = ∞ has no class".into()));
    }
    if !(q > 0.0) || q.is_nan() {
        return Err(Error::invalid("q", format!("{q} is not positive")));
    }
    if in_f1(q, c, b) {
        return Ok(TripleClass {
            tag: ClassTag::F1,
            rho: Some(1),
        });
    }
    if lt_tol(q, 1.0) || eq_tol(q, 1.0) {
        return Ok(TripleClass {
            tag: ClassTag::F0,
            rho: None,
        });
    }
    // q > 1 and not F1, so q ≥ 2. The first candidate is an exact hit
    // (q/ρ, c/ρ, ρB) = (2, 2, 0); otherwise the least ρ with 1 < q/ρ < 2.
    let half = q / 2.0;
    let half_int = math::floor(half + 0.5);
    if eq_tol(half, half_int) && half_int >= 2.0 && b.is_zero() {
        if let ExtReal::Finite(cv) = c {
            if eq_tol(cv, q) {
                return Ok(TripleClass {
                    tag: ClassTag::Frho,
                    rho: Some(half_int as u32),
                });
            }
        }
    }
    let rho = math::floor(half) + 1.0;
    if eq_tol(half, half_int) {
        // q even: floor(q/2) + 1 = q/2 + 1 is the first ρ with q/ρ < 2.
        let r = half_int + 1.0;
        if lt_tol(r, q) {
            return Ok(frho(r));
        }
    } else if lt_tol(rho, q) && lt_tol(1.0, q / rho) {
        return Ok(frho(rho));
    }
    Err(Error::Unclassified(format!(
        "no integer rho ≥ 2 puts (q/rho, c/rho, rho·B) in F1 for q = {q}, c = {c}, B = {b}"
    )))
}

fn frho(r: f64) -> TripleClass {
    TripleClass {
        tag: ClassTag::Frho,
        rho: Some(r as u32),
    }
}

pub fn classify_space(s: &SpaceParams) -> Result<TripleClass> {
    let q = match s.p {
        ExtReal::Finite(q) => q,
        ExtReal::Infinity => f64::INFINITY,
    };
    classify(q, s.b, s.a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Identity,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10i,
    T10ii,
    T11,
    T13,
    T15,
    T16,
    T17i,
    T17ii,
    T18,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::Identity,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10i,
        TheoremId::T10ii,
        TheoremId::T11,
        TheoremId::T13,
        TheoremId::T15,
        TheoremId::T16,
        TheoremId::T17i,
        TheoremId::T17ii,
        TheoremId::T18,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Identity => "Identity",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::T7 => "T7",
            TheoremId::T8 => "T8",
            TheoremId::T9 => "T9",
            TheoremId::T10i => "T10i",
            TheoremId::T10ii => "T10ii",
            TheoremId::T11 => "T11",
            TheoremId::T13 => "T13",
            TheoremId::T15 => "T15",
            TheoremId::T16 => "T16",
            TheoremId::T17i => "T17i",
            TheoremId::T17ii => "T17ii",
            TheoremId::T18 => "T18",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        Self::ALL.iter().copied().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Decomposed factor `G = m^power · l^log(m) · ll^loglog(m)` at base measure `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub theorem: TheoremId,
    pub class: Option<TripleClass>,
    pub base_measure: f64,
    pub power_exponent: f64,
    pub log_exponents: LogPair,
    pub loglog_exponents: LogPair,
    pub value: f64,
    pub requires_bounded: bool,
}

pub fn factor_value(base: f64, power: f64, log: LogPair, loglog: LogPair) -> Result<f64> {
    Ok(math::powf(base, power) * log.l_pow(base)? * loglog.ll_pow(base)?)
}

/// A named hypothesis and whether it holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
}

fn cond(name: &'static str, holds: bool) -> Condition {
    Condition { name, holds }
}

struct Shape {
    power: f64,
    log: LogPair,
    loglog: LogPair,
}

fn recip(q: ExtReal) -> f64 {
    q.recip()
}

/// Hypotheses of `theorem` evaluated on `(q, c, B) → (p, b, A)`, including the
/// class requirement.
pub fn theorem_conditions(
    theorem: TheoremId,
    source: &SpaceParams,
    target: &SpaceParams,
) -> Vec<Condition> {
    let (rq, rc, bb) = (recip(source.p), recip(source.b), source.a);
    let (rp, rb, aa) = (recip(target.p), recip(target.b), target.a);
    let class = classify_space(source).ok();
    let tag = class.map(|c| c.tag);
    let is = |t: ClassTag| cond(class_name(t), tag == Some(t));
    let q_lt_p = cond("q < p", lt_tol(rp, rq));
    let q_eq_p = cond("q = p", eq_tol(rp, rq));
    let p_inf = cond("p = ∞", target.p.is_infinite());
    let t4_shape = cond(
        "q < p < ∞ or (p = b = ∞, A = 0)",
        target.p.is_finite() || (target.b.is_infinite() && aa.is_zero()),
    );
    let mixed = cond(
        "α₀ < −1/b < α_∞",
        lt_tol(aa.alpha0, -rb) && lt_tol(-rb, aa.alpha_inf),
    );
    let both_a0 = cond("α₀ < −1/b", lt_tol(aa.alpha0, -rb));
    let both_ai = cond("α_∞ < −1/b", lt_tol(aa.alpha_inf, -rb));
    let b_le_c = cond("b ≤ c", le_tol(rc, rb));
    let t10_inf = cond(
        "α_∞ + 1/b < β_∞ + 1/c",
        lt_tol(aa.alpha_inf + rb, bb.alpha_inf + rc),
    );
    let t10_i = cond(
        "α₀ + 1/b > β₀ + 1/c",
        lt_tol(bb.alpha0 + rc, aa.alpha0 + rb),
    );
    let t10_ii = cond(
        "α₀ + 1/b = β₀ + 1/c",
        eq_tol(bb.alpha0 + rc, aa.alpha0 + rb),
    );
    let c_le_b = cond("c ≤ b", le_tol(rb, rc));
    let t11_inf = cond("α_∞ < β_∞", lt_tol(aa.alpha_inf, bb.alpha_inf));
    let t11_0 = cond("α₀ ≥ β₀", le_tol(bb.alpha0, aa.alpha0));
    let f10 = cond(
        "(q, c, B) ∈ F1 ∪ F0",
        matches!(tag, Some(ClassTag::F1) | Some(ClassTag::F0)),
    );
    use TheoremId::*;
    match theorem {
        Identity => alloc::vec![cond("source = target", source.approx_eq(target))],
        T4 => alloc::vec![is(ClassTag::F1), q_lt_p, t4_shape],
        T7 => alloc::vec![is(ClassTag::F0), q_lt_p, t4_shape],
        T13 => alloc::vec![is(ClassTag::Frho), q_lt_p, t4_shape],
        T5 => alloc::vec![is(ClassTag::F1), q_lt_p, p_inf, mixed],
        T8 => alloc::vec![is(ClassTag::F0), q_lt_p, p_inf, mixed],
        T15 => alloc::vec![is(ClassTag::Frho), q_lt_p, p_inf, mixed],
        T6 => alloc::vec![is(ClassTag::F1), q_lt_p, p_inf, both_a0, both_ai],
        T9 => alloc::vec![is(ClassTag::F0), q_lt_p, p_inf, both_a0, both_ai],
        T16 => alloc::vec![is(ClassTag::Frho), q_lt_p, p_inf, both_a0, both_ai],
        T10i => alloc::vec![f10, q_eq_p, b_le_c, t10_inf, t10_i],
        T10ii => alloc::vec![f10, q_eq_p, b_le_c, t10_inf, t10_ii],
        T17i => alloc::vec![is(ClassTag::Frho), q_eq_p, b_le_c, t10_inf, t10_i],
        T17ii => alloc::vec![is(ClassTag::Frho), q_eq_p, b_le_c, t10_inf, t10_ii],
        T11 => alloc::vec![f10, q_eq_p, c_le_b, t11_inf, t11_0],
        T18 => alloc::vec![is(ClassTag::Frho), q_eq_p, c_le_b, t11_inf, t11_0],
    }
}

fn class_name(t: ClassTag) -> &'static str {
    match t {
        ClassTag::F0 => "(q, c, B) ∈ F0",
        ClassTag::F1 => "(q, c, B) ∈ F1",
        ClassTag::Frho => "(q, c, B) ∈ Frho",
    }
}

fn shape(theorem: TheoremId, source: &SpaceParams, target: &SpaceParams) -> Shape {
    let (rq, rc, bt) = (recip(source.p), recip(source.b), source.a.tilde());
    let (rp, rb, a) = (recip(target.p), recip(target.b), target.a);
    let at = a.tilde();
    use TheoremId::*;
    match theorem {
        Identity => Shape {
            power: 0.0,
            log: LogPair::ZERO,
            loglog: LogPair::ZERO,
        },
        T4 | T7 | T13 => Shape {
            power: rq - rp,
            log: at - bt,
            loglog: LogPair::ZERO,
        },
        T5 | T8 | T15 => Shape {
            power: rq,
            log: at.add_scalar(rb) - bt,
            loglog: LogPair::ZERO,
        },
        T6 | T9 | T16 => Shape {
            power: rq,
            log: LogPair {
                alpha0: 0.0,
                alpha_inf: a.alpha0 + rb,
            } - bt,
            loglog: LogPair::ZERO,
        },
        T10i | T17i => Shape {
            power: 0.0,
            log: at.add_scalar(rb - rc) - bt,
            loglog: LogPair::ZERO,
        },
        T10ii | T17ii => Shape {
            power: 0.0,
            log: at.add_scalar(rb - rc) - bt,
            loglog: LogPair {
                alpha0: 0.0,
                alpha_inf: rb - rc,
            },
        },
        T11 | T18 => Shape {
            power: 0.0,
            log: at - bt,
            loglog: LogPair::ZERO,
        },
    }
}

fn candidates(class: ClassTag, q_lt_p: bool) -> &'static [TheoremId] {
    use TheoremId::*;
    match (class, q_lt_p) {
        (ClassTag::F1, true) => &[T4, T5, T6],
        (ClassTag::F0, true) => &[T7, T8, T9],
        (ClassTag::Frho, true) => &[T13, T15, T16],
        (ClassTag::F1 | ClassTag::F0, false) => &[T10i, T10ii, T11],
        (ClassTag::Frho, false) => &[T17i, T17ii, T18],
    }
}

/// Dispatches the bound factor; `measure_of(ρ)` returns the base measure
/// (the spectrum measure for `ρ = 1`, that of `ρ·conv Ω` otherwise).
pub fn nikolskii_bound_with<F>(
    source: &SpaceParams,
    target: &SpaceParams,
    measure_of: F,
) -> Result<BoundResult>
where
    F: Fn(u32) -> Result<f64>,
{
    target.ensure_nontrivial()?;
    if source.approx_eq(target) {
        let base = measure_of(1)?;
        return Ok(BoundResult {
            theorem: TheoremId::Identity,
            class: classify_space(source).ok(),
            base_measure: base,
            power_exponent: 0.0,
            log_exponents: LogPair::ZERO,
            loglog_exponents: LogPair::ZERO,
            value: 1.0,
            requires_bounded: false,
        });
    }
    let (rq, rp) = (source.p.recip(), target.p.recip());
    if lt_tol(rq, rp) {
        return Err(Error::hypothesis("nikolskii_bound", "q ≤ p"));
    }
    let class = classify_space(source)?;
    let list = candidates(class.tag, lt_tol(rp, rq));
    let mut best: Option<(BoundResult, usize)> = None;
    let mut nearest: Option<(usize, TheoremId, &'static str)> = None;
    for (rank, &id) in list.iter().enumerate() {
        let conds = theorem_conditions(id, source, target);
        let failed: Vec<&Condition> = conds.iter().filter(|c| !c.holds).collect();
        if let Some(first) = failed.first() {
            if nearest.is_none_or(|(n, _, _)| failed.len() < n) {
                nearest = Some((failed.len(), id, first.name));
            }
            continue;
        }
        let sh = shape(id, source, target);
        let base = measure_of(class.rho.unwrap_or(1))?;
        if !(base > 0.0) || !base.is_finite() {
            return Err(Error::invalid(
                "spectrum measure",
                format!("{base} is not positive and finite"),
            ));
        }
        let value = factor_value(base, sh.power, sh.log, sh.loglog)?;
        let r = BoundResult {
            theorem: id,
            class: Some(class),
            base_measure: base,
            power_exponent: sh.power,
            log_exponents: sh.log,
            loglog_exponents: sh.loglog,
            value,
            requires_bounded: class.tag == ClassTag::F0,
        };
        let better = match &best {
            None => true,
            Some((b, _)) => r.value < b.value * (1.0 - 1e-12),
        };
        if better {
            best = Some((r, rank));
        }
    }
    match (best, nearest) {
        (Some((r, _)), _) => Ok(r),
        (None, Some((_, id, name))) => Err(Error::Hypothesis {
            context: id.as_str(),
            condition: String::from(name),
        }),
        (None, None) => Err(Error::hypothesis("nikolskii_bound", "applicable theorem")),
    }
}

pub fn nikolskii_bound(
    source: &SpaceParams,
    target: &SpaceParams,
    s: &Spectrum,
) -> Result<BoundResult> {
    nikolskii_bound_with(source, target, |rho| {
        if rho <= 1 {
            Ok(s.measure())
        } else {
            Ok(s.power_support(rho)?.measure())
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    pub lhs: f64,
    pub source_norm: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub bound: BoundResult,
}

/// `lhs = ‖f‖_target`, `rhs = G · ‖f‖_source`, `ratio = lhs / rhs`.
pub fn verify_inequality(
    f: &BandlimitedFunction,
    source: &SpaceParams,
    target: &SpaceParams,
) -> Result<Verification> {
    let bound = nikolskii_bound(source, target, f.spectrum())?;
    if f.is_zero() {
        return Ok(Verification {
            lhs: 0.0,
            source_norm: 0.0,
            rhs: 0.0,
            ratio: 0.0,
            bound,
        });
    }
    let fstar = f.rearranged();
    let lhs = lz_norm(&fstar, target, f.domain_measure())?.value;
    let source_norm = lz_norm(&fstar, source, f.domain_measure())?.value;
    let rhs = bound.value * source_norm;
    Ok(Verification {
        lhs,
        source_norm,
        rhs,
        ratio: lhs / rhs,
        bound,
    })
}

/// Torus period rule for the random family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PeriodRule {
    /// Same period for every `ω`.
    Fixed(f64),
    /// Period `K/ω`, so every member is a dilate of the same trigonometric
    /// polynomial when the seed is shared.
    Cycles(f64),
}

/// Parametrised families indexed by the bandwidth `ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilySpec {
    /// `sinc(ωx)^m`, spectrum `[−mω/2, mω/2]`.
    SincPower { m: u32, grid: SincGrid },
    /// Random coefficients on `[−ω, ω]^dim`, minus the open cube of
    /// half-width `inner·ω` when `inner > 0`.
    Random {
        dim: usize,
        seed: u64,
        inner: f64,
        period: PeriodRule,
        /// Points per axis; `None` picks the least power of two with `N/P ≥ 4ω`.
        points: Option<usize>,
    },
}

/// `[−ω, ω]^dim` with the open cube `(−aω, aω)^dim` removed, as boxes.
pub fn square_annulus(dim: usize, omega: f64, inner: f64) -> Result<Spectrum> {
    if !(0.0..1.0).contains(&inner) {
        return Err(Error::invalid("inner", "must lie in [0, 1)"));
    }
    if inner == 0.0 {
        return Spectrum::cube(dim, omega);
    }
    let a = inner * omega;
    let bx = |lo: Vec<f64>, hi: Vec<f64>| BoxRegion::new(lo, hi);
    let boxes = match dim {
        1 => alloc::vec![
            bx(alloc::vec![-omega], alloc::vec![-a])?,
            bx(alloc::vec![a], alloc::vec![omega])?
        ],
        2 => alloc::vec![
            bx(alloc::vec![-omega, a], alloc::vec![omega, omega])?,
            bx(alloc::vec![-omega, -omega], alloc::vec![omega, -a])?,
            bx(alloc::vec![a, -a], alloc::vec![omega, a])?,
            bx(alloc::vec![-omega, -a], alloc::vec![-a, a])?,
        ],
        _ => return Err(Error::invalid("dim", "must be 1 or 2")),
    };
    Spectrum::new(boxes)
}

impl FamilySpec {
    /// Same family with another seed (sinc powers ignore it).
    pub fn with_seed(&self, seed: u64) -> FamilySpec {
        match *self {
            FamilySpec::Random {
                dim,
                inner,
                period,
                points,
                ..
            } => FamilySpec::Random {
                dim,
                seed,
                inner,
                period,
                points,
            },
            other => other,
        }
    }

    pub fn build(&self, omega: f64) -> Result<BandlimitedFunction> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::invalid("omega", "must be positive and finite"));
        }
        match *self {
            FamilySpec::SincPower { m, grid } => make_sinc_power(omega, m, grid),
            FamilySpec::Random {
                dim,
                seed,
                inner,
                period,
                points,
            } => {
                let p = match period {
                    PeriodRule::Fixed(p) => p,
                    PeriodRule::Cycles(k) => k / omega,
                };
                let n = match points {
                    Some(n) => n,
                    None => (math::ceil(4.0 * omega * p) as usize)
                        .max(16)
                        .next_power_of_two(),
                };
                make_random_bandlimited(&square_annulus(dim, omega, inner)?, seed, p, n)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub omega: f64,
    pub mu_omega: f64,
    pub lhs: f64,
    pub source_norm: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub bound: BoundResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `log(lhs/‖f‖_source)` against `log μ(Ω)`.
    pub slope: f64,
}

/// Fits the scale slope over already evaluated rows.
pub fn fit_slope(rows: &[SweepRow]) -> Result<f64> {
    let xs: Vec<f64> = rows.iter().map(|r| math::ln(r.mu_omega)).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| math::ln(r.lhs / r.source_norm))
        .collect();
    math::ls_slope(&xs, &ys).ok_or_else(|| Error::invalid("sweep", "degenerate abscissae"))
}

pub fn sweep_row(
    family: &FamilySpec,
    omega: f64,
    source: &SpaceParams,
    target: &SpaceParams,
) -> Result<SweepRow> {
    let f = family.build(omega)?;
    let v = verify_inequality(&f, source, target)?;
    Ok(SweepRow {
        omega,
        mu_omega: f.spectrum().measure(),
        lhs: v.lhs,
        source_norm: v.source_norm,
        rhs: v.rhs,
        ratio: v.ratio,
        bound: v.bound,
    })
}

/// Rejects degenerate sweeps (fewer than 3 points).
pub fn check_sweep_len(omegas: &[f64]) -> Result<()> {
    if omegas.len() < 3 {
        return Err(Error::invalid(
            "sweep",
            format!("{} points; at least 3 required", omegas.len()),
        ));
    }
    Ok(())
}

/// Fits the slope over rows evaluated elsewhere (possibly concurrently).
pub fn assemble_sweep(rows: Vec<SweepRow>) -> Result<SweepReport> {
    if rows.len() < 3 {
        return Err(Error::invalid(
            "sweep",
            format!("{} points; at least 3 required", rows.len()),
        ));
    }
    if rows.iter().any(|r| r.lhs == 0.0 || r.source_norm == 0.0) {
        return Err(Error::invalid("sweep", "zero function in the family"));
    }
    let slope = fit_slope(&rows)?;
    Ok(SweepReport { rows, slope })
}

pub fn sweep(
    family: &FamilySpec,
    omegas: &[f64],
    source: &SpaceParams,
    target: &SpaceParams,
) -> Result<SweepReport> {
    check_sweep_len(omegas)?;
    let rows = omegas
        .iter()
        .map(|&w| sweep_row(family, w, source, target))
        .collect::<Result<Vec<_>>>()?;
    assemble_sweep(rows)
}

/// `log(ratio)` slope against `log l(μ(Ω))`.
pub fn fit_log_slope(rows: &[SweepRow]) -> Option<f64> {
    let xs: Vec<f64> = rows.iter().map(|r| math::ln(log1(r.mu_omega))).collect();
    let ys: Vec<f64> = rows.iter().map(|r| math::ln(r.ratio)).collect();
    math::ls_slope(&xs, &ys)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub best_ratio: f64,
    pub initial_ratio: f64,
    pub best_coefficients: Vec<Complex64>,
    /// Best ratio after each iteration (length = budget).
    pub history: Vec<f64>,
    pub accepted: usize,
}

/// Greedy random search over coefficients on the torus grid frequencies in
/// `s`. Each iteration draws its perturbation from the seeded stream whether
/// or not it is accepted, so a larger budget extends the same trajectory.
pub fn probe_sharpness(
    source: &SpaceParams,
    target: &SpaceParams,
    s: &Spectrum,
    grid: TorusGrid,
    budget: usize,
    seed: u64,
) -> Result<ProbeResult> {
    let indices = grid.indices_in(s);
    if indices.is_empty() {
        return Err(Error::invalid(
            "probe",
            "no grid frequency inside the spectrum",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |n: usize, rng: &mut ChaCha8Rng| -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
            .collect()
    };
    let eval = |c: &[Complex64]| -> Result<f64> {
        let f = bandlimited::from_coefficients(s, grid, &indices, c, seed)?;
        Ok(verify_inequality(&f, source, target)?.ratio)
    };
    let mut best = draw(indices.len(), &mut rng);
    let initial_ratio = eval(&best)?;
    let mut best_ratio = initial_ratio;
    let mut history = Vec::with_capacity(budget);
    let mut accepted = 0;
    for it in 0..budget {
        // Step size cycles through three scales.
        let step = [0.5, 0.1, 0.02][it % 3];
        let sparse: bool = rng.random_bool(0.5);
        let noise = draw(indices.len(), &mut rng);
        let pick = rng.random_range(0..indices.len());
        let cand: Vec<Complex64> = best
            .iter()
            .zip(&noise)
            .enumerate()
            .map(|(i, (b, z))| {
                if sparse {
                    if i == pick {
                        b + z * (4.0 * step)
                    } else {
                        *b
                    }
                } else {
                    b + z * step
                }
            })
            .collect();
        let r = eval(&cand)?;
        if r > best_ratio {
            best_ratio = r;
            best = cand;
            accepted += 1;
        }
        history.push(best_ratio);
    }
    Ok(ProbeResult {
        best_ratio,
        initial_ratio,
        best_coefficients: best,
        history,
        accepted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: f64, b: f64, a: (f64, f64)) -> SpaceParams {
        SpaceParams::from_reals(p, b, a).unwrap()
    }

    fn class(q: f64, c: f64, b: (f64, f64)) -> Result<TripleClass> {
        classify(q, ExtReal::new(c).unwrap(), LogPair::new(b.0, b.1).unwrap())
    }

    #[test]
    fn classify_examples() {
        assert_eq!(class(1.0, 1.0, (0.0, 0.0)).unwrap().tag, ClassTag::F1);
        assert_eq!(class(1.5, 7.0, (3.0, -2.0)).unwrap().tag, ClassTag::F1);
        assert_eq!(class(0.5, 1.0, (0.0, 0.0)).unwrap().tag, ClassTag::F0);
        assert_eq!(class(1.0, 2.0, (0.0, 0.0)).unwrap().tag, ClassTag::F0);
        let two = class(2.0, 2.0, (0.0, 0.0)).unwrap();
        assert_eq!((two.tag, two.rho), (ClassTag::F1, Some(1)));
        let five = class(5.0, 5.0, (0.0, 0.0)).unwrap();
        assert_eq!((five.tag, five.rho), (ClassTag::Frho, Some(3)));
        assert_eq!(class(4.0, 4.0, (0.0, 0.0)).unwrap().rho, Some(2));
        assert_eq!(class(4.0, 3.0, (0.0, 0.0)).unwrap().rho, Some(3));
        assert!(matches!(
            class(2.0, 3.0, (0.0, 0.0)),
            Err(Error::Unclassified(_))
        ));
        assert!(matches!(
            class(f64::INFINITY, 1.0, (0.0, 0.0)),
            Err(Error::Unclassified(_))
        ));
    }

    #[test]
    fn bound_examples() {
        let s4 = Spectrum::interval(-2.0, 2.0).unwrap();
        let r = nikolskii_bound(&sp(1.0, 1.0, (0.0, 0.0)), &sp(2.0, 2.0, (0.0, 0.0)), &s4).unwrap();
        assert_eq!(r.theorem, TheoremId::T4);
        assert!((r.value - 2.0).abs() < 1e-14);

        let s1 = Spectrum::interval(0.0, 1.0).unwrap();
        let inf = f64::INFINITY;
        let r =
            nikolskii_bound(&sp(2.0, 2.0, (0.0, 0.0)), &sp(inf, 1.0, (-2.0, 1.0)), &s1).unwrap();
        assert_eq!(r.theorem, TheoremId::T5);
        assert!((r.value - 1.0).abs() < 1e-14);

        let se = Spectrum::interval(0.0, core::f64::consts::E).unwrap();
        let r =
            nikolskii_bound(&sp(2.0, 2.0, (0.0, 0.0)), &sp(2.0, 1.0, (1.0, -1.0)), &se).unwrap();
        assert_eq!(r.theorem, TheoremId::T10i);
        assert!(r.log_exponents.approx_eq(LogPair::new(-0.5, 1.5).unwrap()));
        assert!((r.value - math::powf(2.0, 1.5)).abs() < 1e-12);

        let s = Spectrum::interval(-1.0, 1.0).unwrap();
        let r = nikolskii_bound(&sp(4.0, 4.0, (0.0, 0.0)), &sp(8.0, 8.0, (0.0, 0.0)), &s).unwrap();
        assert_eq!(r.theorem, TheoremId::T13);
        assert_eq!(r.base_measure, 4.0);
        assert!((r.value - math::powf(4.0, 0.125)).abs() < 1e-14);

        let r = nikolskii_bound(&sp(1.0, 2.0, (0.0, 0.0)), &sp(3.0, 3.0, (0.0, 0.0)), &s).unwrap();
        assert_eq!(r.theorem, TheoremId::T7);
        assert!(r.requires_bounded);
    }

    #[test]
    fn bound_errors_name_conditions() {
        let s = Spectrum::interval(-1.0, 1.0).unwrap();
        let e =
            nikolskii_bound(&sp(3.0, 3.0, (0.0, 0.0)), &sp(2.0, 2.0, (0.0, 0.0)), &s).unwrap_err();
        assert_eq!(e, Error::hypothesis("nikolskii_bound", "q ≤ p"));
        let e =
            nikolskii_bound(&sp(1.5, 1.0, (0.0, 0.0)), &sp(1.5, 2.0, (0.0, 1.0)), &s).unwrap_err();
        assert!(matches!(e, Error::Hypothesis { .. }), "{e:?}");
        let inf = f64::INFINITY;
        let e =
            nikolskii_bound(&sp(1.5, 1.0, (0.0, 0.0)), &sp(inf, 1.0, (0.0, 0.0)), &s).unwrap_err();
        assert!(matches!(e, Error::TrivialSpace { .. }));
    }

    #[test]
    fn identity_fast_path() {
        let s = Spectrum::interval(-3.0, 3.0).unwrap();
        let a = sp(2.0, 1.0, (1.0, -1.0));
        let r = nikolskii_bound(&a, &a, &s).unwrap();
        assert_eq!((r.theorem, r.value), (TheoremId::Identity, 1.0));
    }

    #[test]
    fn loglog_branch() {
        // (2,2,0) → (2,1,(−1/2, −1)): α₀ + 1 = β₀ + 1/2, so case (ii).
        let s = Spectrum::interval(0.0, 10.0).unwrap();
        let r =
            nikolskii_bound(&sp(2.0, 2.0, (0.0, 0.0)), &sp(2.0, 1.0, (-0.5, -1.0)), &s).unwrap();
        assert_eq!(r.theorem, TheoremId::T10ii);
        assert!(r
            .loglog_exponents
            .approx_eq(LogPair::new(0.0, 0.5).unwrap()));
    }

    #[test]
    fn verify_zero_and_scaling() {
        let grid = TorusGrid {
            dim: 1,
            period: 16.0,
            points: 128,
        };
        let s = Spectrum::interval(-1.0, 1.0).unwrap();
        let idx = grid.indices_in(&s);
        let zero = bandlimited::from_coefficients(
            &s,
            grid,
            &idx,
            &alloc::vec![Complex64::new(0.0, 0.0); idx.len()],
            0,
        )
        .unwrap();
        let src = sp(1.0, 1.0, (0.0, 0.0));
        let tgt = sp(f64::INFINITY, f64::INFINITY, (0.0, 0.0));
        let v = verify_inequality(&zero, &src, &tgt).unwrap();
        assert_eq!((v.lhs, v.ratio), (0.0, 0.0));
        let f = make_random_bandlimited(&s, 3, 16.0, 128).unwrap();
        let a = verify_inequality(&f, &src, &tgt).unwrap().ratio;
        let b = verify_inequality(&f.scaled(7.5).unwrap(), &src, &tgt)
            .unwrap()
            .ratio;
        assert!((a - b).abs() / a < 1e-12);
        let same = verify_inequality(&f, &src, &src).unwrap();
        assert_eq!(same.ratio, 1.0);
    }

    #[test]
    fn probe_is_monotone_and_reproducible() {
        let grid = TorusGrid {
            dim: 1,
            period: 8.0,
            points: 64,
        };
        let s = Spectrum::interval(-1.0, 1.0).unwrap();
        let src = sp(1.0, 1.0, (0.0, 0.0));
        let tgt = sp(f64::INFINITY, f64::INFINITY, (0.0, 0.0));
        let zero = probe_sharpness(&src, &tgt, &s, grid, 0, 5).unwrap();
        assert_eq!(zero.best_ratio, zero.initial_ratio);
        let a = probe_sharpness(&src, &tgt, &s, grid, 20, 5).unwrap();
        let b = probe_sharpness(&src, &tgt, &s, grid, 40, 5).unwrap();
        assert!(b.best_ratio >= a.best_ratio);
        assert_eq!(&b.history[..20], &a.history[..]);
        assert!(a.history.windows(2).all(|w| w[1] >= w[0]));
        // ‖f‖_∞ ≤ Σ|c_k| ≤ #modes · ‖f‖₁ / P on the torus.
        let modes = grid.indices_in(&s).len() as f64;
        assert!(b.best_ratio <= modes / grid.period / s.measure() * (1.0 + 1e-9));
    }
}
