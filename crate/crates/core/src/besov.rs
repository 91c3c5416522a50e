//! Littlewood–Paley partition, Besov-type quasi-norms with logarithmic
//! smoothness, and the smoothness-shift arithmetic of the embeddings.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::bandlimited::{discrete_transform, BandlimitedFunction};
use crate::error::{Error, Result};
use crate::fft::{self, Direction};
use crate::lznorm::lz_norm;
use crate::math;
use crate::nikolskii::FamilySpec;
use crate::spaces::{eq_tol, le_tol, lt_tol, ExtReal, LogPair, SpaceParams};

/// Smooth bump `exp(−1/((t−1/2)(2−t)))` on `(1/2, 2)`, zero elsewhere.
pub fn bump(t: f64) -> f64 {
    if t <= 0.5 || t >= 2.0 {
        0.0
    } else {
        math::exp(-1.0 / ((t - 0.5) * (2.0 - t)))
    }
}

/// Radial profile `φ₀(r) = g(r) / Σ_j g(2^{−j} r)`.
pub fn phi0(r: f64) -> f64 {
    let g = bump(r);
    if g == 0.0 {
        return 0.0;
    }
    // 2^{−j} r ∈ (1/2, 2) only for j ∈ {⌊log₂ r⌋ − 1, …, ⌊log₂ r⌋ + 1}.
    let j0 = math::floor(math::log2(r)) as i32;
    let norm: f64 = (j0 - 1..=j0 + 1)
        .map(|j| bump(r * math::exp2(-j as f64)))
        .sum();
    g / norm
}

/// `φ_k(r) = φ₀(2^{−k} r)`.
pub fn phi_k(k: i32, r: f64) -> f64 {
    phi0(r * math::exp2(-k as f64))
}

/// `ψ(r) = 1 − Σ_{k≥1} φ_k(r)`.
pub fn psi(r: f64) -> f64 {
    if r <= 1.0 {
        return 1.0;
    }
    let top = math::ceil(math::log2(r)) as i32 + 1;
    1.0 - (1..=top).map(|k| phi_k(k, r)).sum::<f64>()
}

/// Sampled partition over a radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionFamily {
    pub kmin: i32,
    pub kmax: i32,
    pub radii: Vec<f64>,
    /// `phi[k − kmin][i] = φ_k(radii[i])`.
    pub phi: Vec<Vec<f64>>,
    pub psi: Vec<f64>,
}

/// Minimum number of grid radii per dyadic band.
pub const POINTS_PER_BAND: usize = 4;

pub fn build_partition(kmin: i32, kmax: i32, radii: &[f64]) -> Result<PartitionFamily> {
    if kmax < kmin {
        return Err(Error::invalid("partition", "kmax < kmin"));
    }
    let lo = math::exp2((kmin - 1) as f64);
    let hi = math::exp2((kmax + 1) as f64);
    let min = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let max = radii.iter().copied().fold(0.0, f64::max);
    if !(min <= lo && max >= hi) {
        return Err(Error::Resolution(format!(
            "radial grid [{min}, {max}] does not cover [{lo}, {hi}]"
        )));
    }
    for j in (kmin - 1)..=kmax {
        let (a, b) = (math::exp2(j as f64), math::exp2((j + 1) as f64));
        let count = radii.iter().filter(|&&r| a <= r && r < b).count();
        if count < POINTS_PER_BAND {
            return Err(Error::Resolution(format!(
                "{count} radii in [{a}, {b}); at least {POINTS_PER_BAND} required"
            )));
        }
    }
    let phi = (kmin..=kmax)
        .map(|k| radii.iter().map(|&r| phi_k(k, r)).collect())
        .collect();
    Ok(PartitionFamily {
        kmin,
        kmax,
        radii: radii.to_vec(),
        phi,
        psi: radii.iter().map(|&r| psi(r)).collect(),
    })
}

impl PartitionFamily {
    /// `max |Σ_{k=kmin}^{kmax} φ_k − 1|` over radii in `[2^kmin, 2^kmax]`.
    pub fn unity_deviation(&self) -> f64 {
        let (a, b) = (math::exp2(self.kmin as f64), math::exp2(self.kmax as f64));
        self.radii
            .iter()
            .enumerate()
            .filter(|(_, &r)| a <= r && r <= b)
            .map(|(i, _)| (self.phi.iter().map(|row| row[i]).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `max |ψ + Σ_{k=1}^{kmax} φ_k − 1|` over radii up to `2^kmax` (needs `kmin ≤ 1`).
    pub fn completion_deviation(&self) -> f64 {
        let b = math::exp2(self.kmax as f64);
        self.radii
            .iter()
            .enumerate()
            .filter(|(_, &r)| r <= b)
            .map(|(i, _)| {
                let s: f64 = (self.kmin.max(1)..=self.kmax)
                    .map(|k| self.phi[(k - self.kmin) as usize][i])
                    .sum();
                (self.psi[i] + s - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Smoothness parameters and base space of a Besov-type quasi-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovParams {
    pub sigma: f64,
    /// Logarithmic smoothness of the inhomogeneous norm.
    pub gamma: f64,
    /// Logarithmic smoothness pair of the homogeneous norm.
    pub gamma_pair: LogPair,
    pub u: ExtReal,
    pub base: SpaceParams,
}

impl fmt::Display for BesovParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B(sigma={}, gamma={}, Gamma={}, u={}) over {}",
            self.sigma, self.gamma, self.gamma_pair, self.u, self.base
        )
    }
}

/// Dyadic block weight: `2^{σk}(1+k)^γ` or `2^{σk} l^Γ(2^k)`.
pub fn block_weight(bp: &BesovParams, k: i32, homogeneous: bool) -> f64 {
    let s = math::exp2(bp.sigma * k as f64);
    if homogeneous {
        s * bp.gamma_pair.l_pow_unchecked(math::exp2(k as f64))
    } else {
        s * math::powf(1.0 + k as f64, bp.gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockNorm {
    /// Dyadic index; `None` for the low-frequency block `ψ`.
    pub k: Option<i32>,
    pub norm: f64,
}

/// Distance from the origin to the nearest point of the spectrum.
fn inner_radius(f: &BandlimitedFunction) -> f64 {
    f.spectrum()
        .boxes()
        .iter()
        .map(|b| {
            let s: f64 = b
                .lo()
                .iter()
                .zip(b.hi())
                .map(|(&a, &c)| {
                    let d = if a > 0.0 {
                        a
                    } else if c < 0.0 {
                        -c
                    } else {
                        0.0
                    };
                    d * d
                })
                .sum();
            math::sqrt(s)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Dyadic indices summed for `f`: `k ≥ 1` (inhomogeneous) or all `k` whose
/// band meets the spectrum (homogeneous), up to `2^{k−1} ≤ R` or `kmax`.
pub fn block_range(
    f: &BandlimitedFunction,
    homogeneous: bool,
    kmax: Option<i32>,
) -> Result<(i32, i32)> {
    let r = f.spectrum().radius();
    let top = kmax.unwrap_or(math::floor(math::log2(r)) as i32 + 1);
    let bottom = if homogeneous {
        let r0 = inner_radius(f);
        if !(r0 > 0.0) {
            return Err(Error::invalid(
                "homogeneous norm",
                "spectrum must stay away from ξ = 0",
            ));
        }
        math::ceil(math::log2(r0)) as i32 - 1
    } else {
        1
    };
    Ok((bottom, top))
}

/// Norms in `base` of `F⁻¹(ψ f̂)` (inhomogeneous only) and of every
/// `F⁻¹(φ_k f̂)` in [`block_range`].
pub fn block_norms(
    f: &BandlimitedFunction,
    base: &SpaceParams,
    homogeneous: bool,
    kmax: Option<i32>,
) -> Result<Vec<BlockNorm>> {
    base.ensure_nontrivial()?;
    let (k0, k1) = block_range(f, homogeneous, kmax)?;
    let samples = f.samples();
    let spectrum = discrete_transform(samples)?;
    let shape = samples.shape().to_vec();
    let total = spectrum.len();
    let radii: Vec<f64> = (0..total)
        .map(|flat| {
            let mut rem = flat;
            let mut s = 0.0;
            for i in (0..shape.len()).rev() {
                let n = shape[i];
                let xi = fft::signed_index(rem % n, n) as f64 / (n as f64 * samples.spacing()[i]);
                s += xi * xi;
                rem /= n;
            }
            math::sqrt(s)
        })
        .collect();
    let inv = 1.0 / (samples.cell_measure() * total as f64);
    let block = |weight: &dyn Fn(f64) -> f64| -> Result<f64> {
        let mut data: Vec<Complex64> = spectrum
            .iter()
            .zip(&radii)
            .map(|(v, &r)| v * (weight(r) * inv))
            .collect();
        if data.iter().all(|v| v.re == 0.0 && v.im == 0.0) {
            return Ok(0.0);
        }
        fft::fft_nd(&mut data, &shape, Direction::Inverse)?;
        let g = samples.with_values(data)?;
        Ok(lz_norm(&g.rearrange(), base, f.domain_measure())?.value)
    };
    let mut out = Vec::new();
    if !homogeneous {
        out.push(BlockNorm {
            k: None,
            norm: block(&psi)?,
        });
    }
    for k in k0..=k1 {
        out.push(BlockNorm {
            k: Some(k),
            norm: block(&|r| phi_k(k, r))?,
        });
    }
    Ok(out)
}

fn lu_sum(terms: impl Iterator<Item = f64>, u: ExtReal) -> f64 {
    match u {
        ExtReal::Infinity => terms.fold(0.0, f64::max),
        ExtReal::Finite(u) => {
            let s: f64 = terms.map(|t| math::powf(t, u)).sum();
            math::powf(s, 1.0 / u)
        }
    }
}

/// Combines block norms into the Besov quasi-norm.
pub fn combine_blocks(blocks: &[BlockNorm], bp: &BesovParams, homogeneous: bool) -> f64 {
    let low: f64 = blocks
        .iter()
        .filter(|b| b.k.is_none())
        .map(|b| b.norm)
        .sum();
    let dyadic = blocks
        .iter()
        .filter_map(|b| b.k.map(|k| block_weight(bp, k, homogeneous) * b.norm));
    let tail = lu_sum(dyadic, bp.u);
    if homogeneous {
        tail
    } else {
        low + tail
    }
}

pub fn besov_norm_with_kmax(
    f: &BandlimitedFunction,
    bp: &BesovParams,
    homogeneous: bool,
    kmax: Option<i32>,
) -> Result<f64> {
    bp.base.ensure_nontrivial()?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let blocks = block_norms(f, &bp.base, homogeneous, kmax)?;
    Ok(combine_blocks(&blocks, bp, homogeneous))
}

pub fn besov_norm(f: &BandlimitedFunction, bp: &BesovParams, homogeneous: bool) -> Result<f64> {
    besov_norm_with_kmax(f, bp, homogeneous, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corollary {
    C21,
    C22,
    C23,
    C24,
    C25,
    C26,
    C27,
    C28,
    C29,
}

impl Corollary {
    pub const ALL: [Corollary; 9] = [
        Corollary::C21,
        Corollary::C22,
        Corollary::C23,
        Corollary::C24,
        Corollary::C25,
        Corollary::C26,
        Corollary::C27,
        Corollary::C28,
        Corollary::C29,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Corollary::C21 => "C21",
            Corollary::C22 => "C22",
            Corollary::C23 => "C23",
            Corollary::C24 => "C24",
            Corollary::C25 => "C25",
            Corollary::C26 => "C26",
            Corollary::C27 => "C27",
            Corollary::C28 => "C28",
            Corollary::C29 => "C29",
        }
    }

    pub fn parse(s: &str) -> Option<Corollary> {
        Self::ALL.iter().copied().find(|c| c.as_str() == s)
    }

    /// Whether the corollary concerns the homogeneous spaces.
    pub fn is_homogeneous(self) -> bool {
        matches!(
            self,
            Corollary::C22 | Corollary::C24 | Corollary::C25 | Corollary::C27 | Corollary::C29
        )
    }
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn require(context: &'static str, name: &'static str, holds: bool) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::hypothesis(context, name))
    }
}

/// Source smoothness that the corollary requires for the embedding into the
/// target smoothness over `target_base`. The result carries `source_base`.
pub fn embedding_shift(
    corollary: Corollary,
    source_base: &SpaceParams,
    target_base: &SpaceParams,
    n: usize,
    target: &BesovParams,
) -> Result<BesovParams> {
    let ctx = corollary.as_str();
    target_base.ensure_nontrivial()?;
    let (rq, rc, bb) = (source_base.p.recip(), source_base.b.recip(), source_base.a);
    let (rp, rb, aa) = (target_base.p.recip(), target_base.b.recip(), target_base.a);
    let in_f = source_base.p.is_finite()
        && ((eq_tol(rq, 1.0) && eq_tol(rc, 1.0) && bb.is_zero()) || lt_tol(rq, 1.0));
    require(ctx, "(q, c, B) ∈ F", in_f)?;
    let nf = n as f64;
    let mut out = BesovParams {
        base: *source_base,
        ..*target
    };
    use Corollary::*;
    match corollary {
        C21 | C22 => {
            require(ctx, "q < p", lt_tol(rp, rq))?;
            require(
                ctx,
                "p < ∞ or (p = b = ∞, A = 0)",
                target_base.p.is_finite() || (target_base.b.is_infinite() && aa.is_zero()),
            )?;
            out.sigma += nf * (rq - rp);
            if corollary == C21 {
                out.gamma += aa.alpha0 - bb.alpha0;
            } else {
                out.gamma_pair = out.gamma_pair + (aa.tilde() - bb.tilde());
            }
        }
        C23 | C24 | C25 => {
            require(ctx, "p = ∞", target_base.p.is_infinite())?;
            require(ctx, "α₀ < −1/b", lt_tol(aa.alpha0, -rb))?;
            match corollary {
                C23 => {
                    require(ctx, "α_∞ + 1/b ≠ 0", !eq_tol(aa.alpha_inf + rb, 0.0))?;
                    out.gamma += aa.alpha0 + rb - bb.alpha0;
                }
                C24 => {
                    require(ctx, "−1/b < α_∞", lt_tol(-rb, aa.alpha_inf))?;
                    out.gamma_pair = out.gamma_pair + (aa.tilde().add_scalar(rb) - bb.tilde());
                }
                _ => {
                    require(ctx, "α_∞ < −1/b", lt_tol(aa.alpha_inf, -rb))?;
                    let head = LogPair {
                        alpha0: 0.0,
                        alpha_inf: aa.alpha0 + rb,
                    };
                    out.gamma_pair = out.gamma_pair + (head - bb.tilde());
                }
            }
            out.sigma += nf * rq;
        }
        C26 | C27 | C28 | C29 => {
            require(ctx, "q = p", eq_tol(rq, rp))?;
            if source_base.approx_eq(target_base) {
                return Ok(out);
            }
            if matches!(corollary, C26 | C27) {
                require(ctx, "b ≤ c", le_tol(rc, rb))?;
                require(
                    ctx,
                    "α_∞ + 1/b < β_∞ + 1/c",
                    lt_tol(aa.alpha_inf + rb, bb.alpha_inf + rc),
                )?;
                require(
                    ctx,
                    "α₀ + 1/b > β₀ + 1/c",
                    lt_tol(bb.alpha0 + rc, aa.alpha0 + rb),
                )?;
                if corollary == C26 {
                    out.gamma += aa.alpha0 + rb - bb.alpha0 - rc;
                } else {
                    out.gamma_pair = out.gamma_pair + (aa.tilde().add_scalar(rb - rc) - bb.tilde());
                }
            } else {
                require(ctx, "c ≤ b", le_tol(rb, rc))?;
                require(ctx, "α_∞ < β_∞", lt_tol(aa.alpha_inf, bb.alpha_inf))?;
                require(ctx, "α₀ ≥ β₀", le_tol(bb.alpha0, aa.alpha0))?;
                if corollary == C28 {
                    out.gamma += aa.alpha0 - bb.alpha0;
                } else {
                    out.gamma_pair = out.gamma_pair + (aa.tilde() - bb.tilde());
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingRow {
    pub omega: f64,
    pub index: usize,
    pub target_norm: f64,
    pub source_norm: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingReport {
    pub shifted: BesovParams,
    pub rows: Vec<EmbeddingRow>,
    pub max_ratio: f64,
    pub min_ratio: f64,
}

/// For each `ω` and each of `count` family members (seeds `seed + i` for
/// random families), `ratio = ‖f‖_target / ‖f‖_shifted source`.
#[allow(clippy::too_many_arguments)]
pub fn verify_embedding(
    corollary: Corollary,
    family: &FamilySpec,
    omegas: &[f64],
    count: usize,
    seed: u64,
    source_base: &SpaceParams,
    target_base: &SpaceParams,
    target: &BesovParams,
) -> Result<EmbeddingReport> {
    let dim = match family {
        FamilySpec::Random { dim, .. } => *dim,
        FamilySpec::SincPower { .. } => 1,
    };
    let target = BesovParams {
        base: *target_base,
        ..*target
    };
    let shifted = embedding_shift(corollary, source_base, target_base, dim, &target)?;
    let homogeneous = corollary.is_homogeneous();
    let mut rows = Vec::with_capacity(omegas.len() * count);
    for &omega in omegas {
        for i in 0..count {
            let f = family.with_seed(seed.wrapping_add(i as u64)).build(omega)?;
            let t = besov_norm(&f, &target, homogeneous)?;
            let s = besov_norm(&f, &shifted, homogeneous)?;
            let ratio = if t == 0.0 { 0.0 } else { t / s };
            rows.push(EmbeddingRow {
                omega,
                index: i,
                target_norm: t,
                source_norm: s,
                ratio,
            });
        }
    }
    let positive = rows.iter().map(|r| r.ratio).filter(|&r| r > 0.0);
    let max_ratio = positive.clone().fold(0.0, f64::max);
    let min_ratio = positive.fold(f64::INFINITY, f64::min);
    Ok(EmbeddingReport {
        shifted,
        rows,
        max_ratio,
        min_ratio,
    })
}
