//! Band-limited test functions: spectra as unions of boxes, sinc powers with
//! closed-form anchors, random trigonometric polynomials on a large torus, and
//! discrete Fourier checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fft::{self, Direction};
use crate::lznorm::{lz_norm, NormResult};
use crate::math;
use crate::quad;
use crate::rearrange::{SampledFunction, StepFunction};
use crate::spaces::{ExtReal, SpaceParams};

/// Closed axis-aligned box `∏ [lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRegion {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::invalid(
                "box",
                "corner dimensions differ or are empty",
            ));
        }
        for (a, b) in lo.iter().zip(&hi) {
            if !a.is_finite() || !b.is_finite() || !(b > a) {
                return Err(Error::invalid(
                    "box",
                    format!("[{a}, {b}] has no positive length"),
                ));
            }
        }
        Ok(BoxRegion { lo, hi })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo], vec![hi])
    }

    /// `[−r, r]^dim`.
    pub fn cube(dim: usize, r: f64) -> Result<Self> {
        Self::new(vec![-r; dim], vec![r; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn contains(&self, xi: &[f64]) -> bool {
        xi.len() == self.dim()
            && xi
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (a, b))| *a <= *x && *x <= *b)
    }
}

/// Finite union of closed boxes in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    dim: usize,
    boxes: Vec<BoxRegion>,
}

impl Spectrum {
    pub fn new(boxes: Vec<BoxRegion>) -> Result<Self> {
        let dim = boxes.first().ok_or(Error::EmptySpectrum)?.dim();
        if boxes.iter().any(|b| b.dim() != dim) {
            return Err(Error::invalid("spectrum", "boxes of mixed dimension"));
        }
        Ok(Spectrum { dim, boxes })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![BoxRegion::interval(lo, hi)?])
    }

    pub fn cube(dim: usize, r: f64) -> Result<Self> {
        Self::new(vec![BoxRegion::cube(dim, r)?])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[BoxRegion] {
        &self.boxes
    }

    pub fn contains(&self, xi: &[f64]) -> bool {
        self.boxes.iter().any(|b| b.contains(xi))
    }

    /// Lebesgue measure of the union, by coordinate compression.
    pub fn measure(&self) -> f64 {
        let cuts: Vec<Vec<f64>> = (0..self.dim)
            .map(|i| {
                let mut c: Vec<f64> = self.boxes.iter().flat_map(|b| [b.lo[i], b.hi[i]]).collect();
                c.sort_by(f64::total_cmp);
                c.dedup();
                c
            })
            .collect();
        let mut idx = vec![0usize; self.dim];
        let mut total = 0.0;
        let mut centre = vec![0.0; self.dim];
        'cells: loop {
            let mut vol = 1.0;
            for i in 0..self.dim {
                let (a, b) = (cuts[i][idx[i]], cuts[i][idx[i] + 1]);
                centre[i] = 0.5 * (a + b);
                vol *= b - a;
            }
            if self.contains(&centre) {
                total += vol;
            }
            for i in 0..self.dim {
                idx[i] += 1;
                if idx[i] + 1 < cuts[i].len() {
                    continue 'cells;
                }
                idx[i] = 0;
            }
            break;
        }
        total
    }

    /// Bounding box of the union (which is also that of its convex hull).
    pub fn bounding_box(&self) -> BoxRegion {
        let lo = (0..self.dim)
            .map(|i| {
                self.boxes
                    .iter()
                    .map(|b| b.lo[i])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let hi = (0..self.dim)
            .map(|i| {
                self.boxes
                    .iter()
                    .map(|b| b.hi[i])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        BoxRegion { lo, hi }
    }

    /// Largest `|ξ|_∞` over the spectrum.
    pub fn max_abs_coordinate(&self) -> f64 {
        self.boxes
            .iter()
            .flat_map(|b| b.lo.iter().chain(&b.hi))
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest Euclidean `|ξ|` over the spectrum.
    pub fn radius(&self) -> f64 {
        self.boxes
            .iter()
            .map(|b| {
                let s: f64 =
                    b.lo.iter()
                        .zip(&b.hi)
                        .map(|(a, c)| {
                            let m = a.abs().max(c.abs());
                            m * m
                        })
                        .sum();
                math::sqrt(s)
            })
            .fold(0.0, f64::max)
    }

    /// `ρ` times the bounding box of the convex hull, dilated about the origin.
    /// Contains the spectrum of `f^ρ` whenever `f̂` lives in `self`.
    pub fn power_support(&self, rho: u32) -> Result<Spectrum> {
        if rho < 1 {
            return Err(Error::invalid("rho", "must be at least 1"));
        }
        let bb = self.bounding_box();
        let r = rho as f64;
        Ok(Spectrum {
            dim: self.dim,
            boxes: vec![BoxRegion {
                lo: bb.lo.iter().map(|x| r * x).collect(),
                hi: bb.hi.iter().map(|x| r * x).collect(),
            }],
        })
    }
}

pub fn spectrum_measure(s: &Spectrum) -> f64 {
    s.measure()
}

/// Sampling controls for [`make_sinc_power`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincGrid {
    /// Samples per Nyquist interval `1/(mω)`; must be at least 1.
    pub oversample: f64,
    /// Relative tail budget for `∫|f|^q` outside the truncated domain.
    pub tail_tol: f64,
    /// Smallest exponent `q` whose integral the truncation must control.
    pub min_exponent: f64,
    /// Hard cap on the number of samples.
    pub max_points: usize,
}

impl Default for SincGrid {
    fn default() -> Self {
        SincGrid {
            oversample: 2.0,
            tail_tol: 1e-6,
            min_exponent: 1.0,
            max_points: 1 << 23,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyKind {
    SincPower { m: u32 },
    RandomSpectrum { seed: u64, period: f64 },
}

/// Sampled band-limited function together with its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedFunction {
    kind: FamilyKind,
    omega: f64,
    samples: SampledFunction,
    spectrum: Spectrum,
    closed_form_norms: Vec<(ExtReal, f64)>,
    domain_measure: ExtReal,
    tail_bound: f64,
}

impl BandlimitedFunction {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn samples(&self) -> &SampledFunction {
        &self.samples
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Exact `L_p` norms known in closed form, as `(p, ‖f‖_p)`.
    pub fn closed_form_norms(&self) -> &[(ExtReal, f64)] {
        &self.closed_form_norms
    }

    pub fn closed_form_norm(&self, p: ExtReal) -> Option<f64> {
        self.closed_form_norms
            .iter()
            .find(|(q, _)| q.approx_eq(p))
            .map(|(_, v)| *v)
    }

    /// Measure of the underlying domain: `∞` for the line, `P^n` on the torus.
    pub fn domain_measure(&self) -> ExtReal {
        self.domain_measure
    }

    /// Upper bound on the relative tail mass dropped by truncation.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn is_zero(&self) -> bool {
        self.samples.is_zero()
    }

    pub fn rearranged(&self) -> StepFunction {
        self.samples.rearrange()
    }

    pub fn norm(&self, s: &SpaceParams) -> Result<NormResult> {
        lz_norm(&self.rearranged(), s, self.domain_measure)
    }

    /// `c·f` for real `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::invalid("scale", "must be positive and finite"));
        }
        let values = self.samples.values().iter().map(|v| v * c).collect();
        Ok(BandlimitedFunction {
            samples: self.samples.with_values(values)?,
            closed_form_norms: self
                .closed_form_norms
                .iter()
                .map(|&(p, v)| (p, c * v))
                .collect(),
            ..self.clone()
        })
    }

    /// Same spectrum metadata, new samples on the same grid (used for
    /// Littlewood–Paley blocks, whose spectra lie inside the parent's).
    pub fn with_samples(&self, values: Vec<Complex64>) -> Result<Self> {
        Ok(BandlimitedFunction {
            samples: self.samples.with_values(values)?,
            closed_form_norms: Vec::new(),
            ..self.clone()
        })
    }
}

/// `sin(πy)/(πy)` with the argument reduced mod 2 before the sine.
pub fn sinc(y: f64) -> f64 {
    if y == 0.0 {
        return 1.0;
    }
    let r = y - 2.0 * libm::round(0.5 * y);
    math::sin(PI * r) / (PI * y)
}

/// `∫_R sinc(y)^n dy` for even `n ≥ 2`: the `n`-fold convolution of the unit
/// box at 0, via the Irwin–Hall density. Exact integer arithmetic up to `n = 20`.
pub fn sinc_power_integral(n: u32) -> Option<f64> {
    if n < 2 || !n.is_multiple_of(2) || n > 20 {
        return None;
    }
    let half = (n / 2) as i128;
    let mut binom: i128 = 1;
    let mut sum: i128 = 0;
    for k in 0..=half {
        let term = binom * (half - k).pow(n - 1);
        sum += if k % 2 == 0 { term } else { -term };
        binom = binom * (n as i128 - k) / (k + 1);
    }
    let fact: i128 = (1..n as i128).product();
    Some(sum as f64 / fact as f64)
}

/// `f(x) = sinc(ωx)^m` on a truncated symmetric grid containing `x = 0`.
pub fn make_sinc_power(omega: f64, m: u32, grid: SincGrid) -> Result<BandlimitedFunction> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::invalid("omega", "must be positive and finite"));
    }
    if m == 0 {
        return Err(Error::invalid("m", "must be at least 1"));
    }
    if !(grid.oversample >= 1.0) {
        return Err(Error::Resolution(format!(
            "oversample {} < 1 violates the Nyquist spacing 1/(mω)",
            grid.oversample
        )));
    }
    if !(grid.tail_tol > 0.0) || !(grid.min_exponent > 0.0) {
        return Err(Error::invalid(
            "grid",
            "tail_tol and min_exponent must be positive",
        ));
    }
    let mf = m as f64;
    let e = mf * grid.min_exponent;
    if e <= 1.0 {
        return Err(Error::invalid(
            "grid",
            format!("sinc^{m} is not in L_{} on the line", grid.min_exponent),
        ));
    }
    // Core integral ∫_{|y|≤8} |sinc|^e, a lower bound for ω∫|f|^q.
    let core = 2.0 * quad::integrate(|y| math::powf(sinc(y).abs(), e), 0.0, 8.0, 1e-10, 400).value;
    // Envelope tail: ∫_{|y|>Y} |πy|^{−e} dy = 2 π^{−e} Y^{1−e}/(e−1) ≤ tol · core.
    let y_max = math::powf(
        2.0 * math::powf(PI, -e) / ((e - 1.0) * grid.tail_tol * core),
        1.0 / (e - 1.0),
    )
    .max(8.0);
    let h = 1.0 / (mf * omega * grid.oversample);
    let x_max = y_max / omega;
    let needed = math::ceil(2.0 * x_max / h) as usize + 1;
    let n = needed.next_power_of_two();
    if n > grid.max_points {
        return Err(Error::Resolution(format!(
            "{n} samples exceed the cap of {}",
            grid.max_points
        )));
    }
    let half = (n / 2) as f64;
    let values: Vec<Complex64> = (0..n)
        .map(|j| {
            let x = (j as f64 - half) * h;
            Complex64::new(math::powf(sinc(omega * x), mf), 0.0)
        })
        .collect();
    // Actual truncation point is the grid half-width.
    let y_trunc = half * h * omega;
    let tail_bound = 2.0 * math::powf(PI, -e) * math::powf(y_trunc, 1.0 - e) / ((e - 1.0) * core);
    let samples = SampledFunction::new(vec![n], vec![h], vec![-half * h], values)?;

    let mut closed_form_norms = vec![(ExtReal::Infinity, 1.0)];
    // |f|^q = |sinc(ω·)|^{mq}; closed form whenever mq is an even integer.
    for k in (2..=20u32).step_by(2) {
        let q = k as f64 / mf;
        if let Some(i) = sinc_power_integral(k) {
            closed_form_norms.push((ExtReal::Finite(q), math::powf(i / omega, 1.0 / q)));
        }
    }

    let half_band = 0.5 * mf * omega;
    Ok(BandlimitedFunction {
        kind: FamilyKind::SincPower { m },
        omega,
        samples,
        spectrum: Spectrum::interval(-half_band, half_band)?,
        closed_form_norms,
        domain_measure: ExtReal::Infinity,
        tail_bound,
    })
}

/// Grid geometry of the torus family: `n` points per axis over period `P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGrid {
    pub dim: usize,
    pub period: f64,
    pub points: usize,
}

impl TorusGrid {
    fn check(&self, s: &Spectrum) -> Result<()> {
        if !(self.period > 0.0) || !self.period.is_finite() {
            return Err(Error::invalid("period", "must be positive and finite"));
        }
        if self.points < 2 || !self.points.is_power_of_two() {
            return Err(Error::invalid("gridPoints", "must be a power of two ≥ 2"));
        }
        if s.dim() != self.dim || !(1..=2).contains(&self.dim) {
            return Err(Error::invalid(
                "spectrum",
                "dimension must match the grid (1 or 2)",
            ));
        }
        let nyquist = self.points as f64 / (2.0 * self.period);
        if s.max_abs_coordinate() >= nyquist {
            return Err(Error::Resolution(format!(
                "spectrum reaches {} but the grid resolves only |ξ| < {nyquist}",
                s.max_abs_coordinate()
            )));
        }
        Ok(())
    }

    fn shape(&self) -> Vec<usize> {
        vec![self.points; self.dim]
    }

    /// Frequency `ξ` of a flat FFT index.
    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        let n = self.points;
        let mut xi = vec![0.0; self.dim];
        let mut rem = flat;
        for i in (0..self.dim).rev() {
            xi[i] = fft::signed_index(rem % n, n) as f64 / self.period;
            rem /= n;
        }
        xi
    }

    /// Flat FFT indices whose frequencies lie in `s`, in increasing order.
    pub fn indices_in(&self, s: &Spectrum) -> Vec<usize> {
        let total = self.points.pow(self.dim as u32);
        (0..total)
            .filter(|&k| s.contains(&self.frequency(k)))
            .collect()
    }
}

/// Trigonometric polynomial with the given coefficients on `indices`
/// (flat FFT indices), sampled at `x_j = j·P/N`.
pub fn from_coefficients(
    s: &Spectrum,
    grid: TorusGrid,
    indices: &[usize],
    coefficients: &[Complex64],
    seed: u64,
) -> Result<BandlimitedFunction> {
    grid.check(s)?;
    if indices.len() != coefficients.len() {
        return Err(Error::invalid(
            "coefficients",
            "length differs from index list",
        ));
    }
    let shape = grid.shape();
    let total: usize = shape.iter().product();
    let mut data = vec![Complex64::new(0.0, 0.0); total];
    for (&k, &c) in indices.iter().zip(coefficients) {
        if k >= total || !s.contains(&grid.frequency(k)) {
            return Err(Error::invalid("coefficients", "index outside the spectrum"));
        }
        data[k] = c;
    }
    fft::fft_nd(&mut data, &shape, Direction::Inverse)?;
    let h = grid.period / grid.points as f64;
    let samples = SampledFunction::new(shape, vec![h; grid.dim], vec![0.0; grid.dim], data)?;
    Ok(BandlimitedFunction {
        kind: FamilyKind::RandomSpectrum {
            seed,
            period: grid.period,
        },
        omega: s.max_abs_coordinate(),
        samples,
        spectrum: s.clone(),
        closed_form_norms: Vec::new(),
        domain_measure: ExtReal::new(math::powf(grid.period, grid.dim as f64))?,
        tail_bound: 0.0,
    })
}

/// Uniform complex coefficients in `[−1, 1]²` on every grid frequency in `s`,
/// drawn from `ChaCha8Rng::seed_from_u64(seed)` in increasing index order.
pub fn random_coefficients(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        .collect()
}

pub fn make_random_bandlimited(
    s: &Spectrum,
    seed: u64,
    period: f64,
    grid_points: usize,
) -> Result<BandlimitedFunction> {
    let grid = TorusGrid {
        dim: s.dim(),
        period,
        points: grid_points,
    };
    grid.check(s)?;
    let indices = grid.indices_in(s);
    let coefficients = random_coefficients(indices.len(), seed);
    from_coefficients(s, grid, &indices, &coefficients, seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DftChecks {
    pub plancherel_residual: f64,
    pub hausdorff_young_l1_residual: f64,
}

/// Forward transform `f̂_k = h^n Σ f_j e^{−2πi jk/N}` on a power-of-two grid.
pub fn discrete_transform(f: &SampledFunction) -> Result<Vec<Complex64>> {
    let mut data = f.values().to_vec();
    fft::fft_nd(&mut data, f.shape(), Direction::Forward)?;
    let cell = f.cell_measure();
    data.iter_mut().for_each(|v| *v *= cell);
    Ok(data)
}

/// Discrete Plancherel and `L_1 → L_∞` residuals with cell-measure weights
/// (`h^n` in space, `∏ 1/(N_i h_i)` in frequency).
pub fn dft_checks(f: &SampledFunction) -> Result<DftChecks> {
    if f.is_zero() {
        return Ok(DftChecks {
            plancherel_residual: 0.0,
            hausdorff_young_l1_residual: 0.0,
        });
    }
    let fh = discrete_transform(f)?;
    let cell = f.cell_measure();
    let freq_cell: f64 = f
        .shape()
        .iter()
        .zip(f.spacing())
        .map(|(&n, &h)| 1.0 / (n as f64 * h))
        .product();
    let l2 = math::sqrt(cell * f.values().iter().map(|v| v.norm_sqr()).sum::<f64>());
    let l2_hat = math::sqrt(freq_cell * fh.iter().map(|v| v.norm_sqr()).sum::<f64>());
    let l1 = cell * f.values().iter().map(|v| v.norm()).sum::<f64>();
    let sup_hat = fh.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(DftChecks {
        plancherel_residual: (l2_hat - l2).abs() / l2,
        hausdorff_young_l1_residual: (sup_hat - l1).max(0.0) / l1,
    })
}
