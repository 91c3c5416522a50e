//! Exact non-increasing rearrangement of step functions and grid samples.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One constant piece of a nonnegative step function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub value: f64,
    pub measure: f64,
}

impl Piece {
    pub fn new(value: f64, measure: f64) -> Self {
        Piece { value, measure }
    }
}

/// A nonnegative function taking finitely many values, each on a set of
/// positive measure. Piece order is the order of the underlying sets; in
/// canonical form it is the graph of `f*` on `(0, total_measure)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    pieces: Vec<Piece>,
}

impl StepFunction {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::invalid("step function", "no pieces"));
        }
        for (i, p) in pieces.iter().enumerate() {
            if !p.value.is_finite() || p.value < 0.0 {
                return Err(Error::invalid(
                    "step function",
                    format!("piece {i} has value {} (must be finite and ≥ 0)", p.value),
                ));
            }
            if !p.measure.is_finite() || p.measure <= 0.0 {
                return Err(Error::invalid(
                    "step function",
                    format!(
                        "piece {i} has measure {} (must be finite and > 0)",
                        p.measure
                    ),
                ));
            }
        }
        Ok(StepFunction { pieces })
    }

    /// Builds from `(value, measure)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(v, m)| Piece::new(v, m)).collect())
    }

    pub fn constant(value: f64, measure: f64) -> Result<Self> {
        Self::new(alloc::vec![Piece::new(value, measure)])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn total_measure(&self) -> f64 {
        self.pieces.iter().map(|p| p.measure).sum()
    }

    pub fn max_value(&self) -> f64 {
        self.pieces.iter().fold(0.0, |m, p| m.max(p.value))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.value == 0.0)
    }

    /// Values strictly decreasing (equal neighbours merged).
    pub fn is_canonical(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0].value > w[1].value)
    }

    /// Canonical non-increasing rearrangement `f*`, equimeasurable with `self`.
    pub fn rearrange(&self) -> StepFunction {
        let mut sorted = self.pieces.clone();
        sorted.sort_by(|a, b| b.value.total_cmp(&a.value));
        let mut out: Vec<Piece> = Vec::with_capacity(sorted.len());
        for p in sorted {
            match out.last_mut() {
                Some(last) if last.value == p.value => last.measure += p.measure,
                _ => out.push(p),
            }
        }
        StepFunction { pieces: out }
    }

    /// Distribution function `μ{x : f(x) > λ}`.
    pub fn distribution(&self, lambda: f64) -> f64 {
        self.pieces
            .iter()
            .filter(|p| p.value > lambda)
            .map(|p| p.measure)
            .sum()
    }

    /// Value of `f*` at `t` for a canonical function (0 beyond the support).
    pub fn decreasing_value_at(&self, t: f64) -> f64 {
        let mut end = 0.0;
        for p in &self.pieces {
            end += p.measure;
            if t < end {
                return p.value;
            }
        }
        0.0
    }

    /// The restriction of `f` to a set `M` of measure one on which
    /// `|f| ≥ f*(1)`: the first unit of measure of `f*`.
    pub fn truncate_to_unit_set(&self) -> Result<StepFunction> {
        let total = self.total_measure();
        if total < 1.0 {
            return Err(Error::invalid(
                "step function",
                format!("total measure {total} is below 1"),
            ));
        }
        let fstar = self.rearrange();
        let mut out = Vec::new();
        let mut acc = 0.0;
        for p in fstar.pieces {
            let room = 1.0 - acc;
            if room <= 0.0 {
                break;
            }
            let m = p.measure.min(room);
            out.push(Piece::new(p.value, m));
            acc += m;
        }
        Ok(StepFunction { pieces: out })
    }

    /// Pointwise `|f|^k`.
    pub fn powi(&self, k: i32) -> StepFunction {
        self.map_values(|v| crate::math::powf(v, k as f64))
    }

    /// Pointwise `c · f` for `c ≥ 0`.
    pub fn scaled(&self, c: f64) -> StepFunction {
        self.map_values(|v| c * v)
    }

    fn map_values(&self, f: impl Fn(f64) -> f64) -> StepFunction {
        StepFunction {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(f(p.value), p.measure))
                .collect(),
        }
    }
}

/// Complex samples on a uniform grid in `R^1` or `R^2`, each sample standing
/// for a constant cell of volume `∏ spacing`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    shape: Vec<usize>,
    spacing: Vec<f64>,
    origin: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledFunction {
    /// `values` are row-major; `origin` is the coordinate of sample 0.
    pub fn new(
        shape: Vec<usize>,
        spacing: Vec<f64>,
        origin: Vec<f64>,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        let dim = shape.len();
        if !(1..=2).contains(&dim) {
            return Err(Error::invalid(
                "grid",
                format!("dimension {dim} not in {{1, 2}}"),
            ));
        }
        if spacing.len() != dim || origin.len() != dim {
            return Err(Error::invalid(
                "grid",
                "spacing/origin length differs from dimension",
            ));
        }
        if spacing.iter().any(|&h| !(h > 0.0) || !h.is_finite()) {
            return Err(Error::invalid(
                "grid",
                "spacing must be positive and finite",
            ));
        }
        let count: usize = shape.iter().product();
        if count == 0 || values.len() != count {
            return Err(Error::invalid(
                "grid",
                format!("expected {count} samples, got {}", values.len()),
            ));
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::invalid("grid", "non-finite sample"));
        }
        Ok(SampledFunction {
            shape,
            spacing,
            origin,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn cell_measure(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn total_measure(&self) -> f64 {
        self.cell_measure() * self.values.len() as f64
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::new(
            self.shape.clone(),
            self.spacing.clone(),
            self.origin.clone(),
            values,
        )
    }

    /// `f*` of `|f|`, treating each cell as a constant piece.
    pub fn rearrange(&self) -> StepFunction {
        let mut mags: Vec<f64> = self.values.iter().map(|v| v.norm()).collect();
        mags.sort_by(|a, b| b.total_cmp(a));
        let cell = self.cell_measure();
        let mut pieces: Vec<Piece> = Vec::new();
        let mut i = 0;
        while i < mags.len() {
            let v = mags[i];
            let mut j = i + 1;
            while j < mags.len() && mags[j] == v {
                j += 1;
            }
            pieces.push(Piece::new(v, (j - i) as f64 * cell));
            i = j;
        }
        StepFunction { pieces }
    }

    /// `|f|` as a raw (unsorted) step function.
    pub fn abs_step(&self) -> StepFunction {
        let cell = self.cell_measure();
        StepFunction {
            pieces: self
                .values
                .iter()
                .map(|v| Piece::new(v.norm(), cell))
                .collect(),
        }
    }
}
