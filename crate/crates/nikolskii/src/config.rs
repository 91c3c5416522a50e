//! JSON experiment configuration.

use std::fmt;
use std::path::Path;

use nikolskii_core::bandlimited::{BoxRegion, SincGrid, Spectrum};
use nikolskii_core::besov::{BesovParams, Corollary};
use nikolskii_core::nikolskii::{FamilySpec, PeriodRule};
use nikolskii_core::{ExtReal, LogPair, SpaceParams, StepFunction};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Norm,
    Rearrange,
    Classify,
    Bound,
    Verify,
    Sweep,
    Probe,
    BesovShift,
    BesovVerify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::Rearrange => "rearrange",
            Command::Classify => "classify",
            Command::Bound => "bound",
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::Probe => "probe",
            Command::BesovShift => "besov-shift",
            Command::BesovVerify => "besov-verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A value in `(0, ∞]`: a JSON number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exponent;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exponent, E> {
                Ok(Exponent(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exponent, E> {
                Ok(Exponent(v as f64))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exponent, E> {
                Ok(Exponent(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exponent, E> {
                match v {
                    "inf" | "infinity" | "Infinity" => Ok(Exponent(f64::INFINITY)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

impl Exponent {
    pub fn ext(self) -> Result<ExtReal, CliError> {
        Ok(ExtReal::new(self.0)?)
    }
}

/// `(p, b, [α₀, α_∞])`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub p: Exponent,
    pub b: Exponent,
    #[serde(default)]
    pub a: [f64; 2],
}

impl SpaceConfig {
    pub fn params(&self) -> Result<SpaceParams, CliError> {
        Ok(SpaceParams::new(
            self.p.ext()?,
            self.b.ext()?,
            LogPair::new(self.a[0], self.a[1])?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxConfig {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

pub fn spectrum(boxes: &[BoxConfig]) -> Result<Spectrum, CliError> {
    let boxes = boxes
        .iter()
        .map(|b| BoxRegion::new(b.lo.clone(), b.hi.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Spectrum::new(boxes)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyConfig {
    SincPower {
        m: u32,
        #[serde(default = "default_oversample")]
        oversample: f64,
        #[serde(default = "default_tail_tol")]
        tail_tol: f64,
        #[serde(default = "default_min_exponent")]
        min_exponent: f64,
    },
    Random {
        #[serde(default = "default_dim")]
        dim: usize,
        /// Fixed torus period.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        period: Option<f64>,
        /// Period `cycles/ω` instead of a fixed one.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cycles: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<usize>,
        #[serde(default)]
        inner: f64,
    },
}

fn default_oversample() -> f64 {
    SincGrid::default().oversample
}
fn default_tail_tol() -> f64 {
    SincGrid::default().tail_tol
}
fn default_min_exponent() -> f64 {
    SincGrid::default().min_exponent
}
fn default_dim() -> usize {
    1
}

impl FamilyConfig {
    pub fn spec(&self, seed: u64) -> Result<FamilySpec, CliError> {
        match *self {
            FamilyConfig::SincPower {
                m,
                oversample,
                tail_tol,
                min_exponent,
            } => Ok(FamilySpec::SincPower {
                m,
                grid: SincGrid {
                    oversample,
                    tail_tol,
                    min_exponent,
                    ..SincGrid::default()
                },
            }),
            FamilyConfig::Random {
                dim,
                period,
                cycles,
                points,
                inner,
            } => {
                let period = match (period, cycles) {
                    (Some(p), None) => PeriodRule::Fixed(p),
                    (None, Some(k)) => PeriodRule::Cycles(k),
                    _ => {
                        return Err(CliError::Config(
                            "family.random needs exactly one of `period` or `cycles`".into(),
                        ))
                    }
                };
                Ok(FamilySpec::Random {
                    dim,
                    seed,
                    inner,
                    period,
                    points,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub omegas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    pub budget: usize,
    pub period: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BesovConfig {
    pub corollary: String,
    #[serde(default)]
    pub sigma: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub gamma_pair: [f64; 2],
    pub u: Exponent,
    /// Functions per ω for `besov-verify`.
    #[serde(default = "default_count")]
    pub count: usize,
    /// Space dimension for `besov-shift` (defaults to the family's).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

fn default_count() -> usize {
    1
}

impl BesovConfig {
    pub fn corollary(&self) -> Result<Corollary, CliError> {
        Corollary::parse(&self.corollary)
            .ok_or_else(|| CliError::Config(format!("unknown corollary `{}`", self.corollary)))
    }

    pub fn params(&self, base: SpaceParams) -> Result<BesovParams, CliError> {
        Ok(BesovParams {
            sigma: self.sigma,
            gamma: self.gamma,
            gamma_pair: LogPair::new(self.gamma_pair[0], self.gamma_pair[1])?,
            u: self.u.ext()?,
            base,
        })
    }
}

/// A step function given as `[value, measure]` pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepConfig {
    pub pieces: Vec<[f64; 2]>,
    /// Measure of the underlying domain; `"inf"` by default.
    #[serde(default = "default_domain")]
    pub domain_measure: Exponent,
}

fn default_domain() -> Exponent {
    Exponent(f64::INFINITY)
}

impl StepConfig {
    pub fn step(&self) -> Result<StepFunction, CliError> {
        let pairs: Vec<(f64, f64)> = self.pieces.iter().map(|p| (p[0], p[1])).collect();
        Ok(StepFunction::from_pairs(&pairs)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

/// Full experiment description. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SpaceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<SpaceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<BoxConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyConfig>,
    /// Single bandwidth for `verify` and family-based `norm`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub besov: Option<BesovConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<StepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn require<'a, T>(&self, field: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
        field.as_ref().ok_or_else(|| {
            CliError::Config(format!(
                "command `{}` needs the `{name}` field",
                self.command.name()
            ))
        })
    }
}
