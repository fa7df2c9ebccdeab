//! Benchmark target laws, their discretization onto integer labels, and
//! seeded training samples.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, LogNormal, Normal, Triangular};

use crate::error::{Error, Result};
use crate::pmf::{Pmf, SUM_TOLERANCE};
use crate::qsim;

/// Custom distributions whose total is off by less than this are
/// renormalized; anything further off is rejected.
pub const CUSTOM_RENORMALIZE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetKind {
    /// `mu` and `sigma` parameterize the underlying normal of `ln X`.
    #[serde(alias = "lognormal")]
    LogNormal { mu: f64, sigma: f64 },
    Triangular { lower: f64, mode: f64, upper: f64 },
    /// Equal-weight mixture of two normals.
    Bimodal { mu1: f64, sigma1: f64, mu2: f64, sigma2: f64 },
    Custom { probabilities: Vec<f64> },
}

/// How mass outside `[-0.5, 2^n - 0.5]` is handled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    /// Fold tail mass into the two boundary labels.
    Clip,
    /// Drop tail mass and renormalize.
    #[default]
    #[serde(rename = "truncate_renormalize", alias = "truncate")]
    Truncate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub kind: TargetKind,
    #[serde(default)]
    pub tail_mode: TailMode,
}

enum Law {
    LogNormal(LogNormal),
    Triangular(Triangular),
    Bimodal(Normal, Normal),
}

impl Law {
    fn cdf(&self, x: f64) -> f64 {
        match self {
            Law::LogNormal(d) => {
                if x <= 0.0 {
                    0.0
                } else {
                    d.cdf(x)
                }
            }
            Law::Triangular(d) => d.cdf(x),
            Law::Bimodal(a, b) => 0.5 * a.cdf(x) + 0.5 * b.cdf(x),
        }
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> Error {
    Error::InvalidTarget(e.to_string())
}

impl TargetSpec {
    pub fn new(kind: TargetKind) -> Self {
        Self {
            kind,
            tail_mode: TailMode::default(),
        }
    }

    pub fn with_tail_mode(mut self, tail_mode: TailMode) -> Self {
        self.tail_mode = tail_mode;
        self
    }

    /// Log-normal benchmark: underlying normal with mean 1 and std 1.
    pub fn lognormal() -> Self {
        Self::new(TargetKind::LogNormal { mu: 1.0, sigma: 1.0 })
    }

    /// Triangular benchmark on [0, 7] with mode 2.
    pub fn triangular() -> Self {
        Self::new(TargetKind::Triangular {
            lower: 0.0,
            mode: 2.0,
            upper: 7.0,
        })
    }

    /// Bimodal benchmark: N(0.5, 1) and N(3.5, 0.5) mixed equally.
    pub fn bimodal() -> Self {
        Self::new(TargetKind::Bimodal {
            mu1: 0.5,
            sigma1: 1.0,
            mu2: 3.5,
            sigma2: 0.5,
        })
    }

    /// The three benchmark targets, in table order.
    pub fn benchmarks() -> [Self; 3] {
        [Self::lognormal(), Self::triangular(), Self::bimodal()]
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            TargetKind::LogNormal { .. } => "log-normal",
            TargetKind::Triangular { .. } => "triangular",
            TargetKind::Bimodal { .. } => "bimodal",
            TargetKind::Custom { .. } => "custom",
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.law().map(|_| ())
    }

    fn law(&self) -> Result<Option<Law>> {
        let finite = |vals: &[f64]| {
            if vals.iter().all(|v| v.is_finite()) {
                Ok(())
            } else {
                Err(Error::InvalidTarget(format!("non-finite parameter in {vals:?}")))
            }
        };
        Ok(Some(match self.kind {
            TargetKind::LogNormal { mu, sigma } => {
                finite(&[mu, sigma])?;
                if sigma <= 0.0 {
                    return Err(Error::InvalidTarget(format!("log-normal sigma {sigma} <= 0")));
                }
                Law::LogNormal(LogNormal::new(mu, sigma).map_err(invalid)?)
            }
            TargetKind::Triangular { lower, mode, upper } => {
                finite(&[lower, mode, upper])?;
                if !(lower <= mode && mode <= upper && lower < upper) {
                    return Err(Error::InvalidTarget(format!(
                        "triangular needs lower <= mode <= upper and lower < upper, got ({lower}, {mode}, {upper})"
                    )));
                }
                Law::Triangular(Triangular::new(lower, upper, mode).map_err(invalid)?)
            }
            TargetKind::Bimodal { mu1, sigma1, mu2, sigma2 } => {
                finite(&[mu1, sigma1, mu2, sigma2])?;
                if sigma1 <= 0.0 || sigma2 <= 0.0 {
                    return Err(Error::InvalidTarget("bimodal sigmas must be > 0".into()));
                }
                Law::Bimodal(
                    Normal::new(mu1, sigma1).map_err(invalid)?,
                    Normal::new(mu2, sigma2).map_err(invalid)?,
                )
            }
            TargetKind::Custom { ref probabilities } => {
                Pmf::new(probabilities.clone())?;
                return Ok(None);
            }
        }))
    }

    /// Probability mass on labels `0..2^n_qubits`: label `i` receives
    /// `P(i - 0.5 < X <= i + 0.5)`, tails handled per [`TailMode`].
    pub fn discretize(&self, n_qubits: usize) -> Result<Pmf> {
        if !(1..=qsim::MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::QubitCount(n_qubits));
        }
        match self.law()? {
            Some(law) => bin_cdf(|x| law.cdf(x), 1 << n_qubits, self.tail_mode),
            None => {
                let TargetKind::Custom { probabilities } = &self.kind else {
                    unreachable!()
                };
                if probabilities.len() != 1 << n_qubits {
                    return Err(Error::DimensionMismatch {
                        expected: 1 << n_qubits,
                        actual: probabilities.len(),
                    });
                }
                Pmf::new(probabilities.clone())
            }
        }
    }

    /// Mean and standard deviation of the continuous law (of the label
    /// distribution for custom targets).
    pub fn moments(&self) -> Result<(f64, f64)> {
        self.validate()?;
        let (mean, var) = match self.kind {
            TargetKind::LogNormal { mu, sigma } => {
                let s2 = sigma * sigma;
                ((mu + s2 / 2.0).exp(), (s2.exp() - 1.0) * (2.0 * mu + s2).exp())
            }
            TargetKind::Triangular { lower: a, mode: c, upper: b } => (
                (a + b + c) / 3.0,
                (a * a + b * b + c * c - a * b - a * c - b * c) / 18.0,
            ),
            TargetKind::Bimodal { mu1, sigma1, mu2, sigma2 } => {
                let mean = 0.5 * (mu1 + mu2);
                let second = 0.5 * (sigma1 * sigma1 + mu1 * mu1) + 0.5 * (sigma2 * sigma2 + mu2 * mu2);
                (mean, second - mean * mean)
            }
            TargetKind::Custom { ref probabilities } => {
                let mean: f64 = probabilities.iter().enumerate().map(|(i, p)| i as f64 * p).sum();
                let var = probabilities
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i as f64 - mean).powi(2) * p)
                    .sum();
                (mean, var)
            }
        };
        Ok((mean, var.sqrt()))
    }

    pub fn sample_training_data(&self, n_qubits: usize, count: usize, rng_seed: u64) -> Result<TrainingSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        TrainingSet::draw(&self.discretize(n_qubits)?, count, &mut rng)
    }
}

/// Bins a CDF onto unit-width cells centred on `0..len`.
fn bin_cdf(cdf: impl Fn(f64) -> f64, len: usize, tail_mode: TailMode) -> Result<Pmf> {
    let edges: Vec<f64> = (0..=len).map(|i| cdf(i as f64 - 0.5)).collect();
    let mut probs: Vec<f64> = edges.windows(2).map(|w| (w[1] - w[0]).max(0.0)).collect();
    if tail_mode == TailMode::Clip {
        probs[0] += edges[0];
        probs[len - 1] += 1.0 - edges[len];
    }
    let total: f64 = probs.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidTarget(
            "no probability mass inside the label grid".into(),
        ));
    }
    Pmf::new(probs.into_iter().map(|p| p / total).collect())
}

/// Normal law with the given moments, binned like the benchmark targets.
pub fn discretized_normal(mean: f64, std: f64, n_qubits: usize, tail_mode: TailMode) -> Result<Pmf> {
    if !(std > 0.0 && mean.is_finite() && std.is_finite()) {
        return Err(Error::InvalidTarget(format!("normal({mean}, {std})")));
    }
    let law = Normal::new(mean, std).map_err(invalid)?;
    bin_cdf(|x| law.cdf(x), 1 << n_qubits, tail_mode)
}

/// Labels drawn from a discretized target.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    pub samples: Vec<usize>,
    pub empirical: Pmf,
}

impl TrainingSet {
    pub fn draw<R: Rng + ?Sized>(target: &Pmf, count: usize, rng: &mut R) -> Result<Self> {
        let samples = qsim::sample_outcomes(target.probs(), count, rng)?;
        let empirical = Pmf::from_labels(&samples, target.len())?;
        Ok(Self { samples, empirical })
    }
}

/// Parses a custom distribution: a JSON array or whitespace/comma separated
/// numbers. Totals within [`CUSTOM_RENORMALIZE_TOLERANCE`] of one are
/// renormalized with a warning.
pub fn parse_custom_pmf(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim();
    let values: Vec<f64> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed)?
    } else {
        trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::InvalidInput(format!("`{t}`: {e}")))
            })
            .collect::<Result<_>>()?
    };
    normalize_custom(values)
}

pub fn load_custom_pmf(path: &Path) -> Result<Vec<f64>> {
    parse_custom_pmf(&std::fs::read_to_string(path)?)
}

fn normalize_custom(values: Vec<f64>) -> Result<Vec<f64>> {
    if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::InvalidPmf(format!("entry {bad} is not a non-negative number")));
    }
    let total: f64 = values.iter().sum();
    let off = (total - 1.0).abs();
    if off >= CUSTOM_RENORMALIZE_TOLERANCE {
        return Err(Error::InvalidPmf(format!("entries sum to {total}")));
    }
    let values: Vec<f64> = if off > SUM_TOLERANCE {
        log::warn!("custom distribution sums to {total}; renormalizing");
        values.into_iter().map(|v| v / total).collect()
    } else {
        values
    };
    Pmf::new(values.clone())?;
    Ok(values)
}
