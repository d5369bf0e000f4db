//! Symmetric potentials supported on `[-a, a]`.

use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const GRID_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// `V(x) = -depth` on `[-a, a]`, zero outside.
    SquareWell { depth: f64, half_width: f64 },
    /// `V(x) = -strength · δ(x)`.
    Delta { strength: f64 },
    /// `(x, V(x))` pairs on a uniform grid covering exactly `[-a, a]`.
    Sampled {
        half_width: f64,
        samples: Vec<(f64, f64)>,
    },
}

impl PotentialSpec {
    /// Samples `f` on `n` uniformly spaced points of `[-a, a]`.
    pub fn sampled_from_fn(half_width: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        let samples = symmetric_grid(half_width, n).map(|x| (x, f(x))).collect();
        Self::Sampled {
            half_width,
            samples,
        }
    }
}

/// `x_i = a (2i - (n-1)) / (n-1)`; exactly antisymmetric under `i ↦ n-1-i`.
fn symmetric_grid(half_width: f64, n: usize) -> impl Iterator<Item = f64> {
    let m = (n - 1) as f64;
    (0..n).map(move |i| half_width * (2.0 * i as f64 - m) / m)
}

/// Potential values on the uniform grid `x_i = -a + i h`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable {
    half_width: f64,
    step: f64,
    values: Vec<f64>,
}

impl PotentialTable {
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        symmetric_grid(self.half_width, self.values.len())
    }

    /// Piecewise-linear interpolation; zero outside `[-a, a]`.
    pub fn eval(&self, x: f64) -> f64 {
        let a = self.half_width;
        if !(x.abs() <= a) {
            return 0.0;
        }
        let last = self.values.len() - 1;
        let u = (x + a) / self.step;
        let i = (u.floor() as usize).min(last - 1);
        let frac = (u - i as f64).clamp(0.0, 1.0);
        self.values[i] + frac * (self.values[i + 1] - self.values[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvaluatedPotential {
    SquareWell {
        depth: f64,
        half_width: f64,
    },
    Table(PotentialTable),
    /// No pointwise evaluator; handled analytically downstream.
    Delta {
        strength: f64,
    },
}

impl EvaluatedPotential {
    /// `V(x)`, or `None` for the delta potential.
    pub fn eval(&self, x: f64) -> Option<f64> {
        match self {
            Self::SquareWell { depth, half_width } => {
                Some(if x.abs() <= *half_width { -depth } else { 0.0 })
            }
            Self::Table(table) => Some(table.eval(x)),
            Self::Delta { .. } => None,
        }
    }

    /// Half-width of the support; zero for the delta potential.
    pub fn half_width(&self) -> f64 {
        match self {
            Self::SquareWell { half_width, .. } => *half_width,
            Self::Table(table) => table.half_width,
            Self::Delta { .. } => 0.0,
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, Self::Delta { .. })
    }
}

pub fn validate(spec: &PotentialSpec) -> Result<EvaluatedPotential> {
    match spec {
        &PotentialSpec::SquareWell { depth, half_width } => {
            if !(depth >= 0.0 && depth.is_finite()) {
                return Err(Error::PreconditionViolated(
                    "square-well depth must be finite and >= 0",
                ));
            }
            check_half_width(half_width)?;
            Ok(EvaluatedPotential::SquareWell { depth, half_width })
        }
        &PotentialSpec::Delta { strength } => {
            if !(strength > 0.0 && strength.is_finite()) {
                return Err(Error::PreconditionViolated(
                    "delta strength must be finite and > 0",
                ));
            }
            Ok(EvaluatedPotential::Delta { strength })
        }
        PotentialSpec::Sampled {
            half_width,
            samples,
        } => validate_samples(*half_width, samples).map(EvaluatedPotential::Table),
    }
}

fn check_half_width(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(
            "half-width must be finite and > 0",
        ))
    }
}

fn validate_samples(a: f64, samples: &[(f64, f64)]) -> Result<PotentialTable> {
    check_half_width(a)?;
    let n = samples.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(
            "sample count must be odd and at least 3",
        ));
    }
    let step = 2.0 * a / (n - 1) as f64;
    for (i, &(x, v)) in samples.iter().enumerate() {
        let expected = -a + i as f64 * step;
        if !x.is_finite() || (x - expected).abs() > GRID_TOL * step.max(a) {
            return Err(Error::NonUniformGrid(i));
        }
        if i > 0 {
            let h = x - samples[i - 1].0;
            if (h - step).abs() > GRID_TOL * step {
                return Err(Error::NonUniformGrid(i));
            }
        }
        if !v.is_finite() {
            return Err(Error::NonFiniteSample(i));
        }
    }
    let scale = samples.iter().fold(1.0f64, |m, s| m.max(s.1.abs()));
    for i in 0..n / 2 {
        let deviation = (samples[i].1 - samples[n - 1 - i].1).abs();
        if deviation > SYMMETRY_TOL * scale {
            return Err(Error::AsymmetricPotential {
                index: i,
                deviation,
            });
        }
    }
    Ok(PotentialTable {
        half_width: a,
        step,
        values: samples.iter().map(|s| s.1).collect(),
    })
}

/// Uniform sampling of an analytic potential on `n` points (odd, `n >= 3`).
pub fn sample_analytic(spec: &PotentialSpec, n: usize) -> Result<PotentialSpec> {
    match *spec {
        PotentialSpec::SquareWell { depth, half_width } => {
            if n < 3 || n.is_multiple_of(2) {
                return Err(Error::PreconditionViolated(
                    "sample count must be odd and at least 3",
                ));
            }
            check_half_width(half_width)?;
            Ok(PotentialSpec::sampled_from_fn(half_width, n, |_| -depth))
        }
        PotentialSpec::Delta { .. } => Err(Error::DeltaNotSamplable),
        PotentialSpec::Sampled { .. } => Err(Error::PreconditionViolated(
            "only analytic potentials can be sampled",
        )),
    }
}
