//! Two different symmetric potentials that share boundary data at one energy.
//!
//! A real standing wave `ψ0 = cos(qx)` and a perturbed `ψ = ψ0 + f`, with `f`
//! and `f'` vanishing at `±a`, are inverted to potentials through
//! `V = E + ψ''/ψ`. Both produce the same `ψ`, `ψ'` at the matching points.

use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::potential::{validate, EvaluatedPotential, PotentialSpec};
use crate::propagate::{WaveTrace, MIN_STEPS};
use crate::smatrix::{smatrix_via_transfer, SMatrix};
use crate::units::Energy;

/// Points with `|ψ| < NODE_TOL · max|ψ|` are masked during recovery.
pub const NODE_TOL: f64 = 1e-6;
pub const DEFAULT_GRID_STEPS: usize = 8192;
const IMAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BumpVariant {
    /// `ε(|x| − a)²`: vanishes with its slope at `±a` but has a kink at 0.
    PaperLiteral,
    /// `ε(x² − a²)²`.
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFunction {
    pub variant: BumpVariant,
    pub half_width: f64,
    pub amplitude: f64,
}

impl BumpFunction {
    pub fn new(variant: BumpVariant, half_width: f64, amplitude: f64) -> Self {
        Self {
            variant,
            half_width,
            amplitude,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let (a, eps) = (self.half_width, self.amplitude);
        if x.abs() > a {
            return 0.0;
        }
        match self.variant {
            BumpVariant::PaperLiteral => eps * (x.abs() - a).powi(2),
            BumpVariant::Smooth => eps * (x * x - a * a).powi(2),
        }
    }

    /// One-sided at the kink: `x = 0` takes the right-hand slope.
    pub fn derivative(&self, x: f64) -> f64 {
        let (a, eps) = (self.half_width, self.amplitude);
        if x.abs() > a {
            return 0.0;
        }
        match self.variant {
            BumpVariant::PaperLiteral => {
                let sign = if x < 0.0 { -1.0 } else { 1.0 };
                2.0 * eps * (x.abs() - a) * sign
            }
            BumpVariant::Smooth => 4.0 * eps * x * (x * x - a * a),
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let (a, eps) = (self.half_width, self.amplitude);
        if x.abs() > a {
            return 0.0;
        }
        match self.variant {
            BumpVariant::PaperLiteral => 2.0 * eps,
            BumpVariant::Smooth => eps * (12.0 * x * x - 4.0 * a * a),
        }
    }

    /// `f'(0⁺) ≠ f'(0⁻)`, so `ψ0 + f` is not C¹ at the origin.
    pub fn has_kink(&self) -> bool {
        self.variant == BumpVariant::PaperLiteral && self.amplitude != 0.0
    }
}

/// `V = E + ψ''/ψ` on the trace grid, with near-node points masked.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredPotential {
    pub half_width: f64,
    pub values: Vec<f64>,
    /// `true` where `ψ` was too close to a node for the quotient to be trusted.
    pub mask: Vec<bool>,
}

impl RecoveredPotential {
    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Values with masked points replaced by linear interpolation between the
    /// nearest unmasked neighbours (held constant past the ends).
    pub fn filled(&self) -> Vec<f64> {
        let n = self.values.len();
        let mut out = self.values.clone();
        let kept: Vec<usize> = (0..n).filter(|&i| !self.mask[i]).collect();
        if kept.is_empty() {
            return out;
        }
        let mut next = 0;
        for (i, slot) in out.iter_mut().enumerate() {
            if !self.mask[i] {
                continue;
            }
            while next < kept.len() && kept[next] < i {
                next += 1;
            }
            *slot = match (
                next.checked_sub(1).map(|j| kept[j]),
                kept.get(next).copied(),
            ) {
                (Some(lo), Some(hi)) => {
                    let w = (i - lo) as f64 / (hi - lo) as f64;
                    self.values[lo] + w * (self.values[hi] - self.values[lo])
                }
                (Some(lo), None) => self.values[lo],
                (None, Some(hi)) => self.values[hi],
                (None, None) => unreachable!(),
            };
        }
        out
    }

    /// The filled values as a sampled potential on the original grid.
    pub fn to_spec(&self) -> PotentialSpec {
        let values = self.filled();
        let n = values.len();
        let m = (n - 1) as f64;
        let samples = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| (self.half_width * (2.0 * i as f64 - m) / m, v))
            .collect();
        PotentialSpec::Sampled {
            half_width: self.half_width,
            samples,
        }
    }

    pub fn evaluated(&self) -> Result<EvaluatedPotential> {
        validate(&self.to_spec())
    }
}

/// Fourth-order second derivative. The interior stencil pairs mirror
/// neighbours before combining them, so a symmetric input gives an exactly
/// symmetric output.
fn second_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let scale = 12.0 * h * h;
    const EDGE: [f64; 6] = [45.0, -154.0, 214.0, -156.0, 61.0, -10.0];
    const NEAR_EDGE: [f64; 6] = [10.0, -15.0, -4.0, 14.0, -6.0, 1.0];
    let dot = |c: &[f64; 6], at: &dyn Fn(usize) -> f64| {
        c.iter().enumerate().fold(0.0, |s, (j, w)| s + w * at(j))
    };
    (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                (16.0 * (f[i - 1] + f[i + 1]) - (f[i - 2] + f[i + 2]) - 30.0 * f[i]) / scale
            } else if i == 0 {
                dot(&EDGE, &|j| f[j]) / scale
            } else if i == 1 {
                dot(&NEAR_EDGE, &|j| f[j]) / scale
            } else if i == n - 1 {
                dot(&EDGE, &|j| f[n - 1 - j]) / scale
            } else {
                dot(&NEAR_EDGE, &|j| f[n - 1 - j]) / scale
            }
        })
        .collect()
}

pub fn recover_potential(trace: &WaveTrace, energy: Energy) -> Result<RecoveredPotential> {
    if trace.len() < 7 {
        return Err(Error::PreconditionViolated(
            "recovery needs at least 7 grid points",
        ));
    }
    let peak = trace.psi().iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if !(peak > 0.0) || !peak.is_finite() {
        return Err(Error::AllMasked);
    }
    if trace.psi().iter().any(|z| z.im.abs() > IMAG_TOL * peak) {
        return Err(Error::ComplexWavefunction);
    }
    let psi: Vec<f64> = trace.psi().iter().map(|z| z.re).collect();
    let d2 = second_derivative(&psi, trace.step());
    let mask: Vec<bool> = psi.iter().map(|p| p.abs() < NODE_TOL * peak).collect();
    if mask.iter().all(|&m| m) {
        return Err(Error::AllMasked);
    }
    let values = psi
        .iter()
        .zip(&d2)
        .zip(&mask)
        .map(|((p, dd), &masked)| if masked { 0.0 } else { energy.value() + dd / p })
        .collect();
    Ok(RecoveredPotential {
        half_width: trace.half_width(),
        values,
        mask,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleSide {
    pub trace: WaveTrace,
    pub potential: RecoveredPotential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexamplePair {
    pub baseline: CounterexampleSide,
    pub perturbed: CounterexampleSide,
    pub bump: BumpFunction,
    pub q: f64,
    pub energy: Energy,
    /// `max |V − V0|` over points unmasked in both recoveries.
    pub separation: f64,
    /// Largest difference among the eight boundary numbers.
    pub boundary_residual: f64,
}

impl CounterexamplePair {
    pub fn kink_warning(&self) -> bool {
        self.bump.has_kink()
    }
}

/// `ψ0 = cos(qx)` and `ψ = ψ0 + f` on `grid_steps + 1` points of `[-a, a]`.
pub fn build_counterexample(
    q: f64,
    eps: f64,
    a: f64,
    variant: BumpVariant,
    energy: Energy,
    grid_steps: usize,
) -> Result<CounterexamplePair> {
    if !(a > 0.0 && a.is_finite()) || !(q > 0.0 && q.is_finite()) || !eps.is_finite() {
        return Err(Error::PreconditionViolated(
            "need q > 0, a > 0 and finite eps",
        ));
    }
    if q * a >= core::f64::consts::FRAC_PI_2 {
        return Err(Error::PreconditionViolated(
            "q·a must be below π/2 so cos(qx) has no node",
        ));
    }
    if grid_steps < MIN_STEPS || !grid_steps.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(
            "grid_steps must be even and at least 64",
        ));
    }
    let bump = BumpFunction::new(variant, a, eps);
    let m = grid_steps as f64;
    let xs: Vec<f64> = (0..=grid_steps)
        .map(|i| a * (2.0 * i as f64 - m) / m)
        .collect();
    let real = |v: f64| Complex64::new(v, 0.0);

    let psi0: Vec<Complex64> = xs.iter().map(|&x| real((q * x).cos())).collect();
    let dpsi0: Vec<Complex64> = xs.iter().map(|&x| real(-q * (q * x).sin())).collect();
    let psi: Vec<Complex64> = xs
        .iter()
        .zip(&psi0)
        .map(|(&x, p)| p + bump.value(x))
        .collect();
    let dpsi: Vec<Complex64> = xs
        .iter()
        .zip(&dpsi0)
        .map(|(&x, p)| p + bump.derivative(x))
        .collect();

    let peak = psi.iter().fold(0.0f64, |m, z| m.max(z.re.abs()));
    if let Some(i) = (0..psi.len()).find(|&i| psi[i].re <= NODE_TOL * peak) {
        return Err(Error::NodeCollision(xs[i]));
    }

    let baseline_trace = WaveTrace::new(a, psi0, dpsi0, energy)?;
    let perturbed_trace = WaveTrace::new(a, psi, dpsi, energy)?;
    let v0 = recover_potential(&baseline_trace, energy)?;
    let v = recover_potential(&perturbed_trace, energy)?;
    let separation = v
        .values
        .iter()
        .zip(&v0.values)
        .zip(v.mask.iter().zip(&v0.mask))
        .filter(|(_, (m1, m0))| !**m1 && !**m0)
        .fold(0.0f64, |s, ((x, y), _)| s.max((x - y).abs()));
    let boundary_residual = baseline_trace
        .boundary()
        .max_abs_diff(&perturbed_trace.boundary());

    Ok(CounterexamplePair {
        baseline: CounterexampleSide {
            trace: baseline_trace,
            potential: v0,
        },
        perturbed: CounterexampleSide {
            trace: perturbed_trace,
            potential: v,
        },
        bump,
        q,
        energy,
        separation,
        boundary_residual,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SameSMatrixReport {
    pub energy: Energy,
    pub s_baseline: SMatrix,
    pub s_perturbed: SMatrix,
    pub max_entry_diff: f64,
    /// `|ΔS_even|` with `S_even = s11 + s12`; the channel the construction pins.
    pub even_channel_diff: f64,
    /// `|ΔS_odd|` with `S_odd = s11 − s12`; not constrained by an even `ψ`.
    pub odd_channel_diff: f64,
}

/// Forward-solves both recovered potentials at `energy` and compares.
pub fn verify_same_smatrix(
    pair: &CounterexamplePair,
    energy: Energy,
    steps: usize,
) -> Result<SameSMatrixReport> {
    let s_baseline = smatrix_via_transfer(&pair.baseline.potential.evaluated()?, energy, steps)?;
    let s_perturbed = smatrix_via_transfer(&pair.perturbed.potential.evaluated()?, energy, steps)?;
    let (e0, o0) = s_baseline.parity_channels();
    let (e1, o1) = s_perturbed.parity_channels();
    Ok(SameSMatrixReport {
        energy,
        max_entry_diff: s_baseline.max_entry_diff(&s_perturbed),
        even_channel_diff: (e0 - e1).norm(),
        odd_channel_diff: (o0 - o1).norm(),
        s_baseline,
        s_perturbed,
    })
}
