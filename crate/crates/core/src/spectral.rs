//! Sine-kernel spectra, Fredholm determinants `F±(t)`, the Gel'fand–Levitan
//! potentials `W±(τ)` and the closed-form phase shifts of the inverse problem.
//!
//! The `±` convention follows the even/odd split throughout: the upper sign
//! belongs to the even kernel `K₊` and its eigenvalues `λ₀, λ₂, …`.

use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigenvalues_desc;
use crate::quadrature::GaussLegendre;
use crate::units::{PI, ZETA_PRIME_MINUS_1};

pub const MAX_T: f64 = 6.0;
pub const MIN_QUAD_ORDER: usize = 64;
/// Eigenvalues within this distance of `[0, 1]` are clipped onto it.
pub const CLIP_TOL: f64 = 1e-10;
/// Eigenvalues below this contribute nothing to `log F`.
const NEGLIGIBLE_EIG: f64 = 1e-16;
/// `1 − λ` below this has no correct digits left.
const ONE_MARGIN: f64 = 1e-13;
const SINC_TAYLOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `+1` for even, `−1` for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub parity: Parity,
    pub t: f64,
    pub quad_order: usize,
}

/// `sin(u)/u` with the removable singularity filled by its Taylor series.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < SINC_TAYLOR {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0)))
    } else {
        u.sin() / u
    }
}

/// `K±(x, y) = (sinc(x − y) ± sinc(x + y)) / π`.
pub fn kernel(parity: Parity, x: f64, y: f64) -> f64 {
    (sinc(x - y) + parity.sign() * sinc(x + y)) / PI
}

fn check_limits(t: f64, quad_order: usize) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::PreconditionViolated("t must be > 0"));
    }
    if !(t <= MAX_T) {
        return Err(Error::TTooLarge(t));
    }
    if quad_order < MIN_QUAD_ORDER {
        return Err(Error::QuadOrderTooSmall(quad_order));
    }
    Ok(())
}

/// Raw eigenvalues of the symmetrized Nyström matrix `√wᵢ K(xᵢ, xⱼ) √wⱼ`
/// on `[lo, hi]`, descending and unclipped.
pub fn nystrom_eigenvalues(
    k: impl Fn(f64, f64) -> f64,
    lo: f64,
    hi: f64,
    quad_order: usize,
) -> Vec<f64> {
    let (xs, ws) = GaussLegendre::new(quad_order).on_interval(lo, hi);
    let sw: Vec<f64> = ws.iter().map(|w| w.sqrt()).collect();
    let n = xs.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = sw[i] * k(xs[i], xs[j]) * sw[j];
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    symmetric_eigenvalues_desc(m)
}

fn clip_unit(values: Vec<f64>) -> Result<Vec<f64>> {
    values
        .into_iter()
        .map(|v| {
            if !(-CLIP_TOL..=1.0 + CLIP_TOL).contains(&v) {
                Err(Error::EigenvalueOutOfRange(v))
            } else {
                Ok(v.clamp(0.0, 1.0))
            }
        })
        .collect()
}

/// Eigenvalues of `K±` on `[0, πt]`, descending and clipped to `[0, 1]`.
pub fn sine_kernel_eigs(spec: KernelSpec) -> Result<Vec<f64>> {
    check_limits(spec.t, spec.quad_order)?;
    let raw = nystrom_eigenvalues(
        |x, y| kernel(spec.parity, x, y),
        0.0,
        PI * spec.t,
        spec.quad_order,
    );
    clip_unit(raw)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SineKernelSpectrum {
    pub t: f64,
    /// `λ₀, λ₂, λ₄, …`
    pub even_eigs: Vec<f64>,
    /// `λ₁, λ₃, λ₅, …`
    pub odd_eigs: Vec<f64>,
    pub merged: Vec<f64>,
}

impl SineKernelSpectrum {
    /// Largest violation of `λ₀ ≥ λ₁ ≥ …` when the two families are
    /// interleaved by index.
    pub fn interleaving_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        let mut prev = f64::INFINITY;
        for (e, o) in self.even_eigs.iter().zip(&self.odd_eigs) {
            worst = worst.max(e - prev).max(o - e);
            prev = *o;
        }
        worst
    }
}

pub fn sine_kernel_spectrum(t: f64, quad_order: usize) -> Result<SineKernelSpectrum> {
    let even_eigs = sine_kernel_eigs(KernelSpec {
        parity: Parity::Even,
        t,
        quad_order,
    })?;
    let odd_eigs = sine_kernel_eigs(KernelSpec {
        parity: Parity::Odd,
        t,
        quad_order,
    })?;
    let mut merged: Vec<f64> = even_eigs.iter().chain(&odd_eigs).copied().collect();
    merged.sort_by(|a, b| b.total_cmp(a));
    Ok(SineKernelSpectrum {
        t,
        even_eigs,
        odd_eigs,
        merged,
    })
}

/// `Σ log(1 − λ)` over eigenvalues at least `1e-16`.
pub fn log_det_from_eigs(eigs: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for &lam in eigs {
        if lam >= 1.0 - ONE_MARGIN {
            return Err(Error::EigenvalueAtOne(lam));
        }
        if lam >= NEGLIGIBLE_EIG {
            acc += (-lam).ln_1p();
        }
    }
    Ok(acc)
}

/// `log F±(t) = log det(1 − K±)` on `[0, πt]`.
pub fn fredholm_log_f(parity: Parity, t: f64, quad_order: usize) -> Result<f64> {
    log_det_from_eigs(&sine_kernel_eigs(KernelSpec {
        parity,
        t,
        quad_order,
    })?)
}

/// Large-`t` expansion of `log F±`:
/// `−τ²/4 ∓ τ/2 − (1/8) log τ + (1/24 ± 1/4) log 2 + (3/2) ζ'(−1)`, `τ = πt`.
pub fn asymptotic_log_f(parity: Parity, t: f64) -> f64 {
    let s = parity.sign();
    let tau = PI * t;
    -tau * tau / 4.0 - s * tau / 2.0 - tau.ln() / 8.0
        + (1.0 / 24.0 + s / 4.0) * 2f64.ln()
        + 1.5 * ZETA_PRIME_MINUS_1
}

/// Large-`t` expansion of `log F = log F₊ + log F₋`:
/// `−τ²/2 − (1/4) log τ + (1/12) log 2 + 3 ζ'(−1)`.
pub fn asymptotic_log_f_full(t: f64) -> f64 {
    let tau = PI * t;
    -tau * tau / 2.0 - tau.ln() / 4.0 + 2f64.ln() / 12.0 + 3.0 * ZETA_PRIME_MINUS_1
}

/// Three-point second derivative on a uniform grid; endpoints dropped.
pub fn central_second_difference(values: &[f64], h: f64) -> Vec<f64> {
    values
        .windows(3)
        .map(|w| (w[0] - 2.0 * w[1] + w[2]) / (h * h))
        .collect()
}

/// `W(τ) = −2 d²/dτ² log F − 1` at the interior points of a uniform `t` grid.
/// Returns `(τ, W)` pairs.
pub fn w_from_log_f(t_grid: &[f64], log_f: &[f64]) -> Result<Vec<(f64, f64)>> {
    let h = uniform_step(t_grid)?;
    let d2 = central_second_difference(log_f, PI * h);
    Ok(t_grid[1..t_grid.len() - 1]
        .iter()
        .zip(d2)
        .map(|(&t, d)| (PI * t, -2.0 * d - 1.0))
        .collect())
}

fn uniform_step(t_grid: &[f64]) -> Result<f64> {
    if t_grid.len() < 5 {
        return Err(Error::PreconditionViolated(
            "the t grid needs at least 5 points",
        ));
    }
    let h = (t_grid[t_grid.len() - 1] - t_grid[0]) / (t_grid.len() - 1) as f64;
    if !(h > 0.0 && h <= 0.05 + 1e-12) {
        return Err(Error::PreconditionViolated(
            "the t grid spacing must lie in (0, 0.05]",
        ));
    }
    if t_grid
        .windows(2)
        .any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0))
    {
        return Err(Error::PreconditionViolated("the t grid must be uniform"));
    }
    Ok(h)
}

/// `W±(τ)` reconstructed from computed Fredholm determinants.
pub fn reconstruct_w(parity: Parity, t_grid: &[f64], quad_order: usize) -> Result<Vec<(f64, f64)>> {
    uniform_step(t_grid)?;
    let log_f = t_grid
        .iter()
        .map(|&t| fredholm_log_f(parity, t, quad_order))
        .collect::<Result<Vec<_>>>()?;
    w_from_log_f(t_grid, &log_f)
}

/// The additive constant `(1/24) log 2 + (3/2) ζ'(−1)`.
pub fn identity_alpha() -> f64 {
    2f64.ln() / 24.0 + 1.5 * ZETA_PRIME_MINUS_1
}

/// `log Δ±` from a given `log F±`:
/// `log F± + τ²/4 ± τ/2 + (1/8) log|τ ± 1/2| ∓ (1/4) log 2 − α`.
pub fn delta_identity_from_log_f(parity: Parity, t: f64, log_f: f64) -> Result<f64> {
    let s = parity.sign();
    let tau = PI * t;
    if parity == Parity::Odd && tau <= 0.5 {
        return Err(Error::TauTooSmall(tau));
    }
    Ok(
        log_f + tau * tau / 4.0 + s * tau / 2.0 + (tau + s * 0.5).abs().ln() / 8.0
            - s * 2f64.ln() / 4.0
            - identity_alpha(),
    )
}

pub fn delta_identity_residual(parity: Parity, t: f64, quad_order: usize) -> Result<f64> {
    if parity == Parity::Odd && PI * t <= 0.5 {
        return Err(Error::TauTooSmall(PI * t));
    }
    delta_identity_from_log_f(parity, t, fredholm_log_f(parity, t, quad_order)?)
}

/// Everything tabulated over one `t` grid. Per-point entries that are
/// undefined (grid endpoints for `W`, `τ ≤ 1/2` for the odd identity) are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct FredholmReport {
    pub quad_order: usize,
    pub t_grid: Vec<f64>,
    pub log_f_plus: Vec<f64>,
    pub log_f_minus: Vec<f64>,
    pub asym_residual_plus: Vec<f64>,
    pub asym_residual_minus: Vec<f64>,
    pub w_plus: Vec<Option<f64>>,
    pub w_minus: Vec<Option<f64>>,
    pub delta_identity_plus: Vec<Option<f64>>,
    pub delta_identity_minus: Vec<Option<f64>>,
}

/// `W±` columns are filled only when the grid qualifies for differentiation.
pub fn fredholm_report(t_grid: &[f64], quad_order: usize) -> Result<FredholmReport> {
    let mut plus = Vec::with_capacity(t_grid.len());
    let mut minus = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        check_limits(t, quad_order)?;
    }
    for &t in t_grid {
        plus.push(fredholm_log_f(Parity::Even, t, quad_order)?);
        minus.push(fredholm_log_f(Parity::Odd, t, quad_order)?);
    }
    let residuals = |parity, logs: &[f64]| -> Vec<f64> {
        t_grid
            .iter()
            .zip(logs)
            .map(|(&t, l)| l - asymptotic_log_f(parity, t))
            .collect()
    };
    let w_column = |logs: &[f64]| -> Vec<Option<f64>> {
        let mut col = alloc::vec![None; t_grid.len()];
        if let Ok(ws) = w_from_log_f(t_grid, logs) {
            for (slot, (_, w)) in col[1..].iter_mut().zip(ws) {
                *slot = Some(w);
            }
        }
        col
    };
    let delta_column = |parity, logs: &[f64]| -> Vec<Option<f64>> {
        t_grid
            .iter()
            .zip(logs)
            .map(|(&t, &l)| delta_identity_from_log_f(parity, t, l).ok())
            .collect()
    };
    Ok(FredholmReport {
        quad_order,
        t_grid: t_grid.to_vec(),
        asym_residual_plus: residuals(Parity::Even, &plus),
        asym_residual_minus: residuals(Parity::Odd, &minus),
        w_plus: w_column(&plus),
        w_minus: w_column(&minus),
        delta_identity_plus: delta_column(Parity::Even, &plus),
        delta_identity_minus: delta_column(Parity::Odd, &minus),
        log_f_plus: plus,
        log_f_minus: minus,
    })
}

/// `η± = ∓ (1/2) arctan(1/k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShift {
    pub k: f64,
    pub eta_even: f64,
    pub eta_odd: f64,
}

impl PhaseShift {
    /// `(k tan 2η₊ + 1, k tan 2η₋ − 1)`, both zero analytically.
    pub fn tan_residuals(&self) -> (f64, f64) {
        (
            self.k * (2.0 * self.eta_even).tan() + 1.0,
            self.k * (2.0 * self.eta_odd).tan() - 1.0,
        )
    }
}

pub fn phase_shift(k: f64) -> Result<PhaseShift> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::NonPositiveK(k));
    }
    let half = 0.5 * k.recip().atan();
    Ok(PhaseShift {
        k,
        eta_even: -half,
        eta_odd: half,
    })
}

/// Closed forms from the Jost analysis, principal branches throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostClosedForms {
    pub k: f64,
    /// `(k / (k + i))^{1/2}`
    pub a_odd: Complex64,
    /// `((k − i) / (k + i))^{1/4}`
    pub exp_ieta_even: Complex64,
}

impl JostClosedForms {
    /// `(k² / (k² + 1))^{1/4}`
    pub fn a_odd_modulus(&self) -> f64 {
        (self.k * self.k / (self.k * self.k + 1.0)).powf(0.25)
    }
}

pub fn jost_forms(k: f64) -> Result<JostClosedForms> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::NonPositiveK(k));
    }
    let i = Complex64::new(0.0, 1.0);
    let kc = Complex64::new(k, 0.0);
    Ok(JostClosedForms {
        k,
        a_odd: (kc / (kc + i)).sqrt(),
        exp_ieta_even: ((kc - i) / (kc + i)).powf(0.25),
    })
}
