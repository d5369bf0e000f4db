//! Plane-wave amplitudes and scattering matrices.
//!
//! Outside `[-a, a]` the wavefunction is `A e^{ikx} + B e^{-ikx}` on the left
//! and `C e^{ikx} + D e^{-ikx}` on the right. The S-matrix maps incoming to
//! outgoing amplitudes, `(B, C)ᵀ = S (A, D)ᵀ`.

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::potential::{validate, EvaluatedPotential, PotentialSpec};
use crate::propagate::{fundamental_pair, BoundaryData, WaveTrace};
use crate::units::{Energy, WaveNumber};

const DEGENERATE_T22: f64 = 1e-12;
const SINGULAR_REL: f64 = 1e-12;

fn i_unit() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// Incoming-left `A`, outgoing-left `B`, outgoing-right `C`, incoming-right `D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeQuad {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl AmplitudeQuad {
    /// `|A|² + |D|² − |B|² − |C|²`; zero for a real potential at `E > 0`.
    pub fn flux_imbalance(&self) -> f64 {
        self.a.norm_sqr() + self.d.norm_sqr() - self.b.norm_sqr() - self.c.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrix {
    pub s11: Complex64,
    pub s12: Complex64,
    pub s21: Complex64,
    pub s22: Complex64,
    pub k: f64,
    pub half_width: f64,
    /// `max(|s11 − s22|, |s12 − s21|)` before symmetrization.
    pub parity_residual: f64,
}

impl SMatrix {
    /// Records the raw parity asymmetry, then stores the symmetrized average.
    fn symmetrized(raw: [[Complex64; 2]; 2], k: f64, half_width: f64) -> Self {
        let parity_residual = (raw[0][0] - raw[1][1])
            .norm()
            .max((raw[0][1] - raw[1][0]).norm());
        let diag = (raw[0][0] + raw[1][1]) * 0.5;
        let off = (raw[0][1] + raw[1][0]) * 0.5;
        Self {
            s11: diag,
            s12: off,
            s21: off,
            s22: diag,
            k,
            half_width,
            parity_residual,
        }
    }

    fn parity_form(diag: Complex64, off: Complex64, k: f64, half_width: f64) -> Self {
        Self {
            s11: diag,
            s12: off,
            s21: off,
            s22: diag,
            k,
            half_width,
            parity_residual: 0.0,
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        [[self.s11, self.s12], [self.s21, self.s22]]
    }

    /// `max |(S†S − I)_ij|`.
    pub fn unitarity_residual(&self) -> f64 {
        let s = self.entries();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = s[0][i].conj() * s[0][j] + s[1][i].conj() * s[1][j];
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn max_entry_diff(&self, other: &SMatrix) -> f64 {
        let (a, b) = (self.entries(), other.entries());
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((a[i][j] - b[i][j]).norm());
            }
        }
        worst
    }

    pub fn reflection_probability(&self) -> f64 {
        self.s11.norm_sqr()
    }

    pub fn transmission_probability(&self) -> f64 {
        self.s21.norm_sqr()
    }

    /// Eigenvalues `s11 ± s12` of the parity-symmetric matrix: the even and
    /// odd channel phases.
    pub fn parity_channels(&self) -> (Complex64, Complex64) {
        (self.s11 + self.s12, self.s11 - self.s12)
    }
}

/// Maps left amplitudes `(A, B)` to right amplitudes `(C, D)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub t11: Complex64,
    pub t12: Complex64,
    pub t21: Complex64,
    pub t22: Complex64,
    pub k: f64,
    pub half_width: f64,
}

impl TransferMatrix {
    pub fn det(&self) -> Complex64 {
        self.t11 * self.t22 - self.t12 * self.t21
    }

    pub fn apply(&self, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
        (self.t11 * a + self.t12 * b, self.t21 * a + self.t22 * b)
    }

    pub fn smatrix(&self) -> Result<SMatrix> {
        if self.t22.norm() < DEGENERATE_T22 {
            return Err(Error::DegenerateTransfer(self.t22.norm()));
        }
        // left incidence (D = 0) and right incidence (A = 0), solved separately
        let s11 = -self.t21 / self.t22;
        let s21 = self.det() / self.t22;
        let s12 = Complex64::new(1.0, 0.0) / self.t22;
        let s22 = self.t12 / self.t22;
        Ok(SMatrix::symmetrized(
            [[s11, s12], [s21, s22]],
            self.k,
            self.half_width,
        ))
    }
}

/// Matching of the exterior plane waves to `ψ`, `ψ'` at `x = ∓a`.
pub fn amplitudes_from_boundary(bd: &BoundaryData, k: WaveNumber, a: f64) -> AmplitudeQuad {
    let k = k.value();
    let ik = i_unit() * k;
    let up = Complex64::from_polar(0.5, k * a);
    let down = Complex64::from_polar(0.5, -k * a);
    AmplitudeQuad {
        a: up * (bd.psi_left + bd.dpsi_left / ik),
        b: down * (bd.psi_left - bd.dpsi_left / ik),
        c: down * (bd.psi_right + bd.dpsi_right / ik),
        d: up * (bd.psi_right - bd.dpsi_right / ik),
    }
}

/// Transfer matrix assembled from the fundamental pair at `x = a`.
pub fn transfer_matrix(
    pot: &EvaluatedPotential,
    energy: Energy,
    steps: usize,
) -> Result<TransferMatrix> {
    let (u1, u2) = fundamental_pair(pot, energy, steps)?;
    Ok(transfer_from_pair(&u1, &u2, energy.wavenumber()))
}

fn transfer_from_pair(u1: &WaveTrace, u2: &WaveTrace, k: WaveNumber) -> TransferMatrix {
    let a = u1.half_width();
    let (b1, b2) = (u1.boundary(), u2.boundary());
    let kv = k.value();
    let ik = i_unit() * kv;
    let column = |amp_a: Complex64, amp_b: Complex64| {
        let psi = amp_a * Complex64::from_polar(1.0, -kv * a)
            + amp_b * Complex64::from_polar(1.0, kv * a);
        let dpsi = ik
            * (amp_a * Complex64::from_polar(1.0, -kv * a)
                - amp_b * Complex64::from_polar(1.0, kv * a));
        let bd = BoundaryData {
            psi_left: psi,
            dpsi_left: dpsi,
            psi_right: psi * b1.psi_right + dpsi * b2.psi_right,
            dpsi_right: psi * b1.dpsi_right + dpsi * b2.dpsi_right,
        };
        let q = amplitudes_from_boundary(&bd, k, a);
        (q.c, q.d)
    };
    let (t11, t21) = column(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let (t12, t22) = column(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    TransferMatrix {
        t11,
        t12,
        t21,
        t22,
        k: kv,
        half_width: a,
    }
}

pub fn smatrix_via_transfer(
    pot: &EvaluatedPotential,
    energy: Energy,
    steps: usize,
) -> Result<SMatrix> {
    transfer_matrix(pot, energy, steps)?.smatrix()
}

/// Amplitude quads of the two fundamental solutions.
pub fn fundamental_quads(
    pot: &EvaluatedPotential,
    energy: Energy,
    steps: usize,
) -> Result<[AmplitudeQuad; 2]> {
    let (u1, u2) = fundamental_pair(pot, energy, steps)?;
    let k = energy.wavenumber();
    let a = u1.half_width();
    Ok([
        amplitudes_from_boundary(&u1.boundary(), k, a),
        amplitudes_from_boundary(&u2.boundary(), k, a),
    ])
}

/// Solves `B = s11 A + s12 D`, `C = s21 A + s22 D` stacked over two
/// independent quads, then imposes parity by averaging.
pub fn smatrix_via_eq11(
    q1: &AmplitudeQuad,
    q2: &AmplitudeQuad,
    k: WaveNumber,
    half_width: f64,
) -> Result<SMatrix> {
    // [B1 B2; C1 C2] = S [A1 A2; D1 D2]
    let det = q1.a * q2.d - q2.a * q1.d;
    let scale =
        (q1.a.norm_sqr() + q1.d.norm_sqr()).sqrt() * (q2.a.norm_sqr() + q2.d.norm_sqr()).sqrt();
    if !(det.norm() >= SINGULAR_REL * scale) || scale == 0.0 {
        return Err(Error::SingularSystem);
    }
    let inv = [[q2.d / det, -q2.a / det], [-q1.d / det, q1.a / det]];
    let s11 = q1.b * inv[0][0] + q2.b * inv[1][0];
    let s12 = q1.b * inv[0][1] + q2.b * inv[1][1];
    let s21 = q1.c * inv[0][0] + q2.c * inv[1][0];
    let s22 = q1.c * inv[0][1] + q2.c * inv[1][1];
    Ok(SMatrix::symmetrized(
        [[s11, s12], [s21, s22]],
        k.value(),
        half_width,
    ))
}

/// The single-solution closed form with parity built in:
/// `s11 = (AB − CD)/(A² − D²)`, `s12 = (AC − BD)/(A² − D²)`.
///
/// Standing waves (`A = ±D`) make the denominator vanish.
pub fn smatrix_from_single_quad(
    q: &AmplitudeQuad,
    k: WaveNumber,
    half_width: f64,
) -> Result<SMatrix> {
    let denom = q.a * q.a - q.d * q.d;
    if single_quad_is_singular(q) {
        return Err(Error::SingularSystem);
    }
    let s11 = (q.a * q.b - q.c * q.d) / denom;
    let s12 = (q.a * q.c - q.b * q.d) / denom;
    Ok(SMatrix::parity_form(s11, s12, k.value(), half_width))
}

/// `|A² − D²| < 1e-12 (|A|² + |D|²)`.
pub fn single_quad_is_singular(q: &AmplitudeQuad) -> bool {
    let denom = q.a * q.a - q.d * q.d;
    let scale = q.a.norm_sqr() + q.d.norm_sqr();
    !(denom.norm() >= SINGULAR_REL * scale) || scale == 0.0
}

/// Closed form for `V = -v0` on `[-a, a]`, with `k = √E`, `l = √(E + v0)`.
pub fn analytic_square_well(v0: f64, a: f64, energy: Energy) -> Result<SMatrix> {
    if !(v0 >= 0.0 && v0.is_finite()) || !(a > 0.0 && a.is_finite()) {
        return Err(Error::PreconditionViolated(
            "square well needs v0 >= 0 and a > 0",
        ));
    }
    let e = energy.value();
    let k = e.sqrt();
    let l = (e + v0).sqrt();
    let (sin2la, cos2la) = (2.0 * l * a).sin_cos();
    let w = Complex64::from_polar(1.0, -2.0 * k * a)
        / Complex64::new(cos2la, -(k * k + l * l) / (2.0 * k * l) * sin2la);
    let diag = w * i_unit() * ((l * l - k * k) / (2.0 * k * l) * sin2la);
    Ok(SMatrix::parity_form(diag, w, k, a))
}

/// Closed form for `V = -α δ(x)`: `S = [[iβ, 1], [1, iβ]] / (1 − iβ)`, `β = α / 2k`.
pub fn analytic_delta(alpha: f64, energy: Energy) -> Result<SMatrix> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::PreconditionViolated("delta strength must be > 0"));
    }
    let k = energy.wavenumber().value();
    let beta = alpha / (2.0 * k);
    let denom = Complex64::new(1.0, -beta);
    let diag = Complex64::new(0.0, beta) / denom;
    let off = Complex64::new(1.0, 0.0) / denom;
    Ok(SMatrix::parity_form(diag, off, k, 0.0))
}

/// The delta potential as the limit of a well of depth `α/2ε` and half-width `ε`.
pub fn delta_as_well_limit(alpha: f64, energy: Energy, eps: f64, steps: usize) -> Result<SMatrix> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::PreconditionViolated("eps must lie in (0, 0.1]"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::PreconditionViolated("delta strength must be > 0"));
    }
    let pot = validate(&PotentialSpec::SquareWell {
        depth: alpha / (2.0 * eps),
        half_width: eps,
    })?;
    smatrix_via_transfer(&pot, energy, steps)
}
