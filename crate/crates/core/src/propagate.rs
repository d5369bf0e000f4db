//! Numerov integration of `ψ'' = (V − E) ψ` across `[-a, a]`.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::EvaluatedPotential;
use crate::units::Energy;

pub const DEFAULT_STEPS: usize = 4096;
pub const MIN_STEPS: usize = 64;

const OVERFLOW_LIMIT: f64 = 1e150;
const STARTUP_SUBSTEPS: usize = 8;

/// `ψ` and `ψ'` at the matching points `x = ∓a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub psi_left: Complex64,
    pub dpsi_left: Complex64,
    pub psi_right: Complex64,
    pub dpsi_right: Complex64,
}

impl BoundaryData {
    pub fn max_abs_diff(&self, other: &BoundaryData) -> f64 {
        [
            self.psi_left - other.psi_left,
            self.dpsi_left - other.dpsi_left,
            self.psi_right - other.psi_right,
            self.dpsi_right - other.dpsi_right,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.norm()))
    }
}

/// A wavefunction sampled on the uniform grid `x_i = a (2i − N) / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveTrace {
    half_width: f64,
    psi: Vec<Complex64>,
    dpsi: Vec<Complex64>,
    energy: Energy,
}

impl WaveTrace {
    /// Builds a trace from given values and derivatives on the symmetric grid.
    pub fn new(
        half_width: f64,
        psi: Vec<Complex64>,
        dpsi: Vec<Complex64>,
        energy: Energy,
    ) -> Result<Self> {
        if psi.len() != dpsi.len() || psi.len() < 5 {
            return Err(Error::PreconditionViolated(
                "trace needs equal-length arrays of at least 5 points",
            ));
        }
        if !(half_width > 0.0) {
            return Err(Error::PreconditionViolated("half-width must be > 0"));
        }
        Ok(Self {
            half_width,
            psi,
            dpsi,
            energy,
        })
    }

    /// Builds a trace from values alone; derivatives come from
    /// fourth-order finite differences.
    pub fn from_values(half_width: f64, psi: Vec<Complex64>, energy: Energy) -> Result<Self> {
        if psi.len() < 5 {
            return Err(Error::PreconditionViolated("trace needs at least 5 points"));
        }
        let step = 2.0 * half_width / (psi.len() - 1) as f64;
        let dpsi = first_derivative(&psi, step, None);
        Self::new(half_width, psi, dpsi, energy)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.psi.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        grid_point(self.half_width, self.psi.len() - 1, i)
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.psi.len()).map(|i| self.x(i))
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn dpsi(&self) -> &[Complex64] {
        &self.dpsi
    }

    pub fn energy(&self) -> Energy {
        self.energy
    }

    pub fn boundary(&self) -> BoundaryData {
        let last = self.psi.len() - 1;
        BoundaryData {
            psi_left: self.psi[0],
            dpsi_left: self.dpsi[0],
            psi_right: self.psi[last],
            dpsi_right: self.dpsi[last],
        }
    }
}

fn grid_point(half_width: f64, steps: usize, i: usize) -> f64 {
    half_width * (2.0 * i as f64 - steps as f64) / steps as f64
}

/// Fourth-order first derivative on a uniform grid. `left` overrides the
/// value at the first point when it is known exactly.
fn first_derivative(f: &[Complex64], h: f64, left: Option<Complex64>) -> Vec<Complex64> {
    let n = f.len();
    let last = n - 1;
    let scale = 1.0 / (12.0 * h);
    let mut d = alloc::vec![Complex64::new(0.0, 0.0); n];
    d[0] = left.unwrap_or_else(|| {
        (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * scale
    });
    d[1] = (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * scale;
    for i in 2..last - 1 {
        d[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * scale;
    }
    d[last - 1] = (f[last] * 3.0 + f[last - 1] * 10.0 - f[last - 2] * 18.0 + f[last - 3] * 6.0
        - f[last - 4])
        * scale;
    d[last] = (f[last] * 25.0 - f[last - 1] * 48.0 + f[last - 2] * 36.0 - f[last - 3] * 16.0
        + f[last - 4] * 3.0)
        * scale;
    d
}

fn interior_potential(pot: &EvaluatedPotential) -> Result<&EvaluatedPotential> {
    if pot.is_delta() {
        Err(Error::PreconditionViolated(
            "a delta potential has no interior region to integrate",
        ))
    } else {
        Ok(pot)
    }
}

/// Integrates from `x = -a` with `ψ(-a) = psi0`, `ψ'(-a) = dpsi0`.
///
/// The first step is bootstrapped with sub-stepped RK4; the rest is
/// Numerov. Derivatives are recovered from the trace by fourth-order
/// finite differences, except at `-a` where `dpsi0` is exact.
pub fn integrate(
    pot: &EvaluatedPotential,
    energy: Energy,
    psi0: Complex64,
    dpsi0: Complex64,
    steps: usize,
) -> Result<WaveTrace> {
    let pot = interior_potential(pot)?;
    if steps < MIN_STEPS {
        return Err(Error::PreconditionViolated(
            "integration needs at least 64 steps",
        ));
    }
    let a = pot.half_width();
    let e = energy.value();
    let h = 2.0 * a / steps as f64;
    let coupling = |x: f64| pot.eval(x).unwrap_or(0.0) - e;

    let g: Vec<f64> = (0..=steps)
        .map(|i| coupling(grid_point(a, steps, i)))
        .collect();
    if let Some(i) = g.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample(i));
    }

    let mut psi = Vec::with_capacity(steps + 1);
    psi.push(psi0);
    psi.push(rk4_startup(&coupling, -a, h, psi0, dpsi0));

    // Numerov in summed form: with z = (1 − c g) ψ, carry the first
    // difference d_n = z_{n+1} − z_n instead of the three-term recurrence,
    // which accumulates round-off like steps².
    let c = h * h / 12.0;
    let mut z = psi[1] * (1.0 - c * g[1]);
    let mut d = z - psi[0] * (1.0 - c * g[0]);
    for n in 1..steps {
        d += psi[n] * (12.0 * c * g[n]);
        z += d;
        let next = z / (1.0 - c * g[n + 1]);
        if !(next.norm() <= OVERFLOW_LIMIT) {
            return Err(Error::Overflow(grid_point(a, steps, n + 1)));
        }
        psi.push(next);
    }
    let dpsi = first_derivative(&psi, h, Some(dpsi0));
    Ok(WaveTrace {
        half_width: a,
        psi,
        dpsi,
        energy,
    })
}

fn rk4_startup(
    coupling: &impl Fn(f64) -> f64,
    x0: f64,
    h: f64,
    psi0: Complex64,
    dpsi0: Complex64,
) -> Complex64 {
    let dt = h / STARTUP_SUBSTEPS as f64;
    let (mut y, mut dy) = (psi0, dpsi0);
    for s in 0..STARTUP_SUBSTEPS {
        let x = x0 + s as f64 * dt;
        let gm = coupling(x + 0.5 * dt);
        let (k1y, k1d) = (dy, y * coupling(x));
        let (k2y, k2d) = (dy + k1d * (0.5 * dt), (y + k1y * (0.5 * dt)) * gm);
        let (k3y, k3d) = (dy + k2d * (0.5 * dt), (y + k2y * (0.5 * dt)) * gm);
        let (k4y, k4d) = (dy + k3d * dt, (y + k3y * dt) * coupling(x + dt));
        y += (k1y + k2y * 2.0 + k3y * 2.0 + k4y) * (dt / 6.0);
        dy += (k1d + k2d * 2.0 + k3d * 2.0 + k4d) * (dt / 6.0);
    }
    y
}

/// Solutions with `(ψ, ψ')(-a) = (1, 0)` and `(0, 1)`.
pub fn fundamental_pair(
    pot: &EvaluatedPotential,
    energy: Energy,
    steps: usize,
) -> Result<(WaveTrace, WaveTrace)> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let u1 = integrate(pot, energy, one, zero, steps)?;
    let u2 = integrate(pot, energy, zero, one, steps)?;
    Ok((u1, u2))
}

/// `u1 u2' − u1' u2` at every grid point.
pub fn wronskian(u1: &WaveTrace, u2: &WaveTrace) -> Vec<Complex64> {
    u1.psi
        .iter()
        .zip(&u1.dpsi)
        .zip(u2.psi.iter().zip(&u2.dpsi))
        .map(|((p1, d1), (p2, d2))| p1 * d2 - d1 * p2)
        .collect()
}
