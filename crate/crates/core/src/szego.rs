//! Toeplitz determinants of the arc indicator symbol and their large-`n`
//! asymptotics.
//!
//! The matrices are extremely ill-conditioned (the smallest eigenvalue of the
//! 64×64 section at `α = π/2` is around `1e-47`), so rounding the entries to
//! f64 already destroys the determinant. Entries and pivots are therefore
//! computed in arbitrary precision, doubling the working precision until the
//! log-determinant settles.

use alloc::vec::Vec;
use astro_float::{BigFloat, Consts, RoundingMode};
use num_traits::Float;

use crate::error::{Error, Result};
use crate::spectral::{asymptotic_log_f_full, fredholm_log_f, Parity};
use crate::units::{PI, ZETA_PRIME_MINUS_1};

pub const MAX_N: usize = 512;
const START_BITS: usize = 128;
const MAX_BITS: usize = 16384;
const SETTLE_REL: f64 = 1e-12;
const RM: RoundingMode = RoundingMode::ToEven;

/// `f(θ) = 1` on `[α, 2π − α]` and `0` elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSymbol {
    alpha: f64,
}

impl ArcSymbol {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < PI) {
            return Err(Error::PreconditionViolated("alpha must lie in (0, π)"));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `c₀ = 1 − α/π`, `c_m = −sin(mα)/(πm)`; even in `m`.
    pub fn coefficient(&self, m: i64) -> f64 {
        if m == 0 {
            1.0 - self.alpha / PI
        } else {
            let m = m.unsigned_abs() as f64;
            -(m * self.alpha).sin() / (PI * m)
        }
    }

    fn big_coefficients(&self, n: usize, p: usize, cc: &mut Consts) -> Vec<BigFloat> {
        let alpha = BigFloat::from_f64(self.alpha, p);
        let pi = cc.pi(p, RM);
        let one = BigFloat::from_word(1, p);
        let mut out = Vec::with_capacity(n);
        out.push(one.sub(&alpha.div(&pi, p, RM), p, RM));
        for m in 1..n {
            let mb = BigFloat::from_word(m as u64, p);
            let s = mb.mul(&alpha, p, RM).sin(p, RM, cc);
            out.push(s.div(&pi.mul(&mb, p, RM), p, RM).neg());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzResult {
    pub n: usize,
    pub alpha: f64,
    pub log_det: f64,
    /// Large-`n` expansion `n² log cos(α/2) − (1/4) log(n sin(α/2)) + (1/12) log 2 + 3 ζ'(−1)`.
    pub asymptotic: f64,
    pub residual: f64,
    /// Working precision at which the result settled.
    pub precision_bits: usize,
}

pub fn toeplitz_asymptotic(alpha: f64, n: usize) -> f64 {
    let nf = n as f64;
    nf * nf * (alpha / 2.0).cos().ln() - (nf * (alpha / 2.0).sin()).ln() / 4.0
        + 2f64.ln() / 12.0
        + 3.0 * ZETA_PRIME_MINUS_1
}

/// Natural log of a positive finite big float, to f64 accuracy.
fn ln_positive(x: &BigFloat) -> Option<f64> {
    if !x.is_positive() || x.is_zero() {
        return None;
    }
    let (words, _, _, exponent, _) = x.as_raw_parts()?;
    let top = *words.last()?;
    // value = 0.m × 2^e with the leading mantissa word normalized
    let frac = top as f64 / 2f64.powi(64);
    Some(frac.ln() + exponent as f64 * 2f64.ln())
}

enum Pivots {
    Settled(f64),
    /// Index of the first non-positive pivot.
    Failed(usize),
}

/// `log det` as the sum of log LDLᵀ pivots. For a symmetric Toeplitz matrix
/// the pivots are the Levinson prediction errors, which costs O(n²).
fn levinson_log_det(c: &[BigFloat], p: usize) -> Pivots {
    let n = c.len();
    let mut err = c[0].clone();
    let mut log_det = match ln_positive(&err) {
        Some(l) => l,
        None => return Pivots::Failed(0),
    };
    let one = BigFloat::from_word(1, p);
    let mut a: Vec<BigFloat> = Vec::with_capacity(n);
    for k in 1..n {
        let mut acc = c[k].clone();
        for (j, aj) in a.iter().enumerate() {
            acc = acc.sub(&aj.mul(&c[k - 1 - j], p, RM), p, RM);
        }
        let kappa = acc.div(&err, p, RM);
        let mut next = Vec::with_capacity(k);
        for j in 0..a.len() {
            next.push(a[j].sub(&kappa.mul(&a[a.len() - 1 - j], p, RM), p, RM));
        }
        next.push(kappa.clone());
        a = next;
        err = err.mul(&one.sub(&kappa.mul(&kappa, p, RM), p, RM), p, RM);
        match ln_positive(&err) {
            Some(l) => log_det += l,
            None => return Pivots::Failed(k),
        }
    }
    Pivots::Settled(log_det)
}

/// `log det T_n` for the arc symbol, with precision doubled until two
/// successive results agree to `1e-12` relative.
pub fn toeplitz_log_det(symbol: ArcSymbol, n: usize) -> Result<ToeplitzResult> {
    if n == 0 || n > MAX_N {
        return Err(Error::PreconditionViolated("n must lie in [1, 512]"));
    }
    let mut cc = Consts::new()
        .map_err(|_| Error::PreconditionViolated("arbitrary-precision constants unavailable"))?;
    let mut previous: Option<f64> = None;
    let mut last_failure = 0;
    let mut p = START_BITS;
    while p <= MAX_BITS {
        let c = symbol.big_coefficients(n, p, &mut cc);
        match levinson_log_det(&c, p) {
            Pivots::Settled(value) => {
                if let Some(prev) = previous {
                    if (value - prev).abs() <= SETTLE_REL * value.abs().max(1.0) {
                        let asymptotic = toeplitz_asymptotic(symbol.alpha, n);
                        return Ok(ToeplitzResult {
                            n,
                            alpha: symbol.alpha,
                            log_det: value,
                            asymptotic,
                            residual: value - asymptotic,
                            precision_bits: p,
                        });
                    }
                }
                previous = Some(value);
            }
            Pivots::Failed(k) => {
                previous = None;
                last_failure = k;
            }
        }
        p *= 2;
    }
    Err(Error::NotPositiveDefinite(last_failure))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SzegoLimitReport {
    pub alpha: f64,
    pub n: usize,
    pub t: f64,
    pub log_det: f64,
    /// `log F₊(t) + log F₋(t)` from the sine-kernel route.
    pub log_f: f64,
    pub log_f_asymptotic: f64,
    pub gap_to_fredholm: f64,
    pub gap_to_asymptotic: f64,
}

/// Compares the Toeplitz route at `αn = 2πt` with the Fredholm route and
/// with the continuum expansion.
pub fn szego_limit_check(
    alpha: f64,
    n: usize,
    t: f64,
    quad_order: usize,
) -> Result<SzegoLimitReport> {
    if !(0.5..=3.0).contains(&t) {
        return Err(Error::PreconditionViolated("t must lie in [0.5, 3]"));
    }
    let target = 2.0 * PI * t;
    if (alpha * n as f64 - target).abs() > 1e-9 * target {
        return Err(Error::PreconditionViolated("alpha·n must equal 2πt"));
    }
    let toeplitz = toeplitz_log_det(ArcSymbol::new(alpha)?, n)?;
    let log_f =
        fredholm_log_f(Parity::Even, t, quad_order)? + fredholm_log_f(Parity::Odd, t, quad_order)?;
    let log_f_asymptotic = asymptotic_log_f_full(t);
    Ok(SzegoLimitReport {
        alpha,
        n,
        t,
        log_det: toeplitz.log_det,
        log_f,
        log_f_asymptotic,
        gap_to_fredholm: toeplitz.log_det - log_f,
        gap_to_asymptotic: toeplitz.log_det - log_f_asymptotic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cholesky_log_det;
    use crate::quadrature::GaussLegendre;
    use nalgebra::DMatrix;

    fn f64_oracle(symbol: ArcSymbol, n: usize) -> Option<f64> {
        let m = DMatrix::from_fn(n, n, |i, j| symbol.coefficient(i as i64 - j as i64));
        cholesky_log_det(m)
    }

    #[test]
    fn coefficients_match_quadrature() {
        let symbol = ArcSymbol::new(0.7).unwrap();
        let rule = GaussLegendre::new(200);
        let (xs, ws) = rule.on_interval(0.7, 2.0 * PI - 0.7);
        for m in 0..=64i64 {
            let q: f64 = xs
                .iter()
                .zip(&ws)
                .map(|(x, w)| w * (m as f64 * x).cos())
                .sum::<f64>()
                / (2.0 * PI);
            assert!((q - symbol.coefficient(m)).abs() < 1e-12, "m={m}");
            assert_eq!(symbol.coefficient(m), symbol.coefficient(-m));
        }
    }

    #[test]
    fn trivial_sizes() {
        for alpha in [0.1, 1.0, 3.0] {
            let r = toeplitz_log_det(ArcSymbol::new(alpha).unwrap(), 1).unwrap();
            assert!((r.log_det - (1.0 - alpha / PI).ln()).abs() < 1e-14);
        }
        let near_identity = toeplitz_log_det(ArcSymbol::new(1e-8).unwrap(), 16).unwrap();
        assert!(near_identity.log_det.abs() < 1e-6);
        assert!(near_identity.log_det <= 0.0);
    }

    #[test]
    fn agrees_with_double_precision_cholesky_when_well_conditioned() {
        let symbol = ArcSymbol::new(0.4).unwrap();
        for n in [2, 4, 8] {
            let exact = toeplitz_log_det(symbol, n).unwrap().log_det;
            let approx = f64_oracle(symbol, n).unwrap();
            assert!(
                (exact - approx).abs() < 1e-9 * exact.abs().max(1.0),
                "n={n}: {exact} vs {approx}"
            );
        }
    }

    #[test]
    fn residual_shrinks_toward_the_asymptote() {
        let symbol = ArcSymbol::new(PI / 2.0).unwrap();
        let r32 = toeplitz_log_det(symbol, 32).unwrap();
        let r64 = toeplitz_log_det(symbol, 64).unwrap();
        assert!(r64.residual.abs() < r32.residual.abs());
        assert!(r64.residual.abs() <= 0.1);
        // independent 100-digit reference
        assert!((r64.log_det + 1_420.957_000_508_36).abs() < 1e-8);
    }

    #[test]
    fn log_det_decreases_with_n() {
        let symbol = ArcSymbol::new(1.1).unwrap();
        let mut prev = 0.0;
        for n in 1..=12 {
            let l = toeplitz_log_det(symbol, n).unwrap().log_det;
            assert!(l < prev);
            prev = l;
        }
    }

    #[test]
    fn guards() {
        assert!(ArcSymbol::new(0.0).is_err() && ArcSymbol::new(PI).is_err());
        let symbol = ArcSymbol::new(1.0).unwrap();
        assert!(toeplitz_log_det(symbol, 0).is_err());
        assert!(toeplitz_log_det(symbol, 513).is_err());
        assert!(matches!(
            szego_limit_check(PI / 8.0, 17, 1.0, 100),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn toeplitz_and_fredholm_routes_approach_each_other() {
        // at fixed α the gap to the continuum expansion is dominated by the
        // finite-α difference between the two expansions, which is about
        // −(πtα)²/48 and grows with t; at fixed t it shrinks as α → 0
        let t1 = szego_limit_check(PI / 8.0, 16, 1.0, 128).unwrap();
        let t2 = szego_limit_check(PI / 8.0, 32, 2.0, 200).unwrap();
        for r in [&t1, &t2] {
            let predicted = toeplitz_asymptotic(r.alpha, r.n) - r.log_f_asymptotic;
            assert!((r.gap_to_asymptotic - predicted).abs() < 5e-3, "{r:?}");
        }
        let a = szego_limit_check(PI / 16.0, 64, 2.0, 200).unwrap();
        let b = szego_limit_check(PI / 32.0, 128, 2.0, 200).unwrap();
        assert!(a.gap_to_asymptotic.abs() < t2.gap_to_asymptotic.abs());
        assert!(b.gap_to_asymptotic.abs() < a.gap_to_asymptotic.abs());
        assert!(b.gap_to_fredholm.abs() < a.gap_to_fredholm.abs());
    }
}
