use num_traits::Float;

use crate::error::{Error, Result};

/// `ζ'(−1) = 1/12 − ln A`, with `A` the Glaisher–Kinkelin constant.
pub const ZETA_PRIME_MINUS_1: f64 = -0.165_421_143_700_450_93;

pub const PI: f64 = core::f64::consts::PI;

/// Scattering energy in natural units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Energy(f64);

impl Energy {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::NonPositiveEnergy(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn wavenumber(self) -> WaveNumber {
        WaveNumber(self.0.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WaveNumber(f64);

impl WaveNumber {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::NonPositiveK(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn energy(self) -> Energy {
        Energy(self.0 * self.0)
    }
}

/// `k = √E` under `ħ = 1`, `2m = 1`.
pub fn wavenumber_from_energy(energy: f64) -> Result<WaveNumber> {
    Energy::new(energy).map(Energy::wavenumber)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_and_square_energies() {
        assert_eq!(wavenumber_from_energy(1.0).unwrap().value(), 1.0);
        assert_eq!(wavenumber_from_energy(4.0).unwrap().value(), 2.0);
    }

    #[test]
    fn zero_energy_is_rejected() {
        assert_eq!(
            wavenumber_from_energy(0.0),
            Err(Error::NonPositiveEnergy(0.0))
        );
        assert!(wavenumber_from_energy(-1.0).is_err());
        assert!(wavenumber_from_energy(f64::NAN).is_err());
    }

    // ln A from the Euler–Maclaurin expansion of ln(1^1 2^2 ... n^n).
    fn glaisher_log(n: u32) -> f64 {
        let nf = n as f64;
        let mut sum = 0.0;
        let mut comp = 0.0;
        for k in 1..=n {
            let term = k as f64 * (k as f64).ln() - comp;
            let t = sum + term;
            comp = (t - sum) - term;
            sum = t;
        }
        let lead = (nf * nf / 2.0 + nf / 2.0 + 1.0 / 12.0) * nf.ln() - nf * nf / 4.0;
        let tail =
            1.0 / (720.0 * nf.powi(2)) - 1.0 / (5040.0 * nf.powi(4)) + 1.0 / (10080.0 * nf.powi(6));
        sum - lead - tail
    }

    #[test]
    fn zeta_prime_matches_independent_evaluation() {
        let independent = 1.0 / 12.0 - glaisher_log(40);
        assert!(
            (independent - ZETA_PRIME_MINUS_1).abs() < 1e-12,
            "{independent}"
        );
    }

    proptest! {
        #[test]
        fn wavenumber_squares_back(e in 1e-6f64..1e6) {
            let k = wavenumber_from_energy(e).unwrap().value();
            prop_assert!((k * k - e).abs() <= 4.0 * f64::EPSILON * e);
        }
    }
}
