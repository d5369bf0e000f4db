//! Shared fixtures for the acceptance suite.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use symscat_core::potential::validate;
use symscat_core::{Energy, EvaluatedPotential, PotentialSpec};

/// `(v0, a, E)` over v0 ∈ {0.5, 2, 10}, a ∈ {0.5, 1}, E ∈ {0.25, 1, 4}.
pub fn well_grid() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for v0 in [0.5, 2.0, 10.0] {
        for a in [0.5, 1.0] {
            for e in [0.25, 1.0, 4.0] {
                out.push((v0, a, e));
            }
        }
    }
    out
}

/// Smooth symmetric potential on a 513-point grid plus an energy in [0.25, 4].
pub fn random_potential(rng: &mut ChaCha8Rng) -> (EvaluatedPotential, Energy) {
    let a = rng.gen_range(0.5..1.5);
    let c: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-4.0..4.0));
    let w = rng.gen_range(0.2..0.8) * a;
    let spec = PotentialSpec::sampled_from_fn(a, 513, |x| {
        c[0] + c[1] * (x / a).powi(2) + c[2] * (PI * x / a).cos() + c[3] * (-(x / w).powi(2)).exp()
    });
    (
        validate(&spec).unwrap(),
        Energy::new(rng.gen_range(0.25..4.0)).unwrap(),
    )
}
