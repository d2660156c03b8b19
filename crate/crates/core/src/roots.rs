//! Simultaneous complex root finding (Aberth–Ehrlich iteration).

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{squarefree_decomposition, IntPoly};
use crate::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Iteration budget and stopping rule for the root finder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Relative step size at which a root counts as converged.
    pub tolerance: f64,
    /// Seed for the perturbation of the starting circle.
    pub seed: u64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            max_iterations: 200,
            tolerance: 1e-12,
            seed: 0x5eed,
        }
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// All complex roots of a polynomial given by complex coefficients, lowest first.
///
/// Intended for square-free input; a multiple root converges only linearly
/// and will usually exhaust the budget.
pub fn aberth(coeffs: &[Complex64], config: &RootConfig) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let n = match coeffs.len() {
        0 => return Err(Error::domain("roots of the zero polynomial")),
        l => l - 1,
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara-style radius keeps the starting circle around every root.
    let radius = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3)
        * 2.0;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let jitter = 0.1 * (unit_f64(&mut rng) - 0.5);
            let angle = 2.0 * core::f64::consts::PI * (k as f64 + 0.5 + jitter) / n as f64 + 0.4;
            Complex64::from_polar(radius * (0.5 + 0.5 * unit_f64(&mut rng)), angle)
        })
        .collect();

    for _ in 0..config.max_iterations {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step <= config.tolerance {
            return Ok(z);
        }
    }
    Err(Error::NumericFailure {
        iterations: config.max_iterations,
    })
}

fn to_complex(p: &IntPoly) -> Vec<Complex64> {
    p.coeffs()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

/// Complex roots of an integer polynomial, each repeated by its multiplicity.
///
/// Multiplicities come from an exact square-free decomposition, so the
/// numeric iteration only ever sees simple roots.
pub fn roots_with_multiplicity(p: &IntPoly, config: &RootConfig) -> Result<Vec<Complex64>> {
    let dec = squarefree_decomposition(p)?;
    let mut out = Vec::new();
    for (factor, mult) in &dec.factors {
        let roots = aberth(&to_complex(factor), config)?;
        for r in roots {
            for _ in 0..*mult {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Evaluates an integer polynomial at a complex point.
pub fn eval_complex(p: &IntPoly, z: Complex64) -> Complex64 {
    horner(&to_complex(p), z).0
}

/// Expands `scale * prod (y - r)` into coefficients, lowest first.
pub fn expand_from_roots(scale: f64, roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = alloc::vec![Complex64::new(scale, 0.0)];
    for &r in roots {
        let mut next = alloc::vec![Complex64::zero(); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}
