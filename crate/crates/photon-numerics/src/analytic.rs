//! Bundled analytic amplitude families.
//!
//! Every verification state carries a closed-form definition of its helicity
//! amplitudes c_σ(k), so it can be sampled on any grid and — crucially for
//! boost experiments — re-evaluated exactly at Lorentz-mapped momenta
//! without interpolation.

use crate::linalg::Vec3;
use crate::polarization::Helicity;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Closed-form helicity amplitudes c_σ(k).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AnalyticState {
    /// Gaussian ball exp(-|k - center|²/width²) with fixed complex weight
    /// per helicity.
    Gaussian {
        center: Vec3,
        width: f64,
        amp_plus: Complex64,
        amp_minus: Complex64,
    },
    /// Paraxial beam along +ẑ: c_σ = exp(iσφ(k)) exp(-|k - k₀ẑ|²/width²)
    /// for the selected helicity. The azimuthal phase makes the product
    /// c_σ e_σ smooth across the beam axis, matching the χ = -φ detection
    /// convention.
    Paraxial {
        k0: f64,
        width: f64,
        sigma: Helicity,
    },
    /// Isotropic radial shell exp(-(|k| - k0)²/width²), single helicity.
    RadialShell {
        k0: f64,
        width: f64,
        sigma: Helicity,
    },
    /// Localized detection state: c_σ' = δ_{σ'σ} exp(-iσχ0 - ik·r0 + iω t0)
    /// / (2π)^(3/2). Equal modulus at every k.
    Localized {
        r0: Vec3,
        t0: f64,
        sigma: Helicity,
        chi0: f64,
    },
    /// Phase-modulated packet exp(ik·shift) exp(-|k - center|²/width²);
    /// the modulation displaces the position expectation to -shift.
    ModulatedGaussian {
        shift: Vec3,
        center: Vec3,
        width: f64,
        sigma: Helicity,
    },
    /// Radial polynomial in k² times a Gaussian:
    /// (Σ_j coeffs[j] k^(2j)) exp(-k²/width²), single helicity.
    RadialPolyGaussian {
        coeffs: Vec<f64>,
        width: f64,
        sigma: Helicity,
    },
    /// Deterministic pseudo-random superposition of Gaussian bumps in both
    /// helicities; the seed fixes every coefficient.
    RandomSuperposition {
        seed: u64,
        n_terms: usize,
        scale: f64,
    },
}

/// (2π)^(-3/2), the plane-wave normalization shared with the synthesis
/// routines.
pub const INV_TWO_PI_POW32: f64 = 0.06349363593424097;

impl AnalyticState {
    /// Two-helicity Gaussian with amplitudes e^{-iσχ'}/√2.
    pub fn two_helicity(center: Vec3, width: f64, chi_prime: f64) -> Self {
        let amp =
            |sigma: f64| Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, -sigma * chi_prime);
        AnalyticState::Gaussian {
            center,
            width,
            amp_plus: amp(1.0),
            amp_minus: amp(-1.0),
        }
    }

    /// Evaluate c_σ(k).
    pub fn evaluate(&self, sigma: Helicity, k: Vec3) -> Complex64 {
        match self {
            AnalyticState::Gaussian { center, width, amp_plus, amp_minus } => {
                let d = k - *center;
                let env = (-d.dot(d) / (width * width)).exp();
                let amp = match sigma {
                    Helicity::Plus => *amp_plus,
                    Helicity::Minus => *amp_minus,
                };
                amp * env
            }
            AnalyticState::Paraxial { k0, width, sigma: s } => {
                if sigma != *s {
                    return Complex64::new(0.0, 0.0);
                }
                let d = k - Vec3::new(0.0, 0.0, *k0);
                let env = (-d.dot(d) / (width * width)).exp();
                let phi = k.y.atan2(k.x);
                Complex64::from_polar(env, sigma.sign() * phi)
            }
            AnalyticState::RadialShell { k0, width, sigma: s } => {
                if sigma != *s {
                    return Complex64::new(0.0, 0.0);
                }
                let d = k.norm() - k0;
                Complex64::new((-d * d / (width * width)).exp(), 0.0)
            }
            AnalyticState::Localized { r0, t0, sigma: s, chi0 } => {
                if sigma != *s {
                    return Complex64::new(0.0, 0.0);
                }
                let phase = -sigma.sign() * chi0 - k.dot(*r0) + k.norm() * t0;
                Complex64::from_polar(INV_TWO_PI_POW32, phase)
            }
            AnalyticState::ModulatedGaussian { shift, center, width, sigma: s } => {
                if sigma != *s {
                    return Complex64::new(0.0, 0.0);
                }
                let d = k - *center;
                let env = (-d.dot(d) / (width * width)).exp();
                Complex64::from_polar(env, k.dot(*shift))
            }
            AnalyticState::RadialPolyGaussian { coeffs, width, sigma: s } => {
                if sigma != *s {
                    return Complex64::new(0.0, 0.0);
                }
                let k2 = k.dot(k);
                let mut poly = 0.0;
                let mut pow = 1.0;
                for &c in coeffs {
                    poly += c * pow;
                    pow *= k2;
                }
                Complex64::new(poly * (-k2 / (width * width)).exp(), 0.0)
            }
            AnalyticState::RandomSuperposition { seed, n_terms, scale } => {
                let mut rng = SplitMix64::new(*seed ^ 0x9e37_79b9_7f4a_7c15);
                let mut total = Complex64::new(0.0, 0.0);
                for _ in 0..*n_terms {
                    // Same bump parameters for both helicities, then a
                    // helicity-dependent complex weight.
                    let cx = rng.uniform(-1.5, 1.5) * scale;
                    let cy = rng.uniform(-1.5, 1.5) * scale;
                    let cz = rng.uniform(-1.5, 1.5) * scale;
                    let w = rng.uniform(0.7, 1.6) * scale;
                    let a_plus = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                    let a_minus = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                    let amp = match sigma {
                        Helicity::Plus => a_plus,
                        Helicity::Minus => a_minus,
                    };
                    let d = k - Vec3::new(cx, cy, cz);
                    total += amp * (-d.dot(d) / (w * w)).exp();
                }
                total
            }
        }
    }

    /// The single helicity this state occupies, if it occupies only one.
    pub fn single_helicity(&self) -> Option<Helicity> {
        match self {
            AnalyticState::Gaussian { amp_plus, amp_minus, .. } => {
                match (amp_plus.norm() == 0.0, amp_minus.norm() == 0.0) {
                    (false, true) => Some(Helicity::Plus),
                    (true, false) => Some(Helicity::Minus),
                    _ => None,
                }
            }
            AnalyticState::Paraxial { sigma, .. }
            | AnalyticState::RadialShell { sigma, .. }
            | AnalyticState::Localized { sigma, .. }
            | AnalyticState::ModulatedGaussian { sigma, .. }
            | AnalyticState::RadialPolyGaussian { sigma, .. } => Some(*sigma),
            AnalyticState::RandomSuperposition { .. } => None,
        }
    }

    /// Exact full-space QED norm² when a closed form exists.
    ///
    /// Available for the Gaussian family: Σ_σ ∫ |c_σ|² d³k
    /// = (Σ_σ |amp_σ|²) (π/2)^(3/2) width³.
    pub fn closed_form_norm_sq(&self) -> Option<f64> {
        match self {
            AnalyticState::Gaussian { width, amp_plus, amp_minus, .. } => {
                let w2 = amp_plus.norm_sqr() + amp_minus.norm_sqr();
                Some(w2 * (PI / 2.0).powf(1.5) * width.powi(3))
            }
            AnalyticState::ModulatedGaussian { width, .. } => {
                Some((PI / 2.0).powf(1.5) * width.powi(3))
            }
            _ => None,
        }
    }
}

/// SplitMix64, the usual 64-bit mixing generator; deterministic across
/// platforms so seeded reports stay byte-identical.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform double in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
