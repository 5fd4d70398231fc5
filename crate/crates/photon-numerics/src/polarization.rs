//! Spin-1 rotation algebra and polarization unit vectors.
//!
//! Conventions (fixed repo-wide):
//!
//! ```text
//! k̂ = (sin θ cos φ, sin θ sin φ, cos θ)
//! θ̂ = (cos θ cos φ, cos θ sin φ, -sin θ)
//! φ̂ = (-sin φ, cos φ, 0)
//! e_σ^(χ) = (θ̂ + iσ φ̂) exp(-iσχ) / √2,   σ = ±1,   e₀ = k̂
//! ```
//!
//! The rotation `D(θ, φ, χ) = R_k(χ) R_z(φ) R_y(θ)` maps x̂ → θ̂, ŷ → φ̂,
//! ẑ → k̂ and then turns the transverse pair about k̂ by χ. The transverse
//! unit vectors are genuinely discontinuous along ±ẑ, so direct pole
//! queries are an error; grid-facing code uses the lattice convention
//! φ = atan2(k_y, k_x) (= 0 on the axis) instead.

use crate::error::{Error, Result};
use crate::linalg::{CVec3, Mat3, Vec3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

/// Photon helicity σ = ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub const BOTH: [Helicity; 2] = [Helicity::Plus, Helicity::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Helicity {
        match self {
            Helicity::Plus => Helicity::Minus,
            Helicity::Minus => Helicity::Plus,
        }
    }
}

/// Gauge-angle convention χ(k) for the transverse pair.
///
/// `MinusPhi` gives e_σ(k ẑ) = (x̂ + iσŷ)/√2, the natural choice for
/// paraxial beams along +ẑ. `Custom` carries a per-node table; it is valid
/// for scalar products but rejected by the position operator, which needs a
/// differentiable χ.
#[derive(Debug, Clone)]
pub enum ChiSpec {
    Zero,
    MinusPhi,
    Custom(Arc<Vec<f64>>),
}

impl ChiSpec {
    /// χ at a node with wave vector `k` and flat index `idx`.
    pub fn value(&self, idx: usize, k: Vec3) -> f64 {
        match self {
            ChiSpec::Zero => 0.0,
            ChiSpec::MinusPhi => -k.y.atan2(k.x),
            ChiSpec::Custom(table) => table[idx],
        }
    }

    /// Phase factor exp(iσχ) at a node.
    pub fn phase(&self, sigma: Helicity, idx: usize, k: Vec3) -> Complex64 {
        Complex64::from_polar(1.0, sigma.sign() * self.value(idx, k))
    }
}

/// Transverse + longitudinal unit vectors at one k direction.
#[derive(Debug, Clone, Copy)]
pub struct PolarizationTriad {
    pub e_plus: CVec3,
    pub e_minus: CVec3,
    /// Longitudinal unit vector, equal to k̂.
    pub e_long: Vec3,
    pub chi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl PolarizationTriad {
    pub fn helicity(&self, sigma: Helicity) -> CVec3 {
        match sigma {
            Helicity::Plus => self.e_plus,
            Helicity::Minus => self.e_minus,
        }
    }
}

/// Rotation matrix with its Euler angles (φ, θ, χ).
#[derive(Debug, Clone, Copy)]
pub struct RotationMatrix {
    pub matrix: Mat3,
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
}

/// Spin-1 generators in the vector representation, (S_i)_{jl} = -i ε_{ijl}.
pub fn spin1_generators() -> [Mat3; 3] {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    let sx = Mat3 {
        m: [[z, z, z], [z, z, -i], [z, i, z]],
    };
    let sy = Mat3 {
        m: [[z, z, i], [z, z, z], [-i, z, z]],
    };
    let sz = Mat3 {
        m: [[z, -i, z], [i, z, z], [z, z, z]],
    };
    [sx, sy, sz]
}

fn rot_y(theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    Mat3::from_real([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
}

fn rot_z(phi: f64) -> Mat3 {
    let (s, c) = phi.sin_cos();
    Mat3::from_real([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
}

/// Rodrigues rotation about a unit axis.
fn rot_axis(axis: Vec3, angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    let (x, y, z) = (axis.x, axis.y, axis.z);
    let one_c = 1.0 - c;
    Mat3::from_real([
        [c + x * x * one_c, x * y * one_c - z * s, x * z * one_c + y * s],
        [y * x * one_c + z * s, c + y * y * one_c, y * z * one_c - x * s],
        [z * x * one_c - y * s, z * y * one_c + x * s, c + z * z * one_c],
    ])
}

/// Euler rotation `exp(-i S_k χ) exp(-i S_z φ) exp(-i S_y θ)` in the vector
/// representation. The χ factor rotates about the image direction k̂.
pub fn rotation_d(theta: f64, phi: f64, chi: f64) -> RotationMatrix {
    let khat = Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
    let matrix = rot_axis(khat, chi) * rot_z(phi) * rot_y(theta);
    RotationMatrix { matrix, theta, phi, chi }
}

/// Spherical unit vectors (θ̂, φ̂, k̂) for a direction.
pub fn spherical_unit_vectors(theta: f64, phi: f64) -> (Vec3, Vec3, Vec3) {
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (phi.sin(), phi.cos());
    let theta_hat = Vec3::new(ct * cp, ct * sp, -st);
    let phi_hat = Vec3::new(-sp, cp, 0.0);
    let k_hat = Vec3::new(st * cp, st * sp, ct);
    (theta_hat, phi_hat, k_hat)
}

/// Internal triad constructor; no pole check, used on lattice directions
/// where the atan2 convention fixes the branch.
pub(crate) fn triad_unchecked(theta: f64, phi: f64, chi: f64) -> PolarizationTriad {
    let (theta_hat, phi_hat, k_hat) = spherical_unit_vectors(theta, phi);
    let th = CVec3::from_real(theta_hat);
    let ph = CVec3::from_real(phi_hat);
    let i = Complex64::new(0.0, 1.0);
    let make = |sigma: f64| {
        let phase = Complex64::from_polar(FRAC_1_SQRT_2, -sigma * chi);
        (th + ph.scale(i * sigma)).scale(phase)
    };
    PolarizationTriad {
        e_plus: make(1.0),
        e_minus: make(-1.0),
        e_long: k_hat,
        chi,
        theta,
        phi,
    }
}

/// Triad at a lattice wave vector, using φ = atan2(k_y, k_x).
pub(crate) fn triad_at(k: Vec3, chi_spec: &ChiSpec, idx: usize) -> PolarizationTriad {
    let (theta, phi) = k.angles();
    triad_unchecked(theta, phi, chi_spec.value(idx, k))
}

const POLE_MARGIN: f64 = 1e-12;

/// Helicity polarization triad for the direction (θ, φ) with gauge angle χ.
pub fn polarization_vectors(theta: f64, phi: f64, chi: f64) -> Result<PolarizationTriad> {
    if !(theta > POLE_MARGIN && theta < std::f64::consts::PI - POLE_MARGIN) {
        return Err(Error::PoleSingularity { theta });
    }
    Ok(triad_unchecked(theta, phi, chi))
}

/// Real linear-polarization pair: e_R1 = (e₊ + e₋)/√2, e_R2 = (e₊ - e₋)/(i√2).
///
/// Equivalent closed forms e_R1 = θ̂ cos χ + φ̂ sin χ and
/// e_R2 = -θ̂ sin χ + φ̂ cos χ; the complex arithmetic is kept so tests can
/// verify the composition.
pub fn linear_polarization_vectors(theta: f64, phi: f64, chi: f64) -> Result<(Vec3, Vec3)> {
    let triad = polarization_vectors(theta, phi, chi)?;
    let inv_sqrt2 = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let inv_isqrt2 = Complex64::new(0.0, -FRAC_1_SQRT_2); // 1/(i√2)
    let r1 = (triad.e_plus + triad.e_minus).scale(inv_sqrt2);
    let r2 = (triad.e_plus - triad.e_minus).scale(inv_isqrt2);
    Ok((Vec3::new(r1.x.re, r1.y.re, r1.z.re), Vec3::new(r2.x.re, r2.y.re, r2.z.re)))
}
