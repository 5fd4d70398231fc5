//! Lorentz boosts of the 4-vector wave function.
//!
//! The α = +1/2 wave function embeds as a 4-vector with zero time
//! component in its rest frame (transverse gauge); a boost mixes the
//! components,
//!
//! ```text
//! Ψ'^μ(k') = Λ^μ_ν Ψ^ν(Λ⁻¹ k'),
//! ```
//!
//! and states are re-evaluated *analytically* at the mapped momenta — no
//! interpolation — so the measured invariance defect of
//! ∫ d³k/ω Φ^μ* g_μν Ψ^ν isolates pure quadrature error. Boosted-frame
//! integration re-grids with k_max inflated by e^|η|.
//!
//! Metric convention g = diag(-1, +1, +1, +1); boosts are passive
//! (ω' = ω cosh η - k_∥ sinh η).

use crate::analytic::AnalyticState;
use crate::error::{Error, Result};
use crate::grid::{build_spherical_grid, Grid, GridHandle};
use crate::linalg::{CVec3, Mat4, Vec3};
use crate::polarization::{triad_at, ChiSpec, Helicity};
use crate::sum::{sum_indexed, sum_indexed_real};
use crate::wavefunction::{FormExponent, WaveFunctionK};
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

/// Rapidity-parametrized boost along a unit direction.
#[derive(Debug, Clone, Copy)]
pub struct Boost {
    rapidity: f64,
    direction: Vec3,
    matrix: Mat4,
}

const MAX_RAPIDITY: f64 = 2.0;

impl Boost {
    /// Build a boost; |η| ≤ 2 is supported at default grid resolutions.
    pub fn new(rapidity: f64, direction: Vec3) -> Result<Boost> {
        if !rapidity.is_finite() || rapidity.abs() > MAX_RAPIDITY {
            return Err(Error::invalid_argument(format!(
                "rapidity {rapidity} outside the supported range |eta| <= {MAX_RAPIDITY} \
                 (larger boosts need documented resolution scaling)"
            )));
        }
        let n = direction.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::invalid_argument("boost direction must be a nonzero vector"));
        }
        let d = direction.scale(1.0 / n);
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut m = [[0.0; 4]; 4];
        m[0][0] = ch;
        for i in 0..3 {
            m[0][i + 1] = -sh * d[i];
            m[i + 1][0] = -sh * d[i];
            for j in 0..3 {
                m[i + 1][j + 1] = (ch - 1.0) * d[i] * d[j] + if i == j { 1.0 } else { 0.0 };
            }
        }
        Ok(Boost { rapidity, direction: d, matrix: Mat4 { m } })
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn inverse(&self) -> Boost {
        Boost::new(-self.rapidity, self.direction).expect("negated rapidity stays in range")
    }

    /// Map an on-shell wave vector: spatial part of Λ (|k|, k).
    pub fn map_wavevector(&self, k: Vec3) -> Vec3 {
        let v = self.matrix.apply([k.norm(), k.x, k.y, k.z]);
        Vec3::new(v[1], v[2], v[3])
    }
}

fn minkowski() -> Mat4 {
    let mut m = Mat4::identity();
    m.m[0][0] = -1.0;
    Mat4 { m: m.m }
}

/// Analytic closure carried by boosted fields: the rest-frame state plus
/// the net transformation applied so far.
#[derive(Debug, Clone)]
struct AnalyticSource {
    state: AnalyticState,
    scale: Complex64,
    /// Net Λ from the rest frame to this field's frame.
    lambda: Mat4,
    lambda_inv: Mat4,
}

impl AnalyticSource {
    /// Ψ^μ at an arbitrary on-shell wave vector of this frame.
    fn evaluate(&self, kprime: Vec3) -> [Complex64; 4] {
        let kp4 = [kprime.norm(), kprime.x, kprime.y, kprime.z];
        let k4 = self.lambda_inv.apply(kp4);
        let k = Vec3::new(k4[1], k4[2], k4[3]);
        let rest = rest_four_vector(&self.state, self.scale, k);
        self.lambda.apply_complex(rest)
    }
}

/// Rest-frame 4-vector sample (0, Ψ^(1/2)(k)) of an analytic state.
fn rest_four_vector(state: &AnalyticState, scale: Complex64, k: Vec3) -> [Complex64; 4] {
    let omega = k.norm();
    if omega == 0.0 {
        return [Complex64::new(0.0, 0.0); 4];
    }
    let triad = triad_at(k, &ChiSpec::Zero, 0);
    let v = (triad.e_plus.scale(state.evaluate(Helicity::Plus, k))
        + triad.e_minus.scale(state.evaluate(Helicity::Minus, k)))
    .scale(scale * omega.sqrt());
    [Complex64::new(0.0, 0.0), v.x, v.y, v.z]
}

/// 4-component wave function on a grid.
#[derive(Debug, Clone)]
pub struct FourVectorWF {
    grid: GridHandle,
    comps: Vec<[Complex64; 4]>,
    analytic: Option<AnalyticSource>,
}

/// Embed a transverse state at α = +1/2 with zero time component.
pub fn embed(psi: &WaveFunctionK) -> FourVectorWF {
    let half = psi.convert_alpha(FormExponent::PlusHalf);
    let comps: Vec<[Complex64; 4]> = (0..half.grid().len())
        .into_par_iter()
        .map(|i| {
            let v = half.vector_sample(i);
            [Complex64::new(0.0, 0.0), v.x, v.y, v.z]
        })
        .collect();
    let analytic = psi.analytic().map(|(state, scale)| AnalyticSource {
        state: state.clone(),
        scale: *scale,
        lambda: Mat4::identity(),
        lambda_inv: Mat4::identity(),
    });
    FourVectorWF { grid: Arc::clone(psi.grid()), comps, analytic }
}

impl FourVectorWF {
    pub fn grid(&self) -> &GridHandle {
        &self.grid
    }

    pub fn component(&self, idx: usize) -> [Complex64; 4] {
        self.comps[idx]
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    /// Max |k_μ Ψ^μ| over nodes (transversality of the embedding).
    pub fn max_onshell_contraction(&self) -> f64 {
        (0..self.grid.len())
            .map(|i| {
                let k = self.grid.kvec(i);
                let c = self.comps[i];
                let s = -k.norm() * c[0] + k.x * c[1] + k.y * c[2] + k.z * c[3];
                s.norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Spherical grid for the boosted frame: k_max inflated by e^|η|.
pub fn boosted_grid(grid: &Grid, boost: &Boost) -> Result<Grid> {
    let s = grid.as_spherical().map_err(|_| {
        Error::WrongGrid("boost integration re-grids spherically; embed the state on a spherical grid".into())
    })?;
    let (n_r, n_t, n_p) = s.shape();
    let k_max = s.k_max() * boost.rapidity().abs().exp();
    Ok(Grid::Spherical(build_spherical_grid(n_r, n_t, n_p, k_max, s.radial_rule())?))
}

/// Boost a 4-vector field onto a target grid, evaluating the analytic
/// amplitudes exactly at the mapped momenta.
pub fn boost_state(psi4: &FourVectorWF, boost: &Boost, target: GridHandle) -> Result<FourVectorWF> {
    let source = psi4.analytic.as_ref().ok_or_else(|| {
        Error::NeedsAnalyticState(
            "boost_state evaluates amplitudes at mapped momenta; sampled-only states would need \
             the interpolating variant (boost_state_interpolated)"
                .into(),
        )
    })?;
    let new_source = AnalyticSource {
        state: source.state.clone(),
        scale: source.scale,
        lambda: boost.matrix * source.lambda,
        lambda_inv: source.lambda_inv * boost.inverse().matrix,
    };
    let comps: Vec<[Complex64; 4]> = (0..target.len())
        .into_par_iter()
        .map(|i| new_source.evaluate(target.kvec(i)))
        .collect();
    Ok(FourVectorWF { grid: target, comps, analytic: Some(new_source) })
}

/// Trilinear-interpolation fallback for sampled-only states on Cartesian
/// grids (order 1; documented accuracy, off by default).
pub fn boost_state_interpolated(
    psi4: &FourVectorWF,
    boost: &Boost,
    target: GridHandle,
) -> Result<FourVectorWF> {
    let cart = psi4.grid.as_cartesian().map_err(|_| {
        Error::WrongGrid("interpolating boosts are implemented for Cartesian source grids only".into())
    })?;
    let inv = boost.inverse();
    let n = cart.n();
    let comps: Vec<[Complex64; 4]> = (0..target.len())
        .into_par_iter()
        .map(|i| {
            let kp = target.kvec(i);
            let k = inv.map_wavevector(kp);
            // Fractional lattice coordinates of the pre-image.
            let q = k - cart.center();
            let coord = |c: f64| (c + cart.k_max()) / cart.dk();
            let (fx, fy, fz) = (coord(q.x), coord(q.y), coord(q.z));
            let cell = |f: f64| -> Option<(usize, f64)> {
                let base = f.floor();
                if base < 0.0 || base as usize + 1 >= n {
                    None
                } else {
                    Some((base as usize, f - base))
                }
            };
            let (Some((ix, wx)), Some((iy, wy)), Some((iz, wz))) = (cell(fx), cell(fy), cell(fz))
            else {
                return [Complex64::new(0.0, 0.0); 4];
            };
            let mut out = [Complex64::new(0.0, 0.0); 4];
            for (dx, sx) in [(0, 1.0 - wx), (1, wx)] {
                for (dy, sy) in [(0, 1.0 - wy), (1, wy)] {
                    for (dz, sz) in [(0, 1.0 - wz), (1, wz)] {
                        let w = sx * sy * sz;
                        let v = psi4.comps[cart.index_of(ix + dx, iy + dy, iz + dz)];
                        for mu in 0..4 {
                            out[mu] += v[mu] * w;
                        }
                    }
                }
            }
            boost.matrix.apply_complex(out)
        })
        .collect();
    Ok(FourVectorWF { grid: target, comps, analytic: None })
}

/// Invariant pairing ∫ d³k/ω Φ^μ* g_μν Ψ^ν on the common grid.
pub fn minkowski_sp(phi4: &FourVectorWF, psi4: &FourVectorWF) -> Result<Complex64> {
    if !phi4.grid.same_nodes(&psi4.grid) {
        return Err(Error::IncompatibleGrids("4-vector pairing needs one common grid".into()));
    }
    let grid = &phi4.grid;
    Ok(sum_indexed(grid.len(), |i| {
        let omega = grid.omega(i);
        if omega == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let a = phi4.comps[i];
        let b = psi4.comps[i];
        let mut s = -a[0].conj() * b[0];
        for mu in 1..4 {
            s += a[mu].conj() * b[mu];
        }
        s * (grid.weight(i) / omega)
    }))
}

/// Relative change of the invariant form under a boost:
/// |SP_boosted - SP_rest| / |SP_rest|, the boosted side evaluated on the
/// inflated boosted-frame grid.
pub fn invariance_defect(phi4: &FourVectorWF, psi4: &FourVectorWF, boost: &Boost) -> Result<f64> {
    let rest = minkowski_sp(phi4, psi4)?;
    if rest.norm() < 1e-13 {
        return Err(Error::IllConditioned(format!(
            "rest-frame scalar product |{:.3e}| too small for a relative defect",
            rest.norm()
        )));
    }
    let target: GridHandle = Arc::new(boosted_grid(&phi4.grid, boost)?);
    let phi_b = boost_state(phi4, boost, Arc::clone(&target))?;
    let psi_b = boost_state(psi4, boost, target)?;
    let boosted = minkowski_sp(&phi_b, &psi_b)?;
    Ok((boosted - rest).norm() / rest.norm())
}

/// Per-node diagnostics of helicity preservation under a boost.
#[derive(Debug, Clone, Copy)]
pub struct HelicityCheck {
    /// Max |e_{-σ}*·W| after gauge removal.
    pub max_wrong_helicity: f64,
    /// Max |k̂'·W| after gauge removal.
    pub max_longitudinal: f64,
    /// Max | |e_σ*·W| - ω^(1/2)|c_σ(k)| |, the 4-vector norm prediction.
    pub max_amplitude_mismatch: f64,
}

/// Quadrature-free nodewise helicity check for a single-helicity analytic
/// state: boost, remove the gauge part ∝ k'^μ, and project onto the
/// boosted-frame triad. Returns the detailed maxima.
pub fn helicity_check(psi: &WaveFunctionK, boost: &Boost) -> Result<HelicityCheck> {
    let (state, scale) = psi
        .analytic()
        .ok_or_else(|| Error::NeedsAnalyticState("helicity check re-evaluates amplitudes at mapped momenta".into()))?;
    let sigma = state.single_helicity().ok_or_else(|| {
        Error::invalid_argument("helicity check needs a single-helicity state")
    })?;
    let psi4 = embed(psi);
    let target: GridHandle = Arc::new(boosted_grid(psi.grid(), boost)?);
    let boosted = boost_state(&psi4, boost, Arc::clone(&target))?;
    let inv = boost.inverse();

    let per_node: Vec<(f64, f64, f64)> = (0..target.len())
        .into_par_iter()
        .map(|i| {
            let kp = target.kvec(i);
            let omega_p = kp.norm();
            let v = boosted.comps[i];
            // Remove the gauge part along the null vector k'.
            let lambda = v[0] / omega_p;
            let w = CVec3::new(
                v[1] - lambda * kp.x,
                v[2] - lambda * kp.y,
                v[3] - lambda * kp.z,
            );
            let triad = triad_at(kp, &ChiSpec::Zero, i);
            let wrong = triad.helicity(sigma.flipped()).dot_conj(w).norm();
            let long = CVec3::from_real(kp.normalized()).dot(w).norm();
            let k = inv.map_wavevector(kp);
            let predicted = k.norm().sqrt() * (state.evaluate(sigma, k) * scale).norm();
            let mismatch = (triad.helicity(sigma).dot_conj(w).norm() - predicted).abs();
            (wrong, long, mismatch)
        })
        .collect();

    let mut check = HelicityCheck {
        max_wrong_helicity: 0.0,
        max_longitudinal: 0.0,
        max_amplitude_mismatch: 0.0,
    };
    for (wrong, long, mismatch) in per_node {
        check.max_wrong_helicity = check.max_wrong_helicity.max(wrong);
        check.max_longitudinal = check.max_longitudinal.max(long);
        check.max_amplitude_mismatch = check.max_amplitude_mismatch.max(mismatch);
    }
    Ok(check)
}

/// Scalar summary per the verification contract: max over nodes of
/// (wrong-helicity + longitudinal residual).
pub fn helicity_invariance_check(psi: &WaveFunctionK, boost: &Boost) -> Result<f64> {
    let c = helicity_check(psi, boost)?;
    Ok(c.max_wrong_helicity + c.max_longitudinal)
}

/// Wigner phase at one boosted-frame wave vector: the argument of the
/// σ-projection relative to the mapped amplitude, plus the (dimensionless)
/// gauge-projection residual that was removed.
pub fn wigner_angle(psi: &WaveFunctionK, boost: &Boost, kprime: Vec3) -> Result<(f64, f64)> {
    let (state, scale) = psi
        .analytic()
        .ok_or_else(|| Error::NeedsAnalyticState("wigner angle needs the analytic closure".into()))?;
    let sigma = state
        .single_helicity()
        .ok_or_else(|| Error::invalid_argument("wigner angle needs a single-helicity state"))?;
    let source = AnalyticSource {
        state: state.clone(),
        scale: *scale,
        lambda: boost.matrix,
        lambda_inv: boost.inverse().matrix,
    };
    let v = source.evaluate(kprime);
    let omega_p = kprime.norm();
    let lambda = v[0] / omega_p;
    let w = CVec3::new(v[1] - lambda * kprime.x, v[2] - lambda * kprime.y, v[3] - lambda * kprime.z);
    let triad = triad_at(kprime, &ChiSpec::Zero, 0);
    let k = boost.inverse().map_wavevector(kprime);
    let amp = state.evaluate(sigma, k) * scale * k.norm().sqrt();
    if amp.norm() < 1e-300 {
        return Err(Error::IllConditioned("amplitude vanishes at the requested wave vector".into()));
    }
    let ratio = triad.helicity(sigma).dot_conj(w) / amp;
    let residual = (lambda * omega_p).norm() / w.norm_sq().sqrt().max(1e-300);
    Ok((-ratio.arg(), residual))
}

/// ∫ d³k/ω f(k) over a grid: the invariant-measure reduction used by the
/// Eq-space measure-identity checks.
pub fn invariant_measure_integral<F>(grid: &Grid, f: F) -> f64
where
    F: Fn(Vec3) -> f64 + Sync,
{
    sum_indexed_real(grid.len(), |i| {
        let omega = grid.omega(i);
        if omega == 0.0 {
            0.0
        } else {
            f(grid.kvec(i)) * grid.weight(i) / omega
        }
    })
}
