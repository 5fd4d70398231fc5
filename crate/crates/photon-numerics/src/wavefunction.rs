//! The α-parametrized wave-function family.
//!
//! A state is stored as scalar helicity amplitudes c_σ(k) on a grid plus a
//! form exponent α; the k-space vector wave function
//!
//! ```text
//! Ψ^(α)(k) = Σ_σ c_σ(k) e_σ^(0)(k) ω_k^α
//! ```
//!
//! is a derived view, so transversality k̂·Ψ = 0 holds by construction.
//! α = 0 is the Landau-Peierls weighting; α = ∓1/2 the vector-potential /
//! electric-field pair. Real-space synthesis follows
//! `Ψ(r, t) = (2π)^(-3/2) Σ_k Δk³ Ψ(k) exp(ik·r - iω_k t)`.
//!
//! On Cartesian lattices containing the origin, the k = 0 node uses the
//! lattice convention (θ, φ) = (0, 0) for the polarization direction — the
//! direction has no limit there, but the modulus does, so lattice Parseval
//! identities stay exact. The ω^α weight at that node is 1 for α = 0, the
//! continuous limit 0 for α = +1/2, and (divergent) 0 by convention for
//! α = -1/2; scalar-product code pairs ω powers so the node never needs
//! the divergent branch (see `scalarprod`).

use crate::analytic::{AnalyticState, INV_TWO_PI_POW32};
use crate::error::{Error, Result};
use crate::fftkit::{centered_transform_3d, Sign};
use crate::grid::GridHandle;
use crate::linalg::{CVec3, Vec3};
use crate::polarization::{triad_at, ChiSpec, Helicity};
use crate::sum::{sum_indexed, sum_indexed_real};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Form exponent α ∈ {-1/2, 0, +1/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormExponent {
    MinusHalf,
    Zero,
    PlusHalf,
}

impl FormExponent {
    pub fn value(self) -> f64 {
        match self {
            FormExponent::MinusHalf => -0.5,
            FormExponent::Zero => 0.0,
            FormExponent::PlusHalf => 0.5,
        }
    }

    /// The conjugate form -α used by the paired scalar-product integrand.
    pub fn conjugate(self) -> FormExponent {
        match self {
            FormExponent::MinusHalf => FormExponent::PlusHalf,
            FormExponent::Zero => FormExponent::Zero,
            FormExponent::PlusHalf => FormExponent::MinusHalf,
        }
    }
}

/// One-photon state: helicity amplitudes on a grid at a carried time.
///
/// `evolve` multiplies the stored amplitudes by exp(-iω Δt), so `c_plus` /
/// `c_minus` always hold the amplitudes *at* time `t`.
#[derive(Debug, Clone)]
pub struct WaveFunctionK {
    grid: GridHandle,
    c_plus: Vec<Complex64>,
    c_minus: Vec<Complex64>,
    alpha: FormExponent,
    t: f64,
    /// Closed-form definition (with a scale factor from normalization);
    /// present only while the samples still equal `scale * analytic` at
    /// t = 0. `evolve` drops it.
    analytic: Option<(AnalyticState, Complex64)>,
}

/// Build a state by sampling amplitude functions on the grid.
pub fn make_wavefunction<F, G>(
    grid: GridHandle,
    c_plus: F,
    c_minus: G,
    alpha: FormExponent,
) -> Result<WaveFunctionK>
where
    F: Fn(Vec3) -> Complex64 + Sync,
    G: Fn(Vec3) -> Complex64 + Sync,
{
    let n = grid.len();
    let sample = |f: &(dyn Fn(Vec3) -> Complex64 + Sync)| -> Vec<Complex64> {
        (0..n).into_par_iter().map(|i| f(grid.kvec(i))).collect()
    };
    let cp = sample(&c_plus);
    let cm = sample(&c_minus);
    for (arrays, label) in [(&cp, "c_plus"), (&cm, "c_minus")] {
        if let Some(node) = arrays.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidState { node, detail: format!("{label} is not finite") });
        }
    }
    Ok(WaveFunctionK { grid, c_plus: cp, c_minus: cm, alpha, t: 0.0, analytic: None })
}

/// Sample a bundled analytic state, keeping its closed form attached.
pub fn from_analytic(
    grid: GridHandle,
    state: &AnalyticState,
    alpha: FormExponent,
) -> Result<WaveFunctionK> {
    let mut wf = make_wavefunction(
        grid,
        |k| state.evaluate(Helicity::Plus, k),
        |k| state.evaluate(Helicity::Minus, k),
        alpha,
    )?;
    wf.analytic = Some((state.clone(), Complex64::new(1.0, 0.0)));
    Ok(wf)
}

impl WaveFunctionK {
    pub fn grid(&self) -> &GridHandle {
        &self.grid
    }

    pub fn alpha(&self) -> FormExponent {
        self.alpha
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn amplitudes(&self, sigma: Helicity) -> &[Complex64] {
        match sigma {
            Helicity::Plus => &self.c_plus,
            Helicity::Minus => &self.c_minus,
        }
    }

    pub fn analytic(&self) -> Option<&(AnalyticState, Complex64)> {
        self.analytic.as_ref()
    }

    /// Replace the amplitude arrays, keeping grid/α/t.
    pub(crate) fn with_amplitudes(
        &self,
        c_plus: Vec<Complex64>,
        c_minus: Vec<Complex64>,
    ) -> WaveFunctionK {
        WaveFunctionK {
            grid: Arc::clone(&self.grid),
            c_plus,
            c_minus,
            alpha: self.alpha,
            t: self.t,
            analytic: None,
        }
    }

    /// QED norm² Σ_σ ∫ d³k |c_σ|².
    pub fn qed_norm_sq(&self) -> f64 {
        Helicity::BOTH.iter().map(|&s| self.helicity_norm_sq(s)).sum()
    }

    pub fn helicity_norm_sq(&self, sigma: Helicity) -> f64 {
        let c = self.amplitudes(sigma);
        sum_indexed_real(c.len(), |i| c[i].norm_sqr() * self.grid.weight(i))
    }

    /// Rescale to unit QED norm.
    pub fn normalized(mut self) -> Result<WaveFunctionK> {
        let n2 = self.qed_norm_sq();
        if !(n2 > 0.0) || !n2.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / n2.sqrt();
        for v in self.c_plus.iter_mut().chain(self.c_minus.iter_mut()) {
            *v *= s;
        }
        if let Some((_, scale)) = self.analytic.as_mut() {
            *scale *= s;
        }
        Ok(self)
    }

    /// Change the form exponent. The stored amplitudes are untouched; the
    /// implicit vector samples pick up ω^(α' - α), so a roundtrip is exact.
    pub fn convert_alpha(&self, alpha: FormExponent) -> WaveFunctionK {
        let mut wf = self.clone();
        wf.alpha = alpha;
        wf
    }

    /// Free evolution by Δt: c_σ(k) ↦ c_σ(k) exp(-iω_k Δt).
    pub fn evolve(&self, dt: f64) -> WaveFunctionK {
        let phase: Vec<Complex64> = (0..self.grid.len())
            .map(|i| Complex64::from_polar(1.0, -self.grid.omega(i) * dt))
            .collect();
        let apply =
            |c: &[Complex64]| -> Vec<Complex64> { c.iter().zip(&phase).map(|(v, p)| v * p).collect() };
        WaveFunctionK {
            grid: Arc::clone(&self.grid),
            c_plus: apply(&self.c_plus),
            c_minus: apply(&self.c_minus),
            alpha: self.alpha,
            t: self.t + dt,
            analytic: if dt == 0.0 { self.analytic.clone() } else { None },
        }
    }

    /// Vector sample Ψ^(α)(k) at one node (χ = 0 basis).
    pub fn vector_sample(&self, idx: usize) -> CVec3 {
        let k = self.grid.kvec(idx);
        let omega = k.norm();
        let w = if omega > 0.0 {
            omega.powf(self.alpha.value())
        } else {
            match self.alpha {
                FormExponent::Zero => 1.0,
                // ω^(+1/2) → 0 is the continuous limit; ω^(-1/2) diverges
                // and the measure-zero node is dropped by convention.
                FormExponent::PlusHalf | FormExponent::MinusHalf => 0.0,
            }
        };
        if w == 0.0 {
            return CVec3::ZERO;
        }
        let triad = triad_at(k, &ChiSpec::Zero, idx);
        (triad.e_plus.scale(self.c_plus[idx]) + triad.e_minus.scale(self.c_minus[idx]))
            .scale(w.into())
    }

    /// All vector samples, in node order.
    pub fn vector_samples(&self) -> Vec<CVec3> {
        (0..self.grid.len()).into_par_iter().map(|i| self.vector_sample(i)).collect()
    }

    /// Synthesize the real-space vector field at time `t` with the
    /// e^{+ik·r}/(2π)^(3/2) convention. Cartesian grids only.
    pub fn synthesize_real_space(&self, t: f64) -> Result<WaveFunctionR> {
        let cart = self.grid.as_cartesian().map_err(|_| {
            Error::WrongGrid(
                "synthesize_real_space needs a Cartesian grid; use the quadrature \
                 number-amplitude path on spherical grids"
                    .into(),
            )
        })?;
        let n = cart.n();
        let evolved = self.evolve(t - self.t);
        let samples = evolved.vector_samples();
        let scale = cart.cell_volume() * INV_TWO_PI_POW32;
        let center = cart.center();

        let mut comps: [Vec<Complex64>; 3] = Default::default();
        for (axis, out) in comps.iter_mut().enumerate() {
            let component: Vec<Complex64> = samples.iter().map(|v| v.component(axis)).collect();
            let mut field = centered_transform_3d(n, &component, Sign::Plus);
            // Carrier phase for band-centered grids, and the measure.
            field.par_iter_mut().enumerate().for_each(|(idx, v)| {
                let r = cart.rvec(idx);
                *v *= Complex64::from_polar(scale, center.dot(r));
            });
            *out = field;
        }
        Ok(WaveFunctionR { grid: Arc::clone(&self.grid), comps, alpha: self.alpha, t })
    }
}

/// Real-space vector field on the dual lattice.
#[derive(Debug, Clone)]
pub struct WaveFunctionR {
    grid: GridHandle,
    comps: [Vec<Complex64>; 3],
    alpha: FormExponent,
    t: f64,
}

impl WaveFunctionR {
    pub fn grid(&self) -> &GridHandle {
        &self.grid
    }

    pub fn alpha(&self) -> FormExponent {
        self.alpha
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn component(&self, axis: usize) -> &[Complex64] {
        &self.comps[axis]
    }

    pub fn field_at(&self, idx: usize) -> CVec3 {
        CVec3::new(self.comps[0][idx], self.comps[1][idx], self.comps[2][idx])
    }

    /// Σ_r |Ψ(r)|² Δr³.
    pub fn l2_norm_sq(&self) -> f64 {
        let cart = self.grid.as_cartesian().expect("WaveFunctionR is Cartesian by construction");
        let w = cart.r_cell_volume();
        sum_indexed_real(cart.len(), |i| self.field_at(i).norm_sq() * w)
    }

    /// Hermitian pairing ∫ d³r Φ*·Ψ.
    pub fn dot(&self, other: &WaveFunctionR) -> Complex64 {
        let cart = self.grid.as_cartesian().expect("Cartesian by construction");
        let w = cart.r_cell_volume();
        sum_indexed(cart.len(), |i| self.field_at(i).dot_conj(other.field_at(i)) * w)
    }
}
