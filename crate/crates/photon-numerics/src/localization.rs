//! Localized detection states, number amplitudes, and the field-tail and
//! photodetection-density analyses.
//!
//! The number amplitude is the overlap of a localized polarization-carrying
//! detection state with the photon state,
//!
//! ```text
//! c_σ(r, t) = (2π)^(-3/2) ∫ d³k exp(iσχ(k) + ik·r - iω_k t) c_σ(k),
//! ```
//!
//! i.e. the inverse Fourier transform of c_σ(k) exp(iσχ - iω_k t). Two
//! evaluation paths are provided: FFT on Cartesian lattices and direct
//! quadrature at caller-chosen points on either grid family.

use crate::analytic::{AnalyticState, INV_TWO_PI_POW32};
use crate::error::{Error, Result};
use crate::fftkit::{centered_transform_3d, Sign};
use crate::grid::{Grid, GridHandle};
use crate::linalg::Vec3;
use crate::polarization::{ChiSpec, Helicity};
use crate::sum::{sum_indexed, sum_indexed_real};
use crate::wavefunction::{FormExponent, WaveFunctionK};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// A photon localized at (r₀, t₀) with helicity σ and gauge angle χ₀.
///
/// Its k-space amplitude has modulus (2π)^(-3/2) at every node.
#[derive(Debug, Clone, Copy)]
pub struct LocalizedState {
    pub r0: Vec3,
    pub t0: f64,
    pub sigma: Helicity,
    pub chi0: f64,
}

impl LocalizedState {
    pub fn state(&self) -> AnalyticState {
        AnalyticState::Localized { r0: self.r0, t0: self.t0, sigma: self.sigma, chi0: self.chi0 }
    }

    pub fn wavefunction(&self, grid: GridHandle, alpha: FormExponent) -> Result<WaveFunctionK> {
        crate::wavefunction::from_analytic(grid, &self.state(), alpha)
    }
}

/// Scalar number amplitude per helicity on the dual r-lattice.
#[derive(Debug, Clone)]
pub struct NumberAmplitudeR {
    grid: GridHandle,
    c_plus: Vec<Complex64>,
    c_minus: Vec<Complex64>,
    t: f64,
}

impl NumberAmplitudeR {
    pub fn grid(&self) -> &GridHandle {
        &self.grid
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

    /// Number density Σ_σ |c_σ(r)|² at one lattice point.
    pub fn density(&self, idx: usize) -> f64 {
        self.c_plus[idx].norm_sqr() + self.c_minus[idx].norm_sqr()
    }

    /// Total probability Σ_r density · Δr³.
    pub fn total_probability(&self) -> f64 {
        let cart = self.grid.as_cartesian().expect("number amplitude grids are Cartesian");
        let w = cart.r_cell_volume();
        sum_indexed_real(cart.len(), |i| self.density(i) * w)
    }
}

/// FFT-path number amplitude on the state's Cartesian lattice at time `t`.
pub fn number_amplitude(psi: &WaveFunctionK, t: f64, chi: &ChiSpec) -> Result<NumberAmplitudeR> {
    let cart = psi.grid().as_cartesian().map_err(|_| {
        Error::WrongGrid("the fft number-amplitude path needs a Cartesian grid; use number_amplitude_at for spherical grids".into())
    })?;
    let evolved = psi.evolve(t - psi.time());
    let n = cart.n();
    let scale = cart.cell_volume() * INV_TWO_PI_POW32;
    let center = cart.center();

    let mut out: [Vec<Complex64>; 2] = Default::default();
    for (slot, sigma) in Helicity::BOTH.iter().enumerate() {
        let c = evolved.amplitudes(*sigma);
        let g: Vec<Complex64> = (0..cart.len())
            .map(|i| c[i] * chi.phase(*sigma, i, psi.grid().kvec(i)))
            .collect();
        let mut field = centered_transform_3d(n, &g, Sign::Plus);
        field.par_iter_mut().enumerate().for_each(|(idx, v)| {
            let r = cart.rvec(idx);
            *v *= Complex64::from_polar(scale, center.dot(r));
        });
        out[slot] = field;
    }
    let [c_plus, c_minus] = out;
    Ok(NumberAmplitudeR { grid: std::sync::Arc::clone(psi.grid()), c_plus, c_minus, t })
}

/// Quadrature-path number amplitude at caller-chosen points; either grid
/// family. Returns [c₊, c₋] per point.
pub fn number_amplitude_at(
    psi: &WaveFunctionK,
    t: f64,
    chi: &ChiSpec,
    points: &[Vec3],
) -> Result<Vec<[Complex64; 2]>> {
    let grid = psi.grid();
    let dt = t - psi.time();
    Ok(points
        .par_iter()
        .map(|&r| {
            let mut out = [Complex64::new(0.0, 0.0); 2];
            for (slot, sigma) in Helicity::BOTH.iter().enumerate() {
                let c = psi.amplitudes(*sigma);
                out[slot] = sum_indexed(grid.len(), |i| {
                    let k = grid.kvec(i);
                    let phase = chi.value(i, k) * sigma.sign() + k.dot(r) - k.norm() * (dt);
                    c[i] * Complex64::from_polar(grid.weight(i) * INV_TWO_PI_POW32, phase)
                });
            }
            out
        })
        .collect())
}

/// Linear-polarization detection amplitudes (TM, TE) from the circular
/// pair at gauge angle χ:
///
/// ```text
/// c_R1 = [c₊ e^{iχ} + c₋ e^{-iχ}] / √2
/// c_R2 = i [c₊ e^{iχ} - c₋ e^{-iχ}] / √2
/// ```
pub fn linear_detection(c_plus: Complex64, c_minus: Complex64, chi: f64) -> (Complex64, Complex64) {
    let ep = Complex64::from_polar(1.0, chi);
    let em = ep.conj();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let c_r1 = (c_plus * ep + c_minus * em) * inv_sqrt2;
    let c_r2 = Complex64::new(0.0, 1.0) * (c_plus * ep - c_minus * em) * inv_sqrt2;
    (c_r1, c_r2)
}

/// Result of the radial field-tail analysis.
#[derive(Debug, Clone, Serialize)]
pub struct TailFitReport {
    pub alpha: f64,
    pub radii: Vec<f64>,
    pub epsilons: Vec<f64>,
    /// |F(r)| after Richardson extrapolation of the regulator to zero.
    pub extrapolated_abs: Vec<f64>,
    /// Least-squares slope of log|F| vs log r.
    pub slope: f64,
    /// ~95% confidence half-width of the slope from the fit residuals.
    pub slope_half_width: f64,
}

/// Regularized radial tail integral I(r, ε) = ∫₀^∞ k^p e^{(ir-ε)k} dk by
/// composite Gauss-Legendre panels sized to the oscillation period.
fn tail_integral(p: f64, r: f64, eps: f64) -> Complex64 {
    let (gx, gw) = crate::grid::gauss_legendre(16);
    // Truncation where k^p e^{-εk} is ~1e-26 relative to the integral
    // scale; panels resolve both the e^{ikr} oscillation and the decay.
    let k_end = 60.0 / eps;
    let panel = (2.0 * PI / r).min(1.0 / eps) / 2.0;
    let n_panels = (k_end / panel).ceil() as usize;
    let partials: Vec<Complex64> = (0..n_panels)
        .into_par_iter()
        .map(|j| {
            let a = j as f64 * panel;
            let mut s = Complex64::new(0.0, 0.0);
            for (x, w) in gx.iter().zip(&gw) {
                let k = a + 0.5 * panel * (x + 1.0);
                let mag = k.powf(p) * (-eps * k).exp();
                s += Complex64::from_polar(mag * w * 0.5 * panel, k * r);
            }
            s
        })
        .collect();
    let re = crate::sum::neumaier(&partials.iter().map(|c| c.re).collect::<Vec<_>>());
    let im = crate::sum::neumaier(&partials.iter().map(|c| c.im).collect::<Vec<_>>());
    Complex64::new(re, im)
}

/// Polynomial extrapolation of the ladder values to ε = 0 (Neville).
fn richardson_to_zero(eps: &[f64], values: &[Complex64]) -> Complex64 {
    let mut t: Vec<Complex64> = values.to_vec();
    let n = t.len();
    for level in 1..n {
        for j in 0..(n - level) {
            let x0 = eps[j];
            let x1 = eps[j + level];
            t[j] = (t[j + 1] * x0 - t[j] * x1) / (x0 - x1);
        }
    }
    t[0]
}

/// Radial model of the localized-state field tail:
/// F(r, ε) = (4π / ((2π)^(3/2) r)) ∫₀^∞ dk k^(1+α) e^{ikr} e^{-εk},
/// extrapolated ε → 0 on the ladder, with a log-log slope fit of |F|.
///
/// α = 1/2 is the electric-field weighting (slope -7/2); α = 0 the
/// Landau-Peierls control (slope -3).
pub fn tail_exponent(alpha: FormExponent, epsilons: &[f64], radii: &[f64]) -> Result<TailFitReport> {
    if epsilons.len() < 2 || epsilons.windows(2).any(|w| w[1] >= w[0]) || epsilons[0] <= 0.0 {
        return Err(Error::invalid_argument(
            "the regulator ladder must be strictly decreasing and positive",
        ));
    }
    if *epsilons.last().unwrap() <= 0.0 {
        return Err(Error::invalid_argument("regulators must stay positive"));
    }
    if radii.len() < 4 || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid_argument("need at least 4 increasing radii"));
    }
    let (r_min, r_max) = (radii[0], *radii.last().unwrap());
    if r_max / r_min < 10.0 {
        return Err(Error::invalid_argument("radii must span at least one decade"));
    }
    // Core scale is 1 in natural units; the asymptotic fit needs r >> 1.
    if r_min < 5.0 {
        return Err(Error::invalid_argument(
            "smallest radius lies inside the core region (need r_min >= 5)",
        ));
    }
    let p = 1.0 + alpha.value();

    let extrapolated_abs: Vec<f64> = radii
        .iter()
        .map(|&r| {
            let ladder: Vec<Complex64> =
                epsilons.iter().map(|&e| tail_integral(p, r, e)).collect();
            let limit = richardson_to_zero(epsilons, &ladder);
            let prefactor = 4.0 * PI / ((2.0 * PI).powf(1.5) * r);
            (limit * prefactor).norm()
        })
        .collect();

    // Least squares on log-log coordinates.
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = extrapolated_abs.iter().map(|f| f.ln()).collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let dof = (xs.len() - 2).max(1) as f64;
    let slope_half_width = 2.0 * (ss_res / dof / sxx).sqrt();

    Ok(TailFitReport {
        alpha: alpha.value(),
        radii: radii.to_vec(),
        epsilons: epsilons.to_vec(),
        extrapolated_abs,
        slope,
        slope_half_width,
    })
}

/// L² distance between the unit-normalized number density Σ_σ|c_σ(r, t)|²
/// and the unit-normalized field density |Ψ^(1/2)(r, t)|², relative to the
/// larger density norm. Cartesian grids only.
pub fn glauber_compare(psi: &WaveFunctionK, t: f64, chi: &ChiSpec) -> Result<f64> {
    let cart = psi.grid().as_cartesian().map_err(|_| {
        Error::WrongGrid("glauber comparison synthesizes on a Cartesian grid".into())
    })?;
    let norm2 = psi.qed_norm_sq();
    if !(norm2 > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let amp = number_amplitude(psi, t, chi)?;
    let field = psi.convert_alpha(FormExponent::PlusHalf).synthesize_real_space(t)?;

    let w = cart.r_cell_volume();
    let n = cart.len();
    let p1: Vec<f64> = (0..n).map(|i| amp.density(i)).collect();
    let p2: Vec<f64> = (0..n).map(|i| field.field_at(i).norm_sq()).collect();
    let s1 = sum_indexed_real(n, |i| p1[i] * w);
    let s2 = sum_indexed_real(n, |i| p2[i] * w);
    if !(s1 > 0.0) || !(s2 > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let d2 = sum_indexed_real(n, |i| (p1[i] / s1 - p2[i] / s2).powi(2) * w);
    let n1 = sum_indexed_real(n, |i| (p1[i] / s1).powi(2) * w);
    let n2 = sum_indexed_real(n, |i| (p2[i] / s2).powi(2) * w);
    Ok((d2 / n1.max(n2)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{
        build_cartesian_grid, build_cartesian_grid_centered, build_spherical_grid, RadialRule,
    };
    use crate::wavefunction::from_analytic;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn cart(n: usize, k_max: f64) -> GridHandle {
        Arc::new(Grid::Cartesian(build_cartesian_grid(n, k_max).unwrap()))
    }

    /// Closed-form oracle Γ(p+1)/(ε - ir)^(p+1) for the regulated tail
    /// integral; independent of the quadrature path.
    fn tail_oracle(p: f64, r: f64, eps: f64) -> Complex64 {
        let gamma_p1 = if (p - 1.5).abs() < 1e-12 {
            0.75 * PI.sqrt() // Γ(5/2)
        } else if (p - 1.0).abs() < 1e-12 {
            1.0 // Γ(2)
        } else {
            0.5 * PI.sqrt() // Γ(3/2)
        };
        let base = Complex64::new(eps, -r);
        gamma_p1 * base.powf(-(p + 1.0))
    }

    #[test]
    fn delta_localization_at_matching_time() {
        let g = cart(32, 6.0);
        let cartg = g.as_cartesian().unwrap();
        let r0 = cartg.rvec(cartg.index_of(20, 14, 17));
        let t0 = 0.6;
        let loc = LocalizedState { r0, t0, sigma: Helicity::Plus, chi0: 0.0 };
        let wf = loc.wavefunction(Arc::clone(&g), FormExponent::Zero).unwrap();
        let amp = number_amplitude(&wf, t0, &ChiSpec::Zero).unwrap();

        let on_site = 1.0 / cartg.r_cell_volume();
        let target = cartg.r_index_of(r0).unwrap();
        let mut max_off: f64 = 0.0;
        for i in 0..cartg.len() {
            let v = amp.amplitudes(Helicity::Plus)[i];
            if i == target {
                assert_relative_eq!(v.re, on_site, max_relative = 1e-12);
                assert_abs_diff_eq!(v.im / on_site, 0.0, epsilon = 1e-12);
            } else {
                max_off = max_off.max(v.norm());
            }
            assert_eq!(amp.amplitudes(Helicity::Minus)[i].norm(), 0.0);
        }
        assert!(max_off / on_site < 1e-12, "off-site residual {:.3e}", max_off / on_site);
    }

    #[test]
    fn spreading_preserves_total_probability() {
        let g = cart(32, 6.0);
        let cartg = g.as_cartesian().unwrap();
        let r0 = cartg.rvec(cartg.index_of(16, 16, 16));
        let loc = LocalizedState { r0, t0: 0.0, sigma: Helicity::Plus, chi0: 0.0 };
        let wf = loc.wavefunction(Arc::clone(&g), FormExponent::Zero).unwrap();

        let at0 = number_amplitude(&wf, 0.0, &ChiSpec::Zero).unwrap();
        let later = number_amplitude(&wf, 0.8, &ChiSpec::Zero).unwrap();
        assert_relative_eq!(later.total_probability(), at0.total_probability(), max_relative = 1e-12);

        // And the amplitude has genuinely spread off the site.
        let target = cartg.r_index_of(r0).unwrap();
        let peak0 = at0.amplitudes(Helicity::Plus)[target].norm();
        let peak1 = later.amplitudes(Helicity::Plus)[target].norm();
        assert!(peak1 < 0.9 * peak0, "no spreading: {peak0:.3e} -> {peak1:.3e}");
    }

    #[test]
    fn gaussian_profile_matches_closed_form() {
        // c(k) = e^{-k²/s²} at t = 0: c(r) = (s/√2)³ e^{-s²r²/4}.
        let s: f64 = 1.2;
        let g = cart(64, 10.0);
        let st = AnalyticState::Gaussian {
            center: Vec3::ZERO,
            width: s,
            amp_plus: Complex64::new(1.0, 0.0),
            amp_minus: Complex64::new(0.0, 0.0),
        };
        let wf = from_analytic(Arc::clone(&g), &st, FormExponent::Zero).unwrap();
        let amp = number_amplitude(&wf, 0.0, &ChiSpec::Zero).unwrap();
        let cartg = g.as_cartesian().unwrap();
        let peak = (s * s / 2.0).powf(1.5);
        let mut max_err: f64 = 0.0;
        for i in 0..cartg.len() {
            let r = cartg.rvec(i);
            let expect = peak * (-s * s * r.dot(r) / 4.0).exp();
            max_err = max_err
                .max((amp.amplitudes(Helicity::Plus)[i] - Complex64::new(expect, 0.0)).norm());
        }
        assert!(max_err / peak < 1e-9, "peak-relative error {:.3e}", max_err / peak);
    }

    #[test]
    fn fft_and_quadrature_paths_agree() {
        // Cartesian FFT vs spherical direct quadrature at common points.
        let st = AnalyticState::Gaussian {
            center: Vec3::new(0.0, 0.0, 2.0),
            width: 1.5,
            amp_plus: Complex64::new(0.8, 0.3),
            amp_minus: Complex64::new(0.2, -0.5),
        };
        let gc = cart(32, 10.0);
        let gs: GridHandle = Arc::new(Grid::Spherical(
            build_spherical_grid(64, 32, 48, 10.0, RadialRule::GaussLegendre).unwrap(),
        ));
        let wf_c = from_analytic(Arc::clone(&gc), &st, FormExponent::Zero).unwrap();
        let wf_s = from_analytic(gs, &st, FormExponent::Zero).unwrap();
        let t = 0.4;
        let fft = number_amplitude(&wf_c, t, &ChiSpec::Zero).unwrap();
        let cartg = gc.as_cartesian().unwrap();
        let probes: Vec<usize> = vec![
            cartg.index_of(16, 16, 16),
            cartg.index_of(17, 16, 15),
            cartg.index_of(14, 18, 16),
        ];
        let points: Vec<Vec3> = probes.iter().map(|&i| cartg.rvec(i)).collect();
        let quad = number_amplitude_at(&wf_s, t, &ChiSpec::Zero, &points).unwrap();
        for (probe, vals) in probes.iter().zip(&quad) {
            for (slot, sigma) in Helicity::BOTH.iter().enumerate() {
                let f = fft.amplitudes(*sigma)[*probe];
                assert!(
                    (f - vals[slot]).norm() < 1e-8,
                    "paths disagree: {f} vs {}",
                    vals[slot]
                );
            }
        }
    }

    #[test]
    fn quadrature_path_accepts_cartesian_grids() {
        let g = cart(16, 6.0);
        let st = AnalyticState::Gaussian {
            center: Vec3::ZERO,
            width: 1.0,
            amp_plus: Complex64::new(1.0, 0.0),
            amp_minus: Complex64::new(0.0, 0.0),
        };
        let wf = from_analytic(Arc::clone(&g), &st, FormExponent::Zero).unwrap();
        let fft = number_amplitude(&wf, 0.0, &ChiSpec::Zero).unwrap();
        let cartg = g.as_cartesian().unwrap();
        let idx = cartg.index_of(8, 8, 8);
        let quad = number_amplitude_at(&wf, 0.0, &ChiSpec::Zero, &[cartg.rvec(idx)]).unwrap();
        assert!((fft.amplitudes(Helicity::Plus)[idx] - quad[0][0]).norm() < 1e-12);
    }

    #[test]
    fn fft_path_rejects_spherical_grids() {
        let g: GridHandle = Arc::new(Grid::Spherical(
            build_spherical_grid(8, 8, 8, 4.0, RadialRule::GaussLegendre).unwrap(),
        ));
        let st = AnalyticState::Gaussian {
            center: Vec3::ZERO,
            width: 1.0,
            amp_plus: Complex64::new(1.0, 0.0),
            amp_minus: Complex64::new(0.0, 0.0),
        };
        let wf = from_analytic(g, &st, FormExponent::Zero).unwrap();
        assert!(matches!(
            number_amplitude(&wf, 0.0, &ChiSpec::Zero),
            Err(Error::WrongGrid(_))
        ));
    }

    #[test]
    fn polarizer_law() {
        // c_σ = e^{-iσχ'}/√2: |c_R1|² = cos²Δχ, |c_R2|² = sin²Δχ.
        let chi_p = 0.9;
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let cp = Complex64::from_polar(inv_sqrt2, -chi_p);
        let cm = Complex64::from_polar(inv_sqrt2, chi_p);
        for chi in [-1.2, 0.0, 0.4, 2.8] {
            let (r1, r2) = linear_detection(cp, cm, chi);
            let d = chi_p - chi;
            assert_abs_diff_eq!(r1.norm_sqr(), d.cos().powi(2), epsilon = 1e-14);
            assert_abs_diff_eq!(r2.norm_sqr(), d.sin().powi(2), epsilon = 1e-14);
        }
        // Aligned polarizer: c_R2 exactly zero.
        let (_, r2) = linear_detection(cp, cm, chi_p);
        assert_eq!(r2.norm(), 0.0);
    }

    proptest! {
        #[test]
        fn linear_detection_is_unitary(
            re_p in -2.0..2.0f64, im_p in -2.0..2.0f64,
            re_m in -2.0..2.0f64, im_m in -2.0..2.0f64,
            chi in -6.3..6.3f64,
        ) {
            let cp = Complex64::new(re_p, im_p);
            let cm = Complex64::new(re_m, im_m);
            let (r1, r2) = linear_detection(cp, cm, chi);
            let before = cp.norm_sqr() + cm.norm_sqr();
            let after = r1.norm_sqr() + r2.norm_sqr();
            prop_assert!((before - after).abs() <= 1e-14 * before.max(1.0));
        }
    }

    #[test]
    fn tail_quadrature_matches_oracle() {
        for p in [1.0, 1.5] {
            for (r, eps) in [(10.0, 0.1), (40.0, 0.05), (100.0, 0.0125)] {
                let got = tail_integral(p, r, eps);
                let want = tail_oracle(p, r, eps);
                let rel = (got - want).norm() / want.norm();
                assert!(rel < 1e-10, "p {p} r {r} eps {eps}: rel {rel:.3e}");
            }
        }
    }

    #[test]
    fn electric_field_tail_slope() {
        let radii: Vec<f64> = (0..16).map(|i| 10.0 * (100.0f64 / 10.0).powf(i as f64 / 15.0)).collect();
        let eps = [0.1, 0.05, 0.025, 0.0125];
        let report = tail_exponent(FormExponent::PlusHalf, &eps, &radii).unwrap();
        assert!(
            (report.slope + 3.5).abs() < 0.1,
            "slope {} (half-width {})",
            report.slope,
            report.slope_half_width
        );
    }

    #[test]
    fn landau_peierls_control_slope() {
        let radii: Vec<f64> = (0..16).map(|i| 10.0 * (100.0f64 / 10.0).powf(i as f64 / 15.0)).collect();
        let eps = [0.1, 0.05, 0.025, 0.0125];
        let report = tail_exponent(FormExponent::Zero, &eps, &radii).unwrap();
        assert!((report.slope + 3.0).abs() < 0.05, "control slope {}", report.slope);
    }

    #[test]
    fn tail_precondition_errors() {
        let eps = [0.1, 0.05, 0.025];
        // Radii inside the core.
        let inside: Vec<f64> = vec![1.0, 3.0, 6.0, 12.0];
        assert!(tail_exponent(FormExponent::PlusHalf, &eps, &inside).is_err());
        // Less than a decade.
        let narrow: Vec<f64> = vec![10.0, 20.0, 40.0, 80.0];
        assert!(tail_exponent(FormExponent::PlusHalf, &eps, &narrow).is_err());
        // Non-monotone ladder.
        let bad_eps = [0.05, 0.1];
        let radii: Vec<f64> = vec![10.0, 25.0, 60.0, 110.0];
        assert!(tail_exponent(FormExponent::PlusHalf, &bad_eps, &radii).is_err());
    }

    #[test]
    fn glauber_narrowband_vs_broadband() {
        // Narrowband paraxial packet on a band-centered lattice: the
        // number density and the field density agree to O((s/k0)²);
        // broadband disagrees by much more.
        let k0 = 5.0;
        let narrow = AnalyticState::Paraxial { k0, width: 0.05, sigma: Helicity::Plus };
        let g_narrow: GridHandle = Arc::new(Grid::Cartesian(
            build_cartesian_grid_centered(32, 0.45, Vec3::new(0.0, 0.0, k0)).unwrap(),
        ));
        let wf_n = from_analytic(g_narrow, &narrow, FormExponent::Zero)
            .unwrap()
            .normalized()
            .unwrap();
        let d_narrow = glauber_compare(&wf_n, 0.0, &ChiSpec::MinusPhi).unwrap();
        assert!(d_narrow < 1e-3, "narrowband distance {d_narrow:.3e}");

        let broad = AnalyticState::Paraxial { k0, width: 2.5, sigma: Helicity::Plus };
        let g_broad = cart(32, 14.0);
        let wf_b = from_analytic(g_broad, &broad, FormExponent::Zero)
            .unwrap()
            .normalized()
            .unwrap();
        let d_broad = glauber_compare(&wf_b, 0.0, &ChiSpec::MinusPhi).unwrap();
        assert!(
            d_broad > 10.0 * d_narrow,
            "expected bandwidth monotonicity: narrow {d_narrow:.3e}, broad {d_broad:.3e}"
        );
    }

    #[test]
    fn glauber_densities_symmetric_for_even_real_state() {
        // Real symmetric c at t = 0: both densities are r → -r symmetric.
        let g = cart(16, 8.0);
        let st = AnalyticState::Gaussian {
            center: Vec3::ZERO,
            width: 1.4,
            amp_plus: Complex64::new(1.0, 0.0),
            amp_minus: Complex64::new(0.0, 0.0),
        };
        let wf = from_analytic(Arc::clone(&g), &st, FormExponent::Zero)
            .unwrap()
            .normalized()
            .unwrap();
        let amp = number_amplitude(&wf, 0.0, &ChiSpec::Zero).unwrap();
        let field = wf.convert_alpha(FormExponent::PlusHalf).synthesize_real_space(0.0).unwrap();
        let cartg = g.as_cartesian().unwrap();
        let n = cartg.n();
        // Mirror of lattice index a (excluding the unpaired -r_max plane).
        let mirror = |a: usize| n - a;
        let mut max_asym: f64 = 0.0;
        for i in 1..n {
            for j in 1..n {
                for l in 1..n {
                    let idx = cartg.index_of(i, j, l);
                    let mdx = cartg.index_of(mirror(i), mirror(j), mirror(l));
                    max_asym = max_asym.max((amp.density(idx) - amp.density(mdx)).abs());
                    max_asym = max_asym
                        .max((field.field_at(idx).norm_sq() - field.field_at(mdx).norm_sq()).abs());
                }
            }
        }
        assert!(max_asym < 1e-12, "parity asymmetry {max_asym:.3e}");
    }

    #[test]
    fn displaced_localized_states_orthogonal() {
        let g = cart(16, 6.0);
        let cartg = g.as_cartesian().unwrap();
        let mk = |i: usize, j: usize, l: usize| {
            LocalizedState {
                r0: cartg.rvec(cartg.index_of(i, j, l)),
                t0: 0.0,
                sigma: Helicity::Plus,
                chi0: 0.0,
            }
            .wavefunction(Arc::clone(&g), FormExponent::Zero)
            .unwrap()
        };
        let a = mk(8, 8, 8);
        let b = mk(11, 8, 6);
        let inv_cell = 1.0 / cartg.r_cell_volume();
        let cross = crate::scalarprod::sp_qed(&a, &b).unwrap();
        assert!(cross.norm() / inv_cell < 1e-12);
        let same = crate::scalarprod::sp_qed(&a, &a).unwrap();
        assert_relative_eq!(same.re, inv_cell, max_relative = 1e-12);
    }
}
