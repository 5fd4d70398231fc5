//! Momentum-space quadrature grids.
//!
//! Two families are provided:
//!
//! * [`KGrid`] — spherical product rule for smooth spectral integrals.
//!   Radial nodes are Gauss-Legendre (or tanh-sinh) on `(0, k_max)`, polar
//!   nodes are Gauss-Legendre in `cos θ` (so the poles θ = 0, π are never
//!   sampled and neither is k = 0), and azimuthal nodes are uniform
//!   midpoints. The stored weight carries the full measure
//!   `d³k = k² dk d(cos θ) dφ`.
//! * [`CartesianGrid`] — uniform n³ lattice covering `center + [-k_max,
//!   k_max)³` with the dual real-space lattice `Δr = 2π/(n Δk)` used by the
//!   FFT synthesis paths. `center` is zero for ordinary states; narrowband
//!   states far from the origin may use a band-centered grid so the
//!   envelope stays resolved.
//!
//! Node enumeration is row-major: the spherical index is
//! `(i_r · n_θ + i_θ) · n_φ + i_φ`, the Cartesian index is
//! `(i · n + j) · n + l` with `(i, j, l) ↔ (x, y, z)`.

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::sum::sum_indexed;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Rule used for the radial factor of a spherical grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadialRule {
    GaussLegendre,
    TanhSinh,
}

/// One node of a spherical grid.
#[derive(Debug, Clone, Copy)]
pub struct SphericalNode {
    pub k: f64,
    pub theta: f64,
    pub phi: f64,
    /// Quadrature weight including the k² sin θ Jacobian.
    pub weight: f64,
}

/// Spherical product quadrature grid over the ball |k| ≤ k_max.
#[derive(Debug, Clone)]
pub struct KGrid {
    nodes: Vec<SphericalNode>,
    kvecs: Vec<Vec3>,
    k_max: f64,
    n_r: usize,
    n_theta: usize,
    n_phi: usize,
    radial_rule: RadialRule,
}

/// Uniform Cartesian k-lattice with its dual r-lattice.
#[derive(Debug, Clone)]
pub struct CartesianGrid {
    n: usize,
    k_max: f64,
    center: Vec3,
    dk: f64,
    dr: f64,
}

/// Either grid family behind one interface.
#[derive(Debug, Clone)]
pub enum Grid {
    Spherical(KGrid),
    Cartesian(CartesianGrid),
}

/// Serializable description of a grid, embedded in reports.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GridDescriptor {
    Spherical {
        n_r: usize,
        n_theta: usize,
        n_phi: usize,
        k_max: f64,
        radial_rule: RadialRule,
    },
    Cartesian {
        n: usize,
        k_max: f64,
        center: [f64; 3],
        dk: f64,
        dr: f64,
    },
}

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; accurate to ~1 ulp for the
/// orders used here (n ≤ a few thousand).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess.
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(z) and derivative by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = z;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        // Central node of an odd rule sits exactly at 0.
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// Tanh-sinh nodes and weights on (-1, 1), endpoints excluded.
///
/// Returns at most `n` nodes (symmetric truncation where the weights
/// underflow); exactness is spectral for smooth integrands rather than
/// polynomial.
pub fn tanh_sinh(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let m = n / 2;
    let t_max = ((2.0 / PI) * (1.0f64 - 1e-15).atanh()).asinh();
    let h = t_max / m.max(1) as f64;
    let mut x = Vec::with_capacity(2 * m + 1);
    let mut w = Vec::with_capacity(2 * m + 1);
    for j in -(m as i64)..=(m as i64) {
        let t = h * j as f64;
        let s = (PI / 2.0) * t.sinh();
        let node = s.tanh();
        let weight = h * (PI / 2.0) * t.cosh() / s.cosh().powi(2);
        if node.abs() < 1.0 && weight.is_finite() && weight > 0.0 {
            x.push(node);
            w.push(weight);
        }
    }
    (x, w)
}

/// Build a spherical quadrature grid.
///
/// Polar nodes are Gauss-Legendre in cos θ and azimuthal nodes uniform
/// midpoints, so no node lies at a pole or at k = 0.
pub fn build_spherical_grid(
    n_r: usize,
    n_theta: usize,
    n_phi: usize,
    k_max: f64,
    radial_rule: RadialRule,
) -> Result<KGrid> {
    if n_r < 2 || n_theta < 2 || n_phi < 2 {
        return Err(Error::invalid_argument(format!(
            "spherical grid needs at least 2 nodes per factor, got ({n_r}, {n_theta}, {n_phi})"
        )));
    }
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(Error::invalid_argument(format!("k_max must be positive, got {k_max}")));
    }

    let (xr, wr) = match radial_rule {
        RadialRule::GaussLegendre => gauss_legendre(n_r),
        RadialRule::TanhSinh => tanh_sinh(n_r),
    };
    // Map [-1, 1] -> (0, k_max).
    let ks: Vec<f64> = xr.iter().map(|x| 0.5 * k_max * (x + 1.0)).collect();
    let wks: Vec<f64> = wr.iter().map(|w| 0.5 * k_max * w).collect();

    let (xu, wu) = gauss_legendre(n_theta);
    let thetas: Vec<f64> = xu.iter().map(|u| u.clamp(-1.0, 1.0).acos()).collect();

    let dphi = 2.0 * PI / n_phi as f64;
    let phis: Vec<f64> = (0..n_phi).map(|j| dphi * (j as f64 + 0.5)).collect();

    let mut nodes = Vec::with_capacity(ks.len() * thetas.len() * phis.len());
    let mut kvecs = Vec::with_capacity(nodes.capacity());
    for (ir, &k) in ks.iter().enumerate() {
        for (it, &theta) in thetas.iter().enumerate() {
            let (st, ct) = (theta.sin(), theta.cos());
            for &phi in &phis {
                let weight = wks[ir] * wu[it] * dphi * k * k;
                nodes.push(SphericalNode { k, theta, phi, weight });
                kvecs.push(Vec3::new(k * st * phi.cos(), k * st * phi.sin(), k * ct));
            }
        }
    }

    Ok(KGrid {
        nodes,
        kvecs,
        k_max,
        n_r: ks.len(),
        n_theta,
        n_phi,
        radial_rule,
    })
}

impl KGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> SphericalNode {
        self.nodes[i]
    }

    pub fn kvec(&self, i: usize) -> Vec3 {
        self.kvecs[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.nodes[i].weight
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.n_r, self.n_theta, self.n_phi)
    }

    pub fn radial_rule(&self) -> RadialRule {
        self.radial_rule
    }

    /// Radial line indices for a fixed (i_θ, i_φ): used by the
    /// finite-difference gradient on spherical grids.
    pub(crate) fn radial_line(&self, i_theta: usize, i_phi: usize) -> impl Iterator<Item = usize> + '_ {
        let (nt, np) = (self.n_theta, self.n_phi);
        (0..self.n_r).map(move |ir| (ir * nt + i_theta) * np + i_phi)
    }

    pub(crate) fn index_of(&self, ir: usize, it: usize, ip: usize) -> usize {
        (ir * self.n_theta + it) * self.n_phi + ip
    }
}

/// Build a Cartesian grid covering [-k_max, k_max)³ about the origin.
pub fn build_cartesian_grid(n: usize, k_max: f64) -> Result<CartesianGrid> {
    build_cartesian_grid_centered(n, k_max, Vec3::ZERO)
}

/// Band-centered variant: nodes at `center + q` for q on the symmetric
/// lattice. The dual r-lattice is unchanged; synthesis routines account for
/// the carrier phase `exp(i center·r)` exactly.
pub fn build_cartesian_grid_centered(n: usize, k_max: f64, center: Vec3) -> Result<CartesianGrid> {
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::invalid_argument(format!(
            "cartesian grid size must be a power of two >= 8, got {n}"
        )));
    }
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(Error::invalid_argument(format!("k_max must be positive, got {k_max}")));
    }
    let dk = 2.0 * k_max / n as f64;
    let dr = 2.0 * PI / (n as f64 * dk);
    Ok(CartesianGrid { n, k_max, center, dk, dr })
}

impl CartesianGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn dk(&self) -> f64 {
        self.dk
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    /// Half-extent of the dual r-lattice; r nodes lie in [-r_max, r_max).
    pub fn r_max(&self) -> f64 {
        0.5 * self.n as f64 * self.dr
    }

    /// Cell volume Δk³ (the uniform quadrature weight).
    pub fn cell_volume(&self) -> f64 {
        self.dk * self.dk * self.dk
    }

    pub fn r_cell_volume(&self) -> f64 {
        self.dr * self.dr * self.dr
    }

    pub fn index_of(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.n + j) * self.n + l
    }

    pub fn indices(&self, idx: usize) -> (usize, usize, usize) {
        let l = idx % self.n;
        let j = (idx / self.n) % self.n;
        let i = idx / (self.n * self.n);
        (i, j, l)
    }

    /// One-axis coordinate of lattice index a: -k_max + a Δk (plus center).
    fn axis_k(&self, a: usize) -> f64 {
        -self.k_max + a as f64 * self.dk
    }

    pub fn kvec(&self, idx: usize) -> Vec3 {
        let (i, j, l) = self.indices(idx);
        Vec3::new(
            self.center.x + self.axis_k(i),
            self.center.y + self.axis_k(j),
            self.center.z + self.axis_k(l),
        )
    }

    pub fn rvec(&self, idx: usize) -> Vec3 {
        let (i, j, l) = self.indices(idx);
        let r0 = -self.r_max();
        Vec3::new(
            r0 + i as f64 * self.dr,
            r0 + j as f64 * self.dr,
            r0 + l as f64 * self.dr,
        )
    }

    /// Index of the lattice point nearest to r, if r is on the lattice.
    pub fn r_index_of(&self, r: Vec3) -> Option<usize> {
        let locate = |c: f64| -> Option<usize> {
            let a = (c + self.r_max()) / self.dr;
            let rounded = a.round();
            if (a - rounded).abs() < 1e-9 && rounded >= 0.0 && (rounded as usize) < self.n {
                Some(rounded as usize)
            } else {
                None
            }
        };
        Some(self.index_of(locate(r.x)?, locate(r.y)?, locate(r.z)?))
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Spherical(g) => g.len(),
            Grid::Cartesian(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kvec(&self, i: usize) -> Vec3 {
        match self {
            Grid::Spherical(g) => g.kvec(i),
            Grid::Cartesian(g) => g.kvec(i),
        }
    }

    pub fn weight(&self, i: usize) -> f64 {
        match self {
            Grid::Spherical(g) => g.weight(i),
            Grid::Cartesian(g) => g.cell_volume(),
        }
    }

    pub fn omega(&self, i: usize) -> f64 {
        self.kvec(i).norm()
    }

    pub fn descriptor(&self) -> GridDescriptor {
        match self {
            Grid::Spherical(g) => GridDescriptor::Spherical {
                n_r: g.n_r,
                n_theta: g.n_theta,
                n_phi: g.n_phi,
                k_max: g.k_max,
                radial_rule: g.radial_rule,
            },
            Grid::Cartesian(g) => GridDescriptor::Cartesian {
                n: g.n,
                k_max: g.k_max,
                center: g.center.as_array(),
                dk: g.dk,
                dr: g.dr,
            },
        }
    }

    pub fn as_cartesian(&self) -> Result<&CartesianGrid> {
        match self {
            Grid::Cartesian(g) => Ok(g),
            Grid::Spherical(_) => Err(Error::WrongGrid(
                "operation requires a Cartesian grid".into(),
            )),
        }
    }

    pub fn as_spherical(&self) -> Result<&KGrid> {
        match self {
            Grid::Spherical(g) => Ok(g),
            Grid::Cartesian(_) => Err(Error::WrongGrid(
                "operation requires a spherical grid".into(),
            )),
        }
    }

    /// Two grids are compatible when they enumerate identical nodes.
    pub fn same_nodes(&self, other: &Grid) -> bool {
        match (self, other) {
            (Grid::Spherical(a), Grid::Spherical(b)) => {
                a.shape() == b.shape()
                    && a.k_max == b.k_max
                    && a.radial_rule == b.radial_rule
            }
            (Grid::Cartesian(a), Grid::Cartesian(b)) => {
                a.n == b.n && a.k_max == b.k_max && a.center == b.center
            }
            _ => false,
        }
    }
}

/// Quadrature reduction Σᵢ wᵢ fᵢ over the grid.
pub fn integrate(grid: &Grid, samples: &[Complex64]) -> Result<Complex64> {
    if samples.len() != grid.len() {
        return Err(Error::invalid_argument(format!(
            "sample count {} does not match node count {}",
            samples.len(),
            grid.len()
        )));
    }
    match grid {
        Grid::Spherical(g) => Ok(sum_indexed(samples.len(), |i| samples[i] * g.weight(i))),
        Grid::Cartesian(g) => {
            let w = g.cell_volume();
            Ok(sum_indexed(samples.len(), |i| samples[i] * w))
        }
    }
}

/// Convenience: integrate a function sampled on the fly.
pub fn integrate_fn<F>(grid: &Grid, f: F) -> Complex64
where
    F: Fn(Vec3) -> Complex64 + Sync,
{
    match grid {
        Grid::Spherical(g) => sum_indexed(g.len(), |i| f(g.kvec(i)) * g.weight(i)),
        Grid::Cartesian(g) => {
            let w = g.cell_volume();
            sum_indexed(g.len(), |i| f(g.kvec(i)) * w)
        }
    }
}

/// Shared handle used by wave functions.
pub type GridHandle = Arc<Grid>;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Brute-force midpoint Riemann quadrature over the ball, for separable
    /// integrands f(k, θ, φ) = R(k) A(θ) B(φ). The triple midpoint sum
    /// factors exactly into the product of the three 1-D sums, which lets
    /// the oracle run at high resolution.
    fn riemann_ball_separable<R, A, B>(k_max: f64, n: usize, fr: R, fa: A, fb: B) -> f64
    where
        R: Fn(f64) -> f64,
        A: Fn(f64) -> f64,
        B: Fn(f64) -> f64,
    {
        let hk = k_max / n as f64;
        let hu = 2.0 / n as f64;
        let hp = 2.0 * PI / n as f64;
        let sk: f64 = (0..n)
            .map(|i| {
                let k = (i as f64 + 0.5) * hk;
                fr(k) * k * k * hk
            })
            .sum();
        let su: f64 = (0..n)
            .map(|i| {
                let u: f64 = -1.0 + (i as f64 + 0.5) * hu;
                fa(u.acos()) * hu
            })
            .sum();
        let sp: f64 = (0..n).map(|i| fb((i as f64 + 0.5) * hp) * hp).sum();
        sk * su * sp
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(build_spherical_grid(1, 16, 32, 5.0, RadialRule::GaussLegendre).is_err());
        assert!(build_spherical_grid(32, 16, 32, -1.0, RadialRule::GaussLegendre).is_err());
        assert!(build_cartesian_grid(12, 1.0).is_err());
        assert!(build_cartesian_grid(4, 1.0).is_err());
    }

    #[test]
    fn nodes_avoid_poles_and_origin() {
        let g = build_spherical_grid(8, 8, 8, 3.0, RadialRule::GaussLegendre).unwrap();
        for i in 0..g.len() {
            let n = g.node(i);
            assert!(n.k > 0.0);
            assert!(n.theta > 0.0 && n.theta < PI);
            assert!(n.weight > 0.0);
        }
    }

    #[test]
    fn ball_volume_exact() {
        // Constant integrand: 4π k_max³ / 3, a polynomial the rule nails.
        let g = Grid::Spherical(
            build_spherical_grid(32, 16, 32, 5.0, RadialRule::GaussLegendre).unwrap(),
        );
        let ones = vec![c(1.0); g.len()];
        let v = integrate(&g, &ones).unwrap();
        let exact = 4.0 * PI * 125.0 / 3.0;
        assert_relative_eq!(v.re, exact, max_relative = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ball_volume_exact_tanh_sinh() {
        let g = Grid::Spherical(build_spherical_grid(64, 16, 32, 5.0, RadialRule::TanhSinh).unwrap());
        let ones = vec![c(1.0); g.len()];
        let v = integrate(&g, &ones).unwrap();
        assert_relative_eq!(v.re, 4.0 * PI * 125.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn gaussian_integral() {
        // ∫ exp(-k²) d³k = π^(3/2); truncation at k_max = 12 is ~1e-63.
        let g = Grid::Spherical(
            build_spherical_grid(64, 16, 32, 12.0, RadialRule::GaussLegendre).unwrap(),
        );
        let v = integrate_fn(&g, |k| c((-k.dot(k)).exp()));
        assert_relative_eq!(v.re, PI.powf(1.5), max_relative = 1e-10);
    }

    #[test]
    fn gaussian_with_phase() {
        // ∫ exp(-k² + i k_z) d³k = π^(3/2) exp(-1/4).
        let g = Grid::Spherical(
            build_spherical_grid(64, 16, 32, 12.0, RadialRule::GaussLegendre).unwrap(),
        );
        let v = integrate_fn(&g, |k| {
            Complex64::new(0.0, k.z).exp() * (-k.dot(k)).exp()
        });
        let exact = PI.powf(1.5) * (-0.25f64).exp();
        assert_relative_eq!(v.re, exact, max_relative = 1e-9);
        assert_abs_diff_eq!(v.im / exact, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn polynomial_against_riemann_oracle() {
        // f = k cos²θ over the ball k_max = 2, checked against a dense
        // midpoint Riemann sum.
        let g = Grid::Spherical(
            build_spherical_grid(32, 16, 32, 2.0, RadialRule::GaussLegendre).unwrap(),
        );
        let v = integrate_fn(&g, |k| {
            let r = k.norm();
            let ct = k.z / r;
            c(r * ct * ct)
        });
        let oracle = riemann_ball_separable(2.0, 1 << 15, |k| k, |t| t.cos().powi(2), |_| 1.0);
        assert_relative_eq!(v.re, oracle, max_relative = 1e-8);
        // And the closed form as a sanity anchor: (k_max⁴/4)·(2/3)·2π.
        assert_relative_eq!(v.re, (16.0 / 4.0) * (2.0 / 3.0) * 2.0 * PI, max_relative = 1e-12);
    }

    #[test]
    fn integrate_trivial_cases() {
        let g = Grid::Spherical(
            build_spherical_grid(8, 8, 8, 1.0, RadialRule::GaussLegendre).unwrap(),
        );
        let zeros = vec![c(0.0); g.len()];
        assert_eq!(integrate(&g, &zeros).unwrap(), c(0.0));
        let short = vec![c(0.0); g.len() - 1];
        assert!(integrate(&g, &short).is_err());
    }

    #[test]
    fn refinement_converges() {
        // Doubling the radial count must shrink the Gaussian error by >= 10x
        // (spectral rule), as long as the coarse error is above rounding.
        let exact = PI.powf(1.5);
        let err = |n_r: usize| {
            let g = Grid::Spherical(
                build_spherical_grid(n_r, 16, 32, 12.0, RadialRule::GaussLegendre).unwrap(),
            );
            let v = integrate_fn(&g, |k| c((-k.dot(k)).exp()));
            ((v.re - exact) / exact).abs()
        };
        let e1 = err(16);
        let e2 = err(32);
        assert!(e2 < e1 / 10.0, "e(16)={e1:.3e}, e(32)={e2:.3e}");
    }

    #[test]
    fn cartesian_spacings() {
        let g = build_cartesian_grid(8, PI).unwrap();
        assert_abs_diff_eq!(g.dk(), PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.dr(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.r_max(), 4.0, epsilon = 1e-15);

        let g = build_cartesian_grid(16, 8.0).unwrap();
        assert_abs_diff_eq!(g.dk(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.dr(), 2.0 * PI / 16.0, epsilon = 1e-15);

        // Dual relation Δk·Δr·n = 2π at ulp level.
        assert_relative_eq!(g.dk() * g.dr() * g.n() as f64, 2.0 * PI, max_relative = 1e-15);
    }

    #[test]
    fn cartesian_enumeration_matches_bruteforce() {
        // Exhaustive check of the documented row-major (x, y, z) order.
        let g = build_cartesian_grid(8, PI).unwrap();
        let mut idx = 0;
        for i in 0..8 {
            for j in 0..8 {
                for l in 0..8 {
                    let k = g.kvec(idx);
                    assert_abs_diff_eq!(k.x, -PI + i as f64 * g.dk(), epsilon = 1e-15);
                    assert_abs_diff_eq!(k.y, -PI + j as f64 * g.dk(), epsilon = 1e-15);
                    assert_abs_diff_eq!(k.z, -PI + l as f64 * g.dk(), epsilon = 1e-15);
                    assert_eq!(g.index_of(i, j, l), idx);
                    idx += 1;
                }
            }
        }
    }

    #[test]
    fn cartesian_and_spherical_agree_on_smooth_integrand() {
        let f = |k: Vec3| c((-k.dot(k)).exp() * (1.0 + 0.3 * k.z));
        let gs = Grid::Spherical(
            build_spherical_grid(48, 24, 48, 10.0, RadialRule::GaussLegendre).unwrap(),
        );
        let gc = Grid::Cartesian(build_cartesian_grid(64, 10.0).unwrap());
        let vs = integrate_fn(&gs, f);
        let vc = integrate_fn(&gc, f);
        assert_relative_eq!(vs.re, vc.re, max_relative = 1e-6);
    }

    #[test]
    fn gauss_legendre_exactness() {
        // n-point rule integrates monomials up to degree 2n-1 exactly.
        let (x, w) = gauss_legendre(6);
        for deg in 0..=11usize {
            let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            assert_abs_diff_eq!(s, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn centered_grid_offsets_nodes() {
        let center = Vec3::new(0.0, 0.0, 5.0);
        let g = build_cartesian_grid_centered(8, 0.5, center).unwrap();
        let mid = g.kvec(g.index_of(4, 4, 4));
        assert_abs_diff_eq!(mid.z, 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mid.x, 0.0, epsilon = 1e-15);
    }
}
