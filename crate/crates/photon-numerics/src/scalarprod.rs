//! The invariant scalar product in its five equivalent forms, and the
//! k-space position operator.
//!
//! For a bra Φ (amplitudes d_σ) and ket Ψ (amplitudes c_σ) the forms are
//!
//! ```text
//! invariant    ∫ d³k/ω  Φ^(1/2)μ*(k) g_μν Ψ^(1/2)ν(k)      metric (-,+,+,+)
//! α-pair       ∫ d³k    Φ^(-α)μ*(k) g_μν Ψ^(α)ν(k)         4-vector embedding
//! transverse   ∫ d³k    Φ^(-α)*(k) · Ψ^(α)(k)              3-vector dot
//! qed          Σ_σ ∫ d³k d_σ*(k) c_σ(k)
//! real-space   ∫ d³r    Φ^(-α)*(r, t) · Ψ^(α)(r, t)        Cartesian only
//! ```
//!
//! Each form is evaluated through its own code path (the ω powers really
//! are applied and divided out node by node), which is what makes the
//! numerical equivalence check meaningful. One lattice exception: at a
//! Cartesian k = 0 node the ω powers of every pairing cancel algebraically
//! (α_bra + α_ket + measure = 0), so that single node is evaluated with the
//! cancelled exponent instead of 0·∞.
//!
//! The position operator acts on the scalar amplitudes,
//! `r̂^(α,χ) Ψ_σ = ω^α e_σ^(χ) i∇[c_σ e^(iσχ)]`, so its c-space action is
//! α-independent; α reappears in the pairings above. Gradients are spectral
//! on Cartesian grids and 5-point finite differences (exact-node weights,
//! one-sided at the radial boundaries) on spherical grids, with the
//! azimuthal factor differentiated by DFT on each uniform ring.

use crate::error::{Error, Result};
use crate::fftkit::spectral_derivative;
use crate::grid::{Grid, GridDescriptor, KGrid};
use crate::linalg::{CVec3, Vec3};
use crate::polarization::{spherical_unit_vectors, triad_at, ChiSpec, Helicity};
use crate::sum::sum_indexed;
use crate::wavefunction::{FormExponent, WaveFunctionK, WaveFunctionR};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

fn check_same_grid(a: &WaveFunctionK, b: &WaveFunctionK) -> Result<()> {
    if !a.grid().same_nodes(b.grid()) {
        return Err(Error::IncompatibleGrids(
            "scalar products need both states on identical grids".into(),
        ));
    }
    Ok(())
}

/// (Σ_σ d_σ e_σ)* · (Σ_σ c_σ e_σ) at one node, no ω factors; used for the
/// k = 0 lattice node where the pairing exponents cancel.
fn cancelled_node_product(phi: &WaveFunctionK, psi: &WaveFunctionK, idx: usize) -> Complex64 {
    let k = phi.grid().kvec(idx);
    let triad = triad_at(k, &ChiSpec::Zero, idx);
    let bra = triad.e_plus.scale(phi.amplitudes(Helicity::Plus)[idx])
        + triad.e_minus.scale(phi.amplitudes(Helicity::Minus)[idx]);
    let ket = triad.e_plus.scale(psi.amplitudes(Helicity::Plus)[idx])
        + triad.e_minus.scale(psi.amplitudes(Helicity::Minus)[idx]);
    bra.dot_conj(ket)
}

/// Eq-space vector sample with an explicit exponent (bypasses the state's
/// stored α so each form can weight its own integrand).
fn sample_with_exponent(wf: &WaveFunctionK, idx: usize, alpha: f64) -> CVec3 {
    let k = wf.grid().kvec(idx);
    let omega = k.norm();
    let triad = triad_at(k, &ChiSpec::Zero, idx);
    let w = omega.powf(alpha);
    (triad.e_plus.scale(wf.amplitudes(Helicity::Plus)[idx])
        + triad.e_minus.scale(wf.amplitudes(Helicity::Minus)[idx]))
    .scale(w.into())
}

/// Invariant form, Eq-space 4-vector contraction with the 1/ω measure.
pub fn sp_invariant(phi: &WaveFunctionK, psi: &WaveFunctionK) -> Result<Complex64> {
    check_same_grid(phi, psi)?;
    let grid = phi.grid();
    Ok(sum_indexed(grid.len(), |i| {
        let w = grid.weight(i);
        let omega = grid.omega(i);
        if omega == 0.0 {
            // ω^(1/2) ω^(1/2) / ω cancels exactly.
            return cancelled_node_product(phi, psi, i) * w;
        }
        // Transverse embedding: time components vanish identically, the
        // contraction -Φ⁰*Ψ⁰ + Φ·Ψ reduces to the spatial dot.
        let bra = sample_with_exponent(phi, i, 0.5);
        let ket = sample_with_exponent(psi, i, 0.5);
        bra.dot_conj(ket) * (w / omega)
    }))
}

/// α-pair form through the 4-vector embedding (zero time components) and
/// the Minkowski metric.
pub fn sp_alpha_pair(
    phi: &WaveFunctionK,
    psi: &WaveFunctionK,
    alpha: FormExponent,
) -> Result<Complex64> {
    check_same_grid(phi, psi)?;
    let grid = phi.grid();
    let (ab, ak) = (alpha.conjugate().value(), alpha.value());
    Ok(sum_indexed(grid.len(), |i| {
        let w = grid.weight(i);
        if grid.omega(i) == 0.0 {
            return cancelled_node_product(phi, psi, i) * w;
        }
        let bra = sample_with_exponent(phi, i, ab);
        let ket = sample_with_exponent(psi, i, ak);
        let bra4 = [Complex64::new(0.0, 0.0), bra.x, bra.y, bra.z];
        let ket4 = [Complex64::new(0.0, 0.0), ket.x, ket.y, ket.z];
        let mut s = -bra4[0].conj() * ket4[0];
        for mu in 1..4 {
            s += bra4[mu].conj() * ket4[mu];
        }
        s * w
    }))
}

/// Transverse-gauge form: plain 3-vector dot of the ∓α pair.
pub fn sp_transverse(
    phi: &WaveFunctionK,
    psi: &WaveFunctionK,
    alpha: FormExponent,
) -> Result<Complex64> {
    check_same_grid(phi, psi)?;
    let grid = phi.grid();
    let (ab, ak) = (alpha.conjugate().value(), alpha.value());
    Ok(sum_indexed(grid.len(), |i| {
        let w = grid.weight(i);
        if grid.omega(i) == 0.0 {
            return cancelled_node_product(phi, psi, i) * w;
        }
        sample_with_exponent(phi, i, ab).dot_conj(sample_with_exponent(psi, i, ak)) * w
    }))
}

/// QED form: helicity-diagonal amplitude overlap.
pub fn sp_qed(phi: &WaveFunctionK, psi: &WaveFunctionK) -> Result<Complex64> {
    check_same_grid(phi, psi)?;
    let grid = phi.grid();
    let mut total = Complex64::new(0.0, 0.0);
    for sigma in Helicity::BOTH {
        let d = phi.amplitudes(sigma);
        let c = psi.amplitudes(sigma);
        total += sum_indexed(grid.len(), |i| d[i].conj() * c[i] * grid.weight(i));
    }
    Ok(total)
}

/// Real-space form over synthesized fields. The bra must carry the
/// conjugate form exponent and both fields the same time.
pub fn sp_rspace(phi_r: &WaveFunctionR, psi_r: &WaveFunctionR) -> Result<Complex64> {
    if !phi_r.grid().same_nodes(psi_r.grid()) {
        return Err(Error::IncompatibleGrids("real-space form needs one common r-grid".into()));
    }
    if phi_r.alpha() != psi_r.alpha().conjugate() {
        return Err(Error::FormPairing(format!(
            "real-space pairing needs the (-α, α) pair; got ({:?}, {:?})",
            phi_r.alpha(),
            psi_r.alpha()
        )));
    }
    if (phi_r.time() - psi_r.time()).abs() > 1e-12 {
        return Err(Error::FormPairing(format!(
            "real-space pairing needs a common time; got t = {} vs {}",
            phi_r.time(),
            psi_r.time()
        )));
    }
    Ok(phi_r.dot(psi_r))
}

/// Values of every form for one state pair.
#[derive(Debug, Clone, Serialize)]
pub struct ScalarProductReport {
    pub invariant: Complex64,
    pub alpha_pair: Complex64,
    pub transverse: Complex64,
    pub qed: Complex64,
    /// Present on Cartesian grids (FFT synthesis); spherical-grid reports
    /// carry the four k-space forms.
    pub rspace: Option<Complex64>,
    /// Max pairwise deviation divided by ‖Φ‖‖Ψ‖ (the Cauchy-Schwarz scale,
    /// so orthogonal pairs are still meaningfully compared).
    pub max_relative_deviation: f64,
    pub grid: GridDescriptor,
}

impl ScalarProductReport {
    pub fn values(&self) -> Vec<Complex64> {
        let mut v = vec![self.invariant, self.alpha_pair, self.transverse, self.qed];
        if let Some(r) = self.rspace {
            v.push(r);
        }
        v
    }
}

/// Evaluate all forms for a pair, using the ket's α for the paired forms.
pub fn scalar_product_report(
    phi: &WaveFunctionK,
    psi: &WaveFunctionK,
) -> Result<ScalarProductReport> {
    check_same_grid(phi, psi)?;
    let alpha = psi.alpha();
    let invariant = sp_invariant(phi, psi)?;
    let alpha_pair = sp_alpha_pair(phi, psi, alpha)?;
    let transverse = sp_transverse(phi, psi, alpha)?;
    let qed = sp_qed(phi, psi)?;
    let rspace = match phi.grid().as_ref() {
        Grid::Cartesian(_) => {
            let t = psi.time();
            let bra_r = phi.convert_alpha(alpha.conjugate()).synthesize_real_space(t)?;
            let ket_r = psi.convert_alpha(alpha).synthesize_real_space(t)?;
            Some(sp_rspace(&bra_r, &ket_r)?)
        }
        Grid::Spherical(_) => None,
    };

    let scale = (phi.qed_norm_sq() * psi.qed_norm_sq()).sqrt();
    if !(scale > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let mut values = vec![invariant, alpha_pair, transverse, qed];
    if let Some(r) = rspace {
        values.push(r);
    }
    let mut dev: f64 = 0.0;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            dev = dev.max((values[i] - values[j]).norm());
        }
    }
    Ok(ScalarProductReport {
        invariant,
        alpha_pair,
        transverse,
        qed,
        rspace,
        max_relative_deviation: dev / scale,
        grid: phi.grid().descriptor(),
    })
}

// ---------------------------------------------------------------------------
// Gradients
// ---------------------------------------------------------------------------

/// Finite-difference weights on arbitrary nodes (Fornberg's recurrence) for
/// the m-th derivative at x0.
fn fd_weights(nodes: &[f64], x0: f64, m: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

const STENCIL: usize = 5;

/// 1-D derivative on arbitrary nodes with 5-point stencils, windows clamped
/// one-sided at the ends.
fn line_derivative(nodes: &[f64], values: &[Complex64]) -> Vec<Complex64> {
    let n = nodes.len();
    let width = STENCIL.min(n);
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(width / 2).min(n - width);
            let w = fd_weights(&nodes[lo..lo + width], nodes[i], 1);
            let mut d = Complex64::new(0.0, 0.0);
            for (j, wj) in w.iter().enumerate() {
                d += values[lo + j] * *wj;
            }
            d
        })
        .collect()
}

/// Cartesian components of ∇f on a spherical grid.
fn spherical_gradient(grid: &KGrid, f: &[Complex64]) -> [Vec<Complex64>; 3] {
    let (n_r, n_t, n_p) = grid.shape();
    let mut out = [
        vec![Complex64::new(0.0, 0.0); f.len()],
        vec![Complex64::new(0.0, 0.0); f.len()],
        vec![Complex64::new(0.0, 0.0); f.len()],
    ];

    // Radial derivative along each (θ, φ) ray.
    let mut df_dk = vec![Complex64::new(0.0, 0.0); f.len()];
    let radial_nodes: Vec<f64> = (0..n_r).map(|ir| grid.node(grid.index_of(ir, 0, 0)).k).collect();
    for it in 0..n_t {
        for ip in 0..n_p {
            let idxs: Vec<usize> = grid.radial_line(it, ip).collect();
            let vals: Vec<Complex64> = idxs.iter().map(|&i| f[i]).collect();
            let d = line_derivative(&radial_nodes, &vals);
            for (pos, &i) in idxs.iter().enumerate() {
                df_dk[i] = d[pos];
            }
        }
    }

    // Polar derivative along full meridians: the (θ, φ) and (π - ... ,
    // φ + π) rays join into one great circle on which the function is
    // smooth through the poles, so the stencils keep their order there
    // (plain differencing in cos θ stalls near the poles because smooth
    // functions on the sphere carry √(1-u²) factors in u).
    let mut df_dtheta = vec![Complex64::new(0.0, 0.0); f.len()];
    debug_assert!(n_p % 2 == 0, "uniform azimuthal grids are built with even n_phi");
    let thetas: Vec<f64> = (0..n_t).map(|it| grid.node(grid.index_of(0, it, 0)).theta).collect();
    for ir in 0..n_r {
        for ip in 0..n_p / 2 {
            let ip_b = ip + n_p / 2;
            // Meridian coordinate τ ∈ (-π, π]: τ = θ on side A, -θ on
            // side B; GL-in-u enumerates θ descending, so side A reversed
            // gives ascending τ.
            let mut tau = Vec::with_capacity(2 * n_t);
            let mut vals = Vec::with_capacity(2 * n_t);
            let mut order = Vec::with_capacity(2 * n_t);
            for it in 0..n_t {
                tau.push(-thetas[it]);
                vals.push(f[grid.index_of(ir, it, ip_b)]);
                order.push((grid.index_of(ir, it, ip_b), -1.0));
            }
            for it in (0..n_t).rev() {
                tau.push(thetas[it]);
                vals.push(f[grid.index_of(ir, it, ip)]);
                order.push((grid.index_of(ir, it, ip), 1.0));
            }
            // Periodic extension by two nodes on each side.
            let m = tau.len();
            let mut tau_ext = Vec::with_capacity(m + 4);
            let mut val_ext = Vec::with_capacity(m + 4);
            for q in (m - 2)..m {
                tau_ext.push(tau[q] - 2.0 * std::f64::consts::PI);
                val_ext.push(vals[q]);
            }
            tau_ext.extend_from_slice(&tau);
            val_ext.extend_from_slice(&vals);
            for q in 0..2 {
                tau_ext.push(tau[q] + 2.0 * std::f64::consts::PI);
                val_ext.push(vals[q]);
            }
            for (pos, &(idx, sign)) in order.iter().enumerate() {
                let center = pos + 2;
                let lo = center - 2;
                let w = fd_weights(&tau_ext[lo..lo + STENCIL], tau_ext[center], 1);
                let mut d = Complex64::new(0.0, 0.0);
                for (j, wj) in w.iter().enumerate() {
                    d += val_ext[lo + j] * *wj;
                }
                df_dtheta[idx] = d * sign;
            }
        }
    }

    // Azimuthal derivative by DFT on each uniform periodic ring.
    let mut df_dphi = vec![Complex64::new(0.0, 0.0); f.len()];
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n_p);
    let inv = planner.plan_fft_inverse(n_p);
    let mut ring = vec![Complex64::new(0.0, 0.0); n_p];
    let mut scratch = vec![
        Complex64::new(0.0, 0.0);
        fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len())
    ];
    for ir in 0..n_r {
        for it in 0..n_t {
            for ip in 0..n_p {
                ring[ip] = f[grid.index_of(ir, it, ip)];
            }
            fwd.process_with_scratch(&mut ring, &mut scratch);
            for (m, v) in ring.iter_mut().enumerate() {
                let m_bal = if m <= n_p / 2 { m as i64 } else { m as i64 - n_p as i64 };
                let mult = if 2 * m == n_p { 0.0 } else { m_bal as f64 };
                *v *= Complex64::new(0.0, mult / n_p as f64);
            }
            inv.process_with_scratch(&mut ring, &mut scratch);
            for ip in 0..n_p {
                df_dphi[grid.index_of(ir, it, ip)] = ring[ip];
            }
        }
    }

    for i in 0..f.len() {
        let node = grid.node(i);
        let (theta_hat, phi_hat, k_hat) = spherical_unit_vectors(node.theta, node.phi);
        for axis in 0..3 {
            out[axis][i] = df_dk[i] * k_hat[axis]
                + df_dtheta[i] * (theta_hat[axis] / node.k)
                + df_dphi[i] * (phi_hat[axis] / (node.k * node.theta.sin()));
        }
    }
    out
}

/// k-space gradient of a scalar lattice function, either grid family.
pub fn gradient(grid: &Grid, f: &[Complex64]) -> [Vec<Complex64>; 3] {
    match grid {
        Grid::Cartesian(c) => [
            spectral_derivative(c, f, 0),
            spectral_derivative(c, f, 1),
            spectral_derivative(c, f, 2),
        ],
        Grid::Spherical(s) => spherical_gradient(s, f),
    }
}

// ---------------------------------------------------------------------------
// Position operator
// ---------------------------------------------------------------------------

/// Apply r̂^(α,χ): returns the three component states of r̂ψ.
///
/// The c-amplitudes of component j are `exp(-iσχ) i ∂_j [c_σ exp(iσχ)]`;
/// the α of ψ rides along unchanged. With `at_time = Some(τ)` the operator
/// acts on the amplitudes phase-evolved to τ; by default it acts on the
/// state's carried amplitudes.
pub fn apply_position_operator(
    psi: &WaveFunctionK,
    chi: &ChiSpec,
    at_time: Option<f64>,
) -> Result<[WaveFunctionK; 3]> {
    if let ChiSpec::Custom(_) = chi {
        return Err(Error::UnsupportedChi(
            "the position operator needs a differentiable chi convention (zero or minus-phi)"
                .into(),
        ));
    }
    let wf = match at_time {
        Some(tau) => psi.evolve(tau - psi.time()),
        None => psi.clone(),
    };
    let grid = wf.grid();
    let n = grid.len();
    let i_unit = Complex64::new(0.0, 1.0);

    let mut comp: [(Vec<Complex64>, Vec<Complex64>); 3] = Default::default();
    for sigma in Helicity::BOTH {
        let c = wf.amplitudes(sigma);
        let phased: Vec<Complex64> =
            (0..n).map(|idx| c[idx] * chi.phase(sigma, idx, grid.kvec(idx))).collect();
        let grads = gradient(grid, &phased);
        for (axis, g) in grads.into_iter().enumerate() {
            let amp: Vec<Complex64> = (0..n)
                .map(|idx| i_unit * g[idx] * chi.phase(sigma, idx, grid.kvec(idx)).conj())
                .collect();
            match sigma {
                Helicity::Plus => comp[axis].0 = amp,
                Helicity::Minus => comp[axis].1 = amp,
            }
        }
    }
    Ok(comp.map(|(cp, cm)| wf.with_amplitudes(cp, cm)))
}

/// Expectation value ⟨r̂⟩ of a state (normalizing internally).
pub fn expectation_position(psi: &WaveFunctionK, chi: &ChiSpec) -> Result<[Complex64; 3]> {
    let rpsi = apply_position_operator(psi, chi, None)?;
    let n2 = psi.qed_norm_sq();
    if !(n2 > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for axis in 0..3 {
        out[axis] = sp_transverse(psi, &rpsi[axis], psi.alpha())? / n2;
    }
    Ok(out)
}

/// Max over components of |⟨r̂^(-α)Φ|Ψ⟩ - ⟨Φ|r̂^(α)Ψ⟩| in the transverse
/// form; small for smooth decaying states.
///
/// This unconjugated equality is operator Hermiticity (pseudo-Hermiticity
/// for α = ±1/2) in the physicists' bra-linear product: moving i∇ across
/// the pairing costs one integration by parts, whose boundary term is what
/// the defect measures.
pub fn hermiticity_defect(
    phi: &WaveFunctionK,
    psi: &WaveFunctionK,
    alpha: FormExponent,
    chi: &ChiSpec,
) -> Result<f64> {
    check_same_grid(phi, psi)?;
    let r_phi = apply_position_operator(phi, chi, None)?;
    let r_psi = apply_position_operator(psi, chi, None)?;
    let mut defect: f64 = 0.0;
    for axis in 0..3 {
        let lhs = sp_transverse(&r_phi[axis], psi, alpha)?;
        let rhs = sp_transverse(phi, &r_psi[axis], alpha)?;
        defect = defect.max((lhs - rhs).norm());
    }
    Ok(defect)
}

/// ‖[r̂_a, r̂_b]ψ‖ maximized over the three component pairs.
pub fn commutator_norm(psi: &WaveFunctionK, chi: &ChiSpec) -> Result<f64> {
    let first = apply_position_operator(psi, chi, None)?;
    let mut worst: f64 = 0.0;
    for (a, b) in [(0usize, 1usize), (1, 2), (2, 0)] {
        let ab = apply_position_operator(&first[b], chi, None)?;
        let ba = apply_position_operator(&first[a], chi, None)?;
        let x = &ab[a];
        let y = &ba[b];
        let mut norm2 = 0.0;
        for sigma in Helicity::BOTH {
            let cx = x.amplitudes(sigma);
            let cy = y.amplitudes(sigma);
            norm2 += crate::sum::sum_indexed_real(cx.len(), |i| {
                (cx[i] - cy[i]).norm_sqr() * psi.grid().weight(i)
            });
        }
        worst = worst.max(norm2.sqrt());
    }
    Ok(worst)
}
