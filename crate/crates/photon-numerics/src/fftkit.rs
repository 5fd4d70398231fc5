//! Centered discrete Fourier transforms on the Cartesian lattice.
//!
//! With nodes k_a = -k_max + aΔk and the dual nodes r_b = -r_max + bΔr,
//! the relation Δk Δr n = 2π gives
//!
//! ```text
//! exp(±i k_a r_b) = (-1)^(a+b) exp(±2πi a b / n)        (n/2 even)
//! ```
//!
//! so the physically centered sums Σ_a f_a exp(±i k_a r_b) reduce to plain
//! (I)DFTs with a parity pre/post twiddle. All grid sizes are powers of two
//! ≥ 8, for which n/2 is even, making the leading phase exactly 1.

use crate::grid::CartesianGrid;
use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

/// Transform sign convention: `Plus` computes Σ f(k) e^{+ik·r} (synthesis
/// k → r), `Minus` computes Σ F(r) e^{-ik·r}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn plan(n: usize, sign: Sign) -> Arc<dyn Fft<f64>> {
    let dir = match sign {
        Sign::Plus => FftDirection::Inverse,  // e^{+2πi ab/n}, unnormalized
        Sign::Minus => FftDirection::Forward, // e^{-2πi ab/n}
    };
    FftPlanner::new().plan_fft(n, dir)
}

fn apply_parity(n: usize, data: &mut [Complex64]) {
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if (i + j + l) % 2 == 1 {
                    let idx = (i * n + j) * n + l;
                    data[idx] = -data[idx];
                }
            }
        }
    }
}

/// In-place unnormalized 3-D DFT over the row-major n³ cube.
fn dft3(n: usize, data: &mut [Complex64], sign: Sign) {
    let fft = plan(n, sign);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut line = vec![Complex64::new(0.0, 0.0); n];

    // Axis z: contiguous lines.
    for chunk in data.chunks_exact_mut(n) {
        fft.process_with_scratch(chunk, &mut scratch);
    }
    // Axis y: stride n.
    for i in 0..n {
        for l in 0..n {
            for j in 0..n {
                line[j] = data[(i * n + j) * n + l];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for j in 0..n {
                data[(i * n + j) * n + l] = line[j];
            }
        }
    }
    // Axis x: stride n².
    for j in 0..n {
        for l in 0..n {
            for i in 0..n {
                line[i] = data[(i * n + j) * n + l];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for i in 0..n {
                data[(i * n + j) * n + l] = line[i];
            }
        }
    }
}

/// Centered transform G_b = Σ_a f_a exp(±i k_a·r_b), unnormalized.
///
/// Both `f` and the result are indexed row-major over the n³ cube; the input
/// lives on the symmetric k-lattice (respectively r-lattice), the output on
/// its dual.
pub fn centered_transform_3d(n: usize, samples: &[Complex64], sign: Sign) -> Vec<Complex64> {
    assert_eq!(samples.len(), n * n * n);
    let mut data = samples.to_vec();
    apply_parity(n, &mut data);
    dft3(n, &mut data, sign);
    apply_parity(n, &mut data);
    data
}

/// Spectral partial derivative ∂f/∂k_axis of a lattice function of k.
///
/// The function is expanded in exp(i k·r_b) with the dual values r_b as
/// frequencies; the unpaired Nyquist frequency (b = 0, r = -r_max) is
/// zeroed, the standard choice for differentiation.
pub fn spectral_derivative(grid: &CartesianGrid, f: &[Complex64], axis: usize) -> Vec<Complex64> {
    let n = grid.n();
    assert_eq!(f.len(), n * n * n);
    assert!(axis < 3);
    let fft_fwd = plan(n, Sign::Minus);
    let fft_inv = plan(n, Sign::Plus);
    let mut scratch = vec![
        Complex64::new(0.0, 0.0);
        fft_fwd.get_inplace_scratch_len().max(fft_inv.get_inplace_scratch_len())
    ];

    // i·r_b multipliers; Nyquist bin b = 0 removed.
    let r0 = -grid.r_max();
    let mut mult: Vec<Complex64> = (0..n)
        .map(|b| Complex64::new(0.0, r0 + b as f64 * grid.dr()))
        .collect();
    mult[0] = Complex64::new(0.0, 0.0);

    let mut out = f.to_vec();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut for_each_line = |out: &mut [Complex64], gather: &dyn Fn(usize, usize) -> usize| {
        for p in 0..n {
            for q in 0..n {
                for a in 0..n {
                    line[a] = out[gather(p * n + q, a)];
                }
                // Parity in, forward DFT, multiply, inverse DFT, parity
                // out; the b-parities cancel between the two transforms.
                for (a, v) in line.iter_mut().enumerate() {
                    if a % 2 == 1 {
                        *v = -*v;
                    }
                }
                fft_fwd.process_with_scratch(&mut line, &mut scratch);
                for (b, v) in line.iter_mut().enumerate() {
                    *v *= mult[b];
                }
                fft_inv.process_with_scratch(&mut line, &mut scratch);
                let scale = 1.0 / n as f64;
                for (a, v) in line.iter_mut().enumerate() {
                    *v *= scale;
                    if a % 2 == 1 {
                        *v = -*v;
                    }
                }
                for a in 0..n {
                    out[gather(p * n + q, a)] = line[a];
                }
            }
        }
    };

    match axis {
        0 => for_each_line(&mut out, &|pq, a| {
            let (j, l) = (pq / n, pq % n);
            (a * n + j) * n + l
        }),
        1 => for_each_line(&mut out, &|pq, a| {
            let (i, l) = (pq / n, pq % n);
            (i * n + a) * n + l
        }),
        _ => for_each_line(&mut out, &|pq, a| {
            let (i, j) = (pq / n, pq % n);
            (i * n + j) * n + a
        }),
    }
    out
}
