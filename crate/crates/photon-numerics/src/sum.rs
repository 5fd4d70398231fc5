//! Deterministic compensated summation.
//!
//! Quadrature reductions use Neumaier's variant of Kahan summation with a
//! fixed chunk layout, so results are bit-identical regardless of the rayon
//! thread count.

use num_complex::Complex64;
use rayon::prelude::*;

const CHUNK: usize = 4096;

/// Neumaier-compensated sum of an f64 slice.
pub fn neumaier(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn neumaier_c64<I: Iterator<Item = Complex64>>(values: I) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for v in values {
        let t = sum + v;
        comp.re += if sum.re.abs() >= v.re.abs() {
            (sum.re - t.re) + v.re
        } else {
            (v.re - t.re) + sum.re
        };
        comp.im += if sum.im.abs() >= v.im.abs() {
            (sum.im - t.im) + v.im
        } else {
            (v.im - t.im) + sum.im
        };
        sum = t;
    }
    sum + comp
}

/// Compensated sum of `f(i)` over `0..n`, parallelized over fixed chunks.
///
/// Chunk boundaries depend only on `n`, and each partial as well as the
/// final combination is itself compensated, so the result does not depend
/// on how rayon schedules the chunks.
pub fn sum_indexed<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let partials: Vec<Complex64> = (0..n)
        .into_par_iter()
        .chunks(CHUNK)
        .map(|chunk| neumaier_c64(chunk.into_iter().map(&f)))
        .collect();
    neumaier_c64(partials.into_iter())
}

/// Real-valued variant of [`sum_indexed`].
pub fn sum_indexed_real<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let partials: Vec<f64> = (0..n)
        .into_par_iter()
        .chunks(CHUNK)
        .map(|chunk| {
            let vals: Vec<f64> = chunk.into_iter().map(&f).collect();
            neumaier(&vals)
        })
        .collect();
    neumaier(&partials)
}
