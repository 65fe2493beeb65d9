//! Central finite differences over matrix-valued maps of matrix arguments.
//!
//! Inputs and outputs are flattened row-major and concatenated; the maps are
//! holomorphic in the entries, so a real step recovers the complex derivative.

use num_complex::Complex;

use crate::matrix::CMat;
use crate::scalar::Real;

/// Default step for Jacobian cross-checks.
pub const JACOBIAN_STEP: f64 = 1e-6;
/// Default step for Jacobiator evaluation.
pub const JACOBIATOR_STEP: f64 = 1e-5;

/// Jacobian of `f` at `inputs`; rows index the concatenated outputs, columns
/// the concatenated input entries.
pub fn jacobian<T: Real, F>(f: F, inputs: &[CMat<T>], h: T) -> CMat<T>
where
    F: Fn(&[CMat<T>]) -> Vec<CMat<T>>,
{
    let out_len: usize = f(inputs).iter().map(|m| m.rows() * m.cols()).sum();
    let in_len: usize = inputs.iter().map(|m| m.rows() * m.cols()).sum();
    let mut jac = CMat::zeros(out_len, in_len);
    let mut col = 0;
    for (which, m) in inputs.iter().enumerate() {
        for e in 0..m.rows() * m.cols() {
            let shifted = |sign: T| {
                let mut args = inputs.to_vec();
                let slot = &mut args[which].as_mut_slice()[e];
                *slot = *slot + Complex::new(sign * h, T::zero());
                f(&args)
            };
            let plus = shifted(T::one());
            let minus = shifted(-T::one());
            let inv = T::one() / (h + h);
            let mut row = 0;
            for (p, q) in plus.iter().zip(&minus) {
                for (a, b) in p.as_slice().iter().zip(q.as_slice()) {
                    jac[(row, col)] = (*a - *b).scale(inv);
                    row += 1;
                }
            }
            col += 1;
        }
    }
    jac
}

/// Max over entries of `|analytic - numeric| / max(1, |numeric|)`.
pub fn relative_error<T: Real>(analytic: &CMat<T>, numeric: &CMat<T>) -> T {
    analytic
        .as_slice()
        .iter()
        .zip(numeric.as_slice())
        .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm() / T::one().max(b.norm())))
}
