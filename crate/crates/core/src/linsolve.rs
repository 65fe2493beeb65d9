//! Least-squares projection onto the span of a column family.
//!
//! Columns are orthonormalised by modified Gram-Schmidt with one
//! re-orthogonalisation pass. A column whose remainder falls below
//! `rel_threshold * (largest column norm)` is treated as dependent and
//! dropped, the Gram-Schmidt analogue of truncating small singular values.
//! Each orthonormal vector keeps its expansion over the retained columns so a
//! projection can be reported as an explicit combination of the inputs.
//!
//! Alongside, the columns are row-reduced by Gaussian elimination. When a
//! target reduces to exactly zero (as happens for small-integer data, where
//! elimination is exact but normalisation is not) the reported distance is
//! exactly zero rather than a roundoff-sized remainder.

use num_traits::Zero;

use crate::scalar::{Real, C};

/// Singular-value style cutoff used when no other threshold is given.
pub const DEFAULT_REL_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SpanBasis<T: Real> {
    dim: usize,
    q: Vec<Vec<C<T>>>,
    // expansion of q[k] over retained[0..=k]
    k: Vec<Vec<C<T>>>,
    retained: Vec<usize>,
    n_columns: usize,
    // (pivot index, reduced vector), each zero at every earlier pivot
    echelon: Vec<(usize, Vec<C<T>>)>,
}

#[derive(Debug, Clone)]
pub struct Projection<T: Real> {
    /// One coefficient per input column (zero for dropped columns).
    pub coefficients: Vec<C<T>>,
    /// Euclidean norm of `target - Σ coefficients[j] * column[j]`.
    pub distance: T,
}

fn dot<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter().zip(b).fold(C::zero(), |s, (x, y)| s + x.conj() * *y)
}

fn max_abs<T: Real>(a: &[C<T>]) -> T {
    a.iter().fold(T::zero(), |m, z| m.max(z.norm()))
}

fn norm<T: Real>(a: &[C<T>]) -> T {
    a.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

impl<T: Real> SpanBasis<T> {
    pub fn build(dim: usize, columns: &[Vec<C<T>>], rel_threshold: T) -> Self {
        let largest = columns.iter().map(|c| norm(c)).fold(T::zero(), T::max);
        let cutoff = largest * rel_threshold;
        let mut basis =
            Self { dim, q: vec![], k: vec![], retained: vec![], n_columns: columns.len(), echelon: vec![] };
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length");
            if basis.q.len() == dim {
                break;
            }
            let mut v = col.clone();
            let mut h = vec![C::<T>::zero(); basis.q.len()];
            for _pass in 0..2 {
                for (idx, qk) in basis.q.iter().enumerate() {
                    let proj = dot(qk, &v);
                    h[idx] = h[idx] + proj;
                    for (vi, qi) in v.iter_mut().zip(qk) {
                        *vi = *vi - proj * *qi;
                    }
                }
            }
            let nv = norm(&v);
            if nv <= cutoff || nv.is_zero() {
                continue;
            }
            let inv = T::one() / nv;
            for vi in &mut v {
                *vi = vi.scale(inv);
            }
            // q_new = (col_j - Σ h_k q_k) / nv, with q_k = Σ K_k,m col_{retained m}
            let r = basis.q.len();
            let mut coeff = vec![C::<T>::zero(); r + 1];
            coeff[r] = C::new(inv, T::zero());
            for (idx, hk) in h.iter().enumerate() {
                for (m, kkm) in basis.k[idx].iter().enumerate() {
                    coeff[m] = coeff[m] - *hk * *kkm * inv;
                }
            }
            basis.q.push(v);
            basis.k.push(coeff);
            basis.retained.push(j);
        }
        let abs_cutoff = columns.iter().map(|c| max_abs(c)).fold(T::zero(), T::max) * rel_threshold;
        for col in columns {
            if basis.echelon.len() == dim {
                break;
            }
            let v = basis.reduce(col.clone());
            let (pivot, big) = v.iter().enumerate().fold((0, T::zero()), |(bi, bv), (i, z)| {
                if z.norm() > bv {
                    (i, z.norm())
                } else {
                    (bi, bv)
                }
            });
            if big > abs_cutoff && !big.is_zero() {
                basis.echelon.push((pivot, v));
            }
        }
        basis
    }

    fn reduce(&self, mut v: Vec<C<T>>) -> Vec<C<T>> {
        for (p, e) in &self.echelon {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p] / e[*p];
            for (vi, ei) in v.iter_mut().zip(e) {
                if !ei.is_zero() {
                    *vi = *vi - f * *ei;
                }
            }
            v[*p] = C::zero();
        }
        v
    }

    /// Whether elimination reduces `target` to exactly zero.
    pub fn reduces_exactly(&self, target: &[C<T>]) -> bool {
        self.reduce(target.to_vec()).iter().all(|z| z.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn project(&self, target: &[C<T>]) -> Projection<T> {
        assert_eq!(target.len(), self.dim, "target length");
        let mut resid = target.to_vec();
        let mut alpha = vec![C::<T>::zero(); self.q.len()];
        for _pass in 0..2 {
            for (idx, qk) in self.q.iter().enumerate() {
                let p = dot(qk, &resid);
                alpha[idx] = alpha[idx] + p;
                for (ri, qi) in resid.iter_mut().zip(qk) {
                    *ri = *ri - p * *qi;
                }
            }
        }
        let mut coefficients = vec![C::<T>::zero(); self.n_columns];
        for (idx, a) in alpha.iter().enumerate() {
            for (m, kkm) in self.k[idx].iter().enumerate() {
                let col = self.retained[m];
                coefficients[col] = coefficients[col] + *a * *kkm;
            }
        }
        let distance = if self.reduces_exactly(target) { T::zero() } else { norm(&resid) };
        Projection { coefficients, distance }
    }
}

/// One-shot least-squares projection of `target` onto `columns`.
pub fn lstsq<T: Real>(columns: &[Vec<C<T>>], target: &[C<T>]) -> Projection<T> {
    let dim = target.len();
    SpanBasis::build(dim, columns, T::lit(DEFAULT_REL_THRESHOLD)).project(target)
}
