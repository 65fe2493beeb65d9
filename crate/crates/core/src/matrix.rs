//! Small dense complex matrices, row-major.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{max_abs, Real, C};

#[derive(Clone, PartialEq)]
pub struct CMat<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> fmt::Debug for CMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<C<T>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Real matrix from `f64` rows; panics on ragged input (used for literals).
    pub fn real(rows: &[&[f64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| C::new(T::lit(x), T::zero())).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Diagonal matrix.
    pub fn diag(d: &[C<T>]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { C::zero() })
    }

    /// Matrix unit `E_ij`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = C::one();
        m
    }

    /// The flip `P(e_i ⊗ e_j) = e_j ⊗ e_i` on `C^n ⊗ C^n`.
    pub fn flip(n: usize) -> Self {
        let mut p = Self::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                p[(j * n + i, i * n + j)] = C::one();
            }
        }
        p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C<T>] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C<T>> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = *d + a * *s;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| *z * s).collect() }
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(C::new(s, T::zero()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).fold(C::zero(), |a, b| a + b)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        Self::from_fn(r, c, |i, j| {
            self[(i / rhs.rows, j / rhs.cols)] * rhs[(i % rhs.rows, j % rhs.cols)]
        })
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Max-entry norm.
    pub fn max_abs(&self) -> T {
        max_abs(&self.data)
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Frobenius inner product `Σ conj(self_ij) rhs_ij`.
    pub fn inner(&self, rhs: &Self) -> C<T> {
        self.data.iter().zip(&rhs.data).fold(C::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    pub fn max_diff(&self, rhs: &Self) -> T {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        self.data.iter().zip(&rhs.data).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// Largest imaginary part in modulus.
    pub fn max_imag(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.im.abs()))
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// LU decomposition with partial pivoting. Returns `(lu, perm, sign)` or
    /// `None` when a pivot vanishes relative to the matrix scale.
    fn lu(&self) -> Option<(Self, Vec<usize>, T)> {
        assert!(self.is_square(), "LU of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = T::one();
        let scale = self.max_abs();
        let floor = scale * T::epsilon() * T::from_usize(n.max(1)).unwrap();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .fold((k, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= floor || pmax.is_zero() {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[(k, k)];
            for i in (k + 1)..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                for j in (k + 1)..n {
                    let v = a[(k, j)];
                    a[(i, j)] = a[(i, j)] - f * v;
                }
            }
        }
        Some((a, perm, sign))
    }

    pub fn determinant(&self) -> C<T> {
        match self.lu() {
            None => C::zero(),
            Some((lu, _, sign)) => {
                (0..self.rows).fold(C::new(sign, T::zero()), |acc, i| acc * lu[(i, i)])
            }
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let (lu, perm, _) = self.lu().ok_or(Error::Singular)?;
        let mut inv = Self::zeros(n, n);
        for col in 0..n {
            // forward substitution on the permuted unit vector
            let mut y = vec![C::zero(); n];
            for i in 0..n {
                let mut s = if perm[i] == col { C::one() } else { C::zero() };
                for (j, yj) in y.iter().enumerate().take(i) {
                    s = s - lu[(i, j)] * *yj;
                }
                y[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = y[i];
                for j in (i + 1)..n {
                    s = s - lu[(i, j)] * inv[(j, col)];
                }
                inv[(i, col)] = s / lu[(i, i)];
            }
        }
        Ok(inv)
    }

    /// Matrix exponential by scaling and squaring with a Taylor kernel.
    pub fn exp(&self) -> Self {
        assert!(self.is_square(), "exp of non-square matrix");
        let norm = self.max_abs() * T::from_usize(self.rows.max(1)).unwrap();
        let mut squarings = 0u32;
        let mut s = T::one();
        while norm * s > T::lit(0.5) {
            s = s * T::lit(0.5);
            squarings += 1;
        }
        let a = self.scale_re(s);
        let mut term = Self::identity(self.rows);
        let mut sum = term.clone();
        for k in 1..=20 {
            term = term.matmul(&a).scale_re(T::one() / T::from_usize(k).unwrap());
            sum = &sum + &term;
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }
}

impl<T: Real> Index<(usize, usize)> for CMat<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &CMat<T> {
    type Output = CMat<T>;
    fn add(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMat<T> {
    type Output = CMat<T>;
    fn sub(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<T: Real> Mul for &CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: &CMat<T>) -> CMat<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Neg for &CMat<T> {
    type Output = CMat<T>;
    fn neg(self) -> CMat<T> {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| -*z).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn inverse_roundtrip() {
        let a = CMat::<f64>::from_rows(vec![
            vec![c(2.0, 1.0), c(0.5, 0.0), c(0.0, -1.0)],
            vec![c(1.0, 0.0), c(3.0, 0.0), c(0.2, 0.3)],
            vec![c(0.0, 0.0), c(-1.0, 0.5), c(1.5, 0.0)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.matmul(&inv).max_diff(&CMat::identity(3)) < 1e-13);
        let det = a.determinant();
        assert!((det * inv.determinant() - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn singular_is_rejected() {
        let a = CMat::<f64>::real(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(a.inverse(), Err(Error::Singular)));
        assert!(a.determinant().norm() < 1e-14);
    }

    #[test]
    fn exp_of_nilpotent_and_diagonal() {
        let n = CMat::<f64>::real(&[&[0.0, 3.0], &[0.0, 0.0]]);
        assert!(n.exp().max_diff(&CMat::real(&[&[1.0, 3.0], &[0.0, 1.0]])) < 1e-14);
        let d = CMat::<f64>::real(&[&[2.0, 0.0], &[0.0, -1.5]]);
        let e = d.exp();
        assert!((e[(0, 0)].re - 2f64.exp()).abs() < 1e-12);
        assert!((e[(1, 1)].re - (-1.5f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn flip_squares_to_identity() {
        for n in 1..4 {
            let p = CMat::<f64>::flip(n);
            assert_eq!(p.matmul(&p), CMat::identity(n * n));
        }
        // P (A ⊗ B) P = B ⊗ A
        let a = CMat::<f64>::real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = CMat::<f64>::real(&[&[0.0, -1.0], &[5.0, 0.5]]);
        let p = CMat::flip(2);
        assert!(p.matmul(&a.kron(&b)).matmul(&p).max_diff(&b.kron(&a)) < 1e-15);
    }
}
