use crate::error::{Error, Result};
use crate::matrix::CMat;
use crate::scalar::Real;

/// An invertible square matrix standing for a group element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint<T: Real> {
    matrix: CMat<T>,
    inverse: CMat<T>,
}

impl<T: Real> GroupPoint<T> {
    /// Determinant modulus below which a matrix is rejected as singular.
    pub fn singularity_threshold() -> T {
        T::lit(1e-12)
    }

    pub fn new(matrix: CMat<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "group element must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.determinant().norm() <= Self::singularity_threshold() {
            return Err(Error::Singular);
        }
        let inverse = matrix.inverse()?;
        Ok(Self { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: CMat::identity(n), inverse: CMat::identity(n) }
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    pub fn inverse(&self) -> &CMat<T> {
        &self.inverse
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            matrix: self.matrix.matmul(&rhs.matrix),
            inverse: rhs.inverse.matmul(&self.inverse),
        }
    }

    pub fn inv(&self) -> Self {
        Self { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }
}
