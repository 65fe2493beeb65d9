//! Lie-algebra tensor calculus over a matrix basis.
//!
//! Elements of `g`, `g ⊗ g` and `g ⊗ g ⊗ g` are stored by their coefficients
//! in a fixed basis `X_1..X_d`. Brackets are contracted through the structure
//! constants `[X_i, X_j] = Σ_k c[i][j][k] X_k`, so the classical Yang–Baxter
//! expression and its mixed variants never leave coefficient space.
//!
//! Wedge convention: `X ∧ Y = X ⊗ Y - Y ⊗ X` (no factor ½).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::GroupPoint;
use crate::matrix::CMat;
use crate::scalar::{default_tolerance, max_abs, Real, C};

/// A Lie algebra given by a basis of `n × n` complex matrices.
#[derive(Debug, Clone)]
pub struct LieAlgebraRep<T: Real> {
    dim: usize,
    n: usize,
    basis: Vec<CMat<T>>,
    structure: Vec<C<T>>,
    gram_inv: CMat<T>,
    tol: T,
}

impl<T: Real> LieAlgebraRep<T> {
    /// Build from a basis, deriving the structure constants by expanding every
    /// commutator back into the basis.
    pub fn from_basis(basis: Vec<CMat<T>>) -> Result<Self> {
        Self::from_basis_with_tolerance(basis, default_tolerance())
    }

    pub fn from_basis_with_tolerance(basis: Vec<CMat<T>>, tol: T) -> Result<Self> {
        let (dim, n, gram_inv) = Self::prepare(&basis)?;
        let mut alg = Self { dim, n, basis, structure: vec![C::zero(); dim * dim * dim], gram_inv, tol };
        for i in 0..dim {
            for j in 0..dim {
                let comm = alg.basis[i].commutator(&alg.basis[j]);
                let coeffs = alg.expand(&comm).map_err(|e| match e {
                    Error::LeavesAlgebra { residual } => Error::NotClosed { residual },
                    other => other,
                })?;
                for (k, ck) in coeffs.into_iter().enumerate() {
                    alg.structure[(i * dim + j) * dim + k] = ck;
                }
            }
        }
        alg.validate_structure()?;
        Ok(alg)
    }

    /// Build from a basis and explicitly supplied structure constants
    /// (`structure[(i*d + j)*d + k] = c[i][j][k]`); closure is checked once.
    pub fn with_structure_constants(basis: Vec<CMat<T>>, structure: Vec<C<T>>, tol: T) -> Result<Self> {
        let (dim, n, gram_inv) = Self::prepare(&basis)?;
        if structure.len() != dim * dim * dim {
            return Err(Error::Dimension(format!(
                "{} structure constants for dimension {dim}",
                structure.len()
            )));
        }
        let alg = Self { dim, n, basis, structure, gram_inv, tol };
        let residual = alg.closure_residual();
        if residual > tol {
            return Err(Error::NotClosed { residual: residual.to_f64_lossy() });
        }
        alg.validate_structure()?;
        Ok(alg)
    }

    fn prepare(basis: &[CMat<T>]) -> Result<(usize, usize, CMat<T>)> {
        let first = basis.first().ok_or_else(|| Error::Input("empty basis".into()))?;
        let n = first.rows();
        if basis.iter().any(|x| x.rows() != n || x.cols() != n) {
            return Err(Error::Dimension("basis matrices must all be n x n".into()));
        }
        let dim = basis.len();
        let gram = CMat::from_fn(dim, dim, |a, b| basis[a].inner(&basis[b]));
        let gram_inv = gram
            .inverse()
            .map_err(|_| Error::Input("basis matrices are linearly dependent".into()))?;
        Ok((dim, n, gram_inv))
    }

    fn validate_structure(&self) -> Result<()> {
        let anti = self.antisymmetry_residual();
        let jac = self.jacobi_residual();
        if anti > self.tol || jac > self.tol {
            return Err(Error::Input(format!(
                "structure constants fail antisymmetry ({anti:e}) or Jacobi ({jac:e})"
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[CMat<T>] {
        &self.basis
    }

    pub fn tolerance(&self) -> T {
        self.tol
    }

    pub fn set_tolerance(&mut self, tol: T) {
        self.tol = tol;
    }

    /// `c[i][j][k]`.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> C<T> {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[C<T>] {
        &self.structure
    }

    /// `max_{ij} ‖[X_i,X_j] - Σ_k c[i][j][k] X_k‖_max`.
    pub fn closure_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let comm = self.basis[i].commutator(&self.basis[j]);
                let coeffs: Vec<C<T>> = (0..self.dim).map(|k| self.c(i, j, k)).collect();
                worst = worst.max(comm.max_diff(&self.element(&coeffs)));
            }
        }
        worst
    }

    pub fn antisymmetry_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    worst = worst.max((self.c(i, j, k) + self.c(j, i, k)).norm());
                }
            }
        }
        worst
    }

    pub fn jacobi_residual(&self) -> T {
        let d = self.dim;
        let mut worst = T::zero();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let s = (0..d).fold(C::zero(), |s, m| {
                            s + self.c(i, j, m) * self.c(m, k, l)
                                + self.c(j, k, m) * self.c(m, i, l)
                                + self.c(k, i, m) * self.c(m, j, l)
                        });
                        worst = worst.max(s.norm());
                    }
                }
            }
        }
        worst
    }

    /// `Σ x^k X_k`.
    pub fn element(&self, coeffs: &[C<T>]) -> CMat<T> {
        assert_eq!(coeffs.len(), self.dim, "coefficient vector length");
        let mut out = CMat::zeros(self.n, self.n);
        for (x, ck) in self.basis.iter().zip(coeffs) {
            if !ck.is_zero() {
                out = &out + &x.scale(*ck);
            }
        }
        out
    }

    /// Least-squares coordinates of `m` in the basis; errors when the
    /// re-expansion residual exceeds the algebra tolerance.
    pub fn expand(&self, m: &CMat<T>) -> Result<Vec<C<T>>> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Dimension(format!(
                "expected {n}x{n} matrix, got {}x{}",
                m.rows(),
                m.cols(),
                n = self.n
            )));
        }
        let b: Vec<C<T>> = self.basis.iter().map(|x| x.inner(m)).collect();
        let coeffs: Vec<C<T>> = (0..self.dim)
            .map(|k| (0..self.dim).fold(C::zero(), |s, a| s + self.gram_inv[(k, a)] * b[a]))
            .collect();
        let residual = m.max_diff(&self.element(&coeffs));
        if residual > self.tol * (T::one() + m.max_abs()) {
            return Err(Error::LeavesAlgebra { residual: residual.to_f64_lossy() });
        }
        Ok(coeffs)
    }

    /// Coordinates of an `n² × n²` matrix in the basis `X_k ⊗ X_l`.
    pub fn expand2(&self, m: &CMat<T>) -> Result<CoefTensor2<T>> {
        let nn = self.n * self.n;
        if m.rows() != nn || m.cols() != nn {
            return Err(Error::Dimension(format!("expected {nn}x{nn} matrix")));
        }
        let d = self.dim;
        let mut b = vec![C::zero(); d * d];
        for a in 0..d {
            for c in 0..d {
                b[a * d + c] = self.basis[a].kron(&self.basis[c]).inner(m);
            }
        }
        let mut t = CoefTensor2::zeros(d);
        for k in 0..d {
            for l in 0..d {
                let mut s = C::zero();
                for a in 0..d {
                    for c in 0..d {
                        s = s + self.gram_inv[(k, a)] * self.gram_inv[(l, c)] * b[a * d + c];
                    }
                }
                t.set(k, l, s);
            }
        }
        let residual = m.max_diff(&t.matrix_form(self));
        if residual > self.tol * (T::one() + m.max_abs()) {
            return Err(Error::LeavesAlgebra { residual: residual.to_f64_lossy() });
        }
        Ok(t)
    }
}

/// Element of `g ⊗ g`: `Σ t^{kl} X_k ⊗ X_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefTensor2<T: Real> {
    dim: usize,
    coeffs: Vec<C<T>>,
}

impl<T: Real> CoefTensor2<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, coeffs: vec![C::zero(); dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut t = Self::zeros(dim);
        for k in 0..dim {
            for l in 0..dim {
                t.coeffs[k * dim + l] = f(k, l);
            }
        }
        t
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<C<T>>) -> Result<Self> {
        if coeffs.len() != dim * dim {
            return Err(Error::Dimension(format!("{} coefficients for a {dim}x{dim} tensor", coeffs.len())));
        }
        Ok(Self { dim, coeffs })
    }

    /// `coef · X_i ⊗ X_j`.
    pub fn simple(dim: usize, i: usize, j: usize, coef: C<T>) -> Self {
        let mut t = Self::zeros(dim);
        t.set(i, j, coef);
        t
    }

    /// `coef · X_i ∧ X_j = coef · (X_i ⊗ X_j - X_j ⊗ X_i)`.
    pub fn wedge(dim: usize, i: usize, j: usize, coef: C<T>) -> Self {
        let mut t = Self::zeros(dim);
        t.set(i, j, t.get(i, j) + coef);
        t.set(j, i, t.get(j, i) - coef);
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, k: usize, l: usize) -> C<T> {
        self.coeffs[k * self.dim + l]
    }

    #[inline]
    pub fn set(&mut self, k: usize, l: usize, v: C<T>) {
        self.coeffs[k * self.dim + l] = v;
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "tensor dimension");
        Self { dim: self.dim, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| *a + *b).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "tensor dimension");
        Self { dim: self.dim, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| *a - *b).collect() }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { dim: self.dim, coeffs: self.coeffs.iter().map(|z| *z * s).collect() }
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(C::new(s, T::zero()))
    }

    /// Leg flip `P t`: `t^{kl} ↦ t^{lk}`.
    pub fn flipped(&self) -> Self {
        Self::from_fn(self.dim, |k, l| self.get(l, k))
    }

    pub fn max_abs(&self) -> T {
        max_abs(&self.coeffs)
    }

    pub fn max_diff(&self, rhs: &Self) -> T {
        self.sub(rhs).max_abs()
    }

    pub fn antisymmetry_residual(&self) -> T {
        self.add(&self.flipped()).max_abs()
    }

    pub fn is_antisymmetric(&self, tol: T) -> bool {
        self.antisymmetry_residual() <= tol
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imag(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, z| m.max(z.im.abs()))
    }

    pub fn max_real(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, z| m.max(z.re.abs()))
    }

    /// `M(t) = Σ t^{kl} X_k ⊗ X_l` as an `n² × n²` matrix.
    pub fn matrix_form(&self, alg: &LieAlgebraRep<T>) -> CMat<T> {
        assert_eq!(self.dim, alg.dim(), "tensor/algebra dimension");
        let nn = alg.n() * alg.n();
        let mut out = CMat::zeros(nn, nn);
        for k in 0..self.dim {
            for l in 0..self.dim {
                let t = self.get(k, l);
                if !t.is_zero() {
                    out = &out + &alg.basis()[k].kron(&alg.basis()[l]).scale(t);
                }
            }
        }
        out
    }
}

/// Element of `g ⊗ g ⊗ g` by coefficients `T^{abc}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefTensor3<T: Real> {
    dim: usize,
    coeffs: Vec<C<T>>,
}

impl<T: Real> CoefTensor3<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, coeffs: vec![C::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> C<T> {
        self.coeffs[(a * self.dim + b) * self.dim + c]
    }

    #[inline]
    fn add_at(&mut self, a: usize, b: usize, c: usize, v: C<T>) {
        let idx = (a * self.dim + b) * self.dim + c;
        self.coeffs[idx] = self.coeffs[idx] + v;
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn max_abs(&self) -> T {
        max_abs(&self.coeffs)
    }

    pub fn is_zero(&self, tol: T) -> bool {
        self.max_abs() <= tol
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { dim: self.dim, coeffs: self.coeffs.iter().map(|z| *z * s).collect() }
    }

    pub fn max_diff(&self, rhs: &Self) -> T {
        self.coeffs.iter().zip(&rhs.coeffs).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }
}

/// `z^k = Σ_{ij} x^i y^j c[i][j][k]`.
pub fn bracket<T: Real>(alg: &LieAlgebraRep<T>, x: &[C<T>], y: &[C<T>]) -> Result<Vec<C<T>>> {
    let d = alg.dim();
    if x.len() != d || y.len() != d {
        return Err(Error::Dimension(format!(
            "bracket operands of length {} and {} in dimension {d}",
            x.len(),
            y.len()
        )));
    }
    let mut z = vec![C::zero(); d];
    for i in 0..d {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..d {
            let xy = x[i] * y[j];
            if xy.is_zero() {
                continue;
            }
            for (k, zk) in z.iter_mut().enumerate() {
                *zk = *zk + xy * alg.c(i, j, k);
            }
        }
    }
    Ok(z)
}

/// `(t_sym, t_anti)` with `t_sym + t_anti = t`.
pub fn split_sym_anti<T: Real>(t: &CoefTensor2<T>) -> (CoefTensor2<T>, CoefTensor2<T>) {
    let half = T::lit(0.5);
    let flip = t.flipped();
    (t.add(&flip).scale_re(half), t.sub(&flip).scale_re(half))
}

/// Coefficient matrix of `Ad_g`: column `k` holds the coordinates of `g X_k g⁻¹`.
pub fn adjoint_matrix<T: Real>(alg: &LieAlgebraRep<T>, g: &GroupPoint<T>) -> Result<CMat<T>> {
    let d = alg.dim();
    let mut a = CMat::zeros(d, d);
    for (k, x) in alg.basis().iter().enumerate() {
        let conj = g.matrix().matmul(x).matmul(g.inverse());
        for (row, v) in alg.expand(&conj)?.into_iter().enumerate() {
            a[(row, k)] = v;
        }
    }
    Ok(a)
}

/// `Ad_g ⊗ Ad_g` applied to `t`.
pub fn adjoint_action2<T: Real>(
    alg: &LieAlgebraRep<T>,
    g: &GroupPoint<T>,
    t: &CoefTensor2<T>,
) -> Result<CoefTensor2<T>> {
    let a = adjoint_matrix(alg, g)?;
    Ok(apply_adjoint2(&a, t))
}

pub(crate) fn apply_adjoint2<T: Real>(a: &CMat<T>, t: &CoefTensor2<T>) -> CoefTensor2<T> {
    let d = t.dim();
    let mut tmp = CoefTensor2::<T>::zeros(d);
    // tmp = A t
    for x in 0..d {
        for l in 0..d {
            let s = (0..d).fold(C::<T>::zero(), |s, k| s + a[(x, k)] * t.get(k, l));
            tmp.set(x, l, s);
        }
    }
    // A t Aᵀ
    CoefTensor2::from_fn(d, |x, y| (0..d).fold(C::<T>::zero(), |s, l| s + tmp.get(x, l) * a[(y, l)]))
}

/// `Ad_g ⊗ Ad_g ⊗ Ad_g` applied to `t`.
pub fn adjoint_action3<T: Real>(
    alg: &LieAlgebraRep<T>,
    g: &GroupPoint<T>,
    t: &CoefTensor3<T>,
) -> Result<CoefTensor3<T>> {
    let a = adjoint_matrix(alg, g)?;
    let d = t.dim();
    let mut out = CoefTensor3::zeros(d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = t.get(i, j, k);
                if v.is_zero() {
                    continue;
                }
                for x in 0..d {
                    let ax = a[(x, i)] * v;
                    for y in 0..d {
                        let axy = ax * a[(y, j)];
                        for z in 0..d {
                            out.add_at(x, y, z, axy * a[(z, k)]);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `max_m ‖[X_m ⊗ 1 + 1 ⊗ X_m, M(t)]‖_max`; zero exactly for ad-invariant `t`.
pub fn ad_invariance_residual<T: Real>(alg: &LieAlgebraRep<T>, t: &CoefTensor2<T>) -> T {
    let m = t.matrix_form(alg);
    let id = CMat::identity(alg.n());
    alg.basis()
        .iter()
        .map(|x| (&x.kron(&id) + &id.kron(x)).commutator(&m).max_abs())
        .fold(T::zero(), T::max)
}

// The three leg-pair brackets, each contracting one shared leg through c.

/// `[A_12, B_13]^{abc} = Σ_{ik} A^{ib} B^{kc} c[i][k][a]`.
fn bracket_12_13<T: Real>(alg: &LieAlgebraRep<T>, a: &CoefTensor2<T>, b: &CoefTensor2<T>, out: &mut CoefTensor3<T>) {
    let d = alg.dim();
    for i in 0..d {
        for k in 0..d {
            for x in 0..d {
                let cc = alg.c(i, k, x);
                if cc.is_zero() {
                    continue;
                }
                for y in 0..d {
                    let ay = a.get(i, y) * cc;
                    for z in 0..d {
                        out.add_at(x, y, z, ay * b.get(k, z));
                    }
                }
            }
        }
    }
}

/// `[A_12, B_23]^{abc} = Σ_{jk} A^{aj} B^{kc} c[j][k][b]`.
fn bracket_12_23<T: Real>(alg: &LieAlgebraRep<T>, a: &CoefTensor2<T>, b: &CoefTensor2<T>, out: &mut CoefTensor3<T>) {
    let d = alg.dim();
    for j in 0..d {
        for k in 0..d {
            for y in 0..d {
                let cc = alg.c(j, k, y);
                if cc.is_zero() {
                    continue;
                }
                for x in 0..d {
                    let ax = a.get(x, j) * cc;
                    for z in 0..d {
                        out.add_at(x, y, z, ax * b.get(k, z));
                    }
                }
            }
        }
    }
}

/// `[A_13, B_23]^{abc} = Σ_{jl} A^{aj} B^{bl} c[j][l][c]`.
fn bracket_13_23<T: Real>(alg: &LieAlgebraRep<T>, a: &CoefTensor2<T>, b: &CoefTensor2<T>, out: &mut CoefTensor3<T>) {
    let d = alg.dim();
    for j in 0..d {
        for l in 0..d {
            for z in 0..d {
                let cc = alg.c(j, l, z);
                if cc.is_zero() {
                    continue;
                }
                for x in 0..d {
                    let ax = a.get(x, j) * cc;
                    for y in 0..d {
                        out.add_at(x, y, z, ax * b.get(y, l));
                    }
                }
            }
        }
    }
}

/// `[w_12, w_13] + [w_12, w_23] + [w_13, w_23]`.
pub fn cybe<T: Real>(alg: &LieAlgebraRep<T>, w: &CoefTensor2<T>) -> CoefTensor3<T> {
    let mut out = CoefTensor3::zeros(alg.dim());
    bracket_12_13(alg, w, w, &mut out);
    bracket_12_23(alg, w, w, &mut out);
    bracket_13_23(alg, w, w, &mut out);
    out
}

/// The two mixed obstructions for an antisymmetric `r` and `w`:
///
/// `T1 = [r_12, w_13] + [r_12, w_23] + [w_13, w_23]`,
/// `T2 = [w_12, w_13] + [w_12, r_23] + [w_13, r_23]`.
pub fn mixed_obstructions<T: Real>(
    alg: &LieAlgebraRep<T>,
    r: &CoefTensor2<T>,
    w: &CoefTensor2<T>,
) -> Result<(CoefTensor3<T>, CoefTensor3<T>)> {
    let residual = r.antisymmetry_residual();
    if residual > alg.tolerance() {
        return Err(Error::NotAntisymmetric { residual: residual.to_f64_lossy() });
    }
    let d = alg.dim();
    let mut t1 = CoefTensor3::zeros(d);
    bracket_12_13(alg, r, w, &mut t1);
    bracket_12_23(alg, r, w, &mut t1);
    bracket_13_23(alg, w, w, &mut t1);
    let mut t2 = CoefTensor3::zeros(d);
    bracket_12_13(alg, w, w, &mut t2);
    bracket_12_23(alg, w, r, &mut t2);
    bracket_13_23(alg, w, r, &mut t2);
    Ok((t1, t2))
}

/// Which real form the symmetric part of a tensor lives in, relative to a
/// real basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuasitriangularSense {
    /// Symmetric part has (numerically) real coefficients.
    Real,
    /// Symmetric part has purely imaginary coefficients.
    Imaginary,
    /// Symmetric part is zero.
    Triangular,
    Mixed,
}

pub fn quasitriangular_sense<T: Real>(w: &CoefTensor2<T>, tol: T) -> QuasitriangularSense {
    let (sym, _) = split_sym_anti(w);
    match (sym.max_real() <= tol, sym.max_imag() <= tol) {
        (true, true) => QuasitriangularSense::Triangular,
        (false, true) => QuasitriangularSense::Real,
        (true, false) => QuasitriangularSense::Imaginary,
        (false, false) => QuasitriangularSense::Mixed,
    }
}
