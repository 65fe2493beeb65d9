//! Finite-dimensional R-matrices: Yang–Baxter and braid residuals, the
//! plain/hat conventions, star-structure report, the Drinfeld-type inverse
//! and the first-order (semiclassical) expansion about `q = 1`.
//!
//! Index convention: `R^{ij}_{kl}` sits at row `i·N + j`, column `k·N + l`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lie_tensor::{split_sym_anti, CoefTensor2, LieAlgebraRep};
use crate::matrix::CMat;
use crate::scalar::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `R`, acting on `V⊗V` and satisfying `R12 R13 R23 = R23 R13 R12`-type relations.
    Plain,
    /// `R̂ = P R`, satisfying the braid relation.
    Hat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RMat<T: Real> {
    n: usize,
    entries: CMat<T>,
    convention: Convention,
}

impl<T: Real> RMat<T> {
    pub fn new(n: usize, entries: CMat<T>, convention: Convention) -> Result<Self> {
        if entries.rows() != n * n || entries.cols() != n * n {
            return Err(Error::Dimension(format!(
                "R-matrix for N={n} must be {0}x{0}, got {1}x{2}",
                n * n,
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(Self { n, entries, convention })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, entries: CMat::identity(n * n), convention: Convention::Plain }
    }

    pub fn flip(n: usize) -> Self {
        Self { n, entries: CMat::flip(n), convention: Convention::Hat }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &CMat<T> {
        &self.entries
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// `R^{ij}_{kl}`.
    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize, l: usize) -> C<T> {
        self.entries[(i * self.n + j, k * self.n + l)]
    }

    /// The plain form `R` (multiplying a hat matrix by `P`).
    pub fn to_plain(&self) -> Self {
        match self.convention {
            Convention::Plain => self.clone(),
            Convention::Hat => Self {
                n: self.n,
                entries: CMat::flip(self.n).matmul(&self.entries),
                convention: Convention::Plain,
            },
        }
    }

    /// The hat form `R̂ = P R`.
    pub fn to_hat(&self) -> Self {
        match self.convention {
            Convention::Hat => self.clone(),
            Convention::Plain => Self {
                n: self.n,
                entries: CMat::flip(self.n).matmul(&self.entries),
                convention: Convention::Hat,
            },
        }
    }

    /// `P R̂ P` for a hat matrix.
    pub fn r21(&self) -> CMat<T> {
        let p = CMat::flip(self.n);
        p.matmul(&self.to_hat().entries).matmul(&p)
    }

    /// Same matrix with `scale` times an elementary unit added at `(row, col)`.
    pub fn perturbed(&self, row: usize, col: usize, scale: T) -> Self {
        let mut entries = self.entries.clone();
        entries[(row, col)] = entries[(row, col)] + Complex::new(scale, T::zero());
        Self { n: self.n, entries, convention: self.convention }
    }
}

fn legs<T: Real>(r: &CMat<T>, n: usize) -> (CMat<T>, CMat<T>, CMat<T>) {
    let id = CMat::identity(n);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    // P23 swaps the second and third tensor factors
    let p23 = id.kron(&CMat::flip(n));
    let r13 = p23.matmul(&r12).matmul(&p23);
    (r12, r13, r23)
}

/// `‖R12 R13 R23 - R23 R13 R12‖_max` on `V⊗V⊗V`. A hat input is converted to plain first.
pub fn qybe_residual<T: Real>(r: &RMat<T>) -> T {
    let plain = r.to_plain();
    let (r12, r13, r23) = legs(&plain.entries, plain.n);
    let lhs = r12.matmul(&r13).matmul(&r23);
    let rhs = r23.matmul(&r13).matmul(&r12);
    lhs.max_diff(&rhs)
}

/// `‖R̂12 R̂23 R̂12 - R̂23 R̂12 R̂23‖_max`. A plain input is converted to hat first.
pub fn braid_residual<T: Real>(r: &RMat<T>) -> T {
    let hat = r.to_hat();
    let id = CMat::identity(hat.n);
    let b12 = hat.entries.kron(&id);
    let b23 = id.kron(&hat.entries);
    let lhs = b12.matmul(&b23).matmul(&b12);
    let rhs = b23.matmul(&b12).matmul(&b23);
    lhs.max_diff(&rhs)
}

#[derive(Debug, Clone)]
pub struct Conventions<T: Real> {
    pub plain: CMat<T>,
    pub hat: CMat<T>,
    pub r21: CMat<T>,
    pub flip: CMat<T>,
}

pub fn conventions<T: Real>(r: &RMat<T>) -> Conventions<T> {
    Conventions {
        plain: r.to_plain().entries,
        hat: r.to_hat().entries,
        r21: r.r21(),
        flip: CMat::flip(r.n),
    }
}

/// `R_D := R⁻¹`, returned in the input's convention applied to the plain form.
pub fn drinfeld_rd<T: Real>(r: &RMat<T>) -> Result<RMat<T>> {
    let plain = r.to_plain();
    let inv = plain.entries.inverse()?;
    RMat::new(plain.n, inv, Convention::Plain)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarCheck<T: Real> {
    pub holds: bool,
    pub residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarReport<T: Real> {
    pub self_adjoint: StarCheck<T>,
    pub unitary: StarCheck<T>,
    pub involutive: StarCheck<T>,
}

/// Residuals `‖R̂ - R̂†‖`, `‖R̂ R̂† - I‖`, `‖R̂² - I‖` of the hat form.
pub fn star_report<T: Real>(r: &RMat<T>, tol: T) -> StarReport<T> {
    let h = r.to_hat().entries;
    let id = CMat::identity(h.rows());
    let check = |residual: T| StarCheck { holds: residual <= tol, residual };
    StarReport {
        self_adjoint: check(h.max_diff(&h.adjoint())),
        unitary: check(h.matmul(&h.adjoint()).max_diff(&id)),
        involutive: check(h.matmul(&h).max_diff(&id)),
    }
}

#[derive(Debug, Clone)]
pub struct Semiclassical<T: Real> {
    /// `dR/dq` at `q = 1`, scaled by `epsilon`.
    pub m: CMat<T>,
    /// `w` with `R ≈ I + i ε w`.
    pub w: CoefTensor2<T>,
    /// Antisymmetric part of `w`.
    pub r: CoefTensor2<T>,
    /// `s = i · sym(w)`, so `w = r - i s`.
    pub s: CoefTensor2<T>,
}

impl<T: Real> Semiclassical<T> {
    /// Whether `s` has real coefficients (then the symmetric part of `w` is imaginary).
    pub fn s_is_real(&self, tol: T) -> bool {
        self.s.max_imag() <= tol
    }
}

/// Central-difference steps for the derivative at `q = 1`.
pub const SEMICLASSICAL_STEPS: (f64, f64) = (1e-3, 5e-4);

/// First-order expansion of a family `q ↦ R(q)` with `R(1) = I`.
///
/// `M = dR/dq|_{q=1}` comes from central differences at the two steps in
/// [`SEMICLASSICAL_STEPS`] combined by one Richardson step. Then
/// `w = -i ε M` is expanded over `X_k ⊗ X_l`, `r = anti(w)` and `s = i sym(w)`.
pub fn semiclassical_w<T: Real, F>(family: F, alg: &LieAlgebraRep<T>, epsilon: T) -> Result<Semiclassical<T>>
where
    F: Fn(T) -> Result<RMat<T>>,
{
    let one = T::one();
    let r1 = family(one)?.to_plain();
    let tol = T::lit(1e-6);
    if r1.entries.max_diff(&CMat::identity(r1.entries.rows())) > tol {
        return Err(Error::Input("R(1) is not the identity".into()));
    }
    let central = |h: T| -> Result<CMat<T>> {
        let plus = family(one + h)?.to_plain().entries;
        let minus = family(one - h)?.to_plain().entries;
        Ok((&plus - &minus).scale_re(T::one() / (h + h)))
    };
    let (h1, h2) = (T::lit(SEMICLASSICAL_STEPS.0), T::lit(SEMICLASSICAL_STEPS.1));
    let d1 = central(h1)?;
    let d2 = central(h2)?;
    // step ratio 2, second-order error: (4 D(h/2) - D(h)) / 3
    let m = (&d2.scale_re(T::lit(4.0)) - &d1).scale_re(T::one() / T::lit(3.0)).scale_re(epsilon);
    let w_matrix = m.scale(-Complex::i());
    let w = alg.expand2(&w_matrix)?;
    let (sym, r) = split_sym_anti(&w);
    let s = sym.scale(Complex::i());
    Ok(Semiclassical { m, w, r, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{pauli_su2, standard_r_su2};
    use crate::scalar::c;

    #[test]
    fn qybe_examples() {
        assert_eq!(qybe_residual(&RMat::<f64>::identity(2)), 0.0);
        let r = standard_r_su2::<f64>(2.0).unwrap();
        assert!(qybe_residual(&r) <= 1e-12);
        let junk = RMat::<f64>::new(
            2,
            CMat::from_fn(4, 4, |i, j| c(((i * 7 + j * 3) % 5) as f64 * 0.3 - 0.5, 0.1 * j as f64)),
            Convention::Plain,
        )
        .unwrap();
        assert!(qybe_residual(&junk) > 0.1);
    }

    #[test]
    fn braid_examples() {
        assert_eq!(braid_residual(&RMat::<f64>::flip(3)), 0.0);
        let rhat = standard_r_su2::<f64>(2.0).unwrap().to_hat();
        assert!(braid_residual(&rhat) <= 1e-12);
        assert!(braid_residual(&rhat.perturbed(0, 0, 0.1)) > 1e-3);
    }

    #[test]
    fn conventions_examples() {
        let conv = conventions(&RMat::<f64>::identity(2));
        assert_eq!(conv.hat, CMat::flip(2));
        let conv = conventions(&RMat::<f64>::flip(2));
        assert_eq!(conv.r21, CMat::flip(2));
        // hand permutation at q = 2: P moves row (i,j) to row (j,i)
        let r = standard_r_su2::<f64>(2.0).unwrap();
        let conv = conventions(&r);
        let perm = [0usize, 2, 1, 3];
        for row in 0..4 {
            for col in 0..4 {
                assert_eq!(conv.hat[(row, col)], r.entries()[(perm[row], col)]);
                assert_eq!(conv.r21[(row, col)], conv.hat[(perm[row], perm[col])]);
            }
        }
        // P applied twice returns the original
        let back = RMat::new(2, conv.hat.clone(), Convention::Hat).unwrap().to_plain();
        assert_eq!(back.entries(), r.entries());
    }

    #[test]
    fn drinfeld_examples() {
        let id = drinfeld_rd(&RMat::<f64>::identity(2)).unwrap();
        assert_eq!(id.entries(), &CMat::identity(4));
        let rd = drinfeld_rd(&standard_r_su2::<f64>(2.0).unwrap()).unwrap();
        assert!(qybe_residual(&rd) <= 1e-12);
        let singular = RMat::new(2, CMat::<f64>::zeros(4, 4), Convention::Plain).unwrap();
        assert!(matches!(drinfeld_rd(&singular), Err(Error::Singular)));
    }

    #[test]
    fn star_examples() {
        let rep = star_report(&RMat::<f64>::flip(2), 1e-12);
        assert!(rep.self_adjoint.holds && rep.unitary.holds && rep.involutive.holds);
        let rep = star_report(&standard_r_su2::<f64>(2.0).unwrap(), 1e-12);
        assert!(rep.self_adjoint.holds);
        assert!(!rep.unitary.holds && rep.unitary.residual > 0.1);
        assert!(!rep.involutive.holds && rep.involutive.residual > 0.1);
        let rep = star_report(&standard_r_su2::<f64>(1.0).unwrap(), 0.0);
        assert!(rep.self_adjoint.holds && rep.unitary.holds && rep.involutive.holds);
    }

    #[test]
    fn semiclassical_constant_family() {
        let alg = pauli_su2::<f64>().algebra;
        let out = semiclassical_w(|_| Ok(RMat::identity(2)), &alg, 1.0).unwrap();
        assert_eq!(out.w.max_abs(), 0.0);
        assert_eq!(out.r.max_abs(), 0.0);
        assert_eq!(out.s.max_abs(), 0.0);
    }

    #[test]
    fn semiclassical_rejects_nontrivial_base_point() {
        let alg = pauli_su2::<f64>().algebra;
        let res = semiclassical_w(|q| Ok(RMat::new(2, CMat::identity(4).scale_re(q * 2.0), Convention::Plain)?), &alg, 1.0);
        assert!(res.is_err());
    }
}
