//! Built-in reference instances: the Pauli realisation of `su(2)` with the
//! standard quantum R-matrix and its semiclassical data, and a real split
//! form `sl(2, R)` carrying a genuine real solution of the classical
//! Yang–Baxter equation.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie_tensor::{CoefTensor2, LieAlgebraRep};
use crate::matrix::CMat;
use crate::rmatrix::{Convention, RMat};
use crate::scalar::{c, Real, C};

#[derive(Debug, Clone)]
pub struct CatalogEntry<T: Real> {
    pub name: String,
    pub algebra: LieAlgebraRep<T>,
    pub tensors: BTreeMap<String, CoefTensor2<T>>,
    /// Named matrices that are not basis elements (e.g. `X+`, `X-`).
    pub elements: BTreeMap<String, CMat<T>>,
}

/// Names accepted by [`lookup`] and the command line.
pub const NAMES: &[&str] = &["su2", "sl2-real", "su2-standard"];

pub fn sigma<T: Real>(j: usize) -> CMat<T> {
    let (o, z) = (C::one(), C::zero());
    let i = Complex::i();
    let rows = match j {
        1 => vec![vec![z, o], vec![o, z]],
        2 => vec![vec![z, -i], vec![i, z]],
        3 => vec![vec![o, z], vec![z, -o]],
        _ => panic!("Pauli index {j} out of range 1..=3"),
    };
    CMat::from_rows(rows).expect("2x2")
}

/// `su(2)` in the Pauli basis `(σ1, σ2, σ3)`, with the tensors
/// `r = ½ σ1∧σ2`, `s = ½ Σ σ_j⊗σ_j` and `w = r - i s`.
pub fn pauli_su2<T: Real>() -> CatalogEntry<T> {
    let algebra = LieAlgebraRep::from_basis(vec![sigma(1), sigma(2), sigma(3)])
        .expect("Pauli matrices close");
    let reference = su2_semiclassical_reference::<T>();
    let w = reference.r.sub(&reference.s.scale(Complex::i()));
    let mut tensors = BTreeMap::new();
    tensors.insert("r".to_string(), reference.r);
    tensors.insert("s".to_string(), reference.s);
    tensors.insert("w".to_string(), w);
    let mut elements = BTreeMap::new();
    elements.insert("X+".to_string(), CMat::real(&[&[0.0, 1.0], &[0.0, 0.0]]));
    elements.insert("X-".to_string(), CMat::real(&[&[0.0, 0.0], &[1.0, 0.0]]));
    CatalogEntry { name: "su2".into(), algebra, tensors, elements }
}

/// `sl(2, R)` in the basis `(H, E, F)` with `w_dj = E⊗F + ¼ H⊗H`, its
/// antisymmetric part `r_a = ½ E∧F` and the invariant symmetric part `s_real`.
pub fn sl2_real<T: Real>() -> CatalogEntry<T> {
    let h = CMat::real(&[&[1.0, 0.0], &[0.0, -1.0]]);
    let e = CMat::real(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let f = CMat::real(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let algebra = LieAlgebraRep::from_basis(vec![h, e, f]).expect("sl2 closes");
    let (hi, ei, fi) = (0, 1, 2);
    let mut w = CoefTensor2::zeros(3);
    w.set(ei, fi, c(1.0, 0.0));
    w.set(hi, hi, c(0.25, 0.0));
    let r_a = CoefTensor2::wedge(3, ei, fi, c(0.5, 0.0));
    let s_real = w.sub(&r_a);
    let mut tensors = BTreeMap::new();
    tensors.insert("w_dj".to_string(), w);
    tensors.insert("r_a".to_string(), r_a);
    tensors.insert("s_real".to_string(), s_real);
    CatalogEntry { name: "sl2-real".into(), algebra, tensors, elements: BTreeMap::new() }
}

/// The standard `SU(2)` R-matrix, ordering `V⊗V` as `(11, 12, 21, 22)`:
/// diagonal `(q^½, q^-½, q^-½, q^½)` and `q^½ - q^-3/2` at row `21`, column `12`.
pub fn standard_r_su2<T: Real>(q: T) -> Result<RMat<T>> {
    standard_r_su2_complex(Complex::new(q, T::zero()))
}

/// As [`standard_r_su2`] for complex `q` (principal branch of the square root).
pub fn standard_r_su2_complex<T: Real>(q: C<T>) -> Result<RMat<T>> {
    if q.is_zero() {
        return Err(Error::Input("q must be nonzero".into()));
    }
    let half = q.sqrt();
    let inv_half = half.inv();
    let mut m = CMat::diag(&[half, inv_half, inv_half, half]);
    m[(2, 1)] = half - inv_half / q;
    RMat::new(2, m, Convention::Plain)
}

/// The `q ↦ R(q)` family used for the first-order expansion.
pub fn standard_r_su2_family<T: Real>() -> impl Fn(T) -> Result<RMat<T>> {
    standard_r_su2::<T>
}

#[derive(Debug, Clone)]
pub struct SemiclassicalReference<T: Real> {
    /// Coefficient of `ε = q - 1` in `R(q)`: `2 X-⊗X+ + ½ σ3⊗σ3`.
    pub m: CMat<T>,
    pub r: CoefTensor2<T>,
    pub s: CoefTensor2<T>,
}

/// Reference first-order data for the standard `SU(2)` family (`ε = 1`).
/// `M` as a tensor equals `i (r - i s)`, i.e. `R ≈ I + i w` with `w = r - i s`.
pub fn su2_semiclassical_reference<T: Real>() -> SemiclassicalReference<T> {
    let x_plus = CMat::real(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let x_minus = CMat::real(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let s3 = sigma::<T>(3);
    let m = &x_minus.kron(&x_plus).scale_re(T::lit(2.0)) + &s3.kron(&s3).scale_re(T::lit(0.5));
    let r = CoefTensor2::wedge(3, 0, 1, c(0.5, 0.0));
    let s = CoefTensor2::from_fn(3, |k, l| if k == l { c(0.5, 0.0) } else { C::zero() });
    SemiclassicalReference { m, r, s }
}

/// Algebra-side entries by name.
pub fn lookup<T: Real>(name: &str) -> Result<CatalogEntry<T>> {
    match name {
        "su2" | "su2-standard" => Ok(pauli_su2()),
        "sl2-real" | "sl2" => Ok(sl2_real()),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}
