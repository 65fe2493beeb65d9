//! JSON interchange formats. Complex numbers are `[re, im]` pairs and
//! matrices are row-major arrays of rows.
//!
//! - algebra: `{ "dim": d, "n": n, "basis": [ n×n matrix, ... ] }`
//! - tensor: `{ "coeffs": d×d matrix }`
//! - tensor check: `{ "algebra": <algebra ref>, "tensor": <tensor> }`
//! - two-link: `{ "algebra": <algebra ref>, "r": <tensor>,
//!   "phi": { "kind": "constant" | "ad_b_f", "tensor": <tensor>, "f_scale": x } }`
//! - R-matrix: `{ "N": n, "convention": "plain" | "hat", "entries": N²×N² matrix }`
//!
//! An algebra reference is either an inline algebra object, a path (relative
//! to the referring file), or `"catalog:<name>"`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::lie_tensor::{CoefTensor2, LieAlgebraRep};
use crate::matrix::CMat;
use crate::poisson_geom::{Phi, TwoLinkSpec};
use crate::rmatrix::{Convention, RMat};
use crate::scalar::{Real, C};

pub type Complex64Pair = [f64; 2];
pub type MatrixJson = Vec<Vec<Complex64Pair>>;

fn to_pair<T: Real>(z: &C<T>) -> Complex64Pair {
    [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
}

fn from_pair<T: Real>(p: &Complex64Pair) -> C<T> {
    C::new(T::lit(p[0]), T::lit(p[1]))
}

pub fn matrix_to_json<T: Real>(m: &CMat<T>) -> MatrixJson {
    (0..m.rows()).map(|i| m.row(i).iter().map(to_pair).collect()).collect()
}

pub fn matrix_from_json<T: Real>(rows: &MatrixJson, what: &str) -> Result<CMat<T>> {
    let converted = rows.iter().map(|r| r.iter().map(from_pair).collect()).collect();
    CMat::from_rows(converted).map_err(|_| Error::Input(format!("{what}: rows of unequal length")))
}

fn check_shape(m: &MatrixJson, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Input(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub n: usize,
    pub basis: Vec<MatrixJson>,
}

impl AlgebraJson {
    pub fn from_algebra<T: Real>(alg: &LieAlgebraRep<T>) -> Self {
        Self { dim: alg.dim(), n: alg.n(), basis: alg.basis().iter().map(matrix_to_json).collect() }
    }

    pub fn to_algebra<T: Real>(&self) -> Result<LieAlgebraRep<T>> {
        if self.basis.len() != self.dim {
            return Err(Error::Input(format!("algebra: dim {} but {} basis matrices", self.dim, self.basis.len())));
        }
        let basis = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, m)| {
                check_shape(m, self.n, self.n, &format!("basis[{i}]"))?;
                matrix_from_json(m, "basis")
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebraRep::from_basis(basis)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub coeffs: MatrixJson,
}

impl TensorJson {
    pub fn from_tensor<T: Real>(t: &CoefTensor2<T>) -> Self {
        let d = t.dim();
        Self { coeffs: (0..d).map(|k| (0..d).map(|l| to_pair(&t.get(k, l))).collect()).collect() }
    }

    pub fn to_tensor<T: Real>(&self, dim: usize) -> Result<CoefTensor2<T>> {
        check_shape(&self.coeffs, dim, dim, "tensor coeffs")?;
        let flat = self.coeffs.iter().flatten().map(from_pair).collect();
        CoefTensor2::from_coeffs(dim, flat)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Inline(AlgebraJson),
    /// File path, or `catalog:<name>`.
    Named(String),
}

impl AlgebraRef {
    pub fn resolve<T: Real>(&self, base: Option<&Path>) -> Result<LieAlgebraRep<T>> {
        match self {
            AlgebraRef::Inline(a) => a.to_algebra(),
            AlgebraRef::Named(s) => match s.strip_prefix("catalog:") {
                Some(name) => Ok(catalog::lookup::<T>(name)?.algebra),
                None => {
                    let path = match base {
                        Some(dir) => dir.join(s),
                        None => PathBuf::from(s),
                    };
                    read_json::<AlgebraJson>(&path)?.to_algebra()
                }
            },
        }
    }
}

/// Input of the single-tensor checks (CYBE, invariance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorCheckJson {
    pub algebra: AlgebraRef,
    pub tensor: TensorJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiKind {
    Constant,
    AdBF,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiJson {
    pub kind: PhiKind,
    pub tensor: TensorJson,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub f_scale: f64,
}

fn one() -> f64 {
    1.0
}

fn is_one(x: &f64) -> bool {
    *x == 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoLinkJson {
    pub algebra: AlgebraRef,
    pub r: TensorJson,
    pub phi: PhiJson,
}

impl TwoLinkJson {
    /// For a constant φ the tensor is φ itself; for `ad_b_f` it is the `T` in
    /// `φ(a, b) = -r + (Ad_b ⊗ Ad_b)(f_scale · tr(ab) · T)`.
    pub fn to_spec<T: Real>(&self, base: Option<&Path>) -> Result<TwoLinkSpec<T>> {
        let alg = self.algebra.resolve::<T>(base)?;
        let d = alg.dim();
        let r = self.r.to_tensor(d)?;
        let tensor = self.phi.tensor.to_tensor(d)?;
        let phi = match self.phi.kind {
            PhiKind::Constant => Phi::Constant(tensor),
            PhiKind::AdBF => Phi::AdBF { tensor, f_scale: T::lit(self.phi.f_scale) },
        };
        TwoLinkSpec::new(alg, r, phi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub convention: Convention,
    pub entries: MatrixJson,
}

impl RMatrixJson {
    pub fn from_rmat<T: Real>(r: &RMat<T>) -> Self {
        Self { n: r.n(), convention: r.convention(), entries: matrix_to_json(r.entries()) }
    }

    pub fn to_rmat<T: Real>(&self) -> Result<RMat<T>> {
        let nn = self.n * self.n;
        check_shape(&self.entries, nn, nn, "R-matrix entries")?;
        RMat::new(self.n, matrix_from_json(&self.entries, "entries")?, self.convention)
    }
}

pub fn read_json<D: serde::de::DeserializeOwned>(path: &Path) -> Result<D> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Everything a catalog entry exports, each member in its module format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogExport {
    pub name: String,
    pub algebra: AlgebraJson,
    pub tensors: BTreeMap<String, TensorJson>,
    pub elements: BTreeMap<String, MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<RMatrixJson>,
}

impl CatalogExport {
    pub fn from_entry<T: Real>(entry: &CatalogEntry<T>, rmatrix: Option<&RMat<T>>) -> Self {
        Self {
            name: entry.name.clone(),
            algebra: AlgebraJson::from_algebra(&entry.algebra),
            tensors: entry.tensors.iter().map(|(k, t)| (k.clone(), TensorJson::from_tensor(t))).collect(),
            elements: entry.elements.iter().map(|(k, m)| (k.clone(), matrix_to_json(m))).collect(),
            rmatrix: rmatrix.map(RMatrixJson::from_rmat),
        }
    }
}

/// Export a catalog entry; `su2-standard` also carries the R-matrix at `q`.
pub fn export_catalog(name: &str, q: f64) -> Result<CatalogExport> {
    let entry = catalog::lookup::<f64>(name)?;
    let rmatrix = match name {
        "su2-standard" => Some(catalog::standard_r_su2::<f64>(q)?),
        _ => None,
    };
    let mut out = CatalogExport::from_entry(&entry, rmatrix.as_ref());
    out.name = name.to_string();
    Ok(out)
}
