//! Loading check inputs from files or the built-in catalog.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use quasitri::catalog::{self, CatalogEntry};
use quasitri::formats::{MatrixJson, RMatrixJson, TensorCheckJson, TensorJson, TwoLinkJson};
use quasitri::{CMat64, CoefTensor2_64, LieAlgebraRep64, RMat64, TwoLinkSpec64};

use crate::Common;

/// Canonical description of where the input came from, hashed into the report.
pub struct Source {
    pub bytes: Vec<u8>,
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse<D: serde::de::DeserializeOwned>(path: &Path, bytes: &[u8]) -> Result<D> {
    serde_json::from_slice(bytes).with_context(|| format!("{} is not a valid input file", path.display()))
}

fn choose<'a>(common: &'a Common, what: &str) -> Result<Either<'a>> {
    match (&common.input, &common.catalog) {
        (Some(_), Some(_)) => bail!("give either --input or --catalog, not both"),
        (Some(p), None) => Ok(Either::File(p)),
        (None, Some(name)) => Ok(Either::Catalog(name)),
        (None, None) => bail!("{what} needs --input FILE or --catalog NAME"),
    }
}

enum Either<'a> {
    File(&'a Path),
    Catalog(&'a str),
}

fn catalog_source(name: &str, extra: &str) -> Source {
    Source { bytes: format!("catalog:{name}:{extra}").into_bytes() }
}

fn entry(name: &str) -> Result<CatalogEntry<f64>> {
    Ok(catalog::lookup::<f64>(name)?)
}

fn named_tensor(entry: &CatalogEntry<f64>, name: &str) -> Result<CoefTensor2_64> {
    entry.tensors.get(name).cloned().ok_or_else(|| {
        let known: Vec<_> = entry.tensors.keys().map(String::as_str).collect();
        anyhow!("catalog entry {} has no tensor {name:?} (known: {})", entry.name, known.join(", "))
    })
}

/// Default catalog tensors for the single-tensor checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorRole {
    /// A CYBE candidate `w`.
    Solution,
    /// An invariant symmetric tensor.
    Symmetric,
}

pub fn tensor_check(common: &Common, role: TensorRole) -> Result<(LieAlgebraRep64, CoefTensor2_64, Source)> {
    match choose(common, "this check")? {
        Either::File(path) => {
            let bytes = read_bytes(path)?;
            let file: TensorCheckJson = parse(path, &bytes)?;
            let alg = file.algebra.resolve::<f64>(path.parent())?;
            let t = file.tensor.to_tensor(alg.dim())?;
            Ok((alg, t, Source { bytes }))
        }
        Either::Catalog(name) => {
            let e = entry(name)?;
            let default = match (e.name.as_str(), role) {
                ("sl2-real", TensorRole::Solution) => "w_dj",
                ("sl2-real", TensorRole::Symmetric) => "s_real",
                (_, TensorRole::Solution) => "w",
                (_, TensorRole::Symmetric) => "s",
            };
            let tname = common.tensor.as_deref().unwrap_or(default);
            let t = named_tensor(&e, tname)?;
            Ok((e.algebra, t, catalog_source(name, tname)))
        }
    }
}

/// Two-link data. From the catalog: `r` is the antisymmetric catalog tensor
/// and `φ = -w` for the solution tensor `w` (overridable with `--tensor`).
pub fn two_link(common: &Common) -> Result<(TwoLinkSpec64, Source)> {
    match choose(common, "this check")? {
        Either::File(path) => {
            let bytes = read_bytes(path)?;
            let file: TwoLinkJson = parse(path, &bytes)?;
            Ok((file.to_spec::<f64>(path.parent())?, Source { bytes }))
        }
        Either::Catalog(name) => {
            let e = entry(name)?;
            let (rname, wname) = if e.name == "sl2-real" { ("r_a", "w_dj") } else { ("r", "w") };
            let wname = common.tensor.as_deref().unwrap_or(wname);
            let r = named_tensor(&e, rname)?;
            let w = named_tensor(&e, wname)?;
            let spec = TwoLinkSpec64::constant(e.algebra, r, &w)?;
            Ok((spec, catalog_source(name, wname)))
        }
    }
}

pub fn rmatrix(common: &Common) -> Result<(RMat64, Source)> {
    match choose(common, "this check")? {
        Either::File(path) => {
            let bytes = read_bytes(path)?;
            let file: RMatrixJson = parse(path, &bytes)?;
            Ok((file.to_rmat::<f64>()?, Source { bytes }))
        }
        Either::Catalog(name) => {
            if name != "su2-standard" {
                bail!("catalog entry {name:?} has no R-matrix (use su2-standard)");
            }
            let q = common.q;
            if !q.is_finite() || q <= 0.0 {
                bail!("--q must be a positive real number");
            }
            let r = catalog::standard_r_su2::<f64>(q)?;
            Ok((r, catalog_source(name, &format!("q={}", crate::report::fmt_f64(q)))))
        }
    }
}

/// Expected first-order data for the semiclassical check.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiclassicalJson {
    /// R-matrix family; only `su2-standard` is built in.
    pub family: String,
    pub expected: ExpectedJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedJson {
    pub m: MatrixJson,
    #[serde(default)]
    pub r: Option<TensorJson>,
    #[serde(default)]
    pub s: Option<TensorJson>,
}

pub struct SemiclassicalInput {
    pub algebra: LieAlgebraRep64,
    pub m: CMat64,
    pub r: Option<CoefTensor2_64>,
    pub s: Option<CoefTensor2_64>,
}

pub fn semiclassical(common: &Common) -> Result<(SemiclassicalInput, Source)> {
    let (family, expected, source) = match choose(common, "this check")? {
        Either::File(path) => {
            let bytes = read_bytes(path)?;
            let file: SemiclassicalJson = parse(path, &bytes)?;
            (file.family, Some(file.expected), Source { bytes })
        }
        Either::Catalog(name) => (name.to_string(), None, catalog_source(name, "reference")),
    };
    if family != "su2-standard" {
        bail!("unknown R-matrix family {family:?} (only su2-standard is built in)");
    }
    let algebra = catalog::pauli_su2::<f64>().algebra;
    let input = match expected {
        None => {
            let reference = catalog::su2_semiclassical_reference::<f64>();
            SemiclassicalInput { algebra, m: reference.m, r: Some(reference.r), s: Some(reference.s) }
        }
        Some(x) => {
            let m = quasitri::formats::matrix_from_json::<f64>(&x.m, "expected.m")?;
            if m.rows() != 4 || m.cols() != 4 {
                bail!("expected.m must be 4x4");
            }
            let d = algebra.dim();
            let r = x.r.map(|t| t.to_tensor(d)).transpose()?;
            let s = x.s.map(|t| t.to_tensor(d)).transpose()?;
            SemiclassicalInput { algebra, m, r, s }
        }
    };
    Ok((input, source))
}
