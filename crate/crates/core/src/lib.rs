//! Numerical verification toolkit for quasitriangular structures: classical
//! r-matrices on matrix Lie algebras, the Poisson brackets they induce on
//! lattice links, quantum R-matrices and the FRT-type quadratic algebras
//! built from them.
//!
//! Every numeric type is generic over the real scalar `T: Real` (`f32` or
//! `f64`) with complex entries; the `*64` / `*32` aliases below fix it.

pub mod catalog;
pub mod error;
pub mod finite_diff;
pub mod formats;
pub mod frt_braid;
pub mod group;
pub mod lie_tensor;
pub mod linsolve;
pub mod matrix;
pub mod poisson_geom;
pub mod rmatrix;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use group::GroupPoint;
pub use lie_tensor::{CoefTensor2, CoefTensor3, LieAlgebraRep};
pub use matrix::CMat;
pub use poisson_geom::{BracketTable, Phi, TwoLinkSpec};
pub use rmatrix::{Convention, RMat};
pub use scalar::{Real, C};

pub type CMat64 = CMat<f64>;
pub type CMat32 = CMat<f32>;
pub type LieAlgebraRep64 = LieAlgebraRep<f64>;
pub type LieAlgebraRep32 = LieAlgebraRep<f32>;
pub type CoefTensor2_64 = CoefTensor2<f64>;
pub type CoefTensor2_32 = CoefTensor2<f32>;
pub type CoefTensor3_64 = CoefTensor3<f64>;
pub type CoefTensor3_32 = CoefTensor3<f32>;
pub type GroupPoint64 = GroupPoint<f64>;
pub type GroupPoint32 = GroupPoint<f32>;
pub type BracketTable64 = BracketTable<f64>;
pub type BracketTable32 = BracketTable<f32>;
pub type TwoLinkSpec64 = TwoLinkSpec<f64>;
pub type TwoLinkSpec32 = TwoLinkSpec<f32>;
pub type RMat64 = RMat<f64>;
pub type RMat32 = RMat<f32>;
pub type NCPoly64 = frt_braid::NCPoly<f64>;
pub type NCPoly32 = frt_braid::NCPoly<f32>;
