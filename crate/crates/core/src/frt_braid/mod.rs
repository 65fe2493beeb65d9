//! FRT-type quadratic algebras of an R̂-matrix: plus relations, exchange
//! rules between two commuting-up-to-R̂ generator families, normal ordering
//! and degree-bounded ideal membership.

pub mod membership;
pub mod poly;
pub mod relations;

pub use membership::{
    homomorphism_residual, ideal_membership, straightening_consistency, CertificateTerm, HomomorphismReport,
    Membership, RelationIdeal, DEFAULT_MAX_DEGREE, DEFAULT_MEMBERSHIP_TOL,
};
pub use poly::{Family, GenSymbol, Monomial, NCPoly};
pub use relations::{
    compose_generators, cross_relations, homomorphism_defects, plus_relations, straighten, straighten_with_stats,
    CrossRules, RelationSet,
};
