//! Degree-bounded membership in the two-sided ideal spanned by the plus
//! relations of both families, modulo the exchange rules.
//!
//! For a target degree `d` the candidate spanning set is every
//! `straighten(m_L · ρ · m_R)` with `ρ` a plus relation and `m_L`, `m_R`
//! monomials of total degree `d - 2`, restricted to the `(#v, #w)` bidegrees
//! present in the target (straightening preserves bidegree). Membership is
//! then a least-squares problem over the finite normal-ordered monomial basis.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::poly::{Family, GenSymbol, Monomial, NCPoly};
use super::relations::{cross_relations, homomorphism_defects, plus_relations, straighten, CrossRules, RelationSet};
use crate::error::{Error, Result};
use crate::linsolve::{SpanBasis, DEFAULT_REL_THRESHOLD};
use crate::rmatrix::{braid_residual, RMat};
use crate::scalar::{Real, C};

/// Default degree bound for membership queries.
pub const DEFAULT_MAX_DEGREE: usize = 4;
/// Distance at or below which a polynomial is reported as a member.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-10;

/// One summand `coefficient · m_L · ρ · m_R` of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateTerm {
    pub left: String,
    pub family: Family,
    /// `(p, q, l, m)`, one-based.
    pub relation: [usize; 4],
    pub right: String,
    pub coefficient: [f64; 2],
}

#[derive(Debug, Clone)]
pub struct Membership<T: Real> {
    pub member: bool,
    /// Euclidean distance from the target to the candidate span.
    pub distance: T,
    pub certificate: Vec<CertificateTerm>,
    /// `Σ coefficient · straighten(m_L ρ m_R)`, for auditing.
    pub reconstruction: NCPoly<T>,
}

#[derive(Debug, Clone)]
struct Column<T: Real> {
    left: Monomial,
    family: Family,
    relation: usize,
    right: Monomial,
    poly: NCPoly<T>,
}

/// Candidate span for one degree and bidegree set, reusable across targets.
#[derive(Debug, Clone)]
pub struct RelationIdeal<T: Real> {
    rules: CrossRules<T>,
    n: usize,
    degree: usize,
    bidegrees: Vec<(usize, usize)>,
    columns: Vec<Column<T>>,
    index: BTreeMap<Monomial, usize>,
    basis: SpanBasis<T>,
}

fn vectorize<T: Real>(p: &NCPoly<T>, index: &BTreeMap<Monomial, usize>, dim: usize) -> Option<Vec<C<T>>> {
    let mut v = vec![C::zero(); dim];
    for (m, c) in p.terms() {
        v[*index.get(m)?] = *c;
    }
    Some(v)
}

impl<T: Real> RelationIdeal<T> {
    pub fn new(rhat: &RMat<T>, degree: usize, bidegrees: &[(usize, usize)]) -> Self {
        let n = rhat.n();
        let rules = cross_relations(rhat);
        let sets: [RelationSet<T>; 2] = [plus_relations(rhat, Family::V), plus_relations(rhat, Family::W)];
        let alphabet: Vec<GenSymbol> = GenSymbol::all(Family::V, n).chain(GenSymbol::all(Family::W, n)).collect();
        let mut columns = Vec::new();
        if degree >= 2 {
            let fill = degree - 2;
            let by_degree: Vec<Vec<Monomial>> = (0..=fill).map(|k| Monomial::all_of_degree(&alphabet, k)).collect();
            for set in &sets {
                let rel_bideg = match set.family {
                    Family::V => (2, 0),
                    Family::W => (0, 2),
                };
                for (ridx, rel) in set.elements.iter().enumerate() {
                    if rel.is_zero() {
                        continue;
                    }
                    for left_deg in 0..=fill {
                        for left in &by_degree[left_deg] {
                            for right in &by_degree[fill - left_deg] {
                                let (lv, lw) = left.multidegree();
                                let (rv, rw) = right.multidegree();
                                let bideg = (lv + rv + rel_bideg.0, lw + rw + rel_bideg.1);
                                if !bidegrees.contains(&bideg) {
                                    continue;
                                }
                                let poly = straighten(&rules, &rel.sandwich(left, right));
                                if poly.is_zero() {
                                    continue;
                                }
                                columns.push(Column {
                                    left: left.clone(),
                                    family: set.family,
                                    relation: ridx,
                                    right: right.clone(),
                                    poly,
                                });
                            }
                        }
                    }
                }
            }
        }
        // coordinates: every normal-ordered word of the requested bidegrees
        let v_gens: Vec<GenSymbol> = GenSymbol::all(Family::V, n).collect();
        let w_gens: Vec<GenSymbol> = GenSymbol::all(Family::W, n).collect();
        let mut index = BTreeMap::new();
        for &(nv, nw) in bidegrees {
            if nv + nw != degree {
                continue;
            }
            for vm in Monomial::all_of_degree(&v_gens, nv) {
                for wm in Monomial::all_of_degree(&w_gens, nw) {
                    let next = index.len();
                    index.entry(vm.concat(&wm)).or_insert(next);
                }
            }
        }
        let dim = index.len();
        let vectors: Vec<Vec<C<T>>> = columns
            .iter()
            .map(|c| vectorize(&c.poly, &index, dim).expect("straightened words are normal-ordered"))
            .collect();
        let basis = SpanBasis::build(dim, &vectors, T::lit(DEFAULT_REL_THRESHOLD));
        Self { rules, n, degree, bidegrees: bidegrees.to_vec(), columns, index, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn dimension(&self) -> usize {
        self.index.len()
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn rules(&self) -> &CrossRules<T> {
        &self.rules
    }

    /// Decide membership of `p` (straightened first) at tolerance `tol`.
    pub fn decide(&self, p: &NCPoly<T>, tol: T) -> Result<Membership<T>> {
        let p = straighten(&self.rules, p);
        if p.is_zero() {
            return Ok(Membership { member: true, distance: T::zero(), certificate: vec![], reconstruction: NCPoly::zero() });
        }
        if !p.is_homogeneous() || p.degree() != self.degree {
            return Err(Error::Input(format!("target must be homogeneous of degree {}", self.degree)));
        }
        if p.multidegrees().iter().any(|b| !self.bidegrees.contains(b)) {
            return Err(Error::Input("target bidegree outside the prepared span".into()));
        }
        let target = vectorize(&p, &self.index, self.index.len()).expect("bidegrees checked");
        let proj = self.basis.project(&target);
        let mut certificate = Vec::new();
        let mut reconstruction = NCPoly::zero();
        for (col, coef) in self.columns.iter().zip(&proj.coefficients) {
            if coef.is_zero() {
                continue;
            }
            reconstruction = reconstruction.add(&col.poly.scale(*coef));
            let n = self.n;
            let r = col.relation;
            certificate.push(CertificateTerm {
                left: col.left.to_string(),
                family: col.family,
                relation: [r / (n * n * n) + 1, (r / (n * n)) % n + 1, (r / n) % n + 1, r % n + 1],
                right: col.right.to_string(),
                coefficient: [coef.re.to_f64_lossy(), coef.im.to_f64_lossy()],
            });
        }
        Ok(Membership { member: proj.distance <= tol, distance: proj.distance, certificate, reconstruction })
    }
}

/// Whether `p` lies in the degree-`deg p` part of the ideal generated by the
/// `v` and `w` plus relations of `rhat`.
pub fn ideal_membership<T: Real>(p: &NCPoly<T>, rhat: &RMat<T>, max_degree: usize, tol: T) -> Result<Membership<T>> {
    let degree = p.degree();
    if degree > max_degree {
        return Err(Error::DegreeOverflow { degree, max: max_degree });
    }
    let rules = cross_relations(rhat);
    let straight = straighten(&rules, p);
    if straight.is_zero() {
        return Ok(Membership { member: true, distance: T::zero(), certificate: vec![], reconstruction: NCPoly::zero() });
    }
    RelationIdeal::new(rhat, degree, &straight.multidegrees()).decide(&straight, tol)
}

#[derive(Debug, Clone)]
pub struct HomomorphismReport<T: Real> {
    pub braid_residual: T,
    /// Max distance of the straightened defect polynomials to the ideal.
    pub max_distance: T,
    pub memberships: Vec<Membership<T>>,
}

/// Checks that `(vw)^i_j` satisfy the plus relations again: every defect
/// polynomial must lie in the ideal of the `v` and `w` plus relations.
pub fn homomorphism_residual<T: Real>(rhat: &RMat<T>, tol: T) -> Result<HomomorphismReport<T>> {
    let braid = braid_residual(rhat);
    let ideal = RelationIdeal::new(rhat, 4, &[(2, 2)]);
    let mut max_distance = T::zero();
    let mut memberships = Vec::new();
    for d in homomorphism_defects(rhat) {
        let m = ideal.decide(&d, tol)?;
        max_distance = max_distance.max(m.distance);
        memberships.push(m);
    }
    Ok(HomomorphismReport { braid_residual: braid, max_distance, memberships })
}

fn max_distance_to_span<T: Real>(targets: &[NCPoly<T>], spanning: &[NCPoly<T>]) -> T {
    let mut index = BTreeMap::new();
    for p in targets.iter().chain(spanning) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let dim = index.len();
    let cols: Vec<Vec<C<T>>> = spanning.iter().map(|p| vectorize(p, &index, dim).expect("indexed")).collect();
    let basis = SpanBasis::build(dim, &cols, T::lit(DEFAULT_REL_THRESHOLD));
    targets
        .iter()
        .map(|t| basis.project(&vectorize(t, &index, dim).expect("indexed")).distance)
        .fold(T::zero(), T::max)
}

/// Compatibility of the exchange rules with the plus relations:
/// `straighten(ρ_w · v)` must lie in `span{v · ρ_w}` and
/// `straighten(w · ρ_v)` in `span{ρ_v · w}`. Returns the max distance.
pub fn straightening_consistency<T: Real>(rhat: &RMat<T>) -> T {
    let n = rhat.n();
    let rules = cross_relations(rhat);
    let rho_v = plus_relations(rhat, Family::V);
    let rho_w = plus_relations(rhat, Family::W);
    let v_gens: Vec<NCPoly<T>> = GenSymbol::all(Family::V, n).map(NCPoly::generator).collect();
    let w_gens: Vec<NCPoly<T>> = GenSymbol::all(Family::W, n).map(NCPoly::generator).collect();

    let mut targets = Vec::new();
    let mut span = Vec::new();
    for rho in &rho_w.elements {
        for v in &v_gens {
            targets.push(straighten(&rules, &rho.mul(v)));
            span.push(v.mul(rho));
        }
    }
    let w_side = max_distance_to_span(&targets, &span);

    let mut targets = Vec::new();
    let mut span = Vec::new();
    for rho in &rho_v.elements {
        for w in &w_gens {
            targets.push(straighten(&rules, &w.mul(rho)));
            span.push(rho.mul(w));
        }
    }
    w_side.max(max_distance_to_span(&targets, &span))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::standard_r_su2;
    use crate::scalar::c;

    #[test]
    fn zero_is_member() {
        let rhat = RMat::<f64>::flip(2);
        let m = ideal_membership(&NCPoly::zero(), &rhat, 4, 1e-10).unwrap();
        assert!(m.member && m.certificate.is_empty());
    }

    #[test]
    fn relation_times_monomial_is_member() {
        let rhat = standard_r_su2::<f64>(2.0).unwrap().to_hat();
        let rel = plus_relations(&rhat, Family::V);
        let ww = Monomial(vec![GenSymbol::w(0, 0), GenSymbol::w(0, 0)]);
        let p = rel.get(0, 1, 1, 0).sandwich(&Monomial::one(), &ww);
        let m = ideal_membership(&p, &rhat, 4, 1e-10).unwrap();
        assert!(m.member, "distance {}", m.distance);
        assert!(m.reconstruction.sub(&p).max_abs() < 1e-10);
    }

    #[test]
    fn non_member_reports_distance() {
        let rhat = standard_r_su2::<f64>(2.0).unwrap().to_hat();
        let p = NCPoly::term(Monomial(vec![GenSymbol::v(0, 0), GenSymbol::v(0, 0)]), c(1.0, 0.0));
        let m = ideal_membership(&p, &rhat, 4, 1e-10).unwrap();
        assert!(!m.member);
        assert!(m.distance > 0.1);
    }

    #[test]
    fn degree_overflow() {
        let rhat = RMat::<f64>::flip(2);
        let g = NCPoly::generator(GenSymbol::v(0, 0));
        let p = g.mul(&g).mul(&g);
        assert!(matches!(ideal_membership(&p, &rhat, 2, 1e-10), Err(Error::DegreeOverflow { degree: 3, max: 2 })));
    }
}
