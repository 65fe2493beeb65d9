use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;

use super::poly::{Family, GenSymbol, Monomial, NCPoly};
use crate::rmatrix::RMat;
use crate::scalar::{Real, C};

/// Quadratic relations `R̂ (x ⊗ x) - (x ⊗ x) R̂₂₁` of one generator family,
/// indexed by the free indices `(p, q, l, m)`.
#[derive(Debug, Clone)]
pub struct RelationSet<T: Real> {
    pub family: Family,
    pub n: usize,
    pub elements: Vec<NCPoly<T>>,
}

impl<T: Real> RelationSet<T> {
    pub fn index(&self, p: usize, q: usize, l: usize, m: usize) -> usize {
        ((p * self.n + q) * self.n + l) * self.n + m
    }

    /// Inverse of [`RelationSet::index`].
    pub fn labels(&self, idx: usize) -> (usize, usize, usize, usize) {
        let n = self.n;
        (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n)
    }

    pub fn get(&self, p: usize, q: usize, l: usize, m: usize) -> &NCPoly<T> {
        &self.elements[self.index(p, q, l, m)]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The `N⁴` plus relations
/// `Σ_{jk} R̂^{pq}_{jk} x^j_l x^k_m - Σ_{jk} x^p_j x^q_k (R̂₂₁)^{jk}_{lm}`.
pub fn plus_relations<T: Real>(rhat: &RMat<T>, family: Family) -> RelationSet<T> {
    let hat = rhat.to_hat();
    let n = hat.n();
    let r21 = hat.r21();
    let x = |i: usize, j: usize| GenSymbol::new(family, i, j);
    let mut elements = Vec::with_capacity(n * n * n * n);
    for p in 0..n {
        for q in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let mut rel = NCPoly::zero();
                    for j in 0..n {
                        for k in 0..n {
                            rel.add_term(Monomial(vec![x(j, l), x(k, m)]), hat.at(p, q, j, k));
                            rel.add_term(Monomial(vec![x(p, j), x(q, k)]), -r21[(j * n + k, l * n + m)]);
                        }
                    }
                    elements.push(rel);
                }
            }
        }
    }
    RelationSet { family, n, elements }
}

/// Exchange rules `w^a_l v^k_b → Σ_{s,t} R̂^{sa}_{tb} v^k_s w^t_l`.
#[derive(Debug, Clone)]
pub struct CrossRules<T: Real> {
    n: usize,
    rules: BTreeMap<(GenSymbol, GenSymbol), NCPoly<T>>,
}

impl<T: Real> CrossRules<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Replacement for the adjacent pair `w^a_l v^k_b`.
    pub fn rule(&self, w: GenSymbol, v: GenSymbol) -> &NCPoly<T> {
        &self.rules[&(w, v)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(GenSymbol, GenSymbol), &NCPoly<T>)> {
        self.rules.iter()
    }
}

pub fn cross_relations<T: Real>(rhat: &RMat<T>) -> CrossRules<T> {
    let hat = rhat.to_hat();
    let n = hat.n();
    let mut rules = BTreeMap::new();
    for a in 0..n {
        for l in 0..n {
            for k in 0..n {
                for b in 0..n {
                    let mut rhs = NCPoly::zero();
                    for s in 0..n {
                        for t in 0..n {
                            rhs.add_term(Monomial(vec![GenSymbol::v(k, s), GenSymbol::w(t, l)]), hat.at(s, a, t, b));
                        }
                    }
                    rules.insert((GenSymbol::w(a, l), GenSymbol::v(k, b)), rhs);
                }
            }
        }
    }
    CrossRules { n, rules }
}

/// Normal form with every `v` left of every `w`, plus the largest number of
/// rewrite steps taken along any single path.
pub fn straighten_with_stats<T: Real>(rules: &CrossRules<T>, p: &NCPoly<T>) -> (NCPoly<T>, usize) {
    let mut out = NCPoly::zero();
    let mut pending: BTreeMap<Monomial, (C<T>, usize)> = BTreeMap::new();
    for (m, c) in p.terms() {
        pending.insert(m.clone(), (*c, 0));
    }
    let mut max_steps = 0;
    while let Some((mono, (coef, steps))) = pending.pop_first() {
        let pos = mono.0.windows(2).position(|pair| pair[0].family == Family::W && pair[1].family == Family::V);
        let Some(i) = pos else {
            max_steps = max_steps.max(steps);
            out.add_term(mono, coef);
            continue;
        };
        let replacement = rules.rule(mono.0[i], mono.0[i + 1]);
        for (rm, rc) in replacement.terms() {
            let mut word = Vec::with_capacity(mono.0.len());
            word.extend_from_slice(&mono.0[..i]);
            word.extend_from_slice(&rm.0);
            word.extend_from_slice(&mono.0[i + 2..]);
            let entry = pending.entry(Monomial(word)).or_insert((C::zero(), 0));
            entry.0 = entry.0 + coef * *rc;
            entry.1 = entry.1.max(steps + 1);
        }
    }
    (out, max_steps)
}

pub fn straighten<T: Real>(rules: &CrossRules<T>, p: &NCPoly<T>) -> NCPoly<T> {
    straighten_with_stats(rules, p).0
}

/// `(vw)^i_j = Σ_a v^i_a w^a_j`, listed row-major in `(i, j)`.
pub fn compose_generators<T: Real>(n: usize) -> Vec<NCPoly<T>> {
    let one = Complex::new(T::one(), T::zero());
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut p = NCPoly::zero();
            for a in 0..n {
                p.add_term(Monomial(vec![GenSymbol::v(i, a), GenSymbol::w(a, j)]), one);
            }
            out.push(p);
        }
    }
    out
}

/// Relation of a family with a product `(vw)` substituted for the generator:
/// `Σ R̂^{pq}_{jk} (vw)^j_l (vw)^k_m - Σ (vw)^p_j (vw)^q_k (R̂₂₁)^{jk}_{lm}`.
pub fn homomorphism_defects<T: Real>(rhat: &RMat<T>) -> Vec<NCPoly<T>> {
    let hat = rhat.to_hat();
    let n = hat.n();
    let r21 = hat.r21();
    let vw = compose_generators::<T>(n);
    let at = |i: usize, j: usize| &vw[i * n + j];
    let mut out = Vec::with_capacity(n * n * n * n);
    for p in 0..n {
        for q in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let mut d = NCPoly::zero();
                    for j in 0..n {
                        for k in 0..n {
                            let c1 = hat.at(p, q, j, k);
                            if !c1.is_zero() {
                                d = d.add(&at(j, l).mul(at(k, m)).scale(c1));
                            }
                            let c2 = r21[(j * n + k, l * n + m)];
                            if !c2.is_zero() {
                                d = d.sub(&at(p, j).mul(at(q, k)).scale(c2));
                            }
                        }
                    }
                    out.push(d);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::standard_r_su2;
    use crate::scalar::c;

    fn one() -> C<f64> {
        c(1.0, 0.0)
    }

    #[test]
    fn plus_relations_for_flip_are_commutators() {
        let rel = plus_relations(&RMat::<f64>::flip(2), Family::V);
        assert_eq!(rel.len(), 16);
        for idx in 0..16 {
            let (p, q, l, m) = rel.labels(idx);
            let mut expected = NCPoly::zero();
            expected.add_term(Monomial(vec![GenSymbol::v(q, l), GenSymbol::v(p, m)]), one());
            expected.add_term(Monomial(vec![GenSymbol::v(p, m), GenSymbol::v(q, l)]), -one());
            assert_eq!(rel.elements[idx], expected);
        }
    }

    #[test]
    fn plus_relations_for_identity_vanish() {
        // hat convention with R̂ = I, hence R̂₂₁ = I
        let id = RMat::new(2, crate::matrix::CMat::identity(4), crate::rmatrix::Convention::Hat).unwrap();
        let rel = plus_relations::<f64>(&id, Family::W);
        assert!(rel.elements.iter().all(NCPoly::is_zero));
    }

    #[test]
    fn plus_relations_standard_rank() {
        // rank of the 16 relations inside the 16-dimensional degree-2 space,
        // by Gaussian elimination on the coefficient rows
        let rhat = standard_r_su2::<f64>(2.0).unwrap().to_hat();
        let rel = plus_relations(&rhat, Family::V);
        let gens: Vec<_> = GenSymbol::all(Family::V, 2).collect();
        let monos = Monomial::all_of_degree(&gens, 2);
        let mut rows: Vec<Vec<C<f64>>> =
            rel.elements.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
        let mut rank = 0;
        for col in 0..monos.len() {
            let Some(piv) = (rank..rows.len()).max_by(|&a, &b| rows[a][col].norm().partial_cmp(&rows[b][col].norm()).unwrap()) else { break };
            if rows[piv][col].norm() < 1e-12 {
                continue;
            }
            rows.swap(rank, piv);
            let pivot = rows[rank][col];
            for r in 0..rows.len() {
                if r != rank {
                    let f = rows[r][col] / pivot;
                    for cc in 0..monos.len() {
                        let v = rows[rank][cc];
                        rows[r][cc] -= f * v;
                    }
                }
            }
            rank += 1;
        }
        // The plus relations at generic q cut the 16-dim space of quadratic
        // words down to 10, leaving a 6-dim relation space.
        assert_eq!(rank, 6);
    }

    #[test]
    fn cross_rules_for_flip_and_identity() {
        let rules = cross_relations(&RMat::<f64>::flip(2));
        for ((w, v), rhs) in rules.iter() {
            let expected = NCPoly::term(Monomial(vec![*v, *w]), one());
            assert_eq!(rhs, &expected);
        }
        let id = RMat::new(2, crate::matrix::CMat::identity(4), crate::rmatrix::Convention::Hat).unwrap();
        let rules = cross_relations::<f64>(&id);
        // R̂^{sa}_{tb} = δ_st δ_ab: w^a_l v^k_b → δ_ab Σ_s v^k_s w^s_l
        for a in 0..2 {
            for b in 0..2 {
                let rhs = rules.rule(GenSymbol::w(a, 1), GenSymbol::v(0, b));
                if a == b {
                    let mut expected = NCPoly::zero();
                    for s in 0..2 {
                        expected.add_term(Monomial(vec![GenSymbol::v(0, s), GenSymbol::w(s, 1)]), one());
                    }
                    assert_eq!(rhs, &expected);
                } else {
                    assert!(rhs.is_zero());
                }
            }
        }
    }

    #[test]
    fn standard_rules_by_hand_contraction() {
        // R̂ = P R at q=2, rows/cols ordered (11,12,21,22):
        //   [[q½,0,0,0],[0,q½-q^-3/2,q^-½,0],[0,q^-½,0,0],[0,0,0,q½]]
        let rhat = standard_r_su2::<f64>(2.0).unwrap().to_hat();
        let rules = cross_relations(&rhat);
        let s2 = 2f64.sqrt();

        // w¹₁ v¹₁: only R̂^{11}_{11} = q½ contributes
        let rhs = rules.rule(GenSymbol::w(0, 0), GenSymbol::v(0, 0));
        let expected = NCPoly::term(Monomial(vec![GenSymbol::v(0, 0), GenSymbol::w(0, 0)]), c(s2, 0.0));
        assert!(rhs.sub(&expected).max_abs() < 1e-15);
        let p = NCPoly::term(Monomial(vec![GenSymbol::w(0, 0), GenSymbol::v(0, 0)]), one());
        let st = straighten(&rules, &p);
        assert!(st.sub(&expected).max_abs() < 1e-15);

        // w²₂ v¹₂: R̂^{12}_{12} = q½ - q^-3/2 and R̂^{22}_{22} = q½
        let rhs = rules.rule(GenSymbol::w(1, 1), GenSymbol::v(0, 1));
        let mut expected = NCPoly::zero();
        expected.add_term(Monomial(vec![GenSymbol::v(0, 0), GenSymbol::w(0, 1)]), c(s2 - 0.5f64.powf(1.5), 0.0));
        expected.add_term(Monomial(vec![GenSymbol::v(0, 1), GenSymbol::w(1, 1)]), c(s2, 0.0));
        assert_eq!(rhs.len(), 2);
        assert!(rhs.sub(&expected).max_abs() < 1e-15);
        let p = NCPoly::term(Monomial(vec![GenSymbol::w(1, 1), GenSymbol::v(0, 1)]), one());
        let st = straighten(&rules, &p);
        assert!(st.sub(&expected).max_abs() < 1e-15);
        assert!(st.is_normal_ordered());
    }

    #[test]
    fn straighten_trivial_cases() {
        let rules = cross_relations(&RMat::<f64>::flip(2));
        let vv = NCPoly::term(Monomial(vec![GenSymbol::v(0, 1), GenSymbol::v(1, 0)]), c(2.0, 1.0));
        assert_eq!(straighten(&rules, &vv), vv);
        let wv = NCPoly::term(Monomial(vec![GenSymbol::w(0, 0), GenSymbol::v(0, 0)]), one());
        let vw = NCPoly::term(Monomial(vec![GenSymbol::v(0, 0), GenSymbol::w(0, 0)]), one());
        assert_eq!(straighten(&rules, &wv), vw);
    }

    #[test]
    fn compose_shapes() {
        let one_by_one = compose_generators::<f64>(1);
        assert_eq!(one_by_one.len(), 1);
        assert_eq!(one_by_one[0], NCPoly::term(Monomial(vec![GenSymbol::v(0, 0), GenSymbol::w(0, 0)]), one()));
        let two = compose_generators::<f64>(2);
        assert_eq!(two.len(), 4);
        for p in &two {
            assert_eq!(p.len(), 2);
            assert!(p.is_homogeneous() && p.degree() == 2);
            assert_eq!(p.multidegrees(), vec![(1, 1)]);
        }
    }
}
