use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::scalar::{Real, C};

/// Generator family. `v` sorts before `w`; the one-link alias `u` parses as `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(alias = "u")]
    V,
    W,
}

impl Family {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "u" | "v" => Some(Family::V),
            "w" => Some(Family::W),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::V => "v",
            Family::W => "w",
        })
    }
}

/// Matrix generator `x^upper_lower` (indices zero-based, displayed one-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub family: Family,
    pub upper: usize,
    pub lower: usize,
}

impl GenSymbol {
    pub const fn new(family: Family, upper: usize, lower: usize) -> Self {
        Self { family, upper, lower }
    }

    pub const fn v(upper: usize, lower: usize) -> Self {
        Self::new(Family::V, upper, lower)
    }

    pub const fn w(upper: usize, lower: usize) -> Self {
        Self::new(Family::W, upper, lower)
    }

    /// All `N²` generators of one family in canonical order.
    pub fn all(family: Family, n: usize) -> impl Iterator<Item = GenSymbol> {
        (0..n).flat_map(move |i| (0..n).map(move |j| GenSymbol::new(family, i, j)))
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}_{}", self.family, self.upper + 1, self.lower + 1)
    }
}

/// Word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<GenSymbol>);

impl Monomial {
    pub fn one() -> Self {
        Self(vec![])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, rhs: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        out.extend_from_slice(&rhs.0);
        Monomial(out)
    }

    /// `(#v, #w)`.
    pub fn multidegree(&self) -> (usize, usize) {
        let v = self.0.iter().filter(|g| g.family == Family::V).count();
        (v, self.0.len() - v)
    }

    /// Number of pairs `i < j` with a `w` at `i` and a `v` at `j`.
    pub fn inversions(&self) -> usize {
        let mut seen_w = 0;
        let mut inv = 0;
        for g in &self.0 {
            match g.family {
                Family::W => seen_w += 1,
                Family::V => inv += seen_w,
            }
        }
        inv
    }

    pub fn is_normal_ordered(&self) -> bool {
        self.inversions() == 0
    }

    /// All words of the given length over `alphabet`, in lexicographic order.
    pub fn all_of_degree(alphabet: &[GenSymbol], degree: usize) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for _ in 0..degree {
            out = out
                .iter()
                .flat_map(|m| alphabet.iter().map(move |g| Monomial(m.0.iter().copied().chain([*g]).collect())))
                .collect();
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Noncommutative polynomial with complex coefficients. Terms are kept in
/// canonical monomial order and exact-zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct NCPoly<T: Real> {
    terms: BTreeMap<Monomial, C<T>>,
}

impl<T: Real> Default for NCPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> NCPoly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn term(m: Monomial, coef: C<T>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coef);
        p
    }

    pub fn generator(g: GenSymbol) -> Self {
        Self::term(Monomial(vec![g]), C::new(T::one(), T::zero()))
    }

    pub fn add_term(&mut self, m: Monomial, coef: C<T>) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coef);
            }
            Entry::Occupied(mut e) => {
                let sum = *e.get() + coef;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C<T> {
        self.terms.get(m).copied().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn multidegrees(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.terms.keys().map(Monomial::multidegree).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_normal_ordered(&self) -> bool {
        self.terms.keys().all(Monomial::is_normal_ordered)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -*c);
        }
        out
    }

    pub fn scale(&self, s: C<T>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), *c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.concat(mb), *ca * *cb);
            }
        }
        out
    }

    /// `left · self · right` for monomials.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(left.concat(m).concat(right), *c);
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.terms.values().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn norm(&self) -> T {
        self.terms.values().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    /// Drop terms with modulus at or below `tol`.
    pub fn cleaned(&self, tol: T) -> Self {
        Self { terms: self.terms.iter().filter(|(_, c)| c.norm() > tol).map(|(m, c)| (m.clone(), *c)).collect() }
    }
}

impl<T: Real> fmt::Display for NCPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}{:+}i) {m}", c.re, c.im)?;
        }
        Ok(())
    }
}
