//! Coordinate Poisson bivectors on matrix groups and pointwise checks that
//! the lattice gauge maps are Poisson.
//!
//! A bivector is represented by its [`BracketTable`]: the matrix of brackets
//! `{x_α, x_β}` of coordinate functions, where the entries `(i, j)` of an
//! `n × n` factor are flattened to `i·n + j` and factors are concatenated.
//! A map `Φ` with Jacobian `J` is Poisson at a point when
//! `J Π_source Jᵀ = Π_target(Φ(point))`.
//!
//! Left/right translates of `t = Σ t^{mn} X_m ⊗ X_n` are written as in
//! `rg := Σ r^{mn} (X_m g) ⊗ (X_n g)` and `gr := Σ r^{mn} (g X_m) ⊗ (g X_n)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

pub use crate::group::GroupPoint;

use crate::error::{Error, Result};
use crate::finite_diff;
use crate::lie_tensor::{adjoint_action2, CoefTensor2, LieAlgebraRep};
use crate::matrix::CMat;
use crate::sampling::random_points;
use crate::scalar::{Real, C};

/// Matrix of coordinate brackets evaluated at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTable<T: Real> {
    entries: CMat<T>,
}

impl<T: Real> BracketTable<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { entries: CMat::zeros(dim, dim) }
    }

    pub fn from_matrix(entries: CMat<T>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &CMat<T> {
        &self.entries
    }

    pub fn into_matrix(self) -> CMat<T> {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    /// `max |B[α,β] + B[β,α]|`.
    pub fn antisymmetry_residual(&self) -> T {
        self.entries.max_diff(&-&self.entries.transpose())
    }

    pub fn max_abs(&self) -> T {
        self.entries.max_abs()
    }

    /// Product-manifold table with independent factors.
    pub fn block_diag(tables: &[BracketTable<T>]) -> Self {
        let dim = tables.iter().map(BracketTable::dim).sum();
        let mut entries = CMat::zeros(dim, dim);
        let mut off = 0;
        for t in tables {
            entries.set_block(off, off, &t.entries);
            off += t.dim();
        }
        Self { entries }
    }

    /// Push forward along a map with Jacobian `jac`: `J B Jᵀ`.
    pub fn push_forward(&self, jac: &CMat<T>) -> Self {
        Self { entries: jac.matmul(&self.entries).matmul(&jac.transpose()) }
    }
}

/// `B[α,β] = Σ t^{mn} (L1 X_m R1)_α (L2 X_n R2)_β`.
fn translated_table<T: Real>(
    alg: &LieAlgebraRep<T>,
    t: &CoefTensor2<T>,
    (l1, r1): (&CMat<T>, &CMat<T>),
    (l2, r2): (&CMat<T>, &CMat<T>),
) -> CMat<T> {
    let first: Vec<CMat<T>> = alg.basis().iter().map(|x| l1.matmul(x).matmul(r1)).collect();
    let second: Vec<CMat<T>> = alg.basis().iter().map(|x| l2.matmul(x).matmul(r2)).collect();
    let (rows, cols) = (first[0].rows() * first[0].cols(), second[0].rows() * second[0].cols());
    let mut out = CMat::zeros(rows, cols);
    for (m, ym) in first.iter().enumerate() {
        // u = Σ_n t^{mn} Z_n
        let mut u = vec![C::zero(); cols];
        for (n, zn) in second.iter().enumerate() {
            let tmn = t.get(m, n);
            if tmn.is_zero() {
                continue;
            }
            for (ui, zi) in u.iter_mut().zip(zn.as_slice()) {
                *ui = *ui + tmn * *zi;
            }
        }
        for (alpha, ya) in ym.as_slice().iter().enumerate() {
            if ya.is_zero() {
                continue;
            }
            for (beta, ub) in u.iter().enumerate() {
                out[(alpha, beta)] = out[(alpha, beta)] + *ya * *ub;
            }
        }
    }
    out
}

fn require_antisymmetric<T: Real>(alg: &LieAlgebraRep<T>, r: &CoefTensor2<T>) -> Result<()> {
    let residual = r.antisymmetry_residual();
    if residual > alg.tolerance() {
        return Err(Error::NotAntisymmetric { residual: residual.to_f64_lossy() });
    }
    Ok(())
}

fn right_left<T: Real>(alg: &LieAlgebraRep<T>, r: &CoefTensor2<T>, g: &CMat<T>) -> (CMat<T>, CMat<T>) {
    let id = CMat::identity(alg.n());
    let rg = translated_table(alg, r, (&id, g), (&id, g));
    let gr = translated_table(alg, r, (g, &id), (g, &id));
    (rg, gr)
}

/// Sklyanin bivector `π(g) = rg - gr`.
pub fn bracket_sklyanin<T: Real>(alg: &LieAlgebraRep<T>, r: &CoefTensor2<T>, g: &GroupPoint<T>) -> Result<BracketTable<T>> {
    require_antisymmetric(alg, r)?;
    let (rg, gr) = right_left(alg, r, g.matrix());
    Ok(BracketTable { entries: &rg - &gr })
}

/// Plus structure `π₊(g) = rg + gr`.
pub fn bracket_plus<T: Real>(alg: &LieAlgebraRep<T>, r: &CoefTensor2<T>, g: &GroupPoint<T>) -> Result<BracketTable<T>> {
    require_antisymmetric(alg, r)?;
    let (rg, gr) = right_left(alg, r, g.matrix());
    Ok(BracketTable { entries: &rg + &gr })
}

/// Cross block `{a-coordinate, b-coordinate}` of `(a, e) φ (e, b)`:
/// `Σ φ^{mn} (a X_m)_{ij} (X_n b)_{kl}`.
pub fn bracket_cross<T: Real>(
    alg: &LieAlgebraRep<T>,
    phi: &CoefTensor2<T>,
    a: &GroupPoint<T>,
    b: &GroupPoint<T>,
) -> CMat<T> {
    let id = CMat::identity(alg.n());
    translated_table(alg, phi, (a.matrix(), &id), (&id, b.matrix()))
}

/// How `φ(a, b) ∈ g ⊗ g` depends on the two link variables.
#[derive(Clone)]
pub enum Phi<T: Real> {
    Constant(CoefTensor2<T>),
    /// `φ(a, b) = -r + (Ad_b ⊗ Ad_b)(scale · tr(ab) · tensor)`.
    AdBF { tensor: CoefTensor2<T>, f_scale: T },
    Custom(Arc<dyn Fn(&GroupPoint<T>, &GroupPoint<T>) -> Result<CoefTensor2<T>> + Send + Sync>),
}

impl<T: Real> fmt::Debug for Phi<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phi::Constant(t) => f.debug_tuple("Constant").field(t).finish(),
            Phi::AdBF { tensor, f_scale } => {
                f.debug_struct("AdBF").field("tensor", tensor).field("f_scale", f_scale).finish()
            }
            Phi::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Data of the two-link bivector `π₊₊(a,b) = π₊(a) ⊕ π₊(b) ⊕ (a,e)φ(a,b)(e,b)`.
#[derive(Debug, Clone)]
pub struct TwoLinkSpec<T: Real> {
    pub algebra: LieAlgebraRep<T>,
    pub r: CoefTensor2<T>,
    pub phi: Phi<T>,
}

impl<T: Real> TwoLinkSpec<T> {
    pub fn new(algebra: LieAlgebraRep<T>, r: CoefTensor2<T>, phi: Phi<T>) -> Result<Self> {
        require_antisymmetric(&algebra, &r)?;
        Ok(Self { algebra, r, phi })
    }

    /// Constant `φ = -w`.
    pub fn constant(algebra: LieAlgebraRep<T>, r: CoefTensor2<T>, w: &CoefTensor2<T>) -> Result<Self> {
        let phi = Phi::Constant(w.scale_re(-T::one()));
        Self::new(algebra, r, phi)
    }

    pub fn phi_at(&self, a: &GroupPoint<T>, b: &GroupPoint<T>) -> Result<CoefTensor2<T>> {
        match &self.phi {
            Phi::Constant(t) => Ok(t.clone()),
            Phi::AdBF { tensor, f_scale } => {
                let tr = a.matrix().matmul(b.matrix()).trace() * Complex::new(*f_scale, T::zero());
                let moved = adjoint_action2(&self.algebra, b, &tensor.scale(tr))?;
                Ok(moved.sub(&self.r))
            }
            Phi::Custom(f) => f(a, b),
        }
    }

    /// `ψ(a, b) = φ(a, b) + r`.
    pub fn psi_at(&self, a: &GroupPoint<T>, b: &GroupPoint<T>) -> Result<CoefTensor2<T>> {
        Ok(self.phi_at(a, b)?.add(&self.r))
    }

    /// Whether `φ(a, b)` has real coefficients.
    pub fn phi_is_real_at(&self, a: &GroupPoint<T>, b: &GroupPoint<T>, tol: T) -> Result<bool> {
        Ok(self.phi_at(a, b)?.max_imag() <= tol)
    }
}

/// Full `2n² × 2n²` table of `π₊₊` at `(a, b)`; the lower cross block is the
/// negative transpose of the upper one.
pub fn assemble_two_link<T: Real>(spec: &TwoLinkSpec<T>, a: &GroupPoint<T>, b: &GroupPoint<T>) -> Result<BracketTable<T>> {
    let alg = &spec.algebra;
    let nn = alg.n() * alg.n();
    let pa = bracket_plus(alg, &spec.r, a)?;
    let pb = bracket_plus(alg, &spec.r, b)?;
    let cross = bracket_cross(alg, &spec.phi_at(a, b)?, a, b);
    let mut entries = CMat::zeros(2 * nn, 2 * nn);
    entries.set_block(0, 0, pa.entries());
    entries.set_block(nn, nn, pb.entries());
    entries.set_block(0, nn, &cross);
    entries.set_block(nn, 0, &-&cross.transpose());
    Ok(BracketTable { entries })
}

/// Values of a map between products of group factors with its Jacobian
/// (rows: concatenated outputs, columns: concatenated inputs).
#[derive(Debug, Clone)]
pub struct MapEval<T: Real> {
    pub values: Vec<GroupPoint<T>>,
    pub jacobian: CMat<T>,
}

/// Jacobian of `X ↦ A X B` in flattened coordinates: `J[(i,j),(p,q)] = A_ip B_qj`.
pub fn sandwich_jacobian<T: Real>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    let n = a.rows();
    CMat::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (p, q) = (col / n, col % n);
        a[(i, p)] * b[(q, j)]
    })
}

fn assemble_jacobian<T: Real>(n: usize, blocks: &[&[Option<CMat<T>>]]) -> CMat<T> {
    let nn = n * n;
    let rows = blocks.len();
    let cols = blocks[0].len();
    let mut jac = CMat::zeros(rows * nn, cols * nn);
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            if let Some(b) = blk {
                jac.set_block(bi * nn, bj * nn, b);
            }
        }
    }
    jac
}

/// `(x, y, z) ↦ x y z⁻¹` with `d = (dx) y z⁻¹ + x (dy) z⁻¹ - x y z⁻¹ (dz) z⁻¹`.
pub fn map_one_link<T: Real>(x: &GroupPoint<T>, y: &GroupPoint<T>, z: &GroupPoint<T>) -> Result<MapEval<T>> {
    let n = x.n();
    let zinv = z.inverse();
    let yzinv = y.matrix().matmul(zinv);
    let value = GroupPoint::new(x.matrix().matmul(&yzinv))?;
    let id = CMat::identity(n);
    let jx = sandwich_jacobian(&id, &yzinv);
    let jy = sandwich_jacobian(x.matrix(), zinv);
    let jz = sandwich_jacobian(&-value.matrix(), zinv);
    let jacobian = assemble_jacobian(n, &[&[Some(jx), Some(jy), Some(jz)]]);
    Ok(MapEval { values: vec![value], jacobian })
}

/// `(a, g, b) ↦ (a g⁻¹, g b)`.
pub fn map_two_link<T: Real>(a: &GroupPoint<T>, g: &GroupPoint<T>, b: &GroupPoint<T>) -> Result<MapEval<T>> {
    let n = a.n();
    let ginv = g.inverse();
    let left = GroupPoint::new(a.matrix().matmul(ginv))?;
    let right = GroupPoint::new(g.matrix().matmul(b.matrix()))?;
    let id = CMat::identity(n);
    let j_la = sandwich_jacobian(&id, ginv);
    let j_lg = sandwich_jacobian(&-left.matrix(), ginv);
    let j_rg = sandwich_jacobian(&id, b.matrix());
    let j_rb = sandwich_jacobian(g.matrix(), &id);
    let jacobian = assemble_jacobian(
        n,
        &[&[Some(j_la), Some(j_lg), None], &[None, Some(j_rg), Some(j_rb)]],
    );
    Ok(MapEval { values: vec![left, right], jacobian })
}

/// `(a, b) ↦ a b`.
pub fn map_multiply<T: Real>(a: &GroupPoint<T>, b: &GroupPoint<T>) -> MapEval<T> {
    let n = a.n();
    let id = CMat::identity(n);
    let ja = sandwich_jacobian(&id, b.matrix());
    let jb = sandwich_jacobian(a.matrix(), &id);
    MapEval { values: vec![a.mul(b)], jacobian: assemble_jacobian(n, &[&[Some(ja), Some(jb)]]) }
}

/// `‖J Π_source Jᵀ - Π_target(Φ(point))‖_max` for arbitrary table builders.
pub fn poisson_map_residual<T, S, M, G>(source: S, map: M, target: G, point: &[GroupPoint<T>]) -> Result<T>
where
    T: Real,
    S: Fn(&[GroupPoint<T>]) -> Result<BracketTable<T>>,
    M: Fn(&[GroupPoint<T>]) -> Result<MapEval<T>>,
    G: Fn(&[GroupPoint<T>]) -> Result<BracketTable<T>>,
{
    let eval = map(point)?;
    let pushed = source(point)?.push_forward(&eval.jacobian);
    let expected = target(&eval.values)?;
    Ok(pushed.entries().max_diff(expected.entries()))
}

/// One-link check: `(x,y,z) ↦ x y z⁻¹` from `(π, π₊, π)` to `π₊`.
pub fn one_link_residual<T: Real>(
    alg: &LieAlgebraRep<T>,
    r: &CoefTensor2<T>,
    x: &GroupPoint<T>,
    y: &GroupPoint<T>,
    z: &GroupPoint<T>,
) -> Result<T> {
    poisson_map_residual(
        |p| {
            Ok(BracketTable::block_diag(&[
                bracket_sklyanin(alg, r, &p[0])?,
                bracket_plus(alg, r, &p[1])?,
                bracket_sklyanin(alg, r, &p[2])?,
            ]))
        },
        |p| map_one_link(&p[0], &p[1], &p[2]),
        |v| bracket_plus(alg, r, &v[0]),
        &[x.clone(), y.clone(), z.clone()],
    )
}

/// `π₊₊(a, b) ⊕ π(g)` in the coordinate order `(a, g, b)`.
pub fn two_link_source<T: Real>(spec: &TwoLinkSpec<T>, a: &GroupPoint<T>, g: &GroupPoint<T>, b: &GroupPoint<T>) -> Result<BracketTable<T>> {
    let nn = a.n() * a.n();
    let links = assemble_two_link(spec, a, b)?.into_matrix();
    let middle = bracket_sklyanin(&spec.algebra, &spec.r, g)?;
    let mut entries = CMat::zeros(3 * nn, 3 * nn);
    // link a occupies slot 0, link b slot 2
    for (src, dst) in [(0, 0), (1, 2)] {
        for (src2, dst2) in [(0, 0), (1, 2)] {
            entries.set_block(dst * nn, dst2 * nn, &links.block(src * nn, src2 * nn, nn, nn));
        }
    }
    entries.set_block(nn, nn, middle.entries());
    Ok(BracketTable { entries })
}

/// Two-link check: the gauge transformation `(a,g,b) ↦ (a g⁻¹, g b)` at the
/// shared vertex, from `π₊₊(a, b) ⊕ π(g)` to `π₊₊`.
///
/// The push-forward of `π(g)` contributes `(A,e)(Ad_g r - r)(e,B)` to the
/// cross block and `φ(a, b)` contributes `(A,e) Ad_g φ(a,b) (e,B)`, so the
/// residual vanishes exactly when `ψ = φ + r` satisfies
/// `ψ(a g⁻¹, g b) = Ad_g ψ(a, b)` (the diagonal blocks always match).
pub fn two_link_residual<T: Real>(spec: &TwoLinkSpec<T>, a: &GroupPoint<T>, g: &GroupPoint<T>, b: &GroupPoint<T>) -> Result<T> {
    poisson_map_residual(
        |p| two_link_source(spec, &p[0], &p[1], &p[2]),
        |p| map_two_link(&p[0], &p[1], &p[2]),
        |v| assemble_two_link(spec, &v[0], &v[1]),
        &[a.clone(), g.clone(), b.clone()],
    )
}

/// Composition check at one point: `(a,b) ↦ ab` from `π₊₊` to `π₊`.
pub fn multiplication_residual_at<T: Real>(spec: &TwoLinkSpec<T>, a: &GroupPoint<T>, b: &GroupPoint<T>) -> Result<T> {
    poisson_map_residual(
        |p| assemble_two_link(spec, &p[0], &p[1]),
        |p| Ok(map_multiply(&p[0], &p[1])),
        |v| bracket_plus(&spec.algebra, &spec.r, &v[0]),
        &[a.clone(), b.clone()],
    )
}

/// Max of [`multiplication_residual_at`] over `points`.
pub fn multiplication_residual<T: Real>(spec: &TwoLinkSpec<T>, points: &[(GroupPoint<T>, GroupPoint<T>)]) -> Result<T> {
    points.iter().try_fold(T::zero(), |m, (a, b)| Ok(m.max(multiplication_residual_at(spec, a, b)?)))
}

/// Jacobiator of `π₊₊` at `(a, b)`, with derivatives of the bracket table by
/// central differences of step `h`:
/// `max_{αβγ} |Σ_δ Π_αδ ∂_δ Π_βγ + Π_βδ ∂_δ Π_γα + Π_γδ ∂_δ Π_αβ|`.
pub fn jacobiator_at<T: Real>(spec: &TwoLinkSpec<T>, a: &GroupPoint<T>, b: &GroupPoint<T>, h: T) -> Result<T> {
    let n = a.n();
    let nn = n * n;
    let dim = 2 * nn;
    let table = assemble_two_link(spec, a, b)?.into_matrix();
    let table_at = |coord: usize, step: T| -> Result<CMat<T>> {
        let mut am = a.matrix().clone();
        let mut bm = b.matrix().clone();
        let slot = if coord < nn { &mut am.as_mut_slice()[coord] } else { &mut bm.as_mut_slice()[coord - nn] };
        *slot = *slot + Complex::new(step, T::zero());
        Ok(assemble_two_link(spec, &GroupPoint::new(am)?, &GroupPoint::new(bm)?)?.into_matrix())
    };
    let inv = T::one() / (h + h);
    let mut deriv = Vec::with_capacity(dim);
    for coord in 0..dim {
        let d = (&table_at(coord, h)? - &table_at(coord, -h)?).scale_re(inv);
        deriv.push(d);
    }
    let mut worst = T::zero();
    for al in 0..dim {
        for be in 0..dim {
            for ga in 0..dim {
                let mut s = C::zero();
                for (de, dd) in deriv.iter().enumerate() {
                    s = s + table[(al, de)] * dd[(be, ga)]
                        + table[(be, de)] * dd[(ga, al)]
                        + table[(ga, de)] * dd[(al, be)];
                }
                worst = worst.max(s.norm());
            }
        }
    }
    Ok(worst)
}

/// Max Jacobiator of `π₊₊` over `points` at the given step.
pub fn jacobi_residual<T: Real>(spec: &TwoLinkSpec<T>, points: &[(GroupPoint<T>, GroupPoint<T>)], h: T) -> Result<T> {
    points.iter().try_fold(T::zero(), |m, (a, b)| Ok(m.max(jacobiator_at(spec, a, b, h)?)))
}

/// Push-forward of `rg` (a bivector on the middle factor) under the two-link
/// map, computed analytically as
/// `(a g⁻¹ r)_(1) + (r g b)_(2) - (a g⁻¹)_(1) r_[12] (g b)_(2)`
/// and through the Jacobian; returns the max-entry difference.
pub fn pushforward_formula_check<T: Real>(
    alg: &LieAlgebraRep<T>,
    r: &CoefTensor2<T>,
    a: &GroupPoint<T>,
    g: &GroupPoint<T>,
    b: &GroupPoint<T>,
) -> Result<T> {
    require_antisymmetric(alg, r)?;
    let n = alg.n();
    let nn = n * n;
    let id = CMat::identity(n);
    let agi = a.matrix().matmul(g.inverse());
    let gb = g.matrix().matmul(b.matrix());

    let first = translated_table(alg, r, (&agi, &id), (&agi, &id));
    let second = translated_table(alg, r, (&id, &gb), (&id, &gb));
    let cross = -&translated_table(alg, r, (&agi, &id), (&id, &gb));
    let mut analytic = CMat::zeros(2 * nn, 2 * nn);
    analytic.set_block(0, 0, &first);
    analytic.set_block(nn, nn, &second);
    analytic.set_block(0, nn, &cross);
    analytic.set_block(nn, 0, &-&cross.transpose());

    let rg = translated_table(alg, r, (&id, g.matrix()), (&id, g.matrix()));
    let source = BracketTable::block_diag(&[
        BracketTable::zeros(nn),
        BracketTable::from_matrix(rg),
        BracketTable::zeros(nn),
    ]);
    let eval = map_two_link(a, g, b)?;
    Ok(source.push_forward(&eval.jacobian).entries().max_diff(&analytic))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiConditionReport<T: Real> {
    pub passed: bool,
    /// `max ‖ψ(ag⁻¹, gb) - Ad_g ψ(a,b)‖`.
    pub cocycle_residual: T,
    /// Max two-link Poisson-map residual.
    pub map_residual: T,
}

/// Checks `φ = -r + ψ` with `ψ(ag⁻¹, gb) = Ad_g ψ(a, b)` and the two-link map
/// residual over `samples` seeded random `(a, g, b)`.
pub fn phi_condition_check<T: Real>(spec: &TwoLinkSpec<T>, samples: usize, seed: u64, tol: T) -> Result<PhiConditionReport<T>> {
    let mut cocycle = T::zero();
    let mut map = T::zero();
    for p in random_points(&spec.algebra, samples, 3, seed) {
        let (a, g, b) = (&p[0], &p[1], &p[2]);
        let moved = GroupPoint::new(a.matrix().matmul(g.inverse()))?;
        let shifted = g.mul(b);
        let lhs = spec.psi_at(&moved, &shifted)?;
        let rhs = adjoint_action2(&spec.algebra, g, &spec.psi_at(a, b)?)?;
        cocycle = cocycle.max(lhs.max_diff(&rhs));
        map = map.max(two_link_residual(spec, a, g, b)?);
    }
    Ok(PhiConditionReport { passed: cocycle <= tol && map <= tol, cocycle_residual: cocycle, map_residual: map })
}

/// Finite-difference Jacobian of the two-link map, for cross-checks.
pub fn map_two_link_fd<T: Real>(a: &GroupPoint<T>, g: &GroupPoint<T>, b: &GroupPoint<T>, h: T) -> CMat<T> {
    finite_diff::jacobian(
        |m| {
            let gi = m[1].inverse().expect("invertible under small step");
            vec![m[0].matmul(&gi), m[1].matmul(&m[2])]
        },
        &[a.matrix().clone(), g.matrix().clone(), b.matrix().clone()],
        h,
    )
}

/// Finite-difference Jacobian of the one-link map.
pub fn map_one_link_fd<T: Real>(x: &GroupPoint<T>, y: &GroupPoint<T>, z: &GroupPoint<T>, h: T) -> CMat<T> {
    finite_diff::jacobian(
        |m| vec![m[0].matmul(&m[1]).matmul(&m[2].inverse().expect("invertible under small step"))],
        &[x.matrix().clone(), y.matrix().clone(), z.matrix().clone()],
        h,
    )
}

/// Finite-difference Jacobian of multiplication.
pub fn map_multiply_fd<T: Real>(a: &GroupPoint<T>, b: &GroupPoint<T>, h: T) -> CMat<T> {
    finite_diff::jacobian(|m| vec![m[0].matmul(&m[1])], &[a.matrix().clone(), b.matrix().clone()], h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{pauli_su2, sl2_real};
    use crate::sampling::{random_group_point, sample_rng};
    use crate::scalar::c;

    // Elementwise oracle: loops over every index without intermediate matrices.
    fn oracle_plus_minus(alg: &LieAlgebraRep<f64>, r: &CoefTensor2<f64>, g: &CMat<f64>, sign: f64) -> CMat<f64> {
        let n = alg.n();
        let mut out = CMat::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = C::zero();
                        for m in 0..alg.dim() {
                            for nn in 0..alg.dim() {
                                let (xm, xn) = (&alg.basis()[m], &alg.basis()[nn]);
                                let mut xg_ij = C::<f64>::zero();
                                let mut xg_kl = C::<f64>::zero();
                                let mut gx_ij = C::<f64>::zero();
                                let mut gx_kl = C::<f64>::zero();
                                for p in 0..n {
                                    xg_ij += xm[(i, p)] * g[(p, j)];
                                    xg_kl += xn[(k, p)] * g[(p, l)];
                                    gx_ij += g[(i, p)] * xm[(p, j)];
                                    gx_kl += g[(k, p)] * xn[(p, l)];
                                }
                                s += r.get(m, nn) * (xg_ij * xg_kl + gx_ij * gx_kl * sign);
                            }
                        }
                        out[(i * n + j, k * n + l)] = s;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sklyanin_examples() {
        let e = pauli_su2::<f64>();
        let r = &e.tensors["r"];
        let id = GroupPoint::identity(2);
        assert_eq!(bracket_sklyanin(&e.algebra, r, &id).unwrap().max_abs(), 0.0);
        assert_eq!(bracket_sklyanin(&e.algebra, &CoefTensor2::zeros(3), &id).unwrap().max_abs(), 0.0);
        let g = GroupPoint::new(CMat::diag(&[c(2.0, 0.0), c(0.5, 0.0)])).unwrap();
        let table = bracket_sklyanin(&e.algebra, r, &g).unwrap();
        let oracle = oracle_plus_minus(&e.algebra, r, g.matrix(), -1.0);
        assert!(table.entries().max_diff(&oracle) < 1e-14);
        assert!(table.antisymmetry_residual() < 1e-14);
        let bad = CoefTensor2::simple(3, 0, 1, c(1.0, 0.0));
        assert!(bracket_sklyanin(&e.algebra, &bad, &g).is_err());
    }

    #[test]
    fn plus_examples() {
        let e = pauli_su2::<f64>();
        let r = &e.tensors["r"];
        let id = GroupPoint::identity(2);
        assert_eq!(bracket_plus(&e.algebra, &CoefTensor2::zeros(3), &id).unwrap().max_abs(), 0.0);
        let at_e = bracket_plus(&e.algebra, r, &id).unwrap();
        let twice = r.matrix_form(&e.algebra).scale_re(2.0);
        assert!(at_e.entries().max_diff(&twice) < 1e-15);
        let mut rng = sample_rng(7, 0);
        let h = e.algebra.element(&[c(0.0, 0.3), c(0.0, -0.8), c(0.0, 0.5)]);
        let u = GroupPoint::new(h.exp()).unwrap();
        let table = bracket_plus(&e.algebra, r, &u).unwrap();
        assert!(table.entries().max_diff(&oracle_plus_minus(&e.algebra, r, u.matrix(), 1.0)) < 1e-14);
        let g = random_group_point(&e.algebra, &mut rng);
        assert!(bracket_plus(&e.algebra, r, &g).unwrap().antisymmetry_residual() < 1e-13);
    }

    #[test]
    fn cross_examples() {
        let e = pauli_su2::<f64>();
        let id = GroupPoint::identity(2);
        assert_eq!(bracket_cross(&e.algebra, &CoefTensor2::zeros(3), &id, &id).max_abs(), 0.0);
        let phi = e.tensors["w"].scale_re(-1.0);
        let at_e = bracket_cross(&e.algebra, &phi, &id, &id);
        let m = phi.matrix_form(&e.algebra);
        let reindexed = CMat::from_fn(4, 4, |r, c| m[((r / 2) * 2 + c / 2, (r % 2) * 2 + c % 2)]);
        assert!(at_e.max_diff(&reindexed) < 1e-15);
        let mut rng = sample_rng(3, 1);
        let a = random_group_point(&e.algebra, &mut rng);
        let b = random_group_point(&e.algebra, &mut rng);
        let table = bracket_cross(&e.algebra, &phi, &a, &b);
        // oracle: (a ⊗ 1) M(φ) (1 ⊗ b) read as a 4-index array
        let ab = a.matrix().kron(&CMat::identity(2)).matmul(&phi.matrix_form(&e.algebra)).matmul(&CMat::identity(2).kron(b.matrix()));
        // M(φ) row (i,k) col (j,l) ↔ table[(i,j),(k,l)]
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert!((table[(i * 2 + j, k * 2 + l)] - ab[(i * 2 + k, j * 2 + l)]).norm() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn assemble_examples() {
        let e = sl2_real::<f64>();
        let zero = CoefTensor2::zeros(3);
        let spec = TwoLinkSpec::new(e.algebra.clone(), zero.clone(), Phi::Constant(zero.clone())).unwrap();
        let mut rng = sample_rng(11, 0);
        let a = random_group_point(&e.algebra, &mut rng);
        let b = random_group_point(&e.algebra, &mut rng);
        assert_eq!(assemble_two_link(&spec, &a, &b).unwrap().max_abs(), 0.0);

        let r = e.tensors["r_a"].clone();
        let spec = TwoLinkSpec::new(e.algebra.clone(), r.clone(), Phi::Constant(zero)).unwrap();
        let full = assemble_two_link(&spec, &a, &b).unwrap();
        let diag = BracketTable::block_diag(&[
            bracket_plus(&e.algebra, &r, &a).unwrap(),
            bracket_plus(&e.algebra, &r, &b).unwrap(),
        ]);
        assert!(full.entries().max_diff(diag.entries()) < 1e-15);

        let spec = TwoLinkSpec::constant(e.algebra.clone(), r.clone(), &e.tensors["w_dj"]).unwrap();
        let full = assemble_two_link(&spec, &a, &b).unwrap();
        assert!(full.antisymmetry_residual() < 1e-13);
        let cross = bracket_cross(&e.algebra, &e.tensors["w_dj"].scale_re(-1.0), &a, &b);
        assert!(full.entries().block(0, 4, 4, 4).max_diff(&cross) < 1e-15);
    }

    #[test]
    fn one_link_trivial_points() {
        let id = GroupPoint::<f64>::identity(2);
        let ev = map_one_link(&id, &id, &id).unwrap();
        assert_eq!(ev.values[0], id);
        let x = GroupPoint::new(CMat::real(&[&[2.0, 1.0], &[1.0, 1.0]])).unwrap();
        let ev = map_one_link(&x, &id, &id).unwrap();
        assert!(ev.values[0].matrix().max_diff(x.matrix()) < 1e-15);
        // d/dx block is the identity, d/dz block is -(x ⊗ 1)-shaped
        assert!(ev.jacobian.block(0, 0, 4, 4).max_diff(&CMat::identity(4)) < 1e-15);
        let singular = CMat::<f64>::zeros(2, 2);
        assert!(GroupPoint::new(singular).is_err());
    }

    #[test]
    fn two_link_trivial_points() {
        let id = GroupPoint::<f64>::identity(2);
        let a = GroupPoint::new(CMat::real(&[&[2.0, 1.0], &[1.0, 1.0]])).unwrap();
        let b = GroupPoint::new(CMat::real(&[&[1.0, 0.5], &[0.0, 1.0]])).unwrap();
        let ev = map_two_link(&a, &id, &b).unwrap();
        assert_eq!(ev.values[0].matrix(), a.matrix());
        assert_eq!(ev.values[1].matrix(), b.matrix());
        assert!(ev.jacobian.block(0, 0, 4, 4).max_diff(&CMat::identity(4)) < 1e-15);
        assert!(ev.jacobian.block(4, 8, 4, 4).max_diff(&CMat::identity(4)) < 1e-15);
        let ev = map_two_link(&a, &a, &b).unwrap();
        assert!(ev.values[0].matrix().max_diff(&CMat::identity(2)) < 1e-14);
    }

    #[test]
    fn jacobians_match_finite_differences() {
        let alg = sl2_real::<f64>().algebra;
        for i in 0..5 {
            let mut rng = sample_rng(99, i);
            let p: Vec<_> = (0..3).map(|_| random_group_point(&alg, &mut rng)).collect();
            let ev = map_one_link(&p[0], &p[1], &p[2]).unwrap();
            let fd = map_one_link_fd(&p[0], &p[1], &p[2], 1e-6);
            assert!(finite_diff::relative_error(&ev.jacobian, &fd) < 1e-6);
            let ev = map_two_link(&p[0], &p[1], &p[2]).unwrap();
            let fd = map_two_link_fd(&p[0], &p[1], &p[2], 1e-6);
            assert!(finite_diff::relative_error(&ev.jacobian, &fd) < 1e-6);
            let ev = map_multiply(&p[0], &p[1]);
            let fd = map_multiply_fd(&p[0], &p[1], 1e-6);
            assert!(finite_diff::relative_error(&ev.jacobian, &fd) < 1e-6);
        }
    }

    #[test]
    fn zero_brackets_give_zero_residual() {
        let e = sl2_real::<f64>();
        let zero = CoefTensor2::zeros(3);
        let spec = TwoLinkSpec::new(e.algebra.clone(), zero.clone(), Phi::Constant(zero)).unwrap();
        let p = &random_points(&e.algebra, 1, 3, 5)[0];
        assert_eq!(two_link_residual(&spec, &p[0], &p[1], &p[2]).unwrap(), 0.0);
    }

    #[test]
    fn pushforward_at_unit_g() {
        let e = pauli_su2::<f64>();
        let p = &random_points(&e.algebra, 1, 2, 8)[0];
        let id = GroupPoint::identity(2);
        let res = pushforward_formula_check(&e.algebra, &e.tensors["r"], &p[0], &id, &p[1]).unwrap();
        assert!(res < 1e-9, "{res}");
        let res = pushforward_formula_check(&e.algebra, &CoefTensor2::zeros(3), &p[0], &id, &p[1]).unwrap();
        assert_eq!(res, 0.0);
    }

    #[test]
    fn phi_condition_non_invariant_constant_fails() {
        let e = pauli_su2::<f64>();
        let r = e.tensors["r"].clone();
        // ψ = σ1⊗σ1 constant
        let psi = CoefTensor2::simple(3, 0, 0, c(1.0, 0.0));
        let spec = TwoLinkSpec::new(e.algebra.clone(), r.clone(), Phi::Constant(psi.sub(&r))).unwrap();
        let rep = phi_condition_check(&spec, 10, 0, 1e-8).unwrap();
        assert!(!rep.passed);
        assert!(rep.cocycle_residual > 1e-3);
    }

    #[test]
    fn phi_reality_predicate() {
        let e = pauli_su2::<f64>();
        let id = GroupPoint::identity(2);
        let spec = TwoLinkSpec::constant(e.algebra.clone(), e.tensors["r"].clone(), &e.tensors["w"]).unwrap();
        assert!(!spec.phi_is_real_at(&id, &id, 1e-12).unwrap());
        let sl = sl2_real::<f64>();
        let spec = TwoLinkSpec::constant(sl.algebra.clone(), sl.tensors["r_a"].clone(), &sl.tensors["w_dj"]).unwrap();
        assert!(spec.phi_is_real_at(&id, &id, 1e-12).unwrap());
    }
}
