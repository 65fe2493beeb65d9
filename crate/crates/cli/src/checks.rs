//! One function per `check` subcommand. Each returns the residuals that
//! decide the verdict plus any diagnostics reported alongside.

use anyhow::{Context, Result};
use serde::Serialize;

use quasitri::finite_diff::JACOBIATOR_STEP;
use quasitri::frt_braid::{homomorphism_residual, straightening_consistency, CertificateTerm};
use quasitri::lie_tensor::{ad_invariance_residual, cybe};
use quasitri::poisson_geom::{
    jacobi_residual, multiplication_residual, one_link_residual, pushforward_formula_check, two_link_residual,
};
use quasitri::rmatrix::{braid_residual, qybe_residual, semiclassical_w, star_report};
use quasitri::sampling::random_points;
use quasitri::{catalog, GroupPoint64, LieAlgebraRep64};

use crate::inputs::{self, Source, TensorRole};
use crate::report::{digest, CheckReport};
use crate::{CheckKind, Common, MapKind};

type Named = Vec<(String, f64)>;

fn named(items: &[(&str, f64)]) -> Named {
    items.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn check_name(kind: CheckKind) -> String {
    match kind {
        CheckKind::Cybe => "cybe".into(),
        CheckKind::Invariance => "invariance".into(),
        CheckKind::Jacobi => "jacobi".into(),
        CheckKind::PoissonMap { map } => format!(
            "poisson-map {}",
            match map {
                MapKind::OneLink => "one-link",
                MapKind::TwoLink => "two-link",
                MapKind::Compose => "compose",
            }
        ),
        CheckKind::Pushforward => "pushforward".into(),
        CheckKind::Ybe => "ybe".into(),
        CheckKind::Star => "star".into(),
        CheckKind::Semiclassical => "semiclassical".into(),
        CheckKind::Braiding => "braiding".into(),
        CheckKind::Homomorphism => "homomorphism".into(),
        CheckKind::Consistency => "consistency".into(),
    }
}

fn uses_samples(kind: CheckKind) -> bool {
    matches!(kind, CheckKind::Jacobi | CheckKind::PoissonMap { .. } | CheckKind::Pushforward)
}

fn points(alg: &LieAlgebraRep64, common: &Common, arity: usize) -> Vec<Vec<GroupPoint64>> {
    random_points(alg, common.samples, arity, common.seed)
}

fn pairs(alg: &LieAlgebraRep64, common: &Common) -> Vec<(GroupPoint64, GroupPoint64)> {
    points(alg, common, 2).into_iter().map(|mut p| (p.remove(0), p.remove(0))).collect()
}

fn max_over<F>(pts: &[Vec<GroupPoint64>], f: F) -> Result<f64>
where
    F: Fn(&[GroupPoint64]) -> quasitri::Result<f64>,
{
    pts.iter().try_fold(0.0_f64, |m, p| Ok(m.max(f(p)?)))
}

#[derive(Serialize)]
struct CertificateEntry {
    /// `(p, q, l, m)`, one-based.
    defect: [usize; 4],
    member: bool,
    distance: f64,
    terms: Vec<CertificateTerm>,
}

pub fn run_check(kind: CheckKind, common: &Common) -> Result<CheckReport> {
    let (residuals, diagnostics, source): (Named, Named, Source) = match kind {
        CheckKind::Cybe => {
            let (alg, w, src) = inputs::tensor_check(common, TensorRole::Solution)?;
            (named(&[("cybe_max", cybe(&alg, &w).max_abs())]), vec![], src)
        }
        CheckKind::Invariance => {
            let (alg, t, src) = inputs::tensor_check(common, TensorRole::Symmetric)?;
            (named(&[("ad_invariance", ad_invariance_residual(&alg, &t))]), vec![], src)
        }
        CheckKind::Jacobi => {
            let (spec, src) = inputs::two_link(common)?;
            let res = jacobi_residual(&spec, &pairs(&spec.algebra, common), JACOBIATOR_STEP)?;
            (named(&[("jacobiator_max", res)]), vec![], src)
        }
        CheckKind::PoissonMap { map } => {
            let (spec, src) = inputs::two_link(common)?;
            let alg = &spec.algebra;
            let res = match map {
                MapKind::OneLink => {
                    let pts = points(alg, common, 3);
                    ("one_link_max", max_over(&pts, |p| one_link_residual(alg, &spec.r, &p[0], &p[1], &p[2]))?)
                }
                MapKind::TwoLink => {
                    let pts = points(alg, common, 3);
                    ("two_link_max", max_over(&pts, |p| two_link_residual(&spec, &p[0], &p[1], &p[2]))?)
                }
                MapKind::Compose => ("compose_max", multiplication_residual(&spec, &pairs(alg, common))?),
            };
            (named(&[res]), vec![], src)
        }
        CheckKind::Pushforward => {
            let (spec, src) = inputs::two_link(common)?;
            let alg = &spec.algebra;
            let pts = points(alg, common, 3);
            let res = max_over(&pts, |p| pushforward_formula_check(alg, &spec.r, &p[0], &p[1], &p[2]))?;
            (named(&[("pushforward_max", res)]), vec![], src)
        }
        CheckKind::Ybe => {
            let (r, src) = inputs::rmatrix(common)?;
            (named(&[("qybe", qybe_residual(&r))]), vec![], src)
        }
        CheckKind::Star => {
            let (r, src) = inputs::rmatrix(common)?;
            let s = star_report(&r, common.tolerance);
            let res = named(&[
                ("self_adjoint", s.self_adjoint.residual),
                ("unitary", s.unitary.residual),
                ("involutive", s.involutive.residual),
            ]);
            (res, vec![], src)
        }
        CheckKind::Semiclassical => {
            let (input, src) = inputs::semiclassical(common)?;
            let got = semiclassical_w(catalog::standard_r_su2_family::<f64>(), &input.algebra, 1.0)?;
            let mut res = named(&[("m_error", got.m.max_diff(&input.m))]);
            if let Some(r) = &input.r {
                res.push(("r_error".into(), got.r.max_diff(r)));
            }
            if let Some(s) = &input.s {
                res.push(("s_error".into(), got.s.max_diff(s)));
            }
            (res, vec![], src)
        }
        CheckKind::Braiding => {
            let (r, src) = inputs::rmatrix(common)?;
            let round_trip = r.to_hat().to_plain().entries().max_diff(r.to_plain().entries());
            (named(&[("braid", braid_residual(&r)), ("convention_round_trip", round_trip)]), vec![], src)
        }
        CheckKind::Homomorphism => {
            let (r, src) = inputs::rmatrix(common)?;
            let rep = homomorphism_residual(&r, common.tolerance)?;
            if let Some(path) = &common.certificate {
                let n = r.n();
                let entries: Vec<CertificateEntry> = rep
                    .memberships
                    .iter()
                    .enumerate()
                    .map(|(idx, m)| CertificateEntry {
                        defect: [idx / (n * n * n) + 1, (idx / (n * n)) % n + 1, (idx / n) % n + 1, idx % n + 1],
                        member: m.member,
                        distance: m.distance,
                        terms: m.certificate.clone(),
                    })
                    .collect();
                let mut text = serde_json::to_string_pretty(&entries)?;
                text.push('\n');
                std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            }
            (named(&[("max_distance", rep.max_distance)]), named(&[("braid", rep.braid_residual)]), src)
        }
        CheckKind::Consistency => {
            let (r, src) = inputs::rmatrix(common)?;
            (named(&[("max_distance", straightening_consistency(&r))]), named(&[("braid", braid_residual(&r))]), src)
        }
    };
    let name = check_name(kind);
    let samples = if uses_samples(kind) { common.samples } else { 0 };
    let inputs_digest = digest(&[
        name.as_bytes(),
        &source.bytes,
        &common.seed.to_le_bytes(),
        &(samples as u64).to_le_bytes(),
        &common.tolerance.to_bits().to_le_bytes(),
    ]);
    Ok(CheckReport::new(&name, inputs_digest, residuals, diagnostics, common.seed, common.tolerance))
}
