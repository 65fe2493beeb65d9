use quasitri::catalog;
use quasitri::rmatrix::{
    braid_residual, conventions, drinfeld_rd, qybe_residual, semiclassical_w, star_report, Convention,
};
use quasitri::scalar::c;
use quasitri::{CMat64, RMat64};

fn standard(q: f64) -> RMat64 {
    catalog::standard_r_su2::<f64>(q).unwrap()
}

#[test]
fn identity_and_flip() {
    let id = RMat64::identity(2);
    assert_eq!(qybe_residual(&id), 0.0);
    assert_eq!(braid_residual(&id), 0.0);
    let p = RMat64::flip(2);
    assert_eq!(p.convention(), Convention::Hat);
    assert_eq!(braid_residual(&p), 0.0);
    let s = star_report(&p, 0.0);
    assert!(s.self_adjoint.holds && s.unitary.holds && s.involutive.holds);
}

#[test]
fn standard_family_solves_qybe_for_all_q() {
    for q in [0.3, 0.9, 1.0, 1.5, 2.0, 7.0] {
        let r = standard(q);
        assert!(qybe_residual(&r) < 1e-12, "q={q}");
        assert!(braid_residual(&r.to_hat()) < 1e-12, "q={q}");
    }
    let complex = catalog::standard_r_su2_complex::<f64>(c(0.6, 0.8)).unwrap();
    assert!(qybe_residual(&complex) < 1e-12);
}

#[test]
fn qybe_and_braid_agree_under_perturbation() {
    let r = standard(2.0);
    let bad = r.perturbed(1, 2, 0.05);
    assert!(qybe_residual(&bad) > 1e-4);
    assert!(braid_residual(&bad.to_hat()) > 1e-4);
}

#[test]
fn convention_round_trips() {
    let r = standard(1.7);
    assert!(r.to_hat().to_plain().entries().max_diff(r.to_plain().entries()) == 0.0);
    let k = conventions(&r);
    assert!(k.flip.matmul(&k.plain).max_diff(&k.hat) < 1e-15);
    assert!(k.flip.matmul(&k.hat).matmul(&k.flip).max_diff(&k.r21) < 1e-15);
    // index layout: R^{ij}_{kl} at row i*N+j, column k*N+l
    let e = r.entries();
    assert_eq!(r.at(0, 1, 1, 0), e[(1, 2)]);
}

#[test]
fn drinfeld_inverse() {
    let r = standard(2.0);
    let rd = drinfeld_rd(&r).unwrap();
    let prod = rd.entries().matmul(r.to_plain().entries());
    assert!(prod.max_diff(&CMat64::identity(4)) < 1e-14);
    assert!(qybe_residual(&rd) < 1e-12);
}

#[test]
fn standard_r_is_not_involutive() {
    let s = star_report(&standard(2.0), 1e-9);
    assert!(!s.involutive.holds);
    assert!(s.involutive.residual > 0.1);
}

#[test]
fn semiclassical_limit_matches_reference() {
    let alg = catalog::pauli_su2::<f64>().algebra;
    let got = semiclassical_w(catalog::standard_r_su2_family::<f64>(), &alg, 1.0).unwrap();
    let reference = catalog::su2_semiclassical_reference::<f64>();
    assert!(got.m.max_diff(&reference.m) < 1e-9);
    assert!(got.r.max_diff(&reference.r) < 1e-9);
    assert!(got.s.max_diff(&reference.s) < 1e-9);
    assert!(got.s_is_real(1e-12));
}

#[test]
fn semiclassical_rejects_family_not_through_identity() {
    let alg = catalog::pauli_su2::<f64>().algebra;
    let shifted = |q: f64| Ok(RMat64::new(2, CMat64::identity(4).scale_re(q + 1.0), Convention::Plain).unwrap());
    assert!(semiclassical_w(shifted, &alg, 1.0).is_err());
}

#[test]
fn wrong_shape_is_rejected() {
    assert!(RMat64::new(2, CMat64::identity(3), Convention::Plain).is_err());
}
