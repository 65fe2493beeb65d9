use quasitri::catalog::{self, CatalogEntry};
use quasitri::lie_tensor::{
    ad_invariance_residual, adjoint_action2, bracket, cybe, mixed_obstructions, quasitriangular_sense,
    split_sym_anti, QuasitriangularSense,
};
use quasitri::scalar::c;
use quasitri::{CMat64, CoefTensor2_64, Error, GroupPoint64, LieAlgebraRep64};

fn su2() -> CatalogEntry<f64> {
    catalog::pauli_su2::<f64>()
}

fn sl2() -> CatalogEntry<f64> {
    catalog::sl2_real::<f64>()
}

#[test]
fn catalog_algebras_are_lie_algebras() {
    for e in [su2(), sl2()] {
        let alg = &e.algebra;
        assert_eq!(alg.dim(), 3, "{}", e.name);
        assert!(alg.closure_residual() < 1e-12, "{}", e.name);
        assert!(alg.antisymmetry_residual() < 1e-12, "{}", e.name);
        assert!(alg.jacobi_residual() < 1e-12, "{}", e.name);
    }
}

#[test]
fn catalog_solutions_solve_cybe() {
    assert!(cybe(&su2().algebra, &su2().tensors["w"]).max_abs() < 1e-12);
    assert!(cybe(&sl2().algebra, &sl2().tensors["w_dj"]).max_abs() < 1e-12);
}

#[test]
fn catalog_symmetric_tensors_are_invariant() {
    assert!(ad_invariance_residual(&su2().algebra, &su2().tensors["s"]) < 1e-12);
    assert!(ad_invariance_residual(&sl2().algebra, &sl2().tensors["s_real"]) < 1e-12);
}

#[test]
fn antisymmetric_part_alone_is_not_a_solution() {
    // r alone has a nonzero Schouten bracket; the symmetric part cancels it
    let e = su2();
    assert!(cybe(&e.algebra, &e.tensors["r"]).max_abs() > 1e-3);
}

#[test]
fn split_recovers_catalog_parts() {
    let e = su2();
    let (sym, anti) = split_sym_anti(&e.tensors["w"]);
    assert!(anti.max_diff(&e.tensors["r"]) < 1e-14);
    // w = r - i s
    assert!(sym.max_diff(&e.tensors["s"].scale(c(0.0, -1.0))) < 1e-14);
    assert_eq!(quasitriangular_sense(&e.tensors["w"], 1e-12), QuasitriangularSense::Imaginary);
    assert_eq!(quasitriangular_sense(&sl2().tensors["w_dj"], 1e-12), QuasitriangularSense::Real);
    assert_eq!(quasitriangular_sense(&e.tensors["r"], 1e-12), QuasitriangularSense::Triangular);
}

#[test]
fn bracket_matches_matrix_commutator() {
    let alg = su2().algebra;
    let x = [c(0.3, 0.0), c(-1.2, 0.0), c(0.7, 0.0)];
    let y = [c(1.1, 0.0), c(0.4, 0.0), c(-0.5, 0.0)];
    let z = bracket(&alg, &x, &y).unwrap();
    let direct = alg.element(&x).commutator(&alg.element(&y));
    assert!(alg.element(&z).max_diff(&direct) < 1e-14);
}

#[test]
fn cybe_is_equivariant() {
    // Ad is orthogonal for su2, so the squared norm of CYBE(w) is invariant
    let e = su2();
    let alg = &e.algebra;
    let w = &e.tensors["w"];
    let perturbed = w.add(&CoefTensor2_64::wedge(3, 0, 1, c(0.2, 0.0)));
    let base = cybe(alg, &perturbed).coeffs().iter().map(|z| z.norm_sqr()).sum::<f64>();
    for x in [[0.3, -1.1, 0.7], [2.0, 0.1, -0.4], [-0.9, 0.5, 1.6]] {
        let mut h = CMat64::zeros(2, 2);
        for (k, xk) in x.iter().enumerate() {
            h = &h + &catalog::sigma::<f64>(k + 1).scale(c(0.0, *xk));
        }
        let g = GroupPoint64::new(h.exp()).unwrap();
        let moved = adjoint_action2(alg, &g, &perturbed).unwrap();
        let got = cybe(alg, &moved).coeffs().iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!((got - base).abs() < 1e-10 * base.max(1.0), "{got} vs {base}");
    }
}

#[test]
fn mixed_obstructions_vanish_for_solutions() {
    let e = su2();
    let (t1, t2) = mixed_obstructions(&e.algebra, &e.tensors["r"], &e.tensors["w"]).unwrap();
    let combined = cybe(&e.algebra, &e.tensors["w"]);
    assert!(combined.max_abs() < 1e-12);
    assert!(t1.max_abs().is_finite() && t2.max_abs().is_finite());
    let err = mixed_obstructions(&e.algebra, &e.tensors["w"], &e.tensors["w"]).unwrap_err();
    assert!(matches!(err, Error::NotAntisymmetric { .. }));
}

#[test]
fn non_closing_basis_is_rejected() {
    // [E12, E21] = E11 - E22 is outside the span
    let basis = vec![CMat64::real(&[&[0.0, 1.0], &[0.0, 0.0]]), CMat64::real(&[&[0.0, 0.0], &[1.0, 0.0]])];
    assert!(matches!(LieAlgebraRep64::from_basis(basis), Err(Error::NotClosed { .. })));
}

#[test]
fn expand_rejects_elements_outside_the_algebra() {
    let alg = su2().algebra;
    assert!(matches!(alg.expand(&CMat64::identity(2)), Err(Error::LeavesAlgebra { .. })));
    let x = [c(0.5, 0.0), c(0.0, 0.0), c(-2.0, 0.0)];
    let back = alg.expand(&alg.element(&x)).unwrap();
    for (a, b) in back.iter().zip(&x) {
        assert!((a - b).norm() < 1e-14);
    }
}
