use super::*;
use crate::evalnum::{prepare, solution};
use crate::noether::lookup;
use crate::samples::{random_config, random_deformation};

fn schwarzschild_family() -> (TheoryEntry, SolutionFamily, FieldConfig) {
    let th = lookup("hilbert").unwrap();
    let fam = SolutionFamily::scale_parameter(&solution("schwarzschild").unwrap(), "M", "s");
    (th, fam, solution("minkowski-spherical").unwrap())
}

fn coulomb_family() -> (TheoryEntry, SolutionFamily, FieldConfig) {
    let th = lookup("yang_mills").unwrap();
    let fam = SolutionFamily::scale_parameter(&solution("coulomb").unwrap(), "q", "s");
    (th, fam, solution("abelian-vacuum").unwrap())
}

#[test]
fn families_start_at_vacuum() {
    for (_, fam, vac) in [schwarzschild_family(), coulomb_family()] {
        let c = fam.check(&vac).unwrap();
        assert!(c.pass(), "{c:?}");
    }
}

#[test]
fn family_off_vacuum_is_detected() {
    let (_, fam, _) = schwarzschild_family();
    let c = fam.check(&solution("schwarzschild").unwrap()).unwrap();
    assert!(c.vacuum_deviation > 1e-3);
}

#[test]
fn condition_along_schwarzschild() {
    let (th, fam, _) = schwarzschild_family();
    let r = verify_condition(&th, &fam).unwrap();
    assert!(r.pass(), "{r:?}");
    assert!(r.scale > 1e-3);
}

#[test]
fn condition_along_coulomb() {
    let (th, fam, _) = coulomb_family();
    let r = verify_condition(&th, &fam).unwrap();
    assert!(r.symbolic.value < 1e-12 && r.finite_difference.value < 1e-12, "{r:?}");
}

#[test]
fn condition_holds_off_shell() {
    let th = lookup("hilbert").unwrap();
    let vac = random_config(&th, 3);
    let x = random_deformation(&vac, 4);
    let fam = SolutionFamily::linear(&vac, &x.tensors, "s");
    let r = verify_condition(&th, &fam).unwrap();
    assert!(r.symbolic.value < 1e-9 && r.scale > 1e-3, "{r:?}");
}

#[test]
fn dirichlet_vanishing() {
    for name in ["hilbert", "yang_mills"] {
        let th = lookup(name).unwrap();
        let vac = random_config(&th, 8);
        let mut xb = random_deformation(&vac, 9);
        xb.boundary_vanishing = true;
        let r = dirichlet_pc_check(&th, &vac, &xb).unwrap();
        assert!(r.pass(), "{name}: {r:?}");
        let y = random_config(&th, 10);
        let x = random_deformation(&y, 11);
        assert!(unsubstituted_pc(&th, &y, &vac, &x, &xb).unwrap() > 1e-6);
    }
}

#[test]
fn dirichlet_needs_flag() {
    let th = lookup("yang_mills").unwrap();
    let vac = random_config(&th, 8);
    let xb = random_deformation(&vac, 9);
    assert_eq!(dirichlet_pc_check(&th, &vac, &xb), Err(AugmentError::NotBoundaryVanishing));
}

#[test]
fn augmented_lagrangian_vanishes_on_vacuum() {
    for name in ["hilbert", "palatini", "yang_mills", "chern_simons_so3_3d"] {
        let th = lookup(name).unwrap();
        let vac = random_config(&th, 21);
        let l = augmented_lagrangian(&th, &vac, &vac).unwrap();
        assert!(vac.residual(&[l], 5, 1).unwrap() < 1e-10, "{name}");
    }
}

#[test]
fn chern_simons_b_form() {
    let th = lookup("chern_simons_so3_3d").unwrap();
    let y = random_config(&th, 31);
    let vac = random_config(&th, 32);
    let l = augmented_lagrangian(&th, &y, &vac).unwrap();
    let b = chern_simons_covariant_density(&y, &vac).unwrap();
    assert!(y.residual(&[l.sub(&b)], 5, 2).unwrap() < 1e-9);
}

#[test]
fn chern_simons_gauge_covariance() {
    let th = lookup("chern_simons_so3_3d").unwrap();
    let y = random_config(&th, 33);
    let vac = random_config(&th, 34);
    let l = augmented_lagrangian(&th, &y, &vac).unwrap();
    let (yr, vr) = (rotate_gauge(&y, 0, 0.7).unwrap(), rotate_gauge(&vac, 0, 0.7).unwrap());
    let lr = augmented_lagrangian(&th, &yr, &vr).unwrap();
    assert!(y.residual(&[l.sub(&lr)], 5, 3).unwrap() < 1e-9);
    // a rotation of the configuration alone changes l
    let l1 = augmented_lagrangian(&th, &yr, &vac).unwrap();
    assert!(y.residual(&[l.sub(&l1)], 5, 3).unwrap() > 1e-3);
}

#[test]
fn tilde_only_for_hilbert() {
    let th = lookup("yang_mills").unwrap();
    let vac = random_config(&th, 1);
    assert_eq!(AlphaBuilder::new(&th, &vac, AlphaVariant::Tilde).unwrap_err(), AugmentError::Variant("tilde"));
}

#[test]
fn theories_without_alpha() {
    let th = lookup("spring_pair").unwrap();
    let vac = random_config(&th, 1);
    assert!(matches!(build_alpha(&th, &vac), Err(AugmentError::Noether(NoetherError::NoAlpha(_)))));
}

#[test]
fn formal_integration_along_schwarzschild() {
    let (th, fam, _) = schwarzschild_family();
    let gen = SymmetryGenerator::coordinate(4, 0);
    let (du, cv) = formal_integration_forms(&th, &fam, &gen).unwrap();
    let vac = fam.initial();
    let d = vac.residual(du.sub(&cv).coeffs(), 5, 4).unwrap();
    let s = vac.residual(cv.coeffs(), 5, 4).unwrap();
    assert!(d <= 1e-5 * s, "{d} vs {s}");
}

#[test]
fn robustness_of_hilbert_variants() {
    let h = lookup("hilbert").unwrap();
    let y = random_config(&h, 41);
    let vac = random_config(&h, 42);
    let a = AugmentedTheory::new(&h).augmented_density(&y, &vac).unwrap();
    let b = AugmentedTheory::with_variant(&h, AlphaVariant::Tilde).augmented_density(&y, &vac).unwrap();
    assert!(y.residual(&[a.sub(&b)], 3, 5).unwrap() > 1e-6);
    let p = prepare(&h, &y).unwrap();
    assert_eq!(p.fields.len(), 1);
}

#[test]
fn clashing_vacuum_params_are_renamed() {
    let sol = crate::evalnum::with_params(&solution("schwarzschild").unwrap(), &[("M", 2.0)]).unwrap();
    let vac = solution("schwarzschild").unwrap();
    let (v, both) = separate_params(&sol, &vac);
    assert_eq!(v.params.get("M_vacuum"), Some(&1.0));
    assert_eq!(both.params.get("M"), Some(&2.0));
    assert_eq!(both.params.get("M_vacuum"), Some(&1.0));
    let (v2, _) = separate_params(&vac, &vac);
    assert!(v2.params.contains_key("M"));
}
