use super::*;
use crate::samples::{random_config, random_deformation, random_generator};

fn worst(exprs: &[Expr], cfg: &FieldConfig) -> f64 {
    cfg.residual(exprs, 5, 7).unwrap()
}

const FAST: [&str; 5] = ["hilbert", "palatini", "einstein_first_order", "chern_simons_so3_3d", "yang_mills"];

#[test]
fn catalog_names() {
    let names: Vec<String> = catalog().iter().map(|e| e.name().to_string()).collect();
    assert_eq!(
        names,
        [
            "hilbert",
            "palatini",
            "einstein_first_order",
            "chern_simons_so3_3d",
            "f_of_R",
            "f_of_ricci2",
            "f_of_riemann2",
            "yang_mills",
            "spring_pair"
        ]
    );
    assert!(matches!(lookup("nope"), Err(NoetherError::UnknownTheory(_))));
}

#[test]
fn covariance_and_noether_identity() {
    for name in FAST.iter().chain(&["spring_pair"]) {
        let e = lookup(name).unwrap();
        let cfg = random_config(&e, 1);
        let gen = random_generator(&e, &cfg, 2);
        let mut a = Analysis::new(&e, &cfg).unwrap();
        let cov = a.covariance_residual(&gen);
        assert!(worst(&[cov], &cfg) < 1e-9, "{name}: covariance");
        let ec = a.noether_current(&gen);
        let w = a.work(&gen);
        let dn = a.formal_divergence(&ec).sub(&w);
        assert!(worst(dn.coeffs(), &cfg) < 1e-9, "{name}: Div E − W");
    }
}

#[test]
fn superpotential_split() {
    for name in FAST {
        let e = lookup(name).unwrap();
        let cfg = random_config(&e, 3);
        let gen = random_generator(&e, &cfg, 4);
        let mut a = Analysis::new(&e, &cfg).unwrap();
        let ec = a.noether_current(&gen);
        let r = a.reduced_current(&gen).unwrap();
        let u = a.superpotential(&gen).unwrap();
        let du = a.formal_divergence(&u);
        let res = worst(ec.sub(&r).sub(&du).coeffs(), &cfg);
        assert!(res < 1e-9, "{name}: {res:e}");
    }
}

#[test]
fn algorithmic_superpotential_for_covariant_theories() {
    for name in ["hilbert", "yang_mills"] {
        let e = lookup(name).unwrap();
        let cfg = random_config(&e, 5);
        let gen = random_generator(&e, &cfg, 6);
        let mut a = Analysis::new(&e, &cfg).unwrap();
        let ec = a.noether_current(&gen);
        let r = a.reduced_current(&gen).unwrap();
        let v = a.algorithmic_superpotential(&gen).unwrap();
        let dv = a.formal_divergence(&v);
        assert!(worst(ec.sub(&r).sub(&dv).coeffs(), &cfg) < 1e-9, "{name}");
    }
}

#[test]
fn bianchi_identities() {
    for name in ["hilbert", "palatini", "yang_mills"] {
        let e = lookup(name).unwrap();
        let cfg = random_config(&e, 7);
        let gen = random_generator(&e, &cfg, 8);
        let b = bianchi_residual(&e, &cfg, &gen).unwrap();
        assert!(worst(&[b], &cfg) < 1e-9, "{name}");
    }
}

#[test]
fn printed_pc_forms_match() {
    for name in ["hilbert", "palatini", "chern_simons_so3_3d", "yang_mills"] {
        let e = lookup(name).unwrap();
        let cfg = random_config(&e, 9);
        let x = random_deformation(&cfg, 10);
        let mut a = Analysis::new(&e, &cfg).unwrap();
        let p = a.printed_pc(&x).unwrap();
        let d = p.sub(&a.pc_deformation(&x));
        assert!(worst(d.coeffs(), &cfg) < 1e-9, "{name}");
    }
}

#[test]
fn zero_generator_and_deformation() {
    for name in FAST {
        let e = lookup(name).unwrap();
        let cfg = random_config(&e, 11);
        let n = cfg.field(RoleKind::Gauge).ok().and_then(|f| f.algebra()).map_or(0, |a| a.dim());
        let gen = SymmetryGenerator::zero(cfg.dim(), n);
        let mut a = Analysis::new(&e, &cfg).unwrap();
        assert!(a.noether_current(&gen).coeffs().iter().all(|c| worst(&[c.clone()], &cfg) < 1e-12));
        let x = crate::noether::Deformation::zero(&cfg);
        assert!(worst(a.pc_deformation(&x).coeffs(), &cfg) < 1e-12, "{name}");
    }
}

#[test]
fn corrected_variation_ignores_divergences() {
    let p = lookup("palatini").unwrap();
    let q = palatini_with_divergence();
    let cfg = random_config(&p, 12);
    let x = random_deformation(&cfg, 13);
    let gen = random_generator(&p, &cfg, 14);
    let a = corrected_variation(&p, &cfg, &x, &gen).unwrap();
    let b = corrected_variation(&q, &cfg, &x, &gen).unwrap();
    let scale = worst(a.coeffs(), &cfg);
    assert!(scale > 1e-3);
    assert!(worst(a.sub(&b).coeffs(), &cfg) <= 1e-8 * scale);
}

#[test]
fn shape_and_generator_errors() {
    let h = lookup("hilbert").unwrap();
    let ym = lookup("yang_mills").unwrap();
    let cfg = random_config(&h, 1);
    let other = random_config(&ym, 1);
    let x = random_deformation(&other, 2);
    assert_eq!(pc_contract(&h, &cfg, &x).unwrap_err(), NoetherError::Shape);
    let mut gen = random_generator(&h, &cfg, 3);
    gen.xi[0] = Expr::sym("g_t_t_unbound");
    assert!(matches!(superpotential(&h, &cfg, &gen), Err(NoetherError::FieldDependentGenerator(_))));
}

#[test]
fn describe_lists_momenta() {
    let ym = lookup("yang_mills").unwrap();
    let cfg = crate::evalnum::solution("coulomb").unwrap();
    let d = describe(&ym, Some(&cfg)).unwrap();
    assert_eq!(d.row.order, 1);
    assert!(d.momenta.iter().any(|p| p.label == "p[A_0,t]^{r}"), "{:?}", d.momenta);
    assert!(d.lagrangian.is_some());
    let bare = describe(&lookup("spring_pair").unwrap(), None).unwrap();
    assert_eq!(bare.row.group, "mechanics");
    assert!(bare.momenta.is_empty());
}
