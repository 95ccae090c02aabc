use std::f64::consts::PI;

use super::*;
use crate::geom::SymmetryGenerator;
use crate::noether::lookup;

fn sphere(r: f64) -> SurfaceSpec {
    SurfaceSpec::sphere(0.0, r).with_order(24).unwrap()
}

#[test]
fn zero_form_integrates_to_zero() {
    let cfg = shell_chart();
    let u = HorizontalForm::zero(4, Degree::Codim2);
    assert_eq!(surface_integral(&u, &cfg, &sphere(1.5)).unwrap().value, 0.0);
}

#[test]
fn normalized_constant() {
    let cfg = shell_chart();
    let c = 2.5;
    let u = HorizontalForm::codim2(4, |a, b| {
        if (a, b) == (0, 1) {
            Expr::sym("theta").sin().mul(&Expr::float(c / (4.0 * PI)))
        } else {
            Expr::zero()
        }
    });
    let i = surface_integral(&u, &cfg, &sphere(1.5)).unwrap();
    assert!((i.value - c).abs() < 1e-13, "{i:?}");
    assert!(i.error < 1e-12);
}

#[test]
fn monopole_flux() {
    let cfg = solution("monopole").unwrap();
    let mut calc = cfg.calculus();
    let a = cfg.tensor(crate::geom::RoleKind::Gauge).unwrap();
    let f = crate::geom::field_strength(a, &crate::geom::GaugeAlgebra::abelian(1), &mut calc);
    let u = HorizontalForm::codim2(4, |a, b| if (a, b) == (0, 1) { f.at(&[0, 2, 3]).clone() } else { Expr::zero() });
    let i = surface_integral(&u, &cfg, &sphere(5.0)).unwrap();
    assert!((i.value - 4.0 * PI).abs() < 1e-12, "{i:?}");
}

#[test]
fn rejects_low_order_and_wrong_chart() {
    assert!(matches!(SurfaceSpec::sphere(0.0, 1.0).with_order(4), Err(EvalnumError::Order(4))));
    let cfg = solution("cs-flat").unwrap();
    let u = HorizontalForm::zero(3, Degree::Codim2);
    assert!(matches!(surface_integral(&u, &cfg, &sphere(2.0)), Err(EvalnumError::SurfaceChart { .. })));
}

#[test]
fn singular_surface_is_reported() {
    let cfg = shell_chart();
    let u = HorizontalForm::codim2(4, |a, b| if (a, b) == (0, 1) { Expr::one().div(&Expr::sym("r").sub(&Expr::int(2))) } else { Expr::zero() });
    assert!(matches!(surface_integral(&u, &cfg, &sphere(2.0)), Err(EvalnumError::SingularSurface { .. })));
}

#[test]
fn torus_integral() {
    let cfg = solution("cs-flat").unwrap();
    let u = HorizontalForm::codim2(3, |a, b| if (a, b) == (0, 1) { Expr::sym("phi").cos().square() } else { Expr::zero() });
    let i = surface_integral(&u, &cfg, &SurfaceSpec::torus(0.0, 2.0)).unwrap();
    assert!((i.value - PI).abs() < 1e-12);
}

#[test]
fn stokes_on_random_forms() {
    let cfg = shell_chart();
    for seed in 0..3 {
        let u = random_shell_form(seed);
        let rep = stokes_check(&u, &cfg, 0.3, 1.0, 2.0, 16).unwrap();
        assert!(rep.residual < 1e-6, "seed {seed}: {rep:?}");
    }
}

#[test]
fn richardson_recovers_quadratic_in_inverse_radius() {
    let f = |r: f64| 3.0 + 2.0 / r - 5.0 / (r * r);
    let rows: Vec<(f64, f64)> = [50.0, 100.0, 200.0].iter().map(|&r| (r, f(r))).collect();
    assert!((richardson(&rows) - 3.0).abs() < 1e-12);
    assert_eq!(richardson(&[(10.0, 4.0)]), 4.0);
}

#[test]
fn library_ids() {
    let ids = solution_ids();
    for id in ["minkowski-cartesian", "minkowski-spherical", "schwarzschild", "de-sitter", "monopole", "cs-flat"] {
        assert!(ids.contains(&id));
    }
    assert_eq!(solution_library().len(), ids.len());
    assert!(matches!(solution("nope"), Err(EvalnumError::UnknownSolution(_))));
}

#[test]
fn library_solutions_are_on_shell() {
    for cfg in solution_library() {
        let th = lookup(cfg.intended_theory.as_deref().unwrap()).unwrap();
        let r = el_residual(&th, &cfg).unwrap();
        if cfg.off_shell {
            assert!(r > 1e-7, "{} flagged off-shell but solves {}", cfg.name, th.name());
        } else {
            assert!(r <= 1e-7, "{}: EL residual {r:e}", cfg.name);
        }
    }
}

#[test]
fn parameter_overrides() {
    let c = with_params(&solution("schwarzschild").unwrap(), &[("M", 2.0)]).unwrap();
    assert_eq!(c.params["M"], 2.0);
    assert!(with_params(&c, &[("Q", 1.0)]).is_err());
}

#[test]
fn minkowski_relative_to_itself() {
    let th = lookup("hilbert").unwrap();
    let m = solution("minkowski-spherical").unwrap();
    let gen = SymmetryGenerator::coordinate(4, 0);
    let rep = relative_quantity(&th, &m, &m, &gen, &sphere(10.0)).unwrap();
    assert_eq!(rep.value, 0.0);
    assert!(rep.warnings.is_empty());
}

#[test]
fn schwarzschild_energy_at_finite_radius() {
    let th = lookup("hilbert").unwrap();
    let s = solution("schwarzschild").unwrap();
    let m = solution("minkowski-spherical").unwrap();
    let gen = SymmetryGenerator::coordinate(4, 0);
    let r = 100.0;
    let rep = relative_quantity(&th, &s, &m, &gen, &sphere(r)).unwrap();
    let oracle = 16.0 * PI - 16.0 * PI / (r * (r - 2.0));
    assert!((rep.value - oracle).abs() < 1e-9 * oracle, "{} vs {oracle}", rep.value);
    let json: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    for k in ["theory", "solution", "vacuum", "generator", "surface", "value", "error", "radii"] {
        assert!(json.get(k).is_some(), "missing {k}");
    }
}

#[test]
fn off_shell_inputs_warn() {
    let th = lookup("hilbert").unwrap();
    let d = solution("de-sitter").unwrap();
    let gen = SymmetryGenerator::coordinate(4, 0);
    let rep = relative_quantity(&th, &d, &d, &gen, &sphere(2.0)).unwrap();
    assert_eq!(rep.warnings.len(), 2);
}
