use std::f64::consts::PI;

use augvar::augment::{AlphaVariant, AugmentedTheory};
use augvar::evalnum::{quantity, solution, solution_ids, with_params, SurfaceSpec};
use augvar::geom::SymmetryGenerator;
use augvar::noether::lookup;
use augvar::symker::Expr;

fn time_translation() -> SymmetryGenerator {
    SymmetryGenerator::coordinate(4, 0)
}

fn schwarzschild(m: f64) -> augvar::geom::FieldConfig {
    with_params(&solution("schwarzschild").unwrap(), &[("M", m)]).unwrap()
}

/// 16πM − 16πM³/(r(r − 2M)), from an independent symbolic computation.
fn oracle(m: f64, r: f64) -> f64 {
    16.0 * PI * m - 16.0 * PI * m.powi(3) / (r * (r - 2.0 * m))
}

#[test]
fn schwarzschild_against_closed_form() {
    let h = AugmentedTheory::new(&lookup("hilbert").unwrap());
    let mink = solution("minkowski-spherical").unwrap();
    for m in [0.5, 1.0, 2.0] {
        for r in [10.0, 37.5, 100.0] {
            let q = quantity(&h, &schwarzschild(m), &mink, &time_translation(), &SurfaceSpec::sphere(0.0, r), &[]).unwrap();
            assert!((q.value - oracle(m, r)).abs() <= 1e-9 * oracle(m, r), "M={m} r={r}: {}", q.value);
            assert!(q.warnings.is_empty());
        }
    }
}

#[test]
fn tilde_variant_is_radius_independent() {
    let h = AugmentedTheory::with_variant(&lookup("hilbert").unwrap(), AlphaVariant::Tilde);
    let mink = solution("minkowski-spherical").unwrap();
    for r in [10.0, 100.0] {
        let q = quantity(&h, &schwarzschild(1.0), &mink, &time_translation(), &SurfaceSpec::sphere(0.0, r), &[]).unwrap();
        assert!((q.value - 16.0 * PI).abs() < 1e-9, "r={r}: {}", q.value);
    }
}

#[test]
fn richardson_limit_approaches_mass_term() {
    let h = AugmentedTheory::new(&lookup("hilbert").unwrap());
    let mink = solution("minkowski-spherical").unwrap();
    let surf = SurfaceSpec::sphere(0.0, 50.0);
    let q = quantity(&h, &schwarzschild(1.0), &mink, &time_translation(), &surf, &[50.0, 100.0, 200.0]).unwrap();
    assert_eq!(q.radii.len(), 3);
    assert!((q.value - 16.0 * PI).abs() < 1e-4 * 16.0 * PI, "{}", q.value);
}

#[test]
fn coulomb_charge_is_gauss_flux() {
    let ym = AugmentedTheory::new(&lookup("yang_mills").unwrap());
    let vac = solution("abelian-vacuum").unwrap();
    let gen = SymmetryGenerator { xi: vec![Expr::zero(); 4], xi_gauge: vec![Expr::one()] };
    let mut prev: Option<f64> = None;
    for q in [1.0, 2.5] {
        let sol = with_params(&solution("coulomb").unwrap(), &[("q", q)]).unwrap();
        let v = quantity(&ym, &sol, &vac, &gen, &SurfaceSpec::sphere(0.0, 7.0), &[]).unwrap().value;
        assert!((v.abs() - 4.0 * PI * q).abs() < 1e-10, "q={q}: {v}");
        if let Some(p) = prev {
            assert!((v / p - 2.5f64).abs() < 1e-12);
        }
        prev = Some(v);
    }
}

#[test]
fn reports_are_deterministic() {
    let h = AugmentedTheory::new(&lookup("hilbert").unwrap());
    let mink = solution("minkowski-spherical").unwrap();
    let run = || {
        quantity(&h, &schwarzschild(1.0), &mink, &time_translation(), &SurfaceSpec::sphere(0.0, 20.0), &[10.0, 20.0])
            .unwrap()
            .to_json()
    };
    assert_eq!(run(), run());
}

#[test]
fn off_shell_solution_warns() {
    let h = AugmentedTheory::new(&lookup("hilbert").unwrap());
    let mink = solution("minkowski-spherical").unwrap();
    let ds = solution("de-sitter").unwrap();
    let q = quantity(&h, &ds, &mink, &time_translation(), &SurfaceSpec::sphere(0.0, 2.0), &[]).unwrap();
    assert_eq!(q.warnings.len(), 1, "{:?}", q.warnings);
}

#[test]
fn library_loads() {
    let ids = solution_ids();
    assert!(ids.len() >= 11);
    for id in ids {
        assert_eq!(solution(id).unwrap().name, id);
    }
}
