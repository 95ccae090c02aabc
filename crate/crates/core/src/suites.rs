//! Identity suites: each runs one family of checks and reports the largest
//! residual per check next to its tolerance.

use std::f64::consts::PI;

use serde::Serialize;

use crate::augment::{
    augmented_lagrangian, chern_simons_covariant_density, dirichlet_pc_check, robustness, rotate_gauge, verify_condition,
    AlphaVariant, AugmentedTheory, SolutionFamily,
};
use crate::evalnum::{
    quantity, random_shell_form, shell_chart, solution, stokes_check, surface_integral, with_params, SurfaceSpec,
};
use crate::geom::{FieldConfig, SymmetryGenerator};
use crate::mech::{boost_invariance_check, observer_energy, relative_energy, SpringSystem};
use crate::noether::{
    catalog, corrected_variation, lookup, palatini_with_divergence, Analysis, TheoryEntry,
};
use crate::samples::{random_config, random_deformation, random_generator};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Check {
        Check { name: name.into(), residual, tolerance, pass: residual <= tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    /// checks that do not apply, with the reason
    pub skipped: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

pub const SUITES: [&str; 11] = [
    "appendix-a",
    "covariance",
    "noether",
    "bianchi",
    "condition",
    "dirichlet",
    "cohomology",
    "chern-simons",
    "energy",
    "formal-integration",
    "stokes",
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("unknown suite `{0}`; available: {}", SUITES.join(", "))]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str) -> Result<SuiteReport, UnknownSuite> {
    let mut r = SuiteReport { suite: name.to_string(), checks: Vec::new(), skipped: Vec::new() };
    match name {
        "appendix-a" => appendix_a(&mut r),
        "covariance" => covariance(&mut r),
        "noether" => noether(&mut r),
        "bianchi" => bianchi(&mut r),
        "condition" => condition(&mut r),
        "dirichlet" => dirichlet(&mut r),
        "cohomology" => cohomology(&mut r),
        "chern-simons" => chern_simons(&mut r),
        "energy" => energy(&mut r),
        "formal-integration" => formal_integration(&mut r),
        "stokes" => stokes(&mut r),
        _ => return Err(UnknownSuite(name.to_string())),
    }
    Ok(r)
}

/// Evaluation failures count as infinite residuals.
fn or_inf<E>(v: Result<f64, E>) -> f64 {
    v.unwrap_or(f64::INFINITY)
}

fn appendix_a(r: &mut SuiteReport) {
    for w in [0.0, 1.0, 5.0, 100.0] {
        let s1 = SpringSystem::new(1.0, 1.0, w, 1.0).unwrap();
        let s2 = SpringSystem::new(1.0, 1.0, w, 2.0).unwrap();
        let d = or_inf(observer_energy(&s2).and_then(|e2| Ok(e2 - observer_energy(&s1)?)));
        r.checks.push(Check::new(format!("observer E2 - E1 = 6 at w={w}"), (d - 6.0).abs(), 1e-12));
        let rel = or_inf(relative_energy(&s1, &s2));
        r.checks.push(Check::new(format!("relative energy = 6 at w={w}"), (rel - 6.0).abs(), 1e-12));
    }
    let s1 = SpringSystem::new(1.0, 1.0, 0.0, 1.0).unwrap();
    let s2 = SpringSystem::new(1.0, 1.0, 0.0, 2.0).unwrap();
    let boosts: Vec<f64> = (0..100).map(|i| -50.0 + 1.01 * i as f64).collect();
    let spread = boost_invariance_check(&s1, &s2, &boosts).map(|b| b.spread);
    r.checks.push(Check::new("boost spread over 100 boosts", or_inf(spread), 1e-12));
}

fn sample_pair(e: &TheoryEntry, seed: u64) -> (FieldConfig, SymmetryGenerator) {
    let cfg = random_config(e, seed);
    let gen = random_generator(e, &cfg, seed + 1000);
    (cfg, gen)
}

fn covariance(r: &mut SuiteReport) {
    for e in catalog() {
        let mut worst: f64 = 0.0;
        for seed in 1..=3 {
            let (cfg, gen) = sample_pair(&e, seed);
            let v = Analysis::new(&e, &cfg).map(|mut a| a.covariance_residual(&gen));
            worst = worst.max(or_inf(v.map_err(|_| ()).and_then(|c| cfg.residual(&[c], 5, seed).map_err(|_| ()))));
        }
        r.checks.push(Check::new(format!("{} covariance", e.name()), worst, 1e-7));
    }
}

fn noether(r: &mut SuiteReport) {
    for e in catalog() {
        let (cfg, gen) = sample_pair(&e, 11);
        let Ok(mut a) = Analysis::new(&e, &cfg) else {
            r.checks.push(Check::new(format!("{} analysis", e.name()), f64::INFINITY, 0.0));
            continue;
        };
        let ec = a.noether_current(&gen);
        let w = a.work(&gen);
        let dn = a.formal_divergence(&ec).sub(&w);
        r.checks.push(Check::new(format!("{} Div E - W", e.name()), or_inf(cfg.residual(dn.coeffs(), 5, 1)), 1e-6));
        if cfg.dim() < 2 {
            r.skipped.push(format!("{} split: one-dimensional chart has no superpotential", e.name()));
            continue;
        }
        let split = a.reduced_current(&gen).and_then(|red| {
            let u = a.superpotential(&gen)?;
            Ok(ec.sub(&red).sub(&a.formal_divergence(&u)))
        });
        let v = split.map_err(|_| ()).and_then(|s| cfg.residual(s.coeffs(), 5, 2).map_err(|_| ()));
        r.checks.push(Check::new(format!("{} E - reduced - Div U", e.name()), or_inf(v), 1e-7));
    }
}

fn bianchi(r: &mut SuiteReport) {
    for name in ["hilbert", "yang_mills"] {
        let e = lookup(name).unwrap();
        let (cfg, gen) = sample_pair(&e, 21);
        let v = Analysis::new(&e, &cfg)
            .and_then(|mut a| a.bianchi(&gen))
            .map_err(|_| ())
            .and_then(|b| cfg.residual(&[b], 5, 3).map_err(|_| ()));
        r.checks.push(Check::new(format!("{name} Bianchi"), or_inf(v), 1e-6));
    }
    r.skipped.push("Bianchi checks for the other theories are not part of this suite".into());
}

/// The test families: (label, theory, family, vacuum, polynomial in s).
pub fn families() -> Vec<(&'static str, TheoryEntry, SolutionFamily, FieldConfig, bool)> {
    let h = lookup("hilbert").unwrap();
    let ym = lookup("yang_mills").unwrap();
    let ymv = random_config(&ym, 51);
    let b = random_deformation(&ymv, 52);
    vec![
        (
            "schwarzschild M -> sM",
            h,
            SolutionFamily::scale_parameter(&solution("schwarzschild").unwrap(), "M", "s"),
            solution("minkowski-spherical").unwrap(),
            false,
        ),
        (
            "coulomb q -> sq",
            ym.clone(),
            SolutionFamily::scale_parameter(&solution("coulomb").unwrap(), "q", "s"),
            solution("abelian-vacuum").unwrap(),
            true,
        ),
        ("yang-mills A + sB", ym, SolutionFamily::linear(&ymv, &b.tensors, "s"), ymv, true),
    ]
}

fn condition(r: &mut SuiteReport) {
    for (label, th, fam, vac, poly) in families() {
        let start = fam.check(&vac).map(|c| c.vacuum_deviation.max(c.generator_defect));
        r.checks.push(Check::new(format!("{label}: family starts at the vacuum"), or_inf(start), 1e-6));
        match verify_condition(&th, &fam) {
            Ok(c) => {
                let (what, tol) = if poly { ("exact derivative, polynomial family", 1e-12) } else { ("exact derivative", 1e-7) };
                r.checks.push(Check::new(format!("{label}: {what}"), c.symbolic.value, tol));
                r.checks.push(Check::new(format!("{label}: finite difference"), c.finite_difference.value, 1e-4));
            }
            Err(_) => r.checks.push(Check::new(format!("{label}: condition"), f64::INFINITY, 0.0)),
        }
    }
}

fn dirichlet(r: &mut SuiteReport) {
    for name in ["hilbert", "yang_mills"] {
        let e = lookup(name).unwrap();
        let vac = random_config(&e, 61);
        let mut xb = random_deformation(&vac, 62);
        xb.boundary_vanishing = true;
        let v = dirichlet_pc_check(&e, &vac, &xb).map(|c| c.value);
        r.checks.push(Check::new(format!("{name} Dirichlet pc(l)"), or_inf(v), 1e-10));
    }
}

/// Relative size of a − b at sample points.
fn rel_residual(cfg: &FieldConfig, a: &[crate::symker::Expr], b: &[crate::symker::Expr], seed: u64) -> f64 {
    let d: Vec<_> = a.iter().zip(b).map(|(x, y)| x.sub(y)).collect();
    let scale = or_inf(cfg.residual(a, 5, seed)).max(1e-300);
    or_inf(cfg.residual(&d, 5, seed)) / scale
}

fn cohomology(r: &mut SuiteReport) {
    let p = lookup("palatini").unwrap();
    let q = palatini_with_divergence();
    let cfg = random_config(&p, 71);
    let x = random_deformation(&cfg, 72);
    let gen = random_generator(&p, &cfg, 73);
    let cv = corrected_variation(&p, &cfg, &x, &gen).and_then(|a| Ok((a, corrected_variation(&q, &cfg, &x, &gen)?)));
    let v = match cv {
        Ok((a, b)) => rel_residual(&cfg, a.coeffs(), b.coeffs(), 1),
        Err(_) => f64::INFINITY,
    };
    r.checks.push(Check::new("palatini vs palatini + divergence: corrected variation", v, 1e-8));
    let h = lookup("hilbert").unwrap();
    let efo = lookup("einstein_first_order").unwrap();
    let y = random_config(&h, 74);
    let vac = random_config(&h, 75);
    let scale = augmented_lagrangian(&h, &y, &vac).map_err(|_| ()).and_then(|l| y.residual(&[l], 5, 17).map_err(|_| ()));
    let d = or_inf(robustness(&h, &efo, &y, &vac)) / or_inf(scale).max(1e-300);
    r.checks.push(Check::new("augmented hilbert vs einstein_first_order", d, 1e-8));
    let tilde = AugmentedTheory::with_variant(&h, AlphaVariant::Tilde).augmented_density(&y, &vac);
    let e = augmented_lagrangian(&efo, &y, &vac);
    let t = match (tilde, e) {
        (Ok(a), Ok(b)) => rel_residual(&y, &[b], &[a], 17),
        _ => f64::INFINITY,
    };
    r.checks.push(Check::new("tilde alpha variant of hilbert vs einstein_first_order", t, 1e-8));
}

fn chern_simons(r: &mut SuiteReport) {
    let th = lookup("chern_simons_so3_3d").unwrap();
    let y = random_config(&th, 81);
    let vac = random_config(&th, 82);
    let res = (|| {
        let l = augmented_lagrangian(&th, &y, &vac).ok()?;
        let yr = rotate_gauge(&y, 1, 0.9).ok()?;
        let vr = rotate_gauge(&vac, 1, 0.9).ok()?;
        let lr = augmented_lagrangian(&th, &yr, &vr).ok()?;
        let b = chern_simons_covariant_density(&y, &vac).ok()?;
        Some((y.residual(&[l.sub(&lr)], 5, 4).ok()?, y.residual(&[l.sub(&b)], 5, 5).ok()?))
    })();
    let (cov, bform) = res.unwrap_or((f64::INFINITY, f64::INFINITY));
    r.checks.push(Check::new("l under a constant gauge rotation of (A, Abar)", cov, 1e-9));
    r.checks.push(Check::new("l against the covariant B-form", bform, 1e-9));
}

/// ∮U(l) for hilbert, Schwarzschild of mass m against `vacuum`, ∂_t, at r.
pub fn schwarzschild_energy(m: f64, vacuum: &FieldConfig, r: f64) -> Option<f64> {
    let h = lookup("hilbert").ok()?;
    let s = with_params(&solution("schwarzschild").ok()?, &[("M", m)]).ok()?;
    let gen = SymmetryGenerator::coordinate(4, 0);
    quantity(&AugmentedTheory::new(&h), &s, vacuum, &gen, &SurfaceSpec::sphere(0.0, r), &[]).ok().map(|q| q.value)
}

fn energy(r: &mut SuiteReport) {
    let mink = solution("minkowski-spherical").unwrap();
    let vals: Vec<f64> = [50.0, 100.0, 200.0].iter().map(|&x| schwarzschild_energy(1.0, &mink, x).unwrap_or(f64::NAN)).collect();
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = if vals.iter().all(|v| v.is_finite()) { (hi - lo) / vals[1].abs() } else { f64::INFINITY };
    r.checks.push(Check::new("r-independence over r = 50M, 100M, 200M", spread, 1e-6));
    let e1 = vals[1];
    let e2m = schwarzschild_energy(2.0, &mink, 100.0).unwrap_or(f64::NAN);
    let ratio = e2m / e1;
    r.checks.push(Check::new("value(2M)/value(M) = 2 at r = 100M", if ratio.is_finite() { (ratio - 2.0).abs() / 2.0 } else { f64::INFINITY }, 1e-6));
    let s1 = solution("schwarzschild").unwrap();
    let e21 = schwarzschild_energy(2.0, &s1, 100.0).unwrap_or(f64::NAN);
    let add = (e2m - e1 - e21).abs() / e21.abs();
    r.checks.push(Check::new("additivity Q(2M|0) - Q(M|0) = Q(2M|M)", if add.is_finite() { add } else { f64::INFINITY }, 1e-6));
    let oracle = 16.0 * PI - 16.0 * PI / (100.0 * 98.0);
    r.checks.push(Check::new("absolute value at r = 100M", (e1 - oracle).abs() / oracle, 1e-6));
}

/// d/ds ∮U(l)(y_s) at 0 by central difference, and ∮ of the corrected
/// variation at the vacuum.
pub fn formal_integration_pair(th: &TheoryEntry, fam: &SolutionFamily, radius: f64) -> Option<(f64, f64)> {
    let vac = fam.initial();
    let gen = SymmetryGenerator::coordinate(vac.dim(), 0);
    let surf = SurfaceSpec::sphere(0.0, radius);
    let aug = AugmentedTheory::new(th);
    let h = 1e-3;
    let q = |s: f64| -> Option<f64> {
        let y = fam.at(s);
        let mut at = y.clone();
        at.params.extend(fam.curve.params.clone());
        let u = aug.augmented_superpotential(&y, &vac, &gen).ok()?;
        surface_integral(&u, &at, &surf).ok().map(|i| i.value)
    };
    let d = (q(h)? - q(-h)?) / (2.0 * h);
    let cv = corrected_variation(th, &vac, &fam.generator(), &gen).ok()?;
    let mut at = vac.clone();
    at.params.extend(fam.curve.params.clone());
    Some((d, surface_integral(&cv, &at, &surf).ok()?.value))
}

fn formal_integration(r: &mut SuiteReport) {
    for (label, th, fam, _, _) in families().into_iter().take(2) {
        let v = match formal_integration_pair(&th, &fam, 10.0) {
            Some((d, c)) => (d - c).abs() / c.abs().max(1e-300),
            None => f64::INFINITY,
        };
        r.checks.push(Check::new(format!("{label}: d/ds of the charge vs integrated corrected variation"), v, 1e-5));
    }
}

fn stokes(r: &mut SuiteReport) {
    let cfg = shell_chart();
    let mut worst: f64 = 0.0;
    for seed in 0..10 {
        let u = random_shell_form(seed);
        worst = worst.max(or_inf(stokes_check(&u, &cfg, 0.2, 1.0, 2.0, 20).map(|s| s.residual)));
    }
    r.checks.push(Check::new("Stokes on 10 random forms", worst, 1e-6));
}
