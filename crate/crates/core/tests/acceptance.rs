//! Acceptance criteria 1 to 11. One line per criterion:
//! `criterion N: PASS|FAIL  <title>  worst=<residual> tol=<tolerance>`.
//!
//! Criteria listed in KNOWN_FAILING print FAIL; the process exits nonzero
//! only when an outcome differs from that list.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use augvar::evalnum::solution;
use augvar::mech::{observer_energy, relative_energy, SpringSystem};
use augvar::suites::{run_suite, schwarzschild_energy, Check};

const KNOWN_FAILING: [usize; 2] = [7, 9];

struct Criterion {
    id: usize,
    title: &'static str,
    suite: &'static str,
    /// tolerance per check, matched by substring of the check name
    tolerances: &'static [(&'static str, f64)],
    budget: Option<Duration>,
}

const CRITERIA: [Criterion; 11] = [
    Criterion {
        id: 1,
        title: "spring pair relative energy",
        suite: "appendix-a",
        tolerances: &[("", 1e-12)],
        budget: Some(Duration::from_secs(1)),
    },
    Criterion {
        id: 2,
        title: "covariance identity off-shell",
        suite: "covariance",
        tolerances: &[("", 1e-7)],
        budget: Some(Duration::from_secs(30)),
    },
    Criterion {
        id: 3,
        title: "Noether split",
        suite: "noether",
        tolerances: &[("Div E - W", 1e-6), ("Div U", 1e-7)],
        budget: Some(Duration::from_secs(60)),
    },
    Criterion { id: 4, title: "Bianchi identities", suite: "bianchi", tolerances: &[("", 1e-6)], budget: None },
    Criterion {
        id: 5,
        title: "alpha condition",
        suite: "condition",
        tolerances: &[
            ("starts at the vacuum", 1e-6),
            ("exact derivative", 1e-7),
            ("polynomial family", 1e-12),
            ("finite difference", 1e-4),
        ],
        budget: None,
    },
    Criterion { id: 6, title: "Dirichlet vanishing", suite: "dirichlet", tolerances: &[("", 1e-10)], budget: None },
    Criterion {
        id: 7,
        title: "cohomological invariance and robustness",
        suite: "cohomology",
        tolerances: &[("corrected variation", 1e-8), ("einstein_first_order", 1e-8)],
        budget: None,
    },
    Criterion {
        id: 8,
        title: "Chern-Simons gauge covariance",
        suite: "chern-simons",
        tolerances: &[("", 1e-9)],
        budget: None,
    },
    Criterion {
        id: 9,
        title: "gravitational relative energy",
        suite: "energy",
        tolerances: &[("", 1e-6)],
        budget: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 10,
        title: "formal integration",
        suite: "formal-integration",
        tolerances: &[("", 1e-5)],
        budget: None,
    },
    Criterion { id: 11, title: "Stokes suite", suite: "stokes", tolerances: &[("", 1e-6)], budget: None },
];

fn tolerance(c: &Criterion, check: &Check) -> f64 {
    c.tolerances
        .iter()
        .filter(|(k, _)| check.name.contains(k))
        .max_by_key(|(k, _)| k.len())
        .map(|(_, t)| *t)
        .unwrap_or(0.0)
}

/// Oracles computed here, independently of the suites.
fn extra_checks(id: usize) -> Vec<Check> {
    match id {
        1 => [0.0, 1.0, 5.0, 100.0]
            .iter()
            .map(|&w| {
                let a = SpringSystem::new(1.0, 1.0, w, 1.0).unwrap();
                let b = SpringSystem::new(1.0, 1.0, w, 2.0).unwrap();
                let e = observer_energy(&b).unwrap() - observer_energy(&a).unwrap();
                let r = relative_energy(&a, &b).unwrap();
                Check::new(format!("m(A2^2 - A1^2)w^2 = 6 at w={w}"), (e - 6.0).abs().max((r - 6.0).abs()), 1e-12)
            })
            .collect(),
        9 => {
            let r = 100.0;
            let oracle = 16.0 * PI - 16.0 * PI / (r * (r - 2.0));
            let v = schwarzschild_energy(1.0, &solution("minkowski-spherical").unwrap(), r).unwrap_or(f64::NAN);
            let d = (v - oracle).abs() / oracle;
            vec![Check::new("closed-form oracle at r = 100M", if d.is_finite() { d } else { f64::INFINITY }, 1e-6)]
        }
        _ => Vec::new(),
    }
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for c in &CRITERIA {
        let t0 = Instant::now();
        let report = run_suite(c.suite).expect("registered suite");
        let mut checks = report.checks;
        checks.extend(extra_checks(c.id));
        let elapsed = t0.elapsed();
        let mut pass = !checks.is_empty();
        let mut worst = (0.0f64, 0.0f64, String::new());
        for ch in &checks {
            let tol = tolerance(c, ch);
            let ok = ch.residual <= tol;
            pass &= ok;
            let ratio = if tol > 0.0 { ch.residual / tol } else { f64::INFINITY };
            if worst.2.is_empty() || ratio > worst.0 / worst.1.max(f64::MIN_POSITIVE) {
                worst = (ch.residual, tol, ch.name.clone());
            }
            if !ok {
                println!("    {}: residual {:.3e} > {:.0e}", ch.name, ch.residual, tol);
            }
        }
        let over = c.budget.is_some_and(|b| elapsed > b);
        if over {
            println!("    runtime {:.1}s over budget {:?}", elapsed.as_secs_f64(), c.budget.unwrap());
        }
        pass &= !over;
        for s in &report.skipped {
            println!("    n/a: {s}");
        }
        println!(
            "criterion {:>2}: {}  {}  worst={:.3e} tol={:.0e} ({}) {:.1}s",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            worst.0,
            worst.1,
            worst.2,
            elapsed.as_secs_f64()
        );
        if pass == KNOWN_FAILING.contains(&c.id) {
            unexpected.push(c.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected (known failing: {KNOWN_FAILING:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
