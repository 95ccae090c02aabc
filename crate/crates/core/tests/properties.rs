use augvar::evalnum::{richardson, rule};
use augvar::mech::{boost_invariance_check, relative_energy, SpringSystem};
use augvar::noether::{lookup, superpotential};
use augvar::samples::{random_config, random_generator};
use augvar::symker::{parse_free, Expr};
use proptest::prelude::*;

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-5i64..6).prop_map(Expr::int),
        (1i64..5, 2i64..7).prop_map(|(n, d)| Expr::rational(n, d)),
        Just(Expr::sym("x")),
        Just(Expr::sym("y")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(&b)),
            (inner.clone(), 0i64..4).prop_map(|(a, n)| a.powi(n)),
            inner.clone().prop_map(|a| a.sin()),
            inner.prop_map(|a| a.cos().exp()),
        ]
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_expressions_parse_back(e in expr_strategy(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let back = parse_free(&e.to_string()).unwrap();
        let p = [("x", x), ("y", y)];
        prop_assert!(close(e.eval_with(&p).unwrap(), back.eval_with(&p).unwrap(), 1e-12), "{e}");
    }

    #[test]
    fn derivative_is_linear(f in expr_strategy(), g in expr_strategy(), a in -3.0f64..3.0, x in -1.0f64..1.0) {
        let h = Expr::float(a).mul(&f).add(&g);
        let lhs = h.diff("x").eval_with(&[("x", x), ("y", 0.5)]).unwrap();
        let rhs = a * f.diff("x").eval_with(&[("x", x), ("y", 0.5)]).unwrap()
            + g.diff("x").eval_with(&[("x", x), ("y", 0.5)]).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9));
    }

    #[test]
    fn gauss_rule_is_exact_to_degree(n in 2usize..20, k in 0usize..40, a in -2.0f64..0.0, b in 0.5f64..3.0) {
        prop_assume!(k < 2 * n);
        let q: f64 = rule(n, a, b).iter().map(|(x, w)| w * x.powi(k as i32)).sum();
        let exact = (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k + 1) as f64;
        prop_assert!(close(q, exact, 1e-11));
    }

    #[test]
    fn richardson_removes_quadratic_tail(c0 in -10.0f64..10.0, c1 in -10.0f64..10.0, c2 in -10.0f64..10.0, r0 in 5.0f64..50.0) {
        let f = |r: f64| c0 + c1 / r + c2 / (r * r);
        let rows: Vec<(f64, f64)> = [r0, 2.0 * r0, 4.0 * r0].iter().map(|&r| (r, f(r))).collect();
        prop_assert!((richardson(&rows) - c0).abs() < 1e-10);
    }

    #[test]
    fn relative_energy_is_boost_invariant(w in -50.0f64..50.0, a1 in 0.1f64..3.0, a2 in 0.1f64..3.0, k in 0.5f64..2.0) {
        let s1 = SpringSystem::new(1.0, k, w, a1).unwrap();
        let s2 = SpringSystem::new(1.0, k, w, a2).unwrap();
        let rep = boost_invariance_check(&s1, &s2, &[-3.0, 0.0, 0.7, 12.0]).unwrap();
        let e = relative_energy(&s1, &s2).unwrap();
        prop_assert!(rep.spread <= 1e-9 * e.abs().max(1.0));
        prop_assert!(close(e, (a2 * a2 - a1 * a1) * 2.0 * k * k, 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn superpotential_is_linear_in_xi(seed in 0u64..1000, c in -4.0f64..4.0) {
        let th = lookup("yang_mills").unwrap();
        let cfg = random_config(&th, seed);
        let gen = random_generator(&th, &cfg, seed + 1);
        let u = superpotential(&th, &cfg, &gen).unwrap();
        let uc = superpotential(&th, &cfg, &gen.scaled(&Expr::float(c))).unwrap();
        let d: Vec<Expr> = u.coeffs().iter().zip(uc.coeffs()).map(|(a, b)| a.mul(&Expr::float(c)).sub(b)).collect();
        let scale = cfg.residual(u.coeffs(), 5, seed).unwrap().max(1.0);
        prop_assert!(cfg.residual(&d, 5, seed).unwrap() <= 1e-10 * scale * c.abs().max(1.0));
    }
}
