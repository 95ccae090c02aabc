//! Tensor calculus on a single chart: metrics, connections, curvature,
//! gauge fields, and Lie derivatives along symmetry generators.

mod algebra;
mod calculus;
mod config;
mod fieldfile;
mod ops;
mod tensor;

pub use algebra::{levi_civita, AlgebraError, GaugeAlgebra};
pub use calculus::{Calculus, CoordCalculus};
pub use config::{
    lie_derivative, lie_derivative_with, max_abs, Field, FieldConfig, GeomError, Role, RoleKind, SymmetryGenerator,
};
pub use fieldfile::{load_field_file, parse_field_file, FieldFileError};
pub use ops::{
    christoffel, connection_slots, covariant_derivative, determinant, diagonal_metric, field_strength,
    gauge_covariant_derivative, inverse_metric, lie_connection, lie_gauge, lie_metric, lie_tensor, lower,
    metric_from_rows, raise, ricci, riemann, scalar_curvature, sqrt_det, trace, u_tensor,
};
pub use tensor::{multi_indices, Slot, Symmetry, TensorField};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symker::{parse, Chart, Env, Expr};
    use std::collections::BTreeMap;

    fn p(s: &str, c: &Chart) -> Expr {
        parse(s, c, &["M"]).unwrap()
    }

    fn schwarzschild() -> (Chart, TensorField) {
        let c = Chart::new(&["t", "r", "theta", "phi"]).unwrap();
        let g = diagonal_metric(&[
            p("-(1 - 2*M/r)", &c),
            p("1/(1 - 2*M/r)", &c),
            p("r^2", &c),
            p("r^2*sin(theta)^2", &c),
        ]);
        (c, g)
    }

    fn env(pairs: &[(&str, f64)]) -> Env {
        pairs.iter().copied().collect()
    }

    #[test]
    fn inverse_of_diagonal_and_full_metrics() {
        let (c, g) = schwarzschild();
        let gi = inverse_metric(&g);
        let e = env(&[("t", 0.0), ("r", 5.0), ("theta", 1.0), ("phi", 0.3), ("M", 1.0)]);
        assert!((gi.at(&[0, 0]).eval(&e).unwrap() + 1.0 / 0.6).abs() < 1e-12);
        let x = Chart::new(&["x", "y", "z"]).unwrap();
        let rows: Vec<Expr> = ["2 + x^2", "x*y", "0.3", "x*y", "3 + y", "z", "0.3", "z", "4"]
            .iter()
            .map(|s| parse(s, &x, &[]).unwrap())
            .collect();
        let g = metric_from_rows(3, rows);
        let gi = inverse_metric(&g);
        let e = env(&[("x", 0.4), ("y", -0.2), ("z", 0.7)]);
        for i in 0..3 {
            for j in 0..3 {
                let s = Expr::sum((0..3).map(|a| gi.at(&[i, a]).mul(g.at(&[a, j]))));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s.eval(&e).unwrap() - want).abs() < 1e-12);
            }
        }
        let _ = c;
    }

    #[test]
    fn christoffel_values() {
        let s2 = Chart::new(&["theta", "phi"]).unwrap();
        let g = diagonal_metric(&[Expr::one(), p("sin(theta)^2", &s2)]);
        let gi = inverse_metric(&g);
        let gam = christoffel(&g, &gi, &mut CoordCalculus::new(s2.coords()));
        let e = env(&[("theta", 0.7), ("phi", 0.1)]);
        let want = -(0.7f64).sin() * (0.7f64).cos();
        assert!((gam.at(&[0, 1, 1]).eval(&e).unwrap() - want).abs() < 1e-14);

        let (c, g) = schwarzschild();
        let gi = inverse_metric(&g);
        let gam = christoffel(&g, &gi, &mut CoordCalculus::new(c.coords()));
        let e = env(&[("t", 0.0), ("r", 7.0), ("theta", 1.0), ("phi", 0.3), ("M", 1.3)]);
        let want = 1.3 * (7.0 - 2.6) / 343.0;
        assert!((gam.at(&[1, 0, 0]).eval(&e).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn curvature_of_sphere_and_schwarzschild() {
        let s2 = Chart::new(&["theta", "phi"]).unwrap();
        let g = diagonal_metric(&[Expr::one(), p("sin(theta)^2", &s2)]);
        let gi = inverse_metric(&g);
        let mut calc = CoordCalculus::new(s2.coords());
        let gam = christoffel(&g, &gi, &mut calc);
        let ric = ricci(&riemann(&gam, &mut calc), false);
        let r = scalar_curvature(&gi, &ric);
        assert!((r.eval(&env(&[("theta", 1.1), ("phi", 0.0)])).unwrap() - 2.0).abs() < 1e-12);

        let (c, g) = schwarzschild();
        let gi = inverse_metric(&g);
        let mut calc = CoordCalculus::new(c.coords());
        let gam = christoffel(&g, &gi, &mut calc);
        let ric = ricci(&riemann(&gam, &mut calc), false);
        let e = env(&[("t", 0.0), ("r", 4.5), ("theta", 0.9), ("phi", 0.3), ("M", 1.0)]);
        for v in ric.comps() {
            assert!(v.eval(&e).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn monopole_field_strength() {
        let c = Chart::new(&["t", "r", "theta", "phi"]).unwrap();
        let alg = GaugeAlgebra::abelian(1);
        let mut a = TensorField::zeros(4, vec![Slot::Alg(1), Slot::Down]);
        a.set(&[0, 3], p("1 - cos(theta)", &c));
        let f = field_strength(&a, &alg, &mut CoordCalculus::new(c.coords()));
        let e = env(&[("t", 0.0), ("r", 2.0), ("theta", 0.4), ("phi", 1.0)]);
        assert!((f.at(&[0, 2, 3]).eval(&e).unwrap() - 0.4f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn radial_dilation_of_flat_metric() {
        let c = Chart::new(&["t", "r", "theta", "phi"]).unwrap();
        let g = diagonal_metric(&[Expr::int(-1), Expr::one(), p("r^2", &c), p("r^2*sin(theta)^2", &c)]);
        let field = Field { name: "g".into(), role: Role::Metric, tensor: g };
        let cfg = FieldConfig::new("flat", c.clone().with_ranges(&[(0.0, 1.0), (1.0, 3.0), (0.3, 2.8), (0.0, 6.0)]), BTreeMap::new(), vec![field.clone()]).unwrap();
        let xi = SymmetryGenerator::natural(vec![Expr::zero(), Expr::sym("r"), Expr::zero(), Expr::zero()]);
        let lg = lie_derivative(&field, &xi, &cfg);
        assert_eq!(lg.at(&[1, 1]).simplify(), Expr::int(2));
        let dphi = SymmetryGenerator::coordinate(4, 3);
        assert!(lie_derivative(&field, &dphi, &cfg).comps().iter().all(|e| e.simplify().is_zero()));
    }
}
