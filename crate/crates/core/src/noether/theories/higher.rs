use crate::geom::{lower, raise, ricci, riemann, scalar_curvature, u_tensor, Calculus, RoleKind, SymmetryGenerator, TensorField};
use crate::symker::Expr;

use super::{antisym, contract_density, delta_tensor, nabla_vector, upper4, Metric};
use crate::noether::theory::{FieldSet, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureInvariant {
    /// R
    Scalar,
    /// R_{μν}R^{μν}
    RicciSquared,
    /// R_{αβμν}R^{αβμν}
    RiemannSquared,
}

/// 𝓛 = √g f(S) with S a curvature invariant and f an expression in `x`.
pub struct FTheory {
    invariant: CurvatureInvariant,
    f: Expr,
    name: String,
}

struct Curvature {
    met: Metric,
    gam: TensorField,
    riem: TensorField,
    ric_up: TensorField,
    scalar: Expr,
}

impl FTheory {
    pub fn new(invariant: CurvatureInvariant, f: Expr) -> FTheory {
        let name = match invariant {
            CurvatureInvariant::Scalar => "f_of_R",
            CurvatureInvariant::RicciSquared => "f_of_ricci2",
            CurvatureInvariant::RiemannSquared => "f_of_riemann2",
        };
        FTheory { invariant, f, name: name.into() }
    }

    /// f(x) = x + x²/10
    pub fn default_f() -> Expr {
        let x = Expr::sym("x");
        x.add(&Expr::rational(1, 10).mul(&x.square()))
    }

    pub fn invariant(&self) -> CurvatureInvariant {
        self.invariant
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    fn fprime_at(&self, s: &Expr) -> Expr {
        self.f.diff("x").subs("x", s)
    }

    fn curvature(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Curvature {
        let met = Metric::of(y);
        let gam = met.christoffel(calc);
        let riem = riemann(&gam, calc);
        let ric = ricci(&riem, false);
        let ric_up = raise(&raise(&ric, 0, &met.ginv), 1, &met.ginv);
        let scalar = match self.invariant {
            CurvatureInvariant::Scalar => scalar_curvature(&met.ginv, &ric),
            CurvatureInvariant::RicciSquared => {
                Expr::sum(ric.indices().iter().map(|i| ric.at(i).mul(ric_up.at(i))))
            }
            CurvatureInvariant::RiemannSquared => {
                let low = riemann_mixed(&riem, &met);
                Expr::sum(riem.indices().iter().map(|i| riem.at(i).mul(low.at(i))))
            }
        };
        Curvature { met, gam, riem, ric_up, scalar }
    }

    /// P^{abcd} = ∂(f(S))/∂R_{abcd} with the algebraic symmetries of Riemann.
    fn p_tensor(&self, c: &Curvature) -> TensorField {
        let m = c.met.g.dim();
        let fp = self.fprime_at(&c.scalar);
        let gi = &c.met.ginv;
        let half = Expr::rational(1, 2);
        match self.invariant {
            CurvatureInvariant::Scalar => TensorField::from_fn(m, upper4(), |i| {
                let (a, b, cc, d) = (i[0], i[1], i[2], i[3]);
                let v = gi.at(&[a, cc]).mul(gi.at(&[b, d])).sub(&gi.at(&[a, d]).mul(gi.at(&[b, cc])));
                half.mul(&fp).mul(&v)
            }),
            CurvatureInvariant::RicciSquared => {
                let r = &c.ric_up;
                TensorField::from_fn(m, upper4(), |i| {
                    let (a, b, cc, d) = (i[0], i[1], i[2], i[3]);
                    let v = Expr::sum([
                        gi.at(&[a, cc]).mul(r.at(&[b, d])),
                        gi.at(&[b, cc]).mul(r.at(&[a, d])).neg(),
                        gi.at(&[a, d]).mul(r.at(&[b, cc])).neg(),
                        gi.at(&[b, d]).mul(r.at(&[a, cc])),
                    ]);
                    half.mul(&fp).mul(&v)
                })
            }
            CurvatureInvariant::RiemannSquared => {
                let up = raise(&raise(&raise(&c.riem, 1, gi), 2, gi), 3, gi);
                up.scale(&Expr::int(2).mul(&fp))
            }
        }
    }
}

/// R_a^{bcd}, matching index-for-index with R^a_{bcd}.
fn riemann_mixed(riem: &TensorField, met: &Metric) -> TensorField {
    let gi = &met.ginv;
    let up = raise(&raise(&raise(riem, 1, gi), 2, gi), 3, gi);
    lower(&up, 0, &met.g)
}

impl Theory for FTheory {
    fn name(&self) -> &str {
        &self.name
    }

    fn description(&self) -> String {
        let s = match self.invariant {
            CurvatureInvariant::Scalar => "R",
            CurvatureInvariant::RicciSquared => "Ric^2",
            CurvatureInvariant::RiemannSquared => "Riem^2",
        };
        format!("higher order gravity sqrt(g) f({s}) with f(x) = {}", self.f)
    }

    fn formula(&self) -> String {
        let s = match self.invariant {
            CurvatureInvariant::Scalar => "R",
            CurvatureInvariant::RicciSquared => "R_ab R^ab",
            CurvatureInvariant::RiemannSquared => "R_abcd R^abcd",
        };
        format!("sqrt(g) f({s}),  f(x) = {}", self.f)
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Metric]
    }

    fn order(&self) -> usize {
        2
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let c = self.curvature(y, calc);
        c.met.sqrt_g.mul(&self.f.subs("x", &c.scalar))
    }

    /// U^{μν} = −√g(2P^{μνcd}∇_cξ_d + 4∇_dP^{μνcd} ξ_c)
    fn superpotential(&self, y: &FieldSet, gen: &SymmetryGenerator, calc: &mut dyn Calculus) -> Option<Vec<Vec<Expr>>> {
        let m = y.m;
        let c = self.curvature(y, calc);
        let p = self.p_tensor(&c);
        let g = &c.met.g;
        let gam = &c.gam;
        let nx = nabla_vector(&gen.xi, gam, calc);
        // ∇_c ξ_d = g_{de} ∇_c ξ^e
        let nlow: Vec<Vec<Expr>> =
            (0..m).map(|cc| (0..m).map(|d| Expr::sum((0..m).map(|e| g.at(&[d, e]).mul(&nx[e][cc])))).collect()).collect();
        let xlow: Vec<Expr> = (0..m).map(|d| Expr::sum((0..m).map(|e| g.at(&[d, e]).mul(&gen.xi[e])))).collect();
        Some(antisym(m, |mu, nu| {
            let mut t = Vec::new();
            for cc in 0..m {
                for d in 0..m {
                    let pv = p.at(&[mu, nu, cc, d]);
                    if !pv.is_zero() {
                        t.push(Expr::int(-2).mul(pv).mul(&nlow[cc][d]));
                    }
                }
                // ∇_d P^{μν c d}
                let mut v = Vec::new();
                for d in 0..m {
                    v.push(calc.d(p.at(&[mu, nu, cc, d]), d));
                    for e in 0..m {
                        v.push(gam.at(&[mu, d, e]).mul(p.at(&[e, nu, cc, d])));
                        v.push(gam.at(&[nu, d, e]).mul(p.at(&[mu, e, cc, d])));
                        v.push(gam.at(&[cc, d, e]).mul(p.at(&[mu, nu, e, d])));
                        v.push(gam.at(&[d, d, e]).mul(p.at(&[mu, nu, cc, e])));
                    }
                }
                t.push(Expr::int(-4).mul(&Expr::sum(v)).mul(&xlow[cc]));
            }
            c.met.sqrt_g.mul(&Expr::sum(t))
        }))
    }

    fn printed_pc(&self, y: &FieldSet, y_eps: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let m = y.m;
        let c = self.curvature(y, calc);
        let fp = self.fprime_at(&c.scalar);
        let ge = Metric::of(y_eps).christoffel(calc);
        let coef = c.met.sqrt_g.mul(&fp);
        match self.invariant {
            CurvatureInvariant::Scalar => {
                let du = delta_tensor(&u_tensor(&ge, true));
                Some(contract_density(&c.met.ginv, &du).iter().map(|e| coef.mul(e)).collect())
            }
            CurvatureInvariant::RicciSquared => {
                let du = delta_tensor(&u_tensor(&ge, false));
                let k = coef.mul(&Expr::int(2));
                Some(contract_density(&c.ric_up, &du).iter().map(|e| k.mul(e)).collect())
            }
            CurvatureInvariant::RiemannSquared => {
                let dg = delta_tensor(&ge);
                let mixed = riemann_mixed(&c.riem, &c.met);
                let k = coef.mul(&Expr::int(4));
                Some(
                    (0..m)
                        .map(|mu| {
                            let mut t = Vec::new();
                            for a in 0..m {
                                for b in 0..m {
                                    for nu in 0..m {
                                        t.push(mixed.at(&[a, b, mu, nu]).mul(dg.at(&[a, b, nu])));
                                    }
                                }
                            }
                            k.mul(&Expr::sum(t))
                        })
                        .collect(),
                )
            }
        }
    }

    fn alpha(&self, y: &FieldSet, vac: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let m = y.m;
        let cv = self.curvature(vac, calc);
        let fp = self.fprime_at(&cv.scalar);
        let gy = Metric::of(y).christoffel(calc);
        let coef = cv.met.sqrt_g.mul(&fp).neg();
        match self.invariant {
            CurvatureInvariant::Scalar => {
                let w = u_tensor(&gy, true).sub(&u_tensor(&cv.gam, true));
                Some(contract_density(&cv.met.ginv, &w).iter().map(|e| coef.mul(e)).collect())
            }
            CurvatureInvariant::RicciSquared => {
                let w = u_tensor(&gy, false).sub(&u_tensor(&cv.gam, false));
                let k = coef.mul(&Expr::int(2));
                Some(contract_density(&cv.ric_up, &w).iter().map(|e| k.mul(e)).collect())
            }
            CurvatureInvariant::RiemannSquared => {
                let q = gy.sub(&cv.gam);
                let mixed = riemann_mixed(&cv.riem, &cv.met);
                let k = coef.mul(&Expr::int(4));
                Some(
                    (0..m)
                        .map(|mu| {
                            let mut t = Vec::new();
                            for a in 0..m {
                                for b in 0..m {
                                    for nu in 0..m {
                                        t.push(mixed.at(&[a, b, mu, nu]).mul(q.at(&[a, b, nu])));
                                    }
                                }
                            }
                            k.mul(&Expr::sum(t))
                        })
                        .collect(),
                )
            }
        }
    }
}
