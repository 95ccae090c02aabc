use crate::geom::{ricci, riemann, scalar_curvature, trace, u_tensor, Calculus, RoleKind, SymmetryGenerator, TensorField};
use crate::symker::Expr;

use super::{antisym, contract_density, delta_tensor, komar, Metric};
use crate::noether::theory::{FieldSet, Locality, Theory};

/// 𝓛 = √g R, second order in g.
pub struct Hilbert;

impl Theory for Hilbert {
    fn name(&self) -> &str {
        "hilbert"
    }

    fn description(&self) -> String {
        "Hilbert Lagrangian, second order in the metric".into()
    }

    fn formula(&self) -> String {
        "sqrt(g) R".into()
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Metric]
    }

    fn order(&self) -> usize {
        2
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let met = Metric::of(y);
        let gam = met.christoffel(calc);
        let ric = ricci(&riemann(&gam, calc), false);
        met.sqrt_g.mul(&scalar_curvature(&met.ginv, &ric))
    }

    /// U^{μν} = √g(∇^νξ^μ − ∇^μξ^ν)
    fn superpotential(&self, y: &FieldSet, gen: &SymmetryGenerator, calc: &mut dyn Calculus) -> Option<Vec<Vec<Expr>>> {
        let met = Metric::of(y);
        let gam = met.christoffel(calc);
        Some(komar(&met, &gam, &gen.xi, calc))
    }

    /// √g g^{αβ} δu^λ_{(αβ)}
    fn printed_pc(&self, y: &FieldSet, y_eps: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let met = Metric::of(y);
        let me = Metric::of(y_eps);
        let du = delta_tensor(&u_tensor(&me.christoffel(calc), true));
        Some(contract_density(&met.density(), &du))
    }

    /// α^λ = −√ḡ ḡ^{αβ} w^λ_{(αβ)}
    fn alpha(&self, y: &FieldSet, vac: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let (w, mv) = sym_w(y, vac, calc);
        Some(contract_density(&mv.density(), &w).iter().map(Expr::neg).collect())
    }
}

/// α̃^λ = −√g g^{αβ} w^λ_{(αβ)}, with the density of y instead of ȳ.
pub fn hilbert_alpha_tilde(y: &FieldSet, vac: &FieldSet, calc: &mut dyn Calculus) -> Vec<Expr> {
    let (w, _) = sym_w(y, vac, calc);
    contract_density(&Metric::of(y).density(), &w).iter().map(Expr::neg).collect()
}

/// w = u(g) − u(ḡ), symmetrized, and the vacuum metric data.
pub(crate) fn sym_w(y: &FieldSet, vac: &FieldSet, calc: &mut dyn Calculus) -> (TensorField, Metric) {
    let my = Metric::of(y);
    let mv = Metric::of(vac);
    let u = u_tensor(&my.christoffel(calc), true);
    let ub = u_tensor(&mv.christoffel(calc), true);
    (u.sub(&ub), mv)
}

/// 𝓛 = √g g^{αβ} R_(αβ)(Γ) with g and Γ independent.
pub struct Palatini;

impl Theory for Palatini {
    fn name(&self) -> &str {
        "palatini"
    }

    fn description(&self) -> String {
        "Palatini Lagrangian for a metric and an independent torsionless connection".into()
    }

    fn formula(&self) -> String {
        "sqrt(g) g^ab R_(ab)(Gamma)".into()
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Metric, RoleKind::Connection]
    }

    fn order(&self) -> usize {
        1
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let met = Metric::of(y);
        let ric = ricci(&riemann(y.connection(), calc), true);
        met.sqrt_g.mul(&trace(&met.ginv, &ric))
    }

    /// Komar form with the independent connection plus ½(v^μξ^ν − v^νξ^μ),
    /// v^μ = ∇_c 𝔤^{μc}, which vanishes on-shell.
    fn superpotential(&self, y: &FieldSet, gen: &SymmetryGenerator, calc: &mut dyn Calculus) -> Option<Vec<Vec<Expr>>> {
        let m = y.m;
        let met = Metric::of(y);
        let gam = y.connection();
        let gd = met.density();
        let k = komar(&met, gam, &gen.xi, calc);
        let v: Vec<Expr> = (0..m)
            .map(|mu| {
                let mut t = Vec::new();
                for c in 0..m {
                    t.push(calc.d(gd.at(&[mu, c]), c));
                    for l in 0..m {
                        t.push(gam.at(&[mu, c, l]).mul(gd.at(&[l, c])));
                    }
                }
                Expr::sum(t)
            })
            .collect();
        let half = Expr::rational(1, 2);
        let xi = &gen.xi;
        Some(antisym(m, |a, b| k[a][b].add(&half.mul(&v[a].mul(&xi[b]).sub(&v[b].mul(&xi[a]))))))
    }

    /// √g g^{αβ} δu^λ_{αβ}
    fn printed_pc(&self, y: &FieldSet, y_eps: &FieldSet, _calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let met = Metric::of(y);
        let du = delta_tensor(&u_tensor(y_eps.connection(), false));
        Some(contract_density(&met.density(), &du))
    }

    /// α^λ = −√ḡ ḡ^{αβ} w^λ_{αβ}
    fn alpha(&self, y: &FieldSet, vac: &FieldSet, _calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let mv = Metric::of(vac);
        let w = u_tensor(y.connection(), false).sub(&u_tensor(vac.connection(), false));
        Some(contract_density(&mv.density(), &w).iter().map(Expr::neg).collect())
    }
}

/// 𝓛 = √g g^{αβ}R_{αβ} − d_λ(√g g^{αβ} u^λ_{αβ}), written without second
/// derivatives of g. Depends on the chart.
pub struct EinsteinFirstOrder;

impl EinsteinFirstOrder {
    /// β^λ = √g g^{αβ} u^λ_{αβ}
    fn beta(met: &Metric, calc: &mut dyn Calculus) -> Vec<Expr> {
        contract_density(&met.density(), &u_tensor(&met.christoffel(calc), true))
    }
}

impl Theory for EinsteinFirstOrder {
    fn name(&self) -> &str {
        "einstein_first_order"
    }

    fn description(&self) -> String {
        "non-covariant first order Einstein Lagrangian".into()
    }

    fn formula(&self) -> String {
        "-d_l(G^ab) Gamma^l_ab + d_b(G^ab) Gamma^l_al + G^ab (Gamma^l_ls Gamma^s_ab - Gamma^l_bs Gamma^s_al),  G^ab = sqrt(g) g^ab".into()
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Metric]
    }

    fn order(&self) -> usize {
        1
    }

    fn locality(&self) -> Locality {
        Locality::Affine
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let m = y.m;
        let met = Metric::of(y);
        let gd = met.density();
        let gam = met.christoffel(calc);
        let mut dgd = vec![Expr::zero(); m * m * m];
        for l in 0..m {
            for a in 0..m {
                for b in a..m {
                    let v = calc.d(gd.at(&[a, b]), l);
                    dgd[(l * m + a) * m + b] = v.clone();
                    dgd[(l * m + b) * m + a] = v;
                }
            }
        }
        let d = |l: usize, a: usize, b: usize| &dgd[(l * m + a) * m + b];
        let tr: Vec<Expr> = (0..m).map(|a| Expr::sum((0..m).map(|l| gam.at(&[l, a, l]).clone()))).collect();
        let mut terms = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let gab = gd.at(&[a, b]);
                terms.push(d(b, a, b).mul(&tr[a]));
                for l in 0..m {
                    terms.push(d(l, a, b).mul(gam.at(&[l, a, b])).neg());
                }
                if gab.is_zero() {
                    continue;
                }
                let mut quad = Vec::new();
                for s in 0..m {
                    quad.push(tr[s].mul(gam.at(&[s, a, b])));
                    for l in 0..m {
                        quad.push(gam.at(&[l, b, s]).mul(gam.at(&[s, a, l])).neg());
                    }
                }
                terms.push(gab.mul(&Expr::sum(quad)));
            }
        }
        Expr::sum(terms)
    }

    /// Komar form minus i_ξ β with β^λ = √g g^{αβ} u^λ_{αβ}.
    fn superpotential(&self, y: &FieldSet, gen: &SymmetryGenerator, calc: &mut dyn Calculus) -> Option<Vec<Vec<Expr>>> {
        let m = y.m;
        let met = Metric::of(y);
        let gam = met.christoffel(calc);
        let k = komar(&met, &gam, &gen.xi, calc);
        let beta = Self::beta(&met, calc);
        let xi = &gen.xi;
        Some(antisym(m, |a, b| k[a][b].sub(&beta[a].mul(&xi[b]).sub(&beta[b].mul(&xi[a])))))
    }

    /// −δ(√g g^{αβ}) u^λ_{αβ}
    fn printed_pc(&self, y: &FieldSet, y_eps: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let met = Metric::of(y);
        let dgd = delta_tensor(&Metric::of(y_eps).density());
        let u = u_tensor(&met.christoffel(calc), true);
        Some(contract_density(&dgd, &u).iter().map(Expr::neg).collect())
    }

    /// α^λ = (√g g^{αβ} − √ḡ ḡ^{αβ}) ū^λ_{αβ}
    fn alpha(&self, y: &FieldSet, vac: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let my = Metric::of(y);
        let mv = Metric::of(vac);
        let ub = u_tensor(&mv.christoffel(calc), true);
        Some(contract_density(&my.density().sub(&mv.density()), &ub))
    }
}
