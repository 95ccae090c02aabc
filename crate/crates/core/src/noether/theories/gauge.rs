use crate::geom::{field_strength, levi_civita, Calculus, GaugeAlgebra, RoleKind, SymmetryGenerator, TensorField};
use crate::symker::Expr;

use super::{antisym, delta_tensor, Metric};
use crate::noether::theory::{FieldSet, Locality, Theory};

fn num(x: f64) -> Expr {
    if x.fract() == 0.0 && x.abs() < 1e9 {
        Expr::int(x as i64)
    } else {
        Expr::float(x)
    }
}

/// η_{AB} a^A b^B
fn pair(alg: &GaugeAlgebra, a: &[Expr], b: &[Expr]) -> Expr {
    let n = alg.dim();
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = alg.eta(i, j);
            if e != 0.0 {
                t.push(num(e).mul(&a[i].mul(&b[j])));
            }
        }
    }
    Expr::sum(t)
}

/// ξ_V^A = ξ^A + A^A_ν ξ^ν
fn vertical(a: &TensorField, gen: &SymmetryGenerator, n: usize) -> Vec<Expr> {
    let m = a.dim();
    (0..n)
        .map(|k| {
            let mut t: Vec<Expr> = (0..m).map(|nu| a.at(&[k, nu]).mul(&gen.xi[nu])).collect();
            t.push(gen.gauge_component(k));
            Expr::sum(t)
        })
        .collect()
}

fn column(t: &TensorField, n: usize, idx: &[usize]) -> Vec<Expr> {
    (0..n)
        .map(|k| {
            let mut i = vec![k];
            i.extend_from_slice(idx);
            t.at(&i).clone()
        })
        .collect()
}

/// 3D Chern–Simons theory, 𝓛 = ε^{αβλ}(η_{ij} F^i_{αβ} A^j_λ − ⅓ c_{ijk} A^i_α A^j_β A^k_λ).
pub struct ChernSimons;

impl Theory for ChernSimons {
    fn name(&self) -> &str {
        "chern_simons_so3_3d"
    }

    fn description(&self) -> String {
        "Chern-Simons theory in three dimensions, gauge covariant for constant gauge generators".into()
    }

    fn formula(&self) -> String {
        "eps^abl (eta_ij F^i_ab A^j_l - 1/3 c_ijk A^i_a A^j_b A^k_l)".into()
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Gauge]
    }

    fn order(&self) -> usize {
        1
    }

    fn locality(&self) -> Locality {
        Locality::ConstantGauge
    }

    fn chart_dim(&self) -> Option<usize> {
        Some(3)
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let a = y.gauge();
        let alg = y.algebra();
        let n = alg.dim();
        let f = field_strength(a, alg, calc);
        let mut terms = Vec::new();
        for al in 0..3 {
            for be in 0..3 {
                for la in 0..3 {
                    let e = levi_civita(&[al, be, la]);
                    if e == 0 {
                        continue;
                    }
                    let mut t = vec![pair(alg, &column(&f, n, &[al, be]), &column(a, n, &[la]))];
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                let c = alg.c_lower(i, j, k);
                                if c != 0.0 {
                                    t.push(num(-c / 3.0).mul(&a.at(&[i, al]).mul(a.at(&[j, be])).mul(a.at(&[k, la]))));
                                }
                            }
                        }
                    }
                    terms.push(Expr::int(e).mul(&Expr::sum(t)));
                }
            }
        }
        Expr::sum(terms)
    }

    /// U^{μν} = 2ε^{μνλ} η_{ij} (A^i_σ ξ^σ + 2ξ^i) A^j_λ
    fn superpotential(&self, y: &FieldSet, gen: &SymmetryGenerator, _calc: &mut dyn Calculus) -> Option<Vec<Vec<Expr>>> {
        let a = y.gauge();
        let alg = y.algebra();
        let n = alg.dim();
        // the gauge part enters twice: CS is invariant only for constant ξ^A
        let v: Vec<Expr> = vertical(a, gen, n).iter().enumerate().map(|(k, x)| x.add(&gen.gauge_component(k))).collect();
        Some(antisym(3, |mu, nu| {
            let t = (0..3).filter_map(|l| {
                let e = levi_civita(&[mu, nu, l]);
                (e != 0).then(|| Expr::int(2 * e).mul(&pair(alg, &v, &column(a, n, &[l]))))
            });
            Expr::sum(t)
        }))
    }

    /// 2ε^{αβλ} η_{ij} δA^i_β A^j_λ
    fn printed_pc(&self, y: &FieldSet, y_eps: &FieldSet, _calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let a = y.gauge();
        let alg = y.algebra();
        let n = alg.dim();
        let da = delta_tensor(y_eps.gauge());
        Some(cs_contract(alg, n, &da, a, 2))
    }

    /// α^μ = −2ε^{μβλ} η_{ij} (A − Ā)^i_β Ā^j_λ
    fn alpha(&self, y: &FieldSet, vac: &FieldSet, _calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let ab = vac.gauge();
        let alg = y.algebra();
        let n = alg.dim();
        let w = y.gauge().sub(ab);
        Some(cs_contract(alg, n, &w, ab, -2))
    }
}

/// k ε^{μβλ} η_{ij} x^i_β z^j_λ
fn cs_contract(alg: &GaugeAlgebra, n: usize, x: &TensorField, z: &TensorField, k: i64) -> Vec<Expr> {
    (0..3)
        .map(|mu| {
            let mut t = Vec::new();
            for b in 0..3 {
                for l in 0..3 {
                    let e = levi_civita(&[mu, b, l]);
                    if e != 0 {
                        t.push(Expr::int(k * e).mul(&pair(alg, &column(x, n, &[b]), &column(z, n, &[l]))));
                    }
                }
            }
            Expr::sum(t)
        })
        .collect()
}

/// Yang–Mills on a fixed background metric, 𝓛 = −¼√g η_{AB} F^A_{μν} F^{Bμν}.
pub struct YangMills;

impl YangMills {
    /// √g F^{Aμν}
    fn f_up(met: &Metric, f: &TensorField) -> TensorField {
        let m = met.g.dim();
        let gi = &met.ginv;
        TensorField::from_fn(m, f.slots().to_vec(), |i| {
            let (k, mu, nu) = (i[0], i[1], i[2]);
            if mu == nu {
                return Expr::zero();
            }
            let mut t = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    let fab = f.at(&[k, a, b]);
                    if a != b && !gi.at(&[mu, a]).is_zero() && !gi.at(&[nu, b]).is_zero() {
                        t.push(gi.at(&[mu, a]).mul(gi.at(&[nu, b])).mul(fab));
                    }
                }
            }
            met.sqrt_g.mul(&Expr::sum(t))
        })
    }
}

impl Theory for YangMills {
    fn name(&self) -> &str {
        "yang_mills"
    }

    fn description(&self) -> String {
        "Yang-Mills theory on a background metric".into()
    }

    fn formula(&self) -> String {
        "-1/4 sqrt(g) eta_AB F^A_mn F^B^mn".into()
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Metric, RoleKind::Gauge]
    }

    fn is_dynamical(&self, kind: RoleKind) -> bool {
        kind != RoleKind::Metric
    }

    fn order(&self) -> usize {
        1
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let m = y.m;
        let met = Metric::of(y);
        let alg = y.algebra();
        let n = alg.dim();
        let f = field_strength(y.gauge(), alg, calc);
        let fu = Self::f_up(&met, &f);
        let mut t = Vec::new();
        for mu in 0..m {
            for nu in mu + 1..m {
                t.push(pair(alg, &column(&f, n, &[mu, nu]), &column(&fu, n, &[mu, nu])));
            }
        }
        // the μ<ν sum is half the full contraction
        Expr::rational(-1, 2).mul(&Expr::sum(t))
    }

    /// U^{μν} = −√g η_{AB} F^{Aμν} ξ_V^B
    fn superpotential(&self, y: &FieldSet, gen: &SymmetryGenerator, calc: &mut dyn Calculus) -> Option<Vec<Vec<Expr>>> {
        let met = Metric::of(y);
        let alg = y.algebra();
        let n = alg.dim();
        let f = field_strength(y.gauge(), alg, calc);
        let fu = Self::f_up(&met, &f);
        let v = vertical(y.gauge(), gen, n);
        Some(antisym(y.m, |mu, nu| pair(alg, &column(&fu, n, &[mu, nu]), &v).neg()))
    }

    /// −√g η_{AB} F^{Aμν} δA^B_ν
    fn printed_pc(&self, y: &FieldSet, y_eps: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let da = delta_tensor(y_eps.gauge());
        Some(ym_contract(y, y, &da, -1, calc))
    }

    /// α^μ = √ḡ η_{AB} F̄^{Aμν} (A − Ā)^B_ν
    fn alpha(&self, y: &FieldSet, vac: &FieldSet, calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        let w = y.gauge().sub(vac.gauge());
        Some(ym_contract(y, vac, &w, 1, calc))
    }
}

/// k √g η_{AB} F^{Aμν}(at) x^B_ν
fn ym_contract(y: &FieldSet, at: &FieldSet, x: &TensorField, k: i64, calc: &mut dyn Calculus) -> Vec<Expr> {
    let m = y.m;
    let met = Metric::of(at);
    let alg = y.algebra();
    let n = alg.dim();
    let f = field_strength(at.gauge(), alg, calc);
    let fu = YangMills::f_up(&met, &f);
    (0..m)
        .map(|mu| {
            let t = (0..m).map(|nu| pair(alg, &column(&fu, n, &[mu, nu]), &column(x, n, &[nu])));
            Expr::int(k).mul(&Expr::sum(t))
        })
        .collect()
}
