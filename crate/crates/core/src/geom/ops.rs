use std::collections::HashMap;

use crate::symker::Expr;

use super::algebra::GaugeAlgebra;
use super::calculus::Calculus;
use super::tensor::{Slot, Symmetry, TensorField};

fn dd() -> Vec<Slot> {
    vec![Slot::Down, Slot::Down]
}

pub fn connection_slots() -> Vec<Slot> {
    vec![Slot::Up, Slot::Down, Slot::Down]
}

pub fn metric_from_rows(m: usize, comps: Vec<Expr>) -> TensorField {
    TensorField::new(m, dd(), comps).with_symmetries(vec![Symmetry::Symmetric(0, 1)])
}

pub fn diagonal_metric(diag: &[Expr]) -> TensorField {
    let m = diag.len();
    TensorField::from_fn(m, dd(), |i| if i[0] == i[1] { diag[i[0]].clone() } else { Expr::zero() })
        .with_symmetries(vec![Symmetry::Symmetric(0, 1)])
}

fn is_diagonal(g: &TensorField) -> bool {
    g.indices().iter().all(|i| i[0] == i[1] || g.at(i).is_zero())
}

/// Laplace expansion with memoised minors, indexed by column bitmask.
fn det_rows(a: &dyn Fn(usize, usize) -> Expr, n: usize) -> Expr {
    fn go(a: &dyn Fn(usize, usize) -> Expr, n: usize, row: usize, cols: u32, memo: &mut HashMap<u32, Expr>) -> Expr {
        if row == n {
            return Expr::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut terms = Vec::new();
        let mut sign = 1;
        for c in 0..n {
            if cols & (1 << c) != 0 {
                continue;
            }
            let e = a(row, c);
            if !e.is_zero() {
                let minor = go(a, n, row + 1, cols | (1 << c), memo);
                let t = e.mul(&minor);
                terms.push(if sign > 0 { t } else { t.neg() });
            }
            sign = -sign;
        }
        let v = Expr::sum(terms);
        memo.insert(cols, v.clone());
        v
    }
    go(a, n, 0, 0, &mut HashMap::new())
}

pub fn determinant(g: &TensorField) -> Expr {
    let m = g.dim();
    if is_diagonal(g) {
        return Expr::product((0..m).map(|i| g.at(&[i, i]).clone()));
    }
    det_rows(&|i, j| g.at(&[i, j]).clone(), m)
}

/// √(sign·det g); sign is −1 for Lorentzian metrics.
pub fn sqrt_det(g: &TensorField, sign: f64) -> Expr {
    let d = determinant(g);
    if sign < 0.0 { d.neg().sqrt() } else { d.sqrt() }
}

pub fn inverse_metric(g: &TensorField) -> TensorField {
    let m = g.dim();
    if is_diagonal(g) {
        return TensorField::from_fn(m, vec![Slot::Up, Slot::Up], |i| {
            if i[0] == i[1] { g.at(&[i[0], i[0]]).recip() } else { Expr::zero() }
        })
        .with_symmetries(vec![Symmetry::Symmetric(0, 1)]);
    }
    let det = determinant(g);
    TensorField::from_fn_sym(m, vec![Slot::Up, Slot::Up], vec![Symmetry::Symmetric(0, 1)], |i| {
        let (r, c) = (i[1], i[0]);
        // cofactor of entry (r, c) of a symmetric matrix
        let rows: Vec<usize> = (0..m).filter(|&k| k != r).collect();
        let cols: Vec<usize> = (0..m).filter(|&k| k != c).collect();
        let minor = det_rows(&|a, b| g.at(&[rows[a], cols[b]]).clone(), m - 1);
        let cof = if (r + c) % 2 == 0 { minor } else { minor.neg() };
        cof.div(&det)
    })
}

/// Γ^λ_{αβ} of the Levi-Civita connection.
pub fn christoffel(g: &TensorField, ginv: &TensorField, calc: &mut dyn Calculus) -> TensorField {
    let m = g.dim();
    let mut dg = vec![Expr::zero(); m * m * m];
    for s in 0..m {
        for a in 0..m {
            for b in a..m {
                let v = calc.d(g.at(&[a, b]), s);
                dg[(s * m + a) * m + b] = v.clone();
                dg[(s * m + b) * m + a] = v;
            }
        }
    }
    let d = |s: usize, a: usize, b: usize| &dg[(s * m + a) * m + b];
    let mut first = vec![Expr::zero(); m * m * m];
    for s in 0..m {
        for a in 0..m {
            for b in a..m {
                let v = d(a, s, b).add(d(b, s, a)).sub(d(s, a, b)).mul(&Expr::rational(1, 2));
                first[(s * m + a) * m + b] = v.clone();
                first[(s * m + b) * m + a] = v;
            }
        }
    }
    TensorField::from_fn_sym(m, connection_slots(), vec![Symmetry::Symmetric(1, 2)], |i| {
        Expr::sum((0..m).map(|s| ginv.at(&[i[0], s]).mul(&first[(s * m + i[1]) * m + i[2]])))
    })
}

/// R^α_{βμν} = ∂_μΓ^α_{νβ} − ∂_νΓ^α_{μβ} + Γ^α_{μλ}Γ^λ_{νβ} − Γ^α_{νλ}Γ^λ_{μβ}.
pub fn riemann(gamma: &TensorField, calc: &mut dyn Calculus) -> TensorField {
    let m = gamma.dim();
    let mut dgam: HashMap<(usize, usize, usize, usize), Expr> = HashMap::new();
    let mut d_gam = |calc: &mut dyn Calculus, mu: usize, a: usize, n: usize, b: usize| -> Expr {
        dgam.entry((mu, a, n, b)).or_insert_with(|| calc.d(gamma.at(&[a, n, b]), mu)).clone()
    };
    let g = |a: usize, b: usize, c: usize| gamma.at(&[a, b, c]);
    let mut out = TensorField::zeros(m, vec![Slot::Up, Slot::Down, Slot::Down, Slot::Down])
        .with_symmetries(vec![Symmetry::Antisymmetric(2, 3)]);
    for a in 0..m {
        for b in 0..m {
            for mu in 0..m {
                for nu in mu + 1..m {
                    let mut terms = vec![d_gam(calc, mu, a, nu, b), d_gam(calc, nu, a, mu, b).neg()];
                    for l in 0..m {
                        terms.push(g(a, mu, l).mul(g(l, nu, b)));
                        terms.push(g(a, nu, l).mul(g(l, mu, b)).neg());
                    }
                    let v = Expr::sum(terms);
                    out.set(&[a, b, nu, mu], v.neg());
                    out.set(&[a, b, mu, nu], v);
                }
            }
        }
    }
    out
}

/// R_{βν} = R^α_{βαν}; `symmetrize` returns R_{(βν)}.
pub fn ricci(riem: &TensorField, symmetrize: bool) -> TensorField {
    let m = riem.dim();
    let raw = TensorField::from_fn(m, dd(), |i| Expr::sum((0..m).map(|a| riem.at(&[a, i[0], a, i[1]]).clone())));
    if !symmetrize {
        return raw;
    }
    TensorField::from_fn_sym(m, dd(), vec![Symmetry::Symmetric(0, 1)], |i| {
        raw.at(&[i[0], i[1]]).add(raw.at(&[i[1], i[0]])).mul(&Expr::rational(1, 2))
    })
}

/// Full contraction g^{αβ} T_{αβ}.
pub fn trace(ginv: &TensorField, t: &TensorField) -> Expr {
    let m = t.dim();
    let mut terms = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let gi = ginv.at(&[a, b]);
            if !gi.is_zero() {
                terms.push(gi.mul(t.at(&[a, b])));
            }
        }
    }
    Expr::sum(terms)
}

pub fn scalar_curvature(ginv: &TensorField, ric: &TensorField) -> Expr {
    trace(ginv, ric)
}

/// u^λ_{αβ} = Γ^λ_{αβ} − δ^λ_α Γ_β, or its (αβ)-symmetrisation; Γ_β = Γ^α_{αβ}.
pub fn u_tensor(gamma: &TensorField, symmetrized: bool) -> TensorField {
    let m = gamma.dim();
    let tr: Vec<Expr> = (0..m).map(|b| Expr::sum((0..m).map(|a| gamma.at(&[a, a, b]).clone()))).collect();
    let half = Expr::rational(1, 2);
    let t = TensorField::from_fn(m, connection_slots(), |i| {
        let (l, a, b) = (i[0], i[1], i[2]);
        let mut v = gamma.at(i).clone();
        if symmetrized {
            if l == a {
                v = v.sub(&half.mul(&tr[b]));
            }
            if l == b {
                v = v.sub(&half.mul(&tr[a]));
            }
        } else if l == a {
            v = v.sub(&tr[b]);
        }
        v
    });
    if symmetrized { t.with_symmetries(vec![Symmetry::Symmetric(1, 2)]) } else { t }
}

/// F^A_{μν} = ∂_μA^A_ν − ∂_νA^A_μ + c^A_{BC} A^B_μ A^C_ν.
pub fn field_strength(a: &TensorField, alg: &GaugeAlgebra, calc: &mut dyn Calculus) -> TensorField {
    let m = a.dim();
    let n = alg.dim();
    let mut out = TensorField::zeros(m, vec![Slot::Alg(n), Slot::Down, Slot::Down])
        .with_symmetries(vec![Symmetry::Antisymmetric(1, 2)]);
    for i in 0..n {
        for mu in 0..m {
            for nu in mu + 1..m {
                let mut terms = vec![calc.d(a.at(&[i, nu]), mu), calc.d(a.at(&[i, mu]), nu).neg()];
                for b in 0..n {
                    for c in 0..n {
                        let k = alg.c(i, b, c);
                        if k != 0.0 {
                            terms.push(Expr::float(k).mul(&a.at(&[b, mu]).mul(a.at(&[c, nu]))));
                        }
                    }
                }
                let v = Expr::sum(terms);
                out.set(&[i, nu, mu], v.neg());
                out.set(&[i, mu, nu], v);
            }
        }
    }
    out
}

/// Gauge-covariant derivative D_μ v^A = ∂_μ v^A + c^A_{BC} A^B_μ v^C; slots [Alg, Down].
pub fn gauge_covariant_derivative(v: &[Expr], a: &TensorField, alg: &GaugeAlgebra, calc: &mut dyn Calculus) -> TensorField {
    let m = a.dim();
    let n = alg.dim();
    TensorField::from_fn(m, vec![Slot::Alg(n), Slot::Down], |i| {
        let (k, mu) = (i[0], i[1]);
        let mut terms = vec![calc.d(&v[k], mu)];
        for b in 0..n {
            for c in 0..n {
                let s = alg.c(k, b, c);
                if s != 0.0 {
                    terms.push(Expr::float(s).mul(&a.at(&[b, mu]).mul(&v[c])));
                }
            }
        }
        Expr::sum(terms)
    })
}

/// Lie derivative of a tensor with Up/Down/Alg slots along ξ^μ (algebra
/// slots are inert).
pub fn lie_tensor(t: &TensorField, xi: &[Expr], calc: &mut dyn Calculus) -> TensorField {
    let m = t.dim();
    let mut dxi = vec![Expr::zero(); m * m];
    for a in 0..m {
        for b in 0..m {
            dxi[a * m + b] = calc.d(&xi[a], b);
        }
    }
    let dx = |a: usize, b: usize| &dxi[a * m + b];
    let slots = t.slots().to_vec();
    let comps: Vec<Expr> = t
        .indices()
        .iter()
        .map(|i| {
            let mut terms = Vec::new();
            for (a, x) in xi.iter().enumerate() {
                if !x.is_zero() {
                    terms.push(x.mul(&calc.d(t.at(i), a)));
                }
            }
            for (k, s) in slots.iter().enumerate() {
                let mut j = i.clone();
                for a in 0..m {
                    j[k] = a;
                    match s {
                        Slot::Down => terms.push(t.at(&j).mul(dx(a, i[k]))),
                        Slot::Up => terms.push(t.at(&j).mul(dx(i[k], a)).neg()),
                        Slot::Alg(_) => {}
                    }
                }
            }
            Expr::sum(terms)
        })
        .collect();
    TensorField::new(m, slots, comps).with_symmetries(t.symmetries.clone())
}

/// £_ξ g_{μν} = ξ^α∂_α g_{μν} + g_{αν}∂_μξ^α + g_{μα}∂_νξ^α.
pub fn lie_metric(g: &TensorField, xi: &[Expr], calc: &mut dyn Calculus) -> TensorField {
    lie_tensor(g, xi, calc)
}

/// Lie derivative of a linear connection: tensorial part plus ∂_α∂_βξ^λ.
pub fn lie_connection(gamma: &TensorField, xi: &[Expr], calc: &mut dyn Calculus) -> TensorField {
    let m = gamma.dim();
    let mut out = lie_tensor(gamma, xi, calc);
    for l in 0..m {
        let d1: Vec<Expr> = (0..m).map(|a| calc.d(&xi[l], a)).collect();
        for a in 0..m {
            for b in 0..m {
                let v = out.at(&[l, a, b]).add(&calc.d(&d1[a], b));
                out.set(&[l, a, b], v);
            }
        }
    }
    out
}

/// £_Ξ A^A_μ = ξ^ν F^A_{νμ} + D_μ(ξ^A + A^A_ν ξ^ν).
pub fn lie_gauge(a: &TensorField, xi: &[Expr], xi_gauge: &[Expr], alg: &GaugeAlgebra, calc: &mut dyn Calculus) -> TensorField {
    let m = a.dim();
    let n = alg.dim();
    let f = field_strength(a, alg, calc);
    let vert: Vec<Expr> = (0..n)
        .map(|k| {
            let mut terms: Vec<Expr> = (0..m).map(|nu| a.at(&[k, nu]).mul(&xi[nu])).collect();
            if let Some(x) = xi_gauge.get(k) {
                terms.push(x.clone());
            }
            Expr::sum(terms)
        })
        .collect();
    let dv = gauge_covariant_derivative(&vert, a, alg, calc);
    TensorField::from_fn(m, vec![Slot::Alg(n), Slot::Down], |i| {
        let (k, mu) = (i[0], i[1]);
        let mut terms: Vec<Expr> = (0..m).map(|nu| xi[nu].mul(f.at(&[k, nu, mu]))).collect();
        terms.push(dv.at(&[k, mu]).clone());
        Expr::sum(terms)
    })
}

/// ∇_c T with the derivative index appended last. Algebra slots are inert.
pub fn covariant_derivative(t: &TensorField, gamma: &TensorField, calc: &mut dyn Calculus) -> TensorField {
    let m = t.dim();
    let mut slots = t.slots().to_vec();
    slots.push(Slot::Down);
    let r = t.rank();
    TensorField::from_fn(m, slots, |i| {
        let (base, c) = (&i[..r], i[r]);
        let mut terms = vec![calc.d(t.at(base), c)];
        for (k, s) in t.slots().iter().enumerate() {
            let mut j = base.to_vec();
            for sgm in 0..m {
                j[k] = sgm;
                match s {
                    Slot::Up => terms.push(gamma.at(&[base[k], c, sgm]).mul(t.at(&j))),
                    Slot::Down => terms.push(gamma.at(&[sgm, c, base[k]]).mul(t.at(&j)).neg()),
                    Slot::Alg(_) => {}
                }
            }
        }
        Expr::sum(terms)
    })
}

/// Raise slot `k` with g^{ab}.
pub fn raise(t: &TensorField, k: usize, ginv: &TensorField) -> TensorField {
    assert_eq!(t.slots()[k], Slot::Down);
    let m = t.dim();
    let mut slots = t.slots().to_vec();
    slots[k] = Slot::Up;
    TensorField::from_fn(m, slots, |i| {
        let mut j = i.to_vec();
        Expr::sum((0..m).map(|b| {
            j[k] = b;
            ginv.at(&[i[k], b]).mul(t.at(&j))
        }))
    })
}

/// Lower slot `k` with g_{ab}.
pub fn lower(t: &TensorField, k: usize, g: &TensorField) -> TensorField {
    assert_eq!(t.slots()[k], Slot::Up);
    let m = t.dim();
    let mut slots = t.slots().to_vec();
    slots[k] = Slot::Down;
    TensorField::from_fn(m, slots, |i| {
        let mut j = i.to_vec();
        Expr::sum((0..m).map(|b| {
            j[k] = b;
            g.at(&[i[k], b]).mul(t.at(&j))
        }))
    })
}
