//! Formal jet variables.
//!
//! A jet symbol is named `base|D` where `D` is the sorted string of
//! derivative indices (one digit per index, so charts have at most ten
//! coordinates). The separator never occurs in parsed identifiers, so jet
//! symbols cannot collide with coordinates or parameters.

use std::sync::Arc;

use crate::geom::{Calculus, GaugeAlgebra, RoleKind, Slot, TensorField};
use crate::symker::{gradient, Differ, Expr, Symbol};

pub(crate) const SEP: char = '|';

pub(crate) fn jet_name(base: &str, derivs: &[usize]) -> String {
    let mut d: Vec<usize> = derivs.to_vec();
    d.sort_unstable();
    let mut s = String::with_capacity(base.len() + 1 + d.len());
    s.push_str(base);
    s.push(SEP);
    for i in d {
        s.push(char::from_digit(i as u32, 10).expect("at most ten coordinates"));
    }
    s
}

/// Name of d_μ applied to a jet symbol.
fn jet_next(name: &str, mu: usize) -> Option<String> {
    let (base, d) = name.split_once(SEP)?;
    let mut idx: Vec<usize> = d.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
    idx.push(mu);
    Some(jet_name(base, &idx))
}

pub(crate) fn jet_order(name: &str) -> Option<usize> {
    name.split_once(SEP).map(|(_, d)| d.len())
}

/// Total derivative d_μ: coordinates differentiate to δ, jet symbols to the
/// next jet symbol, everything else (parameters) to zero.
pub struct TotalCalculus {
    differs: Vec<Differ>,
}

impl TotalCalculus {
    pub fn new(coords: &[Symbol]) -> TotalCalculus {
        assert!(coords.len() <= 10, "at most ten coordinates");
        let differs = coords
            .iter()
            .enumerate()
            .map(|(mu, c)| {
                let c = c.clone();
                Differ::new(move |s: &Symbol| {
                    if *s == c {
                        Expr::one()
                    } else if let Some(n) = jet_next(s, mu) {
                        Expr::sym(&n)
                    } else {
                        Expr::zero()
                    }
                })
            })
            .collect();
        TotalCalculus { differs }
    }
}

impl Calculus for TotalCalculus {
    fn dim(&self) -> usize {
        self.differs.len()
    }

    fn d(&mut self, e: &Expr, mu: usize) -> Expr {
        self.differs[mu].d(e)
    }
}

/// Sorted multi-indices of length `r` over `m` coordinates.
pub fn sym_multi_indices(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(m, r, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, r, 0, &mut Vec::new(), &mut out);
    out
}

/// Independent components of a field: the metric keeps μ≤ν, the connection
/// λ with α≤β, everything else all components.
pub fn independent_components(kind: RoleKind, t: &TensorField) -> Vec<Vec<usize>> {
    t.indices()
        .into_iter()
        .filter(|i| match kind {
            RoleKind::Metric => i[0] <= i[1],
            RoleKind::Connection => i[1] <= i[2],
            _ => true,
        })
        .collect()
}

pub(crate) fn field_slots(kind: RoleKind, algebra: Option<&GaugeAlgebra>, particle_size: usize) -> Vec<Slot> {
    match kind {
        RoleKind::Metric => vec![Slot::Down, Slot::Down],
        RoleKind::Connection => vec![Slot::Up, Slot::Down, Slot::Down],
        RoleKind::Gauge => vec![Slot::Alg(algebra.map_or(1, GaugeAlgebra::dim)), Slot::Down],
        RoleKind::Particle => vec![Slot::Alg(particle_size)],
    }
}

/// Tensor filled from independent components, mirrored by the role symmetry.
pub(crate) fn mirrored(kind: RoleKind, m: usize, slots: Vec<Slot>, comps: &[Vec<usize>], vals: &[Expr]) -> TensorField {
    let mut t = TensorField::zeros(m, slots);
    for (i, v) in comps.iter().zip(vals) {
        t.set(i, v.clone());
        let mut j = i.clone();
        match kind {
            RoleKind::Metric => j.swap(0, 1),
            RoleKind::Connection => j.swap(1, 2),
            _ => {}
        }
        t.set(&j, v.clone());
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ModelKey {
    pub m: usize,
    pub algebra: Option<String>,
    pub particle_size: usize,
    pub det_sign: i8,
    pub coords: Vec<Symbol>,
}

/// A theory's density written over jet symbols, with all its partial
/// derivatives (the generalized momenta) up to the theory order.
pub struct JetModel {
    pub m: usize,
    pub order: usize,
    pub kinds: Vec<RoleKind>,
    pub comps: Vec<Vec<Vec<usize>>>,
    /// multi[r] lists the sorted derivative multi-indices of length r
    pub multi: Vec<Vec<Vec<usize>>>,
    pub density: Expr,
    /// grads[f][c][r][j] = ∂𝓛/∂(y_c)_{multi[r][j]}
    pub grads: Vec<Vec<Vec<Vec<Expr>>>>,
}

pub(crate) fn base_name(f: usize, c: usize) -> String {
    format!("y{f}.{c}")
}

impl JetModel {
    pub(crate) fn build(theory: &dyn super::Theory, key: &ModelKey, algebra: Option<&GaugeAlgebra>) -> JetModel {
        let m = key.m;
        let order = theory.order();
        let kinds = theory.fields();
        let mut tensors = Vec::new();
        let mut comps = Vec::new();
        for (f, &kind) in kinds.iter().enumerate() {
            let slots = field_slots(kind, algebra, key.particle_size);
            let shape_t = TensorField::zeros(m, slots.clone());
            let cs = independent_components(kind, &shape_t);
            let vals: Vec<Expr> = (0..cs.len()).map(|c| Expr::sym(&jet_name(&base_name(f, c), &[]))).collect();
            tensors.push(mirrored(kind, m, slots, &cs, &vals));
            comps.push(cs);
        }
        let fs = super::FieldSet {
            m,
            kinds: kinds.clone(),
            tensors,
            algebra: algebra.cloned(),
            det_sign: key.det_sign as f64,
        };
        let mut calc = TotalCalculus::new(&key.coords);
        let density = theory.density(&fs, &mut calc);
        for s in density.free_symbols() {
            if let Some(r) = jet_order(&s) {
                assert!(r <= order, "{}: density depends on jet order {r} > {order}", theory.name());
            }
        }
        let multi: Vec<Vec<Vec<usize>>> = (0..=order).map(|r| sym_multi_indices(m, r)).collect();
        let mut vars: Vec<Symbol> = Vec::new();
        for (f, cs) in comps.iter().enumerate() {
            for c in 0..cs.len() {
                for layer in &multi {
                    for d in layer {
                        vars.push(Symbol::from(jet_name(&base_name(f, c), d)));
                    }
                }
            }
        }
        let g = gradient(&density, &vars);
        let mut it = g.into_iter();
        let grads = comps
            .iter()
            .map(|cs| {
                (0..cs.len())
                    .map(|_| multi.iter().map(|layer| layer.iter().map(|_| it.next().unwrap()).collect()).collect())
                    .collect()
            })
            .collect();
        JetModel { m, order, kinds, comps, multi, density, grads }
    }

    pub fn symbol_count(&self) -> usize {
        self.comps.iter().map(Vec::len).sum::<usize>() * self.multi.iter().map(Vec::len).sum::<usize>()
    }
}

pub(crate) type SharedModel = Arc<JetModel>;
