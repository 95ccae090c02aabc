//! Seeded random configurations and generators for off-shell identity checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Field, FieldConfig, GaugeAlgebra, Role, RoleKind, Slot, SymmetryGenerator, TensorField};
use crate::noether::{Locality, TheoryEntry};
use crate::symker::{Chart, Expr};

pub fn chart(m: usize) -> Chart {
    let names: Vec<&str> = match m {
        1 => vec!["t"],
        2 => vec!["t", "x"],
        3 => vec!["t", "x", "y"],
        4 => vec!["t", "x", "y", "z"],
        _ => panic!("charts up to dimension 4"),
    };
    Chart::new(&names).unwrap()
}

struct Poly<'a> {
    rng: &'a mut ChaCha8Rng,
    coords: Vec<Expr>,
}

impl Poly<'_> {
    fn coef(&mut self, scale: f64) -> Expr {
        let v: f64 = self.rng.gen_range(-1.0..1.0) * scale;
        Expr::float((v * 1e4).round() / 1e4)
    }

    fn coord(&mut self) -> Expr {
        let i = self.rng.gen_range(0..self.coords.len());
        self.coords[i].clone()
    }

    /// c0 + c1 x_a + c2 x_b x_c + c3 sin(x_d)
    fn smooth(&mut self, scale: f64) -> Expr {
        let c0 = self.coef(scale);
        let a = self.coord();
        let t1 = self.coef(scale).mul(&a);
        let (b, c) = (self.coord(), self.coord());
        let t2 = self.coef(scale).mul(&b.mul(&c));
        let d = self.coord();
        let t3 = self.coef(scale).mul(&d.sin());
        Expr::sum([c0, t1, t2, t3])
    }

    /// c0 + c1 x_a + c2 x_b x_c + c3 x_d x_e x_f
    fn cubic(&mut self, scale: f64) -> Expr {
        let c0 = self.coef(scale);
        let a = self.coord();
        let t1 = self.coef(scale).mul(&a);
        let (b, c) = (self.coord(), self.coord());
        let t2 = self.coef(scale).mul(&b.mul(&c));
        let (d, e, f) = (self.coord(), self.coord(), self.coord());
        let t3 = self.coef(scale).mul(&d.mul(&e).mul(&f));
        Expr::sum([c0, t1, t2, t3])
    }

    fn affine(&mut self, scale: f64) -> Expr {
        let mut t = vec![self.coef(scale)];
        for x in self.coords.clone() {
            t.push(self.coef(scale).mul(&x));
        }
        Expr::sum(t)
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coords(m: usize) -> Vec<Expr> {
    chart(m).coords().iter().map(|c| Expr::symbol(c.clone())).collect()
}

/// diag(−1, 1, …) plus small smooth perturbations.
pub fn random_metric(m: usize, seed: u64) -> TensorField {
    let mut r = rng(seed);
    let mut p = Poly { rng: &mut r, coords: coords(m) };
    let mut comps = vec![Expr::zero(); m * m];
    for a in 0..m {
        for b in a..m {
            let base = if a == b { Expr::int(if a == 0 { -1 } else { 1 }) } else { Expr::zero() };
            let v = base.add(&p.smooth(0.08));
            comps[a * m + b] = v.clone();
            comps[b * m + a] = v;
        }
    }
    TensorField::new(m, vec![Slot::Down, Slot::Down], comps)
}

pub fn random_connection(m: usize, seed: u64) -> TensorField {
    let mut r = rng(seed);
    let mut p = Poly { rng: &mut r, coords: coords(m) };
    let mut t = TensorField::zeros(m, vec![Slot::Up, Slot::Down, Slot::Down]);
    for l in 0..m {
        for a in 0..m {
            for b in a..m {
                let v = p.smooth(0.3);
                t.set(&[l, a, b], v.clone());
                t.set(&[l, b, a], v);
            }
        }
    }
    t
}

pub fn random_gauge(m: usize, alg: &GaugeAlgebra, seed: u64) -> TensorField {
    let mut r = rng(seed);
    let mut p = Poly { rng: &mut r, coords: coords(m) };
    TensorField::from_fn(m, vec![Slot::Alg(alg.dim()), Slot::Down], |_| p.smooth(0.5))
}

fn config(m: usize, fields: Vec<Field>, params: BTreeMap<String, f64>) -> FieldConfig {
    let mut c = FieldConfig::new("random", chart(m), params, fields).expect("random configuration");
    c.off_shell = true;
    c
}

/// A random off-shell configuration carrying the fields the theory needs.
pub fn random_config(entry: &TheoryEntry, seed: u64) -> FieldConfig {
    let m = entry.theory().chart_dim().unwrap_or(4);
    let mut fields = Vec::new();
    let mut params = BTreeMap::new();
    for k in entry.fields() {
        let s = seed.wrapping_mul(31).wrapping_add(k as u64);
        match k {
            RoleKind::Metric => fields.push(Field { name: "g".into(), role: Role::Metric, tensor: random_metric(m, s) }),
            RoleKind::Connection => {
                fields.push(Field { name: "Gamma".into(), role: Role::Connection, tensor: random_connection(m, s) })
            }
            RoleKind::Gauge => {
                let alg = GaugeAlgebra::so3();
                let tensor = random_gauge(m, &alg, s);
                fields.push(Field { name: "A".into(), role: Role::Gauge(alg), tensor });
            }
            RoleKind::Particle => {
                let mut r = rng(s);
                let mut p = Poly { rng: &mut r, coords: coords(m) };
                let tensor = TensorField::from_fn(m, vec![Slot::Alg(2)], |_| p.cubic(1.0));
                fields.push(Field { name: "x".into(), role: Role::Particle, tensor });
                params.insert("m".into(), 1.3);
                params.insert("k".into(), 0.7);
            }
        }
    }
    config(m, fields, params)
}

/// A random generator the theory is covariant under.
pub fn random_generator(entry: &TheoryEntry, cfg: &FieldConfig, seed: u64) -> SymmetryGenerator {
    let m = cfg.dim();
    let n = entry
        .fields()
        .iter()
        .find_map(|k| cfg.field(*k).ok().and_then(|f| f.algebra()).map(GaugeAlgebra::dim))
        .unwrap_or(0);
    let mut r = rng(seed ^ 0x9e37_79b9);
    let mut p = Poly { rng: &mut r, coords: coords(m) };
    match entry.locality() {
        Locality::Covariant => SymmetryGenerator {
            xi: (0..m).map(|_| p.cubic(1.0)).collect(),
            xi_gauge: (0..n).map(|_| p.cubic(1.0)).collect(),
        },
        Locality::Affine => SymmetryGenerator { xi: (0..m).map(|_| p.affine(1.0)).collect(), xi_gauge: Vec::new() },
        Locality::ConstantGauge => SymmetryGenerator {
            xi: (0..m).map(|_| p.cubic(1.0)).collect(),
            xi_gauge: (0..n).map(|_| p.coef(1.0)).collect(),
        },
        Locality::ConstantTime => SymmetryGenerator { xi: vec![p.coef(1.0)], xi_gauge: Vec::new() },
    }
}

/// A random deformation of every field of the configuration.
pub fn random_deformation(cfg: &FieldConfig, seed: u64) -> crate::noether::Deformation {
    let mut r = rng(seed ^ 0x51ed);
    let m = cfg.dim();
    let mut p = Poly { rng: &mut r, coords: coords(m) };
    let ts = cfg
        .fields
        .iter()
        .map(|f| {
            let mut t = f.tensor.map(|_| Expr::zero());
            for i in f.tensor.indices() {
                let mut canon = i.clone();
                match f.role {
                    Role::Metric => canon.sort(),
                    Role::Connection => canon[1..].sort(),
                    _ => {}
                }
                // indices come in lexicographic order, so the canonical one is already set
                let v = if canon != i { t.at(&canon).clone() } else { p.smooth(0.5) };
                t.set(&i, v);
            }
            t
        })
        .collect();
    crate::noether::Deformation::new(ts)
}
