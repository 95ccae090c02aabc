use std::collections::BTreeMap;

use thiserror::Error;

use crate::symker::{Chart, Env, EvalError, Expr, Sampler, Tape};

use super::algebra::GaugeAlgebra;
use super::calculus::{Calculus, CoordCalculus};
use super::ops;
use super::tensor::{Slot, Symmetry, TensorField};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("metric `{0}` is singular at every sampled point")]
    Singular(String),
    #[error("field `{field}` violates its declared symmetry by {defect:e}")]
    Symmetry { field: String, defect: f64 },
    #[error("field `{0}` has the wrong index structure for its role")]
    Shape(String),
    #[error("no field with role {0}")]
    MissingField(&'static str),
    #[error("could not find valid sample points: {0}")]
    NoValidPoints(EvalError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Role {
    Metric,
    Connection,
    Gauge(GaugeAlgebra),
    Particle,
}

impl Role {
    pub fn kind(&self) -> RoleKind {
        match self {
            Role::Metric => RoleKind::Metric,
            Role::Connection => RoleKind::Connection,
            Role::Gauge(_) => RoleKind::Gauge,
            Role::Particle => RoleKind::Particle,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleKind {
    Metric,
    Connection,
    Gauge,
    Particle,
}

impl RoleKind {
    pub fn name(self) -> &'static str {
        match self {
            RoleKind::Metric => "metric",
            RoleKind::Connection => "connection",
            RoleKind::Gauge => "gauge",
            RoleKind::Particle => "point-particle",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Field {
    pub name: String,
    pub role: Role,
    pub tensor: TensorField,
}

impl Field {
    pub fn algebra(&self) -> Option<&GaugeAlgebra> {
        match &self.role {
            Role::Gauge(a) => Some(a),
            _ => None,
        }
    }
}

/// Ξ = ξ^μ ∂_μ + ξ^A ρ_A.
#[derive(Clone, Debug, Default)]
pub struct SymmetryGenerator {
    pub xi: Vec<Expr>,
    pub xi_gauge: Vec<Expr>,
}

impl SymmetryGenerator {
    pub fn natural(xi: Vec<Expr>) -> SymmetryGenerator {
        SymmetryGenerator { xi, xi_gauge: Vec::new() }
    }

    pub fn zero(m: usize, n: usize) -> SymmetryGenerator {
        SymmetryGenerator { xi: vec![Expr::zero(); m], xi_gauge: vec![Expr::zero(); n] }
    }

    /// ∂_μ for coordinate index μ.
    pub fn coordinate(m: usize, mu: usize) -> SymmetryGenerator {
        SymmetryGenerator::natural((0..m).map(|i| if i == mu { Expr::one() } else { Expr::zero() }).collect())
    }

    pub fn scaled(&self, c: &Expr) -> SymmetryGenerator {
        SymmetryGenerator {
            xi: self.xi.iter().map(|x| c.mul(x)).collect(),
            xi_gauge: self.xi_gauge.iter().map(|x| c.mul(x)).collect(),
        }
    }

    pub fn gauge_component(&self, k: usize) -> Expr {
        self.xi_gauge.get(k).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().chain(&self.xi_gauge).all(Expr::is_zero)
    }

    pub fn describe(&self) -> String {
        let xi: Vec<String> = self.xi.iter().map(|e| e.to_string()).collect();
        let mut s = format!("xi=({})", xi.join(", "));
        if self.xi_gauge.iter().any(|e| !e.is_zero()) {
            let g: Vec<String> = self.xi_gauge.iter().map(|e| e.to_string()).collect();
            s.push_str(&format!(" xi_gauge=({})", g.join(", ")));
        }
        s
    }
}

/// A point of configuration space: fields on one chart with bound parameters.
#[derive(Clone, Debug)]
pub struct FieldConfig {
    pub name: String,
    pub description: String,
    pub intended_theory: Option<String>,
    pub off_shell: bool,
    pub chart: Chart,
    pub params: BTreeMap<String, f64>,
    pub fields: Vec<Field>,
    det_sign: f64,
}

impl FieldConfig {
    /// Validates declared symmetries and metric invertibility at 5 sample points.
    pub fn new(name: &str, chart: Chart, params: BTreeMap<String, f64>, fields: Vec<Field>) -> Result<FieldConfig, GeomError> {
        let mut c = FieldConfig {
            name: name.to_string(),
            description: String::new(),
            intended_theory: None,
            off_shell: false,
            chart,
            params,
            fields,
            det_sign: 1.0,
        };
        c.validate()?;
        Ok(c)
    }

    /// Same fields, new components; skips re-validation (used for formal
    /// variations that may be degenerate).
    pub fn with_tensors(&self, tensors: Vec<TensorField>) -> FieldConfig {
        let mut c = self.clone();
        for (f, t) in c.fields.iter_mut().zip(tensors) {
            f.tensor = t;
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn det_sign(&self) -> f64 {
        self.det_sign
    }

    pub fn set_det_sign(&mut self, s: f64) {
        self.det_sign = s;
    }

    pub fn field(&self, kind: RoleKind) -> Result<&Field, GeomError> {
        self.fields.iter().find(|f| f.role.kind() == kind).ok_or(GeomError::MissingField(kind.name()))
    }

    pub fn field_index(&self, kind: RoleKind) -> Option<usize> {
        self.fields.iter().position(|f| f.role.kind() == kind)
    }

    pub fn tensor(&self, kind: RoleKind) -> Result<&TensorField, GeomError> {
        self.field(kind).map(|f| &f.tensor)
    }

    pub fn param_names(&self) -> Vec<&str> {
        self.params.keys().map(String::as_str).collect()
    }

    pub fn env_at(&self, point: &[f64]) -> Env {
        let mut env = Env::new();
        for (k, v) in &self.params {
            env.set(k, *v);
        }
        self.chart.bind(point, &mut env);
        env
    }

    pub fn calculus(&self) -> CoordCalculus {
        CoordCalculus::new(self.chart.coords())
    }

    /// Up to `n` sample points at which every expression evaluates; each
    /// point is redrawn up to 20 times.
    pub fn sample_points(&self, exprs: &[Expr], n: usize, seed: u64) -> Result<Vec<Vec<f64>>, GeomError> {
        Ok(self.sample(&Tape::compile(exprs), n, seed)?.into_iter().map(|(p, _)| p).collect())
    }

    fn sample(&self, tape: &Tape, n: usize, seed: u64) -> Result<Vec<(Vec<f64>, Vec<f64>)>, GeomError> {
        let mut s = Sampler::new(&self.chart, seed);
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let mut last = None;
            for _ in 0..20 {
                let p = s.point();
                match tape.eval_env(&self.env_at(&p)) {
                    Ok(v) => {
                        out.push((p, v));
                        last = None;
                        break;
                    }
                    Err(e) => last = Some(e),
                }
            }
            if let Some(e) = last {
                return Err(GeomError::NoValidPoints(e));
            }
        }
        Ok(out)
    }

    /// Largest |value| of the expressions over `n` sample points.
    pub fn residual(&self, exprs: &[Expr], n: usize, seed: u64) -> Result<f64, GeomError> {
        if exprs.iter().all(Expr::is_zero) {
            return Ok(0.0);
        }
        let vals = self.sample(&Tape::compile(exprs), n, seed)?;
        Ok(vals.iter().flat_map(|(_, v)| v.iter()).fold(0.0, |w: f64, x| w.max(x.abs())))
    }

    fn validate(&mut self) -> Result<(), GeomError> {
        let m = self.dim();
        for f in &self.fields {
            let ok = match &f.role {
                Role::Metric => f.tensor.slots() == [Slot::Down, Slot::Down],
                Role::Connection => f.tensor.slots() == [Slot::Up, Slot::Down, Slot::Down],
                Role::Gauge(a) => f.tensor.slots() == [Slot::Alg(a.dim()), Slot::Down],
                Role::Particle => f.tensor.slots().iter().all(|s| matches!(s, Slot::Alg(_))),
            };
            if !ok || f.tensor.dim() != m {
                return Err(GeomError::Shape(f.name.clone()));
            }
        }
        let mut all = Vec::new();
        for f in &self.fields {
            all.extend(f.tensor.comps().iter().cloned());
        }
        let metric = self.fields.iter().find(|f| f.role == Role::Metric).map(|f| f.tensor.clone());
        let det = metric.as_ref().map(ops::determinant);
        if let Some(d) = &det {
            all.push(Expr::one().div(d));
        }
        let points = self.sample_points(&all, 5, 0x5eed)?;
        for f in &self.fields {
            let mut syms = f.tensor.symmetries.clone();
            if matches!(f.role, Role::Metric) {
                syms.push(Symmetry::Symmetric(0, 1));
            }
            if matches!(f.role, Role::Connection) {
                syms.push(Symmetry::Symmetric(1, 2));
            }
            let defect = symmetry_defect(&f.tensor, &syms, self, &points)?;
            if defect > 1e-10 {
                return Err(GeomError::Symmetry { field: f.name.clone(), defect });
            }
        }
        if let Some(d) = det {
            let v = d.eval(&self.env_at(&points[0]))?;
            if v == 0.0 {
                return Err(GeomError::Singular(self.name.clone()));
            }
            self.det_sign = v.signum();
        }
        Ok(())
    }
}

fn symmetry_defect(t: &TensorField, syms: &[Symmetry], cfg: &FieldConfig, points: &[Vec<f64>]) -> Result<f64, GeomError> {
    let mut pairs = Vec::new();
    for i in t.indices() {
        for s in syms {
            let (a, b, sign) = match *s {
                Symmetry::Symmetric(a, b) => (a, b, 1),
                Symmetry::Antisymmetric(a, b) => (a, b, -1),
            };
            let mut j = i.clone();
            j.swap(a, b);
            let other = if sign > 0 { t.at(&j).clone() } else { t.at(&j).neg() };
            pairs.push(t.at(&i).sub(&other));
        }
    }
    if pairs.is_empty() {
        return Ok(0.0);
    }
    let tape = Tape::compile(&pairs);
    let mut worst: f64 = 0.0;
    for p in points {
        for v in tape.eval_env(&cfg.env_at(p))? {
            worst = worst.max(v.abs());
        }
    }
    Ok(worst)
}

/// Lie derivative of a configuration field, dispatched on its role.
pub fn lie_derivative_with(field: &Field, gen: &SymmetryGenerator, calc: &mut dyn Calculus) -> TensorField {
    match &field.role {
        Role::Metric | Role::Particle => ops::lie_tensor(&field.tensor, &gen.xi, calc),
        Role::Connection => ops::lie_connection(&field.tensor, &gen.xi, calc),
        Role::Gauge(alg) => {
            let xg: Vec<Expr> = (0..alg.dim()).map(|k| gen.gauge_component(k)).collect();
            ops::lie_gauge(&field.tensor, &gen.xi, &xg, alg, calc)
        }
    }
}

pub fn lie_derivative(field: &Field, gen: &SymmetryGenerator, config: &FieldConfig) -> TensorField {
    lie_derivative_with(field, gen, &mut config.calculus())
}

/// Largest |value| of the expressions over the points.
pub fn max_abs(exprs: &[Expr], cfg: &FieldConfig, points: &[Vec<f64>]) -> Result<f64, EvalError> {
    if exprs.iter().all(Expr::is_zero) {
        return Ok(0.0);
    }
    let tape = Tape::compile(exprs);
    let mut worst: f64 = 0.0;
    for p in points {
        for v in tape.eval_env(&cfg.env_at(p))? {
            worst = worst.max(v.abs());
        }
    }
    Ok(worst)
}
