use std::f64::consts::PI;
use std::fmt;

use gauss_quad::GaussLegendre;
use serde::Serialize;

use crate::geom::FieldConfig;
use crate::noether::{Degree, HorizontalForm};
use crate::symker::{EvalError, Expr, Tape};

use super::EvalnumError;

pub const DEFAULT_ORDER: usize = 32;
pub const MIN_ORDER: usize = 8;
/// Order increment used for the error estimate.
pub const REFINE: usize = 8;

/// Quadrature order from `AUGVAR_QUAD_ORDER`, else 32.
pub fn default_order() -> usize {
    std::env::var("AUGVAR_QUAD_ORDER").ok().and_then(|s| s.trim().parse().ok()).filter(|&n| n >= MIN_ORDER).unwrap_or(DEFAULT_ORDER)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    /// t and r fixed on a chart (t, r, θ, φ)
    Sphere,
    /// t and r fixed on a chart (t, r, φ); the φ circle, a torus once t is
    /// identified periodically
    Torus,
}

/// A closed coordinate surface with its product Gauss–Legendre rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    pub t: f64,
    pub r: f64,
    pub order: usize,
}

impl SurfaceSpec {
    pub fn sphere(t: f64, r: f64) -> SurfaceSpec {
        SurfaceSpec { kind: SurfaceKind::Sphere, t, r, order: default_order() }
    }

    pub fn torus(t: f64, r: f64) -> SurfaceSpec {
        SurfaceSpec { kind: SurfaceKind::Torus, t, r, order: default_order() }
    }

    pub fn with_order(self, order: usize) -> Result<SurfaceSpec, EvalnumError> {
        if order < MIN_ORDER {
            return Err(EvalnumError::Order(order));
        }
        Ok(SurfaceSpec { order, ..self })
    }

    pub fn at_radius(self, r: f64) -> SurfaceSpec {
        SurfaceSpec { r, ..self }
    }

    pub fn chart_dim(&self) -> usize {
        match self.kind {
            SurfaceKind::Sphere => 4,
            SurfaceKind::Torus => 3,
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Torus => "torus",
        };
        write!(f, "{k}(t={}, r={}, order={})", self.t, self.r, self.order)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Gauss–Legendre nodes and weights mapped to [a, b].
pub fn rule(order: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let gl = GaussLegendre::new(order).expect("order ≥ 2");
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    gl.as_node_weight_pairs().iter().map(|&(x, w)| (c + h * x, h * w)).collect()
}

enum Src {
    Coord(usize),
    Value(f64),
}

/// A compiled set of expressions with inputs resolved to chart slots or
/// parameter values.
pub(crate) struct PointEval {
    tape: Tape,
    src: Vec<Src>,
}

impl PointEval {
    pub(crate) fn new(exprs: &[Expr], cfg: &FieldConfig) -> Result<PointEval, EvalError> {
        let tape = Tape::compile(exprs);
        let mut src = Vec::new();
        for s in tape.inputs() {
            if let Ok(i) = cfg.chart.index_of(s) {
                src.push(Src::Coord(i));
            } else if let Some(v) = cfg.params.get(&**s) {
                src.push(Src::Value(*v));
            } else {
                return Err(EvalError::Unbound(s.to_string()));
            }
        }
        Ok(PointEval { tape, src })
    }

    pub(crate) fn eval(&self, point: &[f64]) -> Result<Vec<f64>, EvalError> {
        let x: Vec<f64> = self
            .src
            .iter()
            .map(|s| match *s {
                Src::Coord(i) => point[i],
                Src::Value(v) => v,
            })
            .collect();
        let out = self.tape.eval(&x)?;
        if out.iter().all(|v| v.is_finite()) {
            Ok(out)
        } else {
            Err(EvalError::NonFinite)
        }
    }
}

/// Σ w f over a list of points, in parallel when enabled; also returns Σ |w f|.
fn weighted_sum(eval: &PointEval, nodes: &[(Vec<f64>, f64)]) -> Result<(f64, f64), EvalError> {
    let one = |(p, w): &(Vec<f64>, f64)| eval.eval(p).map(|v| (w * v[0], (w * v[0]).abs()));
    #[cfg(feature = "parallel")]
    let parts: Vec<Result<(f64, f64), EvalError>> = {
        use rayon::prelude::*;
        nodes.par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<(f64, f64), EvalError>> = nodes.iter().map(one).collect();
    let mut s = (0.0, 0.0);
    for p in parts {
        let (a, b) = p?;
        s.0 += a;
        s.1 += b;
    }
    Ok(s)
}

fn surface_nodes(surface: &SurfaceSpec, order: usize) -> Vec<(Vec<f64>, f64)> {
    let (t, r) = (surface.t, surface.r);
    match surface.kind {
        SurfaceKind::Sphere => {
            let th = rule(order, 0.0, PI);
            let ph = rule(order, 0.0, 2.0 * PI);
            let mut out = Vec::with_capacity(order * order);
            for &(a, wa) in &th {
                for &(b, wb) in &ph {
                    out.push((vec![t, r, a, b], wa * wb));
                }
            }
            out
        }
        SurfaceKind::Torus => rule(order, 0.0, 2.0 * PI).into_iter().map(|(b, w)| (vec![t, r, b], w)).collect(),
    }
}

fn check_surface(form: &HorizontalForm, cfg: &FieldConfig, surface: &SurfaceSpec) -> Result<(), EvalnumError> {
    if form.degree() != Degree::Codim2 {
        return Err(EvalnumError::Degree(form.degree()));
    }
    if cfg.dim() != surface.chart_dim() || form.dim() != cfg.dim() {
        return Err(EvalnumError::SurfaceChart { surface: surface.kind, dim: cfg.dim() });
    }
    if surface.order < MIN_ORDER {
        return Err(EvalnumError::Order(surface.order));
    }
    Ok(())
}

/// ∮ U = ∫ U^{01} dθ dφ (sphere) or ∫ U^{01} dφ (torus), with
/// ds_{μν} = ∂_ν ⌟ ∂_μ ⌟ ds. The error is the change under order + 8,
/// floored at the rounding level of the sum.
pub fn surface_integral(form: &HorizontalForm, cfg: &FieldConfig, surface: &SurfaceSpec) -> Result<Integral, EvalnumError> {
    check_surface(form, cfg, surface)?;
    let u = form.get2(0, 1);
    if u.is_zero() {
        return Ok(Integral { value: 0.0, error: 0.0 });
    }
    let eval = PointEval::new(std::slice::from_ref(u), cfg).map_err(|e| EvalnumError::singular(surface, e))?;
    let run = |n| weighted_sum(&eval, &surface_nodes(surface, n)).map_err(|e| EvalnumError::singular(surface, e));
    let (v, abs) = run(surface.order)?;
    let (v2, _) = run(surface.order + REFINE)?;
    Ok(Integral { value: v, error: (v - v2).abs().max(8.0 * f64::EPSILON * abs) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StokesReport {
    pub outer: f64,
    pub inner: f64,
    pub volume: f64,
    /// |outer − inner − volume| / max(|outer|, |inner|, |volume|)
    pub residual: f64,
}

/// Compares ∮_{r₂} U − ∮_{r₁} U with ∫ (Div U)^0 dr dθ dφ over the shell
/// between two spheres at time t. U^{02} must vanish at the poles and
/// U^{03} be periodic in φ.
pub fn stokes_check(
    form: &HorizontalForm,
    cfg: &FieldConfig,
    t: f64,
    r_inner: f64,
    r_outer: f64,
    order: usize,
) -> Result<StokesReport, EvalnumError> {
    let s = SurfaceSpec { kind: SurfaceKind::Sphere, t, r: r_outer, order };
    check_surface(form, cfg, &s)?;
    let outer = surface_integral(form, cfg, &s)?.value;
    let inner = surface_integral(form, cfg, &s.at_radius(r_inner))?.value;
    let div = form.divergence(&mut cfg.calculus());
    let eval = PointEval::new(std::slice::from_ref(div.get(0)), cfg).map_err(|e| EvalnumError::singular(&s, e))?;
    let mut nodes = Vec::with_capacity(order * order * order);
    for (r, wr) in rule(order, r_inner, r_outer) {
        for (a, wa) in rule(order, 0.0, PI) {
            for (b, wb) in rule(order, 0.0, 2.0 * PI) {
                nodes.push((vec![t, r, a, b], wr * wa * wb));
            }
        }
    }
    let (volume, _) = weighted_sum(&eval, &nodes).map_err(|e| EvalnumError::singular(&s, e))?;
    let scale = outer.abs().max(inner.abs()).max(volume.abs());
    let residual = if scale == 0.0 { 0.0 } else { (outer - inner - volume).abs() / scale };
    Ok(StokesReport { outer, inner, volume, residual })
}
