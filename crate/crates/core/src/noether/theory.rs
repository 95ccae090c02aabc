use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::geom::{Calculus, FieldConfig, GaugeAlgebra, RoleKind, SymmetryGenerator, TensorField};
use crate::symker::Expr;

use super::jet::{JetModel, ModelKey, SharedModel};
use super::NoetherError;

/// Which generators the covariance identity holds for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locality {
    /// any ξ^μ(x), ξ^A(x)
    Covariant,
    /// ξ^μ affine in the chart coordinates (local Lagrangians built from Γ(g))
    Affine,
    /// ξ^μ arbitrary, ξ^A constant
    ConstantGauge,
    /// constant time translations
    ConstantTime,
}

impl Locality {
    pub fn describe(self) -> &'static str {
        match self {
            Locality::Covariant => "covariant",
            Locality::Affine => "local (affine generators)",
            Locality::ConstantGauge => "local (constant gauge generators)",
            Locality::ConstantTime => "mechanics (constant time translations)",
        }
    }
}

/// Fields handed to a theory, in the order of [`Theory::fields`]. Components
/// are either coordinate expressions or formal jet symbols.
#[derive(Clone, Debug)]
pub struct FieldSet {
    pub m: usize,
    pub kinds: Vec<RoleKind>,
    pub tensors: Vec<TensorField>,
    pub algebra: Option<GaugeAlgebra>,
    pub det_sign: f64,
}

impl FieldSet {
    pub fn get(&self, kind: RoleKind) -> &TensorField {
        let i = self.kinds.iter().position(|k| *k == kind).unwrap_or_else(|| panic!("no {} field", kind.name()));
        &self.tensors[i]
    }

    pub fn metric(&self) -> &TensorField {
        self.get(RoleKind::Metric)
    }

    pub fn connection(&self) -> &TensorField {
        self.get(RoleKind::Connection)
    }

    pub fn gauge(&self) -> &TensorField {
        self.get(RoleKind::Gauge)
    }

    pub fn particle(&self) -> &TensorField {
        self.get(RoleKind::Particle)
    }

    pub fn algebra(&self) -> &GaugeAlgebra {
        self.algebra.as_ref().expect("theory has no gauge field")
    }

    /// The theory's fields read off a configuration.
    pub fn from_config(kinds: &[RoleKind], cfg: &FieldConfig) -> Result<FieldSet, NoetherError> {
        let mut tensors = Vec::new();
        let mut algebra = None;
        for &k in kinds {
            let f = cfg.field(k).map_err(|_| NoetherError::MissingField(k.name()))?;
            if let Some(a) = f.algebra() {
                algebra = Some(a.clone());
            }
            tensors.push(f.tensor.clone());
        }
        Ok(FieldSet { m: cfg.dim(), kinds: kinds.to_vec(), tensors, algebra, det_sign: cfg.det_sign() })
    }
}

pub trait Theory: Send + Sync {
    fn name(&self) -> &str;

    fn description(&self) -> String;

    /// Field roles consumed, in the order used by [`FieldSet`].
    fn fields(&self) -> Vec<RoleKind>;

    /// Background fields enter the identities but not the field equations
    /// used for on-shell checks.
    fn is_dynamical(&self, _kind: RoleKind) -> bool {
        true
    }

    /// Lagrangian order k.
    fn order(&self) -> usize;

    fn locality(&self) -> Locality {
        Locality::Covariant
    }

    /// Required chart dimension, if any.
    fn chart_dim(&self) -> Option<usize> {
        None
    }

    /// 𝓛 with L = 𝓛 ds.
    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr;

    /// Closed-form superpotential U^{μν}.
    fn superpotential(&self, _y: &FieldSet, _gen: &SymmetryGenerator, _calc: &mut dyn Calculus) -> Option<Vec<Vec<Expr>>> {
        None
    }

    /// Poincaré–Cartan contraction in the form printed for this theory.
    /// `y_eps` carries y + εX with ε the symbol [`super::EPS`].
    fn printed_pc(&self, _y: &FieldSet, _y_eps: &FieldSet, _calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        None
    }

    /// Correction term α^μ(y, ȳ) of the augmented Lagrangian.
    fn alpha(&self, _y: &FieldSet, _vac: &FieldSet, _calc: &mut dyn Calculus) -> Option<Vec<Expr>> {
        None
    }

    /// Human-readable density for `describe`.
    fn formula(&self) -> String {
        String::new()
    }
}

/// A catalog record: a theory plus its cached jet models.
#[derive(Clone)]
pub struct TheoryEntry {
    theory: Arc<dyn Theory>,
    models: Arc<Mutex<HashMap<ModelKey, SharedModel>>>,
}

impl fmt::Debug for TheoryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TheoryEntry({})", self.theory.name())
    }
}

impl TheoryEntry {
    pub fn new(theory: impl Theory + 'static) -> TheoryEntry {
        TheoryEntry { theory: Arc::new(theory), models: Arc::default() }
    }

    pub fn theory(&self) -> &dyn Theory {
        &*self.theory
    }

    pub fn name(&self) -> &str {
        self.theory.name()
    }

    pub fn order(&self) -> usize {
        self.theory.order()
    }

    pub fn fields(&self) -> Vec<RoleKind> {
        self.theory.fields()
    }

    pub fn locality(&self) -> Locality {
        self.theory.locality()
    }

    pub(crate) fn model(&self, cfg: &FieldConfig) -> Result<SharedModel, NoetherError> {
        let kinds = self.theory.fields();
        if let Some(need) = self.theory.chart_dim() {
            if cfg.dim() != need {
                return Err(NoetherError::ChartDim { theory: self.name().to_string(), need, got: cfg.dim() });
            }
        }
        let mut algebra = None;
        let mut particle_size = 0;
        for &k in &kinds {
            let f = cfg.field(k).map_err(|_| NoetherError::MissingField(k.name()))?;
            if let Some(a) = f.algebra() {
                algebra = Some(a.clone());
            }
            if k == RoleKind::Particle {
                particle_size = f.tensor.shape().first().copied().unwrap_or(1);
            }
        }
        let key = ModelKey {
            m: cfg.dim(),
            algebra: algebra.as_ref().map(|a: &GaugeAlgebra| a.name.clone()),
            particle_size,
            det_sign: if cfg.det_sign() < 0.0 { -1 } else { 1 },
            coords: cfg.chart.coords().to_vec(),
        };
        if let Some(m) = self.models.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let model = Arc::new(JetModel::build(&*self.theory, &key, algebra.as_ref()));
        self.models.lock().unwrap().insert(key, model.clone());
        Ok(model)
    }
}
