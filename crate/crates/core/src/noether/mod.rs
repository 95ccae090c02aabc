//! Theory catalog and the variational machinery on jets: momenta,
//! Euler–Lagrange expressions, Poincaré–Cartan contractions, Noether
//! currents, work forms, superpotentials and the symplectic form.
//!
//! Every theory is described once by its density as a function of the
//! fields. The density is evaluated on formal jet symbols to obtain the
//! momenta, which are then pulled back to a concrete configuration.

mod describe;
mod engine;
mod form;
mod jet;
mod theories;
mod theory;

use thiserror::Error;

use crate::geom::{
    covariant_derivative, FieldConfig, RoleKind, SymmetryGenerator, Calculus,
};
use crate::symker::Expr;

pub use describe::{describe, CatalogRow, Description, Momentum};
pub use engine::{delta, Analysis, Deformation, EPS};
pub use form::{Degree, HorizontalForm};
pub use jet::{independent_components, sym_multi_indices, JetModel, TotalCalculus};
pub use theories::{hilbert_alpha_tilde, ChernSimons, CurvatureInvariant, EinsteinFirstOrder, FTheory, Hilbert, Palatini, YangMills};
pub use theory::{FieldSet, Locality, Theory, TheoryEntry};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoetherError {
    #[error("configuration has no {0} field")]
    MissingField(&'static str),
    #[error("theory `{theory}` needs a {need}-dimensional chart, got {got}")]
    ChartDim { theory: String, need: usize, got: usize },
    #[error("theory `{0}` has no registered superpotential")]
    NoSuperpotential(String),
    #[error("generator depends on `{0}`, which is not a coordinate or parameter")]
    FieldDependentGenerator(String),
    #[error("deformation does not match the configuration fields")]
    Shape,
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("theory `{0}` has no registered correction term")]
    NoAlpha(String),
    #[error("form of degree {0:?} has no formal divergence")]
    Degree(Degree),
}

/// All theories, in catalog order.
pub fn catalog() -> Vec<TheoryEntry> {
    let f = FTheory::default_f();
    vec![
        TheoryEntry::new(Hilbert),
        TheoryEntry::new(Palatini),
        TheoryEntry::new(EinsteinFirstOrder),
        TheoryEntry::new(ChernSimons),
        TheoryEntry::new(FTheory::new(CurvatureInvariant::Scalar, f.clone())),
        TheoryEntry::new(FTheory::new(CurvatureInvariant::RicciSquared, f.clone())),
        TheoryEntry::new(FTheory::new(CurvatureInvariant::RiemannSquared, f)),
        TheoryEntry::new(YangMills),
        TheoryEntry::new(crate::mech::SpringPair),
    ]
}

/// Catalog entries are cached per thread so repeated lookups reuse jet models.
pub fn lookup(name: &str) -> Result<TheoryEntry, NoetherError> {
    thread_local! {
        static CATALOG: Vec<TheoryEntry> = catalog();
    }
    CATALOG.with(|c| c.iter().find(|e| e.name() == name).cloned()).ok_or_else(|| NoetherError::UnknownTheory(name.to_string()))
}

/// An f-family entry with a user supplied f(x).
pub fn f_theory(invariant: CurvatureInvariant, f: Expr) -> TheoryEntry {
    TheoryEntry::new(FTheory::new(invariant, f))
}

pub fn lagrangian_density(theory: &TheoryEntry, cfg: &FieldConfig) -> Result<Expr, NoetherError> {
    Ok(Analysis::new(theory, cfg)?.lagrangian)
}

pub fn pc_contract(theory: &TheoryEntry, cfg: &FieldConfig, x: &Deformation) -> Result<HorizontalForm, NoetherError> {
    x.check(cfg)?;
    Ok(Analysis::new(theory, cfg)?.pc_deformation(x))
}

pub fn noether_current(theory: &TheoryEntry, cfg: &FieldConfig, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
    Ok(Analysis::new(theory, cfg)?.noether_current(gen))
}

pub fn work_form(theory: &TheoryEntry, cfg: &FieldConfig, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
    Ok(Analysis::new(theory, cfg)?.work(gen))
}

pub fn covariance_residual(theory: &TheoryEntry, cfg: &FieldConfig, gen: &SymmetryGenerator) -> Result<Expr, NoetherError> {
    Ok(Analysis::new(theory, cfg)?.covariance_residual(gen))
}

/// Div of an (m−1)- or (m−2)-form, using total derivatives in the chart.
pub fn formal_divergence(form: &HorizontalForm, cfg: &FieldConfig) -> Result<HorizontalForm, NoetherError> {
    if form.degree() == Degree::Top {
        return Err(NoetherError::Degree(Degree::Top));
    }
    Ok(form.divergence(&mut cfg.calculus()))
}

pub fn superpotential(theory: &TheoryEntry, cfg: &FieldConfig, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
    Analysis::new(theory, cfg)?.superpotential(gen)
}

pub fn reduced_current(theory: &TheoryEntry, cfg: &FieldConfig, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
    Analysis::new(theory, cfg)?.reduced_current(gen)
}

pub fn bianchi_residual(theory: &TheoryEntry, cfg: &FieldConfig, gen: &SymmetryGenerator) -> Result<Expr, NoetherError> {
    Analysis::new(theory, cfg)?.bianchi(gen)
}

pub fn symplectic_form(
    theory: &TheoryEntry,
    cfg: &FieldConfig,
    x: &Deformation,
    gen: &SymmetryGenerator,
) -> Result<HorizontalForm, NoetherError> {
    Analysis::new(theory, cfg)?.symplectic_form(x, gen)
}

pub fn corrected_variation(
    theory: &TheoryEntry,
    cfg: &FieldConfig,
    x: &Deformation,
    gen: &SymmetryGenerator,
) -> Result<HorizontalForm, NoetherError> {
    Analysis::new(theory, cfg)?.corrected_variation(x, gen)
}

/// Palatini plus the divergence of the non-metricity trace
/// β^μ = √g g^{μλ} g^{ab} ∇_λ g_{ab}. Used to check that the corrected
/// variation does not see divergence terms.
pub struct PalatiniWithDivergence;

impl PalatiniWithDivergence {
    pub fn beta(y: &FieldSet, calc: &mut dyn Calculus) -> Vec<Expr> {
        let m = y.m;
        let met = theories::Metric::of(y);
        let ng = covariant_derivative(&met.g, y.connection(), calc);
        let tr: Vec<Expr> = (0..m)
            .map(|l| {
                let mut t = Vec::new();
                for a in 0..m {
                    for b in 0..m {
                        let gi = met.ginv.at(&[a, b]);
                        if !gi.is_zero() {
                            t.push(gi.mul(ng.at(&[a, b, l])));
                        }
                    }
                }
                Expr::sum(t)
            })
            .collect();
        (0..m)
            .map(|mu| met.sqrt_g.mul(&Expr::sum((0..m).map(|l| met.ginv.at(&[mu, l]).mul(&tr[l])))))
            .collect()
    }
}

impl Theory for PalatiniWithDivergence {
    fn name(&self) -> &str {
        "palatini_plus_divergence"
    }

    fn description(&self) -> String {
        "Palatini Lagrangian plus the divergence of the non-metricity trace".into()
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Metric, RoleKind::Connection]
    }

    fn order(&self) -> usize {
        2
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let beta = Self::beta(y, calc);
        let div = Expr::sum(beta.iter().enumerate().map(|(mu, b)| calc.d(b, mu)));
        Palatini.density(y, calc).add(&div)
    }
}

pub fn palatini_with_divergence() -> TheoryEntry {
    TheoryEntry::new(PalatiniWithDivergence)
}

#[cfg(test)]
mod tests;
