use serde::Serialize;

use crate::augment::{separate_params, AugmentedTheory};
use crate::geom::{FieldConfig, RoleKind, SymmetryGenerator};
use crate::noether::{Analysis, TheoryEntry};

use super::library::with_levi_civita;
use super::quad::{surface_integral, SurfaceSpec};
use super::EvalnumError;

/// Threshold above which inputs are reported as non-solutions.
pub const EL_WARN: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusRow {
    pub r: f64,
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantityReport {
    pub theory: String,
    pub solution: String,
    pub vacuum: String,
    pub generator: String,
    pub surface: SurfaceSpec,
    /// the surface value, or the extrapolated limit when radii are given
    pub value: f64,
    pub error: f64,
    pub radii: Vec<RadiusRow>,
    pub warnings: Vec<String>,
}

impl QuantityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Value at 1/r = 0 of the polynomial in 1/r through the last three
/// (or fewer) points.
pub fn richardson(rows: &[(f64, f64)]) -> f64 {
    let pts = &rows[rows.len().saturating_sub(3)..];
    let x: Vec<f64> = pts.iter().map(|(r, _)| 1.0 / r).collect();
    let mut s = 0.0;
    for (i, (_, v)) in pts.iter().enumerate() {
        let mut l = 1.0;
        for j in 0..pts.len() {
            if j != i {
                l *= x[j] / (x[j] - x[i]);
            }
        }
        s += v * l;
    }
    s
}

/// Largest Euler–Lagrange residual of the theory's dynamical fields at
/// sample points.
pub fn el_residual(theory: &TheoryEntry, cfg: &FieldConfig) -> Result<f64, EvalnumError> {
    let el = Analysis::new(theory, cfg)?.dynamical_el();
    Ok(cfg.residual(&el, 5, 19)?)
}

/// Supplies the Levi-Civita connection when the theory needs one.
pub fn prepare(theory: &TheoryEntry, cfg: &FieldConfig) -> Result<FieldConfig, EvalnumError> {
    if theory.fields().contains(&RoleKind::Connection) {
        with_levi_civita(cfg)
    } else {
        Ok(cfg.clone())
    }
}

pub fn relative_quantity(
    theory: &TheoryEntry,
    solution: &FieldConfig,
    vacuum: &FieldConfig,
    gen: &SymmetryGenerator,
    surface: &SurfaceSpec,
) -> Result<QuantityReport, EvalnumError> {
    quantity(&AugmentedTheory::new(theory), solution, vacuum, gen, surface, &[])
}

/// ∮ U(l) over `surface`, or over the same surface at each radius with a
/// Richardson limit.
pub fn quantity(
    aug: &AugmentedTheory,
    solution: &FieldConfig,
    vacuum: &FieldConfig,
    gen: &SymmetryGenerator,
    surface: &SurfaceSpec,
    radii: &[f64],
) -> Result<QuantityReport, EvalnumError> {
    let sol = prepare(&aug.base, solution)?;
    let vac = prepare(&aug.base, vacuum)?;
    let mut warnings = Vec::new();
    for (what, c) in [("solution", &sol), ("vacuum", &vac)] {
        let r = el_residual(&aug.base, c)?;
        if r > EL_WARN {
            warnings.push(format!("{what} `{}` is not a solution of {} (EL residual {r:.3e})", c.name, aug.base.name()));
        }
    }
    let (vac_sep, at) = separate_params(&sol, &vac);
    let u = aug.augmented_superpotential(&sol, &vac_sep, gen)?;
    let mut rows = Vec::new();
    let (value, error) = if radii.is_empty() {
        let i = surface_integral(&u, &at, surface)?;
        (i.value, i.error)
    } else {
        for &r in radii {
            let i = surface_integral(&u, &at, &surface.at_radius(r))?;
            rows.push(RadiusRow { r, value: i.value, error: i.error });
        }
        let pts: Vec<(f64, f64)> = rows.iter().map(|w| (w.r, w.value)).collect();
        (richardson(&pts), rows.iter().map(|w| w.error).fold(0.0, f64::max))
    };
    if !value.is_finite() {
        return Err(EvalnumError::NonFinite);
    }
    Ok(QuantityReport {
        theory: aug.base.name().to_string(),
        solution: sol.name.clone(),
        vacuum: vac.name.clone(),
        generator: gen.describe(),
        surface: *surface,
        value,
        error,
        radii: rows,
        warnings,
    })
}
