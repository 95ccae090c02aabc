use std::path::Path;

use crate::geom::{christoffel, inverse_metric, parse_field_file, Field, FieldConfig, Role, RoleKind};

use super::EvalnumError;

macro_rules! solutions {
    ($($id:literal),* $(,)?) => {
        const FILES: &[(&str, &str)] = &[$(($id, include_str!(concat!("../../data/solutions/", $id, ".toml")))),*];
    };
}

solutions!(
    "minkowski-cartesian",
    "minkowski-spherical",
    "schwarzschild",
    "de-sitter",
    "abelian-flat",
    "abelian-vacuum",
    "monopole",
    "coulomb",
    "so3-pure-gauge",
    "so3-sample",
    "cs-flat",
);

pub fn solution_ids() -> Vec<&'static str> {
    FILES.iter().map(|(id, _)| *id).collect()
}

/// The shipped field-definition file for `id`.
pub fn solution_source(id: &str) -> Option<&'static str> {
    FILES.iter().find(|(k, _)| *k == id).map(|(_, s)| *s)
}

pub fn solution(id: &str) -> Result<FieldConfig, EvalnumError> {
    let src = solution_source(id).ok_or_else(|| EvalnumError::UnknownSolution(id.to_string()))?;
    Ok(parse_field_file(src)?)
}

pub fn solution_library() -> Vec<FieldConfig> {
    FILES.iter().map(|(_, s)| parse_field_file(s).expect("shipped solution files parse")).collect()
}

/// A library id, or else a path to a field-definition file.
pub fn resolve(id_or_path: &str) -> Result<FieldConfig, EvalnumError> {
    if let Some(src) = solution_source(id_or_path) {
        return Ok(parse_field_file(src)?);
    }
    let p = Path::new(id_or_path);
    if p.exists() {
        return Ok(crate::geom::load_field_file(p)?);
    }
    Err(EvalnumError::UnknownSolution(id_or_path.to_string()))
}

/// Overrides parameter values.
pub fn with_params(cfg: &FieldConfig, params: &[(&str, f64)]) -> Result<FieldConfig, EvalnumError> {
    let mut c = cfg.clone();
    for (k, v) in params {
        match c.params.get_mut(*k) {
            Some(x) => *x = *v,
            None => return Err(EvalnumError::UnknownParam(k.to_string())),
        }
    }
    Ok(c)
}

/// Adds the Levi-Civita connection of the metric when the configuration has
/// none, so metric solutions can be fed to connection theories.
pub fn with_levi_civita(cfg: &FieldConfig) -> Result<FieldConfig, EvalnumError> {
    if cfg.field(RoleKind::Connection).is_ok() {
        return Ok(cfg.clone());
    }
    let g = cfg.tensor(RoleKind::Metric)?;
    let gamma = christoffel(g, &inverse_metric(g), &mut cfg.calculus());
    let mut fields = cfg.fields.clone();
    fields.push(Field { name: "Gamma".into(), role: Role::Connection, tensor: gamma });
    let mut c = FieldConfig::new(&cfg.name, cfg.chart.clone(), cfg.params.clone(), fields)?;
    c.description = cfg.description.clone();
    c.intended_theory = cfg.intended_theory.clone();
    c.off_shell = cfg.off_shell;
    Ok(c)
}
