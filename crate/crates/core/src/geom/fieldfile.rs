//! Field-definition files (TOML).
//!
//! ```toml
//! name = "schwarzschild"
//! description = "exterior Schwarzschild metric"
//! intended_theory = "hilbert"     # optional
//! off_shell = false               # true for configurations that are not solutions by design
//!
//! [chart]
//! coords = ["t", "r", "theta", "phi"]
//! ranges = [[-1.0, 1.0], [4.0, 20.0], [0.3, 2.8], [0.0, 6.28]]   # sampling box
//! signature = "-+++"              # optional
//!
//! [params]
//! M = 1.0
//!
//! [[fields]]
//! name = "g"
//! role = "metric"                 # metric | connection | gauge | particle
//! [fields.components]             # sparse; missing entries are 0
//! "t,t" = "-(1 - 2*M/r)"
//! "r,r" = "1/(1 - 2*M/r)"
//! ```
//!
//! Index keys are comma separated; spacetime slots accept coordinate names
//! or integers, algebra slots integers. Metric entries are mirrored across
//! the diagonal and connection entries across their two lower indices, so
//! only one of each pair needs to be given. Gauge fields take
//! `algebra = "so3" | "abelian:n"` and have index structure A^a_μ (key
//! `"a,mu"`); particles take `size = n` (key `"i"`).

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::symker::{parse, Chart, ChartError, Expr, ParseError};

use super::algebra::{AlgebraError, GaugeAlgebra};
use super::config::{Field, FieldConfig, GeomError, Role};
use super::tensor::{Slot, TensorField};

#[derive(Debug, Error)]
pub enum FieldFileError {
    #[error("invalid field file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("field `{field}` component `{key}`: {source}")]
    Expr { field: String, key: String, source: ParseError },
    #[error("field `{field}`: bad index key `{key}`")]
    Key { field: String, key: String },
    #[error("field `{field}`: unknown role `{role}`")]
    Role { field: String, role: String },
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("chart ranges must have one [lo, hi] pair per coordinate")]
    Ranges,
    #[error("{0}")]
    Io(String),
}

#[derive(Deserialize)]
struct FileChart {
    coords: Vec<String>,
    ranges: Option<Vec<[f64; 2]>>,
    signature: Option<String>,
}

#[derive(Deserialize)]
struct FileField {
    name: String,
    role: String,
    algebra: Option<String>,
    size: Option<usize>,
    #[serde(default)]
    components: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct File {
    name: String,
    #[serde(default)]
    description: String,
    intended_theory: Option<String>,
    #[serde(default)]
    off_shell: bool,
    chart: FileChart,
    #[serde(default)]
    params: BTreeMap<String, f64>,
    #[serde(default)]
    fields: Vec<FileField>,
}

fn parse_key(key: &str, chart: &Chart, slots: &[Slot]) -> Option<Vec<usize>> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    if parts.len() != slots.len() {
        return None;
    }
    parts
        .iter()
        .zip(slots)
        .map(|(p, s)| {
            let i = match p.parse::<usize>() {
                Ok(i) => i,
                Err(_) if !matches!(s, Slot::Alg(_)) => chart.index_of(p).ok()?,
                Err(_) => return None,
            };
            let bound = match s {
                Slot::Alg(n) => *n,
                _ => chart.dim(),
            };
            (i < bound).then_some(i)
        })
        .collect()
}

pub fn parse_field_file(text: &str) -> Result<FieldConfig, FieldFileError> {
    let f: File = toml::from_str(text)?;
    let names: Vec<&str> = f.chart.coords.iter().map(String::as_str).collect();
    let mut chart = Chart::new(&names)?;
    if let Some(r) = &f.chart.ranges {
        if r.len() != chart.dim() {
            return Err(FieldFileError::Ranges);
        }
        chart = chart.with_ranges(&r.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>());
    }
    if let Some(s) = &f.chart.signature {
        chart = chart.with_signature(s);
    }
    let m = chart.dim();
    let params: Vec<&str> = f.params.keys().map(String::as_str).collect();
    let mut fields = Vec::new();
    for ff in &f.fields {
        let (role, slots, mirror): (Role, Vec<Slot>, Option<(usize, usize)>) = match ff.role.as_str() {
            "metric" => (Role::Metric, vec![Slot::Down, Slot::Down], Some((0, 1))),
            "connection" => (Role::Connection, vec![Slot::Up, Slot::Down, Slot::Down], Some((1, 2))),
            "gauge" => {
                let alg = GaugeAlgebra::by_name(ff.algebra.as_deref().unwrap_or("abelian:1"))?;
                let n = alg.dim();
                (Role::Gauge(alg), vec![Slot::Alg(n), Slot::Down], None)
            }
            "particle" => (Role::Particle, vec![Slot::Alg(ff.size.unwrap_or(1))], None),
            other => return Err(FieldFileError::Role { field: ff.name.clone(), role: other.into() }),
        };
        let mut t = TensorField::zeros(m, slots.clone());
        for (key, src) in &ff.components {
            let idx = parse_key(key, &chart, &slots).ok_or_else(|| FieldFileError::Key { field: ff.name.clone(), key: key.clone() })?;
            let e: Expr = parse(src, &chart, &params).map_err(|source| FieldFileError::Expr {
                field: ff.name.clone(),
                key: key.clone(),
                source,
            })?;
            if let Some((a, b)) = mirror {
                let mut j = idx.clone();
                j.swap(a, b);
                if j != idx && !ff.components.keys().any(|k| parse_key(k, &chart, &slots).as_ref() == Some(&j)) {
                    t.set(&j, e.clone());
                }
            }
            t.set(&idx, e);
        }
        fields.push(Field { name: ff.name.clone(), role, tensor: t });
    }
    let mut cfg = FieldConfig::new(&f.name, chart, f.params.clone(), fields)?;
    cfg.description = f.description;
    cfg.intended_theory = f.intended_theory;
    cfg.off_shell = f.off_shell;
    Ok(cfg)
}

pub fn load_field_file(path: &std::path::Path) -> Result<FieldConfig, FieldFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| FieldFileError::Io(format!("{}: {e}", path.display())))?;
    parse_field_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE: &str = r#"
name = "sphere"
[chart]
coords = ["theta", "phi"]
ranges = [[0.3, 2.8], [0.0, 6.0]]
[[fields]]
name = "g"
role = "metric"
[fields.components]
"theta,theta" = "1"
"1,1" = "sin(theta)^2"
"#;

    #[test]
    fn parses_sparse_components() {
        let c = parse_field_file(SPHERE).unwrap();
        let g = &c.fields[0].tensor;
        assert!(g.at(&[0, 1]).is_zero());
        assert_eq!(c.det_sign(), 1.0);
    }

    #[test]
    fn reports_bad_components() {
        let bad = SPHERE.replace("sin(theta)^2", "sin(psi)");
        assert!(matches!(parse_field_file(&bad), Err(FieldFileError::Expr { .. })));
        let bad = SPHERE.replace("\"1,1\"", "\"1,7\"");
        assert!(matches!(parse_field_file(&bad), Err(FieldFileError::Key { .. })));
    }
}
