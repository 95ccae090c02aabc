use serde::Serialize;

use crate::geom::{FieldConfig, RoleKind};
use crate::symker::Expr;

use super::{Analysis, NoetherError, TheoryEntry};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogRow {
    pub name: String,
    pub group: &'static str,
    pub fields: Vec<&'static str>,
    pub order: usize,
    pub locality: &'static str,
    pub formula: String,
}

impl CatalogRow {
    pub fn of(entry: &TheoryEntry) -> CatalogRow {
        let t = entry.theory();
        CatalogRow {
            name: entry.name().to_string(),
            group: if t.chart_dim() == Some(1) { "mechanics" } else { "field theory" },
            fields: entry.fields().iter().map(|k| k.name()).collect(),
            order: entry.order(),
            locality: entry.locality().describe(),
            formula: t.formula(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Momentum {
    /// e.g. `p[g_t,t]^{r,r}`
    pub label: String,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Description {
    #[serde(flatten)]
    pub row: CatalogRow,
    pub description: String,
    pub pc_morphism: String,
    pub has_printed_pc: bool,
    /// configuration the expressions below are evaluated on
    pub configuration: Option<String>,
    pub lagrangian: Option<String>,
    pub momenta: Vec<Momentum>,
}

fn pc_text(order: usize) -> &'static str {
    match order {
        0 => "pc = 0",
        1 => "pc = p_i^mu delta y^i ds_mu",
        _ => "pc = ((p_i^mu - d_nu p_i^{mu nu}) delta y^i + p_i^{mu nu} d_nu delta y^i) ds_mu",
    }
}

fn component_label(kind: RoleKind, name: &str, idx: &[usize], coords: &[String]) -> String {
    let parts: Vec<String> = idx
        .iter()
        .enumerate()
        .map(|(s, &i)| match (kind, s) {
            (RoleKind::Gauge, 0) | (RoleKind::Particle, _) => i.to_string(),
            _ => coords[i].clone(),
        })
        .collect();
    format!("{name}_{}", parts.join(","))
}

/// Catalog data for `entry`; with a configuration, also the Lagrangian
/// density and the nonzero momenta evaluated on it.
pub fn describe(entry: &TheoryEntry, cfg: Option<&FieldConfig>) -> Result<Description, NoetherError> {
    let t = entry.theory();
    let mut d = Description {
        row: CatalogRow::of(entry),
        description: t.description(),
        pc_morphism: pc_text(entry.order()).to_string(),
        has_printed_pc: false,
        configuration: None,
        lagrangian: None,
        momenta: Vec::new(),
    };
    let Some(cfg) = cfg else {
        return Ok(d);
    };
    let mut a = Analysis::new(entry, cfg)?;
    let coords: Vec<String> = cfg.chart.coords().iter().map(|s| s.to_string()).collect();
    let simp = |e: &Expr| e.simplify().to_string();
    d.configuration = Some(cfg.name.clone());
    d.lagrangian = Some(simp(&super::lagrangian_density(entry, cfg)?));
    d.has_printed_pc = a.printed_pc(&super::Deformation::zero(cfg)).is_some();
    let (p0, p1, p2) = a.momenta();
    for (f, kind) in entry.fields().into_iter().enumerate() {
        let name = cfg.field(kind).map(|x| x.name.clone()).unwrap_or_else(|_| kind.name().to_string());
        for (c, idx) in a.components()[f].iter().enumerate() {
            let lab = component_label(kind, &name, idx, &coords);
            let mut push = |sup: String, e: &Expr| {
                if !e.simplify().is_zero() {
                    d.momenta.push(Momentum { label: format!("p[{lab}]{sup}"), expr: simp(e) });
                }
            };
            push(String::new(), &p0[f][c]);
            for (mu, e) in p1[f][c].iter().enumerate() {
                push(format!("^{{{}}}", coords[mu]), e);
            }
            for mu in 0..coords.len() {
                for nu in mu..coords.len() {
                    push(format!("^{{{},{}}}", coords[mu], coords[nu]), &p2[f][c][mu][nu]);
                }
            }
        }
    }
    Ok(d)
}
