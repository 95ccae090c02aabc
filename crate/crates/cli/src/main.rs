use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use augvar::augment::{AlphaVariant, AugmentedTheory};
use augvar::evalnum::{quantity, resolve, with_params, EvalnumError, SurfaceSpec};
use augvar::geom::{FieldConfig, SymmetryGenerator};
use augvar::mech::{boost_invariance_check, observer_energy, relative_energy, MechError, SpringSystem};
use augvar::noether::{catalog, describe, lookup, CatalogRow, NoetherError};
use augvar::suites::{run_suite, SuiteReport, SUITES};
use augvar::symker::{parse, ParseError};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "augvar", version, about = "Relative conserved quantities from augmented Lagrangians")]
struct Cli {
    /// machine-readable output on stdout
    #[arg(long, global = true)]
    json: bool,
    /// also write the JSON report to this file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the theory catalog
    Catalog,
    /// List the shipped solution library
    Solutions,
    /// Print a theory's Lagrangian, momenta and Poincaré–Cartan morphism
    Describe {
        #[arg(long)]
        theory: String,
        /// evaluate the Lagrangian and momenta on this configuration
        #[arg(long)]
        solution: Option<String>,
    },
    /// Integrate the augmented superpotential over a closed surface
    #[command(allow_negative_numbers = true)]
    Quantity(QuantityArgs),
    /// Run an identity suite, or `all`
    Verify { suite: String },
    /// Relative energy of two spring pairs and its boost table
    #[command(allow_negative_numbers = true)]
    AppendixA {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 0.0)]
        w: f64,
        #[arg(long = "a1", default_value_t = 1.0)]
        a1: f64,
        #[arg(long = "a2", default_value_t = 2.0)]
        a2: f64,
        #[arg(long, value_delimiter = ',', default_value = "0,1,5,100")]
        boosts: Vec<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Surface {
    Sphere,
    Torus,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Canonical,
    Tilde,
    OnShellGauge,
}

#[derive(clap::Args)]
struct QuantityArgs {
    #[arg(long)]
    theory: String,
    /// library id or field file
    #[arg(long)]
    solution: String,
    /// library id or field file
    #[arg(long)]
    vacuum: String,
    /// ξ^μ as comma-separated expressions; defaults to ∂_t
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// ξ^A as comma-separated expressions
    #[arg(long, allow_hyphen_values = true)]
    xi_gauge: Option<String>,
    #[arg(long, value_enum, default_value = "sphere")]
    surface: Surface,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,
    #[arg(long)]
    r: Option<f64>,
    /// radii for a Richardson limit, comma-separated
    #[arg(long, value_delimiter = ',')]
    radii: Vec<f64>,
    /// quadrature order per direction
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value = "canonical")]
    variant: Variant,
    /// override a solution parameter, NAME=VALUE
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Missing(String),
    Singular(String),
    Eval(String),
    Failed,
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Parse(_) => 2,
            CliError::Missing(_) => 3,
            CliError::Singular(_) => 4,
            CliError::Eval(_) => 5,
            CliError::Io(_) => 6,
        }
    }
}

impl From<NoetherError> for CliError {
    fn from(e: NoetherError) -> CliError {
        match e {
            NoetherError::UnknownTheory(_) => CliError::Missing(e.to_string()),
            _ => CliError::Eval(e.to_string()),
        }
    }
}

impl From<EvalnumError> for CliError {
    fn from(e: EvalnumError) -> CliError {
        match e {
            EvalnumError::SingularSurface { .. } => CliError::Singular(e.to_string()),
            EvalnumError::UnknownSolution(_) | EvalnumError::UnknownParam(_) => CliError::Missing(e.to_string()),
            EvalnumError::File(_) | EvalnumError::Order(_) => CliError::Parse(e.to_string()),
            EvalnumError::Noether(n) => n.into(),
            _ => CliError::Eval(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Parse(e.to_string())
    }
}

impl From<MechError> for CliError {
    fn from(e: MechError) -> CliError {
        match e {
            MechError::Nonpositive { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Eval(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = run(&cli.cmd).and_then(|(o, ok)| {
        if let Some(p) = &cli.out {
            let s = serde_json::to_string_pretty(&o.json).expect("json") + "\n";
            std::fs::write(p, s).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        }
        if cli.json {
            println!("{}", serde_json::to_string_pretty(&o.json).expect("json"));
        } else {
            print!("{}", o.text);
        }
        if ok {
            Ok(())
        } else {
            Err(CliError::Failed)
        }
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Failed => {}
                CliError::Parse(m) | CliError::Missing(m) | CliError::Singular(m) | CliError::Eval(m) | CliError::Io(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(cmd: &Cmd) -> Result<(Output, bool), CliError> {
    match cmd {
        Cmd::Catalog => Ok((cmd_catalog(), true)),
        Cmd::Solutions => Ok((cmd_solutions()?, true)),
        Cmd::Describe { theory, solution } => Ok((cmd_describe(theory, solution.as_deref())?, true)),
        Cmd::Quantity(a) => Ok((cmd_quantity(a)?, true)),
        Cmd::Verify { suite } => cmd_verify(suite),
        Cmd::AppendixA { m, k, w, a1, a2, boosts } => Ok((cmd_appendix_a(*m, *k, *w, *a1, *a2, boosts)?, true)),
    }
}

fn cmd_catalog() -> Output {
    let rows: Vec<CatalogRow> = catalog().iter().map(CatalogRow::of).collect();
    let mut text = String::new();
    for group in ["field theory", "mechanics"] {
        let _ = writeln!(text, "{group}:");
        for r in rows.iter().filter(|r| r.group == group) {
            let _ = writeln!(text, "  {:<22} k={}  fields: {:<28} {}", r.name, r.order, r.fields.join(", "), r.locality);
        }
    }
    Output { text, json: json!(rows) }
}

fn cmd_solutions() -> Result<Output, CliError> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for id in augvar::evalnum::solution_ids() {
        let c = resolve(id)?;
        let coords: Vec<String> = c.chart.coords().iter().map(|s| s.to_string()).collect();
        let _ = writeln!(text, "  {:<22} ({})  {}", id, coords.join(", "), c.description);
        rows.push(json!({ "id": id, "coords": coords, "description": c.description }));
    }
    Ok(Output { text, json: json!(rows) })
}

fn cmd_describe(theory: &str, solution: Option<&str>) -> Result<Output, CliError> {
    let th = lookup(theory)?;
    let cfg = solution.map(resolve).transpose()?;
    let cfg = cfg.map(|c| augvar::evalnum::prepare(&th, &c)).transpose()?;
    let d = describe(&th, cfg.as_ref())?;
    let mut text = String::new();
    let _ = writeln!(text, "{}  ({})", d.row.name, d.description);
    let _ = writeln!(text, "  L = {}", d.row.formula);
    let _ = writeln!(text, "  fields: {}   order k = {}   {}", d.row.fields.join(", "), d.row.order, d.row.locality);
    let _ = writeln!(text, "  {}", d.pc_morphism);
    if let (Some(c), Some(l)) = (&d.configuration, &d.lagrangian) {
        let _ = writeln!(text, "on {c}:");
        let _ = writeln!(text, "  L = {l}");
        for p in &d.momenta {
            let _ = writeln!(text, "  {} = {}", p.label, p.expr);
        }
    }
    Ok(Output { text, json: json!(d) })
}

fn parse_list(text: &str, cfg: &FieldConfig) -> Result<Vec<augvar::symker::Expr>, CliError> {
    let params: Vec<&str> = cfg.params.keys().map(String::as_str).collect();
    text.split(',').map(|s| Ok(parse(s.trim(), &cfg.chart, &params)?)).collect()
}

fn cmd_quantity(a: &QuantityArgs) -> Result<Output, CliError> {
    let th = lookup(&a.theory)?;
    let mut sol = resolve(&a.solution)?;
    let vac = resolve(&a.vacuum)?;
    let mut sets = Vec::new();
    for s in &a.set {
        let (k, v) = s.split_once('=').ok_or_else(|| CliError::Parse(format!("--set expects NAME=VALUE, got `{s}`")))?;
        let v: f64 = v.trim().parse().map_err(|_| CliError::Parse(format!("--set {k}: `{v}` is not a number")))?;
        sets.push((k.trim().to_string(), v));
    }
    let pairs: Vec<(&str, f64)> = sets.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    sol = with_params(&sol, &pairs)?;
    let m = sol.dim();
    let xi = match &a.xi {
        Some(s) => {
            let v = parse_list(s, &sol)?;
            if v.len() != m {
                return Err(CliError::Parse(format!("--xi needs {m} components, got {}", v.len())));
            }
            v
        }
        None => SymmetryGenerator::coordinate(m, 0).xi,
    };
    let xi_gauge = a.xi_gauge.as_deref().map(|s| parse_list(s, &sol)).transpose()?.unwrap_or_default();
    let gen = SymmetryGenerator { xi, xi_gauge };
    let r = a.r.or(a.radii.first().copied()).ok_or_else(|| CliError::Parse("give --r or --radii".into()))?;
    let mut surf = match a.surface {
        Surface::Sphere => SurfaceSpec::sphere(a.t, r),
        Surface::Torus => SurfaceSpec::torus(a.t, r),
    };
    if let Some(n) = a.order {
        surf = surf.with_order(n)?;
    }
    let variant = match a.variant {
        Variant::Canonical => AlphaVariant::Canonical,
        Variant::Tilde => AlphaVariant::Tilde,
        Variant::OnShellGauge => AlphaVariant::OnShellGauge,
    };
    let aug = AugmentedTheory::with_variant(&th, variant);
    let q = quantity(&aug, &sol, &vac, &gen, &surf, &a.radii)?;
    let mut text = String::new();
    let _ = writeln!(text, "theory     {}", q.theory);
    let _ = writeln!(text, "solution   {}", q.solution);
    let _ = writeln!(text, "vacuum     {}", q.vacuum);
    let _ = writeln!(text, "generator  {}", q.generator);
    let _ = writeln!(text, "surface    {}", q.surface);
    if !q.radii.is_empty() {
        let _ = writeln!(text, "{:>12}  {:>22}  {:>10}", "r", "value", "error");
        for row in &q.radii {
            let _ = writeln!(text, "{:>12}  {:>22.15e}  {:>10.2e}", row.r, row.value, row.error);
        }
        let _ = writeln!(text, "limit      {:.15e}", q.value);
    } else {
        let _ = writeln!(text, "value      {:.15e} ± {:.2e}", q.value, q.error);
    }
    for w in &q.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    Ok(Output { text, json: serde_json::to_value(&q).expect("json") })
}

fn cmd_verify(suite: &str) -> Result<(Output, bool), CliError> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for n in names {
        reports.push(run_suite(n).map_err(|e| CliError::Missing(e.to_string()))?);
    }
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{}: {}  max residual {:.3e}", r.suite, if r.pass() { "PASS" } else { "FAIL" }, r.max_residual());
        for c in &r.checks {
            let _ = writeln!(
                text,
                "  {}  {:<70} {:.3e} (tol {:.0e})",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance
            );
        }
        for s in &r.skipped {
            let _ = writeln!(text, "  n/a   {s}");
        }
    }
    let ok = reports.iter().all(SuiteReport::pass);
    Ok((Output { text, json: json!(reports) }, ok))
}

fn cmd_appendix_a(m: f64, k: f64, w: f64, a1: f64, a2: f64, boosts: &[f64]) -> Result<Output, CliError> {
    let s1 = SpringSystem::new(m, k, w, a1)?;
    let s2 = SpringSystem::new(m, k, w, a2)?;
    let (e1, e2) = (observer_energy(&s1)?, observer_energy(&s2)?);
    let rel = relative_energy(&s1, &s2)?;
    let table = boost_invariance_check(&s1, &s2, boosts)?;
    let mut text = String::new();
    let _ = writeln!(text, "omega^2    {}", s1.omega2());
    let _ = writeln!(text, "E1         {e1}");
    let _ = writeln!(text, "E2         {e2}");
    let _ = writeln!(text, "E2 - E1    {}", e2 - e1);
    let _ = writeln!(text, "m(A2^2 - A1^2) omega^2 = {rel}");
    let _ = writeln!(text, "{:>10}  {:>22}", "boost", "E2 - E1");
    for (b, v) in table.boosts.iter().zip(&table.values) {
        let _ = writeln!(text, "{b:>10}  {v:>22}");
    }
    let _ = writeln!(text, "spread     {:e}", table.spread);
    let json = json!({
        "omega2": s1.omega2(),
        "e1": e1,
        "e2": e2,
        "difference": e2 - e1,
        "relative_energy": rel,
        "boosts": table.boosts,
        "boosted_differences": table.values,
        "spread": table.spread,
    });
    Ok(Output { text, json })
}
