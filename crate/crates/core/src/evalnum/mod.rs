//! Numeric back end: surface quadrature, Stokes checks, the solution
//! library and relative conserved quantities.

mod library;
mod quad;
mod quantity;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::augment::AugmentError;
use crate::geom::{FieldConfig, FieldFileError, GeomError};
use crate::noether::{Degree, HorizontalForm, NoetherError};
use crate::symker::{Chart, EvalError, Expr};

pub use library::{resolve, solution, solution_ids, solution_library, solution_source, with_levi_civita, with_params};
pub use quad::{
    default_order, rule, stokes_check, surface_integral, Integral, StokesReport, SurfaceKind, SurfaceSpec, DEFAULT_ORDER,
    MIN_ORDER, REFINE,
};
pub use quantity::{el_residual, prepare, quantity, relative_quantity, richardson, QuantityReport, RadiusRow, EL_WARN};

#[derive(Debug, Error)]
pub enum EvalnumError {
    #[error("integrand is singular on {surface}: {source}")]
    SingularSurface { surface: String, source: EvalError },
    #[error("surface integrals need an (m−2)-form, got {0:?}")]
    Degree(Degree),
    #[error("a {surface:?} surface needs a chart (t, r, ...) of dimension {}, got {dim}", if matches!(surface, SurfaceKind::Sphere) { 4 } else { 3 })]
    SurfaceChart { surface: SurfaceKind, dim: usize },
    #[error("quadrature order {0} is below the minimum of 8")]
    Order(usize),
    #[error("unknown solution `{0}`")]
    UnknownSolution(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("quantity is not finite")]
    NonFinite,
    #[error(transparent)]
    File(#[from] FieldFileError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Noether(#[from] NoetherError),
    #[error(transparent)]
    Augment(#[from] AugmentError),
}

impl EvalnumError {
    fn singular(surface: &SurfaceSpec, source: EvalError) -> EvalnumError {
        EvalnumError::SingularSurface { surface: surface.to_string(), source }
    }
}

/// The bare chart (t, r, θ, φ) used by the Stokes suite.
pub fn shell_chart() -> FieldConfig {
    let chart = Chart::new(&["t", "r", "theta", "phi"])
        .expect("chart")
        .with_ranges(&[(-1.0, 1.0), (1.0, 2.0), (0.3, 2.8), (0.0, 6.28)]);
    FieldConfig::new("shell", chart, Default::default(), Vec::new()).expect("empty configuration")
}

/// A random codim-2 form on the shell chart with polynomial coefficients in
/// t, r, cos θ, sin θ, cos φ, sin φ. U^{02} carries a factor sin θ so the
/// pole terms of Stokes' theorem vanish.
pub fn random_shell_form(seed: u64) -> HorizontalForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t, r, th, ph) = (Expr::sym("t"), Expr::sym("r"), Expr::sym("theta"), Expr::sym("phi"));
    let atoms = [t, r, th.cos(), th.sin(), ph.cos(), ph.sin()];
    let mut poly = || {
        let mut terms = vec![Expr::float(rng.gen_range(-1.0..1.0))];
        for _ in 0..4 {
            let c = Expr::float(rng.gen_range(-1.0..1.0));
            let a = atoms[rng.gen_range(0..atoms.len())].clone();
            let b = atoms[rng.gen_range(0..atoms.len())].clone();
            let e = rng.gen_range(1..3);
            terms.push(c.mul(&a.powi(e)).mul(&b));
        }
        Expr::sum(terms)
    };
    let sin = Expr::sym("theta").sin();
    HorizontalForm::codim2(4, |mu, nu| match (mu, nu) {
        (0, 2) => sin.mul(&poly()),
        _ => poly(),
    })
}

#[cfg(test)]
mod tests;
