mod gauge;
mod gravity;
mod higher;

pub use gauge::{ChernSimons, YangMills};
pub use gravity::{hilbert_alpha_tilde, EinsteinFirstOrder, Hilbert, Palatini};
pub use higher::{CurvatureInvariant, FTheory};

use crate::geom::{christoffel, inverse_metric, sqrt_det, Calculus, Slot, TensorField};
use crate::symker::Expr;

use super::engine::delta;
use super::theory::FieldSet;

/// g^{-1}, √|g| and the Levi-Civita connection of the metric field.
pub(crate) struct Metric {
    pub g: TensorField,
    pub ginv: TensorField,
    pub sqrt_g: Expr,
}

impl Metric {
    pub fn of(y: &FieldSet) -> Metric {
        let g = y.metric().clone();
        let ginv = inverse_metric(&g);
        let sqrt_g = sqrt_det(&g, y.det_sign);
        Metric { g, ginv, sqrt_g }
    }

    pub fn christoffel(&self, calc: &mut dyn Calculus) -> TensorField {
        christoffel(&self.g, &self.ginv, calc)
    }

    /// 𝔤^{αβ} = √g g^{αβ}
    pub fn density(&self) -> TensorField {
        self.ginv.scale(&self.sqrt_g)
    }
}

/// ∇_σ ξ^μ stored as [μ][σ].
pub(crate) fn nabla_vector(xi: &[Expr], gamma: &TensorField, calc: &mut dyn Calculus) -> Vec<Vec<Expr>> {
    let m = xi.len();
    (0..m)
        .map(|mu| {
            (0..m)
                .map(|s| {
                    let mut t = vec![calc.d(&xi[mu], s)];
                    for l in 0..m {
                        t.push(gamma.at(&[mu, s, l]).mul(&xi[l]));
                    }
                    Expr::sum(t)
                })
                .collect()
        })
        .collect()
}

/// √g (g^{νσ}∇_σξ^μ − g^{μσ}∇_σξ^ν) for a symmetric connection Γ.
pub(crate) fn komar(met: &Metric, gamma: &TensorField, xi: &[Expr], calc: &mut dyn Calculus) -> Vec<Vec<Expr>> {
    let m = xi.len();
    let nx = nabla_vector(xi, gamma, calc);
    let up = |mu: usize, nu: usize| Expr::sum((0..m).map(|s| met.ginv.at(&[nu, s]).mul(&nx[mu][s])));
    antisym(m, |mu, nu| met.sqrt_g.mul(&up(mu, nu).sub(&up(nu, mu))))
}

/// Full antisymmetric array from its μ<ν entries.
pub(crate) fn antisym(m: usize, mut f: impl FnMut(usize, usize) -> Expr) -> Vec<Vec<Expr>> {
    let mut u = vec![vec![Expr::zero(); m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let v = f(a, b);
            u[b][a] = v.neg();
            u[a][b] = v;
        }
    }
    u
}

/// 𝔤^{αβ} T^λ_{αβ} for a (1,2) tensor.
pub(crate) fn contract_density(gd: &TensorField, t: &TensorField) -> Vec<Expr> {
    let m = gd.dim();
    (0..m)
        .map(|l| {
            let mut terms = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    let c = gd.at(&[a, b]);
                    if !c.is_zero() {
                        terms.push(c.mul(t.at(&[l, a, b])));
                    }
                }
            }
            Expr::sum(terms)
        })
        .collect()
}

pub(crate) fn delta_tensor(t: &TensorField) -> TensorField {
    t.map(delta)
}

pub(crate) fn upper4() -> Vec<Slot> {
    vec![Slot::Up; 4]
}
