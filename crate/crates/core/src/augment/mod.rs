//! Augmented Lagrangians l = L(y) − L(ȳ) + Div α(y, ȳ), their correction
//! terms and superpotentials, and the checks that tie them to the base
//! theory: the defining condition on α, Dirichlet vanishing of the
//! Poincaré–Cartan form and the formal integration property.

mod family;

use thiserror::Error;

use crate::geom::{
    field_strength, gauge_covariant_derivative, levi_civita, CoordCalculus, FieldConfig, GaugeAlgebra, GeomError, RoleKind,
    SymmetryGenerator, TensorField,
};
use crate::noether::{delta, Analysis, Deformation, FieldSet, HorizontalForm, NoetherError, TheoryEntry};
use crate::symker::{EvalError, Expr};

pub use family::{FamilyCheck, SolutionFamily};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AugmentError {
    #[error(transparent)]
    Noether(#[from] NoetherError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("configuration and vacuum live on different charts")]
    ChartMismatch,
    #[error("family does not start at the vacuum (max deviation {0:e})")]
    NotVacuum(f64),
    #[error("deformation is not flagged as vanishing on the boundary")]
    NotBoundaryVanishing,
    #[error("variant `{0}` is only defined for hilbert")]
    Variant(&'static str),
}

/// Which correction term to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaVariant {
    /// the theory's registered α
    Canonical,
    /// α̃^λ = −√g g^{αβ} w^λ_{(αβ)}, hilbert only
    Tilde,
    /// canonical α plus (𝓛(y) − 𝓛(ȳ)) δ^λ_0, which vanishes on solutions of
    /// theories with vanishing on-shell Lagrangian
    OnShellGauge,
}

/// α as a function of the configuration for a fixed vacuum.
#[derive(Clone, Debug)]
pub struct AlphaBuilder {
    entry: TheoryEntry,
    vacuum: FieldConfig,
    variant: AlphaVariant,
}

pub fn build_alpha(theory: &TheoryEntry, vacuum: &FieldConfig) -> Result<AlphaBuilder, AugmentError> {
    AlphaBuilder::new(theory, vacuum, AlphaVariant::Canonical)
}

fn same_chart(a: &FieldConfig, b: &FieldConfig) -> Result<(), AugmentError> {
    if a.chart.coords() == b.chart.coords() {
        Ok(())
    } else {
        Err(AugmentError::ChartMismatch)
    }
}

fn field_set(entry: &TheoryEntry, cfg: &FieldConfig) -> Result<FieldSet, AugmentError> {
    Ok(FieldSet::from_config(&entry.fields(), cfg)?)
}

impl AlphaBuilder {
    pub fn new(theory: &TheoryEntry, vacuum: &FieldConfig, variant: AlphaVariant) -> Result<AlphaBuilder, AugmentError> {
        if variant == AlphaVariant::Tilde && theory.name() != "hilbert" {
            return Err(AugmentError::Variant("tilde"));
        }
        let b = AlphaBuilder { entry: theory.clone(), vacuum: vacuum.clone(), variant };
        // fails early for theories without a registered α
        b.alpha(vacuum)?;
        Ok(b)
    }

    pub fn vacuum(&self) -> &FieldConfig {
        &self.vacuum
    }

    pub fn alpha(&self, cfg: &FieldConfig) -> Result<HorizontalForm, AugmentError> {
        same_chart(cfg, &self.vacuum)?;
        let y = field_set(&self.entry, cfg)?;
        let v = field_set(&self.entry, &self.vacuum)?;
        let mut calc = CoordCalculus::new(cfg.chart.coords());
        let th = self.entry.theory();
        let a = th.alpha(&y, &v, &mut calc).ok_or_else(|| NoetherError::NoAlpha(self.entry.name().to_string()))?;
        Ok(match self.variant {
            AlphaVariant::Canonical => HorizontalForm::codim1(a),
            AlphaVariant::Tilde => HorizontalForm::codim1(crate::noether::hilbert_alpha_tilde(&y, &v, &mut calc)),
            AlphaVariant::OnShellGauge => {
                let dl = th.density(&y, &mut calc).sub(&th.density(&v, &mut calc));
                let mut a = a;
                a[0] = a[0].add(&dl);
                HorizontalForm::codim1(a)
            }
        })
    }
}

/// Renames vacuum parameters that clash with differently valued parameters
/// of `cfg` to `<name>_vacuum`. Returns the renamed vacuum and a copy of
/// `cfg` that binds both parameter sets.
pub fn separate_params(cfg: &FieldConfig, vacuum: &FieldConfig) -> (FieldConfig, FieldConfig) {
    let mut vac = vacuum.clone();
    let mut both = cfg.clone();
    for (k, v) in &vacuum.params {
        match cfg.params.get(k) {
            Some(w) if w != v => {
                let fresh = format!("{k}_vacuum");
                let e = Expr::sym(&fresh);
                let ts = vac.fields.iter().map(|f| f.tensor.map(|x| x.subs(k, &e))).collect();
                vac = vac.with_tensors(ts);
                vac.params.remove(k);
                vac.params.insert(fresh.clone(), *v);
                both.params.insert(fresh, *v);
            }
            Some(_) => {}
            None => {
                both.params.insert(k.clone(), *v);
            }
        }
    }
    (vac, both)
}

/// A base theory together with a correction-term constructor.
#[derive(Clone, Debug)]
pub struct AugmentedTheory {
    pub base: TheoryEntry,
    pub variant: AlphaVariant,
}

impl AugmentedTheory {
    pub fn new(base: &TheoryEntry) -> AugmentedTheory {
        AugmentedTheory { base: base.clone(), variant: AlphaVariant::Canonical }
    }

    pub fn with_variant(base: &TheoryEntry, variant: AlphaVariant) -> AugmentedTheory {
        AugmentedTheory { base: base.clone(), variant }
    }

    pub fn alpha(&self, cfg: &FieldConfig, vacuum: &FieldConfig) -> Result<HorizontalForm, AugmentError> {
        AlphaBuilder::new(&self.base, vacuum, self.variant)?.alpha(cfg)
    }

    /// 𝓛(y) − 𝓛(ȳ) + d_μ α^μ
    pub fn augmented_density(&self, cfg: &FieldConfig, vacuum: &FieldConfig) -> Result<Expr, AugmentError> {
        let alpha = self.alpha(cfg, vacuum)?;
        let th = self.base.theory();
        let mut calc = CoordCalculus::new(cfg.chart.coords());
        let l = th.density(&field_set(&self.base, cfg)?, &mut calc);
        let lb = th.density(&field_set(&self.base, vacuum)?, &mut calc);
        let div = alpha.divergence(&mut calc);
        Ok(l.sub(&lb).add(div.density()))
    }

    /// U(L, Ξ)(y) − U(L, Ξ)(ȳ) + i_ξ α
    pub fn augmented_superpotential(
        &self,
        cfg: &FieldConfig,
        vacuum: &FieldConfig,
        gen: &SymmetryGenerator,
    ) -> Result<HorizontalForm, AugmentError> {
        let alpha = self.alpha(cfg, vacuum)?;
        let u = Analysis::new(&self.base, cfg)?.superpotential(gen)?;
        let ub = Analysis::new(&self.base, vacuum)?.superpotential(gen)?;
        let m = cfg.dim();
        if m < 2 {
            return Ok(u);
        }
        Ok(u.sub(&ub).add(&alpha.interior(&gen.xi)))
    }

    /// <𝔽(l) | X> for a deformation X of y and X̄ of ȳ:
    /// <𝔽(L)|X>(y) − <𝔽(L)|X̄>(ȳ) + δα.
    pub fn pc_contract(
        &self,
        cfg: &FieldConfig,
        vacuum: &FieldConfig,
        x: &Deformation,
        xbar: &Deformation,
    ) -> Result<HorizontalForm, AugmentError> {
        let f = crate::noether::pc_contract(&self.base, cfg, x)?;
        let fb = crate::noether::pc_contract(&self.base, vacuum, xbar)?;
        let ve = xbar.apply(vacuum);
        let ye = x.apply(cfg);
        let da = AlphaBuilder::new(&self.base, &ve, self.variant)?.alpha(&ye)?.map(delta);
        Ok(f.sub(&fb).add(&da))
    }
}

pub fn augmented_lagrangian(theory: &TheoryEntry, cfg: &FieldConfig, vacuum: &FieldConfig) -> Result<Expr, AugmentError> {
    AugmentedTheory::new(theory).augmented_density(cfg, vacuum)
}

pub fn augmented_superpotential(
    theory: &TheoryEntry,
    cfg: &FieldConfig,
    vacuum: &FieldConfig,
    gen: &SymmetryGenerator,
) -> Result<HorizontalForm, AugmentError> {
    AugmentedTheory::new(theory).augmented_superpotential(cfg, vacuum, gen)
}

/// 2ε^{μνρ}(η F̄_{μν} B_ρ + η (∇̄_μ B_ν) B_ρ + ⅓ c B_μ B_ν B_ρ), B = A − Ā,
/// the gauge covariant form of the Chern–Simons augmented Lagrangian.
pub fn chern_simons_covariant_density(cfg: &FieldConfig, vacuum: &FieldConfig) -> Result<Expr, AugmentError> {
    same_chart(cfg, vacuum)?;
    let a = cfg.tensor(RoleKind::Gauge)?;
    let ab = vacuum.tensor(RoleKind::Gauge)?;
    let alg = cfg.field(RoleKind::Gauge)?.algebra().expect("gauge field").clone();
    let n = alg.dim();
    let mut calc = cfg.calculus();
    let fb = field_strength(ab, &alg, &mut calc);
    let b = a.sub(ab);
    // dcol[ν][i, μ] = ∇̄_μ B^i_ν
    let dcol: Vec<TensorField> = (0..3)
        .map(|nu| {
            let col: Vec<Expr> = (0..n).map(|i| b.at(&[i, nu]).clone()).collect();
            gauge_covariant_derivative(&col, ab, &alg, &mut calc)
        })
        .collect();
    let num = |x: f64| if x.fract() == 0.0 { Expr::int(x as i64) } else { Expr::float(x) };
    let mut terms = Vec::new();
    for mu in 0..3 {
        for nu in 0..3 {
            for rho in 0..3 {
                let e = levi_civita(&[mu, nu, rho]);
                if e == 0 {
                    continue;
                }
                let mut t = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let h = alg.eta(i, j);
                        if h != 0.0 {
                            let x = fb.at(&[i, mu, nu]).add(dcol[nu].at(&[i, mu])).mul(b.at(&[j, rho]));
                            t.push(num(h).mul(&x));
                        }
                        for k in 0..n {
                            let c = alg.c_lower(i, j, k);
                            if c != 0.0 {
                                let x = b.at(&[i, mu]).mul(b.at(&[j, nu])).mul(b.at(&[k, rho]));
                                t.push(Expr::rational(1, 3).mul(&num(c)).mul(&x));
                            }
                        }
                    }
                }
                terms.push(Expr::int(2 * e).mul(&Expr::sum(t)));
            }
        }
    }
    Ok(Expr::sum(terms))
}

/// exp(θ ad_{e_k}) with (ad_k)^i_j = c^i_{kj}.
fn adjoint_rotation(alg: &GaugeAlgebra, axis: usize, angle: f64) -> Vec<Vec<f64>> {
    let n = alg.dim();
    let ad: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| angle * alg.c(i, axis, j)).collect()).collect();
    let mut out: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut term = out.clone();
    for k in 1..40 {
        term = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| term[i][l] * ad[l][j]).sum::<f64>() / k as f64).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                out[i][j] += term[i][j];
            }
        }
    }
    out
}

/// Constant gauge rotation of a gauge configuration by exp(θ ρ_k), applied
/// to the algebra index.
pub fn rotate_gauge(cfg: &FieldConfig, axis: usize, angle: f64) -> Result<FieldConfig, AugmentError> {
    let i = cfg.field_index(RoleKind::Gauge).ok_or(GeomError::MissingField("gauge"))?;
    let alg = cfg.fields[i].algebra().expect("gauge field").clone();
    let rot = adjoint_rotation(&alg, axis, angle);
    let a = &cfg.fields[i].tensor;
    let n = alg.dim();
    let t = TensorField::from_fn(a.dim(), a.slots().to_vec(), |idx| {
        Expr::sum((0..n).filter(|&j| rot[idx[0]][j] != 0.0).map(|j| Expr::float(rot[idx[0]][j]).mul(a.at(&[j, idx[1]]))))
    });
    let mut tensors: Vec<TensorField> = cfg.fields.iter().map(|f| f.tensor.clone()).collect();
    tensors[i] = t;
    Ok(cfg.with_tensors(tensors))
}

/// Residual report of a pointwise identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
}

impl Residual {
    pub fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    /// |d/ds α + <𝔽(L̄)|X>| with the exact s-derivative
    pub symbolic: Residual,
    /// same with a central difference of step h
    pub finite_difference: Residual,
    /// max |<𝔽(L̄)|X>|, to show the check is not vacuous
    pub scale: f64,
}

impl ConditionReport {
    pub fn pass(&self) -> bool {
        self.symbolic.pass() && self.finite_difference.pass()
    }
}

pub const FD_STEP: f64 = 1e-5;

/// Checks d/ds α(y_s, ȳ)|_{s=0} = −<𝔽(L̄) | X> at sample points.
pub fn verify_condition(theory: &TheoryEntry, family: &SolutionFamily) -> Result<ConditionReport, AugmentError> {
    verify_condition_with(AugmentedTheory::new(theory), family)
}

pub fn verify_condition_with(aug: AugmentedTheory, family: &SolutionFamily) -> Result<ConditionReport, AugmentError> {
    let vac = family.initial();
    let builder = AlphaBuilder::new(&aug.base, &vac, aug.variant)?;
    let x = family.generator();
    let f = crate::noether::pc_contract(&aug.base, &vac, &x)?;
    let a = builder.alpha(&family.curve)?;
    let da: Vec<Expr> = a.coeffs().iter().map(|e| e.diff(&family.param).subs(&family.param, &Expr::zero())).collect();
    let sym: Vec<Expr> = da.iter().zip(f.coeffs()).map(|(d, p)| d.add(p)).collect();
    let ap = builder.alpha(&family.at(FD_STEP))?;
    let am = builder.alpha(&family.at(-FD_STEP))?;
    let fd: Vec<Expr> = ap
        .coeffs()
        .iter()
        .zip(am.coeffs())
        .zip(f.coeffs())
        .map(|((p, q), c)| p.sub(q).mul(&Expr::float(0.5 / FD_STEP)).add(c))
        .collect();
    let sym_r = vac.residual(&sym, 5, 11)?;
    let fd_r = vac.residual(&fd, 5, 11)?;
    let scale = vac.residual(f.coeffs(), 5, 11)?;
    Ok(ConditionReport {
        symbolic: Residual { value: sym_r, tolerance: 1e-7 },
        finite_difference: Residual { value: fd_r, tolerance: 1e-4 },
        scale,
    })
}

/// <𝔽(l)|X> under the Dirichlet substitutions y = ȳ, δy = 0, for an
/// arbitrary deformation X̄ of the vacuum.
pub fn dirichlet_pc_check(
    theory: &TheoryEntry,
    vacuum: &FieldConfig,
    xbar: &Deformation,
) -> Result<Residual, AugmentError> {
    if !xbar.boundary_vanishing {
        return Err(AugmentError::NotBoundaryVanishing);
    }
    let zero = Deformation::zero(vacuum);
    let f = AugmentedTheory::new(theory).pc_contract(vacuum, vacuum, &zero, xbar)?;
    Ok(Residual { value: vacuum.residual(f.coeffs(), 5, 13)?, tolerance: 1e-10 })
}

/// The same contraction without the substitutions, at a generic pair.
pub fn unsubstituted_pc(
    theory: &TheoryEntry,
    cfg: &FieldConfig,
    vacuum: &FieldConfig,
    x: &Deformation,
    xbar: &Deformation,
) -> Result<f64, AugmentError> {
    let f = AugmentedTheory::new(theory).pc_contract(cfg, vacuum, x, xbar)?;
    Ok(cfg.residual(f.coeffs(), 5, 13)?)
}

/// Pointwise difference of two augmented Lagrangians on the same pair.
pub fn robustness(
    a: &TheoryEntry,
    b: &TheoryEntry,
    cfg: &FieldConfig,
    vacuum: &FieldConfig,
) -> Result<f64, AugmentError> {
    let la = augmented_lagrangian(a, cfg, vacuum)?;
    let lb = augmented_lagrangian(b, cfg, vacuum)?;
    Ok(cfg.residual(&[la.sub(&lb)], 5, 17)?)
}

/// d/ds of the augmented superpotential along a family, at s = 0, next to
/// the corrected variation δ_X U − i_ξ<𝔽|X> of the base theory at ȳ.
pub fn formal_integration_forms(
    theory: &TheoryEntry,
    family: &SolutionFamily,
    gen: &SymmetryGenerator,
) -> Result<(HorizontalForm, HorizontalForm), AugmentError> {
    let vac = family.initial();
    let u = augmented_superpotential(theory, &family.curve, &vac, gen)?;
    let du = u.map(|e| e.diff(&family.param).subs(&family.param, &Expr::zero()));
    let cv = crate::noether::corrected_variation(theory, &vac, &family.generator(), gen)?;
    Ok((du, cv))
}

#[cfg(test)]
mod tests;
