use std::collections::HashMap;

use crate::geom::{lie_derivative_with, Calculus, FieldConfig, SymmetryGenerator, TensorField};
use crate::symker::{gradient, Expr, Substituter, Symbol};

use super::form::HorizontalForm;
use super::jet::{base_name, jet_name, jet_order, SharedModel, TotalCalculus, SEP};
use super::theory::{FieldSet, Locality, TheoryEntry};
use super::NoetherError;

/// Symbol used for formal variations y + εX.
pub const EPS: &str = "__eps";

/// d/dε at ε = 0.
pub fn delta(e: &Expr) -> Expr {
    e.diff(EPS).subs(EPS, &Expr::zero())
}

/// Vertical vector X = δy^i ∂_i, one tensor per configuration field.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub tensors: Vec<TensorField>,
    /// X is declared to vanish on the boundary surface.
    pub boundary_vanishing: bool,
}

impl Deformation {
    pub fn new(tensors: Vec<TensorField>) -> Deformation {
        Deformation { tensors, boundary_vanishing: false }
    }

    pub fn zero(cfg: &FieldConfig) -> Deformation {
        Deformation::new(cfg.fields.iter().map(|f| f.tensor.map(|_| Expr::zero())).collect())
    }

    /// ∂y/∂p for a configuration parameter p.
    pub fn parameter(cfg: &FieldConfig, name: &str) -> Deformation {
        Deformation::new(cfg.fields.iter().map(|f| f.tensor.map(|e| e.diff(name))).collect())
    }

    pub fn scaled(&self, c: &Expr) -> Deformation {
        Deformation { tensors: self.tensors.iter().map(|t| t.scale(c)).collect(), boundary_vanishing: self.boundary_vanishing }
    }

    pub fn is_zero(&self) -> bool {
        self.tensors.iter().all(TensorField::is_zero)
    }

    pub(crate) fn check(&self, cfg: &FieldConfig) -> Result<(), NoetherError> {
        let ok = self.tensors.len() == cfg.fields.len()
            && self.tensors.iter().zip(&cfg.fields).all(|(t, f)| t.slots() == f.tensor.slots() && t.dim() == f.tensor.dim());
        if ok { Ok(()) } else { Err(NoetherError::Shape) }
    }

    /// The configuration y + εX.
    pub fn apply(&self, cfg: &FieldConfig) -> FieldConfig {
        let eps = Expr::sym(EPS);
        let ts = cfg.fields.iter().zip(&self.tensors).map(|(f, x)| f.tensor.zip(x, |a, b| a.add(&eps.mul(b)))).collect();
        cfg.with_tensors(ts)
    }
}

/// Lie-derivative coefficients of one field component:
/// £y = Σ_j k0_j ξ^j + k1_j^μ ∂_μ ξ^j + k2_j^{μν} ∂_μ∂_ν ξ^j.
#[derive(Clone, Debug)]
struct LieCoeffs {
    k0: Vec<Expr>,
    k1: Vec<Vec<Expr>>,
    k2: Vec<Vec<Vec<Expr>>>,
}

/// All derived objects of one theory on one configuration. Every result is
/// a coordinate expression; the jet model supplies the momenta.
pub struct Analysis {
    entry: TheoryEntry,
    model: SharedModel,
    pub cfg: FieldConfig,
    cidx: Vec<usize>,
    calc: TotalCalculus,
    fields: FieldSet,
    pub lagrangian: Expr,
    p0: Vec<Vec<Expr>>,
    p1: Vec<Vec<Vec<Expr>>>,
    p2: Vec<Vec<Vec<Vec<Expr>>>>,
    q: Option<Vec<Vec<Vec<Expr>>>>,
    el: Option<Vec<Vec<Expr>>>,
    lie_coeffs: Option<Vec<Vec<LieCoeffs>>>,
    sup_coeffs: Option<(Vec<Vec<Vec<Expr>>>, Vec<Vec<Vec<Vec<Expr>>>>)>,
}

fn formal_generator(m: usize, n: usize) -> SymmetryGenerator {
    SymmetryGenerator {
        xi: (0..m).map(|j| Expr::sym(&jet_name(&format!("xi{j}"), &[]))).collect(),
        xi_gauge: (0..n).map(|j| Expr::sym(&jet_name(&format!("xi{}", m + j), &[]))).collect(),
    }
}

fn formal_symbols(m: usize, ng: usize, max_order: usize) -> Vec<(usize, Vec<usize>, Symbol)> {
    let mut out = Vec::new();
    for j in 0..ng {
        for r in 0..=max_order {
            for d in super::jet::sym_multi_indices(m, r) {
                out.push((j, d.clone(), Symbol::from(jet_name(&format!("xi{j}"), &d))));
            }
        }
    }
    out
}

fn has_formal_order(e: &[Expr], r: usize) -> bool {
    e.iter().any(|x| x.free_symbols().iter().any(|s| s.starts_with("xi") && s.contains(SEP) && jet_order(s) == Some(r)))
}

impl Analysis {
    pub fn new(entry: &TheoryEntry, cfg: &FieldConfig) -> Result<Analysis, NoetherError> {
        let model = entry.model(cfg)?;
        let kinds = entry.fields();
        let cidx: Vec<usize> = kinds.iter().map(|k| cfg.field_index(*k).unwrap()).collect();
        let fields = FieldSet::from_config(&kinds, cfg)?;
        let mut calc = TotalCalculus::new(cfg.chart.coords());
        let mut sub = Substituter::new();
        let mut values: HashMap<(usize, usize, Vec<usize>), Expr> = HashMap::new();
        for (f, cs) in model.comps.iter().enumerate() {
            for (c, idx) in cs.iter().enumerate() {
                for layer in &model.multi {
                    for d in layer {
                        let v = if d.is_empty() {
                            fields.tensors[f].at(idx).clone()
                        } else {
                            let prev = values[&(f, c, d[..d.len() - 1].to_vec())].clone();
                            calc.d(&prev, d[d.len() - 1])
                        };
                        sub.insert(&jet_name(&base_name(f, c), d), v.clone());
                        values.insert((f, c, d.clone()), v);
                    }
                }
            }
        }
        let m = cfg.dim();
        let lagrangian = sub.apply(&model.density);
        let half = Expr::rational(1, 2);
        let mut p0 = Vec::new();
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        for gf in &model.grads {
            let mut f0 = Vec::new();
            let mut f1 = Vec::new();
            let mut f2 = Vec::new();
            for g in gf {
                f0.push(sub.apply(&g[0][0]));
                f1.push(if model.order >= 1 { g[1].iter().map(|e| sub.apply(e)).collect() } else { vec![Expr::zero(); m] });
                let mut t = vec![vec![Expr::zero(); m]; m];
                if model.order >= 2 {
                    for (j, d) in model.multi[2].iter().enumerate() {
                        let v = sub.apply(&g[2][j]);
                        if d[0] == d[1] {
                            t[d[0]][d[0]] = v;
                        } else {
                            let v = half.mul(&v);
                            t[d[0]][d[1]] = v.clone();
                            t[d[1]][d[0]] = v;
                        }
                    }
                }
                f2.push(t);
            }
            p0.push(f0);
            p1.push(f1);
            p2.push(f2);
        }
        Ok(Analysis {
            entry: entry.clone(),
            model,
            cfg: cfg.clone(),
            cidx,
            calc,
            fields,
            lagrangian,
            p0,
            p1,
            p2,
            q: None,
            el: None,
            lie_coeffs: None,
            sup_coeffs: None,
        })
    }

    pub fn entry(&self) -> &TheoryEntry {
        &self.entry
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim()
    }

    pub fn fields(&self) -> &FieldSet {
        &self.fields
    }

    pub fn calculus(&mut self) -> &mut TotalCalculus {
        &mut self.calc
    }

    /// Independent components per theory field.
    pub fn components(&self) -> &[Vec<Vec<usize>>] {
        &self.model.comps
    }

    /// p_i, p_i^μ, p_i^{μν} (symmetric, δ𝓛 = Σ p^{μν} δy_{,μν}).
    pub fn momenta(&self) -> (&[Vec<Expr>], &[Vec<Vec<Expr>>], &[Vec<Vec<Vec<Expr>>>]) {
        (&self.p0, &self.p1, &self.p2)
    }

    fn n_gauge(&self) -> usize {
        self.fields.algebra.as_ref().map_or(0, |a| a.dim())
    }

    fn gen_components(&self, gen: &SymmetryGenerator) -> Vec<Expr> {
        let mut g = gen.xi.clone();
        for k in 0..self.n_gauge() {
            g.push(gen.gauge_component(k));
        }
        g
    }

    /// p^μ − d_ν p^{μν}
    fn q(&mut self) -> &Vec<Vec<Vec<Expr>>> {
        if self.q.is_none() {
            let m = self.dim();
            let mut q = Vec::new();
            for (f1, f2) in self.p1.iter().zip(&self.p2) {
                let mut fq = Vec::new();
                for (c1, c2) in f1.iter().zip(f2) {
                    fq.push(
                        (0..m)
                            .map(|mu| {
                                let div = Expr::sum((0..m).map(|nu| self.calc.d(&c2[mu][nu], nu)));
                                c1[mu].sub(&div)
                            })
                            .collect(),
                    );
                }
                q.push(fq);
            }
            self.q = Some(q);
        }
        self.q.as_ref().unwrap()
    }

    /// Euler–Lagrange morphism per independent component:
    /// 𝔼 = p − d_μ p^μ + d_μ d_ν p^{μν}.
    pub fn euler_lagrange(&mut self) -> Vec<Vec<Expr>> {
        if self.el.is_none() {
            let m = self.dim();
            let q = self.q().clone();
            let el = self
                .p0
                .iter()
                .zip(&q)
                .map(|(f0, fq)| {
                    f0.iter().zip(fq).map(|(p, qc)| p.sub(&Expr::sum((0..m).map(|mu| self.calc.d(&qc[mu], mu))))).collect()
                })
                .collect();
            self.el = Some(el);
        }
        self.el.clone().unwrap()
    }

    /// 𝔼 for the dynamical fields only, flattened.
    pub fn dynamical_el(&mut self) -> Vec<Expr> {
        let el = self.euler_lagrange();
        let kinds = self.entry.fields();
        let th = self.entry.theory();
        el.into_iter().zip(kinds).filter(|(_, k)| th.is_dynamical(*k)).flat_map(|(v, _)| v).collect()
    }

    fn components_of(&self, tensors: &[TensorField]) -> Vec<Vec<Expr>> {
        self.model.comps.iter().zip(tensors).map(|(cs, t)| cs.iter().map(|i| t.at(i).clone()).collect()).collect()
    }

    /// Deformation restricted to the theory fields.
    pub fn deformation_components(&self, x: &Deformation) -> Vec<Vec<Expr>> {
        let ts: Vec<TensorField> = self.cidx.iter().map(|&i| x.tensors[i].clone()).collect();
        self.components_of(&ts)
    }

    /// <𝔽 | X>^μ = (p^μ − d_ν p^{μν}) X + p^{μν} d_ν X.
    pub fn pc(&mut self, x: &[Vec<Expr>]) -> HorizontalForm {
        let m = self.dim();
        let q = self.q().clone();
        let mut terms: Vec<Vec<Expr>> = vec![Vec::new(); m];
        for (f, xf) in x.iter().enumerate() {
            for (c, xc) in xf.iter().enumerate() {
                if xc.is_zero() {
                    continue;
                }
                let dx: Vec<Expr> = if self.model.order >= 2 { (0..m).map(|nu| self.calc.d(xc, nu)).collect() } else { Vec::new() };
                for mu in 0..m {
                    terms[mu].push(q[f][c][mu].mul(xc));
                    for nu in 0..dx.len() {
                        terms[mu].push(self.p2[f][c][mu][nu].mul(&dx[nu]));
                    }
                }
            }
        }
        HorizontalForm::codim1(terms.into_iter().map(Expr::sum).collect())
    }

    pub fn pc_deformation(&mut self, x: &Deformation) -> HorizontalForm {
        let xc = self.deformation_components(x);
        self.pc(&xc)
    }

    /// £_Ξ y per independent component of each theory field.
    pub fn lie(&mut self, gen: &SymmetryGenerator) -> Vec<Vec<Expr>> {
        let mut out = Vec::new();
        for (f, &ci) in self.cidx.iter().enumerate() {
            let t = lie_derivative_with(&self.cfg.fields[ci], gen, &mut self.calc);
            out.push(self.model.comps[f].iter().map(|i| t.at(i).clone()).collect());
        }
        out
    }

    /// E = <𝔽 | £_Ξ y> − ξ^μ 𝓛.
    pub fn noether_current(&mut self, gen: &SymmetryGenerator) -> HorizontalForm {
        let l = self.lie(gen);
        let f = self.pc(&l);
        let lag = HorizontalForm::top(self.dim(), self.lagrangian.clone());
        f.sub(&lag.interior(&gen.xi))
    }

    /// W = −<𝔼 | £_Ξ y>.
    pub fn work(&mut self, gen: &SymmetryGenerator) -> HorizontalForm {
        let l = self.lie(gen);
        let el = self.euler_lagrange();
        let mut terms = Vec::new();
        for (ef, lf) in el.iter().zip(&l) {
            for (e, x) in ef.iter().zip(lf) {
                terms.push(e.mul(x));
            }
        }
        HorizontalForm::top(self.dim(), Expr::sum(terms).neg())
    }

    /// p £y + p^μ d_μ£y + p^{μν} d_μd_ν£y − d_μ(ξ^μ 𝓛); vanishes off-shell
    /// for generators the theory is covariant under.
    pub fn covariance_residual(&mut self, gen: &SymmetryGenerator) -> Expr {
        let m = self.dim();
        let l = self.lie(gen);
        let mut terms = Vec::new();
        for (f, lf) in l.iter().enumerate() {
            for (c, x) in lf.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                terms.push(self.p0[f][c].mul(x));
                for mu in 0..m {
                    let dx = self.calc.d(x, mu);
                    terms.push(self.p1[f][c][mu].mul(&dx));
                    if self.model.order >= 2 {
                        for nu in 0..m {
                            let p = &self.p2[f][c][mu][nu];
                            if !p.is_zero() {
                                terms.push(p.mul(&self.calc.d(&dx, nu)));
                            }
                        }
                    }
                }
            }
        }
        for mu in 0..m {
            let v = gen.xi[mu].mul(&self.lagrangian);
            terms.push(self.calc.d(&v, mu).neg());
        }
        Expr::sum(terms)
    }

    fn lie_coeffs(&mut self) -> Result<Vec<Vec<LieCoeffs>>, NoetherError> {
        if let Some(k) = &self.lie_coeffs {
            return Ok(k.clone());
        }
        let m = self.dim();
        let ng = m + self.n_gauge();
        let formal = formal_generator(m, self.n_gauge());
        let lie = self.lie(&formal);
        let syms = formal_symbols(m, ng, 2);
        let names: Vec<Symbol> = syms.iter().map(|s| s.2.clone()).collect();
        let half = Expr::rational(1, 2);
        let mut out = Vec::new();
        for lf in &lie {
            if has_formal_order(lf, 3) {
                return Err(NoetherError::Unsupported("Lie derivative with third derivatives of the generator".into()));
            }
            let mut fo = Vec::new();
            for x in lf {
                let g = gradient(x, &names);
                let mut k = LieCoeffs {
                    k0: vec![Expr::zero(); ng],
                    k1: vec![vec![Expr::zero(); m]; ng],
                    k2: vec![vec![vec![Expr::zero(); m]; m]; ng],
                };
                for ((j, d, _), v) in syms.iter().zip(g) {
                    match d.len() {
                        0 => k.k0[*j] = v,
                        1 => k.k1[*j][d[0]] = v,
                        _ if d[0] == d[1] => k.k2[*j][d[0]][d[0]] = v,
                        _ => {
                            let v = half.mul(&v);
                            k.k2[*j][d[0]][d[1]] = v.clone();
                            k.k2[*j][d[1]][d[0]] = v;
                        }
                    }
                }
                fo.push(k);
            }
            out.push(fo);
        }
        self.lie_coeffs = Some(out.clone());
        Ok(out)
    }

    /// Ẽ^μ = −𝔼K^μ ξ − 𝔼K^{μν} ∂_νξ + d_ν(𝔼K^{νμ}) ξ, summed over fields
    /// and generator components; it vanishes on-shell.
    pub fn reduced_current(&mut self, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
        let m = self.dim();
        let k = self.lie_coeffs()?;
        let el = self.euler_lagrange();
        let g = self.gen_components(gen);
        let dg: Vec<Vec<Expr>> = g.iter().map(|x| (0..m).map(|nu| self.calc.d(x, nu)).collect()).collect();
        let mut terms: Vec<Vec<Expr>> = vec![Vec::new(); m];
        for (ef, kf) in el.iter().zip(&k) {
            for (e, kc) in ef.iter().zip(kf) {
                if e.is_zero() {
                    continue;
                }
                for (j, gj) in g.iter().enumerate() {
                    for mu in 0..m {
                        let t = &mut terms[mu];
                        if !gj.is_zero() {
                            t.push(e.mul(&kc.k1[j][mu]).mul(gj).neg());
                        }
                        for nu in 0..m {
                            let k2 = &kc.k2[j][mu][nu];
                            if k2.is_zero() {
                                continue;
                            }
                            t.push(e.mul(k2).mul(&dg[j][nu]).neg());
                            if !gj.is_zero() {
                                let ek = e.mul(&kc.k2[j][nu][mu]);
                                t.push(self.calc.d(&ek, nu).mul(gj));
                            }
                        }
                    }
                }
            }
        }
        Ok(HorizontalForm::codim1(terms.into_iter().map(Expr::sum).collect()))
    }

    /// B = W − Div Ẽ; vanishes identically for covariant theories.
    pub fn bianchi(&mut self, gen: &SymmetryGenerator) -> Result<Expr, NoetherError> {
        let w = self.work(gen);
        let r = self.reduced_current(gen)?;
        let div = r.divergence(&mut self.calc);
        Ok(w.density().sub(div.density()))
    }

    /// Superpotential obtained from E − Ẽ = A ξ + B ∂ξ + C ∂∂ξ by
    /// U = P ξ + Q ∂ξ with Q^{μνα} = ⅔(C^{μνα} − C^{νμα}) and
    /// P^{μα} = B^{μα} − d_ν Q^{μνα}.
    pub fn algorithmic_superpotential(&mut self, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
        let m = self.dim();
        if m < 2 {
            return Ok(HorizontalForm::zero(m, super::Degree::Codim2));
        }
        if self.sup_coeffs.is_none() {
            let n = self.n_gauge();
            let ng = m + n;
            let formal = formal_generator(m, n);
            let e = self.noether_current(&formal);
            let r = self.reduced_current(&formal)?;
            let ep = e.sub(&r);
            if has_formal_order(ep.coeffs(), 3) {
                return Err(NoetherError::Unsupported("current with third derivatives of the generator".into()));
            }
            let syms = formal_symbols(m, ng, 2);
            let names: Vec<Symbol> = syms.iter().map(|s| s.2.clone()).collect();
            let half = Expr::rational(1, 2);
            let two_thirds = Expr::rational(2, 3);
            // b[j][μ][α], c[j][μ][α][β]
            let mut b = vec![vec![vec![Expr::zero(); m]; m]; ng];
            let mut c = vec![vec![vec![vec![Expr::zero(); m]; m]; m]; ng];
            for mu in 0..m {
                let g = gradient(ep.get(mu), &names);
                for ((j, d, _), v) in syms.iter().zip(g) {
                    match d.len() {
                        0 => {}
                        1 => b[*j][mu][d[0]] = v,
                        _ if d[0] == d[1] => c[*j][mu][d[0]][d[0]] = v,
                        _ => {
                            let v = half.mul(&v);
                            c[*j][mu][d[0]][d[1]] = v.clone();
                            c[*j][mu][d[1]][d[0]] = v;
                        }
                    }
                }
            }
            let mut qs = Vec::new();
            let mut ps = Vec::new();
            for j in 0..ng {
                let q: Vec<Vec<Vec<Expr>>> = (0..m)
                    .map(|mu| {
                        (0..m)
                            .map(|nu| (0..m).map(|a| two_thirds.mul(&c[j][mu][nu][a].sub(&c[j][nu][mu][a]))).collect())
                            .collect()
                    })
                    .collect();
                let raw: Vec<Vec<Expr>> = (0..m)
                    .map(|mu| {
                        (0..m)
                            .map(|a| {
                                let div = Expr::sum((0..m).map(|nu| self.calc.d(&q[mu][nu][a], nu)));
                                b[j][mu][a].sub(&div)
                            })
                            .collect()
                    })
                    .collect();
                let p: Vec<Vec<Expr>> =
                    (0..m).map(|mu| (0..m).map(|a| half.mul(&raw[mu][a].sub(&raw[a][mu]))).collect()).collect();
                qs.push(q);
                ps.push(p);
            }
            self.sup_coeffs = Some((ps, qs));
        }
        let (ps, qs) = self.sup_coeffs.clone().unwrap();
        let g = self.gen_components(gen);
        let dg: Vec<Vec<Expr>> = g.iter().map(|x| (0..m).map(|a| self.calc.d(x, a)).collect()).collect();
        Ok(HorizontalForm::codim2(m, |mu, nu| {
            let mut t = Vec::new();
            for j in 0..g.len() {
                t.push(ps[j][mu][nu].mul(&g[j]));
                for a in 0..m {
                    t.push(qs[j][mu][nu][a].mul(&dg[j][a]));
                }
            }
            Expr::sum(t)
        }))
    }

    /// Registered closed form if the theory has one, else the algorithmic
    /// superpotential (covariant theories only).
    pub fn superpotential(&mut self, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
        self.check_generator(gen)?;
        let m = self.dim();
        if m < 2 {
            return Ok(HorizontalForm::zero(m, super::Degree::Codim2));
        }
        let th = self.entry.theory();
        if let Some(u) = th.superpotential(&self.fields, gen, &mut self.calc) {
            return Ok(HorizontalForm::codim2(m, |a, b| u[a][b].clone()));
        }
        if th.locality() == Locality::Covariant {
            return self.algorithmic_superpotential(gen);
        }
        Err(NoetherError::NoSuperpotential(self.entry.name().to_string()))
    }

    pub fn has_registered_superpotential(&mut self) -> bool {
        let m = self.dim();
        let gen = SymmetryGenerator::zero(m, self.n_gauge());
        m < 2 || self.entry.theory().superpotential(&self.fields, &gen, &mut self.calc).is_some()
    }

    /// Printed Poincaré–Cartan contraction, if the theory registers one.
    pub fn printed_pc(&mut self, x: &Deformation) -> Option<HorizontalForm> {
        let varied = x.apply(&self.cfg);
        let ye = FieldSet::from_config(&self.entry.fields(), &varied).ok()?;
        let f = self.entry.theory().printed_pc(&self.fields, &ye, &mut self.calc)?;
        Some(HorizontalForm::codim1(f))
    }

    pub fn formal_divergence(&mut self, form: &HorizontalForm) -> HorizontalForm {
        form.divergence(&mut self.calc)
    }

    fn check_generator(&self, gen: &SymmetryGenerator) -> Result<(), NoetherError> {
        let coords = self.cfg.chart.coords();
        for e in gen.xi.iter().chain(&gen.xi_gauge) {
            for s in e.free_symbols() {
                if !coords.contains(&s) && !self.cfg.params.contains_key(&*s) {
                    return Err(NoetherError::FieldDependentGenerator(s.to_string()));
                }
            }
        }
        Ok(())
    }

    /// ω(X, £_Ξ y) = δ_X <𝔽 | £_Ξ y> − £_ξ <𝔽 | X>.
    pub fn symplectic_form(&mut self, x: &Deformation, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
        x.check(&self.cfg)?;
        self.check_generator(gen)?;
        let mut varied = Analysis::new(&self.entry, &x.apply(&self.cfg))?;
        let l = varied.lie(gen);
        let dfl = varied.pc(&l).map(delta);
        let xc = self.deformation_components(x);
        let fx = self.pc(&xc);
        let lie_fx = fx.lie(&gen.xi, &mut self.calc);
        Ok(dfl.sub(&lie_fx))
    }

    /// δ_X U(L, Ξ) − i_ξ <𝔽 | X>.
    pub fn corrected_variation(&mut self, x: &Deformation, gen: &SymmetryGenerator) -> Result<HorizontalForm, NoetherError> {
        x.check(&self.cfg)?;
        self.check_generator(gen)?;
        let m = self.dim();
        if m < 2 {
            return Ok(HorizontalForm::zero(m, super::Degree::Codim2));
        }
        let mut varied = Analysis::new(&self.entry, &x.apply(&self.cfg))?;
        let du = varied.superpotential(gen)?.map(delta);
        let xc = self.deformation_components(x);
        let fx = self.pc(&xc);
        Ok(du.sub(&fx.interior(&gen.xi)))
    }
}
