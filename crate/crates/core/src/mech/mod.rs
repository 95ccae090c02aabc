//! Two points of mass m joined by a spring, observed from a train moving at
//! velocity w. Energies are observer dependent, relative energies are not.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::geom::{Calculus, Field, FieldConfig, Role, RoleKind, Slot, SymmetryGenerator, TensorField};
use crate::noether::{symplectic_form, Deformation, FieldSet, Locality, Theory, TheoryEntry};
use crate::symker::{Chart, Expr};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MechError {
    #[error("mass and spring constant must be positive (m = {m}, k = {k})")]
    Nonpositive { m: f64, k: f64 },
    #[error("systems differ in m or k")]
    Mismatch,
    #[error("energy drifts by {0:e} along the exact solution")]
    Drift(f64),
    #[error(transparent)]
    Noether(#[from] crate::noether::NoetherError),
    #[error(transparent)]
    Eval(#[from] crate::symker::EvalError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpringSystem {
    pub m: f64,
    pub k: f64,
    /// velocity of the centre of mass
    pub w: f64,
    /// oscillation amplitude
    pub a: f64,
}

/// x = (x₁+x₂)/2, q = (x₁−x₂)/2 and their velocities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaricentricState {
    pub t: f64,
    pub x: f64,
    pub q: f64,
    pub u: f64,
    pub w: f64,
}

impl SpringSystem {
    pub fn new(m: f64, k: f64, w: f64, a: f64) -> Result<SpringSystem, MechError> {
        if !(m > 0.0 && k > 0.0) {
            return Err(MechError::Nonpositive { m, k });
        }
        Ok(SpringSystem { m, k, w, a })
    }

    /// ω² = 2k²/m
    pub fn omega2(&self) -> f64 {
        2.0 * self.k * self.k / self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega2().sqrt()
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega()
    }

    pub fn boosted(&self, dw: f64) -> SpringSystem {
        SpringSystem { w: self.w + dw, ..*self }
    }

    pub fn state(&self, t: f64) -> BaricentricState {
        let om = self.omega();
        let (s, c) = (om * t).sin_cos();
        BaricentricState { t, x: self.w * t, q: self.a * c, u: -self.a * om * s, w: self.w }
    }

    /// m/2(ẋ₁² + ẋ₂²) + k²/2(x₁ − x₂)² on the exact solution.
    pub fn total_energy_at(&self, t: f64) -> f64 {
        let om = self.omega();
        let s = (om * t).sin();
        let (v1, v2) = (self.w - self.a * om * s, self.w + self.a * om * s);
        let (x1, x2) = exact_solution(self, t);
        0.5 * self.m * (v1 * v1 + v2 * v2) + 0.5 * self.k * self.k * (x1 - x2).powi(2)
    }

    /// ε = m(w² + u²) + 2k²q² from a baricentric state.
    pub fn state_energy(&self, s: &BaricentricState) -> f64 {
        self.m * (s.w * s.w + s.u * s.u) + 2.0 * self.k * self.k * s.q * s.q
    }
}

/// x₁ = wt + A cos ωt, x₂ = wt − A cos ωt
pub fn exact_solution(sys: &SpringSystem, t: f64) -> (f64, f64) {
    let c = (sys.omega() * t).cos();
    (sys.w * t + sys.a * c, sys.w * t - sys.a * c)
}

/// m w² + m A² ω², after checking that the full energy is constant over ten
/// periods.
pub fn observer_energy(sys: &SpringSystem) -> Result<f64, MechError> {
    let e = sys.m * sys.w * sys.w + sys.m * sys.a * sys.a * sys.omega2();
    let span = 10.0 * sys.period();
    let drift = (0..10).map(|i| (sys.total_energy_at(span * i as f64 / 9.0) - e).abs()).fold(0.0, f64::max);
    if drift > 1e-12 * e.abs().max(1.0) {
        return Err(MechError::Drift(drift));
    }
    Ok(e)
}

/// E₂ − E₁ = m(A₂² − A₁²)ω²
pub fn relative_energy(s1: &SpringSystem, s2: &SpringSystem) -> Result<f64, MechError> {
    if s1.m != s2.m || s1.k != s2.k {
        return Err(MechError::Mismatch);
    }
    Ok(s1.m * (s2.a * s2.a - s1.a * s1.a) * s1.omega2())
}

/// Noether energy of L̃ = L − L̄ for ξ = ∂_t: ε − ε̄. Equals the relative
/// energy plus m(w² − w̄²).
pub fn augmented_mech_energy(cfg: &SpringSystem, vacuum: &SpringSystem) -> Result<f64, MechError> {
    if cfg.m != vacuum.m || cfg.k != vacuum.k {
        return Err(MechError::Mismatch);
    }
    let t = 0.37 * cfg.period();
    Ok(cfg.state_energy(&cfg.state(t)) - vacuum.state_energy(&vacuum.state(t)))
}

#[derive(Clone, Debug)]
pub struct BoostReport {
    pub boosts: Vec<f64>,
    pub values: Vec<f64>,
    pub spread: f64,
}

/// Relative energy after boosting both systems by the same velocity.
pub fn boost_invariance_check(s1: &SpringSystem, s2: &SpringSystem, boosts: &[f64]) -> Result<BoostReport, MechError> {
    let mut values = Vec::new();
    for &b in boosts {
        let (b1, b2) = (s1.boosted(b), s2.boosted(b));
        values.push(observer_energy(&b2)? - observer_energy(&b1)?);
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spread = if values.is_empty() { 0.0 } else { hi - lo };
    Ok(BoostReport { boosts: boosts.to_vec(), values, spread })
}

/// The spring pair as a theory on the time line:
/// 𝓛 = m/2(ẋ₁² + ẋ₂²) − k²/2(x₁ − x₂)².
pub struct SpringPair;

impl Theory for SpringPair {
    fn name(&self) -> &str {
        "spring_pair"
    }

    fn description(&self) -> String {
        "mechanics: two equal masses joined by a spring, on the time line".into()
    }

    fn formula(&self) -> String {
        "m/2 (x1'^2 + x2'^2) - k^2/2 (x1 - x2)^2".into()
    }

    fn fields(&self) -> Vec<RoleKind> {
        vec![RoleKind::Particle]
    }

    fn order(&self) -> usize {
        1
    }

    fn locality(&self) -> Locality {
        Locality::ConstantTime
    }

    fn chart_dim(&self) -> Option<usize> {
        Some(1)
    }

    fn density(&self, y: &FieldSet, calc: &mut dyn Calculus) -> Expr {
        let x = y.particle();
        let (x1, x2) = (x.at(&[0]), x.at(&[1]));
        let (v1, v2) = (calc.d(x1, 0), calc.d(x2, 0));
        let m = Expr::sym("m");
        let k = Expr::sym("k");
        let kin = m.mul(&Expr::rational(1, 2)).mul(&v1.square().add(&v2.square()));
        let pot = k.square().mul(&Expr::rational(1, 2)).mul(&x1.sub(x2).square());
        kin.sub(&pot)
    }
}

/// The exact solution as a configuration on the chart (t), with parameters
/// m, k, w, A.
pub fn spring_config(sys: &SpringSystem) -> FieldConfig {
    let chart = Chart::new(&["t"]).expect("chart");
    let t = Expr::sym("t");
    let (m, k, w, a) = (Expr::sym("m"), Expr::sym("k"), Expr::sym("w"), Expr::sym("A"));
    let om = Expr::int(2).mul(&k.square()).div(&m).sqrt();
    let osc = a.mul(&om.mul(&t).cos());
    let wt = w.mul(&t);
    let tensor = TensorField::new(1, vec![Slot::Alg(2)], vec![wt.add(&osc), wt.sub(&osc)]);
    let mut params = BTreeMap::new();
    params.insert("m".to_string(), sys.m);
    params.insert("k".to_string(), sys.k);
    params.insert("w".to_string(), sys.w);
    params.insert("A".to_string(), sys.a);
    let field = Field { name: "x".into(), role: Role::Particle, tensor };
    FieldConfig::new("spring_pair", chart, params, vec![field]).expect("spring configuration")
}

/// ω(∂y/∂A, £_{∂_t} y) at time t, from the variational engine. On the
/// exact solution it equals ∂E/∂A.
pub fn symplectic_amplitude_variation(sys: &SpringSystem, t: f64) -> Result<f64, MechError> {
    let cfg = spring_config(sys);
    let x = Deformation::parameter(&cfg, "A");
    let w = symplectic_form(&TheoryEntry::new(SpringPair), &cfg, &x, &SymmetryGenerator::coordinate(1, 0))?;
    Ok(w.values(&cfg, &[t])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(w: f64, a: f64) -> SpringSystem {
        SpringSystem::new(1.0, 1.0, w, a).unwrap()
    }

    #[test]
    fn positions_at_origin_of_time() {
        assert_eq!(exact_solution(&sys(3.0, 1.0), 0.0), (1.0, -1.0));
    }

    #[test]
    fn quarter_period_collapses() {
        let s = sys(2.0, 1.0);
        let t = 0.25 * s.period();
        let (x1, x2) = exact_solution(&s, t);
        assert!((x1 - 2.0 * t).abs() < 1e-12 && (x2 - 2.0 * t).abs() < 1e-12);
    }

    #[test]
    fn observer_energies() {
        assert!((observer_energy(&sys(0.0, 1.0)).unwrap() - 2.0).abs() < 1e-12);
        assert!((observer_energy(&sys(3.0, 0.0)).unwrap() - 9.0).abs() < 1e-12);
        assert_eq!(observer_energy(&sys(0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn relative_energy_ignores_frame() {
        for w in [0.0, 1.0, 5.0] {
            assert!((relative_energy(&sys(w, 1.0), &sys(w, 2.0)).unwrap() - 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn augmented_energy_offsets() {
        assert!((augmented_mech_energy(&sys(0.0, 2.0), &sys(0.0, 1.0)).unwrap() - 6.0).abs() < 1e-12);
        assert!((augmented_mech_energy(&sys(1.0, 1.0), &sys(0.0, 1.0)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symplectic_form_gives_energy_variation() {
        let s = SpringSystem::new(1.3, 0.8, 0.4, 0.9).unwrap();
        let h = 1e-6;
        let e = |a: f64| observer_energy(&SpringSystem { a, ..s }).unwrap();
        let fd = (e(s.a + h) - e(s.a - h)) / (2.0 * h);
        for t in [0.0, 0.3, 1.7] {
            let w = symplectic_amplitude_variation(&s, t).unwrap();
            assert!((w - fd).abs() < 1e-6 * fd.abs(), "t={t}: {w} vs {fd}");
        }
    }

    #[test]
    fn relative_energy_is_additive() {
        let (a, b, c) = (sys(0.0, 1.0), sys(0.0, 2.5), sys(0.0, 4.0));
        let ab = relative_energy(&a, &b).unwrap();
        let bc = relative_energy(&b, &c).unwrap();
        assert_eq!(relative_energy(&a, &c).unwrap(), ab + bc);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(SpringSystem::new(0.0, 1.0, 0.0, 1.0).is_err());
        let a = SpringSystem::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let b = SpringSystem::new(2.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(relative_energy(&a, &b), Err(MechError::Mismatch));
    }
}
