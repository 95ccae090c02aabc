//! Browser bindings for three small computations. Every function returns a
//! JSON string; errors come back as `{"error": "..."}`.

use std::f64::consts::PI;

use augvar::augment::{AlphaVariant, AugmentedTheory};
use augvar::evalnum::{quantity, solution, with_params, SurfaceSpec};
use augvar::geom::SymmetryGenerator;
use augvar::mech::{boost_invariance_check, observer_energy, relative_energy, SpringSystem};
use augvar::noether::lookup;
use augvar::symker::parse_free;
use wasm_bindgen::prelude::*;

fn error(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

/// Relative energy of two spring pairs sharing m, k and w, with its boost
/// table.
#[wasm_bindgen]
pub fn appendix_a(m: f64, k: f64, w: f64, a1: f64, a2: f64) -> String {
    let run = || -> Result<String, augvar::mech::MechError> {
        let s1 = SpringSystem::new(m, k, w, a1)?;
        let s2 = SpringSystem::new(m, k, w, a2)?;
        let (e1, e2) = (observer_energy(&s1)?, observer_energy(&s2)?);
        let table = boost_invariance_check(&s1, &s2, &[-10.0, -1.0, 0.0, 1.0, 5.0, 100.0])?;
        Ok(serde_json::json!({
            "omega2": s1.omega2(),
            "e1": e1,
            "e2": e2,
            "difference": e2 - e1,
            "relative_energy": relative_energy(&s1, &s2)?,
            "boosts": table.boosts,
            "boosted_differences": table.values,
        })
        .to_string())
    };
    run().unwrap_or_else(error)
}

/// ∮ U(l) for Schwarzschild of mass `m` against Minkowski space on spheres
/// of the given radii, with either the canonical or the tilde correction.
#[wasm_bindgen]
pub fn schwarzschild_energy(m: f64, radii: &[f64], tilde: bool) -> String {
    let run = || -> Result<String, Box<dyn std::error::Error>> {
        let h = lookup("hilbert")?;
        let aug = AugmentedTheory::with_variant(&h, if tilde { AlphaVariant::Tilde } else { AlphaVariant::Canonical });
        let sol = with_params(&solution("schwarzschild")?, &[("M", m)])?;
        let vac = solution("minkowski-spherical")?;
        let gen = SymmetryGenerator::coordinate(4, 0);
        let mut rows = Vec::new();
        for &r in radii {
            if r <= 2.0 * m {
                return Err(format!("r = {r} is inside the horizon r = {}", 2.0 * m).into());
            }
            let q = quantity(&aug, &sol, &vac, &gen, &SurfaceSpec::sphere(0.0, r).with_order(16)?, &[])?;
            rows.push(serde_json::json!({ "r": r, "value": q.value, "error": q.error }));
        }
        Ok(serde_json::json!({ "mass_term": 16.0 * PI * m, "rows": rows }).to_string())
    };
    run().unwrap_or_else(error)
}

/// Parses `text`, differentiates in `var` and evaluates both at `var = at`.
#[wasm_bindgen]
pub fn differentiate(text: &str, var: &str, at: f64) -> String {
    let run = || -> Result<String, Box<dyn std::error::Error>> {
        let e = parse_free(text)?;
        let d = e.diff(var).simplify();
        let p = [(var, at)];
        Ok(serde_json::json!({
            "expr": e.to_string(),
            "derivative": d.to_string(),
            "value": e.eval_with(&p)?,
            "derivative_value": d.eval_with(&p)?,
        })
        .to_string())
    };
    run().unwrap_or_else(error)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn appendix_a_difference() {
        let v = get(&appendix_a(1.0, 1.0, 5.0, 1.0, 2.0));
        assert_eq!(v["difference"], 6.0);
        assert!(get(&appendix_a(0.0, 1.0, 0.0, 1.0, 2.0))["error"].is_string());
    }

    #[test]
    fn schwarzschild_rows() {
        let v = get(&schwarzschild_energy(1.0, &[20.0, 40.0], true));
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[0]["value"].as_f64().unwrap() - 16.0 * PI).abs() < 1e-9);
        assert!(get(&schwarzschild_energy(1.0, &[1.5], false))["error"].is_string());
    }

    #[test]
    fn derivative_of_power() {
        let v = get(&differentiate("x^3 + sin(x)", "x", 0.0));
        assert_eq!(v["derivative_value"], 1.0);
        assert!(get(&differentiate("x +", "x", 0.0))["error"].is_string());
    }
}
