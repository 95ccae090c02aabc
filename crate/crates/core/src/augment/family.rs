use crate::geom::{FieldConfig, TensorField};
use crate::noether::Deformation;
use crate::symker::Expr;

use super::AugmentError;

/// A one-parameter curve of configurations y_s whose fields depend on the
/// symbol `param`.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    pub param: String,
    pub curve: FieldConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCheck {
    /// max |y_0 − ȳ| at sample points
    pub vacuum_deviation: f64,
    /// max |X − (y_h − y_{−h})/2h|
    pub generator_defect: f64,
}

impl FamilyCheck {
    pub fn pass(&self) -> bool {
        self.vacuum_deviation <= 1e-12 && self.generator_defect <= 1e-6
    }
}

impl SolutionFamily {
    pub fn new(param: &str, curve: FieldConfig) -> SolutionFamily {
        SolutionFamily { param: param.to_string(), curve }
    }

    /// y_s obtained from `cfg` by replacing the parameter p with s·p.
    pub fn scale_parameter(cfg: &FieldConfig, p: &str, param: &str) -> SolutionFamily {
        let sp = Expr::sym(param).mul(&Expr::sym(p));
        let ts = cfg.fields.iter().map(|f| f.tensor.map(|e| e.subs(p, &sp))).collect();
        SolutionFamily::new(param, cfg.with_tensors(ts))
    }

    /// ȳ + s B
    pub fn linear(vacuum: &FieldConfig, direction: &[TensorField], param: &str) -> SolutionFamily {
        let s = Expr::sym(param);
        let ts = vacuum.fields.iter().zip(direction).map(|(f, b)| f.tensor.zip(b, |a, b| a.add(&s.mul(b)))).collect();
        SolutionFamily::new(param, vacuum.with_tensors(ts))
    }

    fn subs(&self, v: &Expr) -> FieldConfig {
        let ts = self.curve.fields.iter().map(|f| f.tensor.map(|e| e.subs(&self.param, v))).collect();
        self.curve.with_tensors(ts)
    }

    pub fn at(&self, s: f64) -> FieldConfig {
        self.subs(&Expr::float(s))
    }

    pub fn initial(&self) -> FieldConfig {
        self.subs(&Expr::zero())
    }

    /// X = d/ds y_s at s = 0
    pub fn generator(&self) -> Deformation {
        let z = Expr::zero();
        Deformation::new(self.curve.fields.iter().map(|f| f.tensor.map(|e| e.diff(&self.param).subs(&self.param, &z))).collect())
    }

    pub fn check(&self, vacuum: &FieldConfig) -> Result<FamilyCheck, AugmentError> {
        let y0 = self.initial();
        let dev: Vec<Expr> = y0
            .fields
            .iter()
            .zip(&vacuum.fields)
            .flat_map(|(a, b)| a.tensor.sub(&b.tensor).comps().to_vec())
            .collect();
        let h = 1e-4;
        let (p, m) = (self.at(h), self.at(-h));
        let x = self.generator();
        let fd: Vec<Expr> = p
            .fields
            .iter()
            .zip(&m.fields)
            .zip(&x.tensors)
            .flat_map(|((a, b), x)| {
                a.tensor.zip(&b.tensor, |u, v| u.sub(v).mul(&Expr::float(0.5 / h))).sub(x).comps().to_vec()
            })
            .collect();
        // the curve may carry parameters the vacuum does not
        let mut at = vacuum.clone();
        for (k, v) in &self.curve.params {
            at.params.entry(k.clone()).or_insert(*v);
        }
        Ok(FamilyCheck {
            vacuum_deviation: at.residual(&dev, 5, 3)?,
            generator_defect: at.residual(&fd, 5, 3)?,
        })
    }
}
