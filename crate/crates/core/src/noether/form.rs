use crate::geom::{Calculus, FieldConfig};
use crate::symker::{EvalError, Expr, Tape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// m-form on ds
    Top,
    /// (m−1)-form on ds_μ
    Codim1,
    /// (m−2)-form on ds_{μν}
    Codim2,
}

/// Horizontal form with Expr coefficients.
///
/// Codim2 forms store the full antisymmetric array U^{μν}; the form they
/// denote is Σ_{μ<ν} U^{μν} ds_{μν} with ds_{μν} = ∂_ν ⌟ ∂_μ ⌟ ds. With
/// this convention (Div U)^μ = d_ν U^{μν}.
#[derive(Clone, Debug)]
pub struct HorizontalForm {
    m: usize,
    degree: Degree,
    coeffs: Vec<Expr>,
}

impl HorizontalForm {
    pub fn top(m: usize, c: Expr) -> HorizontalForm {
        HorizontalForm { m, degree: Degree::Top, coeffs: vec![c] }
    }

    pub fn codim1(coeffs: Vec<Expr>) -> HorizontalForm {
        HorizontalForm { m: coeffs.len(), degree: Degree::Codim1, coeffs }
    }

    /// Built from the μ<ν coefficients; the rest follow by antisymmetry.
    pub fn codim2(m: usize, mut f: impl FnMut(usize, usize) -> Expr) -> HorizontalForm {
        let mut coeffs = vec![Expr::zero(); m * m];
        for a in 0..m {
            for b in a + 1..m {
                let v = f(a, b);
                coeffs[b * m + a] = v.neg();
                coeffs[a * m + b] = v;
            }
        }
        HorizontalForm { m, degree: Degree::Codim2, coeffs }
    }

    pub fn zero(m: usize, degree: Degree) -> HorizontalForm {
        let n = match degree {
            Degree::Top => 1,
            Degree::Codim1 => m,
            Degree::Codim2 => m * m,
        };
        HorizontalForm { m, degree, coeffs: vec![Expr::zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn coeffs(&self) -> &[Expr] {
        &self.coeffs
    }

    pub fn density(&self) -> &Expr {
        assert_eq!(self.degree, Degree::Top);
        &self.coeffs[0]
    }

    pub fn get(&self, mu: usize) -> &Expr {
        assert_eq!(self.degree, Degree::Codim1);
        &self.coeffs[mu]
    }

    pub fn get2(&self, mu: usize, nu: usize) -> &Expr {
        assert_eq!(self.degree, Degree::Codim2);
        &self.coeffs[mu * self.m + nu]
    }

    pub fn map(&self, f: impl FnMut(&Expr) -> Expr) -> HorizontalForm {
        HorizontalForm { m: self.m, degree: self.degree, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn zip(&self, o: &HorizontalForm, mut f: impl FnMut(&Expr, &Expr) -> Expr) -> HorizontalForm {
        assert_eq!((self.m, self.degree), (o.m, o.degree), "forms of different degree");
        HorizontalForm {
            m: self.m,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &HorizontalForm) -> HorizontalForm {
        self.zip(o, Expr::add)
    }

    pub fn sub(&self, o: &HorizontalForm) -> HorizontalForm {
        self.zip(o, Expr::sub)
    }

    pub fn scale(&self, c: &Expr) -> HorizontalForm {
        self.map(|e| c.mul(e))
    }

    /// Formal divergence: degree goes up by one.
    pub fn divergence(&self, calc: &mut dyn Calculus) -> HorizontalForm {
        let m = self.m;
        match self.degree {
            Degree::Codim1 => HorizontalForm::top(m, Expr::sum((0..m).map(|mu| calc.d(&self.coeffs[mu], mu)))),
            Degree::Codim2 => HorizontalForm::codim1(
                (0..m)
                    .map(|mu| Expr::sum((0..m).map(|nu| calc.d(&self.coeffs[mu * m + nu], nu))))
                    .collect(),
            ),
            Degree::Top => panic!("divergence of a top form"),
        }
    }

    /// i_ξ: Top → Codim1 (ξ^μ 𝓛), Codim1 → Codim2 (F^μ ξ^ν − F^ν ξ^μ).
    pub fn interior(&self, xi: &[Expr]) -> HorizontalForm {
        match self.degree {
            Degree::Top => HorizontalForm::codim1(xi.iter().map(|x| x.mul(&self.coeffs[0])).collect()),
            Degree::Codim1 => HorizontalForm::codim2(self.m, |a, b| {
                self.coeffs[a].mul(&xi[b]).sub(&self.coeffs[b].mul(&xi[a]))
            }),
            Degree::Codim2 => panic!("interior product of an (m-2)-form is not used"),
        }
    }

    /// Lie derivative of a Codim1 form (a vector density F^μ):
    /// ξ^ν d_ν F^μ − F^ν d_ν ξ^μ + F^μ d_ν ξ^ν.
    pub fn lie(&self, xi: &[Expr], calc: &mut dyn Calculus) -> HorizontalForm {
        assert_eq!(self.degree, Degree::Codim1);
        let m = self.m;
        let div: Expr = Expr::sum((0..m).map(|n| calc.d(&xi[n], n)));
        HorizontalForm::codim1(
            (0..m)
                .map(|mu| {
                    let mut t = Vec::new();
                    for nu in 0..m {
                        t.push(xi[nu].mul(&calc.d(&self.coeffs[mu], nu)));
                        t.push(self.coeffs[nu].mul(&calc.d(&xi[mu], nu)).neg());
                    }
                    t.push(self.coeffs[mu].mul(&div));
                    Expr::sum(t)
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Expr::is_zero)
    }

    /// max |coefficient| over the points.
    pub fn max_abs(&self, cfg: &FieldConfig, points: &[Vec<f64>]) -> Result<f64, EvalError> {
        crate::geom::max_abs(&self.coeffs, cfg, points)
    }

    /// Numeric coefficients at one point.
    pub fn values(&self, cfg: &FieldConfig, point: &[f64]) -> Result<Vec<f64>, EvalError> {
        Tape::compile(&self.coeffs).eval_env(&cfg.env_at(point))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::CoordCalculus;
    use crate::symker::{parse, Chart};

    #[test]
    fn divergence_squares_to_zero() {
        let c = Chart::new(&["t", "x", "y"]).unwrap();
        let u = HorizontalForm::codim2(3, |a, b| parse(&format!("t^{a}*x*y^{b} + sin(x*{b})"), &c, &[]).unwrap());
        let mut calc = CoordCalculus::new(c.coords());
        let dd = u.divergence(&mut calc).divergence(&mut calc);
        assert!(dd.density().simplify().is_zero());
    }

    #[test]
    fn constant_forms_are_closed() {
        let u = HorizontalForm::codim2(4, |a, b| Expr::int((a + 2 * b) as i64));
        let c = Chart::new(&["a", "b", "c", "d"]).unwrap();
        assert!(u.divergence(&mut CoordCalculus::new(c.coords())).is_zero());
    }
}
