use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("structure constants are not antisymmetric at ({0},{1},{2})")]
    NotAntisymmetric(usize, usize, usize),
    #[error("Jacobi identity fails by {0:e}")]
    Jacobi(f64),
    #[error("pairing is not symmetric")]
    PairingNotSymmetric,
    #[error("pairing is not ad-invariant (defect {0:e})")]
    PairingNotInvariant(f64),
    #[error("unknown algebra `{0}`")]
    Unknown(String),
}

/// Lie algebra given by structure constants c^A_{BC} and an invariant
/// symmetric pairing η_{AB}.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeAlgebra {
    pub name: String,
    dim: usize,
    c: Vec<f64>,
    eta: Vec<f64>,
}

pub fn levi_civita(idx: &[usize]) -> i64 {
    let n = idx.len();
    let mut sign = 1;
    for i in 0..n {
        for j in i + 1..n {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

impl GaugeAlgebra {
    pub fn new(name: &str, dim: usize, c: Vec<f64>, eta: Vec<f64>) -> Result<GaugeAlgebra, AlgebraError> {
        assert_eq!(c.len(), dim * dim * dim);
        assert_eq!(eta.len(), dim * dim);
        let a = GaugeAlgebra { name: name.to_string(), dim, c, eta };
        a.validate()?;
        Ok(a)
    }

    pub fn abelian(n: usize) -> GaugeAlgebra {
        let mut eta = vec![0.0; n * n];
        for i in 0..n {
            eta[i * n + i] = 1.0;
        }
        GaugeAlgebra { name: format!("abelian:{n}"), dim: n, c: vec![0.0; n * n * n], eta }
    }

    /// so(3) with c^i_{jk} = ε_{ijk} and η = δ.
    pub fn so3() -> GaugeAlgebra {
        let mut c = vec![0.0; 27];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    c[i * 9 + j * 3 + k] = levi_civita(&[i, j, k]) as f64;
                }
            }
        }
        let mut eta = vec![0.0; 9];
        for i in 0..3 {
            eta[i * 4] = 1.0;
        }
        GaugeAlgebra { name: "so3".into(), dim: 3, c, eta }
    }

    pub fn by_name(name: &str) -> Result<GaugeAlgebra, AlgebraError> {
        if name == "so3" {
            return Ok(GaugeAlgebra::so3());
        }
        if let Some(n) = name.strip_prefix("abelian:").and_then(|n| n.parse().ok()) {
            return Ok(GaugeAlgebra::abelian(n));
        }
        if name == "abelian" || name == "u1" {
            return Ok(GaugeAlgebra::abelian(1));
        }
        Err(AlgebraError::Unknown(name.to_string()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self, a: usize, b: usize, c: usize) -> f64 {
        self.c[(a * self.dim + b) * self.dim + c]
    }

    pub fn eta(&self, a: usize, b: usize) -> f64 {
        self.eta[a * self.dim + b]
    }

    /// c_{ABC} = η_{AD} c^D_{BC}.
    pub fn c_lower(&self, a: usize, b: usize, c: usize) -> f64 {
        (0..self.dim).map(|d| self.eta(a, d) * self.c(d, b, c)).sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|&x| x == 0.0)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.c(a, b, c) != -self.c(a, c, b) {
                        return Err(AlgebraError::NotAntisymmetric(a, b, c));
                    }
                }
                if self.eta(a, b) != self.eta(b, a) {
                    return Err(AlgebraError::PairingNotSymmetric);
                }
            }
        }
        // c^A_{BE} c^E_{CD} + cyclic(B,C,D) = 0
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let s: f64 = (0..n)
                            .map(|e| {
                                self.c(a, b, e) * self.c(e, c, d)
                                    + self.c(a, c, e) * self.c(e, d, b)
                                    + self.c(a, d, e) * self.c(e, b, c)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        if worst > 1e-12 {
            return Err(AlgebraError::Jacobi(worst));
        }
        // ad-invariance of η: c_{ABC} = -c_{CBA}
        let mut inv: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    inv = inv.max((self.c_lower(a, b, c) + self.c_lower(c, b, a)).abs());
                }
            }
        }
        if inv > 1e-12 {
            return Err(AlgebraError::PairingNotInvariant(inv));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        GaugeAlgebra::so3().validate().unwrap();
        GaugeAlgebra::abelian(2).validate().unwrap();
        assert_eq!(GaugeAlgebra::so3().c(0, 1, 2), 1.0);
        assert_eq!(GaugeAlgebra::so3().c(0, 2, 1), -1.0);
    }

    #[test]
    fn rejects_broken_constants() {
        let mut c = vec![0.0; 8];
        c[1] = 1.0; // c^0_{01} without its antisymmetric partner
        assert_eq!(GaugeAlgebra::new("bad", 2, c, vec![1.0, 0.0, 0.0, 1.0]), Err(AlgebraError::NotAntisymmetric(0, 0, 1)));
    }
}
