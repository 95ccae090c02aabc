use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::eval::Env;
use super::expr::Symbol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChartError {
    #[error("a chart needs at least one coordinate")]
    Empty,
    #[error("duplicate coordinate `{0}`")]
    Duplicate(String),
    #[error("unknown coordinate `{0}`")]
    Unknown(String),
}

/// Single coordinate patch: ordered names plus the box that random sample
/// points are drawn from.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    coords: Vec<Symbol>,
    ranges: Vec<(f64, f64)>,
    pub signature: Option<String>,
}

impl Chart {
    pub fn new(names: &[&str]) -> Result<Chart, ChartError> {
        if names.is_empty() {
            return Err(ChartError::Empty);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(ChartError::Duplicate(n.to_string()));
            }
        }
        Ok(Chart {
            coords: names.iter().map(|n| Symbol::from(*n)).collect(),
            ranges: vec![(-1.0, 1.0); names.len()],
            signature: None,
        })
    }

    pub fn with_ranges(mut self, ranges: &[(f64, f64)]) -> Chart {
        assert_eq!(ranges.len(), self.dim());
        self.ranges = ranges.to_vec();
        self
    }

    pub fn with_signature(mut self, sig: &str) -> Chart {
        self.signature = Some(sig.to_string());
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &str {
        &self.coords[i]
    }

    pub fn ranges(&self) -> &[(f64, f64)] {
        &self.ranges
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ChartError> {
        self.coords
            .iter()
            .position(|c| &**c == name)
            .ok_or_else(|| ChartError::Unknown(name.to_string()))
    }

    pub fn bind(&self, point: &[f64], env: &mut Env) {
        for (c, x) in self.coords.iter().zip(point) {
            env.set(c, *x);
        }
    }
}

/// Deterministic random points inside a chart's sampling box.
pub struct Sampler {
    rng: ChaCha8Rng,
    ranges: Vec<(f64, f64)>,
}

impl Sampler {
    pub fn new(chart: &Chart, seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), ranges: chart.ranges.clone() }
    }

    pub fn point(&mut self) -> Vec<f64> {
        let ranges = self.ranges.clone();
        ranges.iter().map(|&(a, b)| self.rng.gen_range(a..b)).collect()
    }

    pub fn uniform(&mut self, a: f64, b: f64) -> f64 {
        self.rng.gen_range(a..b)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_charts() {
        assert_eq!(Chart::new(&[]), Err(ChartError::Empty));
        assert_eq!(Chart::new(&["x", "x"]), Err(ChartError::Duplicate("x".into())));
        assert_eq!(Chart::new(&["t", "x"]).unwrap().index_of("x"), Ok(1));
    }

    #[test]
    fn sampler_is_reproducible() {
        let c = Chart::new(&["t", "r"]).unwrap().with_ranges(&[(0.0, 1.0), (3.0, 4.0)]);
        let a = Sampler::new(&c, 7).point();
        let b = Sampler::new(&c, 7).point();
        assert_eq!(a, b);
        assert!((3.0..4.0).contains(&a[1]));
    }
}
