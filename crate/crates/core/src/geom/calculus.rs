use crate::symker::{Differ, Expr, Symbol};

/// Source of total derivatives d_μ. Geometry is written against this so the
/// same code runs on explicit configurations (coordinate derivatives) and on
/// formal jet variables.
pub trait Calculus {
    fn dim(&self) -> usize;
    fn d(&mut self, e: &Expr, mu: usize) -> Expr;

    fn dd(&mut self, e: &Expr, mu: usize, nu: usize) -> Expr {
        let a = self.d(e, mu);
        self.d(&a, nu)
    }
}

/// Plain partial derivatives in chart coordinates.
pub struct CoordCalculus {
    differs: Vec<Differ>,
}

impl CoordCalculus {
    pub fn new(coords: &[Symbol]) -> CoordCalculus {
        CoordCalculus { differs: coords.iter().map(|c| Differ::partial(c)).collect() }
    }
}

impl Calculus for CoordCalculus {
    fn dim(&self) -> usize {
        self.differs.len()
    }

    fn d(&mut self, e: &Expr, mu: usize) -> Expr {
        self.differs[mu].d(e)
    }
}
