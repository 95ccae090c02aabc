use crate::symker::Expr;

/// Index slot kind. `Alg(n)` is an internal (gauge algebra) index of size n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Up,
    Down,
    Alg(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric(usize, usize),
    Antisymmetric(usize, usize),
}

/// Dense component array over a chart of dimension `m`.
#[derive(Clone, Debug)]
pub struct TensorField {
    m: usize,
    slots: Vec<Slot>,
    dims: Vec<usize>,
    comps: Vec<Expr>,
    pub symmetries: Vec<Symmetry>,
}

fn dims_of(m: usize, slots: &[Slot]) -> Vec<usize> {
    slots
        .iter()
        .map(|s| match s {
            Slot::Alg(n) => *n,
            _ => m,
        })
        .collect()
}

/// All multi-indices of a shape in row-major order.
pub fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0; dims.len()];
    for _ in 0..total {
        out.push(idx.clone());
        for k in (0..dims.len()).rev() {
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    out
}

impl TensorField {
    pub fn new(m: usize, slots: Vec<Slot>, comps: Vec<Expr>) -> TensorField {
        let dims = dims_of(m, &slots);
        assert_eq!(comps.len(), dims.iter().product::<usize>(), "component count does not match index structure");
        TensorField { m, slots, dims, comps, symmetries: Vec::new() }
    }

    pub fn from_fn(m: usize, slots: Vec<Slot>, mut f: impl FnMut(&[usize]) -> Expr) -> TensorField {
        let dims = dims_of(m, &slots);
        let comps = multi_indices(&dims).iter().map(|i| f(i)).collect();
        TensorField { m, slots, dims, comps, symmetries: Vec::new() }
    }

    pub fn zeros(m: usize, slots: Vec<Slot>) -> TensorField {
        TensorField::from_fn(m, slots, |_| Expr::zero())
    }

    /// Build from a function evaluated on the first index of each declared
    /// symmetric/antisymmetric pair only, mirroring the rest.
    pub fn from_fn_sym(m: usize, slots: Vec<Slot>, symmetries: Vec<Symmetry>, mut f: impl FnMut(&[usize]) -> Expr) -> TensorField {
        let dims = dims_of(m, &slots);
        let idx = multi_indices(&dims);
        let mut comps: Vec<Option<Expr>> = vec![None; idx.len()];
        let flat = |i: &[usize]| i.iter().zip(&dims).fold(0, |a, (x, d)| a * d + x);
        for i in &idx {
            let mut canon = i.clone();
            let mut sign = 1;
            let mut zero = false;
            for s in &symmetries {
                let (a, b, anti) = match *s {
                    Symmetry::Symmetric(a, b) => (a, b, false),
                    Symmetry::Antisymmetric(a, b) => (a, b, true),
                };
                if canon[a] > canon[b] {
                    canon.swap(a, b);
                    if anti {
                        sign = -sign;
                    }
                } else if anti && canon[a] == canon[b] {
                    zero = true;
                }
            }
            let k = flat(i);
            if zero {
                comps[k] = Some(Expr::zero());
                continue;
            }
            let kc = flat(&canon);
            if comps[kc].is_none() {
                comps[kc] = Some(f(&canon));
            }
            let v = comps[kc].clone().unwrap();
            comps[k] = Some(if sign < 0 { v.neg() } else { v });
        }
        TensorField { m, slots, dims, comps: comps.into_iter().map(Option::unwrap).collect(), symmetries }
    }

    pub fn with_symmetries(mut self, s: Vec<Symmetry>) -> TensorField {
        self.symmetries = s;
        self
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn shape(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn comps(&self) -> &[Expr] {
        &self.comps
    }

    pub fn comps_mut(&mut self) -> &mut [Expr] {
        &mut self.comps
    }

    pub fn flat_index(&self, i: &[usize]) -> usize {
        debug_assert_eq!(i.len(), self.dims.len());
        i.iter().zip(&self.dims).fold(0, |a, (x, d)| a * d + x)
    }

    pub fn at(&self, i: &[usize]) -> &Expr {
        &self.comps[self.flat_index(i)]
    }

    pub fn set(&mut self, i: &[usize], e: Expr) {
        let k = self.flat_index(i);
        self.comps[k] = e;
    }

    pub fn indices(&self) -> Vec<Vec<usize>> {
        multi_indices(&self.dims)
    }

    pub fn map(&self, f: impl FnMut(&Expr) -> Expr) -> TensorField {
        TensorField {
            m: self.m,
            slots: self.slots.clone(),
            dims: self.dims.clone(),
            comps: self.comps.iter().map(f).collect(),
            symmetries: self.symmetries.clone(),
        }
    }

    pub fn zip(&self, o: &TensorField, mut f: impl FnMut(&Expr, &Expr) -> Expr) -> TensorField {
        assert_eq!(self.dims, o.dims);
        TensorField {
            m: self.m,
            slots: self.slots.clone(),
            dims: self.dims.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect(),
            symmetries: self.symmetries.clone(),
        }
    }

    pub fn add(&self, o: &TensorField) -> TensorField {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &TensorField) -> TensorField {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Expr) -> TensorField {
        self.map(|a| c.mul(a))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirrored_construction() {
        let mut calls = 0;
        let t = TensorField::from_fn_sym(3, vec![Slot::Down, Slot::Down], vec![Symmetry::Antisymmetric(0, 1)], |i| {
            calls += 1;
            Expr::int((i[0] * 3 + i[1]) as i64 + 1)
        });
        assert_eq!(calls, 3);
        assert_eq!(*t.at(&[1, 0]), Expr::int(-2));
        assert!(t.at(&[2, 2]).is_zero());
    }

    #[test]
    fn shapes_include_algebra_slots() {
        let t = TensorField::zeros(4, vec![Slot::Alg(3), Slot::Down]);
        assert_eq!(t.comps().len(), 12);
        assert_eq!(t.flat_index(&[2, 1]), 9);
    }
}
