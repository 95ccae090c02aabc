use rustc_hash::{FxHashMap, FxHashSet};

use super::expr::{Expr, Func, Node, NodeMemo, Symbol};
use super::number::Number;

type Leaf = Box<dyn Fn(&Symbol) -> Expr + Send + Sync>;

/// Forward-mode derivation with a memo shared across calls. The leaf rule
/// decides what a symbol differentiates to, so the same machinery serves
/// partial derivatives and total (jet) derivatives.
pub struct Differ {
    leaf: Leaf,
    memo: NodeMemo,
}

impl Differ {
    pub fn new(leaf: impl Fn(&Symbol) -> Expr + Send + Sync + 'static) -> Differ {
        Differ { leaf: Box::new(leaf), memo: NodeMemo::default() }
    }

    /// Partial derivative with respect to one symbol.
    pub fn partial(var: &str) -> Differ {
        let var: Symbol = Symbol::from(var);
        Differ::new(move |s| if *s == var { Expr::one() } else { Expr::zero() })
    }

    pub fn d(&mut self, e: &Expr) -> Expr {
        if let Some(v) = self.memo.get(e) {
            return v.clone();
        }
        let memo = &self.memo;
        let order = Expr::postorder_pruned(std::slice::from_ref(e), |n| memo.get(n).is_some());
        for n in order {
            let v = self.step(&n);
            self.memo.insert(&n, v);
        }
        self.memo.get(e).unwrap().clone()
    }

    fn step(&self, n: &Expr) -> Expr {
        let d = |e: &Expr| self.memo.get(e).unwrap().clone();
        match n.node() {
            Node::Num(_) => Expr::zero(),
            Node::Sym(s) => (self.leaf)(s),
            Node::Neg(a) => d(a).neg(),
            Node::Add(a, b) => d(a).add(&d(b)),
            Node::Mul(a, b) => d(a).mul(b).add(&a.mul(&d(b))),
            Node::Div(a, b) => {
                let (da, db) = (d(a), d(b));
                let first = da.div(b);
                if db.is_zero() {
                    first
                } else {
                    first.sub(&n.mul(&db).div(b))
                }
            }
            Node::Pow(a, k) => {
                let da = d(a);
                if da.is_zero() {
                    return da;
                }
                Expr::num(*k).mul(&a.pow(k.sub(Number::ONE))).mul(&da)
            }
            Node::Func(f, a) => {
                let da = d(a);
                if da.is_zero() {
                    return da;
                }
                match f {
                    Func::Sqrt => da.div(&Expr::int(2).mul(n)),
                    Func::Sin => a.cos().mul(&da),
                    Func::Cos => a.sin().mul(&da).neg(),
                    Func::Exp => n.mul(&da),
                    Func::Ln => da.div(a),
                }
            }
        }
    }
}

impl Expr {
    /// Exact partial derivative with respect to a symbol.
    pub fn diff(&self, var: &str) -> Expr {
        Differ::partial(var).d(self)
    }

    pub fn diff_n(&self, vars: &[&str]) -> Expr {
        vars.iter().fold(self.clone(), |e, v| e.diff(v))
    }
}

/// Reverse-mode gradient of one expression with respect to many symbols,
/// in a single sweep over the DAG.
pub fn gradient(e: &Expr, vars: &[Symbol]) -> Vec<Expr> {
    let wanted: FxHashSet<&Symbol> = vars.iter().collect();
    let order = Expr::postorder(std::slice::from_ref(e));
    let mut depends: FxHashSet<usize> = FxHashSet::default();
    for n in &order {
        let dep = match n.node() {
            Node::Sym(s) => wanted.contains(s),
            _ => n.children().any(|k| depends.contains(&k.addr())),
        };
        if dep {
            depends.insert(n.addr());
        }
    }
    let mut adj: FxHashMap<usize, Vec<Expr>> = FxHashMap::default();
    let mut found: FxHashMap<Symbol, Expr> = FxHashMap::default();
    if depends.contains(&e.addr()) {
        adj.insert(e.addr(), vec![Expr::one()]);
    }
    for n in order.iter().rev() {
        let Some(parts) = adj.remove(&n.addr()) else { continue };
        let a = Expr::sum(parts);
        if a.is_zero() {
            continue;
        }
        let mut push = |k: &Expr, v: Expr| {
            if depends.contains(&k.addr()) && !v.is_zero() {
                adj.entry(k.addr()).or_default().push(v);
            }
        };
        match n.node() {
            Node::Num(_) => {}
            // one symbol may live in several distinct nodes
            Node::Sym(s) => match found.get_mut(s) {
                Some(v) => *v = v.add(&a),
                None => {
                    found.insert(s.clone(), a);
                }
            },
            Node::Neg(x) => push(x, a.neg()),
            Node::Add(x, y) => {
                push(x, a.clone());
                push(y, a);
            }
            Node::Mul(x, y) => {
                push(x, a.mul(y));
                push(y, a.mul(x));
            }
            Node::Div(x, y) => {
                push(x, a.div(y));
                if depends.contains(&y.addr()) {
                    push(y, a.mul(n).div(y).neg());
                }
            }
            Node::Pow(x, k) => push(x, a.mul(&Expr::num(*k)).mul(&x.pow(k.sub(Number::ONE)))),
            Node::Func(f, x) => {
                let v = match f {
                    Func::Sqrt => a.div(&Expr::int(2).mul(n)),
                    Func::Sin => a.mul(&x.cos()),
                    Func::Cos => a.mul(&x.sin()).neg(),
                    Func::Exp => a.mul(n),
                    Func::Ln => a.div(x),
                };
                push(x, v)
            }
        }
    }
    vars.iter().map(|v| found.remove(v).unwrap_or_else(Expr::zero)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Expr {
        Expr::sym(n)
    }

    #[test]
    fn basic_rules() {
        assert!(Expr::int(5).diff("x").is_zero());
        assert_eq!((s("x") * s("y")).diff("x"), s("y"));
        let e = Expr::one() - Expr::int(2) * s("M") / s("r");
        let d = e.diff("r");
        let env = [("M", 1.0), ("r", 2.0)];
        assert!((d.eval_with(&env).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gradient_matches_forward_mode() {
        let (x, y) = (s("x"), s("y"));
        let e = (x.clone() * y.clone()).sin() / (Expr::one() + x.square()) + (y.clone() * x.clone()).sqrt();
        let g = gradient(&e, &[Symbol::from("x"), Symbol::from("y"), Symbol::from("z")]);
        let env = [("x", 0.7), ("y", 1.3)];
        for (i, v) in ["x", "y"].iter().enumerate() {
            let fwd = e.diff(v).eval_with(&env).unwrap();
            assert!((g[i].eval_with(&env).unwrap() - fwd).abs() < 1e-14);
        }
        assert!(g[2].is_zero());
    }

    #[test]
    fn gradient_sums_over_separate_symbol_nodes() {
        // two distinct allocations of the same symbol
        let e = s("q") * s("x") + s("q").square();
        let g = gradient(&e, &[Symbol::from("q")]);
        let env = [("q", 0.5), ("x", 3.0)];
        assert!((g[0].eval_with(&env).unwrap() - 4.0).abs() < 1e-14);
    }
}
