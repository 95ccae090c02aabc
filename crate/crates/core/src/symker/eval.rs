use std::collections::HashMap;

use rustc_hash::FxHashMap;

use thiserror::Error;

use super::expr::{Expr, Func, Node, Symbol};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} argument outside its domain")]
    Domain(&'static str),
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("non-finite result")]
    NonFinite,
}

/// Symbol values for evaluation (coordinates and parameters alike).
#[derive(Clone, Debug, Default)]
pub struct Env {
    vals: HashMap<Symbol, f64>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn set(&mut self, name: &str, v: f64) -> &mut Env {
        self.vals.insert(Symbol::from(name), v);
        self
    }

    pub fn with(mut self, name: &str, v: f64) -> Env {
        self.set(name, v);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.vals.get(name).copied()
    }

    pub fn extend<'a>(&mut self, it: impl IntoIterator<Item = (&'a str, f64)>) {
        for (k, v) in it {
            self.set(k, v);
        }
    }
}

impl<'a> FromIterator<(&'a str, f64)> for Env {
    fn from_iter<I: IntoIterator<Item = (&'a str, f64)>>(it: I) -> Env {
        let mut e = Env::new();
        e.extend(it);
        e
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Const(f64),
    Input(u32),
    Neg(u32),
    Add(u32, u32),
    Mul(u32, u32),
    Div(u32, u32),
    Powi(u32, i32),
    Powf(u32, f64),
    Func(Func, u32),
}

#[derive(Hash, PartialEq, Eq)]
struct OpKey(u8, u32, u32, u64);

fn key(op: &Op) -> OpKey {
    match *op {
        Op::Const(x) => OpKey(0, 0, 0, x.to_bits()),
        Op::Input(i) => OpKey(1, i, 0, 0),
        Op::Neg(a) => OpKey(2, a, 0, 0),
        Op::Add(a, b) => OpKey(3, a.min(b), a.max(b), 0),
        Op::Mul(a, b) => OpKey(4, a.min(b), a.max(b), 0),
        Op::Div(a, b) => OpKey(5, a, b, 0),
        Op::Powi(a, n) => OpKey(6, a, 0, n as u64),
        Op::Powf(a, x) => OpKey(7, a, 0, x.to_bits()),
        Op::Func(f, a) => OpKey(8 + f as u8, a, 0, 0),
    }
}

/// Straight-line program for evaluating many roots at many points, with
/// common subexpressions merged.
#[derive(Clone, Debug)]
pub struct Tape {
    ops: Vec<Op>,
    inputs: Vec<Symbol>,
    outputs: Vec<u32>,
}

impl Tape {
    pub fn compile(roots: &[Expr]) -> Tape {
        let mut ops: Vec<Op> = Vec::new();
        let mut by_key: FxHashMap<OpKey, u32> = FxHashMap::default();
        let mut by_node: FxHashMap<usize, u32> = FxHashMap::default();
        let mut inputs: Vec<Symbol> = Vec::new();
        let mut input_idx: FxHashMap<Symbol, u32> = FxHashMap::default();
        for n in Expr::postorder(roots) {
            let c = |e: &Expr| by_node[&e.addr()];
            let op = match n.node() {
                Node::Num(x) => Op::Const(x.to_f64()),
                Node::Sym(s) => {
                    let next = inputs.len() as u32;
                    let i = *input_idx.entry(s.clone()).or_insert_with(|| {
                        inputs.push(s.clone());
                        next
                    });
                    Op::Input(i)
                }
                Node::Neg(a) => Op::Neg(c(a)),
                Node::Add(a, b) => Op::Add(c(a), c(b)),
                Node::Mul(a, b) => Op::Mul(c(a), c(b)),
                Node::Div(a, b) => Op::Div(c(a), c(b)),
                Node::Pow(a, k) => match k.as_integer() {
                    Some(i) if i.abs() < 1 << 20 => Op::Powi(c(a), i as i32),
                    _ => Op::Powf(c(a), k.to_f64()),
                },
                Node::Func(f, a) => Op::Func(*f, c(a)),
            };
            let idx = *by_key.entry(key(&op)).or_insert_with(|| {
                ops.push(op);
                ops.len() as u32 - 1
            });
            by_node.insert(n.addr(), idx);
        }
        let outputs = roots.iter().map(|r| by_node[&r.addr()]).collect();
        Tape { ops, inputs, outputs }
    }

    pub fn inputs(&self) -> &[Symbol] {
        &self.inputs
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Input vector in tape order.
    pub fn bind(&self, env: &Env) -> Result<Vec<f64>, EvalError> {
        self.inputs
            .iter()
            .map(|s| env.get(s).ok_or_else(|| EvalError::Unbound(s.to_string())))
            .collect()
    }

    pub fn eval_env(&self, env: &Env) -> Result<Vec<f64>, EvalError> {
        let x = self.bind(env)?;
        self.eval(&x)
    }

    pub fn eval(&self, inputs: &[f64]) -> Result<Vec<f64>, EvalError> {
        let mut buf: Vec<f64> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v = match *op {
                Op::Const(x) => x,
                Op::Input(i) => inputs[i as usize],
                Op::Neg(a) => -buf[a as usize],
                Op::Add(a, b) => buf[a as usize] + buf[b as usize],
                Op::Mul(a, b) => buf[a as usize] * buf[b as usize],
                Op::Div(a, b) => {
                    let d: f64 = buf[b as usize];
                    if d == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    buf[a as usize] / d
                }
                Op::Powi(a, n) => {
                    let x: f64 = buf[a as usize];
                    if x == 0.0 && n < 0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    x.powi(n)
                }
                Op::Powf(a, p) => {
                    let x: f64 = buf[a as usize];
                    if x < 0.0 {
                        return Err(EvalError::Domain("pow"));
                    }
                    if x == 0.0 && p < 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    x.powf(p)
                }
                Op::Func(f, a) => {
                    let x: f64 = buf[a as usize];
                    match f {
                        Func::Sqrt if x < 0.0 => return Err(EvalError::Domain("sqrt")),
                        Func::Sqrt => x.sqrt(),
                        Func::Sin => x.sin(),
                        Func::Cos => x.cos(),
                        Func::Exp => x.exp(),
                        Func::Ln if x <= 0.0 => return Err(EvalError::Domain("ln")),
                        Func::Ln => x.ln(),
                    }
                }
            };
            buf.push(v);
        }
        self.outputs
            .iter()
            .map(|&o| {
                let v = buf[o as usize];
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(EvalError::NonFinite)
                }
            })
            .collect()
    }
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<f64, EvalError> {
        Tape::compile(std::slice::from_ref(self)).eval_env(env).map(|v| v[0])
    }

    pub fn eval_with(&self, pairs: &[(&str, f64)]) -> Result<f64, EvalError> {
        self.eval(&pairs.iter().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_errors() {
        let r = Expr::sym("r");
        let m = Expr::sym("M");
        let e = Expr::one().div(&(Expr::one() - Expr::int(2) * &m / &r));
        assert_eq!(e.eval_with(&[("r", 2.0), ("M", 1.0)]), Err(EvalError::DivisionByZero));
        assert_eq!(Expr::sym("x").sqrt().eval_with(&[("x", -1.0)]), Err(EvalError::Domain("sqrt")));
        assert_eq!(Expr::sym("x").ln().eval_with(&[("x", 0.0)]), Err(EvalError::Domain("ln")));
        assert_eq!(Expr::sym("q").eval(&Env::new()), Err(EvalError::Unbound("q".into())));
    }

    #[test]
    fn tape_merges_common_subexpressions() {
        let x = Expr::sym("x");
        let a = x.sin() * x.cos();
        let b = x.cos() * x.sin();
        let t = Tape::compile(&[a.clone(), b]);
        assert_eq!(t.len(), 4);
        let v = t.eval(&[0.3]).unwrap();
        assert_eq!(v[0], v[1]);
    }
}
