use std::collections::{BTreeSet, HashMap};

use rustc_hash::{FxHashMap, FxHashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::number::Number;

pub type Symbol = Arc<str>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Sqrt,
    Sin,
    Cos,
    Exp,
    Ln,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            _ => return None,
        })
    }
}

#[derive(Debug)]
pub enum Node {
    Num(Number),
    Sym(Symbol),
    Neg(Expr),
    Add(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Pow(Expr, Number),
    Func(Func, Expr),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    hash: u64,
}

/// Immutable expression DAG. Cloning is a reference-count bump; equal
/// subexpressions may be shared freely.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

const K: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(h: u64, v: u64) -> u64 {
    (h.rotate_left(5) ^ v).wrapping_mul(K)
}

fn str_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

impl Expr {
    fn make(node: Node) -> Expr {
        let hash = match &node {
            Node::Num(n) => {
                let (a, b) = n.hash_bits();
                mix(mix(1, a), b)
            }
            Node::Sym(s) => mix(2, str_hash(s)),
            Node::Neg(a) => mix(3, a.hash()),
            Node::Add(a, b) => mix(mix(4, a.hash()), b.hash()),
            Node::Mul(a, b) => mix(mix(5, a.hash()), b.hash()),
            Node::Div(a, b) => mix(mix(6, a.hash()), b.hash()),
            Node::Pow(a, n) => {
                let (x, y) = n.hash_bits();
                mix(mix(mix(7, a.hash()), x), y)
            }
            Node::Func(f, a) => mix(mix(8, *f as u64), a.hash()),
        };
        Expr(Arc::new(Inner { node, hash }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn hash(&self) -> u64 {
        self.0.hash
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn num(n: Number) -> Expr {
        Expr::make(Node::Num(n))
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(Number::int(n))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::num(Number::ratio(n as i128, d as i128))
    }

    pub fn float(x: f64) -> Expr {
        Expr::num(Number::from_f64(x))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn pi() -> Expr {
        Expr::num(Number::Float(std::f64::consts::PI))
    }

    pub fn sym(name: &str) -> Expr {
        Expr::make(Node::Sym(Arc::from(name)))
    }

    pub fn symbol(name: Symbol) -> Expr {
        Expr::make(Node::Sym(name))
    }

    pub fn as_num(&self) -> Option<Number> {
        match self.node() {
            Node::Num(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&Symbol> {
        match self.node() {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_num().is_some_and(Number::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_num().is_some_and(Number::is_one)
    }

    pub fn neg(&self) -> Expr {
        match self.node() {
            Node::Num(n) => Expr::num(n.neg()),
            Node::Neg(a) => a.clone(),
            Node::Mul(a, b) if a.as_num().is_some() => {
                Expr::make(Node::Mul(Expr::num(a.as_num().unwrap().neg()), b.clone()))
            }
            _ => Expr::make(Node::Neg(self.clone())),
        }
    }

    pub fn add(&self, o: &Expr) -> Expr {
        match (self.as_num(), o.as_num()) {
            (Some(a), Some(b)) => Expr::num(a.add(b)),
            (Some(a), _) if a.is_zero() => o.clone(),
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ => Expr::make(Node::Add(self.clone(), o.clone())),
        }
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        if self == o {
            return Expr::zero();
        }
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        match (self.as_num(), o.as_num()) {
            (Some(a), Some(b)) => Expr::num(a.mul(b)),
            (Some(a), _) => Expr::scale(a, o),
            (_, Some(b)) => Expr::scale(b, self),
            _ => Expr::make(Node::Mul(self.clone(), o.clone())),
        }
    }

    fn scale(c: Number, e: &Expr) -> Expr {
        if c.is_zero() {
            Expr::zero()
        } else if c.is_one() {
            e.clone()
        } else if c.is_minus_one() {
            e.neg()
        } else if let Node::Mul(a, b) = e.node() {
            match a.as_num() {
                Some(n) => Expr::scale(c.mul(n), b),
                None => Expr::make(Node::Mul(Expr::num(c), e.clone())),
            }
        } else if let Node::Neg(a) = e.node() {
            Expr::scale(c.neg(), a)
        } else {
            Expr::make(Node::Mul(Expr::num(c), e.clone()))
        }
    }

    pub fn div(&self, o: &Expr) -> Expr {
        if self.is_zero() && !o.is_zero() {
            return Expr::zero();
        }
        match o.as_num() {
            Some(b) if !b.is_zero() => match self.as_num() {
                Some(a) => Expr::num(a.div(b).unwrap()),
                None => Expr::scale(Number::ONE.div(b).unwrap(), self),
            },
            _ => Expr::make(Node::Div(self.clone(), o.clone())),
        }
    }

    pub fn powi(&self, n: i64) -> Expr {
        self.pow(Number::int(n))
    }

    pub fn pow(&self, n: Number) -> Expr {
        if n.is_zero() {
            return Expr::one();
        }
        if n.is_one() {
            return self.clone();
        }
        if let Some(b) = self.as_num() {
            if let Some(v) = b.pow(n) {
                if v.is_exact() || !b.is_exact() {
                    return Expr::num(v);
                }
            }
        }
        if let (Node::Pow(a, m), Some(_)) = (self.node(), n.as_integer()) {
            return a.pow(m.mul(n));
        }
        Expr::make(Node::Pow(self.clone(), n))
    }

    pub fn square(&self) -> Expr {
        self.powi(2)
    }

    pub fn recip(&self) -> Expr {
        Expr::one().div(self)
    }

    pub fn func(f: Func, a: &Expr) -> Expr {
        if let Some(n) = a.as_num() {
            let x = n.to_f64();
            let exact = match f {
                Func::Sqrt => match n {
                    Number::Rat(p, q) if p >= 0 => {
                        let (sp, sq) = ((p as f64).sqrt().round() as i64, (q as f64).sqrt().round() as i64);
                        (sp.checked_mul(sp) == Some(p) && sq.checked_mul(sq) == Some(q))
                            .then(|| Number::Rat(sp, sq))
                    }
                    _ => None,
                },
                Func::Sin if n.is_zero() => Some(Number::ZERO),
                Func::Cos | Func::Exp if n.is_zero() => Some(Number::ONE),
                Func::Ln if n.is_one() => Some(Number::ZERO),
                _ => None,
            };
            if let Some(v) = exact {
                return Expr::num(v);
            }
            let v = match f {
                Func::Sqrt if x >= 0.0 => Some(x.sqrt()),
                Func::Sin => Some(x.sin()),
                Func::Cos => Some(x.cos()),
                Func::Exp => Some(x.exp()).filter(|v| v.is_finite()),
                Func::Ln if x > 0.0 => Some(x.ln()),
                _ => None,
            };
            if let Some(v) = v {
                return Expr::num(Number::Float(v));
            }
        }
        Expr::make(Node::Func(f, a.clone()))
    }

    pub fn sqrt(&self) -> Expr {
        Expr::func(Func::Sqrt, self)
    }
    pub fn sin(&self) -> Expr {
        Expr::func(Func::Sin, self)
    }
    pub fn cos(&self) -> Expr {
        Expr::func(Func::Cos, self)
    }
    pub fn exp(&self) -> Expr {
        Expr::func(Func::Exp, self)
    }
    pub fn ln(&self) -> Expr {
        Expr::func(Func::Ln, self)
    }

    /// Balanced sum; keeps the DAG shallow for long sums.
    pub fn sum<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        let v: Vec<Expr> = terms.into_iter().filter(|e| !e.is_zero()).collect();
        fn go(v: &[Expr]) -> Expr {
            match v.len() {
                0 => Expr::zero(),
                1 => v[0].clone(),
                n => go(&v[..n / 2]).add(&go(&v[n / 2..])),
            }
        }
        go(&v)
    }

    pub fn product<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        let v: Vec<Expr> = factors.into_iter().collect();
        if v.iter().any(Expr::is_zero) {
            return Expr::zero();
        }
        fn go(v: &[Expr]) -> Expr {
            match v.len() {
                0 => Expr::one(),
                1 => v[0].clone(),
                n => go(&v[..n / 2]).mul(&go(&v[n / 2..])),
            }
        }
        go(&v)
    }

    pub fn children(&self) -> ChildIter<'_> {
        let (a, b) = match self.node() {
            Node::Num(_) | Node::Sym(_) => (None, None),
            Node::Neg(a) | Node::Pow(a, _) | Node::Func(_, a) => (Some(a), None),
            Node::Add(a, b) | Node::Mul(a, b) | Node::Div(a, b) => (Some(a), Some(b)),
        };
        ChildIter { a, b }
    }

    /// Rebuild this node with new children through the smart constructors.
    pub fn rebuild(&self, kids: &[Expr]) -> Expr {
        match self.node() {
            Node::Num(_) | Node::Sym(_) => self.clone(),
            Node::Neg(_) => kids[0].neg(),
            Node::Pow(_, n) => kids[0].pow(*n),
            Node::Func(f, _) => Expr::func(*f, &kids[0]),
            Node::Add(..) => kids[0].add(&kids[1]),
            Node::Mul(..) => kids[0].mul(&kids[1]),
            Node::Div(..) => kids[0].div(&kids[1]),
        }
    }

    /// Distinct nodes reachable from `roots`, children before parents.
    pub fn postorder(roots: &[Expr]) -> Vec<Expr> {
        Expr::postorder_pruned(roots, |_| false)
    }

    /// Postorder that does not descend into (or emit) nodes for which
    /// `done` holds.
    pub(crate) fn postorder_pruned(roots: &[Expr], done: impl Fn(&Expr) -> bool) -> Vec<Expr> {
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        let mut stack: Vec<(Expr, bool)> = roots.iter().rev().map(|e| (e.clone(), false)).collect();
        while let Some((e, expanded)) = stack.pop() {
            if expanded {
                out.push(e);
                continue;
            }
            if !seen.insert(e.addr()) || done(&e) {
                continue;
            }
            stack.push((e.clone(), true));
            let kids: Vec<Expr> = e.children().cloned().collect();
            for k in kids.into_iter().rev() {
                if !seen.contains(&k.addr()) {
                    stack.push((k, false));
                }
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        Expr::postorder(std::slice::from_ref(self)).len()
    }

    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        free_symbols(std::slice::from_ref(self))
    }

    pub fn depends_on(&self, name: &str) -> bool {
        Expr::postorder(std::slice::from_ref(self))
            .iter()
            .any(|e| e.as_sym().is_some_and(|s| &**s == name))
    }

    pub fn subs(&self, name: &str, value: &Expr) -> Expr {
        let mut s = Substituter::new();
        s.insert(name, value.clone());
        s.apply(self)
    }
}

pub fn free_symbols(roots: &[Expr]) -> BTreeSet<Symbol> {
    Expr::postorder(roots)
        .iter()
        .filter_map(|e| e.as_sym().cloned())
        .collect()
}

pub struct ChildIter<'a> {
    a: Option<&'a Expr>,
    b: Option<&'a Expr>,
}

impl<'a> Iterator for ChildIter<'a> {
    type Item = &'a Expr;
    fn next(&mut self) -> Option<&'a Expr> {
        self.a.take().or_else(|| self.b.take())
    }
}

/// Equality is structural up to the 64-bit node hash of children, so it is
/// O(1) on shared DAGs.
impl PartialEq for Expr {
    fn eq(&self, o: &Expr) -> bool {
        if self.ptr_eq(o) {
            return true;
        }
        if self.hash() != o.hash() {
            return false;
        }
        match (self.node(), o.node()) {
            (Node::Num(a), Node::Num(b)) => a == b,
            (Node::Sym(a), Node::Sym(b)) => a == b,
            (Node::Neg(a), Node::Neg(b)) => a.hash() == b.hash(),
            (Node::Pow(a, m), Node::Pow(b, n)) => m == n && a.hash() == b.hash(),
            (Node::Func(f, a), Node::Func(g, b)) => f == g && a.hash() == b.hash(),
            (Node::Add(a, b), Node::Add(c, d))
            | (Node::Mul(a, b), Node::Mul(c, d))
            | (Node::Div(a, b), Node::Div(c, d)) => a.hash() == c.hash() && b.hash() == d.hash(),
            _ => false,
        }
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<f64> for Expr {
    fn from(x: f64) -> Expr {
        Expr::float(x)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                Expr::$f(self, o)
            }
        }
        impl std::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$f(&self, &o)
            }
        }
        impl std::ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                Expr::$f(&self, o)
            }
        }
        impl std::ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$f(self, &o)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

/// Memo table keyed by node identity. Keys are kept alive so addresses
/// cannot be recycled while the table exists.
#[derive(Default)]
pub(crate) struct NodeMemo {
    map: FxHashMap<usize, (Expr, Expr)>,
}

impl NodeMemo {
    pub fn get(&self, e: &Expr) -> Option<&Expr> {
        self.map.get(&e.addr()).map(|(_, v)| v)
    }

    pub fn insert(&mut self, k: &Expr, v: Expr) {
        self.map.insert(k.addr(), (k.clone(), v));
    }
}

/// Bottom-up rewrite of a set of roots, sharing work across them.
pub(crate) fn rewrite(memo: &mut NodeMemo, e: &Expr, leaf: &mut dyn FnMut(&Expr) -> Option<Expr>) -> Expr {
    if let Some(v) = memo.get(e) {
        return v.clone();
    }
    for n in Expr::postorder_pruned(std::slice::from_ref(e), |n| memo.get(n).is_some()) {
        let v = match leaf(&n) {
            Some(v) => v,
            None => {
                let kids: Vec<Expr> = n.children().map(|k| memo.get(k).unwrap().clone()).collect();
                if kids.iter().zip(n.children()).all(|(a, b)| a.ptr_eq(b)) {
                    n.clone()
                } else {
                    n.rebuild(&kids)
                }
            }
        };
        memo.insert(&n, v);
    }
    memo.get(e).unwrap().clone()
}

/// Replaces symbols by expressions; reusable across many roots.
#[derive(Default)]
pub struct Substituter {
    map: HashMap<Symbol, Expr>,
    memo: NodeMemo,
}

impl Substituter {
    pub fn new() -> Substituter {
        Substituter::default()
    }

    pub fn insert(&mut self, name: &str, value: Expr) {
        self.map.insert(Arc::from(name), value);
        self.memo = NodeMemo::default();
    }

    pub fn apply(&mut self, e: &Expr) -> Expr {
        let map = &self.map;
        rewrite(&mut self.memo, e, &mut |n| n.as_sym().and_then(|s| map.get(s).cloned()))
    }
}

// Display precedences: 1 sum, 2 product/quotient/unary minus, 4 power, 5 atom.
fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Num(n) => {
            if n.is_negative() || matches!(n, Number::Rat(_, d) if *d != 1) {
                2
            } else {
                5
            }
        }
        Node::Sym(_) | Node::Func(..) => 5,
        Node::Neg(_) | Node::Mul(..) | Node::Div(..) => 2,
        Node::Pow(..) => 4,
        Node::Add(..) => 1,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

/// Splits a term into (is_negated, magnitude) for pretty subtraction.
fn negated_part(e: &Expr) -> Option<Expr> {
    match e.node() {
        Node::Neg(a) => Some(a.clone()),
        Node::Num(n) if n.is_negative() => Some(Expr::num(n.neg())),
        Node::Mul(a, b) => match a.as_num() {
            Some(n) if n.is_negative() => Some(Expr::num(n.neg()).mul(b)),
            _ => None,
        },
        _ => None,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e.node() {
        Node::Num(n) => write!(f, "{n}"),
        Node::Sym(s) => write!(f, "{s}"),
        Node::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, 4)
        }
        Node::Add(a, b) => {
            write_at(f, a, 1)?;
            match negated_part(b) {
                Some(m) => {
                    write!(f, " - ")?;
                    write_at(f, &m, 2)
                }
                None => {
                    write!(f, " + ")?;
                    write_at(f, b, 2)
                }
            }
        }
        Node::Mul(a, b) => {
            write_at(f, a, 2)?;
            write!(f, "*")?;
            write_at(f, b, 4)
        }
        Node::Div(a, b) => {
            write_at(f, a, 2)?;
            write!(f, "/")?;
            write_at(f, b, 4)
        }
        Node::Pow(a, n) => {
            write_at(f, a, 5)?;
            if prec(&Expr::num(*n)) < 5 {
                write!(f, "^({n})")
            } else {
                write!(f, "^{n}")
            }
        }
        Node::Func(g, a) => {
            write!(f, "{}(", g.name())?;
            write_expr(f, a)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Expr {
        Expr::sym("x")
    }

    #[test]
    fn constructors_fold() {
        assert!((Expr::zero() * x().sin()).is_zero());
        assert_eq!(x() + Expr::zero(), x());
        assert_eq!(x() * Expr::one(), x());
        assert_eq!(Expr::int(2) * Expr::int(3) * x(), Expr::int(6) * x());
        assert!((x() - x()).is_zero());
        assert_eq!(x().neg().neg(), x());
    }

    #[test]
    fn display_forms() {
        let e = Expr::int(1) - Expr::int(2) * Expr::sym("M") / Expr::sym("r");
        assert_eq!(e.to_string(), "1 - 2*M/r");
        assert_eq!(x().sin().powi(2).to_string(), "sin(x)^2");
        assert_eq!(x().pow(Number::Rat(1, 2)).to_string(), "x^(1/2)");
        assert_eq!((x() + Expr::one()).neg().to_string(), "-(x + 1)");
    }

    #[test]
    fn substitution_shares_work() {
        let y = Expr::sym("y");
        let e = (x() * y.clone()).sin() + (x() * y.clone()).cos();
        let r = e.subs("x", &Expr::int(0));
        assert_eq!(r, Expr::int(1));
    }

    #[test]
    fn postorder_visits_shared_nodes_once() {
        let a = x().sin();
        let e = &a * &a + &a;
        assert_eq!(e.node_count(), 4);
    }
}
