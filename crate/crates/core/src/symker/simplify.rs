//! Conservative normal form: flattened sums with collected rational
//! coefficients, flattened products with collected exponents, canonical
//! ordering by structural hash. No trig identities, no expansion of
//! products of sums.

use rustc_hash::FxHashMap;

use super::expr::{Expr, Node, NodeMemo};
use super::number::Number;

fn collect_terms(e: &Expr, scale: Number, out: &mut Vec<(Number, Expr)>) {
    match e.node() {
        Node::Add(a, b) => {
            collect_terms(a, scale, out);
            collect_terms(b, scale, out);
        }
        Node::Neg(a) => collect_terms(a, scale.neg(), out),
        Node::Num(n) => out.push((scale.mul(*n), Expr::one())),
        Node::Mul(a, b) if a.as_num().is_some() => {
            out.push((scale.mul(a.as_num().unwrap()), b.clone()));
        }
        _ => out.push((scale, e.clone())),
    }
}

fn build_sum(terms: Vec<(Number, Expr)>) -> Expr {
    let mut order: Vec<Expr> = Vec::new();
    let mut coef: FxHashMap<Expr, Number> = FxHashMap::default();
    for (c, m) in terms {
        match coef.get_mut(&m) {
            Some(v) => *v = v.add(c),
            None => {
                order.push(m.clone());
                coef.insert(m, c);
            }
        }
    }
    let mut kept: Vec<(Number, Expr)> = order
        .into_iter()
        .filter_map(|m| {
            let c = coef[&m];
            (!c.is_zero()).then_some((c, m))
        })
        .collect();
    kept.sort_by_key(|(_, m)| m.hash());
    let mut acc: Option<Expr> = None;
    for (c, m) in kept {
        let t = Expr::num(c).mul(&m);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    acc.unwrap_or_else(Expr::zero)
}

fn collect_factors(e: &Expr, exp: Number, coef: &mut Number, out: &mut Vec<(Expr, Number)>) {
    match e.node() {
        Node::Num(n) => match n.pow(exp) {
            Some(v) => *coef = coef.mul(v),
            None => out.push((e.clone(), exp)),
        },
        Node::Neg(a) => {
            collect_factors(&Expr::int(-1), exp, coef, out);
            collect_factors(a, exp, coef, out);
        }
        Node::Mul(a, b) if exp.as_integer().is_some() => {
            collect_factors(a, exp, coef, out);
            collect_factors(b, exp, coef, out);
        }
        Node::Div(a, b) if exp.as_integer().is_some() => {
            collect_factors(a, exp, coef, out);
            collect_factors(b, exp.neg(), coef, out);
        }
        Node::Pow(a, k) if exp.as_integer().is_some() && a.as_num().is_none() => {
            collect_factors(a, k.mul(exp), coef, out)
        }
        _ => out.push((e.clone(), exp)),
    }
}

fn build_product(e: &Expr) -> Expr {
    let mut coef = Number::ONE;
    let mut factors = Vec::new();
    collect_factors(e, Number::ONE, &mut coef, &mut factors);
    let mut order: Vec<Expr> = Vec::new();
    let mut exps: FxHashMap<Expr, Number> = FxHashMap::default();
    for (b, k) in factors {
        match exps.get_mut(&b) {
            Some(v) => *v = v.add(k),
            None => {
                order.push(b.clone());
                exps.insert(b, k);
            }
        }
    }
    let mut kept: Vec<(Expr, Number)> = order
        .into_iter()
        .filter_map(|b| {
            let k = exps[&b];
            (!k.is_zero()).then_some((b, k))
        })
        .collect();
    kept.sort_by_key(|(b, _)| b.hash());
    let mut num: Option<Expr> = None;
    let mut den: Option<Expr> = None;
    for (b, k) in kept {
        let (slot, p) = if k.is_negative() { (&mut den, b.pow(k.neg())) } else { (&mut num, b.pow(k)) };
        *slot = Some(match slot.take() {
            None => p,
            Some(a) => a.mul(&p),
        });
    }
    let mono = match (num, den) {
        (None, None) => Expr::one(),
        (Some(n), None) => n,
        (n, Some(d)) => n.unwrap_or_else(Expr::one).div(&d),
    };
    Expr::num(coef).mul(&mono)
}

fn step(n: &Expr) -> Expr {
    match n.node() {
        Node::Num(_) | Node::Sym(_) | Node::Func(..) => n.clone(),
        Node::Add(..) | Node::Neg(_) => {
            let mut terms = Vec::new();
            collect_terms(n, Number::ONE, &mut terms);
            build_sum(terms)
        }
        Node::Mul(..) | Node::Div(..) | Node::Pow(..) => build_product(n),
    }
}

impl Expr {
    pub fn simplify(&self) -> Expr {
        let mut memo = NodeMemo::default();
        for n in Expr::postorder(std::slice::from_ref(self)) {
            if memo.get(&n).is_some() {
                continue;
            }
            let kids: Vec<Expr> = n.children().map(|k| memo.get(k).unwrap().clone()).collect();
            let rebuilt = n.rebuild(&kids);
            let v = step(&rebuilt);
            memo.insert(&n, v);
        }
        memo.get(self).unwrap().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Expr {
        Expr::sym(n)
    }

    #[test]
    fn spec_examples() {
        assert!(Expr::zero().mul(&s("x").sin()).simplify().is_zero());
        assert_eq!((s("x") + Expr::zero()).simplify(), s("x"));
        let f = Expr::one() - Expr::int(2) * s("M") / s("r");
        assert!((f.clone() - (Expr::one() - Expr::int(2) * s("M") / s("r"))).simplify().is_zero());
        let g = Expr::make_sum_for_test(&f);
        assert!(g.simplify().is_zero());
    }

    #[test]
    fn collects_like_terms_and_powers() {
        let x = s("x");
        let e = &x * &x * Expr::int(3) + Expr::int(2) * x.square() - x.powi(2) * Expr::int(5);
        assert!(e.simplify().is_zero());
        let q = (&x * s("y")) / (s("y") * &x);
        assert!(q.simplify().is_one());
    }

    #[test]
    fn idempotent() {
        let (x, y) = (s("x"), s("y"));
        let e = (x.sin() + Expr::int(2) * (&x + &y)) * (&y / &x).powi(3) - Expr::rational(1, 2) / (x.cos() - &y);
        let a = e.simplify();
        assert_eq!(a.simplify(), a);
        assert_eq!(a.simplify().to_string(), a.to_string());
    }
}

#[cfg(test)]
impl Expr {
    fn make_sum_for_test(f: &Expr) -> Expr {
        // f - f built without the constructor's own e - e shortcut
        f.add(&f.mul(&Expr::int(-1)))
    }
}
