//! Pratt parser for the expression grammar used by field files and the CLI.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = ("-" | "+") unary | power ;
//! power   = primary [ "^" unary ] ;            (* right associative, constant exponent *)
//! primary = number | ident | call | "(" expr ")" ;
//! call    = func "(" expr ")" | "diff" "(" expr "," ident ")" ;
//! func    = "sin" | "cos" | "sqrt" | "exp" | "ln" ;
//! number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! ident   = letter { letter | digit | "_" } ;     (* "pi" is the constant *)
//! ```
//!
//! Decimal literals are stored as exact rationals when they fit.

use thiserror::Error;

use super::chart::Chart;
use super::expr::{Expr, Func};
use super::number::Number;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at column {pos}")]
    UnknownSymbol { name: String, pos: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Number),
    Ident(String),
    Op(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = src.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && b.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if i < b.len() && b[i] == b'.' {
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && b[j].is_ascii_digit() {
                    i = j;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push((Tok::Num(literal(&src[start..i], start)?), start + 1));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start + 1));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Op(c), i + 1));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i + 1, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, src.len() + 1));
    Ok(out)
}

fn literal(s: &str, start: usize) -> Result<Number, ParseError> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().unwrap_or(0)),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits = format!("{int}{frac}");
    let scale = exp - frac.len() as i32;
    if digits.len() <= 18 && scale.abs() <= 18 {
        let n: i128 = digits.parse().unwrap_or(0);
        let p = 10i128.pow(scale.unsigned_abs());
        return Ok(if scale >= 0 { Number::ratio(n * p, 1) } else { Number::ratio(n, p) });
    }
    s.parse::<f64>()
        .map(Number::Float)
        .map_err(|_| ParseError::Syntax { pos: start + 1, msg: format!("bad number `{s}`") })
}

/// Which identifiers are accepted as symbols.
pub enum Scope<'a> {
    Any,
    Names(Vec<&'a str>),
}

impl Scope<'_> {
    fn allows(&self, name: &str) -> bool {
        match self {
            Scope::Any => true,
            Scope::Names(v) => v.contains(&name),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    scope: Scope<'a>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn infix_power(t: &Tok) -> Option<(u8, u8)> {
        match t {
            Tok::Op('+') | Tok::Op('-') => Some((1, 2)),
            Tok::Op('*') | Tok::Op('/') => Some((3, 4)),
            Tok::Op('^') => Some((8, 5)),
            _ => None,
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek().clone() {
            Tok::Op(c @ ('-' | '+')) => {
                self.bump();
                let e = self.expr(5)?;
                if c == '-' { e.neg() } else { e }
            }
            _ => self.primary()?,
        };
        loop {
            let t = self.peek().clone();
            let Some((l, r)) = Parser::infix_power(&t) else { break };
            if l < min_bp {
                break;
            }
            let at = self.pos();
            self.bump();
            let rhs = self.expr(r)?;
            lhs = match t {
                Tok::Op('+') => lhs.add(&rhs),
                Tok::Op('-') => lhs.sub(&rhs),
                Tok::Op('*') => lhs.mul(&rhs),
                Tok::Op('/') => lhs.div(&rhs),
                _ => match rhs.simplify().as_num() {
                    Some(n) => lhs.pow(n),
                    None => {
                        return Err(ParseError::Syntax { pos: at, msg: "exponent must be a constant".into() })
                    }
                },
            };
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Expr::num(n)),
            Tok::Op('(') => {
                let e = self.expr(0)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::Op('(') {
                    self.bump();
                    if name == "diff" {
                        let e = self.expr(0)?;
                        self.expect(',')?;
                        let at = self.pos();
                        let var = match self.bump() {
                            Tok::Ident(v) => v,
                            _ => return Err(ParseError::Syntax { pos: at, msg: "expected a symbol".into() }),
                        };
                        if !self.scope.allows(&var) {
                            return Err(ParseError::UnknownSymbol { name: var, pos: at });
                        }
                        self.expect(')')?;
                        return Ok(e.diff(&var));
                    }
                    let Some(f) = Func::from_name(&name) else {
                        return Err(ParseError::Syntax { pos, msg: format!("unknown function `{name}`") });
                    };
                    let arg = self.expr(0)?;
                    self.expect(')')?;
                    return Ok(Expr::func(f, &arg));
                }
                if name == "pi" {
                    return Ok(Expr::pi());
                }
                if Func::from_name(&name).is_some() || name == "diff" {
                    return Err(ParseError::Syntax { pos, msg: format!("`{name}` needs an argument") });
                }
                if !self.scope.allows(&name) {
                    return Err(ParseError::UnknownSymbol { name, pos });
                }
                Ok(Expr::sym(&name))
            }
            Tok::End => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
            Tok::Op(c) => Err(ParseError::Syntax { pos, msg: format!("unexpected `{c}`") }),
        }
    }
}

pub fn parse_scoped(text: &str, scope: Scope<'_>) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, i: 0, scope };
    let e = p.expr(0)?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parse over a chart's coordinates plus the named parameters.
pub fn parse(text: &str, chart: &Chart, params: &[&str]) -> Result<Expr, ParseError> {
    let mut names: Vec<&str> = chart.coords().iter().map(|s| &**s).collect();
    names.extend_from_slice(params);
    parse_scoped(text, Scope::Names(names))
}

/// Parse accepting any identifier as a symbol.
pub fn parse_free(text: &str) -> Result<Expr, ParseError> {
    parse_scoped(text, Scope::Any)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symker::Env;

    fn sph() -> Chart {
        Chart::new(&["t", "r", "theta", "phi"]).unwrap()
    }

    #[test]
    fn spec_examples() {
        let e = parse("1 - 2*M/r", &sph(), &["M"]).unwrap();
        assert_eq!(e.eval_with(&[("r", 4.0), ("M", 1.0)]).unwrap(), 0.5);
        let s = parse("sin(theta)^2", &sph(), &[]).unwrap();
        assert!((s.eval_with(&[("theta", std::f64::consts::FRAC_PI_2)]).unwrap() - 1.0).abs() < 1e-15);
        let d = parse("r^2 * sin(theta)", &sph(), &[]).unwrap().diff("r");
        let want = parse("2*r*sin(theta)", &sph(), &[]).unwrap();
        assert_eq!(d.simplify(), want.simplify());
    }

    #[test]
    fn precedence_and_associativity() {
        let v = |s: &str| parse_free(s).unwrap().eval(&Env::new()).unwrap();
        assert_eq!(v("2^3^2"), 512.0);
        assert_eq!(v("-2^2"), -4.0);
        assert_eq!(v("2*-3"), -6.0);
        assert_eq!(v("1 - 2 - 3"), -4.0);
        assert_eq!(v("8/2/2"), 2.0);
        assert_eq!(v("1.5e2"), 150.0);
        assert_eq!(v("diff(3*x^2, x) - 6*x + 1"), 1.0);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_free("0.1").unwrap().as_num(), Some(Number::Rat(1, 10)));
        assert_eq!(parse_free("2.5e-3").unwrap().as_num(), Some(Number::Rat(1, 400)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("1 + q", &sph(), &[]),
            Err(ParseError::UnknownSymbol { name: "q".into(), pos: 5 })
        );
        assert!(matches!(parse_free("1 + * 2"), Err(ParseError::Syntax { pos: 5, .. })));
        assert!(matches!(parse_free("x^y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_free("(1 + 2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_free("foo(1)"), Err(ParseError::Syntax { .. })));
    }
}
