//! Symbolic kernel: expression DAGs, parsing, exact differentiation,
//! conservative simplification and compiled evaluation.

mod chart;
mod diff;
mod eval;
mod expr;
mod number;
mod parse;
mod simplify;

pub use chart::{Chart, ChartError, Sampler};
pub use diff::{gradient, Differ};
pub use eval::{Env, EvalError, Tape};
pub use expr::{free_symbols, Expr, Func, Node, Substituter, Symbol};
pub use number::Number;
pub use parse::{parse, parse_free, parse_scoped, ParseError, Scope};
