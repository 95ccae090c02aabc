use std::cmp::Ordering;
use std::fmt;

/// Numeric constant: exact rational while it fits in i64, float otherwise.
#[derive(Clone, Copy, Debug)]
pub enum Number {
    Rat(i64, i64),
    Float(f64),
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Number {
    pub const ZERO: Number = Number::Rat(0, 1);
    pub const ONE: Number = Number::Rat(1, 1);
    pub const MINUS_ONE: Number = Number::Rat(-1, 1);

    pub fn int(n: i64) -> Number {
        Number::Rat(n, 1)
    }

    /// Reduced rational, or a float when the reduced form overflows i64.
    pub fn ratio(num: i128, den: i128) -> Number {
        if den == 0 {
            return Number::Float(if num == 0 { f64::NAN } else { f64::INFINITY * num.signum() as f64 });
        }
        let g = gcd(num, den).max(1);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Number::Rat(n, d),
            _ => Number::Float(num as f64 / den as f64),
        }
    }

    /// Floats that happen to be small integers are kept exact.
    pub fn from_f64(x: f64) -> Number {
        if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
            Number::Rat(x as i64, 1)
        } else {
            Number::Float(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Number::Rat(n, d) => n as f64 / d as f64,
            Number::Float(x) => x,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Number::Rat(n, _) => n == 0,
            Number::Float(x) => x == 0.0,
        }
    }

    pub fn is_one(self) -> bool {
        match self {
            Number::Rat(n, d) => n == 1 && d == 1,
            Number::Float(x) => x == 1.0,
        }
    }

    pub fn is_minus_one(self) -> bool {
        match self {
            Number::Rat(n, d) => n == -1 && d == 1,
            Number::Float(x) => x == -1.0,
        }
    }

    pub fn is_negative(self) -> bool {
        self.to_f64() < 0.0
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Number::Rat(..))
    }

    pub fn as_integer(self) -> Option<i64> {
        match self {
            Number::Rat(n, 1) => Some(n),
            Number::Float(x) if x.fract() == 0.0 && x.abs() < 1e15 => Some(x as i64),
            _ => None,
        }
    }

    pub fn neg(self) -> Number {
        match self {
            Number::Rat(n, d) => Number::ratio(-(n as i128), d as i128),
            Number::Float(x) => Number::Float(-x),
        }
    }

    pub fn add(self, o: Number) -> Number {
        match (self, o) {
            (Number::Rat(a, b), Number::Rat(c, d)) => {
                let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
                match a.checked_mul(d).and_then(|x| c.checked_mul(b).and_then(|y| x.checked_add(y))) {
                    Some(n) => Number::ratio(n, b * d),
                    None => Number::Float(self.to_f64() + o.to_f64()),
                }
            }
            _ => Number::Float(self.to_f64() + o.to_f64()),
        }
    }

    pub fn sub(self, o: Number) -> Number {
        self.add(o.neg())
    }

    pub fn mul(self, o: Number) -> Number {
        match (self, o) {
            (Number::Rat(a, b), Number::Rat(c, d)) => {
                Number::ratio(a as i128 * c as i128, b as i128 * d as i128)
            }
            _ => Number::Float(self.to_f64() * o.to_f64()),
        }
    }

    /// None on exact division by zero.
    pub fn div(self, o: Number) -> Option<Number> {
        if o.is_zero() {
            return None;
        }
        Some(match (self, o) {
            (Number::Rat(a, b), Number::Rat(c, d)) => {
                Number::ratio(a as i128 * d as i128, b as i128 * c as i128)
            }
            _ => Number::Float(self.to_f64() / o.to_f64()),
        })
    }

    /// Exact integer powers of rationals; None when the result is undefined.
    pub fn pow(self, e: Number) -> Option<Number> {
        if let (Number::Rat(..), Some(k)) = (self, e.as_integer()) {
            if k.unsigned_abs() <= 64 {
                let mut acc = Number::ONE;
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(self);
                }
                return if k >= 0 { Some(acc) } else { Number::ONE.div(acc) };
            }
        }
        let (b, x) = (self.to_f64(), e.to_f64());
        let v = b.powf(x);
        if v.is_finite() {
            Some(Number::Float(v))
        } else {
            None
        }
    }

    pub(crate) fn hash_bits(self) -> (u64, u64) {
        match self {
            Number::Rat(n, d) => (n as u64, d as u64),
            Number::Float(x) => (x.to_bits(), u64::MAX),
        }
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Number) -> bool {
        match (*self, *other) {
            (Number::Rat(a, b), Number::Rat(c, d)) => a == c && b == d,
            (Number::Float(x), Number::Float(y)) => x.to_bits() == y.to_bits(),
            _ => false,
        }
    }
}

impl Eq for Number {}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Number) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Number::Rat(n, 1) => write!(f, "{n}"),
            Number::Rat(n, d) => write!(f, "{n}/{d}"),
            Number::Float(x) => {
                let a = x.abs();
                if a != 0.0 && !(1e-4..1e15).contains(&a) {
                    write!(f, "{x:e}")
                } else if x.fract() == 0.0 {
                    write!(f, "{x:.1}")
                } else {
                    write!(f, "{x}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        assert_eq!(Number::ratio(6, -4), Number::Rat(-3, 2));
        assert_eq!(Number::Rat(1, 3).add(Number::Rat(1, 6)), Number::Rat(1, 2));
        assert_eq!(Number::Rat(2, 3).mul(Number::Rat(3, 2)), Number::ONE);
    }

    #[test]
    fn overflow_falls_back_to_float() {
        let big = Number::int(i64::MAX);
        assert!(matches!(big.mul(big), Number::Float(_)));
    }

    #[test]
    fn exact_powers() {
        assert_eq!(Number::Rat(2, 3).pow(Number::int(-2)), Some(Number::Rat(9, 4)));
        assert_eq!(Number::ZERO.pow(Number::int(-1)), None);
    }

    #[test]
    fn display_reparses() {
        for x in [1e-7, 0.1, 3.0, 2.5e20, -1.25] {
            let s = Number::Float(x).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }
}
