use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

/// An element `a + b·√2` of the quadratic field, with `a, b` rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Surd {
            a,
            b: Rational::zero(),
        }
    }

    pub fn new(a: Rational, b: Rational) -> Self {
        Surd { a, b }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn scale(&self, k: &Rational) -> Surd {
        Surd::new(&self.a * k, &self.b * k)
    }

    pub fn add_rational(&self, q: &Rational) -> Surd {
        Surd::new(&self.a + q, self.b.clone())
    }

    /// `⌊self⌋`, exact.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // self = (A + B√2) / D with integers, D > 0
        let d = self.a.denom().lcm(self.b.denom());
        let big_a = (&self.a * Rational::from_integer(d.clone())).to_integer();
        let big_b = (&self.b * Rational::from_integer(d.clone())).to_integer();
        let r: BigInt = Roots::sqrt(&(BigInt::from(2) * &big_b * &big_b));
        // 2B² is never a perfect square for B ≠ 0
        let floor_b_sqrt2 = if big_b.is_positive() { r } else { -(r + BigInt::one()) };
        (big_a + floor_b_sqrt2).div_floor(&d)
    }

    pub fn ceil(&self) -> BigInt {
        -Surd::new(-&self.a, -&self.b).floor()
    }
}

/// Sign of `s + v·√2`.
fn sign_of(s: &Rational, v: &Rational) -> Ordering {
    let zero = Rational::zero();
    let ss = s.cmp(&zero);
    let sv = v.cmp(&zero);
    match (ss, sv) {
        (Ordering::Equal, _) => sv,
        (_, Ordering::Equal) => ss,
        _ if ss == sv => ss,
        _ => {
            // opposite signs: compare s² with 2v²
            let lhs = s * s;
            let rhs = int(2) * v * v;
            if ss == Ordering::Greater {
                lhs.cmp(&rhs)
            } else {
                rhs.cmp(&lhs)
            }
        }
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_of(&(&self.a - &other.a), &(&self.b - &other.b))
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of the extended line: `−∞`, an element of `ℚ(√2)`, or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cut {
    NegInf,
    At(Surd),
    PosInf,
}

impl Cut {
    pub fn rational(q: Rational) -> Self {
        Cut::At(Surd::rational(q))
    }

    pub fn int(v: i64) -> Self {
        Cut::rational(int(v))
    }

    /// `a + √2`.
    pub fn sqrt2_plus(a: Rational) -> Self {
        Cut::At(Surd::new(a, Rational::one()))
    }

    pub fn quad(a: Rational, b: Rational) -> Self {
        Cut::At(Surd::new(a, b))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Cut::At(s) => s.as_rational(),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cut::At(_))
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            Cut::NegInf => Ordering::Less,
            Cut::PosInf => Ordering::Greater,
            Cut::At(s) => sign_of(&(&s.a - q), &s.b),
        }
    }

    /// `q < self`.
    pub fn above(&self, q: &Rational) -> bool {
        self.cmp_rational(q) == Ordering::Greater
    }

    /// `self < q`.
    pub fn below(&self, q: &Rational) -> bool {
        self.cmp_rational(q) == Ordering::Less
    }
}

impl From<Rational> for Cut {
    fn from(q: Rational) -> Self {
        Cut::rational(q)
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cut::NegInf => f.write_str("-inf"),
            Cut::PosInf => f.write_str("inf"),
            Cut::At(s) if s.b.is_zero() => write!(f, "{}", s.a),
            Cut::At(s) if s.b.is_one() => write!(f, "(sqrt2-plus {})", s.a),
            Cut::At(s) => write!(f, "(quad {} {})", s.a, s.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn sqrt2_is_placed_exactly() {
        let s = Cut::sqrt2_plus(int(0));
        assert!(s.above(&rat(1414, 1000)));
        assert!(s.below(&rat(1415, 1000)));
        assert!(s.below(&rat(665857, 470832)));
        assert!(s.above(&rat(1393, 985)));
        let x3 = Cut::sqrt2_plus(int(-3));
        assert!(x3.below(&rat(-1, 2)) && x3.above(&rat(-2, 1)));
    }

    #[test]
    fn cut_order_is_total_and_exact() {
        let mut cuts = [
            Cut::PosInf,
            Cut::sqrt2_plus(int(-1)),
            Cut::int(0),
            Cut::NegInf,
            Cut::quad(int(1), int(-1)),
            Cut::rational(rat(1, 2)),
        ];
        cuts.sort();
        let shown: Vec<String> = cuts.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            shown,
            ["-inf", "(quad 1 -1)", "0", "(sqrt2-plus -1)", "1/2", "inf"]
        );
    }

    #[test]
    fn floor_matches_float_on_small_surds() {
        for a in -20..=20 {
            for b in -6..=6 {
                for d in 1..=4 {
                    let s = Surd::new(rat(a, d), rat(b, 3));
                    let approx = a as f64 / d as f64 + b as f64 / 3.0 * 2f64.sqrt();
                    assert_eq!(s.floor(), BigInt::from(approx.floor() as i64), "{a}/{d} {b}/3");
                    assert_eq!(s.ceil(), BigInt::from(approx.ceil() as i64));
                }
            }
        }
    }
}
