//! Exact rationals and the height enumeration of ℚ.
//!
//! Every rational is written `a/b` in lowest terms with `b > 0`. Its height is
//! `|a| + b`; the enumeration lists ℚ by height, then numerator, then
//! denominator, which is the order every deterministic witness choice uses.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    Rational::from_str(text).ok()
}

pub fn height(q: &Rational) -> BigInt {
    q.numer().abs() + q.denom()
}

/// Residue of the numerator modulo `modulus`, in `0..modulus`.
pub fn residue(q: &Rational, modulus: u32) -> u32 {
    let m = BigInt::from(modulus);
    let r = q.numer().mod_floor(&m);
    // mod_floor of a positive modulus is already in range
    u32::try_from(r).expect("residue fits in u32")
}

/// Total order used for deterministic witnesses: height, numerator, denominator.
pub fn height_order(a: &Rational, b: &Rational) -> Ordering {
    height(a)
        .cmp(&height(b))
        .then_with(|| a.numer().cmp(b.numer()))
        .then_with(|| a.denom().cmp(b.denom()))
}

/// All rationals of a given height, in enumeration order.
pub fn rationals_of_height(h: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    if h == 0 {
        return out;
    }
    let h = h as i64;
    for a in -(h - 1)..=(h - 1) {
        let b = h - a.abs();
        if b < 1 {
            continue;
        }
        if a.abs().gcd(&b) != 1 {
            continue;
        }
        out.push(rat(a, b));
    }
    out
}

/// The height enumeration `q_0, q_1, ...` of ℚ, memoised.
#[derive(Debug, Clone, Default)]
pub struct RationalEnumeration {
    prefix: Vec<Rational>,
    next_height: u64,
}

impl RationalEnumeration {
    pub fn new() -> Self {
        RationalEnumeration {
            prefix: Vec::new(),
            next_height: 1,
        }
    }

    pub fn get(&mut self, index: usize) -> &Rational {
        while self.prefix.len() <= index {
            let batch = rationals_of_height(self.next_height);
            self.next_height += 1;
            self.prefix.extend(batch);
        }
        &self.prefix[index]
    }

    /// An already generated term.
    pub fn peek(&self, index: usize) -> Option<&Rational> {
        self.prefix.get(index)
    }

    pub fn take(&mut self, count: usize) -> Vec<Rational> {
        if count == 0 {
            return Vec::new();
        }
        self.get(count - 1);
        self.prefix[..count].to_vec()
    }

    /// Position of `q` in the enumeration.
    pub fn index_of(&mut self, q: &Rational) -> usize {
        let target = height(q);
        loop {
            if let Some(pos) = self.prefix.iter().position(|p| p == q) {
                return pos;
            }
            let next = BigInt::from(self.next_height);
            if next > &target + BigInt::one() {
                unreachable!("every rational appears at its height");
            }
            let batch = rationals_of_height(self.next_height);
            self.next_height += 1;
            self.prefix.extend(batch);
        }
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn floor_to_bigint(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Serde helpers: rationals travel as strings like `"-3/4"`.
pub mod serde_str {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("not a rational: {text:?}")))
    }
}

pub mod serde_str_vec {
    use super::{parse_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| {
                parse_rational(t)
                    .ok_or_else(|| serde::de::Error::custom(format!("not a rational: {t:?}")))
            })
            .collect()
    }
}
