use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::canon::CanonicalSet;
use super::cut::{Cut, Surd};
use crate::rational::{height, Rational};

/// A chosen element together with its enumeration key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub value: Rational,
    pub height: BigInt,
}

impl Witness {
    fn new(value: Rational) -> Self {
        let height = height(&value);
        Witness { value, height }
    }

    fn key(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.height, self.value.numer(), self.value.denom())
    }

    fn better_than(&self, other: &Option<Witness>) -> bool {
        match other {
            None => true,
            Some(o) => self.key() < o.key(),
        }
    }
}

impl CanonicalSet {
    /// The element of least height (ties: smaller numerator, then smaller
    /// denominator), ignoring points for which `skip` holds.
    pub fn witness(&self, skip: impl Fn(&Rational) -> bool) -> Option<Witness> {
        let mut best: Option<Witness> = None;
        for q in self.present_points() {
            if skip(q) {
                continue;
            }
            let w = Witness::new(q.clone());
            if w.better_than(&best) {
                best = Some(w);
            }
        }
        let k = self.space().modulus();
        for (lo, hi, mask) in self.segments() {
            if let Some(w) = segment_witness(&lo, &hi, mask, k, &skip, best.as_ref()) {
                if w.better_than(&best) {
                    best = Some(w);
                }
            }
        }
        best
    }
}

fn scaled_floor(c: &Surd, b: &BigInt) -> BigInt {
    c.scale(&Rational::from_integer(b.clone())).floor()
}

fn scaled_ceil(c: &Surd, b: &BigInt) -> BigInt {
    c.scale(&Rational::from_integer(b.clone())).ceil()
}

/// Least-height rational in `(lo, hi)` whose numerator class is in `mask`.
///
/// For each denominator `b` the admissible numerators form an integer range;
/// within it numerators are tried by absolute value. A direction with no hit
/// across a full period `k·b` has none at all.
fn segment_witness(
    lo: &Cut,
    hi: &Cut,
    mask: u64,
    k: u32,
    skip: &impl Fn(&Rational) -> bool,
    bound: Option<&Witness>,
) -> Option<Witness> {
    let kk = BigInt::from(k);
    let mut best: Option<Witness> = bound.cloned();
    let mut found: Option<Witness> = None;
    let mut b = BigInt::one();
    loop {
        if let Some(w) = &best {
            if b >= w.height {
                break;
            }
        }
        let a_lo = match lo {
            Cut::NegInf => None,
            Cut::At(s) => Some(scaled_floor(s, &b) + 1),
            Cut::PosInf => return found,
        };
        let a_hi = match hi {
            Cut::PosInf => None,
            Cut::At(s) => Some(scaled_ceil(s, &b) - 1),
            Cut::NegInf => return found,
        };
        let nonempty = match (&a_lo, &a_hi) {
            (Some(x), Some(y)) => x <= y,
            _ => true,
        };
        if nonempty {
            let limit = best.as_ref().map(|w| &w.height - &b);
            let period = &kk * &b;
            if let Some(w) = scan_denominator(&b, a_lo, a_hi, mask, &kk, &period, limit, skip) {
                if w.better_than(&best) {
                    best = Some(w.clone());
                    found = Some(w);
                }
            }
        }
        b += 1;
    }
    found
}

#[allow(clippy::too_many_arguments)]
fn scan_denominator(
    b: &BigInt,
    a_lo: Option<BigInt>,
    a_hi: Option<BigInt>,
    mask: u64,
    k: &BigInt,
    period: &BigInt,
    limit: Option<BigInt>,
    skip: &impl Fn(&Rational) -> bool,
) -> Option<Witness> {
    let in_range = |a: &BigInt| {
        a_lo.as_ref().is_none_or(|l| a >= l) && a_hi.as_ref().is_none_or(|h| a <= h)
    };
    let within_limit = |a: &BigInt| limit.as_ref().is_none_or(|m| &a.abs() <= m);
    // class and coprimality, before the skip test
    let admissible = |a: &BigInt| {
        let r = a.mod_floor(k);
        let r: u32 = r.try_into().expect("residue below modulus");
        mask >> r & 1 == 1 && a.gcd(b).is_one()
    };
    let start = if in_range(&BigInt::zero()) {
        BigInt::zero()
    } else if let Some(l) = a_lo.as_ref().filter(|l| l.is_positive()) {
        l.clone()
    } else {
        a_hi.clone().expect("range below zero is bounded above")
    };
    if !within_limit(&start) {
        return None;
    }

    // Two monotone walks away from `start`: downward (toward −∞) and
    // upward. Interleave them by absolute value, negative side first.
    let mut down = start.clone();
    let mut up = start.clone() + 1;
    let mut down_miss = BigInt::zero();
    let mut up_miss = BigInt::zero();
    let mut down_live = true;
    let mut up_live = true;
    loop {
        down_live = down_live && in_range(&down) && within_limit(&down) && &down_miss < period;
        up_live = up_live && in_range(&up) && within_limit(&up) && &up_miss < period;
        let take_down = match (down_live, up_live) {
            (false, false) => return None,
            (true, false) => true,
            (false, true) => false,
            (true, true) => down.abs() <= up.abs(),
        };
        let a = if take_down { down.clone() } else { up.clone() };
        if admissible(&a) {
            let q = Rational::new(a.clone(), b.clone());
            if !skip(&q) {
                return Some(Witness::new(q));
            }
            // a skipped hit proves the class is reachable; keep walking
            if take_down {
                down_miss = BigInt::zero();
            } else {
                up_miss = BigInt::zero();
            }
        } else if take_down {
            down_miss += 1;
        } else {
            up_miss += 1;
        }
        if take_down {
            down -= 1;
        } else {
            up += 1;
        }
    }
}
