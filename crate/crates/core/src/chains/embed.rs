use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::sets::Canon;
use super::ChainError;
use crate::catalogue::{Element, SetExpr};
use crate::qset::{CanonicalSet, QSpace};
use crate::rational::{height_order, Rational, RationalEnumeration};

/// Values `f(A) = Σ_{n < bits} 2^{-n} χ_A(x_n)` along a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct REmbedding {
    pub bits: usize,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub values: Vec<Rational>,
    /// Consecutive values strictly increase.
    pub separated: bool,
    /// First pair of positions the truncation cannot tell apart.
    pub first_tie: Option<(usize, usize)>,
}

/// Map an increasing chain into `ℝ` through the enumeration `points`,
/// keeping the first `bits` terms.
pub fn r_embedding(
    space: &QSpace,
    chain: &[SetExpr],
    points: &[Element],
    bits: usize,
) -> Result<REmbedding, ChainError> {
    let canon = chain
        .iter()
        .map(|x| Canon::of(space, x))
        .collect::<Result<Vec<_>, _>>()?;
    for (t, w) in canon.windows(2).enumerate() {
        if !w[0].subset(&w[1])? {
            return Err(ChainError::NotAChain(format!("element {t} is not below element {}", t + 1)));
        }
    }
    let n = bits.min(points.len());
    let denom = if n == 0 {
        BigInt::one()
    } else {
        BigInt::one() << (n - 1)
    };
    let values: Vec<Rational> = canon
        .iter()
        .map(|c| {
            let mut num = BigInt::zero();
            for (k, p) in points[..n].iter().enumerate() {
                if c.contains(p) {
                    num += BigInt::one() << (n - 1 - k);
                }
            }
            Rational::new(num, denom.clone())
        })
        .collect();
    let first_tie = values
        .windows(2)
        .position(|w| w[0] >= w[1])
        .map(|t| (t, t + 1));
    Ok(REmbedding {
        bits,
        values,
        separated: first_tie.is_none(),
        first_tie,
    })
}

/// The first `count` points of a line set in height order.
fn line_points(c: &CanonicalSet, count: usize) -> Vec<Rational> {
    if let Some(mut pts) = c.finite_points() {
        pts.sort_by(height_order);
        pts.truncate(count);
        return pts;
    }
    // an infinite set contains a dense segment, so the walk ends
    let mut en = RationalEnumeration::new();
    let mut out = Vec::with_capacity(count);
    let mut t = 0;
    while out.len() < count {
        let q = en.get(t);
        if c.member(q) {
            out.push(q.clone());
        }
        t += 1;
    }
    out
}

/// The first `count` points of `x` in a fixed enumeration: height order for
/// line sets, diagonal over (support point, fibre index) for product sets.
pub fn enumerate_points(space: &QSpace, x: &SetExpr, count: usize) -> Result<Vec<Element>, ChainError> {
    let c = Canon::of(space, x)?;
    Ok(match &c {
        Canon::Nat(f) => {
            let mut out = Vec::with_capacity(count);
            let last = f.mentioned().last().copied().unwrap_or(0);
            let mut i = 0u64;
            while out.len() < count && (f.is_infinite() || i <= last) {
                if f.contains(i) {
                    out.push(Element::Nat(i));
                }
                i += 1;
            }
            out
        }
        Canon::Line(l) => line_points(l, count).into_iter().map(Element::Rat).collect(),
        Canon::Rows(r) => {
            let qs = line_points(&r.supp(), count);
            let mut out = Vec::with_capacity(count);
            // a finite fibre runs dry after finitely many diagonals
            let mut d = 0usize;
            while out.len() < count && d < 2 * count + 64 {
                for a in 0..=d.min(qs.len().saturating_sub(1)) {
                    if qs.is_empty() || out.len() == count {
                        break;
                    }
                    let i = (d - a) as u64;
                    if r.member(&qs[a], i) {
                        out.push(Element::Pair { q: qs[a].clone(), i });
                    }
                }
                d += 1;
            }
            out
        }
    })
}
