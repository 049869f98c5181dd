//! Decidable subsets of ℚ.
//!
//! Expressions are built from residue classes of the numerator, open
//! intervals with endpoints in `ℚ(√2) ∪ {±∞}`, finite sets and the boolean
//! operations. Every expression normalises to a [`CanonicalSet`]: finitely
//! many cuts, a set of classes on each open segment between cuts, and explicit
//! membership at each rational cut. Two expressions denote the same set iff
//! their canonical forms are equal.

mod canon;
mod cut;
pub(crate) mod syntax;
mod witness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{residue, Rational};

pub use canon::{CanonicalSet, Item};
pub use cut::{Cut, Surd};
pub use syntax::{parse_cut, parse_expr, ExprJson};
pub use witness::Witness;

pub const DEFAULT_MODULUS: u32 = 8;
pub const MAX_MODULUS: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSetError {
    #[error("class {index} is out of range for modulus {modulus}")]
    ClassOutOfRange { index: u32, modulus: u32 },
    #[error("modulus must be in 1..={MAX_MODULUS}, got {0}")]
    BadModulus(u32),
    #[error("expression denotes the empty set")]
    EmptySet,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Symbolic subset of ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ExprJson", try_from = "ExprJson")]
pub enum QSetExpr {
    Full,
    /// Rationals whose reduced numerator is `≡ i (mod k)`.
    DenseClass(u32),
    /// The open trace `(lo, hi) ∩ ℚ`.
    Interval(Cut, Cut),
    FiniteSet(Vec<Rational>),
    Union(Vec<QSetExpr>),
    Intersect(Vec<QSetExpr>),
    Diff(Box<QSetExpr>, Box<QSetExpr>),
}

impl QSetExpr {
    pub fn empty() -> Self {
        QSetExpr::FiniteSet(Vec::new())
    }

    pub fn class(i: u32) -> Self {
        QSetExpr::DenseClass(i)
    }

    pub fn interval(lo: Cut, hi: Cut) -> Self {
        QSetExpr::Interval(lo, hi)
    }

    /// `(−∞, x) ∩ ℚ`.
    pub fn below(x: Cut) -> Self {
        QSetExpr::Interval(Cut::NegInf, x)
    }

    pub fn finite(points: impl IntoIterator<Item = Rational>) -> Self {
        let mut v: Vec<Rational> = points.into_iter().collect();
        v.sort();
        v.dedup();
        QSetExpr::FiniteSet(v)
    }

    pub fn point(q: Rational) -> Self {
        QSetExpr::FiniteSet(vec![q])
    }

    pub fn union(parts: Vec<QSetExpr>) -> Self {
        QSetExpr::Union(parts)
    }

    pub fn inter(parts: Vec<QSetExpr>) -> Self {
        QSetExpr::Intersect(parts)
    }

    pub fn diff(a: QSetExpr, b: QSetExpr) -> Self {
        QSetExpr::Diff(Box::new(a), Box::new(b))
    }

    pub fn or(self, other: QSetExpr) -> Self {
        QSetExpr::Union(vec![self, other])
    }

    pub fn and(self, other: QSetExpr) -> Self {
        QSetExpr::Intersect(vec![self, other])
    }

    pub fn minus(self, other: QSetExpr) -> Self {
        QSetExpr::diff(self, other)
    }

    pub fn depth(&self) -> usize {
        match self {
            QSetExpr::Union(v) | QSetExpr::Intersect(v) => {
                1 + v.iter().map(|e| e.depth()).max().unwrap_or(0)
            }
            QSetExpr::Diff(a, b) => 1 + a.depth().max(b.depth()),
            _ => 1,
        }
    }

    fn check_classes(&self, k: u32) -> Result<(), QSetError> {
        match self {
            QSetExpr::DenseClass(i) if *i >= k => Err(QSetError::ClassOutOfRange {
                index: *i,
                modulus: k,
            }),
            QSetExpr::Union(v) | QSetExpr::Intersect(v) => {
                v.iter().try_for_each(|e| e.check_classes(k))
            }
            QSetExpr::Diff(a, b) => {
                a.check_classes(k)?;
                b.check_classes(k)
            }
            _ => Ok(()),
        }
    }
}

/// The evaluation context: the global modulus `k` of the residue classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QSpace {
    k: u32,
}

impl Default for QSpace {
    fn default() -> Self {
        QSpace {
            k: DEFAULT_MODULUS,
        }
    }
}

impl QSpace {
    pub fn new(k: u32) -> Result<Self, QSetError> {
        if k == 0 || k > MAX_MODULUS {
            return Err(QSetError::BadModulus(k));
        }
        Ok(QSpace { k })
    }

    pub fn modulus(&self) -> u32 {
        self.k
    }

    pub fn full_mask(&self) -> u64 {
        if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        }
    }

    pub fn class_of(&self, q: &Rational) -> u32 {
        residue(q, self.k)
    }

    /// Membership by direct evaluation of the expression tree.
    pub fn member(&self, q: &Rational, e: &QSetExpr) -> Result<bool, QSetError> {
        e.check_classes(self.k)?;
        Ok(self.member_unchecked(q, e))
    }

    fn member_unchecked(&self, q: &Rational, e: &QSetExpr) -> bool {
        match e {
            QSetExpr::Full => true,
            QSetExpr::DenseClass(i) => self.class_of(q) == *i,
            QSetExpr::Interval(lo, hi) => lo.below(q) && hi.above(q),
            QSetExpr::FiniteSet(v) => v.contains(q),
            QSetExpr::Union(v) => v.iter().any(|e| self.member_unchecked(q, e)),
            QSetExpr::Intersect(v) => v.iter().all(|e| self.member_unchecked(q, e)),
            QSetExpr::Diff(a, b) => self.member_unchecked(q, a) && !self.member_unchecked(q, b),
        }
    }

    pub fn canonicalize(&self, e: &QSetExpr) -> Result<CanonicalSet, QSetError> {
        e.check_classes(self.k)?;
        Ok(self.canon_unchecked(e))
    }

    fn canon_unchecked(&self, e: &QSetExpr) -> CanonicalSet {
        match e {
            QSetExpr::Full => CanonicalSet::full(*self),
            QSetExpr::DenseClass(i) => CanonicalSet::classes(*self, 1u64 << i),
            QSetExpr::Interval(lo, hi) => CanonicalSet::interval(*self, lo, hi),
            QSetExpr::FiniteSet(v) => CanonicalSet::finite(*self, v),
            QSetExpr::Union(v) => v.iter().fold(CanonicalSet::empty(*self), |acc, e| {
                acc.union(&self.canon_unchecked(e))
            }),
            QSetExpr::Intersect(v) => v.iter().fold(CanonicalSet::full(*self), |acc, e| {
                acc.intersect(&self.canon_unchecked(e))
            }),
            QSetExpr::Diff(a, b) => self.canon_unchecked(a).diff(&self.canon_unchecked(b)),
        }
    }

    /// Extensional equality.
    pub fn equal(&self, a: &QSetExpr, b: &QSetExpr) -> Result<bool, QSetError> {
        Ok(self.canonicalize(a)? == self.canonicalize(b)?)
    }

    pub fn is_empty(&self, e: &QSetExpr) -> Result<bool, QSetError> {
        Ok(self.canonicalize(e)?.is_empty())
    }

    pub fn subset(&self, a: &QSetExpr, b: &QSetExpr) -> Result<bool, QSetError> {
        Ok(self.canonicalize(a)?.diff(&self.canonicalize(b)?).is_empty())
    }

    /// The height-minimal element of `e ∩ (lo, hi)`.
    pub fn witness_in(
        &self,
        e: &QSetExpr,
        lo: &Cut,
        hi: &Cut,
    ) -> Result<Option<Rational>, QSetError> {
        let c = self.canonicalize(e)?;
        Ok(c.restrict(lo, hi).witness(|_| false).map(|w| w.value))
    }

    /// As [`QSpace::witness_in`], skipping points for which `skip` holds.
    pub fn witness_in_excluding(
        &self,
        e: &QSetExpr,
        lo: &Cut,
        hi: &Cut,
        skip: impl Fn(&Rational) -> bool,
    ) -> Result<Option<Rational>, QSetError> {
        let c = self.canonicalize(e)?;
        Ok(c.restrict(lo, hi).witness(skip).map(|w| w.value))
    }

    /// The `count` smallest elements of `e ∩ (lo, hi)` in height order.
    pub fn witnesses_in(
        &self,
        e: &QSetExpr,
        lo: &Cut,
        hi: &Cut,
        count: usize,
    ) -> Result<Vec<Rational>, QSetError> {
        let c = self.canonicalize(e)?.restrict(lo, hi);
        let mut taken: Vec<Rational> = Vec::with_capacity(count);
        let mut seen = std::collections::HashSet::new();
        while taken.len() < count {
            match c.witness(|q| seen.contains(q)) {
                Some(w) => {
                    seen.insert(w.value.clone());
                    taken.push(w.value);
                }
                None => break,
            }
        }
        Ok(taken)
    }

    /// Every nonempty open subinterval of `(lo, hi)` meets `e`.
    pub fn dense_in(&self, e: &QSetExpr, lo: &Cut, hi: &Cut) -> Result<bool, QSetError> {
        Ok(self.canonicalize(e)?.dense_in(lo, hi))
    }

    pub fn max_of(&self, e: &QSetExpr) -> Result<Option<Rational>, QSetError> {
        let c = self.canonicalize(e)?;
        if c.is_empty() {
            return Err(QSetError::EmptySet);
        }
        Ok(c.max())
    }

    pub fn min_of(&self, e: &QSetExpr) -> Result<Option<Rational>, QSetError> {
        let c = self.canonicalize(e)?;
        if c.is_empty() {
            return Err(QSetError::EmptySet);
        }
        Ok(c.min())
    }

    /// `e ⊆* f`: the difference is finite.
    pub fn almost_subset(&self, e: &QSetExpr, f: &QSetExpr) -> Result<bool, QSetError> {
        Ok(self
            .canonicalize(e)?
            .diff(&self.canonicalize(f)?)
            .finite_size()
            .is_some())
    }

    /// `Some(cardinality)` when `e` is finite.
    pub fn is_finite_expr(&self, e: &QSetExpr) -> Result<Option<usize>, QSetError> {
        Ok(self.canonicalize(e)?.finite_size())
    }

    /// Order-isomorphic to ℚ: nonempty, no endpoints, dense in itself.
    pub fn is_q_copy(&self, e: &QSetExpr) -> Result<bool, QSetError> {
        Ok(self.canonicalize(e)?.is_q_copy())
    }

    /// A cut `x` with `(−∞, x) ∩ class(j) ⊆ e ⊆ (−∞, x)`, if there is one.
    pub fn sandwich(&self, e: &QSetExpr, j: u32) -> Result<Option<Cut>, QSetError> {
        if j >= self.k {
            return Err(QSetError::ClassOutOfRange {
                index: j,
                modulus: self.k,
            });
        }
        Ok(self.canonicalize(e)?.sandwich(j))
    }
}
