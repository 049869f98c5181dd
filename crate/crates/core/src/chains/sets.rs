use std::cmp::Ordering;

use super::ChainError;
use crate::catalogue::{Element, Fiber, ProductSetExpr, RowForm, SetExpr};
use crate::qset::{CanonicalSet, Cut, Item, QSetExpr, QSpace};

/// Normal form of a [`SetExpr`], so that equal sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Canon {
    Nat(Fiber),
    Line(CanonicalSet),
    Rows(RowForm),
}

fn kinds() -> ChainError {
    ChainError::Shape("sets of different kinds".into())
}

impl Canon {
    pub fn of(space: &QSpace, x: &SetExpr) -> Result<Canon, ChainError> {
        Ok(match x {
            SetExpr::Nat(f) => Canon::Nat(f.normalized()),
            SetExpr::Rat(e) => Canon::Line(space.canonicalize(e)?),
            SetExpr::Product(p) => Canon::Rows(p.normalize(space)?),
        })
    }

    pub fn to_set(&self) -> SetExpr {
        match self {
            Canon::Nat(f) => SetExpr::Nat(f.clone()),
            Canon::Line(c) => SetExpr::Rat(c.to_expr()),
            Canon::Rows(r) => SetExpr::Product(r.to_product()),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Canon::Nat(f) => f.is_empty(),
            Canon::Line(c) => c.is_empty(),
            Canon::Rows(r) => r.is_empty(),
        }
    }

    /// `None` when infinite.
    pub fn finite_size(&self) -> Option<usize> {
        match self {
            Canon::Nat(f) => f.size(),
            Canon::Line(c) => c.finite_size(),
            Canon::Rows(r) => r.finite_size(),
        }
    }

    pub fn union(&self, other: &Canon) -> Result<Canon, ChainError> {
        Ok(match (self, other) {
            (Canon::Nat(a), Canon::Nat(b)) => Canon::Nat(a.union(b)),
            (Canon::Line(a), Canon::Line(b)) => Canon::Line(a.union(b)),
            (Canon::Rows(a), Canon::Rows(b)) => Canon::Rows(a.union(b)),
            _ => return Err(kinds()),
        })
    }

    pub fn intersect(&self, other: &Canon) -> Result<Canon, ChainError> {
        Ok(match (self, other) {
            (Canon::Nat(a), Canon::Nat(b)) => Canon::Nat(a.intersect(b)),
            (Canon::Line(a), Canon::Line(b)) => Canon::Line(a.intersect(b)),
            (Canon::Rows(a), Canon::Rows(b)) => Canon::Rows(a.intersect(b)),
            _ => return Err(kinds()),
        })
    }

    pub fn diff(&self, other: &Canon) -> Result<Canon, ChainError> {
        Ok(match (self, other) {
            (Canon::Nat(a), Canon::Nat(b)) => Canon::Nat(a.diff(b)),
            (Canon::Line(a), Canon::Line(b)) => Canon::Line(a.diff(b)),
            (Canon::Rows(a), Canon::Rows(b)) => Canon::Rows(a.diff(b)),
            _ => return Err(kinds()),
        })
    }

    pub fn subset(&self, other: &Canon) -> Result<bool, ChainError> {
        Ok(self.diff(other)?.is_empty())
    }

    /// `Some(Less)` for a proper subset, `None` when incomparable.
    pub fn inclusion(&self, other: &Canon) -> Result<Option<Ordering>, ChainError> {
        let le = self.subset(other)?;
        let ge = other.subset(self)?;
        Ok(match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (Canon::Nat(f), Element::Nat(n)) => f.contains(*n),
            (Canon::Line(c), Element::Rat(q)) => c.member(q),
            (Canon::Rows(r), Element::Pair { q, i }) => r.member(q, *i),
            (Canon::Rows(r), Element::Line { i, q }) => r.member(q, *i as u64),
            _ => false,
        }
    }

    /// The part of the line the set lives over: itself, or its support.
    pub fn shadow(&self) -> Option<CanonicalSet> {
        match self {
            Canon::Nat(_) => None,
            Canon::Line(c) => Some(c.clone()),
            Canon::Rows(r) => Some(r.supp()),
        }
    }
}

/// The singleton `{e}` in the matching syntax.
pub fn singleton(e: &Element) -> SetExpr {
    match e {
        Element::Nat(n) => SetExpr::Nat(Fiber::singleton(*n)),
        Element::Rat(q) => SetExpr::Rat(QSetExpr::point(q.clone())),
        Element::Pair { q, i } => {
            SetExpr::Product(ProductSetExpr::single(QSetExpr::point(q.clone()), Fiber::singleton(*i)))
        }
        Element::Line { i, q } => SetExpr::Product(ProductSetExpr::single(
            QSetExpr::point(q.clone()),
            Fiber::singleton(*i as u64),
        )),
    }
}

/// `a ∪ b` kept as an expression rather than a normal form.
pub fn union_expr(a: &SetExpr, b: &SetExpr) -> Result<SetExpr, ChainError> {
    Ok(match (a, b) {
        (SetExpr::Nat(x), SetExpr::Nat(y)) => SetExpr::Nat(x.union(y)),
        (SetExpr::Rat(x), SetExpr::Rat(y)) => SetExpr::Rat(x.clone().or(y.clone())),
        (SetExpr::Product(x), SetExpr::Product(y)) => {
            let mut out = x.clone();
            out.components.extend(y.components.iter().cloned());
            SetExpr::Product(out)
        }
        _ => return Err(kinds()),
    })
}

/// Greatest lower bound of a nonempty set, as a cut.
pub fn infimum(c: &CanonicalSet) -> Option<Cut> {
    match c.items().into_iter().next()? {
        Item::Point(q) => Some(Cut::rational(q)),
        Item::Segment { lo, .. } => Some(lo),
    }
}

/// Union of all sets in `xs`, `None` for an empty list.
pub fn union_all(space: &QSpace, xs: &[SetExpr]) -> Result<Option<Canon>, ChainError> {
    let mut acc: Option<Canon> = None;
    for x in xs {
        let c = Canon::of(space, x)?;
        acc = Some(match acc {
            None => c,
            Some(a) => a.union(&c)?,
        });
    }
    Ok(acc)
}

/// Intersection of all sets in `xs`, `None` for an empty list.
pub fn intersect_all(space: &QSpace, xs: &[SetExpr]) -> Result<Option<Canon>, ChainError> {
    let mut acc: Option<Canon> = None;
    for x in xs {
        let c = Canon::of(space, x)?;
        acc = Some(match acc {
            None => c,
            Some(a) => a.intersect(&c)?,
        });
    }
    Ok(acc)
}
