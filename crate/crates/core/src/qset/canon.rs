use std::cmp::Ordering;
use std::fmt;

use super::cut::{Cut, Surd};
use super::{QSetExpr, QSpace};
use crate::rational::Rational;

/// Normal form of a [`QSetExpr`].
///
/// `cuts` are strictly increasing finite points; `masks[i]` is the set of
/// residue classes present on the open segment ending at `cuts[i]` (the last
/// mask covers the segment up to `+∞`); `points[i]` says whether `cuts[i]`
/// itself belongs to the set, and is always false at irrational cuts.
/// A cut is kept only when removing it would change the set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalSet {
    space: QSpace,
    cuts: Vec<Surd>,
    masks: Vec<u64>,
    points: Vec<bool>,
}

/// One piece of a canonical set, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Segment { lo: Cut, hi: Cut, mask: u64 },
    Point(Rational),
}

impl CanonicalSet {
    pub fn empty(space: QSpace) -> Self {
        CanonicalSet::classes(space, 0)
    }

    pub fn full(space: QSpace) -> Self {
        CanonicalSet::classes(space, space.full_mask())
    }

    pub fn classes(space: QSpace, mask: u64) -> Self {
        CanonicalSet {
            space,
            cuts: Vec::new(),
            masks: vec![mask & space.full_mask()],
            points: Vec::new(),
        }
    }

    pub fn interval(space: QSpace, lo: &Cut, hi: &Cut) -> Self {
        if lo >= hi {
            return CanonicalSet::empty(space);
        }
        let full = space.full_mask();
        let mut out = CanonicalSet {
            space,
            cuts: Vec::new(),
            masks: Vec::new(),
            points: Vec::new(),
        };
        match lo {
            Cut::At(s) => {
                out.masks.push(0);
                out.cuts.push(s.clone());
                out.points.push(false);
            }
            Cut::NegInf => {}
            Cut::PosInf => unreachable!("lo < hi"),
        }
        out.masks.push(full);
        if let Cut::At(s) = hi {
            out.cuts.push(s.clone());
            out.points.push(false);
            out.masks.push(0);
        }
        out.normalize()
    }

    pub fn finite(space: QSpace, points: &[Rational]) -> Self {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let n = pts.len();
        CanonicalSet {
            space,
            cuts: pts.into_iter().map(Surd::rational).collect(),
            masks: vec![0; n + 1],
            points: vec![true; n],
        }
    }

    pub fn space(&self) -> QSpace {
        self.space
    }

    fn lower(&self, seg: usize) -> Cut {
        if seg == 0 {
            Cut::NegInf
        } else {
            Cut::At(self.cuts[seg - 1].clone())
        }
    }

    fn upper(&self, seg: usize) -> Cut {
        match self.cuts.get(seg) {
            Some(s) => Cut::At(s.clone()),
            None => Cut::PosInf,
        }
    }

    fn has_class(&self, mask: u64, q: &Rational) -> bool {
        mask >> self.space.class_of(q) & 1 == 1
    }

    /// Membership that a cut at `c` would have if it were not a cut.
    fn implied(&self, c: &Surd, mask: u64) -> bool {
        c.as_rational().is_some_and(|q| self.has_class(mask, q))
    }

    fn normalize(mut self) -> Self {
        let mut cuts = Vec::with_capacity(self.cuts.len());
        let mut masks = Vec::with_capacity(self.masks.len());
        let mut points = Vec::with_capacity(self.points.len());
        masks.push(self.masks[0]);
        for (i, c) in self.cuts.drain(..).enumerate() {
            let left = *masks.last().unwrap();
            let right = self.masks[i + 1];
            let point = self.points[i];
            let removable = left == right
                && match c.as_rational() {
                    Some(q) => point == (left >> self.space.class_of(q) & 1 == 1),
                    None => !point,
                };
            if removable {
                continue;
            }
            cuts.push(c);
            points.push(point);
            masks.push(right);
        }
        self.cuts = cuts;
        self.masks = masks;
        self.points = points;
        self
    }

    fn combine(
        &self,
        other: &CanonicalSet,
        fm: impl Fn(u64, u64) -> u64,
        fp: impl Fn(bool, bool) -> bool,
    ) -> CanonicalSet {
        assert_eq!(self.space, other.space, "sets over different moduli");
        let (a, b) = (self, other);
        let mut cuts = Vec::with_capacity(a.cuts.len() + b.cuts.len());
        let mut masks = vec![fm(a.masks[0], b.masks[0])];
        let mut points = Vec::new();
        let (mut ia, mut ib) = (0, 0);
        loop {
            let c = match (a.cuts.get(ia), b.cuts.get(ib)) {
                (None, None) => break,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (Some(x), Some(y)) => {
                    if x <= y {
                        x.clone()
                    } else {
                        y.clone()
                    }
                }
            };
            let pa = if a.cuts.get(ia) == Some(&c) {
                ia += 1;
                a.points[ia - 1]
            } else {
                a.implied(&c, a.masks[ia])
            };
            let pb = if b.cuts.get(ib) == Some(&c) {
                ib += 1;
                b.points[ib - 1]
            } else {
                b.implied(&c, b.masks[ib])
            };
            cuts.push(c);
            points.push(fp(pa, pb));
            masks.push(fm(a.masks[ia], b.masks[ib]));
        }
        CanonicalSet {
            space: a.space,
            cuts,
            masks,
            points,
        }
        .normalize()
    }

    pub fn union(&self, other: &CanonicalSet) -> CanonicalSet {
        self.combine(other, |x, y| x | y, |x, y| x || y)
    }

    pub fn intersect(&self, other: &CanonicalSet) -> CanonicalSet {
        self.combine(other, |x, y| x & y, |x, y| x && y)
    }

    pub fn diff(&self, other: &CanonicalSet) -> CanonicalSet {
        self.combine(other, |x, y| x & !y, |x, y| x && !y)
    }

    pub fn restrict(&self, lo: &Cut, hi: &Cut) -> CanonicalSet {
        self.intersect(&CanonicalSet::interval(self.space, lo, hi))
    }

    pub fn is_empty(&self) -> bool {
        self.masks.iter().all(|&m| m == 0) && self.points.iter().all(|&p| !p)
    }

    pub fn member(&self, q: &Rational) -> bool {
        let pos = self.cuts.binary_search_by(|c| {
            // compare cut c with q
            Cut::At(c.clone()).cmp_rational(q)
        });
        match pos {
            Ok(i) => self.points[i],
            Err(seg) => self.has_class(self.masks[seg], q),
        }
    }

    /// Pieces in increasing order: nonempty segments and present points.
    pub fn items(&self) -> Vec<Item> {
        let mut out = Vec::new();
        for seg in 0..self.masks.len() {
            if self.masks[seg] != 0 {
                out.push(Item::Segment {
                    lo: self.lower(seg),
                    hi: self.upper(seg),
                    mask: self.masks[seg],
                });
            }
            if seg < self.cuts.len() && self.points[seg] {
                let q = self.cuts[seg].as_rational().expect("points sit on rational cuts");
                out.push(Item::Point(q.clone()));
            }
        }
        out
    }

    pub fn finite_size(&self) -> Option<usize> {
        if self.masks.iter().any(|&m| m != 0) {
            return None;
        }
        Some(self.points.iter().filter(|&&p| p).count())
    }

    pub fn finite_points(&self) -> Option<Vec<Rational>> {
        self.finite_size()?;
        Some(
            self.items()
                .into_iter()
                .filter_map(|it| match it {
                    Item::Point(q) => Some(q),
                    Item::Segment { .. } => None,
                })
                .collect(),
        )
    }

    pub fn dense_in(&self, lo: &Cut, hi: &Cut) -> bool {
        if lo >= hi {
            return true;
        }
        (0..self.masks.len()).all(|seg| {
            let a = self.lower(seg).max(lo.clone());
            let b = self.upper(seg).min(hi.clone());
            a >= b || self.masks[seg] != 0
        })
    }

    pub fn max(&self) -> Option<Rational> {
        match self.items().last()? {
            Item::Point(q) => Some(q.clone()),
            Item::Segment { .. } => None,
        }
    }

    pub fn min(&self) -> Option<Rational> {
        match self.items().first()? {
            Item::Point(q) => Some(q.clone()),
            Item::Segment { .. } => None,
        }
    }

    /// Nonempty, without endpoints, and no two present points adjacent.
    pub fn is_q_copy(&self) -> bool {
        let items = self.items();
        if items.is_empty() || self.max().is_some() || self.min().is_some() {
            return false;
        }
        items
            .windows(2)
            .all(|w| !matches!((&w[0], &w[1]), (Item::Point(_), Item::Point(_))))
    }

    /// The cut `x` with `(−∞, x) ∩ class(j) ⊆ self ⊆ (−∞, x)`, if any.
    pub fn sandwich(&self, j: u32) -> Option<Cut> {
        let has_j = |m: u64| m >> j & 1 == 1;
        if !has_j(self.masks[0]) {
            return None;
        }
        // longest prefix of segments carrying class j, with the class-j
        // cuts between them present
        let mut last = 0;
        while last < self.cuts.len() {
            let c = &self.cuts[last];
            let gap = c
                .as_rational()
                .is_some_and(|q| self.space.class_of(q) == j && !self.points[last]);
            if gap || !has_j(self.masks[last + 1]) {
                break;
            }
            last += 1;
        }
        if last == self.cuts.len() {
            return Some(Cut::PosInf);
        }
        let nothing_above = !self.points[last]
            && self.masks[last + 1..].iter().all(|&m| m == 0)
            && self.points[last + 1..].iter().all(|&p| !p);
        nothing_above.then(|| Cut::At(self.cuts[last].clone()))
    }

    /// Back to an expression: a union of class-restricted intervals and a
    /// finite set.
    pub fn to_expr(&self) -> QSetExpr {
        let full = self.space.full_mask();
        let mut parts = Vec::new();
        let mut pts = Vec::new();
        for item in self.items() {
            match item {
                Item::Segment { lo, hi, mask } => {
                    let span = if lo == Cut::NegInf && hi == Cut::PosInf {
                        None
                    } else {
                        Some(QSetExpr::Interval(lo, hi))
                    };
                    let classes = if mask == full {
                        None
                    } else {
                        let cs: Vec<QSetExpr> = (0..self.space.modulus())
                            .filter(|i| mask >> i & 1 == 1)
                            .map(QSetExpr::DenseClass)
                            .collect();
                        Some(if cs.len() == 1 {
                            cs.into_iter().next().unwrap()
                        } else {
                            QSetExpr::Union(cs)
                        })
                    };
                    parts.push(match (span, classes) {
                        (None, None) => QSetExpr::Full,
                        (Some(s), None) => s,
                        (None, Some(c)) => c,
                        (Some(s), Some(c)) => QSetExpr::Intersect(vec![s, c]),
                    });
                }
                Item::Point(q) => pts.push(q),
            }
        }
        if !pts.is_empty() {
            parts.push(QSetExpr::FiniteSet(pts));
        }
        match parts.len() {
            0 => QSetExpr::empty(),
            1 => parts.pop().unwrap(),
            _ => QSetExpr::Union(parts),
        }
    }

    pub(super) fn segments(&self) -> impl Iterator<Item = (Cut, Cut, u64)> + '_ {
        (0..self.masks.len())
            .filter(|&s| self.masks[s] != 0)
            .map(|s| (self.lower(s), self.upper(s), self.masks[s]))
    }

    pub(super) fn present_points(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.cuts
            .iter()
            .zip(&self.points)
            .filter(|(_, &p)| p)
            .map(|(c, _)| c.as_rational().expect("points sit on rational cuts"))
    }

    /// Compare two canonical sets by inclusion.
    pub fn inclusion(&self, other: &CanonicalSet) -> Option<Ordering> {
        let a_in_b = self.diff(other).is_empty();
        let b_in_a = other.diff(self).is_empty();
        match (a_in_b, b_in_a) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for CanonicalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}
