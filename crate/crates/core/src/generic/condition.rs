use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::GenericError;
use crate::order::{FinPoset, OrderRel, PosetJson, Triple};
use crate::qset::{Cut, QSetExpr, QSpace};
use crate::rational::Rational;

/// A finite strict order on rationals, extended by `<_ℚ`.
///
/// Points keep their insertion order; `succ[i]` holds the indices above `i`.
#[derive(Clone, Default)]
pub struct Condition {
    points: Vec<Rational>,
    index: HashMap<Rational, usize>,
    succ: Vec<FixedBitSet>,
    pred: Vec<FixedBitSet>,
}

/// How `extend_meet_triple` met its dense set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeetOutcome {
    /// The triple is not consistent in the extended condition.
    NotConsistent,
    /// A realizer with the required properties was already present.
    AlreadyMet(Rational),
    /// A fresh realizer was added.
    Added(Rational),
}

impl Condition {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from points and `◁` pairs, checking (ii) and (iii).
    pub fn from_pairs(
        points: Vec<Rational>,
        lt: &[(Rational, Rational)],
    ) -> Result<Self, GenericError> {
        let mut c = Condition::new();
        for q in points {
            c.add_point(q);
        }
        for (a, b) in lt {
            let i = c.require(a)?;
            let j = c.require(b)?;
            c.succ[i].insert(j);
            c.pred[j].insert(i);
        }
        c.audit()?;
        Ok(c)
    }

    pub fn from_poset(p: &FinPoset<Rational>) -> Result<Self, GenericError> {
        let lt: Vec<_> = p
            .pairs()
            .into_iter()
            .map(|(i, j)| (p.label(i).clone(), p.label(j).clone()))
            .collect();
        Self::from_pairs(p.labels().to_vec(), &lt)
    }

    fn require(&self, q: &Rational) -> Result<usize, GenericError> {
        self.index
            .get(q)
            .copied()
            .ok_or_else(|| GenericError::UnknownPoint(q.to_string()))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.index.contains_key(q)
    }

    pub fn index_of(&self, q: &Rational) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn lt_idx(&self, i: usize, j: usize) -> bool {
        self.succ[i].contains(j)
    }

    pub fn lt(&self, a: &Rational, b: &Rational) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.lt_idx(i, j),
            _ => false,
        }
    }

    /// `None` when either point is outside `P_p`.
    pub fn relation(&self, a: &Rational, b: &Rational) -> Option<OrderRel> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        Some(if i == j {
            OrderRel::Equal
        } else if self.lt_idx(i, j) {
            OrderRel::Below
        } else if self.lt_idx(j, i) {
            OrderRel::Above
        } else {
            OrderRel::Incomparable
        })
    }

    pub fn successors(&self, i: usize) -> &FixedBitSet {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &FixedBitSet {
        &self.pred[i]
    }

    pub fn pair_count(&self) -> usize {
        self.succ.iter().map(|s| s.count_ones(..)).sum()
    }

    /// Add `q` with no relations. Returns its index.
    pub fn add_point(&mut self, q: Rational) -> usize {
        if let Some(i) = self.index_of(&q) {
            return i;
        }
        let n = self.points.len() + 1;
        for row in self.succ.iter_mut().chain(self.pred.iter_mut()) {
            row.grow(n);
        }
        self.succ.push(FixedBitSet::with_capacity(n));
        self.pred.push(FixedBitSet::with_capacity(n));
        self.index.insert(q.clone(), n - 1);
        self.points.push(q);
        n - 1
    }

    /// The condition `⟨P_p ∪ {q}, ◁_p⟩`.
    pub fn extend_with_point(&self, q: &Rational) -> Condition {
        let mut c = self.clone();
        c.add_point(q.clone());
        c
    }

    /// Indices of the `◁_p`-down-closure (`below = true`) or up-closure of `seeds`.
    fn closure(&self, seeds: &[usize], below: bool) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for &s in seeds {
            out.insert(s);
            out.union_with(if below { &self.pred[s] } else { &self.succ[s] });
        }
        out
    }

    fn index_triple(&self, t: &Triple<Rational>) -> Result<Triple<usize>, GenericError> {
        let f = |v: &[Rational]| v.iter().map(|q| self.require(q)).collect::<Result<Vec<_>, _>>();
        Ok(Triple::new(f(&t.l)?, f(&t.g)?, f(&t.u)?))
    }

    /// (C1)–(C3) for a triple whose points all lie in `P_p`.
    pub fn is_consistent(&self, t: &Triple<Rational>) -> Result<bool, GenericError> {
        let t = self.index_triple(t)?;
        let c1 = t.l.iter().all(|&l| t.g.iter().all(|&g| self.lt_idx(l, g)));
        let c2 = t.u.iter().all(|&u| t.l.iter().all(|&l| !self.lt_idx(u, l)));
        let c3 = t.g.iter().all(|&g| t.u.iter().all(|&u| !self.lt_idx(g, u)));
        Ok(c1 && c2 && c3)
    }

    fn realizes_idx(&self, t: &Triple<usize>, x: usize) -> bool {
        !t.l.contains(&x)
            && !t.g.contains(&x)
            && !t.u.contains(&x)
            && t.l.iter().all(|&l| self.lt_idx(l, x))
            && t.g.iter().all(|&g| self.lt_idx(x, g))
            && t.u.iter().all(|&u| !self.lt_idx(u, x) && !self.lt_idx(x, u))
    }

    pub fn realizes(&self, t: &Triple<Rational>, q: &Rational) -> Result<bool, GenericError> {
        let t = self.index_triple(t)?;
        let x = self.require(q)?;
        Ok(self.realizes_idx(&t, x))
    }

    /// Realizers of `t` among `P_p`, in insertion order.
    pub fn realizers(&self, t: &Triple<Rational>) -> Result<Vec<Rational>, GenericError> {
        let ti = self.index_triple(t)?;
        let mut cand = FixedBitSet::with_capacity(self.len());
        cand.insert_range(..);
        for &l in &ti.l {
            cand.intersect_with(&self.succ[l]);
        }
        for &g in &ti.g {
            cand.intersect_with(&self.pred[g]);
        }
        Ok(cand
            .ones()
            .filter(|&x| self.realizes_idx(&ti, x))
            .map(|x| self.points[x].clone())
            .collect())
    }

    /// Is `self ≤ weaker`: `P_self ⊇ P_weaker` and the order agrees on `P_weaker`.
    pub fn extends(&self, weaker: &Condition) -> bool {
        let n = weaker.len();
        if n <= self.len() && self.points[..n] == weaker.points[..] {
            // insertion order preserved: compare rows on the shared prefix
            return (0..n).all(|i| self.succ[i].ones().take_while(|&j| j < n).eq(weaker.succ[i].ones()));
        }
        let map: Option<Vec<usize>> = weaker.points.iter().map(|q| self.index_of(q)).collect();
        let Some(map) = map else { return false };
        for (i, &si) in map.iter().enumerate() {
            for (j, &sj) in map.iter().enumerate() {
                if weaker.lt_idx(i, j) != self.lt_idx(si, sj) {
                    return false;
                }
            }
        }
        true
    }

    /// Check (ii) and (iii): irreflexive, transitive, `<_ℚ`-compatible.
    pub fn audit(&self) -> Result<(), GenericError> {
        for i in 0..self.len() {
            if self.lt_idx(i, i) {
                return Err(GenericError::Invariant(format!(
                    "{} ◁ {}",
                    self.points[i], self.points[i]
                )));
            }
            for j in self.succ[i].ones() {
                if self.points[i] >= self.points[j] {
                    return Err(GenericError::Invariant(format!(
                        "{} ◁ {} but not <_ℚ",
                        self.points[i], self.points[j]
                    )));
                }
                if !self.succ[j].is_subset(&self.succ[i]) {
                    return Err(GenericError::Invariant(format!(
                        "not transitive through {}",
                        self.points[j]
                    )));
                }
                if !self.pred[j].contains(i) {
                    return Err(GenericError::Invariant("succ/pred mismatch".into()));
                }
            }
        }
        Ok(())
    }

    /// Local audit after inserting `q` with fresh relations.
    fn audit_new_point(&self, x: usize) -> Result<(), GenericError> {
        let q = &self.points[x];
        let err = |msg: String| Err(GenericError::Invariant(msg));
        if self.lt_idx(x, x) {
            return err(format!("{q} ◁ {q}"));
        }
        for a in self.pred[x].ones() {
            if &self.points[a] >= q {
                return err(format!("{} ◁ {q} but not <_ℚ", self.points[a]));
            }
            if !self.pred[a].is_subset(&self.pred[x]) {
                return err(format!("down-set of {q} not closed at {}", self.points[a]));
            }
            if !self.succ[x].is_subset(&self.succ[a]) {
                return err(format!("{} ◁ {q} does not pass upward", self.points[a]));
            }
        }
        for b in self.succ[x].ones() {
            if &self.points[b] <= q {
                return err(format!("{q} ◁ {} but not <_ℚ", self.points[b]));
            }
            if !self.succ[b].is_subset(&self.succ[x]) {
                return err(format!("up-set of {q} not closed at {}", self.points[b]));
            }
        }
        Ok(())
    }

    /// Meet `𝒟⟨L,G,U⟩,m` below `self`.
    ///
    /// The fresh point is the least-height element of the required window
    /// intersected with `j_set`, avoiding `P_p`.
    pub fn extend_meet_triple(
        &self,
        t: &Triple<Rational>,
        m: u32,
        j_set: &QSetExpr,
        space: &QSpace,
    ) -> Result<(Condition, MeetOutcome), GenericError> {
        let mut c = self.clone();
        let out = c.meet_triple(t, m, j_set, space)?;
        Ok((c, out))
    }

    /// In-place form of [`Condition::extend_meet_triple`].
    pub fn meet_triple(
        &mut self,
        t: &Triple<Rational>,
        m: u32,
        j_set: &QSetExpr,
        space: &QSpace,
    ) -> Result<MeetOutcome, GenericError> {
        if !t.is_disjoint() {
            return Err(GenericError::MalformedTriple("L, G, U overlap".into()));
        }
        if t.size() == 0 {
            return Err(GenericError::MalformedTriple("empty triple".into()));
        }
        if m == 0 {
            return Err(GenericError::MalformedTriple("m must be positive".into()));
        }
        for q in t.points() {
            self.add_point(q);
        }
        if !self.is_consistent(t)? {
            return Ok(MeetOutcome::NotConsistent);
        }
        let (lo, hi) = window(t, m);
        for r in self.realizers(t)? {
            if space.member(&r, j_set)? && lo.below(&r) && hi.above(&r) {
                return Ok(MeetOutcome::AlreadyMet(r));
            }
        }
        let present = &self.index;
        let q = space
            .witness_in_excluding(j_set, &lo, &hi, |r| present.contains_key(r))?
            .ok_or_else(|| GenericError::NoWitness(format!("{j_set} ∩ ({lo}, {hi})")))?;

        let ti = self.index_triple(t)?;
        let below = self.closure(&ti.l, true);
        let above = if ti.g.is_empty() {
            FixedBitSet::with_capacity(self.len())
        } else {
            self.closure(&ti.g, false)
        };
        let x = self.add_point(q.clone());
        for a in below.ones() {
            self.succ[a].insert(x);
            self.pred[x].insert(a);
        }
        for b in above.ones() {
            self.succ[x].insert(b);
            self.pred[b].insert(x);
        }
        self.audit_new_point(x)?;
        if !self.realizes_idx(&ti, x) {
            return Err(GenericError::Invariant(format!("{q} does not realize the triple")));
        }
        Ok(MeetOutcome::Added(q))
    }

    pub fn to_poset(&self) -> FinPoset<Rational> {
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| self.succ[i].ones().map(move |j| (i, j)))
            .collect();
        FinPoset::from_index_pairs(self.points.clone(), pairs)
            .expect("conditions are strict orders")
    }

    /// The induced poset on `subset` (points outside `P_p` are an error).
    pub fn restrict(&self, subset: &[Rational]) -> Result<FinPoset<Rational>, GenericError> {
        let idx: Vec<usize> = subset.iter().map(|q| self.require(q)).collect::<Result<_, _>>()?;
        let mut pairs = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if self.lt_idx(i, j) {
                    pairs.push((a, b));
                }
            }
        }
        Ok(FinPoset::from_index_pairs(subset.to_vec(), pairs)
            .expect("restriction of a strict order"))
    }

    pub fn to_json_value(&self) -> PosetJson {
        self.to_poset().to_json_value()
    }
}

/// The interval the fresh realizer must come from.
pub fn window(t: &Triple<Rational>, m: u32) -> (Cut, Cut) {
    if let Some(min_g) = t.g.first() {
        let lo = t.l.last().map_or(Cut::NegInf, |l| Cut::rational(l.clone()));
        (lo, Cut::rational(min_g.clone()))
    } else {
        let top = t.m().expect("nonempty triple");
        let hi = &top + Rational::new(1.into(), m.into());
        (Cut::rational(top), Cut::rational(hi))
    }
}

impl fmt::Debug for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Condition{{")?;
        for (i, q) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "; ")?;
        let mut first = true;
        for i in 0..self.len() {
            for j in self.succ[i].ones() {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}◁{}", self.points[i], self.points[j])?;
            }
        }
        write!(f, "}}")
    }
}

impl PartialEq for Condition {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.extends(other)
    }
}

impl Eq for Condition {}
