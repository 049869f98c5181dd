use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CatalogueError;
use crate::qset::syntax::{read_all, to_expr, Sexp};
use crate::qset::{CanonicalSet, ExprJson, QSetExpr, QSpace};
use crate::rational::Rational;

/// A subset of `ω`: the fibre of a product component, or a set of naturals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fiber {
    Finite(BTreeSet<u64>),
    /// `ω` minus the listed indices.
    Cofinite(BTreeSet<u64>),
    Full,
    /// `ω⁺ = ω ∖ {0}`.
    OmegaPlus,
}

impl Fiber {
    pub fn finite(items: impl IntoIterator<Item = u64>) -> Self {
        Fiber::Finite(items.into_iter().collect())
    }

    pub fn singleton(i: u64) -> Self {
        Fiber::finite([i])
    }

    /// `{0, …, n−1}`.
    pub fn below(n: u64) -> Self {
        Fiber::finite(0..n)
    }

    /// `(cofinite, listed)`: the set is `listed` or `ω ∖ listed`.
    fn parts(&self) -> (bool, BTreeSet<u64>) {
        match self {
            Fiber::Finite(s) => (false, s.clone()),
            Fiber::Cofinite(s) => (true, s.clone()),
            Fiber::Full => (true, BTreeSet::new()),
            Fiber::OmegaPlus => (true, BTreeSet::from([0])),
        }
    }

    fn from_parts(cofinite: bool, listed: BTreeSet<u64>) -> Self {
        if !cofinite {
            return Fiber::Finite(listed);
        }
        match listed.len() {
            0 => Fiber::Full,
            1 if listed.contains(&0) => Fiber::OmegaPlus,
            _ => Fiber::Cofinite(listed),
        }
    }

    pub fn normalized(&self) -> Fiber {
        let (c, s) = self.parts();
        Fiber::from_parts(c, s)
    }

    pub fn contains(&self, i: u64) -> bool {
        let (c, s) = self.parts();
        s.contains(&i) != c
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.parts(), (false, s) if s.is_empty())
    }

    pub fn is_infinite(&self) -> bool {
        self.parts().0
    }

    /// Cardinality, when finite.
    pub fn size(&self) -> Option<usize> {
        match self.parts() {
            (false, s) => Some(s.len()),
            (true, _) => None,
        }
    }

    /// The indices whose membership is listed explicitly.
    pub fn mentioned(&self) -> BTreeSet<u64> {
        self.parts().1
    }

    pub fn complement(&self) -> Fiber {
        let (c, s) = self.parts();
        Fiber::from_parts(!c, s)
    }

    pub fn union(&self, other: &Fiber) -> Fiber {
        let (ca, a) = self.parts();
        let (cb, b) = other.parts();
        match (ca, cb) {
            (false, false) => Fiber::from_parts(false, &a | &b),
            (true, true) => Fiber::from_parts(true, &a & &b),
            (true, false) => Fiber::from_parts(true, &a - &b),
            (false, true) => Fiber::from_parts(true, &b - &a),
        }
    }

    pub fn intersect(&self, other: &Fiber) -> Fiber {
        self.complement().union(&other.complement()).complement()
    }

    pub fn diff(&self, other: &Fiber) -> Fiber {
        self.intersect(&other.complement())
    }

    pub fn subset(&self, other: &Fiber) -> bool {
        self.diff(other).is_empty()
    }

    /// Least element, if any.
    pub fn first(&self) -> Option<u64> {
        match self.parts() {
            (false, s) => s.first().copied(),
            (true, s) => (0..).find(|i| !s.contains(i)),
        }
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| {
            s.iter()
                .map(|i| format!(" {i}"))
                .collect::<String>()
        };
        match self.normalized() {
            Fiber::Full => write!(f, "omega"),
            Fiber::OmegaPlus => write!(f, "omega+"),
            Fiber::Finite(s) => write!(f, "(fin{})", list(&s)),
            Fiber::Cofinite(s) => write!(f, "(cofin{})", list(&s)),
        }
    }
}

fn fiber_from_sexp(s: &Sexp) -> Result<Fiber, CatalogueError> {
    let bad = |m: &str| CatalogueError::Parse(m.to_string());
    match s {
        Sexp::Atom(a) if a == "omega" || a == "ω" => Ok(Fiber::Full),
        Sexp::Atom(a) if a == "omega+" || a == "ω⁺" => Ok(Fiber::OmegaPlus),
        Sexp::Atom(a) => Err(bad(&format!("unknown fibre {a}"))),
        Sexp::List(items) => {
            let (head, args) = match items.split_first() {
                Some((Sexp::Atom(h), rest)) => (h.as_str(), rest),
                _ => return Err(bad("expected fin or cofin")),
            };
            let idx = args
                .iter()
                .map(|a| match a {
                    Sexp::Atom(t) => t.parse::<u64>().map_err(|_| bad(&format!("bad index {t}"))),
                    Sexp::List(_) => Err(bad("expected an index")),
                })
                .collect::<Result<BTreeSet<u64>, _>>()?;
            match head {
                "fin" => Ok(Fiber::Finite(idx)),
                "cofin" => Ok(Fiber::Cofinite(idx)),
                _ => Err(bad(&format!("unknown fibre form {head}"))),
            }
        }
    }
}

/// `omega`, `omega+`, `(fin 0 2)` or `(cofin 0 3)`.
pub fn parse_fiber(text: &str) -> Result<Fiber, CatalogueError> {
    fiber_from_sexp(&read_all(text)?)
}

/// A finite union `⋃ E_i × F_i` inside `ℚ × ω`.
///
/// For `ℂ_n` and `ℂ_ω` a pair is `⟨q, i⟩`; for `𝔹_n` the fibre index is
/// the line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ProductSetExpr {
    pub components: Vec<(QSetExpr, Fiber)>,
}

impl ProductSetExpr {
    pub fn empty() -> Self {
        ProductSetExpr::default()
    }

    pub fn single(e: QSetExpr, f: Fiber) -> Self {
        ProductSetExpr {
            components: vec![(e, f)],
        }
    }

    /// `A × n`.
    pub fn times(e: QSetExpr, n: u64) -> Self {
        ProductSetExpr::single(e, Fiber::below(n))
    }

    pub fn with(mut self, e: QSetExpr, f: Fiber) -> Self {
        self.components.push((e, f));
        self
    }

    pub fn normalize(&self, space: &QSpace) -> Result<RowForm, CatalogueError> {
        let mut parts = Vec::with_capacity(self.components.len());
        for (e, f) in &self.components {
            parts.push((space.canonicalize(e)?, f.clone()));
        }
        Ok(RowForm::from_components(*space, &parts))
    }

    /// `supp X = {q : X ∩ ω_q ≠ ∅}`.
    pub fn supp(&self, space: &QSpace) -> Result<QSetExpr, CatalogueError> {
        Ok(self.normalize(space)?.supp().to_expr())
    }
}

impl fmt::Display for ProductSetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(product")?;
        for (e, fib) in &self.components {
            write!(f, " (prod {e} {fib})")?;
        }
        write!(f, ")")
    }
}

/// `(product (prod E F) …)`; a bare set expression `E` is read as `E × ω`.
pub fn parse_product(text: &str) -> Result<ProductSetExpr, CatalogueError> {
    let s = read_all(text)?;
    let items = match &s {
        Sexp::List(items) => items,
        Sexp::Atom(_) => return Ok(ProductSetExpr::single(to_expr(&s)?, Fiber::Full)),
    };
    match items.split_first() {
        Some((Sexp::Atom(h), rest)) if h == "product" => {
            let mut out = ProductSetExpr::empty();
            for c in rest {
                match c {
                    Sexp::List(v) if v.len() == 3 && v[0] == Sexp::Atom("prod".into()) => {
                        out.components
                            .push((to_expr(&v[1])?, fiber_from_sexp(&v[2])?));
                    }
                    _ => {
                        return Err(CatalogueError::Parse(
                            "product components look like (prod E F)".into(),
                        ))
                    }
                }
            }
            Ok(out)
        }
        _ => Ok(ProductSetExpr::single(to_expr(&s)?, Fiber::Full)),
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    #[serde(flatten)]
    expr: ExprJson,
    fiber: Fiber,
}

impl Serialize for ProductSetExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<ComponentJson> = self
            .components
            .iter()
            .map(|(e, f)| ComponentJson {
                expr: e.clone().into(),
                fiber: f.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProductSetExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<ComponentJson>::deserialize(d)?;
        let components = v
            .into_iter()
            .map(|c| {
                QSetExpr::try_from(c.expr)
                    .map(|e| (e, c.fiber))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<Result<_, _>>()?;
        Ok(ProductSetExpr { components })
    }
}

/// Normal form of a product set: row `i` is `{q : ⟨q, i⟩ ∈ X}`.
///
/// Rows listed in `rows` differ from `base`; every other row equals `base`.
/// Two product sets are equal iff their row forms are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowForm {
    space: QSpace,
    base: CanonicalSet,
    rows: BTreeMap<u64, CanonicalSet>,
}

impl RowForm {
    fn from_components(space: QSpace, parts: &[(CanonicalSet, Fiber)]) -> Self {
        let mut keys = BTreeSet::new();
        for (_, f) in parts {
            keys.extend(f.mentioned());
        }
        let mut base = CanonicalSet::empty(space);
        for (e, f) in parts {
            if f.is_infinite() {
                base = base.union(e);
            }
        }
        let rows = keys
            .into_iter()
            .map(|i| {
                let mut r = CanonicalSet::empty(space);
                for (e, f) in parts {
                    if f.contains(i) {
                        r = r.union(e);
                    }
                }
                (i, r)
            })
            .collect();
        RowForm { space, base, rows }.tidy()
    }

    fn tidy(mut self) -> Self {
        let base = self.base.clone();
        self.rows.retain(|_, r| *r != base);
        self
    }

    pub fn space(&self) -> QSpace {
        self.space
    }

    /// The row shared by all but finitely many indices.
    pub fn base(&self) -> &CanonicalSet {
        &self.base
    }

    /// Rows that differ from the base.
    pub fn exceptions(&self) -> &BTreeMap<u64, CanonicalSet> {
        &self.rows
    }

    pub fn row(&self, i: u64) -> &CanonicalSet {
        self.rows.get(&i).unwrap_or(&self.base)
    }

    pub fn member(&self, q: &Rational, i: u64) -> bool {
        self.row(i).member(q)
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty() && self.rows.is_empty()
    }

    pub fn supp(&self) -> CanonicalSet {
        self.rows
            .values()
            .fold(self.base.clone(), |acc, r| acc.union(r))
    }

    /// `{i : ⟨q, i⟩ ∈ X}`.
    pub fn fiber_of(&self, q: &Rational) -> Fiber {
        let in_base = self.base.member(q);
        let flipped: BTreeSet<u64> = self
            .rows
            .iter()
            .filter(|(_, r)| r.member(q) != in_base)
            .map(|(&i, _)| i)
            .collect();
        if in_base {
            Fiber::Cofinite(flipped).normalized()
        } else {
            Fiber::Finite(flipped)
        }
    }

    /// Some row with index `≥ n` is nonempty.
    pub fn reaches(&self, n: u64) -> bool {
        !self.base.is_empty() || self.rows.range(n..).any(|(_, r)| !r.is_empty())
    }

    fn zip(&self, other: &RowForm, op: impl Fn(&CanonicalSet, &CanonicalSet) -> CanonicalSet) -> RowForm {
        let keys: BTreeSet<u64> = self.rows.keys().chain(other.rows.keys()).copied().collect();
        RowForm {
            space: self.space,
            base: op(&self.base, &other.base),
            rows: keys
                .into_iter()
                .map(|i| (i, op(self.row(i), other.row(i))))
                .collect(),
        }
        .tidy()
    }

    pub fn union(&self, other: &RowForm) -> RowForm {
        self.zip(other, CanonicalSet::union)
    }

    pub fn intersect(&self, other: &RowForm) -> RowForm {
        self.zip(other, CanonicalSet::intersect)
    }

    pub fn diff(&self, other: &RowForm) -> RowForm {
        self.zip(other, CanonicalSet::diff)
    }

    pub fn subset(&self, other: &RowForm) -> bool {
        self.diff(other).is_empty()
    }

    /// Keep rows `0..n` only.
    pub fn truncate(&self, n: u64) -> RowForm {
        RowForm {
            space: self.space,
            base: CanonicalSet::empty(self.space),
            rows: (0..n).map(|i| (i, self.row(i).clone())).collect(),
        }
        .tidy()
    }

    /// Finite, when the set has finitely many pairs.
    pub fn finite_size(&self) -> Option<usize> {
        if !self.base.is_empty() {
            return None;
        }
        self.rows
            .values()
            .map(|r| r.finite_size())
            .sum::<Option<usize>>()
    }

    /// Back to a product expression with pairwise disjoint components.
    pub fn to_product(&self) -> ProductSetExpr {
        let mut out = ProductSetExpr::empty();
        if !self.base.is_empty() {
            let keys: BTreeSet<u64> = self.rows.keys().copied().collect();
            out.components
                .push((self.base.to_expr(), Fiber::Cofinite(keys).normalized()));
        }
        for (&i, r) in &self.rows {
            if !r.is_empty() {
                out.components.push((r.to_expr(), Fiber::singleton(i)));
            }
        }
        out
    }
}

impl fmt::Display for RowForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_product())
    }
}
