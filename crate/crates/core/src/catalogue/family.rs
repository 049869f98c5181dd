use std::fmt::Display;

use serde::Serialize;

use super::product::{Fiber, ProductSetExpr, RowForm};
use super::CatalogueError;
use crate::qset::{QSetExpr, QSpace};

/// The ground set a family of subsets lives on.
pub trait Universe {
    type Set: Clone + Display;

    fn empty(&self) -> Self::Set;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Result<Self::Set, CatalogueError>;
    /// Remove the `count` least elements in the fixed enumeration, returning
    /// the smaller set and a description of what was removed. `None` when
    /// the set has fewer elements.
    fn delete_least(
        &self,
        a: &Self::Set,
        count: usize,
    ) -> Result<Option<(Self::Set, String)>, CatalogueError>;
    /// The complement is infinite.
    fn is_coinfinite(&self, a: &Self::Set) -> Result<bool, CatalogueError>;
}

/// Subsets of `ℚ` given as set expressions.
#[derive(Debug, Clone, Copy)]
pub struct LineUniverse(pub QSpace);

impl Universe for LineUniverse {
    type Set = QSetExpr;

    fn empty(&self) -> QSetExpr {
        QSetExpr::empty()
    }

    fn union(&self, a: &QSetExpr, b: &QSetExpr) -> Result<QSetExpr, CatalogueError> {
        Ok(a.clone().or(b.clone()))
    }

    fn delete_least(
        &self,
        a: &QSetExpr,
        count: usize,
    ) -> Result<Option<(QSetExpr, String)>, CatalogueError> {
        let c = self.0.canonicalize(a)?;
        let mut gone = Vec::new();
        while gone.len() < count {
            match c.witness(|q| gone.contains(q)) {
                Some(w) => gone.push(w.value),
                None => return Ok(None),
            }
        }
        let desc = gone.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ");
        Ok(Some((a.clone().minus(QSetExpr::finite(gone)), format!("{{{desc}}}"))))
    }

    fn is_coinfinite(&self, a: &QSetExpr) -> Result<bool, CatalogueError> {
        let rest = self.0.canonicalize(&QSetExpr::Full.minus(a.clone()))?;
        Ok(rest.finite_size().is_none())
    }
}

/// Subsets of `ℚ × n` (or `ℚ × ω` when `width` is `None`).
#[derive(Debug, Clone, Copy)]
pub struct ProductUniverse {
    pub space: QSpace,
    pub width: Option<u64>,
}

impl ProductUniverse {
    fn form(&self, a: &ProductSetExpr) -> Result<RowForm, CatalogueError> {
        let rf = a.normalize(&self.space)?;
        Ok(match self.width {
            Some(n) => rf.truncate(n),
            None => rf,
        })
    }

    fn whole(&self) -> ProductSetExpr {
        let f = match self.width {
            Some(n) => Fiber::below(n),
            None => Fiber::Full,
        };
        ProductSetExpr::single(QSetExpr::Full, f)
    }
}

impl Universe for ProductUniverse {
    type Set = ProductSetExpr;

    fn empty(&self) -> ProductSetExpr {
        ProductSetExpr::empty()
    }

    fn union(&self, a: &ProductSetExpr, b: &ProductSetExpr) -> Result<ProductSetExpr, CatalogueError> {
        Ok(self.form(a)?.union(&self.form(b)?).to_product())
    }

    /// Pairs are taken in order of the least-height rational of the
    /// support, then fibre index.
    fn delete_least(
        &self,
        a: &ProductSetExpr,
        count: usize,
    ) -> Result<Option<(ProductSetExpr, String)>, CatalogueError> {
        let mut rf = self.form(a)?;
        let mut gone = Vec::new();
        while gone.len() < count {
            let supp = rf.supp();
            let Some(w) = supp.witness(|_| false) else {
                return Ok(None);
            };
            let i = rf.fiber_of(&w.value).first().expect("q is in the support");
            let single = ProductSetExpr::single(QSetExpr::point(w.value.clone()), Fiber::singleton(i));
            rf = rf.diff(&single.normalize(&self.space)?);
            gone.push(format!("<{},{i}>", w.value));
        }
        Ok(Some((rf.to_product(), format!("{{{}}}", gone.join(", ")))))
    }

    fn is_coinfinite(&self, a: &ProductSetExpr) -> Result<bool, CatalogueError> {
        let rest = self.form(&self.whole())?.diff(&self.form(a)?);
        Ok(rest.finite_size().is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub results: Vec<AxiomResult>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

/// Check (P1)–(P4) for the family `{X : member(X)}` on sampled sets.
///
/// (P2) is tested on `A ∪ S` for sampled members `A` and samples `S`, (P3) by
/// deleting the one and the three least points of each sampled member, and
/// (P4) passes once some sampled member has an infinite complement.
pub fn positive_family_axioms<U: Universe>(
    universe: &U,
    member: impl Fn(&U::Set) -> Result<bool, CatalogueError>,
    samples: &[U::Set],
) -> Result<FamilyReport, CatalogueError> {
    let empty = universe.empty();
    let empty_in = member(&empty)?;
    let p1 = AxiomResult {
        axiom: "P1",
        pass: !empty_in,
        checked: 1,
        witness: empty_in.then(|| format!("{empty} is a member")),
    };

    let mut members = Vec::new();
    for s in samples {
        if member(s)? {
            members.push(s.clone());
        }
    }

    let mut p2 = AxiomResult {
        axiom: "P2",
        pass: true,
        checked: 0,
        witness: None,
    };
    'outer: for a in &members {
        for s in samples {
            let b = universe.union(a, s)?;
            p2.checked += 1;
            if !member(&b)? {
                p2.pass = false;
                p2.witness = Some(format!("{a} is a member but its superset {b} is not"));
                break 'outer;
            }
        }
    }

    let mut p3 = AxiomResult {
        axiom: "P3",
        pass: true,
        checked: 0,
        witness: None,
    };
    'outer3: for a in &members {
        for count in [1, 3] {
            if let Some((smaller, gone)) = universe.delete_least(a, count)? {
                p3.checked += 1;
                if !member(&smaller)? {
                    p3.pass = false;
                    p3.witness = Some(format!("{a} is a member but {a} minus {gone} is not"));
                    break 'outer3;
                }
            }
        }
    }

    let mut p4 = AxiomResult {
        axiom: "P4",
        pass: false,
        checked: 0,
        witness: None,
    };
    for a in &members {
        p4.checked += 1;
        if universe.is_coinfinite(a)? {
            p4.pass = true;
            p4.witness = Some(format!("{a} has infinite complement"));
            break;
        }
    }
    if !p4.pass {
        p4.witness = Some(format!("none of {} sampled members is co-infinite", members.len()));
    }

    Ok(FamilyReport {
        results: vec![p1, p2, p3, p4],
    })
}
