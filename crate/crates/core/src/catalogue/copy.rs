use std::fmt;

use super::product::{parse_fiber, parse_product, Fiber, ProductSetExpr, RowForm};
use super::{block_cut, Ambient, CatalogueError, StructureId};
use crate::generic::is_copy_of_d;
use crate::qset::{parse_expr, CanonicalSet, Cut, Item, QSetExpr};
use crate::verdict::{Obstruction, Verdict};

/// A symbolic subset of one of the structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    /// A subset of `𝔸_ω = ω`.
    Nat(Fiber),
    /// A subset of `ℚ`, `𝔹_ω` or `𝔻`.
    Rat(QSetExpr),
    /// A subset of `𝔹_n`, `ℂ_n` or `ℂ_ω`.
    Product(ProductSetExpr),
}

impl SetExpr {
    /// Read a set in the syntax the structure uses.
    pub fn parse(id: StructureId, text: &str) -> Result<SetExpr, CatalogueError> {
        Ok(match id {
            StructureId::AOmega => SetExpr::Nat(parse_fiber(text)?),
            StructureId::Q | StructureId::BOmega | StructureId::D => {
                SetExpr::Rat(parse_expr(text)?)
            }
            _ => SetExpr::Product(parse_product(text)?),
        })
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Nat(x) => write!(f, "{x}"),
            SetExpr::Rat(x) => write!(f, "{x}"),
            SetExpr::Product(x) => write!(f, "{x}"),
        }
    }
}

/// Copy test for `⟨ℚ, <_ℚ⟩`: nonempty, no endpoints, dense in itself.
pub fn line_verdict(c: &CanonicalSet) -> Verdict {
    if c.is_empty() {
        return Verdict::not_copy(Obstruction::Empty);
    }
    if let Some(q) = c.max() {
        return Verdict::not_copy(Obstruction::Maximum { q });
    }
    if let Some(q) = c.min() {
        return Verdict::not_copy(Obstruction::Minimum { q });
    }
    let items = c.items();
    for w in items.windows(2) {
        if let (Item::Point(lo), Item::Point(hi)) = (&w[0], &w[1]) {
            return Verdict::not_copy(Obstruction::Gap {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
    }
    Verdict::copy("no endpoints, dense in itself")
}

fn in_part(part: String, v: Verdict) -> Option<Verdict> {
    match v {
        Verdict::NotCopy { witness } => Some(Verdict::not_copy(Obstruction::Part {
            part,
            cause: Box::new(witness),
        })),
        _ => None,
    }
}

fn mismatch(id: StructureId, detail: impl Into<String>) -> CatalogueError {
    CatalogueError::Mismatch {
        structure: id.to_string(),
        detail: detail.into(),
    }
}

/// Decide whether `x` is a copy of the ambient structure.
pub fn is_copy(amb: &Ambient, x: &SetExpr) -> Result<Verdict, CatalogueError> {
    let id = amb.id();
    let space = amb.space();
    match (id, x) {
        (StructureId::AOmega, SetExpr::Nat(f)) => Ok(match f.size() {
            Some(size) => Verdict::not_copy(Obstruction::Finite { size }),
            None => Verdict::copy("infinite subset of ω"),
        }),
        (StructureId::Q, SetExpr::Rat(e)) => Ok(line_verdict(&space.canonicalize(e)?)),
        (StructureId::BOmega, SetExpr::Rat(e)) => Ok(b_omega_verdict(&space.canonicalize(e)?)),
        (StructureId::D, SetExpr::Rat(e)) => {
            let g = amb.generic().expect("D carries a generic order");
            let (k, budget) = (amb.probe_level, amb.probe_budget);
            Ok(g.with_mut(|g| is_copy_of_d(g, e, k, budget))?)
        }
        (StructureId::B(n), SetExpr::Product(p)) => {
            let rf = p.normalize(space)?;
            if rf.reaches(n as u64) {
                return Err(mismatch(id, format!("uses a line ≥ {n}")));
            }
            for i in 0..n as u64 {
                if let Some(v) = in_part(format!("line {i}"), line_verdict(rf.row(i))) {
                    return Ok(v);
                }
            }
            Ok(Verdict::copy(format!("all {n} lines are copies of ℚ")))
        }
        (StructureId::C(n), SetExpr::Product(p)) => {
            let rf = p.normalize(space)?;
            if rf.reaches(n as u64) {
                return Err(mismatch(id, format!("uses a fibre index ≥ {n}")));
            }
            Ok(c_n_verdict(&rf, n as u64))
        }
        (StructureId::COmega, SetExpr::Product(p)) => Ok(c_omega_verdict(&p.normalize(space)?)),
        _ => Err(mismatch(id, format!("{x} has the wrong shape"))),
    }
}

/// `X` is a copy of `ℂ_n` iff `X = A × n` with `A` a copy of `ℚ`.
fn c_n_verdict(rf: &RowForm, n: u64) -> Verdict {
    let a = rf.row(0);
    for i in 1..n {
        let r = rf.row(i);
        if r != a {
            let odd = r.diff(a).union(&a.diff(r));
            let q = odd.witness(|_| false).expect("rows differ").value;
            let size = rf.fiber_of(&q).size().expect("rows below n only");
            return Verdict::not_copy(Obstruction::Fiber {
                q,
                size,
                expected: Some(n as usize),
            });
        }
    }
    match line_verdict(a) {
        Verdict::Copy { .. } => Verdict::copy(format!("A × {n} with A a copy of ℚ")),
        other => other,
    }
}

/// Copies of `ℂ_ω` are the sets `⋃_{q∈A} {q} × C_q` with `A` a copy of `ℚ`
/// and every `C_q` infinite. In row form the infinite fibres are exactly
/// those over the base row, so this is decidable here.
fn c_omega_verdict(rf: &RowForm) -> Verdict {
    if rf.is_empty() {
        return Verdict::not_copy(Obstruction::Empty);
    }
    let supp = rf.supp();
    if let Some(q) = supp.max() {
        return Verdict::not_copy(Obstruction::MaxSupport { q });
    }
    let thin = supp.diff(rf.base());
    if let Some(w) = thin.witness(|_| false) {
        let size = rf.fiber_of(&w.value).size().expect("off the base row");
        return Verdict::not_copy(Obstruction::Fiber {
            q: w.value,
            size,
            expected: None,
        });
    }
    match line_verdict(&supp) {
        Verdict::Copy { .. } => Verdict::copy("supp is a copy of ℚ and every fibre is infinite"),
        other => other,
    }
}

/// Copies of `𝔹_ω` meet infinitely many blocks, each in a copy of `ℚ`.
///
/// A set unbounded below contains a dense tail `(−∞, c) ∩ classes`, which
/// covers every block left of `c`; blocks right of it are checked one by one.
fn b_omega_verdict(c: &CanonicalSet) -> Verdict {
    if c.is_empty() {
        return Verdict::not_copy(Obstruction::Empty);
    }
    let first = match c.items().into_iter().next() {
        Some(Item::Segment {
            lo: Cut::NegInf,
            hi,
            ..
        }) => hi,
        Some(Item::Segment { lo, .. }) => {
            return Verdict::not_copy(Obstruction::Shape {
                detail: format!("bounded below by {lo}, so only finitely many blocks are met"),
            })
        }
        Some(Item::Point(q)) => return Verdict::not_copy(Obstruction::Minimum { q }),
        None => unreachable!("nonempty"),
    };
    let mut i = 0u64;
    while block_cut(i) > first {
        let trace = c.restrict(&block_cut(i + 1), &block_cut(i));
        if !trace.is_empty() {
            if let Some(v) = in_part(format!("block {i}"), line_verdict(&trace)) {
                return v;
            }
        }
        i += 1;
    }
    Verdict::copy(format!("every block from {i} on carries a dense copy of ℚ"))
}
