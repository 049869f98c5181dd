use std::cmp::Ordering;

use super::sets::Canon;
use super::{ChainError, ChainIndex, LinOrderDesc};
use crate::catalogue::{Ambient, Fiber, ProductSetExpr, SetExpr, StructureId};
use crate::qset::{Cut, QSetExpr, QSpace, Surd};
use crate::rational::{Rational, RationalEnumeration};

/// What the underlying sets are made of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// Subsets of `𝔻`, using the class `J` the generic order was built with.
    D,
    /// Subsets of the rational line.
    Line,
    /// Subsets of `ℚ × ω`.
    COmega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `L` has a lump at `∞`.
    I,
    /// `L` has a single top element; the chain for `L + 1` minus its top.
    II,
}

/// How line sets become subsets of the target structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Identity,
    /// `A ↦ ({0} × A) ∪ ⋃_{0<i<n} {i} × ℚ` in `𝔹_n`.
    LiftB(u32),
    /// `A ↦ A × n` in `ℂ_n`.
    TransportC(u32),
    /// The same set, read in `𝔹_ω`.
    BOmega,
}

/// Dense pieces of `ℚ`: an optional `J` and one `J_y` per point of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub j: Option<QSetExpr>,
    pub parts: Vec<QSetExpr>,
}

impl Partition {
    /// Residue classes, `j` first when given. The last part takes every
    /// class left over so that the pieces cover `ℚ`.
    pub fn by_classes(modulus: u32, j: Option<u32>, m: usize) -> Result<Self, ChainError> {
        let order: Vec<u32> = match j {
            Some(j) => (1..modulus).map(|t| (j + t) % modulus).collect(),
            None => (0..modulus).collect(),
        };
        if order.len() < m {
            return Err(ChainError::Shape(format!(
                "modulus {modulus} gives {} classes, need {} dense pieces",
                modulus,
                m + j.is_some() as usize
            )));
        }
        let mut parts = Vec::with_capacity(m);
        for t in 0..m {
            if t + 1 == m {
                let rest = order[t..].iter().map(|&c| QSetExpr::class(c)).collect();
                parts.push(QSetExpr::union(rest));
            } else {
                parts.push(QSetExpr::class(order[t]));
            }
        }
        Ok(Partition {
            j: j.map(QSetExpr::class),
            parts,
        })
    }
}

/// A maximal chain whose elements are computed on request.
#[derive(Debug, Clone)]
pub struct LazyChain {
    ambient: Ambient,
    base: BaseKind,
    case: Case,
    transform: Transform,
    desc: LinOrderDesc,
    built: LinOrderDesc,
    partition: Partition,
    picks: Vec<Vec<Rational>>,
}

impl LazyChain {
    /// The chain for `desc` in the structure of `ambient`. Handles `𝔻`, `ℚ`,
    /// `ℂ_ω`, and `𝔹_n`, `ℂ_n`, `𝔹_ω` through the line chain.
    pub fn assemble(ambient: Ambient, desc: LinOrderDesc) -> Result<Self, ChainError> {
        let id = ambient.id();
        let transform = match id {
            StructureId::D | StructureId::Q | StructureId::COmega => Transform::Identity,
            StructureId::B(n) => Transform::LiftB(n),
            StructureId::C(n) => Transform::TransportC(n),
            StructureId::BOmega => Transform::BOmega,
            StructureId::AOmega => {
                return Err(ChainError::Shape("A_omega has no chains of this kind".into()))
            }
        };
        let base = match id {
            StructureId::D => BaseKind::D,
            StructureId::COmega => BaseKind::COmega,
            _ => BaseKind::Line,
        };
        let case = if desc.infinity_in_m() { Case::I } else { Case::II };
        let built = match case {
            Case::I => desc.clone(),
            Case::II => desc.plus_one()?,
        };
        let space = *ambient.space();
        let j = match base {
            BaseKind::D => Some(
                ambient
                    .generic()
                    .expect("D carries a generic order")
                    .with(|g| g.config().j_class),
            ),
            BaseKind::Line => Some(0),
            BaseKind::COmega => None,
        };
        let partition = Partition::by_classes(space.modulus(), j, built.lumps().len())?;
        let mut picks = Vec::new();
        for ((y, s), part) in built.lumps().iter().zip(&partition.parts) {
            let got = space.witnesses_in(part, &Cut::NegInf, y, s - 1)?;
            if got.len() + 1 != *s {
                return Err(ChainError::Shape(format!("could not place {} points below {y}", s - 1)));
            }
            picks.push(got);
        }
        Ok(LazyChain {
            ambient,
            base,
            case,
            transform,
            desc,
            built,
            partition,
            picks,
        })
    }

    /// Case I only: `desc` must have a lump at `∞`.
    pub fn assemble_case1(ambient: Ambient, desc: LinOrderDesc) -> Result<Self, ChainError> {
        if !desc.infinity_in_m() {
            return Err(ChainError::Desc("Case I needs a lump at inf".into()));
        }
        Self::assemble(ambient, desc)
    }

    /// Case II only: `desc` must have a single top element.
    pub fn assemble_case2(ambient: Ambient, desc: LinOrderDesc) -> Result<Self, ChainError> {
        if desc.infinity_in_m() {
            return Err(ChainError::Desc("Case II needs a single top element".into()));
        }
        Self::assemble(ambient, desc)
    }

    fn retarget(&self, id: StructureId, transform: Transform) -> Result<Self, ChainError> {
        if self.base != BaseKind::Line || self.transform != Transform::Identity {
            return Err(ChainError::Shape("only the plain line chain can be moved".into()));
        }
        let config = crate::generic::GenericConfig {
            modulus: self.space().modulus(),
            ..Default::default()
        };
        let mut out = self.clone();
        out.ambient = Ambient::new(id, config)?;
        out.transform = transform;
        Ok(out)
    }

    /// The line chain pushed into `𝔹_n`.
    pub fn lift_bn(&self, n: u32) -> Result<Self, ChainError> {
        self.retarget(StructureId::B(n), Transform::LiftB(n))
    }

    /// The line chain pushed into `ℂ_n`.
    pub fn transport_cn(&self, n: u32) -> Result<Self, ChainError> {
        self.retarget(StructureId::C(n), Transform::TransportC(n))
    }

    /// The line chain read in `𝔹_ω`.
    pub fn chain_b_omega(&self) -> Result<Self, ChainError> {
        self.retarget(StructureId::BOmega, Transform::BOmega)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn space(&self) -> &QSpace {
        self.ambient.space()
    }

    pub fn structure(&self) -> StructureId {
        self.ambient.id()
    }

    pub fn base(&self) -> BaseKind {
        self.base
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    pub fn desc(&self) -> &LinOrderDesc {
        &self.desc
    }

    /// The order the chain was built from: `L`, or `L + 1` in Case II.
    pub fn built(&self) -> &LinOrderDesc {
        &self.built
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// `I_y` in the order its points join the lump.
    pub fn picks(&self, y: &Cut) -> Option<&[Rational]> {
        self.built.position(y).map(|t| self.picks[t].as_slice())
    }

    /// Number of elements the chain has over `x`.
    pub fn lump_size(&self, x: &Cut) -> usize {
        if *x == Cut::PosInf && self.case == Case::II {
            1
        } else {
            self.built.size_at(x)
        }
    }

    pub fn contains_index(&self, idx: &ChainIndex) -> bool {
        idx.j < self.lump_size(&idx.x)
    }

    pub fn top_index(&self) -> ChainIndex {
        ChainIndex::new(Cut::PosInf, self.lump_size(&Cut::PosInf) - 1)
    }

    /// The class `J`, when the base uses one.
    pub fn j_set(&self) -> Option<&QSetExpr> {
        self.partition.j.as_ref()
    }

    /// `x` lies in `J` (for `𝔻` and the line) or in `ℚ` (for `ℂ_ω`).
    pub fn in_j(&self, x: &Cut) -> bool {
        let Some(q) = x.as_rational() else {
            return false;
        };
        match self.base {
            BaseKind::COmega => true,
            _ => self.partition.j.is_some() && {
                let j = self.space().class_of(q);
                self.partition.j == Some(QSetExpr::class(j))
            },
        }
    }

    /// Points of `I_y` over `y` in `M` with `y` below `x` (or up to `x`
    /// inclusive when `closed`).
    pub(crate) fn picks_below(&self, x: &Cut, closed: bool) -> Vec<Rational> {
        let mut out = Vec::new();
        for ((y, _), pts) in self.built.lumps().iter().zip(&self.picks) {
            if y < x || (closed && y == x) {
                out.extend(pts.iter().cloned());
            }
        }
        out
    }

    /// Line-level set `(J ∩ below) ∪ extra`, or for `ℂ_ω`
    /// `(below × ω⁺) ∪ (extra × {0})`.
    pub(crate) fn base_set(&self, below: QSetExpr, extra: Vec<Rational>) -> SetExpr {
        match self.base {
            BaseKind::COmega => {
                let mut p = ProductSetExpr::single(below, Fiber::OmegaPlus);
                if !extra.is_empty() {
                    p = p.with(QSetExpr::finite(extra), Fiber::singleton(0));
                }
                SetExpr::Product(p)
            }
            _ => {
                let j = self.partition.j.clone().expect("line bases carry J");
                let mut e = j.and(below);
                if !extra.is_empty() {
                    e = e.or(QSetExpr::finite(extra));
                }
                SetExpr::Rat(e)
            }
        }
    }

    /// The element at `idx` before it is moved into the target structure.
    pub fn base_element(&self, idx: &ChainIndex) -> Result<SetExpr, ChainError> {
        if !self.contains_index(idx) {
            return Err(ChainError::Index(idx.to_string()));
        }
        if idx.x == Cut::NegInf {
            return Ok(match self.base {
                BaseKind::COmega => SetExpr::Product(ProductSetExpr::empty()),
                _ => SetExpr::Rat(QSetExpr::empty()),
            });
        }
        let mut extra = self.picks_below(&idx.x, false);
        if let Some(own) = self.picks(&idx.x) {
            extra.extend(own[..idx.j].iter().cloned());
        }
        Ok(self.base_set(QSetExpr::below(idx.x.clone()), extra))
    }

    /// Move a base-level set into the target structure.
    pub fn apply(&self, x: SetExpr) -> SetExpr {
        match (self.transform, x) {
            (Transform::LiftB(n), SetExpr::Rat(a)) => {
                if a == QSetExpr::empty() {
                    return SetExpr::Product(ProductSetExpr::empty());
                }
                let mut p = ProductSetExpr::single(a, Fiber::singleton(0));
                if n > 1 {
                    p = p.with(QSetExpr::Full, Fiber::finite(1..n as u64));
                }
                SetExpr::Product(p)
            }
            (Transform::TransportC(n), SetExpr::Rat(a)) => {
                if a == QSetExpr::empty() {
                    return SetExpr::Product(ProductSetExpr::empty());
                }
                SetExpr::Product(ProductSetExpr::times(a, n as u64))
            }
            (_, x) => x,
        }
    }

    pub fn element(&self, idx: &ChainIndex) -> Result<SetExpr, ChainError> {
        Ok(self.apply(self.base_element(idx)?))
    }

    pub fn canon(&self, x: &SetExpr) -> Result<Canon, ChainError> {
        Canon::of(self.space(), x)
    }

    /// `⊆` between two chain elements.
    pub fn compare(&self, a: &ChainIndex, b: &ChainIndex) -> Result<Option<Ordering>, ChainError> {
        let ca = self.canon(&self.element(a)?)?;
        let cb = self.canon(&self.element(b)?)?;
        ca.inclusion(&cb)
    }

    /// Every index over `x`.
    pub fn lump(&self, x: &Cut) -> Vec<ChainIndex> {
        (0..self.lump_size(x)).map(|j| ChainIndex::new(x.clone(), j)).collect()
    }

    /// A sorted sample of about `count` indices: the bottom, every lump of
    /// `M`, then rationals in height order alternating with `√2 + q`.
    pub fn sample_indices(&self, count: usize) -> Vec<ChainIndex> {
        let mut out = vec![ChainIndex::bottom()];
        for (y, _) in self.built.lumps() {
            out.extend(self.lump(y));
        }
        if !self.built.infinity_in_m() {
            out.push(ChainIndex::at(Cut::PosInf));
        }
        let mut en = RationalEnumeration::new();
        let mut t = 0;
        while out.len() < count {
            let q = en.get(t).clone();
            t += 1;
            let r = Cut::rational(q.clone());
            if !self.built.in_m(&r) {
                out.push(ChainIndex::at(r));
            }
            if out.len() < count {
                out.push(ChainIndex::at(Cut::At(Surd::new(q, Rational::from_integer(1.into())))));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}
