//! The countable ultrahomogeneous posets as concrete structures.
//!
//! Each structure has an element encoding, a decidable order predicate and a
//! test for which symbolic subsets are copies of it.

mod copy;
mod family;
mod product;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generic::{GenericConfig, GenericError, GenericOrder, SharedGenericOrder};
use crate::order::{FinPoset, OrderError, OrderRel};
use crate::qset::{Cut, QSetError, QSpace, Surd};
use crate::rational::{Rational, RationalEnumeration};

pub use copy::{is_copy, line_verdict, SetExpr};
pub use family::{
    positive_family_axioms, AxiomResult, FamilyReport, LineUniverse, ProductUniverse, Universe,
};
pub use product::{parse_fiber, parse_product, Fiber, ProductSetExpr, RowForm};

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("bad structure descriptor: {0}")]
    Descriptor(String),
    #[error("{element} is not an element of {structure}")]
    Encoding { structure: String, element: String },
    #[error("set does not live in {structure}: {detail}")]
    Mismatch { structure: String, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    QSet(#[from] QSetError),
    #[error(transparent)]
    Generic(#[from] GenericError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// One of the structures in the list, plus the rational line itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureId {
    AOmega,
    B(u32),
    BOmega,
    C(u32),
    COmega,
    D,
    /// `⟨ℚ, <_ℚ⟩`, the line underlying the B and C structures.
    Q,
}

impl StructureId {
    /// Structures whose subsets are written as product sets.
    pub fn uses_products(self) -> bool {
        matches!(self, StructureId::B(_) | StructureId::C(_) | StructureId::COmega)
    }

    /// Number of lines or fibre slots, when finite.
    pub fn width(self) -> Option<u32> {
        match self {
            StructureId::B(n) | StructureId::C(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for StructureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureId::AOmega => write!(f, "A_omega"),
            StructureId::B(n) => write!(f, "B_{n}"),
            StructureId::BOmega => write!(f, "B_omega"),
            StructureId::C(n) => write!(f, "C_{n}"),
            StructureId::COmega => write!(f, "C_omega"),
            StructureId::D => write!(f, "D"),
            StructureId::Q => write!(f, "Q"),
        }
    }
}

impl FromStr for StructureId {
    type Err = CatalogueError;

    fn from_str(s: &str) -> Result<Self, CatalogueError> {
        let bad = || CatalogueError::Descriptor(s.to_string());
        let t = s.trim().replace('ω', "omega");
        match t.as_str() {
            "A_omega" => return Ok(StructureId::AOmega),
            "B_omega" => return Ok(StructureId::BOmega),
            "C_omega" => return Ok(StructureId::COmega),
            "D" => return Ok(StructureId::D),
            "Q" => return Ok(StructureId::Q),
            _ => {}
        }
        let (head, n) = t.split_once('_').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match head {
            "B" => Ok(StructureId::B(n)),
            "C" => Ok(StructureId::C(n)),
            _ => Err(bad()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
}

impl Serialize for StructureId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = match self {
            StructureId::B(n) => DescriptorJson {
                id: "B_n".into(),
                n: Some(*n),
            },
            StructureId::C(n) => DescriptorJson {
                id: "C_n".into(),
                n: Some(*n),
            },
            other => DescriptorJson {
                id: other.to_string(),
                n: None,
            },
        };
        d.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DescriptorJson::deserialize(d)?;
        let text = match (j.id.as_str(), j.n) {
            ("B_n", Some(n)) => format!("B_{n}"),
            ("C_n", Some(n)) => format!("C_{n}"),
            (id, None) => id.to_string(),
            (id, Some(_)) => {
                return Err(serde::de::Error::custom(format!("{id} takes no n")));
            }
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of one of the structures.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// A point of `𝔸_ω`.
    Nat(u64),
    /// `⟨i, q⟩ ∈ 𝔹_n`: line `i`, position `q`.
    Line { i: u32, q: Rational },
    /// A point of `ℚ`, `𝔹_ω` or `𝔻`.
    Rat(Rational),
    /// `⟨q, i⟩ ∈ ℂ_n` or `ℂ_ω`.
    Pair { q: Rational, i: u64 },
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Nat(n) => write!(f, "{n}"),
            Element::Line { i, q } => write!(f, "<{i},{q}>"),
            Element::Rat(q) => write!(f, "{q}"),
            Element::Pair { q, i } => write!(f, "<{q},{i}>"),
        }
    }
}

/// The cut `x_i = √2 − i` bounding the blocks of `𝔹_ω` (`x_0 = ∞`).
pub fn block_cut(i: u64) -> Cut {
    if i == 0 {
        Cut::PosInf
    } else {
        Cut::sqrt2_plus(-Rational::from_integer(i.into()))
    }
}

/// The block `(x_{i+1}, x_i)` containing `q`.
pub fn block_of(q: &Rational) -> u64 {
    let f = Surd::new(-q.clone(), Rational::from_integer(1.into())).floor();
    if f.sign() == num_bigint::Sign::Minus {
        0
    } else {
        u64::try_from(&f).unwrap_or(u64::MAX)
    }
}

/// A structure together with what is needed to decide its order.
#[derive(Debug, Clone)]
pub struct Ambient {
    id: StructureId,
    space: QSpace,
    generic: Option<SharedGenericOrder>,
    /// Triple size and step budget for the bounded exploration in `𝔻`.
    pub probe_level: usize,
    pub probe_budget: u64,
}

impl Ambient {
    pub fn new(id: StructureId, config: GenericConfig) -> Result<Self, CatalogueError> {
        let space = QSpace::new(config.modulus)?;
        let generic = match id {
            StructureId::D => Some(SharedGenericOrder::new(GenericOrder::new(config)?)),
            _ => None,
        };
        Ok(Ambient {
            id,
            space,
            generic,
            probe_level: 2,
            probe_budget: 2_000,
        })
    }

    /// `𝔻` backed by an existing generic order.
    pub fn with_generic(g: SharedGenericOrder) -> Self {
        let space = g.with(|g| *g.space());
        Ambient {
            id: StructureId::D,
            space,
            generic: Some(g),
            probe_level: 2,
            probe_budget: 2_000,
        }
    }

    pub fn id(&self) -> StructureId {
        self.id
    }

    pub fn space(&self) -> &QSpace {
        &self.space
    }

    pub fn generic(&self) -> Option<&SharedGenericOrder> {
        self.generic.as_ref()
    }

    pub fn check(&self, e: &Element) -> Result<(), CatalogueError> {
        let ok = match (self.id, e) {
            (StructureId::AOmega, Element::Nat(_)) => true,
            (StructureId::B(n), Element::Line { i, .. }) => *i < n,
            (StructureId::BOmega | StructureId::D | StructureId::Q, Element::Rat(_)) => true,
            (StructureId::C(n), Element::Pair { i, .. }) => *i < n as u64,
            (StructureId::COmega, Element::Pair { .. }) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(CatalogueError::Encoding {
                structure: self.id.to_string(),
                element: e.to_string(),
            })
        }
    }

    /// How `a` relates to `b` in the structure.
    pub fn order_pred(&self, a: &Element, b: &Element) -> Result<OrderRel, CatalogueError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Ok(OrderRel::Equal);
        }
        let line = |x: &Rational, y: &Rational| {
            if x < y {
                OrderRel::Below
            } else {
                OrderRel::Above
            }
        };
        Ok(match (a, b) {
            (Element::Nat(_), Element::Nat(_)) => OrderRel::Incomparable,
            (Element::Line { i: i1, q: q1 }, Element::Line { i: i2, q: q2 }) => {
                if i1 == i2 {
                    line(q1, q2)
                } else {
                    OrderRel::Incomparable
                }
            }
            (Element::Pair { q: q1, .. }, Element::Pair { q: q2, .. }) => {
                if q1 == q2 {
                    OrderRel::Incomparable
                } else {
                    line(q1, q2)
                }
            }
            (Element::Rat(q1), Element::Rat(q2)) => match self.id {
                StructureId::Q => line(q1, q2),
                StructureId::BOmega => {
                    if block_of(q1) == block_of(q2) {
                        line(q1, q2)
                    } else {
                        OrderRel::Incomparable
                    }
                }
                _ => {
                    let g = self.generic.as_ref().expect("D carries a generic order");
                    g.query(q1, q2)?
                }
            },
            _ => unreachable!("checked encodings"),
        })
    }

    /// The first `n` elements of a fixed enumeration of the structure.
    ///
    /// Finite-width structures walk rationals in height order and take every
    /// line or fibre slot in turn; `ℂ_ω` walks the pairs diagonally.
    pub fn sample(&self, n: usize) -> Vec<Element> {
        let mut en = RationalEnumeration::new();
        match self.id {
            StructureId::AOmega => (0..n as u64).map(Element::Nat).collect(),
            StructureId::Q | StructureId::BOmega | StructureId::D => {
                en.take(n).into_iter().map(Element::Rat).collect()
            }
            StructureId::B(w) => (0..n)
                .map(|j| Element::Line {
                    i: (j % w as usize) as u32,
                    q: en.get(j / w as usize).clone(),
                })
                .collect(),
            StructureId::C(w) => (0..n)
                .map(|j| Element::Pair {
                    q: en.get(j / w as usize).clone(),
                    i: (j % w as usize) as u64,
                })
                .collect(),
            StructureId::COmega => {
                let mut out = Vec::with_capacity(n);
                let mut d = 0usize;
                while out.len() < n {
                    for a in 0..=d {
                        if out.len() == n {
                            break;
                        }
                        out.push(Element::Pair {
                            q: en.get(a).clone(),
                            i: (d - a) as u64,
                        });
                    }
                    d += 1;
                }
                out
            }
        }
    }

    /// The induced order on `points`.
    pub fn poset_on(&self, points: Vec<Element>) -> Result<FinPoset<Element>, CatalogueError> {
        let mut pairs = Vec::new();
        for i in 0..points.len() {
            for j in 0..points.len() {
                if i != j && self.order_pred(&points[i], &points[j])? == OrderRel::Below {
                    pairs.push((i, j));
                }
            }
        }
        Ok(FinPoset::from_index_pairs(points, pairs)?)
    }

    pub fn sample_poset(&self, n: usize) -> Result<FinPoset<Element>, CatalogueError> {
        self.poset_on(self.sample(n))
    }
}
