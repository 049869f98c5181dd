//! Three-valued answers to "is this set a copy of the structure?".

use std::fmt;

use serde::Serialize;

use crate::order::Triple;
use crate::rational::Rational;

/// Why a set is not a copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    Empty,
    /// The set has a `<_ℚ`-maximum `q`; `⟨{q}, ∅, ∅⟩` has no realizer.
    Maximum {
        #[serde(with = "crate::rational::serde_str")]
        q: Rational,
    },
    /// The set has a `<_ℚ`-minimum `q`; `⟨∅, {q}, ∅⟩` has no realizer.
    Minimum {
        #[serde(with = "crate::rational::serde_str")]
        q: Rational,
    },
    /// The support has a maximum `q`.
    MaxSupport {
        #[serde(with = "crate::rational::serde_str")]
        q: Rational,
    },
    Finite {
        size: usize,
    },
    /// Nothing of the set lies strictly between `lo` and `hi`.
    Gap {
        #[serde(with = "crate::rational::serde_str")]
        lo: Rational,
        #[serde(with = "crate::rational::serde_str")]
        hi: Rational,
    },
    /// The incomparability class over `q` has `size` elements where the
    /// structure needs `expected` (`None` for infinitely many).
    Fiber {
        #[serde(with = "crate::rational::serde_str")]
        q: Rational,
        size: usize,
        expected: Option<usize>,
    },
    /// A line or block of the set fails on its own.
    Part {
        part: String,
        cause: Box<Obstruction>,
    },
    /// A line or fibre fails the structure's characterisation.
    Shape {
        detail: String,
    },
}

impl Obstruction {
    /// The unrealizable one-point type behind the obstruction, when there is one.
    pub fn triple(&self) -> Option<Triple<Rational>> {
        match self {
            Obstruction::Maximum { q } => Some(Triple::new(vec![q.clone()], vec![], vec![])),
            Obstruction::Minimum { q } => Some(Triple::new(vec![], vec![q.clone()], vec![])),
            _ => None,
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Empty => write!(f, "empty set"),
            Obstruction::Maximum { q } => write!(f, "maximum {q}, witness ⟨{{{q}}},∅,∅⟩"),
            Obstruction::Minimum { q } => write!(f, "minimum {q}, witness ⟨∅,{{{q}}},∅⟩"),
            Obstruction::MaxSupport { q } => write!(f, "support has maximum {q}"),
            Obstruction::Finite { size } => write!(f, "finite set of size {size}"),
            Obstruction::Gap { lo, hi } => write!(f, "no element between {lo} and {hi}"),
            Obstruction::Fiber { q, size, expected } => match expected {
                Some(n) => write!(f, "class over {q} has {size} elements, not {n}"),
                None => write!(f, "class over {q} is finite ({size} elements)"),
            },
            Obstruction::Part { part, cause } => write!(f, "{part}: {cause}"),
            Obstruction::Shape { detail } => write!(f, "{detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Copy { reason: String },
    NotCopy { witness: Obstruction },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn copy(reason: impl Into<String>) -> Self {
        Verdict::Copy {
            reason: reason.into(),
        }
    }

    pub fn not_copy(witness: Obstruction) -> Self {
        Verdict::NotCopy { witness }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        Verdict::Inconclusive {
            reason: reason.into(),
        }
    }

    pub fn is_copy(&self) -> bool {
        matches!(self, Verdict::Copy { .. })
    }

    pub fn is_not_copy(&self) -> bool {
        matches!(self, Verdict::NotCopy { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            Verdict::NotCopy { witness } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Copy { reason } => write!(f, "Copy ({reason})"),
            Verdict::NotCopy { witness } => write!(f, "NotCopy ({witness})"),
            Verdict::Inconclusive { reason } => write!(f, "Inconclusive ({reason})"),
        }
    }
}
