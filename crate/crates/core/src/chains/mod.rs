//! Maximal chains of copies.
//!
//! A countable complete linear order is described by the finite set `M` of
//! points carrying a lump bigger than a single element. The chain assigns to
//! each point `x` the sets `A_x`, and to each `x ∈ M` a finite run from `A_x`
//! up to `A_x⁺` adding one point at a time. Elements are produced on demand.

mod cut;
mod embed;
mod lazy;
mod probe;
mod report;
mod sets;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::catalogue::{CatalogueError, Element, SetExpr};
use crate::qset::{parse_cut, Cut, QSetError, QSpace, Surd};
use crate::rational::Rational;

pub use cut::{
    cut_analysis, cut_grid, maximality_probe, union_of_chain_is_copy, CaseRow, CutReport, CutSide,
    CutVerdict, ProbeOutcome,
};
pub use embed::{enumerate_points, r_embedding, REmbedding};
pub use lazy::{BaseKind, Case, LazyChain, Partition, Transform};
pub use probe::probe_candidates;
pub use report::{chain_dot, cut_csv};
pub use sets::{infimum, intersect_all, singleton, union_all, union_expr, Canon};

#[derive(Debug, Error)]
pub enum ChainError {
    #[error("bad order description: {0}")]
    Desc(String),
    #[error("{0}")]
    Shape(String),
    #[error("no chain element at {0}")]
    Index(String),
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("{0} lies outside the top element")]
    Outside(String),
    #[error(transparent)]
    Catalogue(#[from] CatalogueError),
    #[error(transparent)]
    QSet(#[from] QSetError),
}

/// The points of `L` whose lumps have more than one element, with sizes.
///
/// Text form: `0:3,inf:2`. An empty string means every lump is a singleton.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinOrderDesc {
    lumps: Vec<(Cut, usize)>,
}

impl LinOrderDesc {
    pub fn new(mut lumps: Vec<(Cut, usize)>) -> Result<Self, ChainError> {
        lumps.sort();
        for (x, s) in &lumps {
            if *x == Cut::NegInf {
                return Err(ChainError::Desc("-inf cannot carry a lump".into()));
            }
            if *s < 2 {
                return Err(ChainError::Desc(format!("lump at {x} has size {s}, need at least 2")));
            }
        }
        if lumps.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ChainError::Desc("repeated point".into()));
        }
        Ok(LinOrderDesc { lumps })
    }

    pub fn lumps(&self) -> &[(Cut, usize)] {
        &self.lumps
    }

    pub fn m(&self) -> impl Iterator<Item = &Cut> {
        self.lumps.iter().map(|(x, _)| x)
    }

    pub fn position(&self, x: &Cut) -> Option<usize> {
        self.lumps.iter().position(|(y, _)| y == x)
    }

    pub fn in_m(&self, x: &Cut) -> bool {
        self.position(x).is_some()
    }

    pub fn infinity_in_m(&self) -> bool {
        self.in_m(&Cut::PosInf)
    }

    /// `|L_x|`.
    pub fn size_at(&self, x: &Cut) -> usize {
        self.position(x).map_or(1, |t| self.lumps[t].1)
    }

    /// `L + 1`: a new top element joins the lump at `∞`.
    pub fn plus_one(&self) -> Result<Self, ChainError> {
        if self.infinity_in_m() {
            return Err(ChainError::Desc("inf already carries a lump".into()));
        }
        let mut lumps = self.lumps.clone();
        lumps.push((Cut::PosInf, 2));
        LinOrderDesc::new(lumps)
    }
}

impl FromStr for LinOrderDesc {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, ChainError> {
        let mut lumps = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (x, n) = part
                .rsplit_once(':')
                .ok_or_else(|| ChainError::Desc(format!("expected point:size, got {part}")))?;
            let x = parse_cut(x.trim()).map_err(|e| ChainError::Desc(e.to_string()))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| ChainError::Desc(format!("bad size in {part}")))?;
            lumps.push((x, n));
        }
        LinOrderDesc::new(lumps)
    }
}

impl fmt::Display for LinOrderDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lumps.iter().map(|(x, s)| format!("{x}:{s}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Position `j` in the lump over `x`; `x = −∞` is the bottom `∅`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainIndex {
    pub x: Cut,
    pub j: usize,
}

impl ChainIndex {
    pub fn new(x: Cut, j: usize) -> Self {
        ChainIndex { x, j }
    }

    pub fn at(x: Cut) -> Self {
        ChainIndex { x, j: 0 }
    }

    pub fn bottom() -> Self {
        ChainIndex::at(Cut::NegInf)
    }
}

impl fmt::Display for ChainIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.x, self.j)
    }
}

/// The chain `A = C_0 ⊂ C_1 ⊂ … ⊂ C_n = B` adding the points of `added`
/// one at a time, for `B = A ∪ added` with `added` disjoint from `A`.
pub fn chain_interval(
    space: &QSpace,
    a: &SetExpr,
    b: &SetExpr,
    added: &[Element],
) -> Result<Vec<SetExpr>, ChainError> {
    let ca = Canon::of(space, a)?;
    for (t, e) in added.iter().enumerate() {
        if ca.contains(e) {
            return Err(ChainError::Shape(format!("{e} is already in the lower set")));
        }
        if added[..t].contains(e) {
            return Err(ChainError::Shape(format!("{e} is listed twice")));
        }
    }
    let mut out = vec![a.clone()];
    let mut cur = a.clone();
    for e in added {
        cur = union_expr(&cur, &singleton(e))?;
        out.push(cur.clone());
    }
    if Canon::of(space, &cur)? != Canon::of(space, b)? {
        return Err(ChainError::Shape("the added points do not fill the gap to the upper set".into()));
    }
    Ok(out)
}

/// For each cut of a finite chain into a nonempty lower part and a nonempty
/// upper part, the size of `⋂upper ∖ ⋃lower` (`None` when infinite).
pub fn cut_gap_sizes(space: &QSpace, chain: &[SetExpr]) -> Result<Vec<Option<usize>>, ChainError> {
    let mut out = Vec::new();
    for k in 1..chain.len() {
        let lower = union_all(space, &chain[..k])?.expect("nonempty");
        let upper = intersect_all(space, &chain[k..])?.expect("nonempty");
        out.push(upper.diff(&lower)?.finite_size());
    }
    Ok(out)
}

/// `t ↦ t − 1/t`, an order isomorphism from `(0, ∞)` onto `ℝ`, used to
/// re-index a chain over the positive reals by the whole line.
pub fn reindex_positive(t: &Cut) -> Result<Cut, ChainError> {
    match t {
        Cut::PosInf => Ok(Cut::PosInf),
        Cut::At(s) if *s > Surd::rational(Rational::zero()) => {
            // 1/(a + b√2) = (a − b√2)/(a² − 2b²)
            let norm = &s.a * &s.a - Rational::from_integer(2.into()) * &s.b * &s.b;
            let inv = Surd::new(&s.a / &norm, -&s.b / &norm);
            Ok(Cut::At(Surd::new(&s.a - &inv.a, &s.b - &inv.b)))
        }
        _ => Err(ChainError::Index(format!("{t} is not positive"))),
    }
}

#[cfg(test)]
mod tests;
