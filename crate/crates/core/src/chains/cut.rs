use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::lazy::{BaseKind, LazyChain, Transform};
use super::sets::{infimum, union_all, Canon};
use super::{ChainError, ChainIndex};
use crate::catalogue::{is_copy, SetExpr};
use crate::qset::{CanonicalSet, Cut, QSetExpr, Surd};
use crate::rational::Rational;
use crate::verdict::{Obstruction, Verdict};

/// Where a Dedekind cut `(𝒜', ℬ')` of `L̄` sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CutSide {
    /// `x0 = max 𝒜'`.
    MaxA,
    /// `x0 = min ℬ'`.
    MinB,
    /// Inside the lump over `x0`, between positions `j` and `j + 1`.
    Lump(usize),
}

/// Which closed form applies. For `MaxA(r)`, `r = 1 + [x0 ∈ J] + 2·[x0 ∈ M]`,
/// reading `J` as `ℚ` over `ℂ_ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseRow {
    MaxA(u8),
    MinB,
    Lump,
}

impl fmt::Display for CaseRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseRow::MaxA(r) => write!(f, "maxA.{r}"),
            CaseRow::MinB => f.write_str("minB"),
            CaseRow::Lump => f.write_str("lump"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CutVerdict {
    /// `⋃𝒜 = ⋂ℬ`: nothing fits in between.
    Equal,
    /// `⋂ℬ ∖ ⋃𝒜` lies over the single point `x0` and `⋂ℬ` is not a copy, so
    /// neither is anything strictly between.
    SingletonGapNonCopy { witness: Obstruction },
    /// Consecutive members of a finite lump.
    LumpCut { gap: usize },
    /// The closed forms do not settle the cut.
    Unresolved { reason: String },
}

impl CutVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CutVerdict::Equal => "equal",
            CutVerdict::SingletonGapNonCopy { .. } => "singleton-gap-non-copy",
            CutVerdict::LumpCut { .. } => "lump-cut",
            CutVerdict::Unresolved { .. } => "unresolved",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CutReport {
    pub x0: Cut,
    pub side: CutSide,
    pub row: CaseRow,
    #[serde(serialize_with = "display")]
    pub union_a: SetExpr,
    #[serde(serialize_with = "display")]
    pub inter_b: SetExpr,
    /// `|⋂ℬ ∖ ⋃𝒜|`, `None` when infinite.
    pub gap: Option<usize>,
    pub verdict: CutVerdict,
}

fn display<S: serde::Serializer>(x: &SetExpr, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `(−∞, x]` in the line syntax.
fn closed_below(x: &Cut) -> QSetExpr {
    let open = QSetExpr::below(x.clone());
    match x.as_rational() {
        Some(q) => open.or(QSetExpr::point(q.clone())),
        None => open,
    }
}

/// `⋃𝒜` and `⋂ℬ` for the cut, at base level.
///
/// For `x0 = max 𝒜'`, `⋃𝒜` is the top of the lump over `x0` and `⋂ℬ` is
/// `⋂_{x > x0} A_x`, which keeps the part of `J` (or `ℚ × ω⁺`) at or below
/// `x0` and the points `I_y` with `y ≤ x0`. For `x0 = min ℬ'`, `⋂ℬ = A_{x0}`
/// and `⋃𝒜 = ⋃_{x < x0} A_x`, the part strictly below `x0` with `I_y`
/// for `y < x0`.
fn base_bounds(
    chain: &LazyChain,
    x0: &Cut,
    side: CutSide,
) -> Result<(SetExpr, SetExpr), ChainError> {
    match side {
        CutSide::MaxA => {
            if *x0 == Cut::PosInf {
                return Err(ChainError::Index("a cut with max of the lower part at inf".into()));
            }
            let top = chain.lump_size(x0) - 1;
            let union_a = chain.base_element(&ChainIndex::new(x0.clone(), top))?;
            let inter_b = if *x0 == Cut::NegInf {
                chain.base_element(&ChainIndex::bottom())?
            } else {
                chain.base_set(closed_below(x0), chain.picks_below(x0, true))
            };
            Ok((union_a, inter_b))
        }
        CutSide::MinB => {
            if *x0 == Cut::NegInf {
                return Err(ChainError::Index("the lower part of a cut contains -inf".into()));
            }
            let inter_b = chain.base_element(&ChainIndex::at(x0.clone()))?;
            let union_a = chain.base_set(QSetExpr::below(x0.clone()), chain.picks_below(x0, false));
            Ok((union_a, inter_b))
        }
        CutSide::Lump(j) => {
            let lo = ChainIndex::new(x0.clone(), j);
            let hi = ChainIndex::new(x0.clone(), j + 1);
            if !chain.contains_index(&hi) {
                return Err(ChainError::Index(hi.to_string()));
            }
            Ok((chain.base_element(&lo)?, chain.base_element(&hi)?))
        }
    }
}

/// Compute `⋃𝒜`, `⋂ℬ` and the verdict for the cut at `x0`.
pub fn cut_analysis(chain: &LazyChain, x0: &Cut, side: CutSide) -> Result<CutReport, ChainError> {
    let (ua, ib) = base_bounds(chain, x0, side)?;
    let union_a = chain.apply(ua);
    let inter_b = chain.apply(ib);
    let cu = chain.canon(&union_a)?;
    let cb = chain.canon(&inter_b)?;
    if !cu.subset(&cb)? {
        return Err(ChainError::NotAChain(format!("lower union not below upper intersection at {x0}")));
    }
    let gap_set = cb.diff(&cu)?;
    let gap = gap_set.finite_size();
    let row = match side {
        CutSide::MaxA => {
            let in_j = chain.in_j(x0) as u8;
            let in_m = chain.built().in_m(x0) as u8;
            CaseRow::MaxA(1 + in_j + 2 * in_m)
        }
        CutSide::MinB => CaseRow::MinB,
        CutSide::Lump(_) => CaseRow::Lump,
    };
    let verdict = if gap_set.is_empty() {
        CutVerdict::Equal
    } else if let CutSide::Lump(_) = side {
        CutVerdict::LumpCut {
            gap: gap.unwrap_or(usize::MAX),
        }
    } else {
        let over_x0 = gap_set
            .shadow()
            .is_some_and(|s| s.items().len() == 1 && s.min().as_ref() == x0.as_rational());
        match is_copy(chain.ambient(), &inter_b)? {
            Verdict::NotCopy { witness } if over_x0 => CutVerdict::SingletonGapNonCopy { witness },
            v => CutVerdict::Unresolved {
                reason: format!("upper intersection: {v}"),
            },
        }
    };
    Ok(CutReport {
        x0: x0.clone(),
        side,
        row,
        union_a,
        inter_b,
        gap,
        verdict,
    })
}

/// What a maximality probe found out about a candidate `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeOutcome {
    /// `C` is already a member of the chain.
    InChain { index: ChainIndex },
    NotCopy { witness: Obstruction },
    /// `C` and a chain element are `⊆`-incomparable.
    Incomparable { index: ChainIndex },
    /// `C` is a copy (or undecided) that would fit strictly between
    /// `below` and `above`.
    PotentialInsertion {
        below: Option<ChainIndex>,
        above: Option<ChainIndex>,
        verdict: String,
    },
}

impl ProbeOutcome {
    pub fn upholds_maximality(&self) -> bool {
        !matches!(self, ProbeOutcome::PotentialInsertion { .. })
    }
}

fn midpoint(x: &Cut, w: &Rational) -> Cut {
    match x {
        Cut::At(s) => {
            let two = Rational::from_integer(2.into());
            Cut::At(Surd::new((&s.a + w) / &two, &s.b / &two))
        }
        _ => Cut::rational(w.clone()),
    }
}

/// Indices near the place `C` would have to occupy. `x0` is the infimum of
/// the part of `J` (or of `ℚ × ω⁺`) that `C` misses, so `A_x ⊆ C` fails for
/// every `x > x0`.
fn extra_candidates(chain: &LazyChain, c: &Canon) -> Result<Vec<ChainIndex>, ChainError> {
    // over B_n and C_n the line chain sits in row 0
    let pulled;
    let c = match (chain.transform(), c) {
        (Transform::LiftB(_) | Transform::TransportC(_), Canon::Rows(r)) => {
            pulled = Canon::Line(r.row(0).clone());
            &pulled
        }
        _ => c,
    };
    let space = *chain.space();
    let full = CanonicalSet::full(space);
    let core = match (chain.base(), c) {
        (BaseKind::COmega, Canon::Rows(r)) => {
            let mut core = r.base().clone();
            for (i, row) in r.exceptions() {
                if *i >= 1 {
                    core = core.intersect(row);
                }
            }
            core
        }
        (BaseKind::D | BaseKind::Line, Canon::Line(l)) => {
            let j = space.canonicalize(chain.j_set().expect("line bases carry J"))?;
            full.diff(&j.diff(l))
        }
        _ => return Err(ChainError::Shape("probe set has the wrong kind".into())),
    };
    let missed = full.diff(&core);
    let x0 = if missed.is_empty() {
        Cut::PosInf
    } else {
        infimum(&missed).expect("nonempty")
    };
    let mut out = Vec::new();
    if x0 == Cut::NegInf {
        // every A_x with x > −∞ leaves C; one below a point of C is not
        // below C either
        if let Some(w) = c.shadow().and_then(|s| s.witness(|_| false)) {
            out.push(ChainIndex::at(Cut::rational(w.value - Rational::from_integer(1.into()))));
        }
        return Ok(out);
    }
    out.extend(chain.lump(&x0));
    for (y, _) in chain.built().lumps() {
        if *y > x0 && chain.contains_index(&ChainIndex::at(y.clone())) {
            out.push(ChainIndex::at(y.clone()));
        }
    }
    if x0 != Cut::PosInf {
        let upper = chain.canon(&base_bounds(chain, &x0, CutSide::MaxA)?.1)?;
        if let Some(extra) = c.diff(&upper)?.shadow() {
            if let Some(w) = extra.witness(|_| false) {
                if x0.below(&w.value) {
                    out.push(ChainIndex::at(midpoint(&x0, &w.value)));
                }
            }
        }
    }
    Ok(out)
}

/// Test whether `C` could be inserted into the chain, against the sampled
/// indices and a few indices computed from `C` itself.
pub fn maximality_probe(
    chain: &LazyChain,
    c: &SetExpr,
    samples: &[ChainIndex],
) -> Result<ProbeOutcome, ChainError> {
    let cc = chain.canon(c)?;
    let top = chain.canon(&chain.element(&chain.top_index())?)?;
    if !cc.subset(&top)? {
        return Err(ChainError::Outside(c.to_string()));
    }
    let mut idx: Vec<ChainIndex> = samples.to_vec();
    idx.extend(extra_candidates(chain, &cc)?);
    idx.sort();
    idx.dedup();
    let mut rels = Vec::with_capacity(idx.len());
    for i in &idx {
        let rel = chain.canon(&chain.element(i)?)?.inclusion(&cc)?;
        if rel == Some(Ordering::Equal) {
            return Ok(ProbeOutcome::InChain { index: i.clone() });
        }
        rels.push(rel);
    }
    if let Some(p) = rels.iter().position(Option::is_none) {
        return Ok(ProbeOutcome::Incomparable { index: idx[p].clone() });
    }
    let v = is_copy(chain.ambient(), c)?;
    if let Verdict::NotCopy { witness } = v {
        return Ok(ProbeOutcome::NotCopy { witness });
    }
    let below = idx
        .iter()
        .zip(&rels)
        .filter(|(_, r)| **r == Some(Ordering::Less))
        .map(|(i, _)| i.clone())
        .next_back();
    let above = idx
        .iter()
        .zip(&rels)
        .find(|(_, r)| **r == Some(Ordering::Greater))
        .map(|(i, _)| i.clone());
    Ok(ProbeOutcome::PotentialInsertion {
        below,
        above,
        verdict: v.to_string(),
    })
}

/// Is the union of the elements at `indices` a copy?
pub fn union_of_chain_is_copy(chain: &LazyChain, indices: &[ChainIndex]) -> Result<Verdict, ChainError> {
    let elems = indices
        .iter()
        .map(|i| chain.element(i))
        .collect::<Result<Vec<_>, _>>()?;
    let u = union_all(chain.space(), &elems)?
        .ok_or_else(|| ChainError::Shape("no elements".into()))?;
    Ok(is_copy(chain.ambient(), &u.to_set())?)
}

/// Cuts worth checking: `max 𝒜'` and `min ℬ'` at the points of `M`, at the
/// integers `0..=k` (one per residue class), at `1/2`, `−1/3` and at a few
/// irrationals, plus every cut inside a lump.
pub fn cut_grid(chain: &LazyChain) -> Vec<(Cut, CutSide)> {
    let k = chain.space().modulus() as i64;
    let one = Rational::from_integer(1.into());
    let mut xs: Vec<Cut> = (0..=k).map(Cut::int).collect();
    xs.push(Cut::rational(Rational::new(1.into(), 2.into())));
    xs.push(Cut::rational(Rational::new((-1).into(), 3.into())));
    xs.push(Cut::sqrt2_plus(Rational::zero()));
    xs.push(Cut::sqrt2_plus(-one.clone()));
    xs.push(Cut::quad(Rational::zero(), -one));
    xs.extend(chain.built().m().filter(|x| x.is_finite()).cloned());
    xs.sort();
    xs.dedup();
    let mut out = vec![(Cut::NegInf, CutSide::MaxA)];
    for x in &xs {
        out.push((x.clone(), CutSide::MaxA));
        out.push((x.clone(), CutSide::MinB));
    }
    out.push((Cut::PosInf, CutSide::MinB));
    for (y, _) in chain.built().lumps() {
        for j in 0..chain.lump_size(y).saturating_sub(1) {
            out.push((y.clone(), CutSide::Lump(j)));
        }
    }
    out
}
