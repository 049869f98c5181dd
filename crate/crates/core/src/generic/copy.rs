use super::{GenericError, GenericOrder};
use crate::qset::{QSetExpr, QSpace};
use crate::verdict::{Obstruction, Verdict};

/// Number of least-height points of `E` used by the bounded exploration.
const PROBE_POINTS: usize = 5;

/// A `<_ℚ`-maximum `q` of `E` makes `⟨{q},∅,∅⟩` unrealizable in `E`, since
/// any realizer lies `⊲`-above and hence `<_ℚ`-above `q`.
pub fn check_no_max_copy(space: &QSpace, e: &QSetExpr) -> Result<Verdict, GenericError> {
    let c = space.canonicalize(e)?;
    if c.is_empty() {
        return Ok(Verdict::not_copy(Obstruction::Empty));
    }
    Ok(match c.max() {
        Some(q) => Verdict::not_copy(Obstruction::Maximum { q }),
        None => Verdict::inconclusive("no maximum"),
    })
}

/// Decide whether `E` carries a copy of `𝔻` under the generic order.
///
/// A set squeezed between `(−∞,x) ∩ J` and `(−∞,x)` is a copy. A maximum or
/// minimum rules it out. Otherwise the least-height points of `E` are
/// saturated inside `E` for at most `budget` steps; that can only gather
/// evidence, so the answer is then Inconclusive.
pub fn is_copy_of_d(
    g: &mut GenericOrder,
    e: &QSetExpr,
    k: usize,
    budget: u64,
) -> Result<Verdict, GenericError> {
    let space = *g.space();
    let c = space.canonicalize(e)?;
    if c.is_empty() {
        return Ok(Verdict::not_copy(Obstruction::Empty));
    }
    if let Some(x) = c.sandwich(g.config().j_class) {
        return Ok(Verdict::copy(format!("(-inf, {x}) ∩ J ⊆ E ⊆ (-inf, {x})")));
    }
    if let Some(q) = c.max() {
        return Ok(Verdict::not_copy(Obstruction::Maximum { q }));
    }
    if let Some(q) = c.min() {
        return Ok(Verdict::not_copy(Obstruction::Minimum { q }));
    }
    let probe: Vec<_> = (0..PROBE_POINTS)
        .scan(Vec::new(), |taken: &mut Vec<_>, _| {
            let w = c.witness(|q| taken.contains(q))?.value;
            taken.push(w.clone());
            Some(w)
        })
        .collect();
    let (_, report) = g.saturate_where(&probe, k, budget, |q| c.member(q))?;
    Ok(Verdict::inconclusive(format!(
        "{} of {} triples over {} points of E realized inside E after {} steps",
        report.realized,
        report.triples,
        probe.len(),
        report.steps_used
    )))
}
