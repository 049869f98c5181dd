use rand::Rng;

use super::lazy::{BaseKind, LazyChain};
use super::sets::Canon;
use super::{ChainError, ChainIndex};
use crate::catalogue::{Fiber, ProductSetExpr, SetExpr};
use crate::qset::{Cut, QSetExpr};
use crate::sample::Sampler;

fn piece(chain: &LazyChain, e: QSetExpr, fiber: Fiber) -> SetExpr {
    match chain.base() {
        BaseKind::COmega => SetExpr::Product(ProductSetExpr::single(e, fiber)),
        _ => SetExpr::Rat(e),
    }
}

fn random_piece(chain: &LazyChain, s: &mut Sampler) -> SetExpr {
    match chain.base() {
        BaseKind::COmega => SetExpr::Product(s.product(None, 4)),
        _ => SetExpr::Rat(s.expr(4)),
    }
}

/// Candidate sets for maximality probes, all inside the top element.
///
/// They are perturbations of chain elements near a random point `x`: one
/// point added just above `x` or at `x`, one point removed, a random piece
/// added or removed, plus lump members and random sets cut down to the top.
pub fn probe_candidates(
    chain: &LazyChain,
    s: &mut Sampler,
    count: usize,
) -> Result<Vec<SetExpr>, ChainError> {
    let space = *chain.space();
    let top = chain.canon(&chain.base_element(&chain.top_index())?)?;
    let lumps: Vec<ChainIndex> = chain
        .built()
        .lumps()
        .iter()
        .flat_map(|(y, _)| chain.lump(y))
        .collect();
    let row_one = match chain.base() {
        BaseKind::COmega => Fiber::singleton(1),
        _ => Fiber::Full,
    };
    let mut out = Vec::with_capacity(count);
    let mut t = 0usize;
    while out.len() < count {
        let x = s.finite_cut();
        let ax = chain.canon(&chain.base_element(&ChainIndex::at(x.clone()))?)?;
        let shadow = |c: &Canon| c.shadow().expect("line sets");
        let cand: Canon = match t % 6 {
            0 => {
                let above = shadow(&top).restrict(&x, &Cut::PosInf);
                match above.witness(|_| false) {
                    Some(w) => ax.union(&Canon::of(
                        &space,
                        &piece(chain, QSetExpr::point(w.value), Fiber::OmegaPlus),
                    )?)?,
                    None => ax,
                }
            }
            1 => match x.as_rational() {
                Some(q) => ax.union(&Canon::of(
                    &space,
                    &piece(chain, QSetExpr::point(q.clone()), Fiber::finite([0, 1])),
                )?)?,
                None => ax.union(&Canon::of(&space, &random_piece(chain, s))?)?,
            },
            2 => match shadow(&ax).witness(|_| false) {
                Some(w) => ax.diff(&Canon::of(
                    &space,
                    &piece(chain, QSetExpr::point(w.value), row_one.clone()),
                )?)?,
                None => ax,
            },
            3 if !lumps.is_empty() => {
                let i = &lumps[s.rng().random_range(0..lumps.len())];
                chain.canon(&chain.base_element(i)?)?
            }
            4 => Canon::of(&space, &random_piece(chain, s))?,
            _ => {
                let r = Canon::of(&space, &random_piece(chain, s))?;
                if s.rng().random_bool(0.5) {
                    ax.union(&r)?
                } else {
                    ax.diff(&r)?
                }
            }
        };
        t += 1;
        let inside = cand.intersect(&top)?;
        out.push(chain.apply(inside.to_set()));
    }
    Ok(out)
}
