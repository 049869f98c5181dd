//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs with `harness = false`. Criteria 6 and 9 are stated literally and
//! cannot hold; they print FAIL and do not change the exit status. Each has
//! a companion line that checks the same property where it is attainable.
//! Any other FAIL, or a companion FAIL, exits nonzero.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use copychains::catalogue::{
    is_copy, positive_family_axioms, Ambient, Element, Fiber, LineUniverse, ProductSetExpr,
    ProductUniverse, SetExpr, StructureId,
};
use copychains::chains::{
    chain_interval, cut_analysis, cut_gap_sizes, cut_grid, enumerate_points, maximality_probe,
    probe_candidates, r_embedding, CaseRow, CutVerdict, LazyChain,
    ProbeOutcome,
};
use copychains::cli::{run_suites, RunConfig};
use copychains::generic::{GenericConfig, GenericOrder};
use copychains::order::{
    embeds, enumerate_posets, enumerate_triples, has_extension_property, is_random_over,
    is_ultrahomogeneous, realizers, triples_over, FinPoset, Triple,
};
use copychains::qset::{Cut, QSetExpr, QSpace};
use copychains::rational::{int, Rational, RationalEnumeration};
use copychains::sample::Sampler;
use copychains::verdict::Obstruction;

// pinned limits
const RUNTIME_1: Duration = Duration::from_secs(60);
const MAX_POSET_1: usize = 5;
const RUNTIME_2: Duration = Duration::from_secs(30);
const CORE_2: usize = 8;
const LEVEL_2: usize = 2;
const BUDGET_2: u64 = 5_000;
/// A denser J gives the schedule low-height realizers, so chains grow fast.
const MODULUS_3: u32 = 4;
const BUDGET_3: u64 = 3_000;
const INSTANCES_4: usize = 200;
const MAX_N_5: usize = 6;
const PROBES_6: usize = 200;
const CASES_7: usize = 100;
const CASES_8: usize = 100;
const SUBCHAIN_9: usize = 100;
const BITS_9: usize = 64;
/// Enough leading points to separate a 100-element subchain.
const BITS_9_COMPANION: usize = 16_384;
const FLOAT_TOL_9: f64 = 1e-12;

/// Criteria that cannot hold as stated; see the notes beside each.
const BLOCKED: [&str; 2] = ["6", "9"];

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn line(id: &'static str, pass: bool, detail: impl Into<String>) -> Line {
    Line {
        id,
        pass,
        detail: detail.into(),
    }
}

// ---- oracles -------------------------------------------------------------

/// Strict partial orders on `n` labelled points as `n × n` bit masks, by
/// checking every irreflexive relation.
fn labelled_posets(n: usize) -> Vec<u32> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let bit = |i: usize, j: usize| 1u32 << (i * n + j);
    let mut out = Vec::new();
    for r in 0u32..(1 << pairs.len()) {
        let mut m = 0u32;
        for (t, &(i, j)) in pairs.iter().enumerate() {
            if r >> t & 1 == 1 {
                m |= bit(i, j);
            }
        }
        let has = |i: usize, j: usize| m & bit(i, j) != 0;
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                !(has(i, j) && has(j, i)) && (0..n).all(|k| !(has(i, j) && has(j, k)) || has(i, k))
            })
        });
        if ok {
            out.push(m);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least relabelled mask: equal exactly for isomorphic orders.
fn iso_key(m: u32, n: usize, perms: &[Vec<usize>]) -> u32 {
    perms
        .iter()
        .map(|p| {
            let mut out = 0u32;
            for i in 0..n {
                for j in 0..n {
                    if m >> (i * n + j) & 1 == 1 {
                        out |= 1 << (p[i] * n + p[j]);
                    }
                }
            }
            out
        })
        .min()
        .unwrap_or(0)
}

fn mask_of(p: &FinPoset<String>) -> u32 {
    let n = p.len();
    let mut m = 0;
    for (i, j) in p.pairs() {
        m |= 1 << (i * n + j);
    }
    m
}

/// Isomorphism types on `n` points by brute force.
fn oracle_types(n: usize) -> BTreeSet<u32> {
    let perms = permutations(n);
    labelled_posets(n).into_iter().map(|m| iso_key(m, n, &perms)).collect()
}

// ---- criteria ------------------------------------------------------------

fn criterion_1() -> Line {
    let t0 = Instant::now();
    let mut counts = Vec::new();
    let mut agree = true;
    let mut types_ok = true;
    let mut homog = 0;
    for n in 0..=MAX_POSET_1 {
        let lib = enumerate_posets(n).unwrap();
        let perms = permutations(n);
        let keys: BTreeSet<u32> = lib.iter().map(|f| iso_key(mask_of(&f.to_poset()), n, &perms)).collect();
        let oracle = oracle_types(n);
        types_ok &= keys.len() == lib.len() && keys == oracle;
        counts.push(lib.len());
        for f in &lib {
            let p = f.to_poset();
            let u = is_ultrahomogeneous(&p).holds;
            homog += usize::from(u);
            agree &= u == has_extension_property(&p).holds;
        }
    }
    let dt = t0.elapsed();
    line(
        "1",
        agree && types_ok && dt < RUNTIME_1,
        format!(
            "types per size {counts:?} match brute force: {types_ok}; criteria agree: {agree}; {homog} ultrahomogeneous; {:.1}s (limit {}s)",
            dt.as_secs_f64(),
            RUNTIME_1.as_secs()
        ),
    )
}

/// Consistent triples of size at most `k` over `core`, with a realizer check,
/// from the definitions.
fn oracle_randomness(p: &FinPoset<Rational>, core: &[usize], k: usize) -> (usize, bool) {
    let lt = |a: usize, b: usize| p.lt(a, b);
    let mut count = 0;
    let mut all = true;
    // role 0 = absent, 1 = L, 2 = G, 3 = U
    let mut roles = vec![0u8; core.len()];
    loop {
        let used = roles.iter().filter(|&&r| r != 0).count();
        if used <= k {
            let pick = |r: u8| -> Vec<usize> {
                core.iter().zip(&roles).filter(|(_, &x)| x == r).map(|(&c, _)| c).collect()
            };
            let (l, g, u) = (pick(1), pick(2), pick(3));
            let consistent = l.iter().all(|&a| g.iter().all(|&b| lt(a, b)))
                && u.iter().all(|&c| l.iter().all(|&a| !lt(c, a)))
                && u.iter().all(|&c| g.iter().all(|&b| !lt(b, c)));
            if consistent {
                count += 1;
                let found = (0..p.len()).any(|x| {
                    !l.contains(&x)
                        && !g.contains(&x)
                        && !u.contains(&x)
                        && l.iter().all(|&a| lt(a, x))
                        && g.iter().all(|&b| lt(x, b))
                        && u.iter().all(|&c| !lt(x, c) && !lt(c, x))
                });
                all &= found;
            }
        }
        // next role vector
        let mut t = 0;
        while t < roles.len() && roles[t] == 3 {
            roles[t] = 0;
            t += 1;
        }
        if t == roles.len() {
            break;
        }
        roles[t] += 1;
    }
    (count, all)
}

fn criterion_2() -> Line {
    let t0 = Instant::now();
    let mut g = GenericOrder::new(GenericConfig::default()).unwrap();
    let core = RationalEnumeration::new().take(CORE_2);
    let (p, rep) = g.saturate(&core, LEVEL_2, BUDGET_2).unwrap();
    let idx: Vec<usize> = core.iter().map(|q| p.index_of(q).unwrap()).collect();
    let lib = is_random_over(&p, &idx, LEVEL_2);
    let (count, oracle) = oracle_randomness(&p, &idx, LEVEL_2);
    let increasing = p.pairs().iter().all(|&(i, j)| p.label(i) < p.label(j));
    let dt = t0.elapsed();
    line(
        "2",
        rep.complete && lib.holds && oracle && count == rep.triples && increasing && dt < RUNTIME_2,
        format!(
            "complete {} after {} of {} steps; {} triples (oracle {count}); random over core {} (oracle {oracle}); pairs increase in Q {increasing}; {:.1}s (limit {}s)",
            rep.complete,
            rep.steps_used,
            BUDGET_2,
            rep.triples,
            lib.holds,
            dt.as_secs_f64(),
            RUNTIME_2.as_secs()
        ),
    )
}

fn criterion_3() -> Line {
    let oracle = oracle_types(4).len();
    let forms = enumerate_posets(4).unwrap();
    let cfg = GenericConfig {
        modulus: MODULUS_3,
        j_class: 0,
    };
    let mut g = GenericOrder::new(cfg).unwrap();
    g.advance_by(BUDGET_3).unwrap();
    let host = g.to_poset().map_labels(|q| q.to_string());
    let embedded = forms.iter().filter(|f| embeds(&f.to_poset(), &host)).count();
    line(
        "3",
        oracle == 16 && forms.len() == oracle && embedded == oracle,
        format!(
            "{embedded} of {} types embed (oracle count {oracle}) into the {}-point condition after {BUDGET_3} steps, modulus {MODULUS_3}",
            forms.len(),
            host.len(),
        ),
    )
}

fn criterion_4() -> Line {
    let mut s = Sampler::new(4, QSpace::default());
    let mut bad = None;
    for t in 0..INSTANCES_4 {
        let n = 3 + t % 5;
        let p = s.poset(n, 0.35);
        let a = s.subset(n);
        let q = p.restrict_indices(&a);
        // C(A): triples of the restriction, moved back to P's indices
        let k = 3;
        let sub: BTreeSet<Triple<usize>> = enumerate_triples(&q, k)
            .into_iter()
            .map(|t| t.map(|&i| a[i]))
            .collect();
        let inside: BTreeSet<Triple<usize>> = triples_over(&p, &a, k).into_iter().collect();
        if sub != inside {
            bad.get_or_insert(format!("instance {t}: triple sets differ"));
        }
        let tr = s.triple(&a, 3);
        if tr.is_consistent(&p) {
            let local = tr.map(|x| a.iter().position(|y| y == x).unwrap());
            let ra: BTreeSet<usize> = realizers(&q, &local).unwrap().into_iter().map(|i| a[i]).collect();
            let rp: BTreeSet<usize> = realizers(&p, &tr).unwrap().into_iter().filter(|x| a.contains(x)).collect();
            if ra != rp {
                bad.get_or_insert(format!("instance {t}: realizers differ for {tr}"));
            }
        }
    }
    line(
        "4",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{INSTANCES_4} instances: triples and realizers restrict exactly")),
    )
}

fn criterion_5() -> Line {
    let space = QSpace::default();
    let a = SetExpr::Rat(QSetExpr::below(Cut::int(0)));
    let mut bad = None;
    for n in 0..=MAX_N_5 {
        let pts: Vec<Rational> = (1..=n as i64).map(int).collect();
        let added: Vec<Element> = pts.iter().cloned().map(Element::Rat).collect();
        let b = SetExpr::Rat(QSetExpr::below(Cut::int(0)).or(QSetExpr::finite(pts.clone())));
        let chain = chain_interval(&space, &a, &b, &added).unwrap();
        let gaps = cut_gap_sizes(&space, &chain).unwrap();
        // recount each gap by membership of the candidate points
        let member = |x: &SetExpr, q: &Rational| match x {
            SetExpr::Rat(e) => space.member(q, e).unwrap(),
            _ => unreachable!(),
        };
        let probe: BTreeSet<Rational> = pts.iter().cloned().chain((-3..=n as i64 + 2).map(int)).collect();
        for k in 1..chain.len() {
            let count = probe
                .iter()
                .filter(|q| chain[k..].iter().all(|x| member(x, q)) && !chain[..k].iter().any(|x| member(x, q)))
                .count();
            if gaps[k - 1] != Some(count) || count > 1 {
                bad.get_or_insert(format!("n = {n}, cut {k}: gap {:?}, recount {count}", gaps[k - 1]));
            }
        }
        if chain.len() != n + 1 || gaps.len() != n {
            bad.get_or_insert(format!("n = {n}: length {}", chain.len()));
        }
    }
    line(
        "5",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("n = 0..={MAX_N_5}: lengths n + 1, every cut gap at most 1")),
    )
}

/// `A_{x0}` and `A_{x0}⁺` from the definition, plus `{x0}` (or `{x0} × ω⁺`).
fn closed_form(ch: &LazyChain, x0: &Cut, row: u8) -> SetExpr {
    let mut extra: Vec<Rational> = Vec::new();
    for (y, _) in ch.built().lumps() {
        if y < x0 || (y == x0 && row >= 3) {
            extra.extend(ch.picks(y).unwrap().iter().cloned());
        }
    }
    let q = x0.as_rational().cloned();
    let with_point = row == 2 || row == 4;
    match ch.j_set() {
        Some(j) => {
            let mut e = j.clone().and(QSetExpr::below(x0.clone())).or(QSetExpr::finite(extra));
            if with_point {
                e = e.or(QSetExpr::point(q.unwrap()));
            }
            SetExpr::Rat(e)
        }
        None => {
            let mut p = ProductSetExpr::single(QSetExpr::below(x0.clone()), Fiber::OmegaPlus)
                .with(QSetExpr::finite(extra), Fiber::singleton(0));
            if with_point {
                p = p.with(QSetExpr::point(q.unwrap()), Fiber::OmegaPlus);
            }
            SetExpr::Product(p)
        }
    }
}

/// Cut table and probes for one chain. Returns (rows hit, failures).
fn table_check(id: &str, desc: &str, seed: u64) -> (BTreeSet<u8>, Vec<String>) {
    let amb = Ambient::new(id.parse().unwrap(), GenericConfig::default()).unwrap();
    let ch = LazyChain::assemble(amb, desc.parse().unwrap()).unwrap();
    let mut rows = BTreeSet::new();
    let mut bad = Vec::new();
    for (x0, side) in cut_grid(&ch) {
        let r = cut_analysis(&ch, &x0, side).unwrap();
        let CaseRow::MaxA(row) = r.row else { continue };
        if x0 == Cut::NegInf {
            continue;
        }
        rows.insert(row);
        let want = ch.canon(&closed_form(&ch, &x0, row)).unwrap();
        if ch.canon(&r.inter_b).unwrap() != want {
            bad.push(format!("{id} {x0}: closed form differs in row {row}"));
        }
        let ok = match (row, &r.verdict) {
            (1 | 3, CutVerdict::Equal) => true,
            (2 | 4, CutVerdict::SingletonGapNonCopy { witness }) => {
                let q = x0.as_rational().unwrap().clone();
                // the witness must be the maximum of ⋂ℬ, or of its support
                match (ch.canon(&r.inter_b).unwrap().shadow(), witness) {
                    (Some(sh), Obstruction::Maximum { q: w }) if id == "D" => *w == q && sh.max() == Some(q),
                    (Some(sh), Obstruction::MaxSupport { q: w }) if id == "C_omega" => {
                        *w == q && sh.max() == Some(q)
                    }
                    _ => false,
                }
            }
            _ => false,
        };
        if !ok {
            bad.push(format!("{id} {x0}: row {row} verdict {}", r.verdict.label()));
        }
    }
    let mut s = Sampler::new(seed, *ch.space());
    let samples = ch.sample_indices(24);
    let mut inserted = 0;
    for c in probe_candidates(&ch, &mut s, PROBES_6).unwrap() {
        if let ProbeOutcome::PotentialInsertion { .. } = maximality_probe(&ch, &c, &samples).unwrap() {
            inserted += 1;
        }
    }
    if inserted > 0 {
        bad.push(format!("{id}: {inserted} potential insertions in {PROBES_6} probes"));
    }
    (rows, bad)
}

fn criterion_6(desc: &str, id: &'static str) -> Line {
    let all: BTreeSet<u8> = (1..=4).collect();
    let mut detail = Vec::new();
    let mut pass = true;
    for (s, seed) in [("D", 61), ("C_omega", 62)] {
        let (rows, bad) = table_check(s, desc, seed);
        let missing: Vec<u8> = all.difference(&rows).copied().collect();
        pass &= missing.is_empty() && bad.is_empty();
        detail.push(format!(
            "{s}: rows hit {:?}{}{}",
            rows,
            if missing.is_empty() { String::new() } else { format!(", missing {missing:?}") },
            if bad.is_empty() { String::new() } else { format!(", {}", bad.join("; ")) }
        ));
    }
    detail.push(format!("{PROBES_6} probes each"));
    line(id, pass, format!("M = {{{desc}}}: {}", detail.join("; ")))
}

fn criterion_7() -> Line {
    let space = QSpace::default();
    let mut s = Sampler::new(7, space);
    let mut bad: Vec<String> = Vec::new();

    // (a) E × n against the line test on E
    for n in 1..=4u32 {
        let amb = Ambient::new(StructureId::C(n), GenericConfig::default()).unwrap();
        for _ in 0..CASES_7 {
            let e = s.expr(4);
            let v = is_copy(&amb, &SetExpr::Product(ProductSetExpr::times(e.clone(), n.into()))).unwrap();
            if v.is_copy() != space.is_q_copy(&e).unwrap() {
                bad.push(format!("(a) C_{n} {e}: {v}"));
            }
        }
    }
    // (b) a copy minus one of its points; E × 1 is just a copy of ℚ, so n ≥ 2
    for n in 2..=4u32 {
        let amb = Ambient::new(StructureId::C(n), GenericConfig::default()).unwrap();
        let mut done = 0;
        while done < CASES_7.div_ceil(3) {
            let e = s.expr(3);
            if !space.is_q_copy(&e).unwrap() {
                continue;
            }
            let c = space.canonicalize(&e).unwrap();
            let q = c.witness(|_| false).unwrap().value;
            let i = u64::from(n) - 1;
            let rest: Vec<u64> = (0..u64::from(n)).filter(|&t| t != i).collect();
            let x = ProductSetExpr::single(e.clone().minus(QSetExpr::point(q.clone())), Fiber::below(n.into()))
                .with(QSetExpr::point(q), Fiber::finite(rest));
            let v = is_copy(&amb, &SetExpr::Product(x.clone())).unwrap();
            if !v.is_not_copy() {
                bad.push(format!("(b) C_{n} {x}: {v}"));
            }
            done += 1;
        }
    }
    // (c) a support with a maximum
    let mut hits = 0;
    for id in ["C_omega", "C_2", "C_3", "B_2"] {
        let sid: StructureId = id.parse().unwrap();
        let amb = Ambient::new(sid, GenericConfig::default()).unwrap();
        let width = sid.width().map(u64::from);
        for t in 0..CASES_7 {
            let p = s.product(width, 3);
            let p = if t % 2 == 0 {
                let cut = s.finite_cut();
                let top = s.rational();
                let mut q = ProductSetExpr::empty();
                for (e, f) in p.components {
                    q = q.with(e.and(QSetExpr::below(cut.clone())), f);
                }
                let top = if cut.below(&top) { top } else { cut.as_rational().cloned().unwrap_or(top) };
                q.with(QSetExpr::point(top), Fiber::singleton(0))
            } else {
                p
            };
            // an empty support has no maximum
            let Ok(Some(_)) = space.max_of(&p.supp(&space).unwrap()) else {
                continue;
            };
            hits += 1;
            let v = is_copy(&amb, &SetExpr::Product(p.clone())).unwrap();
            if !v.is_not_copy() {
                bad.push(format!("(c) {id} {p}: {v}"));
            }
        }
    }
    // (d) (−∞, x) ∩ J ⊆ E ⊆ (−∞, x) in D
    let d = Ambient::new(StructureId::D, GenericConfig::default()).unwrap();
    for _ in 0..CASES_7 {
        let x = s.finite_cut();
        let below = QSetExpr::below(x.clone());
        let e = QSetExpr::class(0).and(below.clone()).or(s.expr(3).and(below));
        let v = is_copy(&d, &SetExpr::Rat(e.clone())).unwrap();
        if !v.is_copy() {
            bad.push(format!("(d) {e}: {v}"));
        }
    }
    line(
        "7",
        bad.is_empty() && hits >= CASES_7,
        if bad.is_empty() {
            format!("(a) {} transports, (b) {} deletions, (c) {hits} supports with a maximum, (d) {CASES_7} sandwiches", 4 * CASES_7, 3 * CASES_7.div_ceil(3))
        } else {
            format!("{} failures, first {}", bad.len(), bad[0])
        },
    )
}

fn criterion_8() -> Line {
    let space = QSpace::default();
    let mut s = Sampler::new(8, space);
    let c = QSetExpr::class(1);
    let base = QSetExpr::Full.minus(c.clone());
    // D ∖ C ⊆* B: the part of D ∖ C outside B is finite
    let member = |b: &QSetExpr| -> Result<bool, copychains::catalogue::CatalogueError> {
        Ok(space.canonicalize(&base.clone().minus(b.clone()))?.finite_size().is_some())
    };
    let mut samples = vec![base.clone(), QSetExpr::Full, c];
    while samples.len() < CASES_8 {
        let r = s.expr(4);
        samples.push(match samples.len() % 3 {
            0 => base.clone().or(r),
            1 => base.clone().minus(QSetExpr::finite((0..3).map(|_| s.rational()))),
            _ => r,
        });
    }
    let members = samples.iter().filter(|b| member(b).unwrap()).count();
    let r = positive_family_axioms(&LineUniverse(space), member, &samples).unwrap();

    let c2 = Ambient::new(StructureId::C(2), GenericConfig::default()).unwrap();
    let u = ProductUniverse { space, width: Some(2) };
    let whole = ProductSetExpr::times(QSetExpr::Full, 2);
    let fam = positive_family_axioms(
        &u,
        |x| Ok(is_copy(&c2, &SetExpr::Product(x.clone()))?.is_copy()),
        &[whole.clone(), ProductSetExpr::times(QSetExpr::below(Cut::int(0)), 2)],
    )
    .unwrap();
    let p3 = fam.get("P3").unwrap();
    // the witness: the whole of C_2 minus its least pair is not a copy
    let minus = ProductSetExpr::single(QSetExpr::Full.minus(QSetExpr::point(int(0))), Fiber::below(2))
        .with(QSetExpr::point(int(0)), Fiber::singleton(1));
    let witness_ok = p3.witness.as_deref().is_some_and(|w| w.contains("<0,0>"))
        && is_copy(&c2, &SetExpr::Product(whole)).unwrap().is_copy()
        && is_copy(&c2, &SetExpr::Product(minus)).unwrap().is_not_copy();
    line(
        "8",
        r.all_pass() && members > 0 && !p3.pass && witness_ok,
        format!(
            "dense-class family on {} sets ({members} members): P1-P4 {}; C_2 copies: P3 {} with witness {:?}",
            samples.len(),
            if r.all_pass() { "hold" } else { "fail" },
            if p3.pass { "holds" } else { "fails" },
            p3.witness.clone().unwrap_or_default()
        ),
    )
}

/// Embedding values for a `len`-element subchain of the D chain.
fn embed_subchain(len: usize, bits: usize) -> (bool, Option<(usize, usize)>, bool) {
    let amb = Ambient::new(StructureId::D, GenericConfig::default()).unwrap();
    let ch = LazyChain::assemble(amb, "0:3,inf:2".parse().unwrap()).unwrap();
    let mut idx = ch.sample_indices(len);
    idx.truncate(len);
    assert_eq!(idx.len(), len);
    let elems: Vec<SetExpr> = idx.iter().map(|i| ch.element(i).unwrap()).collect();
    let top = ch.element(&ch.top_index()).unwrap();
    let pts = enumerate_points(ch.space(), &top, bits).unwrap();
    let e = r_embedding(ch.space(), &elems, &pts, bits).unwrap();
    // recompute the leading terms in floating point
    let lead = pts.len().min(50);
    let floats_ok = e.values.iter().zip(&elems).all(|(v, x)| {
        let c = ch.canon(x).unwrap();
        let f: f64 = pts[..lead]
            .iter()
            .enumerate()
            .filter(|(_, p)| c.contains(p))
            .map(|(n, _)| 0.5f64.powi(n as i32))
            .sum();
        (v.to_f64().unwrap() - f).abs() < FLOAT_TOL_9
    });
    let strict = e.values.windows(2).all(|w| w[0] < w[1]);
    (strict && e.separated, e.first_tie, floats_ok)
}

fn criterion_9() -> Line {
    let (strict, tie, floats) = embed_subchain(SUBCHAIN_9, BITS_9);
    line(
        "9",
        strict && floats,
        format!(
            "{SUBCHAIN_9} elements, {BITS_9} bits: strictly increasing {strict}{}; float recomputation {floats}",
            tie.map_or(String::new(), |(a, b)| format!(", first tie at positions {a} and {b}"))
        ),
    )
}

fn companion_9() -> Line {
    let (strict, tie, floats) = embed_subchain(SUBCHAIN_9, BITS_9_COMPANION);
    line(
        "9*",
        strict && floats,
        format!(
            "{SUBCHAIN_9} elements, {BITS_9_COMPANION} bits: strictly increasing {strict}{}; float recomputation {floats}",
            tie.map_or(String::new(), |(a, b)| format!(", first tie at positions {a} and {b}"))
        ),
    )
}

fn criterion_10() -> Line {
    let cfg = RunConfig::default();
    let a = run_suites(&cfg).unwrap().to_json();
    let b = run_suites(&cfg).unwrap().to_json();
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}"));
        let run = Command::new(env!("CARGO_BIN_EXE_copychains"))
            .args(["verify", "D", "--out", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(run.status.code().is_some());
        files.push(std::fs::read(out.join("verify.json")).unwrap());
    }
    line(
        "10",
        a == b && files[0] == files[1] && files[0] == a.as_bytes(),
        format!(
            "two in-process reports identical {}; two CLI reports identical {} ({} bytes)",
            a == b,
            files[0] == files[1],
            files[0].len()
        ),
    )
}

fn main() {
    // `cargo test` passes harness flags; a name filter other than ours skips the run
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let t0 = Instant::now();
    let lines = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6("0:2,inf:2", "6"),
        criterion_6("0:2,(sqrt2-plus -1):3,inf:2", "6*"),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        companion_9(),
        criterion_10(),
    ];
    let mut unexpected = 0;
    for l in &lines {
        let blocked = BLOCKED.contains(&l.id);
        let tag = if l.pass { "PASS" } else { "FAIL" };
        let note = match (blocked, l.pass) {
            (true, false) => " [blocked as stated; companion below]",
            (true, true) => " [expected to be blocked]",
            _ => "",
        };
        println!("{tag} criterion {}: {}{note}", l.id, l.detail);
        if !l.pass && !blocked || l.pass && blocked {
            unexpected += 1;
        }
    }
    println!("acceptance: {:.1}s, {unexpected} unexpected outcome(s)", t0.elapsed().as_secs_f64());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
