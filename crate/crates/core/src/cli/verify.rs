use anyhow::Result;
use serde::Serialize;

use super::{Output, RunConfig, Suite};
use crate::catalogue::{
    is_copy, line_verdict, positive_family_axioms, Ambient, FamilyReport, Fiber, LineUniverse,
    ProductSetExpr, ProductUniverse, SetExpr, StructureId,
};
use crate::chains::{
    cut_analysis, cut_grid, maximality_probe, probe_candidates, CutVerdict, LazyChain,
    ProbeOutcome,
};
use crate::generic::GenericOrder;
use crate::order::{
    enumerate_posets, has_extension_property, is_random_over, is_ultrahomogeneous, FinPoset,
};
use crate::par;
use crate::qset::{Cut, QSetExpr};
use crate::rational::{int, RationalEnumeration};
use crate::sample::Sampler;

/// Randomized instances per copy or family check.
const RANDOM_CASES: usize = 100;
/// Chain indices each maximality probe is compared against.
const PROBE_SAMPLES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Skipped,
    Pass,
    Inconclusive,
    Fail,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Skipped => "SKIP",
            Outcome::Pass => "PASS",
            Outcome::Inconclusive => "INCONCLUSIVE",
            Outcome::Fail => "FAIL",
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Skipped | Outcome::Pass => super::EXIT_PASS,
            Outcome::Fail => super::EXIT_FAIL,
            Outcome::Inconclusive => super::EXIT_INCONCLUSIVE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

fn check(name: &str, outcome: Outcome, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        outcome,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub outcome: Outcome,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub outcome: Outcome,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Worst outcome wins; skipped checks do not count; no checks is a pass.
fn combine(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes
        .into_iter()
        .filter(|o| *o != Outcome::Skipped)
        .max()
        .unwrap_or(Outcome::Pass)
}

fn applies(s: Suite, id: StructureId) -> bool {
    match s {
        Suite::Randomness => id == StructureId::D,
        Suite::Cuts => id != StructureId::AOmega,
        _ => true,
    }
}

/// Run the configured suites. The report depends on the config only.
pub fn run_suites(cfg: &RunConfig) -> Result<VerifyReport> {
    let chosen: Vec<Suite> = match &cfg.suites {
        Some(s) => s.clone(),
        None => Suite::ALL
            .into_iter()
            .filter(|s| applies(*s, cfg.structure))
            .collect(),
    };
    let mut suites = Vec::new();
    for s in chosen {
        let checks = if applies(s, cfg.structure) {
            match s {
                Suite::Ultrahomogeneity => ultrahomogeneity(cfg)?,
                Suite::Randomness => randomness(cfg)?,
                Suite::Copy => copy(cfg)?,
                Suite::Family => family(cfg)?,
                Suite::Cuts => cuts(cfg)?,
            }
        } else {
            vec![check(
                s.name(),
                Outcome::Skipped,
                format!("does not apply to {}", cfg.structure),
            )]
        };
        suites.push(SuiteReport {
            suite: s,
            outcome: combine(checks.iter().map(|c| c.outcome)),
            checks,
        });
    }
    Ok(VerifyReport {
        config: cfg.clone(),
        outcome: combine(suites.iter().map(|s| s.outcome)),
        suites,
    })
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut Output) -> Result<i32> {
    let report = run_suites(cfg)?;
    for s in &report.suites {
        for c in &s.checks {
            out.print(&format!("{} {}/{}: {}", c.outcome.label(), s.suite.name(), c.name, c.detail));
        }
    }
    out.print(&format!("{} verify {}", report.outcome.label(), cfg.structure));
    out.file("verify.json", &report.to_json())?;
    Ok(report.outcome.exit_code())
}

/// A finite sample of the structure with a core of `sample` points. For `𝔻`
/// the decided order after saturating the core at triple size 1; for the
/// others `points` elements (at least four times the core), the core being
/// the first of them.
fn structure_sample(cfg: &RunConfig) -> Result<(FinPoset<String>, Vec<usize>, bool)> {
    if cfg.structure == StructureId::D {
        let mut g = GenericOrder::new(cfg.generic())?;
        let core = RationalEnumeration::new().take(cfg.sample);
        let (p, rep) = g.saturate(&core, 1, cfg.budget)?;
        let idx = core.iter().filter_map(|q| p.index_of(q)).collect();
        Ok((p.map_labels(|q| q.to_string()), idx, rep.complete))
    } else {
        let amb = Ambient::new(cfg.structure, cfg.generic())?;
        let p = amb.sample_poset(cfg.points.max(4 * cfg.sample))?;
        let idx = (0..cfg.sample).collect();
        Ok((p.map_labels(|e| e.to_string()), idx, true))
    }
}

/// Every one-point map `a ↦ b` on the core extends to each core point `x`:
/// some `y ≠ b` of the sample relates to `b` as `x` relates to `a`. Returns
/// the first failure.
fn one_point_extensions(p: &FinPoset<String>, core: &[usize]) -> Option<(usize, usize, usize)> {
    for &a in core {
        for &b in core {
            for &x in core {
                if x == a {
                    continue;
                }
                let want = p.relation(x, a);
                if !(0..p.len()).any(|y| y != b && p.relation(y, b) == want) {
                    return Some((a, b, x));
                }
            }
        }
    }
    None
}

fn ultrahomogeneity(cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut total = 0;
    let mut homog = 0;
    let mut disagree = None;
    for n in 1..=4 {
        let forms = enumerate_posets(n)?;
        let posets: Vec<FinPoset<String>> = forms.iter().map(|f| f.to_poset()).collect();
        let res = par::map(&posets, |p| {
            (is_ultrahomogeneous(p).holds, has_extension_property(p).holds)
        });
        for (f, (a, b)) in forms.iter().zip(res) {
            total += 1;
            homog += usize::from(a);
            if a != b && disagree.is_none() {
                disagree = Some(f.to_string());
            }
        }
    }
    out.push(match disagree {
        None => check(
            "finite-criterion",
            Outcome::Pass,
            format!("{total} posets up to 4 points, {homog} ultrahomogeneous, both tests agree"),
        ),
        Some(f) => check("finite-criterion", Outcome::Fail, format!("tests disagree on {f}")),
    });

    let (p, core, complete) = structure_sample(cfg)?;
    out.push(if !complete {
        check(
            "sample-extension",
            Outcome::Inconclusive,
            format!("budget of {} steps ran out before the sample was saturated", cfg.budget),
        )
    } else {
        match one_point_extensions(&p, &core) {
            None => check(
                "sample-extension",
                Outcome::Pass,
                format!("one-point maps on {} core points extend inside a {}-point sample", core.len(), p.len()),
            ),
            Some((a, b, x)) => check(
                "sample-extension",
                Outcome::Inconclusive,
                format!(
                    "the sample has no image for {} under {} ↦ {}; a larger sample may",
                    p.label(x),
                    p.label(a),
                    p.label(b)
                ),
            ),
        }
    });
    Ok(out)
}

fn randomness(cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    let mut g = GenericOrder::new(cfg.generic())?;
    let core = RationalEnumeration::new().take(cfg.sample);
    let (p, rep) = g.saturate(&core, cfg.level, cfg.budget)?;
    let mut out = Vec::new();
    if !rep.complete {
        out.push(check(
            "saturation",
            Outcome::Inconclusive,
            format!(
                "budget exhausted after {} steps: {} of {} triples realized",
                rep.steps_used, rep.realized, rep.triples
            ),
        ));
        return Ok(out);
    }
    out.push(check(
        "saturation",
        Outcome::Pass,
        format!(
            "{} triples of size ≤ {} over {} points realized in {} steps",
            rep.triples,
            cfg.level,
            core.len(),
            rep.steps_used
        ),
    ));
    let idx: Vec<usize> = core.iter().filter_map(|q| p.index_of(q)).collect();
    let r = is_random_over(&p, &idx, cfg.level);
    out.push(check(
        "random-over-core",
        Outcome::of(r.holds),
        match &r.first_failure {
            None => format!("{} triples checked on {} points", r.checked, p.len()),
            Some(t) => format!("{} has no realizer", t.display(&p)),
        },
    ));
    let bad = p.pairs().into_iter().find(|&(i, j)| p.label(i) >= p.label(j));
    out.push(check(
        "order-extends-line",
        Outcome::of(bad.is_none()),
        match bad {
            None => format!("all {} decided pairs increase in ℚ", p.pairs().len()),
            Some((i, j)) => format!("{} < {} in the order but not in ℚ", p.label(i), p.label(j)),
        },
    ));
    Ok(out)
}

enum Expect {
    Copy,
    NotCopy,
}

fn fixed_cases(cfg: &RunConfig) -> Vec<(&'static str, String, Expect)> {
    let j = cfg.j_class;
    match cfg.structure {
        StructureId::AOmega => vec![
            ("cofinite", "(cofin 0 1)".into(), Expect::Copy),
            ("finite", "(fin 0 1 2)".into(), Expect::NotCopy),
        ],
        StructureId::Q => vec![
            ("whole-line", "full".into(), Expect::Copy),
            ("dense-class", "(class 1)".into(), Expect::Copy),
            ("maximum", "(union (interval 0 1) (fin 1))".into(), Expect::NotCopy),
            ("finite", "(fin 0 1)".into(), Expect::NotCopy),
        ],
        StructureId::BOmega => vec![
            ("whole", "full".into(), Expect::Copy),
            ("initial-segment", "(interval -inf 0)".into(), Expect::Copy),
            ("bounded-below", "(interval 0 1)".into(), Expect::NotCopy),
            ("block-maximum", "(union (interval -inf 1) (fin 1))".into(), Expect::NotCopy),
        ],
        StructureId::D => vec![
            ("sandwich", format!("(inter (class {j}) (interval -inf 1))"), Expect::Copy),
            ("sandwich-plus", format!("(union (inter (class {j}) (interval -inf 0)) (interval -inf -1))"), Expect::Copy),
            ("maximum", "(union (interval -inf 0) (fin 1))".into(), Expect::NotCopy),
            ("minimum", "(union (fin -1) (interval 0 1))".into(), Expect::NotCopy),
        ],
        StructureId::B(n) => {
            let all = fibres(n);
            vec![
                ("whole", format!("(product (prod full {all}))"), Expect::Copy),
                ("line-maximum", format!("(product (prod (union (interval 0 1) (fin 1)) {all}))"), Expect::NotCopy),
            ]
        }
        StructureId::C(n) => {
            let all = fibres(n);
            let mut v = vec![
                ("whole", format!("(product (prod full {all}))"), Expect::Copy),
                ("sandwich", format!("(product (prod (inter (class {j}) (interval -inf 0)) {all}))"), Expect::Copy),
            ];
            if n > 1 {
                let short = fibres(n - 1);
                v.push((
                    "minus-one-point",
                    format!("(product (prod (diff full (fin 1/2)) {all}) (prod (fin 1/2) {short}))"),
                    Expect::NotCopy,
                ));
            }
            v
        }
        StructureId::COmega => vec![
            ("whole", "(product (prod full omega+))".into(), Expect::Copy),
            ("cofinite-fibres", "(product (prod (interval -inf 0) (cofin 0 1 2)))".into(), Expect::Copy),
            ("support-maximum", "(product (prod (interval -inf 0) omega) (prod (fin 0) (fin 4)))".into(), Expect::NotCopy),
        ],
    }
}

fn fibres(n: u32) -> String {
    let items: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    format!("(fin {})", items.join(" "))
}

fn copy(cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    let amb = Ambient::new(cfg.structure, cfg.generic())?;
    let mut out = Vec::new();
    for (name, text, want) in fixed_cases(cfg) {
        let x = SetExpr::parse(cfg.structure, &text)?;
        let v = is_copy(&amb, &x)?;
        let ok = match want {
            Expect::Copy => v.is_copy(),
            Expect::NotCopy => v.is_not_copy(),
        };
        out.push(check(name, Outcome::of(ok), format!("{text}: {v}")));
    }

    let width = cfg.structure.width().map(u64::from);
    let mut s = Sampler::new(cfg.seed, *amb.space());

    if let StructureId::C(n) = cfg.structure {
        // E × n is a copy of C_n exactly when E is a copy of Q
        let mut bad = None;
        for _ in 0..RANDOM_CASES {
            let e = s.expr(4);
            let v = is_copy(&amb, &SetExpr::Product(ProductSetExpr::times(e.clone(), u64::from(n))))?;
            let line = line_verdict(&amb.space().canonicalize(&e)?);
            if v.is_copy() != line.is_copy() && bad.is_none() {
                bad = Some(format!("{e}: {v} against {line}"));
            }
        }
        out.push(match bad {
            None => check("transport", Outcome::Pass, format!("{RANDOM_CASES} expressions agree with the line")),
            Some(b) => check("transport", Outcome::Fail, b),
        });
    }

    if cfg.structure.uses_products() {
        // cut a random set down to (−∞, 0) and add one point over 0
        let mut bad = None;
        for _ in 0..RANDOM_CASES {
            let p = s.product(width, 3);
            let mut q = ProductSetExpr::empty();
            for (e, f) in p.components {
                q = q.with(e.and(QSetExpr::below(Cut::int(0))), f);
            }
            let q = q.with(QSetExpr::point(int(0)), Fiber::singleton(0));
            let v = is_copy(&amb, &SetExpr::Product(q.clone()))?;
            if !v.is_not_copy() && bad.is_none() {
                bad = Some(format!("{q}: {v}"));
            }
        }
        out.push(match bad {
            None => check(
                "support-maximum",
                Outcome::Pass,
                format!("{RANDOM_CASES} sets whose support has maximum 0 are not copies"),
            ),
            Some(b) => check("support-maximum", Outcome::Fail, b),
        });
    }
    Ok(out)
}

fn family_check(name: &str, r: &FamilyReport) -> CheckResult {
    let failed: Vec<String> = r
        .results
        .iter()
        .filter(|a| !a.pass)
        .map(|a| format!("{} fails: {}", a.axiom, a.witness.clone().unwrap_or_default()))
        .collect();
    let checked: Vec<String> = r.results.iter().map(|a| format!("{} {}", a.axiom, a.checked)).collect();
    if failed.is_empty() {
        check(name, Outcome::Pass, format!("P1-P4 hold ({})", checked.join(", ")))
    } else {
        check(name, Outcome::Fail, failed.join("; "))
    }
}

fn family(cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    let amb = Ambient::new(cfg.structure, cfg.generic())?;
    let space = *amb.space();
    let mut s = Sampler::new(cfg.seed, space);
    let mut out = Vec::new();

    // {B : D ∖ C ⊆* B} for a dense residue class C
    let c = QSetExpr::class((cfg.j_class + 1) % cfg.modulus);
    let base = QSetExpr::Full.minus(c.clone());
    let mut samples = vec![base.clone(), QSetExpr::Full, c];
    while samples.len() < RANDOM_CASES {
        let r = s.expr(4);
        let x = match samples.len() % 3 {
            0 => base.clone().or(r),
            1 => base.clone().minus(QSetExpr::finite((0..3).map(|_| s.rational()))),
            _ => r,
        };
        samples.push(x);
    }
    let r = positive_family_axioms(&LineUniverse(space), |b| Ok(space.almost_subset(&base, b)?), &samples)?;
    out.push(family_check("dense-class", &r));

    if cfg.p3 {
        out.push(match cfg.structure {
            StructureId::C(_) | StructureId::B(_) | StructureId::COmega => {
                let width = cfg.structure.width().map(u64::from);
                let u = ProductUniverse { space, width };
                let mut samples = Vec::new();
                for t in 0..RANDOM_CASES {
                    let e = if t == 0 {
                        QSetExpr::Full
                    } else {
                        s.expr(3)
                    };
                    samples.push(match width {
                        Some(n) => ProductSetExpr::times(e, n),
                        None => ProductSetExpr::single(e, Fiber::OmegaPlus),
                    });
                }
                let member = |x: &ProductSetExpr| Ok(is_copy(&amb, &SetExpr::Product(x.clone()))?.is_copy());
                family_check("copy-family", &positive_family_axioms(&u, member, &samples)?)
            }
            StructureId::Q | StructureId::BOmega => {
                let mut samples = vec![QSetExpr::Full];
                while samples.len() < RANDOM_CASES {
                    samples.push(s.expr(3));
                }
                let member = |x: &QSetExpr| Ok(is_copy(&amb, &SetExpr::Rat(x.clone()))?.is_copy());
                family_check("copy-family", &positive_family_axioms(&LineUniverse(space), member, &samples)?)
            }
            other => check(
                "copy-family",
                Outcome::Skipped,
                format!("no sampled copy family for {other}"),
            ),
        });
    }
    Ok(out)
}

fn cuts(cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    cfg.validate(true)?;
    let amb = Ambient::new(cfg.structure, cfg.generic())?;
    let chain = LazyChain::assemble(amb, cfg.desc())?;
    let mut out = Vec::new();

    let mut rows = std::collections::BTreeSet::new();
    let mut tally = std::collections::BTreeMap::new();
    let mut unresolved = None;
    for (x0, side) in cut_grid(&chain) {
        let r = cut_analysis(&chain, &x0, side)?;
        rows.insert(r.row.to_string());
        *tally.entry(r.verdict.label()).or_insert(0usize) += 1;
        if let CutVerdict::Unresolved { reason } = &r.verdict {
            unresolved.get_or_insert_with(|| format!("{x0} ({}): {reason}", r.row));
        }
    }
    let counts: Vec<String> = tally.iter().map(|(k, v)| format!("{k} {v}")).collect();
    let rows: Vec<String> = rows.into_iter().collect();
    let summary = format!("rows {}; {}", rows.join(" "), counts.join(", "));
    out.push(match unresolved {
        None => check("cut-table", Outcome::Pass, summary),
        Some(u) => check("cut-table", Outcome::Inconclusive, format!("{summary}; first unresolved {u}")),
    });

    let mut s = Sampler::new(cfg.seed, *chain.space());
    let samples = chain.sample_indices(PROBE_SAMPLES);
    let mut outcome = Outcome::Pass;
    let mut first = None;
    for c in probe_candidates(&chain, &mut s, cfg.probes)? {
        if let ProbeOutcome::PotentialInsertion { verdict, .. } = maximality_probe(&chain, &c, &samples)? {
            let o = if verdict.starts_with("Copy") {
                Outcome::Fail
            } else {
                Outcome::Inconclusive
            };
            if o > outcome {
                outcome = o;
                first = Some(format!("{c}: {verdict}"));
            }
        }
    }
    out.push(check(
        "maximality-probes",
        outcome,
        match first {
            None => format!("{} probes, no insertion", cfg.probes),
            Some(f) => format!("{} probes; {f}", cfg.probes),
        },
    ));
    Ok(out)
}
