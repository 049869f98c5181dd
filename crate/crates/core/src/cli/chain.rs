use anyhow::Result;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Output, RunConfig};
use crate::catalogue::{Ambient, SetExpr};
use crate::chains::{
    chain_dot, cut_analysis, cut_csv, cut_grid, enumerate_points, maximality_probe,
    probe_candidates, r_embedding, ChainIndex, CutVerdict, LazyChain, ProbeOutcome,
};
use crate::sample::Sampler;

/// Chain indices each maximality probe is compared against.
const PROBE_SAMPLES: usize = 24;

#[derive(Serialize)]
struct ProbeLine<'a> {
    n: usize,
    candidate: String,
    outcome: &'a ProbeOutcome,
}

/// Build the chain for `--M` and write `cuts.csv`, `lumps.txt`,
/// `embedding.csv`, `probes.jsonl` and `chain.dot`.
pub fn cmd_chain(cfg: &RunConfig, out: &mut Output) -> Result<i32> {
    let amb = Ambient::new(cfg.structure, cfg.generic())?;
    let chain = LazyChain::assemble(amb, cfg.desc())?;
    out.print(&format!(
        "chain over {} for M = {{{}}}, {:?} case, built on {}",
        cfg.structure,
        cfg.desc(),
        chain.case(),
        chain.built()
    ));

    let reports = cut_grid(&chain)
        .into_iter()
        .map(|(x0, side)| cut_analysis(&chain, &x0, side))
        .collect::<Result<Vec<_>, _>>()?;
    let unresolved = reports
        .iter()
        .filter(|r| matches!(r.verdict, CutVerdict::Unresolved { .. }))
        .count();
    out.file("cuts.csv", &cut_csv(&reports)?)?;
    let mut rows: Vec<String> = reports.iter().map(|r| r.row.to_string()).collect();
    rows.sort();
    rows.dedup();
    out.print(&format!("cuts: {} analysed, rows {}, {unresolved} unresolved", reports.len(), rows.join(" ")));

    let mut lumps = String::new();
    for (y, _) in chain.built().lumps() {
        for i in chain.lump(y) {
            lumps.push_str(&format!("{i}\t{}\n", chain.element(&i)?));
        }
    }
    out.file("lumps.txt", &lumps)?;

    let idx = chain.sample_indices(cfg.sample);
    let elems: Vec<SetExpr> = idx.iter().map(|i| chain.element(i)).collect::<Result<_, _>>()?;
    let top = chain.element(&chain.top_index())?;
    let pts = enumerate_points(chain.space(), &top, cfg.bits)?;
    let emb = r_embedding(chain.space(), &elems, &pts, cfg.bits)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "value", "approx"])?;
    for (i, v) in idx.iter().zip(&emb.values) {
        let approx = v.to_f64().map_or_else(String::new, |f| format!("{f:.17}"));
        w.write_record([i.to_string(), v.to_string(), approx])?;
    }
    out.file("embedding.csv", &String::from_utf8(w.into_inner()?)?)?;
    out.print(&format!(
        "embedding: {} elements, {} bits, {}",
        idx.len(),
        emb.bits,
        if emb.separated {
            "strictly increasing".to_string()
        } else {
            let (a, b) = emb.first_tie.unwrap_or_default();
            format!("ties between {} and {}", idx[a], idx[b])
        }
    ));

    let mut s = Sampler::new(cfg.seed, *chain.space());
    let samples: Vec<ChainIndex> = chain.sample_indices(PROBE_SAMPLES);
    let mut log = String::new();
    let mut insertions = 0;
    for (n, c) in probe_candidates(&chain, &mut s, cfg.probes)?.into_iter().enumerate() {
        let o = maximality_probe(&chain, &c, &samples)?;
        insertions += usize::from(!o.upholds_maximality());
        let line = ProbeLine {
            n,
            candidate: c.to_string(),
            outcome: &o,
        };
        log.push_str(&serde_json::to_string(&line)?);
        log.push('\n');
    }
    out.file("probes.jsonl", &log)?;
    out.print(&format!("probes: {}, potential insertions {insertions}", cfg.probes));

    out.file("chain.dot", &chain_dot(&chain, &idx)?)?;

    Ok(if insertions > 0 {
        super::EXIT_FAIL
    } else if unresolved > 0 {
        super::EXIT_INCONCLUSIVE
    } else {
        super::EXIT_PASS
    })
}
