use anyhow::Result;
use serde::Serialize;

use super::{Output, RunConfig};
use crate::catalogue::{Ambient, StructureId};
use crate::generic::GenericOrder;

#[derive(Serialize)]
struct Replay<'a> {
    config: &'a RunConfig,
    elements: Vec<String>,
}

/// Build the structure on a finite sample and write its order.
pub fn cmd_gen(cfg: &RunConfig, out: &mut Output) -> Result<i32> {
    if cfg.structure == StructureId::D {
        let mut g = GenericOrder::new(cfg.generic())?;
        // run the schedule until `points` rationals are decided, then keep
        // the first ones it decided
        while g.condition().len() < cfg.points {
            if g.steps() >= cfg.budget {
                anyhow::bail!("budget of {} steps spent before {} points were decided", cfg.budget, cfg.points);
            }
            g.advance()?;
        }
        let pts = g.condition().points()[..cfg.points].to_vec();
        let p = g.to_poset().restrict(&pts)?;
        out.file("structure.json", &p.to_json())?;
        out.file("sample.dot", &p.to_dot("D"))?;
        out.file("replay.json", &serde_json::to_string_pretty(&g.snapshot())?)?;
        out.print(&p.to_json());
    } else {
        let amb = Ambient::new(cfg.structure, cfg.generic())?;
        let p = amb.sample_poset(cfg.sample)?;
        let name = cfg.structure.to_string();
        out.file("structure.json", &p.to_json())?;
        out.file("sample.dot", &p.to_dot(&name))?;
        let replay = Replay {
            config: cfg,
            elements: p.labels().iter().map(|e| e.to_string()).collect(),
        };
        out.file("replay.json", &serde_json::to_string_pretty(&replay)?)?;
        out.print(&p.to_json());
    }
    Ok(super::EXIT_PASS)
}
