use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use crate::catalogue::StructureId;
use crate::chains::LinOrderDesc;
use crate::generic::GenericConfig;

/// Verification suites, in the order they run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Ultrahomogeneity,
    Randomness,
    Copy,
    Family,
    Cuts,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Ultrahomogeneity,
        Suite::Randomness,
        Suite::Copy,
        Suite::Family,
        Suite::Cuts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ultrahomogeneity => "ultrahomogeneity",
            Suite::Randomness => "randomness",
            Suite::Copy => "copy",
            Suite::Family => "family",
            Suite::Cuts => "cuts",
        }
    }
}

impl FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .with_context(|| format!("unknown suite {s:?}"))
    }
}

/// Parse a comma list of suites; `none` or an empty string selects nothing.
pub fn parse_suites(text: &str) -> Result<Vec<Suite>> {
    let t = text.trim();
    if t.is_empty() || t == "none" {
        return Ok(Vec::new());
    }
    let mut out: Vec<Suite> = t.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Everything a run depends on. Two runs with equal configs write equal
/// reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub structure: StructureId,
    pub modulus: u32,
    pub j_class: u32,
    /// Triple-size bound for saturation and randomness checks.
    pub level: usize,
    /// Step budget for the generic schedule.
    pub budget: u64,
    /// Points decided by `gen D`, and the size of extension samples.
    pub points: usize,
    /// Sample size for finite samples and saturation cores.
    pub sample: usize,
    pub bits: usize,
    #[serde(serialize_with = "desc_str")]
    pub m: Option<LinOrderDesc>,
    pub seed: u64,
    pub probes: usize,
    /// `None` runs every suite that applies to the structure.
    pub suites: Option<Vec<Suite>>,
    pub p3: bool,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn desc_str<S: serde::Serializer>(m: &Option<LinOrderDesc>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(d) => s.serialize_some(&d.to_string()),
        None => s.serialize_none(),
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            structure: StructureId::D,
            modulus: 8,
            j_class: 0,
            level: 2,
            budget: 5_000,
            points: 12,
            sample: 8,
            bits: 64,
            m: None,
            seed: 0,
            probes: 200,
            suites: None,
            p3: false,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn generic(&self) -> GenericConfig {
        GenericConfig {
            modulus: self.modulus,
            j_class: self.j_class,
        }
    }

    /// The lump description for chain tasks, `inf:2` when none is given.
    pub fn desc(&self) -> LinOrderDesc {
        self.m
            .clone()
            .unwrap_or_else(|| "inf:2".parse().expect("valid default"))
    }

    /// Set one key, as written in a config file or on the command line.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let num = || -> Result<u64> {
            v.parse::<u64>()
                .with_context(|| format!("{key} expects a non-negative integer, got {v:?}"))
        };
        match key.trim() {
            // either `C_3` or the JSON descriptor `{"id":"C_n","n":3}`
            "structure" if v.starts_with('{') => self.structure = serde_json::from_str(v)?,
            "structure" => self.structure = v.parse()?,
            "modulus" => self.modulus = num()? as u32,
            "j_class" => self.j_class = num()? as u32,
            "level" => self.level = num()? as usize,
            "budget" => self.budget = num()?,
            "points" => self.points = num()? as usize,
            "sample" => self.sample = num()? as usize,
            "bits" => self.bits = num()? as usize,
            "M" | "m" => self.m = Some(v.parse()?),
            "seed" => self.seed = num()?,
            "probes" => self.probes = num()? as usize,
            "suites" => self.suites = Some(parse_suites(v)?),
            "p3" => {
                self.p3 = match v {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    _ => bail!("p3 expects true or false, got {v:?}"),
                }
            }
            "out" => self.out = Some(PathBuf::from(v)),
            other => bail!("unknown config key {other:?}"),
        }
        Ok(())
    }

    /// Apply a `key = value` file. Blank lines and `#` comments are ignored.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key = value", n + 1))?;
            self.set(k, v).with_context(|| format!("line {}", n + 1))?;
        }
        Ok(())
    }

    pub fn validate(&self, chain_task: bool) -> Result<()> {
        if self.budget == 0 || self.points == 0 || self.sample == 0 || self.bits == 0 {
            bail!("budgets and sample sizes must be positive");
        }
        if self.j_class >= self.modulus {
            bail!("j_class {} is not below modulus {}", self.j_class, self.modulus);
        }
        if chain_task {
            let d = self.desc();
            // Case II builds the chain for L + 1, which adds a lump at inf
            let lumps = d.lumps().len() + usize::from(!d.infinity_in_m());
            let pieces = lumps + usize::from(self.structure != StructureId::COmega);
            if (self.modulus as usize) < pieces {
                bail!(
                    "modulus {} is too small: the chain needs {pieces} dense classes",
                    self.modulus
                );
            }
        }
        Ok(())
    }
}
