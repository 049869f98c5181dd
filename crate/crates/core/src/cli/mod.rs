//! Command-line front end: `gen`, `verify` and `chain`.
//!
//! Settings come from defaults, then an optional `key = value` config file,
//! then flags. Exit codes: 0 PASS, 1 FAIL, 2 usage or runtime error,
//! 3 INCONCLUSIVE.

mod chain;
mod config;
mod gen;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

pub use chain::cmd_chain;
pub use config::{parse_suites, RunConfig, Suite};
pub use gen::cmd_gen;
pub use verify::{cmd_verify, run_suites, CheckResult, Outcome, SuiteReport, VerifyReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser)]
#[command(name = "copychains", version, about = "Ultrahomogeneous posets and maximal chains of copies")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a structure on a finite sample and write its order.
    Gen(Flags),
    /// Run verification suites and write a report.
    Verify(Flags),
    /// Build a maximal chain and write cut, lump, embedding and probe data.
    Chain(Flags),
}

#[derive(Args, Default)]
struct Flags {
    /// Structure id: D, Q, A_omega, B_3, B_omega, C_2, C_omega, ...
    #[arg(value_name = "STRUCTURE")]
    positional: Option<String>,
    #[arg(long)]
    structure: Option<String>,
    /// Number of residue classes used to split the rationals.
    #[arg(long)]
    modulus: Option<u32>,
    /// Residue class used as J.
    #[arg(long = "j-class")]
    j_class: Option<u32>,
    /// Triple-size bound.
    #[arg(long)]
    level: Option<usize>,
    /// Step budget for the generic order.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    sample: Option<usize>,
    /// Truncation length for the embedding into the reals.
    #[arg(long)]
    bits: Option<usize>,
    /// Lumps of the linear order, as "cut:size,...".
    #[arg(long = "M", value_name = "DESC", allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of maximality probes.
    #[arg(long)]
    probes: Option<usize>,
    /// Comma list of suites, or "none".
    #[arg(long)]
    suites: Option<String>,
    /// Also check the copy family of the structure against (P3).
    #[arg(long)]
    p3: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// A key = value file with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            cfg.apply_file(&text)
                .with_context(|| format!("in {}", path.display()))?;
        }
        let mut set = |k: &str, v: Option<String>| match v {
            Some(v) => cfg.set(k, &v),
            None => Ok(()),
        };
        set("structure", self.structure.clone().or(self.positional.clone()))?;
        set("modulus", self.modulus.map(|x| x.to_string()))?;
        set("j_class", self.j_class.map(|x| x.to_string()))?;
        set("level", self.level.map(|x| x.to_string()))?;
        set("budget", self.budget.map(|x| x.to_string()))?;
        set("points", self.points.map(|x| x.to_string()))?;
        set("sample", self.sample.map(|x| x.to_string()))?;
        set("bits", self.bits.map(|x| x.to_string()))?;
        set("M", self.m.clone())?;
        set("seed", self.seed.map(|x| x.to_string()))?;
        set("probes", self.probes.map(|x| x.to_string()))?;
        set("suites", self.suites.clone())?;
        if self.p3 {
            cfg.p3 = true;
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        Ok(cfg)
    }
}

/// Where command output goes: files under `--out` when given, plus stdout.
pub struct Output {
    dir: Option<PathBuf>,
    stdout: String,
}

impl Output {
    pub fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
        }
        Ok(Output {
            dir,
            stdout: String::new(),
        })
    }

    pub fn file(&mut self, name: &str, content: &str) -> Result<()> {
        if let Some(d) = &self.dir {
            let path = d.join(name);
            fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }

    pub fn print(&mut self, line: &str) {
        self.stdout.push_str(line);
        if !line.ends_with('\n') {
            self.stdout.push('\n');
        }
    }

    pub fn stdout(&self) -> &str {
        &self.stdout
    }
}

/// Parse arguments, run the command and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let (flags, which) = match &cli.cmd {
        Command::Gen(f) => (f, "gen"),
        Command::Verify(f) => (f, "verify"),
        Command::Chain(f) => (f, "chain"),
    };
    match execute(flags, which) {
        Ok((code, out)) => {
            print!("{}", out.stdout());
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn execute(flags: &Flags, which: &str) -> Result<(i32, Output)> {
    let cfg = flags.resolve()?;
    cfg.validate(which == "chain")?;
    let mut out = Output::new(cfg.out.clone())?;
    let code = match which {
        "gen" => cmd_gen(&cfg, &mut out)?,
        "verify" => cmd_verify(&cfg, &mut out)?,
        _ => cmd_chain(&cfg, &mut out)?,
    };
    Ok((code, out))
}
