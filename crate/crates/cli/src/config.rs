//! Run configuration: a JSON file overridden by command-line flags.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use imprim::cherednik::KTable;
use imprim::cycfield::{parse_cyc, zeta, CycNum};
use imprim::refgroup::GroupParams;
use imprim::seminormal::HeckeParams;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    #[arg(long, global = true)]
    pub r: Option<u32>,
    #[arg(long, global = true)]
    pub p: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Hecke parameter q (rational, `zN^k`, or `c*zN^k`).
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// Comma-separated v_0, …, v_{d-1}.
    #[arg(long, global = true, value_delimiter = ',')]
    pub v: Option<Vec<String>>,
    /// JSON k-table: {"coordinate": ["k1", …], "difference": ["k1"]}.
    #[arg(long = "k-file", global = true)]
    pub k_file: Option<PathBuf>,
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    #[arg(long, global = true)]
    pub cap: Option<u128>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with any of the keys r, p, n, q, v, k, degree, cap, format.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    r: Option<u32>,
    p: Option<u32>,
    n: Option<usize>,
    q: Option<String>,
    v: Option<Vec<String>>,
    k: Option<serde_json::Value>,
    degree: Option<u32>,
    cap: Option<u128>,
    format: Option<Format>,
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub gp: GroupParams,
    pub q: Option<String>,
    pub v: Option<Vec<String>>,
    pub k_json: Option<String>,
    pub degree: Option<u32>,
    pub cap: Option<u128>,
    pub format: Format,
}

/// Parameter echo embedded in every report.
#[derive(Serialize)]
pub struct Echo {
    pub r: u32,
    pub p: u32,
    pub n: usize,
    pub q: Option<String>,
    pub v: Option<Vec<String>>,
    pub k: Option<serde_json::Value>,
    pub degree: Option<u32>,
    pub cap: Option<String>,
}

impl RunConfig {
    /// Defaults: `r = 2`, `p = 1`, `n = 2`, JSON output; other defaults are
    /// chosen per command.
    pub fn resolve(flags: &Flags) -> anyhow::Result<Self> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str::<FileConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => FileConfig::default(),
        };
        let r = flags.r.or(file.r).unwrap_or(2);
        let p = flags.p.or(file.p).unwrap_or(1);
        let n = flags.n.or(file.n).unwrap_or(2);
        let gp = GroupParams::new(r, p, n)?;
        let k_json = match (&flags.k_file, &file.k) {
            (Some(path), _) => {
                Some(std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
            }
            (None, Some(v)) => Some(v.to_string()),
            (None, None) => None,
        };
        let cfg = RunConfig {
            gp,
            q: flags.q.clone().or(file.q),
            v: flags.v.clone().or(file.v),
            k_json,
            degree: flags.degree.or(file.degree),
            cap: flags.cap.or(file.cap),
            format: flags.format.or(file.format).unwrap_or_default(),
        };
        Ok(cfg)
    }

    /// Parses the k-table and Hecke parameters if they were given.
    pub fn validate(&self) -> imprim::Result<()> {
        if let Some(k) = &self.k_json {
            KTable::from_json(k, self.gp)?;
        }
        if self.q.is_some() || self.v.is_some() {
            self.hecke()?;
        }
        Ok(())
    }

    /// Hecke parameters: defaults are `q = 2`, `v_l` odd primes, `ξ = ζ_p`.
    pub fn hecke(&self) -> imprim::Result<HeckeParams> {
        let default = HeckeParams::default_for(self.gp)?;
        let q = match &self.q {
            Some(s) => parse_cyc(s)?,
            None => default.q,
        };
        let v = match &self.v {
            Some(list) => list.iter().map(|s| parse_cyc(s)).collect::<imprim::Result<Vec<CycNum>>>()?,
            None => default.v,
        };
        HeckeParams::new(self.gp, q, v, zeta(self.gp.p, 1))
    }

    /// The configured k-table, or the periodic default.
    pub fn k_table(&self) -> imprim::Result<KTable> {
        match &self.k_json {
            Some(text) => KTable::from_json(text, self.gp),
            None => Ok(KTable::tau_compatible_default(self.gp)),
        }
    }

    pub fn echo(&self) -> Echo {
        Echo {
            r: self.gp.r,
            p: self.gp.p,
            n: self.gp.n,
            q: self.q.clone(),
            v: self.v.clone(),
            k: self.k_json.as_ref().and_then(|t| serde_json::from_str(t).ok()),
            degree: self.degree,
            cap: self.cap.map(|c| c.to_string()),
        }
    }

    pub fn degree_or(&self, default: u32) -> u32 {
        self.degree.unwrap_or(default)
    }

    pub fn cap_or(&self, default: u128) -> u128 {
        self.cap.unwrap_or(default)
    }
}
