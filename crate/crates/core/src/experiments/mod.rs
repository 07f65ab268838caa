//! Ratio experiments over a corpus of Preflib profiles.

mod aggregate;
mod ratios;
mod sampling;

pub use aggregate::{arithmetic_mean, geometric_mean, means, Means};
pub use ratios::{
    control_vulnerability_ratio, control_vulnerability_ratio_with, manipulation_ratios,
    manipulation_resistance_ratio, second_winner_coalition_ratio, smallest_coalition_ratio,
    ManipulationRatios,
};
pub use sampling::{
    sample_agendas, sample_agendas_capped, AgendaSample, EXHAUSTIVE_MAX_ALTERNATIVES, MAX_SAMPLE,
};

use crate::error::{Error, Result};
use crate::preflib::{parse_preflib, Dialect};
use crate::procedure::{Procedure, TiePolicy};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub(crate) fn serialize_ratio<S: Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn serialize_opt_ratio<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub corpus: PathBuf,
    pub procedures: Vec<Procedure>,
    pub seed: u64,
    /// Control rows are bucketed into `m <= control_split` and above.
    pub control_split: usize,
    /// Manipulation rows are bucketed into `m <= manipulation_split` and above.
    pub manipulation_split: usize,
    /// Used for the manipulation runs; control runs only see odd voter counts.
    pub tie_policy: TiePolicy,
    pub sample_cap: usize,
    pub control: bool,
    pub manipulation: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            corpus: PathBuf::from("."),
            procedures: Procedure::ALL.to_vec(),
            seed: 0,
            control_split: 4,
            manipulation_split: 8,
            tie_policy: TiePolicy::StatusQuo,
            sample_cap: MAX_SAMPLE,
            control: true,
            manipulation: true,
        }
    }
}

fn parse_bool(line: usize, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::parse(
            line,
            format!("expected a boolean, found `{v}`"),
        )),
    }
}

impl ExperimentConfig {
    /// Reads `key = value` lines. A relative corpus path is taken relative
    /// to `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(ln, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| Error::parse(ln, format!("expected a number, found `{v}`")))
            };
            match key {
                "corpus" => cfg.corpus = base.join(value),
                "procedures" => {
                    cfg.procedures = value
                        .split(',')
                        .map(|p| {
                            p.trim()
                                .parse()
                                .map_err(|e: Error| Error::parse(ln, e.to_string()))
                        })
                        .collect::<Result<_>>()?
                }
                "seed" => cfg.seed = num(value)?,
                "control_split" => cfg.control_split = num(value)? as usize,
                "manipulation_split" => cfg.manipulation_split = num(value)? as usize,
                "tie_policy" => {
                    cfg.tie_policy = value
                        .parse()
                        .map_err(|e: Error| Error::parse(ln, e.to_string()))?
                }
                "sample_cap" => cfg.sample_cap = num(value)? as usize,
                "control" => cfg.control = parse_bool(ln, value)?,
                "manipulation" => cfg.manipulation = parse_bool(ln, value)?,
                _ => return Err(Error::parse(ln, format!("unknown key `{key}`"))),
            }
        }
        if cfg.procedures.is_empty() {
            return Err(Error::usage("no procedures configured"));
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

/// One profile under one procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub profile: String,
    pub m: usize,
    pub n: u64,
    pub procedure: Procedure,
    pub agendas: usize,
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub control_vulnerability: Option<BigRational>,
    pub manipulation: Option<ManipulationRatios>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    ControlVulnerability,
    ManipulationResistance,
    SecondWinnerCoalition,
    SmallestCoalition,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::ControlVulnerability,
        Metric::ManipulationResistance,
        Metric::SecondWinnerCoalition,
        Metric::SmallestCoalition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::ControlVulnerability => "control_vulnerability",
            Metric::ManipulationResistance => "manipulation_resistance",
            Metric::SecondWinnerCoalition => "second_winner_coalition",
            Metric::SmallestCoalition => "smallest_coalition",
        }
    }

    pub fn of(self, row: &ProfileRow) -> Option<&BigRational> {
        match self {
            Metric::ControlVulnerability => row.control_vulnerability.as_ref(),
            Metric::ManipulationResistance => row.manipulation.as_ref().map(|r| &r.resistance),
            Metric::SecondWinnerCoalition => row.manipulation.as_ref().map(|r| &r.second_winner),
            Metric::SmallestCoalition => row.manipulation.as_ref().map(|r| &r.smallest),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggregateRow {
    pub procedure: Procedure,
    pub metric: Metric,
    pub bucket: String,
    #[serde(flatten)]
    pub means: Means,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub file: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub seed: u64,
    pub rows: Vec<ProfileRow>,
    pub aggregates: Vec<AggregateRow>,
    pub skipped: Vec<Skipped>,
}

pub const CSV_HEADER: &str = "profile,m,n,procedure,agendas,control_vulnerability,manipulation_resistance,second_winner_coalition,smallest_coalition";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl RatioReport {
    /// Row-level CSV with exact rationals; empty cells where a metric does
    /// not apply.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let cell = |m: Metric| m.of(r).map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                csv_field(&r.profile),
                r.m,
                r.n,
                r.procedure,
                r.agendas,
                cell(Metric::ControlVulnerability),
                cell(Metric::ManipulationResistance),
                cell(Metric::SecondWinnerCoalition),
                cell(Metric::SmallestCoalition),
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// Aggregate table with three decimals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<12} {:<25} {:<7} {:>5} {:>10} {:>10}",
            "procedure", "metric", "bucket", "rows", "arith", "geom"
        )
        .unwrap();
        for a in &self.aggregates {
            writeln!(
                out,
                "{:<12} {:<25} {:<7} {:>5} {:>10.3} {:>10.3}",
                a.procedure.name(),
                a.metric.name(),
                a.bucket,
                a.means.count,
                a.means.arithmetic.to_f64().unwrap_or(f64::NAN),
                a.means.geometric
            )
            .unwrap();
        }
        for s in &self.skipped {
            writeln!(out, "skipped {}: {}", s.file, s.reason).unwrap();
        }
        out
    }

    pub fn write_artifacts(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("rows.csv"), self.to_csv())?;
        std::fs::write(dir.join("aggregates.json"), self.to_json())?;
        Ok(())
    }
}

fn bucket_label(m: usize, split: usize) -> String {
    if m <= split {
        format!("m<={split}")
    } else {
        format!("m>={}", split + 1)
    }
}

/// Means per (procedure, metric, bucket), in that order.
pub fn aggregate(rows: &[ProfileRow], config: &ExperimentConfig) -> Result<Vec<AggregateRow>> {
    let mut out = Vec::new();
    for &procedure in &config.procedures {
        for metric in Metric::ALL {
            let split = match metric {
                Metric::ControlVulnerability => config.control_split,
                _ => config.manipulation_split,
            };
            for low in [true, false] {
                let values: Vec<BigRational> = rows
                    .iter()
                    .filter(|r| r.procedure == procedure && (r.m <= split) == low)
                    .filter_map(|r| metric.of(r).cloned())
                    .collect();
                if values.is_empty() {
                    continue;
                }
                let m = if low { split } else { split + 1 };
                out.push(AggregateRow {
                    procedure,
                    metric,
                    bucket: bucket_label(m, split),
                    means: means(&values)?,
                });
            }
        }
    }
    Ok(out)
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension()
                .and_then(|e| e.to_str())
                .and_then(Dialect::from_extension)
                .is_some()
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Io(format!(
            "{}: no Preflib files found",
            dir.display()
        )));
    }
    Ok(files)
}

// Distinct per-profile seeds from the run seed.
fn profile_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

enum Outcome {
    Rows(Vec<ProfileRow>),
    Skip(String),
}

fn run_profile(path: &Path, index: usize, config: &ExperimentConfig) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    let profile = match parse_preflib(&text) {
        Ok(p) => p,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    if !profile.is_complete() {
        return Outcome::Skip("preference orders are not complete".into());
    }
    let m = profile.num_alternatives();
    if m < 2 {
        return Outcome::Skip("fewer than two alternatives".into());
    }
    let n = profile.total_weight();
    let sample = if config.manipulation {
        sample_agendas_capped(m, n, profile_seed(config.seed, index), config.sample_cap)
    } else {
        AgendaSample {
            seed: 0,
            exhaustive: false,
            agendas: Vec::new(),
        }
    };
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut rows = Vec::new();
    for &procedure in &config.procedures {
        let control = if config.control && n % 2 == 1 {
            match control_vulnerability_ratio_with(&profile, procedure, TiePolicy::Reject) {
                Ok(r) => Some(r),
                Err(e) => return Outcome::Skip(format!("control: {e}")),
            }
        } else {
            None
        };
        let manipulation = if config.manipulation {
            match manipulation_ratios(&profile, &sample, procedure, config.tie_policy) {
                Ok(r) => Some(r),
                Err(Error::EvenTotalWeight(_)) => None,
                Err(e) => return Outcome::Skip(format!("manipulation: {e}")),
            }
        } else {
            None
        };
        rows.push(ProfileRow {
            profile: name.clone(),
            m,
            n,
            procedure,
            agendas: sample.len(),
            control_vulnerability: control,
            manipulation,
        });
    }
    Outcome::Rows(rows)
}

/// Runs every configured procedure over the corpus. Unreadable or
/// unusable files are listed in the report and the run continues.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RatioReport> {
    let files = corpus_files(&config.corpus)?;
    let outcomes: Vec<Outcome> = files
        .par_iter()
        .enumerate()
        .map(|(i, f)| run_profile(f, i, config))
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (f, o) in files.iter().zip(outcomes) {
        match o {
            Outcome::Rows(r) => rows.extend(r),
            Outcome::Skip(reason) => skipped.push(Skipped {
                file: f
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                reason,
            }),
        }
    }
    let aggregates = aggregate(&rows, config)?;
    Ok(RatioReport {
        seed: config.seed,
        rows,
        aggregates,
        skipped,
    })
}
