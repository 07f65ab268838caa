//! The `seqvote` command line.
//!
//! Exit codes: 0 yes / success, 1 no / absent, 2 usage or input error,
//! 3 an exact solver hit its size budget.

use crate::control::{control_amendment_with, control_successive, controllable_set_with};
use crate::error::{Error, Result};
use crate::experiments::{run_experiment, ExperimentConfig};
use crate::instance::{parse_instance_json, write_instance_json, Instance};
use crate::manipulation::{
    manipulate, manipulate_weighted, min_coalition_size, ManipulationWitness,
};
use crate::order::{Agenda, PartialAgenda};
use crate::preflib::{parse_agenda, parse_preflib, write_agenda};
use crate::procedure::{winner, Procedure, TiePolicy};
use crate::profile::Profile;
use crate::uncertainty::{
    generate_is_reduction, generate_partition_reduction, generate_vc_reduction, necessary_winner,
    possible_winner, weighted_necessary_winner, Graph, ReducedInstance, SearchConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "seqvote",
    version,
    about = "Successive and amendment voting toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Preflib file (.soc/.soi/.toc/.toi) or JSON instance (.json).
    #[arg(long)]
    pub profile: PathBuf,
    /// Agenda as `a>b>c` (`,` separates fragments) or a file holding one.
    #[arg(long)]
    pub agenda: Option<String>,
    /// `successive` or `amendment`.
    #[arg(long, default_value = "successive", value_parser = parse_procedure)]
    pub procedure: Procedure,
    /// Even total weight: `reject` it, or let `status-quo` keep ties.
    #[arg(long, default_value = "reject", value_parser = parse_tie_policy)]
    pub tie_policy: TiePolicy,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct Budget {
    #[arg(long, default_value_t = 5040)]
    pub max_agenda_completions: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_variables: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the procedure under a complete agenda.
    Winner {
        #[command(flatten)]
        common: Common,
    },
    /// Find an agenda making the target win, or list every controllable alternative.
    Control {
        #[command(flatten)]
        common: Common,
        /// Alternative label; defaults to the instance file's target.
        #[arg(long, visible_alias = "alternative")]
        target: Option<String>,
        /// Write the witness as a JSON instance.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Coalitional manipulation under a fixed agenda.
    Manipulate {
        #[command(flatten)]
        common: Common,
        /// Alternative label; defaults to the instance file's target.
        #[arg(long, visible_alias = "alternative")]
        target: Option<String>,
        /// Coalition size (unit weights).
        #[arg(long, conflicts_with_all = ["weights", "min"])]
        k: Option<u64>,
        /// Comma-separated manipulator weights.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        /// Report the least coalition size instead.
        #[arg(long)]
        min: bool,
        /// Write the witness as a JSON instance.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Can the target win in some completion of the profile and agenda?
    Possible {
        #[command(flatten)]
        common: Common,
        /// Alternative label; defaults to the instance file's target.
        #[arg(long, visible_alias = "alternative")]
        target: Option<String>,
        #[command(flatten)]
        budget: Budget,
        /// Write the witness as a JSON instance.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Does the target win in every completion of the profile and agenda?
    Necessary {
        #[command(flatten)]
        common: Common,
        /// Alternative label; defaults to the instance file's target.
        #[arg(long, visible_alias = "alternative")]
        target: Option<String>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run the ratio experiments over a Preflib corpus.
    Experiment {
        /// key = value configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Corpus directory; overrides the configuration.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for rows.csv and aggregates.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a hardness-reduction instance as a JSON instance file.
    Generate {
        #[arg(value_enum)]
        kind: Reduction,
        /// Edge list file (`u v` per line); `k<a>,<b>` builds a complete bipartite graph.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        h: Option<usize>,
        /// Comma-separated positive integers for the partition reduction.
        #[arg(long, value_delimiter = ',')]
        numbers: Option<Vec<u64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    IsReduction,
    VcReduction,
    Partition,
}

fn parse_procedure(s: &str) -> std::result::Result<Procedure, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tie_policy(s: &str) -> std::result::Result<TiePolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => {
            Error::Io(format!("{}:{line}: {message}", path.display()))
        }
        other => other,
    }
}

fn load(common: &Common) -> Result<Instance> {
    let text = read(&common.profile)?;
    let json = common.profile.extension().is_some_and(|e| e == "json");
    let mut inst = if json {
        parse_instance_json(&text)
    } else {
        parse_preflib(&text).map(Instance::new)
    }
    .map_err(|e| with_file(&common.profile, e))?;
    if let Some(a) = &common.agenda {
        let path = Path::new(a);
        let text = if path.is_file() {
            read(path)?
        } else {
            a.clone()
        };
        inst.agenda = Some(parse_agenda(&text, &inst.profile)?);
    }
    Ok(inst)
}

fn full_agenda(inst: &Instance) -> Result<Agenda> {
    inst.agenda
        .as_ref()
        .ok_or_else(|| Error::usage("--agenda is required"))?
        .as_agenda()
        .ok_or(Error::IncompleteAgenda)
}

fn target(inst: &Instance, flag: &Option<String>) -> Result<usize> {
    match flag {
        Some(t) => inst.profile.id_of(t),
        None => inst
            .target
            .ok_or_else(|| Error::usage("--target is required")),
    }
}

fn labels(profile: &Profile, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&a| profile.label(a).to_string()).collect()
}

fn agenda_text(profile: &Profile, agenda: &Agenda) -> String {
    write_agenda(&agenda.to_partial(), profile)
}

fn save(path: &Option<PathBuf>, inst: &Instance) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, write_instance_json(inst) + "\n")?;
    }
    Ok(())
}

struct Io<'a> {
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    fn json(&mut self, v: serde_json::Value) -> Result<()> {
        self.line(serde_json::to_string_pretty(&v).expect("valid json"))
    }
}

fn cmd_winner(common: &Common, io: &mut Io) -> Result<i32> {
    let inst = load(common)?;
    let agenda = full_agenda(&inst)?;
    let p = &inst.profile;
    let (w, trace) = winner(p, &agenda, common.procedure, common.tie_policy)?;
    match common.format {
        Format::Text => io.line(p.label(w))?,
        Format::Csv => {
            io.line("procedure,agenda,winner")?;
            io.line(format!(
                "{},{},{}",
                common.procedure,
                agenda_text(p, &agenda),
                p.label(w)
            ))?;
        }
        Format::Json => io.json(json!({
            "procedure": common.procedure,
            "agenda": agenda_text(p, &agenda),
            "winner": p.label(w),
            "labels": p.labels(),
            "trace": trace,
        }))?,
    }
    Ok(EXIT_YES)
}

fn cmd_control(
    common: &Common,
    t: &Option<String>,
    save_to: &Option<PathBuf>,
    io: &mut Io,
) -> Result<i32> {
    let inst = load(common)?;
    let p = &inst.profile;
    if t.is_none() && inst.target.is_none() {
        let set = controllable_set_with(p, common.procedure, common.tie_policy)?;
        let names = labels(p, &set);
        match common.format {
            Format::Json => {
                io.json(json!({ "procedure": common.procedure, "controllable": names }))?
            }
            Format::Csv => {
                io.line("alternative")?;
                for n in &names {
                    io.line(n)?;
                }
            }
            Format::Text => io.line(names.join(" "))?,
        }
        return Ok(EXIT_YES);
    }
    let c = target(&inst, t)?;
    common.tie_policy.admit(p.total_weight())?;
    let witness = match common.procedure {
        Procedure::Successive => control_successive(p, c)?,
        Procedure::Amendment => control_amendment_with(p, c, common.tie_policy)?,
    };
    let Some(w) = witness else {
        match common.format {
            Format::Json => io.json(json!({ "target": p.label(c), "controllable": false }))?,
            _ => io.line(format!("{} is not controllable", p.label(c)))?,
        }
        return Ok(EXIT_NO);
    };
    let text = agenda_text(p, &w.agenda);
    match common.format {
        Format::Json => io.json(json!({
            "procedure": common.procedure,
            "target": p.label(c),
            "controllable": true,
            "agenda": text,
        }))?,
        Format::Csv => {
            io.line("target,agenda")?;
            io.line(format!("{},{}", p.label(c), text))?;
        }
        Format::Text => io.line(text)?,
    }
    save(
        save_to,
        &Instance {
            profile: p.clone(),
            agenda: Some(w.agenda.to_partial()),
            target: Some(c),
        },
    )?;
    Ok(EXIT_YES)
}

fn cmd_manipulate(
    common: &Common,
    t: &Option<String>,
    k: Option<u64>,
    weights: &Option<Vec<u64>>,
    min: bool,
    save_to: &Option<PathBuf>,
    io: &mut Io,
) -> Result<i32> {
    let inst = load(common)?;
    let p = &inst.profile;
    let agenda = full_agenda(&inst)?;
    let c = target(&inst, t)?;
    if min {
        let size = min_coalition_size(p, c, &agenda, common.procedure)?;
        match common.format {
            Format::Json => io.json(json!({ "target": p.label(c), "min_coalition_size": size }))?,
            Format::Csv => {
                io.line("target,min_coalition_size")?;
                io.line(format!("{},{size}", p.label(c)))?;
            }
            Format::Text => io.line(size.to_string())?,
        }
        return Ok(EXIT_YES);
    }
    let found: Option<ManipulationWitness> = match (k, weights) {
        (Some(k), None) => manipulate(p, k, c, &agenda, common.procedure)?,
        (None, Some(ws)) => manipulate_weighted(p, ws, c, &agenda, common.procedure)?,
        _ => return Err(Error::usage("pass exactly one of --k, --weights or --min")),
    };
    let Some(w) = found else {
        match common.format {
            Format::Json => io.json(json!({ "target": p.label(c), "manipulable": false }))?,
            _ => io.line(format!("{} cannot be made to win", p.label(c)))?,
        }
        return Ok(EXIT_NO);
    };
    let manipulated = w.apply(p)?;
    let ballot = labels(p, &w.ballot).join(">");
    match common.format {
        Format::Json => io.json(json!({
            "procedure": common.procedure,
            "target": p.label(c),
            "manipulable": true,
            "k": w.k,
            "weights": w.weights,
            "ballot": ballot,
            "chain": labels(p, &w.chain),
            "agenda": agenda_text(p, &agenda),
        }))?,
        Format::Csv => {
            io.line("target,k,ballot")?;
            io.line(format!("{},{},{ballot}", p.label(c), w.k))?;
        }
        Format::Text => io.line(ballot)?,
    }
    save(
        save_to,
        &Instance {
            profile: manipulated,
            agenda: Some(agenda.to_partial()),
            target: Some(c),
        },
    )?;
    Ok(EXIT_YES)
}

fn search_config(common: &Common, budget: &Budget) -> SearchConfig {
    SearchConfig {
        max_agenda_completions: budget.max_agenda_completions,
        max_variables: budget.max_variables,
        tie_policy: common.tie_policy,
    }
}

fn partial_agenda(inst: &Instance) -> PartialAgenda {
    inst.agenda
        .clone()
        .unwrap_or_else(|| PartialAgenda::unconstrained(inst.profile.num_alternatives()))
}

fn cmd_possible(
    common: &Common,
    t: &Option<String>,
    budget: &Budget,
    save_to: &Option<PathBuf>,
    io: &mut Io,
) -> Result<i32> {
    let inst = load(common)?;
    let p = &inst.profile;
    let c = target(&inst, t)?;
    let partial = partial_agenda(&inst);
    let found = possible_winner(
        p,
        c,
        &partial,
        common.procedure,
        &search_config(common, budget),
    )?;
    let Some(w) = found else {
        match common.format {
            Format::Json => io.json(json!({ "target": p.label(c), "possible": false }))?,
            _ => io.line(format!("{} is not a possible winner", p.label(c)))?,
        }
        return Ok(EXIT_NO);
    };
    let witness = Instance {
        profile: w.profile.clone(),
        agenda: Some(w.agenda.to_partial()),
        target: Some(c),
    };
    match common.format {
        Format::Json => {
            let inst_json: serde_json::Value =
                serde_json::from_str(&write_instance_json(&witness)).expect("valid json");
            io.json(json!({
                "procedure": common.procedure,
                "target": p.label(c),
                "possible": true,
                "agenda": agenda_text(p, &w.agenda),
                "round_winners": w.round_winners.as_ref().map(|r| labels(p, r)),
                "completion": inst_json,
            }))?
        }
        Format::Csv => {
            io.line("target,possible,agenda")?;
            io.line(format!("{},true,{}", p.label(c), agenda_text(p, &w.agenda)))?;
        }
        Format::Text => io.line(format!(
            "{} wins under {}",
            p.label(c),
            agenda_text(p, &w.agenda)
        ))?,
    }
    save(save_to, &witness)?;
    Ok(EXIT_YES)
}

fn cmd_necessary(common: &Common, t: &Option<String>, budget: &Budget, io: &mut Io) -> Result<i32> {
    let inst = load(common)?;
    let p = &inst.profile;
    let c = target(&inst, t)?;
    let partial = partial_agenda(&inst);
    let cfg = search_config(common, budget);
    let yes = if p.is_unweighted() {
        necessary_winner(p, c, &partial, common.procedure, &cfg)?
    } else {
        weighted_necessary_winner(p, c, &partial, common.procedure, &cfg)?
    };
    match common.format {
        Format::Json => io.json(json!({ "target": p.label(c), "necessary": yes }))?,
        Format::Csv => {
            io.line("target,necessary")?;
            io.line(format!("{},{yes}", p.label(c)))?;
        }
        Format::Text => io.line(if yes {
            format!("{} is a necessary winner", p.label(c))
        } else {
            format!("{} is not a necessary winner", p.label(c))
        })?,
    }
    Ok(if yes { EXIT_YES } else { EXIT_NO })
}

fn cmd_experiment(
    config: &Option<PathBuf>,
    corpus: &Option<PathBuf>,
    seed: Option<u64>,
    out: &Option<PathBuf>,
    format: Format,
    io: &mut Io,
) -> Result<i32> {
    let mut cfg = match config {
        Some(path) => ExperimentConfig::from_file(path).map_err(|e| with_file(path, e))?,
        None => ExperimentConfig::default(),
    };
    match corpus {
        Some(c) => cfg.corpus = c.clone(),
        None if config.is_none() => return Err(Error::usage("pass --config or --corpus")),
        None => {}
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = run_experiment(&cfg)?;
    if let Some(dir) = out {
        report.write_artifacts(dir)?;
    }
    match format {
        Format::Text => write!(io.out, "{}", report.render_text())?,
        Format::Csv => write!(io.out, "{}", report.to_csv())?,
        Format::Json => io.line(report.to_json())?,
    }
    Ok(EXIT_YES)
}

fn load_graph(spec: &str) -> Result<Graph> {
    if let Some((a, b)) = spec.strip_prefix('k').and_then(|s| s.split_once(',')) {
        if let (Ok(a), Ok(b)) = (a.parse(), b.parse()) {
            return Ok(Graph::complete_bipartite(a, b));
        }
    }
    let path = Path::new(spec);
    Graph::parse(&read(path)?).map_err(|e| with_file(path, e))
}

fn cmd_generate(
    kind: Reduction,
    graph: &Option<String>,
    h: Option<usize>,
    numbers: &Option<Vec<u64>>,
    out: &Option<PathBuf>,
    io: &mut Io,
) -> Result<i32> {
    let need_graph = || -> Result<(Graph, usize)> {
        let g = graph
            .as_deref()
            .ok_or_else(|| Error::usage("--graph is required"))?;
        let h = h.ok_or_else(|| Error::usage("--h is required"))?;
        Ok((load_graph(g)?, h))
    };
    let ReducedInstance {
        profile,
        target,
        agenda,
    } = match kind {
        Reduction::IsReduction => {
            let (g, h) = need_graph()?;
            generate_is_reduction(&g, h)?
        }
        Reduction::VcReduction => {
            let (g, h) = need_graph()?;
            generate_vc_reduction(&g, h)?
        }
        Reduction::Partition => {
            let xs = numbers
                .as_ref()
                .ok_or_else(|| Error::usage("--numbers is required"))?;
            generate_partition_reduction(xs)?
        }
    };
    let text = write_instance_json(&Instance {
        profile,
        agenda: Some(agenda.to_partial()),
        target: Some(target),
    });
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => io.line(text)?,
    }
    Ok(EXIT_YES)
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut io = Io { out };
    let result = match &cli.command {
        Command::Winner { common } => cmd_winner(common, &mut io),
        Command::Control {
            common,
            target,
            save,
        } => cmd_control(common, target, save, &mut io),
        Command::Manipulate {
            common,
            target,
            k,
            weights,
            min,
            save,
        } => cmd_manipulate(common, target, *k, weights, *min, save, &mut io),
        Command::Possible {
            common,
            target,
            budget,
            save,
        } => cmd_possible(common, target, budget, save, &mut io),
        Command::Necessary {
            common,
            target,
            budget,
        } => cmd_necessary(common, target, budget, &mut io),
        Command::Experiment {
            config,
            corpus,
            seed,
            out,
            format,
        } => cmd_experiment(config, corpus, *seed, out, *format, &mut io),
        Command::Generate {
            kind,
            graph,
            h,
            numbers,
            out,
        } => cmd_generate(*kind, graph, *h, numbers, out, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "seqvote: {e}");
            if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_USAGE
            }
        }
    }
}
