//! Batch front-end shared by the `matroid-flats` binary and its tests.
//!
//! Machine-readable output goes to the supplied writer; progress goes to the
//! log (standard error in the binary).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::bruteforce::{self, BruteForceError};
use crate::engine::{enumerate_flats, EnumerationOptions, EnumerationReport, Strategy};
use crate::linalg::{NumberPolicy, RationalMatrix};
use crate::oracle::{GraphicOracle, IndependenceOracle, UniformOracle, VectorialOracle};
use crate::zonotope::{hrep, ZonotopeError, ZonotopeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    /// `d N` header followed by `d` rows (or the JSON equivalent)
    Matrix,
    /// one `u v` edge per line
    Edges,
    /// `--input k,n`
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    Flats,
    Pointers,
    Hrep,
    BruteforceCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Generic,
    Echelon,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Generic => Strategy::Generic,
            StrategyArg::Echelon => Strategy::Echelon,
        }
    }
}

/// Enumerate matroid flats or compute zonotope H-representations.
#[derive(Debug, Clone, Parser)]
#[command(name = "matroid-flats", version)]
pub struct RunConfig {
    /// Input file, or `k,n` for uniform matroids
    #[arg(long)]
    pub input: String,
    #[arg(long, value_enum, default_value_t = InputKind::Matrix)]
    pub kind: InputKind,
    #[arg(long, value_enum, default_value_t = CommandKind::Flats)]
    pub command: CommandKind,
    /// Include the rank-0 and rank-d flats
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub extremes: bool,
    /// Centre the zonotope at the origin
    #[arg(long)]
    pub centered: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Report the number of oracle queries
    #[arg(long)]
    pub count_queries: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
    /// Accept floating-point literals, converted by exact binary expansion
    #[arg(long)]
    pub allow_float: bool,
    /// Largest ground set accepted by `bruteforce-check`
    #[arg(long, default_value_t = bruteforce::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

enum Loaded {
    Vectors(VectorialOracle),
    Graph(GraphicOracle),
    Uniform(UniformOracle),
}

impl Loaded {
    fn oracle(&self) -> &dyn IndependenceOracle {
        match self {
            Loaded::Vectors(o) => o,
            Loaded::Graph(o) => o,
            Loaded::Uniform(o) => o,
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(PathBuf::from(path)).map_err(|e| CliError::Parse(format!("reading {path}: {e}")))
}

fn load(config: &RunConfig) -> Result<Loaded, CliError> {
    let policy = if config.allow_float {
        NumberPolicy::ConvertFloats
    } else {
        NumberPolicy::Exact
    };
    match config.kind {
        InputKind::Matrix => {
            let text = read_input(&config.input)?;
            let m =
                RationalMatrix::parse(&text, policy).map_err(|e| CliError::Parse(format!("{}: {e}", config.input)))?;
            Ok(Loaded::Vectors(VectorialOracle::new(m)))
        }
        InputKind::Edges => {
            let text = read_input(&config.input)?;
            let g =
                GraphicOracle::parse_edge_list(&text).map_err(|e| CliError::Parse(format!("{}: {e}", config.input)))?;
            Ok(Loaded::Graph(g))
        }
        InputKind::Uniform => UniformOracle::parse(&config.input)
            .map(Loaded::Uniform)
            .map_err(|e| CliError::Parse(e.to_string())),
    }
}

/// Runs one command, writing its result to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if config.command == CommandKind::Hrep && config.kind != InputKind::Matrix {
        return Err(CliError::Parse("hrep needs --kind matrix".into()));
    }
    let loaded = load(config)?;
    let threads = config.threads.unwrap_or(0);
    if threads == 1 {
        return execute(config, &loaded, false, out);
    }
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Precondition(format!("thread pool: {e}")))?;
        let mut buf = Vec::new();
        let result = pool.install(|| execute(config, &loaded, true, &mut buf));
        out.write_all(&buf)?;
        result
    }
    #[cfg(not(feature = "parallel"))]
    execute(config, &loaded, false, out)
}

fn execute(config: &RunConfig, loaded: &Loaded, parallel: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let oracle = loaded.oracle();
    let options = EnumerationOptions {
        include_extremes: config.extremes,
        strategy: config.strategy.into(),
        parallel,
    };
    let text = match config.command {
        CommandKind::Flats | CommandKind::Pointers => {
            let report = enumerate_flats(oracle, &options).expect("pipeline simplifies its input");
            log::info!("{} flats in {:?}", report.total(), report.elapsed);
            render_flats(config, &report, config.command == CommandKind::Flats)
        }
        CommandKind::Hrep => {
            let Loaded::Vectors(v) = loaded else {
                unreachable!("checked before loading")
            };
            let zopts = ZonotopeOptions {
                centered: config.centered,
                parallel,
            };
            let h = hrep(v.matrix().expect("vectorial oracle has a matrix"), &zopts).map_err(|e| match e {
                ZonotopeError::NotFullDimensional { .. } => CliError::Precondition(e.to_string()),
                other => CliError::Parse(other.to_string()),
            })?;
            match config.format {
                OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&h.to_json()).expect("json")),
                OutputFormat::Text => h.to_text(),
            }
        }
        CommandKind::BruteforceCheck => return bruteforce_check(config, oracle, &options, out),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn render_flats(config: &RunConfig, report: &EnumerationReport, with_members: bool) -> String {
    match config.format {
        OutputFormat::Json => {
            let flats: Vec<serde_json::Value> = report
                .flats()
                .map(|f| {
                    let mut v = serde_json::to_value(f).expect("json");
                    if !with_members {
                        v.as_object_mut().expect("object").remove("members");
                    }
                    v
                })
                .collect();
            let counts: Vec<serde_json::Value> = report
                .counts()
                .into_iter()
                .map(|(rank, count)| json!({"rank": rank, "count": count}))
                .collect();
            let mut doc = json!({
                "ground_size": report.ground_size,
                "rank": report.rank,
                "counts": counts,
                "total": report.total(),
                "flats": flats,
            });
            if config.count_queries {
                doc["queries"] = json!(report.queries);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "# ground set {} rank {}", report.ground_size, report.rank);
            for f in report.flats() {
                let _ = write!(s, "rank {} pointer {} {}", f.rank, f.pointer, f.pointer.to_index_list());
                if with_members {
                    let _ = write!(s, " members {}", f.members.to_index_list());
                }
                s.push('\n');
            }
            for (rank, count) in report.counts() {
                let _ = writeln!(s, "count {rank} {count}");
            }
            let _ = writeln!(s, "total {}", report.total());
            if config.count_queries {
                let _ = writeln!(s, "queries {}", report.queries);
            }
            s
        }
    }
}

fn bruteforce_check(
    config: &RunConfig,
    oracle: &dyn IndependenceOracle,
    options: &EnumerationOptions,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let reference = bruteforce::brute_flats(oracle, config.cap).map_err(|e| match e {
        BruteForceError::TooLarge { .. } => CliError::Precondition(e.to_string()),
        other => CliError::Parse(other.to_string()),
    })?;
    let all = EnumerationOptions {
        include_extremes: true,
        ..*options
    };
    let report = enumerate_flats(oracle, &all).expect("pipeline simplifies its input");
    let engine: Vec<_> = report.flats().copied().collect();
    let brute: Vec<_> = reference.flats().copied().collect();
    let missing: Vec<_> = brute.iter().filter(|f| !engine.contains(f)).collect();
    let extra: Vec<_> = engine.iter().filter(|f| !brute.contains(f)).collect();
    let agree = missing.is_empty() && extra.is_empty();
    let text = match config.format {
        OutputFormat::Json => {
            let mut doc = json!({
                "agree": agree,
                "engine_total": engine.len(),
                "bruteforce_total": brute.len(),
                "missing": missing,
                "extra": extra,
            });
            if config.count_queries {
                doc["queries"] = json!(report.queries);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "engine {} flats, brute force {} flats", engine.len(), brute.len());
            for f in &missing {
                let _ = writeln!(
                    s,
                    "missing rank {} pointer {} members {}",
                    f.rank,
                    f.pointer,
                    f.members.to_index_list()
                );
            }
            for f in &extra {
                let _ = writeln!(
                    s,
                    "extra rank {} pointer {} members {}",
                    f.rank,
                    f.pointer,
                    f.members.to_index_list()
                );
            }
            let _ = writeln!(s, "{}", if agree { "agree" } else { "MISMATCH" });
            if config.count_queries {
                let _ = writeln!(s, "queries {}", report.queries);
            }
            s
        }
    };
    out.write_all(text.as_bytes())?;
    if agree {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "{} flats missing, {} unexpected",
            missing.len(),
            extra.len()
        )))
    }
}
