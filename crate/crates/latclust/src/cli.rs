//! The `latclust` command line: `mine → group → embed → render`, plus
//! `stats` and `serve`. Every flag can also be set through an `L2S_`
//! environment variable.
//!
//! Failures print one JSON object on stderr and exit with 2 (usage),
//! 3 (format or invariant violation) or 4 (I/O).

use std::ffi::OsString;
use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use latclust_core::embed::{init, EmbeddingModel};
use latclust_core::pregroup::{check_maxdist, pregroup};
use latclust_core::render::{edges_at_threshold, RenderMode};
use latclust_core::{mine, GraphDatabase, Grouping, Lattice};
use serde_json::json;

use crate::export::{export_csv, render_svg};
use crate::pipeline::{access_stats, embed_with_curve, group_targets};
use crate::store::StoreFile;
use crate::{grouping_json, gspan, lattice_json, model_json, service, store, tables, FormatError};

#[derive(Debug, Parser)]
#[command(name = "latclust", version, about = "Group, embed and browse a lattice of frequent subgraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine frequent connected subgraphs from a gSpan-format graph file.
    Mine(MineArgs),
    /// Group near-duplicate patterns along lattice edges.
    Group(GroupArgs),
    /// Lay out groups in the plane by co-occurrence distance.
    Embed(EmbedArgs),
    /// Draw threshold edges over an embedding.
    Render(RenderArgs),
    /// Compare occurrence-store accesses with and without grouping.
    Stats(StatsArgs),
    /// Serve the browsing API over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Graph transactions in gSpan format.
    #[arg(env = "L2S_INPUT")]
    pub input: PathBuf,
    #[arg(long, env = "L2S_MINSUPP")]
    pub minsupp: u32,
    #[arg(long, env = "L2S_OUT")]
    pub out: PathBuf,
    /// Also write the occurrence sets as an `L2SO` binary store.
    #[arg(long, env = "L2S_STORE")]
    pub store: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[arg(env = "L2S_LATTICE")]
    pub lattice: PathBuf,
    #[arg(long, env = "L2S_MAXDIST", default_value_t = 0.1)]
    pub maxdist: f64,
    #[arg(long, env = "L2S_OUT")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(env = "L2S_LATTICE")]
    pub lattice: PathBuf,
    #[arg(env = "L2S_GROUPING")]
    pub grouping: PathBuf,
    #[arg(long, env = "L2S_ALPHA", default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, env = "L2S_ITERS", default_value_t = 1_000_000)]
    pub iters: u64,
    #[arg(long, env = "L2S_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, env = "L2S_OUT")]
    pub out: PathBuf,
    /// Error curve CSV `iteration,rse,root_sum_sq`.
    #[arg(long, env = "L2S_ERRCURVE")]
    pub errcurve: Option<PathBuf>,
    #[arg(long, env = "L2S_CURVE_EVERY", default_value_t = 10_000)]
    pub curve_every: u64,
    /// Distance cache CSV `id1,id2,num,den`: read when present, then
    /// rewritten with every pair this grouping needs.
    #[arg(long, env = "L2S_DIST_CACHE")]
    pub dist_cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(env = "L2S_MODEL")]
    pub model: PathBuf,
    /// Lattice and grouping the model was built from; they supply the true
    /// group distances used for shading.
    #[arg(long, env = "L2S_LATTICE")]
    pub lattice: PathBuf,
    #[arg(long, env = "L2S_GROUPING")]
    pub grouping: PathBuf,
    #[arg(long, env = "L2S_MODE", default_value = "close")]
    pub mode: String,
    /// Defaults to 0.05 in close mode and 0.95 in far mode.
    #[arg(long, env = "L2S_THRESHOLD")]
    pub threshold: Option<f64>,
    #[arg(long, env = "L2S_SVG")]
    pub svg: Option<PathBuf>,
    #[arg(long, env = "L2S_CSV")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(env = "L2S_LATTICE")]
    pub lattice: PathBuf,
    #[arg(env = "L2S_GROUPING")]
    pub grouping: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "L2S_PORT", default_value_t = 8080)]
    pub port: u16,
    #[arg(long, env = "L2S_HOST", default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
    #[arg(long, env = "L2S_LATTICE")]
    pub lattice: PathBuf,
    #[arg(long, env = "L2S_GROUPING")]
    pub grouping: Option<PathBuf>,
    #[arg(long, env = "L2S_MODEL")]
    pub model: Option<PathBuf>,
    /// The gSpan file the lattice was mined from.
    #[arg(long, env = "L2S_GRAPHS")]
    pub graphs: Option<PathBuf>,
    /// Directory of web UI assets served at `/`.
    #[arg(long, env = "L2S_ASSETS")]
    pub assets: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Incoherent(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Format { .. } | CliError::Incoherent(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Format { .. } | CliError::Incoherent(_) => "format",
            CliError::Io { .. } => "io",
        }
    }

    /// Single-line JSON report.
    pub fn to_json_line(&self) -> String {
        let mut v = json!({ "error": self.kind(), "code": self.exit_code(), "message": self.to_string() });
        if let CliError::Format { path, .. } | CliError::Io { path, .. } = self {
            v["path"] = json!(path.display().to_string());
        }
        v.to_string()
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io { path: path.into(), source })
}

fn parse_file<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    parse(&read_text(path)?).map_err(|source| CliError::Format { path: path.into(), source })
}

pub fn load_lattice(path: &Path) -> Result<Lattice, CliError> {
    parse_file(path, lattice_json::parse)
}

pub fn load_graphs(path: &Path) -> Result<GraphDatabase, CliError> {
    parse_file(path, gspan::parse)
}

pub fn load_model(path: &Path) -> Result<EmbeddingModel, CliError> {
    parse_file(path, model_json::parse)
}

/// Parses a grouping and checks it partitions `lattice`.
pub fn load_grouping(path: &Path, lattice: &Lattice) -> Result<Grouping, CliError> {
    let g = parse_file(path, grouping_json::parse)?;
    g.validate(lattice).map_err(|e| CliError::Format { path: path.into(), source: e.into() })?;
    Ok(g)
}

fn unit_interval(name: &str, v: f64) -> Result<(), CliError> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} {v} outside [0, 1]")))
    }
}

/// Runs one command; on success returns the JSON summary line for stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Mine(a) => cmd_mine(a),
        Command::Group(a) => cmd_group(a),
        Command::Embed(a) => cmd_embed(a),
        Command::Render(a) => cmd_render(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Serve(a) => cmd_serve(a),
    }
}

pub fn cmd_mine(a: MineArgs) -> Result<String, CliError> {
    if a.minsupp == 0 {
        return Err(CliError::Usage("--minsupp must be at least 1".into()));
    }
    let db = load_graphs(&a.input)?;
    let lattice = mine(&db, a.minsupp).map_err(|e| CliError::Format { path: a.input.clone(), source: e.into() })?;
    write_file(&a.out, lattice_json::to_string(&lattice))?;
    if let Some(path) = &a.store {
        write_file(path, store::write(&StoreFile::from_lattice(&lattice)))?;
    }
    Ok(json!({ "command": "mine", "transactions": db.len(), "patterns": lattice.len(), "edges": lattice.edges().len() })
        .to_string())
}

pub fn cmd_group(a: GroupArgs) -> Result<String, CliError> {
    check_maxdist(a.maxdist).map_err(|e| CliError::Usage(format!("--maxdist: {e}")))?;
    let lattice = load_lattice(&a.lattice)?;
    let grouping = pregroup(&lattice, a.maxdist).map_err(|e| CliError::Usage(e.to_string()))?;
    write_file(&a.out, grouping_json::to_string(&grouping))?;
    Ok(json!({ "command": "group", "patterns": lattice.len(), "groups": grouping.len() }).to_string())
}

pub fn cmd_embed(a: EmbedArgs) -> Result<String, CliError> {
    unit_interval("alpha", a.alpha)?;
    if a.curve_every == 0 {
        return Err(CliError::Usage("--curve-every must be at least 1".into()));
    }
    let lattice = load_lattice(&a.lattice)?;
    let grouping = load_grouping(&a.grouping, &lattice)?;
    let cache = match &a.dist_cache {
        Some(p) if p.exists() => parse_file(p, tables::parse_distances)?,
        _ => Vec::new(),
    };
    let (targets, rows) = group_targets(&lattice, &grouping, &cache)
        .map_err(|source| CliError::Format { path: a.grouping.clone(), source })?;
    let model = init(grouping.len(), a.seed, a.alpha, grouping.maxdist);
    let (model, curve) = embed_with_curve(model, a.iters, a.curve_every, &targets);
    write_file(&a.out, model_json::to_string(&model))?;
    if let Some(p) = &a.errcurve {
        write_file(p, tables::write_curve(&curve))?;
    }
    if let Some(p) = &a.dist_cache {
        write_file(p, tables::write_distances(&rows))?;
    }
    let (first, last) = (curve[0], curve[curve.len() - 1]);
    Ok(json!({ "command": "embed", "groups": model.len(), "iterations": model.iterations,
               "rse_initial": first.rse, "rse_final": last.rse })
    .to_string())
}

pub fn cmd_render(a: RenderArgs) -> Result<String, CliError> {
    let mode: RenderMode = a.mode.parse().map_err(|e: latclust_core::render::RenderError| CliError::Usage(e.to_string()))?;
    let threshold = a.threshold.unwrap_or(match mode {
        RenderMode::Close => 0.05,
        RenderMode::Far => 0.95,
    });
    if !threshold.is_finite() || threshold < 0.0 {
        return Err(CliError::Usage(format!("--threshold {threshold} must be finite and non-negative")));
    }
    let model = load_model(&a.model)?;
    let lattice = load_lattice(&a.lattice)?;
    let grouping = load_grouping(&a.grouping, &lattice)?;
    if model.len() != grouping.len() {
        return Err(CliError::Incoherent(format!(
            "model has {} points but the grouping has {} groups",
            model.len(),
            grouping.len()
        )));
    }
    let (targets, _) =
        group_targets(&lattice, &grouping, &[]).map_err(|source| CliError::Format { path: a.grouping.clone(), source })?;
    let render = edges_at_threshold(&model, &targets, mode, threshold)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(p) = &a.svg {
        write_file(p, render_svg(&render, &model))?;
    }
    if let Some(p) = &a.csv {
        write_file(p, export_csv(&render))?;
    }
    Ok(json!({ "command": "render", "mode": mode.as_str(), "threshold": threshold, "edges": render.edges.len() })
        .to_string())
}

pub fn cmd_stats(a: StatsArgs) -> Result<String, CliError> {
    let lattice = load_lattice(&a.lattice)?;
    let grouping = load_grouping(&a.grouping, &lattice)?;
    let stats =
        access_stats(&lattice, &grouping).map_err(|source| CliError::Format { path: a.grouping.clone(), source })?;
    Ok(serde_json::to_string(&stats).expect("stats serialize"))
}

pub fn cmd_serve(a: ServeArgs) -> Result<String, CliError> {
    let state = service::AppState::load(&a.lattice, a.grouping.as_deref(), a.model.as_deref(), a.graphs.as_deref())?;
    let addr = SocketAddr::new(a.host, a.port);
    let rt = tokio::runtime::Runtime::new().map_err(|source| CliError::Io { path: "<runtime>".into(), source })?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|source| CliError::Io { path: addr.to_string().into(), source })?;
        eprintln!("{}", json!({ "listening": addr.to_string() }));
        axum::serve(listener, service::router(state, a.assets.as_deref()))
            .await
            .map_err(|source| CliError::Io { path: addr.to_string().into(), source })
    })?;
    Ok(json!({ "command": "serve" }).to_string())
}

/// Parses `args`, runs the command and reports; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{}", CliError::Usage(first.trim_start_matches("error: ").into()).to_json_line());
            return 2;
        }
    };
    match run(cli) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_are_code_two() {
        assert_eq!(main_with_args(["latclust", "group", "x.json", "--maxdist", "1.5", "--out", "g.json"]), 2);
        assert_eq!(main_with_args(["latclust", "frobnicate"]), 2);
        assert_eq!(main_with_args(["latclust", "mine", "in.g", "--minsupp", "0", "--out", "o.json"]), 2);
    }

    #[test]
    fn missing_input_is_code_four() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("l.json");
        let input = dir.path().join("absent.g");
        assert_eq!(
            main_with_args(["latclust", "mine", input.to_str().unwrap(), "--minsupp", "1", "--out", out.to_str().unwrap()]),
            4
        );
    }

    #[test]
    fn error_lines_are_single_line_json() {
        let e = CliError::Usage("bad\nvalue".into());
        let line = e.to_json_line();
        assert!(!line.contains('\n'));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["code"], 2);
        assert_eq!(v["error"], "usage");
    }
}
