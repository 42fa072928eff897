//! Command-line front end.
//!
//! ```text
//! tscale <measure|simulate|certify|pinning|reproduce> --config <path> --out <dir>
//!        [--format csv|json] [--seed N]
//! ```
//!
//! Exit codes: 0 success (including a computed "fails" verdict), 1 I/O,
//! 2 config schema, 3 math domain, 4 embedded assertion, 5 blow-up.

mod reproduce;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::certificates::{
    check_contraction, check_dense_scattered, check_pinning, check_siqr_conditions,
    check_uniform_exp_stability, reproduction_number, CertificateReport, StateBox,
};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::measures::{matrix_measure, MeasureKind};
use crate::models::{
    choose_pinned, example1_matrix, example2_matrix, siqr_field, watts_strogatz, NetworkSpec,
    OpinionParams, SIQRParams,
};
use crate::solver::{fmt_f64, integrate, FnField, LinearSystem, Trajectory, VectorField};
use crate::timescale::{TimeScale, TimeScaleSpec, DEFAULT_DENSE_STEP};

pub use reproduce::Experiment;

#[derive(Debug, Parser)]
#[command(name = "tscale", version, about = "Matrix measures and stability certificates on time scales")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate m(A, μ) for a matrix.
    Measure(CommonArgs),
    /// Integrate a system on a time scale.
    Simulate(CommonArgs),
    /// Evaluate a stability or contraction condition.
    Certify(CommonArgs),
    /// Check pinning synchronizability of an opinion network.
    Pinning(CommonArgs),
    /// Re-run one of the bundled experiments.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// Optional overrides; the experiment defaults apply otherwise.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Operational failure mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("i/o error: {0}")]
    Io(String),
    #[error("config error: {0}")]
    Schema(String),
    #[error("math domain error: {0}")]
    Math(Error),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("state blew up at t = {0}")]
    BlowUp(f64),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Schema(_) => 2,
            CliError::Math(_) => 3,
            CliError::Assertion(_) => 4,
            CliError::BlowUp(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BlowUp { t } => CliError::BlowUp(t),
            Error::InvalidSpec(_)
            | Error::InvalidParameter(_)
            | Error::DimensionMismatch { .. }
            | Error::NonSquare { .. }
            | Error::EmptyBox => CliError::Schema(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Measure(a) => cmd_measure(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Pinning(a) => cmd_pinning(a),
        Command::Reproduce(a) => reproduce::cmd_reproduce(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("tscale: {e}");
            e.exit_code()
        }
    }
}

fn read_config<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

/// Collects output files and writes them atomically once everything succeeded.
pub(crate) struct Outputs {
    dir: PathBuf,
    files: Vec<(String, String)>,
}

impl Outputs {
    pub(crate) fn new(dir: &Path) -> Self {
        Outputs {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    pub(crate) fn add(&mut self, name: impl Into<String>, content: String) {
        self.files.push((name.into(), content));
    }

    pub(crate) fn add_json<T: Serialize>(&mut self, name: impl Into<String>, value: &T) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.add(name, text);
        Ok(())
    }

    pub(crate) fn commit(self) -> CliResult<()> {
        fs::create_dir_all(&self.dir)?;
        for (name, content) in self.files {
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            tmp.write_all(content.as_bytes())?;
            tmp.persist(self.dir.join(&name)).map_err(|e| CliError::Io(e.to_string()))?;
        }
        Ok(())
    }
}

/// Matrix-valued system description shared by several commands.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemConfig {
    /// Constant `A` with optional constant forcing `g`.
    Linear {
        a: Matrix,
        #[serde(default)]
        g: Option<Vec<f64>>,
    },
    Example1,
    Example2,
    Siqr { params: SIQRParams },
    /// Scalar node dynamics `−d x + S(x)`.
    Opinion { params: OpinionParams },
}

impl SystemConfig {
    fn field(&self) -> CliResult<Box<dyn VectorField>> {
        Ok(match self {
            SystemConfig::Linear { a, g } => {
                let sys = LinearSystem::constant(a.clone())?;
                match g {
                    Some(g) => {
                        if g.len() != a.rows() {
                            return Err(CliError::Schema(format!(
                                "system.g has length {}, expected {}",
                                g.len(),
                                a.rows()
                            )));
                        }
                        let g = g.clone();
                        let bar = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                        Box::new(sys.with_forcing(move |_| g.clone(), bar))
                    }
                    None => Box::new(sys),
                }
            }
            SystemConfig::Example1 => Box::new(LinearSystem::time_varying(2, example1_matrix)),
            SystemConfig::Example2 => Box::new(LinearSystem::constant(example2_matrix())?),
            SystemConfig::Siqr { params } => Box::new(siqr_field(params)?),
            SystemConfig::Opinion { params } => {
                params.validate()?;
                Box::new(params.node_field())
            }
        })
    }

    fn coefficient(&self) -> CliResult<Box<dyn Fn(f64) -> Matrix>> {
        match self {
            SystemConfig::Linear { a, .. } => {
                a.ensure_square()?;
                let a = a.clone();
                Ok(Box::new(move |_| a.clone()))
            }
            SystemConfig::Example1 => Ok(Box::new(example1_matrix)),
            SystemConfig::Example2 => Ok(Box::new(|_| example2_matrix())),
            _ => Err(CliError::Schema(
                "system: this check needs a linear system (linear, example1, example2)".into(),
            )),
        }
    }
}

fn build_timescale(spec: &TimeScaleSpec, seed: Option<u64>) -> CliResult<TimeScale> {
    let spec = match seed {
        Some(s) => spec.clone().with_seed(s),
        None => spec.clone(),
    };
    Ok(spec.build()?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureConfig {
    matrix: Matrix,
    #[serde(default)]
    mu: Option<Vec<f64>>,
    #[serde(default)]
    timescale: Option<TimeScaleSpec>,
    #[serde(default = "default_kind")]
    kind: MeasureKind,
}

fn default_kind() -> MeasureKind {
    MeasureKind::two()
}

fn default_step() -> f64 {
    DEFAULT_DENSE_STEP
}

fn cmd_measure(args: &CommonArgs) -> CliResult<()> {
    let cfg: MeasureConfig = read_config(&args.config)?;
    cfg.matrix.ensure_square()?;
    let mus = match (&cfg.mu, &cfg.timescale) {
        (Some(m), None) => m.clone(),
        (None, Some(ts)) => build_timescale(ts, args.seed)?.distinct_mu(),
        _ => {
            return Err(CliError::Schema(
                "measure: give exactly one of `mu` or `timescale`".into(),
            ))
        }
    };
    if let Some(bad) = mus.iter().find(|m| !(**m >= 0.0 && m.is_finite())) {
        return Err(CliError::Schema(format!("mu: {bad} is not a nonnegative graininess")));
    }
    let rows = mus
        .iter()
        .map(|&mu| Ok((mu, matrix_measure(&cfg.matrix, mu, &cfg.kind)?)))
        .collect::<CliResult<Vec<(f64, f64)>>>()?;
    println!("{:>24} {:>24}", "mu", "m");
    for (mu, m) in &rows {
        println!("{mu:>24} {m:>24}");
    }
    let mut out = Outputs::new(&args.out);
    match args.format {
        Format::Csv => out.add("measure.csv", measure_csv(&rows)),
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(mu, m)| serde_json::json!({"mu": mu, "m": m}))
                .collect();
            out.add_json("measure.json", &v)?;
        }
    }
    out.commit()
}

pub(crate) fn measure_csv(rows: &[(f64, f64)]) -> String {
    let mut s = String::from("mu,m\n");
    for (mu, m) in rows {
        let _ = writeln!(s, "{},{}", fmt_f64(*mu), fmt_f64(*m));
    }
    s
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateConfig {
    timescale: TimeScaleSpec,
    system: SystemConfig,
    #[serde(default)]
    t0: f64,
    t_end: f64,
    x0: Vec<f64>,
    #[serde(default = "default_step")]
    dense_step: f64,
}

fn cmd_simulate(args: &CommonArgs) -> CliResult<()> {
    let cfg: SimulateConfig = read_config(&args.config)?;
    let ts = build_timescale(&cfg.timescale, args.seed)?;
    let field = cfg.system.field()?;
    let traj = integrate(&ts, field.as_ref(), cfg.t0, &cfg.x0, cfg.t_end, cfg.dense_step)?;
    let mut out = Outputs::new(&args.out);
    write_trajectory(&mut out, "trajectory", &traj, args.format)?;
    out.commit()
}

pub(crate) fn write_trajectory(out: &mut Outputs, stem: &str, traj: &Trajectory, format: Format) -> CliResult<()> {
    match format {
        Format::Csv => {
            out.add(format!("{stem}.csv"), traj.to_csv());
            Ok(())
        }
        Format::Json => out.add_json(format!("{stem}.json"), traj),
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
enum CertifyConfig {
    UniformExpStability {
        timescale: TimeScaleSpec,
        system: SystemConfig,
        #[serde(default = "default_kind")]
        kind: MeasureKind,
        #[serde(default)]
        t0: Option<f64>,
        #[serde(default)]
        t_end: Option<f64>,
        #[serde(default = "default_step")]
        dense_step: f64,
    },
    DenseScattered {
        timescale: TimeScaleSpec,
        system: SystemConfig,
        #[serde(default = "default_kind")]
        kind: MeasureKind,
        #[serde(default)]
        t0: f64,
        horizon: f64,
        #[serde(default = "default_step")]
        dense_step: f64,
    },
    Contraction {
        system: SystemConfig,
        #[serde(rename = "box")]
        state_box: StateBox,
        #[serde(default)]
        mu_values: Option<Vec<f64>>,
        #[serde(default)]
        timescale: Option<TimeScaleSpec>,
        #[serde(default = "default_kind")]
        kind: MeasureKind,
    },
    Siqr {
        params: SIQRParams,
        timescale: TimeScaleSpec,
        #[serde(default)]
        t0: f64,
        c0: f64,
        #[serde(default)]
        population: Option<f64>,
    },
}

fn cmd_certify(args: &CommonArgs) -> CliResult<()> {
    let cfg: CertifyConfig = read_config(&args.config)?;
    let report = match cfg {
        CertifyConfig::UniformExpStability {
            timescale,
            system,
            kind,
            t0,
            t_end,
            dense_step,
        } => {
            let ts = build_timescale(&timescale, args.seed)?;
            let a = system.coefficient()?;
            let grid = ts.grid(t0.unwrap_or(ts.start()), t_end.unwrap_or(ts.end()), dense_step)?;
            check_uniform_exp_stability(&ts, a.as_ref(), &kind, &grid)?
        }
        CertifyConfig::DenseScattered {
            timescale,
            system,
            kind,
            t0,
            horizon,
            dense_step,
        } => {
            let ts = build_timescale(&timescale, args.seed)?;
            let a = system.coefficient()?;
            let grid = ts.grid(t0, horizon, dense_step)?;
            check_dense_scattered(&ts, a.as_ref(), &kind, t0, horizon, &grid)?
        }
        CertifyConfig::Contraction {
            system,
            state_box,
            mu_values,
            timescale,
            kind,
        } => {
            let mus = match (mu_values, timescale) {
                (Some(m), None) => m,
                (None, Some(ts)) => build_timescale(&ts, args.seed)?.distinct_mu(),
                _ => {
                    return Err(CliError::Schema(
                        "contraction: give exactly one of `mu_values` or `timescale`".into(),
                    ))
                }
            };
            let field = system.field()?;
            check_contraction(&mus, field.as_ref(), &state_box, &kind)?
        }
        CertifyConfig::Siqr {
            params,
            timescale,
            t0,
            c0,
            population,
        } => {
            let ts = build_timescale(&timescale, args.seed)?;
            let mut r = check_siqr_conditions(&params, &ts, t0, c0)?;
            if let Some(n) = population {
                let (r0, _) = reproduction_number(&params, n)?;
                r.set_constant("R0", r0);
            }
            r
        }
    };
    print_verdict(&report);
    let mut out = Outputs::new(&args.out);
    out.add_json("certificate.json", &report)?;
    out.commit()
}

fn print_verdict(r: &CertificateReport) {
    let mut line = format!("verdict: {:?}", r.verdict).to_lowercase();
    for (k, v) in &r.constants {
        let _ = write!(line, " {k}={v}");
    }
    println!("{line}");
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphConfig {
    Edges {
        n_nodes: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Whitespace-separated `u v` lines, relative to the config file.
    EdgeListFile { n_nodes: usize, path: PathBuf },
    WattsStrogatz {
        n: usize,
        mean_degree: usize,
        rewire_p: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PinnedConfig {
    Nodes(Vec<usize>),
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinningConfig {
    pub graph: GraphConfig,
    pub sigma: f64,
    pub sigma_r: f64,
    pub pinned: PinnedConfig,
    pub opinion: OpinionParams,
    #[serde(rename = "box")]
    pub state_box: StateBox,
    pub mu_values: Vec<f64>,
}

impl PinningConfig {
    /// Builds the network; `seed` overrides both the graph and pinning seeds.
    pub fn network(&self, base: &Path, seed: Option<u64>) -> CliResult<NetworkSpec> {
        let (n, edges) = match &self.graph {
            GraphConfig::Edges { n_nodes, edges } => (*n_nodes, edges.clone()),
            GraphConfig::EdgeListFile { n_nodes, path } => {
                let full = base.join(path);
                let text = fs::read_to_string(&full)
                    .map_err(|e| CliError::Io(format!("{}: {e}", full.display())))?;
                (*n_nodes, NetworkSpec::parse_edge_list(&text)?)
            }
            GraphConfig::WattsStrogatz {
                n,
                mean_degree,
                rewire_p,
                seed: s,
            } => (*n, watts_strogatz(*n, *mean_degree, *rewire_p, seed.unwrap_or(*s))?),
        };
        let pinned = match &self.pinned {
            PinnedConfig::Nodes(v) => v.clone(),
            PinnedConfig::Random { count, seed: s } => choose_pinned(n, *count, seed.unwrap_or(*s))?,
        };
        Ok(NetworkSpec::new(n, edges, self.sigma, self.sigma_r, pinned)?)
    }
}

fn cmd_pinning(args: &CommonArgs) -> CliResult<()> {
    let cfg: PinningConfig = read_config(&args.config)?;
    let base = args.config.parent().unwrap_or(Path::new("."));
    let net = cfg.network(base, args.seed)?;
    cfg.opinion.validate()?;
    let node: FnField = cfg.opinion.node_field();
    let report = check_pinning(&net, &node, &cfg.state_box, &cfg.mu_values)?;
    print_verdict(&report);
    let mut out = Outputs::new(&args.out);
    out.add_json("pinning.json", &report)?;
    out.commit()
}
