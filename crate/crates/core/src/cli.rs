//! Experiment runner behind the `alpha-bridge` binary.
//!
//! A run is described by a flat [`RunConfig`]. Values come from defaults, then
//! an optional JSON config file, then command-line flags. Each run writes one
//! artifact to `out_path` and a manifest to `<out_path>.manifest.json`; the
//! manifest is itself a valid config file.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bridge_sim::{BridgeParams, GridScheme, GridSpec, PathPlan, TimeGrid};
use crate::chaos_kernels::{asymptotic_report, EvalPoint, KernelReport, PsiVariant};
use crate::error::Error;
use crate::mc_clt::{clt_experiment, rate_scan, regime_check, CltConfig, ReplicaSums};
use crate::record::{num, opt, write_csv, FlatRecord};
use crate::rng::{StreamDomain, StreamFactory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One exact path per k
    Simulate,
    /// MLE per replica
    Estimate,
    /// Deterministic chaos quantities
    Kernels,
    /// Kolmogorov distance to N(0,1)
    Clt,
    /// Kolmogorov distance across several k
    Rate,
    /// Limit-law diagnostics for any alpha
    Regime,
}

impl Mode {
    fn needs_normal_regime(self) -> bool {
        matches!(self, Mode::Clt | Mode::Rate | Mode::Kernels)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub alpha: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    /// Windows `T - t = e^{-k}`.
    pub k_list: Vec<f64>,
    pub n_paths: usize,
    pub grid_n: usize,
    pub grid_scheme: GridScheme,
    pub seed: u64,
    pub workers: usize,
    pub out_path: PathBuf,
    pub format: Format,
    pub delta: f64,
    pub psi_variant: PsiVariant,
}

/// Config-file contents: every key optional, no unknown keys.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub mode: Option<Mode>,
    pub alpha: Option<f64>,
    #[serde(rename = "T")]
    pub horizon: Option<f64>,
    pub k_list: Option<Vec<f64>>,
    pub n_paths: Option<usize>,
    pub grid_n: Option<usize>,
    pub grid_scheme: Option<GridScheme>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub delta: Option<f64>,
    pub psi_variant: Option<PsiVariant>,
}

impl PartialConfig {
    /// Values in `over` win.
    fn overlay(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            mode: over.mode.or(self.mode),
            alpha: over.alpha.or(self.alpha),
            horizon: over.horizon.or(self.horizon),
            k_list: over.k_list.or(self.k_list),
            n_paths: over.n_paths.or(self.n_paths),
            grid_n: over.grid_n.or(self.grid_n),
            grid_scheme: over.grid_scheme.or(self.grid_scheme),
            seed: over.seed.or(self.seed),
            workers: over.workers.or(self.workers),
            out_path: over.out_path.or(self.out_path),
            format: over.format.or(self.format),
            delta: over.delta.or(self.delta),
            psi_variant: over.psi_variant.or(self.psi_variant),
        }
    }

    /// Parse a config file. A run manifest is accepted too.
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        let value: Value = serde_json::from_str(text).map_err(|e| Failure::usage(format!("config file: {e}")))?;
        let value = match value {
            Value::Object(mut m) if m.contains_key("config") && m.contains_key("version") => {
                m.remove("config").unwrap()
            }
            other => other,
        };
        serde_json::from_value(value).map_err(|e| Failure::usage(format!("config file: {e}")))
    }

    fn resolve(self) -> Result<RunConfig, Failure> {
        let mode = self
            .mode
            .ok_or_else(|| Failure::usage("no mode given (simulate, estimate, kernels, clt, rate or regime)"))?;
        let alpha = self.alpha.ok_or_else(|| Failure::usage("missing --alpha"))?;
        let format = self.format.unwrap_or_default();
        let cfg = RunConfig {
            mode,
            alpha,
            horizon: self.horizon.unwrap_or(1.0),
            k_list: self.k_list.unwrap_or_else(|| vec![10.0]),
            n_paths: self.n_paths.unwrap_or(100_000),
            grid_n: self.grid_n.unwrap_or(2000),
            grid_scheme: self.grid_scheme.unwrap_or_default(),
            seed: self.seed.unwrap_or(1),
            workers: self
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            out_path: self
                .out_path
                .unwrap_or_else(|| PathBuf::from(format!("{}.{}", mode_name(mode), format.extension()))),
            format,
            delta: self.delta.unwrap_or(0.01),
            psi_variant: self.psi_variant.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn mode_name(mode: Mode) -> String {
    mode.to_possible_value()
        .map_or_else(String::new, |v| v.get_name().to_string())
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Failure> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Failure::usage(format!("alpha must be positive, got {}", self.alpha)));
        }
        if self.mode.needs_normal_regime() && self.alpha <= 0.5 {
            return Err(Failure::usage(format!(
                "mode {} requires alpha > 1/2, got alpha = {}",
                mode_name(self.mode),
                self.alpha
            )));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Failure::usage(format!("T must be positive, got {}", self.horizon)));
        }
        if self.k_list.is_empty() || self.k_list.iter().any(|k| !(*k > 0.0 && k.is_finite())) {
            return Err(Failure::usage("k values must be positive"));
        }
        if self.n_paths == 0 || self.grid_n == 0 || self.workers == 0 {
            return Err(Failure::usage("paths, grid-n and workers must be at least 1"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Failure::usage(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<BridgeParams, Failure> {
        Ok(BridgeParams::new(self.alpha, self.horizon)?)
    }

    pub fn clt_config(&self) -> Result<CltConfig, Failure> {
        Ok(CltConfig {
            params: self.params()?,
            n_paths: self.n_paths,
            grid: GridSpec {
                n: self.grid_n,
                scheme: self.grid_scheme,
            },
            seed: self.seed,
            workers: self.workers,
            delta: self.delta,
            psi_variant: self.psi_variant,
        })
    }

    /// Flags that reproduce this config when passed to [`parse_args`].
    pub fn to_args(&self) -> Vec<String> {
        let k = self.k_list.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        let pairs = [
            ("--alpha", self.alpha.to_string()),
            ("--T", self.horizon.to_string()),
            ("--k", k),
            ("--paths", self.n_paths.to_string()),
            ("--grid-n", self.grid_n.to_string()),
            ("--grid-scheme", self.grid_scheme.to_string()),
            ("--seed", self.seed.to_string()),
            ("--workers", self.workers.to_string()),
            ("--out", self.out_path.display().to_string()),
            (
                "--format",
                self.format.to_possible_value().unwrap().get_name().to_string(),
            ),
            ("--delta", self.delta.to_string()),
            ("--psi-variant", self.psi_variant.to_string()),
        ];
        let mut args = vec!["alpha-bridge".to_string(), mode_name(self.mode)];
        for (flag, value) in pairs {
            args.push(flag.to_string());
            args.push(value);
        }
        args
    }

    pub fn manifest_path(&self) -> PathBuf {
        let mut s = self.out_path.clone().into_os_string();
        s.push(".manifest.json");
        PathBuf::from(s)
    }
}

#[derive(Debug, Parser)]
#[command(name = "alpha-bridge", version, about = "Alpha-Brownian bridge experiments")]
struct Flags {
    #[arg(value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long = "T", value_name = "T")]
    horizon: Option<f64>,
    /// Comma-separated windows, T - t = e^-k
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    k: Option<Vec<f64>>,
    #[arg(long)]
    paths: Option<usize>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    grid_scheme: Option<GridScheme>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    psi_variant: Option<PsiVariant>,
    /// Flat JSON config file (or a run manifest)
    #[arg(long)]
    config: Option<PathBuf>,
}

impl From<Flags> for PartialConfig {
    fn from(f: Flags) -> Self {
        PartialConfig {
            mode: f.mode,
            alpha: f.alpha,
            horizon: f.horizon,
            k_list: f.k,
            n_paths: f.paths,
            grid_n: f.grid_n,
            grid_scheme: f.grid_scheme,
            seed: f.seed,
            workers: f.workers,
            out_path: f.out,
            format: f.format,
            delta: f.delta,
            psi_variant: f.psi_variant,
        }
    }
}

/// A failed parse or run with its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericalFailure { .. } | Error::DegeneratePath(_) => Failure::runtime(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

/// Resolve a config from command-line arguments (program name first).
pub fn parse_args<I, S>(args: I) -> Result<RunConfig, Failure>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let flags = Flags::try_parse_from(args).map_err(|e| Failure {
        code: e.exit_code(),
        message: e.render().to_string(),
    })?;
    let file = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
            PartialConfig::from_json(&text)?
        }
        None => PartialConfig::default(),
    };
    file.overlay(flags.into()).resolve()
}

pub fn usage() -> String {
    Flags::command().render_help().to_string()
}

#[derive(Serialize)]
struct Manifest<'a> {
    package: &'static str,
    version: &'static str,
    seed: u64,
    config: &'a RunConfig,
}

struct PathRow {
    k: f64,
    index: usize,
    t: f64,
    gap: f64,
    w: f64,
    y: f64,
    x: f64,
}

impl FlatRecord for PathRow {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("k", num(self.k)),
            ("index", Value::from(self.index)),
            ("t", num(self.t)),
            ("gap", num(self.gap)),
            ("w", num(self.w)),
            ("y", num(self.y)),
            ("x", num(self.x)),
        ]
    }
}

struct EstimateRow {
    k: f64,
    replica: usize,
    alpha_hat: f64,
    standardized: Option<f64>,
    chaos_numerator: Option<f64>,
    chaos_denominator: Option<f64>,
}

impl FlatRecord for EstimateRow {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("k", num(self.k)),
            ("replica", Value::from(self.replica)),
            ("alpha_hat", num(self.alpha_hat)),
            ("standardized", opt(self.standardized)),
            ("chaos_numerator", opt(self.chaos_numerator)),
            ("chaos_denominator", opt(self.chaos_denominator)),
        ]
    }
}

struct KernelRow {
    alpha: f64,
    horizon: f64,
    k: f64,
    report: KernelReport,
}

impl FlatRecord for KernelRow {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        let mut out = vec![("alpha", num(self.alpha)), ("T", num(self.horizon)), ("k", num(self.k))];
        out.extend(self.report.fields());
        out
    }
}

fn grid_for(cfg: &RunConfig, k: f64) -> Result<TimeGrid, Error> {
    TimeGrid::with_end_gap(cfg.horizon, (-k).exp(), cfg.grid_n, cfg.grid_scheme)
}

fn simulate_rows(cfg: &RunConfig) -> Result<Vec<PathRow>, Failure> {
    let params = cfg.params()?;
    let streams = StreamFactory::new(cfg.seed, StreamDomain::Paths);
    let mut rows = Vec::new();
    for &k in &cfg.k_list {
        let plan = PathPlan::new(params, grid_for(cfg, k)?)?;
        let path = plan.sample(&mut streams.stream(0))?;
        let (times, gaps) = (path.grid.times(), path.grid.gaps());
        for i in 0..path.grid.len() {
            rows.push(PathRow {
                k,
                index: i,
                t: times[i],
                gap: gaps[i],
                w: path.w[i],
                y: path.y[i],
                x: path.x[i],
            });
        }
    }
    Ok(rows)
}

fn estimate_rows(cfg: &RunConfig) -> Result<Vec<EstimateRow>, Failure> {
    let clt = cfg.clt_config()?;
    let normal = clt.params.require_normal_regime().is_ok();
    let mut rows = Vec::new();
    for &k in &cfg.k_list {
        let reps = ReplicaSums::simulate(&clt, k)?;
        let errors = reps.errors()?;
        let (z, dec) = if normal {
            (Some(reps.standardized()?), Some(reps.decompositions()?))
        } else {
            (None, None)
        };
        for (i, e) in errors.iter().enumerate() {
            rows.push(EstimateRow {
                k,
                replica: i,
                alpha_hat: cfg.alpha - e,
                standardized: z.as_ref().map(|z| z[i]),
                chaos_numerator: dec.as_ref().map(|d| d[i].chaos_numerator),
                chaos_denominator: dec.as_ref().map(|d| d[i].chaos_denominator),
            });
        }
    }
    Ok(rows)
}

fn kernel_rows(cfg: &RunConfig) -> Result<Vec<KernelRow>, Failure> {
    let params = cfg.params()?;
    cfg.k_list
        .iter()
        .map(|&k| {
            let point = EvalPoint::from_k(params, k)?;
            Ok(KernelRow {
                alpha: cfg.alpha,
                horizon: cfg.horizon,
                k,
                report: asymptotic_report(&point, cfg.psi_variant)?,
            })
        })
        .collect()
}

fn render<R: FlatRecord>(format: Format, rows: &[R]) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(&mut buf, rows)?,
        Format::Json => {
            let doc = Value::Array(rows.iter().map(|r| r.to_json()).collect());
            serde_json::to_writer_pretty(&mut buf, &doc).map_err(|e| Failure::runtime(e.to_string()))?;
            buf.push(b'\n');
        }
    }
    Ok(buf)
}

/// The artifact bytes of a run, without touching the filesystem.
pub fn render_artifact(cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    cfg.validate()?;
    match cfg.mode {
        Mode::Simulate => render(cfg.format, &simulate_rows(cfg)?),
        Mode::Estimate => render(cfg.format, &estimate_rows(cfg)?),
        Mode::Kernels => render(cfg.format, &kernel_rows(cfg)?),
        Mode::Clt => {
            let clt = cfg.clt_config()?;
            let rows = cfg
                .k_list
                .iter()
                .map(|&k| clt_experiment(&clt, k))
                .collect::<Result<Vec<_>, _>>()?;
            render(cfg.format, &rows)
        }
        Mode::Rate => render(cfg.format, &rate_scan(&cfg.clt_config()?, &cfg.k_list)?),
        Mode::Regime => {
            let clt = cfg.clt_config()?;
            let rows = cfg
                .k_list
                .iter()
                .map(|&k| regime_check(&clt, k))
                .collect::<Result<Vec<_>, _>>()?;
            render(cfg.format, &rows)
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure::runtime(format!("cannot write {}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(fail)?);
    w.write_all(bytes).map_err(fail)?;
    w.flush().map_err(fail)
}

/// Run `cfg`, writing the artifact and its manifest. Returns both paths.
pub fn run(cfg: &RunConfig) -> Result<(PathBuf, PathBuf), Failure> {
    let artifact = render_artifact(cfg)?;
    write_file(&cfg.out_path, &artifact)?;
    let manifest = Manifest {
        package: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        seed: cfg.seed,
        config: cfg,
    };
    let mut text = serde_json::to_vec_pretty(&manifest).map_err(|e| Failure::runtime(e.to_string()))?;
    text.push(b'\n');
    let manifest_path = cfg.manifest_path();
    write_file(&manifest_path, &text)?;
    Ok((cfg.out_path.clone(), manifest_path))
}

/// Parse, run and report. Returns the process exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<S> = args.into_iter().collect();
    if args.len() <= 1 {
        eprint!("{}", usage());
        return 2;
    }
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err(f) if f.code == 0 => {
            print!("{}", f.message);
            return 0;
        }
        Err(f) => {
            eprintln!("{}", f.message.trim_end());
            return f.code;
        }
    };
    match run(&cfg) {
        Ok((artifact, manifest)) => {
            eprintln!("wrote {} and {}", artifact.display(), manifest.display());
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(line: &str) -> Result<RunConfig, Failure> {
        parse_args(std::iter::once("alpha-bridge").chain(line.split_whitespace()))
    }

    #[test]
    fn rate_flags_map_directly() {
        let cfg = parse("rate --alpha 1 --k 6,10,14 --paths 100000 --seed 7").unwrap();
        assert_eq!(cfg.mode, Mode::Rate);
        assert_eq!(cfg.k_list, vec![6.0, 10.0, 14.0]);
        assert_eq!((cfg.alpha, cfg.n_paths, cfg.seed), (1.0, 100_000, 7));
        assert_eq!(
            (cfg.horizon, cfg.grid_n, cfg.grid_scheme),
            (1.0, 2000, GridScheme::Geometric)
        );
        assert_eq!(
            (cfg.delta, cfg.format, cfg.psi_variant),
            (0.01, Format::Csv, PsiVariant::Printed)
        );
        assert!(cfg.workers >= 1);
    }

    #[test]
    fn regime_gate_is_a_usage_error() {
        let err = parse("clt --alpha 0.4").unwrap_err();
        assert_eq!(err.code, 2);
        assert!(err.message.contains("alpha > 1/2"), "{}", err.message);
        assert_eq!(parse("rate --alpha 0.5").unwrap_err().code, 2);
        assert!(parse("regime --alpha 0.4").is_ok());
    }

    #[test]
    fn malformed_input_is_a_usage_error() {
        assert_eq!(parse("clt --alpha one").unwrap_err().code, 2);
        assert_eq!(parse("clt --alpha 1 --bogus 3").unwrap_err().code, 2);
        assert_eq!(parse("clt --alpha 1 --grid-scheme spiral").unwrap_err().code, 2);
        assert_eq!(parse("clt --alpha 1 --delta 2").unwrap_err().code, 2);
        assert_eq!(parse("--alpha 1").unwrap_err().code, 2);
        assert_eq!(main_with_args(["alpha-bridge"]), 2);
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"mode": "kernels", "alpha": 2, "k_list": [4], "seed": 3}"#).unwrap();
        let cfg = parse(&format!("--config {} --seed 9", path.display())).unwrap();
        assert_eq!((cfg.mode, cfg.alpha, cfg.seed), (Mode::Kernels, 2.0, 9));
        assert_eq!(cfg.k_list, vec![4.0]);
        std::fs::write(&path, r#"{"mode": "kernels", "alpha": 2, "colour": 1}"#).unwrap();
        assert_eq!(parse(&format!("--config {}", path.display())).unwrap_err().code, 2);
    }

    #[test]
    fn kernels_row_has_closed_forms() {
        let cfg = parse("kernels --alpha 1 --k 4").unwrap();
        let text = String::from_utf8(render_artifact(&cfg).unwrap()).unwrap();
        let mut lines = text.lines();
        let header: Vec<_> = lines.next().unwrap().split(',').collect();
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        let get = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
        assert_eq!(get("lambda"), 4.0);
        assert!((get("b") - 0.754_579).abs() < 1e-6);
        assert!((get("f_norm_sq") - 0.377_289).abs() < 1e-6);
    }

    #[test]
    fn unwritable_output_exits_one() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("missing").join("out.csv");
        let cfg = parse(&format!("kernels --alpha 1 --k 4 --out {}", out.display())).unwrap();
        assert_eq!(run(&cfg).unwrap_err().code, 1);
    }

    #[test]
    fn manifest_reproduces_run() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("est.json");
        let cfg = parse(&format!(
            "estimate --alpha 0.75 --k 3 --paths 20 --grid-n 50 --format json --out {}",
            out.display()
        ))
        .unwrap();
        let (artifact, manifest) = run(&cfg).unwrap();
        let first = std::fs::read(&artifact).unwrap();
        let again = parse(&format!("--config {}", manifest.display())).unwrap();
        assert_eq!(again, cfg);
        run(&again).unwrap();
        assert_eq!(std::fs::read(&artifact).unwrap(), first);
    }

    fn arb_config() -> impl Strategy<Value = RunConfig> {
        (
            prop_oneof![
                Just(Mode::Simulate),
                Just(Mode::Estimate),
                Just(Mode::Regime),
                Just(Mode::Clt)
            ],
            0.51f64..5.0,
            0.1f64..10.0,
            prop::collection::vec(0.1f64..20.0, 1..4),
            (
                1usize..1_000_000,
                1usize..10_000,
                any::<bool>(),
                any::<u64>(),
                1usize..64,
            ),
            (any::<bool>(), 0.001f64..0.5, any::<bool>(), "[a-z]{1,8}"),
        )
            .prop_map(
                |(mode, alpha, horizon, k_list, (n_paths, grid_n, geo, seed, workers), (json, delta, sq, name))| {
                    RunConfig {
                        mode,
                        alpha,
                        horizon,
                        k_list,
                        n_paths,
                        grid_n,
                        grid_scheme: if geo {
                            GridScheme::Geometric
                        } else {
                            GridScheme::Uniform
                        },
                        seed,
                        workers,
                        out_path: PathBuf::from(format!("{name}.out")),
                        format: if json { Format::Json } else { Format::Csv },
                        delta,
                        psi_variant: if sq { PsiVariant::Squared } else { PsiVariant::Printed },
                    }
                },
            )
    }

    proptest! {
        #[test]
        fn args_round_trip(cfg in arb_config()) {
            prop_assert_eq!(parse_args(cfg.to_args()).unwrap(), cfg);
        }

        #[test]
        fn json_round_trip(cfg in arb_config()) {
            let text = serde_json::to_string(&cfg).unwrap();
            prop_assert_eq!(PartialConfig::from_json(&text).unwrap().resolve().unwrap(), cfg);
        }
    }
}
