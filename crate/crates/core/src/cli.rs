//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation or usage, 2 I/O or protocol,
//! 3 numeric domain.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use thiserror::Error;

use crate::certify::{
    certify, read_result, write_result, CertificationConfig, CertifiedSegmentation, CertifyError,
    Mode, ThresholdRule, ThresholdSchedule, TopClassSource,
};
use crate::experiment::{gridsearch, parse_grid, simulate, ExperimentError, SyntheticInstance};
use crate::hierarchy::{HierarchyError, HierarchyGraph};
use crate::metrics::{evaluate, CcigDenominator, GroundTruth, MetricsError};
use crate::sampler::{
    Handshake, ProcessSource, SampleError, SampleSource, StreamSource, SyntheticSpec,
};
use crate::stats::StatsError;

pub const THREADS_ENV: &str = "HIERCERT_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Certify(e) => Self::Certify(e),
            ExperimentError::Metrics(e) => Self::Metrics(e),
            ExperimentError::Sample(e) => Self::Sample(e),
            ExperimentError::Usage(m) => Self::Usage(m),
        }
    }
}

fn sample_code(e: &SampleError) -> i32 {
    match e {
        SampleError::BadSpec(_) | SampleError::LevelOutOfRange { .. } => 1,
        _ => 2,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Hierarchy(HierarchyError::Io { .. }) => 2,
            CliError::Hierarchy(_) => 1,
            CliError::Sample(e) => sample_code(e),
            CliError::Certify(e) => match e {
                CertifyError::Sample(s) => sample_code(s),
                CertifyError::Stats(StatsError::Domain(_)) | CertifyError::Domain(_) => 3,
                CertifyError::Io(_) | CertifyError::BadResultFile(_) => 2,
                CertifyError::NonDescendingThresholds(_)
                | CertifyError::Config(_)
                | CertifyError::DimMismatch { .. } => 1,
            },
            CliError::Metrics(e) => match e {
                MetricsError::Io(_) | MetricsError::Format(_) | MetricsError::Csv(_) => 2,
                _ => 1,
            },
            CliError::Io { .. } => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hiercert",
    version,
    about = "Hierarchical certification of segmentation models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a hierarchy file and print its structure.
    ValidateHierarchy {
        #[arg(value_name = "PATH", required_unless_present = "hierarchy")]
        path: Option<PathBuf>,
        #[arg(long)]
        hierarchy: Option<PathBuf>,
    },
    /// Certify one image and write an HCR1 result file.
    Certify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a result file against ground truth.
    Evaluate {
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        gt: PathBuf,
        #[arg(long)]
        hierarchy: PathBuf,
        #[arg(long, default_value_t = 10)]
        margin: usize,
        #[arg(long, default_value = "present")]
        ccig_denominator: CcigDenominator,
        /// JSON report path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-class CSV table.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Repeated synthetic trials: type-I error, monotonicity, level shares, curves.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Test sample counts for the CIG / abstain curves, e.g. "10,50,100".
        #[arg(long)]
        n_grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank threshold tuples by CIG.
    Gridsearch {
        #[command(flatten)]
        run: RunArgs,
        /// Tuples separated by `;`, values by `,`.
        #[arg(long)]
        grid: String,
        /// Ground truth; defaults to the synthetic spec's labels.
        #[arg(long)]
        gt: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub hierarchy: PathBuf,
    /// HCS1 sample stream file.
    #[arg(long, group = "src")]
    pub source: Option<PathBuf>,
    /// External model command speaking the handshake protocol.
    #[arg(long, group = "src")]
    pub model_cmd: Option<String>,
    /// Synthetic model spec file, or `demo`.
    #[arg(long, group = "src")]
    pub synthetic_spec: Option<String>,
    /// JSON config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n0: Option<usize>,
    /// Threshold tuple, e.g. "0.25,0,0" (either order).
    #[arg(long)]
    pub thresholds: Option<String>,
    #[arg(long, value_parser = ["adaptive", "flat", "fixed"])]
    pub mode: Option<String>,
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threshold_rule: Option<ThresholdRule>,
    /// counts | n0
    #[arg(long)]
    pub flat_topclass: Option<TopClassSource>,
}

/// Config file layout; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub sigma: Option<f64>,
    pub tau: Option<f64>,
    pub alpha: Option<f64>,
    pub n: Option<usize>,
    pub n0: Option<usize>,
    pub thresholds: Option<Vec<f64>>,
    pub mode: Option<String>,
    pub level: Option<usize>,
    pub seed: Option<u64>,
    pub threshold_rule: Option<ThresholdRule>,
    pub flat_topclass: Option<TopClassSource>,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl RunArgs {
    /// Merges flags over the config file over defaults.
    pub fn resolve(&self) -> Result<(CertificationConfig, u64), CliError> {
        let file: ConfigFile = match &self.config {
            Some(p) => serde_json::from_str(&read_file(p)?)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?,
            None => ConfigFile::default(),
        };
        let mut cfg = CertificationConfig::default();
        cfg.sigma = self.sigma.or(file.sigma).unwrap_or(cfg.sigma);
        cfg.tau = self.tau.or(file.tau).unwrap_or(cfg.tau);
        cfg.alpha = self.alpha.or(file.alpha).unwrap_or(cfg.alpha);
        cfg.n = self.n.or(file.n).unwrap_or(cfg.n);
        cfg.n0 = self.n0.or(file.n0).unwrap_or(cfg.n0);
        cfg.threshold_rule = self
            .threshold_rule
            .or(file.threshold_rule)
            .unwrap_or_default();
        cfg.flat_topclass = self
            .flat_topclass
            .or(file.flat_topclass)
            .unwrap_or_default();
        if let Some(t) = &self.thresholds {
            cfg.thresholds = ThresholdSchedule::parse(t)?;
        } else if let Some(t) = &file.thresholds {
            cfg.thresholds = ThresholdSchedule::canonicalize(t)?;
        }
        let level = self.level.or(file.level);
        cfg.mode = match self
            .mode
            .as_deref()
            .or(file.mode.as_deref())
            .unwrap_or("adaptive")
        {
            "adaptive" => Mode::Adaptive,
            "flat" => Mode::Flat,
            "fixed" => Mode::Fixed(
                level.ok_or_else(|| CliError::Usage("mode fixed needs --level".into()))?,
            ),
            other => return Err(CliError::Usage(format!("unknown mode `{other}`"))),
        };
        if level.is_some() && !matches!(cfg.mode, Mode::Fixed(_)) {
            return Err(CliError::Usage(
                "--level applies only to --mode fixed".into(),
            ));
        }
        cfg.validate()?;
        Ok((cfg, self.seed.or(file.seed).unwrap_or(0)))
    }

    fn source_count(&self) -> usize {
        self.source.is_some() as usize
            + self.model_cmd.is_some() as usize
            + self.synthetic_spec.is_some() as usize
    }

    /// Opens the configured sample source.
    pub fn open_source(
        &self,
        cfg: &CertificationConfig,
        seed: u64,
    ) -> Result<Box<dyn SampleSource>, CliError> {
        if self.source_count() != 1 {
            return Err(CliError::Usage(
                "give exactly one of --source, --model-cmd, --synthetic-spec".into(),
            ));
        }
        if let Some(path) = &self.source {
            return Ok(Box::new(StreamSource::open(path)?));
        }
        if let Some(cmd) = &self.model_cmd {
            let handshake = Handshake {
                n: cfg.n as u64,
                n0: cfg.n0 as u64,
                sigma: cfg.sigma,
                seed,
                mode: cfg.mode.name().to_string(),
            };
            return Ok(Box::new(ProcessSource::spawn(cmd, &handshake)?));
        }
        let spec = self.synthetic()?.expect("one source given");
        Ok(Box::new(crate::sampler::SyntheticModel::from_spec(
            &spec, seed,
        )?))
    }

    fn synthetic(&self) -> Result<Option<SyntheticSpec>, CliError> {
        self.synthetic_spec
            .as_ref()
            .map(|s| Ok(SyntheticSpec::load(s)?))
            .transpose()
    }
}

fn flags_line(cfg: &CertificationConfig) -> String {
    let orientation = match cfg.thresholds.orientation {
        crate::certify::Orientation::Descending => "descending",
        crate::certify::Orientation::Reversed => "reversed",
    };
    let rule = match cfg.threshold_rule {
        ThresholdRule::Finest => "finest",
        ThresholdRule::Argmin => "argmin",
    };
    let top = match cfg.flat_topclass {
        TopClassSource::Counts => "counts",
        TopClassSource::Selection => "n0",
    };
    format!(
        "thresholds {:?} (input {:?}, orientation {orientation}, level remap {:?}), threshold-rule {rule}, flat-topclass {top}",
        cfg.thresholds.values, cfg.thresholds.input, cfg.thresholds.level_remap
    )
}

fn print_summary(
    out: &mut impl Write,
    seg: &CertifiedSegmentation,
    hierarchy: &HierarchyGraph,
) -> std::io::Result<()> {
    let h = &seg.header;
    let n = h.components.max(1) as f64;
    writeln!(
        out,
        "mode: {}",
        match h.config.mode {
            Mode::Fixed(l) => format!("fixed level {l}"),
            m => m.name().to_string(),
        }
    )?;
    writeln!(out, "flags: {}", flags_line(&h.config))?;
    writeln!(out, "source: {}", h.source)?;
    writeln!(out, "seed: {}", h.seed)?;
    writeln!(out, "radius: {:.6}", h.radius)?;
    writeln!(
        out,
        "abstain: {} of {} ({:.2}%)",
        h.abstain_count,
        h.components,
        100.0 * h.abstain_count as f64 / n
    )?;
    writeln!(out, "level  certified%  abstain%")?;
    for lc in &h.level_counts {
        writeln!(
            out,
            "{:>5}  {:>10.2}  {:>8.2}",
            lc.level,
            100.0 * lc.certified as f64 / n,
            100.0 * lc.abstained as f64 / n
        )?;
    }
    if h.top_class_ties > 0 {
        writeln!(
            out,
            "note: {} top-class ties broken towards the smaller id",
            h.top_class_ties
        )?;
    }
    if hierarchy.level_count() > 0 && h.selection_from_labels {
        writeln!(
            out,
            "note: level selection used label frequencies (source has no posteriors)"
        )?;
    }
    Ok(())
}

fn emit_json(
    out: &Option<PathBuf>,
    value: &impl serde::Serialize,
    stdout: &mut impl Write,
) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    match out {
        Some(p) => write_file(p, text.as_bytes()),
        None => writeln!(stdout, "{text}").map_err(|source| CliError::Io {
            path: "stdout".into(),
            source,
        }),
    }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "stdout".into(),
        source,
    }
}

pub fn execute(cli: Cli, stdout: &mut impl Write, stderr: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::ValidateHierarchy { path, hierarchy } => {
            let path = path.or(hierarchy).expect("clap requires a path");
            let h = HierarchyGraph::from_path(&path)?;
            writeln!(stdout, "valid hierarchy: {}", path.display()).map_err(stdout_err)?;
            writeln!(stdout, "leaves: {}", h.leaf_count()).map_err(stdout_err)?;
            writeln!(stdout, "levels: {}", h.level_count()).map_err(stdout_err)?;
            let hist = h.generality_histogram();
            for (level, pop) in h.level_populations().iter().enumerate() {
                let g: Vec<String> = hist[level]
                    .iter()
                    .map(|(g, c)| format!("{g}:{c}"))
                    .collect();
                writeln!(
                    stdout,
                    "level {level}: {pop} vertices, generality {}",
                    g.join(" ")
                )
                .map_err(stdout_err)?;
            }
            for level in h.empty_levels() {
                writeln!(stderr, "warning: level {level} has no vertices").map_err(stdout_err)?;
            }
            Ok(())
        }
        Command::Certify { run, out } => {
            let (cfg, seed) = run.resolve()?;
            let h = HierarchyGraph::from_path(&run.hierarchy)?;
            let mut source = run.open_source(&cfg, seed)?;
            let seg = certify(source.as_mut(), &h, &cfg, seed)?;
            write_result(&out, &seg)?;
            print_summary(stdout, &seg, &h).map_err(stdout_err)?;
            writeln!(stdout, "wrote {}", out.display()).map_err(stdout_err)?;
            Ok(())
        }
        Command::Evaluate {
            result,
            gt,
            hierarchy,
            margin,
            ccig_denominator,
            out,
            csv,
        } => {
            let h = HierarchyGraph::from_path(&hierarchy)?;
            let seg = read_result(&result)?;
            let gt = GroundTruth::load(&gt)?;
            let report = evaluate(&seg, &gt, &h, margin, ccig_denominator)?;
            if let Some(p) = &csv {
                let mut buf = Vec::new();
                report.write_csv(&mut buf)?;
                write_file(p, &buf)?;
            }
            writeln!(
                stderr,
                "flags: {}, ccig-denominator {:?}",
                flags_line(&seg.header.config),
                ccig_denominator
            )
            .map_err(stdout_err)?;
            emit_json(&out, &report, stdout)
        }
        Command::Simulate {
            run,
            trials,
            n_grid,
            out,
        } => {
            let (cfg, seed) = run.resolve()?;
            let h = HierarchyGraph::from_path(&run.hierarchy)?;
            let spec = run
                .synthetic()?
                .ok_or_else(|| CliError::Usage("simulate needs --synthetic-spec".into()))?;
            let n_values = match &n_grid {
                Some(text) => text
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| CliError::Usage(format!("bad n `{s}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                None => Vec::new(),
            };
            let instance = SyntheticInstance::from_spec(&spec)?;
            let report = simulate(&instance, &h, &cfg, trials, &n_values, seed)?;
            writeln!(stderr, "flags: {}", flags_line(&cfg)).map_err(stdout_err)?;
            emit_json(&out, &report, stdout)
        }
        Command::Gridsearch { run, grid, gt, out } => {
            let (cfg, seed) = run.resolve()?;
            let grid = parse_grid(&grid)?;
            let h = HierarchyGraph::from_path(&run.hierarchy)?;
            let gt = match (&gt, run.synthetic()?) {
                (Some(p), _) => GroundTruth::load(p)?,
                (None, Some(spec)) => SyntheticInstance::from_spec(&spec)?.ground_truth,
                (None, None) => return Err(CliError::Usage("gridsearch needs --gt".into())),
            };
            if run.source_count() != 1 {
                return Err(CliError::Usage(
                    "give exactly one of --source, --model-cmd, --synthetic-spec".into(),
                ));
            }
            let mut open_err = None;
            let rows = gridsearch(
                || {
                    run.open_source(&cfg, seed).map_err(|e| {
                        let msg = e.to_string();
                        open_err = Some(e);
                        SampleError::BadSpec(msg)
                    })
                },
                &h,
                &cfg,
                &grid,
                &gt,
                seed,
            );
            if let Some(e) = open_err {
                return Err(e);
            }
            let rows = rows?;
            writeln!(stderr, "flags: {}", flags_line(&cfg)).map_err(stdout_err)?;
            emit_json(&out, &rows, stdout)
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(text) = std::env::var(THREADS_ENV) {
        let threads: usize = text.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{text}`"
            ))
        })?;
        // a pool set up earlier in the same process is kept
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr();
    let result = init_threads().and_then(|()| execute(cli, &mut stdout, &mut stderr));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
