//! Thin command-line front end over the `hitemp` library: each subcommand
//! dispatches into `hitemp::lab` and writes its data files.
//!
//! Exit codes: 0 on success, 2 on validation errors, 3 on numeric failures.

use clap::{Parser, Subcommand, ValueEnum};
use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use hitemp::ensembles::Family;
use hitemp::lab::{
    self, LabError, RunConfig, TodaSampler,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    GaussianAlpha,
    LaguerreAlpha,
    JacobiAlpha,
    GaussianBeta,
    LaguerreBeta,
    JacobiBeta,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::GaussianAlpha => Family::GaussianAlpha,
            FamilyArg::LaguerreAlpha => Family::LaguerreAlpha,
            FamilyArg::JacobiAlpha => Family::JacobiAlpha,
            FamilyArg::GaussianBeta => Family::GaussianBeta,
            FamilyArg::LaguerreBeta => Family::LaguerreBeta,
            FamilyArg::JacobiBeta => Family::JacobiBeta,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SamplerArg {
    Approx,
    Constrained,
}

#[derive(Parser, Debug)]
#[command(name = "hitemp", about = "tridiagonal random-matrix laboratory")]
struct Cli {
    /// key = value configuration file (flags override file entries)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true)]
    family: Option<FamilyArg>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    gamma: Option<f64>,
    #[arg(long, global = true)]
    a: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    bins: Option<usize>,
    /// output path stem (writes <out>.csv and/or <out>.json)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<FormatArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pooled spectral histogram with the analytic DOS overlay and KS statistic
    SampleSpectra,
    /// Exact symbolic moment pairs (u, v) with Monte Carlo cross-checks
    MomentsTable {
        /// largest moment order
        #[arg(long, default_value_t = 6)]
        lmax: u32,
    },
    /// Fluctuation statistics of a polynomial linear statistic
    Fluctuations {
        /// coefficients of P, constant term first (e.g. -p 0 -p 0 -p 1 for x²)
        #[arg(short = 'p', long = "poly", required = true, num_args = 1..)]
        poly: Vec<f64>,
    },
    /// Sup-distance between the rescaled DOS and the arcsine limit per alpha
    LimitCheck {
        /// ascending list of alphas
        #[arg(long = "alphas", required = true, num_args = 1.., value_delimiter = ',')]
        alphas: Vec<f64>,
    },
    /// Pooled Toda Lax spectra vs the analytic mean density of states
    TodaDos {
        #[arg(long, default_value = "approx")]
        sampler: SamplerArg,
        /// post-burn-in pair moves per constrained-sampler trial
        #[arg(long, default_value_t = 0)]
        mcmc_budget: usize,
    },
}

fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>, LabError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = HashMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            LabError::Validation(format!("{}:{}: expected key = value", path.display(), ln + 1))
        })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn build_config(cli: &Cli) -> Result<RunConfig, LabError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let kv = parse_config_file(path)?;
        let get_f64 = |k: &str| -> Result<Option<f64>, LabError> {
            kv.get(k)
                .map(|v| v.parse::<f64>().map_err(|e| LabError::Validation(format!("{k}: {e}"))))
                .transpose()
        };
        if let Some(f) = kv.get("family") {
            cfg.family = match f.as_str() {
                "gaussian-alpha" => Family::GaussianAlpha,
                "laguerre-alpha" => Family::LaguerreAlpha,
                "jacobi-alpha" => Family::JacobiAlpha,
                "gaussian-beta" => Family::GaussianBeta,
                "laguerre-beta" => Family::LaguerreBeta,
                "jacobi-beta" => Family::JacobiBeta,
                other => return Err(LabError::Validation(format!("unknown family {other}"))),
            };
        }
        if let Some(v) = kv.get("n") {
            cfg.n = v.parse().map_err(|e| LabError::Validation(format!("n: {e}")))?;
        }
        if let Some(v) = kv.get("trials") {
            cfg.trials = v.parse().map_err(|e| LabError::Validation(format!("trials: {e}")))?;
        }
        if let Some(v) = kv.get("seed") {
            cfg.seed = v.parse().map_err(|e| LabError::Validation(format!("seed: {e}")))?;
        }
        if let Some(v) = kv.get("bins") {
            cfg.bins = v.parse().map_err(|e| LabError::Validation(format!("bins: {e}")))?;
        }
        if let Some(v) = get_f64("alpha")? {
            cfg.alpha = v;
        }
        if let Some(v) = get_f64("beta")? {
            cfg.beta = v;
        }
        if let Some(v) = get_f64("gamma")? {
            cfg.gamma = v;
        }
        if let Some(v) = get_f64("a")? {
            cfg.a = v;
        }
        if let Some(v) = get_f64("b")? {
            cfg.b = v;
        }
    }
    if let Some(f) = cli.family {
        cfg.family = f.into();
    }
    if let Some(v) = cli.n {
        cfg.n = v;
    }
    if let Some(v) = cli.trials {
        cfg.trials = v;
    }
    if let Some(v) = cli.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = cli.beta {
        cfg.beta = v;
    }
    if let Some(v) = cli.gamma {
        cfg.gamma = v;
    }
    if let Some(v) = cli.a {
        cfg.a = v;
    }
    if let Some(v) = cli.b {
        cfg.b = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.bins {
        cfg.bins = v;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), LabError> {
    let cfg = build_config(cli)?;
    let stem = cli.out.clone().unwrap_or_else(|| PathBuf::from("hitemp_out"));
    let format = cli.format.unwrap_or(FormatArg::Csv);
    match &cli.command {
        Command::SampleSpectra => {
            let out = lab::run_sample_spectra(&cfg)?;
            let csv_path = stem.with_extension("csv");
            let f = std::fs::File::create(&csv_path)?;
            lab::write_histogram_csv(std::io::BufWriter::new(f), &out.histogram, &out.overlay)?;
            lab::write_json(&stem.with_extension("json"), &out.report)?;
            println!(
                "sample-spectra: {} eigenvalues pooled, KS vs analytic DOS = {:.6}",
                out.report.pooled_points, out.report.ks_vs_dos
            );
            println!("wrote {} and {}", csv_path.display(), stem.with_extension("json").display());
        }
        Command::MomentsTable { lmax } => {
            let table = lab::run_moments_table(&cfg, *lmax)?;
            lab::write_json(&stem.with_extension("json"), &table)?;
            for row in &table.rows {
                println!(
                    "l = {:2}: v = {:+.6e}  u = {:+.6e}  mc = {:+.6e} ± {:.2e}  identity resid = {:.2e}",
                    row.l, row.v_value, row.u_value, row.mc_mean, row.mc_se, row.identity_residual
                );
            }
            println!("wrote {}", stem.with_extension("json").display());
        }
        Command::Fluctuations { poly } => {
            let rep = lab::run_fluctuations(&cfg, poly)?;
            lab::write_json(&stem.with_extension("json"), &rep)?;
            println!(
                "fluctuations: var = {:.4e}, skew = {:+.4}, excess kurtosis = {:+.4}, p = {:.3}, pass = {}",
                rep.variance, rep.skewness, rep.excess_kurtosis, rep.normality_p_value, rep.pass
            );
        }
        Command::LimitCheck { alphas } => {
            let rep = lab::run_limit_check(&cfg, alphas)?;
            lab::write_json(&stem.with_extension("json"), &rep)?;
            for row in &rep.rows {
                println!("alpha = {:8.2}: sup distance to arcsine = {:.5}", row.alpha, row.sup_distance);
            }
            println!("monotone decreasing: {}", rep.monotone_decreasing);
        }
        Command::TodaDos { sampler, mcmc_budget } => {
            let s = match sampler {
                SamplerArg::Approx => TodaSampler::Approximate,
                SamplerArg::Constrained => TodaSampler::Constrained,
            };
            let out = lab::run_toda_dos(&cfg, s, *mcmc_budget)?;
            let csv_path = stem.with_extension("csv");
            let f = std::fs::File::create(&csv_path)?;
            lab::write_histogram_csv(std::io::BufWriter::new(f), &out.histogram, &out.overlay)?;
            lab::write_json(&stem.with_extension("json"), &out.report)?;
            println!(
                "toda-dos: theta = {:.12} (residual {:.2e}), KS vs analytic = {:.6}",
                out.report.theta, out.report.theta_residual, out.report.ks_vs_dos
            );
        }
    }
    let _ = format;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
