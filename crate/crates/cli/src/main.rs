use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use urg_cli::{
    read_graph, read_pattern, run_distinguish_benchmark, run_generate, run_scaling, ExperimentConfig, VerdictJson,
    BUILD_ID,
};
use urg_subgraphs::degree_model::limiting_mean_degree;
use urg_subgraphs::distinguisher::{algorithm1, AlgorithmConfig};
use urg_subgraphs::limit_constants::{a_monte_carlo, a_truncated};
use urg_subgraphs::optimizer::optimize_grid;
use urg_subgraphs::scalar::parse_decimal_ratio;
use urg_subgraphs::{count_induced_exact, count_induced_windowed, optimize_partitions, DegreeWindow, Rational};

#[derive(Parser)]
#[command(name = "urgsub", version, about = "Induced subgraph experiments on power-law random graphs")]
struct Cli {
    /// Master seed; overrides the seed in a config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file, or directory for `generate`. Standard output when unset.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample graphs for every (n, trial) of a config.
    Generate(ConfigArg),
    /// Labeled induced counts of a pattern in one graph.
    Census {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Comma-separated degree exponents, one per pattern vertex.
        #[arg(long, value_delimiter = ',', requires = "epsilon")]
        alpha: Option<Vec<f64>>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Optimal degree placement and growth exponent of a pattern.
    Optimize {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        tau: String,
    },
    /// Empirical growth of pattern counts over the config's n grid.
    Scaling(ConfigArg),
    /// Run the distinguisher on one graph, or benchmark it from a config.
    Distinguish {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        graph: Option<PathBuf>,
        #[arg(long, required_unless_present = "config")]
        tau: Option<f64>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the limiting constant of a pattern.
    Aconst {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Mean degree; the limit of L_n / n for the quantile sequence when unset.
        #[arg(long)]
        mu: Option<f64>,
        /// Restrict the integral to [eps, 1/eps]^k.
        #[arg(long)]
        truncate: Option<f64>,
    },
}

#[derive(Args)]
struct ConfigArg {
    #[arg(long)]
    config: PathBuf,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    let seed = cli.seed;
    match &cli.command {
        Command::Generate(arg) => {
            let cfg = load_config(&arg.config, seed)?;
            let dir = cli.out.clone().or_else(|| cfg.output.clone()).context("generate needs --out or output")?;
            for path in run_generate(&cfg, &dir)? {
                println!("{}", path.display());
            }
        }
        Command::Census { graph, pattern, alpha, epsilon } => {
            let g = read_graph(graph)?;
            let p = read_pattern(pattern)?;
            let exact = count_induced_exact(&g, &p)?;
            let windowed = match (alpha, epsilon) {
                (Some(alpha), Some(eps)) => {
                    let w = DegreeWindow::new(alpha.clone(), *eps, g.mean_degree())?;
                    Some(count_induced_windowed(&g, &p, &w)?.labeled_count)
                }
                _ => None,
            };
            #[derive(Serialize)]
            struct Row {
                n: usize,
                k: usize,
                labeled_count: u64,
                occurrences: String,
                automorphisms: u64,
                windowed_count: Option<u64>,
                seed: u64,
                build: &'static str,
                config_hash: String,
            }
            let hash = args_hash(&("census", graph, pattern, alpha, epsilon));
            emit_csv(
                cli.out.as_deref(),
                &[Row {
                    n: g.n(),
                    k: p.k(),
                    labeled_count: exact.labeled_count,
                    occurrences: exact.orbit_count.to_string(),
                    automorphisms: p.automorphism_count(),
                    windowed_count: windowed,
                    seed: seed.unwrap_or(0),
                    build: BUILD_ID,
                    config_hash: hash,
                }],
            )?;
        }
        Command::Optimize { pattern, tau } => {
            let p = read_pattern(pattern)?;
            #[derive(Serialize)]
            struct Row {
                tau: String,
                k: usize,
                k1: usize,
                k2plus: usize,
                b: String,
                exponent: String,
                exponent_f64: f64,
                unique: bool,
                maximizers: usize,
                s1: String,
                s2: String,
                s3: String,
                grid_value: String,
                seed: u64,
                build: &'static str,
                config_hash: String,
            }
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let hash = args_hash(&("optimize", pattern, tau));
            let row = match parse_decimal_ratio(tau) {
                Some(t) if t > Rational::from_integer(2) && t < Rational::from_integer(3) => {
                    let res = optimize_partitions(&p, t);
                    let grid = optimize_grid(&p, t);
                    let best = res.best();
                    Row {
                        tau: t.to_string(),
                        k: p.k(),
                        k1: p.k1(),
                        k2plus: p.k2plus(),
                        b: res.b.to_string(),
                        exponent: res.exponent.to_string(),
                        exponent_f64: *res.exponent.numer() as f64 / *res.exponent.denom() as f64,
                        unique: res.unique,
                        maximizers: res.maximizers.len(),
                        s1: join(&best.s1),
                        s2: join(&best.s2),
                        s3: join(&best.s3),
                        grid_value: grid.value.to_string(),
                        seed: seed.unwrap_or(0),
                        build: BUILD_ID,
                        config_hash: hash,
                    }
                }
                _ => {
                    let t: f64 = tau.parse().with_context(|| format!("tau = {tau}"))?;
                    if !(t > 2.0 && t < 3.0) {
                        bail!("tau = {t} not in (2, 3)");
                    }
                    let res = optimize_partitions(&p, t);
                    let grid = optimize_grid(&p, t);
                    let best = res.best();
                    Row {
                        tau: t.to_string(),
                        k: p.k(),
                        k1: p.k1(),
                        k2plus: p.k2plus(),
                        b: res.b.to_string(),
                        exponent: res.exponent.to_string(),
                        exponent_f64: res.exponent,
                        unique: res.unique,
                        maximizers: res.maximizers.len(),
                        s1: join(&best.s1),
                        s2: join(&best.s2),
                        s3: join(&best.s3),
                        grid_value: grid.value.to_string(),
                        seed: seed.unwrap_or(0),
                        build: BUILD_ID,
                        config_hash: hash,
                    }
                }
            };
            emit_csv(cli.out.as_deref(), &[row])?;
        }
        Command::Scaling(arg) => {
            let cfg = load_config(&arg.config, seed)?;
            let report = run_scaling(&cfg)?;
            let out = cli.out.clone().or(cfg.output.clone());
            emit_pair(out.as_deref(), "summary", &report.rows_csv()?, &report.summary_csv()?)?;
        }
        Command::Distinguish { graph, tau, cap, epsilon, config } => {
            if let Some(path) = config {
                let cfg = load_config(path, seed)?;
                let report = run_distinguish_benchmark(&cfg)?;
                let out = cli.out.clone().or(cfg.output.clone());
                emit_pair(out.as_deref(), "rates", &report.verdicts_csv()?, &report.rates_csv()?)?;
            } else {
                let graph = graph.as_ref().expect("clap enforces --graph");
                let tau = tau.expect("clap enforces --tau");
                let g = read_graph(graph)?;
                let cfg = AlgorithmConfig {
                    epsilon_override: *epsilon,
                    attempt_cap: *cap,
                    ..AlgorithmConfig::new(tau, seed.unwrap_or(0))
                };
                let verdict = algorithm1(&g, &cfg)?;
                if verdict.windows_overlap {
                    eprintln!("warning: degree windows overlap; vertices assigned to the nearer window centre");
                }
                let text = serde_json::to_string_pretty(&VerdictJson::from(&verdict))? + "\n";
                emit(cli.out.as_deref(), &text)?;
            }
        }
        Command::Aconst { pattern, tau, c, samples, mu, truncate } => {
            let p = read_pattern(pattern)?;
            let mu = match mu {
                Some(m) => *m,
                None => limiting_mean_degree(*tau, *c)?,
            };
            let seed = seed.unwrap_or(0);
            let est = match truncate {
                Some(eps) => a_truncated(&p, *tau, *c, mu, *eps, *samples, seed)?,
                None => a_monte_carlo(&p, *tau, *c, mu, *samples, seed)?,
            };
            #[derive(Serialize)]
            struct Row {
                estimate: f64,
                stderr: f64,
                samples: u64,
                mu: f64,
                seed: u64,
                build: &'static str,
                config_hash: String,
            }
            let hash = args_hash(&("aconst", pattern, tau, c, samples, mu, truncate));
            emit_csv(
                cli.out.as_deref(),
                &[Row {
                    estimate: est.mean,
                    stderr: est.stderr,
                    samples: est.samples,
                    mu,
                    seed,
                    build: BUILD_ID,
                    config_hash: hash,
                }],
            )?;
        }
    }
    Ok(())
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn args_hash<T: Serialize>(args: &T) -> String {
    let text = serde_json::to_string(args).expect("arguments serialize");
    Sha256::digest(text.as_bytes())[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_csv<T: Serialize>(out: Option<&Path>, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    emit(out, &String::from_utf8(writer.into_inner()?)?)
}

/// Main table to `out`, secondary table to `out` with `.<suffix>.csv` added.
fn emit_pair(out: Option<&Path>, suffix: &str, main: &str, secondary: &str) -> Result<()> {
    match out {
        Some(path) => {
            emit(Some(path), main)?;
            let mut side = path.as_os_str().to_owned();
            side.push(format!(".{suffix}.csv"));
            emit(Some(Path::new(&side)), secondary)
        }
        None => emit(None, &format!("{main}\n{secondary}")),
    }
}
