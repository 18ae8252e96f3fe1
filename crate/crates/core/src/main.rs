use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jackweight::cli::{commands, run_check_suite, suite, write_file, ConfigLayer, Report, RunConfig, THREADS_ENV};
use jackweight::localseries::base_u_angle;
use jackweight::odeflow::flow_invariants;
use jackweight::{Error, Result};

/// Matrix weight functions on the torus for vector-valued nonsymmetric Jack polynomials.
#[derive(Parser)]
#[command(name = "jackweight", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Partition, e.g. 2,1
    #[arg(long, global = true, value_delimiter = ',')]
    tau: Option<Vec<usize>>,
    /// Coupling parameter, |kappa| < 1/2
    #[arg(long, global = true, allow_hyphen_values = true)]
    kappa: Option<f64>,
    /// Quadrature points per angle (coarse grid; the fine grid doubles it)
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Largest polynomial degree in Gram matrices and NSJP builds
    #[arg(long = "degree", global = true)]
    degree_cap: Option<i32>,
    #[arg(long, global = true)]
    flow_tol: Option<f64>,
    #[arg(long, global = true)]
    series_tol: Option<f64>,
    #[arg(long, global = true)]
    gram_tol: Option<f64>,
    /// Worker threads (JACKWEIGHT_THREADS takes precedence)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write the JSON report here
    #[arg(long, global = true)]
    out: Option<String>,
    /// JSON config file; its settings override flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Single-line JSON instead of indented
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Representation data: dimensions, form weights, Stembridge profile, generator matrices
    Repr,
    /// One nonsymmetric Jack polynomial
    Nsjp {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<i32>,
        #[arg(long, default_value_t = 0)]
        tableau: usize,
    },
    /// L(x) at a torus point given by its angles
    Flow {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        target: Vec<f64>,
    },
    /// Local expansion at the face x_{N-1} = x_N with base u = e^{i u_angle}
    Series {
        /// Defaults to the angle of u at the base point x0
        #[arg(long, allow_hyphen_values = true)]
        u_angle: Option<f64>,
        #[arg(long, default_value_t = 24)]
        terms: usize,
    },
    /// Solve for B1 and H
    SolveH,
    /// Gram matrix of nonsymmetric Jack polynomials
    Gram {
        /// Write the matrix as CSV with a header row of labels
        #[arg(long)]
        csv: Option<String>,
    },
    /// Fourier coefficients of K
    Fourier {
        /// Exponent with zero sum; repeat for several
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1, action = clap::ArgAction::Append)]
        alpha: Vec<i32>,
    },
    /// Property suites
    Check {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest sum of |alpha_j| for the Fourier recurrence
        #[arg(long, default_value_t = 2)]
        max_norm: i32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    FlowInvariants,
    Fcrec,
}

impl Common {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            tau: self.tau.clone(),
            kappa: self.kappa,
            points: self.points,
            degree_cap: self.degree_cap,
            flow_tol: self.flow_tol,
            series_tol: self.series_tol,
            gram_tol: self.gram_tol,
            threads: self.threads,
            seed: self.seed,
            json_out: self.out.clone(),
            csv_out: None,
        }
    }
}

fn emit<T: Serialize>(name: &str, cfg: &RunConfig, warnings: Vec<String>, compact: bool, result: T) -> Result<()> {
    let text = Report::new(name, cfg, warnings, result).to_json(compact)?;
    if let Some(p) = &cfg.json_out {
        write_file(p, &format!("{text}\n"))?;
    }
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io { path: "<stdout>".into(), source: e }),
        _ => Ok(()),
    }
}

fn n_of(cfg: &RunConfig) -> usize {
    cfg.tau.iter().sum()
}

fn run(cli: Cli) -> Result<u8> {
    let mut flags = cli.common.layer();
    if let Command::Gram { csv: Some(p) } = &cli.command {
        flags.csv_out = Some(p.clone());
    }
    let file = cli.common.config.as_deref().map(ConfigLayer::from_file).transpose()?;
    let env = std::env::var(THREADS_ENV).ok();
    let cfg = RunConfig::resolve(&flags, file.as_ref(), env.as_deref())?;
    let warnings = cfg.validate()?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let compact = cli.common.json;
    cfg.install(|| -> Result<u8> {
        match cli.command {
            Command::Repr => emit("repr", &cfg, warnings, compact, commands::repr(&cfg)?)?,
            Command::Nsjp { alpha, tableau } => {
                emit("nsjp", &cfg, warnings, compact, commands::nsjp(&cfg, alpha, tableau)?)?
            }
            Command::Flow { target } => emit("flow", &cfg, warnings, compact, commands::flow(&cfg, target)?)?,
            Command::Series { u_angle, terms } => {
                emit("series", &cfg, warnings, compact, commands::series(&cfg, u_angle.unwrap_or_else(|| base_u_angle(n_of(&cfg))), terms)?)?
            }
            Command::SolveH => emit("solve-h", &cfg, warnings, compact, commands::solve(&cfg)?)?,
            Command::Gram { .. } => {
                let g = commands::gram(&cfg)?;
                if let Some(p) = &cfg.csv_out {
                    write_file(p, &g.to_csv())?;
                }
                emit("gram", &cfg, warnings, compact, g)?
            }
            Command::Fourier { alpha } => {
                let n = n_of(&cfg);
                let alphas: Vec<Vec<i32>> = alpha.chunks(n.max(1)).map(|c| c.to_vec()).collect();
                emit("fourier", &cfg, warnings, compact, commands::fourier(&cfg, &alphas)?)?
            }
            Command::Check { suite: which, max_norm } => {
                let report = match which {
                    Suite::All => run_check_suite(&cfg)?,
                    Suite::FlowInvariants => {
                        let ir = commands::irrep_of(&cfg)?;
                        let lines = flow_invariants(&ir, cfg.kappa, cfg.seed, &cfg.flow())?;
                        suite::finish(vec![suite::Section { name: "odeflow".into(), lines }], "")
                    }
                    Suite::Fcrec => {
                        let table = commands::fcrec_table(&cfg, max_norm)?;
                        let lines = table
                            .iter()
                            .map(|l| jackweight::odeflow::CheckLine {
                                name: format!("alpha={:?} i={}", l.alpha, l.i + 1),
                                value: l.residual,
                                threshold: 3.0 * l.error_estimate.max(jackweight::torusquad::FCREC_FLOOR),
                                pass: l.pass,
                            })
                            .collect();
                        suite::finish(vec![suite::Section { name: "fcrec".into(), lines }], "")
                    }
                };
                if let Some(f) = &report.first_failure {
                    eprintln!("FAIL {f}");
                }
                let code = report.exit_code() as u8;
                emit("check", &cfg, warnings, compact, report)?;
                return Ok(code);
            }
        }
        Ok(0)
    })?
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
