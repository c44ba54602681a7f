//! `p3wkb` — Stokes geometry, Voros coefficients, Borel sums and wall
//! crossings for Painlevé III (D6, D7) from the command line.
//!
//! Every result is one JSON object per line on stdout. Exit codes:
//! 0 success, 1 verification failure, 2 usage error, 3 unsupported case.

mod commands;
mod config;
mod verify;

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use p3wkb::C64;

use config::parse_complex;

#[derive(Parser, Debug)]
#[command(name = "p3wkb", version, about = "Exact WKB analysis of Painlevé III (D6, D7)")]
struct Cli {
    /// Flat `key = value` file supplying flags missing from the command line.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct EquationArgs {
    /// c∞ of the D6 equation.
    #[arg(long = "c-inf", value_parser = parse_complex, allow_hyphen_values = true)]
    pub c_inf: Option<C64>,
    /// c₀ of the D6 equation.
    #[arg(long = "c-0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub c_0: Option<C64>,
    /// Use the D7 equation instead.
    #[arg(long)]
    pub d7: bool,
    /// c of the D7 equation.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Option<C64>,
}

impl EquationArgs {
    fn equation(&self) -> anyhow::Result<Option<p3wkb::Equation>> {
        config::equation_from(self.c_inf, self.c_0, self.d7, self.c)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace the Stokes graph, report degenerations, optionally write SVG or JSON.
    Geometry {
        #[command(flatten)]
        eq: EquationArgs,
        /// Output file; the format follows the extension (.svg or .json).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Threshold for the degeneration tests.
        #[arg(long = "eps-deg")]
        eps_deg: Option<f64>,
    },
    /// Voros coefficients of an end point, e.g. `d6:inf3:+`.
    Voros {
        /// `d6|d7 : inf1..inf4|0cinf|0c0|0c : +|-`
        #[arg(long)]
        endpoint: String,
        /// Highest index n (coefficient of η^{1−2n}).
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Also integrate numerically (n ≤ 3) and compare.
        #[arg(long)]
        oracle: bool,
        /// Relative tolerance for the oracle comparison.
        #[arg(long = "voros-tol")]
        voros_tol: Option<f64>,
        #[command(flatten)]
        eq: EquationArgs,
    },
    /// Lateral Borel sum of the block F or G at cη.
    Borel {
        #[arg(long)]
        kind: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: C64,
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        #[arg(long, allow_hyphen_values = true)]
        side: String,
        /// Also evaluate the Laplace integral of the Borel transform.
        #[arg(long)]
        oracle: bool,
        #[arg(long = "laplace-tol")]
        laplace_tol: Option<f64>,
    },
    /// Wall/chamber placement, jumping blocks and connection multipliers.
    Walls {
        #[arg(long = "c-inf", value_parser = parse_complex, allow_hyphen_values = true)]
        c_inf: C64,
        #[arg(long = "c-0", value_parser = parse_complex, allow_hyphen_values = true)]
        c_0: C64,
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        /// inside-triangle, outside-triangle, inside-loop or outside-loop.
        #[arg(long)]
        position: Option<String>,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "eta-order")]
        eta_order: Option<usize>,
        #[arg(long = "jet-order")]
        jet_order: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long = "voros-tol")]
        voros_tol: Option<f64>,
        #[arg(long = "laplace-tol")]
        laplace_tol: Option<f64>,
    },
}

/// An error carrying its exit code.
#[derive(Debug)]
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl Exit {
    pub fn usage(message: impl Into<String>) -> Self {
        Exit { code: 2, message: message.into() }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        Exit { code: 3, message: message.into() }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Exit { code: 1, message: message.into() }
    }
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(x) = e.downcast_ref::<Exit>() {
        return x.code;
    }
    match e.downcast_ref::<p3wkb::Error>() {
        Some(p3wkb::Error::Unsupported(_)) => 3,
        Some(p3wkb::Error::Domain(_) | p3wkb::Error::DegenerateParameters(_) | p3wkb::Error::Order(_)) => 2,
        _ => 1,
    }
}

/// Long flag names per subcommand, split into valued flags and switches.
fn flag_table() -> Vec<(String, BTreeSet<String>, BTreeSet<String>)> {
    Cli::command()
        .get_subcommands()
        .map(|sc| {
            let mut flags = BTreeSet::new();
            let mut switches = BTreeSet::new();
            for a in sc.get_arguments() {
                if let Some(l) = a.get_long() {
                    flags.insert(l.to_string());
                    if !a.get_action().takes_values() {
                        switches.insert(l.to_string());
                    }
                }
            }
            (sc.get_name().to_string(), flags, switches)
        })
        .collect()
}

fn argv_with_config() -> anyhow::Result<Vec<String>> {
    let argv: Vec<String> = std::env::args().collect();
    let Some(path) = config::config_path(&argv) else {
        return Ok(argv);
    };
    let entries = config::read_config_file(&path).map_err(|e| match e.downcast::<Exit>() {
        Ok(x) => anyhow::Error::new(x),
        Err(e) => anyhow::Error::new(Exit::usage(format!("{e:#}"))),
    })?;
    let table = flag_table();
    let all: BTreeSet<String> = table.iter().flat_map(|(_, f, _)| f.iter().cloned()).collect();
    let lookup = |name: &str| table.iter().find(|(n, _, _)| n == name).map(|(_, f, s)| (f.clone(), s.clone()));
    config::merge_config(argv, &entries, &lookup, &all)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut cfg = config::RunConfig::default();
    let set = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    match cli.command {
        Command::Geometry { eq, out, eps_deg } => {
            cfg.equation = eq.equation()?;
            cfg.out = out;
            set(&mut cfg.tolerances.eps_deg, eps_deg);
            commands::geometry(&cfg)
        }
        Command::Voros { endpoint, n, oracle, voros_tol, eq } => {
            cfg.equation = eq.equation()?;
            set(&mut cfg.tolerances.voros, voros_tol);
            commands::voros(&cfg, &endpoint, n, oracle)
        }
        Command::Borel { kind, c, eta, side, oracle, laplace_tol } => {
            cfg.eta = eta;
            set(&mut cfg.tolerances.laplace, laplace_tol);
            commands::borel(&cfg, &kind, c, &side, oracle)
        }
        Command::Walls { c_inf, c_0, eta, position } => {
            cfg.equation = config::equation_from(Some(c_inf), Some(c_0), false, None)?;
            cfg.eta = eta;
            commands::walls(&cfg, position.as_deref())
        }
        Command::Verify { suite, eta_order, jet_order, nmax, voros_tol, laplace_tol } => {
            cfg.orders.eta_order = eta_order.unwrap_or(cfg.orders.eta_order);
            cfg.orders.jet_order = jet_order.unwrap_or(cfg.orders.jet_order);
            cfg.orders.nmax = nmax.unwrap_or(cfg.orders.nmax);
            set(&mut cfg.tolerances.voros, voros_tol);
            set(&mut cfg.tolerances.laplace, laplace_tol);
            verify::run(&suite, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let argv = match argv_with_config() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
