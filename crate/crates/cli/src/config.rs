//! Run configuration: complex literals, the flat key/value config file, and
//! the resolved settings every subcommand works from.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use p3wkb::{c64, Equation, Parameters, C64};

use crate::Exit;

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`; `j` is accepted for `i`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let num = |x: &str| x.parse::<f64>().map_err(|_| format!("bad complex literal '{s}'"));
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(c64(num(&t)?, 0.0));
    };
    // last sign that is not the sign of an exponent
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => num(x)?,
    };
    Ok(c64(re, im))
}

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!(Exit::usage(format!("{}:{}: expected key = value", path.display(), k + 1)));
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        out.push((key, value.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

/// Long flags a subcommand accepts, and which of them are switches.
pub type FlagSets = (BTreeSet<String>, BTreeSet<String>);

/// Splices config entries into `argv` right after the subcommand name.
/// Flags already on the command line win; keys the subcommand does not
/// know are ignored so one file can serve several subcommands, but a key
/// no subcommand knows is an error.
pub fn merge_config(
    argv: Vec<String>,
    entries: &[(String, String)],
    subcommand_flags: &dyn Fn(&str) -> Option<FlagSets>,
    all_flags: &BTreeSet<String>,
) -> Result<Vec<String>> {
    let Some(pos) = argv.iter().skip(1).position(|a| subcommand_flags(a).is_some()).map(|p| p + 1) else {
        return Ok(argv);
    };
    let (flags, switches) = subcommand_flags(&argv[pos]).expect("found above");
    let present: BTreeSet<String> = argv[pos + 1..]
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let mut extra = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            continue;
        }
        if !all_flags.contains(key) {
            bail!(Exit::usage(format!("unknown config key '{key}'")));
        }
        if !flags.contains(key) || present.contains(key) {
            continue;
        }
        if switches.contains(key) {
            match value.as_str() {
                "true" | "yes" | "1" => extra.push(format!("--{key}")),
                "false" | "no" | "0" => {}
                _ => bail!(Exit::usage(format!("config key '{key}' takes true or false, got '{value}'"))),
            }
        } else {
            extra.push(format!("--{key}={value}"));
        }
    }
    let mut out = argv;
    out.splice(pos + 1..pos + 1, extra);
    Ok(out)
}

/// Finds `--config FILE` or `--config=FILE` anywhere on the command line.
pub fn config_path(argv: &[String]) -> Option<PathBuf> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

#[derive(Clone, Copy, Debug)]
pub struct Orders {
    /// Highest power of η⁻¹ in the formal series.
    pub eta_order: usize,
    /// Taylor order of the jets at each base point.
    pub jet_order: usize,
    /// Highest Voros index n for the quadrature oracle.
    pub nmax: usize,
}

impl Default for Orders {
    fn default() -> Self {
        Orders { eta_order: 6, jet_order: 10, nmax: 2 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub voros: f64,
    pub laplace: f64,
    pub jump: f64,
    pub legendre: f64,
    pub residual: f64,
    pub printed: f64,
    pub homogeneity: f64,
    pub eps_deg: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            voros: 1e-5,
            laplace: 1e-8,
            jump: 1e-10,
            legendre: 1e-10,
            residual: 1e-9,
            printed: 1e-10,
            homogeneity: 1e-10,
            eps_deg: 1e-4,
        }
    }
}

/// Everything a subcommand needs once flags and config are resolved.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub equation: Option<Equation>,
    pub eta: f64,
    pub orders: Orders,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { equation: None, eta: 1.0, orders: Orders::default(), tolerances: Tolerances::default(), out: None }
    }
}

impl RunConfig {
    pub fn equation(&self) -> Result<Equation> {
        match self.equation {
            Some(eq) => Ok(eq),
            None => bail!(Exit::usage("no equation given: pass --c-inf and --c-0, or --d7 --c")),
        }
    }

    pub fn parameters(&self) -> Result<Parameters> {
        match self.equation()? {
            Equation::D6(p) => Ok(p),
            Equation::D7 { .. } => bail!(Exit::usage("this command needs D6 parameters --c-inf and --c-0")),
        }
    }
}

/// Builds the equation from the flag combination.
pub fn equation_from(c_inf: Option<C64>, c_0: Option<C64>, d7: bool, c: Option<C64>) -> Result<Option<Equation>> {
    Ok(match (d7, c_inf, c_0, c) {
        (false, None, None, None) => None,
        (false, Some(a), Some(b), None) => Some(Equation::D6(Parameters::new(a, b)?)),
        (true, None, None, Some(c)) => Some(Equation::d7(c)?),
        (true, _, _, None) => bail!(Exit::usage("--d7 needs --c")),
        (true, _, _, Some(_)) => bail!(Exit::usage("--d7 takes --c only, not --c-inf/--c-0")),
        (false, _, _, Some(_)) => bail!(Exit::usage("--c is the D7 parameter: add --d7")),
        (false, _, _, None) => bail!(Exit::usage("D6 needs both --c-inf and --c-0")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        for (s, z) in [
            ("2+0i", c64(2.0, 0.0)),
            ("2-1i", c64(2.0, -1.0)),
            ("0+1i", c64(0.0, 1.0)),
            ("i", c64(0.0, 1.0)),
            ("-i", c64(0.0, -1.0)),
            ("3", c64(3.0, 0.0)),
            ("-2.5i", c64(0.0, -2.5)),
            ("3+i", c64(3.0, 1.0)),
            ("1e-3-2.5E+2i", c64(1e-3, -250.0)),
            ("-1e2", c64(-100.0, 0.0)),
            (" 2 + 0.5 i ", c64(2.0, 0.5)),
        ] {
            assert_eq!(parse_complex(s).unwrap(), z, "{s}");
        }
        for s in ["", "x", "2+", "1+2", "ii"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }
}
