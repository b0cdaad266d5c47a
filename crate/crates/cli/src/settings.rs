//! Run settings from flags and from a flat `key=value` file; flags win.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use hangrod::asymptotics::CompositeOrder;
use hangrod::eigensolver::BoundaryCondition;

use crate::report::fmt_num;
use crate::CliError;

/// `A:B:steps`, log-spaced, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsRange {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl EpsRange {
    /// The grid in strictly decreasing order.
    pub fn values(&self) -> Vec<f64> {
        let (hi, lo) = (self.from.max(self.to), self.from.min(self.to));
        let span = (lo / hi).ln();
        (0..self.steps)
            .map(|k| {
                if k == 0 {
                    hi
                } else if k + 1 == self.steps {
                    lo
                } else {
                    hi * (span * k as f64 / (self.steps - 1) as f64).exp()
                }
            })
            .collect()
    }
}

impl fmt::Display for EpsRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.from, self.to, self.steps)
    }
}

pub fn parse_eps_range(s: &str) -> Result<EpsRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected A:B:steps, got {s:?}"));
    }
    let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    let from = num(parts[0])?;
    let to = num(parts[1])?;
    let steps = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("{:?}: {e}", parts[2]))?;
    if !(from > 0.0 && to > 0.0) || from == to {
        return Err(format!("range ends must be positive and distinct, got {s:?}"));
    }
    if steps < 2 {
        return Err("a range needs at least 2 steps".into());
    }
    Ok(EpsRange { from, to, steps })
}

fn parse_bc(s: &str) -> Result<BoundaryCondition, String> {
    s.parse().map_err(|e: hangrod::Error| e.to_string())
}

fn parse_order(s: &str) -> Result<CompositeOrder, String> {
    s.parse().map_err(|e: hangrod::Error| e.to_string())
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got {other:?}")),
    }
}

/// Every option shared by the subcommands. A subcommand reads the ones it
/// needs and rejects missing required values.
#[derive(Debug, Clone, Default, Args)]
pub struct Settings {
    /// Boundary condition at the support: clamped or pinned.
    #[arg(long, global = true, value_parser = parse_bc)]
    pub bc: Option<BoundaryCondition>,
    /// Mode number n >= 1.
    #[arg(long, global = true)]
    pub mode: Option<usize>,
    /// Bending-to-gravity ratio ε.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Log-spaced ε grid `A:B:steps`.
    #[arg(long = "eps-range", global = true, value_parser = parse_eps_range)]
    pub eps_range: Option<EpsRange>,
    /// Composite order: 0, 1/2, 2/3 or 1.
    #[arg(long, global = true, value_parser = parse_order)]
    pub order: Option<CompositeOrder>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Solver tolerance override.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Truncation point of the free-end layer problem.
    #[arg(long, global = true)]
    pub xmax: Option<f64>,
    /// Emit one JSON object instead of CSV.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", value_parser = parse_bool)]
    pub json: Option<bool>,
    /// Compare against reference constants; exit 4 on any mismatch.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", value_parser = parse_bool)]
    pub check: Option<bool>,
    /// Young's modulus E.
    #[arg(long, global = true)]
    pub youngs: Option<f64>,
    /// Second moment of area I.
    #[arg(long = "second-moment", global = true)]
    pub second_moment: Option<f64>,
    /// Mass per unit length ρ.
    #[arg(long, global = true)]
    pub density: Option<f64>,
    /// Gravitational acceleration g.
    #[arg(long, global = true)]
    pub gravity: Option<f64>,
    /// Rod length L.
    #[arg(long, global = true)]
    pub length: Option<f64>,
}

macro_rules! merge_fields {
    ($a:ident, $b:ident; $($f:ident),*) => {
        Settings { $($f: $a.$f.or($b.$f)),* }
    };
}

impl Settings {
    /// Fields set here take precedence over `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        let (a, b) = (self, fallback);
        merge_fields!(a, b; bc, mode, eps, eps_range, order, out, tol, xmax, json, check,
            youngs, second_moment, density, gravity, length)
    }

    pub fn from_file(path: &Path) -> Result<Settings, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_file(&text)
    }

    pub fn parse_file(text: &str) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            let bad = |e: String| CliError::Usage(format!("config line {} ({key}): {e}", i + 1));
            let num = |v: &str| v.parse::<f64>().map_err(|e| bad(e.to_string()));
            match key.as_str() {
                "bc" => s.bc = Some(parse_bc(value).map_err(bad)?),
                "mode" => s.mode = Some(value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?),
                "eps" => s.eps = Some(num(value)?),
                "eps-range" => s.eps_range = Some(parse_eps_range(value).map_err(bad)?),
                "order" => s.order = Some(parse_order(value).map_err(bad)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "tol" => s.tol = Some(num(value)?),
                "xmax" => s.xmax = Some(num(value)?),
                "json" => s.json = Some(parse_bool(value).map_err(bad)?),
                "check" => s.check = Some(parse_bool(value).map_err(bad)?),
                "youngs" => s.youngs = Some(num(value)?),
                "second-moment" => s.second_moment = Some(num(value)?),
                "density" => s.density = Some(num(value)?),
                "gravity" => s.gravity = Some(num(value)?),
                "length" => s.length = Some(num(value)?),
                _ => return Err(CliError::Usage(format!("config line {}: unknown key {key:?}", i + 1))),
            }
        }
        Ok(s)
    }

    /// `key=value` pairs of everything set, for the metadata line.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        };
        push("bc", self.bc.map(|v| v.to_string()));
        push("mode", self.mode.map(|v| v.to_string()));
        push("eps", self.eps.map(fmt_num));
        push("eps-range", self.eps_range.map(|v| v.to_string()));
        push("order", self.order.map(|v| v.to_string()));
        push("tol", self.tol.map(fmt_num));
        push("xmax", self.xmax.map(fmt_num));
        push("check", self.check.map(|v| v.to_string()));
        push("youngs", self.youngs.map(fmt_num));
        push("second-moment", self.second_moment.map(fmt_num));
        push("density", self.density.map(fmt_num));
        push("gravity", self.gravity.map(fmt_num));
        push("length", self.length.map(fmt_num));
        parts.join(" ")
    }

    pub fn bc(&self) -> Result<BoundaryCondition, CliError> {
        self.bc.ok_or_else(|| CliError::Usage("--bc is required (clamped or pinned)".into()))
    }

    pub fn mode(&self) -> Result<usize, CliError> {
        match self.mode.unwrap_or(1) {
            0 => Err(CliError::Usage("--mode must be >= 1".into())),
            n => Ok(n),
        }
    }

    pub fn eps(&self) -> Result<f64, CliError> {
        let e = self.eps.ok_or_else(|| CliError::Usage("--eps is required".into()))?;
        if !(e > 0.0 && e.is_finite()) {
            return Err(CliError::Usage(format!("--eps must be positive, got {e}")));
        }
        Ok(e)
    }

    pub fn tol(&self) -> Result<Option<f64>, CliError> {
        match self.tol {
            Some(t) if !(t > 0.0 && t < 1.0) => {
                Err(CliError::Usage(format!("--tol must lie in (0, 1), got {t}")))
            }
            t => Ok(t),
        }
    }
}
