//! Run configuration from `key = value` files and command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use periodic_kpp::coeffs::{check_grid_size, DEFAULT_GRID_SIZE};
use periodic_kpp::optimal::geometric_periods;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {message}")]
    Unreadable { path: PathBuf, message: String },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{key}` given twice in the config file")]
    Duplicate { key: String },
    #[error("malformed value for `{key}`: {message}")]
    Malformed { key: String, message: String },
    #[error("missing required key `{0}`")]
    Missing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Speed,
    Optimize,
    VerifyEquality,
    Constancy,
    Perturb,
    ScanPeriod,
    Simulate,
    Stationary,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Speed,
        Command::Optimize,
        Command::VerifyEquality,
        Command::Constancy,
        Command::Perturb,
        Command::ScanPeriod,
        Command::Simulate,
        Command::Stationary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Speed => "speed",
            Command::Optimize => "optimize",
            Command::VerifyEquality => "verify-equality",
            Command::Constancy => "constancy",
            Command::Perturb => "perturb",
            Command::ScanPeriod => "scan-period",
            Command::Simulate => "simulate",
            Command::Stationary => "stationary",
        }
    }

    /// Whether the command takes a growth rate `r` (the others build `r_d`).
    pub fn needs_r(self) -> bool {
        !matches!(self, Command::Optimize | Command::Constancy | Command::Perturb)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
                format!("`{s}` is not one of {}", names.join(", "))
            })
    }
}

pub const KEYS: [&str; 19] = [
    "command",
    "d",
    "r",
    "period",
    "alpha",
    "grid_size",
    "output",
    "ls",
    "l_range",
    "epsilons",
    "seed",
    "half_width",
    "t_end",
    "dt",
    "threshold",
    "points_per_period",
    "output_interval",
    "snapshots",
    "snapshot_interval",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOptions {
    pub half_width: f64,
    pub t_end: f64,
    pub dt: Option<f64>,
    pub threshold: Option<f64>,
    pub points_per_period: usize,
    pub output_interval: f64,
    pub snapshots: Option<PathBuf>,
    pub snapshot_interval: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub d_spec: String,
    pub r_spec: Option<String>,
    pub period: f64,
    pub alpha: f64,
    pub grid_size: usize,
    pub output_path: Option<PathBuf>,
    pub ls: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub seed: u64,
    pub simulation: SimulationOptions,
    /// Every effective setting except output paths, sorted by key.
    pub canonical: BTreeMap<String, String>,
}

/// Raw key-value settings before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(pub BTreeMap<String, String>);

impl Settings {
    pub fn parse_file(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let key = key.trim().replace('-', "_");
            if key.is_empty() {
                return Err(ConfigError::Syntax { line: i + 1 });
            }
            if !KEYS.contains(&key.as_str()) {
                return Err(ConfigError::UnknownKey(key));
            }
            let value = unquote(value.trim()).to_string();
            if map.insert(key.clone(), value).is_some() {
                return Err(ConfigError::Duplicate { key });
            }
        }
        Ok(Settings(map))
    }

    pub fn read(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Unreadable {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse_file(&text)
    }

    /// Values in `other` win.
    pub fn overlay(mut self, other: Settings) -> Self {
        self.0.extend(other.0);
        self
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn required(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::Missing(key.to_string()))
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| ConfigError::Malformed {
                    key: key.to_string(),
                    message: format!("`{v}`: {e}"),
                })
            })
            .transpose()
    }

    fn real(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        let v = self.parsed::<f64>(key)?;
        match v {
            Some(x) if !x.is_finite() => Err(malformed(key, "must be finite")),
            _ => Ok(v),
        }
    }

    fn positive(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        let v = self.real(key)?;
        match v {
            Some(x) if x <= 0.0 => Err(malformed(key, "must be positive")),
            _ => Ok(v),
        }
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        self.get(key)
            .map(|v| {
                let items: Vec<&str> = v.split(',').map(str::trim).collect();
                if items.iter().any(|s| s.is_empty()) {
                    return Err(malformed(key, "expected a comma-separated list of numbers"));
                }
                items
                    .iter()
                    .map(|s| match s.parse::<f64>() {
                        Ok(x) if x.is_finite() => Ok(x),
                        _ => Err(malformed(key, &format!("`{s}` is not a finite number"))),
                    })
                    .collect()
            })
            .transpose()
    }

    pub fn into_config(self) -> Result<RunConfig, ConfigError> {
        let command: Command = self
            .parsed("command")?
            .ok_or_else(|| ConfigError::Missing("command".into()))?;
        let d_spec = self.required("d")?.to_string();
        let r_spec = if command.needs_r() {
            Some(self.required("r")?.to_string())
        } else {
            self.get("r").map(str::to_string)
        };
        let period = self
            .positive("period")?
            .ok_or_else(|| ConfigError::Missing("period".into()))?;
        let alpha = self.positive("alpha")?.unwrap_or(1.0);
        let grid_size = self.parsed::<usize>("grid_size")?.unwrap_or(DEFAULT_GRID_SIZE);
        check_grid_size(grid_size).map_err(|e| malformed("grid_size", &e.to_string()))?;

        let ls = match (self.list("ls")?, self.list("l_range")?) {
            (Some(_), Some(_)) => {
                return Err(malformed("l_range", "give either `ls` or `l_range`, not both"))
            }
            (Some(ls), None) => ls,
            (None, Some(range)) => {
                let [lo, hi, count] = range[..] else {
                    return Err(malformed("l_range", "expected `lo, hi, count`"));
                };
                if !(lo > 0.0 && hi > lo && count >= 3.0 && count.fract() == 0.0) {
                    return Err(malformed("l_range", "need 0 < lo < hi and an integer count >= 3"));
                }
                geometric_periods(lo, hi, count as usize)
            }
            (None, None) => geometric_periods(0.05, 20.0, 12),
        };
        if ls.len() < 3 || ls.iter().any(|l| *l <= 0.0) || ls.windows(2).any(|w| w[1] <= w[0]) {
            return Err(malformed("ls", "need at least three positive, strictly increasing periods"));
        }
        let epsilons = self.list("epsilons")?.unwrap_or_else(|| vec![-0.5, -0.1, 0.1, 0.5]);
        let seed = self.parsed::<u64>("seed")?.unwrap_or(0);

        let points_per_period = self.parsed::<usize>("points_per_period")?.unwrap_or(64);
        check_grid_size(points_per_period).map_err(|e| malformed("points_per_period", &e.to_string()))?;
        let simulation = SimulationOptions {
            half_width: self.positive("half_width")?.unwrap_or(400.0),
            t_end: self.positive("t_end")?.unwrap_or(150.0),
            dt: self.positive("dt")?,
            threshold: self.positive("threshold")?,
            points_per_period,
            output_interval: self.positive("output_interval")?.unwrap_or(0.5),
            snapshots: self.get("snapshots").map(PathBuf::from),
            snapshot_interval: self.positive("snapshot_interval")?,
        };
        if simulation.snapshot_interval.is_some() && simulation.snapshots.is_none() {
            return Err(ConfigError::Missing("snapshots".into()));
        }

        let mut canonical = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            canonical.insert(k.to_string(), v);
        };
        put("command", command.to_string());
        put("d", d_spec.clone());
        if let Some(r) = &r_spec {
            put("r", r.clone());
        }
        put("period", format!("{period:e}"));
        put("grid_size", grid_size.to_string());
        match command {
            Command::Optimize | Command::Constancy => put("alpha", format!("{alpha:e}")),
            Command::Perturb => {
                put("alpha", format!("{alpha:e}"));
                put("epsilons", join(&epsilons));
                put("seed", seed.to_string());
            }
            Command::ScanPeriod => put("ls", join(&ls)),
            Command::Simulate => {
                let s = &simulation;
                put("half_width", format!("{:e}", s.half_width));
                put("t_end", format!("{:e}", s.t_end));
                put("points_per_period", s.points_per_period.to_string());
                put("output_interval", format!("{:e}", s.output_interval));
                if let Some(v) = s.dt {
                    put("dt", format!("{v:e}"));
                }
                if let Some(v) = s.threshold {
                    put("threshold", format!("{v:e}"));
                }
                if let Some(v) = s.snapshot_interval {
                    put("snapshot_interval", format!("{v:e}"));
                }
            }
            _ => {}
        }

        Ok(RunConfig {
            command,
            d_spec,
            r_spec,
            period,
            alpha,
            grid_size,
            output_path: self.get("output").map(PathBuf::from),
            ls,
            epsilons,
            seed,
            simulation,
            canonical,
        })
    }
}

fn malformed(key: &str, message: &str) -> ConfigError {
    ConfigError::Malformed {
        key: key.to_string(),
        message: message.to_string(),
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",")
}

/// Drops a `#` comment that is not inside double quotes.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .unwrap_or(v)
}
