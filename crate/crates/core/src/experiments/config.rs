//! Flat `key = value` scenario files.
//!
//! ```text
//! # two-slit defaults, spelled out
//! scenario = two_slit
//! p = 3
//! R = 2
//! K = 2
//! s = 1
//! L = 2
//! ```
//!
//! Blank lines and `#` comments are ignored; unknown or repeated keys are
//! errors. Relative paths are resolved against the directory of the file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    TwoSlit,
    Ctqw,
    Collapse,
    Spectrum,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::TwoSlit => "two_slit",
            ScenarioKind::Ctqw => "ctqw",
            ScenarioKind::Collapse => "collapse",
            ScenarioKind::Spectrum => "spectrum",
        }
    }
}

impl FromStr for ScenarioKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "two_slit" => Ok(ScenarioKind::TwoSlit),
            "ctqw" => Ok(ScenarioKind::Ctqw),
            "collapse" => Ok(ScenarioKind::Collapse),
            "spectrum" => Ok(ScenarioKind::Spectrum),
            _ => Err("expected one of two_slit, ctqw, collapse, spectrum".into()),
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    /// `re,im` pairs, one matrix row per line.
    Dense,
    /// `u v weight` adjacency edges; the Hamiltonian is `-γ A`.
    Edges,
}

/// Real factor used by the collapse scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Apparatus {
    /// The two-packet state of the two-slit model.
    Packet,
    /// `Ψ_∞ ≡ 1`: scans measure plain Born probabilities.
    Unit,
}

/// One apparatus scan: at time `time`, over the ball `center + p^scale Z_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scan {
    pub time: f64,
    pub scale: i32,
    pub center: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Option<ScenarioKind>,
    pub prime: u32,
    pub top: Option<i32>,
    pub resolution: Option<i32>,
    pub alpha: f64,
    pub m_p: f64,
    pub m_inf: f64,
    pub omega: f64,
    pub slit_center: BigRational,
    pub slit_scale: i32,
    pub sigma: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub t_steps: usize,
    pub x_extent: f64,
    pub x_spacing: f64,
    pub refinement: Option<i32>,
    pub matrix: Option<PathBuf>,
    pub matrix_format: MatrixFormat,
    pub level: i32,
    pub sites: Option<Vec<u64>>,
    pub gamma: f64,
    pub initial_site: Option<u64>,
    pub scans: Vec<Scan>,
    pub apparatus: Apparatus,
    pub grw_sigma: Option<f64>,
    pub grw_rate: Option<f64>,
    pub grw_horizon: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: None,
            prime: 3,
            top: None,
            resolution: None,
            alpha: 1.0,
            m_p: 0.5,
            m_inf: 0.5,
            omega: 1.0,
            slit_center: BigRational::from_integer(BigInt::from(1)),
            slit_scale: 2,
            sigma: 0.5,
            t_start: 0.0,
            t_end: 1.0,
            t_steps: 5,
            x_extent: 40.0,
            x_spacing: 0.02,
            refinement: None,
            matrix: None,
            matrix_format: MatrixFormat::Dense,
            level: 3,
            sites: None,
            gamma: 1.0,
            initial_site: None,
            scans: Vec::new(),
            apparatus: Apparatus::Packet,
            grw_sigma: None,
            grw_rate: None,
            grw_horizon: None,
            seed: 0,
            out: None,
        }
    }
}

pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Error {
    Error::Config { field: field.to_string(), reason: reason.into() }
}

fn parse_num<V: FromStr>(field: &str, value: &str) -> Result<V> {
    value.parse().map_err(|_| invalid(field, format!("cannot parse `{value}`")))
}

fn parse_real(field: &str, value: &str) -> Result<f64> {
    let v: f64 = parse_num(field, value)?;
    if !v.is_finite() {
        return Err(invalid(field, "must be finite"));
    }
    Ok(v)
}

pub(crate) fn parse_rational(field: &str, value: &str) -> Result<BigRational> {
    let (num, den) = value.split_once('/').unwrap_or((value, "1"));
    let num: BigInt = parse_num(field, num.trim())?;
    let den: BigInt = parse_num(field, den.trim())?;
    if den.is_zero() {
        return Err(invalid(field, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_scans(value: &str) -> Result<Vec<Scan>> {
    value
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let parts: Vec<&str> = item.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(invalid("scans", format!("`{item}` is not `t,l,center`")));
            }
            Ok(Scan {
                time: parse_real("scans", parts[0])?,
                scale: parse_num("scans", parts[1])?,
                center: parse_rational("scans", parts[2])?,
            })
        })
        .collect()
}

impl ScenarioConfig {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = std::collections::BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse { line: n + 1, message: format!("expected `key = value`, found `{line}`") });
            };
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(invalid(key, format!("repeated on line {}", n + 1)));
            }
            cfg.set(key, value, base_dir).map_err(|e| match e {
                Error::Config { field, reason } if field == "?" => {
                    Error::Parse { line: n + 1, message: format!("unknown key `{key}`{reason}") }
                }
                other => other,
            })?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    fn set(&mut self, key: &str, value: &str, base_dir: &Path) -> Result<()> {
        match key {
            "scenario" => self.scenario = Some(value.parse().map_err(|e: String| invalid(key, e))?),
            "p" => self.prime = parse_num(key, value)?,
            "R" => self.top = Some(parse_num(key, value)?),
            "K" => self.resolution = Some(parse_num(key, value)?),
            "alpha" => self.alpha = parse_real(key, value)?,
            "m_p" => self.m_p = parse_real(key, value)?,
            "m_inf" => self.m_inf = parse_real(key, value)?,
            "omega" => self.omega = parse_real(key, value)?,
            "s" => self.slit_center = parse_rational(key, value)?,
            "L" => self.slit_scale = parse_num(key, value)?,
            "sigma" => self.sigma = parse_real(key, value)?,
            "t_start" => self.t_start = parse_real(key, value)?,
            "t_end" => self.t_end = parse_real(key, value)?,
            "t_steps" => self.t_steps = parse_num(key, value)?,
            "x_extent" => self.x_extent = parse_real(key, value)?,
            "x_spacing" => self.x_spacing = parse_real(key, value)?,
            "refinement" => self.refinement = Some(parse_num(key, value)?),
            "matrix" => self.matrix = Some(base_dir.join(value)),
            "matrix_format" => {
                self.matrix_format = match value {
                    "dense" => MatrixFormat::Dense,
                    "edges" => MatrixFormat::Edges,
                    _ => return Err(invalid(key, "expected `dense` or `edges`")),
                }
            }
            "level" => self.level = parse_num(key, value)?,
            "sites" => {
                self.sites = Some(
                    value
                        .split(',')
                        .map(|v| parse_num(key, v.trim()))
                        .collect::<Result<Vec<u64>>>()?,
                )
            }
            "gamma" => self.gamma = parse_real(key, value)?,
            "initial_site" => self.initial_site = Some(parse_num(key, value)?),
            "scans" => self.scans = parse_scans(value)?,
            "apparatus" => {
                self.apparatus = match value {
                    "packet" => Apparatus::Packet,
                    "unit" => Apparatus::Unit,
                    _ => return Err(invalid(key, "expected `packet` or `unit`")),
                }
            }
            "grw_sigma" => self.grw_sigma = Some(parse_real(key, value)?),
            "grw_rate" => self.grw_rate = Some(parse_real(key, value)?),
            "grw_horizon" => self.grw_horizon = Some(parse_real(key, value)?),
            "seed" => self.seed = parse_num(key, value)?,
            "out" => self.out = Some(base_dir.join(value)),
            _ => return Err(invalid("?", "")),
        }
        Ok(())
    }

    /// Checks the declared scenario against the requested one.
    pub fn expect_kind(&self, kind: ScenarioKind) -> Result<()> {
        match self.scenario {
            Some(k) if k != kind => Err(invalid("scenario", format!("file declares `{k}`, but `{kind}` was requested"))),
            _ => Ok(()),
        }
    }

    /// `R` in effect for a scenario (the CTQW lives on `Z_p`).
    pub fn effective_top(&self, kind: ScenarioKind) -> i32 {
        match kind {
            ScenarioKind::Ctqw => 0,
            _ => self.top.unwrap_or(2),
        }
    }

    pub fn effective_resolution(&self, kind: ScenarioKind) -> i32 {
        match kind {
            ScenarioKind::Ctqw => self.resolution.unwrap_or(self.level),
            _ => self.resolution.unwrap_or(2),
        }
    }

    pub fn effective_refinement(&self, kind: ScenarioKind) -> i32 {
        self.refinement.unwrap_or(self.effective_resolution(kind) + 4)
    }

    pub fn times(&self) -> Vec<f64> {
        match self.t_steps {
            0 => Vec::new(),
            1 => vec![self.t_start],
            n => {
                let step = (self.t_end - self.t_start) / (n - 1) as f64;
                (0..n).map(|i| self.t_start + step * i as f64).collect()
            }
        }
    }

    /// Field-level checks shared by all scenarios.
    pub fn validate(&self, kind: ScenarioKind) -> Result<()> {
        self.expect_kind(kind)?;
        if !crate::padic::is_prime(self.prime) {
            return Err(invalid("p", format!("{} is not a supported prime", self.prime)));
        }
        if self.top.is_some_and(|r| r < 0) {
            return Err(invalid("R", "must be nonnegative"));
        }
        if kind == ScenarioKind::Ctqw && self.top.is_some_and(|r| r != 0) {
            return Err(invalid("R", "the CTQW lives on Z_p, so R must be 0"));
        }
        if self.resolution.is_some_and(|k| k < 0) {
            return Err(invalid("K", "must be nonnegative"));
        }
        let positive = [("alpha", self.alpha), ("m_p", self.m_p), ("m_inf", self.m_inf), ("omega", self.omega), ("sigma", self.sigma), ("x_extent", self.x_extent), ("x_spacing", self.x_spacing)];
        for (name, v) in positive {
            if !(v > 0.0) {
                return Err(invalid(name, "must be positive"));
            }
        }
        if self.t_steps == 0 {
            return Err(invalid("t_steps", "must be at least 1"));
        }
        if self.t_end < self.t_start {
            return Err(invalid("t_end", "must not precede t_start"));
        }
        if kind != ScenarioKind::Ctqw && self.t_start < 0.0 {
            return Err(invalid("t_start", "must be nonnegative"));
        }
        if self.x_extent / self.x_spacing > 1e7 {
            return Err(invalid("x_spacing", "real grid would exceed 10^7 points"));
        }
        let k = self.effective_resolution(kind);
        if let Some(m) = self.refinement {
            if m < k {
                return Err(invalid("refinement", format!("must be at least K = {k}")));
            }
        }
        for (name, v) in [("grw_sigma", self.grw_sigma), ("grw_rate", self.grw_rate), ("grw_horizon", self.grw_horizon)] {
            if v.is_some_and(|v| !(v > 0.0)) {
                return Err(invalid(name, "must be positive"));
            }
        }
        if self.grw_rate.is_some() != self.grw_sigma.is_some() {
            return Err(invalid("grw_rate", "grw_rate and grw_sigma must be given together"));
        }
        if kind == ScenarioKind::Ctqw {
            if self.level < 0 {
                return Err(invalid("level", "must be nonnegative"));
            }
            if k < self.level {
                return Err(invalid("K", format!("must be at least level = {}", self.level)));
            }
            if self.matrix.is_none() {
                return Err(invalid("matrix", "a matrix or edge-list file is required"));
            }
        }
        if kind == ScenarioKind::Collapse {
            if self.scans.is_empty() {
                return Err(invalid("scans", "at least one scan is required"));
            }
            if self.scans.windows(2).any(|w| w[1].time < w[0].time) || self.scans[0].time < 0.0 {
                return Err(invalid("scans", "scan times must be nonnegative and nondecreasing"));
            }
        }
        Ok(())
    }

    /// The effective configuration of a scenario as `key=value` lines in a
    /// fixed order.
    pub fn resolved(&self, kind: ScenarioKind) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: String| out.push((k.to_string(), v));
        put("scenario", kind.name().into());
        put("p", self.prime.to_string());
        put("R", self.effective_top(kind).to_string());
        put("K", self.effective_resolution(kind).to_string());
        match kind {
            ScenarioKind::Ctqw => {
                put("level", self.level.to_string());
                put("matrix", self.matrix.as_ref().map(|p| file_name(p)).unwrap_or_default());
                put("matrix_format", if self.matrix_format == MatrixFormat::Dense { "dense" } else { "edges" }.into());
                if let Some(s) = &self.sites {
                    put("sites", s.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
                }
                put("gamma", format!("{:e}", self.gamma));
                if let Some(i) = self.initial_site {
                    put("initial_site", i.to_string());
                }
            }
            _ => {
                put("alpha", format!("{:e}", self.alpha));
                put("m_p", format!("{:e}", self.m_p));
            }
        }
        if matches!(kind, ScenarioKind::TwoSlit | ScenarioKind::Collapse) {
            put("m_inf", format!("{:e}", self.m_inf));
            put("s", self.slit_center.to_string());
            put("L", self.slit_scale.to_string());
            put("sigma", format!("{:e}", self.sigma));
        }
        if kind != ScenarioKind::Spectrum {
            put("t_start", format!("{:e}", self.t_start));
            put("t_end", format!("{:e}", self.t_end));
            put("t_steps", self.t_steps.to_string());
        }
        if kind == ScenarioKind::TwoSlit {
            put("x_extent", format!("{:e}", self.x_extent));
            put("x_spacing", format!("{:e}", self.x_spacing));
        }
        if kind == ScenarioKind::Collapse {
            put("refinement", self.effective_refinement(kind).to_string());
            put("apparatus", if self.apparatus == Apparatus::Packet { "packet" } else { "unit" }.into());
            let scans: Vec<String> = self
                .scans
                .iter()
                .map(|s| format!("{:e},{},{}", s.time, s.scale, s.center))
                .collect();
            put("scans", scans.join(";"));
            if let (Some(sigma), Some(rate)) = (self.grw_sigma, self.grw_rate) {
                put("grw_sigma", format!("{sigma:e}"));
                put("grw_rate", format!("{rate:e}"));
                put("grw_horizon", format!("{:e}", self.grw_horizon.unwrap_or(self.t_end)));
                put("seed", self.seed.to_string());
            }
        }
        out
    }

    /// Resolved configuration as a `# key=value` comment block.
    pub fn header(&self, kind: ScenarioKind) -> String {
        self.resolved(kind).iter().map(|(k, v)| format!("# {k}={v}\n")).collect()
    }
}

/// File names only, so headers do not depend on where the run happened.
fn file_name(p: &Path) -> String {
    p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}
