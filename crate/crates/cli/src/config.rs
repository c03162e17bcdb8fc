//! Run configuration: defaults, an optional `key=value` file, then flags.

use crate::error::CliError;
use crate::output::{format_float, Format};
use ptssh_core::lattice::DEFAULT_DIMERS;
use ptssh_core::{DriveKind, PhasePlane};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Points on a `min:max` sweep axis when no count is given.
pub const DEFAULT_SWEEP_POINTS: usize = 101;
pub const DEFAULT_GRID: (usize, usize) = (201, 201);

/// Keys accepted in a config file; identical to the long flag names.
pub const KEYS: &[&str] = &[
    "dimers",
    "v-over-vt",
    "gamma-over-vt",
    "omega-over-vt",
    "drive",
    "grid",
    "plane",
    "coupling-j",
    "energy-tol",
    "ipr-min",
    "families",
    "format",
    "out",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    SshBands,
    StaticPt,
    FloquetSpectrum,
    PhaseDiagram,
    EdgeStates,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::SshBands => "ssh-bands",
            Command::StaticPt => "static-pt",
            Command::FloquetSpectrum => "floquet-spectrum",
            Command::PhaseDiagram => "phase-diagram",
            Command::EdgeStates => "edge-states",
            Command::Validate => "validate",
        }
    }
}

/// A scalar `a`, or an evenly spaced axis `a:b[:n]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub count: Option<usize>,
}

impl Range {
    pub fn scalar(x: f64) -> Self {
        Self {
            lo: x,
            hi: x,
            count: None,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.count.is_none() && self.lo == self.hi
    }

    pub fn values(&self, default_count: usize) -> Vec<f64> {
        if self.is_scalar() {
            return vec![self.lo];
        }
        let n = self.count.unwrap_or(default_count);
        if n == 1 {
            return vec![self.lo];
        }
        (0..n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    /// Scalar value; an axis is rejected.
    pub fn single(&self, name: &str) -> Result<f64, CliError> {
        if self.is_scalar() {
            Ok(self.lo)
        } else {
            Err(CliError::Usage(format!(
                "--{name} must be a single value here"
            )))
        }
    }
}

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |t: &str| -> Result<f64, String> {
            let x: f64 = t.parse().map_err(|_| format!("'{t}' is not a number"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("'{t}' is not finite"))
            }
        };
        let range = match parts.as_slice() {
            [a] => Range::scalar(num(a)?),
            [a, b] => Range {
                lo: num(a)?,
                hi: num(b)?,
                count: None,
            },
            [a, b, n] => {
                let count: usize = n
                    .parse()
                    .map_err(|_| format!("'{n}' is not a point count"))?;
                if count < 2 {
                    return Err(format!("point count must be >= 2, got {count}"));
                }
                Range {
                    lo: num(a)?,
                    hi: num(b)?,
                    count: Some(count),
                }
            }
            _ => return Err(format!("'{s}' is not a value or min:max[:count]")),
        };
        if !range.is_scalar() && range.lo >= range.hi {
            return Err(format!("range '{s}' must have min < max"));
        }
        Ok(range)
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_scalar() {
            return f.write_str(&format_float(self.lo));
        }
        write!(f, "{}:{}", format_float(self.lo), format_float(self.hi))?;
        if let Some(n) = self.count {
            write!(f, ":{n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Drive {
    Static,
    Kind(DriveKind),
}

impl FromStr for Drive {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "static" {
            return Ok(Drive::Static);
        }
        s.parse::<DriveKind>().map(Drive::Kind).map_err(|_| {
            format!("unknown drive '{s}' (expected static, pt-pt, pt-hermitian or two-site)")
        })
    }
}

impl fmt::Display for Drive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Drive::Static => f.write_str("static"),
            Drive::Kind(k) => f.write_str(k.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    AnalyticMonodromy,
    SymmetryDichotomy,
    CoefficientReality,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::AnalyticMonodromy,
        Family::SymmetryDichotomy,
        Family::CoefficientReality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::AnalyticMonodromy => "analytic-monodromy",
            Family::SymmetryDichotomy => "symmetry-dichotomy",
            Family::CoefficientReality => "coefficient-reality",
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown validation family '{s}'"))
    }
}

/// Fully resolved parameters of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub dimers: usize,
    pub v: Range,
    pub gamma: Range,
    pub omega: Range,
    pub drive: Drive,
    pub grid: (usize, usize),
    pub plane: PhasePlane,
    pub coupling_j: f64,
    pub energy_tol: f64,
    pub ipr_min: f64,
    pub families: Vec<Family>,
    pub perturb: Option<Family>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Resolves `flags` over `file` over per-command defaults.
    pub fn resolve(
        command: Command,
        flags: &BTreeMap<String, String>,
        file: &BTreeMap<String, String>,
        perturb: Option<&str>,
    ) -> Result<Self, CliError> {
        let raw = |key: &str| flags.get(key).or_else(|| file.get(key)).map(String::as_str);
        let parse = |key: &str, default: &str| -> Result<String, CliError> {
            Ok(raw(key).unwrap_or(default).to_string())
        };
        fn typed<T: FromStr>(key: &str, s: &str) -> Result<T, CliError>
        where
            T::Err: fmt::Display,
        {
            s.parse::<T>()
                .map_err(|e| CliError::Usage(format!("--{key}: {e}")))
        }

        let drive_default = match command {
            Command::SshBands | Command::StaticPt => "static",
            _ => "pt-pt",
        };
        let drive: Drive = typed("drive", &parse("drive", drive_default)?)?;
        let plane_default = match drive {
            Drive::Kind(DriveKind::TwoSite) => "omega-gamma",
            _ => "v-omega",
        };
        let plane: PhasePlane = typed("plane", &parse("plane", plane_default)?)?;

        let (v_def, gamma_def, omega_def) = match command {
            Command::SshBands => ("0:1", "0", "0.7"),
            Command::StaticPt => ("0:1", "0.25", "0.7"),
            Command::FloquetSpectrum => ("0:1", "0.2", "0.7"),
            Command::PhaseDiagram => match plane {
                PhasePlane::OmegaGamma => ("0.2", "0:1", "0.2:4"),
                PhasePlane::VOmega => ("0:1", "0.2", "0.2:4"),
            },
            Command::EdgeStates | Command::Validate => ("0.2", "0.2", "0.7"),
        };

        let grid = parse_grid(&parse("grid", "201x201")?)?;
        let families = parse_families(&parse("families", "all")?)?;
        let perturb = perturb.map(|p| typed::<Family>("perturb", p)).transpose()?;

        let cfg = RunConfig {
            command,
            dimers: typed("dimers", &parse("dimers", &DEFAULT_DIMERS.to_string())?)?,
            v: typed("v-over-vt", &parse("v-over-vt", v_def)?)?,
            gamma: typed("gamma-over-vt", &parse("gamma-over-vt", gamma_def)?)?,
            omega: typed("omega-over-vt", &parse("omega-over-vt", omega_def)?)?,
            drive,
            grid,
            plane,
            coupling_j: typed("coupling-j", &parse("coupling-j", "1")?)?,
            energy_tol: typed("energy-tol", &parse("energy-tol", "1e-3")?)?,
            ipr_min: typed("ipr-min", &parse("ipr-min", "0.2")?)?,
            families,
            perturb,
            format: typed("format", &parse("format", "csv")?)?,
            out: raw("out").map(PathBuf::from),
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.dimers == 0 {
            return usage("--dimers must be >= 1".into());
        }
        for (name, x) in [
            ("coupling-j", self.coupling_j),
            ("energy-tol", self.energy_tol),
            ("ipr-min", self.ipr_min),
        ] {
            if !x.is_finite() {
                return usage(format!("--{name} must be finite"));
            }
        }
        if self.grid.0 < 2 || self.grid.1 < 2 {
            return usage("--grid resolutions must be >= 2".into());
        }
        let v_ok = self.v.lo >= 0.0 && self.v.hi <= 1.0;
        if !v_ok && self.command != Command::Validate {
            return usage(format!("--v-over-vt must lie in [0, 1], got {}", self.v));
        }
        match (self.command, self.drive) {
            (Command::SshBands | Command::StaticPt, Drive::Static) => {}
            (Command::SshBands | Command::StaticPt, d) => {
                return usage(format!(
                    "{} takes no --drive (got {d})",
                    self.command.name()
                ))
            }
            (Command::FloquetSpectrum | Command::EdgeStates, Drive::Kind(DriveKind::TwoSite)) => {
                return usage(format!("{} needs a lattice drive", self.command.name()))
            }
            (Command::FloquetSpectrum | Command::PhaseDiagram, Drive::Static) => {
                return usage(format!("{} needs a periodic drive", self.command.name()))
            }
            _ => {}
        }
        if self.command == Command::SshBands && !(self.gamma.is_scalar() && self.gamma.lo == 0.0) {
            return usage("ssh-bands has no gain/loss; use static-pt for --gamma-over-vt".into());
        }
        if self.command == Command::Validate && self.families.is_empty() {
            return usage("--families selects no validation family".into());
        }
        if self.command == Command::PhaseDiagram
            && self.drive == Drive::Kind(DriveKind::TwoSite)
            && self.plane != PhasePlane::OmegaGamma
        {
            return usage("two-site drive only supports --plane omega-gamma".into());
        }
        Ok(())
    }

    /// `(key, value)` pairs echoed into output metadata.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut out: Vec<(&str, String)> = Vec::new();
        match self.command {
            Command::Validate => {
                let names: Vec<&str> = self.families.iter().map(|f| f.name()).collect();
                out.push(("families", names.join(",")));
            }
            Command::PhaseDiagram => {
                out.push(("drive", self.drive.to_string()));
                out.push(("plane", self.plane.name().to_string()));
                out.push(("grid", format!("{}x{}", self.grid.0, self.grid.1)));
                if self.drive == Drive::Kind(DriveKind::TwoSite) {
                    out.push(("coupling-j", format_float(self.coupling_j)));
                } else {
                    out.push(("dimers", self.dimers.to_string()));
                    out.push(("v-over-vt", self.v.to_string()));
                }
                out.push(("gamma-over-vt", self.gamma.to_string()));
                out.push(("omega-over-vt", self.omega.to_string()));
            }
            cmd => {
                out.push(("dimers", self.dimers.to_string()));
                out.push(("drive", self.drive.to_string()));
                out.push(("v-over-vt", self.v.to_string()));
                if cmd != Command::SshBands {
                    out.push(("gamma-over-vt", self.gamma.to_string()));
                }
                if self.drive != Drive::Static {
                    out.push(("omega-over-vt", self.omega.to_string()));
                }
                if cmd == Command::EdgeStates {
                    out.push(("energy-tol", format_float(self.energy_tol)));
                    out.push(("ipr-min", format_float(self.ipr_min)));
                }
            }
        }
        let format = match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        out.push(("format", format.to_string()));
        out.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--grid: '{s}' is not NxM"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let n = a.trim().parse().map_err(|_| bad())?;
    let m = b.trim().parse().map_err(|_| bad())?;
    Ok((n, m))
}

fn parse_families(s: &str) -> Result<Vec<Family>, CliError> {
    if s.trim() == "all" {
        return Ok(Family::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let f: Family = part
            .parse()
            .map_err(|e: String| CliError::Usage(format!("--families: {e}")))?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort();
    Ok(out)
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
        })?;
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}
