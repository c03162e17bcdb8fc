//! Command-line front end: argument parsing, config resolution and output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod validate;

use crate::commands::DEFECTIVE_FRACTION_LIMIT;
use crate::config::{read_config_file, Command, RunConfig};
use crate::error::CliError;
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "ptssh",
    version,
    about = "Static and Floquet PT-symmetric SSH lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Bands of the Hermitian SSH chain against v/v_T.
    SshBands(Common),
    /// Complex spectrum of the static PT-extended chain against v/v_T.
    StaticPt(Common),
    /// Quasienergies of a driven chain against v/v_T.
    FloquetSpectrum(Common),
    /// Largest |Im eps| over a parameter plane.
    PhaseDiagram(Common),
    /// Site amplitudes of edge states and of the most localized bulk state.
    EdgeStates(Common),
    /// Runs the built-in oracle suites and prints a JSON report.
    Validate(ValidateArgs),
}

#[derive(Args, Debug, Default)]
pub struct Common {
    /// Number of unit cells M (2M sites).
    #[arg(long)]
    pub dimers: Option<String>,
    /// Intra-cell hopping: a value or min:max[:count].
    #[arg(long, allow_hyphen_values = true)]
    pub v_over_vt: Option<String>,
    /// Gain/loss strength: a value or min:max[:count].
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_over_vt: Option<String>,
    /// Drive frequency: a value or min:max[:count].
    #[arg(long)]
    pub omega_over_vt: Option<String>,
    /// static, pt-pt, pt-hermitian or two-site.
    #[arg(long)]
    pub drive: Option<String>,
    /// Phase-diagram resolution NxM (x points by y points).
    #[arg(long)]
    pub grid: Option<String>,
    /// omega-gamma or v-omega.
    #[arg(long)]
    pub plane: Option<String>,
    /// Coupling J of the two-site model.
    #[arg(long, allow_hyphen_values = true)]
    pub coupling_j: Option<String>,
    /// Zero-energy window for edge states.
    #[arg(long)]
    pub energy_tol: Option<String>,
    /// Minimum IPR for edge states.
    #[arg(long)]
    pub ipr_min: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
    /// key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Comma-separated families, or "all".
    #[arg(long)]
    pub families: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub perturb: Option<String>,
}

impl Common {
    fn flags(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: &Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v.clone());
            }
        };
        put("dimers", &self.dimers);
        put("v-over-vt", &self.v_over_vt);
        put("gamma-over-vt", &self.gamma_over_vt);
        put("omega-over-vt", &self.omega_over_vt);
        put("drive", &self.drive);
        put("grid", &self.grid);
        put("plane", &self.plane);
        put("coupling-j", &self.coupling_j);
        put("energy-tol", &self.energy_tol);
        put("ipr-min", &self.ipr_min);
        put("format", &self.format);
        put("out", &self.out.as_ref().map(|p| p.display().to_string()));
        m
    }
}

/// Parses `args` (including the program name), runs, and returns the exit
/// status. Diagnostics go to `stderr`; results go to `--out` or `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "ptssh: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let (command, flags, config, perturb) = match cli.command {
        Sub::Validate(a) => {
            let mut flags = BTreeMap::new();
            if let Some(f) = a.families {
                flags.insert("families".to_string(), f);
            }
            if let Some(p) = a.out {
                flags.insert("out".to_string(), p.display().to_string());
            }
            (Command::Validate, flags, a.config, a.perturb)
        }
        Sub::SshBands(c) => (Command::SshBands, c.flags(), c.config, None),
        Sub::StaticPt(c) => (Command::StaticPt, c.flags(), c.config, None),
        Sub::FloquetSpectrum(c) => (Command::FloquetSpectrum, c.flags(), c.config, None),
        Sub::PhaseDiagram(c) => (Command::PhaseDiagram, c.flags(), c.config, None),
        Sub::EdgeStates(c) => (Command::EdgeStates, c.flags(), c.config, None),
    };
    let file = match &config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let cfg = RunConfig::resolve(command, &flags, &file, perturb.as_deref())?;

    if command == Command::Validate {
        let reports = validate::run(&cfg);
        let doc = validate::report_json(&reports);
        emit(&cfg, stdout, |w| {
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)
        })?;
        let failed: Vec<&str> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.family.name())
            .collect();
        if !failed.is_empty() {
            return Err(CliError::Numerical(format!(
                "validation failed: {}",
                failed.join(", ")
            )));
        }
        return Ok(());
    }

    let outcome = commands::run(&cfg)?;
    for w in &outcome.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    emit(&cfg, stdout, |w| outcome.table.write(cfg.format, w))?;
    if outcome.defective_fraction > DEFECTIVE_FRACTION_LIMIT {
        return Err(CliError::Numerical(format!(
            "{:.1}% of points are DEFECTIVE (limit {:.0}%)",
            100.0 * outcome.defective_fraction,
            100.0 * DEFECTIVE_FRACTION_LIMIT
        )));
    }
    Ok(())
}

fn emit(
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            body(stdout)?;
            stdout.flush()?;
        }
    }
    Ok(())
}
