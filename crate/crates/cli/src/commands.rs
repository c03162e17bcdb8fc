//! One function per subcommand, each producing a [`Table`].

use crate::config::{Command, Drive, Range, RunConfig, DEFAULT_SWEEP_POINTS};
use crate::error::CliError;
use crate::output::{format_float, Cell, Table};
use ptssh_core::analysis::{band_sweep, edge_states, phase_diagram, point_spectrum};
use ptssh_core::{
    Axis, DriveKind, DriveSpec, EdgeState, LatticeConfig, PhaseDiagramSpec, PhasePlane, SiteIndex,
    SweepDrive,
};

/// Fraction of failed points above which a run exits with status 2.
pub const DEFECTIVE_FRACTION_LIMIT: f64 = 0.05;

pub struct Outcome {
    pub table: Table,
    pub defective_fraction: f64,
    pub warnings: Vec<String>,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::SshBands | Command::StaticPt | Command::FloquetSpectrum => sweep(cfg),
        Command::PhaseDiagram => diagram(cfg),
        Command::EdgeStates => edges(cfg),
        Command::Validate => unreachable!("validate writes its own report"),
    }
}

fn header(cfg: &RunConfig, names: &[&str]) -> Table {
    let mut t = Table::new(names);
    t.meta("tool", format!("ptssh {}", env!("CARGO_PKG_VERSION")));
    t.meta("command", cfg.command.name());
    for (k, v) in cfg.echo() {
        t.meta(&k, v);
    }
    t
}

fn sweep_drive(cfg: &RunConfig) -> Result<SweepDrive, CliError> {
    match cfg.drive {
        Drive::Static => Ok(SweepDrive::Static),
        Drive::Kind(kind) => Ok(SweepDrive::Floquet(DriveSpec::new(
            kind,
            cfg.omega.single("omega-over-vt")?,
        )?)),
    }
}

fn sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let gamma = cfg.gamma.single("gamma-over-vt")?;
    let v_values = cfg.v.values(DEFAULT_SWEEP_POINTS);
    let template = LatticeConfig::new(cfg.dimers, v_values[0], gamma)?;
    let result = band_sweep(&template, &v_values, sweep_drive(cfg)?)?;

    let mut table = match cfg.command {
        Command::SshBands => header(cfg, &["v_over_vt", "eig_index", "re_E", "im_E", "ipr"]),
        Command::StaticPt => header(
            cfg,
            &[
                "v_over_vt",
                "gamma_over_vt",
                "eig_index",
                "re_E",
                "im_E",
                "ipr",
            ],
        ),
        _ => header(
            cfg,
            &[
                "v_over_vt",
                "eig_index",
                "re_eps",
                "im_eps",
                "ipr",
                "status",
            ],
        ),
    };
    let sites = 2 * cfg.dimers;
    let mut warnings = Vec::new();
    for point in &result.points {
        if let Some(e) = &point.error {
            warnings.push(format!("v/v_T = {}: {e}", format_float(point.v_over_vt)));
        }
        for j in 0..sites {
            let (energy, ipr) = match &point.spectrum {
                Some(s) => (s.entries[j].energy, s.entries[j].ipr),
                None => (ptssh_core::Complex64::new(f64::NAN, f64::NAN), f64::NAN),
            };
            let mut row = vec![Cell::Float(point.v_over_vt)];
            if cfg.command == Command::StaticPt {
                row.push(Cell::Float(gamma));
            }
            row.extend([
                Cell::Int(j as i64),
                Cell::Float(energy.re),
                Cell::Float(energy.im),
                Cell::Float(ipr),
            ]);
            if cfg.command == Command::FloquetSpectrum {
                row.push(Cell::Text(point.status.name().to_string()));
            }
            table.push(row);
        }
    }
    Ok(Outcome {
        table,
        defective_fraction: result.defective_fraction(),
        warnings,
    })
}

fn axis(name: &str, range: &Range, default_count: usize) -> Result<Axis, CliError> {
    let values = range.values(default_count);
    let hi = *values.last().expect("non-empty axis");
    Ok(Axis::linspace(name, values[0], hi, values.len())?)
}

fn diagram(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let Drive::Kind(kind) = cfg.drive else {
        return Err(CliError::Usage(
            "phase-diagram needs a periodic drive".into(),
        ));
    };
    let (nx, ny) = cfg.grid;
    let (x_name, y_name) = cfg.plane.axis_names();
    let (x, y, v, gamma) = match cfg.plane {
        PhasePlane::OmegaGamma => (
            axis(x_name, &cfg.omega, nx)?,
            axis(y_name, &cfg.gamma, ny)?,
            if kind == DriveKind::TwoSite {
                0.5
            } else {
                cfg.v.single("v-over-vt")?
            },
            0.0,
        ),
        PhasePlane::VOmega => (
            axis(x_name, &cfg.v, nx)?,
            axis(y_name, &cfg.omega, ny)?,
            0.0,
            cfg.gamma.single("gamma-over-vt")?,
        ),
    };
    let spec = PhaseDiagramSpec {
        kind,
        plane: cfg.plane,
        x,
        y,
        dimers: cfg.dimers,
        v,
        gamma,
        coupling_j: cfg.coupling_j,
    };
    let grid = phase_diagram(&spec)?;

    let mut table = header(cfg, &["x", "y", "max_im", "flag"]);
    table.meta("x", x_name);
    table.meta("y", y_name);
    for (n, w) in [1, 3, 5].iter().zip(&grid.resonances) {
        table.meta(
            &format!("resonance n={n}"),
            format!("omega = {}", format_float(*w)),
        );
    }
    for iy in 0..grid.y_axis.len() {
        for ix in 0..grid.x_axis.len() {
            table.push(vec![
                Cell::Float(grid.x_axis.values[ix]),
                Cell::Float(grid.y_axis.values[iy]),
                Cell::Float(grid.value(ix, iy)),
                Cell::Text(grid.flag(ix, iy).name().to_string()),
            ]);
        }
    }
    Ok(Outcome {
        table,
        defective_fraction: grid.defective_fraction(),
        warnings: Vec::new(),
    })
}

fn edges(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let lattice = LatticeConfig::new(
        cfg.dimers,
        cfg.v.single("v-over-vt")?,
        cfg.gamma.single("gamma-over-vt")?,
    )?;
    let spectrum = point_spectrum(&lattice, sweep_drive(cfg)?)?;
    let selected = edge_states(&spectrum, cfg.energy_tol, cfg.ipr_min);
    let mut warnings = Vec::new();
    if selected.is_empty() {
        warnings.push(format!(
            "no state passes the edge filters (|Re E| <= {}, IPR >= {})",
            format_float(cfg.energy_tol),
            format_float(cfg.ipr_min)
        ));
    }
    let bulk = spectrum
        .entries
        .iter()
        .enumerate()
        .filter(|(j, _)| selected.iter().all(|s| s.index != *j))
        .max_by(|a, b| a.1.ipr.total_cmp(&b.1.ipr))
        .map(|(j, e)| EdgeState {
            index: j,
            energy: e.energy,
            ipr: e.ipr,
            left_weight: 0.0,
            right_weight: 0.0,
            state: e.state.clone(),
        });

    let mut table = header(
        cfg,
        &[
            "state",
            "kind",
            "re_E",
            "im_E",
            "ipr",
            "site_index",
            "cell",
            "sublattice",
            "abs_psi",
        ],
    );
    let tagged = selected
        .iter()
        .map(|s| ("edge", s))
        .chain(bulk.iter().map(|s| ("bulk", s)));
    for (kind, s) in tagged {
        for (n, psi) in s.state.iter().enumerate() {
            let site = SiteIndex::from_flat(n);
            table.push(vec![
                Cell::Int(s.index as i64),
                Cell::Text(kind.to_string()),
                Cell::Float(s.energy.re),
                Cell::Float(s.energy.im),
                Cell::Float(s.ipr),
                Cell::Int(n as i64 + 1),
                Cell::Int(site.cell as i64),
                Cell::Text(site.sublattice.to_string()),
                Cell::Float(psi.norm()),
            ]);
        }
    }
    Ok(Outcome {
        table,
        defective_fraction: 0.0,
        warnings,
    })
}
