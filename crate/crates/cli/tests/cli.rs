use ptssh_cli::run;
use std::path::PathBuf;
use std::process::Command;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_capture(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ptssh").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn check_golden(name: &str, args: &[&str]) {
    let (code, out, err) = run_capture(args);
    assert_eq!(code, 0, "{name}: {err}");
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(out == want, "{name} differs from golden file");
}

#[test]
fn golden_ssh_bands() {
    check_golden(
        "ssh_bands.csv",
        &["ssh-bands", "--dimers", "3", "--v-over-vt", "0:1:5"],
    );
}

#[test]
fn golden_static_pt() {
    check_golden(
        "static_pt.csv",
        &[
            "static-pt",
            "--dimers",
            "3",
            "--v-over-vt",
            "0:1:5",
            "--gamma-over-vt",
            "0.25",
        ],
    );
}

#[test]
fn golden_floquet_spectrum() {
    check_golden(
        "floquet_spectrum.json",
        &[
            "floquet-spectrum",
            "--dimers",
            "3",
            "--v-over-vt",
            "0.1:0.9:3",
            "--format",
            "json",
        ],
    );
}

#[test]
fn golden_phase_diagram() {
    check_golden(
        "phase_diagram.csv",
        &["phase-diagram", "--drive", "two-site", "--grid", "5x4"],
    );
}

#[test]
fn golden_edge_states() {
    check_golden(
        "edge_states.csv",
        &["edge-states", "--dimers", "6", "--v-over-vt", "0.1"],
    );
}

#[test]
fn golden_validate() {
    check_golden("validate.json", &["validate"]);
}

#[test]
fn ssh_bands_row_count_and_decoupled_edge() {
    let (code, out, _) = run_capture(&["ssh-bands"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 101 * 40);
    assert!(rows.iter().any(|r| {
        let f: Vec<&str> = r.split(',').collect();
        f[0] == "0.0" && f[2].parse::<f64>().unwrap() == 0.0
    }));
    let gap_rows: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').collect::<Vec<_>>())
        .filter(|f| f[0] == "0.25")
        .map(|f| f[2].parse::<f64>().unwrap())
        .filter(|e| e.abs() > 1e-4)
        .collect();
    let lowest = gap_rows
        .iter()
        .map(|e| e.abs())
        .fold(f64::INFINITY, f64::min);
    assert!((2.0 * lowest - 1.0).abs() < 0.02, "gap {}", 2.0 * lowest);
}

#[test]
fn static_pt_without_gain_matches_ssh_bands() {
    let (_, a, _) = run_capture(&["ssh-bands", "--dimers", "5", "--v-over-vt", "0:1:7"]);
    let (_, b, _) = run_capture(&[
        "static-pt",
        "--dimers",
        "5",
        "--v-over-vt",
        "0:1:7",
        "--gamma-over-vt",
        "0",
    ]);
    let data = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .map(str::to_string)
            .collect()
    };
    let (a, b) = (data(&a), data(&b));
    assert_eq!(a.len(), b.len());
    for (ra, rb) in a.iter().zip(&b) {
        let mut fb: Vec<&str> = rb.split(',').collect();
        assert_eq!(fb.remove(1), "0.0");
        assert_eq!(ra, &fb.join(","));
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = std::env::temp_dir().join(format!("ptssh-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "dimers = 2\nv_over_vt = 0.5\ngamma-over-vt = 0.1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let (code, out, _) = run_capture(&["static-pt", "--config", cfg, "--dimers", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("# dimers: 3\n"));
    assert!(out.contains("# v-over-vt: 0.5\n"));
    assert!(out.contains("# gamma-over-vt: 0.1\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("0.5,")).count(), 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn edge_states_warn_on_empty_selection() {
    let (code, out, err) = run_capture(&["edge-states", "--v-over-vt", "0.8"]);
    assert_eq!(code, 0);
    assert!(err.contains("no state passes the edge filters"), "{err}");
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 40);
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("bulk")));
    let max_abs = rows
        .iter()
        .map(|r| r.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(max_abs * max_abs < 0.2);
}

#[test]
fn edge_states_static_dimerized_limit() {
    let (code, out, _) = run_capture(&[
        "edge-states",
        "--drive",
        "static",
        "--v-over-vt",
        "0",
        "--gamma-over-vt",
        "0",
    ]);
    assert_eq!(code, 0);
    let edges: Vec<Vec<String>> = out
        .lines()
        .filter(|l| l.contains(",edge,"))
        .map(|l| l.split(',').map(str::to_string).collect())
        .filter(|f: &Vec<String>| f[8] == "1.0")
        .collect();
    let sites: Vec<&str> = edges.iter().map(|f| f[5].as_str()).collect();
    assert_eq!(sites, ["1", "40"]);
}

#[test]
fn validate_reports_perturbed_family() {
    let (code, out, err) = run_capture(&["validate", "--perturb", "coefficient-reality"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["failed"], serde_json::json!(["coefficient-reality"]));
    assert!(err.contains("coefficient-reality"));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ptssh"))
}

#[test]
fn exit_codes() {
    let status = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["--help"]), 0);
    assert_eq!(status(&["--version"]), 0);
    assert_eq!(
        status(&["validate", "--families", "coefficient-reality"]),
        0
    );
    assert_eq!(status(&[]), 1);
    assert_eq!(status(&["no-such-command"]), 1);
    assert_eq!(status(&["ssh-bands", "--dimers", "0"]), 1);
    assert_eq!(status(&["ssh-bands", "--v-over-vt", "0:1.5"]), 1);
    assert_eq!(status(&["ssh-bands", "--format", "xml"]), 1);
    assert_eq!(status(&["validate", "--families", ""]), 1);
    assert_eq!(
        status(&["ssh-bands", "--config", "/nonexistent/ptssh.cfg"]),
        3
    );
    assert_eq!(
        status(&["ssh-bands", "--out", "/nonexistent/dir/out.csv"]),
        3
    );
    assert_eq!(status(&["validate", "--perturb", "analytic-monodromy"]), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = std::env::temp_dir().join(format!("ptssh-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let runs: &[&[&str]] = &[
        &["floquet-spectrum", "--dimers", "6", "--v-over-vt", "0:1:9"],
        &[
            "phase-diagram",
            "--dimers",
            "3",
            "--grid",
            "6x5",
            "--format",
            "json",
        ],
        &["edge-states", "--v-over-vt", "0.3"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let files: Vec<Vec<u8>> = (0..2)
            .map(|rep| {
                let path = dir.join(format!("{i}-{rep}.out"));
                let st = bin().args(*args).arg("--out").arg(&path).status().unwrap();
                assert!(st.success());
                std::fs::read(&path).unwrap()
            })
            .collect();
        assert!(!files[0].is_empty());
        assert_eq!(files[0], files[1], "{args:?}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
