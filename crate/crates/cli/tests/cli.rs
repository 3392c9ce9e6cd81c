use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gwmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwmono")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Closed-form and numerical cells of the row named `quantity`.
fn row(text: &str, quantity: &str) -> (f64, Option<f64>) {
    let line = text
        .lines()
        .find(|l| l.split(',').next() == Some(quantity))
        .unwrap_or_else(|| panic!("no row {quantity} in\n{text}"));
    let cells: Vec<&str> = line.split(',').collect();
    (cells[2].parse().unwrap(), cells[3].parse().ok())
}

#[test]
fn measure_example1_from_files() {
    let o = gwmono(&[
        "measure",
        "--state",
        &fixture("example1_state.toml"),
        "--partition",
        &fixture("example1_partition.toml"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (whole, _) = row(&text, "C_a(A|BC)");
    assert!((whole - (41.0f64 / 50.0).sqrt()).abs() < 1e-10);
    let (ab, ab_num) = row(&text, "C_a(AB)");
    assert!((ab - 2f64.sqrt() / 2.0).abs() < 1e-10);
    assert!((ab_num.unwrap() - ab).abs() < 1e-10);
    let (ac, ac_num) = row(&text, "C_a(AC)");
    assert!((ac - 2.0 * 2f64.sqrt() / 5.0).abs() < 1e-10);
    assert!((ac_num.unwrap() - ac).abs() < 1e-10);
}

#[test]
fn measure_example2_with_tsallis() {
    let o = gwmono(&["measure", "--example", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for (name, want) in [("C_a(A|BC)", 5f64.sqrt() / 3.0), ("C_a(AB)", 1.0 / 3.0), ("C_a(AC)", 2.0 / 3.0)] {
        let (closed, num) = row(&text, name);
        assert!((closed - want).abs() < 1e-10, "{name}");
        assert!((num.unwrap() - want).abs() < 1e-10, "{name}");
    }
    // T_2 = C^2 / 2 on a pure cut
    let (t, num) = row(&text, "T_q^a(A|BC)");
    assert!((t - 5.0 / 18.0).abs() < 1e-10 && (num.unwrap() - t).abs() < 1e-10);
}

#[test]
fn figure_csv_is_deterministic_and_ordered() {
    let a = gwmono(&["figure", "fig1"]);
    let b = gwmono(&["figure", "fig1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,lhs,ours,xhlf_a,jzx_b,jzx_a,zxn"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 61);
    for r in &rows {
        assert!(r[1..].windows(2).all(|w| w[0] >= w[1] - 1e-12));
    }
}

#[test]
fn figure_writes_out_file_and_accepts_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig5.csv");
    let o = gwmono(&["figure", "fig5", "--grid", "3:3.5:6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap() <= 0.0));

    let o = gwmono(&["figure", "fig1", "--ell", "1.2", "--grid", "2:4:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn certify_random_qubits_passes() {
    let o = gwmono(&["certify", "--random", "100", "--d", "2", "--n", "5", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("100 of 100 specs certified\n"));
}

#[test]
fn certify_example1_passes() {
    let o = gwmono(&["certify", "--example", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("name,expected,got,tol,pass\n"));
}

#[test]
fn corrupted_state_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.toml");
    // amplitudes of squared norm 0.81
    fs::write(
        &state,
        "d = 2\nn = 2\n[[coeff]]\nsite = 0\nlevel = 1\nre = 0.6\n[[coeff]]\nsite = 1\nlevel = 1\nre = 0.6708203932499369\n",
    )
    .unwrap();
    let o = gwmono(&["certify", "--state", state.to_str().unwrap(), "--partition", &fixture("example1_partition.toml")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("invalid state spec"), "{err}");
}

#[test]
fn empty_partition_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let part = dir.path().join("partition.toml");
    fs::write(&part, "").unwrap();
    let o = gwmono(&["measure", "--state", &fixture("example2_state.toml"), "--partition", part.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn fuzz_reports_and_replays() {
    let o = gwmono(&["fuzz", "tq3", "--count", "1000", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tq3: 1000 accepted of 1000 requested"));
    let o = gwmono(&["fuzz", "lemma1", "--seed", "5", "--replay", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("margin"));
    let o = gwmono(&["fuzz", "thm9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn params_reports_admissible_intervals() {
    let o = gwmono(&["params", "--example", "1", "--gamma", "2", "--delta", "1.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alpha-family l in [1, 1.4095"));
    let o = gwmono(&["params", "--example", "2", "--gamma", "3", "--grid", "0:1:5"]);
    let text = stdout(&o);
    assert!(text.contains("beta-family l in [0.12499"));
    assert!(text.contains("# best thm3: l = 0.25"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gwmono(&["figure", "fig9"]).status.code(), Some(2));
    assert_eq!(gwmono(&["measure"]).status.code(), Some(2));
    assert_eq!(gwmono(&["measure", "--example", "2", "--q", "2.5"]).status.code(), Some(2));
    assert_eq!(gwmono(&["figure", "fig1", "--grid", "2:5"]).status.code(), Some(2));
}
