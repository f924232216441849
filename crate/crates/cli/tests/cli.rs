use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use golodsyz::parse_session;
use golodsyz_cli::Report;

fn corpus(stem: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(format!("{stem}.syz"))
}

fn golodsyz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_golodsyz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compare with `tests/golden/<name>.json`; `GOLDEN_UPDATE=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let o = golodsyz(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out = stdout(&o);
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("GOLDEN_UPDATE").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).expect("golden file");
    assert_eq!(out, want, "golden {name}");
    let reports: Vec<Report> = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&reports).unwrap() + "\n", out);
}

#[test]
fn golden_outputs() {
    let cubic = corpus("02_cubic_monomials");
    let ci = corpus("11_ci_x2_y2");
    let square = corpus("01_square_of_max");
    let cusp = corpus("07_cusp");
    golden(
        "verify_all_cubic",
        &[
            "--json",
            "verify",
            "--check",
            "all",
            cubic.to_str().unwrap(),
        ],
    );
    golden(
        "verify_all_ci",
        &["--json", "verify", "--check", "all", ci.to_str().unwrap()],
    );
    golden(
        "classify_square",
        &["--json", "classify", square.to_str().unwrap()],
    );
    golden(
        "betti_cusp",
        &["--json", "betti", "--upto", "5", cusp.to_str().unwrap()],
    );
    golden(
        "decompose1_square",
        &[
            "--json",
            "decompose",
            "--syzygy",
            "1",
            square.to_str().unwrap(),
        ],
    );
}

#[test]
fn print_round_trips() {
    for e in golodsyz::corpus::ENTRIES {
        let path = corpus(e.stem());
        let o = golodsyz(&["print", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let again = parse_session(&stdout(&o)).unwrap();
        assert_eq!(again, e.session().unwrap(), "{}", e.file);
    }
}

#[test]
fn json_shape() {
    let path = corpus("04_xy_x2");
    let o = golodsyz(&[
        "--json",
        "verify",
        "--check",
        "dual",
        path.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    for key in ["ring", "ideal", "command", "results"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert_eq!(r["ring"], "F_101[x,y]");
    assert_eq!(r["results"][0]["check"], "dual");
    assert_eq!(r["results"][0]["status"], "pass");
}

#[test]
fn prime_override_and_ideal_selection() {
    let input = "ring p=101 vars=x,y\nideal I = x^2 - 60*y^3\nideal J = x*y, x^2\n";
    let dir = std::env::temp_dir().join(format!("golodsyz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two.syz");
    std::fs::write(&path, input).unwrap();
    let o = golodsyz(&["--p", "7", "--ideal", "I", "print", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "ring p=7 vars=x,y\nideal I = x^2 + 3*y^3\n");
    let o = golodsyz(&["--json", "betti", "--upto", "3", path.to_str().unwrap()]);
    let reports: Vec<Report> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[1].ideal, "J = (x*y, x^2)");
    let o = golodsyz(&["--ideal", "K", "betti", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_carry_position_and_exit_two() {
    let dir = std::env::temp_dir().join(format!("golodsyz-cli-err-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.syz");
    std::fs::write(
        &path,
        "# comment\nring p=101 vars=x,y\nideal I = x^2 + , y\n",
    )
    .unwrap();
    let o = golodsyz(&["betti", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column"), "{err}");
    let o = golodsyz(&["betti", "/nonexistent/x.syz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degree_cap_is_reported() {
    let path = corpus("07_cusp");
    let o = golodsyz(&[
        "--degree-cap",
        "2",
        "--json",
        "verify",
        "--check",
        "dual",
        path.to_str().unwrap(),
    ]);
    let reports: Vec<Report> = serde_json::from_str(&stdout(&o)).unwrap();
    let status = reports[0].results[0].status;
    assert_eq!(o.status.code(), Some(if status.is_ok() { 0 } else { 1 }));
    assert!(!status.is_ok(), "{:?}", reports[0].results);
}

#[test]
fn text_betti_table() {
    let path = corpus("03_node");
    let o = golodsyz(&[
        "resolve",
        "--module",
        "k",
        "--length",
        "3",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("total:  1  2  2  2"), "{out}");
}
