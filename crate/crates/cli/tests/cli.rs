use std::path::Path;
use std::process::{Command, Output};

use caaa::{Complex64, FunctionSpec, Model};
use tempfile::TempDir;

fn caaa(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caaa"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn model(dir: &Path) -> Model {
    Model::from_json(&std::fs::read_to_string(dir.join("model.json")).unwrap()).unwrap()
}

#[test]
fn exp_converges_at_degree_six() {
    let dir = TempDir::new().unwrap();
    let out = caaa(&["aaax", "--fn", "exp"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let m = model(dir.path());
    assert_eq!(m.degree, 6);
    assert_eq!(m.status, "converged");
    let history = std::fs::read_to_string(dir.path().join("history.csv")).unwrap();
    assert_eq!(history.lines().count(), m.history.len() + 1);
    assert!(history.starts_with("degree,error,bad_poles\n"));
    let curve = std::fs::read_to_string(dir.path().join("error_curve.csv")).unwrap();
    assert!(curve.starts_with("param_re,param_im,err_re,err_im\n"));
    // xs(S, 30) plus the support points
    assert_eq!(curve.lines().count(), 1 + 30 * m.degree + m.degree + 1);
    assert!(!dir.path().join("convergence.svg").exists());
}

#[test]
fn reread_model_reproduces_fine_error() {
    let dir = TempDir::new().unwrap();
    let out = caaa(&["aaaz", "--fn", "tan(z^4)"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let m = model(dir.path());
    let spec = FunctionSpec::from_text("tan(z^4)").unwrap();
    let again = m.fine_error(&|z: Complex64| spec.eval(z), 30).unwrap();
    assert!((again - m.fine_error).abs() <= 1e-15, "{again} vs {}", m.fine_error);
}

#[test]
fn sqrt_branch_falls_back_pole_free() {
    let dir = TempDir::new().unwrap();
    let out = caaa(&["aaaz", "--catalog", "sqrt-branch", "--mero", "0"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let m = model(dir.path());
    assert_eq!(m.status, "bad_pole_fallback");
    assert!(m.fine_error <= 1e-7, "{}", m.fine_error);
    assert!(m.poles.iter().all(|p| p[0].hypot(p[1]) > 1.0));
}

#[test]
fn abs_poles_come_in_conjugate_pairs() {
    let dir = TempDir::new().unwrap();
    let out = caaa(&["aaax", "--fn", "abs(x)"], dir.path());
    assert!(matches!(out.status.code(), Some(0 | 3)));
    let m = model(dir.path());
    assert!(m.degree >= 90);
    for p in &m.poles {
        let twin = m.poles.iter().any(|q| (q[0] - p[0]).abs() + (q[1] + p[1]).abs() <= 1e-8 * p[0].hypot(p[1]).max(1e-300));
        assert!(twin, "{p:?} has no conjugate");
    }
}

#[test]
fn degree_cap_exits_two() {
    let dir = TempDir::new().unwrap();
    let out = caaa(&["aaax", "--fn", "abs(x)", "--degree", "10"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(model(dir.path()).degree, 10);
}

#[test]
fn lawson_and_plots() {
    let dir = TempDir::new().unwrap();
    let out = caaa(&["aaax", "--catalog", "cmv", "--degree", "12", "--lawson", "20", "--plot"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let m = model(dir.path());
    assert_eq!(m.lawson.as_ref().unwrap().steps_taken, 20);
    for name in ["convergence.svg", "error.svg"] {
        let svg = std::fs::read_to_string(dir.path().join(name)).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"), "{name}");
    }
}

#[test]
fn runs_are_byte_identical() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for dir in [&a, &b] {
        let out = caaa(&["aaai", "--catalog", "two-branch-axis", "--plot"], dir.path());
        assert_eq!(out.status.code(), Some(0));
    }
    for name in ["model.json", "history.csv", "error_curve.csv", "convergence.svg", "error.svg"] {
        let read = |d: &TempDir| std::fs::read(d.path().join(name)).unwrap();
        assert_eq!(read(&a), read(&b), "{name}");
    }
}

#[test]
fn errors_exit_one_without_output() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["aaax", "--fn", "exp("][..],
        &["aaax", "--fn", "x", "--catalog", "cmv"],
        &["aaax"],
        &["aaaz", "--catalog", "runge-exp"],
        &["aaax", "--fn", "x", "--mero", "1"],
        &["aaax", "--fn", "1/(x+1)"],
        &["aaax", "--fn", "x", "--tol", "-1"],
    ] {
        let out = caaa(args, dir.path());
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn catalog_lists_entries() {
    let out = Command::new(env!("CARGO_BIN_EXE_caaa")).arg("catalog").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), caaa::funcspec::catalog().len());
    assert!(text.contains("sqrt-branch"));
}
