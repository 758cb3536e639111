use std::fs;
use std::process::{Command, Output};

fn symorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symorb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_prints_the_euler_class() {
    let o = symorb(&["algebra", "validate", "P2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("euler class: 3/1*pt"), "{}", stdout(&o));
    let k3 = symorb(&["algebra", "validate", "K3"]);
    assert!(stdout(&k3).contains("integral of euler class: 24/1"));
}

#[test]
fn heisenberg_suite_exits_zero() {
    let o = symorb(&["verify", "heisenberg", "--algebra", "P2", "--max-n", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn jucys_suite_on_the_point() {
    let o = symorb(&["verify", "jucys", "--algebra", "point", "--n", "7"]);
    assert!(o.status.success());
}

#[test]
fn walgebra_is_refused_for_the_point() {
    let o = symorb(&["verify", "walg", "--algebra", "point"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d > 0"));
}

#[test]
fn caps_are_enforced() {
    let o = symorb(&["verify", "heisenberg", "--algebra", "K3", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--unsafe-caps"));
}

#[test]
fn literal_shape_reading_fails_with_exit_one() {
    let o = symorb(&["verify", "universality", "--algebra", "P2", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    let o = symorb(&["verify", "universality", "--algebra", "P2", "--max-n", "3", "--reading", "euler-twice"]);
    assert!(o.status.success());
}

#[test]
fn reports_are_byte_stable_across_widths_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (p, w) in [(&a, "1"), (&b, "3")] {
        let o = symorb(&["verify", "goulden", "--algebra", "point", "--out", p.to_str().unwrap(), "--threads", w]);
        assert!(o.status.success());
    }
    let ra = fs::read(&a).unwrap();
    assert_eq!(ra, fs::read(&b).unwrap());
    let text = String::from_utf8(ra.clone()).unwrap();
    assert!(text.contains("\"suite\"") && text.contains("\"cases\"") && text.contains("\"residual\""));
    let c = dir.path().join("c.json");
    assert!(symorb(&["export", a.to_str().unwrap(), "--out", c.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(&c).unwrap(), ra);
    let csv = symorb(&["export", a.to_str().unwrap(), "--format", "csv"]);
    assert!(stdout(&csv).starts_with("id,pass,residual\n"));
}

#[test]
fn stable_table_exports_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("t.json");
    let store = dir.path().join("store");
    let o = symorb(&[
        "stable", "tabulate", "--algebra", "point", "--max-norm", "4", "--out", json.to_str().unwrap(), "--store", store.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = symorb(&["export", json.to_str().unwrap(), "--format", "csv"]);
    let text = stdout(&csv);
    assert!(text.starts_with("rho,sigma,nu,coeff\n"));
    // transposition class squared on the point
    for row in ["1:2,1:2,1:1.1,2/1", "1:2,1:2,1:2.2,1/1", "1:2,1:2,1:3,4/1"] {
        assert!(text.contains(row), "{text}");
    }
    // a second run against the same store is accepted
    let again = symorb(&["stable", "tabulate", "--algebra", "point", "--max-norm", "4", "--store", store.to_str().unwrap()]);
    assert!(again.status.success());
    let again_csv = stdout(&again);
    assert_eq!(again_csv, text);
}

#[test]
fn toml_config_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "algebra = \"point\"\nmax_n = 4\ndeform = \"t=-1\"\n").unwrap();
    let o = symorb(&["verify", "goulden", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("note: deformation t=-1"));
}

#[test]
fn class_and_product_commands() {
    let o = symorb(&["class", "O", "--algebra", "point", "--n", "3", "--k", "1"]);
    assert!(o.status.success());
    // O^1(1, 3) = -(sum of transpositions) = -(1/2) p_{-2} p_{-1}|0>
    assert_eq!(stdout(&o).trim(), "-1/2\t1:2.1");
    let o = symorb(&["product", "--algebra", "P2", "--n", "2", "--rho", "x:1", "--sigma", "x:1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("pt:1"));
    let o = symorb(&["fock", "apply", "--algebra", "P2", "--mode", "-1", "--class", "x"]);
    assert_eq!(stdout(&o).trim(), "1/1\tx:1");
    let o = symorb(&["chern", "--algebra", "P2", "--class", "x", "--z-order", "1", "--hbar-order", "1"]);
    assert!(stdout(&o).contains("# z^1 hbar^1\n1/1\tx:1"));
}
