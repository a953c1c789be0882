use std::process::{Command, Output};

use realize_core::report::Report;

fn realize(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realize"))
        .args(args)
        .output()
        .expect("run realize")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn same_seed_gives_identical_json() {
    let a = realize(&["verify", "algebra", "--json", "--seed", "3"]);
    let b = realize(&["verify", "algebra", "--json", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let r = Report::from_json(&stdout(&a)).unwrap();
    assert_eq!(r.seed, 3);
    assert!(r.passed());
    assert!(r.checks.iter().all(|c| c.ms == 0 && !c.paper_ref.is_empty()));
}

#[test]
fn exit_codes_follow_the_report() {
    assert_eq!(realize(&["verify", "algebra"]).status.code(), Some(0));
    let failing = realize(&["verify", "frozen", "--json"]);
    assert_eq!(failing.status.code(), Some(1));
    let r = Report::from_json(&stdout(&failing)).unwrap();
    assert!(r.failures().all(|c| !c.residual.is_empty()));
}

#[test]
fn interacting_instant_form_fails_with_witnesses() {
    let o = realize(&["verify", "instant-form", "--f", "1", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = Report::from_json(&stdout(&o)).unwrap();
    let k1k2 = r.get("closure[K1,K2]").expect("closure check");
    assert!(k1k2.witness.is_some());
}

#[test]
fn invalid_options_exit_2() {
    assert_eq!(realize(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(realize(&["verify", "jacobi", "--mass", "-1"]).status.code(), Some(2));
    assert_eq!(realize(&["verify", "jacobi", "--mass", "x"]).status.code(), Some(2));
    assert_eq!(realize(&["verify", "instant-form", "--f", "q+"]).status.code(), Some(2));
}

#[test]
fn bracket_of_rotation_and_translation() {
    let o = realize(&["bracket", "-x2*@x1 + x1*@x2", "@x1", "--chart", "TR3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(-1)*@x2");
}

#[test]
fn schouten_bracket_of_bivectors() {
    let o = realize(&["bracket", "@x1^@x2", "x1*@x2^@x3", "--chart", "TR3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
    let o = realize(&["bracket", "@x1^@x2", "x1*@x2^@x3 + @x1^@x3"]);
    assert!(o.status.success());
}

#[test]
fn expr_normalize_cancels() {
    let o = realize(&["expr", "normalize", "(xd1^2 - 1)/(xd1 - 1)", "--chart", "TR3"]);
    assert_eq!(stdout(&o).trim(), "xd1 + 1");
    let o = realize(&["expr", "normalize", "w^2 + xd1^2 + xd2^2 + xd3^2"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn toml_chart_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.toml");
    std::fs::write(
        &path,
        r#"
name = "plane"
coordinates = ["a", "b"]
extensions = [{ symbol = "s", polynomial = "1 + a^2", branch = "positive" }]
"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = realize(&["expr", "normalize", "s^3 - a^2*s", "--chart", p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "s");
    let o = realize(&["bracket", "b*@a", "a*@b", "--chart", p]);
    assert_eq!(stdout(&o).trim(), "(-a)*@a + (b)*@b");
    std::fs::write(&path, "coordinates = 3").unwrap();
    assert_eq!(realize(&["expr", "normalize", "a", "--chart", p]).status.code(), Some(2));
}
