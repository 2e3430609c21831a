use std::path::PathBuf;
use std::process::{Command, Output};

fn systems(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../systems");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn skewcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value(out: &Output, key: &str) -> Option<String> {
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')).map(str::to_string))
}

#[test]
fn shipped_systems_validate() {
    for name in ["example19.sys", "example19_partial.sys", "example19_formal.sys", "swap.sys"] {
        let out = skewcat(&["validate", &systems(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
        assert_eq!(value(&out, "valid").as_deref(), Some("true"));
    }
}

#[test]
fn file_and_fixture_agree() {
    let file = skewcat(&["theorems", &systems("example19.sys")]);
    let closed = skewcat(&["theorems", &systems("example19_partial.sys")]);
    for key in ["dim", "top_free", "max_comm", "iip"] {
        assert_eq!(value(&file, key), value(&closed, key), "{key}");
    }
    assert_eq!(value(&closed, "closure_added").as_deref(), Some("2"));
    let commutant = skewcat(&["commutant", &systems("example19.sys")]);
    assert_eq!(value(&commutant, "commutant_dim").as_deref(), Some("7"));
}

#[test]
fn exit_codes() {
    let ok = skewcat(&["theorems", &systems("swap.sys")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(value(&ok, "witness").is_none());

    let failed = skewcat(&["iip", &systems("example19.sys")]);
    assert_eq!(failed.status.code(), Some(1));
    assert_eq!(value(&failed, "witness").as_deref(), Some("{-1:1, 0:0, 1:0}@X u[sqr]"));

    let missing = skewcat(&["analyze", "/definitely/not/here.sys"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(value(&missing, "error").is_some());
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("skewcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.sys");
    std::fs::write(&path, "coeff F2\nobject X\nmorphism f : X -> X\ncompose f . f = f\nspace X = {0}\n# the target is not a point\nmap f : 0 -> 5\n").unwrap();
    let out = skewcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(value(&out, "error").unwrap().starts_with("line 7:"), "{}", stdout(&out));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cap_overrides_warn_on_stderr() {
    let out = skewcat(&["iip", &systems("example19.sys"), "--cap", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(value(&out, "error").as_deref(), Some("dimension 13 exceeds the cap 8"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap overridden to 8"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["random", "--seed", "7", "--count", "25"];
    let a = skewcat(&args);
    let b = skewcat(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(value(&a, "violations").as_deref(), Some("0"));
    let a = skewcat(&["ideal", &systems("example19.sys"), "--gens", "u_abs; delta0"]);
    let b = skewcat(&["ideal", &systems("example19.sys"), "--gens", "u_abs; delta0"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn random_matches_the_documented_run() {
    let out = skewcat(&["random", "--profile", "group-action", "--count", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&out, "i_iff_iii").as_deref(), Some("100/100"));
    let rational = skewcat(&["random", "--profile", "transformation-monoid", "--count", "20", "--coeff", "Q"]);
    assert_eq!(value(&rational, "i_iff_iii").as_deref(), Some("20/20"));
}

#[test]
fn formal_products() {
    let out = skewcat(&["product", &systems("example19_formal.sys"), "(f_Y) u[id_Y]", "b"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&out, "product").as_deref(), Some("(f_Y^2) u[sqrt]"));
}
