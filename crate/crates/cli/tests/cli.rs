use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn tdo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdo"))
        .args(args)
        .env_remove("TDO_MAX_QUBITS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON report")
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("tdo-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn metrics_of_fixtures() {
    let out = tdo(&["metrics", &fixture("toffoli-nc.tdo")]);
    assert!(out.status.success());
    let m = stdout_json(&out);
    assert_eq!(m["t_count"], 7);
    assert_eq!(m["t_depth_as_written"], 6);
    let m = stdout_json(&tdo(&["metrics", &fixture("toffoli-ammr.tdo")]));
    assert_eq!(m["t_depth_scheduled"], 3);
}

#[test]
fn json_report_on_stderr() {
    let out = tdo(&["--json", "metrics", &fixture("toffoli-nc4.tdo")]);
    let r = report(&out);
    assert_eq!(r["command"], "metrics");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["payload"]["t_depth_scheduled"], 4);
    assert!(r.get("error").is_none());
}

#[test]
fn missing_file_is_io_error() {
    let out = tdo(&["--json", "metrics", "/nonexistent/x.tdo"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "error");
    assert!(r.get("payload").is_none());
}

#[test]
fn parse_error_has_position() {
    let f = temp_file("bad.tdo", "qubits 2\ncx 0 5\n");
    let out = tdo(&["--json", "parse", &f]);
    assert_eq!(out.status.code(), Some(1));
    let e = &report(&out)["error"];
    assert_eq!(
        (e["line"].as_u64(), e["column"].as_u64()),
        (Some(2), Some(6))
    );
}

#[test]
fn parse_prints_canonical_text() {
    let f = temp_file("messy.tdo", "# c\nqubits 2   # two\n\n  cx 0 1\n");
    let out = tdo(&["parse", &f]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "qubits 2\ncx 0 1\n");
}

#[test]
fn emit_constructions() {
    let out = tdo(&["--json", "emit", "toffoli-tdepth1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let c = tdo_core::parse(&text).unwrap();
    assert_eq!(c.depth(), 7);
    assert_eq!(report(&out)["payload"]["metrics"]["depth"], 7);

    let out = tdo(&["--json", "emit", "multi-controlled-x", "--controls", "5"]);
    assert_eq!(report(&out)["payload"]["metrics"]["t_count"], 31);

    assert_eq!(tdo(&["emit", "nosuch"]).status.code(), Some(1));
    assert_eq!(tdo(&["emit", "multi-controlled-x"]).status.code(), Some(1));
    assert_eq!(
        tdo(&["emit", "toffoli-nc", "--no-ancilla"]).status.code(),
        Some(1)
    );

    let out = tdo(&["--json", "emit", "controlled-t", "--no-ancilla"]);
    assert_eq!(report(&out)["payload"]["metrics"]["t_depth_scheduled"], 5);
}

#[test]
fn emit_is_deterministic() {
    let a = tdo(&["emit", "multi-controlled-x", "--controls", "4"]);
    let b = tdo(&["emit", "multi-controlled-x", "--controls", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rewrite_commands() {
    let out = tdo(&["--json", "rewrite", &fixture("toffoli-nc-core.tdo")]);
    assert!(out.status.success());
    let p = &report(&out)["payload"];
    assert_eq!(
        (p["t_depth"].as_u64(), p["ancillas_added"].as_u64()),
        (Some(1), Some(7))
    );

    let out = tdo(&[
        "--json",
        "rewrite",
        "--stages",
        "2",
        &fixture("toffoli-nc-core.tdo"),
    ]);
    let p = &report(&out)["payload"];
    assert!(p["t_depth"].as_u64().unwrap() <= 2);
    assert!(p["ancillas_added"].as_u64().unwrap() <= 4);

    let out = tdo(&["--json", "rewrite", &fixture("toffoli-nc.tdo")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["position"], 0);
}

#[test]
fn rewrite_output_pipes_into_verify() {
    let out = tdo(&["rewrite", &fixture("toffoli-nc-core.tdo")]);
    let f = temp_file("rewritten.tdo", &String::from_utf8(out.stdout).unwrap());
    let v = stdout_json(&tdo(&["verify", &f, &fixture("ccz.tdo")]));
    assert_eq!(v["equivalent"], true);
}

#[test]
fn verify_commands() {
    let out = tdo(&["emit", "toffoli-tdepth1"]);
    let f = temp_file("tdepth1.tdo", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(
        stdout_json(&tdo(&["verify", &f, &fixture("ccx.tdo")]))["equivalent"],
        true
    );
    let v = stdout_json(&tdo(&[
        "verify",
        &fixture("eq-tri-z.tdo"),
        &fixture("eq-tri-z-alt.tdo"),
    ]));
    assert_eq!(v["equivalent"], true);
    let v = stdout_json(&tdo(&["verify", &fixture("t.tdo"), &fixture("tdg.tdo")]));
    assert_eq!(v["equivalent"], false);

    // X Z X Z = -I: equal only up to a phase.
    let a = temp_file("xzxz.tdo", "qubits 1\nx 0\nz 0\nx 0\nz 0\n");
    let b = temp_file("empty.tdo", "qubits 1\n");
    assert_eq!(stdout_json(&tdo(&["verify", &a, &b]))["equivalent"], false);
    let v = stdout_json(&tdo(&["verify", &a, &b, "--up-to-global-phase"]));
    assert_eq!(
        (v["equivalent"].as_bool(), v["phase"].as_str()),
        (Some(true), Some("w^4"))
    );

    let dirty = temp_file("dirty.tdo", "qubits 1\nancillas 1\ncx 0 1\n");
    let plain = temp_file("plain.tdo", "qubits 1\n");
    let out = tdo(&["--json", "verify", &dirty, &plain]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["input"], 1);
}

#[test]
fn width_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tdo"))
        .args(["verify", &fixture("toffoli-nc.tdo"), &fixture("ccx.tdo")])
        .env("TDO_MAX_QUBITS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn obstruct_commands() {
    let v = stdout_json(&tdo(&["obstruct", "--builtin", "tht"]));
    assert_eq!(v["conclusion"], "no-tdepth1-possible");
    assert_eq!(v["e_zero"], "0/2^0 + 1/2^1*sqrt2");
    assert_eq!(v["e_plus"], "1/2^1 + 0/2^0*sqrt2");
    assert_eq!(v["ratio_rational"], false);
    let v = stdout_json(&tdo(&["obstruct", &fixture("t.tdo")]));
    assert_eq!(v["conclusion"], "inconclusive");
    let v = stdout_json(&tdo(&["obstruct", &fixture("h.tdo")]));
    assert_eq!(v["conclusion"], "inapplicable-e-plus-zero");
    assert!(v["ratio_rational"].is_null());
    assert_eq!(
        tdo(&["obstruct", &fixture("ccx.tdo")]).status.code(),
        Some(1)
    );
}
