//! The `agemoa` binary end to end.

use std::fs;
use std::process::Command;

use agemoa::records::read_records;

fn agemoa() -> Command {
    Command::new(env!("CARGO_BIN_EXE_agemoa"))
}

#[test]
fn run_then_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.toml");
    fs::write(
        &config,
        "kind = \"mojzj\"\nn = 8\nm = 4\nk = 1\nstrategies = [\"classic\", \"aging\"]\nruns = 5\nmaster_seed = 9\noutput = \"ignored.csv\"\n",
    )
    .unwrap();
    let out = dir.path().join("res.csv");
    let status = agemoa()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(["--runs", "3", "--threads", "2"])
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    assert!(!dir.path().join("ignored.csv").exists());

    let records = read_records(fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(records.len(), 6);
    assert!(records
        .iter()
        .all(|r| r.first_hit_k.is_some() && r.first_hit_c.is_some()));

    let summary = agemoa().arg("summarize").arg(&out).output().unwrap();
    assert!(summary.status.success());
    let text = String::from_utf8(summary.stdout).unwrap();
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.contains("aging") && text.contains("classic"));
}

#[test]
fn small_population_triggers_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.toml");
    fs::write(
        &config,
        "kind = \"ojzj\"\nn = 6\nk = 2\nstrategies = [\"aging\"]\nmu = 6\ntau = 3\nruns = 1\nmaster_seed = 1\nmax_iterations = 100000\n",
    )
    .unwrap();
    let out = agemoa()
        .args(["run", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    // Without --out the records go to standard output.
    assert_eq!(read_records(out.stdout.as_slice()).unwrap().len(), 1);
}

#[test]
fn bad_inputs_fail() {
    assert!(!agemoa()
        .args(["sweep", "fig9"])
        .output()
        .unwrap()
        .status
        .success());
    assert!(!agemoa()
        .args(["run", "--config", "/nonexistent.toml"])
        .output()
        .unwrap()
        .status
        .success());
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "not,a,harness,file\n").unwrap();
    let out = agemoa().arg("summarize").arg(&bad).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn quick_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = agemoa()
        .arg("verify")
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(
        text.lines().filter(|l| l.starts_with("PASS")).count(),
        6,
        "{text}"
    );
}
