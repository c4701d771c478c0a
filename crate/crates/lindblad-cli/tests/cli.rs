//! Exit-code and determinism contract of the binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lindblad"))
}

const AD_SPEC: &str = r#"{"n": 1, "H": [],
 "L": [[{"beta": 0.25, "pauli": "X"},
        {"beta": 0.25, "pauli": "Y", "phase": 1.5707963267948966}]]}"#;

// one file per test: the harness runs tests concurrently
fn spec_file(tag: &str) -> tempdir::Scoped {
    tempdir::write(&format!("{tag}-ad.json"), AD_SPEC)
}

/// Tiny scoped temp-file helper (no extra dev-dependency needed).
mod tempdir {
    use std::path::PathBuf;

    pub struct Scoped(pub PathBuf);

    impl Drop for Scoped {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }

    pub fn write(name: &str, contents: &str) -> Scoped {
        let mut p = std::env::temp_dir();
        p.push(format!("lindblad-cli-test-{}-{name}", std::process::id()));
        std::fs::write(&p, contents).unwrap();
        Scoped(p)
    }
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = bin().arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[config]:"));
}

#[test]
fn missing_spec_exits_2() {
    let out = bin().arg("norms").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--spec"));
}

#[test]
fn std_vs_new_matches_closed_forms() {
    let out = bin().args(["std-vs-new", "--delta-grid", "0.25"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.4444444444444444,0.8,true"), "{text}");
}

#[test]
fn schema_prints_columns_and_exits_0() {
    let out = bin().args(["simulate", "--schema"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("subcommand: simulate"));
    assert!(text.contains("diamond_lower"));
}

#[test]
fn reports_are_byte_identical_across_jobs() {
    let spec = spec_file("jobs");
    let run = |jobs: &str| {
        bin()
            .args(["lemma1", "--seed", "9", "--jobs", jobs, "--format", "json"])
            .arg("--spec")
            .arg(&spec.0)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn norms_passes_on_amplitude_damping() {
    let spec = spec_file("norms");
    let out = bin().arg("norms").arg("--spec").arg(&spec.0).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# version:"));
    assert!(text.lines().last().unwrap().ends_with("true"));
}
