#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bitrace::config::{Overrides, RunConfig};

pub const UC: &str = "UC35";
pub const EMAIL_UTIL: &str = "edu.ncsu.csc.itrust.EmailUtil";

pub fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini")
}

/// Run configuration for the mini corpus with extra overrides.
pub fn mini_config(extra: Overrides) -> RunConfig {
    let dir = fixture();
    RunConfig::default()
        .apply(Overrides {
            requirements: Some(dir.join("requirements")),
            code: Some(dir.join("src")),
            parses: Some(dir.join("parses.conllu")),
            rtm: Some(dir.join("rtm.csv")),
            ..extra
        })
        .expect("valid config")
}

pub fn bitrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bitrace"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

/// Input flags for the mini corpus.
pub fn mini_args() -> Vec<String> {
    let dir = fixture();
    vec![
        "--requirements".into(),
        dir.join("requirements").display().to_string(),
        "--code".into(),
        dir.join("src").display().to_string(),
        "--parses".into(),
        dir.join("parses.conllu").display().to_string(),
    ]
}

pub fn run_ok(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = bitrace(&refs);
    assert!(
        out.status.success(),
        "bitrace {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}
