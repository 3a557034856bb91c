//! The command-line driver end to end on the mini corpus.

mod common;

use std::fs;
use std::path::Path;

use common::{bitrace, fixture, mini_args, run_ok, EMAIL_UTIL};
use serde_json::Value;

fn trace(out: &Path, extra: &[&str]) {
    let mut args = vec!["trace".to_string()];
    args.extend(mini_args());
    args.extend(["--out".to_string(), out.display().to_string()]);
    args.extend(extra.iter().map(|s| s.to_string()));
    run_ok(&args);
}

fn read(path: &Path) -> Vec<u8> {
    fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn json(path: &Path) -> Value {
    serde_json::from_slice(&read(path)).unwrap()
}

#[test]
fn trace_writes_outputs_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    trace(&out, &["--dump-enriched"]);
    let files = ["similarity.csv", "reranked.csv", "manifest.json", "enriched.json"];
    let first: Vec<Vec<u8>> = files.iter().map(|f| read(&out.join(f))).collect();
    trace(&out, &["--dump-enriched"]);
    for (f, bytes) in files.iter().zip(&first) {
        assert_eq!(&read(&out.join(f)), bytes, "{f} changed between runs");
    }
    let reranked = String::from_utf8(first[1].clone()).unwrap();
    assert!(reranked.starts_with("req_id,class_id,ir_initial,lambda,theta,ir_new,rank\n"));
    assert!(reranked
        .lines()
        .nth(1)
        .unwrap()
        .starts_with(&format!("UC35,{EMAIL_UTIL},")));
    let similarity = String::from_utf8(first[0].clone()).unwrap();
    assert!(similarity.starts_with("req_id,class_id,score\n"));
    assert_eq!(similarity.lines().count(), reranked.lines().count());

    let manifest = json(&out.join("manifest.json"));
    assert_eq!(manifest["consensual_biterms"], 2);
    assert_eq!(manifest["config_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(manifest["corpus"]["requirements"], 1);
    assert_eq!(manifest["parse_provenance"]["degraded_sentences"], 0);
    assert_eq!(manifest["config"]["ir"]["model"], "vsm");
    let enriched = json(&out.join("enriched.json"));
    let uc = enriched
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["owner"] == "UC35")
        .unwrap();
    assert_eq!(uc["biterm_counts"]["email__send"], 2);
}

#[test]
fn no_enrich_no_adjust_equals_ir_only() {
    let dir = tempfile::tempdir().unwrap();
    for model in [
        &["--model", "vsm"][..],
        &["--model", "lsi", "--lsi-k", "4"],
        &["--model", "js"],
    ] {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        trace(&a, &[model, &["--no-enrich", "--no-adjust"]].concat());
        trace(&b, &[model, &["--ir-only"]].concat());
        for f in ["similarity.csv", "reranked.csv"] {
            assert_eq!(read(&a.join(f)), read(&b.join(f)), "{model:?} {f}");
        }
    }
}

#[test]
fn config_errors_exit_with_one() {
    let mut args = vec!["trace".to_string()];
    args.extend(mini_args());
    args.extend(["--model", "lsi"].map(String::from));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = bitrace(&refs);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lsi_k"));

    let mut too_big = refs.clone();
    too_big.extend(["--lsi-k", "1000", "--out", "/nonexistent/never"]);
    let out = bitrace(&too_big);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));

    let mut conflict = refs[..refs.len() - 2].to_vec();
    conflict.extend(["--ir-only", "--lambda-only"]);
    assert_eq!(bitrace(&conflict).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let req = dir.path().join("bad.json");
    fs::write(&req, r#"[{"id":"I1","kind":"issue","parts":{"main_flow":"text"}}]"#).unwrap();
    let src = fixture().join("src");
    let out = bitrace(&[
        "stats",
        "--requirements",
        req.to_str().unwrap(),
        "--code",
        src.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("part not admissible for kind issue"), "{err}");
    assert!(err.contains("summary, description"), "{err}");

    let conllu = dir.path().join("p.conllu");
    fs::write(
        &conllu,
        "# sent_id = req:UC99:title:1\n1\tSend\tsend\tVERB\t_\t_\t0\troot\t_\t_\n",
    )
    .unwrap();
    let mut args = mini_args();
    args[5] = conllu.display().to_string();
    args.insert(0, "stats".into());
    args.extend(["--out".into(), dir.path().display().to_string()]);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    // stats does not parse; biterms does and rejects the locator
    assert!(bitrace(&refs).status.success());
    let mut b = refs.clone();
    b[0] = "biterms";
    let out = bitrace(&b);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unresolvable sentence locator"));
}

#[test]
fn eval_reports_and_compares_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (ir, full) = (dir.path().join("ir"), dir.path().join("full"));
    trace(&ir, &["--ir-only"]);
    trace(&full, &[]);
    let rtm = fixture().join("rtm.csv");
    let report_dir = dir.path().join("eval");
    run_ok(&[
        "eval".into(),
        "--ranked".into(),
        full.join("reranked.csv").display().to_string(),
        "--rtm".into(),
        rtm.display().to_string(),
        "--against".into(),
        ir.join("reranked.csv").display().to_string(),
        "--out".into(),
        report_dir.display().to_string(),
    ]);
    let report = json(&report_dir.join("report.json"));
    let ap_full = report["report"]["ap"].as_f64().unwrap();
    let ap_ir = report["comparison"]["against_report"]["ap"].as_f64().unwrap();
    assert!(ap_full > ap_ir, "{ap_full} vs {ap_ir}");
    // EmailUtil first and the other link eighth: (1 + 2/8) / 2
    assert!((ap_full - 0.625).abs() < 1e-12);
    let test = &report["comparison"]["test"];
    assert_eq!(test["method"], "exact");
    assert!((0.0..=1.0).contains(&test["p_value"].as_f64().unwrap()));
    let curve = String::from_utf8(read(&report_dir.join("pr_curve.csv"))).unwrap();
    assert_eq!(curve.lines().next(), Some("recall,precision,f"));
    assert_eq!(curve.lines().count(), 3);

    // a run against itself
    let self_dir = dir.path().join("self");
    let ranked = full.join("reranked.csv").display().to_string();
    run_ok(&[
        "eval".into(),
        "--ranked".into(),
        ranked.clone(),
        "--rtm".into(),
        rtm.display().to_string(),
        "--against".into(),
        ranked.clone(),
        "--out".into(),
        self_dir.display().to_string(),
    ]);
    let report = json(&self_dir.join("report.json"));
    assert_eq!(report["comparison"]["test"]["p_value"], 1.0);
    assert_eq!(report["comparison"]["test"]["cliffs_delta"], 0.0);

    // missing trace matrix
    let out = bitrace(&["eval", "--ranked", &ranked, "--rtm", "/no/such/rtm.csv"]);
    assert_eq!(out.status.code(), Some(2));

    // links the ranked list does not contain are listed
    let odd = dir.path().join("odd.csv");
    fs::write(&odd, "req_id,class_id\nUC35,edu.ncsu.csc.itrust.Missing\nUC99,X\n").unwrap();
    let out = bitrace(&["eval", "--ranked", &ranked, "--rtm", odd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("UC35->edu.ncsu.csc.itrust.Missing") && err.contains("UC99->X"),
        "{err}"
    );
}

#[test]
fn biterm_inventories() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["biterms".to_string()];
    args.extend(mini_args());
    args.extend(["--out".into(), dir.path().display().to_string()]);
    run_ok(&args);
    let consensual = fs::read_to_string(dir.path().join("consensual.csv")).unwrap();
    let mut lines = consensual.lines();
    assert_eq!(lines.next(), Some("owner,slot,term_a,term_b,count"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.contains(&"UC35,sub_flow,email,fake,2"));
    assert!(rows.contains(&"UC35,sub_flow,email,send,2"));
    assert!(rows.contains(&format!("{EMAIL_UTIL},method_name,email,send,1").as_str()));
    let pairs: std::collections::BTreeSet<(&str, &str)> = rows
        .iter()
        .map(|r| {
            let f: Vec<&str> = r.split(',').collect();
            (f[2], f[3])
        })
        .collect();
    assert_eq!(
        pairs.into_iter().collect::<Vec<_>>(),
        [("email", "fake"), ("email", "send")]
    );

    // candidate counts add up to what the pipeline extracted
    let candidates = fs::read_to_string(dir.path().join("candidates.csv")).unwrap();
    let total: usize = candidates
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum();
    let cfg = common::mini_config(Default::default());
    let inputs = bitrace::commands::load_inputs(&cfg).unwrap();
    let out = bitrace_core::pipeline::run(&inputs.corpus, &inputs.bundle, &cfg.pipeline_options().unwrap()).unwrap();
    let expected: usize = out
        .req_profiles
        .iter()
        .chain(&out.code_profiles)
        .flat_map(|p| p.biterms().map(|b| p.total(b)).collect::<Vec<_>>())
        .sum();
    assert_eq!(total, expected);

    // no classes: nothing is consensual
    let empty = dir.path().join("empty.json");
    fs::write(&empty, "[]").unwrap();
    let out_dir = dir.path().join("none");
    let req = fixture().join("requirements");
    run_ok(&[
        "biterms".into(),
        "--requirements".into(),
        req.display().to_string(),
        "--facts".into(),
        empty.display().to_string(),
        "--out".into(),
        out_dir.display().to_string(),
    ]);
    let consensual = fs::read_to_string(out_dir.join("consensual.csv")).unwrap();
    assert_eq!(consensual, "owner,slot,term_a,term_b,count\n");
}

#[test]
fn scanned_facts_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let facts = dir.path().join("facts.json");
    run_ok(&[
        "scan".into(),
        fixture().join("src").display().to_string(),
        "--out".into(),
        facts.display().to_string(),
    ]);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    trace(&a, &[]);
    let fixture_dir = fixture();
    run_ok(&[
        "trace".into(),
        "--requirements".into(),
        fixture_dir.join("requirements").display().to_string(),
        "--facts".into(),
        facts.display().to_string(),
        "--parses".into(),
        fixture_dir.join("parses.conllu").display().to_string(),
        "--out".into(),
        b.display().to_string(),
    ]);
    assert_eq!(read(&a.join("reranked.csv")), read(&b.join("reranked.csv")));
}

#[test]
fn toml_config_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        format!(
            "[inputs]\nrequirements = {:?}\ncode = {:?}\nparses = {:?}\nrtm = {:?}\n\n[ir]\nmodel = \"lsi\"\nlsi_k = 3\n\n[output]\ndir = \"out\"\n",
            f.join("requirements"),
            f.join("src"),
            f.join("parses.conllu"),
            f.join("rtm.csv")
        ),
    )
    .unwrap();
    let cfg_path = cfg.display().to_string();
    run_ok(&["trace".into(), "--config".into(), cfg_path.clone()]);
    let manifest = json(&dir.path().join("out/manifest.json"));
    assert_eq!(manifest["model"], "lsi");
    assert_eq!(manifest["config"]["ir"]["lsi_k"], 3);

    let out = run_ok(&["stats".into(), "--config".into(), cfg_path]);
    let stats: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stats["requirements"], 1);
    assert_eq!(stats["use_cases"], 1);
    assert_eq!(stats["parts"]["sub_flow"], 1);
    assert_eq!(stats["trace_links"], 2);
    assert_eq!(stats["parsed_sentences"], 17);
}

#[test]
fn bundled_config_with_output_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = fixture().join("config.toml").display().to_string();
    run_ok(&[
        "trace".into(),
        "--config".into(),
        cfg,
        "-o".into(),
        dir.path().display().to_string(),
    ]);
    let manifest = json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["model"], "lsi");
    assert_eq!(manifest["arm"], "b+lambda+theta");
    let reranked = fs::read_to_string(dir.path().join("reranked.csv")).unwrap();
    assert!(reranked
        .lines()
        .nth(1)
        .unwrap()
        .starts_with(&format!("UC35,{EMAIL_UTIL},")));
    assert!(!fixture().join("out").exists());
}
