//! Command-line surface and the commands behind it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bitrace_core::biterm::{crosscheck, ConsensualBitermSet};
use bitrace_core::eval::{compare, evaluate, EvalReport, StatResult};
use bitrace_core::model::{CodeSlot, PartName, TraceMatrix};
use bitrace_core::pipeline::{collect_parses, extract_profiles, run, Corpus, ParseBundle, PipelineOutput};
use bitrace_core::text::{normalize_tokens, tokenize};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use serde::Serialize;
use serde_json::json;

use crate::config::{ModelName, Overrides, RunConfig};
use crate::error::{AppError, Result, StageExt};
use crate::io::{
    load_code_facts, load_conllu_bundle, load_requirements, load_rtm, scan_java_sources, RequirementFormat,
};
use crate::output::{
    enriched_json, input_digest, inventory_csv, pr_curve_csv, ranked_csv, read_ranked, sha256_hex, similarity_csv,
    write_file, write_json,
};

#[derive(Debug, Parser)]
#[command(
    name = "bitrace",
    version,
    about = "Requirements-to-code trace link recovery with consensual biterms"
)]
pub struct Cli {
    /// Log more (repeat for debug output).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score and rerank every requirement-class pair.
    Trace(TraceArgs),
    /// Evaluate a reranked list against a trace matrix.
    Eval(EvalArgs),
    /// Write candidate and consensual biterm inventories.
    Biterms(InputArgs),
    /// Print a corpus summary as JSON.
    Stats(InputArgs),
    /// Extract code facts from Java sources.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Requirement file or directory.
    #[arg(long)]
    pub requirements: Option<PathBuf>,
    /// auto, json or sectioned_text
    #[arg(long, value_parser = parse_format)]
    pub requirements_format: Option<RequirementFormat>,
    /// Directory of Java sources.
    #[arg(long)]
    pub code: Option<PathBuf>,
    /// Code facts JSON.
    #[arg(long)]
    pub facts: Option<PathBuf>,
    /// CoNLL-U file or directory with parses of requirement and comment text.
    #[arg(long)]
    pub parses: Option<PathBuf>,
    /// Gold trace matrix CSV.
    #[arg(long)]
    pub rtm: Option<PathBuf>,
    /// Extra stop-word list (repeatable).
    #[arg(long = "stop-list")]
    pub stop_lists: Vec<PathBuf>,
    /// Do not start from the built-in stop lists.
    #[arg(long)]
    pub no_default_stop_words: bool,
    /// Dependency labels that qualify a requirement biterm, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub relations: Option<Vec<String>>,
    /// Output directory.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn parse_format(s: &str) -> std::result::Result<RequirementFormat, String> {
    match s {
        "auto" => Ok(RequirementFormat::Auto),
        "json" => Ok(RequirementFormat::Json),
        "sectioned" | "sectioned_text" | "text" => Ok(RequirementFormat::SectionedText),
        _ => Err(format!("unknown format `{s}`; expected auto, json or sectioned")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
    /// IR model
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    /// LSI dimensions, required with `--model lsi`
    #[arg(long)]
    pub lsi_k: Option<usize>,
    /// Keep biterm tokens out of the index.
    #[arg(long)]
    pub no_enrich: bool,
    /// Pass IR scores through unadjusted.
    #[arg(long)]
    pub no_adjust: bool,
    /// Apply the global weight only.
    #[arg(long)]
    pub lambda_only: bool,
    /// Plain IR: no biterms, no enrichment, no adjustment.
    #[arg(long)]
    pub ir_only: bool,
    /// Multiplier for links sharing no consensual biterm.
    #[arg(long)]
    pub penalty: Option<f64>,
    /// Also write the enriched documents as JSON.
    #[arg(long)]
    pub dump_enriched: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Reranked CSV from `trace`.
    #[arg(long)]
    pub ranked: PathBuf,
    #[arg(long)]
    pub rtm: PathBuf,
    /// Second reranked CSV to test against.
    #[arg(long)]
    pub against: Option<PathBuf>,
    #[arg(long, short, default_value = "eval")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Directory of Java sources.
    pub dir: PathBuf,
    /// Output JSON; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

impl InputArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            requirements: self.requirements.clone(),
            requirements_format: self.requirements_format,
            code: self.code.clone(),
            code_facts: self.facts.clone(),
            parses: self.parses.clone(),
            rtm: self.rtm.clone(),
            stop_lists: self.stop_lists.clone(),
            no_default_stop_words: self.no_default_stop_words,
            relations: self.relations.clone(),
            out: self.out.clone(),
            ..Default::default()
        }
    }

    fn base_config(&self) -> Result<RunConfig> {
        match &self.config {
            Some(path) => RunConfig::load(path),
            None => Ok(RunConfig::default()),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        self.base_config()?.apply(self.overrides())
    }
}

impl TraceArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let o = Overrides {
            model: self.model,
            lsi_k: self.lsi_k,
            no_enrich: self.no_enrich,
            no_adjust: self.no_adjust,
            lambda_only: self.lambda_only,
            ir_only: self.ir_only,
            penalty: self.penalty,
            dump_enriched: self.dump_enriched,
            ..self.inputs.overrides()
        };
        self.inputs.base_config()?.apply(o)
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Trace(args) => cmd_trace(&args.resolve()?).map(|_| ()),
        Command::Eval(args) => cmd_eval(&args).map(|_| ()),
        Command::Biterms(args) => cmd_biterms(&args.resolve()?).map(|_| ()),
        Command::Stats(args) => {
            let stats = cmd_stats(&args.resolve()?)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&stats).map_err(|e| AppError::Internal(e.to_string()))?
            );
            Ok(())
        }
        Command::Scan(args) => cmd_scan(&args),
    }
}

/// The loaded inputs of a run.
pub struct Inputs {
    pub corpus: Corpus,
    pub bundle: ParseBundle,
    pub rtm: Option<TraceMatrix>,
}

pub fn load_inputs(cfg: &RunConfig) -> Result<Inputs> {
    cfg.require_corpus()?;
    let i = &cfg.inputs;
    let requirements = load_requirements(i.requirements.as_deref().expect("checked"), i.requirements_format)?;
    let classes = match (&i.code, &i.code_facts) {
        (Some(dir), _) => scan_java_sources(dir)?,
        (None, Some(facts)) => load_code_facts(facts)?,
        (None, None) => unreachable!("checked by require_corpus"),
    };
    let corpus = Corpus { requirements, classes };
    corpus.validate().stage("load")?;
    let bundle = match &i.parses {
        Some(p) => load_conllu_bundle(p)?,
        None => ParseBundle::new(),
    };
    let rtm = match &i.rtm {
        Some(p) => {
            let rtm = load_rtm(p)?;
            rtm.validate(
                corpus.requirements.iter().map(|r| r.id.as_str()),
                corpus.classes.iter().map(|c| c.id.as_str()),
            )
            .map_err(|e| AppError::format(p, e))?;
            Some(rtm)
        }
        None => None,
    };
    Ok(Inputs { corpus, bundle, rtm })
}

fn run_pipeline(cfg: &RunConfig, inputs: &Inputs) -> Result<PipelineOutput> {
    let options = cfg.pipeline_options()?;
    // corpus problems were reported at load; what fails here is a stage
    run(&inputs.corpus, &inputs.bundle, &options).stage("pipeline")
}

#[derive(Debug, Serialize)]
pub struct CorpusStats {
    pub requirements: usize,
    pub use_cases: usize,
    pub issues: usize,
    pub parts: BTreeMap<&'static str, usize>,
    pub classes: usize,
    pub identifiers: BTreeMap<&'static str, usize>,
    pub requirement_terms: usize,
    pub code_terms: usize,
    pub parsed_sentences: usize,
    pub trace_links: Option<usize>,
}

fn corpus_stats(inputs: &Inputs, cfg: &RunConfig) -> Result<CorpusStats> {
    let stop = cfg.stop_words()?;
    let corpus = &inputs.corpus;
    let mut parts = BTreeMap::new();
    let mut requirement_terms = 0;
    for r in &corpus.requirements {
        for (p, text) in &r.parts {
            *parts.entry(p.as_str()).or_insert(0) += 1;
            requirement_terms += normalize_tokens(&tokenize(text), &stop).len();
        }
    }
    let mut identifiers = BTreeMap::new();
    for slot in CodeSlot::IDENTIFIERS.into_iter().chain([CodeSlot::Comment]) {
        identifiers.insert(slot.as_str(), corpus.classes.iter().map(|c| c.slot(slot).len()).sum());
    }
    let code_terms = corpus
        .classes
        .iter()
        .flat_map(|c| c.comments.iter())
        .map(|t| normalize_tokens(&tokenize(t), &stop).len())
        .sum();
    let use_cases = corpus
        .requirements
        .iter()
        .filter(|r| r.kind.parts().contains(&PartName::MainFlow))
        .count();
    Ok(CorpusStats {
        requirements: corpus.requirements.len(),
        use_cases,
        issues: corpus.requirements.len() - use_cases,
        parts,
        classes: corpus.classes.len(),
        identifiers,
        requirement_terms,
        code_terms,
        parsed_sentences: inputs.bundle.len(),
        trace_links: inputs.rtm.as_ref().map(TraceMatrix::len),
    })
}

pub fn cmd_stats(cfg: &RunConfig) -> Result<CorpusStats> {
    let inputs = load_inputs(cfg)?;
    corpus_stats(&inputs, cfg)
}

fn manifest_notes(cfg: &RunConfig, out: &PipelineOutput) -> Vec<String> {
    let mut notes = Vec::new();
    let prov = &out.provenance;
    if cfg.biterms.enabled && prov.degraded_sentences > 0 {
        notes.push(format!(
            "{} of {} sentences had no dependency parse and were paired by word window; biterm extraction for {} artifacts ran in degraded mode",
            prov.degraded_sentences,
            prov.degraded_sentences + prov.dependency_sentences,
            prov.degraded_owners.len()
        ));
    }
    if cfg.biterms.enabled && out.consensual.is_empty() {
        notes.push("no consensual biterms found; reranking only applied the penalty".into());
    }
    if cfg.inputs.default_stop_words {
        notes.push("built-in English and Java stop lists in use; absolute scores depend on the stop list".into());
    }
    if cfg.inputs.stop_lists.is_empty() && !cfg.inputs.default_stop_words {
        notes.push("no stop words removed".into());
    }
    notes
}

/// Runs the pipeline and writes similarity, reranked lists and manifest.
pub fn cmd_trace(cfg: &RunConfig) -> Result<PipelineOutput> {
    let inputs = load_inputs(cfg)?;
    let out = run_pipeline(cfg, &inputs)?;
    let dir = &cfg.output.dir;
    write_file(&dir.join("similarity.csv"), &similarity_csv(&out.similarity)?)?;
    write_file(&dir.join("reranked.csv"), &ranked_csv(&out.reranked)?)?;
    if cfg.output.dump_enriched {
        write_json(&dir.join("enriched.json"), &enriched_json(&out.documents))?;
    }
    let config_json = cfg.canonical_json();
    let mut digests = BTreeMap::new();
    let i = &cfg.inputs;
    for (name, path) in [
        ("requirements", &i.requirements),
        ("code", &i.code),
        ("code_facts", &i.code_facts),
        ("parses", &i.parses),
        ("rtm", &i.rtm),
    ] {
        if let Some(p) = path {
            digests.insert(name, input_digest(p)?);
        }
    }
    let manifest = json!({
        "tool": "bitrace",
        "version": env!("CARGO_PKG_VERSION"),
        "config": serde_json::from_str::<serde_json::Value>(&config_json).expect("valid json"),
        "config_sha256": sha256_hex(config_json.as_bytes()),
        "input_sha256": digests,
        "corpus": corpus_stats(&inputs, cfg)?,
        "model": cfg.model().name(),
        "arm": cfg.arm().map_or("custom", |a| a.name()),
        "consensual_biterms": out.consensual.len(),
        "parse_provenance": out.provenance,
        "index": {
            "documents": out.index.n_docs(),
            "tokens": out.index.n_tokens(),
            "empty_documents": out.index.empty_docs,
        },
        "notes": manifest_notes(cfg, &out),
    });
    write_json(&dir.join("manifest.json"), &manifest)?;
    info!(
        "traced {} requirements against {} classes; {} consensual biterms; wrote {}",
        inputs.corpus.requirements.len(),
        inputs.corpus.classes.len(),
        out.consensual.len(),
        dir.display()
    );
    Ok(out)
}

/// Candidate and consensual biterm inventories.
pub fn cmd_biterms(cfg: &RunConfig) -> Result<ConsensualBitermSet> {
    if !cfg.biterms.enabled {
        return Err(AppError::Config("biterm extraction is disabled".into()));
    }
    let inputs = load_inputs(cfg)?;
    let options = cfg.pipeline_options()?;
    // no index is built, so a corpus without classes is fine here
    let parses = collect_parses(&inputs.corpus, &inputs.bundle).stage("parse")?;
    let (reqs, classes) = extract_profiles(&inputs.corpus, &parses, &options.relations).stage("extract")?;
    let consensual = crosscheck(&reqs, &classes);
    let dir = &cfg.output.dir;
    let all = reqs.iter().chain(&classes);
    write_file(&dir.join("candidates.csv"), &inventory_csv(all.clone(), None)?)?;
    write_file(&dir.join("consensual.csv"), &inventory_csv(all, Some(&consensual))?)?;
    info!("{} consensual biterms; wrote {}", consensual.len(), dir.display());
    Ok(consensual)
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub against: PathBuf,
    pub against_report: EvalReport,
    pub f_sample_sizes: (usize, usize),
    pub test: StatResult,
}

#[derive(Debug, Serialize)]
pub struct EvalOutput {
    pub ranked: PathBuf,
    pub report: EvalReport,
    pub comparison: Option<Comparison>,
}

fn evaluate_file(path: &Path, rtm: &TraceMatrix) -> Result<EvalReport> {
    let lists = read_ranked(path)?;
    evaluate(&lists, rtm).map_err(|e| AppError::format(path, e))
}

/// Report JSON and PR curve, with a significance test when `--against`
/// is given.
pub fn cmd_eval(args: &EvalArgs) -> Result<EvalOutput> {
    let rtm = load_rtm(&args.rtm)?;
    let report = evaluate_file(&args.ranked, &rtm)?;
    let comparison = match &args.against {
        Some(other) => {
            let against_report = evaluate_file(other, &rtm)?;
            let test = compare(&report.f_at_recall, &against_report.f_at_recall).stage("statistics")?;
            Some(Comparison {
                against: other.clone(),
                f_sample_sizes: (report.f_at_recall.len(), against_report.f_at_recall.len()),
                against_report,
                test,
            })
        }
        None => None,
    };
    if report.f_at_recall.is_empty() {
        warn!("no relevant link was retrieved");
    }
    write_file(
        &args.out.join("pr_curve.csv"),
        &pr_curve_csv(&report.precision_recall_points, &report.f_at_recall)?,
    )?;
    let output = EvalOutput {
        ranked: args.ranked.clone(),
        report,
        comparison,
    };
    write_json(&args.out.join("report.json"), &output)?;
    info!("AP {:.4}, MAP {:.4}", output.report.ap, output.report.map);
    Ok(output)
}

pub fn cmd_scan(args: &ScanArgs) -> Result<()> {
    let facts = scan_java_sources(&args.dir)?;
    match &args.out {
        Some(path) => write_json(path, &facts),
        None => {
            println!(
                "{}",
                serde_json::to_string_pretty(&facts).map_err(|e| AppError::Internal(e.to_string()))?
            );
            Ok(())
        }
    }
}
