//! Run configuration: a TOML file, then command-line overrides.

use std::path::{Path, PathBuf};

use bitrace_core::biterm::RelationSet;
use bitrace_core::ir::{IrModel, JsOptions};
use bitrace_core::pipeline::{Arm, PipelineOptions};
use bitrace_core::rerank::{AdjustMode, RerankOptions, DEFAULT_PENALTY};
use bitrace_core::text::StopWords;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};
use crate::io::{load_stop_list, read_text, RequirementFormat};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub inputs: Inputs,
    pub ir: IrConfig,
    pub biterms: BitermConfig,
    pub enrich: EnrichConfig,
    pub rerank: RerankConfig,
    pub output: OutputConfig,
    /// Reserved. The pipeline is deterministic and draws no random numbers.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Inputs {
    pub requirements: Option<PathBuf>,
    pub requirements_format: RequirementFormat,
    /// Directory of Java sources to scan.
    pub code: Option<PathBuf>,
    /// Pre-extracted code facts JSON, instead of `code`.
    pub code_facts: Option<PathBuf>,
    /// CoNLL-U file or directory.
    pub parses: Option<PathBuf>,
    pub rtm: Option<PathBuf>,
    pub stop_lists: Vec<PathBuf>,
    /// Start from the built-in English and Java stop lists.
    pub default_stop_words: bool,
}

impl Default for Inputs {
    fn default() -> Self {
        Inputs {
            requirements: None,
            requirements_format: RequirementFormat::Auto,
            code: None,
            code_facts: None,
            parses: None,
            rtm: None,
            stop_lists: Vec::new(),
            default_stop_words: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    #[default]
    Vsm,
    Lsi,
    Js,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JsWeights {
    #[default]
    Tfidf,
    Counts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IrConfig {
    pub model: ModelName,
    pub lsi_k: Option<usize>,
    pub js_weights: JsWeights,
    pub js_log_base: f64,
}

impl Default for IrConfig {
    fn default() -> Self {
        IrConfig {
            model: ModelName::Vsm,
            lsi_k: None,
            js_weights: JsWeights::Tfidf,
            js_log_base: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BitermConfig {
    pub enabled: bool,
    /// Dependency labels that qualify a pair; the built-in list when absent.
    pub relations: Option<Vec<String>>,
}

impl Default for BitermConfig {
    fn default() -> Self {
        BitermConfig {
            enabled: true,
            relations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnrichConfig {
    pub enabled: bool,
}

impl Default for EnrichConfig {
    fn default() -> Self {
        EnrichConfig { enabled: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    None,
    LambdaOnly,
    #[default]
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RerankConfig {
    pub mode: ModeName,
    pub penalty: f64,
}

impl Default for RerankConfig {
    fn default() -> Self {
        RerankConfig {
            mode: ModeName::Full,
            penalty: DEFAULT_PENALTY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub dump_enriched: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: PathBuf::from("out"),
            dump_enriched: false,
        }
    }
}

/// Command-line values that replace the file's.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub requirements: Option<PathBuf>,
    pub requirements_format: Option<RequirementFormat>,
    pub code: Option<PathBuf>,
    pub code_facts: Option<PathBuf>,
    pub parses: Option<PathBuf>,
    pub rtm: Option<PathBuf>,
    pub stop_lists: Vec<PathBuf>,
    pub no_default_stop_words: bool,
    pub model: Option<ModelName>,
    pub lsi_k: Option<usize>,
    pub relations: Option<Vec<String>>,
    pub no_enrich: bool,
    pub no_adjust: bool,
    pub lambda_only: bool,
    pub ir_only: bool,
    pub penalty: Option<f64>,
    pub out: Option<PathBuf>,
    pub dump_enriched: bool,
}

impl RunConfig {
    /// Parses TOML; relative paths are taken from `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| AppError::Config(e.to_string()))?;
        cfg.rebase(base);
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::from_toml(&text, base).map_err(|e| match e {
            AppError::Config(m) => AppError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        let inputs = &mut self.inputs;
        for p in [
            &mut inputs.requirements,
            &mut inputs.code,
            &mut inputs.code_facts,
            &mut inputs.parses,
            &mut inputs.rtm,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
        inputs.stop_lists.iter_mut().for_each(fix);
        fix(&mut self.output.dir);
    }

    /// Applies overrides, then checks the result.
    pub fn apply(mut self, o: Overrides) -> Result<Self> {
        let conflicts = [
            (o.ir_only && o.lambda_only, "--ir-only and --lambda-only"),
            (o.no_adjust && o.lambda_only, "--no-adjust and --lambda-only"),
            (o.code.is_some() && o.code_facts.is_some(), "--code and --facts"),
        ];
        if let Some((_, what)) = conflicts.iter().find(|(hit, _)| *hit) {
            return Err(AppError::Config(format!("conflicting options {what}")));
        }
        let i = &mut self.inputs;
        if o.requirements.is_some() {
            i.requirements = o.requirements;
        }
        if let Some(f) = o.requirements_format {
            i.requirements_format = f;
        }
        if o.code.is_some() {
            i.code = o.code;
            i.code_facts = None;
        }
        if o.code_facts.is_some() {
            i.code_facts = o.code_facts;
            i.code = None;
        }
        if o.parses.is_some() {
            i.parses = o.parses;
        }
        if o.rtm.is_some() {
            i.rtm = o.rtm;
        }
        i.stop_lists.extend(o.stop_lists);
        if o.no_default_stop_words {
            i.default_stop_words = false;
        }
        if let Some(m) = o.model {
            if m != self.ir.model {
                self.ir.lsi_k = None;
            }
            self.ir.model = m;
        }
        if o.lsi_k.is_some() {
            self.ir.lsi_k = o.lsi_k;
        }
        if o.relations.is_some() {
            self.biterms.relations = o.relations;
        }
        if o.ir_only {
            self.biterms.enabled = false;
            self.enrich.enabled = false;
            self.rerank.mode = ModeName::None;
        }
        if o.no_enrich {
            self.enrich.enabled = false;
        }
        if o.no_adjust {
            self.rerank.mode = ModeName::None;
        }
        if o.lambda_only {
            self.rerank.mode = ModeName::LambdaOnly;
        }
        if let Some(p) = o.penalty {
            self.rerank.penalty = p;
        }
        if let Some(out) = o.out {
            self.output.dir = out;
        }
        if o.dump_enriched {
            self.output.dump_enriched = true;
        }
        self.check()?;
        Ok(self)
    }

    pub fn check(&self) -> Result<()> {
        let err = |m: &str| Err(AppError::Config(m.to_string()));
        match (self.ir.model, self.ir.lsi_k) {
            (ModelName::Lsi, None) => return err("model lsi requires lsi_k (--lsi-k)"),
            (ModelName::Lsi, Some(0)) => return err("lsi_k must be at least 1"),
            (ModelName::Vsm | ModelName::Js, Some(_)) => return err("lsi_k is only valid with model lsi"),
            _ => {}
        }
        let base = self.ir.js_log_base;
        if !(base.is_finite() && base > 0.0 && base != 1.0) {
            return err("js_log_base must be positive and not 1");
        }
        let p = self.rerank.penalty;
        if !(p.is_finite() && p > 0.0 && p <= 1.0) {
            return err("rerank penalty must lie in (0, 1]");
        }
        if !self.biterms.enabled && (self.enrich.enabled || self.rerank.mode != ModeName::None) {
            return err("enrichment and adjustment need biterms; disable them too or enable biterms");
        }
        if self.biterms.relations.as_ref().is_some_and(|r| r.is_empty()) {
            return err("biterm relation list is empty");
        }
        if self.inputs.code.is_some() && self.inputs.code_facts.is_some() {
            return err("give either inputs.code or inputs.code_facts, not both");
        }
        Ok(())
    }

    /// Requires the inputs every pipeline command needs.
    pub fn require_corpus(&self) -> Result<()> {
        if self.inputs.requirements.is_none() {
            return Err(AppError::Config("no requirements input (--requirements)".into()));
        }
        if self.inputs.code.is_none() && self.inputs.code_facts.is_none() {
            return Err(AppError::Config("no code input (--code or --facts)".into()));
        }
        Ok(())
    }

    pub fn model(&self) -> IrModel {
        match self.ir.model {
            ModelName::Vsm => IrModel::Vsm,
            ModelName::Lsi => IrModel::Lsi {
                k: self.ir.lsi_k.unwrap_or(1),
            },
            ModelName::Js => IrModel::Js(JsOptions {
                tfidf: self.ir.js_weights == JsWeights::Tfidf,
                log_base: self.ir.js_log_base,
            }),
        }
    }

    /// The ablation arm the toggles select, if they match one.
    pub fn arm(&self) -> Option<Arm> {
        let toggles = (self.biterms.enabled, self.enrich.enabled, self.rerank.mode);
        Arm::ALL.into_iter().find(|&arm| {
            let o = PipelineOptions::new(IrModel::Vsm).arm(arm);
            let mode = match o.rerank.mode {
                AdjustMode::None => ModeName::None,
                AdjustMode::LambdaOnly => ModeName::LambdaOnly,
                AdjustMode::Full => ModeName::Full,
            };
            toggles == (o.biterms, o.enrich, mode)
        })
    }

    pub fn stop_words(&self) -> Result<StopWords> {
        let mut stop = if self.inputs.default_stop_words {
            StopWords::default()
        } else {
            StopWords::empty()
        };
        for path in &self.inputs.stop_lists {
            let extra = load_stop_list(path)?;
            stop.extend(extra.iter());
        }
        Ok(stop)
    }

    pub fn pipeline_options(&self) -> Result<PipelineOptions> {
        let mut options = PipelineOptions::new(self.model());
        if let Some(labels) = &self.biterms.relations {
            options.relations = RelationSet::new(labels);
        }
        options.stop = self.stop_words()?;
        options.biterms = self.biterms.enabled;
        options.enrich = self.enrich.enabled;
        options.rerank = RerankOptions {
            mode: match self.rerank.mode {
                ModeName::None => AdjustMode::None,
                ModeName::LambdaOnly => AdjustMode::LambdaOnly,
                ModeName::Full => AdjustMode::Full,
            },
            penalty: self.rerank.penalty,
        };
        Ok(options)
    }

    /// Canonical JSON of the resolved configuration.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn lsi_needs_k() {
        let o = Overrides {
            model: Some(ModelName::Lsi),
            ..Default::default()
        };
        let e = base().apply(o.clone()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let ok = base().apply(Overrides { lsi_k: Some(5), ..o }).unwrap();
        assert_eq!(ok.model(), IrModel::Lsi { k: 5 });
        let e = base()
            .apply(Overrides {
                lsi_k: Some(5),
                ..Default::default()
            })
            .unwrap_err();
        assert!(e.to_string().contains("only valid with model lsi"));
    }

    #[test]
    fn toml_sections_and_relative_paths() {
        let text = r#"
            seed = 7
            [inputs]
            requirements = "reqs"
            code_facts = "/abs/facts.json"
            [ir]
            model = "lsi"
            lsi_k = 85
            [rerank]
            mode = "lambda_only"
            penalty = 0.8
        "#;
        let cfg = RunConfig::from_toml(text, Path::new("/cfg")).unwrap();
        cfg.check().unwrap();
        assert_eq!(cfg.inputs.requirements.as_deref(), Some(Path::new("/cfg/reqs")));
        assert_eq!(cfg.inputs.code_facts.as_deref(), Some(Path::new("/abs/facts.json")));
        assert_eq!(cfg.output.dir, Path::new("/cfg/out"));
        assert_eq!(cfg.model(), IrModel::Lsi { k: 85 });
        let opts = cfg.pipeline_options().unwrap();
        assert_eq!(opts.rerank.mode, AdjustMode::LambdaOnly);
        assert_eq!(opts.rerank.penalty, 0.8);
        assert!(RunConfig::from_toml("[ir]\nmodel = \"bm25\"", Path::new("")).is_err());
        assert!(RunConfig::from_toml("[nope]\n", Path::new("")).is_err());
    }

    #[test]
    fn inconsistent_toggles() {
        let mut cfg = base();
        cfg.biterms.enabled = false;
        assert!(cfg.check().is_err());
        cfg.enrich.enabled = false;
        cfg.rerank.mode = ModeName::None;
        cfg.check().unwrap();
        let e = base()
            .apply(Overrides {
                ir_only: true,
                lambda_only: true,
                ..Default::default()
            })
            .unwrap_err();
        assert!(e.to_string().contains("conflicting"));
        let mut cfg = base();
        cfg.rerank.penalty = 1.5;
        assert!(cfg.check().is_err());
    }

    #[test]
    fn arms_from_toggles() {
        let arm = |o: Overrides| {
            let opts = base().apply(o).unwrap().pipeline_options().unwrap();
            (opts.biterms, opts.enrich, opts.rerank.mode)
        };
        let expect = |a: Arm| {
            let o = PipelineOptions::new(IrModel::Vsm).arm(a);
            (o.biterms, o.enrich, o.rerank.mode)
        };
        let ir_only = Overrides {
            ir_only: true,
            ..Default::default()
        };
        let b = Overrides {
            no_adjust: true,
            ..Default::default()
        };
        let lambda = Overrides {
            lambda_only: true,
            ..Default::default()
        };
        assert_eq!(arm(ir_only), expect(Arm::IrOnly));
        assert_eq!(arm(b), expect(Arm::Biterms));
        assert_eq!(arm(lambda), expect(Arm::BitermsLambda));
        assert_eq!(arm(Overrides::default()), expect(Arm::Full));
    }
}
