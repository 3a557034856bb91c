//! End-to-end tracing: parse, extract, crosscheck, enrich, index, score and
//! rerank.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::biterm::{
    crosscheck, extract_code_biterms, extract_req_biterms, BitermProfile, ConsensualBitermSet, RelationSet,
};
use crate::enrich::{enrich_class, enrich_requirement, EnrichedDocument};
use crate::ir::{rank_candidates, similarity, IrModel, SimilarityMatrix, TfIdfIndex};
use crate::model::{check_unique_ids, CodeClassFacts, RequirementDoc};
use crate::nlp::{heuristic_parse, Locator, ParsedSentence};
use crate::rerank::{rerank, AdjustMode, CandidateLink, RerankOptions};
use crate::text::StopWords;
use crate::{Error, Result};

/// Requirements and classes of one system.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub requirements: Vec<RequirementDoc>,
    pub classes: Vec<CodeClassFacts>,
}

impl Corpus {
    pub fn validate(&self) -> Result<()> {
        check_unique_ids("requirement", self.requirements.iter().map(|r| r.id.as_str()))?;
        check_unique_ids("class", self.classes.iter().map(|c| c.id.as_str()))?;
        for r in &self.requirements {
            r.validate()?;
        }
        for c in &self.classes {
            c.validate()?;
        }
        Ok(())
    }
}

/// Externally parsed sentences keyed by locator.
///
/// Requirement ordinals count sentences within one part; comment ordinals
/// count sentences across all comments of a class, in comment order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParseBundle {
    sentences: BTreeMap<Locator, ParsedSentence>,
}

impl ParseBundle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds sentences; each must carry a locator not already present.
    pub fn extend(&mut self, sentences: impl IntoIterator<Item = ParsedSentence>) -> Result<()> {
        for s in sentences {
            let Some(loc) = s.locator.clone() else {
                return Err(Error::InvalidCorpus("bundle sentence without a locator".into()));
            };
            if self.sentences.contains_key(&loc) {
                return Err(Error::DuplicateId {
                    what: "sentence locator",
                    id: loc.to_string(),
                });
            }
            self.sentences.insert(loc, s);
        }
        Ok(())
    }

    pub fn from_sentences(sentences: impl IntoIterator<Item = ParsedSentence>) -> Result<Self> {
        let mut b = Self::new();
        b.extend(sentences)?;
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn sentences(&self) -> impl Iterator<Item = &ParsedSentence> {
        self.sentences.values()
    }

    /// Errors on locators naming an unknown artifact or an inadmissible part.
    pub fn check_against(&self, corpus: &Corpus) -> Result<()> {
        let reqs: BTreeMap<&str, &RequirementDoc> = corpus.requirements.iter().map(|r| (r.id.as_str(), r)).collect();
        let classes: BTreeMap<&str, &CodeClassFacts> = corpus.classes.iter().map(|c| (c.id.as_str(), c)).collect();
        for loc in self.sentences.keys() {
            let ok = match loc {
                Locator::Requirement { id, part, .. } => reqs.get(id.as_str()).is_some_and(|r| r.kind.admits(*part)),
                Locator::Comment { class_id, .. } => classes.contains_key(class_id.as_str()),
            };
            if !ok {
                return Err(Error::InvalidCorpus(alloc::format!(
                    "unresolvable sentence locator `{loc}`"
                )));
            }
        }
        Ok(())
    }
}

/// How many sentences came from the bundle and how many from the fallback.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParseProvenance {
    pub dependency_sentences: usize,
    pub degraded_sentences: usize,
    /// Artifacts with at least one degraded sentence.
    pub degraded_owners: Vec<String>,
}

/// Parsed sentences per artifact.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Parses {
    pub requirements: BTreeMap<String, Vec<ParsedSentence>>,
    pub comments: BTreeMap<String, Vec<ParsedSentence>>,
    pub provenance: ParseProvenance,
}

fn with_locators(text: &str, mut locate: impl FnMut(usize) -> Locator, first: usize) -> Vec<ParsedSentence> {
    heuristic_parse(text)
        .into_iter()
        .enumerate()
        .map(|(i, mut s)| {
            s.locator = Some(locate(first + i));
            s
        })
        .collect()
}

/// Takes bundle sentences where present and falls back to the heuristic
/// parser per requirement part and per class.
pub fn collect_parses(corpus: &Corpus, bundle: &ParseBundle) -> Result<Parses> {
    bundle.check_against(corpus)?;
    let mut out = Parses::default();
    let tally = |sentences: &[ParsedSentence], owner: &str, prov: &mut ParseProvenance| {
        let degraded = sentences.iter().filter(|s| s.is_degraded()).count();
        prov.dependency_sentences += sentences.len() - degraded;
        prov.degraded_sentences += degraded;
        if degraded > 0 && prov.degraded_owners.last().map(String::as_str) != Some(owner) {
            prov.degraded_owners.push(owner.to_string());
        }
    };
    for req in &corpus.requirements {
        let mut sentences = Vec::new();
        for (&part, text) in &req.parts {
            let from_bundle: Vec<ParsedSentence> = bundle
                .sentences
                .iter()
                .filter(
                    |(loc, _)| matches!(loc, Locator::Requirement { id, part: p, .. } if *id == req.id && *p == part),
                )
                .map(|(_, s)| s.clone())
                .collect();
            let part_sentences = if from_bundle.is_empty() {
                with_locators(
                    text,
                    |n| Locator::Requirement {
                        id: req.id.clone(),
                        part,
                        sentence: n,
                    },
                    1,
                )
            } else {
                from_bundle
            };
            tally(&part_sentences, &req.id, &mut out.provenance);
            sentences.extend(part_sentences);
        }
        out.requirements.insert(req.id.clone(), sentences);
    }
    for cls in &corpus.classes {
        let from_bundle: Vec<ParsedSentence> = bundle
            .sentences
            .iter()
            .filter(|(loc, _)| matches!(loc, Locator::Comment { class_id, .. } if *class_id == cls.id))
            .map(|(_, s)| s.clone())
            .collect();
        let sentences = if from_bundle.is_empty() {
            let mut all = Vec::new();
            for comment in &cls.comments {
                let next = all.len() + 1;
                all.extend(with_locators(
                    comment,
                    |n| Locator::Comment {
                        class_id: cls.id.clone(),
                        comment: n,
                    },
                    next,
                ));
            }
            all
        } else {
            from_bundle
        };
        tally(&sentences, &cls.id, &mut out.provenance);
        out.comments.insert(cls.id.clone(), sentences);
    }
    Ok(out)
}

/// Candidate biterm profiles of every requirement and class.
pub fn extract_profiles(
    corpus: &Corpus,
    parses: &Parses,
    relations: &RelationSet,
) -> Result<(Vec<BitermProfile>, Vec<BitermProfile>)> {
    let empty = Vec::new();
    let reqs = corpus
        .requirements
        .iter()
        .map(|r| extract_req_biterms(r, parses.requirements.get(&r.id).unwrap_or(&empty), relations))
        .collect::<Result<Vec<_>>>()?;
    let classes = corpus
        .classes
        .iter()
        .map(|c| extract_code_biterms(c, parses.comments.get(&c.id).unwrap_or(&empty), relations))
        .collect::<Result<Vec<_>>>()?;
    Ok((reqs, classes))
}

/// The four ablation arms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arm {
    /// Plain IR: no biterms, no adjustment.
    IrOnly,
    /// Enrichment only.
    Biterms,
    /// Enrichment plus the global weight.
    BitermsLambda,
    /// Enrichment plus global and local weights.
    Full,
}

impl Arm {
    pub const ALL: [Arm; 4] = [Arm::IrOnly, Arm::Biterms, Arm::BitermsLambda, Arm::Full];

    pub fn name(self) -> &'static str {
        match self {
            Arm::IrOnly => "ir-only",
            Arm::Biterms => "b",
            Arm::BitermsLambda => "b+lambda",
            Arm::Full => "b+lambda+theta",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub model: IrModel,
    pub relations: RelationSet,
    pub stop: StopWords,
    /// Extract and crosscheck biterms at all.
    pub biterms: bool,
    /// Index synthetic biterm tokens.
    pub enrich: bool,
    pub rerank: RerankOptions,
}

impl PipelineOptions {
    pub fn new(model: IrModel) -> Self {
        PipelineOptions {
            model,
            relations: RelationSet::default(),
            stop: StopWords::default(),
            biterms: true,
            enrich: true,
            rerank: RerankOptions::default(),
        }
    }

    /// Sets the toggles of an ablation arm.
    pub fn arm(mut self, arm: Arm) -> Self {
        let (biterms, enrich, mode) = match arm {
            Arm::IrOnly => (false, false, AdjustMode::None),
            Arm::Biterms => (true, true, AdjustMode::None),
            Arm::BitermsLambda => (true, true, AdjustMode::LambdaOnly),
            Arm::Full => (true, true, AdjustMode::Full),
        };
        self.biterms = biterms;
        self.enrich = enrich;
        self.rerank.mode = mode;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub req_profiles: Vec<BitermProfile>,
    pub code_profiles: Vec<BitermProfile>,
    pub consensual: ConsensualBitermSet,
    pub documents: Vec<EnrichedDocument>,
    pub index: TfIdfIndex,
    pub similarity: SimilarityMatrix,
    pub initial: BTreeMap<String, Vec<CandidateLink>>,
    pub reranked: BTreeMap<String, Vec<CandidateLink>>,
    pub provenance: ParseProvenance,
}

impl PipelineOutput {
    /// 1-based rank of a class in a requirement's reranked list.
    pub fn rank_of(&self, req_id: &str, class_id: &str) -> Option<usize> {
        self.reranked
            .get(req_id)?
            .iter()
            .find(|l| l.class_id == class_id)
            .map(|l| l.rank)
    }

    pub fn document(&self, owner: &str, requirement: bool) -> Option<&EnrichedDocument> {
        self.documents
            .iter()
            .find(|d| d.owner == owner && d.is_requirement() == requirement)
    }
}

pub fn run(corpus: &Corpus, bundle: &ParseBundle, options: &PipelineOptions) -> Result<PipelineOutput> {
    corpus.validate()?;
    let (req_profiles, code_profiles, consensual, provenance) = if options.biterms {
        let parses = collect_parses(corpus, bundle)?;
        let (r, c) = extract_profiles(corpus, &parses, &options.relations)?;
        let cons = crosscheck(&r, &c);
        (r, c, cons, parses.provenance)
    } else {
        let r = corpus
            .requirements
            .iter()
            .map(|x| BitermProfile::new(x.id.clone()))
            .collect();
        let c = corpus
            .classes
            .iter()
            .map(|x| BitermProfile::new(x.id.clone()))
            .collect();
        (r, c, ConsensualBitermSet::default(), ParseProvenance::default())
    };
    let mut documents: Vec<EnrichedDocument> = corpus
        .requirements
        .iter()
        .zip(&req_profiles)
        .map(|(r, p)| enrich_requirement(p, &consensual, r, &options.stop))
        .collect();
    documents.extend(
        corpus
            .classes
            .iter()
            .zip(&code_profiles)
            .map(|(c, p)| enrich_class(p, &consensual, c, &options.stop)),
    );
    let index = TfIdfIndex::build(&documents, options.enrich)?;
    let similarity = similarity(&index, options.model)?;
    let initial = rank_candidates(&similarity);
    let reranked = rerank(&initial, &documents, options.rerank);
    Ok(PipelineOutput {
        req_profiles,
        code_profiles,
        consensual,
        documents,
        index,
        similarity,
        initial,
        reranked,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PartName, RequirementKind};
    use crate::nlp::parse_conllu;

    fn corpus() -> Corpus {
        let req = RequirementDoc::new("UC1", RequirementKind::UseCase)
            .with_part(PartName::Title, "Send reminder email")
            .unwrap()
            .with_part(PartName::MainFlow, "The system sends a reminder email to the patient.")
            .unwrap();
        let mut a = CodeClassFacts::new("ReminderMailer");
        a.class_names.push("ReminderMailer".into());
        a.method_names.push("sendReminderEmail".into());
        a.comments.push("Sends a reminder email.".into());
        let mut b = CodeClassFacts::new("PatientDAO");
        b.class_names.push("PatientDAO".into());
        b.method_names.push("getPatient".into());
        Corpus {
            requirements: alloc::vec![req],
            classes: alloc::vec![a, b],
        }
    }

    #[test]
    fn heuristic_fallback_assigns_locators() {
        let parses = collect_parses(&corpus(), &ParseBundle::new()).unwrap();
        let s = &parses.requirements["UC1"];
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].locator.as_ref().unwrap().to_string(), "req:UC1:main_flow:1");
        assert_eq!(parses.comments["ReminderMailer"].len(), 1);
        assert_eq!(parses.provenance.degraded_sentences, 3);
        assert_eq!(parses.provenance.degraded_owners, ["UC1", "ReminderMailer"]);
    }

    #[test]
    fn bundle_locators_are_checked() {
        let text = "# sent_id = req:UC9:title:1\n1\tSend\tsend\tVERB\t_\t_\t0\troot\t_\t_\n";
        let bundle = ParseBundle::from_sentences(parse_conllu(text).unwrap()).unwrap();
        assert!(collect_parses(&corpus(), &bundle).is_err());
        let text = "# sent_id = req:UC1:summary:1\n1\tSend\tsend\tVERB\t_\t_\t0\troot\t_\t_\n";
        let bundle = ParseBundle::from_sentences(parse_conllu(text).unwrap()).unwrap();
        assert!(collect_parses(&corpus(), &bundle).is_err());
    }

    #[test]
    fn degraded_run_finds_shared_biterms() {
        let out = run(&corpus(), &ParseBundle::new(), &PipelineOptions::new(IrModel::Vsm)).unwrap();
        assert!(!out.consensual.is_empty());
        assert_eq!(out.rank_of("UC1", "ReminderMailer"), Some(1));
        let link = &out.reranked["UC1"][0];
        assert!(link.lambda > 0.0 && link.ir_new > link.ir_initial);
    }

    #[test]
    fn ir_only_arm_passes_scores_through() {
        let options = PipelineOptions::new(IrModel::Vsm).arm(Arm::IrOnly);
        let out = run(&corpus(), &ParseBundle::new(), &options).unwrap();
        assert!(out.consensual.is_empty());
        for links in out.reranked.values() {
            for l in links {
                assert_eq!(l.ir_new, l.ir_initial);
            }
        }
        assert_eq!(out.initial, out.reranked);
    }
}
