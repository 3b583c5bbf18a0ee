//! Label suggestions for review candidates.

use serde::{Deserialize, Serialize};

use crate::candidates::Candidate;
use crate::corpus::CorpusDocument;
use crate::derivation::{match_derivation, modifier_ratio, AffixInventory, DerivationAnalysis, ModifierThresholds, StemInventory};
use crate::labels::{DerivType, Labels, LoanType};
use crate::loan::{classify_loan, LoanLexicons, LoanOverrides, LoanVerdict};
use crate::morphodict::Pos;

/// Inventories and wordlists needed to classify a lemma.
#[derive(Debug, Clone)]
pub struct Classifier {
    pub stems: StemInventory,
    pub affixes: AffixInventory,
    pub lexicons: LoanLexicons,
    pub overrides: LoanOverrides,
    pub modifier: ModifierThresholds,
}

/// Classifier output offered to the reviewer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suggestion {
    pub pos: Pos,
    pub deriv_type: DerivType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub loan_type: LoanType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_root_count: Option<u8>,
    pub needs_review: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modifier_ratio: Option<f64>,
    pub derivation: DerivationAnalysis,
    pub loan: LoanVerdict,
}

impl Suggestion {
    /// Prefill for the review form; topic is left to the reviewer.
    pub fn labels(&self) -> Labels {
        Labels {
            pos: Some(self.pos),
            topic: None,
            loan_type: Some(self.loan_type),
            deriv_type: Some(self.deriv_type),
            model: self.model.clone(),
        }
    }
}

impl Classifier {
    pub fn derivation(&self, lemma: &str, pos: Pos) -> DerivationAnalysis {
        match_derivation(lemma, pos, &self.stems, &self.affixes)
    }

    pub fn loan(&self, lemma: &str, deriv: &DerivationAnalysis) -> LoanVerdict {
        classify_loan(lemma, deriv, &self.stems, &self.lexicons, &self.overrides)
    }

    /// Classify one lemma. With a corpus, nouns get an Nmod suggestion from
    /// their hyphenated-modifier usage.
    pub fn suggest(&self, lemma: &str, pos: Pos, corpus: Option<&[CorpusDocument]>) -> Suggestion {
        let derivation = self.derivation(lemma, pos);
        let loan = self.loan(lemma, &derivation);
        let (pos, ratio) = match corpus {
            Some(docs) if pos.is_nominal() => {
                let m = modifier_ratio(lemma, docs, &self.modifier);
                (m.suggested_pos, m.ratio)
            }
            _ => (pos, None),
        };
        Suggestion {
            pos,
            deriv_type: derivation.deriv_type,
            model: derivation.model.clone(),
            loan_type: loan.loan_type,
            source_root_count: loan.source_root_count,
            needs_review: loan.needs_review,
            modifier_ratio: ratio,
            derivation,
            loan,
        }
    }

    /// Attach a suggestion to every candidate.
    pub fn annotate(&self, candidates: &mut [Candidate], corpus: Option<&[CorpusDocument]>) {
        for c in candidates.iter_mut() {
            c.suggested = Some(self.suggest(&c.lemma, c.pos, corpus));
        }
    }
}
