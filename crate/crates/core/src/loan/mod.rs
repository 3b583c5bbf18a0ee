//! Loan-type classification: overrides, then lexicon lookup of Latin
//! respellings for underived words, then stem origins for derived ones.

mod lexicon;
mod translit;

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use lexicon::{LatinLexicon, LexiconHit, MIN_NEAR_LEN, MIN_PART_LEN};
pub use translit::{transliterate, TRANSLIT_CAP};

use crate::derivation::{DerivationAnalysis, Origin, StemInventory};
use crate::error::{Error, Result};
use crate::labels::{DerivType, LoanType};
use crate::table;

/// Source-language wordlists.
#[derive(Debug, Clone)]
pub struct LoanLexicons {
    pub english: LatinLexicon,
    pub french: LatinLexicon,
}

impl LoanLexicons {
    /// Load `en.txt` and `fr.txt` from `dir`. Both must exist.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let load = |name: &str| {
            let path = dir.join(name);
            if !path.is_file() {
                return Err(Error::Config(format!("loan lexicon {} not found", path.display())));
            }
            LatinLexicon::load(&path)
        };
        Ok(LoanLexicons {
            english: load("en.txt")?,
            french: load("fr.txt")?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoanOverride {
    pub loan_type: LoanType,
    pub root_count: Option<u8>,
}

/// Per-word loan verdicts that bypass the heuristics.
#[derive(Debug, Clone, Default)]
pub struct LoanOverrides {
    map: HashMap<String, LoanOverride>,
}

impl LoanOverrides {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&table::read_file(path)?, path)
    }

    /// `lemma<TAB>loan_type[<TAB>root_count]` rows.
    pub fn parse(text: &str, origin: impl AsRef<Path>) -> Result<Self> {
        let origin = origin.as_ref();
        let mut out = LoanOverrides::default();
        for (line, cols) in table::rows(text) {
            if !(2..=3).contains(&cols.len()) {
                return Err(Error::parse(origin, line, "expected `lemma<TAB>loan_type[<TAB>root_count]`"));
            }
            let loan_type = cols[1].trim().parse().map_err(|e: String| Error::parse(origin, line, e))?;
            let root_count = match cols.get(2).map(|s| s.trim()) {
                None | Some("") => None,
                Some("1") => Some(1),
                Some("2") => Some(2),
                Some(other) => return Err(Error::parse(origin, line, format!("root count must be 1 or 2, got `{other}`"))),
            };
            out.map.insert(
                crate::corpus::normalize(cols[0].trim()),
                LoanOverride { loan_type, root_count },
            );
        }
        Ok(out)
    }

    pub fn get(&self, lemma: &str) -> Option<LoanOverride> {
        self.map.get(lemma).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }
}

/// What decided a loan verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LoanEvidence {
    Override,
    English { word: String },
    EnglishCompound { first: String, second: String },
    French { word: String },
    NearEnglish { word: String },
    NativeStem,
    StemOrigins,
    NoEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoanVerdict {
    pub loan_type: LoanType,
    /// Number of source-language roots, for underived loans.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_root_count: Option<u8>,
    pub needs_review: bool,
    pub evidence: LoanEvidence,
}

impl LoanVerdict {
    fn new(loan_type: LoanType, evidence: LoanEvidence) -> Self {
        LoanVerdict {
            loan_type,
            source_root_count: None,
            needs_review: false,
            evidence,
        }
    }

    fn roots(mut self, n: u8) -> Self {
        self.source_root_count = Some(n);
        self
    }

    fn review(mut self) -> Self {
        self.needs_review = true;
        self
    }
}

/// Decide the loan type of `lemma` given its derivation analysis.
///
/// Underived words are looked up as Latin respellings: an English word, a
/// French word, two English words run together, then a native stem tag,
/// then an English word one edit away (flagged for review). Derived words
/// are classified by the origins of their stems: all native is native, a
/// composite of borrowed stems only is built from borrowed roots, anything
/// else mixes borrowed and native morphemes.
pub fn classify_loan(
    lemma: &str,
    deriv: &DerivationAnalysis,
    stems: &StemInventory,
    lexicons: &LoanLexicons,
    overrides: &LoanOverrides,
) -> LoanVerdict {
    if let Some(o) = overrides.get(lemma) {
        let mut v = LoanVerdict::new(o.loan_type, LoanEvidence::Override);
        v.source_root_count = o.root_count;
        return v;
    }
    if deriv.deriv_type != DerivType::Underived {
        let origins: Vec<Origin> = deriv.stems().map(|s| stems.origin(s).unwrap_or(Origin::Native)).collect();
        let all = |o| origins.iter().all(|&x| x == o);
        let loan_type = if all(Origin::Native) {
            LoanType::Native
        } else if deriv.deriv_type == DerivType::Composite && all(Origin::Borrowed) {
            LoanType::FromBorrowedRoots
        } else {
            LoanType::Mixed
        };
        return LoanVerdict::new(loan_type, LoanEvidence::StemOrigins);
    }

    if let Some(word) = lexicons.english.exact(lemma) {
        let roots = if lexicons.english.splits_in_two(&word).is_some() { 2 } else { 1 };
        return LoanVerdict::new(LoanType::Anglicism, LoanEvidence::English { word }).roots(roots);
    }
    if let Some(word) = lexicons.french.exact(lemma) {
        return LoanVerdict::new(LoanType::Gallicism, LoanEvidence::French { word }).roots(1);
    }
    if let Some((first, second)) = lexicons.english.common_compound(lemma) {
        return LoanVerdict::new(LoanType::Anglicism, LoanEvidence::EnglishCompound { first, second }).roots(2);
    }
    if stems.origin(lemma) == Some(Origin::Native) {
        return LoanVerdict::new(LoanType::Native, LoanEvidence::NativeStem);
    }
    if let Some(word) = lexicons.english.near(lemma) {
        let roots = if lexicons.english.splits_in_two(&word).is_some() { 2 } else { 1 };
        return LoanVerdict::new(LoanType::Anglicism, LoanEvidence::NearEnglish { word })
            .roots(roots)
            .review();
    }
    if let Some((first, second)) = lexicons.english.compound(lemma) {
        return LoanVerdict::new(LoanType::Anglicism, LoanEvidence::EnglishCompound { first, second })
            .roots(2)
            .review();
    }
    LoanVerdict::new(LoanType::Native, LoanEvidence::NoEvidence).review()
}
