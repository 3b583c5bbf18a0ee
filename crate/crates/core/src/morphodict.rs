//! Morphological dictionary: wordform lookup, lemmatization and the
//! in-dictionary test that separates known words from OOV candidates.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{normalize, Token};
use crate::error::{Error, Result};
use crate::table;

/// Part of speech. Variant order is the tie-break order for ambiguous lookups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pos {
    #[serde(rename = "N")]
    N,
    #[serde(rename = "Nmod")]
    Nmod,
    #[serde(rename = "Nmod/N")]
    NmodOrN,
    #[serde(rename = "Adj")]
    Adj,
    #[serde(rename = "V")]
    V,
    #[serde(rename = "Adv/Pred")]
    AdvPred,
    #[serde(rename = "Interj")]
    Interj,
    #[serde(rename = "Unknown")]
    Unknown,
}

impl Pos {
    pub const ALL: [Pos; 8] = [
        Pos::N,
        Pos::Nmod,
        Pos::NmodOrN,
        Pos::Adj,
        Pos::V,
        Pos::AdvPred,
        Pos::Interj,
        Pos::Unknown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::N => "N",
            Pos::Nmod => "Nmod",
            Pos::NmodOrN => "Nmod/N",
            Pos::Adj => "Adj",
            Pos::V => "V",
            Pos::AdvPred => "Adv/Pred",
            Pos::Interj => "Interj",
            Pos::Unknown => "Unknown",
        }
    }

    /// Noun-like tags share nominal inflection.
    pub fn is_nominal(self) -> bool {
        matches!(self, Pos::N | Pos::Nmod | Pos::NmodOrN)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown part of speech `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaAnalysis {
    pub lemma: String,
    pub pos: Pos,
    pub in_dictionary: bool,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, Default)]
pub struct MorphoDict {
    /// Analyses per wordform, sorted by (lemma, pos) and deduplicated.
    entries: HashMap<String, Vec<(String, Pos)>>,
    lemma_set: BTreeSet<String>,
}

impl MorphoDict {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&table::read_file(path)?, path)
    }

    /// Parse `wordform<TAB>lemma<TAB>pos` rows; `origin` is used in error messages.
    pub fn parse(text: &str, origin: impl AsRef<Path>) -> Result<Self> {
        let mut dict = MorphoDict::default();
        for (line, cols) in table::rows(text) {
            let [form, lemma, pos] = cols[..] else {
                return Err(Error::parse(origin.as_ref(), line, format!("expected 3 columns, found {}", cols.len())));
            };
            let (form, lemma) = (normalize(form.trim()), normalize(lemma.trim()));
            if form.is_empty() || lemma.is_empty() {
                return Err(Error::parse(origin.as_ref(), line, "empty wordform or lemma"));
            }
            let pos: Pos = pos.trim().parse().map_err(|e: String| Error::parse(origin.as_ref(), line, e))?;
            dict.insert(form, lemma, pos);
        }
        Ok(dict)
    }

    pub fn insert(&mut self, form: String, lemma: String, pos: Pos) {
        self.lemma_set.insert(lemma.clone());
        let analyses = self.entries.entry(form).or_default();
        let item = (lemma, pos);
        if let Err(at) = analyses.binary_search(&item) {
            analyses.insert(at, item);
        }
    }

    pub fn contains_form(&self, form: &str) -> bool {
        self.entries.contains_key(form)
    }

    pub fn lemmas(&self) -> &BTreeSet<String> {
        &self.lemma_set
    }

    pub fn wordforms(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn form_count(&self) -> usize {
        self.entries.len()
    }

    /// Look a normalized wordform up. Unknown forms are their own lemma.
    pub fn lemmatize(&self, normalized: &str) -> LemmaAnalysis {
        match self.entries.get(normalized) {
            Some(analyses) => {
                let (lemma, pos) = &analyses[0];
                LemmaAnalysis {
                    lemma: lemma.clone(),
                    pos: *pos,
                    in_dictionary: true,
                    ambiguous: analyses.len() > 1,
                }
            }
            None => LemmaAnalysis {
                lemma: normalized.to_string(),
                pos: Pos::Unknown,
                in_dictionary: false,
                ambiguous: false,
            },
        }
    }

    pub fn lemmatize_token(&self, token: &Token) -> LemmaAnalysis {
        self.lemmatize(&token.normalized)
    }
}

/// Curated `lemma<TAB>pos` map consulted before the suffix rules.
#[derive(Debug, Clone, Default)]
pub struct PosOverrides(HashMap<String, Pos>);

impl PosOverrides {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&table::read_file(path)?, path)
    }

    pub fn parse(text: &str, origin: impl AsRef<Path>) -> Result<Self> {
        let mut map = HashMap::new();
        for (line, cols) in table::rows(text) {
            let [lemma, pos] = cols[..] else {
                return Err(Error::parse(origin.as_ref(), line, "expected `lemma<TAB>pos`"));
            };
            let pos = pos.trim().parse().map_err(|e: String| Error::parse(origin.as_ref(), line, e))?;
            map.insert(normalize(lemma.trim()), pos);
        }
        Ok(PosOverrides(map))
    }

    pub fn get(&self, lemma: &str) -> Option<Pos> {
        self.0.get(lemma).copied()
    }

    pub fn insert(&mut self, lemma: impl Into<String>, pos: Pos) {
        self.0.insert(lemma.into(), pos);
    }
}

const VERB_ENDINGS: [&str; 6] = ["ть", "ти", "чь", "ться", "тись", "чься"];
const ADJ_ENDINGS: [&str; 3] = ["ый", "ий", "ой"];

/// Part of speech for an OOV lemma from its ending. Never yields `Nmod`:
/// modifier use is a corpus property, assigned elsewhere.
pub fn guess_pos(lemma: &str, overrides: &PosOverrides) -> Pos {
    if let Some(pos) = overrides.get(lemma) {
        return pos;
    }
    if VERB_ENDINGS.iter().any(|e| lemma.ends_with(e)) {
        Pos::V
    } else if lemma.chars().count() >= 5 && ADJ_ENDINGS.iter().any(|e| lemma.ends_with(e)) {
        Pos::Adj
    } else {
        Pos::N
    }
}
