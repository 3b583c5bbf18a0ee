//! From OOV frequency records to review candidates: rule-based noise flags
//! and exclusion against reference wordlists.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::is_cyrillic_letter;
use crate::classify::Suggestion;
use crate::error::{Error, Result};
use crate::freqcount::{ContextSnippet, FreqRecord};
use crate::labels::Labels;
use crate::morphodict::{guess_pos, Pos, PosOverrides};
use crate::table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseFlag {
    TooShort,
    NonCyrillic,
    Abbreviation,
    Ukrainian,
    FragmentSuffix,
    ProperNounHint,
}

const UKRAINIAN_LETTERS: [char; 4] = ['і', 'ї', 'є', 'ґ'];

/// Stoplists behind the noise rules.
#[derive(Debug, Clone, Default)]
pub struct NoiseLists {
    pub abbreviations: HashSet<String>,
    pub fragments: HashSet<String>,
    pub proper_nouns: HashSet<String>,
    /// Ukrainian words spelled without any of і, ї, є, ґ (який, що ...).
    pub ukrainian_words: HashSet<String>,
}

impl NoiseLists {
    pub fn from_texts(abbreviations: &str, fragments: &str, proper_nouns: &str, ukrainian_words: &str) -> Self {
        NoiseLists {
            abbreviations: table::word_list(abbreviations).collect(),
            fragments: table::word_list(fragments).collect(),
            proper_nouns: table::word_list(proper_nouns).collect(),
            ukrainian_words: table::word_list(ukrainian_words).collect(),
        }
    }

    /// Load `abbreviations.txt`, `fragments.txt`, `proper_nouns.txt` and
    /// `ukrainian.txt` from a directory.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let read = |name: &str| table::read_file(&dir.join(name));
        Ok(Self::from_texts(
            &read("abbreviations.txt")?,
            &read("fragments.txt")?,
            &read("proper_nouns.txt")?,
            &read("ukrainian.txt")?,
        ))
    }

    pub fn flags(&self, lemma: &str) -> BTreeSet<NoiseFlag> {
        let mut flags = BTreeSet::new();
        if lemma.chars().count() < 3 {
            flags.insert(NoiseFlag::TooShort);
        }
        if lemma.chars().any(|c| c != '-' && !is_cyrillic_letter(c)) {
            flags.insert(NoiseFlag::NonCyrillic);
        }
        if lemma.chars().any(|c| UKRAINIAN_LETTERS.contains(&c)) || self.ukrainian_words.contains(lemma) {
            flags.insert(NoiseFlag::Ukrainian);
        }
        if self.abbreviations.contains(lemma) {
            flags.insert(NoiseFlag::Abbreviation);
        }
        if self.fragments.contains(lemma) {
            flags.insert(NoiseFlag::FragmentSuffix);
        }
        if self.proper_nouns.contains(lemma) {
            flags.insert(NoiseFlag::ProperNounHint);
        }
        flags
    }
}

/// Local stand-ins for external dictionary and corpus lookups.
#[derive(Debug, Clone, Default)]
pub struct ReferenceLists {
    lists: Vec<(String, HashSet<String>)>,
}

impl ReferenceLists {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, text: &str) {
        self.lists.push((name.into(), table::word_list(text).collect()));
    }

    pub fn load_file(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = table::read_file(path)?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        self.add(name, &text);
        Ok(())
    }

    /// Every `*.txt` file in `dir`, in file-name order.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let entries = fs::read_dir(dir).map_err(|e| Error::Config(format!("reference directory {}: {e}", dir.display())))?;
        let mut paths = Vec::new();
        for entry in entries {
            let path = entry.map_err(|e| Error::io(dir, e))?.path();
            if path.extension().is_some_and(|ext| ext == "txt") {
                paths.push(path);
            }
        }
        paths.sort();
        let mut refs = ReferenceLists::new();
        for path in paths {
            refs.load_file(&path)
                .map_err(|e| Error::Config(format!("reference list {}: {e}", path.display())))?;
        }
        Ok(refs)
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.lists.iter().any(|(_, set)| set.contains(lemma))
    }

    /// Names of the lists containing `lemma`.
    pub fn sources(&self, lemma: &str) -> Vec<&str> {
        self.lists
            .iter()
            .filter(|(_, set)| set.contains(lemma))
            .map(|(name, _)| name.as_str())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pending,
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    ProperNoun,
    NonRussian,
    LemmatizerArtifact,
    InReference,
    Other,
}

impl RejectReason {
    /// Reason recorded when auto-rejecting a candidate. Reference hits win,
    /// then the most specific flag.
    pub fn for_auto_reject(flags: &BTreeSet<NoiseFlag>, in_reference: bool) -> Option<RejectReason> {
        if in_reference {
            return Some(RejectReason::InReference);
        }
        let has = |f| flags.contains(&f);
        if has(NoiseFlag::ProperNounHint) {
            Some(RejectReason::ProperNoun)
        } else if has(NoiseFlag::Ukrainian) || has(NoiseFlag::NonCyrillic) && !has(NoiseFlag::Abbreviation) {
            Some(RejectReason::NonRussian)
        } else if !flags.is_empty() {
            Some(RejectReason::LemmatizerArtifact)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub lemma: String,
    pub pos: Pos,
    pub freq: u64,
    #[serde(default)]
    pub contexts: Vec<ContextSnippet>,
    #[serde(default)]
    pub auto_flags: BTreeSet<NoiseFlag>,
    #[serde(default)]
    pub in_reference: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reject_reason: Option<RejectReason>,
    #[serde(default)]
    pub labels: Labels,
    /// Classifier output offered to the reviewer; never applied automatically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suggested: Option<Suggestion>,
}

/// Build one candidate per record, keeping input order. Unknown parts of
/// speech are guessed. With `auto_reject_flagged`, flagged or referenced
/// records start out rejected.
pub fn extract_candidates(
    records: &[FreqRecord],
    noise: &NoiseLists,
    refs: &ReferenceLists,
    pos_overrides: &PosOverrides,
    auto_reject_flagged: bool,
) -> Vec<Candidate> {
    records
        .iter()
        .map(|r| {
            let auto_flags = noise.flags(&r.lemma);
            let in_reference = refs.contains(&r.lemma);
            let reject_reason = if auto_reject_flagged {
                RejectReason::for_auto_reject(&auto_flags, in_reference)
            } else {
                None
            };
            let pos = match r.pos {
                Pos::Unknown => guess_pos(&r.lemma, pos_overrides),
                pos => pos,
            };
            Candidate {
                lemma: r.lemma.clone(),
                pos,
                freq: r.freq,
                contexts: r.contexts.clone(),
                auto_flags,
                in_reference,
                status: if reject_reason.is_some() { Status::Rejected } else { Status::Pending },
                reject_reason,
                labels: Labels::default(),
                suggested: None,
            }
        })
        .collect()
}
