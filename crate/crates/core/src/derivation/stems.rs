use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::normalize;
use crate::error::{Error, Result};
use crate::morphodict::MorphoDict;
use crate::table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Native,
    Borrowed,
}

/// Stems the matcher accepts, each tagged with its origin.
#[derive(Debug, Clone, Default)]
pub struct StemInventory {
    stems: HashMap<String, Origin>,
}

impl StemInventory {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&table::read_file(path)?, path)
    }

    /// `stem<TAB>native|borrowed` rows.
    pub fn parse(text: &str, origin: impl AsRef<Path>) -> Result<Self> {
        let mut inv = StemInventory::default();
        for (line, cols) in table::rows(text) {
            let [stem, tag] = cols[..] else {
                return Err(Error::parse(origin.as_ref(), line, "expected `stem<TAB>native|borrowed`"));
            };
            let tag = match tag.trim() {
                "native" => Origin::Native,
                "borrowed" => Origin::Borrowed,
                other => return Err(Error::parse(origin.as_ref(), line, format!("unknown origin `{other}`"))),
            };
            let stem = normalize(stem.trim());
            if stem.is_empty() {
                return Err(Error::parse(origin.as_ref(), line, "empty stem"));
            }
            inv.stems.insert(stem, tag);
        }
        Ok(inv)
    }

    pub fn insert(&mut self, stem: impl Into<String>, origin: Origin) {
        self.stems.insert(stem.into(), origin);
    }

    pub fn remove(&mut self, stem: &str) -> Option<Origin> {
        self.stems.remove(stem)
    }

    /// Add every dictionary lemma as a native stem, keeping curated tags.
    pub fn extend_from_dictionary(&mut self, dict: &MorphoDict) {
        for lemma in dict.lemmas() {
            if lemma.chars().count() >= 2 {
                self.stems.entry(lemma.clone()).or_insert(Origin::Native);
            }
        }
    }

    pub fn origin(&self, stem: &str) -> Option<Origin> {
        self.stems.get(stem).copied()
    }

    pub fn contains(&self, stem: &str) -> bool {
        self.stems.contains_key(stem)
    }

    pub fn len(&self) -> usize {
        self.stems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Origin)> {
        self.stems.iter().map(|(s, &o)| (s.as_str(), o))
    }
}
