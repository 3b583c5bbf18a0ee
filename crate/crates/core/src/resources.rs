//! Built-in copies of the shipped data files, parsed once on first use.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use crate::candidates::{NoiseLists, ReferenceLists};
use crate::classify::Classifier;
use crate::lexicon::LexiconEntry;
use crate::derivation::{AffixInventory, ModifierThresholds, StemInventory};
use crate::loan::{LatinLexicon, LoanLexicons, LoanOverrides};
use crate::morphodict::PosOverrides;

macro_rules! data {
    ($path:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/", $path))
    };
}

pub const AFFIXES: &str = data!("inventory/affixes.tsv");
pub const STEMS: &str = data!("inventory/stems.tsv");
pub const POS_OVERRIDES: &str = data!("inventory/pos_overrides.tsv");
pub const LOAN_OVERRIDES: &str = data!("inventory/loan_overrides.tsv");
pub const ENGLISH: &str = data!("loans/en.txt");
pub const FRENCH: &str = data!("loans/fr.txt");
pub const ABBREVIATIONS: &str = data!("noise/abbreviations.txt");
pub const FRAGMENTS: &str = data!("noise/fragments.txt");
pub const PROPER_NOUNS: &str = data!("noise/proper_nouns.txt");
pub const UKRAINIAN: &str = data!("noise/ukrainian.txt");
pub const REFERENCE_DICTIONARIES: &str = data!("reference/dictionaries.txt");
pub const GOLD_LEXICON: &str = data!("fixture/gold_lexicon.tsv");

/// Directory holding the shipped data files in a source checkout.
pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn affixes() -> &'static AffixInventory {
    static CELL: OnceLock<AffixInventory> = OnceLock::new();
    CELL.get_or_init(|| AffixInventory::parse(AFFIXES, "affixes.tsv").expect("built-in affix inventory"))
}

pub fn stems() -> &'static StemInventory {
    static CELL: OnceLock<StemInventory> = OnceLock::new();
    CELL.get_or_init(|| StemInventory::parse(STEMS, "stems.tsv").expect("built-in stem inventory"))
}

pub fn pos_overrides() -> &'static PosOverrides {
    static CELL: OnceLock<PosOverrides> = OnceLock::new();
    CELL.get_or_init(|| PosOverrides::parse(POS_OVERRIDES, "pos_overrides.tsv").expect("built-in POS overrides"))
}

pub fn loan_overrides() -> &'static LoanOverrides {
    static CELL: OnceLock<LoanOverrides> = OnceLock::new();
    CELL.get_or_init(|| LoanOverrides::parse(LOAN_OVERRIDES, "loan_overrides.tsv").expect("built-in loan overrides"))
}

pub fn loan_lexicons() -> &'static LoanLexicons {
    static CELL: OnceLock<LoanLexicons> = OnceLock::new();
    CELL.get_or_init(|| LoanLexicons {
        english: LatinLexicon::parse(ENGLISH),
        french: LatinLexicon::parse(FRENCH),
    })
}

pub fn noise_lists() -> &'static NoiseLists {
    static CELL: OnceLock<NoiseLists> = OnceLock::new();
    CELL.get_or_init(|| NoiseLists::from_texts(ABBREVIATIONS, FRAGMENTS, PROPER_NOUNS, UKRAINIAN))
}

pub fn reference_lists() -> ReferenceLists {
    let mut refs = ReferenceLists::new();
    refs.add("dictionaries", REFERENCE_DICTIONARIES);
    refs
}

pub fn classifier() -> &'static Classifier {
    static CELL: OnceLock<Classifier> = OnceLock::new();
    CELL.get_or_init(|| Classifier {
        stems: stems().clone(),
        affixes: affixes().clone(),
        lexicons: loan_lexicons().clone(),
        overrides: loan_overrides().clone(),
        modifier: ModifierThresholds::default(),
    })
}

/// The reference lexicon shipped as the classification fixture.
pub fn gold_lexicon() -> Vec<LexiconEntry> {
    crate::lexicon::parse_tsv(GOLD_LEXICON, "gold_lexicon.tsv").expect("built-in fixture lexicon")
}
