//! Derivation-model matching over curated stem and affix inventories, and
//! the hyphenated-modifier usage ratio behind Nmod suggestions.

mod affixes;
mod matcher;
mod modifier;
mod stems;

pub use affixes::{Affix, AffixInventory, AffixKind};
pub use matcher::{match_derivation, DerivationAnalysis, Morph};
pub use modifier::{modifier_ratio, ModifierRatio, ModifierThresholds};
pub use stems::{Origin, StemInventory};
