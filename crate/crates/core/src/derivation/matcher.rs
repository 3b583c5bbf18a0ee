use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::affixes::{Affix, AffixInventory};
use super::stems::StemInventory;
use crate::labels::DerivType;
use crate::morphodict::Pos;

/// A morpheme occurrence: its model label and the spelling found in the word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Morph {
    pub label: String,
    pub surface: String,
}

impl Morph {
    fn of(affix: &Affix, surface: &str) -> Self {
        Morph {
            label: affix.label.clone(),
            surface: surface.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationAnalysis {
    pub deriv_type: DerivType,
    /// Model string such as "за-ST-и" or "ST-о-ST"; absent for underived words.
    pub model: Option<String>,
    pub stem1: String,
    pub stem2: Option<String>,
    pub prefix: Option<Morph>,
    pub interfix: Option<Morph>,
    pub suffix: Option<Morph>,
    /// Inflection ending stripped before matching (possibly empty).
    pub ending: String,
}

impl DerivationAnalysis {
    fn underived(lemma: &str) -> Self {
        DerivationAnalysis {
            deriv_type: DerivType::Underived,
            model: None,
            stem1: lemma.to_string(),
            stem2: None,
            prefix: None,
            interfix: None,
            suffix: None,
            ending: String::new(),
        }
    }

    /// Concatenate the parts back into a word.
    pub fn surface(&self) -> String {
        let mut s = String::new();
        let part = |m: &Option<Morph>| m.as_ref().map(|m| m.surface.clone()).unwrap_or_default();
        s.push_str(&part(&self.prefix));
        s.push_str(&self.stem1);
        s.push_str(&part(&self.interfix));
        if let Some(stem2) = &self.stem2 {
            s.push_str(stem2);
        }
        s.push_str(&part(&self.suffix));
        s.push_str(&self.ending);
        s
    }

    pub fn stems(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.stem1.as_str()).chain(self.stem2.as_deref())
    }

    fn affix_len(&self) -> usize {
        [&self.prefix, &self.interfix, &self.suffix]
            .into_iter()
            .flatten()
            .map(|m| m.surface.chars().count())
            .sum()
    }

    fn suffix_len(&self) -> usize {
        self.suffix.as_ref().map_or(0, |m| m.surface.chars().count())
    }

    fn type_rank(&self) -> u8 {
        match self.deriv_type {
            DerivType::Composite => 4,
            DerivType::PrefixSuffix => 3,
            DerivType::Prefix => 2,
            DerivType::Suffix => 1,
            DerivType::Underived => 0,
        }
    }

    /// Preference: more affix material, then type order
    /// Composite > PrefixSuffix > Prefix > Suffix, then longer suffix. The
    /// final lexical comparison only makes the order total.
    fn preference(&self, other: &Self) -> Ordering {
        self.affix_len()
            .cmp(&other.affix_len())
            .then_with(|| self.type_rank().cmp(&other.type_rank()))
            .then_with(|| self.suffix_len().cmp(&other.suffix_len()))
            .then_with(|| {
                (&other.model, &other.stem1, &other.stem2).cmp(&(&self.model, &self.stem1, &self.stem2))
            })
    }

    fn render_model(&mut self) {
        let mut parts: Vec<&str> = Vec::new();
        if let Some(p) = &self.prefix {
            parts.push(&p.label);
        }
        parts.push("ST");
        if let Some(i) = &self.interfix {
            parts.push(&i.label);
        }
        if self.stem2.is_some() {
            parts.push("ST");
        }
        if let Some(s) = &self.suffix {
            parts.push(&s.label);
        }
        self.model = Some(parts.join("-"));
    }
}

/// Surfaces of `affixes` licensed for `pos`.
fn licensed(affixes: &[Affix], pos: Pos) -> impl Iterator<Item = (&Affix, &str)> {
    affixes
        .iter()
        .filter(move |a| a.licensed_for(pos))
        .flat_map(|a| a.surfaces.iter().map(move |s| (a, s.as_str())))
}

/// Find the preferred decomposition of `lemma` into stems and affixes.
///
/// One POS-licensed inflection ending is stripped first (the longest that
/// applies). Every decomposition whose stem parts are all in `stems` is then
/// considered: two stems with or without an interfix, prefix+stem+suffix,
/// prefix+stem and stem+suffix. Words with no valid decomposition are
/// underived.
pub fn match_derivation(lemma: &str, pos: Pos, stems: &StemInventory, affixes: &AffixInventory) -> DerivationAnalysis {
    let (base, ending) = affixes.strip_ending(lemma, pos);
    let mut found: Vec<DerivationAnalysis> = Vec::new();
    let blank = || DerivationAnalysis {
        ending: ending.to_string(),
        ..DerivationAnalysis::underived(lemma)
    };

    for (split, _) in base.char_indices().skip(1) {
        let (left, right) = base.split_at(split);
        if !stems.contains(left) {
            continue;
        }
        if stems.contains(right) {
            found.push(DerivationAnalysis {
                deriv_type: DerivType::Composite,
                stem1: left.into(),
                stem2: Some(right.into()),
                ..blank()
            });
        }
        for (interfix, surface) in licensed(&affixes.interfixes, pos) {
            if let Some(rest) = right.strip_prefix(surface) {
                if !rest.is_empty() && stems.contains(rest) {
                    found.push(DerivationAnalysis {
                        deriv_type: DerivType::Composite,
                        stem1: left.into(),
                        stem2: Some(rest.into()),
                        interfix: Some(Morph::of(interfix, surface)),
                        ..blank()
                    });
                }
            }
        }
    }

    for (prefix, p_surface) in licensed(&affixes.prefixes, pos) {
        let Some(rest) = base.strip_prefix(p_surface) else { continue };
        if rest.is_empty() {
            continue;
        }
        if stems.contains(rest) {
            found.push(DerivationAnalysis {
                deriv_type: DerivType::Prefix,
                stem1: rest.into(),
                prefix: Some(Morph::of(prefix, p_surface)),
                ..blank()
            });
        }
        for (suffix, s_surface) in licensed(&affixes.suffixes, pos) {
            if let Some(stem) = rest.strip_suffix(s_surface) {
                if !stem.is_empty() && stems.contains(stem) {
                    found.push(DerivationAnalysis {
                        deriv_type: DerivType::PrefixSuffix,
                        stem1: stem.into(),
                        prefix: Some(Morph::of(prefix, p_surface)),
                        suffix: Some(Morph::of(suffix, s_surface)),
                        ..blank()
                    });
                }
            }
        }
    }

    for (suffix, s_surface) in licensed(&affixes.suffixes, pos) {
        if let Some(stem) = base.strip_suffix(s_surface) {
            if !stem.is_empty() && stems.contains(stem) {
                found.push(DerivationAnalysis {
                    deriv_type: DerivType::Suffix,
                    stem1: stem.into(),
                    suffix: Some(Morph::of(suffix, s_surface)),
                    ..blank()
                });
            }
        }
    }

    found.iter_mut().for_each(DerivationAnalysis::render_model);
    found
        .into_iter()
        .max_by(|a, b| a.preference(b))
        .unwrap_or_else(|| DerivationAnalysis::underived(lemma))
}
