use serde::{Deserialize, Serialize};

use crate::corpus::{tokenize, CorpusDocument};
use crate::morphodict::Pos;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifierThresholds {
    /// At or above: Nmod.
    pub nmod: f64,
    /// At or above (and below `nmod`): Nmod/N.
    pub mixed: f64,
}

impl Default for ModifierThresholds {
    fn default() -> Self {
        ModifierThresholds { nmod: 0.7, mixed: 0.3 }
    }
}

impl ModifierThresholds {
    pub fn suggest(&self, ratio: Option<f64>) -> Pos {
        match ratio {
            Some(r) if r >= self.nmod => Pos::Nmod,
            Some(r) if r >= self.mixed => Pos::NmodOrN,
            _ => Pos::N,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifierRatio {
    pub standalone: u64,
    pub compound_initial: u64,
    /// Share of compound-initial uses; absent when the lemma never occurs.
    pub ratio: Option<f64>,
    pub suggested_pos: Pos,
}

/// How often `lemma` opens a hyphenated compound ("фэшн-индустрия") rather
/// than standing alone.
pub fn modifier_ratio<'a, I>(lemma: &str, docs: I, thresholds: &ModifierThresholds) -> ModifierRatio
where
    I: IntoIterator<Item = &'a CorpusDocument>,
{
    let (mut standalone, mut compound_initial) = (0u64, 0u64);
    for doc in docs {
        for token in tokenize(&doc.text) {
            let t = token.normalized.as_str();
            if t == lemma {
                standalone += 1;
            } else if t.strip_prefix(lemma).is_some_and(|rest| rest.starts_with('-')) {
                compound_initial += 1;
            }
        }
    }
    let total = standalone + compound_initial;
    let ratio = (total > 0).then(|| compound_initial as f64 / total as f64);
    ModifierRatio {
        standalone,
        compound_initial,
        ratio,
        suggested_pos: thresholds.suggest(ratio),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::DocKind;

    fn docs(texts: &[&str]) -> Vec<CorpusDocument> {
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| CorpusDocument::new(i.to_string(), DocKind::Post, *t))
            .collect()
    }

    #[test]
    fn mostly_modifier() {
        let mut texts = vec!["новая фэшн-индустрия"; 9];
        texts.push("это фэшн");
        let r = modifier_ratio("фэшн", &docs(&texts), &ModifierThresholds::default());
        assert_eq!(r.ratio, Some(0.9));
        assert_eq!(r.suggested_pos, Pos::Nmod);
    }

    #[test]
    fn half_and_half() {
        let mut texts = vec!["трэш-вечеринка"; 5];
        texts.extend(["полный трэш"; 5]);
        let r = modifier_ratio("трэш", &docs(&texts), &ModifierThresholds::default());
        assert_eq!(r.ratio, Some(0.5));
        assert_eq!(r.suggested_pos, Pos::NmodOrN);
    }

    #[test]
    fn absent_lemma() {
        let r = modifier_ratio("фэшн", &docs(&["ничего"]), &ModifierThresholds::default());
        assert_eq!(r.ratio, None);
        assert_eq!(r.suggested_pos, Pos::N);
    }

    #[test]
    fn longer_words_are_not_hits() {
        let r = modifier_ratio("лайт", &docs(&["лайтовый лайт-версия"]), &ModifierThresholds::default());
        assert_eq!((r.standalone, r.compound_initial), (0, 1));
    }
}
