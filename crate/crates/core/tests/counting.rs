use std::collections::BTreeSet;

use proptest::prelude::*;

use neolex_core::corpus::{corpus_stats, CorpusDocument, DocKind, LanguageConfig};
use neolex_core::freqcount::{count_shard, count_sharded, threshold_filter, FreqKey, FreqMap};
use neolex_core::morphodict::{guess_pos, MorphoDict, Pos};
use neolex_core::resources;

const MINI_DICT: &str = include_str!("../data/dict/mini.tsv");

fn mini() -> MorphoDict {
    MorphoDict::parse(MINI_DICT, "mini.tsv").unwrap()
}

fn freq_map() -> impl Strategy<Value = FreqMap> {
    prop::collection::vec((0usize..6, 0usize..3, any::<bool>(), 1u64..50), 0..15).prop_map(|cells| {
        let lemmas = ["кот", "лайк", "пост", "мем", "хайп", "скайп"];
        let pos = [Pos::N, Pos::V, Pos::Unknown];
        let mut m = FreqMap::new();
        for (l, p, d, n) in cells {
            m.add(FreqKey { lemma: lemmas[l].to_string(), pos: pos[p], in_dictionary: d }, n);
        }
        m
    })
}

fn corpus() -> impl Strategy<Value = Vec<CorpusDocument>> {
    let words = vec!["кот", "кота", "коты", "пост", "лайкнуть", "Мем", "дом", "hello", "і", "дресс-код", "ёлка"];
    prop::collection::vec(prop::collection::vec(prop::sample::select(words), 0..12), 0..15).prop_map(|docs| {
        docs.into_iter().enumerate().map(|(i, w)| CorpusDocument::new(i.to_string(), DocKind::Post, w.join(" "))).collect()
    })
}

proptest! {
    #[test]
    fn merge_is_associative_and_commutative(a in freq_map(), b in freq_map(), c in freq_map()) {
        let left = FreqMap::merge(FreqMap::merge(a.clone(), b.clone()), c.clone());
        let right = FreqMap::merge(a.clone(), FreqMap::merge(b.clone(), c));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(FreqMap::merge(a.clone(), b.clone()), FreqMap::merge(b, a.clone()));
        prop_assert_eq!(FreqMap::merge(a.clone(), FreqMap::new()), a);
    }

    #[test]
    fn threshold_is_ordered_and_idempotent(m in freq_map(), min in 0u64..60, oov in any::<bool>()) {
        let once = threshold_filter(&m, min, oov);
        for w in once.windows(2) {
            let key = |r: &neolex_core::freqcount::FreqRecord| (std::cmp::Reverse(r.freq), r.lemma.clone(), r.pos, r.in_dictionary);
            prop_assert!(key(&w[0]) < key(&w[1]));
        }
        let mut rebuilt = FreqMap::new();
        for r in &once {
            prop_assert!(r.freq >= min && !(oov && r.in_dictionary));
            rebuilt.add(FreqKey { lemma: r.lemma.clone(), pos: r.pos, in_dictionary: r.in_dictionary }, r.freq);
        }
        prop_assert_eq!(threshold_filter(&rebuilt, min, oov), once);
    }

    #[test]
    fn shard_count_does_not_matter(docs in corpus(), shards in 1usize..9) {
        let dict = mini();
        prop_assert_eq!(count_sharded(&docs, &dict, None, shards), count_shard(&docs, &dict, None));
    }

    #[test]
    fn total_tokens_match_corpus_stats(docs in corpus(), filter in any::<bool>()) {
        let cfg = LanguageConfig::default();
        let lang = filter.then_some(&cfg);
        prop_assert_eq!(count_shard(&docs, &mini(), lang).total_tokens(), corpus_stats(&docs, lang).n_tokens_total);
    }

    #[test]
    fn oov_lemmatization_is_identity(word in "[а-я]{1,8}") {
        let dict = mini();
        let a = dict.lemmatize(&word);
        prop_assert_eq!(a.in_dictionary, dict.contains_form(&word));
        if !a.in_dictionary {
            prop_assert_eq!((a.lemma.as_str(), a.pos), (word.as_str(), Pos::Unknown));
        }
        prop_assert_eq!(a, dict.lemmatize(&word));
    }
}

#[test]
fn mini_dictionary_lemma_count_matches_column_count() {
    let rows: Vec<Vec<&str>> = MINI_DICT
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').collect())
        .collect();
    let lemmas: BTreeSet<&str> = rows.iter().map(|r| r[1]).collect();
    let forms: BTreeSet<&str> = rows.iter().map(|r| r[0]).collect();
    let dict = mini();
    assert_eq!(lemmas.len(), 50);
    assert_eq!(dict.lemmas().len(), lemmas.len());
    assert_eq!(dict.form_count(), forms.len());
    for form in dict.wordforms() {
        assert!(dict.lemmatize(form).in_dictionary);
    }
}

#[test]
fn guess_pos_marks_fixture_verbs() {
    let overrides = resources::pos_overrides();
    let verbs: Vec<_> = resources::gold_lexicon().into_iter().filter(|e| e.pos == Pos::V).collect();
    assert_eq!(verbs.len(), 15);
    for e in verbs.iter().filter(|e| e.word.ends_with("ть")) {
        assert_eq!(guess_pos(&e.word, overrides), Pos::V, "{}", e.word);
    }
    for e in resources::gold_lexicon() {
        assert!(!matches!(guess_pos(&e.word, overrides), Pos::Nmod | Pos::NmodOrN));
    }
}
