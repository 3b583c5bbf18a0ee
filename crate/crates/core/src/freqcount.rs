//! Lemma frequency dictionary with shard-and-merge counting.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{tokenize, CorpusDocument, LanguageConfig};
use crate::morphodict::{MorphoDict, Pos};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreqKey {
    pub lemma: String,
    pub pos: Pos,
    pub in_dictionary: bool,
}

/// Occurrence counts per (lemma, pos, in-dictionary) cell.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreqMap {
    counts: HashMap<FreqKey, u64>,
    total_tokens: u64,
}

impl FreqMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: FreqKey, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(key).or_insert(0) += n;
        self.total_tokens += n;
    }

    pub fn get(&self, lemma: &str, pos: Pos, in_dictionary: bool) -> u64 {
        let key = FreqKey {
            lemma: lemma.to_string(),
            pos,
            in_dictionary,
        };
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FreqKey, u64)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    /// Cells in key order.
    pub fn sorted(&self) -> Vec<(&FreqKey, u64)> {
        let mut cells: Vec<_> = self.iter().collect();
        cells.sort();
        cells
    }

    /// Cell-wise sum. Consumes the larger side to reuse its table.
    pub fn merge(a: FreqMap, b: FreqMap) -> FreqMap {
        let (mut big, small) = if a.counts.len() >= b.counts.len() { (a, b) } else { (b, a) };
        for (key, n) in small.counts {
            *big.counts.entry(key).or_insert(0) += n;
        }
        big.total_tokens += small.total_tokens;
        big
    }
}

/// Tokenize and lemmatize every document (those passing `lang`, when given)
/// and count lemma cells.
pub fn count_shard<'a, I>(docs: I, dict: &MorphoDict, lang: Option<&LanguageConfig>) -> FreqMap
where
    I: IntoIterator<Item = &'a CorpusDocument>,
{
    let mut map = FreqMap::new();
    for doc in docs {
        if lang.is_some_and(|cfg| !cfg.detect(&doc.text).is_target) {
            continue;
        }
        for token in tokenize(&doc.text) {
            let a = dict.lemmatize(&token.normalized);
            map.add(
                FreqKey {
                    lemma: a.lemma,
                    pos: a.pos,
                    in_dictionary: a.in_dictionary,
                },
                1,
            );
        }
    }
    map
}

/// Split `docs` into `shards` contiguous slices, count them in parallel and
/// merge. The result does not depend on the shard count.
pub fn count_sharded(docs: &[CorpusDocument], dict: &MorphoDict, lang: Option<&LanguageConfig>, shards: usize) -> FreqMap {
    let shards = shards.max(1);
    let chunk = docs.len().div_ceil(shards).max(1);
    docs.par_chunks(chunk)
        .map(|slice| count_shard(slice, dict, lang))
        .reduce(FreqMap::new, FreqMap::merge)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextSnippet {
    pub left: String,
    pub hit: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreqRecord {
    pub lemma: String,
    pub pos: Pos,
    pub freq: u64,
    pub in_dictionary: bool,
    #[serde(default)]
    pub contexts: Vec<ContextSnippet>,
}

/// Cells with `freq >= min_freq`, most frequent first, ties by lemma then pos.
pub fn threshold_filter(map: &FreqMap, min_freq: u64, oov_only: bool) -> Vec<FreqRecord> {
    let mut records: Vec<FreqRecord> = map
        .iter()
        .filter(|(key, n)| *n >= min_freq.max(1) && !(oov_only && key.in_dictionary))
        .map(|(key, n)| FreqRecord {
            lemma: key.lemma.clone(),
            pos: key.pos,
            freq: n,
            in_dictionary: key.in_dictionary,
            contexts: Vec::new(),
        })
        .collect();
    records.sort_by(|a, b| {
        b.freq
            .cmp(&a.freq)
            .then_with(|| a.lemma.cmp(&b.lemma))
            .then_with(|| a.pos.cmp(&b.pos))
            .then_with(|| a.in_dictionary.cmp(&b.in_dictionary))
    });
    records
}

pub const CONTEXT_WINDOW: usize = 5;

/// First `k` KWIC snippets (±5 tokens) per target lemma, in stream order.
pub fn collect_contexts<'a, I>(
    docs: I,
    dict: &MorphoDict,
    targets: &HashSet<String>,
    k: usize,
) -> HashMap<String, Vec<ContextSnippet>>
where
    I: IntoIterator<Item = &'a CorpusDocument>,
{
    let mut out: HashMap<String, Vec<ContextSnippet>> = targets.iter().map(|t| (t.clone(), Vec::new())).collect();
    let mut open = targets.len();
    for doc in docs {
        if open == 0 {
            break;
        }
        let tokens = tokenize(&doc.text);
        for (i, token) in tokens.iter().enumerate() {
            let lemma = dict.lemmatize(&token.normalized).lemma;
            let Some(snippets) = out.get_mut(&lemma) else { continue };
            if snippets.len() >= k {
                continue;
            }
            let join = |range: &[crate::corpus::Token]| {
                range.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ")
            };
            snippets.push(ContextSnippet {
                left: join(&tokens[i.saturating_sub(CONTEXT_WINDOW)..i]),
                hit: token.surface.clone(),
                right: join(&tokens[i + 1..(i + 1 + CONTEXT_WINDOW).min(tokens.len())]),
            });
            if snippets.len() == k {
                open -= 1;
            }
        }
    }
    out
}

/// `lemma<TAB>pos<TAB>in_dict<TAB>freq` with a header row.
pub fn write_freq_tsv<W: Write>(mut w: W, records: &[FreqRecord]) -> std::io::Result<()> {
    writeln!(w, "lemma\tpos\tin_dict\tfreq")?;
    for r in records {
        writeln!(w, "{}\t{}\t{}\t{}", r.lemma, r.pos, r.in_dictionary, r.freq)?;
    }
    Ok(())
}

pub fn parse_freq_tsv(text: &str, origin: &std::path::Path) -> crate::Result<Vec<FreqRecord>> {
    use crate::error::Error;
    let mut out = Vec::new();
    for (line, cols) in crate::table::rows(text) {
        if line == 1 && cols.first() == Some(&"lemma") {
            continue;
        }
        let [lemma, pos, in_dict, freq] = cols[..] else {
            return Err(Error::parse(origin, line, "expected 4 columns"));
        };
        out.push(FreqRecord {
            lemma: lemma.to_string(),
            pos: pos.parse().map_err(|e: String| Error::parse(origin, line, e))?,
            in_dictionary: in_dict.parse().map_err(|_| Error::parse(origin, line, "in_dict must be true or false"))?,
            freq: freq.parse().map_err(|_| Error::parse(origin, line, "freq must be a positive integer"))?,
            contexts: Vec::new(),
        });
    }
    Ok(out)
}
