//! Corpus documents, JSON Lines ingestion, language filtering, tokenization
//! and corpus-level statistics.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocKind {
    Post,
    Comment,
}

/// One post or comment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusDocument {
    pub id: String,
    pub kind: DocKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created_at: Option<DateTime<Utc>>,
    pub text: String,
}

impl CorpusDocument {
    pub fn new(id: impl Into<String>, kind: DocKind, text: impl Into<String>) -> Self {
        CorpusDocument {
            id: id.into(),
            kind,
            created_at: None,
            text: text.into(),
        }
    }
}

/// True for letters of the Cyrillic and Cyrillic Supplement blocks.
pub fn is_cyrillic_letter(c: char) -> bool {
    matches!(c, '\u{0400}'..='\u{052F}') && c.is_alphabetic()
}

/// Lowercase and fold "ё" into "е".
pub fn normalize(s: &str) -> String {
    s.chars()
        .flat_map(char::to_lowercase)
        .map(|c| if c == 'ё' { 'е' } else { c })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    /// Character (not byte) index of the first character of `surface`.
    pub offset: usize,
}

/// Split text into Cyrillic word tokens. A token is a maximal run of Cyrillic
/// letters, where single hyphens between two letters are kept ("дресс-код").
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !is_cyrillic_letter(chars[i]) {
            i += 1;
            continue;
        }
        let start = i;
        i += 1;
        loop {
            if i < chars.len() && is_cyrillic_letter(chars[i]) {
                i += 1;
            } else if i + 1 < chars.len() && chars[i] == '-' && is_cyrillic_letter(chars[i + 1]) {
                i += 2;
            } else {
                break;
            }
        }
        let surface: String = chars[start..i].iter().collect();
        tokens.push(Token {
            normalized: normalize(&surface),
            surface,
            offset: start,
        });
    }
    tokens
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    TooShort,
    LowCyrillic,
    UkrainianMarkers,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LanguageVerdict {
    pub is_target: bool,
    pub cyrillic_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reject_reason: Option<RejectReason>,
}

const UKRAINIAN_MARKERS: [char; 8] = ['і', 'ї', 'є', 'ґ', 'І', 'Ї', 'Є', 'Ґ'];

/// Thresholds for the Russian-text heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LanguageConfig {
    pub min_letters: usize,
    pub min_cyrillic_ratio: f64,
}

impl Default for LanguageConfig {
    fn default() -> Self {
        LanguageConfig {
            min_letters: 3,
            min_cyrillic_ratio: 0.75,
        }
    }
}

impl LanguageConfig {
    pub fn detect(&self, text: &str) -> LanguageVerdict {
        let mut letters = 0usize;
        let mut cyrillic = 0usize;
        let mut ukrainian = false;
        for c in text.chars().filter(|c| c.is_alphabetic()) {
            letters += 1;
            if is_cyrillic_letter(c) {
                cyrillic += 1;
            }
            ukrainian |= UKRAINIAN_MARKERS.contains(&c);
        }
        let cyrillic_ratio = if letters == 0 {
            0.0
        } else {
            cyrillic as f64 / letters as f64
        };
        let reject_reason = if letters < self.min_letters {
            Some(RejectReason::TooShort)
        } else if cyrillic_ratio < self.min_cyrillic_ratio {
            Some(RejectReason::LowCyrillic)
        } else if ukrainian {
            Some(RejectReason::UkrainianMarkers)
        } else {
            None
        };
        LanguageVerdict {
            is_target: reject_reason.is_none(),
            cyrillic_ratio,
            reject_reason,
        }
    }
}

/// [`LanguageConfig::detect`] with default thresholds.
pub fn detect_language(text: &str) -> LanguageVerdict {
    LanguageConfig::default().detect(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnError {
    Skip,
    Abort,
}

/// Streaming reader over a JSON Lines corpus file.
pub struct CorpusReader<R> {
    path: PathBuf,
    lines: std::io::Lines<R>,
    line_no: usize,
    on_error: OnError,
    seen_ids: HashSet<String>,
    skipped: usize,
    failed: bool,
}

impl CorpusReader<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>, on_error: OnError) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(CorpusReader::new(path, BufReader::new(file), on_error))
    }
}

impl<R: BufRead> CorpusReader<R> {
    pub fn new(path: impl Into<PathBuf>, reader: R, on_error: OnError) -> Self {
        CorpusReader {
            path: path.into(),
            lines: reader.lines(),
            line_no: 0,
            on_error,
            seen_ids: HashSet::new(),
            skipped: 0,
            failed: false,
        }
    }

    /// Malformed lines dropped so far (skip mode only).
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    fn parse_line(&mut self, line: &str) -> std::result::Result<CorpusDocument, String> {
        let doc: CorpusDocument = serde_json::from_str(line).map_err(|e| e.to_string())?;
        if doc.id.is_empty() {
            return Err("empty document id".into());
        }
        if !self.seen_ids.insert(doc.id.clone()) {
            return Err(format!("duplicate document id `{}`", doc.id));
        }
        Ok(doc)
    }
}

impl<R: BufRead> Iterator for CorpusReader<R> {
    type Item = Result<CorpusDocument>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(Error::io(&self.path, e)));
                }
            };
            self.line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            match self.parse_line(&line) {
                Ok(doc) => return Some(Ok(doc)),
                Err(message) => match self.on_error {
                    OnError::Skip => {
                        log::warn!("{}:{}: skipping malformed line: {message}", self.path.display(), self.line_no);
                        self.skipped += 1;
                    }
                    OnError::Abort => {
                        self.failed = true;
                        return Some(Err(Error::parse(&self.path, self.line_no, message)));
                    }
                },
            }
        }
    }
}

/// Open a corpus file and collect every document.
pub fn ingest_corpus(path: impl AsRef<Path>, on_error: OnError) -> Result<Vec<CorpusDocument>> {
    let mut reader = CorpusReader::open(path, on_error)?;
    let docs = reader.by_ref().collect::<Result<Vec<_>>>()?;
    if reader.skipped() > 0 {
        log::info!("skipped {} malformed lines", reader.skipped());
    }
    Ok(docs)
}

/// Size statistics of a corpus. Counts merge associatively; means are derived.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_posts: u64,
    pub n_comments: u64,
    pub n_texts: u64,
    pub n_tokens_posts: u64,
    pub n_tokens_comments: u64,
    pub n_tokens_total: u64,
    pub mean_post_len: Option<f64>,
    pub mean_comment_len: Option<f64>,
}

impl CorpusStats {
    pub fn observe(&mut self, doc: &CorpusDocument) {
        let tokens = tokenize(&doc.text).len() as u64;
        match doc.kind {
            DocKind::Post => {
                self.n_posts += 1;
                self.n_tokens_posts += tokens;
            }
            DocKind::Comment => {
                self.n_comments += 1;
                self.n_tokens_comments += tokens;
            }
        }
        self.refresh();
    }

    pub fn merge(mut self, other: &CorpusStats) -> CorpusStats {
        self.n_posts += other.n_posts;
        self.n_comments += other.n_comments;
        self.n_tokens_posts += other.n_tokens_posts;
        self.n_tokens_comments += other.n_tokens_comments;
        self.refresh();
        self
    }

    fn refresh(&mut self) {
        self.n_texts = self.n_posts + self.n_comments;
        self.n_tokens_total = self.n_tokens_posts + self.n_tokens_comments;
        self.mean_post_len = mean(self.n_tokens_posts, self.n_posts);
        self.mean_comment_len = mean(self.n_tokens_comments, self.n_comments);
    }
}

fn mean(total: u64, n: u64) -> Option<f64> {
    (n > 0).then(|| total as f64 / n as f64)
}

/// Table-style statistics over a document stream. With `lang` set, documents
/// the language heuristic rejects are left out of every count.
pub fn corpus_stats<'a, I>(docs: I, lang: Option<&LanguageConfig>) -> CorpusStats
where
    I: IntoIterator<Item = &'a CorpusDocument>,
{
    let mut stats = CorpusStats::default();
    for doc in docs {
        if lang.is_some_and(|cfg| !cfg.detect(&doc.text).is_target) {
            continue;
        }
        stats.observe(doc);
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normalized(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|t| t.normalized).collect()
    }

    #[test]
    fn tokenizes_punctuation_and_hyphens() {
        assert_eq!(normalized("Привет, мир!"), ["привет", "мир"]);
        assert_eq!(normalized("дресс-код и ещё"), ["дресс-код", "и", "еще"]);
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn hyphen_edges_are_separators() {
        assert_eq!(normalized("-фэшн- индустрия--кино"), ["фэшн", "индустрия", "кино"]);
        assert_eq!(normalized("hello мир42мир"), ["мир", "мир"]);
    }

    #[test]
    fn token_offsets_are_char_indices() {
        let toks = tokenize("Ёж, ёлка");
        assert_eq!(toks[1].offset, 4);
        assert_eq!(toks[1].surface, "ёлка");
        assert_eq!(toks[1].normalized, "елка");
    }

    #[test]
    fn language_examples() {
        let v = detect_language("Привет мир");
        assert!(v.is_target);
        assert_eq!(v.cyrillic_ratio, 1.0);

        let v = detect_language("від україни");
        assert!(!v.is_target);
        assert_eq!(v.reject_reason, Some(RejectReason::UkrainianMarkers));

        let v = detect_language("hello мир");
        assert_eq!(v.cyrillic_ratio, 0.375);
        assert_eq!(v.reject_reason, Some(RejectReason::LowCyrillic));

        let v = detect_language("да!");
        assert_eq!(v.reject_reason, Some(RejectReason::TooShort));
    }

    #[test]
    fn stats_on_small_fixture() {
        let ten = "раз два три четыре пять шесть семь восемь девять десять";
        let five = "раз два три четыре пять";
        let mut docs: Vec<_> = (0..4)
            .map(|i| CorpusDocument::new(format!("p{i}"), DocKind::Post, ten))
            .collect();
        docs.extend((0..2).map(|i| CorpusDocument::new(format!("c{i}"), DocKind::Comment, five)));
        let stats = corpus_stats(&docs, Some(&LanguageConfig::default()));
        assert_eq!(stats.n_texts, 6);
        assert_eq!(stats.n_tokens_total, 50);
        assert_eq!(stats.mean_post_len, Some(10.0));
        assert_eq!(stats.mean_comment_len, Some(5.0));
    }

    #[test]
    fn empty_stream_has_no_means() {
        let stats = corpus_stats(std::iter::empty(), None);
        assert_eq!(stats, CorpusStats::default());
        assert_eq!(stats.mean_post_len, None);
    }

    #[test]
    fn language_filter_excludes_documents() {
        let docs = vec![
            CorpusDocument::new("1", DocKind::Post, "Привет всем друзьям"),
            CorpusDocument::new("2", DocKind::Post, "hello world and мир"),
        ];
        assert_eq!(corpus_stats(&docs, Some(&LanguageConfig::default())).n_posts, 1);
        assert_eq!(corpus_stats(&docs, None).n_posts, 2);
    }

    #[test]
    fn reader_skips_or_aborts() {
        let data = "{\"id\":\"a\",\"kind\":\"post\",\"text\":\"раз\"}\nnot json\n{\"id\":\"b\",\"kind\":\"comment\",\"text\":\"два\",\"extra\":1}\n";
        let mut reader = CorpusReader::new("mem", data.as_bytes(), OnError::Skip);
        let docs: Vec<_> = reader.by_ref().collect::<Result<_>>().unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(reader.skipped(), 1);

        let reader = CorpusReader::new("mem", data.as_bytes(), OnError::Abort);
        let err = reader.collect::<Result<Vec<_>>>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn reader_rejects_duplicate_and_empty_ids() {
        let data = "{\"id\":\"a\",\"kind\":\"post\",\"text\":\"x\"}\n{\"id\":\"a\",\"kind\":\"post\",\"text\":\"y\"}\n{\"id\":\"\",\"kind\":\"post\",\"text\":\"z\"}\n{\"id\":\"q\",\"kind\":\"story\",\"text\":\"z\"}\n";
        let mut reader = CorpusReader::new("mem", data.as_bytes(), OnError::Skip);
        assert_eq!(reader.by_ref().count(), 1);
        assert_eq!(reader.skipped(), 3);
    }

    #[test]
    fn timestamps_parse() {
        let line = "{\"id\":\"a\",\"kind\":\"post\",\"created_at\":\"2013-11-13T10:00:00Z\",\"text\":\"x\"}";
        let doc: CorpusDocument = serde_json::from_str(line).unwrap();
        assert_eq!(doc.created_at.unwrap().to_rfc3339(), "2013-11-13T10:00:00+00:00");
    }
}
