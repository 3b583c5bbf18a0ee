//! The classified lexicon: entries, TSV/JSON documents and aggregate counts.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::{is_model_string, DerivType, LoanType, Topic};
use crate::morphodict::Pos;

pub const TSV_HEADER: &str = "word\tpos\ttopic\tloan_type\tderiv_type\tmodel\tfreq";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub word: String,
    pub pos: Pos,
    pub topic: Topic,
    pub loan_type: LoanType,
    /// Absent for underived words.
    pub deriv_type: Option<DerivType>,
    pub model: Option<String>,
    pub freq: u64,
}

impl LexiconEntry {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.word.is_empty() {
            return Err("empty word".into());
        }
        if self.pos == Pos::Unknown {
            return Err(format!("{}: pos must not be Unknown", self.word));
        }
        match (&self.deriv_type, &self.model) {
            (Some(DerivType::Underived), _) => Err(format!("{}: underived is written as an empty deriv_type", self.word)),
            (Some(_), None) => Err(format!("{}: derived entry without a model", self.word)),
            (None, Some(_)) => Err(format!("{}: model without a derivation type", self.word)),
            (Some(_), Some(m)) if !is_model_string(m) => Err(format!("{}: malformed model `{m}`", self.word)),
            _ => Ok(()),
        }
    }

    pub fn is_derived(&self) -> bool {
        self.deriv_type.is_some()
    }

    /// Derivation type with underived made explicit.
    pub fn deriv_kind(&self) -> DerivType {
        self.deriv_type.unwrap_or(DerivType::Underived)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    #[default]
    Tsv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(ExportFormat::Tsv),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown export format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportOrder {
    /// Grouped by topic, then alphabetical.
    #[default]
    TopicWord,
    FreqDesc,
}

pub fn sort_entries(entries: &mut [LexiconEntry], order: ExportOrder) {
    match order {
        ExportOrder::TopicWord => entries.sort_by(|a, b| (a.topic, &a.word).cmp(&(b.topic, &b.word))),
        ExportOrder::FreqDesc => entries.sort_by(|a, b| b.freq.cmp(&a.freq).then_with(|| a.word.cmp(&b.word))),
    }
}

/// Write entries in the given order.
pub fn write_document(entries: &[LexiconEntry], format: ExportFormat) -> String {
    match format {
        ExportFormat::Tsv => {
            let mut out = String::from(TSV_HEADER);
            out.push('\n');
            for e in entries {
                let row = [
                    e.word.as_str(),
                    e.pos.as_str(),
                    e.topic.as_str(),
                    e.loan_type.as_str(),
                    e.deriv_type.map_or("", DerivType::as_str),
                    e.model.as_deref().unwrap_or(""),
                ];
                out.push_str(&row.join("\t"));
                out.push('\t');
                out.push_str(&e.freq.to_string());
                out.push('\n');
            }
            out
        }
        ExportFormat::Json => {
            let mut out = serde_json::to_string_pretty(entries).expect("lexicon entries serialize");
            out.push('\n');
            out
        }
    }
}

/// Parse a lexicon TSV. An explicit "Непроизводное" is read as absent.
pub fn parse_tsv(text: &str, origin: impl AsRef<Path>) -> Result<Vec<LexiconEntry>> {
    let origin = origin.as_ref();
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == TSV_HEADER => {}
        Some((i, _)) => return Err(Error::parse(origin, i + 1, format!("expected header `{TSV_HEADER}`"))),
        None => return Ok(Vec::new()),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let err = |m: String| Error::parse(origin, line_no, m);
        let cols: Vec<&str> = line.trim_end_matches('\r').split('\t').collect();
        let [word, pos, topic, loan, deriv, model, freq] = cols[..] else {
            return Err(err(format!("expected 7 columns, found {}", cols.len())));
        };
        let deriv_type = match deriv {
            "" => None,
            s => Some(s.parse::<DerivType>().map_err(err)?).filter(|d| d.is_derived()),
        };
        let entry = LexiconEntry {
            word: crate::corpus::normalize(word),
            pos: pos.parse().map_err(err)?,
            topic: topic.parse().map_err(err)?,
            loan_type: loan.parse().map_err(err)?,
            deriv_type,
            model: (!model.is_empty()).then(|| model.to_string()),
            freq: freq.parse().map_err(|e| err(format!("bad freq `{freq}`: {e}")))?,
        };
        entry.validate().map_err(err)?;
        out.push(entry);
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Vec<LexiconEntry>> {
    let entries: Vec<LexiconEntry> = serde_json::from_str(text)?;
    for e in &entries {
        e.validate().map_err(Error::Validation)?;
    }
    Ok(entries)
}

pub fn parse_document(text: &str, format: ExportFormat, origin: impl AsRef<Path>) -> Result<Vec<LexiconEntry>> {
    match format {
        ExportFormat::Tsv => parse_tsv(text, origin),
        ExportFormat::Json => parse_json(text),
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<Vec<LexiconEntry>> {
    let path = path.as_ref();
    let text = crate::table::read_file(path)?;
    let format = if path.extension().is_some_and(|e| e == "json") { ExportFormat::Json } else { ExportFormat::Tsv };
    parse_document(&text, format, path)
}

/// Key used in `by_model` for entries without a model.
pub const NO_MODEL: &str = "(none)";

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AggregateReport {
    pub size: usize,
    pub by_pos: BTreeMap<String, usize>,
    pub by_loan_type: BTreeMap<String, usize>,
    pub by_deriv_type: BTreeMap<String, usize>,
    pub by_model: BTreeMap<String, usize>,
    pub by_topic: BTreeMap<String, usize>,
    pub underived_count: usize,
    pub derived_count: usize,
}

impl AggregateReport {
    pub fn new(entries: &[LexiconEntry]) -> Self {
        let mut r = AggregateReport {
            size: entries.len(),
            ..Default::default()
        };
        let bump = |m: &mut BTreeMap<String, usize>, k: &str| *m.entry(k.to_string()).or_default() += 1;
        for e in entries {
            bump(&mut r.by_pos, e.pos.as_str());
            bump(&mut r.by_loan_type, e.loan_type.as_str());
            bump(&mut r.by_deriv_type, e.deriv_kind().as_str());
            bump(&mut r.by_model, e.model.as_deref().unwrap_or(NO_MODEL));
            bump(&mut r.by_topic, e.topic.as_str());
            if e.is_derived() {
                r.derived_count += 1;
            } else {
                r.underived_count += 1;
            }
        }
        r
    }

    pub fn count(map: &BTreeMap<String, usize>, key: &str) -> usize {
        map.get(key).copied().unwrap_or(0)
    }

    /// Breakdowns whose total differs from the lexicon size.
    pub fn inconsistent_axes(&self) -> Vec<&'static str> {
        let axes: [(&'static str, &BTreeMap<String, usize>); 5] = [
            ("pos", &self.by_pos),
            ("loan_type", &self.by_loan_type),
            ("deriv_type", &self.by_deriv_type),
            ("model", &self.by_model),
            ("topic", &self.by_topic),
        ];
        let mut bad: Vec<&'static str> = axes
            .into_iter()
            .filter(|(_, m)| m.values().sum::<usize>() != self.size)
            .map(|(name, _)| name)
            .collect();
        if self.derived_count + self.underived_count != self.size {
            bad.push("derived/underived");
        }
        bad
    }

    /// Aligned plain-text rendering.
    pub fn render(&self) -> String {
        let mut out = format!(
            "entries\t{}\nderived\t{}\nunderived\t{}\n",
            self.size, self.derived_count, self.underived_count
        );
        for (title, map) in [
            ("pos", &self.by_pos),
            ("loan type", &self.by_loan_type),
            ("derivation", &self.by_deriv_type),
            ("model", &self.by_model),
            ("topic", &self.by_topic),
        ] {
            out.push_str(&format!("\n[{title}]\n"));
            let mut rows: Vec<_> = map.iter().collect();
            rows.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in rows {
                let pad = width - k.chars().count();
                out.push_str(&format!("  {k}{}  {v:>4}\n", " ".repeat(pad)));
            }
        }
        out
    }
}

/// A count stated in the source publication's discussion of the lexicon.
#[derive(Debug, Clone, Copy)]
pub struct PublishedCount {
    pub claim: &'static str,
    pub expected: usize,
    count: fn(&[LexiconEntry]) -> usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub claim: String,
    pub expected: usize,
    pub actual: usize,
}

impl CountCheck {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }

    pub fn warning(&self) -> Option<String> {
        (!self.matches()).then(|| format!("{}: published {}, lexicon has {}", self.claim, self.expected, self.actual))
    }
}

fn pos_count(entries: &[LexiconEntry], pos: &[Pos]) -> usize {
    entries.iter().filter(|e| pos.contains(&e.pos)).count()
}

fn loan_count(entries: &[LexiconEntry], loans: &[LoanType]) -> usize {
    entries.iter().filter(|e| loans.contains(&e.loan_type)).count()
}

fn deriv_count(entries: &[LexiconEntry], d: DerivType) -> usize {
    entries.iter().filter(|e| e.deriv_kind() == d).count()
}

fn topic_count(entries: &[LexiconEntry], t: Topic) -> usize {
    entries.iter().filter(|e| e.topic == t).count()
}

fn model_count(entries: &[LexiconEntry], pred: impl Fn(&str) -> bool) -> usize {
    entries.iter().filter(|e| e.model.as_deref().is_some_and(&pred)).count()
}

pub const PUBLISHED_COUNTS: &[PublishedCount] = &[
    PublishedCount { claim: "nouns (N)", expected: 123, count: |e| pos_count(e, &[Pos::N]) },
    PublishedCount { claim: "verbs (V)", expected: 15, count: |e| pos_count(e, &[Pos::V]) },
    PublishedCount { claim: "adjectives (Adj)", expected: 8, count: |e| pos_count(e, &[Pos::Adj]) },
    PublishedCount { claim: "interjections (Interj)", expected: 4, count: |e| pos_count(e, &[Pos::Interj]) },
    PublishedCount { claim: "adverb/predicatives (Adv/Pred)", expected: 3, count: |e| pos_count(e, &[Pos::AdvPred]) },
    PublishedCount { claim: "noun modifiers (Nmod + Nmod/N)", expected: 15, count: |e| pos_count(e, &[Pos::Nmod, Pos::NmodOrN]) },
    PublishedCount { claim: "underived words", expected: 101, count: |e| deriv_count(e, DerivType::Underived) },
    PublishedCount { claim: "derived words", expected: 67, count: |e| e.iter().filter(|x| x.is_derived()).count() },
    PublishedCount { claim: "suffixation", expected: 33, count: |e| deriv_count(e, DerivType::Suffix) },
    PublishedCount { claim: "prefixation", expected: 7, count: |e| deriv_count(e, DerivType::Prefix) },
    PublishedCount { claim: "prefix+suffix derivation", expected: 7, count: |e| deriv_count(e, DerivType::PrefixSuffix) },
    PublishedCount {
        claim: "whole-word borrowings (Anglicisms + Gallicisms)",
        expected: 93,
        count: |e| loan_count(e, &[LoanType::Anglicism, LoanType::Gallicism]),
    },
    PublishedCount { claim: "Gallicisms", expected: 1, count: |e| loan_count(e, &[LoanType::Gallicism]) },
    PublishedCount {
        claim: "words with foreign roots (from borrowed roots + mixed)",
        expected: 43,
        count: |e| loan_count(e, &[LoanType::FromBorrowedRoots, LoanType::Mixed]),
    },
    PublishedCount {
        claim: "words with foreign roots, first stated figure",
        expected: 7,
        count: |e| loan_count(e, &[LoanType::FromBorrowedRoots]),
    },
    PublishedCount { claim: "built from borrowed roots", expected: 8, count: |e| loan_count(e, &[LoanType::FromBorrowedRoots]) },
    PublishedCount { claim: "mixed origin", expected: 35, count: |e| loan_count(e, &[LoanType::Mixed]) },
    PublishedCount { claim: "native words", expected: 32, count: |e| loan_count(e, &[LoanType::Native]) },
    PublishedCount {
        claim: "native underived words",
        expected: 8,
        count: |e| e.iter().filter(|x| x.loan_type == LoanType::Native && !x.is_derived()).count(),
    },
    PublishedCount {
        claim: "native derived words",
        expected: 24,
        count: |e| e.iter().filter(|x| x.loan_type == LoanType::Native && x.is_derived()).count(),
    },
    PublishedCount {
        claim: "native words in topic оценка",
        expected: 16,
        count: |e| e.iter().filter(|x| x.loan_type == LoanType::Native && x.topic == Topic::Evaluation).count(),
    },
    PublishedCount { claim: "topic интернет", expected: 35, count: |e| topic_count(e, Topic::Internet) },
    PublishedCount { claim: "topic оценка", expected: 25, count: |e| topic_count(e, Topic::Evaluation) },
    PublishedCount { claim: "topic маркетинг", expected: 18, count: |e| topic_count(e, Topic::Marketing) },
    PublishedCount { claim: "topic техника", expected: 14, count: |e| topic_count(e, Topic::Technology) },
    PublishedCount { claim: "topic мультимедиа", expected: 15, count: |e| topic_count(e, Topic::Multimedia) },
    PublishedCount { claim: "model ST-к", expected: 6, count: |e| model_count(e, |m| m == "ST-к") },
    PublishedCount { claim: "model ST-и", expected: 3, count: |e| model_count(e, |m| m == "ST-и") },
    PublishedCount {
        claim: "prefixed counterparts of ST-и",
        expected: 4,
        count: |e| model_count(e, |m| m.ends_with("-ST-и")),
    },
    PublishedCount { claim: "model на-ST", expected: 3, count: |e| model_count(e, |m| m == "на-ST") },
    PublishedCount { claim: "model за-ST-и", expected: 3, count: |e| model_count(e, |m| m == "за-ST-и") },
    PublishedCount { claim: "model ST-ч", expected: 1, count: |e| model_count(e, |m| m == "ST-ч") },
];

/// Compare a lexicon against every published count.
pub fn check_published_counts(entries: &[LexiconEntry]) -> Vec<CountCheck> {
    PUBLISHED_COUNTS
        .iter()
        .map(|p| CountCheck {
            claim: p.claim.to_string(),
            expected: p.expected,
            actual: (p.count)(entries),
        })
        .collect()
}
