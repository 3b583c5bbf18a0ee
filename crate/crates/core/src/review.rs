//! Expert review as an event-sourced fold: an immutable candidate snapshot
//! plus an append-only JSON Lines decision log, latest decision winning.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::candidates::{Candidate, RejectReason, Status};
use crate::error::{Error, Result};
use crate::labels::{is_model_string, Labels};
use crate::lexicon::{self, ExportFormat, ExportOrder, LexiconEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Accept,
    Reject,
    Relabel,
    Reopen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewDecision {
    pub lemma: String,
    pub action: Action,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reject_reason: Option<RejectReason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
    pub decided_at: DateTime<Utc>,
    pub reviewer: String,
}

impl ReviewDecision {
    pub fn new(lemma: impl Into<String>, action: Action, reviewer: impl Into<String>) -> Self {
        ReviewDecision {
            lemma: lemma.into(),
            action,
            reject_reason: None,
            labels: None,
            decided_at: Utc::now(),
            reviewer: reviewer.into(),
        }
    }

    pub fn accept(lemma: impl Into<String>, labels: Labels, reviewer: impl Into<String>) -> Self {
        ReviewDecision {
            labels: Some(labels),
            ..Self::new(lemma, Action::Accept, reviewer)
        }
    }

    pub fn reject(lemma: impl Into<String>, reason: RejectReason, reviewer: impl Into<String>) -> Self {
        ReviewDecision {
            reject_reason: Some(reason),
            ..Self::new(lemma, Action::Reject, reviewer)
        }
    }

    pub fn relabel(lemma: impl Into<String>, labels: Labels, reviewer: impl Into<String>) -> Self {
        ReviewDecision {
            labels: Some(labels),
            ..Self::new(lemma, Action::Relabel, reviewer)
        }
    }

    pub fn reopen(lemma: impl Into<String>, reviewer: impl Into<String>) -> Self {
        Self::new(lemma, Action::Reopen, reviewer)
    }

    /// Apply to a candidate, or explain why the decision is invalid for it.
    pub fn apply_to(&self, c: &mut Candidate) -> std::result::Result<(), String> {
        if self.lemma != c.lemma {
            return Err(format!("decision for `{}` applied to `{}`", self.lemma, c.lemma));
        }
        let mut labels = c.labels.clone();
        if let Some(patch) = &self.labels {
            labels.apply(patch);
        }
        if let Some(m) = &labels.model {
            if !is_model_string(m) {
                return Err(format!("malformed model `{m}`"));
            }
        }
        match self.action {
            Action::Accept => {
                if self.labels.is_none() {
                    return Err("accept requires labels".into());
                }
                if let Some(e) = labels.completeness_error() {
                    return Err(e);
                }
                c.status = Status::Accepted;
                c.reject_reason = None;
            }
            Action::Reject => {
                let Some(reason) = self.reject_reason else {
                    return Err("reject requires reject_reason".into());
                };
                c.status = Status::Rejected;
                c.reject_reason = Some(reason);
            }
            Action::Relabel => {
                if self.labels.is_none() {
                    return Err("relabel requires labels".into());
                }
                if c.status == Status::Accepted {
                    if let Some(e) = labels.completeness_error() {
                        return Err(e);
                    }
                }
            }
            Action::Reopen => {
                c.status = Status::Pending;
                c.reject_reason = None;
            }
        }
        c.labels = labels;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortKey {
    /// Frequency descending, then lemma.
    #[default]
    Freq,
    Lemma,
}

/// Candidates with every logged decision applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ReviewState {
    candidates: Vec<Candidate>,
    index: HashMap<String, usize>,
    applied: usize,
}

impl ReviewState {
    pub fn new(candidates: Vec<Candidate>) -> Result<Self> {
        let mut index = HashMap::with_capacity(candidates.len());
        for (i, c) in candidates.iter().enumerate() {
            if index.insert(c.lemma.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate candidate `{}`", c.lemma)));
            }
        }
        Ok(ReviewState {
            candidates,
            index,
            applied: 0,
        })
    }

    pub fn get(&self, lemma: &str) -> Option<&Candidate> {
        self.index.get(lemma).map(|&i| &self.candidates[i])
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Number of decisions applied so far.
    pub fn applied(&self) -> usize {
        self.applied
    }

    /// What `apply` would produce, without changing the state.
    pub fn preview(&self, d: &ReviewDecision) -> Result<Candidate> {
        let i = *self.index.get(&d.lemma).ok_or_else(|| Error::NotFound(d.lemma.clone()))?;
        let mut c = self.candidates[i].clone();
        d.apply_to(&mut c).map_err(Error::Validation)?;
        Ok(c)
    }

    pub fn apply(&mut self, d: &ReviewDecision) -> Result<&Candidate> {
        let updated = self.preview(d)?;
        let i = self.index[&d.lemma];
        self.candidates[i] = updated;
        self.applied += 1;
        Ok(&self.candidates[i])
    }

    pub fn count(&self, status: Status) -> usize {
        self.candidates.iter().filter(|c| c.status == status).count()
    }

    /// Filtered, sorted page plus the total number of matches.
    pub fn query(&self, status: Option<Status>, sort: SortKey, offset: usize, limit: usize) -> (usize, Vec<&Candidate>) {
        let mut hits: Vec<&Candidate> = self
            .candidates
            .iter()
            .filter(|c| status.is_none_or(|s| c.status == s))
            .collect();
        match sort {
            SortKey::Freq => hits.sort_by(|a, b| b.freq.cmp(&a.freq).then_with(|| a.lemma.cmp(&b.lemma))),
            SortKey::Lemma => hits.sort_by(|a, b| a.lemma.cmp(&b.lemma)),
        }
        let total = hits.len();
        (total, hits.into_iter().skip(offset).take(limit).collect())
    }

    /// SHA-256 over the canonical JSON of all candidates in snapshot order.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for c in &self.candidates {
            h.update(serde_json::to_vec(c).expect("candidate serializes"));
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    /// Accepted candidates as lexicon entries.
    pub fn lexicon(&self, order: ExportOrder) -> Vec<LexiconEntry> {
        let mut entries: Vec<LexiconEntry> = self
            .candidates
            .iter()
            .filter(|c| c.status == Status::Accepted)
            .map(|c| {
                let l = &c.labels;
                LexiconEntry {
                    word: c.lemma.clone(),
                    pos: l.pos.expect("accepted candidates carry a pos"),
                    topic: l.topic.expect("accepted candidates carry a topic"),
                    loan_type: l.loan_type.expect("accepted candidates carry a loan type"),
                    deriv_type: l.deriv_type.filter(|d| d.is_derived()),
                    model: l.model.clone(),
                    freq: c.freq,
                }
            })
            .collect();
        lexicon::sort_entries(&mut entries, order);
        entries
    }

    pub fn export(&self, format: ExportFormat, order: ExportOrder) -> String {
        lexicon::write_document(&self.lexicon(order), format)
    }
}

pub fn load_candidates(path: impl AsRef<Path>) -> Result<Vec<Candidate>> {
    let path = path.as_ref();
    let text = crate::table::read_file(path)?;
    serde_json::from_str(&text).map_err(|e| Error::parse(path, e.line(), e.to_string()))
}

pub fn write_candidates(path: impl AsRef<Path>, candidates: &[Candidate]) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(candidates)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Pending candidates seeded from lexicon entries (word, POS and frequency).
pub fn candidates_from_lexicon(entries: &[LexiconEntry]) -> Vec<Candidate> {
    entries
        .iter()
        .map(|e| Candidate {
            lemma: e.word.clone(),
            pos: e.pos,
            freq: e.freq,
            contexts: Vec::new(),
            auto_flags: Default::default(),
            in_reference: false,
            status: Status::Pending,
            reject_reason: None,
            labels: Labels::default(),
            suggested: None,
        })
        .collect()
}

/// The labels an entry was published with.
pub fn entry_labels(e: &LexiconEntry) -> Labels {
    Labels {
        pos: Some(e.pos),
        topic: Some(e.topic),
        loan_type: Some(e.loan_type),
        deriv_type: Some(e.deriv_kind()),
        model: e.model.clone(),
    }
}

/// Every decision in a log file; an absent file is an empty log.
pub fn read_log(path: impl AsRef<Path>) -> Result<Vec<ReviewDecision>> {
    let path = path.as_ref();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let d = serde_json::from_str(&line).map_err(|e| Error::parse(path, i + 1, e.to_string()))?;
        out.push(d);
    }
    Ok(out)
}

/// Replay `decisions` over `candidates`. Any invalid decision aborts the
/// whole replay; `origin` and the decision's position name it.
pub fn replay(candidates: Vec<Candidate>, decisions: &[ReviewDecision], origin: impl AsRef<Path>) -> Result<ReviewState> {
    let mut state = ReviewState::new(candidates)?;
    for (i, d) in decisions.iter().enumerate() {
        state
            .apply(d)
            .map_err(|e| Error::parse(origin.as_ref(), i + 1, e.to_string()))?;
    }
    Ok(state)
}

pub fn load_state(candidates: impl AsRef<Path>, log: impl AsRef<Path>) -> Result<ReviewState> {
    let decisions = read_log(log.as_ref())?;
    replay(load_candidates(candidates)?, &decisions, log)
}

/// Append-only decision log. Every append is flushed to disk before it
/// returns.
#[derive(Debug)]
pub struct DecisionLog {
    path: PathBuf,
    file: File,
}

impl DecisionLog {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        Ok(DecisionLog { path, file })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&mut self, d: &ReviewDecision) -> Result<()> {
        let mut line = serde_json::to_vec(d)?;
        line.push(b'\n');
        self.file.write_all(&line).map_err(|e| Error::io(&self.path, e))?;
        self.file.sync_data().map_err(|e| Error::io(&self.path, e))
    }
}

/// Review state bound to its log: the single writer of decisions.
#[derive(Debug)]
pub struct ReviewService {
    state: ReviewState,
    log: DecisionLog,
}

impl ReviewService {
    pub fn new(state: ReviewState, log: DecisionLog) -> Self {
        ReviewService { state, log }
    }

    /// Load the candidate snapshot, replay the log, and keep appending to it.
    pub fn open(candidates: impl AsRef<Path>, log: impl Into<PathBuf>) -> Result<Self> {
        let log = log.into();
        let state = load_state(candidates, &log)?;
        Ok(ReviewService {
            state,
            log: DecisionLog::open(log)?,
        })
    }

    pub fn state(&self) -> &ReviewState {
        &self.state
    }

    /// Validate, persist, then apply. Invalid decisions leave the log
    /// untouched.
    pub fn decide(&mut self, d: ReviewDecision) -> Result<&Candidate> {
        let updated = self.state.preview(&d)?;
        self.log.append(&d)?;
        let i = self.state.index[&d.lemma];
        self.state.candidates[i] = updated;
        self.state.applied += 1;
        Ok(&self.state.candidates[i])
    }
}
