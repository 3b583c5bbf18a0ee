//! Latin-alphabet wordlists searched through the respelling automaton.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use super::translit::Automaton;
use crate::error::Result;
use crate::table;

#[derive(Debug, Clone, Default)]
struct Node {
    children: Vec<(u8, u32)>,
    /// Index into `words` when a word ends here.
    word: Option<u32>,
    depth: u16,
}

/// A wordlist stored as a byte trie. Earlier lines rank higher.
#[derive(Debug, Clone)]
pub struct LatinLexicon {
    nodes: Vec<Node>,
    words: Vec<String>,
    index: HashMap<String, u32>,
}

/// How a lemma's respelling met the lexicon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexiconHit {
    Exact(String),
    /// Two lexicon words, each at least [`MIN_PART_LEN`] letters.
    Compound(String, String),
    /// One edit away from a lexicon word.
    Near(String),
}

pub const MIN_PART_LEN: usize = 3;
/// Root counting only splits into words ranked among this many most frequent.
pub const MAX_PART_RANK: u32 = 5000;
/// Near matches are only attempted against words this long or longer.
pub const MIN_NEAR_LEN: usize = 4;

impl Default for LatinLexicon {
    fn default() -> Self {
        LatinLexicon {
            nodes: vec![Node::default()],
            words: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl LatinLexicon {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::parse(&table::read_file(path.as_ref())?))
    }

    /// One word per line; anything outside a-z is dropped, so "hold'em"
    /// becomes "holdem".
    pub fn parse(text: &str) -> Self {
        let mut lex = LatinLexicon::default();
        for (_, cols) in table::rows(text) {
            let word: String = cols[0].to_lowercase().chars().filter(|c| c.is_ascii_lowercase()).collect();
            lex.insert(&word);
        }
        lex
    }

    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a str>) -> Self {
        let mut lex = LatinLexicon::default();
        for w in words {
            lex.insert(w);
        }
        lex
    }

    pub fn insert(&mut self, word: &str) {
        if word.is_empty() || self.index.contains_key(word) {
            return;
        }
        let mut node = 0usize;
        for b in word.bytes() {
            node = match self.nodes[node].children.iter().find(|(c, _)| *c == b) {
                Some(&(_, next)) => next as usize,
                None => {
                    let next = self.nodes.len();
                    let depth = self.nodes[node].depth + 1;
                    self.nodes.push(Node {
                        depth,
                        ..Node::default()
                    });
                    self.nodes[node].children.push((b, next as u32));
                    next
                }
            };
        }
        let id = self.words.len() as u32;
        self.nodes[node].word = Some(id);
        self.words.push(word.to_string());
        self.index.insert(word.to_string(), id);
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn child(&self, node: usize, b: u8) -> Option<usize> {
        self.nodes[node].children.iter().find(|(c, _)| *c == b).map(|&(_, n)| n as usize)
    }

    fn rank(&self, word: &str) -> u32 {
        self.index.get(word).copied().unwrap_or(u32::MAX)
    }

    /// Whether `word` splits into two lexicon words of at least
    /// [`MIN_PART_LEN`] letters.
    pub fn splits_in_two(&self, word: &str) -> Option<(String, String)> {
        (MIN_PART_LEN..=word.len().saturating_sub(MIN_PART_LEN))
            .filter(|&i| self.rank(&word[..i]) < MAX_PART_RANK && self.rank(&word[i..]) < MAX_PART_RANK)
            .min_by_key(|&i| self.rank(&word[..i]).max(self.rank(&word[i..])))
            .map(|i| (word[..i].to_string(), word[i..].to_string()))
    }

    /// Best-ranked lexicon word some respelling of `lemma` equals.
    pub fn exact(&self, lemma: &str) -> Option<String> {
        let auto = Automaton::new(lemma);
        let mut hits = HashSet::new();
        let mut seen = HashSet::new();
        self.walk_exact(&auto, 0, false, 0, &mut seen, &mut hits);
        self.best(hits)
    }

    fn walk_exact(
        &self,
        auto: &Automaton,
        pos: usize,
        after_vowel: bool,
        node: usize,
        seen: &mut HashSet<(usize, bool, usize)>,
        hits: &mut HashSet<u32>,
    ) {
        if !seen.insert((pos, after_vowel, node)) {
            return;
        }
        if pos == auto.len() {
            if let Some(w) = self.nodes[node].word {
                hits.insert(w);
            }
            return;
        }
        for edge in auto.edges(pos, after_vowel) {
            if let Some(next) = self.follow(node, &edge.latin) {
                self.walk_exact(auto, edge.to, edge.vowel, next, seen, hits);
            }
        }
    }

    fn follow(&self, mut node: usize, s: &str) -> Option<usize> {
        for b in s.bytes() {
            node = self.child(node, b)?;
        }
        Some(node)
    }

    /// A respelling that is the concatenation of two lexicon words.
    pub fn compound(&self, lemma: &str) -> Option<(String, String)> {
        self.compound_ranked(lemma, u32::MAX)
    }

    /// Like [`compound`](Self::compound), with both parts among the
    /// [`MAX_PART_RANK`] most frequent words.
    pub fn common_compound(&self, lemma: &str) -> Option<(String, String)> {
        self.compound_ranked(lemma, MAX_PART_RANK)
    }

    fn compound_ranked(&self, lemma: &str, max_rank: u32) -> Option<(String, String)> {
        let auto = Automaton::new(lemma);
        let mut hits = HashSet::new();
        let mut seen = HashSet::new();
        self.walk_compound(&auto, 0, false, 0, None, &mut seen, &mut hits);
        hits.into_iter()
            .filter(|&(a, b)| a < max_rank && b < max_rank)
            .min_by_key(|&(a, b)| (self.rank(&self.words[a as usize]).max(self.rank(&self.words[b as usize])), a, b))
            .map(|(a, b)| (self.words[a as usize].clone(), self.words[b as usize].clone()))
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_compound(
        &self,
        auto: &Automaton,
        pos: usize,
        after_vowel: bool,
        node: usize,
        first: Option<u32>,
        seen: &mut HashSet<(usize, bool, usize, Option<u32>)>,
        hits: &mut HashSet<(u32, u32)>,
    ) {
        if !seen.insert((pos, after_vowel, node, first)) {
            return;
        }
        let part = self.nodes[node]
            .word
            .filter(|_| self.nodes[node].depth as usize >= MIN_PART_LEN);
        if let (Some(w), None) = (part, first) {
            if pos < auto.len() {
                self.walk_compound(auto, pos, after_vowel, 0, Some(w), seen, hits);
            }
        }
        if pos == auto.len() {
            if let (Some(a), Some(b)) = (first, part) {
                hits.insert((a, b));
            }
            return;
        }
        for edge in auto.edges(pos, after_vowel) {
            // Word boundaries fall only between segments.
            if let Some(next) = self.follow(node, &edge.latin) {
                self.walk_compound(auto, edge.to, edge.vowel, next, first, seen, hits);
            }
        }
    }

    /// A lexicon word within Levenshtein distance one of some respelling.
    pub fn near(&self, lemma: &str) -> Option<String> {
        let auto = Automaton::new(lemma);
        let mut hits = HashSet::new();
        let mut seen = HashSet::new();
        self.walk_near(&auto, 0, false, 0, 0, 0, 1, &mut seen, &mut hits);
        hits.retain(|&w| self.words[w as usize].len() >= MIN_NEAR_LEN);
        self.best(hits)
    }

    /// State: automaton position and vowel flag, offset inside the current
    /// edge's Latin string (`edge` indexes `auto.edges(pos, ..)`), trie node,
    /// and remaining edit budget.
    #[allow(clippy::too_many_arguments)]
    fn walk_near(
        &self,
        auto: &Automaton,
        pos: usize,
        after_vowel: bool,
        edge: usize,
        offset: usize,
        node: usize,
        budget: u8,
        seen: &mut HashSet<(usize, bool, usize, usize, usize, u8)>,
        hits: &mut HashSet<u32>,
    ) {
        if !seen.insert((pos, after_vowel, edge, offset, node, budget)) {
            return;
        }
        // Insertion: the lexicon word has an extra letter here.
        if budget > 0 {
            for &(_, child) in &self.nodes[node].children {
                self.walk_near(auto, pos, after_vowel, edge, offset, child as usize, budget - 1, seen, hits);
            }
        }
        if offset == 0 {
            if pos == auto.len() {
                if let Some(w) = self.nodes[node].word {
                    hits.insert(w);
                }
                return;
            }
            // Choose an edge out of `pos`, then consume its letters.
            for (i, e) in auto.edges(pos, after_vowel).iter().enumerate() {
                if e.latin.is_empty() {
                    self.walk_near(auto, e.to, e.vowel, 0, 0, node, budget, seen, hits);
                } else {
                    self.consume(auto, pos, after_vowel, i, 0, node, budget, seen, hits);
                }
            }
        } else {
            self.consume(auto, pos, after_vowel, edge, offset, node, budget, seen, hits);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn consume(
        &self,
        auto: &Automaton,
        pos: usize,
        after_vowel: bool,
        edge: usize,
        offset: usize,
        node: usize,
        budget: u8,
        seen: &mut HashSet<(usize, bool, usize, usize, usize, u8)>,
        hits: &mut HashSet<u32>,
    ) {
        let e = &auto.edges(pos, after_vowel)[edge];
        let bytes = e.latin.as_bytes();
        let b = bytes[offset];
        let (next_pos, next_vowel, next_edge, next_offset) = if offset + 1 == bytes.len() {
            (e.to, e.vowel, 0, 0)
        } else {
            (pos, after_vowel, edge, offset + 1)
        };
        if let Some(child) = self.child(node, b) {
            self.walk_near(auto, next_pos, next_vowel, next_edge, next_offset, child, budget, seen, hits);
        }
        if budget > 0 {
            // Deletion: the respelling has a letter the word lacks.
            self.walk_near(auto, next_pos, next_vowel, next_edge, next_offset, node, budget - 1, seen, hits);
            // Substitution.
            for &(c, child) in &self.nodes[node].children {
                if c != b {
                    self.walk_near(auto, next_pos, next_vowel, next_edge, next_offset, child as usize, budget - 1, seen, hits);
                }
            }
        }
    }

    fn best(&self, hits: HashSet<u32>) -> Option<String> {
        hits.into_iter().min().map(|w| self.words[w as usize].clone())
    }

    /// Exact, then compound, then near match.
    pub fn lookup(&self, lemma: &str) -> Option<LexiconHit> {
        if let Some(w) = self.exact(lemma) {
            return Some(LexiconHit::Exact(w));
        }
        if let Some((a, b)) = self.compound(lemma) {
            return Some(LexiconHit::Compound(a, b));
        }
        self.near(lemma).map(LexiconHit::Near)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> LatinLexicon {
        LatinLexicon::from_words(["the", "skype", "dead", "line", "deadline", "public", "cover", "play", "cast", "pipe"])
    }

    #[test]
    fn exact_matches() {
        let lex = lex();
        assert_eq!(lex.exact("скайп").as_deref(), Some("skype"));
        assert_eq!(lex.exact("дедлайн").as_deref(), Some("deadline"));
        assert_eq!(lex.exact("паблик"), None);
    }

    #[test]
    fn compound_matches() {
        assert_eq!(lex().compound("плэйкаст"), Some(("play".into(), "cast".into())));
        assert_eq!(lex().splits_in_two("deadline"), Some(("dead".into(), "line".into())));
        assert_eq!(lex().splits_in_two("skype"), None);
    }

    #[test]
    fn near_matches() {
        let lex = lex();
        assert_eq!(lex.near("паблик").as_deref(), Some("public"));
        assert_eq!(lex.near("кавер").as_deref(), Some("cover"));
        assert_eq!(lex.near("мда"), None);
    }

    #[test]
    fn near_covers_exact_and_respects_length() {
        let lex = LatinLexicon::from_words(["skype", "mod"]);
        assert_eq!(lex.near("скайп").as_deref(), Some("skype"));
        assert_eq!(lex.near("мода"), None);
        assert_eq!(lex.lookup("скайпу"), Some(LexiconHit::Near("skype".into())));
    }

    #[test]
    fn parse_strips_apostrophes() {
        let lex = LatinLexicon::parse("# comment\nhold'em\nOK\n");
        assert!(lex.contains("holdem"));
        assert!(lex.contains("ok"));
    }
}
