//! Cyrillic to Latin respelling with enumerated alternatives.
//!
//! A lemma is turned into a small automaton: at each position every table
//! key that matches (digraphs before single letters) contributes one edge per
//! Latin alternative. An English "silent e" may follow a consonant that comes
//! right after a vowel, when the next letter is not a vowel (скайп → skype).

use std::collections::HashSet;

const TABLE: &[(&str, &[&str])] = &[
    // digraphs
    ("ай", &["i", "y", "igh", "ai", "ay"]),
    ("ей", &["a", "ay", "ai", "ey"]),
    ("эй", &["a", "ay", "ai", "ey"]),
    ("ой", &["oy", "oi"]),
    ("оу", &["o", "ou", "oa", "ow"]),
    ("ау", &["ow", "ou", "au"]),
    ("кс", &["x", "ks"]),
    ("кв", &["qu", "kv"]),
    ("дж", &["j", "g", "dg"]),
    ("шн", &["tion", "shion"]),
    ("нг", &["ng"]),
    // letters
    ("а", &["a"]),
    ("б", &["b"]),
    ("в", &["v", "w"]),
    ("г", &["g"]),
    ("д", &["d"]),
    ("е", &["e", "a", "ea"]),
    ("ё", &["yo", "e"]),
    ("ж", &["zh", "j", "ge", "g"]),
    ("з", &["z", "s"]),
    ("и", &["i", "ee", "ea", "e", "y"]),
    ("й", &["y", "i", "j"]),
    ("к", &["k", "c", "ck"]),
    ("л", &["l", "ll"]),
    ("м", &["m", "mm"]),
    ("н", &["n", "nn"]),
    ("о", &["o"]),
    ("п", &["p", "pp"]),
    ("р", &["r", "rr"]),
    ("с", &["s", "c", "ss"]),
    ("т", &["t", "tt"]),
    ("у", &["u", "oo", "ou"]),
    ("ф", &["f", "ph"]),
    ("х", &["h", "kh"]),
    ("ц", &["ts", "c", "z"]),
    ("ч", &["ch", "tch"]),
    ("ш", &["sh"]),
    ("щ", &["sch", "shch"]),
    ("ъ", &[""]),
    ("ы", &["y", "i"]),
    ("ь", &[""]),
    ("э", &["e", "a"]),
    ("ю", &["yu", "u", "you"]),
    ("я", &["ya", "ia"]),
];

const VOWELS: &str = "аеёиоуыэюя";

fn is_vowel(c: char) -> bool {
    VOWELS.contains(c)
}

/// Maximum size of the list returned by [`transliterate`].
pub const TRANSLIT_CAP: usize = 64;

/// Edge of the respelling automaton: from position `from` (with the
/// previous segment's vowel flag) to `to`, emitting `latin`.
#[derive(Debug, Clone)]
pub(crate) struct Edge {
    pub to: usize,
    pub latin: String,
    pub vowel: bool,
}

/// Respelling automaton over character positions of one lemma.
#[derive(Debug)]
pub(crate) struct Automaton {
    len: usize,
    /// `edges[pos][after_vowel]`
    edges: Vec<[Vec<Edge>; 2]>,
}

impl Automaton {
    pub fn new(lemma: &str) -> Self {
        let chars: Vec<char> = lemma.chars().filter(|c| *c != '-').collect();
        let len = chars.len();
        let mut edges: Vec<[Vec<Edge>; 2]> = (0..len).map(|_| [Vec::new(), Vec::new()]).collect();
        for (pos, slot) in edges.iter_mut().enumerate() {
            let mut keys: Vec<(&str, &[&str])> = TABLE
                .iter()
                .filter(|(key, _)| {
                    let k: Vec<char> = key.chars().collect();
                    chars[pos..].starts_with(&k)
                })
                .map(|(k, v)| (*k, *v))
                .collect();
            keys.sort_by_key(|(k, _)| std::cmp::Reverse(k.chars().count()));
            if keys.is_empty() {
                // Non-table characters pass through only if already Latin.
                let c = chars[pos];
                if c.is_ascii_lowercase() {
                    for edges in slot.iter_mut() {
                        edges.push(Edge {
                            to: pos + 1,
                            latin: c.to_string(),
                            vowel: false,
                        });
                    }
                }
                continue;
            }
            for (key, alts) in keys {
                let n = key.chars().count();
                let to = pos + n;
                let vowel = key.chars().next().is_some_and(is_vowel);
                let next_is_vowel = chars.get(to).copied().is_some_and(is_vowel);
                for after_vowel in [false, true] {
                    for alt in alts {
                        slot[after_vowel as usize].push(Edge {
                            to,
                            latin: alt.to_string(),
                            vowel,
                        });
                        if after_vowel && !vowel && !next_is_vowel && !alt.is_empty() {
                            slot[after_vowel as usize].push(Edge {
                                to,
                                latin: format!("{alt}e"),
                                vowel: false,
                            });
                        }
                    }
                }
            }
        }
        Automaton { len, edges }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn edges(&self, pos: usize, after_vowel: bool) -> &[Edge] {
        &self.edges[pos][after_vowel as usize]
    }

    /// Depth-first enumeration of spellings in table order, stopping at `cap`.
    pub fn enumerate(&self, cap: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut buf = String::new();
        self.walk(0, false, &mut buf, &mut out, &mut seen, cap);
        out
    }

    fn walk(
        &self,
        pos: usize,
        after_vowel: bool,
        buf: &mut String,
        out: &mut Vec<String>,
        seen: &mut HashSet<String>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if pos == self.len {
            if seen.insert(buf.clone()) {
                out.push(buf.clone());
            }
            return;
        }
        for edge in self.edges(pos, after_vowel) {
            let mark = buf.len();
            buf.push_str(&edge.latin);
            self.walk(edge.to, edge.vowel, buf, out, seen, cap);
            buf.truncate(mark);
        }
    }
}

/// Candidate Latin spellings of a lemma, at most [`TRANSLIT_CAP`], longest
/// substitutions first.
pub fn transliterate(lemma: &str) -> Vec<String> {
    Automaton::new(lemma).enumerate(TRANSLIT_CAP)
}
