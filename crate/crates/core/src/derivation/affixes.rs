use std::path::Path;

use crate::corpus::normalize;
use crate::error::{Error, Result};
use crate::morphodict::Pos;
use crate::table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffixKind {
    Prefix,
    Suffix,
    Interfix,
    Ending,
}

/// One morpheme of the inventory. `label` is how it is written in model
/// strings ("ч-айш", "нь"); `surfaces` are the spellings it takes inside a
/// word ("чайш", "н").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affix {
    pub kind: AffixKind,
    pub label: String,
    pub surfaces: Vec<String>,
    /// Parts of speech the affix may appear in; empty means any.
    pub pos: Vec<Pos>,
}

impl Affix {
    pub fn licensed_for(&self, pos: Pos) -> bool {
        if self.pos.is_empty() {
            return true;
        }
        self.pos.iter().any(|&p| p == pos || (p == Pos::N && pos.is_nominal()))
    }
}

/// Prefixes, suffixes, interfixes and inflection endings used by the
/// derivation matcher.
#[derive(Debug, Clone, Default)]
pub struct AffixInventory {
    pub prefixes: Vec<Affix>,
    pub suffixes: Vec<Affix>,
    pub interfixes: Vec<Affix>,
    pub endings: Vec<Affix>,
}

impl AffixInventory {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&table::read_file(path)?, path)
    }

    /// Rows are `kind<TAB>label` followed by optional `pos=A,B` and
    /// `surface=x,y` columns. `kind` is one of prefix, suffix, interfix, ending.
    pub fn parse(text: &str, origin: impl AsRef<Path>) -> Result<Self> {
        let origin = origin.as_ref();
        let mut inv = AffixInventory::default();
        for (line, cols) in table::rows(text) {
            if cols.len() < 2 {
                return Err(Error::parse(origin, line, "expected `kind<TAB>label`"));
            }
            let kind = match cols[0].trim() {
                "prefix" => AffixKind::Prefix,
                "suffix" => AffixKind::Suffix,
                "interfix" => AffixKind::Interfix,
                "ending" => AffixKind::Ending,
                other => return Err(Error::parse(origin, line, format!("unknown affix kind `{other}`"))),
            };
            let label = normalize(cols[1].trim());
            let mut surfaces = vec![label.replace('-', "")];
            let mut pos = Vec::new();
            for extra in &cols[2..] {
                match extra.trim().split_once('=') {
                    Some(("pos", list)) => {
                        for p in list.split(',') {
                            pos.push(p.trim().parse().map_err(|e: String| Error::parse(origin, line, e))?);
                        }
                    }
                    Some(("surface", list)) => {
                        surfaces = list.split(',').map(|s| normalize(s.trim())).collect();
                    }
                    _ => return Err(Error::parse(origin, line, format!("unexpected column `{extra}`"))),
                }
            }
            if kind != AffixKind::Ending && surfaces.iter().any(String::is_empty) {
                return Err(Error::parse(origin, line, "empty affix"));
            }
            let affix = Affix {
                kind,
                label,
                surfaces,
                pos,
            };
            match kind {
                AffixKind::Prefix => inv.prefixes.push(affix),
                AffixKind::Suffix => inv.suffixes.push(affix),
                AffixKind::Interfix => inv.interfixes.push(affix),
                AffixKind::Ending => inv.endings.push(affix),
            }
        }
        Ok(inv)
    }

    /// Longest inflection ending licensed for `pos` that leaves a non-empty
    /// base; empty when none applies.
    pub fn strip_ending<'a>(&self, lemma: &'a str, pos: Pos) -> (&'a str, &'a str) {
        let best = self
            .endings
            .iter()
            .filter(|e| e.licensed_for(pos))
            .flat_map(|e| e.surfaces.iter())
            .filter(|s| lemma.ends_with(s.as_str()) && lemma.len() > s.len())
            .max_by_key(|s| s.chars().count());
        match best {
            Some(s) => lemma.split_at(lemma.len() - s.len()),
            None => (lemma, ""),
        }
    }
}
