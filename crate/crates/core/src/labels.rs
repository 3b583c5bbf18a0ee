//! Classification vocabularies shared by the classifier, the review service
//! and the lexicon export. Serialized forms are the Russian column values of
//! the published lexicon.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::morphodict::Pos;

macro_rules! string_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $name::ALL
                    .iter()
                    .copied()
                    .find(|v| v.as_str() == s)
                    .ok_or_else(|| format!(concat!("unknown ", stringify!($name), " `{}`"), s))
            }
        }
    };
}

string_enum! {
    /// Semantic field. Declaration order is alphabetical, which is the
    /// lexicon's grouping order.
    Topic {
        Internet => "интернет",
        Culture => "культура",
        Marketing => "маркетинг",
        Multimedia => "мультимедиа",
        Clothing => "одежда",
        Evaluation => "оценка",
        Food => "питание",
        Politics => "политика",
        Psychology => "психология",
        Work => "работа",
        Misc => "разное",
        SportLeisure => "спорт и досуг",
        Technology => "техника",
        Person => "человек",
    }
}

string_enum! {
    LoanType {
        Anglicism => "Англицизм",
        Gallicism => "Галлицизм",
        Native => "Исконное",
        FromBorrowedRoots => "Из заимств. корней",
        Mixed => "Смешанное",
    }
}

string_enum! {
    DerivType {
        Underived => "Непроизводное",
        Suffix => "Суффикс",
        Prefix => "Префикс",
        PrefixSuffix => "Префикс+суффикс",
        Composite => "Композит",
    }
}

impl DerivType {
    pub fn is_derived(self) -> bool {
        self != DerivType::Underived
    }
}

/// Reviewer-facing labels along the five classification axes. Every field is
/// optional so partial relabels can be expressed; an accepted candidate must
/// carry a complete set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<Pos>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<Topic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loan_type: Option<LoanType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deriv_type: Option<DerivType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
}

impl Labels {
    /// Overlay the fields present in `patch`. Setting `deriv_type` to
    /// underived clears the model.
    pub fn apply(&mut self, patch: &Labels) {
        self.pos = patch.pos.or(self.pos);
        self.topic = patch.topic.or(self.topic);
        self.loan_type = patch.loan_type.or(self.loan_type);
        if let Some(dt) = patch.deriv_type {
            self.deriv_type = Some(dt);
            if !dt.is_derived() {
                self.model = None;
            }
        }
        if patch.model.is_some() {
            self.model = patch.model.clone();
        }
    }

    /// Reason the set is unusable for an accepted entry, if any.
    pub fn completeness_error(&self) -> Option<String> {
        let missing: Vec<&str> = [
            ("pos", self.pos.is_none()),
            ("topic", self.topic.is_none()),
            ("loan_type", self.loan_type.is_none()),
            ("deriv_type", self.deriv_type.is_none()),
        ]
        .into_iter()
        .filter_map(|(name, absent)| absent.then_some(name))
        .collect();
        if !missing.is_empty() {
            return Some(format!("missing labels: {}", missing.join(", ")));
        }
        if self.pos == Some(Pos::Unknown) {
            return Some("pos must not be Unknown".into());
        }
        let derived = self.deriv_type.is_some_and(DerivType::is_derived);
        match (&self.model, derived) {
            (None, true) => Some("derived words need a model".into()),
            (Some(_), false) => Some("underived words take no model".into()),
            (Some(m), true) if !is_model_string(m) => Some(format!("malformed model `{m}`")),
            _ => None,
        }
    }
}

/// Grammar of derivation model strings: optional `prefix-`, the stem
/// placeholder, any number of `-affix` parts, optionally a second stem.
pub fn is_model_string(model: &str) -> bool {
    let parts: Vec<&str> = model.split('-').collect();
    let Some(first_st) = parts.iter().position(|p| *p == "ST") else {
        return false;
    };
    if first_st > 1 {
        return false;
    }
    let cyr = |p: &&str| !p.is_empty() && p.chars().all(|c| matches!(c, 'а'..='я' | 'ё'));
    if first_st == 1 && !cyr(&parts[0]) {
        return false;
    }
    let rest = &parts[first_st + 1..];
    let (affixes, tail_st) = match rest.last() {
        Some(&"ST") => (&rest[..rest.len() - 1], true),
        _ => (rest, false),
    };
    if tail_st && first_st == 1 {
        return false;
    }
    affixes.iter().all(cyr)
}
