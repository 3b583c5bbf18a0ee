//! Line-oriented data files: UTF-8, tab-separated, `#` comments.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            None
        } else {
            Some((i + 1, line.split('\t').collect()))
        }
    })
}

/// One entry per line, normalized.
pub(crate) fn word_list(text: &str) -> impl Iterator<Item = String> + '_ {
    rows(text).map(|(_, cols)| crate::corpus::normalize(cols[0].trim()))
}
