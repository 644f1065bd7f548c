//! Stored expectations: particular solutions, solution counts, coefficient
//! listings and reference intersection matrices.
//!
//! The files live under `data/` and are embedded at build time. Nothing in
//! the computation modules reads them; they exist only to be checked against.

use std::collections::{BTreeMap, BTreeSet};

use crate::block::{BlockId, NUM_VARS};
use crate::drg::ReferenceMatrices;
use crate::error::{Error, Result};
use crate::nullspace::{NullCoefficients, NULL_DIM};
use crate::solver::Solution;

pub const FIXTURES_TXT: &str = include_str!("../data/fixtures.txt");
pub const COUNTS_TXT: &str = include_str!("../data/counts.txt");
pub const LISTINGS_TXT: &str = include_str!("../data/listings.txt");
pub const REFERENCE_PNUMS_TXT: &str = include_str!("../data/reference_pnums.txt");

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn ints(line: usize, s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Data(format!("line {line}: bad integer {t:?}"))))
        .collect()
}

fn parse_block(line: usize, s: &str) -> Result<BlockId> {
    s.parse().map_err(|e| Error::Data(format!("line {line}: {e}")))
}

/// Lines of `block x1 .. x27`.
pub fn parse_fixtures(text: &str) -> Result<BTreeMap<BlockId, Solution>> {
    let mut out = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let (head, rest) = l
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Data(format!("line {line}: missing values")))?;
        let block = parse_block(line, head)?;
        let values = ints(line, rest)?;
        let x: [i64; NUM_VARS] = values
            .try_into()
            .map_err(|v: Vec<i64>| Error::Data(format!("line {line}: {} values, expected {NUM_VARS}", v.len())))?;
        if out.insert(block, Solution(x)).is_some() {
            return Err(Error::Data(format!("line {line}: block {block} listed twice")));
        }
    }
    Ok(out)
}

pub fn fixtures() -> BTreeMap<BlockId, Solution> {
    parse_fixtures(FIXTURES_TXT).expect("embedded fixtures parse")
}

pub fn parse_counts(text: &str) -> Result<BTreeMap<BlockId, usize>> {
    let mut out = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [b, c] = fields[..] else {
            return Err(Error::Data(format!("line {line}: expected \"block count\"")));
        };
        let count = c
            .parse()
            .map_err(|_| Error::Data(format!("line {line}: bad count {c:?}")))?;
        out.insert(parse_block(line, b)?, count);
    }
    Ok(out)
}

pub fn counts() -> BTreeMap<BlockId, usize> {
    parse_counts(COUNTS_TXT).expect("embedded counts parse")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListingSection {
    pub block: BlockId,
    pub case: Option<usize>,
    /// Rows reproduced as published, kept apart from the checked sets.
    pub printed: bool,
    pub tuples: Vec<NullCoefficients>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Listings {
    pub sections: Vec<ListingSection>,
}

impl Listings {
    /// Union of the checked sections for `block`.
    pub fn set(&self, block: BlockId) -> BTreeSet<NullCoefficients> {
        self.sections
            .iter()
            .filter(|s| s.block == block && !s.printed)
            .flat_map(|s| s.tuples.iter().copied())
            .collect()
    }

    pub fn cases(&self, block: BlockId) -> Vec<&ListingSection> {
        self.sections
            .iter()
            .filter(|s| s.block == block && s.case.is_some())
            .collect()
    }

    pub fn printed(&self, block: BlockId) -> Option<&ListingSection> {
        self.sections.iter().find(|s| s.block == block && s.printed)
    }

    pub fn blocks(&self) -> BTreeSet<BlockId> {
        self.sections.iter().map(|s| s.block).collect()
    }
}

/// Sections headed `[block]`, `[block case k]` or `[block printed]`, each
/// followed by rows of eight coefficients.
pub fn parse_listings(text: &str) -> Result<Listings> {
    let mut sections: Vec<ListingSection> = Vec::new();
    for (line, l) in content_lines(text) {
        if let Some(header) = l.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            let words: Vec<&str> = header.split_whitespace().collect();
            let (case, printed) = match words[1..] {
                [] => (None, false),
                ["printed"] => (None, true),
                ["case", k] => (
                    Some(k.parse().map_err(|_| Error::Data(format!("line {line}: bad case {k:?}")))?),
                    false,
                ),
                _ => return Err(Error::Data(format!("line {line}: bad header {l:?}"))),
            };
            let block = parse_block(line, words.first().copied().unwrap_or_default())?;
            sections.push(ListingSection {
                block,
                case,
                printed,
                tuples: Vec::new(),
            });
            continue;
        }
        let section = sections
            .last_mut()
            .ok_or_else(|| Error::Data(format!("line {line}: row before any header")))?;
        let n: [i64; NULL_DIM] = ints(line, l)?
            .try_into()
            .map_err(|v: Vec<i64>| Error::Data(format!("line {line}: {} values, expected {NULL_DIM}", v.len())))?;
        section.tuples.push(NullCoefficients(n));
    }
    Ok(Listings { sections })
}

pub fn listings() -> Listings {
    parse_listings(LISTINGS_TXT).expect("embedded listings parse")
}

/// Sections `[k]` followed by three rows of three entries.
pub fn parse_reference_pnums(text: &str) -> Result<ReferenceMatrices> {
    let mut out = [[[0i64; 3]; 3]; 3];
    let mut seen = [0usize; 3];
    let mut current: Option<usize> = None;
    for (line, l) in content_lines(text) {
        if let Some(k) = l.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            let k: usize = k
                .trim()
                .parse()
                .ok()
                .filter(|k| (1..=3).contains(k))
                .ok_or_else(|| Error::Data(format!("line {line}: bad header {l:?}")))?;
            current = Some(k - 1);
            continue;
        }
        let k = current.ok_or_else(|| Error::Data(format!("line {line}: row before any header")))?;
        if seen[k] == 3 {
            return Err(Error::Data(format!("line {line}: more than three rows")));
        }
        out[k][seen[k]] = ints(line, l)?
            .try_into()
            .map_err(|_| Error::Data(format!("line {line}: expected three entries")))?;
        seen[k] += 1;
    }
    if seen != [3; 3] {
        return Err(Error::Data("each matrix needs three rows".into()));
    }
    Ok(out)
}

pub fn reference_pnums() -> ReferenceMatrices {
    parse_reference_pnums(REFERENCE_PNUMS_TXT).expect("embedded matrices parse")
}
