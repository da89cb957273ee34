//! Leftmost reduced subwords and the dictionary between positions in
//! `c^inf` and the preprojective indecomposables `tau^{-k} P_j`.
//!
//! The leftmost reduced subword of a target `w` inside a base word is found
//! greedily: keep a remainder `r` (initially `w`) and select a position with
//! letter `s` exactly when `s` is a left descent of `r`, then replace `r` by
//! `s r`. The exhaustive tests check that this agrees with the
//! lexicographically smallest reduced position list.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arquiver::vanishing_powers;
use crate::quiver::Quiver;
use crate::weyl::{WeylElement, WeylGroup};
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeftmostError {
    #[error("target is not a subword of the base word (remainder of length {0} left)")]
    NotASubword(usize),
    #[error(
        "position {position} maps to tau^-{k} P_{j}, which is zero; \
         this contradicts the bijection and indicates a bug"
    )]
    ZeroModuleHit { position: usize, j: usize, k: usize },
    #[error("scan of c^inf exceeded its safety cap of {0} copies")]
    ScanCap(usize),
    #[error("position list is not strictly increasing and 1-based")]
    BadPositions,
}

/// The module `tau^{-k} P_j` (vertex `j` is 1-based).
///
/// Ordered as in `P_1, ..., P_n, tau^{-1} P_1, ...`: by `k`, then `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PreprojIndex {
    pub j: usize,
    pub k: usize,
}

impl PreprojIndex {
    pub fn new(j: usize, k: usize) -> Self {
        Self { j, k }
    }

    /// Position of this module's letter in `c^inf` (1-based).
    pub fn position(&self, n: usize) -> usize {
        self.k * n + self.j
    }

    pub fn from_position(n: usize, position: usize) -> Self {
        Self {
            j: (position - 1) % n + 1,
            k: (position - 1) / n,
        }
    }
}

impl Ord for PreprojIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.k, self.j).cmp(&(other.k, other.j))
    }
}

impl PartialOrd for PreprojIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PreprojIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "P{}", self.j),
            k => write!(f, "t-{k}P{}", self.j),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {0:?} as an indecomposable (expected P<j> or t-<k>P<j>)")]
pub struct IndexParseError(pub String);

impl FromStr for PreprojIndex {
    type Err = IndexParseError;

    /// Accepts `P2`, `t-1P2`, `t1P2` and `tau^-1P2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || IndexParseError(s.to_string());
        let t = s.trim();
        let (k, rest) = if let Some(body) = t.strip_prefix("tau^").or_else(|| t.strip_prefix("t")) {
            let body = body.strip_prefix('-').unwrap_or(body);
            let digits = body.chars().take_while(|c| c.is_ascii_digit()).count();
            if digits == 0 {
                return Err(err());
            }
            let k: usize = body[..digits].parse().map_err(|_| err())?;
            (k, &body[digits..])
        } else {
            (0, t)
        };
        let j_text = rest.strip_prefix('P').ok_or_else(err)?;
        if j_text.is_empty() || !j_text.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let j: usize = j_text.parse().map_err(|_| err())?;
        if j == 0 {
            return Err(err());
        }
        Ok(Self { j, k })
    }
}

/// Parses a missing list either as JSON `[{"j":1,"k":0}, ...]` or as
/// whitespace/comma separated tokens such as `"P1 P2 P3 t-1P2"`.
pub fn parse_missing(text: &str) -> Result<Vec<PreprojIndex>, IndexParseError> {
    let t = text.trim();
    if t.starts_with('[') {
        let list: Vec<PreprojIndex> =
            serde_json::from_str(t).map_err(|e| IndexParseError(e.to_string()))?;
        if let Some(bad) = list.iter().find(|i| i.j == 0) {
            return Err(IndexParseError(format!("vertex 0 in {bad:?}")));
        }
        return Ok(list);
    }
    t.split(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}')
        .filter(|tok| !tok.is_empty())
        .map(str::parse)
        .collect()
}

/// A cofinite subcategory, recorded by its finite set of missing
/// preprojective indecomposables in the canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubcategorySpec {
    missing: Vec<PreprojIndex>,
}

impl SubcategorySpec {
    /// Sorts by `(k, j)` and drops duplicates.
    pub fn new(mut missing: Vec<PreprojIndex>) -> Self {
        missing.sort();
        missing.dedup();
        Self { missing }
    }

    pub fn missing(&self) -> &[PreprojIndex] {
        &self.missing
    }
}

/// Strictly increasing 1-based positions into a base word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PositionList(Vec<usize>);

impl PositionList {
    pub fn new(positions: Vec<usize>) -> Result<Self, LeftmostError> {
        let ok =
            positions.first().is_none_or(|&p| p >= 1) && positions.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Self(positions))
        } else {
            Err(LeftmostError::BadPositions)
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The word a target is searched in.
#[derive(Clone, Copy, Debug)]
pub enum Base<'a> {
    Word(&'a Word),
    /// `s_1 ... s_n` repeated indefinitely.
    CInfinity,
}

/// Positions of the leftmost reduced subword for `target` in `base`.
pub fn leftmost_positions(
    group: &WeylGroup,
    target: &WeylElement,
    base: Base<'_>,
) -> Result<PositionList, LeftmostError> {
    let mut r = target.clone();
    let mut positions = Vec::with_capacity(target.length());
    match base {
        Base::Word(word) => {
            for (p, &s) in word.letters().iter().enumerate() {
                if r.is_identity() {
                    break;
                }
                if s <= group.rank() && group.left_descent(&r, s) {
                    r = group.left_mul(s, &r);
                    positions.push(p + 1);
                }
            }
            if !r.is_identity() {
                return Err(LeftmostError::NotASubword(r.length()));
            }
        }
        Base::CInfinity => {
            let n = group.rank();
            let cap = n * (target.length() + 1);
            let mut p = 0;
            while !r.is_identity() {
                if p >= cap * n {
                    return Err(LeftmostError::ScanCap(cap));
                }
                let s = p % n + 1;
                if group.left_descent(&r, s) {
                    r = group.left_mul(s, &r);
                    positions.push(p + 1);
                }
                p += 1;
            }
        }
    }
    Ok(PositionList(positions))
}

/// Translates positions in `c^inf` into modules. For Dynkin quivers every
/// returned index is checked to be a nonzero module.
pub fn positions_to_indices(
    quiver: &Quiver,
    positions: &PositionList,
) -> Result<Vec<PreprojIndex>, LeftmostError> {
    let n = quiver.n();
    let vanish = vanishing_powers(quiver);
    positions
        .as_slice()
        .iter()
        .map(|&p| {
            let idx = PreprojIndex::from_position(n, p);
            if let Some(v) = &vanish {
                if idx.k >= v[idx.j - 1] {
                    return Err(LeftmostError::ZeroModuleHit {
                        position: p,
                        j: idx.j,
                        k: idx.k,
                    });
                }
            }
            Ok(idx)
        })
        .collect()
}

/// Reads off the vertex of each missing module, in order.
pub fn word_from_missing(spec: &SubcategorySpec) -> Word {
    Word::new(spec.missing.iter().map(|i| i.j).collect())
}

/// The missing set of the quotient-closed subcategory attached to `w`.
pub fn category_of(group: &WeylGroup, w: &WeylElement) -> Result<SubcategorySpec, LeftmostError> {
    let positions = leftmost_positions(group, w, Base::CInfinity)?;
    let indices = positions_to_indices(group.quiver(), &positions)?;
    Ok(SubcategorySpec::new(indices))
}

/// True iff the selected letters form a reduced word whose leftmost
/// occurrence in `base` is exactly `positions`.
pub fn is_leftmost(group: &WeylGroup, base: &Word, positions: &PositionList) -> bool {
    if positions.as_slice().last().is_some_and(|&p| p > base.len()) {
        return false;
    }
    let selected = base.subword(positions.as_slice());
    let Ok(w) = group.evaluate(&selected) else {
        return false;
    };
    if w.length() != selected.len() {
        return false;
    }
    leftmost_positions(group, &w, Base::Word(base)).is_ok_and(|p| p == *positions)
}
