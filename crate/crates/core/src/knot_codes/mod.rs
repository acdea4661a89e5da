//! Gauss codes: parsing, validation and simple transforms.
//!
//! A code is the cyclic list of passages met while walking along the knot,
//! written as tokens `O<label><sign>` / `U<label><sign>`. The first token is
//! the basepoint. Labels are arbitrary alphanumeric strings; internally they
//! are renumbered densely in order of first appearance.

mod moves;
mod singular;
mod table;

pub use moves::{apply_r1, apply_r2, perturb, random_r1, random_r2_classical, R2Case};
pub use singular::{parse_singular_code, SingularCode, SingularPassage, Visit};
pub use table::{load_knot_table, parse_knot_table, parse_knot_table_line, KnotRecord, TableError, BUNDLED_KNOT_TABLE};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

/// Local writhe of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// A passage as written in the text, before labels are resolved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawPassage {
    pub label: String,
    pub role: Role,
    pub sign: Sign,
}

impl RawPassage {
    pub fn new(label: impl Into<String>, role: Role, sign: Sign) -> Self {
        RawPassage { label: label.into(), role, sign }
    }
}

impl fmt::Display for RawPassage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.role.letter(), self.label, self.sign.symbol())
    }
}

/// One passage through a crossing; `crossing` indexes [`GaussCode::labels`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: usize,
    pub role: Role,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("malformed token {token:?} at position {index}")]
    MalformedToken { index: usize, token: String },
    #[error("label {0:?} must have exactly one over- and one under-passage")]
    LabelRoleMismatch(String),
    #[error("the two passages of label {0:?} disagree in sign")]
    SignMismatch(String),
    #[error("double point {0:?} must appear exactly once as first and once as second visit, in that order")]
    DoublePointMismatch(String),
    #[error("label {0:?} is used both for a crossing and a double point")]
    LabelClash(String),
    #[error("position {position} out of range for a code of length {len}")]
    IndexOutOfRange { position: usize, len: usize },
    #[error("R2 positions out of order: {0} > {1}")]
    PositionsOutOfOrder(usize, usize),
    #[error("orientation case {0} cannot be realised at the given positions")]
    UnsupportedOrientationCase(String),
}

/// A violated code invariant, naming the offending label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Diagnostic {
    LabelRoleMismatch(String),
    SignMismatch(String),
}

impl From<Diagnostic> for CodeError {
    fn from(d: Diagnostic) -> Self {
        match d {
            Diagnostic::LabelRoleMismatch(l) => CodeError::LabelRoleMismatch(l),
            Diagnostic::SignMismatch(l) => CodeError::SignMismatch(l),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::LabelRoleMismatch(l) => write!(f, "LabelRoleMismatch({l})"),
            Diagnostic::SignMismatch(l) => write!(f, "SignMismatch({l})"),
        }
    }
}

pub(crate) fn is_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric())
}

fn parse_token(index: usize, token: &str) -> Result<RawPassage, CodeError> {
    let malformed = || CodeError::MalformedToken { index, token: token.to_string() };
    let bytes = token.as_bytes();
    if bytes.len() < 3 {
        return Err(malformed());
    }
    let role = match bytes[0] {
        b'O' => Role::Over,
        b'U' => Role::Under,
        _ => return Err(malformed()),
    };
    let sign = match bytes[bytes.len() - 1] {
        b'+' => Sign::Positive,
        b'-' => Sign::Negative,
        _ => return Err(malformed()),
    };
    let label = &token[1..token.len() - 1];
    if !is_label(label) {
        return Err(malformed());
    }
    Ok(RawPassage::new(label, role, sign))
}

/// Splits text into passages, checking token syntax only.
pub fn tokenize(text: &str) -> Result<Vec<RawPassage>, CodeError> {
    text.split_whitespace().enumerate().map(|(i, tok)| parse_token(i, tok)).collect()
}

/// Checks the per-label invariants. Diagnostics come in order of each
/// label's first appearance; an empty list means the passages form a code.
pub fn validate(passages: &[RawPassage]) -> Vec<Diagnostic> {
    let mut order: Vec<&str> = Vec::new();
    let mut seen: HashMap<&str, Vec<&RawPassage>> = HashMap::new();
    for p in passages {
        let entry = seen.entry(p.label.as_str()).or_default();
        if entry.is_empty() {
            order.push(p.label.as_str());
        }
        entry.push(p);
    }
    let mut out = Vec::new();
    for label in order {
        let ps = &seen[label];
        let overs = ps.iter().filter(|p| p.role == Role::Over).count();
        let unders = ps.iter().filter(|p| p.role == Role::Under).count();
        if overs != 1 || unders != 1 {
            out.push(Diagnostic::LabelRoleMismatch(label.to_string()));
        } else if ps[0].sign != ps[1].sign {
            out.push(Diagnostic::SignMismatch(label.to_string()));
        }
    }
    out
}

/// A validated Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussCode {
    passages: Vec<Passage>,
    labels: Vec<String>,
}

pub fn parse_gauss_code(text: &str) -> Result<GaussCode, CodeError> {
    GaussCode::from_raw(&tokenize(text)?)
}

impl GaussCode {
    pub fn unknot() -> GaussCode {
        GaussCode::default()
    }

    pub fn from_raw(raw: &[RawPassage]) -> Result<GaussCode, CodeError> {
        if let Some(d) = validate(raw).into_iter().next() {
            return Err(d.into());
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut labels = Vec::new();
        let passages = raw
            .iter()
            .map(|p| {
                let crossing = *index.entry(p.label.as_str()).or_insert_with(|| {
                    labels.push(p.label.clone());
                    labels.len() - 1
                });
                Passage { crossing, role: p.role, sign: p.sign }
            })
            .collect();
        Ok(GaussCode { passages, labels })
    }

    pub fn to_raw(&self) -> Vec<RawPassage> {
        self.passages.iter().map(|p| RawPassage::new(self.labels[p.crossing].clone(), p.role, p.sign)).collect()
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    /// Original labels, indexed by dense crossing number.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, crossing: usize) -> &str {
        &self.labels[crossing]
    }

    pub fn crossing_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn len(&self) -> usize {
        self.passages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passages.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.labels.len()
    }

    /// `(over_position, under_position)` for every crossing.
    pub fn crossing_positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.labels.len()];
        for (i, p) in self.passages.iter().enumerate() {
            match p.role {
                Role::Over => pos[p.crossing].0 = i,
                Role::Under => pos[p.crossing].1 = i,
            }
        }
        pos
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.passages.iter().find(|p| p.crossing == crossing).map(|p| p.sign).expect("crossing index in range")
    }

    /// Swaps over/under and negates every sign.
    pub fn mirror(&self) -> GaussCode {
        let raw: Vec<_> =
            self.to_raw().into_iter().map(|p| RawPassage { role: p.role.flip(), sign: p.sign.negate(), ..p }).collect();
        GaussCode::from_raw(&raw).expect("mirror preserves validity")
    }

    /// Moves the basepoint forward by `k` passages.
    pub fn rotate(&self, k: usize) -> GaussCode {
        if self.is_empty() {
            return self.clone();
        }
        let mut raw = self.to_raw();
        let len = raw.len();
        raw.rotate_left(k % len);
        GaussCode::from_raw(&raw).expect("rotation preserves validity")
    }

    /// Reverses the orientation of the knot. Crossing signs are unchanged.
    pub fn reverse(&self) -> GaussCode {
        let mut raw = self.to_raw();
        raw.reverse();
        GaussCode::from_raw(&raw).expect("reversal preserves validity")
    }

    /// Renames labels to `1..=c` in order of first appearance.
    pub fn normalized_labels(&self) -> GaussCode {
        let raw: Vec<_> =
            self.passages.iter().map(|p| RawPassage::new((p.crossing + 1).to_string(), p.role, p.sign)).collect();
        GaussCode::from_raw(&raw).expect("renaming preserves validity")
    }

    /// Smallest positive integer label not yet in use.
    pub(crate) fn fresh_label(&self, taken: &[String]) -> String {
        (1..)
            .map(|k: usize| k.to_string())
            .find(|l| !self.labels.contains(l) && !taken.contains(l))
            .expect("unbounded search")
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.passages.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let raw = RawPassage::new(self.labels[p.crossing].as_str(), p.role, p.sign);
            write!(f, "{raw}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GaussCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}
