//! Arrow patterns and rational combinations of them.
//!
//! A pattern is written as a word of `<label><t|h>` tokens read
//! counterclockwise from the basepoint, e.g. `1h 2t 1t 2h`. Pattern files
//! hold one term per line: `<coefficient> <bracket-flag> <word>`, with `#`
//! starting a comment.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::knot_codes::is_label;
use crate::rational::{format_rational, parse_rational, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    fn letter(self) -> char {
        match self {
            End::Tail => 't',
            End::Head => 'h',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("malformed pattern token {token:?} at position {index}")]
    MalformedToken { index: usize, token: String },
    #[error("arrow {0:?} needs exactly one tail and one head")]
    UnbalancedLabel(String),
    #[error("pattern file line {line}: {message}")]
    BadLine { line: usize, message: String },
}

/// Unsigned basepointed arrow diagram. Arrows are numbered by first
/// appearance, which makes the representation canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ArrowPattern {
    ends: Vec<(usize, End)>,
}

impl ArrowPattern {
    /// Builds a pattern from `(label, end)` pairs, renumbering labels.
    fn from_labeled<L: Eq + std::hash::Hash + Clone + fmt::Display>(
        word: &[(L, End)],
    ) -> Result<ArrowPattern, PatternError> {
        let mut index: HashMap<L, usize> = HashMap::new();
        let mut seen: Vec<(u8, u8)> = Vec::new();
        let mut labels = Vec::new();
        let mut ends = Vec::with_capacity(word.len());
        for (label, end) in word {
            let k = *index.entry(label.clone()).or_insert_with(|| {
                seen.push((0, 0));
                labels.push(label.to_string());
                seen.len() - 1
            });
            match end {
                End::Tail => seen[k].0 += 1,
                End::Head => seen[k].1 += 1,
            }
            ends.push((k, *end));
        }
        if let Some(k) = seen.iter().position(|&c| c != (1, 1)) {
            return Err(PatternError::UnbalancedLabel(labels[k].clone()));
        }
        Ok(ArrowPattern { ends })
    }

    pub fn arrow_count(&self) -> usize {
        self.ends.len() / 2
    }

    pub fn n_endpoints(&self) -> usize {
        self.ends.len()
    }

    /// `(arrow, end)` at every position.
    pub fn ends(&self) -> &[(usize, End)] {
        &self.ends
    }

    /// `(tail, head)` positions of every arrow.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.arrow_count()];
        for (pos, &(k, end)) in self.ends.iter().enumerate() {
            match end {
                End::Tail => out[k].0 = pos,
                End::Head => out[k].1 = pos,
            }
        }
        out
    }

    /// The pattern with its basepoint moved forward by `k` endpoints.
    pub fn rotate(&self, k: usize) -> ArrowPattern {
        if self.ends.is_empty() {
            return self.clone();
        }
        let mut word = self.ends.clone();
        let len = word.len();
        word.rotate_left(k % len);
        ArrowPattern::from_labeled(&word).expect("rotation keeps arrows balanced")
    }

    /// All distinct basepoint placements, in a fixed order.
    pub fn distinct_rotations(&self) -> Vec<ArrowPattern> {
        let all: BTreeSet<_> = (0..self.ends.len().max(1)).map(|k| self.rotate(k)).collect();
        all.into_iter().collect()
    }
}

fn parse_pattern_token(index: usize, token: &str) -> Result<(String, End), PatternError> {
    let malformed = || PatternError::MalformedToken { index, token: token.to_string() };
    let end = match token.as_bytes().last() {
        Some(b't') => End::Tail,
        Some(b'h') => End::Head,
        _ => return Err(malformed()),
    };
    let label = &token[..token.len() - 1];
    if !is_label(label) {
        return Err(malformed());
    }
    Ok((label.to_string(), end))
}

pub fn parse_pattern(text: &str) -> Result<ArrowPattern, PatternError> {
    let word =
        text.split_whitespace().enumerate().map(|(i, t)| parse_pattern_token(i, t)).collect::<Result<Vec<_>, _>>()?;
    ArrowPattern::from_labeled(&word)
}

impl std::str::FromStr for ArrowPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

impl fmt::Display for ArrowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, end)) in self.ends.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", k + 1, end.letter())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTerm {
    pub coefficient: Q,
    pub pattern: ArrowPattern,
    /// Stands for the sum over all basepoint placements of the pattern.
    pub bracketed: bool,
}

/// A rational linear combination of (possibly bracketed) patterns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternExpression {
    pub terms: Vec<PatternTerm>,
}

impl PatternExpression {
    pub fn zero() -> Self {
        PatternExpression::default()
    }

    pub fn single(pattern: ArrowPattern) -> Self {
        PatternExpression { terms: vec![PatternTerm { coefficient: Q::from_integer(1), pattern, bracketed: false }] }
    }

    pub fn scaled(&self, factor: Q) -> Self {
        let terms =
            self.terms.iter().map(|t| PatternTerm { coefficient: t.coefficient * factor, ..t.clone() }).collect();
        PatternExpression { terms }
    }

    pub fn concat(&self, other: &PatternExpression) -> Self {
        PatternExpression { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }

    /// Largest arrow count among the terms.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.pattern.arrow_count()).max().unwrap_or(0)
    }
}

pub fn parse_pattern_file(text: &str) -> Result<PatternExpression, PatternError> {
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| PatternError::BadLine { line: i + 1, message };
        let mut fields = line.splitn(3, char::is_whitespace);
        let coefficient = parse_rational(fields.next().unwrap_or("")).map_err(|e| bad(e.to_string()))?;
        let bracketed = match fields.next() {
            Some("0") => false,
            Some("1") => true,
            other => return Err(bad(format!("bracket flag must be 0 or 1, got {other:?}"))),
        };
        let pattern = parse_pattern(fields.next().unwrap_or("")).map_err(|e| bad(e.to_string()))?;
        terms.push(PatternTerm { coefficient, pattern, bracketed });
    }
    Ok(PatternExpression { terms })
}

impl fmt::Display for PatternExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{} {} {}", format_rational(&t.coefficient), u8::from(t.bracketed), t.pattern)?;
        }
        Ok(())
    }
}
