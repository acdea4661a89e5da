//! Codes with double points, written `X<label>a` / `X<label>b` for the first
//! and second visit.

use std::collections::HashMap;
use std::fmt;

use super::{is_label, tokenize, validate, CodeError, RawPassage};
use crate::gauss_diagram::ChordDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Visit {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SingularPassage {
    Crossing(RawPassage),
    DoublePoint { label: String, visit: Visit },
}

impl fmt::Display for SingularPassage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularPassage::Crossing(p) => write!(f, "{p}"),
            SingularPassage::DoublePoint { label, visit: Visit::First } => write!(f, "X{label}a"),
            SingularPassage::DoublePoint { label, visit: Visit::Second } => write!(f, "X{label}b"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SingularCode {
    passages: Vec<SingularPassage>,
}

impl SingularCode {
    pub fn new(passages: Vec<SingularPassage>) -> Result<SingularCode, CodeError> {
        let crossings: Vec<RawPassage> = passages
            .iter()
            .filter_map(|p| match p {
                SingularPassage::Crossing(c) => Some(c.clone()),
                SingularPassage::DoublePoint { .. } => None,
            })
            .collect();
        if let Some(d) = validate(&crossings).into_iter().next() {
            return Err(d.into());
        }
        let mut visits: HashMap<&str, Vec<Visit>> = HashMap::new();
        let mut order = Vec::new();
        for p in &passages {
            if let SingularPassage::DoublePoint { label, visit } = p {
                let v = visits.entry(label.as_str()).or_default();
                if v.is_empty() {
                    order.push(label.as_str());
                }
                v.push(*visit);
            }
        }
        for label in order {
            if visits[label] != [Visit::First, Visit::Second] {
                return Err(CodeError::DoublePointMismatch(label.to_string()));
            }
            if crossings.iter().any(|c| c.label == label) {
                return Err(CodeError::LabelClash(label.to_string()));
            }
        }
        Ok(SingularCode { passages })
    }

    pub fn passages(&self) -> &[SingularPassage] {
        &self.passages
    }

    pub fn len(&self) -> usize {
        self.passages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passages.is_empty()
    }

    /// Double-point labels in order of first visit.
    pub fn double_points(&self) -> Vec<&str> {
        self.passages
            .iter()
            .filter_map(|p| match p {
                SingularPassage::DoublePoint { label, visit: Visit::First } => Some(label.as_str()),
                _ => None,
            })
            .collect()
    }

    /// The chord diagram traced by the double points alone.
    pub fn chord_diagram(&self) -> ChordDiagram {
        let mut first: HashMap<&str, usize> = HashMap::new();
        let mut pairs = Vec::new();
        let mut k = 0;
        for p in &self.passages {
            if let SingularPassage::DoublePoint { label, .. } = p {
                match first.remove(label.as_str()) {
                    Some(a) => pairs.push((a, k)),
                    None => {
                        first.insert(label.as_str(), k);
                    }
                }
                k += 1;
            }
        }
        ChordDiagram::from_pairs(k, &pairs).expect("double points form a matching")
    }
}

fn parse_singular_token(index: usize, token: &str) -> Result<SingularPassage, CodeError> {
    if let Some(rest) = token.strip_prefix('X') {
        let malformed = || CodeError::MalformedToken { index, token: token.to_string() };
        let (label, visit) = if let Some(l) = rest.strip_suffix('a') {
            (l, Visit::First)
        } else if let Some(l) = rest.strip_suffix('b') {
            (l, Visit::Second)
        } else {
            return Err(malformed());
        };
        if !is_label(label) {
            return Err(malformed());
        }
        return Ok(SingularPassage::DoublePoint { label: label.to_string(), visit });
    }
    match tokenize(token) {
        Ok(mut v) if v.len() == 1 => Ok(SingularPassage::Crossing(v.remove(0))),
        _ => Err(CodeError::MalformedToken { index, token: token.to_string() }),
    }
}

pub fn parse_singular_code(text: &str) -> Result<SingularCode, CodeError> {
    let passages =
        text.split_whitespace().enumerate().map(|(i, t)| parse_singular_token(i, t)).collect::<Result<Vec<_>, _>>()?;
    SingularCode::new(passages)
}

impl std::str::FromStr for SingularCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_singular_code(s)
    }
}

impl fmt::Display for SingularCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.passages.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_double_points() {
        let s = parse_singular_code("Xpa O1+ Xqa Xpb U1+ Xqb").unwrap();
        assert_eq!(s.double_points(), ["p", "q"]);
        assert_eq!(s.chord_diagram(), ChordDiagram::from_pairs(4, &[(0, 2), (1, 3)]).unwrap());
        assert_eq!(s.to_string(), "Xpa O1+ Xqa Xpb U1+ Xqb");
    }

    #[test]
    fn rejects_bad_double_points() {
        assert_eq!(parse_singular_code("Xpa"), Err(CodeError::DoublePointMismatch("p".into())));
        assert_eq!(parse_singular_code("Xpb Xpa"), Err(CodeError::DoublePointMismatch("p".into())));
        assert_eq!(parse_singular_code("Xpa Xpb Xpa"), Err(CodeError::DoublePointMismatch("p".into())));
        assert_eq!(parse_singular_code("X1a O1+ U1+ X1b"), Err(CodeError::LabelClash("1".into())));
        assert_eq!(parse_singular_code("Xpa Xpb O1+"), Err(CodeError::LabelRoleMismatch("1".into())));
        assert!(matches!(parse_singular_code("Xpc"), Err(CodeError::MalformedToken { .. })));
        assert!(matches!(parse_singular_code("Xa"), Err(CodeError::MalformedToken { .. })));
        assert!(parse_singular_code("").unwrap().is_empty());
    }
}
