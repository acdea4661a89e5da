//! Per-crossing coordinates `δ` and `ε`.
//!
//! `δ = 1` when the first passage through the crossing (counted from the
//! basepoint) is the over-passage, `0` otherwise. `ε` is the crossing sign.

use thiserror::Error;

use crate::knot_codes::{GaussCode, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordinateError {
    #[error("no crossing labelled {0:?}")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCoordinates {
    pub label: String,
    pub delta: u8,
    pub epsilon: Sign,
}

/// `δ` for every crossing, indexed by dense crossing number.
pub fn deltas(code: &GaussCode) -> Vec<u8> {
    let mut out = vec![u8::MAX; code.crossing_count()];
    for p in code.passages() {
        if out[p.crossing] == u8::MAX {
            out[p.crossing] = u8::from(p.role == Role::Over);
        }
    }
    out
}

pub fn delta(code: &GaussCode, label: &str) -> Result<u8, CoordinateError> {
    let k = code.crossing_of(label).ok_or_else(|| CoordinateError::UnknownLabel(label.to_string()))?;
    Ok(deltas(code)[k])
}

pub fn epsilon(code: &GaussCode, label: &str) -> Result<Sign, CoordinateError> {
    let k = code.crossing_of(label).ok_or_else(|| CoordinateError::UnknownLabel(label.to_string()))?;
    Ok(code.sign(k))
}

/// The `(label, δ, ε)` table in order of first appearance.
pub fn coordinates(code: &GaussCode) -> Vec<CrossingCoordinates> {
    deltas(code)
        .into_iter()
        .enumerate()
        .map(|(k, delta)| CrossingCoordinates { label: code.label(k).to_string(), delta, epsilon: code.sign(k) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_codes::parse_gauss_code;

    #[test]
    fn trefoil_coordinates() {
        let code = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let d: Vec<_> = ["1", "2", "3"].iter().map(|l| delta(&code, l).unwrap()).collect();
        assert_eq!(d, [1, 0, 1]);
        for l in ["1", "2", "3"] {
            assert_eq!(epsilon(&code, l).unwrap(), Sign::Positive);
        }
        let m = code.mirror();
        assert_eq!(deltas(&m), [0, 1, 0]);
        assert!(coordinates(&m).iter().all(|c| c.epsilon == Sign::Negative));
    }

    #[test]
    fn kinks() {
        assert_eq!(delta(&parse_gauss_code("O1+ U1+").unwrap(), "1"), Ok(1));
        assert_eq!(epsilon(&parse_gauss_code("O1- U1-").unwrap(), "1"), Ok(Sign::Negative));
        assert_eq!(delta(&parse_gauss_code("O1- U1-").unwrap(), "7"), Err(CoordinateError::UnknownLabel("7".into())));
        assert!(coordinates(&GaussCode::unknot()).is_empty());
    }

    #[test]
    fn rotating_past_one_passage_flips_delta() {
        let code = parse_gauss_code("U1+ O2- U3- O1+ U4+ O3- U2- O4+").unwrap();
        for label in code.labels() {
            let k = code.crossing_of(label).unwrap();
            let first = code.passages().iter().position(|p| p.crossing == k).unwrap();
            let rotated = code.rotate(first + 1);
            assert_eq!(delta(&code, label).unwrap() + delta(&rotated, label).unwrap(), 1);
            assert_eq!(epsilon(&code, label), epsilon(&rotated, label));
        }
    }
}
