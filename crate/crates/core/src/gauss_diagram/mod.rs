//! Arrow (Gauss) diagrams, chord diagrams, arrow patterns and the signed
//! subdiagram count `<A, G>`.
//!
//! Endpoints are numbered `0..2n` in traversal order starting at the
//! basepoint. An arrow runs from the over-passage (tail) to the
//! under-passage (head) and carries the crossing sign.

mod matcher;
mod pattern;

pub use matcher::{count_matches, evaluate_expression, BracketSemantics, BRACKET_SEMANTICS};
pub use pattern::{parse_pattern, parse_pattern_file, ArrowPattern, End, PatternError, PatternExpression, PatternTerm};

use std::fmt;

use thiserror::Error;

use crate::knot_codes::{GaussCode, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("endpoints do not form a perfect matching of 0..{0}")]
    NotAMatching(usize),
    #[error("arrow {0} has its tail and head at the same position")]
    DegenerateArrow(usize),
    #[error("chord {0} compared with itself")]
    SameChord(usize),
    #[error("chord index {0} out of range")]
    NoSuchChord(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
}

/// A basepointed circle with signed, directed chords.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArrowDiagram {
    arrows: Vec<Arrow>,
    /// For every endpoint, the arrow it belongs to.
    owner: Vec<usize>,
}

fn matching_owner(n_endpoints: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Option<Vec<usize>> {
    let mut owner = vec![usize::MAX; n_endpoints];
    for (k, (a, b)) in pairs.enumerate() {
        for p in [a, b] {
            if p >= n_endpoints || owner[p] != usize::MAX {
                return None;
            }
            owner[p] = k;
        }
    }
    owner.iter().all(|&o| o != usize::MAX).then_some(owner)
}

impl ArrowDiagram {
    pub fn new(n_endpoints: usize, arrows: Vec<Arrow>) -> Result<ArrowDiagram, DiagramError> {
        if let Some(k) = arrows.iter().position(|a| a.tail == a.head) {
            return Err(DiagramError::DegenerateArrow(k));
        }
        let owner = matching_owner(n_endpoints, arrows.iter().map(|a| (a.tail, a.head)))
            .ok_or(DiagramError::NotAMatching(n_endpoints))?;
        Ok(ArrowDiagram { arrows, owner })
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_endpoints(&self) -> usize {
        self.owner.len()
    }

    /// Arrow index owning endpoint `pos`.
    pub fn owner(&self, pos: usize) -> usize {
        self.owner[pos]
    }

    /// Forgets directions and signs.
    pub fn chord_diagram(&self) -> ChordDiagram {
        let pairs: Vec<_> = self.arrows.iter().map(|a| (a.tail, a.head)).collect();
        ChordDiagram::from_pairs(self.n_endpoints(), &pairs).expect("arrow diagram is a matching")
    }
}

/// Tail at the over-passage, head at the under-passage, sign of the crossing.
/// Arrow `k` corresponds to crossing `k` of the code.
pub fn arrow_diagram_from_code(code: &GaussCode) -> ArrowDiagram {
    let arrows = code
        .crossing_positions()
        .into_iter()
        .enumerate()
        .map(|(k, (tail, head))| Arrow { tail, head, sign: code.sign(k) })
        .collect();
    ArrowDiagram::new(code.len(), arrows).expect("valid code gives a valid diagram")
}

/// Unsigned, undirected chords on a basepointed circle. Chords are stored
/// as `(a, b)` with `a < b`, sorted by `a`, so equal diagrams compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChordDiagram {
    n_endpoints: usize,
    chords: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn from_pairs(n_endpoints: usize, pairs: &[(usize, usize)]) -> Result<ChordDiagram, DiagramError> {
        if let Some(k) = pairs.iter().position(|(a, b)| a == b) {
            return Err(DiagramError::DegenerateArrow(k));
        }
        matching_owner(n_endpoints, pairs.iter().copied()).ok_or(DiagramError::NotAMatching(n_endpoints))?;
        let mut chords: Vec<_> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        chords.sort_unstable();
        Ok(ChordDiagram { n_endpoints, chords })
    }

    /// From a word in which every symbol occurs exactly twice, e.g. `[1, 2, 1, 2]`.
    pub fn from_word<T: PartialEq>(word: &[T]) -> Result<ChordDiagram, DiagramError> {
        let mut pairs = Vec::new();
        let mut used = vec![false; word.len()];
        for i in 0..word.len() {
            if used[i] {
                continue;
            }
            let j = (i + 1..word.len())
                .find(|&j| !used[j] && word[j] == word[i])
                .ok_or(DiagramError::NotAMatching(word.len()))?;
            if (j + 1..word.len()).any(|k| word[k] == word[i]) {
                return Err(DiagramError::NotAMatching(word.len()));
            }
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
        ChordDiagram::from_pairs(word.len(), &pairs)
    }

    pub fn n_endpoints(&self) -> usize {
        self.n_endpoints
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    /// True iff exactly one endpoint of chord `b` lies strictly between the
    /// endpoints of chord `a`.
    pub fn interleaved(&self, a: usize, b: usize) -> Result<bool, DiagramError> {
        if a == b {
            return Err(DiagramError::SameChord(a));
        }
        let (ca, cb) = (
            *self.chords.get(a).ok_or(DiagramError::NoSuchChord(a))?,
            *self.chords.get(b).ok_or(DiagramError::NoSuchChord(b))?,
        );
        Ok(chords_cross(ca, cb))
    }

    /// Interlacement graph as adjacency lists.
    pub fn interlacement(&self) -> Vec<Vec<usize>> {
        let n = self.chords.len();
        (0..n).map(|a| (0..n).filter(|&b| b != a && chords_cross(self.chords[a], self.chords[b])).collect()).collect()
    }

    /// Chords crossing no other chord.
    pub fn isolated_chords(&self) -> Vec<usize> {
        self.interlacement().iter().enumerate().filter(|(_, nb)| nb.is_empty()).map(|(k, _)| k).collect()
    }

    /// The diagram formed by a subset of the chords, endpoints renumbered.
    pub fn restrict(&self, chords: &[usize]) -> ChordDiagram {
        let mut ends: Vec<usize> = chords.iter().flat_map(|&k| [self.chords[k].0, self.chords[k].1]).collect();
        ends.sort_unstable();
        let rank = |p: usize| ends.binary_search(&p).expect("endpoint of a chosen chord");
        let pairs: Vec<_> = chords.iter().map(|&k| (rank(self.chords[k].0), rank(self.chords[k].1))).collect();
        ChordDiagram::from_pairs(ends.len(), &pairs).expect("restriction is a matching")
    }

    /// Moves the basepoint forward by `k` endpoints.
    pub fn rotate(&self, k: usize) -> ChordDiagram {
        let n = self.n_endpoints;
        if n == 0 {
            return self.clone();
        }
        let shift = |p: usize| (p + n - k % n) % n;
        let pairs: Vec<_> = self.chords.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
        ChordDiagram::from_pairs(n, &pairs).expect("rotation is a matching")
    }

    /// Smallest representative over all basepoint positions; two diagrams
    /// are equal on the unpointed circle iff their normal forms agree.
    pub fn rotation_normal_form(&self) -> ChordDiagram {
        (0..self.n_endpoints.max(1)).map(|k| self.rotate(k)).min().expect("at least one rotation")
    }

    /// For each endpoint, the chord it belongs to.
    pub fn word(&self) -> Vec<usize> {
        let mut w = vec![0; self.n_endpoints];
        for (k, &(a, b)) in self.chords.iter().enumerate() {
            w[a] = k;
            w[b] = k;
        }
        w
    }
}

pub(crate) fn chords_cross((a0, a1): (usize, usize), (b0, b1): (usize, usize)) -> bool {
    let inside = |p: usize| a0 < p && p < a1;
    inside(b0) != inside(b1)
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        for (i, k) in w.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", k + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_codes::parse_gauss_code;

    #[test]
    fn trefoil_diagram() {
        let g = arrow_diagram_from_code(&parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap());
        assert_eq!(g.n_endpoints(), 6);
        assert_eq!(g.arrows().len(), 3);
        assert!(g.arrows().iter().all(|a| a.sign == Sign::Positive));
        assert_eq!(g.arrows()[0], Arrow { tail: 0, head: 3, sign: Sign::Positive });
        assert_eq!(g.arrows()[1], Arrow { tail: 4, head: 1, sign: Sign::Positive });
        let d = g.chord_diagram();
        assert_eq!(d.len(), 3);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            assert!(d.interleaved(a, b).unwrap());
        }
    }

    #[test]
    fn empty_and_kink() {
        let g = arrow_diagram_from_code(&GaussCode::unknot());
        assert_eq!(g.n_endpoints(), 0);
        assert!(g.chord_diagram().is_empty());
        let g = arrow_diagram_from_code(&parse_gauss_code("O1+ U1+").unwrap());
        assert_eq!(g.arrows(), [Arrow { tail: 0, head: 1, sign: Sign::Positive }]);
        assert_eq!(g.chord_diagram().isolated_chords(), vec![0]);
    }

    #[test]
    fn interleaving() {
        let nested = ChordDiagram::from_word(&[1, 2, 2, 1]).unwrap();
        let disjoint = ChordDiagram::from_word(&[1, 1, 2, 2]).unwrap();
        let crossed = ChordDiagram::from_word(&[1, 2, 1, 2]).unwrap();
        assert!(!nested.interleaved(0, 1).unwrap());
        assert!(!disjoint.interleaved(0, 1).unwrap());
        assert!(crossed.interleaved(1, 0).unwrap());
        assert_eq!(crossed.interleaved(1, 1), Err(DiagramError::SameChord(1)));
        assert_eq!(crossed.interleaved(0, 5), Err(DiagramError::NoSuchChord(5)));
    }

    #[test]
    fn rejects_non_matchings() {
        assert!(ChordDiagram::from_pairs(4, &[(0, 1), (1, 2)]).is_err());
        assert!(ChordDiagram::from_pairs(4, &[(0, 1)]).is_err());
        assert!(ChordDiagram::from_word(&[1, 1, 1, 1]).is_err());
        assert!(ChordDiagram::from_word(&[1, 2, 1]).is_err());
        let bad = vec![Arrow { tail: 0, head: 0, sign: Sign::Positive }];
        assert_eq!(ArrowDiagram::new(2, bad), Err(DiagramError::DegenerateArrow(0)));
    }

    #[test]
    fn restriction_and_rotation() {
        let d = ChordDiagram::from_word(&[1, 2, 3, 1, 2, 3]).unwrap();
        assert_eq!(d.restrict(&[0, 2]), ChordDiagram::from_word(&[1, 2, 1, 2]).unwrap());
        let disjoint = ChordDiagram::from_word(&[1, 1, 2, 2]).unwrap();
        let nested = ChordDiagram::from_word(&[1, 2, 2, 1]).unwrap();
        assert_eq!(disjoint.rotate(1), nested);
        assert_eq!(disjoint.rotation_normal_form(), nested.rotation_normal_form());
        assert_eq!(d.to_string(), "1 2 3 1 2 3");
    }
}
