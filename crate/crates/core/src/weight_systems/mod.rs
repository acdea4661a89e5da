//! Chord diagrams as the domain of weight systems: enumeration, the degree
//! 2 and 3 weights `w2`/`w3`, the 1-term and 4-term relations, resolution of
//! singular codes and the weight system induced by a knot invariant.

mod realize;

pub use realize::realize_chord_diagram;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gauss_diagram::ChordDiagram;
use crate::knot_codes::{GaussCode, RawPassage, Role, Sign, SingularCode, SingularPassage, Visit};
use crate::rational::Q;

/// Largest degree handled by [`enumerate_chord_diagrams`].
pub const MAX_ENUMERATION_DEGREE: usize = 6;
/// Largest degree handled by [`four_term_quadruples`].
pub const MAX_FOUR_TERM_DEGREE: usize = 5;
/// Largest degree handled by [`weight_from_invariant`].
pub const MAX_DERIVED_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("degree {degree} exceeds the supported maximum {max}")]
    TooLarge { degree: usize, max: usize },
    #[error("expected a diagram with {expected} chords, got {found}")]
    WrongDegree { expected: usize, found: usize },
}

fn check_degree(d: &ChordDiagram, expected: usize) -> Result<(), WeightError> {
    if d.len() == expected {
        Ok(())
    } else {
        Err(WeightError::WrongDegree { expected, found: d.len() })
    }
}

/// All chord diagrams with `n` chords on a basepointed circle, as perfect
/// matchings of `0..2n`. There are `(2n-1)!!` of them.
pub fn enumerate_chord_diagrams(n: usize) -> Result<Vec<ChordDiagram>, WeightError> {
    if n > MAX_ENUMERATION_DEGREE {
        return Err(WeightError::TooLarge { degree: n, max: MAX_ENUMERATION_DEGREE });
    }
    let mut out = Vec::new();
    let mut pairs = Vec::with_capacity(n);
    let mut free = vec![true; 2 * n];
    matchings(&mut free, &mut pairs, &mut out);
    Ok(out)
}

fn matchings(free: &mut [bool], pairs: &mut Vec<(usize, usize)>, out: &mut Vec<ChordDiagram>) {
    let Some(a) = free.iter().position(|&f| f) else {
        out.push(ChordDiagram::from_pairs(free.len(), pairs).expect("complete matching"));
        return;
    };
    free[a] = false;
    for b in a + 1..free.len() {
        if free[b] {
            free[b] = false;
            pairs.push((a, b));
            matchings(free, pairs, out);
            pairs.pop();
            free[b] = true;
        }
    }
    free[a] = true;
}

/// `1` on the crossed two-chord diagram, `0` on the other two.
pub fn w2(d: &ChordDiagram) -> Result<Q, WeightError> {
    check_degree(d, 2)?;
    Ok(Q::from_integer(i64::from(d.interleaved(0, 1).expect("two chords"))))
}

/// By interlacement graph: triangle `2`, path `1`, anything else `0`.
pub fn w3(d: &ChordDiagram) -> Result<Q, WeightError> {
    check_degree(d, 3)?;
    let edges: usize = d.interlacement().iter().map(Vec::len).sum::<usize>() / 2;
    Ok(Q::from_integer(match edges {
        3 => 2,
        2 => 1,
        _ => 0,
    }))
}

pub trait WeightSystem {
    fn degree(&self) -> usize;
    fn evaluate(&self, d: &ChordDiagram) -> Result<Q, WeightError>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct W2;

impl WeightSystem for W2 {
    fn degree(&self) -> usize {
        2
    }

    fn evaluate(&self, d: &ChordDiagram) -> Result<Q, WeightError> {
        w2(d)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct W3;

impl WeightSystem for W3 {
    fn degree(&self) -> usize {
        3
    }

    fn evaluate(&self, d: &ChordDiagram) -> Result<Q, WeightError> {
        w3(d)
    }
}

/// A weight system given by its value on every diagram of its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedWeight {
    degree: usize,
    values: BTreeMap<ChordDiagram, Q>,
}

impl TabulatedWeight {
    pub fn from_fn(degree: usize, mut f: impl FnMut(&ChordDiagram) -> Q) -> Result<Self, WeightError> {
        let values = enumerate_chord_diagrams(degree)?.into_iter().map(|d| {
            let v = f(&d);
            (d, v)
        });
        Ok(TabulatedWeight { degree, values: values.collect() })
    }

    /// Tabulates another weight system.
    pub fn of(w: &dyn WeightSystem) -> Result<Self, WeightError> {
        let degree = w.degree();
        let values = enumerate_chord_diagrams(degree)?
            .into_iter()
            .map(|d| w.evaluate(&d).map(|v| (d, v)))
            .collect::<Result<_, _>>()?;
        Ok(TabulatedWeight { degree, values })
    }

    /// `(diagram, value)` pairs in diagram order.
    pub fn entries(&self) -> impl Iterator<Item = (&ChordDiagram, &Q)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| *v == Q::from_integer(0))
    }
}

impl WeightSystem for TabulatedWeight {
    fn degree(&self) -> usize {
        self.degree
    }

    fn evaluate(&self, d: &ChordDiagram) -> Result<Q, WeightError> {
        check_degree(d, self.degree)?;
        Ok(self.values[d])
    }
}

/// Four diagrams that agree except for where one endpoint of a chord `b`
/// sits relative to the two endpoints of a chord `a`: just before and just
/// after the first endpoint of `a`, then just before and just after the
/// second. The relation is `d[0] - d[1] + d[2] - d[3] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FourTermQuadruple {
    pub diagrams: [ChordDiagram; 4],
}

impl FourTermQuadruple {
    pub const SIGNS: [i64; 4] = [1, -1, 1, -1];

    pub fn alternating_sum(&self, w: &dyn WeightSystem) -> Result<Q, WeightError> {
        let mut total = Q::from_integer(0);
        for (d, s) in self.diagrams.iter().zip(Self::SIGNS) {
            total += w.evaluate(d)? * Q::from_integer(s);
        }
        Ok(total)
    }
}

/// Every instance of the 4-term relation with `n` chords, without repeats.
/// Degrees below 2 have none.
pub fn four_term_quadruples(n: usize) -> Result<Vec<FourTermQuadruple>, WeightError> {
    if n > MAX_FOUR_TERM_DEGREE {
        return Err(WeightError::TooLarge { degree: n, max: MAX_FOUR_TERM_DEGREE });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // A base word has 2n-1 letters: the n-1 chords other than b (chord
    // labels 0..n-1) and the fixed endpoint of b (label n-1).
    let b = n - 1;
    for fixed in 0..2 * n - 1 {
        for rest in enumerate_chord_diagrams(n - 1)? {
            let mut base: Vec<usize> = rest.word();
            base.insert(fixed, b);
            for a in 0..n - 1 {
                let ends: Vec<usize> = (0..base.len()).filter(|&i| base[i] == a).collect();
                let slots = [ends[0], ends[0] + 1, ends[1], ends[1] + 1];
                let diagrams = slots.map(|s| {
                    let mut word = base.clone();
                    word.insert(s, b);
                    ChordDiagram::from_word(&word).expect("every chord appears twice")
                });
                let q = FourTermQuadruple { diagrams };
                if seen.insert(q.clone()) {
                    out.push(q);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OneTerm { diagram: ChordDiagram, value: Q },
    FourTerm { quadruple: FourTermQuadruple, sum: Q },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub degree: usize,
    pub diagrams_checked: usize,
    pub quadruples_checked: usize,
    pub one_term_ok: bool,
    pub four_term_ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks the 1-term relation on every diagram with an isolated chord and
/// the 4-term relation on every quadruple of the weight system's degree.
pub fn check_relations(w: &dyn WeightSystem) -> Result<RelationReport, WeightError> {
    let n = w.degree();
    let diagrams = enumerate_chord_diagrams(n)?;
    let quadruples = four_term_quadruples(n)?;
    let zero = Q::from_integer(0);
    let mut violations = Vec::new();
    for d in &diagrams {
        if !d.isolated_chords().is_empty() {
            let value = w.evaluate(d)?;
            if value != zero {
                violations.push(Violation::OneTerm { diagram: d.clone(), value });
            }
        }
    }
    let one_term_ok = violations.is_empty();
    for q in &quadruples {
        let sum = q.alternating_sum(w)?;
        if sum != zero {
            violations.push(Violation::FourTerm { quadruple: q.clone(), sum });
        }
    }
    let four_term_ok = !violations.iter().any(|v| matches!(v, Violation::FourTerm { .. }));
    Ok(RelationReport {
        degree: n,
        diagrams_checked: diagrams.len(),
        quadruples_checked: quadruples.len(),
        one_term_ok,
        four_term_ok,
        violations,
    })
}

/// Replaces every double point by an ordinary crossing in both ways.
///
/// Terms are ordered by bitmask: bit `i` set means the `i`-th double point
/// (by first visit) takes its negative resolution, where the first visit
/// passes under with sign `-`. The positive resolution passes over first
/// with sign `+`. Each term carries `(-1)^(number of negative resolutions)`.
pub fn resolve_singular(s: &SingularCode) -> Vec<(Sign, GaussCode)> {
    let doubles = s.double_points();
    let d = doubles.len();
    (0..1u64 << d)
        .map(|mask| {
            let negative = |label: &str| {
                let i = doubles.iter().position(|&l| l == label).expect("known double point");
                mask >> i & 1 == 1
            };
            let raw: Vec<RawPassage> = s
                .passages()
                .iter()
                .map(|p| match p {
                    SingularPassage::Crossing(c) => c.clone(),
                    SingularPassage::DoublePoint { label, visit } => {
                        let (first_role, sign) =
                            if negative(label) { (Role::Under, Sign::Negative) } else { (Role::Over, Sign::Positive) };
                        let role = if *visit == Visit::First { first_role } else { first_role.flip() };
                        RawPassage::new(label.clone(), role, sign)
                    }
                })
                .collect();
            let sign = if mask.count_ones() % 2 == 0 { Sign::Positive } else { Sign::Negative };
            (sign, GaussCode::from_raw(&raw).expect("resolution of a valid singular code"))
        })
        .collect()
}

/// `W(D) = Σ sign · v(code)` over the resolutions of a realization of `D`.
pub fn weight_from_invariant(v: &dyn Fn(&GaussCode) -> Q, n: usize) -> Result<TabulatedWeight, WeightError> {
    if n > MAX_DERIVED_DEGREE {
        return Err(WeightError::TooLarge { degree: n, max: MAX_DERIVED_DEGREE });
    }
    TabulatedWeight::from_fn(n, |d| {
        resolve_singular(&realize_chord_diagram(d))
            .iter()
            .map(|(sign, code)| Q::from_integer(sign.value()) * v(code))
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_codes::parse_singular_code;

    fn cd(word: &[u8]) -> ChordDiagram {
        ChordDiagram::from_word(word).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_chord_diagrams(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 15, 105, 945, 10395]);
        assert_eq!(enumerate_chord_diagrams(7), Err(WeightError::TooLarge { degree: 7, max: 6 }));
        let three = enumerate_chord_diagrams(3).unwrap();
        assert_eq!(three.iter().collect::<BTreeSet<_>>().len(), 15);
    }

    #[test]
    fn small_weights() {
        assert_eq!(w2(&cd(&[1, 2, 1, 2])), Ok(Q::from_integer(1)));
        assert_eq!(w2(&cd(&[1, 2, 2, 1])), Ok(Q::from_integer(0)));
        assert_eq!(w2(&cd(&[1, 1, 2, 2])), Ok(Q::from_integer(0)));
        assert_eq!(w3(&cd(&[1, 2, 3, 1, 2, 3])), Ok(Q::from_integer(2)));
        assert_eq!(w3(&cd(&[1, 2, 1, 3, 2, 3])), Ok(Q::from_integer(1)));
        assert_eq!(w3(&cd(&[1, 2, 1, 2, 3, 3])), Ok(Q::from_integer(0)));
        assert_eq!(w2(&cd(&[1, 1])), Err(WeightError::WrongDegree { expected: 2, found: 1 }));
        assert!(w3(&cd(&[1, 2, 1, 2])).is_err());
    }

    #[test]
    fn quadruple_shapes() {
        let two = four_term_quadruples(2).unwrap();
        assert!(!two.is_empty());
        let three = four_term_quadruples(3).unwrap();
        let all: BTreeSet<_> = enumerate_chord_diagrams(3).unwrap().into_iter().collect();
        for q in &three {
            assert!(q.diagrams.iter().all(|d| d.len() == 3 && all.contains(d)));
        }
        assert!(four_term_quadruples(1).unwrap().is_empty());
        assert!(four_term_quadruples(6).is_err());
    }

    #[test]
    fn relations() {
        for w in [&W2 as &dyn WeightSystem, &W3] {
            let r = check_relations(w).unwrap();
            assert!(r.one_term_ok && r.four_term_ok, "{:?}", r.violations);
        }
        let one = TabulatedWeight::from_fn(2, |_| Q::from_integer(1)).unwrap();
        let r = check_relations(&one).unwrap();
        assert!(!r.one_term_ok);
        assert!(r.four_term_ok);
        // Swapping the two values of w3 breaks the 4-term relation.
        let swapped = TabulatedWeight::from_fn(3, |d| {
            let v = w3(d).unwrap();
            if v == Q::from_integer(0) {
                v
            } else {
                Q::from_integer(3) - v
            }
        })
        .unwrap();
        assert!(!check_relations(&swapped).unwrap().four_term_ok);
    }

    #[test]
    fn resolution_terms() {
        let plain = parse_singular_code("O1+ U1+").unwrap();
        let terms = resolve_singular(&plain);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, Sign::Positive);
        assert_eq!(terms[0].1.to_string(), "O1+ U1+");

        let one = parse_singular_code("Xpa O1+ Xpb U1+").unwrap();
        let terms = resolve_singular(&one);
        let shown: Vec<_> = terms.iter().map(|(s, c)| (s.value(), c.to_string())).collect();
        assert_eq!(shown, [(1, "Op+ O1+ Up+ U1+".to_string()), (-1, "Up- O1+ Op- U1+".to_string())]);

        let two = parse_singular_code("Xaa Xba Xab Xbb").unwrap();
        let terms = resolve_singular(&two);
        assert_eq!(terms.len(), 4);
        let product: i64 = terms.iter().map(|(s, _)| s.value()).product();
        assert_eq!(product, 1);
        assert_eq!(terms[3].0, Sign::Positive);
        assert_eq!(terms[3].1.to_string(), "Ua- Ub- Oa- Ob-");
    }
}
