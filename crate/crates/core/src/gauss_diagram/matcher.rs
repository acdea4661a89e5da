//! Signed subdiagram counting.
//!
//! `count_matches(A, G)` sums, over all ways of embedding the arrows of `A`
//! into distinct arrows of `G` with tails on tails, heads on heads and all
//! endpoint positions in increasing order from the basepoint, the product
//! of the signs of the arrows used.

use super::pattern::{ArrowPattern, End, PatternExpression};
use super::ArrowDiagram;
use crate::rational::Q;

/// How a bracketed term `[A]` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketSemantics {
    /// `[A]` is the sum over all distinct basepoint placements of `A`.
    AllRotations,
    /// `[A]` is `A`.
    Identity,
}

/// Bracket reading used by [`evaluate_expression`]. Only `AllRotations`
/// reproduces rotation-invariant values for the bundled formulas.
pub const BRACKET_SEMANTICS: BracketSemantics = BracketSemantics::AllRotations;

struct Slot {
    arrow: usize,
    end: End,
    /// Pattern position of the other endpoint.
    partner: usize,
}

pub fn count_matches(pattern: &ArrowPattern, g: &ArrowDiagram) -> i64 {
    let k = pattern.arrow_count();
    if k > g.arrows().len() {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    let arrows = pattern.arrows();
    let slots: Vec<Slot> = pattern
        .ends()
        .iter()
        .map(|&(arrow, end)| {
            let (t, h) = arrows[arrow];
            Slot { arrow, end, partner: if end == End::Tail { h } else { t } }
        })
        .collect();

    // Endpoint table of g: (end, partner position, sign).
    let n = g.n_endpoints();
    let mut ends = vec![(End::Tail, 0usize, 0i64); n];
    for a in g.arrows() {
        ends[a.tail] = (End::Tail, a.head, a.sign.value());
        ends[a.head] = (End::Head, a.tail, a.sign.value());
    }

    let mut search = Search { slots: &slots, ends: &ends, target: vec![usize::MAX; k], total: 0 };
    search.extend(0, None, 1);
    search.total
}

struct Search<'a> {
    slots: &'a [Slot],
    ends: &'a [(End, usize, i64)],
    /// Position in g already fixed for the second endpoint of each pattern arrow.
    target: Vec<usize>,
    total: i64,
}

impl Search<'_> {
    fn extend(&mut self, slot: usize, prev: Option<usize>, sign: i64) {
        if slot == self.slots.len() {
            self.total += sign;
            return;
        }
        let start = prev.map_or(0, |p| p + 1);
        let s = &self.slots[slot];
        if s.partner < slot {
            let p = self.target[s.arrow];
            if p >= start {
                self.extend(slot + 1, Some(p), sign);
            }
            return;
        }
        // Every pending second endpoint must still lie ahead of this one.
        let bound = (0..slot)
            .filter(|&i| self.slots[i].partner > slot)
            .map(|i| self.target[self.slots[i].arrow])
            .min()
            .unwrap_or(self.ends.len());
        let remaining = self.slots.len() - slot - 1;
        let last = bound.min(self.ends.len() - remaining);
        for p in start..last {
            let (end, partner, arrow_sign) = self.ends[p];
            if end != s.end || partner <= p {
                continue;
            }
            self.target[s.arrow] = partner;
            self.extend(slot + 1, Some(p), sign * arrow_sign);
        }
        self.target[s.arrow] = usize::MAX;
    }
}

pub fn evaluate_expression(expr: &PatternExpression, g: &ArrowDiagram) -> Q {
    evaluate_with(expr, g, BRACKET_SEMANTICS)
}

pub(crate) fn evaluate_with(expr: &PatternExpression, g: &ArrowDiagram, semantics: BracketSemantics) -> Q {
    expr.terms
        .iter()
        .map(|t| {
            let count: i64 = if t.bracketed && semantics == BracketSemantics::AllRotations {
                t.pattern.distinct_rotations().iter().map(|p| count_matches(p, g)).sum()
            } else {
                count_matches(&t.pattern, g)
            };
            t.coefficient * Q::from_integer(count)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss_diagram::{arrow_diagram_from_code, parse_pattern, parse_pattern_file};
    use crate::knot_codes::{parse_gauss_code, GaussCode};

    fn g(s: &str) -> ArrowDiagram {
        arrow_diagram_from_code(&parse_gauss_code(s).unwrap())
    }

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";
    const FIGURE_EIGHT: &str = "U1+ O2- U3- O1+ U4+ O3- U2- O4+";

    #[test]
    fn v2_pattern_counts() {
        let v2 = parse_pattern("1h 2t 1t 2h").unwrap();
        assert_eq!(count_matches(&v2, &g(TREFOIL)), 1);
        // Figure-eight arrows (tail, head, sign): (3,0,+) (1,6,-) (5,2,-) (7,4,+).
        // Of the six 2-subsets only {(3,0), (1,6)} has shape h t t h: 0<1<3<6.
        assert_eq!(count_matches(&v2, &g(FIGURE_EIGHT)), -1);
        assert_eq!(count_matches(&v2, &g("")), 0);
    }

    #[test]
    fn empty_pattern_matches_once() {
        assert_eq!(count_matches(&parse_pattern("").unwrap(), &g(TREFOIL)), 1);
        assert_eq!(count_matches(&parse_pattern("").unwrap(), &arrow_diagram_from_code(&GaussCode::unknot())), 1);
    }

    #[test]
    fn single_arrow_counts_writhe() {
        let one = parse_pattern("1t 1h").unwrap();
        let back = parse_pattern("1h 1t").unwrap();
        assert_eq!(count_matches(&one, &g(TREFOIL)) + count_matches(&back, &g(TREFOIL)), 3);
        assert_eq!(count_matches(&one, &g(FIGURE_EIGHT)) + count_matches(&back, &g(FIGURE_EIGHT)), 0);
    }

    #[test]
    fn expressions() {
        let v3 = parse_pattern_file("1 1 1t 2h 3t 1h 2t 3h\n1/2 1 1h 2t 3h 1t 3t 2h\n").unwrap();
        assert_eq!(evaluate_expression(&v3, &g(TREFOIL)), Q::from_integer(1));
        assert_eq!(evaluate_expression(&v3, &g("")), Q::from_integer(0));
        assert_eq!(evaluate_expression(&PatternExpression::zero(), &g(TREFOIL)), Q::from_integer(0));
    }
}
