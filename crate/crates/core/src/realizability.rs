//! Planarity of signed Gauss codes.
//!
//! A signed code determines, at every crossing, the cyclic order in which
//! the four half-edges leave the crossing point. Tracing the faces of that
//! ribbon graph gives the genus of the smallest closed surface carrying the
//! diagram; the code is a classical (planar) diagram iff the genus is zero.
//! The unsigned interlacement parity conditions are offered separately as a
//! quick necessary check.
//!
//! Nothing here is enforced when parsing: invariant formulas read only the
//! combinatorics of a code.

use crate::knot_codes::{GaussCode, Role};

/// Genus of the ribbon surface of the diagram. The empty code has genus 0.
pub fn genus(code: &GaussCode) -> usize {
    let n = code.len();
    if n == 0 {
        return 0;
    }
    let c = code.crossing_count();
    // Darts: 2i leaves passage i forwards, 2i+1 arrives at passage i.
    let out = |i: usize| 2 * i;
    let inn = |i: usize| 2 * i + 1;
    let mut alpha = vec![0; 2 * n];
    for i in 0..n {
        let j = (i + 1) % n;
        alpha[out(i)] = inn(j);
        alpha[inn(j)] = out(i);
    }
    let mut first_seen = vec![usize::MAX; c];
    let mut pairs = vec![(0, 0); c];
    for (i, p) in code.passages().iter().enumerate() {
        if first_seen[p.crossing] == usize::MAX {
            first_seen[p.crossing] = i;
        } else {
            pairs[p.crossing] = (first_seen[p.crossing], i);
        }
    }
    let mut sigma = vec![0; 2 * n];
    for &(p, q) in &pairs {
        let first = code.passages()[p];
        // +1 when the second strand crosses the first from its right to its left.
        let side = first.sign.value() * if first.role == Role::Over { 1 } else { -1 };
        let ring = if side > 0 { [out(p), out(q), inn(p), inn(q)] } else { [out(p), inn(q), inn(p), out(q)] };
        for k in 0..4 {
            sigma[ring[k]] = ring[(k + 1) % 4];
        }
    }
    let mut seen = vec![false; 2 * n];
    let mut faces = 0;
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = sigma[alpha[d]];
        }
    }
    // Euler: V - E + F = 2 - 2g with V = c, E = 2c.
    (2 + c - faces) / 2
}

pub fn is_planar(code: &GaussCode) -> bool {
    genus(code) == 0
}

/// Interlacement parity: every crossing is interlaced with an even number of
/// crossings, and every non-interlaced pair shares an even number of
/// interlaced neighbours. Necessary for planarity, not sufficient.
pub fn interlacement_parity_ok(code: &GaussCode) -> bool {
    let pos = first_second_positions(code);
    let c = pos.len();
    let inter = |a: usize, b: usize| {
        let (a0, a1) = pos[a];
        let (b0, b1) = pos[b];
        (a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1)
    };
    for a in 0..c {
        if (0..c).filter(|&b| b != a && inter(a, b)).count() % 2 != 0 {
            return false;
        }
    }
    for a in 0..c {
        for b in a + 1..c {
            if !inter(a, b) {
                let common = (0..c).filter(|&x| x != a && x != b && inter(a, x) && inter(b, x)).count();
                if common % 2 != 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn first_second_positions(code: &GaussCode) -> Vec<(usize, usize)> {
    code.crossing_positions().into_iter().map(|(o, u)| (o.min(u), o.max(u))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_codes::parse_gauss_code;

    fn code(s: &str) -> GaussCode {
        parse_gauss_code(s).unwrap()
    }

    #[test]
    fn trefoils_are_planar() {
        assert!(is_planar(&code("O1+ U2+ O3+ U1+ O2+ U3+")));
        assert!(is_planar(&code("O1- U2- O3- U1- O2- U3-")));
        assert!(is_planar(&GaussCode::unknot()));
        assert!(is_planar(&code("O1+ U1+")));
        assert!(is_planar(&code("U1- O1-")));
    }

    #[test]
    fn wrong_sign_is_not_planar() {
        assert!(!is_planar(&code("O1+ U2+ O3- U1+ O2+ U3-")));
        // Virtual trefoil: the two-crossing word 1 2 1 2.
        assert!(!is_planar(&code("O1+ U2+ U1+ O2+")));
        assert!(!is_planar(&code("O1+ U2- U1+ O2-")));
        assert!(!interlacement_parity_ok(&code("O1+ U2+ U1+ O2+")));
    }

    #[test]
    fn figure_eight_is_planar() {
        let c = code("U1+ O2- U3- O1+ U4+ O3- U2- O4+");
        assert!(is_planar(&c));
        assert!(interlacement_parity_ok(&c));
    }
}
