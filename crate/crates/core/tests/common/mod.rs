//! Oracles shared by the integration tests. Nothing here calls the matcher
//! or the invariant formulas under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use vassiliev::gauss_diagram::{Arrow, ArrowDiagram, ArrowPattern, End};
use vassiliev::knot_codes::{load_knot_table, GaussCode, KnotRecord, Sign};
use vassiliev::Q;

pub fn fixtures() -> Vec<KnotRecord> {
    load_knot_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/knots.jsonl")).expect("fixture table")
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `<A, G>` by listing every k-subset of arrows of G, reading off the
/// pattern it spans and comparing with A.
pub fn brute_force_count(pattern: &ArrowPattern, g: &ArrowDiagram) -> i64 {
    let k = pattern.arrow_count();
    let mut total = 0;
    for subset in k_subsets(g.arrows().len(), k) {
        let mut ends: Vec<(usize, usize, End)> = Vec::new();
        for (j, &i) in subset.iter().enumerate() {
            let a = g.arrows()[i];
            ends.push((a.tail, j, End::Tail));
            ends.push((a.head, j, End::Head));
        }
        ends.sort();
        // Renumber arrows by first appearance.
        let mut names: BTreeMap<usize, usize> = BTreeMap::new();
        let word: Vec<(usize, End)> = ends
            .iter()
            .map(|&(_, j, e)| {
                let next = names.len();
                (*names.entry(j).or_insert(next), e)
            })
            .collect();
        if word == pattern.ends() {
            total += subset.iter().map(|&i| g.arrows()[i].sign.value()).product::<i64>();
        }
    }
    total
}

pub fn random_arrow_diagram<R: Rng>(rng: &mut R, max_arrows: usize) -> ArrowDiagram {
    let k = rng.gen_range(0..=max_arrows);
    let mut points: Vec<usize> = (0..2 * k).collect();
    for i in (1..points.len()).rev() {
        points.swap(i, rng.gen_range(0..=i));
    }
    let arrows = points
        .chunks(2)
        .map(|c| Arrow {
            tail: c[0],
            head: c[1],
            sign: if rng.gen::<bool>() { Sign::Positive } else { Sign::Negative },
        })
        .collect();
    ArrowDiagram::new(2 * k, arrows).expect("random matching")
}

pub fn random_pattern<R: Rng>(rng: &mut R, max_arrows: usize) -> ArrowPattern {
    let k = rng.gen_range(0..=max_arrows);
    let mut ends: Vec<String> = (1..=k).flat_map(|i| [format!("{i}t"), format!("{i}h")]).collect();
    for i in (1..ends.len()).rev() {
        ends.swap(i, rng.gen_range(0..=i));
    }
    ends.join(" ").parse().expect("balanced word")
}

/// Laurent polynomial in `A`, exponent to coefficient.
type Laurent = BTreeMap<i64, i64>;

fn mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Jones polynomial of a planar signed Gauss code, as exponent of `t` to
/// coefficient, from the Kauffman bracket state sum.
pub fn jones(code: &GaussCode) -> BTreeMap<i64, i64> {
    let n = code.len();
    let c = code.crossing_count();
    // Half-edges at passage i: 2i arrives, 2i+1 leaves.
    let arrive = |i: usize| 2 * i;
    let leave = |i: usize| 2 * i + 1;
    // Around a positive crossing, counterclockwise: over-out, under-out,
    // over-in, under-in. Around a negative one: over-out, under-in,
    // over-in, under-out. The A-smoothing joins each over half-edge with
    // its clockwise neighbour.
    let mut a_pairs = Vec::with_capacity(c);
    let mut b_pairs = Vec::with_capacity(c);
    let pos = code.crossing_positions();
    for (k, &(o, u)) in pos.iter().enumerate() {
        let ring = match code.sign(k) {
            Sign::Positive => [leave(o), leave(u), arrive(o), arrive(u)],
            Sign::Negative => [leave(o), arrive(u), arrive(o), leave(u)],
        };
        a_pairs.push([(ring[0], ring[3]), (ring[2], ring[1])]);
        b_pairs.push([(ring[0], ring[1]), (ring[2], ring[3])]);
    }
    let writhe: i64 = (0..c).map(|k| code.sign(k).value()).sum();
    let loop_value: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
    let mut bracket = Laurent::new();
    for state in 0u64..1 << c {
        let mut parent: Vec<usize> = (0..2 * n).collect();
        let join = |parent: &mut Vec<usize>, x: usize, y: usize| {
            let (rx, ry) = (find(parent, x), find(parent, y));
            parent[rx] = ry;
        };
        for i in 0..n {
            join(&mut parent, leave(i), arrive((i + 1) % n));
        }
        let mut a_count = 0i64;
        for k in 0..c {
            let pairs = if state >> k & 1 == 0 {
                a_count += 1;
                a_pairs[k]
            } else {
                b_pairs[k]
            };
            for (x, y) in pairs {
                join(&mut parent, x, y);
            }
        }
        let loops = if n == 0 { 1 } else { (0..2 * n).filter(|&x| find(&mut parent, x) == x).count() };
        let mut term: Laurent = [(a_count - (c as i64 - a_count), 1)].into_iter().collect();
        for _ in 1..loops {
            term = mul(&term, &loop_value);
        }
        for (e, v) in term {
            *bracket.entry(e).or_default() += v;
        }
    }
    // V(t) = (-A^3)^(-w) <D> at A = t^(-1/4).
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let mut out = BTreeMap::new();
    for (e, v) in bracket {
        if v == 0 {
            continue;
        }
        let e = e - 3 * writhe;
        assert_eq!(e % 4, 0, "knot brackets have exponents in 4Z after normalization");
        out.insert(-e / 4, sign * v);
    }
    out
}

fn derivative_at_one(poly: &BTreeMap<i64, i64>, order: u32) -> i64 {
    poly.iter().map(|(&k, &c)| c * (0..order as i64).map(|j| k - j).product::<i64>()).sum()
}

/// `(v2, v3)` from the Jones polynomial: `v2 = -V''(1)/6` and
/// `v3 = -(V'''(1) + 3 V''(1))/36`.
pub fn jones_v2_v3(code: &GaussCode) -> (Q, Q) {
    let v = jones(code);
    let (d2, d3) = (derivative_at_one(&v, 2), derivative_at_one(&v, 3));
    (Q::new(-d2, 6), Q::new(-(d3 + 3 * d2), 36))
}
