//! Fixture values and every formula against the Jones-polynomial oracle.

mod common;

use common::{fixtures, jones_v2_v3, q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vassiliev::invariants::invariant_report;
use vassiliev::knot_codes::perturb;
use vassiliev::realizability::is_planar;

#[test]
fn fixture_values_match_jones() {
    for rec in fixtures() {
        assert!(is_planar(&rec.code), "{}", rec.name);
        let (v2, v3) = jones_v2_v3(&rec.code);
        assert_eq!(v2, rec.expected["v2"], "{} v2", rec.name);
        assert_eq!(v3, rec.expected["v3"], "{} v3", rec.name);
    }
}

#[test]
fn every_method_matches_fixture_values() {
    for rec in fixtures() {
        let r = invariant_report(&rec.code);
        assert!(r.consistent(), "{}: {r:?}", rec.name);
        assert_eq!(r.v2_pv, rec.expected["v2"], "{}", rec.name);
        assert_eq!(r.v3_pv, rec.expected["v3"], "{}", rec.name);
    }
}

#[test]
fn perturbations_keep_the_jones_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for rec in fixtures().iter().filter(|r| r.code.crossing_count() <= 8) {
        for _ in 0..4 {
            let code = perturb(&rec.code, &mut rng, 3);
            assert!(is_planar(&code), "{code}");
            assert_eq!(jones_v2_v3(&code), (rec.expected["v2"], rec.expected["v3"]), "{} -> {code}", rec.name);
        }
    }
}

#[test]
fn trefoil_jones_polynomial() {
    let code = "O1+ U2+ O3+ U1+ O2+ U3+".parse().unwrap();
    let v: Vec<_> = common::jones(&code).into_iter().collect();
    assert_eq!(v, [(1, 1), (3, 1), (4, -1)]);
    assert_eq!(jones_v2_v3(&code), (q(1), q(1)));
}
