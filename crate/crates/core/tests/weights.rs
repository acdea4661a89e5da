//! Weight systems induced by the invariants, through singular realizations.

mod common;

use common::q;
use vassiliev::invariants::{named_invariant, v2_polyak_viro, v3_theorem};
use vassiliev::weight_systems::{
    check_relations, enumerate_chord_diagrams, realize_chord_diagram, resolve_singular, w2, w3, weight_from_invariant,
    WeightSystem,
};
use vassiliev::Q;

fn derived(name: &str, n: usize) -> vassiliev::weight_systems::TabulatedWeight {
    let eval = named_invariant(name).unwrap().eval;
    weight_from_invariant(&eval, n).unwrap()
}

#[test]
fn degree_two_methods_give_w2() {
    for name in ["v2_pv", "v2_lannes"] {
        let w = derived(name, 2);
        for d in enumerate_chord_diagrams(2).unwrap() {
            assert_eq!(w.evaluate(&d), w2(&d), "{name} on {d}");
        }
    }
}

#[test]
fn degree_three_methods_give_w3() {
    for name in ["v3_thm", "v3_pv", "v3_lannes"] {
        let w = derived(name, 3);
        for d in enumerate_chord_diagrams(3).unwrap() {
            assert_eq!(w.evaluate(&d), w3(&d), "{name} on {d}");
        }
        let r = check_relations(&w).unwrap();
        assert!(r.one_term_ok && r.four_term_ok);
    }
}

#[test]
fn degree_bound() {
    for name in ["v2_pv", "v2_lannes"] {
        assert!(derived(name, 3).is_zero(), "{name}");
    }
    assert!(weight_from_invariant(&|c| q(v3_theorem(c)), 4).unwrap().is_zero());
}

#[test]
fn crossed_chords_resolve_to_one() {
    let crossed = vassiliev::ChordDiagram::from_word(&[1, 2, 1, 2]).unwrap();
    let s = realize_chord_diagram(&crossed);
    let terms = resolve_singular(&s);
    assert_eq!(terms.len(), 4);
    let total: Q = terms.iter().map(|(sign, code)| q(sign.value() * v2_polyak_viro(code))).sum();
    assert_eq!(total, q(1));
}

#[test]
fn derived_relations_at_degree_two() {
    let r = check_relations(&derived("v2_pv", 2)).unwrap();
    assert!(r.one_term_ok && r.four_term_ok);
    assert_eq!(r.diagrams_checked, 3);
}
