//! The degree 2 and 3 module expansions over the fixture corpus.

mod common;

use common::{fixtures, q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vassiliev::knot_codes::{perturb, KnotRecord};
use vassiliev::vassiliev_module::{
    basis_values_from_table, check_expansion, parse_expansion, solve_basis_values, BasisSolution, BasisValues,
    Evaluator, ExpansionError, BUNDLED_N2, BUNDLED_N3, BUNDLED_N4,
};

fn probes(names: &[&str]) -> Vec<Evaluator> {
    names.iter().map(|n| Evaluator::named(n).unwrap()).collect()
}

fn corpus_with_perturbations() -> Vec<KnotRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = fixtures();
    for rec in fixtures() {
        out.push(KnotRecord::new(format!("{}~", rec.name), perturb(&rec.code, &mut rng, 2)));
    }
    out
}

#[test]
fn degree_two_expansion() {
    let e = parse_expansion(BUNDLED_N2).unwrap();
    let ps = probes(&["v2"]);
    let corpus = corpus_with_perturbations();
    let basis = basis_values_from_table(&e, &ps, &fixtures());
    assert!(check_expansion(&e, &ps, &corpus, &basis).unwrap().all_zero());
}

#[test]
fn degree_three_expansion_identifies_h() {
    let e = parse_expansion(BUNDLED_N3).unwrap();
    let ps = probes(&["v2", "v3"]);
    let corpus = corpus_with_perturbations();
    let known = basis_values_from_table(&e, &ps, &fixtures());
    let BasisSolution::Solved(values) = solve_basis_values(&e, &ps, &corpus, &known).unwrap() else {
        panic!("inconsistent")
    };
    let h = |p: &str| values[&("H".to_string(), p.to_string())];
    assert_eq!((h("v2"), h("v3")), (q(-1), q(0)));
    let figure_eight = fixtures().into_iter().find(|r| r.name == "4_1").unwrap();
    assert_eq!((h("v2"), h("v3")), (figure_eight.expected["v2"], figure_eight.expected["v3"]));
    // Fixed point: the solved table makes every residual vanish.
    assert!(check_expansion(&e, &ps, &corpus, &values).unwrap().all_zero());
    // Also with H given as the figure-eight diagram itself.
    let mut table = fixtures();
    table.push(KnotRecord::new("H", figure_eight.code.clone()));
    let basis = basis_values_from_table(&e, &ps, &table);
    assert!(check_expansion(&e, &ps, &corpus, &basis).unwrap().all_zero());
}

#[test]
fn degree_three_expansion_with_all_v3_methods() {
    let e = parse_expansion(BUNDLED_N3).unwrap();
    let ps = probes(&["v2_lannes", "v3_lannes", "v3_thm"]);
    let figure_eight = fixtures().into_iter().find(|r| r.name == "4_1").unwrap();
    let mut table = fixtures();
    table.push(KnotRecord::new("H", figure_eight.code));
    let basis = basis_values_from_table(&e, &ps, &table);
    assert!(check_expansion(&e, &ps, &fixtures(), &basis).unwrap().all_zero());
}

#[test]
fn degree_four_expansion_is_not_checkable() {
    let e = parse_expansion(BUNDLED_N4).unwrap();
    let r = check_expansion(&e, &probes(&["v2", "v3"]), &fixtures(), &BasisValues::new());
    assert!(matches!(r, Err(ExpansionError::UnknownInvariant(ref n)) if n.starts_with("v4_")), "{r:?}");
}
