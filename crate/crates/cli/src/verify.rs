//! `verify`: named suites, each reported with a pass flag and check count.

use std::io::Write;
use std::path::PathBuf;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use vassiliev::invariants::{
    calibrate_role_convention, invariant_report_with, named_invariant, FormulaSet, V3_ROLE_CONVENTION,
};
use vassiliev::knot_codes::perturb;
use vassiliev::vassiliev_module::{
    basis_values_from_table, check_expansion, parse_expansion, solve_basis_values, BasisSolution, Evaluator,
    BUNDLED_N2, BUNDLED_N3,
};
use vassiliev::weight_systems::{
    check_relations, enumerate_chord_diagrams, weight_from_invariant, TabulatedWeight, WeightSystem, W2, W3,
};
use vassiliev::{GaussCode, KnotRecord};

use crate::commands::{formula_set, knot_table};
use crate::output::{Format, Table};
use crate::{Outcome, Suite};

pub struct Config {
    pub suite: Suite,
    pub degree: Option<usize>,
    pub table: Option<PathBuf>,
    pub perturbations: usize,
    pub seed: u64,
    pub patterns_dir: Option<PathBuf>,
}

struct SuiteResult {
    name: &'static str,
    checks: usize,
    detail: String,
    failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, checks: 0, detail: String::new(), failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Context {
    formulas: FormulaSet,
    table: Vec<KnotRecord>,
}

const V2_NAMES: [&str; 2] = ["v2_lannes", "v2_pv"];
const V3_NAMES: [&str; 3] = ["v3_lannes", "v3_pv", "v3_thm"];

fn calibration(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("calibration");
    let trefoil: GaussCode = "O1+ U2+ O3+ U1+ O2+ U3+".parse().expect("trefoil code");
    for (name, code, want) in [("unknot", GaussCode::unknot(), 0), ("trefoil", trefoil, 1)] {
        for (method, v) in invariant_report_with(&ctx.formulas, &code).values() {
            r.check(v == want.into(), || format!("{method} on {name} gave {v}, want {want}"));
        }
    }
    let conv = calibrate_role_convention(&ctx.formulas);
    r.check(conv.as_ref() == Ok(&V3_ROLE_CONVENTION), || format!("role convention calibration gave {conv:?}"));
    r.detail = "unknot and trefoil by every method; role convention".into();
    r
}

fn table(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("table");
    for rec in &ctx.table {
        let rep = invariant_report_with(&ctx.formulas, &rec.code);
        r.check(rep.consistent() && rep.integral(), || format!("{}: methods disagree {:?}", rec.name, rep.values()));
        for (name, want) in &rec.expected {
            let got = match name.as_str() {
                "v2" => Some(rep.v2_pv),
                "v3" => Some(rep.v3_pv),
                other => rep.values().iter().find(|(n, _)| *n == other).map(|(_, v)| *v),
            };
            if let Some(got) = got {
                r.check(got == *want, || format!("{}: {name} = {got}, expected {want}", rec.name));
            }
        }
    }
    r.detail = format!("{} knots", ctx.table.len());
    r
}

type NamedWeight = (String, Box<dyn WeightSystem>);

/// Built-in and derived weight systems of one degree.
fn weights_of_degree(n: usize) -> Result<Vec<NamedWeight>, String> {
    let mut out: Vec<NamedWeight> = match n {
        2 => vec![("w2".into(), Box::new(W2))],
        3 => vec![("w3".into(), Box::new(W3))],
        _ => Vec::new(),
    };
    for name in V2_NAMES.iter().chain(&V3_NAMES) {
        let inv = named_invariant(name).expect("built-in name");
        if inv.degree <= n {
            let w = weight_from_invariant(&inv.eval, n).map_err(|e| e.to_string())?;
            out.push((format!("W_{name}"), Box::new(w)));
        }
    }
    if out.is_empty() {
        return Err(format!("no weight system of degree {n}"));
    }
    Ok(out)
}

fn relations(degrees: &[usize], four_term_only: bool) -> Result<SuiteResult, String> {
    let mut r = SuiteResult::new(if four_term_only { "4t" } else { "relations" });
    let mut parts = Vec::new();
    for &n in degrees {
        let systems = weights_of_degree(n)?;
        let mut counts = (0, 0);
        for (name, w) in &systems {
            let rep = check_relations(w.as_ref()).map_err(|e| e.to_string())?;
            counts = (rep.diagrams_checked, rep.quadruples_checked);
            r.check(rep.four_term_ok, || format!("{name}: 4T fails on {} quadruples", rep.violations.len()));
            if !four_term_only {
                r.check(rep.one_term_ok, || format!("{name}: 1T fails"));
            }
        }
        let names: Vec<&str> = systems.iter().map(|(n, _)| n.as_str()).collect();
        parts.push(format!("degree {n}: {} diagrams, {} quadruples, {}", counts.0, counts.1, names.join(" ")));
    }
    r.detail = parts.join("; ");
    Ok(r)
}

/// Derived weights reproduce w2 and w3 and vanish one degree up.
fn weights() -> Result<SuiteResult, String> {
    let mut r = SuiteResult::new("weights");
    let err = |e: vassiliev::weight_systems::WeightError| e.to_string();
    for (names, reference, n) in [(&V2_NAMES[..], &W2 as &dyn WeightSystem, 2), (&V3_NAMES[..], &W3, 3)] {
        let want = TabulatedWeight::of(reference).map_err(err)?;
        for name in names {
            let inv = named_invariant(name).expect("built-in name");
            let got = weight_from_invariant(&inv.eval, n).map_err(err)?;
            r.check(got == want, || format!("W_{name} differs from w{n}"));
            let above = weight_from_invariant(&inv.eval, n + 1).map_err(err)?;
            r.check(above.is_zero(), || format!("W_{name} is nonzero at degree {}", n + 1));
        }
    }
    let counts: Vec<usize> = (2..=4).map(|n| enumerate_chord_diagrams(n).map_or(0, |d| d.len())).collect();
    r.detail = format!("diagrams per degree 2..4: {counts:?}");
    Ok(r)
}

fn invariance(ctx: &Context, perturbations: usize, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("invariance");
    let compare = |r: &mut SuiteResult, what: &str, rec: &KnotRecord, code: &GaussCode, mirror: bool| {
        let base = invariant_report_with(&ctx.formulas, &rec.code).values();
        let got = invariant_report_with(&ctx.formulas, code).values();
        for ((name, b), (_, g)) in base.iter().zip(&got) {
            let want = if mirror && name.starts_with("v3") { -*b } else { *b };
            r.check(*g == want, || format!("{}: {name} changed under {what} ({b} -> {g}) on {code}", rec.name));
        }
    };
    for rec in &ctx.table {
        for k in 1..rec.code.len() {
            compare(&mut r, "rotation", rec, &rec.code.rotate(k), false);
        }
        compare(&mut r, "reversal", rec, &rec.code.reverse(), false);
        compare(&mut r, "mirror", rec, &rec.code.mirror(), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !ctx.table.is_empty() {
        for i in 0..perturbations {
            let rec = &ctx.table[i % ctx.table.len()];
            let code = perturb(&rec.code, &mut rng, 1 + i % 3);
            compare(&mut r, "Reidemeister moves", rec, &code, false);
        }
    }
    r.detail = format!("rotations, reversal, mirror, {perturbations} perturbations (seed {seed})");
    r
}

fn expansion(ctx: &Context) -> Result<SuiteResult, String> {
    let mut r = SuiteResult::new("expansion");
    let err = |e: vassiliev::vassiliev_module::ExpansionError| e.to_string();
    for (label, text) in [("n2", BUNDLED_N2), ("n3", BUNDLED_N3)] {
        let e = parse_expansion(text).map_err(err)?;
        let probes: Vec<Evaluator> =
            ["v2", "v3"].iter().filter_map(|n| Evaluator::named(n).ok()).filter(|p| p.degree() <= e.degree).collect();
        let known = basis_values_from_table(&e, &probes, &ctx.table);
        match solve_basis_values(&e, &probes, &ctx.table, &known) {
            Ok(BasisSolution::Solved(values)) => {
                let rep = check_expansion(&e, &probes, &ctx.table, &values).map_err(err)?;
                for res in &rep.residuals {
                    r.check(res.residual == 0.into(), || {
                        format!("{label}: residual {} for {} on {}", res.residual, res.probe, res.knot)
                    });
                }
            }
            Ok(BasisSolution::Inconsistent(cert)) => {
                r.check(false, || format!("{label}: inconsistent for {}", cert.probe))
            }
            Err(e) => r.check(false, || format!("{label}: {e}")),
        }
    }
    r.detail = format!("bundled n2 and n3 over {} knots", ctx.table.len());
    Ok(r)
}

pub fn run(out: &mut dyn Write, config: &Config, format: Format) -> Outcome {
    let ctx = Context {
        formulas: formula_set(config.patterns_dir.as_deref())?.into_owned(),
        table: knot_table(config.table.as_deref())?,
    };
    let degrees = match config.degree {
        Some(n) if (2..=4).contains(&n) => vec![n],
        Some(n) => return Err(format!("--degree must be 2, 3 or 4, got {n}")),
        None => vec![2, 3],
    };
    let selected = |s: Suite| config.suite == s || config.suite == Suite::All;
    let mut results = Vec::new();
    if selected(Suite::Calibration) {
        results.push(calibration(&ctx));
    }
    if selected(Suite::Table) {
        results.push(table(&ctx));
    }
    if selected(Suite::Relations) {
        results.push(relations(&degrees, false)?);
    }
    if config.suite == Suite::FourTerm {
        results.push(relations(&degrees, true)?);
    }
    if selected(Suite::Weights) {
        results.push(weights()?);
    }
    if selected(Suite::Invariance) {
        results.push(invariance(&ctx, config.perturbations, config.seed));
    }
    if selected(Suite::Expansion) {
        results.push(expansion(&ctx)?);
    }

    let mut t = Table::new(vec!["suite", "status", "checks", "detail", "failures"]);
    for s in &results {
        let status = if s.failures.is_empty() { "PASS" } else { "FAIL" };
        let failures = if s.failures.is_empty() { serde_json::Value::Null } else { json!(s.failures) };
        t.push(vec![json!(s.name), json!(status), json!(s.checks), json!(s.detail), failures]);
    }
    t.write(out, format)?;
    let failing: Vec<&str> = results.iter().filter(|s| !s.failures.is_empty()).map(|s| s.name).collect();
    if failing.is_empty() {
        return Ok(true);
    }
    eprintln!("failing suites: {}", failing.join(", "));
    Ok(false)
}
