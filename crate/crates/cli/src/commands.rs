use std::borrow::Cow;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};
use vassiliev::coordinates::coordinates;
use vassiliev::invariants::{invariant_report_with, named_invariant, FormulaSet, InvariantReport};
use vassiliev::knot_codes::{load_knot_table, parse_gauss_code, parse_knot_table, BUNDLED_KNOT_TABLE};
use vassiliev::rational::format_rational;
use vassiliev::vassiliev_module::{
    basis_values_from_table, check_expansion, parse_expansion, solve_basis_values, BasisSolution, Evaluator,
    ExpansionError, BUNDLED_N2, BUNDLED_N3, BUNDLED_N4,
};
use vassiliev::weight_systems::{check_relations, weight_from_invariant, Violation};
use vassiliev::{KnotRecord, Sign, Q};

use crate::output::{Format, Table};
use crate::{Method, Outcome};

pub fn rational(q: &Q) -> Value {
    Value::String(format_rational(q))
}

pub fn sign(s: Sign) -> &'static str {
    match s {
        Sign::Positive => "+",
        Sign::Negative => "-",
    }
}

/// The table at `path`, or the bundled fixtures.
pub fn knot_table(path: Option<&Path>) -> Result<Vec<KnotRecord>, String> {
    match path {
        Some(p) => load_knot_table(p).map_err(|e| format!("{}: {e}", p.display())),
        None => parse_knot_table(BUNDLED_KNOT_TABLE).map_err(|e| e.to_string()),
    }
}

pub fn formula_set(dir: Option<&Path>) -> Result<Cow<'static, FormulaSet>, String> {
    match dir {
        Some(d) => FormulaSet::from_dir(d).map(Cow::Owned).map_err(|e| e.to_string()),
        None => Ok(Cow::Borrowed(FormulaSet::bundled())),
    }
}

fn method_columns(method: Method) -> &'static [&'static str] {
    match method {
        Method::Lannes => &["v2_lannes", "v3_lannes"],
        Method::Pv => &["v2_pv", "v3_pv"],
        Method::Thm => &["v3_thm"],
        Method::All => &["v2_lannes", "v2_pv", "v3_lannes", "v3_pv", "v3_thm"],
    }
}

/// Headline values: the first selected method of each degree.
fn headline(r: &InvariantReport, method: Method, degree: &str) -> Option<Q> {
    let values = r.values();
    method_columns(method)
        .iter()
        .find(|c| c.starts_with(degree))
        .and_then(|c| values.iter().find(|(n, _)| n == c))
        .map(|(_, v)| *v)
}

/// Rows reload as a knot table: `name`, `gauss` and `expected` keep their
/// meaning and the computed values ride along as extra fields.
pub fn compute(
    out: &mut dyn Write,
    code: Option<&str>,
    table: Option<&Path>,
    method: Method,
    format: Format,
    patterns_dir: Option<&Path>,
) -> Outcome {
    let records = match (code, table) {
        (Some(text), _) => vec![KnotRecord::new("input", parse_gauss_code(text).map_err(|e| e.to_string())?)],
        (None, Some(path)) => knot_table(Some(path))?,
        (None, None) => return Err("one of --code or --table is required".into()),
    };
    let formulas = formula_set(patterns_dir)?;
    let extra = method_columns(method);
    let mut columns = vec!["name", "gauss", "expected", "v2", "v3"];
    columns.extend_from_slice(extra);
    columns.extend(["consistent", "matches_expected"]);
    let mut t = Table::new(columns);
    let mut all_ok = true;
    for rec in &records {
        let r = invariant_report_with(&formulas, &rec.code);
        let v2 = headline(&r, method, "v2");
        let v3 = headline(&r, method, "v3");
        let consistent = r.consistent() && r.integral();
        let matches = (!rec.expected.is_empty()).then(|| {
            rec.expected.iter().all(|(name, want)| match name.as_str() {
                "v2" => r.v2_pv == *want,
                "v3" => r.v3_pv == *want,
                other => r.values().iter().find(|(n, _)| *n == other).is_none_or(|(_, v)| v == want),
            })
        });
        all_ok &= consistent && matches != Some(false);
        let expected: Map<String, Value> = rec.expected.iter().map(|(k, v)| (k.clone(), rational(v))).collect();
        let mut row = vec![
            json!(rec.name),
            json!(rec.code.to_string()),
            if expected.is_empty() { Value::Null } else { Value::Object(expected) },
            v2.as_ref().map_or(Value::Null, rational),
            v3.as_ref().map_or(Value::Null, rational),
        ];
        let values = r.values();
        for c in extra {
            row.push(values.iter().find(|(n, _)| n == c).map_or(Value::Null, |(_, v)| rational(v)));
        }
        row.push(json!(consistent));
        row.push(matches.map_or(Value::Null, Value::Bool));
        t.push(row);
    }
    t.write(out, format)?;
    Ok(all_ok)
}

pub fn coords(out: &mut dyn Write, code: &str, format: Format) -> Outcome {
    let code = parse_gauss_code(code).map_err(|e| e.to_string())?;
    let mut t = Table::new(vec!["label", "delta", "epsilon"]);
    for c in coordinates(&code) {
        t.push(vec![json!(c.label), json!(c.delta), json!(sign(c.epsilon))]);
    }
    t.write(out, format)?;
    Ok(true)
}

pub fn weights(out: &mut dyn Write, degree: usize, invariant: &str, format: Format) -> Outcome {
    let inv = named_invariant(invariant).ok_or_else(|| format!("unknown invariant {invariant:?}"))?;
    let w = weight_from_invariant(&inv.eval, degree).map_err(|e| e.to_string())?;
    let report = check_relations(&w).map_err(|e| e.to_string())?;
    let mut t = Table::new(vec!["diagram", "value"]);
    for (d, v) in w.entries() {
        t.push(vec![json!(d.to_string()), rational(v)]);
    }
    t.write(out, format)?;
    let one = report.violations.iter().filter(|v| matches!(v, Violation::OneTerm { .. })).count();
    let four = report.violations.len() - one;
    let summary = format!(
        "{invariant} degree {degree}: {} diagrams, {} quadruples, 1T {} ({one} violations), 4T {} ({four} violations)",
        report.diagrams_checked,
        report.quadruples_checked,
        if report.one_term_ok { "ok" } else { "FAIL" },
        if report.four_term_ok { "ok" } else { "FAIL" },
    );
    // Keep JSON and CSV output pure rows; the report goes to stderr there.
    if format == Format::Plain {
        writeln!(out, "{summary}").map_err(|e| e.to_string())?;
    } else {
        eprintln!("{summary}");
    }
    Ok(report.one_term_ok && report.four_term_ok)
}

fn expansion_text(file: &str) -> Result<Cow<'static, str>, String> {
    Ok(match file {
        "n2" => Cow::Borrowed(BUNDLED_N2),
        "n3" => Cow::Borrowed(BUNDLED_N3),
        "n4" => Cow::Borrowed(BUNDLED_N4),
        path => Cow::Owned(std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?),
    })
}

pub fn expansion_check(
    out: &mut dyn Write,
    file: &str,
    table: Option<&Path>,
    probes: &[String],
    format: Format,
) -> Outcome {
    let e = parse_expansion(&expansion_text(file)?).map_err(|e| e.to_string())?;
    let corpus = knot_table(table)?;
    let names: Vec<String> = if probes.is_empty() {
        ["v2", "v3"]
            .iter()
            .filter(|n| named_invariant(n).is_some_and(|i| i.degree <= e.degree))
            .map(|n| n.to_string())
            .collect()
    } else {
        probes.to_vec()
    };
    let evaluators =
        names.iter().map(|n| Evaluator::named(n)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let known = basis_values_from_table(&e, &evaluators, &corpus);
    let basis = match solve_basis_values(&e, &evaluators, &corpus, &known) {
        Ok(BasisSolution::Solved(values)) => values,
        Ok(BasisSolution::Inconsistent(cert)) => {
            let combo: Vec<String> = cert
                .combination
                .iter()
                .filter(|(_, y)| *y != Q::from_integer(0))
                .map(|(k, y)| format!("{}*{k}", format_rational(y)))
                .collect();
            writeln!(
                out,
                "inconsistent for {}: {} gives 0 = {}",
                cert.probe,
                combo.join(" + "),
                format_rational(&cert.value)
            )
            .map_err(|e| e.to_string())?;
            return Ok(false);
        }
        // Well-formed input that cannot be settled here: a failed check, not a
        // parse error. Probe names were resolved above, so an unknown
        // invariant at this point is a coefficient.
        Err(err @ (ExpansionError::UnderdeterminedSystem { .. } | ExpansionError::UnknownInvariant(_))) => {
            writeln!(out, "cannot check: {err}").map_err(|e| e.to_string())?;
            return Ok(false);
        }
        Err(err) => return Err(err.to_string()),
    };
    let report = check_expansion(&e, &evaluators, &corpus, &basis).map_err(|e| e.to_string())?;
    let mut t = Table::new(vec!["kind", "probe", "knot", "value", "known"]);
    let by_knot: BTreeMap<(&str, &str), &Q> = basis.iter().map(|((k, p), v)| ((k.as_str(), p.as_str()), v)).collect();
    for ((knot, probe), v) in by_knot {
        let given = known.contains_key(&(knot.to_string(), probe.to_string()));
        t.push(vec![json!("basis"), json!(probe), json!(knot), rational(v), json!(given)]);
    }
    for r in &report.residuals {
        t.push(vec![json!("residual"), json!(r.probe), json!(r.knot), rational(&r.residual), Value::Null]);
    }
    t.write(out, format)?;
    Ok(report.all_zero())
}
