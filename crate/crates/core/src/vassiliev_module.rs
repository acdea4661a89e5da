//! Expansions of a knot in the Vassiliev module of degree `n`:
//! `K = Σ c_i(K) K_i`, where each coefficient `c_i` is a rational linear
//! form in named invariants and the `K_i` are basis knots.
//!
//! Applying an invariant `p` of degree at most `n` to both sides gives
//! `p(K) = Σ c_i(K) p(K_i)`, which [`check_expansion`] tests over a corpus.
//! Basis knots without a known diagram (only a name) get their values from
//! [`solve_basis_values`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::invariants::named_invariant;
use crate::knot_codes::{GaussCode, KnotRecord};
use crate::rational::{format_rational, parse_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("malformed expansion file: {0}")]
    Parse(String),
    #[error("unknown invariant {0:?}")]
    UnknownInvariant(String),
    #[error("probe {probe:?} has degree {degree}, above the expansion degree {max}")]
    DegreeTooHigh { probe: String, degree: usize, max: usize },
    #[error("no value of {probe:?} on basis knot {knot:?}")]
    MissingBasisValue { probe: String, knot: String },
    #[error("{unknowns} unknown basis values for {probe:?} but the corpus only fixes {rank}")]
    UnderdeterminedSystem { probe: String, unknowns: usize, rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    /// Invariant name to weight.
    pub coeff: BTreeMap<String, Q>,
    /// Name of the basis knot.
    pub knot: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub degree: usize,
    pub terms: Vec<Term>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionFile {
    degree: usize,
    terms: Vec<TermFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    coeff: BTreeMap<String, String>,
    knot: String,
}

/// Parses `{"degree": n, "terms": [{"coeff": {"v2": "1/2"}, "knot": "3_1"}]}`.
pub fn parse_expansion(text: &str) -> Result<Expansion, ExpansionError> {
    let file: ExpansionFile = serde_json::from_str(text).map_err(|e| ExpansionError::Parse(e.to_string()))?;
    let terms = file
        .terms
        .into_iter()
        .map(|t| {
            let coeff = t
                .coeff
                .into_iter()
                .map(|(name, v)| {
                    parse_rational(&v).map(|q| (name, q)).map_err(|e| ExpansionError::Parse(e.to_string()))
                })
                .collect::<Result<_, _>>()?;
            Ok(Term { coeff, knot: t.knot })
        })
        .collect::<Result<_, _>>()?;
    Ok(Expansion { degree: file.degree, terms })
}

impl Expansion {
    /// Basis knot names in order of first use.
    pub fn basis_knots(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for t in &self.terms {
            if !out.contains(&t.knot.as_str()) {
                out.push(&t.knot);
            }
        }
        out
    }

    /// Invariant names used by the coefficients.
    pub fn coefficient_invariants(&self) -> BTreeSet<&str> {
        self.terms.iter().flat_map(|t| t.coeff.keys().map(String::as_str)).collect()
    }

    pub fn to_json(&self) -> String {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|t| {
                let coeff: serde_json::Map<_, _> =
                    t.coeff.iter().map(|(k, v)| (k.clone(), serde_json::Value::from(format_rational(v)))).collect();
                serde_json::json!({"coeff": coeff, "knot": t.knot})
            })
            .collect();
        serde_json::json!({"degree": self.degree, "terms": terms}).to_string()
    }
}

pub const BUNDLED_N2: &str = include_str!("../expansions/n2.json");
pub const BUNDLED_N3: &str = include_str!("../expansions/n3.json");
/// Needs degree-4 evaluators `v4_1`, `v4_2`, `v4_3`, which are not provided.
pub const BUNDLED_N4: &str = include_str!("../expansions/n4.json");

/// A named knot invariant with its degree.
#[derive(Clone)]
pub struct Evaluator {
    name: String,
    degree: usize,
    f: Arc<dyn Fn(&GaussCode) -> Q + Send + Sync>,
}

impl Evaluator {
    pub fn new(name: impl Into<String>, degree: usize, f: impl Fn(&GaussCode) -> Q + Send + Sync + 'static) -> Self {
        Evaluator { name: name.into(), degree, f: Arc::new(f) }
    }

    /// One of the built-in invariants (`v2`, `v3`, `v2_lannes`, ...).
    pub fn named(name: &str) -> Result<Evaluator, ExpansionError> {
        let n = named_invariant(name).ok_or_else(|| ExpansionError::UnknownInvariant(name.to_string()))?;
        Ok(Evaluator::new(n.name, n.degree, n.eval))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn evaluate(&self, code: &GaussCode) -> Q {
        (self.f)(code)
    }
}

impl fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Evaluator").field("name", &self.name).field("degree", &self.degree).finish()
    }
}

/// Values `p(K_i)` keyed by `(knot, probe)`.
pub type BasisValues = BTreeMap<(String, String), Q>;

/// Evaluates every probe on every basis knot that has a diagram in `table`.
pub fn basis_values_from_table(e: &Expansion, probes: &[Evaluator], table: &[KnotRecord]) -> BasisValues {
    let mut out = BasisValues::new();
    for knot in e.basis_knots() {
        if let Some(rec) = table.iter().find(|r| r.name == knot) {
            for p in probes {
                out.insert((knot.to_string(), p.name.clone()), p.evaluate(&rec.code));
            }
        }
    }
    out
}

fn check_degrees(e: &Expansion, probes: &[Evaluator]) -> Result<(), ExpansionError> {
    match probes.iter().find(|p| p.degree > e.degree) {
        Some(p) => Err(ExpansionError::DegreeTooHigh { probe: p.name.clone(), degree: p.degree, max: e.degree }),
        None => Ok(()),
    }
}

/// Resolves coefficient invariants against the probes, then the built-ins.
fn coefficient_evaluators(e: &Expansion, probes: &[Evaluator]) -> Result<BTreeMap<String, Evaluator>, ExpansionError> {
    e.coefficient_invariants()
        .into_iter()
        .map(|name| {
            let ev = match probes.iter().find(|p| p.name == name) {
                Some(p) => p.clone(),
                None => Evaluator::named(name)?,
            };
            Ok((name.to_string(), ev))
        })
        .collect()
}

/// `c_i(K)` for every term.
fn coefficients(e: &Expansion, evals: &BTreeMap<String, Evaluator>, code: &GaussCode) -> Vec<Q> {
    let values: BTreeMap<&str, Q> = evals.iter().map(|(n, ev)| (n.as_str(), ev.evaluate(code))).collect();
    e.terms.iter().map(|t| t.coeff.iter().map(|(n, w)| *w * values[n.as_str()]).sum()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub probe: String,
    pub knot: String,
    pub residual: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport {
    pub residuals: Vec<Residual>,
}

impl ResidualReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.residual == Q::from_integer(0))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Residual> {
        self.residuals.iter().filter(|r| r.residual != Q::from_integer(0))
    }
}

/// `p(K) - Σ c_i(K) p(K_i)` for every probe `p` and corpus knot `K`.
pub fn check_expansion(
    e: &Expansion,
    probes: &[Evaluator],
    corpus: &[KnotRecord],
    basis: &BasisValues,
) -> Result<ResidualReport, ExpansionError> {
    check_degrees(e, probes)?;
    let evals = coefficient_evaluators(e, probes)?;
    for p in probes {
        for knot in e.basis_knots() {
            if !basis.contains_key(&(knot.to_string(), p.name.clone())) {
                return Err(ExpansionError::MissingBasisValue { probe: p.name.clone(), knot: knot.to_string() });
            }
        }
    }
    let mut residuals = Vec::new();
    for rec in corpus {
        let c = coefficients(e, &evals, &rec.code);
        for p in probes {
            let rhs: Q = e.terms.iter().zip(&c).map(|(t, ci)| *ci * basis[&(t.knot.clone(), p.name.clone())]).sum();
            residuals.push(Residual {
                probe: p.name.clone(),
                knot: rec.name.clone(),
                residual: p.evaluate(&rec.code) - rhs,
            });
        }
    }
    Ok(ResidualReport { residuals })
}

/// A combination of corpus equations whose left sides cancel but whose
/// right sides do not: `Σ y_K · (equation for K)` reads `0 = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyCertificate {
    pub probe: String,
    pub combination: Vec<(String, Q)>,
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisSolution {
    Solved(BasisValues),
    Inconsistent(InconsistencyCertificate),
}

/// Infers the basis values missing from `known` so that the expansion holds
/// on every corpus knot, separately for each probe, by exact elimination.
pub fn solve_basis_values(
    e: &Expansion,
    probes: &[Evaluator],
    corpus: &[KnotRecord],
    known: &BasisValues,
) -> Result<BasisSolution, ExpansionError> {
    check_degrees(e, probes)?;
    let evals = coefficient_evaluators(e, probes)?;
    let knots = e.basis_knots();
    let coeffs: Vec<Vec<Q>> = corpus.iter().map(|r| coefficients(e, &evals, &r.code)).collect();
    let mut solved = known.clone();
    for p in probes {
        let key = |k: &str| (k.to_string(), p.name.clone());
        let unknown: Vec<&str> = knots.iter().copied().filter(|k| !known.contains_key(&key(k))).collect();
        // One equation per corpus knot: Σ_unknown a_j x_j = b.
        let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
        for (rec, c) in corpus.iter().zip(&coeffs) {
            let mut a = vec![Q::from_integer(0); unknown.len()];
            let mut b = p.evaluate(&rec.code);
            for (t, ci) in e.terms.iter().zip(c) {
                match unknown.iter().position(|&k| k == t.knot) {
                    Some(j) => a[j] += *ci,
                    None => b -= *ci * known[&key(&t.knot)],
                }
            }
            rows.push((a, b));
        }
        match eliminate(rows, unknown.len()) {
            Elimination::Unique(x) => {
                for (k, v) in unknown.iter().zip(x) {
                    solved.insert(key(k), v);
                }
            }
            Elimination::Inconsistent { combination, value } => {
                let combination = corpus.iter().zip(combination).map(|(r, y)| (r.name.clone(), y)).collect();
                return Ok(BasisSolution::Inconsistent(InconsistencyCertificate {
                    probe: p.name.clone(),
                    combination,
                    value,
                }));
            }
            Elimination::Underdetermined { rank } => {
                return Err(ExpansionError::UnderdeterminedSystem {
                    probe: p.name.clone(),
                    unknowns: unknown.len(),
                    rank,
                });
            }
        }
    }
    Ok(BasisSolution::Solved(solved))
}

enum Elimination {
    Unique(Vec<Q>),
    Inconsistent { combination: Vec<Q>, value: Q },
    Underdetermined { rank: usize },
}

/// Gauss-Jordan elimination that also tracks, for every row, which
/// combination of the original rows it is.
fn eliminate(rows: Vec<(Vec<Q>, Q)>, n: usize) -> Elimination {
    let m = rows.len();
    let zero = Q::from_integer(0);
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut b: Vec<Q> = Vec::with_capacity(m);
    let mut y: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in rows.into_iter().enumerate() {
        a.push(row);
        b.push(rhs);
        let mut unit = vec![zero; m];
        unit[i] = Q::from_integer(1);
        y.push(unit);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| a[i][col] != zero) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        y.swap(r, p);
        let inv = Q::from_integer(1) / a[r][col];
        a[r].iter_mut().for_each(|v| *v *= inv);
        b[r] *= inv;
        y[r].iter_mut().for_each(|v| *v *= inv);
        let (pa, pb, py) = (a[r].clone(), b[r], y[r].clone());
        for i in 0..m {
            if i != r && a[i][col] != zero {
                let f = a[i][col];
                a[i].iter_mut().zip(&pa).for_each(|(v, p)| *v -= f * p);
                b[i] -= f * pb;
                y[i].iter_mut().zip(&py).for_each(|(v, p)| *v -= f * p);
            }
        }
        pivots.push(col);
        r += 1;
    }
    if let Some(i) = (r..m).find(|&i| b[i] != zero) {
        return Elimination::Inconsistent { combination: y[i].clone(), value: b[i] };
    }
    if r < n {
        return Elimination::Underdetermined { rank: r };
    }
    let mut x = vec![zero; n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = b[i];
    }
    Elimination::Unique(x)
}
