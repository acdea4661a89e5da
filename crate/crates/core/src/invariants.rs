//! The degree-2 and degree-3 invariants, each by several formulas.
//!
//! * Sums over pairs and triples of crossings of the coordinates
//!   `δ`, `ε` weighted by `w2`/`w3` of the sub-chord-diagram.
//! * Arrow-pattern formulas evaluated on the Gauss diagram, read from
//!   pattern files (`patterns/*.pat`, bundled at build time).
//!
//! Both v2 formulas and all three v3 formulas must agree on every code;
//! [`invariant_report`] says whether they do.

use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use crate::coordinates::deltas;
use crate::gauss_diagram::{
    arrow_diagram_from_code, evaluate_expression, parse_pattern_file, ChordDiagram, PatternError, PatternExpression,
};
use crate::knot_codes::{parse_gauss_code, GaussCode};
use crate::rational::{format_rational, half, q, to_integer, Q};
use crate::weight_systems::{w2, w3};

/// Overall sign of the v2 coordinate sum. The sum as written is `-1` on the
/// trefoil (`δ = 1, 0, 1`, all `ε = +1`, all pairs interleaved), while the
/// invariant is normalized to `1` there.
pub const V2_LANNES_SIGN: i64 = -1;

/// Overall sign of the v3 coordinate sum; as for v2, the sum as written is
/// `-1` on the trefoil.
pub const V3_LANNES_SIGN: i64 = -1;

/// How the three crossings of an unordered triple are assigned to the
/// positions `x, y, z` of the (asymmetric) v3 summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoleConvention {
    /// `x, y, z` in order of first passage from the basepoint, prefactor 1/2.
    FirstPassageOrder,
    /// Average over all six orderings: ordered sum with prefactor 1/12.
    OrderedAveraged,
    /// Ordered sum with prefactor 1/2.
    OrderedUnaveraged,
}

impl RoleConvention {
    pub const ALL: [RoleConvention; 3] =
        [RoleConvention::FirstPassageOrder, RoleConvention::OrderedAveraged, RoleConvention::OrderedUnaveraged];
}

/// The only convention that passes [`calibrate_role_convention`].
pub const V3_ROLE_CONVENTION: RoleConvention = RoleConvention::FirstPassageOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{method} gave the non-integer value {}", format_rational(.value))]
    NonIntegerResult { method: &'static str, value: Q },
    #[error("{} role conventions fit the calibration suite, expected exactly one", .survivors.len())]
    CalibrationUnresolved { survivors: Vec<RoleConvention> },
    #[error("pattern file {file}: {source}")]
    Pattern { file: String, source: PatternError },
    #[error("cannot read pattern file {file}: {message}")]
    Io { file: String, message: String },
}

fn integral(method: &'static str, value: Q) -> Result<i64, InvariantError> {
    to_integer(&value).ok_or(InvariantError::NonIntegerResult { method, value })
}

/// Per-crossing data for the coordinate sums, crossings in order of first
/// passage. Chord `k` of `diagram` is crossing `k`, since both are ordered
/// by first passage.
struct Coords {
    delta: Vec<i64>,
    epsilon: Vec<i64>,
    diagram: ChordDiagram,
}

impl Coords {
    fn new(code: &GaussCode) -> Coords {
        Coords {
            delta: deltas(code).into_iter().map(i64::from).collect(),
            epsilon: (0..code.crossing_count()).map(|k| code.sign(k).value()).collect(),
            diagram: arrow_diagram_from_code(code).chord_diagram(),
        }
    }

    fn sub_diagram(&self, ks: &[usize]) -> ChordDiagram {
        self.diagram.restrict(ks)
    }

    fn sign_power(&self, ks: &[usize]) -> i64 {
        if ks.iter().map(|&k| self.delta[k]).sum::<i64>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn v3_summand(&self, x: usize, y: usize, z: usize) -> i64 {
        let (dx, dy, dz) = (self.delta[x], self.delta[y], self.delta[z]);
        let bracket = dy * (1 - dx) * (1 - dz) - dx * dz * (1 - dy);
        if bracket == 0 {
            return 0;
        }
        let w = w3(&self.sub_diagram(&[x, y, z])).expect("three chords");
        let w = to_integer(&w).expect("w3 is integral");
        self.sign_power(&[x, y, z]) * w * self.epsilon[x] * self.epsilon[y] * self.epsilon[z] * bracket
    }
}

/// The v2 coordinate sum without the calibration sign.
pub fn v2_lannes_unsigned(code: &GaussCode) -> Q {
    let c = Coords::new(code);
    let n = c.delta.len();
    let mut total = 0;
    for x in 0..n {
        for y in x + 1..n {
            let (dx, dy) = (c.delta[x], c.delta[y]);
            let bracket = dx * (1 - dy) + dy * (1 - dx);
            if bracket == 0 {
                continue;
            }
            let w = to_integer(&w2(&c.sub_diagram(&[x, y])).expect("two chords")).expect("w2 is integral");
            total += c.sign_power(&[x, y]) * w * c.epsilon[x] * c.epsilon[y] * bracket;
        }
    }
    half() * q(total)
}

/// The v3 coordinate sum under a role convention, without the calibration sign.
pub fn v3_lannes_unsigned(code: &GaussCode, convention: RoleConvention) -> Q {
    let c = Coords::new(code);
    let n = c.delta.len();
    let mut total = 0;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                total += match convention {
                    RoleConvention::FirstPassageOrder => c.v3_summand(x, y, z),
                    RoleConvention::OrderedAveraged | RoleConvention::OrderedUnaveraged => {
                        [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)]
                            .iter()
                            .map(|&(a, b, c3)| c.v3_summand(a, b, c3))
                            .sum()
                    }
                };
            }
        }
    }
    let prefactor = match convention {
        RoleConvention::OrderedAveraged => Q::new(1, 12),
        _ => half(),
    };
    prefactor * q(total)
}

pub fn v2_lannes(code: &GaussCode) -> Result<i64, InvariantError> {
    integral("v2_lannes", q(V2_LANNES_SIGN) * v2_lannes_unsigned(code))
}

pub fn v3_lannes(code: &GaussCode) -> Result<i64, InvariantError> {
    v3_lannes_with(code, V3_ROLE_CONVENTION)
}

pub fn v3_lannes_with(code: &GaussCode, convention: RoleConvention) -> Result<i64, InvariantError> {
    integral("v3_lannes", q(V3_LANNES_SIGN) * v3_lannes_unsigned(code, convention))
}

pub(crate) const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";
pub(crate) const FIGURE_EIGHT: &str = "U1+ O2- U3- O1+ U4+ O3- U2- O4+";
const CINQUEFOIL: &str = "U1+ O2+ U3+ O4+ U5+ O1+ U2+ O3+ U4+ O5+";
const THREE_TWIST: &str = "U1+ O2+ U3+ U4+ O5+ O1+ U2+ O3+ O6- U5+ O4+ U6-";

/// Selects the role convention for v3 from a calibration suite: `0` on the
/// unknot and the figure-eight, `1` on the trefoil, and agreement with the
/// arrow-pattern v3 on the 5_1 and 5_2 knots.
pub fn calibrate_role_convention(formulas: &FormulaSet) -> Result<RoleConvention, InvariantError> {
    let code = |s: &str| parse_gauss_code(s).expect("calibration code");
    let mut targets = vec![(GaussCode::unknot(), q(0)), (code(TREFOIL), q(1)), (code(FIGURE_EIGHT), q(0))];
    for s in [CINQUEFOIL, THREE_TWIST] {
        let c = code(s);
        let v = formulas.evaluate(&formulas.v3_pv, &c);
        targets.push((c, v));
    }
    let survivors: Vec<_> = RoleConvention::ALL
        .into_iter()
        .filter(|&conv| targets.iter().all(|(c, v)| q(V3_LANNES_SIGN) * v3_lannes_unsigned(c, conv) == *v))
        .collect();
    match survivors.as_slice() {
        [only] => Ok(*only),
        _ => Err(InvariantError::CalibrationUnresolved { survivors }),
    }
}

/// The three arrow-pattern formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaSet {
    pub v2: PatternExpression,
    pub v3_pv: PatternExpression,
    pub v3_theorem: PatternExpression,
}

pub const PATTERN_FILES: [&str; 3] = ["v2.pat", "v3_pv.pat", "v3_theorem.pat"];

impl FormulaSet {
    /// The formulas shipped with the crate.
    pub fn bundled() -> &'static FormulaSet {
        static BUNDLED: OnceLock<FormulaSet> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            FormulaSet::from_texts([
                include_str!("../patterns/v2.pat"),
                include_str!("../patterns/v3_pv.pat"),
                include_str!("../patterns/v3_theorem.pat"),
            ])
            .expect("bundled pattern files parse")
        })
    }

    fn from_texts(texts: [&str; 3]) -> Result<FormulaSet, InvariantError> {
        let parse = |i: usize| {
            parse_pattern_file(texts[i])
                .map_err(|source| InvariantError::Pattern { file: PATTERN_FILES[i].into(), source })
        };
        Ok(FormulaSet { v2: parse(0)?, v3_pv: parse(1)?, v3_theorem: parse(2)? })
    }

    /// Reads `v2.pat`, `v3_pv.pat` and `v3_theorem.pat` from a directory.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<FormulaSet, InvariantError> {
        let read = |name: &str| {
            let path = dir.as_ref().join(name);
            std::fs::read_to_string(&path)
                .map_err(|e| InvariantError::Io { file: path.display().to_string(), message: e.to_string() })
        };
        let texts = [read(PATTERN_FILES[0])?, read(PATTERN_FILES[1])?, read(PATTERN_FILES[2])?];
        FormulaSet::from_texts([&texts[0], &texts[1], &texts[2]])
    }

    pub fn evaluate(&self, expr: &PatternExpression, code: &GaussCode) -> Q {
        evaluate_expression(expr, &arrow_diagram_from_code(code))
    }

    pub fn v2_polyak_viro(&self, code: &GaussCode) -> Result<i64, InvariantError> {
        integral("v2_polyak_viro", self.evaluate(&self.v2, code))
    }

    pub fn v3_polyak_viro(&self, code: &GaussCode) -> Result<i64, InvariantError> {
        integral("v3_polyak_viro", self.evaluate(&self.v3_pv, code))
    }

    pub fn v3_theorem(&self, code: &GaussCode) -> Result<i64, InvariantError> {
        integral("v3_theorem", self.evaluate(&self.v3_theorem, code))
    }
}

pub fn v2_polyak_viro(code: &GaussCode) -> i64 {
    FormulaSet::bundled().v2_polyak_viro(code).expect("integer coefficients")
}

pub fn v3_polyak_viro(code: &GaussCode) -> Result<i64, InvariantError> {
    FormulaSet::bundled().v3_polyak_viro(code)
}

pub fn v3_theorem(code: &GaussCode) -> i64 {
    FormulaSet::bundled().v3_theorem(code).expect("integer coefficients")
}

/// All five values as exact rationals, plus agreement flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub v2_lannes: Q,
    pub v2_pv: Q,
    pub v3_lannes: Q,
    pub v3_pv: Q,
    pub v3_thm: Q,
    pub v2_consistent: bool,
    pub v3_consistent: bool,
}

impl InvariantReport {
    pub fn consistent(&self) -> bool {
        self.v2_consistent && self.v3_consistent
    }

    pub fn integral(&self) -> bool {
        [self.v2_lannes, self.v2_pv, self.v3_lannes, self.v3_pv, self.v3_thm].iter().all(Q::is_integer)
    }

    /// `(name, value)` pairs in a fixed order.
    pub fn values(&self) -> [(&'static str, Q); 5] {
        [
            ("v2_lannes", self.v2_lannes),
            ("v2_pv", self.v2_pv),
            ("v3_lannes", self.v3_lannes),
            ("v3_pv", self.v3_pv),
            ("v3_thm", self.v3_thm),
        ]
    }
}

pub fn invariant_report(code: &GaussCode) -> InvariantReport {
    invariant_report_with(FormulaSet::bundled(), code)
}

/// Never fails: disagreement and non-integral values are reported.
pub fn invariant_report_with(formulas: &FormulaSet, code: &GaussCode) -> InvariantReport {
    let v2_lannes = q(V2_LANNES_SIGN) * v2_lannes_unsigned(code);
    let v3_lannes = q(V3_LANNES_SIGN) * v3_lannes_unsigned(code, V3_ROLE_CONVENTION);
    let v2_pv = formulas.evaluate(&formulas.v2, code);
    let v3_pv = formulas.evaluate(&formulas.v3_pv, code);
    let v3_thm = formulas.evaluate(&formulas.v3_theorem, code);
    InvariantReport {
        v2_lannes,
        v2_pv,
        v3_lannes,
        v3_pv,
        v3_thm,
        v2_consistent: v2_lannes == v2_pv,
        v3_consistent: v3_lannes == v3_pv && v3_pv == v3_thm,
    }
}

/// An invariant addressable by name, e.g. from expansion files or the CLI.
#[derive(Debug, Clone, Copy)]
pub struct NamedInvariant {
    pub name: &'static str,
    pub degree: usize,
    pub eval: fn(&GaussCode) -> Q,
}

const NAMED: [NamedInvariant; 7] = [
    NamedInvariant { name: "v2", degree: 2, eval: |c| q(v2_polyak_viro(c)) },
    NamedInvariant { name: "v3", degree: 3, eval: |c| FormulaSet::bundled().evaluate(&FormulaSet::bundled().v3_pv, c) },
    NamedInvariant { name: "v2_lannes", degree: 2, eval: |c| q(V2_LANNES_SIGN) * v2_lannes_unsigned(c) },
    NamedInvariant { name: "v2_pv", degree: 2, eval: |c| q(v2_polyak_viro(c)) },
    NamedInvariant {
        name: "v3_lannes",
        degree: 3,
        eval: |c| q(V3_LANNES_SIGN) * v3_lannes_unsigned(c, V3_ROLE_CONVENTION),
    },
    NamedInvariant {
        name: "v3_pv",
        degree: 3,
        eval: |c| FormulaSet::bundled().evaluate(&FormulaSet::bundled().v3_pv, c),
    },
    NamedInvariant { name: "v3_thm", degree: 3, eval: |c| q(v3_theorem(c)) },
];

pub fn named_invariant(name: &str) -> Option<NamedInvariant> {
    NAMED.iter().find(|n| n.name == name).copied()
}

pub fn invariant_names() -> impl Iterator<Item = &'static str> {
    NAMED.iter().map(|n| n.name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> GaussCode {
        parse_gauss_code(s).unwrap()
    }

    #[test]
    fn literal_sums_are_negated_on_the_trefoil() {
        assert_eq!(v2_lannes_unsigned(&code(TREFOIL)), q(-1));
        assert_eq!(v3_lannes_unsigned(&code(TREFOIL), RoleConvention::FirstPassageOrder), q(-1));
        assert_eq!(v2_lannes(&code(TREFOIL)), Ok(1));
        assert_eq!(v3_lannes(&code(TREFOIL)), Ok(1));
    }

    #[test]
    fn rejected_role_conventions() {
        let t = code(TREFOIL);
        assert_eq!(v3_lannes_unsigned(&t, RoleConvention::OrderedAveraged), Q::new(-1, 3));
        assert!(matches!(
            v3_lannes_with(&t, RoleConvention::OrderedAveraged),
            Err(InvariantError::NonIntegerResult { method: "v3_lannes", .. })
        ));
        assert_eq!(v3_lannes_with(&t, RoleConvention::OrderedUnaveraged), Ok(2));
        assert_eq!(calibrate_role_convention(FormulaSet::bundled()), Ok(V3_ROLE_CONVENTION));
    }

    #[test]
    fn figure_eight() {
        let f = code(FIGURE_EIGHT);
        assert_eq!(v2_lannes(&f), Ok(-1));
        assert_eq!(v2_polyak_viro(&f), -1);
        assert_eq!(v3_lannes(&f), Ok(0));
        assert_eq!(v3_polyak_viro(&f), Ok(0));
        assert_eq!(v3_theorem(&f), 0);
    }

    #[test]
    fn unknot_and_mirror_trefoil() {
        let r = invariant_report(&GaussCode::unknot());
        assert!(r.consistent());
        assert!(r.values().iter().all(|(_, v)| *v == q(0)));
        let m = code(TREFOIL).mirror();
        assert_eq!(v2_polyak_viro(&m), 1);
        assert_eq!(v3_polyak_viro(&m), Ok(-1));
        assert_eq!(v3_theorem(&m), -1);
        assert_eq!(v3_lannes(&m), Ok(-1));
    }

    #[test]
    fn report_flags_disagreement() {
        let mut formulas = FormulaSet::bundled().clone();
        formulas.v3_theorem = formulas.v3_theorem.scaled(q(2));
        let r = invariant_report_with(&formulas, &code(TREFOIL));
        assert!(r.v2_consistent);
        assert!(!r.v3_consistent);
        assert_eq!(r.v3_thm, q(2));
    }

    #[test]
    fn named() {
        assert_eq!(named_invariant("v3_thm").map(|n| n.degree), Some(3));
        assert!(named_invariant("v4").is_none());
        for name in invariant_names() {
            assert_eq!((named_invariant(name).unwrap().eval)(&code(TREFOIL)), q(1), "{name}");
        }
    }

    #[test]
    fn pattern_dir() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("patterns");
        assert_eq!(&FormulaSet::from_dir(&dir).unwrap(), FormulaSet::bundled());
        assert!(matches!(FormulaSet::from_dir(dir.join("missing")), Err(InvariantError::Io { .. })));
    }
}
