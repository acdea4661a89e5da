//! Low-degree Vassiliev invariants of knots presented by Gauss codes.
//!
//! Two independent families of formulas are implemented and cross-checked:
//! coordinate sums over crossing pairs and triples (the `δ`/`ε` data of
//! [`coordinates`]) and signed arrow-subdiagram counts on the Gauss diagram
//! ([`gauss_diagram`]). The [`weight_systems`] layer covers chord diagrams,
//! the 1-term and 4-term relations and singular-knot resolution, and
//! [`vassiliev_module`] checks module expansion identities numerically.

pub mod coordinates;
pub mod gauss_diagram;
pub mod invariants;
pub mod knot_codes;
pub mod rational;
pub mod realizability;
pub mod vassiliev_module;
pub mod weight_systems;

pub use gauss_diagram::{ArrowDiagram, ArrowPattern, ChordDiagram, PatternExpression};
pub use knot_codes::{GaussCode, KnotRecord, Passage, Role, Sign, SingularCode};
pub use rational::Q;
