//! Propositional dynamic logic over four-valued states.
//!
//! States carry two independent verdicts per formula: support (the state
//! provides information that it is true) and anti-support (information
//! that it is false). A formula at a state is therefore true only, false
//! only, both, or neither. Programs are regular expressions over atomic
//! state transitions, with tests on truth; `[alpha]phi` and `<alpha>phi`
//! quantify over terminating executions.
//!
//! The crate provides:
//!
//! - [`syntax`]: the formula and program languages, an ASCII parser, and a
//!   round-tripping printer;
//! - [`model`]: finite models with dual valuations and the exact program
//!   relation algebra (composition, union, reflexive transitive closure,
//!   tests);
//! - [`eval`]: the four-valued model checker — truth and falsity sets,
//!   Belnap values, validity and entailment within a model;
//! - [`closure`]: Fischer–Ladner closure sets and signed state
//!   fingerprints;
//! - [`filtration`]: quotients of models through closure sets, plus an
//!   exhaustive checker for the seven transfer properties the quotient
//!   satisfies;
//! - [`decide`]: satisfiability, validity, and global consequence via a
//!   sign-doubling translation into classical dynamic logic and type
//!   elimination, with a brute-force bounded model search as an
//!   independent cross-check;
//! - [`proof`]: a checker for Hilbert-style proofs over a fixed axiom
//!   table;
//! - [`patterns`]: formula shapes for information-transforming programs
//!   (default rules, closed-world assumption, inconsistency removal).

pub mod closure;
pub mod decide;
pub mod eval;
pub mod filtration;
pub mod model;
pub mod patterns;
pub mod proof;
pub mod syntax;

pub use closure::{fingerprint, fl_closure, ClosureSet, Fingerprint};
pub use decide::{
    bounded_countermodel_search, global_consequence, pdl_sat, sat, translate, valid, validity,
    ClassicalAtom, ClassicalFormula, ClassicalProgram, DecideError, SatLimits, Validity, Verdict,
};
pub use eval::{
    belnap_value, entails_in_model, supports, truth_sets, valid_in_model, BelnapValue, Session,
    Sign, TruthSets,
};
pub use filtration::{
    check_filtration_lemma, filtrate, Filtration, FiltrationError, LemmaReport,
};
pub use model::{load_model, rtc, FormatError, Model, Relation, StateSet};
pub use proof::{check_proof, load_proof, match_schema, CheckResult, ProofDoc, Schema};
pub use syntax::{
    parse_formula, parse_program, print_formula, print_program, subexpressions, Expr, Formula,
    ParseError, Program, SourceSpan,
};
