//! Hilbert-style proof checker.
//!
//! A proof is a list of lines, each a formula justified as an axiom-schema
//! instance, as Modus ponens from two earlier lines, or as Necessitation
//! of an earlier line under some program. Checking is purely syntactic:
//! a line matches a schema when some sort-respecting substitution of
//! formulas for formula metavariables and programs for program
//! metavariables turns the schema into exactly that line (after the
//! parser's sugar expansion). There is no proof search.
//!
//! The axiom table (ids are stable and used in proof files):
//!
//! | id | schema |
//! |----|--------|
//! | CL1  | `phi -> (psi -> phi)` |
//! | CL2  | `(phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))` |
//! | CL3  | `(phi & psi) -> phi` |
//! | CL4  | `(phi & psi) -> psi` |
//! | CL5  | `phi -> (psi -> (phi & psi))` |
//! | CL6  | `phi -> (phi \| psi)` |
//! | CL7  | `psi -> (phi \| psi)` |
//! | CL8  | `(phi -> chi) -> ((psi -> chi) -> ((phi \| psi) -> chi))` |
//! | CL9  | `F -> phi` |
//! | CL10 | `((phi -> psi) -> phi) -> phi` |
//! | SN1  | `~~phi <-> phi` |
//! | SN2  | `~(phi & psi) <-> (~phi \| ~psi)` |
//! | SN3  | `~(phi \| psi) <-> (~phi & ~psi)` |
//! | SN4  | `~(phi -> psi) <-> (phi & ~psi)` |
//! | SN5  | `T <-> ~F` |
//! | K    | `[alpha](phi -> psi) -> ([alpha]phi -> [alpha]psi)` |
//! | PDL-U1 | `[alpha+beta]phi <-> ([alpha]phi & [beta]phi)` |
//! | PDL-U2 | `<alpha+beta>phi <-> (<alpha>phi \| <beta>phi)` |
//! | PDL-S1 | `[alpha;beta]phi <-> [alpha][beta]phi` |
//! | PDL-S2 | `<alpha;beta>phi <-> <alpha><beta>phi` |
//! | PDL-T1 | `[(psi)?]phi <-> (psi -> phi)` |
//! | PDL-T2 | `<(psi)?>phi <-> (psi & phi)` |
//! | PDL-MIX1 | `[alpha*]phi <-> (phi & [alpha][alpha*]phi)` |
//! | PDL-MIX2 | `<alpha*>phi <-> (phi \| <alpha><alpha*>phi)` |
//! | IND1 | `(phi & [alpha*](phi -> [alpha]phi)) -> [alpha*]phi` |
//! | IND2 | `<alpha*>phi -> (phi \| <alpha*>(!phi & <alpha>phi))` |
//! | INT1 | `!([alpha]phi) <-> <alpha>!phi` |
//! | INT2 | `!(<alpha>phi) <-> [alpha]!phi` |
//! | INT3 | `~[alpha]phi <-> <alpha>~phi` |
//! | INT4 | `[alpha]phi <-> ~<alpha>~phi` |
//! | INT5 | `~<alpha>phi <-> [alpha]~phi` |
//! | INT6 | `<alpha>phi <-> ~[alpha]~phi` |
//!
//! CL1-CL10 are a frozen, complete classical base over `{F, ->, &, |}`:
//! the implication combinators, conjunction and disjunction introduction
//! and elimination, explosion, and Peirce's law for classical strength.
//! They are fixed here so proof files stay portable.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::syntax::{parse_formula, parse_program, Formula, ParseError, Program};

/// Formula pattern: a formula tree with metavariables at the leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
enum PatternFormula {
    Var(String),
    Bottom,
    StrongNeg(Box<PatternFormula>),
    And(Box<PatternFormula>, Box<PatternFormula>),
    Or(Box<PatternFormula>, Box<PatternFormula>),
    Implies(Box<PatternFormula>, Box<PatternFormula>),
    Box(PatternProgram, Box<PatternFormula>),
    Diamond(PatternProgram, Box<PatternFormula>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PatternProgram {
    Var(String),
    Seq(Box<PatternProgram>, Box<PatternProgram>),
    Choice(Box<PatternProgram>, Box<PatternProgram>),
    Star(Box<PatternProgram>),
    Test(Box<PatternFormula>),
}

/// Metavariable names used in the schema table.
const FORMULA_VARS: [&str; 3] = ["phi", "psi", "chi"];
const PROGRAM_VARS: [&str; 2] = ["alpha", "beta"];

/// One axiom schema: a stable id and a pattern quantifying over formulas
/// and programs.
#[derive(Clone, Debug)]
pub struct Schema {
    pub id: &'static str,
    pattern: PatternFormula,
}

/// A sort-respecting assignment of formulas and programs to metavariables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub formulas: BTreeMap<String, Formula>,
    pub programs: BTreeMap<String, Program>,
}

const SCHEMA_DEFS: [(&str, &str); 32] = [
    ("CL1", "phi -> (psi -> phi)"),
    ("CL2", "(phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))"),
    ("CL3", "(phi & psi) -> phi"),
    ("CL4", "(phi & psi) -> psi"),
    ("CL5", "phi -> (psi -> (phi & psi))"),
    ("CL6", "phi -> (phi | psi)"),
    ("CL7", "psi -> (phi | psi)"),
    ("CL8", "(phi -> chi) -> ((psi -> chi) -> ((phi | psi) -> chi))"),
    ("CL9", "F -> phi"),
    ("CL10", "((phi -> psi) -> phi) -> phi"),
    ("SN1", "~~phi <-> phi"),
    ("SN2", "~(phi & psi) <-> (~phi | ~psi)"),
    ("SN3", "~(phi | psi) <-> (~phi & ~psi)"),
    ("SN4", "~(phi -> psi) <-> (phi & ~psi)"),
    ("SN5", "T <-> ~F"),
    ("K", "[alpha](phi -> psi) -> ([alpha]phi -> [alpha]psi)"),
    ("PDL-U1", "[alpha+beta]phi <-> ([alpha]phi & [beta]phi)"),
    ("PDL-U2", "<alpha+beta>phi <-> (<alpha>phi | <beta>phi)"),
    ("PDL-S1", "[alpha;beta]phi <-> [alpha][beta]phi"),
    ("PDL-S2", "<alpha;beta>phi <-> <alpha><beta>phi"),
    ("PDL-T1", "[(psi)?]phi <-> (psi -> phi)"),
    ("PDL-T2", "<(psi)?>phi <-> (psi & phi)"),
    ("PDL-MIX1", "[alpha*]phi <-> (phi & [alpha][alpha*]phi)"),
    ("PDL-MIX2", "<alpha*>phi <-> (phi | <alpha><alpha*>phi)"),
    ("IND1", "(phi & [alpha*](phi -> [alpha]phi)) -> [alpha*]phi"),
    ("IND2", "<alpha*>phi -> (phi | <alpha*>(!phi & <alpha>phi))"),
    ("INT1", "!([alpha]phi) <-> <alpha>!phi"),
    ("INT2", "!(<alpha>phi) <-> [alpha]!phi"),
    ("INT3", "~[alpha]phi <-> <alpha>~phi"),
    ("INT4", "[alpha]phi <-> ~<alpha>~phi"),
    ("INT5", "~<alpha>phi <-> [alpha]~phi"),
    ("INT6", "<alpha>phi <-> ~[alpha]~phi"),
];

/// The full axiom table, in documentation order.
pub fn schemata() -> &'static [Schema] {
    static TABLE: OnceLock<Vec<Schema>> = OnceLock::new();
    TABLE.get_or_init(|| {
        SCHEMA_DEFS
            .iter()
            .map(|(id, text)| Schema {
                id,
                pattern: pattern_of(
                    &parse_formula(text).expect("schema table entries parse"),
                ),
            })
            .collect()
    })
}

/// Look up a schema by id.
pub fn schema(id: &str) -> Option<&'static Schema> {
    schemata().iter().find(|s| s.id == id)
}

/// Read a pattern off a parsed formula: the reserved identifiers become
/// metavariables of their sort.
fn pattern_of(f: &Formula) -> PatternFormula {
    match f {
        Formula::Atom(name) if FORMULA_VARS.contains(&name.as_str()) => {
            PatternFormula::Var(name.clone())
        }
        Formula::Atom(name) => panic!("schema table uses unknown metavariable {name}"),
        Formula::Bottom => PatternFormula::Bottom,
        Formula::StrongNeg(x) => PatternFormula::StrongNeg(Box::new(pattern_of(x))),
        Formula::And(l, r) => {
            PatternFormula::And(Box::new(pattern_of(l)), Box::new(pattern_of(r)))
        }
        Formula::Or(l, r) => PatternFormula::Or(Box::new(pattern_of(l)), Box::new(pattern_of(r))),
        Formula::Implies(l, r) => {
            PatternFormula::Implies(Box::new(pattern_of(l)), Box::new(pattern_of(r)))
        }
        Formula::Box(p, x) => PatternFormula::Box(pattern_of_program(p), Box::new(pattern_of(x))),
        Formula::Diamond(p, x) => {
            PatternFormula::Diamond(pattern_of_program(p), Box::new(pattern_of(x)))
        }
    }
}

fn pattern_of_program(p: &Program) -> PatternProgram {
    match p {
        Program::Atom(name) if PROGRAM_VARS.contains(&name.as_str()) => {
            PatternProgram::Var(name.clone())
        }
        Program::Atom(name) => panic!("schema table uses unknown program metavariable {name}"),
        Program::Seq(l, r) => PatternProgram::Seq(
            Box::new(pattern_of_program(l)),
            Box::new(pattern_of_program(r)),
        ),
        Program::Choice(l, r) => PatternProgram::Choice(
            Box::new(pattern_of_program(l)),
            Box::new(pattern_of_program(r)),
        ),
        Program::Star(x) => PatternProgram::Star(Box::new(pattern_of_program(x))),
        Program::Test(f) => PatternProgram::Test(Box::new(pattern_of(f))),
    }
}

fn match_formula(pat: &PatternFormula, f: &Formula, sub: &mut Substitution) -> bool {
    match (pat, f) {
        (PatternFormula::Var(v), _) => match sub.formulas.get(v) {
            Some(bound) => bound == f,
            None => {
                sub.formulas.insert(v.clone(), f.clone());
                true
            }
        },
        (PatternFormula::Bottom, Formula::Bottom) => true,
        (PatternFormula::StrongNeg(p), Formula::StrongNeg(x)) => match_formula(p, x, sub),
        (PatternFormula::And(pl, pr), Formula::And(l, r))
        | (PatternFormula::Or(pl, pr), Formula::Or(l, r))
        | (PatternFormula::Implies(pl, pr), Formula::Implies(l, r)) => {
            // Mixed constructor pairings are excluded by the outer match.
            matches!(
                (pat, f),
                (PatternFormula::And(..), Formula::And(..))
                    | (PatternFormula::Or(..), Formula::Or(..))
                    | (PatternFormula::Implies(..), Formula::Implies(..))
            ) && match_formula(pl, l, sub)
                && match_formula(pr, r, sub)
        }
        (PatternFormula::Box(pp, px), Formula::Box(p, x))
        | (PatternFormula::Diamond(pp, px), Formula::Diamond(p, x)) => {
            matches!(
                (pat, f),
                (PatternFormula::Box(..), Formula::Box(..))
                    | (PatternFormula::Diamond(..), Formula::Diamond(..))
            ) && match_program(pp, p, sub)
                && match_formula(px, x, sub)
        }
        _ => false,
    }
}

fn match_program(pat: &PatternProgram, p: &Program, sub: &mut Substitution) -> bool {
    match (pat, p) {
        (PatternProgram::Var(v), _) => match sub.programs.get(v) {
            Some(bound) => bound == p,
            None => {
                sub.programs.insert(v.clone(), p.clone());
                true
            }
        },
        (PatternProgram::Seq(pl, pr), Program::Seq(l, r))
        | (PatternProgram::Choice(pl, pr), Program::Choice(l, r)) => {
            matches!(
                (pat, p),
                (PatternProgram::Seq(..), Program::Seq(..))
                    | (PatternProgram::Choice(..), Program::Choice(..))
            ) && match_program(pl, l, sub)
                && match_program(pr, r, sub)
        }
        (PatternProgram::Star(px), Program::Star(x)) => match_program(px, x, sub),
        (PatternProgram::Test(pf), Program::Test(f)) => match_formula(pf, f, sub),
        _ => false,
    }
}

impl Schema {
    /// Match `f` against this schema, returning the instantiating
    /// substitution when it is an instance.
    pub fn matches(&self, f: &Formula) -> Option<Substitution> {
        let mut sub = Substitution::default();
        match_formula(&self.pattern, f, &mut sub).then_some(sub)
    }

    /// Instantiate the schema, drawing metavariable values from the given
    /// functions. Useful for generating instances in bulk.
    pub fn instantiate_with(
        &self,
        formulas: &mut impl FnMut(&str) -> Formula,
        programs: &mut impl FnMut(&str) -> Program,
    ) -> Formula {
        fn go_f(
            pat: &PatternFormula,
            formulas: &mut impl FnMut(&str) -> Formula,
            programs: &mut impl FnMut(&str) -> Program,
        ) -> Formula {
            match pat {
                PatternFormula::Var(v) => formulas(v),
                PatternFormula::Bottom => Formula::Bottom,
                PatternFormula::StrongNeg(x) => Formula::strong_neg(go_f(x, formulas, programs)),
                PatternFormula::And(l, r) => Formula::and(
                    go_f(l, formulas, programs),
                    go_f(r, formulas, programs),
                ),
                PatternFormula::Or(l, r) => Formula::or(
                    go_f(l, formulas, programs),
                    go_f(r, formulas, programs),
                ),
                PatternFormula::Implies(l, r) => Formula::implies(
                    go_f(l, formulas, programs),
                    go_f(r, formulas, programs),
                ),
                PatternFormula::Box(p, x) => Formula::boxed(
                    go_p(p, formulas, programs),
                    go_f(x, formulas, programs),
                ),
                PatternFormula::Diamond(p, x) => Formula::diamond(
                    go_p(p, formulas, programs),
                    go_f(x, formulas, programs),
                ),
            }
        }
        fn go_p(
            pat: &PatternProgram,
            formulas: &mut impl FnMut(&str) -> Formula,
            programs: &mut impl FnMut(&str) -> Program,
        ) -> Program {
            match pat {
                PatternProgram::Var(v) => programs(v),
                PatternProgram::Seq(l, r) => Program::seq(
                    go_p(l, formulas, programs),
                    go_p(r, formulas, programs),
                ),
                PatternProgram::Choice(l, r) => Program::choice(
                    go_p(l, formulas, programs),
                    go_p(r, formulas, programs),
                ),
                PatternProgram::Star(x) => Program::star(go_p(x, formulas, programs)),
                PatternProgram::Test(f) => Program::test(go_f(f, formulas, programs)),
            }
        }
        go_f(&self.pattern, formulas, programs)
    }

    /// Instantiate with an explicit substitution; `None` if a metavariable
    /// of the schema is missing from it.
    pub fn instantiate(&self, sub: &Substitution) -> Option<Formula> {
        let missing = std::cell::Cell::new(false);
        let result = self.instantiate_with(
            &mut |v| match sub.formulas.get(v) {
                Some(f) => f.clone(),
                None => {
                    missing.set(true);
                    Formula::Bottom
                }
            },
            &mut |v| match sub.programs.get(v) {
                Some(p) => p.clone(),
                None => {
                    missing.set(true);
                    Program::atom("a")
                }
            },
        );
        (!missing.get()).then_some(result)
    }
}

/// Match a formula against a schema.
pub fn match_schema(f: &Formula, s: &Schema) -> Option<Substitution> {
    s.matches(f)
}

/// Justification of one proof line. Indices are 1-based positions of
/// earlier lines; Necessitation keeps its program as unparsed text, which
/// is validated during checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(String),
    Mp(usize, usize),
    Nec(usize, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub rule: Justification,
}

/// A proof document: lines in order, 1-based when referenced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofDoc {
    pub lines: Vec<ProofLine>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProofLoadError {
    #[error("proof JSON: {0}")]
    Json(String),
    #[error("line {line}: cannot parse formula: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: cannot parse rule `{text}`")]
    BadRule { line: usize, text: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProof {
    lines: Vec<RawLine>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    formula: String,
    rule: String,
}

/// Load a proof document from its JSON file format:
/// `{ "lines": [ { "formula": "...", "rule": "axiom:<id>" | "mp:<i>,<j>"
/// | "nec:<i>:<program>" }, ... ] }`.
pub fn load_proof(text: &str) -> Result<ProofDoc, ProofLoadError> {
    let raw: RawProof =
        serde_json::from_str(text).map_err(|e| ProofLoadError::Json(e.to_string()))?;
    let mut lines = Vec::new();
    for (offset, raw_line) in raw.lines.iter().enumerate() {
        let line = offset + 1;
        let formula = parse_formula(&raw_line.formula)
            .map_err(|source| ProofLoadError::Formula { line, source })?;
        let rule = parse_rule(&raw_line.rule).ok_or_else(|| ProofLoadError::BadRule {
            line,
            text: raw_line.rule.clone(),
        })?;
        lines.push(ProofLine { formula, rule });
    }
    Ok(ProofDoc { lines })
}

fn parse_rule(text: &str) -> Option<Justification> {
    if let Some(id) = text.strip_prefix("axiom:") {
        if id.is_empty() {
            return None;
        }
        return Some(Justification::Axiom(id.to_string()));
    }
    if let Some(args) = text.strip_prefix("mp:") {
        let (i, j) = args.split_once(',')?;
        return Some(Justification::Mp(
            i.trim().parse().ok()?,
            j.trim().parse().ok()?,
        ));
    }
    if let Some(args) = text.strip_prefix("nec:") {
        let (i, program) = args.split_once(':')?;
        return Some(Justification::Nec(i.trim().parse().ok()?, program.to_string()));
    }
    None
}

/// Why a line was rejected. Malformed justifications (dangling indices,
/// unknown axiom ids, unparseable programs) are distinguished from steps
/// that are well-formed but invalid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    MalformedJustification(String),
    InvalidStep(String),
}

impl fmt::Display for Reason {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::MalformedJustification(msg) => write!(out, "malformed justification: {msg}"),
            Reason::InvalidStep(msg) => write!(out, "invalid step: {msg}"),
        }
    }
}

/// Outcome of checking a proof: accepted, or rejected at the first bad
/// line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckResult {
    Accepted,
    Rejected { line: usize, reason: Reason },
}

impl CheckResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckResult::Accepted)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckResult::Accepted => write!(out, "ACCEPTED"),
            CheckResult::Rejected { line, reason } => write!(out, "REJECTED line {line}: {reason}"),
        }
    }
}

/// Check every line of a proof document; report the first failure.
pub fn check_proof(doc: &ProofDoc) -> CheckResult {
    for (offset, line) in doc.lines.iter().enumerate() {
        let number = offset + 1;
        let earlier = |i: usize| -> Result<&Formula, Reason> {
            if i == 0 || i >= number {
                Err(Reason::MalformedJustification(format!(
                    "index {i} does not reference an earlier line"
                )))
            } else {
                Ok(&doc.lines[i - 1].formula)
            }
        };
        let verdict: Result<(), Reason> = match &line.rule {
            Justification::Axiom(id) => match schema(id) {
                None => Err(Reason::MalformedJustification(format!(
                    "unknown axiom id `{id}`"
                ))),
                Some(s) => {
                    if s.matches(&line.formula).is_some() {
                        Ok(())
                    } else {
                        Err(Reason::InvalidStep(format!(
                            "formula is not an instance of {id}"
                        )))
                    }
                }
            },
            Justification::Mp(i, j) => earlier(*i).and_then(|antecedent| {
                let implication = earlier(*j)?;
                match implication {
                    Formula::Implies(l, r) if **l == *antecedent && **r == line.formula => Ok(()),
                    Formula::Implies(l, _) if **l != *antecedent => Err(Reason::InvalidStep(
                        format!("line {j} does not have line {i} as its antecedent"),
                    )),
                    Formula::Implies(..) => Err(Reason::InvalidStep(format!(
                        "modus ponens from lines {i} and {j} does not yield this formula"
                    ))),
                    _ => Err(Reason::InvalidStep(format!(
                        "line {j} is not an implication"
                    ))),
                }
            }),
            Justification::Nec(i, program_text) => earlier(*i).and_then(|premise| {
                let program = parse_program(program_text).map_err(|e| {
                    Reason::MalformedJustification(format!(
                        "cannot parse program `{program_text}`: {e}"
                    ))
                })?;
                let expected = Formula::boxed(program, premise.clone());
                if line.formula == expected {
                    Ok(())
                } else {
                    Err(Reason::InvalidStep(format!(
                        "necessitation of line {i} under `{program_text}` yields `{expected}`"
                    )))
                }
            }),
        };
        if let Err(reason) = verdict {
            return CheckResult::Rejected {
                line: number,
                reason,
            };
        }
    }
    CheckResult::Accepted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn doc(lines: &[(&str, &str)]) -> ProofDoc {
        let body: Vec<String> = lines
            .iter()
            .map(|(formula, rule)| {
                format!(r#"{{ "formula": "{formula}", "rule": "{rule}" }}"#)
            })
            .collect();
        load_proof(&format!(r#"{{ "lines": [{}] }}"#, body.join(","))).unwrap()
    }

    #[test]
    fn schema_table_is_well_formed() {
        assert_eq!(schemata().len(), 32);
        let mut ids: Vec<&str> = schemata().iter().map(|s| s.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 32);
    }

    #[test]
    fn match_examples() {
        let sub = match_schema(&f("~~(p & q) <-> (p & q)"), schema("SN1").unwrap()).unwrap();
        assert_eq!(sub.formulas["phi"], f("p & q"));

        let sub = match_schema(&f("~[b]r <-> <b>~r"), schema("INT3").unwrap()).unwrap();
        assert_eq!(sub.formulas["phi"], f("r"));
        assert_eq!(sub.programs["alpha"], parse_program("b").unwrap());

        assert!(match_schema(&f("p -> q"), schema("SN1").unwrap()).is_none());
    }

    #[test]
    fn match_requires_consistent_bindings() {
        assert!(match_schema(&f("~~p <-> q"), schema("SN1").unwrap()).is_none());
        assert!(match_schema(&f("[a]p <-> ~<b>~p"), schema("INT4").unwrap()).is_none());
    }

    #[test]
    fn instantiate_round_trips_through_match() {
        let mut sub = Substitution::default();
        sub.formulas.insert("phi".into(), f("p | q"));
        sub.formulas.insert("psi".into(), f("~r"));
        sub.formulas.insert("chi".into(), f("F"));
        sub.programs
            .insert("alpha".into(), parse_program("a;b*").unwrap());
        sub.programs.insert("beta".into(), parse_program("c").unwrap());
        for s in schemata() {
            let instance = s.instantiate(&sub).unwrap();
            let recovered = s.matches(&instance).unwrap();
            let again = s.instantiate(&recovered).unwrap();
            assert_eq!(instance, again, "{}", s.id);
        }
    }

    #[test]
    fn accepts_axiom_and_necessitation() {
        let d = doc(&[
            ("p -> (q -> p)", "axiom:CL1"),
            ("[a](p -> (q -> p))", "nec:1:a"),
        ]);
        assert_eq!(check_proof(&d), CheckResult::Accepted);
    }

    #[test]
    fn rejects_diamond_necessitation() {
        let d = doc(&[
            ("p -> (q -> p)", "axiom:CL1"),
            ("<a>(p -> (q -> p))", "nec:1:a"),
        ]);
        match check_proof(&d) {
            CheckResult::Rejected { line: 2, reason: Reason::InvalidStep(_) } => {}
            other => panic!("expected invalid step at line 2, got {other:?}"),
        }
    }

    #[test]
    fn accepts_box_distribution_derivation() {
        let d = doc(&[
            ("(p & q) -> p", "axiom:CL3"),
            ("[a]((p & q) -> p)", "nec:1:a"),
            ("[a]((p & q) -> p) -> ([a](p & q) -> [a]p)", "axiom:K"),
            ("[a](p & q) -> [a]p", "mp:2,3"),
        ]);
        assert_eq!(check_proof(&d), CheckResult::Accepted);
    }

    #[test]
    fn malformed_justifications_are_distinguished() {
        let d = doc(&[("p -> (q -> p)", "axiom:CL1"), ("q -> p", "mp:1,5")]);
        match check_proof(&d) {
            CheckResult::Rejected { line: 2, reason: Reason::MalformedJustification(_) } => {}
            other => panic!("expected malformed justification, got {other:?}"),
        }

        let d = doc(&[("p -> (q -> p)", "axiom:CL1"), ("[a](p -> (q -> p))", "nec:1:a$")]);
        match check_proof(&d) {
            CheckResult::Rejected { reason: Reason::MalformedJustification(_), .. } => {}
            other => panic!("expected malformed program, got {other:?}"),
        }

        let d = doc(&[("p -> (q -> p)", "axiom:CL99")]);
        match check_proof(&d) {
            CheckResult::Rejected { line: 1, reason: Reason::MalformedJustification(_) } => {}
            other => panic!("expected unknown axiom id, got {other:?}"),
        }
    }

    #[test]
    fn rule_strings_parse() {
        assert_eq!(
            parse_rule("axiom:SN2"),
            Some(Justification::Axiom("SN2".into()))
        );
        assert_eq!(parse_rule("mp: 1, 2"), Some(Justification::Mp(1, 2)));
        assert_eq!(
            parse_rule("nec:3:a;b*"),
            Some(Justification::Nec(3, "a;b*".into()))
        );
        assert_eq!(parse_rule("axiom:"), None);
        assert_eq!(parse_rule("mp:1"), None);
        assert_eq!(parse_rule("contract:1"), None);
    }

    #[test]
    fn load_reports_bad_formula_lines() {
        let err = load_proof(r#"{ "lines": [ { "formula": "p &", "rule": "axiom:CL1" } ] }"#)
            .unwrap_err();
        assert!(matches!(err, ProofLoadError::Formula { line: 1, .. }));
    }
}
