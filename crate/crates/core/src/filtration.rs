//! Quotients of models through closure sets, with an exhaustive checker
//! for the seven transfer properties the quotient construction is supposed
//! to satisfy.
//!
//! Two states are identified when they agree on every closure member in
//! *both* signs (equal fingerprints). The quotient keeps one class per
//! fingerprint, relates classes whenever some representatives were related
//! by an atomic program, and projects both valuations pointwise. Relations
//! of compound programs are then re-derived inside the quotient by the
//! standard clauses rather than lifted from the original model.
//!
//! [`filtrate_positive_only`] builds the deliberately broken variant that
//! compares truth sets only. It exists for diagnosis and tests: collapsing
//! states that differ in falsity breaks the falsity-transfer property on
//! atoms, which is exactly why the equivalence must use both signs.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::closure::{fingerprint_in, ClosureSet, Fingerprint};
use crate::eval::{Session, Sign};
use crate::model::{Model, Relation};
use crate::syntax::Formula;

/// Result of quotienting a model through a closure set.
#[derive(Clone, Debug)]
pub struct Filtration {
    /// The quotient model; states are named `c0`, `c1`, ... in first-seen
    /// order of their classes.
    pub quotient: Model,
    /// Class index of each original state.
    pub class_of: Vec<usize>,
    /// One original representative per class: the least original index.
    pub witness: Vec<usize>,
}

/// How states are compared when forming classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SignMode {
    BothSigns,
    PlusOnly,
}

fn filtrate_with(m: &Model, t: &ClosureSet, mode: SignMode) -> Filtration {
    let n = m.n_states();
    let mut session = Session::new(m);
    let keys: Vec<Fingerprint> = (0..n)
        .map(|x| {
            let fp = fingerprint_in(&mut session, x, t);
            match mode {
                SignMode::BothSigns => fp,
                SignMode::PlusOnly => Fingerprint(
                    fp.0.iter()
                        .map(|v| {
                            use crate::eval::BelnapValue::*;
                            match v {
                                TrueOnly | Both => TrueOnly,
                                FalseOnly | Neither => Neither,
                            }
                        })
                        .collect(),
                ),
            }
        })
        .collect();

    let mut class_of = vec![usize::MAX; n];
    let mut witness = Vec::new();
    let mut by_key: HashMap<&Fingerprint, usize> = HashMap::new();
    for x in 0..n {
        let class = *by_key.entry(&keys[x]).or_insert_with(|| {
            witness.push(x);
            witness.len() - 1
        });
        class_of[x] = class;
    }

    let k = witness.len();
    let mut quotient = Model::new((0..k).map(|i| format!("c{i}")))
        .expect("quotient of a non-empty model is non-empty");
    for atom in m.atom_names().map(String::from).collect::<Vec<_>>() {
        let plus = m.val_plus(&atom);
        let minus = m.val_minus(&atom);
        let q_plus =
            crate::model::StateSet::from_indices(k, plus.iter().map(|x| class_of[x]));
        let q_minus =
            crate::model::StateSet::from_indices(k, minus.iter().map(|x| class_of[x]));
        quotient.set_atom_sets(atom, q_plus, q_minus);
    }
    for prog in m.program_names().map(String::from).collect::<Vec<_>>() {
        let rel = m.atomic_relation(&prog);
        let mut q_rel = Relation::empty(k);
        for (x, y) in rel.pairs() {
            q_rel.insert(class_of[x], class_of[y]);
        }
        quotient.set_program_relation(prog, q_rel);
    }

    Filtration {
        quotient,
        class_of,
        witness,
    }
}

/// Quotient `m` through the closure `t`, identifying states with equal
/// fingerprints (both signs).
pub fn filtrate(m: &Model, t: &ClosureSet) -> Filtration {
    filtrate_with(m, t, SignMode::BothSigns)
}

/// The single-sign mutant: identifies states that agree on truth sets
/// alone, ignoring falsity. Not a correct filtration; see module docs.
pub fn filtrate_positive_only(m: &Model, t: &ClosureSet) -> Filtration {
    filtrate_with(m, t, SignMode::PlusOnly)
}

/// Outcome of checking one transfer property.
#[derive(Clone, Debug)]
pub struct ItemReport {
    pub label: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Outcome of the full seven-item check.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub items: Vec<ItemReport>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.violations.is_empty())
    }

    pub fn item(&self, index: usize) -> &ItemReport {
        &self.items[index]
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(
                out,
                "{}: {} checked, {} violations",
                item.label,
                item.checked,
                item.violations.len()
            )?;
            for v in &item.violations {
                writeln!(out, "  {v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("model has {states} states, exceeding the exhaustive-check bound {bound}")]
    GuardExceeded { states: usize, bound: usize },
}

/// Default state-count guard for the exhaustive lemma check.
pub const DEFAULT_STATE_BOUND: usize = 6;

/// Check the seven transfer properties of the quotient of `m` through the
/// closure of `f`, exhaustively over all states, pairs, and closure
/// members. The model must have at most [`DEFAULT_STATE_BOUND`] states.
pub fn check_filtration_lemma(m: &Model, f: &Formula) -> Result<LemmaReport, FiltrationError> {
    check_filtration_lemma_bounded(m, f, DEFAULT_STATE_BOUND)
}

/// As [`check_filtration_lemma`] with an explicit state-count guard.
pub fn check_filtration_lemma_bounded(
    m: &Model,
    f: &Formula,
    bound: usize,
) -> Result<LemmaReport, FiltrationError> {
    if m.n_states() > bound {
        return Err(FiltrationError::GuardExceeded {
            states: m.n_states(),
            bound,
        });
    }
    let t = crate::closure::fl_closure(f);
    let filtration = filtrate(m, &t);
    Ok(check_lemma_against(m, &t, &filtration))
}

/// Run the seven-item check against a given quotient. Exposed so the
/// deliberately broken single-sign quotient can be checked too.
pub fn check_lemma_against(m: &Model, t: &ClosureSet, filtration: &Filtration) -> LemmaReport {
    let n = m.n_states();
    let mut orig = Session::new(m);
    let mut quot = Session::new(&filtration.quotient);
    let class = &filtration.class_of;

    let modal_members: Vec<&Formula> = t
        .iter()
        .filter(|g| matches!(g, Formula::Box(..) | Formula::Diamond(..)))
        .collect();

    let mut items: Vec<ItemReport> = [
        "(i) atomic-step preservation",
        "(ii) box truth transfers forward",
        "(iii) diamond truth transfers backward",
        "(iv) diamond falsity transfers forward",
        "(v) box falsity transfers backward",
        "(vi) truth agrees with the quotient",
        "(vii) falsity agrees with the quotient",
    ]
    .into_iter()
    .map(|label| ItemReport {
        label,
        checked: 0,
        violations: Vec::new(),
    })
    .collect();

    for member in &modal_members {
        let (program, operand, is_box) = match member {
            Formula::Box(p, x) => (p, &**x, true),
            Formula::Diamond(p, x) => (p, &**x, false),
            _ => unreachable!(),
        };
        let r_orig = orig.relation(program);
        let r_quot = quot.relation(program);

        // (i): original steps survive as quotient steps.
        for (x, y) in r_orig.pairs() {
            items[0].checked += 1;
            if !r_quot.contains(class[x], class[y]) {
                items[0].violations.push(format!(
                    "{member}: R({program}) {x}->{y} lost at [{cx}]->[{cy}]",
                    cx = class[x],
                    cy = class[y]
                ));
            }
        }

        // (ii)-(v): the four modal transfer conditions, over all original
        // pairs whose classes are related in the quotient.
        for x in 0..n {
            for y in 0..n {
                if !r_quot.contains(class[x], class[y]) {
                    continue;
                }
                if is_box {
                    items[1].checked += 1;
                    if orig.supports(x, member, Sign::Plus)
                        && !orig.supports(y, operand, Sign::Plus)
                    {
                        items[1]
                            .violations
                            .push(format!("{member}: {x} |=+ it, related {y} |/=+ {operand}"));
                    }
                    items[4].checked += 1;
                    if orig.supports(y, operand, Sign::Minus)
                        && !orig.supports(x, member, Sign::Minus)
                    {
                        items[4]
                            .violations
                            .push(format!("{member}: {y} |=- {operand}, but {x} |/=- it"));
                    }
                } else {
                    items[2].checked += 1;
                    if orig.supports(y, operand, Sign::Plus)
                        && !orig.supports(x, member, Sign::Plus)
                    {
                        items[2]
                            .violations
                            .push(format!("{member}: {y} |=+ {operand}, but {x} |/=+ it"));
                    }
                    items[3].checked += 1;
                    if orig.supports(x, member, Sign::Minus)
                        && !orig.supports(y, operand, Sign::Minus)
                    {
                        items[3]
                            .violations
                            .push(format!("{member}: {x} |=- it, related {y} |/=- {operand}"));
                    }
                }
            }
        }
    }

    // (vi)/(vii): membership transfers to the quotient in both signs, for
    // every member and every state.
    #[allow(clippy::needless_range_loop)]
    for member in t.iter() {
        for x in 0..n {
            items[5].checked += 1;
            if orig.supports(x, member, Sign::Plus) != quot.supports(class[x], member, Sign::Plus) {
                items[5]
                    .violations
                    .push(format!("{member}: truth at {x} disagrees with class [{}]", class[x]));
            }
            items[6].checked += 1;
            if orig.supports(x, member, Sign::Minus) != quot.supports(class[x], member, Sign::Minus)
            {
                items[6].violations.push(format!(
                    "{member}: falsity at {x} disagrees with class [{}]",
                    class[x]
                ));
            }
        }
    }

    LemmaReport { items }
}
