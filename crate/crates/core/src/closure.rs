//! Fischer–Ladner closure and the signed fingerprints used by filtration.
//!
//! The closure of a formula is the least set containing it that is closed
//! under subformulas and the modal unfolding rules: a test `[(psi)?]chi`
//! contributes `psi`, a choice `[a+b]chi` contributes `[a]chi` and
//! `[b]chi`, a composition `[a;b]chi` contributes `[a][b]chi`, a star
//! `[a*]chi` contributes `[a][a*]chi`, and the same with `<.>` throughout.
//! The set is always finite. Members are kept in the insertion order of
//! the fixpoint computation, which makes iteration deterministic.
//!
//! Fingerprints record the Belnap value of every closure member at a
//! state. Two states are equivalent modulo a closure set exactly when
//! their fingerprints are equal; both signs matter, which is why the
//! entries are full four-valued verdicts rather than truth bits.

use std::collections::HashMap;

use crate::eval::{BelnapValue, Session};
use crate::model::Model;
use crate::syntax::{Formula, Program};

/// A Fischer–Ladner closure: the seed formula plus all members in a
/// deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureSet {
    origin: Formula,
    members: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl ClosureSet {
    pub fn origin(&self) -> &Formula {
        &self.origin
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.members.iter()
    }
}

/// Rebuild a modality with the same shape (box or diamond) around a new
/// program and operand.
fn remodal(template: &Formula, program: Program, operand: Formula) -> Formula {
    match template {
        Formula::Box(..) => Formula::boxed(program, operand),
        Formula::Diamond(..) => Formula::diamond(program, operand),
        _ => unreachable!("remodal applies to modal formulas only"),
    }
}

/// Immediate successors of a member under the closure rules.
fn unfold(member: &Formula) -> Vec<Formula> {
    match member {
        Formula::Atom(_) | Formula::Bottom => vec![],
        Formula::StrongNeg(x) => vec![(**x).clone()],
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            vec![(**l).clone(), (**r).clone()]
        }
        Formula::Box(p, x) | Formula::Diamond(p, x) => {
            let operand = (**x).clone();
            match p {
                Program::Atom(_) => vec![operand],
                Program::Test(test) => vec![(**test).clone(), operand],
                Program::Choice(a, b) => vec![
                    remodal(member, (**a).clone(), operand.clone()),
                    remodal(member, (**b).clone(), operand),
                ],
                Program::Seq(a, b) => {
                    let inner = remodal(member, (**b).clone(), operand);
                    vec![remodal(member, (**a).clone(), inner)]
                }
                Program::Star(a) => {
                    let again = remodal(member, p.clone(), operand.clone());
                    vec![remodal(member, (**a).clone(), again), operand]
                }
            }
        }
    }
}

/// The Fischer–Ladner closure of `f`, computed as a worklist fixpoint.
pub fn fl_closure(f: &Formula) -> ClosureSet {
    let mut members = vec![f.clone()];
    let mut index = HashMap::new();
    index.insert(f.clone(), 0);
    let mut next = 0;
    while next < members.len() {
        let produced = unfold(&members[next]);
        for g in produced {
            if !index.contains_key(&g) {
                index.insert(g.clone(), members.len());
                members.push(g);
            }
        }
        next += 1;
    }
    ClosureSet {
        origin: f.clone(),
        members,
        index,
    }
}

/// The Belnap value of every closure member at one state, in closure
/// order. Equality of fingerprints is the filtration equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub Vec<BelnapValue>);

/// Fingerprint of state `x` against the closure `t`.
pub fn fingerprint(m: &Model, x: usize, t: &ClosureSet) -> Fingerprint {
    let mut session = Session::new(m);
    fingerprint_in(&mut session, x, t)
}

pub(crate) fn fingerprint_in(session: &mut Session<'_>, x: usize, t: &ClosureSet) -> Fingerprint {
    Fingerprint(t.iter().map(|f| session.belnap_value(x, f)).collect())
}
