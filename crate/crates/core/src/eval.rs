//! Four-valued model checker.
//!
//! Every formula gets two sets per model: the truth set `plus` (states
//! supporting it) and the falsity set `minus` (states refuting it). The two
//! are computed independently, so a state can land in both or in neither;
//! the pair of memberships at a state is its Belnap value.
//!
//! The clauses:
//!
//! - atoms read `V+` / `V-`
//! - `F`: `plus` empty, `minus` total
//! - `~phi` swaps the two sets
//! - `phi & psi`: `plus` intersects, `minus` unions; `|` dually
//! - `phi -> psi`: `plus` is material implication over truth sets,
//!   `minus` is `|phi|+ ∩ |psi|-`
//! - `[alpha]phi`: `plus` holds where every successor supports `phi`,
//!   `minus` where some successor refutes it; `<alpha>` dually
//!
//! Classical negation `!` and `T` are definitions, so they need no clauses
//! of their own. Evaluation is bottom-up with memoization on subexpression
//! identity; nested tests and stars reuse computed truth sets through a
//! [`Session`].

use std::collections::HashMap;
use std::fmt;

use crate::model::{Model, Relation, StateSet};
use crate::syntax::{Formula, Program};

/// The four values a formula can take at a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BelnapValue {
    TrueOnly,
    FalseOnly,
    Both,
    Neither,
}

impl BelnapValue {
    /// Map the membership pair (in truth set, in falsity set) to a value.
    pub fn from_flags(plus: bool, minus: bool) -> BelnapValue {
        match (plus, minus) {
            (true, false) => BelnapValue::TrueOnly,
            (false, true) => BelnapValue::FalseOnly,
            (true, true) => BelnapValue::Both,
            (false, false) => BelnapValue::Neither,
        }
    }
}

impl fmt::Display for BelnapValue {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BelnapValue::TrueOnly => "TrueOnly",
            BelnapValue::FalseOnly => "FalseOnly",
            BelnapValue::Both => "Both",
            BelnapValue::Neither => "Neither",
        };
        write!(out, "{s}")
    }
}

/// Which satisfaction relation to query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// Truth set and falsity set of a formula in a model. No containment
/// relation holds between the two in general.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthSets {
    pub plus: StateSet,
    pub minus: StateSet,
}

/// Evaluation session over one model: memoizes truth sets per subformula
/// and relations per subprogram. Sessions are cheap to create; each thread
/// should own its own.
pub struct Session<'m> {
    model: &'m Model,
    formulas: HashMap<Formula, TruthSets>,
    programs: HashMap<Program, Relation>,
    formula_evals: usize,
    program_evals: usize,
}

/// Memoization counters, exposed so tests can assert the evaluation stays
/// linear in the number of distinct subexpressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalStats {
    pub formula_evals: usize,
    pub program_evals: usize,
}

impl<'m> Session<'m> {
    pub fn new(model: &'m Model) -> Session<'m> {
        Session {
            model,
            formulas: HashMap::new(),
            programs: HashMap::new(),
            formula_evals: 0,
            program_evals: 0,
        }
    }

    pub fn model(&self) -> &'m Model {
        self.model
    }

    pub fn stats(&self) -> EvalStats {
        EvalStats {
            formula_evals: self.formula_evals,
            program_evals: self.program_evals,
        }
    }

    /// Truth and falsity sets of `f` in the session's model.
    pub fn truth_sets(&mut self, f: &Formula) -> TruthSets {
        if let Some(ts) = self.formulas.get(f) {
            return ts.clone();
        }
        self.formula_evals += 1;
        let n = self.model.n_states();
        let ts = match f {
            Formula::Atom(name) => TruthSets {
                plus: self.model.val_plus(name),
                minus: self.model.val_minus(name),
            },
            Formula::Bottom => TruthSets {
                plus: StateSet::empty(n),
                minus: StateSet::full(n),
            },
            Formula::StrongNeg(x) => {
                let inner = self.truth_sets(x);
                TruthSets {
                    plus: inner.minus,
                    minus: inner.plus,
                }
            }
            Formula::And(l, r) => {
                let (l, r) = (self.truth_sets(l), self.truth_sets(r));
                TruthSets {
                    plus: l.plus.intersection(&r.plus),
                    minus: l.minus.union(&r.minus),
                }
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.truth_sets(l), self.truth_sets(r));
                TruthSets {
                    plus: l.plus.union(&r.plus),
                    minus: l.minus.intersection(&r.minus),
                }
            }
            Formula::Implies(l, r) => {
                let (l, r) = (self.truth_sets(l), self.truth_sets(r));
                TruthSets {
                    plus: l.plus.complement().union(&r.plus),
                    minus: l.plus.intersection(&r.minus),
                }
            }
            Formula::Box(p, x) => {
                let rel = self.relation(p);
                let inner = self.truth_sets(x);
                TruthSets {
                    plus: universal_image(&rel, &inner.plus),
                    minus: existential_image(&rel, &inner.minus),
                }
            }
            Formula::Diamond(p, x) => {
                let rel = self.relation(p);
                let inner = self.truth_sets(x);
                TruthSets {
                    plus: existential_image(&rel, &inner.plus),
                    minus: universal_image(&rel, &inner.minus),
                }
            }
        };
        self.formulas.insert(f.clone(), ts.clone());
        ts
    }

    /// Relation of `p` in the session's model.
    pub fn relation(&mut self, p: &Program) -> Relation {
        if let Some(r) = self.programs.get(p) {
            return r.clone();
        }
        self.program_evals += 1;
        let rel = match p {
            Program::Atom(name) => self.model.atomic_relation(name),
            Program::Seq(l, r) => {
                let (l, r) = (self.relation(l), self.relation(r));
                l.compose(&r)
            }
            Program::Choice(l, r) => {
                let (l, r) = (self.relation(l), self.relation(r));
                l.union(&r)
            }
            Program::Star(x) => self.relation(x).rtc(),
            Program::Test(f) => Relation::identity_on(&self.truth_sets(f).plus),
        };
        self.programs.insert(p.clone(), rel.clone());
        rel
    }

    pub fn supports(&mut self, x: usize, f: &Formula, sign: Sign) -> bool {
        let ts = self.truth_sets(f);
        match sign {
            Sign::Plus => ts.plus.contains(x),
            Sign::Minus => ts.minus.contains(x),
        }
    }

    pub fn belnap_value(&mut self, x: usize, f: &Formula) -> BelnapValue {
        let ts = self.truth_sets(f);
        BelnapValue::from_flags(ts.plus.contains(x), ts.minus.contains(x))
    }

    pub fn valid_in_model(&mut self, f: &Formula) -> bool {
        let n = self.model.n_states();
        self.truth_sets(f).plus == StateSet::full(n)
    }
}

fn universal_image(rel: &Relation, set: &StateSet) -> StateSet {
    let n = set.universe_len();
    StateSet::from_indices(n, (0..n).filter(|x| rel.row(*x).is_subset(set)))
}

fn existential_image(rel: &Relation, set: &StateSet) -> StateSet {
    let n = set.universe_len();
    StateSet::from_indices(n, (0..n).filter(|x| rel.row(*x).intersects(set)))
}

/// Truth and falsity sets of `f` in `m`.
pub fn truth_sets(m: &Model, f: &Formula) -> TruthSets {
    Session::new(m).truth_sets(f)
}

/// Membership of state `x` in the truth (`+`) or falsity (`-`) set of `f`.
pub fn supports(m: &Model, x: usize, f: &Formula, sign: Sign) -> bool {
    Session::new(m).supports(x, f, sign)
}

/// The Belnap value of `f` at state `x`.
pub fn belnap_value(m: &Model, x: usize, f: &Formula) -> BelnapValue {
    Session::new(m).belnap_value(x, f)
}

/// Whether the truth set of `f` is the whole state space.
pub fn valid_in_model(m: &Model, f: &Formula) -> bool {
    Session::new(m).valid_in_model(f)
}

/// Whether every state supporting all of `premises` supports `conclusion`.
/// With no premises this is validity in the model.
pub fn entails_in_model(m: &Model, premises: &[Formula], conclusion: &Formula) -> bool {
    let mut session = Session::new(m);
    let mut common = StateSet::full(m.n_states());
    for p in premises {
        common = common.intersection(&session.truth_sets(p).plus);
    }
    common.is_subset(&session.truth_sets(conclusion).plus)
}
