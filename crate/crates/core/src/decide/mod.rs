//! Satisfiability, validity, and global consequence.
//!
//! The route is a sign-doubling translation into classical dynamic logic:
//! each source formula `phi` yields two classical formulas, `t(phi)`
//! asserting its truth and `f(phi)` asserting its falsity, over atoms
//! `p+` / `p-` that track the two valuations independently. Strong
//! negation swaps the two translations, boxes turn their falsity into a
//! diamond over the falsity of the operand, and tests inside programs
//! translate through `t`. Satisfiability of `phi` is then classical
//! satisfiability of `t(phi)`, decided by type elimination (see
//! [`elim`](self)); a classical witness folds back into a four-valued
//! model by reading `p+` as the truth valuation and `p-` as the falsity
//! valuation, and is re-checked by the evaluator before being returned.
//!
//! Validity goes through classical negation: `phi` is valid exactly when
//! `phi -> F` is unsatisfiable, since `!` complements the truth set.
//! Global consequence reduces to validity of a star-guarded implication
//! over the union of the atomic programs involved.
//!
//! [`bounded_countermodel_search`] is an independent brute-force witness
//! finder used to cross-validate the decision procedure; it never decides
//! anything by itself.

mod classical;
mod elim;

pub use classical::{ClassicalAtom, ClassicalFormula, ClassicalProgram};

use thiserror::Error;

use crate::eval::{self, Sign};
use crate::model::Model;
use crate::syntax::{Formula, Program};

use elim::Elimination;

/// Resource ceilings for the decision procedure.
#[derive(Clone, Copy, Debug)]
pub struct SatLimits {
    /// Maximum number of candidate types (`2^free-bits`) the elimination
    /// may enumerate. Exceeding it is an error, never a wrong answer.
    pub max_types: u64,
}

impl Default for SatLimits {
    fn default() -> SatLimits {
        SatLimits {
            max_types: 1 << 20,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DecideError {
    #[error("type space 2^{free_bits} exceeds the limit of {limit} types")]
    ResourceLimit { free_bits: usize, limit: u64 },
}

/// Outcome of a satisfiability query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat { model: Model, state: usize },
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat { .. })
    }
}

/// Outcome of a validity query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    NotValid { countermodel: Model, state: usize },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// The truth and falsity translations of `f`, in that order.
pub fn translate(f: &Formula) -> (ClassicalFormula, ClassicalFormula) {
    use ClassicalFormula as C;
    match f {
        Formula::Atom(name) => (
            C::atom(ClassicalAtom::plus(name.clone())),
            C::atom(ClassicalAtom::minus(name.clone())),
        ),
        Formula::Bottom => (C::False, C::True),
        Formula::StrongNeg(x) => {
            let (t, f) = translate(x);
            (f, t)
        }
        Formula::And(l, r) => {
            let (tl, fl) = translate(l);
            let (tr, fr) = translate(r);
            (C::and(tl, tr), C::or(fl, fr))
        }
        Formula::Or(l, r) => {
            let (tl, fl) = translate(l);
            let (tr, fr) = translate(r);
            (C::or(tl, tr), C::and(fl, fr))
        }
        Formula::Implies(l, r) => {
            let (tl, _) = translate(l);
            let (tr, fr) = translate(r);
            (C::implies(tl.clone(), tr), C::and(tl, fr))
        }
        Formula::Box(p, x) => {
            let prog = translate_program(p);
            let (t, f) = translate(x);
            (C::boxed(prog.clone(), t), C::diamond(prog, f))
        }
        Formula::Diamond(p, x) => {
            let prog = translate_program(p);
            let (t, f) = translate(x);
            (C::diamond(prog.clone(), t), C::boxed(prog, f))
        }
    }
}

/// Programs translate homomorphically; tests keep only the truth half.
pub fn translate_program(p: &Program) -> ClassicalProgram {
    match p {
        Program::Atom(name) => ClassicalProgram::atom(name.clone()),
        Program::Seq(l, r) => ClassicalProgram::seq(translate_program(l), translate_program(r)),
        Program::Choice(l, r) => {
            ClassicalProgram::choice(translate_program(l), translate_program(r))
        }
        Program::Star(x) => ClassicalProgram::star(translate_program(x)),
        Program::Test(f) => ClassicalProgram::test(translate(f).0),
    }
}

/// Classical satisfiability by type elimination. A `Sat` verdict carries a
/// finite model whose doubled atoms appear as plain atoms (`p+`, `p-`) in
/// the `plus` valuation, plus the witnessing state.
pub fn pdl_sat(f: &ClassicalFormula, limits: &SatLimits) -> Result<Verdict, DecideError> {
    let elimination = Elimination::run(f, limits)?;
    match elimination.witness_type() {
        None => Ok(Verdict::Unsat),
        Some(ty) => {
            let (model, state) = elimination.witness_model(ty);
            Ok(Verdict::Sat { model, state })
        }
    }
}

/// Satisfiability of a four-valued formula. A `Sat` verdict carries a
/// standard model and state supporting the formula, verified by the
/// evaluator before being returned.
pub fn sat(f: &Formula, limits: &SatLimits) -> Result<Verdict, DecideError> {
    let (truth, _) = translate(f);
    match pdl_sat(&truth, limits)? {
        Verdict::Unsat => Ok(Verdict::Unsat),
        Verdict::Sat { model, state } => {
            let folded = fold_doubled_model(&model, f);
            assert!(
                eval::supports(&folded, state, f, Sign::Plus),
                "BUG: satisfiability witness failed evaluator re-check for {f}"
            );
            Ok(Verdict::Sat {
                model: folded,
                state,
            })
        }
    }
}

/// Reinterpret a classical witness over doubled atoms as a four-valued
/// model: `p+` membership becomes `V+(p)`, `p-` becomes `V-(p)`.
fn fold_doubled_model(classical: &Model, f: &Formula) -> Model {
    let mut folded = Model::new(classical.state_names().to_vec())
        .expect("witness models are non-empty");
    for atom in f.atoms() {
        let plus = classical.val_plus(&format!("{atom}+"));
        let minus = classical.val_plus(&format!("{atom}-"));
        folded.set_atom_sets(atom, plus, minus);
    }
    for prog in f.atomic_programs() {
        folded.set_program_relation(prog.clone(), classical.atomic_relation(&prog));
    }
    folded
}

/// Validity with a countermodel on failure. `f` is valid exactly when
/// `f -> F` is unsatisfiable, because classical negation complements the
/// truth set.
pub fn validity(f: &Formula, limits: &SatLimits) -> Result<Validity, DecideError> {
    match sat(&Formula::neg(f.clone()), limits)? {
        Verdict::Unsat => Ok(Validity::Valid),
        Verdict::Sat { model, state } => Ok(Validity::NotValid {
            countermodel: model,
            state,
        }),
    }
}

/// Whether `f` holds at every state of every model.
pub fn valid(f: &Formula, limits: &SatLimits) -> Result<bool, DecideError> {
    Ok(validity(f, limits)?.is_valid())
}

/// The star-guarded reduction of a global-consequence query: with atomic
/// programs `a1..an` occurring in the premises or the goal, the query
/// holds exactly when `[(a1+...+an)*](/\premises) -> goal` is valid. With
/// no atomic programs at all the guard collapses and the reduction is the
/// plain implication.
pub fn global_consequence_reduction(premises: &[Formula], goal: &Formula) -> Formula {
    let mut names: Vec<String> = premises
        .iter()
        .chain(std::iter::once(goal))
        .flat_map(|f| f.atomic_programs())
        .collect();
    names.sort();
    names.dedup();

    let conjunction = premises
        .iter()
        .cloned()
        .reduce(Formula::and)
        .unwrap_or_else(Formula::top);

    match names
        .into_iter()
        .map(Program::Atom)
        .reduce(Program::choice)
    {
        None => Formula::implies(conjunction, goal.clone()),
        Some(union) => Formula::implies(
            Formula::boxed(Program::star(union), conjunction),
            goal.clone(),
        ),
    }
}

/// Whether validity of all premises in a model forces validity of the
/// goal, over all models.
pub fn global_consequence(
    premises: &[Formula],
    goal: &Formula,
    limits: &SatLimits,
) -> Result<bool, DecideError> {
    valid(&global_consequence_reduction(premises, goal), limits)
}

/// Exhaustively enumerate models over the vocabulary of `f` with up to
/// `max_states` states and return the first state supporting `f`, if any.
/// Purely a cross-validation oracle: enumeration is exponential in the
/// vocabulary, so keep `max_states` small.
pub fn bounded_countermodel_search(f: &Formula, max_states: usize) -> Option<(Model, usize)> {
    let atoms = f.atoms();
    let progs = f.atomic_programs();
    for n in 1..=max_states {
        let atom_bits = atoms.len() * 2 * n;
        let prog_bits = progs.len() * n * n;
        let total_bits = atom_bits + prog_bits;
        assert!(total_bits < 128, "search vocabulary too large to enumerate");
        let mut counter: u128 = 0;
        let limit: u128 = 1 << total_bits;
        while counter < limit {
            let mut m = Model::new((0..n).map(|i| format!("s{i}")))
                .expect("n >= 1");
            let take = |offset: usize, count: usize| -> Vec<usize> {
                (0..count)
                    .filter(|i| counter >> (offset + i) & 1 == 1)
                    .collect()
            };
            for (k, atom) in atoms.iter().enumerate() {
                let plus = take(2 * k * n, n);
                let minus = take((2 * k + 1) * n, n);
                m.set_atom(atom.clone(), &plus, &minus);
            }
            for (k, prog) in progs.iter().enumerate() {
                let cells = take(atom_bits + k * n * n, n * n);
                let pairs: Vec<(usize, usize)> =
                    cells.into_iter().map(|c| (c / n, c % n)).collect();
                m.set_program(prog.clone(), &pairs);
            }
            let sets = eval::truth_sets(&m, f);
            if let Some(x) = (0..n).find(|x| sets.plus.contains(*x)) {
                return Some((m, x));
            }
            counter += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn limits() -> SatLimits {
        SatLimits::default()
    }

    #[test]
    fn translate_strong_negation_swaps() {
        let (t, fals) = translate(&f("~p"));
        assert_eq!(t, ClassicalFormula::atom(ClassicalAtom::minus("p")));
        assert_eq!(fals, ClassicalFormula::atom(ClassicalAtom::plus("p")));
    }

    #[test]
    fn translate_box() {
        let (t, fals) = translate(&f("[a]p"));
        assert_eq!(
            t,
            ClassicalFormula::boxed(
                ClassicalProgram::atom("a"),
                ClassicalFormula::atom(ClassicalAtom::plus("p"))
            )
        );
        assert_eq!(
            fals,
            ClassicalFormula::diamond(
                ClassicalProgram::atom("a"),
                ClassicalFormula::atom(ClassicalAtom::minus("p"))
            )
        );
    }

    #[test]
    fn translate_negated_implication() {
        let (t, _) = translate(&f("~(p -> q)"));
        assert_eq!(
            t,
            ClassicalFormula::and(
                ClassicalFormula::atom(ClassicalAtom::plus("p")),
                ClassicalFormula::atom(ClassicalAtom::minus("q"))
            )
        );
    }

    #[test]
    fn pdl_sat_false_constant() {
        assert_eq!(pdl_sat(&ClassicalFormula::False, &limits()).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn pdl_sat_doubled_atoms_are_independent() {
        let both = ClassicalFormula::and(
            ClassicalFormula::atom(ClassicalAtom::plus("p")),
            ClassicalFormula::atom(ClassicalAtom::minus("p")),
        );
        match pdl_sat(&both, &limits()).unwrap() {
            Verdict::Sat { model, state } => {
                assert!(model.val_plus("p+").contains(state));
                assert!(model.val_plus("p-").contains(state));
            }
            Verdict::Unsat => panic!("p+ & p- must be satisfiable"),
        }
    }

    #[test]
    fn pdl_sat_star_eventuality_conflict() {
        // <a*>p+ & [a*]!p+ : the reflexive step makes the demand
        // unfulfillable.
        let p_plus = ClassicalFormula::atom(ClassicalAtom::plus("p"));
        let a = ClassicalProgram::atom("a");
        let query = ClassicalFormula::and(
            ClassicalFormula::diamond(ClassicalProgram::star(a.clone()), p_plus.clone()),
            ClassicalFormula::boxed(
                ClassicalProgram::star(a),
                ClassicalFormula::not(p_plus),
            ),
        );
        assert_eq!(pdl_sat(&query, &limits()).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn sat_examples() {
        assert_eq!(sat(&Formula::Bottom, &limits()).unwrap(), Verdict::Unsat);
        assert!(sat(&f("p & ~p"), &limits()).unwrap().is_sat());
        assert_eq!(sat(&f("!(~~p <-> p)"), &limits()).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn sat_witness_passes_eval() {
        for text in ["p & ~p", "<a>p & [a]~p", "<a*>(p & ~q)", "p | ~p"] {
            let phi = f(text);
            if let Verdict::Sat { model, state } = sat(&phi, &limits()).unwrap() {
                assert!(eval::supports(&model, state, &phi, Sign::Plus), "{text}");
            } else {
                panic!("{text} should be satisfiable");
            }
        }
    }

    #[test]
    fn validity_examples() {
        let v = validity(&f("(p -> q) -> (~p | q)"), &limits()).unwrap();
        match v {
            Validity::NotValid { countermodel, state } => {
                let phi = f("(p -> q) -> (~p | q)");
                assert!(!eval::supports(&countermodel, state, &phi, Sign::Plus));
            }
            Validity::Valid => panic!("material-to-DeMorgan implication is not valid"),
        }
        assert!(valid(&f("<a*>p <-> (p | <a><a*>p)"), &limits()).unwrap());
        assert!(valid(&f("(p & [a*](p -> [a]p)) -> [a*]p"), &limits()).unwrap());
    }

    #[test]
    fn non_theorems_are_refuted() {
        assert!(!valid(&f("p | ~p"), &limits()).unwrap());
        assert!(!valid(&f("(p & ~p) -> F"), &limits()).unwrap());
    }

    #[test]
    fn unsat_regressions() {
        for text in [
            "(p & [a*](p -> [a]p)) & <a*>!p",
            "<a>T & [a]F",
            "p & !q & [(p)?]q",
            "<(a;b)*>p & [(a;b)*]!p",
        ] {
            assert_eq!(sat(&f(text), &limits()).unwrap(), Verdict::Unsat, "{text}");
        }
        for text in ["~<a>p & <a>~~p", "[a*](p & ~p)", "<a*>(p & ~p) & [a]F"] {
            assert!(sat(&f(text), &limits()).unwrap().is_sat(), "{text}");
        }
    }

    #[test]
    fn global_consequence_examples() {
        let phi = f("<a>p & q");
        assert!(global_consequence(std::slice::from_ref(&phi), &phi, &limits()).unwrap());
        assert!(global_consequence(&[f("p -> [a]p")], &f("p -> [a;a]p"), &limits()).unwrap());
        assert!(global_consequence(&[f("p")], &f("[a]p"), &limits()).unwrap());
        assert!(!global_consequence(&[f("p -> [a]p")], &f("p"), &limits()).unwrap());
    }

    #[test]
    fn global_consequence_without_programs_collapses() {
        assert_eq!(
            global_consequence_reduction(&[f("p")], &f("p | q")),
            f("p -> (p | q)")
        );
        assert!(global_consequence(&[f("p")], &f("p | q"), &limits()).unwrap());
    }

    #[test]
    fn reduction_shape() {
        let reduction = global_consequence_reduction(&[f("[a]p")], &f("<b>p | p"));
        assert_eq!(reduction, f("[(a+b)*][a]p -> (<b>p | p)"));
    }

    #[test]
    fn bounded_search_examples() {
        let (m, x) = bounded_countermodel_search(&f("p & ~p"), 1).unwrap();
        assert!(eval::supports(&m, x, &f("p & ~p"), Sign::Plus));
        assert!(bounded_countermodel_search(&Formula::Bottom, 2).is_none());
        let gap = f("!((p -> q) -> (~p | q))");
        let (m, x) = bounded_countermodel_search(&gap, 1).unwrap();
        assert!(eval::supports(&m, x, &gap, Sign::Plus));
    }

    #[test]
    fn resource_limit_is_reported() {
        let tight = SatLimits { max_types: 4 };
        let wide = f("<a>p | <a>q | <a>r | [a]s");
        match sat(&wide, &tight) {
            Err(DecideError::ResourceLimit { free_bits, limit }) => {
                assert!(free_bits > 2);
                assert_eq!(limit, 4);
            }
            other => panic!("expected a resource limit, got {other:?}"),
        }
    }
}
