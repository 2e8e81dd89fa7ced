//! A small corpus of formula shapes for reasoning about programs that
//! transform bodies of information. Under the four-valued reading, states
//! carry possibly incomplete or inconsistent information and programs
//! rewrite it, so these shapes say things classical dynamic logic cannot.

use crate::syntax::{Formula, Program};

/// `(premise & !~consistency) -> [rule]conclusion`
///
/// Reads: if `premise` is true and there is no information that
/// `consistency` is false, every terminating run of `rule` reaches a state
/// where `conclusion` is true. Where it holds, executing `rule` behaves
/// like applying the default rule "from `premise`, absent evidence against
/// `consistency`, infer `conclusion`".
pub fn default_rule(
    premise: Formula,
    consistency: Formula,
    conclusion: Formula,
    rule: Program,
) -> Formula {
    Formula::implies(
        Formula::and(premise, Formula::neg(Formula::strong_neg(consistency))),
        Formula::boxed(rule, conclusion),
    )
}

/// `!target -> [rule]~target`
///
/// The closed-world assumption as a program property: whenever `target` is
/// not known to be true, running `rule` marks it false.
pub fn closed_world(target: Formula, rule: Program) -> Formula {
    Formula::implies(
        Formula::neg(target.clone()),
        Formula::boxed(rule, Formula::strong_neg(target)),
    )
}

/// `(target & ~target) & <rule*>!(target & ~target)`
///
/// Says the present state carries conflicting information about `target`,
/// but finitely many runs of `rule` reach a state where the conflict is
/// gone: `rule` is an inconsistency-removing modification.
pub fn inconsistency_removal(target: Formula, rule: Program) -> Formula {
    let conflict = Formula::and(target.clone(), Formula::strong_neg(target));
    Formula::and(
        conflict.clone(),
        Formula::diamond(Program::star(rule), Formula::neg(conflict)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::{sat, SatLimits, Verdict};
    use crate::eval::{supports, Sign};
    use crate::model::Model;
    use crate::syntax::parse_formula;

    #[test]
    fn shapes_parse_back() {
        let shape = default_rule(
            Formula::atom("p"),
            Formula::atom("q"),
            Formula::atom("r"),
            Program::atom("a"),
        );
        assert_eq!(shape, parse_formula("(p & !~q) -> [a]r").unwrap());
        let shape = closed_world(Formula::atom("p"), Program::atom("a"));
        assert_eq!(shape, parse_formula("!p -> [a]~p").unwrap());
        let shape = inconsistency_removal(Formula::atom("p"), Program::atom("a"));
        assert_eq!(
            shape,
            parse_formula("(p & ~p) & <a*>!(p & ~p)").unwrap()
        );
    }

    #[test]
    fn inconsistency_removal_is_satisfiable() {
        let shape = inconsistency_removal(Formula::atom("p"), Program::atom("a"));
        assert!(matches!(
            sat(&shape, &SatLimits::default()).unwrap(),
            Verdict::Sat { .. }
        ));
    }

    #[test]
    fn closed_world_governs_rule_applications() {
        // s0 has no information about p; the rule step marks p false.
        let mut m = Model::new(["s0", "s1"]).unwrap();
        m.set_atom("p", &[], &[1]);
        m.set_program("a", &[(0, 1)]);
        let shape = closed_world(Formula::atom("p"), Program::atom("a"));
        assert!(supports(&m, 0, &shape, Sign::Plus));
    }
}
