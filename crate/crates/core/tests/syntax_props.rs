use proptest::prelude::*;

use bpdl::syntax::{parse_formula, print_formula, subexpressions, Formula, Program};

fn atom_name() -> impl Strategy<Value = String> {
    prop_oneof![Just("p"), Just("q"), Just("r"), Just("ab1"), Just("x_y")]
        .prop_map(str::to_string)
}

fn formula_strategy(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        atom_name().prop_map(Formula::Atom),
        Just(Formula::Bottom),
    ];
    leaf.prop_recursive(depth, 64, 8, |inner| {
        let program = program_strategy_from(inner.clone());
        prop_oneof![
            inner.clone().prop_map(Formula::strong_neg),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (program.clone(), inner.clone()).prop_map(|(p, f)| Formula::boxed(p, f)),
            (program, inner).prop_map(|(p, f)| Formula::diamond(p, f)),
        ]
    })
}

fn program_strategy_from(
    formula: impl Strategy<Value = Formula> + Clone + 'static,
) -> impl Strategy<Value = Program> + Clone {
    let leaf = prop_oneof![Just("a"), Just("b"), Just("c")]
        .prop_map(|s| Program::atom(s.to_string()));
    leaf.prop_recursive(3, 16, 4, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Program::seq(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Program::choice(l, r)),
            inner.prop_map(Program::star),
            formula.clone().prop_map(Program::test),
        ]
    })
}

proptest! {
    /// Printing then parsing is the identity on trees.
    #[test]
    fn round_trip(f in formula_strategy(6)) {
        let printed = print_formula(&f);
        let reparsed = parse_formula(&printed).unwrap();
        prop_assert_eq!(reparsed, f);
    }

    /// The printed form is a fixpoint: reprinting the reparse changes
    /// nothing, so the grammar reading of the output is unambiguous.
    #[test]
    fn print_is_stable(f in formula_strategy(6)) {
        let printed = print_formula(&f);
        let again = print_formula(&parse_formula(&printed).unwrap());
        prop_assert_eq!(again, printed);
    }

    /// Subexpression enumeration lists each node exactly once, children
    /// before parents.
    #[test]
    fn subexpressions_unique(f in formula_strategy(5)) {
        let exprs = subexpressions(&f);
        let mut dedup = exprs.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), exprs.len());
        // The root is a formula and must come last.
        prop_assert_eq!(exprs.last().unwrap(), &bpdl::syntax::Expr::Formula(f));
    }

    /// Arbitrary input never panics the parser; it parses or errors with
    /// a span inside the text.
    #[test]
    fn parser_total_on_arbitrary_input(text in ".{0,40}") {
        if let Err(e) = parse_formula(&text) {
            let len = text.chars().count();
            prop_assert!(e.span.start <= e.span.end);
            prop_assert!(e.span.end <= len);
        }
    }

    /// Same over strings drawn from the token alphabet, which reach much
    /// deeper into the grammar.
    #[test]
    fn parser_total_on_tokenish_input(text in "[ a-z()\\[\\]<>~!&|;+*?TF-]{0,30}") {
        let _ = parse_formula(&text);
        let _ = bpdl::syntax::parse_program(&text);
    }
}
