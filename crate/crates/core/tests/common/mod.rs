//! Shared test tooling: random generators, an independent classical
//! evaluator used as the translation oracle, and proof mutation helpers.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::Rng;

use bpdl::decide::{ClassicalFormula, ClassicalProgram};
use bpdl::eval::Sign;
use bpdl::model::Model;
use bpdl::proof::Schema;
use bpdl::syntax::{Formula, Program};

#[derive(Clone, Debug)]
pub struct Vocab {
    pub atoms: Vec<String>,
    pub progs: Vec<String>,
}

impl Vocab {
    pub fn new(atoms: &[&str], progs: &[&str]) -> Vocab {
        Vocab {
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
            progs: progs.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn small() -> Vocab {
        Vocab::new(&["p", "q"], &["a"])
    }

    pub fn medium() -> Vocab {
        Vocab::new(&["p", "q", "r"], &["a", "b"])
    }
}

pub fn random_formula(rng: &mut StdRng, depth: usize, vocab: &Vocab) -> Formula {
    if depth == 0 {
        return if rng.random_bool(0.15) {
            Formula::Bottom
        } else {
            let i = rng.random_range(0..vocab.atoms.len());
            Formula::atom(vocab.atoms[i].clone())
        };
    }
    match rng.random_range(0..8) {
        0 => random_formula(rng, 0, vocab),
        1 => Formula::strong_neg(random_formula(rng, depth - 1, vocab)),
        2 => Formula::and(
            random_formula(rng, depth - 1, vocab),
            random_formula(rng, depth - 1, vocab),
        ),
        3 => Formula::or(
            random_formula(rng, depth - 1, vocab),
            random_formula(rng, depth - 1, vocab),
        ),
        4 => Formula::implies(
            random_formula(rng, depth - 1, vocab),
            random_formula(rng, depth - 1, vocab),
        ),
        5 => Formula::boxed(
            random_program(rng, depth.saturating_sub(1).min(2), vocab),
            random_formula(rng, depth - 1, vocab),
        ),
        6 => Formula::diamond(
            random_program(rng, depth.saturating_sub(1).min(2), vocab),
            random_formula(rng, depth - 1, vocab),
        ),
        _ => Formula::neg(random_formula(rng, depth - 1, vocab)),
    }
}

pub fn random_program(rng: &mut StdRng, depth: usize, vocab: &Vocab) -> Program {
    if depth == 0 {
        let i = rng.random_range(0..vocab.progs.len());
        return Program::atom(vocab.progs[i].clone());
    }
    match rng.random_range(0..5) {
        0 => random_program(rng, 0, vocab),
        1 => Program::seq(
            random_program(rng, depth - 1, vocab),
            random_program(rng, depth - 1, vocab),
        ),
        2 => Program::choice(
            random_program(rng, depth - 1, vocab),
            random_program(rng, depth - 1, vocab),
        ),
        3 => Program::star(random_program(rng, depth - 1, vocab)),
        _ => Program::test(random_formula(rng, depth - 1, vocab)),
    }
}

pub fn random_model(rng: &mut StdRng, max_states: usize, vocab: &Vocab) -> Model {
    let n = rng.random_range(1..=max_states);
    let mut m = Model::new((0..n).map(|i| format!("s{i}"))).unwrap();
    for atom in &vocab.atoms {
        let plus: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        let minus: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        m.set_atom(atom.clone(), &plus, &minus);
    }
    for prog in &vocab.progs {
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if rng.random_bool(0.35) {
                    pairs.push((x, y));
                }
            }
        }
        m.set_program(prog.clone(), &pairs);
    }
    m
}

/// Instantiate a schema with one random formula or program per
/// metavariable (consistent across repeated occurrences).
pub fn random_instance(
    rng: &mut StdRng,
    schema: &Schema,
    vocab: &Vocab,
    formula_depth: usize,
    program_depth: usize,
) -> Formula {
    let mut formulas: HashMap<String, Formula> = HashMap::new();
    let mut programs: HashMap<String, Program> = HashMap::new();
    // instantiate_with visits occurrences; the maps keep bindings stable.
    let shared = std::cell::RefCell::new(rng);
    schema.instantiate_with(
        &mut |v| {
            formulas
                .entry(v.to_string())
                .or_insert_with(|| {
                    let mut guard = shared.borrow_mut();
                    let d = guard.random_range(0..=formula_depth);
                    random_formula(&mut guard, d, vocab)
                })
                .clone()
        },
        &mut |v| {
            programs
                .entry(v.to_string())
                .or_insert_with(|| {
                    let mut guard = shared.borrow_mut();
                    let d = guard.random_range(0..=program_depth);
                    random_program(&mut guard, d, vocab)
                })
                .clone()
        },
    )
}

// ---------------------------------------------------------------------
// Independent classical evaluator. This is the oracle for the doubling
// translation, so it deliberately shares no code with `bpdl::eval`: it
// works on explicit pair lists and closes stars by naive fixpoint
// iteration.
// ---------------------------------------------------------------------

/// Classical satisfaction of a doubled formula at a state of `m`, where
/// `p+` reads the `plus` valuation of `p` and `p-` the `minus` one.
pub fn classical_holds(m: &Model, x: usize, f: &ClassicalFormula) -> bool {
    match f {
        ClassicalFormula::Atom(a) => match a.sign {
            Sign::Plus => m.val_plus(&a.name).contains(x),
            Sign::Minus => m.val_minus(&a.name).contains(x),
        },
        ClassicalFormula::True => true,
        ClassicalFormula::False => false,
        ClassicalFormula::Not(g) => !classical_holds(m, x, g),
        ClassicalFormula::And(l, r) => classical_holds(m, x, l) && classical_holds(m, x, r),
        ClassicalFormula::Or(l, r) => classical_holds(m, x, l) || classical_holds(m, x, r),
        ClassicalFormula::Implies(l, r) => !classical_holds(m, x, l) || classical_holds(m, x, r),
        ClassicalFormula::Box(p, g) => classical_steps(m, p)
            .iter()
            .filter(|(from, _)| *from == x)
            .all(|(_, to)| classical_holds(m, *to, g)),
        ClassicalFormula::Diamond(p, g) => classical_steps(m, p)
            .iter()
            .filter(|(from, _)| *from == x)
            .any(|(_, to)| classical_holds(m, *to, g)),
    }
}

fn classical_steps(m: &Model, p: &ClassicalProgram) -> Vec<(usize, usize)> {
    let n = m.n_states();
    match p {
        ClassicalProgram::Atom(name) => m.atomic_relation(name).pairs(),
        ClassicalProgram::Choice(a, b) => {
            let mut out = classical_steps(m, a);
            for pair in classical_steps(m, b) {
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
            out
        }
        ClassicalProgram::Seq(a, b) => {
            let ra = classical_steps(m, a);
            let rb = classical_steps(m, b);
            let mut out = Vec::new();
            for (x, y) in &ra {
                for (y2, z) in &rb {
                    if y == y2 && !out.contains(&(*x, *z)) {
                        out.push((*x, *z));
                    }
                }
            }
            out
        }
        ClassicalProgram::Star(a) => {
            let step = classical_steps(m, a);
            let mut out: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
            loop {
                let mut grew = false;
                let mut additions = Vec::new();
                for (x, y) in &out {
                    for (y2, z) in &step {
                        if y == y2 && !out.contains(&(*x, *z)) && !additions.contains(&(*x, *z)) {
                            additions.push((*x, *z));
                        }
                    }
                }
                for pair in additions {
                    out.push(pair);
                    grew = true;
                }
                if !grew {
                    break;
                }
            }
            out
        }
        ClassicalProgram::Test(g) => (0..n)
            .filter(|x| classical_holds(m, *x, g))
            .map(|x| (x, x))
            .collect(),
    }
}

// ---------------------------------------------------------------------
// Proof mutation helpers.
// ---------------------------------------------------------------------

/// Every formula obtained from `f` by swapping exactly one connective:
/// `&` <-> `|`, `->` to `&`, `[..]` <-> `<..>`.
pub fn connective_mutants(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    match f {
        Formula::Atom(_) | Formula::Bottom => {}
        Formula::StrongNeg(x) => {
            out.extend(connective_mutants(x).into_iter().map(Formula::strong_neg));
        }
        Formula::And(l, r) => {
            out.push(Formula::or((**l).clone(), (**r).clone()));
            out.extend(
                connective_mutants(l)
                    .into_iter()
                    .map(|m| Formula::and(m, (**r).clone())),
            );
            out.extend(
                connective_mutants(r)
                    .into_iter()
                    .map(|m| Formula::and((**l).clone(), m)),
            );
        }
        Formula::Or(l, r) => {
            out.push(Formula::and((**l).clone(), (**r).clone()));
            out.extend(
                connective_mutants(l)
                    .into_iter()
                    .map(|m| Formula::or(m, (**r).clone())),
            );
            out.extend(
                connective_mutants(r)
                    .into_iter()
                    .map(|m| Formula::or((**l).clone(), m)),
            );
        }
        Formula::Implies(l, r) => {
            out.push(Formula::and((**l).clone(), (**r).clone()));
            out.extend(
                connective_mutants(l)
                    .into_iter()
                    .map(|m| Formula::implies(m, (**r).clone())),
            );
            out.extend(
                connective_mutants(r)
                    .into_iter()
                    .map(|m| Formula::implies((**l).clone(), m)),
            );
        }
        Formula::Box(p, x) => {
            out.push(Formula::diamond(p.clone(), (**x).clone()));
            out.extend(
                connective_mutants(x)
                    .into_iter()
                    .map(|m| Formula::boxed(p.clone(), m)),
            );
        }
        Formula::Diamond(p, x) => {
            out.push(Formula::boxed(p.clone(), (**x).clone()));
            out.extend(
                connective_mutants(x)
                    .into_iter()
                    .map(|m| Formula::diamond(p.clone(), m)),
            );
        }
    }
    out
}
