mod common;

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::SeedableRng;

use bpdl::closure::{fingerprint, fl_closure};
use bpdl::syntax::{Expr, Formula, Program};
use common::{random_formula, random_model, Vocab};

/// Everything a closed set must contain on account of one member, by the
/// definition: immediate subformulas plus the five modal rules. Written
/// out independently of the worklist implementation.
fn required_by(member: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    match member {
        Formula::Atom(_) | Formula::Bottom => {}
        Formula::StrongNeg(x) => out.push((**x).clone()),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            out.push((**l).clone());
            out.push((**r).clone());
        }
        Formula::Box(p, x) | Formula::Diamond(p, x) => {
            out.push((**x).clone());
            let is_box = matches!(member, Formula::Box(..));
            let wrap = |prog: Program, operand: Formula| {
                if is_box {
                    Formula::boxed(prog, operand)
                } else {
                    Formula::diamond(prog, operand)
                }
            };
            match p {
                Program::Atom(_) => {}
                Program::Test(t) => out.push((**t).clone()),
                Program::Choice(a, b) => {
                    out.push(wrap((**a).clone(), (**x).clone()));
                    out.push(wrap((**b).clone(), (**x).clone()));
                }
                Program::Seq(a, b) => {
                    out.push(wrap((**a).clone(), wrap((**b).clone(), (**x).clone())));
                }
                Program::Star(a) => {
                    out.push(wrap((**a).clone(), wrap(p.clone(), (**x).clone())));
                }
            }
        }
    }
    out
}

#[test]
fn closure_is_a_fixpoint_of_the_rules() {
    let mut rng = StdRng::seed_from_u64(31);
    let vocab = Vocab::medium();
    for _ in 0..400 {
        let phi = random_formula(&mut rng, 3, &vocab);
        let closure = fl_closure(&phi);
        let members: HashSet<&Formula> = closure.iter().collect();
        assert!(members.contains(&phi));
        for member in closure.iter() {
            for needed in required_by(member) {
                assert!(
                    members.contains(&needed),
                    "closure of {phi} lacks {needed} required by {member}"
                );
            }
        }
    }
}

#[test]
fn closure_size_stays_within_twice_the_symbol_count() {
    let mut rng = StdRng::seed_from_u64(32);
    let vocab = Vocab::medium();
    for _ in 0..500 {
        let phi = random_formula(&mut rng, 4, &vocab);
        let closure = fl_closure(&phi);
        assert!(
            closure.len() <= 2 * phi.size(),
            "|FL({phi})| = {} > 2 * {}",
            closure.len(),
            phi.size()
        );
    }
}

#[test]
fn closure_contains_all_subformulas() {
    let mut rng = StdRng::seed_from_u64(33);
    let vocab = Vocab::medium();
    for _ in 0..300 {
        let phi = random_formula(&mut rng, 3, &vocab);
        let closure = fl_closure(&phi);
        for e in bpdl::syntax::subexpressions(&phi) {
            if let Expr::Formula(sub) = e {
                assert!(closure.contains(&sub), "{sub} missing from closure of {phi}");
            }
        }
    }
}

#[test]
fn distinct_fingerprints_bounded_by_four_to_the_closure() {
    let mut rng = StdRng::seed_from_u64(34);
    let vocab = Vocab::small();
    for _ in 0..100 {
        let phi = random_formula(&mut rng, 2, &vocab);
        let closure = fl_closure(&phi);
        let m = random_model(&mut rng, 5, &vocab);
        let distinct: HashSet<_> = (0..m.n_states())
            .map(|x| fingerprint(&m, x, &closure))
            .collect();
        let bound = 4usize
            .checked_pow(closure.len() as u32)
            .unwrap_or(usize::MAX);
        assert!(distinct.len() <= bound);
    }
}
