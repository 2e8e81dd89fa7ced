//! Satisfiability of classical dynamic formulas by type elimination.
//!
//! The closure of the input is computed with the same unfolding rules as
//! the four-valued closure. Within the closure, atoms, modalities over
//! *atomic* programs, and modalities over *starred* programs carry free
//! truth bits; every other member's bit is a fixed boolean function of
//! other members' bits:
//!
//! - booleans combine their children,
//! - `[a;b]x` aliases `[a][b]x`,
//! - `[a+b]x` is the conjunction of `[a]x` and `[b]x`,
//! - `[(r)?]x` is `r -> x`,
//!
//! and dually for diamonds. Star members cannot be treated as derived:
//! their unfolding `[a*]x = x & [a][a*]x` re-enters the member itself
//! whenever `a` decomposes without passing an atomic modality (star of a
//! test, star of a star), so it is a constraint with possibly several
//! solutions rather than a definition. They get free bits instead, and
//! assignments violating the unfolding equation are discarded during
//! enumeration. With stars free, every rule edge strictly shrinks the
//! pair (formula size, outermost-program size), so the remaining rules
//! form an acyclic graph.
//!
//! A *type* is one coherent assignment to the free bits, extended to all
//! members through the rules. Types are the candidate states of a model.
//!
//! Two types are linked by an atomic program `a` when the step respects
//! every box over `a` (a true `[a]x` forces `x` at the target) and every
//! diamond over `a` (a false `<a>x` forbids `x` at the target). A type
//! demands a witness for every true diamond member and every false box
//! member; the witnessing step relation is computed over the surviving
//! types by the standard program algebra, so star demands count only
//! genuine finite paths and unfulfilled eventualities kill their type.
//! Elimination repeats until stable; the input is satisfiable exactly
//! when a surviving type asserts it.

use std::collections::HashMap;

use crate::model::{Model, Relation, StateSet};

use super::classical::{ClassicalFormula, ClassicalProgram};
use super::{DecideError, SatLimits};

/// Bit of one closure member as a function of free bits and other members.
#[derive(Clone, Copy, Debug)]
enum BitRule {
    Free(usize),
    ConstTrue,
    ConstFalse,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Alias(usize),
}

/// A modal member whose demand or constraint drives elimination.
#[derive(Clone, Debug)]
struct ModalMember {
    index: usize,
    program: ClassicalProgram,
    operand: usize,
    is_box: bool,
}

pub(super) struct TypeSpace {
    members: Vec<ClassicalFormula>,
    modal: Vec<ModalMember>,
    /// (member, operand) pairs per atomic program, split by shape.
    atomic_boxes: HashMap<String, Vec<(usize, usize)>>,
    atomic_diamonds: HashMap<String, Vec<(usize, usize)>>,
    atom_members: Vec<usize>,
    program_names: Vec<String>,
    /// Bit vector per type, one bit per member.
    types: Vec<Vec<u64>>,
}

fn is_free(f: &ClassicalFormula) -> bool {
    matches!(
        f,
        ClassicalFormula::Atom(_)
            | ClassicalFormula::Box(ClassicalProgram::Atom(_) | ClassicalProgram::Star(_), _)
            | ClassicalFormula::Diamond(ClassicalProgram::Atom(_) | ClassicalProgram::Star(_), _)
    )
}

/// Unfolding equation a star member's free bit must satisfy:
/// `bit(member) == bit(operand) AND/OR bit(step)`.
#[derive(Clone, Copy, Debug)]
struct StarConstraint {
    member: usize,
    operand: usize,
    step: usize,
    is_box: bool,
}

fn remodal(
    is_box: bool,
    program: ClassicalProgram,
    operand: ClassicalFormula,
) -> ClassicalFormula {
    if is_box {
        ClassicalFormula::boxed(program, operand)
    } else {
        ClassicalFormula::diamond(program, operand)
    }
}

fn unfold(member: &ClassicalFormula) -> Vec<ClassicalFormula> {
    use ClassicalFormula as C;
    match member {
        C::Atom(_) | C::True | C::False => vec![],
        C::Not(x) => vec![(**x).clone()],
        C::And(l, r) | C::Or(l, r) | C::Implies(l, r) => vec![(**l).clone(), (**r).clone()],
        C::Box(p, x) | C::Diamond(p, x) => {
            let is_box = matches!(member, C::Box(..));
            let operand = (**x).clone();
            match p {
                ClassicalProgram::Atom(_) => vec![operand],
                ClassicalProgram::Test(test) => vec![(**test).clone(), operand],
                ClassicalProgram::Choice(a, b) => vec![
                    remodal(is_box, (**a).clone(), operand.clone()),
                    remodal(is_box, (**b).clone(), operand),
                ],
                ClassicalProgram::Seq(a, b) => {
                    let inner = remodal(is_box, (**b).clone(), operand);
                    vec![remodal(is_box, (**a).clone(), inner)]
                }
                ClassicalProgram::Star(a) => {
                    let again = remodal(is_box, p.clone(), operand.clone());
                    vec![remodal(is_box, (**a).clone(), again), operand]
                }
            }
        }
    }
}

impl TypeSpace {
    /// Build the closure, the per-member bit rules, and the full type
    /// table. Fails if the free-bit count would create more types than the
    /// configured ceiling.
    pub(super) fn build(seed: &ClassicalFormula, limits: &SatLimits) -> Result<TypeSpace, DecideError> {
        let mut members = vec![seed.clone()];
        let mut index: HashMap<ClassicalFormula, usize> = HashMap::new();
        index.insert(seed.clone(), 0);
        let mut next = 0;
        while next < members.len() {
            for g in unfold(&members[next]) {
                if !index.contains_key(&g) {
                    index.insert(g.clone(), members.len());
                    members.push(g);
                }
            }
            next += 1;
        }

        let mut free_count = 0;
        let mut rules = Vec::with_capacity(members.len());
        let mut star_constraints = Vec::new();
        let at = |f: &ClassicalFormula| -> usize {
            *index.get(f).expect("closure is closed under its own rules")
        };
        for (i, member) in members.iter().enumerate() {
            use ClassicalFormula as C;
            let rule = if is_free(member) {
                match member {
                    C::Box(ClassicalProgram::Star(a), x)
                    | C::Diamond(ClassicalProgram::Star(a), x) => {
                        let is_box = matches!(member, C::Box(..));
                        let again = remodal(
                            is_box,
                            ClassicalProgram::Star(a.clone()),
                            (**x).clone(),
                        );
                        star_constraints.push(StarConstraint {
                            member: i,
                            operand: at(x),
                            step: at(&remodal(is_box, (**a).clone(), again)),
                            is_box,
                        });
                    }
                    _ => {}
                }
                let k = free_count;
                free_count += 1;
                BitRule::Free(k)
            } else {
                match member {
                    C::True => BitRule::ConstTrue,
                    C::False => BitRule::ConstFalse,
                    C::Not(x) => BitRule::Not(at(x)),
                    C::And(l, r) => BitRule::And(at(l), at(r)),
                    C::Or(l, r) => BitRule::Or(at(l), at(r)),
                    C::Implies(l, r) => BitRule::Implies(at(l), at(r)),
                    C::Box(p, x) | C::Diamond(p, x) => {
                        let is_box = matches!(member, C::Box(..));
                        let operand = (**x).clone();
                        match p {
                            ClassicalProgram::Seq(a, b) => {
                                let inner = remodal(is_box, (**b).clone(), operand);
                                BitRule::Alias(at(&remodal(is_box, (**a).clone(), inner)))
                            }
                            ClassicalProgram::Choice(a, b) => {
                                let l = at(&remodal(is_box, (**a).clone(), operand.clone()));
                                let r = at(&remodal(is_box, (**b).clone(), operand));
                                if is_box {
                                    BitRule::And(l, r)
                                } else {
                                    BitRule::Or(l, r)
                                }
                            }
                            ClassicalProgram::Test(test) => {
                                if is_box {
                                    BitRule::Implies(at(test), at(x))
                                } else {
                                    BitRule::And(at(test), at(x))
                                }
                            }
                            ClassicalProgram::Atom(_) | ClassicalProgram::Star(_) => {
                                unreachable!("atomic and star modals are free")
                            }
                        }
                    }
                    C::Atom(_) => unreachable!("atoms are free"),
                }
            };
            rules.push(rule);
        }

        if free_count as u64 >= 63 || (1u64 << free_count) > limits.max_types {
            return Err(DecideError::ResourceLimit {
                free_bits: free_count,
                limit: limits.max_types,
            });
        }

        let mut modal = Vec::new();
        let mut atomic_boxes: HashMap<String, Vec<(usize, usize)>> = HashMap::new();
        let mut atomic_diamonds: HashMap<String, Vec<(usize, usize)>> = HashMap::new();
        let mut atom_members = Vec::new();
        for (i, member) in members.iter().enumerate() {
            use ClassicalFormula as C;
            match member {
                C::Atom(_) => atom_members.push(i),
                C::Box(p, x) | C::Diamond(p, x) => {
                    let is_box = matches!(member, C::Box(..));
                    let operand = at(x);
                    modal.push(ModalMember {
                        index: i,
                        program: p.clone(),
                        operand,
                        is_box,
                    });
                    if let ClassicalProgram::Atom(name) = p {
                        let slot = if is_box {
                            atomic_boxes.entry(name.clone()).or_default()
                        } else {
                            atomic_diamonds.entry(name.clone()).or_default()
                        };
                        slot.push((i, operand));
                    }
                }
                _ => {}
            }
        }
        let mut program_names = seed.atomic_programs();
        program_names.sort();
        program_names.dedup();

        // Enumerate the coherent types: each free assignment extends
        // uniquely through the rules; assignments breaking a star
        // unfolding equation are dropped.
        let blocks = members.len().div_ceil(64);
        let count = 1u64 << free_count;
        let mut types = Vec::new();
        for mask in 0..count {
            let mut bits = vec![0u64; blocks];
            let mut known = vec![false; members.len()];
            for i in 0..members.len() {
                resolve_bit(i, &rules, mask, &mut bits, &mut known);
            }
            let get = |i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
            let coherent = star_constraints.iter().all(|c| {
                let unfolded = if c.is_box {
                    get(c.operand) && get(c.step)
                } else {
                    get(c.operand) || get(c.step)
                };
                get(c.member) == unfolded
            });
            if coherent {
                types.push(bits);
            }
        }

        Ok(TypeSpace {
            members,
            modal,
            atomic_boxes,
            atomic_diamonds,
            atom_members,
            program_names,
            types,
        })
    }

    fn bit(&self, ty: usize, member: usize) -> bool {
        self.types[ty][member / 64] >> (member % 64) & 1 == 1
    }

    pub(super) fn type_count(&self) -> usize {
        self.types.len()
    }
}

fn resolve_bit(
    i: usize,
    rules: &[BitRule],
    free_mask: u64,
    bits: &mut [u64],
    known: &mut [bool],
) -> bool {
    if known[i] {
        return bits[i / 64] >> (i % 64) & 1 == 1;
    }
    // The dependency relation of the bit rules is well-founded: modal
    // rewrites strictly shrink the outermost program and everything else
    // recurses into subformulas, so this recursion terminates.
    let value = match rules[i] {
        BitRule::Free(k) => free_mask >> k & 1 == 1,
        BitRule::ConstTrue => true,
        BitRule::ConstFalse => false,
        BitRule::Not(a) => !resolve_bit(a, rules, free_mask, bits, known),
        BitRule::And(a, b) => {
            resolve_bit(a, rules, free_mask, bits, known)
                && resolve_bit(b, rules, free_mask, bits, known)
        }
        BitRule::Or(a, b) => {
            resolve_bit(a, rules, free_mask, bits, known)
                || resolve_bit(b, rules, free_mask, bits, known)
        }
        BitRule::Implies(a, b) => {
            !resolve_bit(a, rules, free_mask, bits, known)
                || resolve_bit(b, rules, free_mask, bits, known)
        }
        BitRule::Alias(a) => resolve_bit(a, rules, free_mask, bits, known),
    };
    known[i] = true;
    if value {
        bits[i / 64] |= 1 << (i % 64);
    }
    value
}

pub(super) struct Elimination {
    space: TypeSpace,
    alive: Vec<bool>,
}

impl Elimination {
    /// Run type elimination until no type loses a demand.
    pub(super) fn run(seed: &ClassicalFormula, limits: &SatLimits) -> Result<Elimination, DecideError> {
        let space = TypeSpace::build(seed, limits)?;
        let mut alive = vec![true; space.type_count()];
        loop {
            let survivors: Vec<usize> = (0..alive.len()).filter(|t| alive[*t]).collect();
            if survivors.is_empty() {
                break;
            }
            let graph = SurvivorGraph::new(&space, &survivors);
            let mut relations: HashMap<ClassicalProgram, Relation> = HashMap::new();
            let mut killed = Vec::new();
            for (pos, ty) in survivors.iter().enumerate() {
                let mut doomed = false;
                for demand in &space.modal {
                    let bit = space.bit(*ty, demand.index);
                    // True diamonds need a reachable witness with the
                    // operand true; false boxes need one with it false.
                    let (active, want) = if demand.is_box {
                        (!bit, false)
                    } else {
                        (bit, true)
                    };
                    if !active {
                        continue;
                    }
                    let rel = graph.relation(&demand.program, &mut relations);
                    let fulfilled = rel.row(pos).iter().any(|succ| {
                        space.bit(survivors[succ], demand.operand) == want
                    });
                    if !fulfilled {
                        doomed = true;
                        break;
                    }
                }
                if doomed {
                    killed.push(*ty);
                }
            }
            if killed.is_empty() {
                break;
            }
            for ty in killed {
                alive[ty] = false;
            }
        }
        Ok(Elimination { space, alive })
    }

    /// Lowest-index surviving type asserting the seed, if any.
    pub(super) fn witness_type(&self) -> Option<usize> {
        (0..self.alive.len()).find(|t| self.alive[*t] && self.space.bit(*t, 0))
    }

    /// Materialize the surviving types as a classical model (truth in the
    /// `plus` valuations, `minus` empty) together with the state index of
    /// the given type. The model is cut down to the part reachable from
    /// the witness and states are renamed `s0`, `s1`, ...
    pub(super) fn witness_model(&self, witness: usize) -> (Model, usize) {
        let space = &self.space;
        let survivors: Vec<usize> = (0..self.alive.len()).filter(|t| self.alive[*t]).collect();
        let mut model = Model::new(survivors.iter().map(|t| format!("t{t}")))
            .expect("a witness type survives");
        let n = survivors.len();
        for member in &space.atom_members {
            let name = space.members[*member].to_string();
            let plus = StateSet::from_indices(
                n,
                survivors
                    .iter()
                    .enumerate()
                    .filter(|(_, ty)| space.bit(**ty, *member))
                    .map(|(pos, _)| pos),
            );
            model.set_atom_sets(name, plus, StateSet::empty(n));
        }
        let graph = SurvivorGraph::new(space, &survivors);
        for name in &space.program_names {
            model.set_program_relation(name.clone(), graph.atomic_edges(name));
        }
        let witness_pos = survivors
            .iter()
            .position(|t| *t == witness)
            .expect("witness survives");
        let reachable = model.restrict_reachable(witness_pos, &space.program_names);
        let witness_name = format!("t{witness}");
        let new_index = reachable
            .state_index(&witness_name)
            .expect("witness is reachable from itself");
        (reachable.with_canonical_names(), new_index)
    }
}

/// The survivor type graph of one elimination round, with the program
/// algebra over it.
struct SurvivorGraph<'a> {
    space: &'a TypeSpace,
    survivors: &'a [usize],
}

impl<'a> SurvivorGraph<'a> {
    fn new(space: &'a TypeSpace, survivors: &'a [usize]) -> SurvivorGraph<'a> {
        SurvivorGraph { space, survivors }
    }

    /// Edge relation of an atomic program over survivor positions.
    fn atomic_edges(&self, name: &str) -> Relation {
        let n = self.survivors.len();
        let boxes = self.space.atomic_boxes.get(name);
        let diamonds = self.space.atomic_diamonds.get(name);
        let mut rel = Relation::empty(n);
        for (i, t) in self.survivors.iter().enumerate() {
            'target: for (j, u) in self.survivors.iter().enumerate() {
                if let Some(boxes) = boxes {
                    for (member, operand) in boxes {
                        if self.space.bit(*t, *member) && !self.space.bit(*u, *operand) {
                            continue 'target;
                        }
                    }
                }
                if let Some(diamonds) = diamonds {
                    for (member, operand) in diamonds {
                        if !self.space.bit(*t, *member) && self.space.bit(*u, *operand) {
                            continue 'target;
                        }
                    }
                }
                rel.insert(i, j);
            }
        }
        rel
    }

    fn relation(
        &self,
        program: &ClassicalProgram,
        memo: &mut HashMap<ClassicalProgram, Relation>,
    ) -> Relation {
        if let Some(r) = memo.get(program) {
            return r.clone();
        }
        let rel = match program {
            ClassicalProgram::Atom(name) => self.atomic_edges(name),
            ClassicalProgram::Seq(l, r) => {
                let (l, r) = (self.relation(l, memo), self.relation(r, memo));
                l.compose(&r)
            }
            ClassicalProgram::Choice(l, r) => {
                let (l, r) = (self.relation(l, memo), self.relation(r, memo));
                l.union(&r)
            }
            ClassicalProgram::Star(x) => self.relation(x, memo).rtc(),
            ClassicalProgram::Test(f) => {
                let idx = self
                    .space
                    .members
                    .iter()
                    .position(|m| m == &**f)
                    .expect("test formulas are closure members");
                let n = self.survivors.len();
                Relation::identity_on(&StateSet::from_indices(
                    n,
                    (0..n).filter(|pos| self.space.bit(self.survivors[*pos], idx)),
                ))
            }
        };
        memo.insert(program.clone(), rel.clone());
        rel
    }
}
