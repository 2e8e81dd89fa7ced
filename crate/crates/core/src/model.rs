//! Finite models with dual valuations and the relation algebra
//! interpreting programs.
//!
//! A model is a non-empty, ordered list of named states, a binary relation
//! per atomic program, and two valuations per atomic formula: `plus` (the
//! states where the atom is true) and `minus` (the states where it is
//! false). The two sets are independent: they may overlap, and their union
//! may not cover the state space.
//!
//! State sets and relations are stored as bit matrices. Relations on
//! compound programs are computed exactly: composition for `;`, union for
//! `+`, reflexive transitive closure for `*`, and the identity on the
//! truth set for tests.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eval::Session;
use crate::syntax::Program;

/// Subset of the state indices `0..n` of some model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    n: usize,
    blocks: Vec<u64>,
}

impl StateSet {
    pub fn empty(n: usize) -> StateSet {
        StateSet {
            n,
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> StateSet {
        let mut s = StateSet::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> StateSet {
        let mut s = StateSet::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe_len(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "state index {i} out of bounds for {}", self.n);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.blocks[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|b| *b == 0)
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        assert_eq!(self.n, other.n);
        StateSet {
            n: self.n,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        assert_eq!(self.n, other.n);
        StateSet {
            n: self.n,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn complement(&self) -> StateSet {
        let mut out = StateSet {
            n: self.n,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        out.clear_tail();
        out
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        assert_eq!(self.n, other.n);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        assert_eq!(self.n, other.n);
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|i| self.contains(*i))
    }

    fn union_in_place(&mut self, other: &StateSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    fn clear_tail(&mut self) {
        let tail = self.n % 64;
        if tail != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1 << tail) - 1;
            }
        }
    }
}

/// Binary relation on the state indices of some model, stored row-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: Vec<StateSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            n,
            rows: vec![StateSet::empty(n); n],
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation::identity_on(&StateSet::full(n))
    }

    /// Identity relation restricted to `set`.
    pub fn identity_on(set: &StateSet) -> Relation {
        let n = set.universe_len();
        let mut r = Relation::empty(n);
        for i in set.iter() {
            r.insert(i, i);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn universe_len(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.n, "state index {x} out of bounds for {}", self.n);
        self.rows[x].insert(y);
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.n && self.rows[x].contains(y)
    }

    /// Successor set of `x`.
    pub fn row(&self, x: usize) -> &StateSet {
        &self.rows[x]
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in self.rows[x].iter() {
                out.push((x, y));
            }
        }
        out
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.union(b))
                .collect(),
        }
    }

    /// Relational composition: `(x, z)` iff some `y` has `self(x, y)` and
    /// `other(y, z)`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut out = Relation::empty(self.n);
        for x in 0..self.n {
            for y in self.rows[x].iter() {
                out.rows[x].union_in_place(&other.rows[y]);
            }
        }
        out
    }

    /// Reflexive transitive closure, computed exactly by a Warshall-style
    /// row sweep. Idempotent.
    pub fn rtc(&self) -> Relation {
        let mut out = self.union(&Relation::identity(self.n));
        for k in 0..self.n {
            let row_k = out.rows[k].clone();
            for i in 0..self.n {
                if out.rows[i].contains(k) {
                    out.rows[i].union_in_place(&row_k);
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.contains(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        for x in 0..self.n {
            for y in self.rows[x].iter() {
                if !self.rows[y].is_subset(&self.rows[x]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Reflexive transitive closure of a relation.
pub fn rtc(r: &Relation) -> Relation {
    r.rtc()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct AtomValuation {
    pub plus: StateSet,
    pub minus: StateSet,
}

/// A finite model: named states, one relation per atomic program, and dual
/// valuations per atomic formula. Atoms and programs not mentioned default
/// to empty valuations and the empty relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    states: Vec<String>,
    atoms: BTreeMap<String, AtomValuation>,
    programs: BTreeMap<String, Relation>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("model JSON: {0}")]
    Json(String),
    #[error("model has an empty state list")]
    EmptyStates,
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{state}` referenced by {context}")]
    UnknownState { context: String, state: String },
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    states: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    atoms: BTreeMap<String, RawAtom>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    programs: BTreeMap<String, Vec<(String, String)>>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    plus: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    minus: Vec<String>,
}

impl Model {
    /// A model with the given states and no atoms or programs.
    pub fn new(
        states: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Model, FormatError> {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(FormatError::EmptyStates);
        }
        for (i, name) in states.iter().enumerate() {
            if states[..i].contains(name) {
                return Err(FormatError::DuplicateState(name.clone()));
            }
        }
        Ok(Model {
            states,
            atoms: BTreeMap::new(),
            programs: BTreeMap::new(),
        })
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// Set both valuations of an atom. Indices must be in bounds.
    pub fn set_atom(&mut self, name: impl Into<String>, plus: &[usize], minus: &[usize]) {
        let n = self.n_states();
        self.atoms.insert(
            name.into(),
            AtomValuation {
                plus: StateSet::from_indices(n, plus.iter().copied()),
                minus: StateSet::from_indices(n, minus.iter().copied()),
            },
        );
    }

    /// Set the relation of an atomic program.
    pub fn set_program(&mut self, name: impl Into<String>, pairs: &[(usize, usize)]) {
        let n = self.n_states();
        self.programs
            .insert(name.into(), Relation::from_pairs(n, pairs.iter().copied()));
    }

    pub(crate) fn set_atom_sets(&mut self, name: impl Into<String>, plus: StateSet, minus: StateSet) {
        self.atoms.insert(name.into(), AtomValuation { plus, minus });
    }

    pub(crate) fn set_program_relation(&mut self, name: impl Into<String>, rel: Relation) {
        self.programs.insert(name.into(), rel);
    }

    /// `V+` of an atom; empty for unmentioned atoms.
    pub fn val_plus(&self, atom: &str) -> StateSet {
        self.atoms
            .get(atom)
            .map(|v| v.plus.clone())
            .unwrap_or_else(|| StateSet::empty(self.n_states()))
    }

    /// `V-` of an atom; empty for unmentioned atoms.
    pub fn val_minus(&self, atom: &str) -> StateSet {
        self.atoms
            .get(atom)
            .map(|v| v.minus.clone())
            .unwrap_or_else(|| StateSet::empty(self.n_states()))
    }

    pub fn atom_names(&self) -> impl Iterator<Item = &str> {
        self.atoms.keys().map(String::as_str)
    }

    pub fn program_names(&self) -> impl Iterator<Item = &str> {
        self.programs.keys().map(String::as_str)
    }

    /// Relation of an atomic program; empty for unmentioned programs.
    pub fn atomic_relation(&self, name: &str) -> Relation {
        self.programs
            .get(name)
            .cloned()
            .unwrap_or_else(|| Relation::empty(self.n_states()))
    }

    /// Relation of an arbitrary program, computed by the standard clauses.
    /// Tests evaluate their formula in this model. One-shot; use a
    /// [`Session`] to share work across several queries.
    pub fn relation_of(&self, program: &Program) -> Relation {
        Session::new(self).relation(program)
    }

    /// Submodel on the states reachable from `x` under the reflexive
    /// transitive closure of the union of the named atomic programs.
    /// Retained states keep their names and relative order.
    pub fn restrict_reachable(&self, x: usize, progs: &[String]) -> Model {
        let n = self.n_states();
        let mut union = Relation::empty(n);
        for name in progs {
            union = union.union(&self.atomic_relation(name));
        }
        let reach = union.rtc();
        let keep: Vec<usize> = (0..n).filter(|y| reach.contains(x, *y)).collect();
        self.restrict_to(&keep)
    }

    /// Submodel on the given (sorted, non-empty) index set.
    pub(crate) fn restrict_to(&self, keep: &[usize]) -> Model {
        let mut renumber = vec![None; self.n_states()];
        for (new, old) in keep.iter().enumerate() {
            renumber[*old] = Some(new);
        }
        let m = keep.len();
        let mut out = Model {
            states: keep.iter().map(|i| self.states[*i].clone()).collect(),
            atoms: BTreeMap::new(),
            programs: BTreeMap::new(),
        };
        for (name, val) in &self.atoms {
            let plus = StateSet::from_indices(m, keep.iter().enumerate().filter_map(|(new, old)| {
                val.plus.contains(*old).then_some(new)
            }));
            let minus = StateSet::from_indices(m, keep.iter().enumerate().filter_map(|(new, old)| {
                val.minus.contains(*old).then_some(new)
            }));
            out.atoms.insert(name.clone(), AtomValuation { plus, minus });
        }
        for (name, rel) in &self.programs {
            let mut r = Relation::empty(m);
            for (x, y) in rel.pairs() {
                if let (Some(nx), Some(ny)) = (renumber[x], renumber[y]) {
                    r.insert(nx, ny);
                }
            }
            out.programs.insert(name.clone(), r);
        }
        out
    }

    /// Rename all states to `s0`, `s1`, ... in index order.
    pub(crate) fn with_canonical_names(&self) -> Model {
        let mut out = self.clone();
        out.states = (0..self.n_states()).map(|i| format!("s{i}")).collect();
        out
    }

    /// Decode a model from its JSON file format.
    pub fn from_json(text: &str) -> Result<Model, FormatError> {
        let raw: RawModel =
            serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        let mut model = Model::new(raw.states)?;
        let positions: HashMap<String, usize> = model
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let index = move |context: &str, state: &str| -> Result<usize, FormatError> {
            positions
                .get(state)
                .copied()
                .ok_or_else(|| FormatError::UnknownState {
                    context: context.to_string(),
                    state: state.to_string(),
                })
        };
        for (name, val) in &raw.atoms {
            let context = format!("atom `{name}`");
            let mut plus = Vec::new();
            for s in &val.plus {
                plus.push(index(&context, s)?);
            }
            let mut minus = Vec::new();
            for s in &val.minus {
                minus.push(index(&context, s)?);
            }
            model.set_atom(name.clone(), &plus, &minus);
        }
        for (name, pairs) in &raw.programs {
            let context = format!("program `{name}`");
            let mut resolved = Vec::new();
            for (x, y) in pairs {
                resolved.push((index(&context, x)?, index(&context, y)?));
            }
            model.set_program(name.clone(), &resolved);
        }
        Ok(model)
    }

    /// Encode to the JSON file format. Deterministic: states keep index
    /// order, map keys are sorted, relation pairs are in row-major order,
    /// and empty valuations and relations are omitted.
    pub fn to_json(&self) -> String {
        let raw = RawModel {
            states: self.states.clone(),
            atoms: self
                .atoms
                .iter()
                .filter(|(_, v)| !v.plus.is_empty() || !v.minus.is_empty())
                .map(|(name, v)| {
                    (
                        name.clone(),
                        RawAtom {
                            plus: v.plus.iter().map(|i| self.states[i].clone()).collect(),
                            minus: v.minus.iter().map(|i| self.states[i].clone()).collect(),
                        },
                    )
                })
                .collect(),
            programs: self
                .programs
                .iter()
                .filter(|(_, r)| !r.pairs().is_empty())
                .map(|(name, r)| {
                    (
                        name.clone(),
                        r.pairs()
                            .into_iter()
                            .map(|(x, y)| (self.states[x].clone(), self.states[y].clone()))
                            .collect(),
                    )
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("model serialization cannot fail")
    }
}

impl fmt::Display for Model {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.to_json())
    }
}

/// Decode a model from the JSON file format, validating all invariants.
pub fn load_model(text: &str) -> Result<Model, FormatError> {
    Model::from_json(text)
}
