use std::fmt;
use std::sync::Arc;

use super::Formula;
use crate::error::{Error, Result};

/// Hard ceiling imposed by the `u64` interpretation index.
pub const MAX_UNIVERSE: usize = 63;

/// An ordered, duplicate-free set of atom names. Interpretations are
/// numbered so that the first atom is the most significant bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    atoms: Arc<[String]>,
}

impl Universe {
    pub fn new<I, S>(atoms: I) -> Result<Universe>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        for (i, a) in atoms.iter().enumerate() {
            if !super::parse::is_identifier(a) {
                return Err(Error::Invalid(format!("`{a}` is not a valid atom name")));
            }
            if atoms[..i].contains(a) {
                return Err(Error::Invalid(format!("atom `{a}` declared twice")));
            }
        }
        if atoms.len() > MAX_UNIVERSE {
            return Err(Error::CapExceeded {
                what: "atom",
                limit: MAX_UNIVERSE,
                actual: atoms.len(),
            });
        }
        Ok(Universe { atoms: atoms.into() })
    }

    /// Sorted union of the atoms occurring in `formulas`.
    pub fn of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Result<Universe> {
        let mut set = std::collections::BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut set);
        }
        Universe::new(set)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.index_of(atom).is_some()
    }

    /// Universe extended with atoms of `extra` not yet present (appended in
    /// sorted order).
    pub fn extended_with(&self, extra: &Formula) -> Result<Universe> {
        let missing: Vec<String> = extra.atoms().into_iter().filter(|a| !self.contains(a)).collect();
        if missing.is_empty() {
            return Ok(self.clone());
        }
        Universe::new(self.atoms.iter().cloned().chain(missing))
    }

    /// Number of interpretations, `2^n`.
    pub fn interpretation_count(&self) -> u64 {
        1u64 << self.len()
    }

    pub fn interpretation(&self, index: u64) -> Interpretation {
        assert!(index < self.interpretation_count(), "interpretation index out of range");
        Interpretation {
            universe: self.clone(),
            index,
        }
    }

    pub fn interpretations(&self) -> impl Iterator<Item = Interpretation> + '_ {
        (0..self.interpretation_count()).map(move |i| self.interpretation(i))
    }

    pub fn check(&self, f: &Formula) -> Result<()> {
        let mut atoms = std::collections::BTreeSet::new();
        f.collect_atoms(&mut atoms);
        match atoms.into_iter().find(|a| !self.contains(a)) {
            Some(a) => Err(Error::UnknownAtom(a)),
            None => Ok(()),
        }
    }

    fn shift(&self, atom_index: usize) -> u32 {
        (self.len() - 1 - atom_index) as u32
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.atoms.iter()).finish()
    }
}

/// A total truth assignment over a universe (one element of Ω).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interpretation {
    universe: Universe,
    index: u64,
}

impl Interpretation {
    pub fn from_values(universe: &Universe, values: &[bool]) -> Result<Interpretation> {
        if values.len() != universe.len() {
            return Err(Error::Invalid(format!(
                "expected {} truth values, got {}",
                universe.len(),
                values.len()
            )));
        }
        let index = values.iter().fold(0u64, |acc, &v| (acc << 1) | v as u64);
        Ok(universe.interpretation(index))
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Position in the enumeration of Ω (ω0, ω1, ...).
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn value(&self, atom: &str) -> Option<bool> {
        self.universe
            .index_of(atom)
            .map(|i| (self.index >> self.universe.shift(i)) & 1 == 1)
    }

    pub fn values(&self) -> Vec<(String, bool)> {
        self.universe
            .atoms()
            .iter()
            .map(|a| (a.clone(), self.value(a).unwrap()))
            .collect()
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω{}{}", self.index, self)
    }
}

/// Literal listing, e.g. `(~a, b)`.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (atom, v)) in self.values().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if !v {
                f.write_str("~")?;
            }
            f.write_str(&atom)?;
        }
        f.write_str(")")
    }
}

/// `ω ⊨ φ`. Fails when φ mentions an atom outside ω's universe.
pub fn satisfies(omega: &Interpretation, phi: &Formula) -> Result<bool> {
    Ok(Compiled::new(phi, &omega.universe)?.eval(omega.index))
}

/// A formula with atoms resolved to bit positions of an interpretation index.
#[derive(Debug, Clone)]
pub enum Compiled {
    Const(bool),
    Var(u32),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub fn new(f: &Formula, universe: &Universe) -> Result<Compiled> {
        let rec = |g: &Formula| Compiled::new(g, universe).map(Box::new);
        Ok(match f {
            Formula::Top => Compiled::Const(true),
            Formula::Bottom => Compiled::Const(false),
            Formula::Atom(name) => match universe.index_of(name) {
                Some(i) => Compiled::Var(universe.shift(i)),
                None => return Err(Error::UnknownAtom(name.clone())),
            },
            Formula::Not(inner) => Compiled::Not(rec(inner)?),
            Formula::And(children) => {
                Compiled::And(children.iter().map(|c| Compiled::new(c, universe)).collect::<Result<_>>()?)
            }
            Formula::Or(children) => {
                Compiled::Or(children.iter().map(|c| Compiled::new(c, universe)).collect::<Result<_>>()?)
            }
            Formula::Implies(l, r) => Compiled::Implies(rec(l)?, rec(r)?),
            Formula::Iff(l, r) => Compiled::Iff(rec(l)?, rec(r)?),
        })
    }

    pub fn eval(&self, index: u64) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Var(shift) => (index >> shift) & 1 == 1,
            Compiled::Not(inner) => !inner.eval(index),
            Compiled::And(children) => children.iter().all(|c| c.eval(index)),
            Compiled::Or(children) => children.iter().any(|c| c.eval(index)),
            Compiled::Implies(l, r) => !l.eval(index) || r.eval(index),
            Compiled::Iff(l, r) => l.eval(index) == r.eval(index),
        }
    }

    /// Kleene evaluation under a partial assignment: bits outside `assigned`
    /// are unknown.
    pub(crate) fn eval_partial(&self, assigned: u64, values: u64) -> Option<bool> {
        match self {
            Compiled::Const(b) => Some(*b),
            Compiled::Var(shift) => {
                if (assigned >> shift) & 1 == 1 {
                    Some((values >> shift) & 1 == 1)
                } else {
                    None
                }
            }
            Compiled::Not(inner) => inner.eval_partial(assigned, values).map(|b| !b),
            Compiled::And(children) => {
                let mut unknown = false;
                for c in children {
                    match c.eval_partial(assigned, values) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                if unknown {
                    None
                } else {
                    Some(true)
                }
            }
            Compiled::Or(children) => {
                let mut unknown = false;
                for c in children {
                    match c.eval_partial(assigned, values) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                if unknown {
                    None
                } else {
                    Some(false)
                }
            }
            Compiled::Implies(l, r) => match (l.eval_partial(assigned, values), r.eval_partial(assigned, values)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
            Compiled::Iff(l, r) => match (l.eval_partial(assigned, values), r.eval_partial(assigned, values)) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            },
        }
    }
}

/// A set of interpretations of a fixed universe, stored as a bitset indexed by
/// interpretation number.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModelSet {
    size: u64,
    words: Vec<u64>,
}

impl ModelSet {
    pub fn empty(universe: &Universe) -> ModelSet {
        let size = universe.interpretation_count();
        ModelSet {
            size,
            words: vec![0; size.div_ceil(64) as usize],
        }
    }

    pub fn full(universe: &Universe) -> ModelSet {
        let mut s = ModelSet::empty(universe);
        for i in 0..s.size {
            s.insert(i);
        }
        s
    }

    /// `Mod(φ)` within `universe`.
    pub fn of(phi: &Formula, universe: &Universe) -> Result<ModelSet> {
        let compiled = Compiled::new(phi, universe)?;
        let mut s = ModelSet::empty(universe);
        for i in 0..s.size {
            if compiled.eval(i) {
                s.insert(i);
            }
        }
        Ok(s)
    }

    pub fn insert(&mut self, index: u64) {
        self.words[(index / 64) as usize] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: u64) -> bool {
        index < self.size && self.words[(index / 64) as usize] >> (index % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ModelSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.size).filter(move |&i| self.contains(i))
    }

    /// First member not in `other`, if any.
    pub fn first_outside(&self, other: &ModelSet) -> Option<u64> {
        self.iter().find(|&i| !other.contains(i))
    }
}
