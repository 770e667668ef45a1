//! Partially ordered knowledge bases and their meaning-preserving
//! preprocessing: tautology removal, subsumption removal and clausal form.

mod format;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

pub use format::{load_kb, write_kb};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::formula::{self, to_cnf, Clause, Compiled, Formula, Universe};
use crate::order::{Edge, PartialPreorder, TotalPreorder};

/// Labels: `[A-Za-z_][A-Za-z0-9_.]*`. Dots allow derived labels such as `f3.c1`.
pub fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

/// A labeled formula set `Σ` with a partial pre-order over its labels.
///
/// Element `i` of [`order`](Self::order) is the entry `labels()[i]`.
#[derive(Clone)]
pub struct PartiallyOrderedKb {
    universe: Universe,
    formulas: Vec<Formula>,
    compiled: Vec<Compiled>,
    order: PartialPreorder,
}

impl PartiallyOrderedKb {
    /// `universe` defaults to the sorted atoms of the formulas.
    pub fn new(universe: Option<Universe>, entries: Vec<(String, Formula)>, edges: &[Edge]) -> Result<Self> {
        let (labels, formulas): (Vec<String>, Vec<Formula>) = entries.into_iter().unzip();
        let order = PartialPreorder::build(labels, edges)?;
        Self::from_parts(universe, formulas, order)
    }

    pub fn from_parts(universe: Option<Universe>, formulas: Vec<Formula>, order: PartialPreorder) -> Result<Self> {
        if formulas.len() != order.len() {
            return Err(Error::Invalid(format!(
                "{} formulas but {} ordered labels",
                formulas.len(),
                order.len()
            )));
        }
        if let Some(bad) = order.names().iter().find(|l| !is_label(l)) {
            return Err(Error::Invalid(format!("`{bad}` is not a valid label")));
        }
        let universe = match universe {
            Some(u) => u,
            None => Universe::of(&formulas)?,
        };
        let mut seen: Vec<(&Formula, usize)> = Vec::with_capacity(formulas.len());
        for (i, f) in formulas.iter().enumerate() {
            if let Some(&(_, j)) = seen.iter().find(|(g, _)| *g == f) {
                return Err(Error::DuplicateFormula {
                    first: order.name(j).to_string(),
                    second: order.name(i).to_string(),
                    formula: f.to_string(),
                });
            }
            seen.push((f, i));
        }
        let compiled = formulas
            .iter()
            .map(|f| Compiled::new(f, &universe))
            .collect::<Result<_>>()?;
        Ok(PartiallyOrderedKb {
            universe,
            formulas,
            compiled,
            order,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        self.order.names()
    }

    pub fn label(&self, i: usize) -> &str {
        self.order.name(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.order.index_of(label)
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub(crate) fn compiled(&self, i: usize) -> &Compiled {
        &self.compiled[i]
    }

    pub fn order(&self) -> &PartialPreorder {
        &self.order
    }

    pub fn all(&self) -> ElemSet {
        self.order.all()
    }

    /// Label set → index set. Unknown labels are an error.
    pub fn subset(&self, labels: &[&str]) -> Result<ElemSet> {
        labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::UnknownElement(l.to_string())))
            .collect()
    }

    /// Sorted labels of a subset.
    pub fn labels_of(&self, s: ElemSet) -> Vec<String> {
        let mut out: Vec<String> = s.iter().map(|i| self.label(i).to_string()).collect();
        out.sort();
        out
    }

    pub fn formulas_of(&self, s: ElemSet) -> Vec<Formula> {
        s.iter().map(|i| self.formulas[i].clone()).collect()
    }

    /// Classical consistency of the formulas in `s`.
    pub fn consistent(&self, s: ElemSet) -> bool {
        let refs: Vec<&Compiled> = s.iter().map(|i| &self.compiled[i]).collect();
        formula::consistent_compiled(&refs, self.universe.len())
    }

    /// Classical consistency of the formulas in `s` together with `extra`.
    pub(crate) fn consistent_with(&self, s: ElemSet, extra: &Compiled) -> bool {
        let mut refs: Vec<&Compiled> = s.iter().map(|i| &self.compiled[i]).collect();
        refs.push(extra);
        formula::consistent_compiled(&refs, self.universe.len())
    }

    /// `s ⊢ psi`; psi must be over the universe.
    pub fn subset_entails(&self, s: ElemSet, psi: &Formula) -> Result<bool> {
        let neg = Compiled::new(&Formula::not(psi.clone()), &self.universe)?;
        Ok(!self.consistent_with(s, &neg))
    }

    /// Checks that `psi` only uses atoms of the universe.
    pub fn check_query(&self, psi: &Formula) -> Result<()> {
        self.universe.check(psi)
    }

    /// The sub-base on `keep`, with the order restricted. Indices are
    /// renumbered in increasing order.
    pub fn restrict(&self, keep: ElemSet) -> PartiallyOrderedKb {
        PartiallyOrderedKb {
            universe: self.universe.clone(),
            formulas: keep.iter().map(|i| self.formulas[i].clone()).collect(),
            compiled: keep.iter().map(|i| self.compiled[i].clone()).collect(),
            order: self.order.restrict(keep),
        }
    }

    /// Same formulas under another order over the same labels.
    pub fn with_order(&self, order: PartialPreorder) -> Result<PartiallyOrderedKb> {
        if order.names() != self.labels() {
            return Err(Error::Invalid("replacement order ranges over different labels".into()));
        }
        Ok(PartiallyOrderedKb {
            order,
            ..self.clone()
        })
    }

    /// The totally ordered base given by one compatible extension.
    pub fn with_total_order(&self, total: &TotalPreorder<usize>) -> Result<PartiallyOrderedKb> {
        self.with_order(total.to_partial(self.labels())?)
    }

    /// `Pref(φ) = {ψ ∈ Σ : ψ ≺ φ}`.
    pub fn pref_set(&self, label: &str) -> Result<ElemSet> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))?;
        Ok(self.order.strictly_above(i))
    }

    pub fn remove_tautologies(&self) -> PartiallyOrderedKb {
        let keep = (0..self.len()).filter(|&i| !formula::is_tautology(&self.formulas[i])).collect();
        self.restrict(keep)
    }

    /// Formulas entailed by the formulas strictly preferred to them.
    pub fn subsumed(&self) -> ElemSet {
        (0..self.len())
            .filter(|&i| {
                let pref = self.order.strictly_above(i);
                let neg = Compiled::Not(Box::new(self.compiled[i].clone()));
                !self.consistent_with(pref, &neg)
            })
            .collect()
    }

    /// One pass of subsumption removal: `Sub` is computed against this base,
    /// then removed all at once.
    pub fn remove_subsumed(&self) -> PartiallyOrderedKb {
        self.restrict(self.all().difference(self.subsumed()))
    }

    /// Repeats [`remove_subsumed`](Self::remove_subsumed) until nothing changes.
    pub fn remove_subsumed_fixpoint(&self) -> PartiallyOrderedKb {
        let mut kb = self.clone();
        loop {
            let sub = kb.subsumed();
            if sub.is_empty() {
                return kb;
            }
            kb = kb.restrict(kb.all().difference(sub));
        }
    }

    /// Replaces every formula by its clauses. Clauses of one formula are
    /// mutually equivalent in the new order and inherit every relation their
    /// source had with other formulas; formulas with an empty clausal form
    /// (tautologies) disappear.
    ///
    /// A formula with several clauses gets labels `<label>.c1`, `<label>.c2`,
    /// ...; a single clause keeps its label. A clause that already occurs is
    /// written with its last literal repeated so the entries stay
    /// syntactically distinct.
    pub fn cnf_transform(&self) -> Result<PartiallyOrderedKb> {
        let mut taken: HashSet<String> = self.labels().iter().cloned().collect();
        let mut used: BTreeSet<Formula> = BTreeSet::new();
        let mut labels = Vec::new();
        let mut formulas = Vec::new();
        let mut source = Vec::new();
        for (i, f) in self.formulas.iter().enumerate() {
            let clauses: Vec<Clause> = to_cnf(f).clauses().cloned().collect();
            for (k, c) in clauses.iter().enumerate() {
                let label = if clauses.len() == 1 {
                    self.label(i).to_string()
                } else {
                    let mut l = format!("{}.c{}", self.label(i), k + 1);
                    while taken.contains(&l) {
                        l.push('_');
                    }
                    taken.insert(l.clone());
                    l
                };
                let mut g = c.to_formula();
                let mut repeat = 1;
                while used.contains(&g) {
                    g = padded_clause(c, repeat);
                    repeat += 1;
                }
                used.insert(g.clone());
                labels.push(label);
                formulas.push(g);
                source.push(i);
            }
        }
        let order = PartialPreorder::from_fn(labels, |x, y| {
            source[x] == source[y] || self.order.leq(source[x], source[y])
        })?;
        Self::from_parts(Some(self.universe.clone()), formulas, order)
    }

    pub fn is_clausal(&self) -> bool {
        self.formulas.iter().all(|f| Clause::from_formula(f).is_some())
    }
}

/// `c` as a disjunction with its last literal written `extra` more times.
fn padded_clause(c: &Clause, extra: usize) -> Formula {
    let mut parts: Vec<Formula> = c.literals().map(|l| l.to_formula()).collect();
    let last = parts.last().cloned().unwrap_or(Formula::Bottom);
    if parts.is_empty() {
        parts.push(Formula::Bottom);
    }
    parts.extend(std::iter::repeat_n(last, extra));
    Formula::Or(parts)
}

impl fmt::Debug for PartiallyOrderedKb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_kb(self))
    }
}

/// Two bases are equal when they have the same universe, the same labeled
/// formulas and the same order, regardless of entry order.
impl PartialEq for PartiallyOrderedKb {
    fn eq(&self, other: &Self) -> bool {
        if self.universe != other.universe || self.len() != other.len() {
            return false;
        }
        let map: Option<Vec<usize>> = (0..self.len()).map(|i| other.index_of(self.label(i))).collect();
        let Some(map) = map else { return false };
        (0..self.len()).all(|i| self.formulas[i] == other.formulas[map[i]])
            && (0..self.len()).all(|i| (0..self.len()).all(|j| self.order.leq(i, j) == other.order.leq(map[i], map[j])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Relation;

    pub(crate) const EX1: &str = "atoms a b\nf1: ~a\nf2: a\nf3: ~b\nf4: b\norder f2 < f3\norder f4 < f1\n";

    fn ex1() -> PartiallyOrderedKb {
        load_kb(EX1).unwrap()
    }

    fn set(kb: &PartiallyOrderedKb, labels: &[&str]) -> ElemSet {
        kb.subset(labels).unwrap()
    }

    #[test]
    fn tautologies_removed() {
        let kb = load_kb(&format!("{EX1}f5: a | ~a\norder f2 < f5\n")).unwrap();
        assert_eq!(kb.remove_tautologies(), ex1());
        assert_eq!(ex1().remove_tautologies(), ex1());
        let only = load_kb("x: a | ~a\ny: b -> b\n").unwrap();
        assert!(only.remove_tautologies().is_empty());
    }

    #[test]
    fn pref_sets() {
        let kb = ex1();
        assert_eq!(kb.pref_set("f3").unwrap(), set(&kb, &["f2"]));
        assert_eq!(kb.pref_set("f2").unwrap(), ElemSet::EMPTY);
        let chain = load_kb("x: a\ny: b\nz: c\norder x < y\norder y < z\n").unwrap();
        assert_eq!(chain.pref_set("z").unwrap(), set(&chain, &["x", "y"]));
        assert!(matches!(kb.pref_set("nope"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn subsumption() {
        let kb = load_kb("x: a\ny: a | b\norder x < y\n").unwrap();
        let out = kb.remove_subsumed();
        assert_eq!(out.labels(), ["x"]);
        assert_eq!(ex1().remove_subsumed(), ex1());
        let flat = load_kb("x: a\ny: a | b\nz: b\n").unwrap();
        assert_eq!(flat.remove_subsumed(), flat);
    }

    #[test]
    fn subsumption_is_single_pass() {
        // z is subsumed by {x, y}; y is subsumed by x. One pass removes both,
        // since Sub is computed on the original base.
        let kb = load_kb("x: a\ny: a | b\nz: a | b | c\norder x < y\norder y < z\n").unwrap();
        assert_eq!(kb.remove_subsumed().labels(), ["x"]);
        // Pref sets only shrink, so a second pass never finds anything new.
        assert_eq!(kb.remove_subsumed_fixpoint().labels(), ["x"]);
    }

    #[test]
    fn cnf_transform_splits_and_inherits() {
        let kb = load_kb("x: a <-> b\ny: c\norder x < y\n").unwrap();
        let out = kb.cnf_transform().unwrap();
        assert_eq!(out.labels(), ["x.c1", "x.c2", "y"]);
        let forms: Vec<String> = out.formulas().iter().map(|f| f.to_string()).collect();
        assert!(forms.contains(&"a | ~b".to_string()));
        assert!(forms.contains(&"~a | b".to_string()));
        let o = out.order();
        assert_eq!(o.relate(0, 1), Relation::Equivalent);
        assert_eq!(o.relate(0, 2), Relation::FirstPreferred);
        assert_eq!(o.relate(1, 2), Relation::FirstPreferred);
        assert!(out.is_clausal());
    }

    #[test]
    fn cnf_transform_of_clausal_base_is_isomorphic() {
        assert_eq!(ex1().cnf_transform().unwrap(), ex1());
    }

    #[test]
    fn cnf_transform_drops_tautologies() {
        let kb = load_kb("x: a | ~a\ny: b\n").unwrap();
        let out = kb.cnf_transform().unwrap();
        assert_eq!(out.labels(), ["y"]);
    }

    #[test]
    fn cnf_transform_keeps_shared_clauses_apart() {
        let kb = load_kb("x: a & b\ny: a\norder y < x\n").unwrap();
        let out = kb.cnf_transform().unwrap();
        assert_eq!(out.len(), 3);
        let y = out.index_of("y").unwrap();
        let xa = out.index_of("x.c1").unwrap();
        assert_eq!(out.formula(xa).to_string(), "a");
        assert_eq!(out.formula(y).to_string(), "a | a");
        assert_eq!(Clause::from_formula(out.formula(y)), Clause::from_formula(out.formula(xa)));
        assert!(out.order().strict(y, xa));
    }

    #[test]
    fn construction_rejects_duplicates_and_bad_orders() {
        let err = PartiallyOrderedKb::new(
            None,
            vec![("f1".into(), Formula::atom("a")), ("f2".into(), Formula::atom("a"))],
            &[],
        );
        assert!(matches!(err, Err(Error::DuplicateFormula { .. })));
        let err = PartiallyOrderedKb::new(None, vec![("1x".into(), Formula::atom("a"))], &[]);
        assert!(err.is_err());
        let u = Universe::new(["a"]).unwrap();
        let err = PartiallyOrderedKb::new(Some(u), vec![("f".into(), Formula::atom("b"))], &[]);
        assert_eq!(err.err(), Some(Error::UnknownAtom("b".into())));
    }

    #[test]
    fn subset_queries() {
        let kb = ex1();
        assert!(!kb.consistent(kb.all()));
        assert!(kb.consistent(set(&kb, &["f2", "f4"])));
        assert!(kb.subset_entails(set(&kb, &["f2"]), &"a | b".parse().unwrap()).unwrap());
        assert!(kb.subset_entails(ElemSet::EMPTY, &"a | b".parse().unwrap()).is_ok());
        assert!(kb.subset_entails(ElemSet::EMPTY, &"z".parse().unwrap()).is_err());
        assert_eq!(kb.labels_of(set(&kb, &["f4", "f2"])), ["f2", "f4"]);
    }
}
