use std::collections::BTreeSet;
use std::fmt;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: String,
    pub positive: bool,
}

impl Literal {
    pub fn new(atom: impl Into<String>, positive: bool) -> Literal {
        Literal {
            atom: atom.into(),
            positive,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal::new(self.atom.clone(), !self.positive)
    }

    pub fn to_formula(&self) -> Formula {
        let a = Formula::atom(self.atom.clone());
        if self.positive {
            a
        } else {
            Formula::not(a)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        f.write_str(&self.atom)
    }
}

/// A disjunction of literals. The empty clause is `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(BTreeSet<Literal>);

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        Clause(literals.into_iter().collect())
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.0.contains(lit)
    }

    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|l| l.positive && self.0.contains(&l.complement()))
    }

    pub fn is_subset(&self, other: &Clause) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Clause) -> Clause {
        Clause(self.0.union(&other.0).cloned().collect())
    }

    pub fn without(&self, lit: &Literal) -> Clause {
        let mut c = self.clone();
        c.0.remove(lit);
        c
    }

    pub fn to_formula(&self) -> Formula {
        let mut lits: Vec<Formula> = self.0.iter().map(Literal::to_formula).collect();
        match lits.len() {
            0 => Formula::Bottom,
            1 => lits.pop().unwrap(),
            _ => Formula::Or(lits),
        }
    }

    /// Reads a formula that is syntactically a clause: a literal, `false`, or
    /// a flat disjunction of literals.
    pub fn from_formula(f: &Formula) -> Option<Clause> {
        fn literal(f: &Formula) -> Option<Literal> {
            match f {
                Formula::Atom(a) => Some(Literal::new(a.clone(), true)),
                Formula::Not(inner) => match &**inner {
                    Formula::Atom(a) => Some(Literal::new(a.clone(), false)),
                    _ => None,
                },
                _ => None,
            }
        }
        match f {
            Formula::Bottom => Some(Clause::empty()),
            Formula::Or(children) => children.iter().map(literal).collect::<Option<_>>().map(Clause),
            other => literal(other).map(|l| Clause::new([l])),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// A conjunction of clauses. The empty set is `⊤`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClauseSet(BTreeSet<Clause>);

impl ClauseSet {
    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.0.contains(c)
    }

    pub fn to_formula(&self) -> Formula {
        let mut parts: Vec<Formula> = self.0.iter().map(Clause::to_formula).collect();
        match parts.len() {
            0 => Formula::Top,
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    fn conj(mut self, other: ClauseSet) -> ClauseSet {
        self.0.extend(other.0);
        self
    }

    fn disj(self, other: ClauseSet) -> ClauseSet {
        let mut out = BTreeSet::new();
        for c in &self.0 {
            for d in &other.0 {
                let u = c.union(d);
                if !u.is_tautology() {
                    out.insert(u);
                }
            }
        }
        ClauseSet(out)
    }

    fn top() -> ClauseSet {
        ClauseSet::default()
    }

    fn bottom() -> ClauseSet {
        ClauseSet([Clause::empty()].into())
    }

    fn drop_subsumed(self) -> ClauseSet {
        let kept = self
            .0
            .iter()
            .filter(|c| !self.0.iter().any(|d| d != *c && d.is_subset(c)))
            .cloned()
            .collect();
        ClauseSet(kept)
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<T: IntoIterator<Item = Clause>>(iter: T) -> Self {
        ClauseSet(iter.into_iter().filter(|c| !c.is_tautology()).collect())
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

fn clausify(f: &Formula, positive: bool) -> ClauseSet {
    let fold = |children: &[Formula], conj: bool| {
        if conj {
            children
                .iter()
                .fold(ClauseSet::top(), |acc, c| acc.conj(clausify(c, positive)))
        } else {
            children
                .iter()
                .fold(ClauseSet::bottom(), |acc, c| acc.disj(clausify(c, positive)))
        }
    };
    match f {
        Formula::Top if positive => ClauseSet::top(),
        Formula::Top => ClauseSet::bottom(),
        Formula::Bottom if positive => ClauseSet::bottom(),
        Formula::Bottom => ClauseSet::top(),
        Formula::Atom(a) => ClauseSet([Clause::new([Literal::new(a.clone(), positive)])].into()),
        Formula::Not(inner) => clausify(inner, !positive),
        // ¬(x ∧ y) = ¬x ∨ ¬y, so polarity flips the connective.
        Formula::And(children) => fold(children, positive),
        Formula::Or(children) => fold(children, !positive),
        Formula::Implies(l, r) => {
            if positive {
                clausify(l, false).disj(clausify(r, true))
            } else {
                clausify(l, true).conj(clausify(r, false))
            }
        }
        Formula::Iff(l, r) => {
            let (lp, ln) = (clausify(l, true), clausify(l, false));
            let (rp, rn) = (clausify(r, true), clausify(r, false));
            if positive {
                ln.disj(rp).conj(lp.disj(rn))
            } else {
                lp.disj(rp).conj(ln.disj(rn))
            }
        }
    }
    .drop_subsumed()
}

/// Equivalent clausal form by distribution; no auxiliary atoms are
/// introduced. Tautological and subsumed clauses are dropped, so a
/// tautology yields the empty set.
pub fn to_cnf(phi: &Formula) -> ClauseSet {
    clausify(phi, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn clause(s: &str) -> Clause {
        Clause::from_formula(&f(s)).unwrap()
    }

    #[test]
    fn cnf_examples() {
        let iff = to_cnf(&f("a <-> b"));
        assert_eq!(iff.len(), 2);
        assert!(iff.contains(&clause("a | ~b")));
        assert!(iff.contains(&clause("~a | b")));

        assert_eq!(to_cnf(&f("~(a & b)")), [clause("~a | ~b")].into_iter().collect());
        assert!(to_cnf(&f("a | ~a")).is_empty());
        assert_eq!(to_cnf(&f("false")), ClauseSet::bottom());
        assert_eq!(to_cnf(&f("a & ~a")).len(), 2);
    }

    #[test]
    fn clause_round_trip() {
        let c = clause("~b | a");
        assert_eq!(c.len(), 2);
        assert_eq!(c.to_formula(), f("a | ~b"));
        assert_eq!(Clause::from_formula(&f("a & b")), None);
        assert_eq!(Clause::from_formula(&f("~~a")), None);
        assert_eq!(Clause::empty().to_formula(), Formula::Bottom);
        assert!(clause("a | ~a").is_tautology());
    }

    #[test]
    fn subsumed_clauses_dropped() {
        assert_eq!(to_cnf(&f("a & (a | b)")), [clause("a")].into_iter().collect());
    }
}
