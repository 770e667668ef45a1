//! Inference from preferred consistent sub-bases: `Cons`, the ⊆-minimal
//! kernels `Ker`, and a recursive search that finds `Ker` without listing
//! every consistent subset.

use crate::elemset::ElemSet;
use crate::error::Result;
use crate::formula::{Compiled, Formula};
use crate::kb::PartiallyOrderedKb;
use crate::limits::Limits;
use crate::semantics::set_pref;

/// A sub-base, as a set of formula indices of its base.
pub type Subbase = ElemSet;

/// Every consistent subset of `Σ`, the empty one included, in increasing
/// bitmask order.
pub fn consistent_subsets(kb: &PartiallyOrderedKb) -> Result<Vec<Subbase>> {
    consistent_subsets_with(kb, &Limits::default())
}

pub fn consistent_subsets_with(kb: &PartiallyOrderedKb, limits: &Limits) -> Result<Vec<Subbase>> {
    limits.check_formulas(kb.len())?;
    // Supersets of an inconsistent set are inconsistent, so only
    // consistent sets are extended.
    let mut out = Vec::new();
    let mut stack = vec![(ElemSet::EMPTY, 0usize)];
    while let Some((s, next)) = stack.pop() {
        out.push(s);
        for i in next..kb.len() {
            let t = s.with(i);
            if kb.consistent(t) {
                stack.push((t, i + 1));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `C1 ⊲C C2`: what `C1` leaves out is less important than what `C2`
/// leaves out.
pub fn subset_pref(c1: Subbase, c2: Subbase, kb: &PartiallyOrderedKb) -> bool {
    let all = kb.all();
    set_pref(all.difference(c2), all.difference(c1), kb.order())
}

/// `Cons`: the `⊲C`-minimal consistent subsets.
pub fn compute_cons(kb: &PartiallyOrderedKb) -> Result<Vec<Subbase>> {
    compute_cons_with(kb, &Limits::default())
}

pub fn compute_cons_with(kb: &PartiallyOrderedKb, limits: &Limits) -> Result<Vec<Subbase>> {
    let subsets = consistent_subsets_with(kb, limits)?;
    Ok(subsets
        .iter()
        .copied()
        .filter(|&c| !subsets.iter().any(|&d| subset_pref(d, c, kb)))
        .collect())
}

/// `(Σ, ⊲C) ⊢ ψ`: every member of `Cons` entails `ψ`.
pub fn entails_cons(kb: &PartiallyOrderedKb, psi: &Formula) -> Result<bool> {
    kb.check_query(psi)?;
    Ok(first_non_entailing(kb, &compute_cons(kb)?, psi)?.is_none())
}

/// The first of `sets` that does not entail `psi`.
pub fn first_non_entailing(kb: &PartiallyOrderedKb, sets: &[Subbase], psi: &Formula) -> Result<Option<Subbase>> {
    let neg = Compiled::new(&Formula::not(psi.clone()), kb.universe())?;
    Ok(sets.iter().copied().find(|&s| kb.consistent_with(s, &neg)))
}

/// Each member's strictly preferred formulas are members too.
pub fn is_rooted(c: Subbase, kb: &PartiallyOrderedKb) -> bool {
    c.iter().all(|x| kb.order().strictly_above(x).is_subset(c))
}

/// `C ∪ Min(Σ ∖ C)` is inconsistent: `C` cannot be grown by any of the most
/// preferred formulas it leaves out.
pub fn blocked_by_minimal_rest(c: Subbase, kb: &PartiallyOrderedKb) -> bool {
    let rest = kb.all().difference(c);
    !kb.consistent(c.union(kb.order().min_set(rest)))
}

/// `Ker`: the ⊆-minimal members of `Cons`, computed from the definition.
pub fn ker_bruteforce(kb: &PartiallyOrderedKb) -> Result<Vec<Subbase>> {
    ker_bruteforce_with(kb, &Limits::default())
}

pub fn ker_bruteforce_with(kb: &PartiallyOrderedKb, limits: &Limits) -> Result<Vec<Subbase>> {
    Ok(subset_minimal(&compute_cons_with(kb, limits)?))
}

fn subset_minimal(sets: &[Subbase]) -> Vec<Subbase> {
    sets.iter()
        .copied()
        .filter(|&c| !sets.iter().any(|&d| d.is_proper_subset(c)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KerResult {
    /// Sorted by bitmask.
    pub kernels: Vec<Subbase>,
    /// Consistency tests made while exploring rooted sets.
    pub branch_consistency_tests: usize,
    /// The up-front test of `Σ` itself.
    pub init_consistency_tests: usize,
}

impl KerResult {
    pub fn total_consistency_tests(&self) -> usize {
        self.branch_consistency_tests + self.init_consistency_tests
    }
}

struct KerSearch<'a> {
    kb: &'a PartiallyOrderedKb,
    kernels: Vec<Subbase>,
    tests: usize,
}

impl KerSearch<'_> {
    /// Grows the rooted set `current` from `sigma`, the formulas still
    /// allowed. `min_back` holds the classes already explored at shallower
    /// levels: they were minimal there, so they still count when deciding
    /// whether `current` can grow.
    fn build(&mut self, mut sigma: ElemSet, current: ElemSet, mut min_back: ElemSet) {
        let order = self.kb.order();
        let mut m = order.min_set(sigma.difference(current));
        if m.is_empty() {
            return;
        }
        self.tests += 1;
        if !self.kb.consistent(current.union(m).union(min_back)) {
            self.kernels.retain(|k| !current.is_proper_subset(*k));
            self.kernels.push(current);
            return;
        }
        while let Some(mi) = m.first() {
            let class = order.class_of(mi).intersection(m);
            let grown = current.union(class);
            if !self.kernels.iter().any(|k| k.is_subset(grown)) {
                self.build(sigma.difference(class), grown, min_back);
            }
            // Later sets leave this class out, so for rootedness they must
            // also leave out everything it is strictly preferred to.
            sigma = sigma.difference(class).difference(order.strictly_below(mi));
            min_back = min_back.union(class);
            m = m.difference(class);
        }
    }
}

/// `Ker` by recursive search over rooted consistent sets.
pub fn build_ker(kb: &PartiallyOrderedKb) -> KerResult {
    if kb.consistent(kb.all()) {
        return KerResult {
            kernels: vec![kb.all()],
            branch_consistency_tests: 0,
            init_consistency_tests: 1,
        };
    }
    let mut search = KerSearch {
        kb,
        kernels: Vec::new(),
        tests: 0,
    };
    search.build(kb.all(), ElemSet::EMPTY, ElemSet::EMPTY);
    let mut kernels = search.kernels;
    kernels.sort();
    kernels.dedup();
    KerResult {
        kernels,
        branch_consistency_tests: search.tests,
        init_consistency_tests: 1,
    }
}

/// `(Σ, ⪯Σ) ⊢ ψ` through the kernels: every kernel entails `ψ`.
pub fn entails_ker(kb: &PartiallyOrderedKb, psi: &Formula) -> Result<bool> {
    kb.check_query(psi)?;
    Ok(first_non_entailing(kb, &build_ker(kb).kernels, psi)?.is_none())
}
