//! Inference from the strict order `⊲Ω` on interpretations: `ω ⊲Ω ω'` iff
//! the formulas `ω'` falsifies are preferred (in the sense of [`set_pref`])
//! to those `ω` falsifies. A formula follows when it holds in every
//! `⊲Ω`-minimal interpretation.

use std::collections::BTreeMap;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::formula::{Formula, Interpretation, ModelSet};
use crate::kb::PartiallyOrderedKb;
use crate::limits::Limits;
use crate::order::PartialPreorder;

fn same_universe(kb: &PartiallyOrderedKb, omega: &Interpretation) -> Result<()> {
    if omega.universe() != kb.universe() {
        return Err(Error::Invalid(format!(
            "interpretation over {:?}, base over {:?}",
            omega.universe(),
            kb.universe()
        )));
    }
    Ok(())
}

/// `{φ ∈ Σ : ω ⊭ φ}`
pub fn falsified(kb: &PartiallyOrderedKb, omega: &Interpretation) -> Result<ElemSet> {
    same_universe(kb, omega)?;
    Ok(falsified_by_index(kb, omega.index()))
}

fn falsified_by_index(kb: &PartiallyOrderedKb, index: u64) -> ElemSet {
    (0..kb.len()).filter(|&i| !kb.compiled(i).eval(index)).collect()
}

/// `[ω, Σ]`: the `≺`-minimal formulas falsified by `ω`.
pub fn falsified_min(kb: &PartiallyOrderedKb, omega: &Interpretation) -> Result<ElemSet> {
    Ok(kb.order().min_set(falsified(kb, omega)?))
}

/// `X ⊲ Y`: every minimal element of `Y` is strictly dominated by some
/// minimal element of `X`.
///
/// Empty sets: `∅ ⊲ ∅` is false, `X ⊲ ∅` is true for nonempty `X`, and
/// `∅ ⊲ Y` is false for nonempty `Y`.
pub fn set_pref(x: ElemSet, y: ElemSet, order: &PartialPreorder) -> bool {
    if x.is_empty() && y.is_empty() {
        return false;
    }
    let min_x = order.min_set(x);
    order
        .min_set(y)
        .iter()
        .all(|b| min_x.iter().any(|a| order.strict(a, b)))
}

/// `ω ⊲Ω ω'`, i.e. `[ω', Σ] ⊲ [ω, Σ]`.
pub fn interp_pref(kb: &PartiallyOrderedKb, omega: &Interpretation, omega_prime: &Interpretation) -> Result<bool> {
    Ok(set_pref(
        falsified_min(kb, omega_prime)?,
        falsified_min(kb, omega)?,
        kb.order(),
    ))
}

/// `ω ⊲'Ω ω'` iff some formula falsified by `ω'` is strictly preferred to
/// every formula falsified by `ω`.
pub fn alt_pref(kb: &PartiallyOrderedKb, omega: &Interpretation, omega_prime: &Interpretation) -> Result<bool> {
    Ok(alt_set_pref(falsified(kb, omega_prime)?, falsified(kb, omega)?, kb.order()))
}

fn alt_set_pref(worse: ElemSet, better: ElemSet, order: &PartialPreorder) -> bool {
    worse
        .iter()
        .any(|p| better.iter().all(|q| order.strict(p, q)))
}

/// Interpretations grouped by the exact set of formulas they falsify; both
/// preference relations only look at that set.
pub(crate) struct Groups {
    pub(crate) sets: Vec<ElemSet>,
    pub(crate) members: Vec<Vec<u64>>,
}

impl Groups {
    pub(crate) fn new(kb: &PartiallyOrderedKb, limits: &Limits) -> Result<Groups> {
        limits.check_atoms(kb.universe().len())?;
        let mut by_set: BTreeMap<ElemSet, Vec<u64>> = BTreeMap::new();
        for index in 0..kb.universe().interpretation_count() {
            by_set.entry(falsified_by_index(kb, index)).or_default().push(index);
        }
        let (sets, members) = by_set.into_iter().unzip();
        Ok(Groups { sets, members })
    }

    /// Members of every group that no other group dominates.
    fn minimal(&self, kb: &PartiallyOrderedKb, dominates: impl Fn(ElemSet, ElemSet) -> bool) -> ModelSet {
        let mut out = ModelSet::empty(kb.universe());
        for (g, set) in self.sets.iter().enumerate() {
            if !self.sets.iter().any(|&other| dominates(other, *set)) {
                for &i in &self.members[g] {
                    out.insert(i);
                }
            }
        }
        out
    }
}

/// The `⊲Ω`-minimal interpretations of a base, ready to answer queries.
#[derive(Debug, Clone)]
pub struct SemanticModel {
    kb: PartiallyOrderedKb,
    minimal: ModelSet,
}

impl SemanticModel {
    /// `Min(Ω, ⊲Ω)`.
    pub fn new(kb: &PartiallyOrderedKb, limits: &Limits) -> Result<SemanticModel> {
        let groups = Groups::new(kb, limits)?;
        let order = kb.order();
        // ω'' ⊲Ω ω  iff  [ω] ⊲ [ω''], with [·] the falsified sets.
        let minimal = groups.minimal(kb, |other, mine| set_pref(mine, other, order));
        Ok(SemanticModel {
            kb: kb.clone(),
            minimal,
        })
    }

    /// `Min(Ω, ⊲'Ω)`.
    pub fn alternative(kb: &PartiallyOrderedKb, limits: &Limits) -> Result<SemanticModel> {
        let groups = Groups::new(kb, limits)?;
        let order = kb.order();
        let minimal = groups.minimal(kb, |other, mine| alt_set_pref(mine, other, order));
        Ok(SemanticModel {
            kb: kb.clone(),
            minimal,
        })
    }

    pub fn minimal(&self) -> &ModelSet {
        &self.minimal
    }

    pub fn interpretations(&self) -> Vec<Interpretation> {
        let u = self.kb.universe();
        self.minimal.iter().map(|i| u.interpretation(i)).collect()
    }

    pub fn entails(&self, psi: &Formula) -> Result<bool> {
        Ok(self.counterexample(psi)?.is_none())
    }

    /// A minimal interpretation falsifying `psi`, if any.
    pub fn counterexample(&self, psi: &Formula) -> Result<Option<Interpretation>> {
        let models = ModelSet::of(psi, self.kb.universe())?;
        Ok(self
            .minimal
            .first_outside(&models)
            .map(|i| self.kb.universe().interpretation(i)))
    }
}

pub fn min_interpretations(kb: &PartiallyOrderedKb) -> Result<Vec<Interpretation>> {
    Ok(SemanticModel::new(kb, &Limits::default())?.interpretations())
}

/// `(Ω, ⊲Ω) ⊨ ψ`
pub fn entails_semantic(kb: &PartiallyOrderedKb, psi: &Formula) -> Result<bool> {
    kb.check_query(psi)?;
    SemanticModel::new(kb, &Limits::default())?.entails(psi)
}

/// Inference from `⊲'Ω`; kept to show how it differs from `⊲Ω`.
pub fn entails_alt(kb: &PartiallyOrderedKb, psi: &Formula) -> Result<bool> {
    kb.check_query(psi)?;
    SemanticModel::alternative(kb, &Limits::default())?.entails(psi)
}
