//! Possibilistic inference from totally ordered bases, and the reference
//! oracle for partial orders that quantifies over every compatible total
//! pre-order.

mod random;

pub use random::gen_random_kb;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::{satisfies, Formula, Interpretation, ModelSet, Universe};
use crate::kb::PartiallyOrderedKb;
use crate::limits::Limits;
use crate::order::{PartialPreorder, TotalPreorder};
use crate::semantics::Groups;

/// Formulas with certainty weights in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedKb {
    entries: Vec<(Formula, f64)>,
}

impl WeightedKb {
    pub fn new(entries: Vec<(Formula, f64)>) -> Result<WeightedKb> {
        if let Some((f, w)) = entries.iter().find(|(_, w)| !(*w > 0.0 && *w <= 1.0)) {
            return Err(Error::Invalid(format!("weight {w} of `{f}` is outside (0, 1]")));
        }
        Ok(WeightedKb { entries })
    }

    pub fn entries(&self) -> &[(Formula, f64)] {
        &self.entries
    }
}

/// `πΣ(ω)`: 1 for a model of every formula, otherwise one minus the largest
/// weight among the formulas `ω` falsifies.
pub fn weighted_possibility(wkb: &WeightedKb, omega: &Interpretation) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (f, w) in &wkb.entries {
        if !satisfies(omega, f)? {
            worst = worst.max(*w);
        }
    }
    Ok(1.0 - worst)
}

/// A total pre-order on interpretations (by index); level 0 is the most
/// possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualitativeDistribution {
    universe: Universe,
    levels: TotalPreorder<u64>,
}

impl QualitativeDistribution {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn levels(&self) -> &[Vec<u64>] {
        self.levels.levels()
    }

    pub fn level_of(&self, omega: &Interpretation) -> Option<usize> {
        self.levels.level_of(&omega.index())
    }

    /// `Min(Ω, <π)`.
    pub fn most_possible(&self) -> ModelSet {
        let mut out = ModelSet::empty(&self.universe);
        for &i in self.levels.levels().first().into_iter().flatten() {
            out.insert(i);
        }
        out
    }
}

/// Level of each formula in a total pre-order, 0 being most preferred.
fn ranks_of_total(order: &PartialPreorder) -> Result<Vec<usize>> {
    if let Some((x, y)) = order.incomparable_pair() {
        return Err(Error::NotTotal(order.name(x).into(), order.name(y).into()));
    }
    // In a total pre-order the classes strictly above x are exactly those
    // of the elements strictly above x.
    Ok((0..order.len())
        .map(|x| {
            let above = order.strictly_above(x);
            let reps: BTreeSet<usize> = above.iter().map(|y| order.class_of(y).first().unwrap()).collect();
            reps.len()
        })
        .collect())
}

fn ranks_of_levels(levels: &TotalPreorder<usize>, n: usize) -> Vec<usize> {
    let mut rank = vec![0; n];
    for (k, level) in levels.levels().iter().enumerate() {
        for &x in level {
            rank[x] = k;
        }
    }
    rank
}

/// Best-out: an interpretation is as good as the most preferred formula it
/// falsifies is bad. Groups share a falsified set, so each group lands on a
/// single level.
fn best_out(groups: &Groups, rank: &[usize]) -> Vec<Vec<u64>> {
    let key = |g: usize| groups.sets[g].iter().map(|x| rank[x]).min().unwrap_or(usize::MAX);
    let mut order: Vec<usize> = (0..groups.sets.len()).collect();
    order.sort_by_key(|&g| std::cmp::Reverse(key(g)));
    let mut levels: Vec<Vec<u64>> = Vec::new();
    let mut last = None;
    for g in order {
        let k = key(g);
        if last != Some(k) {
            levels.push(Vec::new());
            last = Some(k);
        }
        levels.last_mut().unwrap().extend(&groups.members[g]);
    }
    levels
}

fn level_zero(groups: &Groups, rank: &[usize], universe: &Universe) -> ModelSet {
    let key = |g: usize| groups.sets[g].iter().map(|x| rank[x]).min().unwrap_or(usize::MAX);
    let best = (0..groups.sets.len()).map(key).max().unwrap_or(usize::MAX);
    let mut out = ModelSet::empty(universe);
    for g in (0..groups.sets.len()).filter(|&g| key(g) == best) {
        for &i in &groups.members[g] {
            out.insert(i);
        }
    }
    out
}

/// The qualitative distribution a totally ordered base induces.
pub fn induce_interp_order(kb_total: &PartiallyOrderedKb) -> Result<QualitativeDistribution> {
    let rank = ranks_of_total(kb_total.order())?;
    let groups = Groups::new(kb_total, &Limits::default())?;
    Ok(QualitativeDistribution {
        universe: kb_total.universe().clone(),
        levels: TotalPreorder::new(best_out(&groups, &rank))?,
    })
}

/// `(Σ, ≤Σ) ⊢π ψ`: ψ holds in every most possible interpretation.
pub fn possibilistic_entails(kb_total: &PartiallyOrderedKb, psi: &Formula) -> Result<bool> {
    kb_total.check_query(psi)?;
    let rank = ranks_of_total(kb_total.order())?;
    let groups = Groups::new(kb_total, &Limits::default())?;
    let models = ModelSet::of(psi, kb_total.universe())?;
    Ok(level_zero(&groups, &rank, kb_total.universe()).is_subset(&models))
}

/// `(Σ, ⪯Σ) ⊢po ψ` by brute force over the compatible total pre-orders.
pub fn entails_po_oracle(kb: &PartiallyOrderedKb, psi: &Formula) -> Result<bool> {
    entails_po_oracle_with(kb, psi, &Limits::default())
}

pub fn entails_po_oracle_with(kb: &PartiallyOrderedKb, psi: &Formula, limits: &Limits) -> Result<bool> {
    Ok(po_oracle_counterexample(kb, psi, limits)?.0.is_none())
}

/// Walks the compatible extensions until one fails `psi`. Also returns how
/// many extensions were visited.
pub fn po_oracle_counterexample(
    kb: &PartiallyOrderedKb,
    psi: &Formula,
    limits: &Limits,
) -> Result<(Option<OracleCounterexample>, usize)> {
    kb.check_query(psi)?;
    let groups = Groups::new(kb, limits)?;
    let models = ModelSet::of(psi, kb.universe())?;
    let mut visited = 0;
    for ext in kb.order().weak_order_extensions() {
        visited += 1;
        check_extensions(visited, limits)?;
        let rank = ranks_of_levels(&ext, kb.len());
        if let Some(i) = level_zero(&groups, &rank, kb.universe()).first_outside(&models) {
            let cex = OracleCounterexample {
                extension: ext,
                interpretation: kb.universe().interpretation(i),
            };
            return Ok((Some(cex), visited));
        }
    }
    Ok((None, visited))
}

fn check_extensions(count: usize, limits: &Limits) -> Result<()> {
    if count > limits.max_extensions {
        return Err(Error::CapExceeded {
            what: "extension",
            limit: limits.max_extensions,
            actual: count,
        });
    }
    Ok(())
}

/// One compatible extension whose most possible interpretations miss `ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCounterexample {
    pub extension: TotalPreorder<usize>,
    pub interpretation: Interpretation,
}

/// Every compatible extension enumerated once, reduced to the distinct sets
/// of most possible interpretations, so that many queries are cheap.
#[derive(Debug, Clone)]
pub struct CompatibleFamily {
    universe: Universe,
    extension_count: usize,
    preferred: Vec<(TotalPreorder<usize>, ModelSet)>,
}

impl CompatibleFamily {
    pub fn new(kb: &PartiallyOrderedKb, limits: &Limits) -> Result<CompatibleFamily> {
        let groups = Groups::new(kb, limits)?;
        let mut seen: HashMap<ModelSet, usize> = HashMap::new();
        let mut preferred = Vec::new();
        let mut extension_count = 0;
        for ext in kb.order().weak_order_extensions() {
            extension_count += 1;
            check_extensions(extension_count, limits)?;
            let set = level_zero(&groups, &ranks_of_levels(&ext, kb.len()), kb.universe());
            seen.entry(set.clone()).or_insert_with(|| {
                preferred.push((ext, set));
                preferred.len() - 1
            });
        }
        Ok(CompatibleFamily {
            universe: kb.universe().clone(),
            extension_count,
            preferred,
        })
    }

    pub fn extension_count(&self) -> usize {
        self.extension_count
    }

    /// Number of distinct `Min(Ω, <π)` sets across the family.
    pub fn distinct_distributions(&self) -> usize {
        self.preferred.len()
    }

    pub fn counterexample(&self, psi: &Formula) -> Result<Option<OracleCounterexample>> {
        let models = ModelSet::of(psi, &self.universe)?;
        Ok(self.preferred.iter().find_map(|(ext, set)| {
            set.first_outside(&models).map(|i| OracleCounterexample {
                extension: ext.clone(),
                interpretation: self.universe.interpretation(i),
            })
        }))
    }

    pub fn entails(&self, psi: &Formula) -> Result<bool> {
        Ok(self.counterexample(psi)?.is_none())
    }
}
