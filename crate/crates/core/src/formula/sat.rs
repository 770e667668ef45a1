use super::{Compiled, Formula, Universe};
use crate::error::Result;

/// Backtracking search over the universe's atoms with three-valued pruning.
pub(crate) fn consistent_compiled(formulas: &[&Compiled], n_atoms: usize) -> bool {
    fn search(formulas: &[&Compiled], depth: usize, n_atoms: usize, assigned: u64, values: u64) -> bool {
        let mut open = false;
        for f in formulas {
            match f.eval_partial(assigned, values) {
                Some(false) => return false,
                None => open = true,
                Some(true) => {}
            }
        }
        if !open {
            return true;
        }
        // Kleene evaluation is exact on total assignments, so `open` implies
        // an unassigned atom remains.
        debug_assert!(depth < n_atoms);
        let bit = 1u64 << (n_atoms - 1 - depth);
        search(formulas, depth + 1, n_atoms, assigned | bit, values | bit)
            || search(formulas, depth + 1, n_atoms, assigned | bit, values)
    }
    search(formulas, 0, n_atoms, 0, 0)
}

/// Whether some interpretation of `universe` satisfies every formula.
pub fn is_consistent(formulas: &[Formula], universe: &Universe) -> Result<bool> {
    let compiled = formulas
        .iter()
        .map(|f| Compiled::new(f, universe))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Compiled> = compiled.iter().collect();
    Ok(consistent_compiled(&refs, universe.len()))
}

/// `formulas ⊢ psi`, decided as the inconsistency of `formulas ∪ {¬psi}`.
pub fn entails(formulas: &[Formula], psi: &Formula, universe: &Universe) -> Result<bool> {
    let mut all = formulas.to_vec();
    all.push(Formula::not(psi.clone()));
    Ok(!is_consistent(&all, universe)?)
}

pub fn is_tautology(phi: &Formula) -> bool {
    let universe = Universe::of([phi]).expect("atoms of a parsed formula form a valid universe");
    entails(&[], phi, &universe).expect("universe covers the formula")
}
