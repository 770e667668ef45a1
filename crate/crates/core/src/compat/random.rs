use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Universe};
use crate::kb::PartiallyOrderedKb;
use crate::order::{Edge, EdgeKind, PartialPreorder};

const ATTEMPTS: usize = 32;

fn atom_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect()
}

fn literal(rng: &mut ChaCha8Rng, atom: &str) -> Formula {
    let a = Formula::atom(atom);
    if rng.gen_bool(0.5) {
        Formula::not(a)
    } else {
        a
    }
}

/// Mostly over distinct atoms; now and then a repeated atom, which may make
/// the clause a tautology.
fn clause(rng: &mut ChaCha8Rng, atoms: &[String]) -> Formula {
    // Unit clauses half the time: conflicts between literals are what make
    // the order matter.
    let width = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=3.min(atoms.len())) };
    let picked: Vec<&String> = if rng.gen_bool(0.9) {
        atoms.choose_multiple(rng, width).collect()
    } else {
        (0..width.max(2)).map(|_| atoms.choose(rng).unwrap()).collect()
    };
    let lits: Vec<Formula> = picked.into_iter().map(|a| literal(rng, a)).collect();
    if lits.len() == 1 {
        lits.into_iter().next().unwrap()
    } else {
        Formula::or(lits)
    }
}

fn small_formula(rng: &mut ChaCha8Rng, atoms: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..40) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => {
                let a = atoms.choose(rng).unwrap();
                literal(rng, a)
            }
        };
    }
    let l = small_formula(rng, atoms, depth - 1);
    let r = small_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..5) {
        0 => Formula::and([l, r]),
        1 => Formula::or([l, r]),
        2 => Formula::implies(l, r),
        3 => Formula::iff(l, r),
        _ => Formula::not(Formula::and([l, r])),
    }
}

/// A reproducible random base: `1..=max_atoms` atoms, `1..=max_formulas`
/// pairwise distinct formulas (mostly clauses), and each ordered pair of
/// formulas linked with probability `edge_density` unless the link would
/// break the order.
pub fn gen_random_kb(seed: u64, max_atoms: usize, max_formulas: usize, edge_density: f64) -> PartiallyOrderedKb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Sizes are the larger of two draws, so that small universes and bases
    // (where most formulas are literals of one atom) do not dominate.
    let mut size = |max: usize| rng.gen_range(1..=max.max(1)).max(rng.gen_range(1..=max.max(1)));
    let atoms = atom_names(size(max_atoms));
    let target = size(max_formulas);

    let mut formulas: Vec<Formula> = Vec::new();
    for _ in 0..target {
        for _ in 0..ATTEMPTS {
            let f = if rng.gen_bool(0.8) {
                clause(&mut rng, &atoms)
            } else {
                small_formula(&mut rng, &atoms, 2)
            };
            if !formulas.contains(&f) {
                formulas.push(f);
                break;
            }
        }
    }
    let labels: Vec<String> = (1..=formulas.len()).map(|i| format!("f{i}")).collect();

    let density = edge_density.clamp(0.0, 1.0);
    let mut edges: Vec<Edge> = Vec::new();
    for x in 0..labels.len() {
        for y in 0..labels.len() {
            if x == y || !rng.gen_bool(density) {
                continue;
            }
            let kind = if rng.gen_bool(0.8) { EdgeKind::Strict } else { EdgeKind::Weak };
            edges.push(Edge {
                from: labels[x].clone(),
                kind,
                to: labels[y].clone(),
            });
            if PartialPreorder::build(labels.clone(), &edges).is_err() {
                edges.pop();
            }
        }
    }

    let universe = Universe::new(atoms).expect("generated atoms are valid");
    PartiallyOrderedKb::new(Some(universe), labels.into_iter().zip(formulas).collect(), &edges)
        .expect("generated base is valid by construction")
}
