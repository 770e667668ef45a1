//! Reference implementations written straight from the definitions, with
//! no shared code beyond parsing and the order's base relation. Slow on
//! purpose.

#![allow(dead_code)]

use polog::order::{Edge, PartialPreorder};
use polog::{Formula, PartiallyOrderedKb};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EX1: &str = "atoms a b\nf1: ~a\nf2: a\nf3: ~b\nf4: b\norder f2 < f3\norder f4 < f1\n";

pub fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

/// Truth value under interpretation `index`, first atom most significant.
pub fn eval(phi: &Formula, atoms: &[String], index: u64) -> bool {
    let n = atoms.len();
    phi.eval(&|a: &str| {
        atoms
            .iter()
            .position(|x| x == a)
            .map(|i| index >> (n - 1 - i) & 1 == 1)
    })
    .expect("formula over the universe")
}

pub fn interpretations(kb: &PartiallyOrderedKb) -> std::ops::Range<u64> {
    0..1u64 << kb.universe().len()
}

pub fn falsified(kb: &PartiallyOrderedKb, w: u64) -> Vec<usize> {
    let atoms = kb.universe().atoms();
    (0..kb.len()).filter(|&i| !eval(kb.formula(i), atoms, w)).collect()
}

pub fn satisfiable(kb: &PartiallyOrderedKb, members: &[usize], extra: Option<&Formula>) -> bool {
    let atoms = kb.universe().atoms();
    interpretations(kb).any(|w| {
        members.iter().all(|&i| eval(kb.formula(i), atoms, w)) && extra.is_none_or(|e| eval(e, atoms, w))
    })
}

pub fn proves(kb: &PartiallyOrderedKb, members: &[usize], psi: &Formula) -> bool {
    !satisfiable(kb, members, Some(&Formula::not(psi.clone())))
}

/// Elements of `s` with no strictly preferred element in `s`.
pub fn min(order: &PartialPreorder, s: &[usize]) -> Vec<usize> {
    s.iter()
        .copied()
        .filter(|&x| !s.iter().any(|&y| order.strict(y, x)))
        .collect()
}

/// `X ⊲ Y`.
pub fn set_pref(order: &PartialPreorder, x: &[usize], y: &[usize]) -> bool {
    if x.is_empty() && y.is_empty() {
        return false;
    }
    let mx = min(order, x);
    min(order, y).iter().all(|&b| mx.iter().any(|&a| order.strict(a, b)))
}

/// `ω ⊲Ω ω'`.
pub fn interp_pref(kb: &PartiallyOrderedKb, w: u64, w2: u64) -> bool {
    set_pref(kb.order(), &falsified(kb, w2), &falsified(kb, w))
}

pub fn min_interpretations(kb: &PartiallyOrderedKb) -> Vec<u64> {
    interpretations(kb)
        .filter(|&w| !interpretations(kb).any(|v| interp_pref(kb, v, w)))
        .collect()
}

pub fn entails_semantic(kb: &PartiallyOrderedKb, psi: &Formula) -> bool {
    let atoms = kb.universe().atoms();
    min_interpretations(kb).iter().all(|&w| eval(psi, atoms, w))
}

/// Every rank function `Σ → 0..k` onto an initial segment that respects
/// both the strict and the weak part of the order.
pub fn compatible_rankings(order: &PartialPreorder) -> Vec<Vec<usize>> {
    let n = order.len();
    let mut out = Vec::new();
    let mut rank = vec![0usize; n];
    loop {
        let k = rank.iter().max().map_or(0, |m| m + 1);
        let onto = (0..k).all(|l| rank.contains(&l));
        let respects = (0..n).all(|x| {
            (0..n).all(|y| {
                (!order.leq(x, y) || rank[x] <= rank[y]) && (!order.strict(x, y) || rank[x] < rank[y])
            })
        });
        if onto && respects {
            out.push(rank.clone());
        }
        // Odometer over 0..n in every position.
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            rank[i] += 1;
            if rank[i] < n {
                break;
            }
            rank[i] = 0;
            i += 1;
        }
    }
}

/// `ω ≤π ω'` for a ranking: whatever `ω` falsifies, `ω'` falsifies
/// something at least as preferred.
pub fn at_least_as_possible(kb: &PartiallyOrderedKb, rank: &[usize], w: u64, w2: u64) -> bool {
    let f2 = falsified(kb, w2);
    falsified(kb, w)
        .iter()
        .all(|&phi| f2.iter().any(|&psi| rank[psi] <= rank[phi]))
}

pub fn most_possible(kb: &PartiallyOrderedKb, rank: &[usize]) -> Vec<u64> {
    interpretations(kb)
        .filter(|&w| interpretations(kb).all(|v| at_least_as_possible(kb, rank, w, v)))
        .collect()
}

pub fn entails_oracle(kb: &PartiallyOrderedKb, psi: &Formula) -> bool {
    let atoms = kb.universe().atoms();
    compatible_rankings(kb.order())
        .iter()
        .all(|rank| most_possible(kb, rank).iter().all(|&w| eval(psi, atoms, w)))
}

pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u64 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !s.contains(i)).collect()
}

pub fn consistent_subsets(kb: &PartiallyOrderedKb) -> Vec<Vec<usize>> {
    subsets(kb.len()).into_iter().filter(|s| satisfiable(kb, s, None)).collect()
}

pub fn cons(kb: &PartiallyOrderedKb) -> Vec<Vec<usize>> {
    let n = kb.len();
    let all = consistent_subsets(kb);
    all.iter()
        .filter(|c| {
            !all.iter()
                .any(|d| set_pref(kb.order(), &complement(n, c), &complement(n, d)))
        })
        .cloned()
        .collect()
}

pub fn entails_cons(kb: &PartiallyOrderedKb, psi: &Formula) -> bool {
    cons(kb).iter().all(|c| proves(kb, c, psi))
}

/// Bases made only of literals, with a strict random order; conflicts
/// between literals give several kernels far more often than general
/// random clauses do.
pub fn literal_kb(seed: u64, atoms: usize, formulas: usize, density: f64) -> PartiallyOrderedKb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..atoms).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut lits: Vec<(usize, bool)> = (0..atoms).flat_map(|a| [(a, true), (a, false)]).collect();
    let count = rng.gen_range(2..=formulas.min(lits.len()));
    let mut entries = Vec::new();
    for i in 0..count {
        let (a, pos) = lits.swap_remove(rng.gen_range(0..lits.len()));
        let atom = Formula::atom(names[a].clone());
        entries.push((format!("f{}", i + 1), if pos { atom } else { Formula::not(atom) }));
    }
    let labels: Vec<String> = entries.iter().map(|(l, _)| l.clone()).collect();
    let mut edges = Vec::new();
    for x in 0..count {
        for y in 0..count {
            if x != y && rng.gen_bool(density) {
                edges.push(Edge::strict(labels[x].clone(), labels[y].clone()));
                if PartialPreorder::build(labels.clone(), &edges).is_err() {
                    edges.pop();
                }
            }
        }
    }
    let universe = polog::Universe::new(names).unwrap();
    PartiallyOrderedKb::new(Some(universe), entries, &edges).unwrap()
}

/// Literals, every formula of the base and its negation, and pairwise
/// disjunctions and conjunctions of the formulas.
pub fn battery(kb: &PartiallyOrderedKb) -> Vec<Formula> {
    let mut out = vec![Formula::Top, Formula::Bottom];
    for a in kb.universe().atoms() {
        out.push(Formula::atom(a.clone()));
        out.push(Formula::not(Formula::atom(a.clone())));
    }
    let fs = kb.formulas();
    for (i, a) in fs.iter().enumerate() {
        out.push(a.clone());
        out.push(Formula::not(a.clone()));
        for b in &fs[i + 1..] {
            out.push(Formula::or([a.clone(), b.clone()]));
            out.push(Formula::and([a.clone(), b.clone()]));
        }
    }
    out
}
