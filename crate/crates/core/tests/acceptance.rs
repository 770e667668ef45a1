//! Acceptance gate: one PASS/FAIL line per criterion, exact comparisons
//! only. Exits nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use polog::compat::{
    entails_po_oracle, gen_random_kb, possibilistic_entails, CompatibleFamily,
};
use polog::kb::load_kb;
use polog::lattice::{inc, lattice_plausible, load_timed};
use polog::semantics::{
    entails_alt, entails_semantic, falsified, falsified_min, interp_pref, set_pref, SemanticModel,
};
use polog::syntactic::{
    blocked_by_minimal_rest, build_ker, compute_cons, consistent_subsets, entails_cons, entails_ker,
    first_non_entailing, is_rooted, ker_bruteforce, Subbase,
};
use polog::order::TotalPreorder;
use polog::{ElemSet, Formula, Interpretation, Limits, PartiallyOrderedKb};

const EX1: &str = "atoms a b\nf1: ~a\nf2: a\nf3: ~b\nf4: b\norder f2 < f3\norder f4 < f1\n";
const EX2_TIMED: &str = "times t1 t2 t3\na @ {t1, t2}\nb @ {t2, t3}\n~b @ {t1}\n~a @ {t3}\n";
const SEEDS: u64 = 600;
const MAX_ATOMS: usize = 4;
const MAX_FORMULAS: usize = 6;

type Outcome = Result<(), String>;

fn ex1() -> PartiallyOrderedKb {
    load_kb(EX1).unwrap()
}

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

fn check(ok: bool, message: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn density(seed: u64) -> f64 {
    [0.1, 0.25, 0.5, 0.8][(seed % 4) as usize]
}

fn random_kbs() -> impl Iterator<Item = (u64, PartiallyOrderedKb)> {
    (0..SEEDS).map(|s| (s, gen_random_kb(s, MAX_ATOMS, MAX_FORMULAS, density(s))))
}

/// Each formula of `Σ`, its negation, and every pairwise disjunction and
/// conjunction.
fn battery(kb: &PartiallyOrderedKb) -> Vec<Formula> {
    let fs = kb.formulas();
    let mut out = Vec::new();
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

fn names(kb: &PartiallyOrderedKb, sets: &[Subbase]) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = sets.iter().map(|&s| kb.labels_of(s)).collect();
    v.sort();
    v
}

fn label_sets(sets: &[&[&str]]) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = sets
        .iter()
        .map(|s| {
            let mut l: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            l.sort();
            l
        })
        .collect();
    v.sort();
    v
}

/// Verdicts of the four equivalent engines, prepared once per base.
struct Engines {
    family: CompatibleFamily,
    semantic: SemanticModel,
    cons: Vec<Subbase>,
    ker: Vec<Subbase>,
}

impl Engines {
    fn new(kb: &PartiallyOrderedKb) -> Engines {
        Engines {
            family: CompatibleFamily::new(kb, &Limits::default()).unwrap(),
            semantic: SemanticModel::new(kb, &Limits::default()).unwrap(),
            cons: compute_cons(kb).unwrap(),
            ker: build_ker(kb).kernels,
        }
    }

    fn verdicts(&self, kb: &PartiallyOrderedKb, psi: &Formula) -> [bool; 4] {
        [
            self.family.entails(psi).unwrap(),
            self.semantic.entails(psi).unwrap(),
            first_non_entailing(kb, &self.cons, psi).unwrap().is_none(),
            first_non_entailing(kb, &self.ker, psi).unwrap().is_none(),
        ]
    }
}

fn ex1_fixture() -> Outcome {
    let kb = ex1();
    for (q, expected) in [("a | b", true), ("b", false), ("a & b", false)] {
        let psi = f(q);
        let got = [
            entails_po_oracle(&kb, &psi).unwrap(),
            entails_semantic(&kb, &psi).unwrap(),
            entails_cons(&kb, &psi).unwrap(),
            entails_ker(&kb, &psi).unwrap(),
        ];
        check(got == [expected; 4], || format!("{q}: oracle/semantic/cons/ker gave {got:?}"))?;
    }
    Ok(())
}

fn falsified_min_table() -> Outcome {
    let kb = ex1();
    let expected: [&[&str]; 4] = [&["f2", "f4"], &["f2"], &["f4"], &["f1", "f3"]];
    for (i, want) in expected.iter().enumerate() {
        let w = kb.universe().interpretation(i as u64);
        let got = kb.labels_of(falsified_min(&kb, &w).unwrap());
        check(got == *want, || format!("w{i}: {got:?}, expected {want:?}"))?;
    }
    Ok(())
}

fn interpretation_order_of_ex1() -> Outcome {
    let kb = ex1();
    let ws: Vec<Interpretation> = kb.universe().interpretations().collect();
    let mut strict = Vec::new();
    for a in &ws {
        for b in &ws {
            if interp_pref(&kb, a, b).unwrap() {
                strict.push((a.index(), b.index()));
            }
        }
    }
    check(strict == [(3, 0)], || format!("strict pairs {strict:?}"))?;
    let minimal: Vec<u64> = SemanticModel::new(&kb, &Limits::default())
        .unwrap()
        .interpretations()
        .iter()
        .map(Interpretation::index)
        .collect();
    check(minimal == [1, 2, 3], || format!("minimal {minimal:?}"))
}

fn consistent_subsets_cons_and_ker() -> Outcome {
    let kb = ex1();
    let c = consistent_subsets(&kb).unwrap();
    check(c.len() == 9, || format!("{} consistent subsets", c.len()))?;
    let cons = names(&kb, &compute_cons(&kb).unwrap());
    let want = label_sets(&[&["f2"], &["f4"], &["f2", "f4"], &["f2", "f3"], &["f1", "f4"]]);
    check(cons == want, || format!("Cons {cons:?}"))?;
    let ker = names(&kb, &ker_bruteforce(&kb).unwrap());
    check(ker == label_sets(&[&["f2"], &["f4"]]), || format!("Ker {ker:?}"))
}

fn kernel_search_trace() -> Outcome {
    let kb = ex1();
    let r = build_ker(&kb);
    let ker = names(&kb, &r.kernels);
    check(ker == label_sets(&[&["f2"], &["f4"]]), || format!("Ker {ker:?}"))?;
    check(r.branch_consistency_tests == 3, || {
        format!("{} branch consistency tests", r.branch_consistency_tests)
    })?;
    check(r.init_consistency_tests == 1, || format!("{} init tests", r.init_consistency_tests))
}

fn compatible_orders_of_ex1() -> Outcome {
    let kb = ex1();
    let idx = |l: &[&str]| -> Vec<usize> { l.iter().map(|x| kb.index_of(x).unwrap()).collect() };
    let le1 = TotalPreorder::new(vec![idx(&["f2", "f4"]), idx(&["f1"]), idx(&["f3"])]).unwrap();
    let le2 = TotalPreorder::new(vec![idx(&["f2"]), idx(&["f3"]), idx(&["f4"]), idx(&["f1"])]).unwrap();
    let all: Vec<TotalPreorder<usize>> = kb.order().weak_order_extensions().collect();
    check(all.contains(&le1), || "first example order missing".into())?;
    check(all.contains(&le2), || "second example order missing".into())?;
    let total = kb.with_total_order(&le2).unwrap();
    check(!possibilistic_entails(&total, &f("b")).unwrap(), || "b follows from the second order".into())
}

/// A formula whose models are exactly the interpretations in `mask`.
fn truth_function(mask: u32) -> Formula {
    let lit = |atom: &str, v: bool| {
        if v {
            Formula::atom(atom)
        } else {
            Formula::not(Formula::atom(atom))
        }
    };
    let terms: Vec<Formula> = (0..4u32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| Formula::and([lit("a", i & 2 != 0), lit("b", i & 1 != 0)]))
        .collect();
    if terms.is_empty() {
        Formula::Bottom
    } else {
        Formula::or(terms)
    }
}

fn alternative_order_infers_only_tautologies() -> Outcome {
    let kb = ex1();
    for mask in 0..16u32 {
        let psi = truth_function(mask);
        let got = entails_alt(&kb, &psi).unwrap();
        check(got == (mask == 15), || format!("truth function {mask:04b}: {got}"))?;
    }
    Ok(())
}

fn lattice_pathology() -> Outcome {
    let base = load_timed(EX2_TIMED).unwrap();
    check(inc(&base.clauses).is_empty(), || "Inc of the timed base is not empty".into())?;
    check(lattice_plausible(&base.clauses, &f("a"), &base.times), || "a not plausible".into())?;
    check(lattice_plausible(&base.clauses, &f("~a"), &base.times), || "~a not plausible".into())?;
    let kb = ex1();
    let engines = Engines::new(&kb);
    for q in ["a", "~a"] {
        let v = engines.verdicts(&kb, &f(q));
        check(v == [false; 4], || format!("{q} inferred: {v:?}"))?;
    }
    Ok(())
}

fn engines_agree() -> Outcome {
    for (seed, kb) in random_kbs() {
        let engines = Engines::new(&kb);
        for psi in battery(&kb) {
            let v = engines.verdicts(&kb, &psi);
            check(v.iter().all(|&x| x == v[0]), || format!("seed {seed}, query {psi}: {v:?}"))?;
        }
    }
    Ok(())
}

fn preprocessing_preserves_verdicts() -> Outcome {
    type Step = (&'static str, fn(&PartiallyOrderedKb) -> PartiallyOrderedKb);
    let steps: [Step; 5] = [
        ("tautologies", |kb| kb.remove_tautologies()),
        ("subsumption", |kb| kb.remove_subsumed()),
        ("subsumption fixpoint", |kb| kb.remove_subsumed_fixpoint()),
        ("cnf", |kb| kb.cnf_transform().unwrap()),
        ("all", |kb| kb.remove_tautologies().cnf_transform().unwrap().remove_subsumed()),
    ];
    for (seed, kb) in random_kbs() {
        let queries = battery(&kb);
        let base = SemanticModel::new(&kb, &Limits::default()).unwrap();
        let expected: Vec<bool> = queries.iter().map(|q| base.entails(q).unwrap()).collect();
        for (name, step) in steps {
            let pre = step(&kb);
            let engines = Engines::new(&pre);
            for (q, &want) in queries.iter().zip(&expected) {
                let v = engines.verdicts(&pre, q);
                check(v == [want; 4], || format!("seed {seed}, {name}, query {q}: {v:?} vs {want}"))?;
            }
        }
    }
    Ok(())
}

fn total_orders_agree_with_possibilistic() -> Outcome {
    for (seed, kb) in random_kbs() {
        let exts: Vec<TotalPreorder<usize>> = kb.order().weak_order_extensions().collect();
        let pick = &exts[(seed as usize * 7919) % exts.len()];
        let total = kb.with_total_order(pick).unwrap();
        for psi in battery(&total) {
            let o = entails_po_oracle(&total, &psi).unwrap();
            let p = possibilistic_entails(&total, &psi).unwrap();
            check(o == p, || format!("seed {seed}, query {psi}: oracle {o}, possibilistic {p}"))?;
        }
    }
    Ok(())
}

fn cons_structure() -> Outcome {
    // The pinned case: {¬a} passes the blocking test without being preferred.
    let kb = load_kb("x: a\ny: ~a\norder x < y\n").unwrap();
    let y = kb.subset(&["y"]).unwrap();
    check(blocked_by_minimal_rest(y, &kb), || "{~a} is not blocked".into())?;
    check(!compute_cons(&kb).unwrap().contains(&y), || "{~a} is in Cons".into())?;

    for (seed, kb) in random_kbs() {
        let all = consistent_subsets(&kb).unwrap();
        let cons = compute_cons(&kb).unwrap();
        let ker = build_ker(&kb).kernels;
        for k in &ker {
            check(cons.contains(k), || format!("seed {seed}: kernel {k:?} not in Cons"))?;
            check(is_rooted(*k, &kb), || format!("seed {seed}: kernel {k:?} not rooted"))?;
        }
        check(cons.iter().all(|c| all.contains(c)), || format!("seed {seed}: Cons not within C"))?;
        if !kb.consistent(kb.all()) {
            for c in &cons {
                check(blocked_by_minimal_rest(*c, &kb), || format!("seed {seed}: {c:?} in Cons but not blocked"))?;
            }
        }
        for c in all.iter().filter(|&&c| is_rooted(c, &kb) && blocked_by_minimal_rest(c, &kb)) {
            check(cons.contains(c), || format!("seed {seed}: rooted blocked {c:?} not in Cons"))?;
        }
    }
    Ok(())
}

fn kernel_search_matches_definition() -> Outcome {
    let kb = ex1();
    check(build_ker(&kb).kernels == ker_bruteforce(&kb).unwrap(), || "example base".into())?;
    for (seed, kb) in random_kbs() {
        let fast = build_ker(&kb).kernels;
        let slow = ker_bruteforce(&kb).unwrap();
        check(fast == slow, || format!("seed {seed}: search {fast:?}, definition {slow:?}"))?;
    }
    Ok(())
}

fn interpretation_order_is_strict_partial_order() -> Outcome {
    for (seed, kb) in random_kbs() {
        let ws: Vec<Interpretation> = kb.universe().interpretations().collect();
        let n = ws.len();
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = interp_pref(&kb, &ws[a], &ws[b]).unwrap();
            }
        }
        for a in 0..n {
            check(!rel[a * n + a], || format!("seed {seed}: w{a} preferred to itself"))?;
            for b in 0..n {
                for c in 0..n {
                    if rel[a * n + b] && rel[b * n + c] {
                        check(rel[a * n + c], || format!("seed {seed}: w{a} w{b} w{c} not transitive"))?;
                    }
                }
            }
        }
        let minimal = SemanticModel::new(&kb, &Limits::default()).unwrap();
        check(!minimal.minimal().is_empty(), || format!("seed {seed}: no minimal interpretation"))?;

        let order = kb.order();
        let subsets: Vec<ElemSet> = kb.all().subsets().collect();
        for &x in &subsets {
            for &y in &subsets {
                let whole = set_pref(x, y, order);
                let reduced = set_pref(order.min_set(x), order.min_set(y), order);
                check(whole == reduced, || format!("seed {seed}: {x:?} vs {y:?}"))?;
            }
        }
        for w in &ws {
            let all = falsified(&kb, w).unwrap();
            let min = falsified_min(&kb, w).unwrap();
            check(min == order.min_set(all), || format!("seed {seed}: falsified_min of w{}", w.index()))?;
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("example base verdicts under every engine", ex1_fixture),
        ("minimal falsified formulas per interpretation", falsified_min_table),
        ("interpretation order and its minimal elements", interpretation_order_of_ex1),
        ("consistent subsets, Cons and Ker of the example base", consistent_subsets_cons_and_ker),
        ("kernel search result and consistency-test count", kernel_search_trace),
        ("compatible total orders and possibilistic inference", compatible_orders_of_ex1),
        ("alternative interpretation order infers only tautologies", alternative_order_infers_only_tautologies),
        ("timed-clause baseline infers both a and not a", lattice_pathology),
        ("four engines agree on random bases", engines_agree),
        ("preprocessing preserves every verdict", preprocessing_preserves_verdicts),
        ("oracle equals possibilistic inference on total orders", total_orders_agree_with_possibilistic),
        ("Ker, Cons and rooted-set structure", cons_structure),
        ("kernel search equals the definition", kernel_search_matches_definition),
        ("interpretation order is a strict partial order", interpretation_order_is_strict_partial_order),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
