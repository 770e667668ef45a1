//! Running one query through a chosen engine and rendering the outcome.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

use crate::compat::po_oracle_counterexample;
use crate::error::{Error, Result};
use crate::formula::{Formula, Interpretation};
use crate::kb::PartiallyOrderedKb;
use crate::lattice::TimedBase;
use crate::limits::Limits;
use crate::semantics::SemanticModel;
use crate::syntactic::{build_ker, compute_cons_with, first_non_entailing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    /// Every compatible total pre-order.
    Oracle,
    /// Minimal interpretations.
    Semantic,
    /// Preferred consistent subsets.
    Cons,
    /// Kernels found by recursive search.
    Ker,
    /// The rejected alternative order on interpretations.
    Alt,
    /// Timed clauses; takes its own input format.
    Lattice,
}

impl Engine {
    /// The engines that decide the same relation.
    pub const EQUIVALENT: [Engine; 4] = [Engine::Oracle, Engine::Semantic, Engine::Cons, Engine::Ker];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Semantic => "semantic",
            Engine::Cons => "cons",
            Engine::Ker => "ker",
            Engine::Alt => "alt",
            Engine::Lattice => "lattice",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Engine> {
        [
            Engine::Oracle,
            Engine::Semantic,
            Engine::Cons,
            Engine::Ker,
            Engine::Alt,
            Engine::Lattice,
        ]
        .into_iter()
        .find(|e| e.name() == s)
        .ok_or_else(|| Error::Invalid(format!("unknown engine `{s}`")))
    }
}

/// Evidence that can be re-checked independently of the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A preferred interpretation that falsifies the query.
    Interpretation(Interpretation),
    /// A sub-base (sorted labels) that does not entail the query.
    Subbase(Vec<String>),
    /// A compatible total pre-order (levels of labels) and one of its most
    /// possible interpretations that falsifies the query.
    Extension {
        levels: Vec<Vec<String>>,
        interpretation: Interpretation,
    },
    /// `Inc` before and after adding the negated query, as time points.
    Inconsistency { before: Vec<String>, after: Vec<String> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryReport {
    pub engine: Engine,
    pub query: String,
    pub entailed: bool,
    pub witnesses: Vec<Witness>,
    pub stats: BTreeMap<&'static str, u64>,
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Text,
    Json,
}

fn sorted_labels(kb: &PartiallyOrderedKb, s: crate::ElemSet) -> Vec<String> {
    kb.labels_of(s)
}

/// Runs `psi` through `engine` (any engine except [`Engine::Lattice`]).
pub fn run_query(kb: &PartiallyOrderedKb, psi: &Formula, engine: Engine, limits: &Limits) -> Result<QueryReport> {
    kb.check_query(psi)?;
    limits.check_atoms(kb.universe().len())?;
    let mut stats = BTreeMap::new();
    let (entailed, witnesses) = match engine {
        Engine::Oracle => {
            let (cex, visited) = po_oracle_counterexample(kb, psi, limits)?;
            stats.insert("extensions_visited", visited as u64);
            match cex {
                None => (true, vec![]),
                Some(c) => {
                    let levels = c
                        .extension
                        .levels()
                        .iter()
                        .map(|l| l.iter().map(|&i| kb.label(i).to_string()).collect())
                        .collect();
                    (
                        false,
                        vec![Witness::Extension {
                            levels,
                            interpretation: c.interpretation,
                        }],
                    )
                }
            }
        }
        Engine::Semantic | Engine::Alt => {
            let model = if engine == Engine::Semantic {
                SemanticModel::new(kb, limits)?
            } else {
                SemanticModel::alternative(kb, limits)?
            };
            stats.insert("minimal_interpretations", model.minimal().len() as u64);
            match model.counterexample(psi)? {
                None => (true, vec![]),
                Some(w) => (false, vec![Witness::Interpretation(w)]),
            }
        }
        Engine::Cons => {
            let cons = compute_cons_with(kb, limits)?;
            stats.insert("preferred_subsets", cons.len() as u64);
            match first_non_entailing(kb, &cons, psi)? {
                None => (true, vec![]),
                Some(c) => (false, vec![Witness::Subbase(sorted_labels(kb, c))]),
            }
        }
        Engine::Ker => {
            let r = build_ker(kb);
            stats.insert("kernels", r.kernels.len() as u64);
            stats.insert("branch_consistency_tests", r.branch_consistency_tests as u64);
            stats.insert("init_consistency_tests", r.init_consistency_tests as u64);
            match first_non_entailing(kb, &r.kernels, psi)? {
                None => (true, vec![]),
                Some(c) => (false, vec![Witness::Subbase(sorted_labels(kb, c))]),
            }
        }
        Engine::Lattice => {
            return Err(Error::Invalid(
                "the lattice engine reads timed clauses; use the `lattice` command".into(),
            ))
        }
    };
    Ok(QueryReport {
        engine,
        query: psi.to_string(),
        entailed,
        witnesses,
        stats,
        elapsed_ms: None,
    })
}

/// [`run_query`], also recording the wall-clock time.
pub fn run_query_timed(kb: &PartiallyOrderedKb, psi: &Formula, engine: Engine, limits: &Limits) -> Result<QueryReport> {
    let start = Instant::now();
    let mut report = run_query(kb, psi, engine, limits)?;
    report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    Ok(report)
}

/// Plausibility of `psi` in a timed base.
pub fn run_lattice(base: &TimedBase, psi: &Formula) -> QueryReport {
    let before = base.inc();
    let mut extended = base.clone();
    extended.clauses.extend(
        crate::formula::to_cnf(&Formula::not(psi.clone()))
            .clauses()
            .map(|c| crate::lattice::TimedClause::new(c.clone(), base.times.all())),
    );
    let after = extended.inc();
    let names = |s: crate::ElemSet| base.times.names_of(s).into_iter().map(str::to_string).collect();
    let mut stats = BTreeMap::new();
    stats.insert("timed_clauses", base.clauses.len() as u64);
    QueryReport {
        engine: Engine::Lattice,
        query: psi.to_string(),
        entailed: before.is_proper_subset(after),
        witnesses: vec![Witness::Inconsistency {
            before: names(before),
            after: names(after),
        }],
        stats,
        elapsed_ms: None,
    }
}

fn interpretation_json(w: &Interpretation) -> Value {
    let values: serde_json::Map<String, Value> = w.values().into_iter().map(|(a, v)| (a, Value::Bool(v))).collect();
    json!({ "index": w.index(), "values": values })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Interpretation(i) => json!({ "kind": "interpretation", "interpretation": interpretation_json(i) }),
        Witness::Subbase(labels) => json!({ "kind": "subbase", "labels": labels }),
        Witness::Extension { levels, interpretation } => json!({
            "kind": "extension",
            "levels": levels,
            "interpretation": interpretation_json(interpretation),
        }),
        Witness::Inconsistency { before, after } => json!({ "kind": "inconsistency", "before": before, "after": after }),
    }
}

pub fn report_json(report: &QueryReport) -> Value {
    let mut stats: serde_json::Map<String, Value> =
        report.stats.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
    if let Some(ms) = report.elapsed_ms {
        stats.insert("elapsed_ms".into(), Value::from(ms));
    }
    json!({
        "engine": report.engine.name(),
        "query": report.query,
        "verdict": if report.entailed { "entailed" } else { "not-entailed" },
        "witnesses": report.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
        "stats": stats,
    })
}

fn braces<S: AsRef<str>>(items: &[S]) -> String {
    let v: Vec<&str> = items.iter().map(AsRef::as_ref).collect();
    format!("{{{}}}", v.join(", "))
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Interpretation(i) => format!("preferred interpretation {i} falsifies the query"),
        Witness::Subbase(labels) => format!("sub-base {} does not entail the query", braces(labels)),
        Witness::Extension { levels, interpretation } => {
            let order: Vec<String> = levels.iter().map(|l| braces(l)).collect();
            format!(
                "compatible order {} has most possible interpretation {interpretation} falsifying the query",
                order.join(" < ")
            )
        }
        Witness::Inconsistency { before, after } => format!("Inc grows from {} to {}", braces(before), braces(after)),
    }
}

pub fn format_report(report: &QueryReport, mode: Mode) -> String {
    match mode {
        Mode::Json => format!("{}\n", report_json(report)),
        Mode::Text => {
            let verdict = if report.entailed { "ENTAILED" } else { "NOT ENTAILED" };
            let mut out = format!("{verdict} (engine={})\nquery: {}\n", report.engine, report.query);
            for w in &report.witnesses {
                out.push_str(&format!("witness: {}\n", witness_text(w)));
            }
            for (k, v) in &report.stats {
                out.push_str(&format!("{}: {v}\n", k.replace('_', " ")));
            }
            if let Some(ms) = report.elapsed_ms {
                out.push_str(&format!("elapsed: {ms:.3} ms\n"));
            }
            out
        }
    }
}
