//! Timed clauses over a boolean lattice of time points, the baseline that
//! partially ordered bases improve on. Weights are sets of time points,
//! combined by intersection along resolution.
//!
//! Text format:
//!
//! ```text
//! times t1 t2 t3       (optional; otherwise the sorted time points used)
//! a @ {t1, t2}
//! ~a | b @ {t3}
//! ```
//!
//! Each formula is put in CNF and every clause gets the given time set.

use std::fmt;

use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, to_cnf, Clause, Formula};
use crate::kb::is_label;

/// The time points `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimePointUniverse {
    names: Vec<String>,
}

impl TimePointUniverse {
    pub fn new<I, S>(names: I) -> Result<TimePointUniverse>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Invalid("a time universe needs at least one time point".into()));
        }
        if names.len() > MAX_ELEMENTS {
            return Err(Error::CapExceeded {
                what: "time point",
                limit: MAX_ELEMENTS,
                actual: names.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if !is_label(n) {
                return Err(Error::Invalid(format!("`{n}` is not a valid time point name")));
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateLabel(n.clone()));
            }
        }
        Ok(TimePointUniverse { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.names.len())
    }

    pub fn subset(&self, names: &[&str]) -> Result<ElemSet> {
        names
            .iter()
            .map(|n| {
                self.names
                    .iter()
                    .position(|m| m == n)
                    .ok_or_else(|| Error::UnknownElement(n.to_string()))
            })
            .collect()
    }

    pub fn names_of(&self, s: ElemSet) -> Vec<&str> {
        s.iter().map(|i| self.names[i].as_str()).collect()
    }

    /// `{t1, t2}`
    pub fn show(&self, s: ElemSet) -> String {
        format!("{{{}}}", self.names_of(s).join(", "))
    }
}

/// `(C, τ)`: clause `C` holds at least at the time points in `τ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedClause {
    pub clause: Clause,
    pub tau: ElemSet,
}

impl TimedClause {
    pub fn new(clause: Clause, tau: ElemSet) -> TimedClause {
        TimedClause { clause, tau }
    }

    /// Same-or-smaller clause, same-or-larger time set.
    pub fn dominates(&self, other: &TimedClause) -> bool {
        self.clause.is_subset(&other.clause) && other.tau.is_subset(self.tau)
    }
}

impl fmt::Display for TimedClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.clause, self.tau)
    }
}

/// Resolves on the single complementary pair, intersecting the time sets.
/// No pair, or more than one (which would give a tautology), yields `None`.
pub fn resolve(tc1: &TimedClause, tc2: &TimedClause) -> Option<TimedClause> {
    let mut pairs = tc1.clause.literals().filter(|l| tc2.clause.contains(&l.complement()));
    let lit = pairs.next()?.clone();
    if pairs.next().is_some() {
        return None;
    }
    let resolvent = tc1.clause.without(&lit).union(&tc2.clause.without(&lit.complement()));
    Some(TimedClause::new(resolvent, tc1.tau.intersection(tc2.tau)))
}

/// Saturation under [`resolve`], keeping only undominated pairs.
fn saturate(base: &[TimedClause]) -> Vec<TimedClause> {
    let mut kept: Vec<Option<TimedClause>> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();

    fn add(kept: &mut Vec<Option<TimedClause>>, queue: &mut Vec<usize>, tc: TimedClause) {
        if tc.clause.is_tautology() || kept.iter().flatten().any(|k| k.dominates(&tc)) {
            return;
        }
        for slot in kept.iter_mut() {
            if slot.as_ref().is_some_and(|k| tc.dominates(k)) {
                *slot = None;
            }
        }
        kept.push(Some(tc));
        queue.push(kept.len() - 1);
    }

    for tc in base {
        add(&mut kept, &mut queue, tc.clone());
    }
    while let Some(i) = queue.pop() {
        let Some(tc) = kept[i].clone() else { continue };
        let resolvents: Vec<TimedClause> = kept
            .iter()
            .flatten()
            .filter_map(|other| resolve(&tc, other))
            .collect();
        for r in resolvents {
            add(&mut kept, &mut queue, r);
        }
    }
    kept.into_iter().flatten().collect()
}

/// `Inc(F)`: the union of the time sets of every derivable empty clause.
pub fn inc(f: &[TimedClause]) -> ElemSet {
    saturate(f)
        .iter()
        .filter(|tc| tc.clause.is_empty())
        .fold(ElemSet::EMPTY, |acc, tc| acc.union(tc.tau))
}

/// `ψ` is plausible when adding `(¬ψ, T)` strictly enlarges `Inc`.
pub fn lattice_plausible(f: &[TimedClause], psi: &Formula, universe: &TimePointUniverse) -> bool {
    let before = inc(f);
    let mut extended = f.to_vec();
    extended.extend(
        to_cnf(&Formula::not(psi.clone()))
            .clauses()
            .map(|c| TimedClause::new(c.clone(), universe.all())),
    );
    before.is_proper_subset(inc(&extended))
}

/// A timed clause base read from text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedBase {
    pub times: TimePointUniverse,
    pub clauses: Vec<TimedClause>,
}

impl TimedBase {
    pub fn inc(&self) -> ElemSet {
        inc(&self.clauses)
    }

    pub fn plausible(&self, psi: &Formula) -> bool {
        lattice_plausible(&self.clauses, psi, &self.times)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::KbSyntax {
        line,
        message: message.into(),
    }
}

pub fn load_timed(text: &str) -> Result<TimedBase> {
    let mut declared: Option<Vec<String>> = None;
    let mut entries: Vec<(usize, Formula, Vec<String>)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("times ").or((content == "times").then_some("")) {
            if declared.is_some() {
                return Err(syntax(line, "`times` declared twice"));
            }
            declared = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let Some((body, times)) = content.rsplit_once('@') else {
            return Err(syntax(line, "expected `<formula> @ {t1, t2, ...}`"));
        };
        let times = times.trim();
        let Some(inner) = times.strip_prefix('{').and_then(|t| t.strip_suffix('}')) else {
            return Err(syntax(line, "time set must be written `{t1, t2, ...}`"));
        };
        let names: Vec<String> = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect();
        let f = parse_formula(body).map_err(|e| syntax(line, e.to_string()))?;
        entries.push((line, f, names));
    }

    let times = match declared {
        Some(names) => TimePointUniverse::new(names)?,
        None => {
            let mut all: Vec<String> = entries.iter().flat_map(|(_, _, t)| t.iter().cloned()).collect();
            all.sort();
            all.dedup();
            TimePointUniverse::new(all)?
        }
    };
    let mut clauses = Vec::new();
    for (line, f, names) in entries {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let tau = times.subset(&refs).map_err(|e| e.at_line(line))?;
        clauses.extend(to_cnf(&f).clauses().map(|c| TimedClause::new(c.clone(), tau)));
    }
    Ok(TimedBase { times, clauses })
}
