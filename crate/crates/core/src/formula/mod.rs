//! Propositional formulas: syntax, evaluation, satisfiability and clausal form.

mod cnf;
mod parse;
mod sat;
mod universe;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use cnf::{to_cnf, Clause, ClauseSet, Literal};
pub use parse::parse_formula;
pub use sat::{entails, is_consistent, is_tautology};
pub use universe::{satisfies, Compiled, Interpretation, ModelSet, Universe};

pub(crate) use sat::consistent_compiled;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(children: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::And(children.into_iter().collect())
    }

    pub fn or(children: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::Or(children.into_iter().collect())
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    /// Negation that does not stack: `negate(~p)` is `p`.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Not(inner) => (**inner).clone(),
            other => Formula::not(other.clone()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(inner) => inner.collect_atoms(out),
            Formula::And(children) | Formula::Or(children) => {
                for c in children {
                    c.collect_atoms(out);
                }
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Evaluate under a name-based valuation. Unknown atoms yield `None`.
    pub fn eval<F>(&self, value: &F) -> Option<bool>
    where
        F: Fn(&str) -> Option<bool>,
    {
        Some(match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(name) => value(name)?,
            Formula::Not(inner) => !inner.eval(value)?,
            Formula::And(children) => {
                let mut acc = true;
                for c in children {
                    acc &= c.eval(value)?;
                }
                acc
            }
            Formula::Or(children) => {
                let mut acc = false;
                for c in children {
                    acc |= c.eval(value)?;
                }
                acc
            }
            Formula::Implies(l, r) => !l.eval(value)? || r.eval(value)?,
            Formula::Iff(l, r) => l.eval(value)? == r.eval(value)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(c) if c.len() >= 2 => 3,
            Formula::And(c) if c.len() >= 2 => 4,
            // Degenerate connectives print as constants or as their only child.
            Formula::Or(c) | Formula::And(c) if c.len() == 1 => c[0].precedence(),
            _ => 6,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        let prec = self.precedence();
        match self {
            Formula::Top => f.write_str("true"),
            Formula::Bottom => f.write_str("false"),
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(inner) => {
                f.write_str("~")?;
                child(f, inner, inner.precedence() < 6)
            }
            Formula::And(children) | Formula::Or(children) => {
                let (empty, sep) = match self {
                    Formula::And(_) => ("true", " & "),
                    _ => ("false", " | "),
                };
                match children.as_slice() {
                    [] => f.write_str(empty),
                    [only] => write!(f, "{only}"),
                    _ => {
                        for (i, c) in children.iter().enumerate() {
                            if i > 0 {
                                f.write_str(sep)?;
                            }
                            child(f, c, c.precedence() <= prec)?;
                        }
                        Ok(())
                    }
                }
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                let op = if matches!(self, Formula::Implies(..)) {
                    " -> "
                } else {
                    " <-> "
                };
                child(f, l, l.precedence() <= prec)?;
                f.write_str(op)?;
                child(f, r, r.precedence() < prec)
            }
        }
    }
}

impl FromStr for Formula {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}
