//! Partial pre-orders over named elements and their compatible total
//! pre-orders.
//!
//! Throughout, smaller means more preferred: `x ⪯ y` reads "x is at least as
//! preferred as y", and level 0 of a [`TotalPreorder`] holds the most
//! preferred elements.

use std::fmt;

use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// `x < y`: x strictly preferred to y.
    Strict,
    /// `x <= y`: x at least as preferred as y.
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: String,
    pub kind: EdgeKind,
    pub to: String,
}

impl Edge {
    pub fn strict(from: impl Into<String>, to: impl Into<String>) -> Edge {
        Edge {
            from: from.into(),
            kind: EdgeKind::Strict,
            to: to.into(),
        }
    }

    pub fn weak(from: impl Into<String>, to: impl Into<String>) -> Edge {
        Edge {
            from: from.into(),
            kind: EdgeKind::Weak,
            to: to.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Equivalent,
    FirstPreferred,
    SecondPreferred,
    Incomparable,
}

impl Relation {
    pub fn swapped(self) -> Relation {
        match self {
            Relation::FirstPreferred => Relation::SecondPreferred,
            Relation::SecondPreferred => Relation::FirstPreferred,
            other => other,
        }
    }
}

/// A reflexive, transitive relation over at most [`MAX_ELEMENTS`] named
/// elements. Row `x` of the matrix holds `{y : x ⪯ y}`.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialPreorder {
    names: Vec<String>,
    up: Vec<ElemSet>,
}

impl PartialPreorder {
    /// Closes `edges` reflexively and transitively, treating both kinds as
    /// `⪯`, then checks that no strict edge collapsed into an equivalence.
    pub fn build(elements: Vec<String>, edges: &[Edge]) -> Result<PartialPreorder> {
        let mut p = PartialPreorder::discrete(elements)?;
        let mut strict = Vec::new();
        for e in edges {
            let x = p.require(&e.from)?;
            let y = p.require(&e.to)?;
            p.up[x].insert(y);
            if e.kind == EdgeKind::Strict {
                strict.push((x, y));
            }
        }
        p.close();
        for (x, y) in strict {
            if p.leq(y, x) {
                return Err(Error::StrictContradiction(p.names[x].clone(), p.names[y].clone()));
            }
        }
        Ok(p)
    }

    /// No relation between distinct elements.
    pub fn discrete(elements: Vec<String>) -> Result<PartialPreorder> {
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::CapExceeded {
                what: "element",
                limit: MAX_ELEMENTS,
                actual: elements.len(),
            });
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::DuplicateLabel(e.clone()));
            }
        }
        let up = (0..elements.len()).map(ElemSet::singleton).collect();
        Ok(PartialPreorder { names: elements, up })
    }

    /// Builds from an arbitrary relation given as `leq(x, y)`, closing it.
    pub(crate) fn from_fn(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<PartialPreorder> {
        let mut p = PartialPreorder::discrete(elements)?;
        let n = p.len();
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    p.up[x].insert(y);
                }
            }
        }
        p.close();
        Ok(p)
    }

    fn close(&mut self) {
        let n = self.len();
        for k in 0..n {
            for i in 0..n {
                if self.up[i].contains(k) {
                    self.up[i] = self.up[i].union(self.up[k]);
                }
            }
        }
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownElement(name.to_string()))
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

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// `x ⪯ y`
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `x ≺ y`
    pub fn strict(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    /// `x ≈ y`
    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    pub fn relate(&self, x: usize, y: usize) -> Relation {
        match (self.leq(x, y), self.leq(y, x)) {
            (true, true) => Relation::Equivalent,
            (true, false) => Relation::FirstPreferred,
            (false, true) => Relation::SecondPreferred,
            (false, false) => Relation::Incomparable,
        }
    }

    pub fn relate_names(&self, x: &str, y: &str) -> Result<Relation> {
        Ok(self.relate(self.require(x)?, self.require(y)?))
    }

    /// `{x : x ≺ y}`
    pub fn strictly_above(&self, y: usize) -> ElemSet {
        (0..self.len()).filter(|&x| self.strict(x, y)).collect()
    }

    /// `{z : x ≺ z}`
    pub fn strictly_below(&self, x: usize) -> ElemSet {
        self.up[x].iter().filter(|&z| !self.leq(z, x)).collect()
    }

    /// `{y : x ≈ y}`, including `x`.
    pub fn class_of(&self, x: usize) -> ElemSet {
        self.up[x].iter().filter(|&y| self.leq(y, x)).collect()
    }

    /// `Min(S, ≺)` with `≺` restricted to `S`.
    pub fn min_set(&self, s: ElemSet) -> ElemSet {
        s.iter()
            .filter(|&y| !s.iter().any(|x| self.strict(x, y)))
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    pub fn incomparable_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.relate(x, y) == Relation::Incomparable)
    }

    /// The `≈`-classes, ordered by their smallest element.
    pub fn classes(&self) -> Vec<ElemSet> {
        let mut seen = ElemSet::EMPTY;
        let mut out = Vec::new();
        for x in 0..self.len() {
            if !seen.contains(x) {
                let c = self.class_of(x);
                seen = seen.union(c);
                out.push(c);
            }
        }
        out
    }

    /// Restriction to `keep`; element indices are renumbered in increasing
    /// order of the original indices.
    pub fn restrict(&self, keep: ElemSet) -> PartialPreorder {
        let idx: Vec<usize> = keep.iter().collect();
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let up = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.leq(i, j))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        PartialPreorder { names, up }
    }

    /// A small edge list generating this order: `=` links inside each class
    /// and `<` covering links between classes.
    pub fn generating_edges(&self) -> Vec<Edge> {
        let classes = self.classes();
        let mut edges = Vec::new();
        for c in &classes {
            let members: Vec<usize> = c.iter().collect();
            for w in members.windows(2) {
                edges.push(Edge::weak(self.name(w[0]), self.name(w[1])));
                edges.push(Edge::weak(self.name(w[1]), self.name(w[0])));
            }
        }
        let rep = |c: &ElemSet| c.first().unwrap();
        for a in &classes {
            for b in &classes {
                let (x, y) = (rep(a), rep(b));
                if !self.strict(x, y) {
                    continue;
                }
                let covered = classes.iter().any(|m| {
                    let z = rep(m);
                    self.strict(x, z) && self.strict(z, y)
                });
                if !covered {
                    edges.push(Edge::strict(self.name(x), self.name(y)));
                }
            }
        }
        edges
    }

    /// Every total pre-order compatible with this one, produced lazily and
    /// without duplicates.
    ///
    /// With no relations the count is the ordered Bell (Fubini) number of
    /// the element count: 1, 1, 3, 13, 75, 541, 4683, 47293, ...
    pub fn weak_order_extensions(&self) -> WeakOrderExtensions {
        WeakOrderExtensions::new(self)
    }
}

impl fmt::Debug for PartialPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_list();
        for e in self.generating_edges() {
            let op = match e.kind {
                EdgeKind::Strict => "<",
                EdgeKind::Weak => "<=",
            };
            d.entry(&format_args!("{} {op} {}", e.from, e.to));
        }
        d.finish()
    }
}

/// An ordered partition into nonempty levels; level 0 is most preferred.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalPreorder<T> {
    levels: Vec<Vec<T>>,
}

impl<T: Ord + Clone> TotalPreorder<T> {
    /// Levels are sorted internally; empty levels are rejected.
    pub fn new(levels: Vec<Vec<T>>) -> Result<TotalPreorder<T>> {
        if levels.iter().any(Vec::is_empty) {
            return Err(Error::Invalid("total pre-order levels must be nonempty".into()));
        }
        let mut levels = levels;
        for l in &mut levels {
            l.sort();
        }
        let mut all: Vec<&T> = levels.iter().flatten().collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("total pre-order levels must be disjoint".into()));
        }
        Ok(TotalPreorder { levels })
    }

    pub fn levels(&self) -> &[Vec<T>] {
        &self.levels
    }

    pub fn level_of(&self, x: &T) -> Option<usize> {
        self.levels.iter().position(|l| l.binary_search(x).is_ok())
    }

    pub fn leq(&self, x: &T, y: &T) -> Option<bool> {
        Some(self.level_of(x)? <= self.level_of(y)?)
    }
}

impl TotalPreorder<usize> {
    /// The same order as a [`PartialPreorder`] over `names`.
    pub fn to_partial(&self, names: &[String]) -> Result<PartialPreorder> {
        let mut rank = vec![usize::MAX; names.len()];
        for (k, l) in self.levels.iter().enumerate() {
            for &x in l {
                *rank.get_mut(x).ok_or_else(|| Error::UnknownElement(x.to_string()))? = k;
            }
        }
        if rank.contains(&usize::MAX) {
            return Err(Error::Invalid("total pre-order does not cover every element".into()));
        }
        PartialPreorder::from_fn(names.to_vec(), |x, y| rank[x] <= rank[y])
    }
}

struct Frame {
    remaining: u64,
    minimal: u64,
    next_choice: u64,
}

/// Iterator over compatible total pre-orders.
///
/// Works on the `≈`-quotient: each level is a nonempty set of classes that
/// are `≺`-minimal among the classes not yet placed. Every compatible
/// extension arises from exactly one such sequence of choices.
pub struct WeakOrderExtensions {
    classes: Vec<ElemSet>,
    preds: Vec<u64>,
    frames: Vec<Frame>,
    chosen: Vec<u64>,
    started: bool,
}

impl WeakOrderExtensions {
    fn new(p: &PartialPreorder) -> WeakOrderExtensions {
        let classes = p.classes();
        let rep: Vec<usize> = classes.iter().map(|c| c.first().unwrap()).collect();
        let preds = rep
            .iter()
            .map(|&y| {
                rep.iter()
                    .enumerate()
                    .filter(|&(_, &x)| p.strict(x, y))
                    .fold(0u64, |m, (d, _)| m | 1 << d)
            })
            .collect();
        WeakOrderExtensions {
            classes,
            preds,
            frames: Vec::new(),
            chosen: Vec::new(),
            started: false,
        }
    }

    fn frame(&self, remaining: u64) -> Frame {
        let minimal = (0..self.classes.len())
            .filter(|&c| remaining >> c & 1 == 1 && self.preds[c] & remaining == 0)
            .fold(0u64, |m, c| m | 1 << c);
        Frame {
            remaining,
            minimal,
            next_choice: minimal,
        }
    }

    fn materialize(&self) -> TotalPreorder<usize> {
        let levels = self
            .chosen
            .iter()
            .map(|&mask| {
                let mut l: Vec<usize> = (0..self.classes.len())
                    .filter(|&c| mask >> c & 1 == 1)
                    .flat_map(|c| self.classes[c].iter())
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        TotalPreorder { levels }
    }
}

impl Iterator for WeakOrderExtensions {
    type Item = TotalPreorder<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            if self.classes.is_empty() {
                return Some(TotalPreorder { levels: Vec::new() });
            }
            let all = ElemSet::full(self.classes.len()).bits();
            let f = self.frame(all);
            self.frames.push(f);
        }
        loop {
            let depth = self.frames.len();
            let top = self.frames.last_mut()?;
            if top.next_choice == 0 {
                self.frames.pop();
                continue;
            }
            let choice = top.next_choice;
            top.next_choice = (choice - 1) & top.minimal;
            let rest = top.remaining & !choice;
            self.chosen.truncate(depth - 1);
            self.chosen.push(choice);
            if rest == 0 {
                return Some(self.materialize());
            }
            let f = self.frame(rest);
            self.frames.push(f);
        }
    }
}
