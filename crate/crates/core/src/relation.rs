//! Finite relation algebra over an explicit, sorted universe.
//!
//! Every check in this crate is phrased as an equation or inclusion between
//! relations built from the operators here. The composition convention is
//! fixed once:
//!
//! ```text
//! compose(outer, inner) = outer ∘ inner = { (x, z) | ∃y. inner(x, y) ∧ outer(y, z) }
//! ```
//!
//! so `compose(W, compose(A, F))` reads "apply F, then A, then W", and the
//! graph of a function `f` is the relation `{ (x, f(x)) }` ([`FnGraph`]).
//!
//! Relations are stored as sorted sets of index pairs into a shared
//! [`Universe`], which keeps iteration order deterministic (lexicographic in
//! the universe order) and makes cloning cheap.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::union_find::DisjointSets;

/// Default cap on the number of pairs the subset-enumeration oracles accept.
pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Anything that can be a point of a finite universe.
pub trait Atom: Ord + Clone + Hash + fmt::Debug + Send + Sync {}

impl<T: Ord + Clone + Hash + fmt::Debug + Send + Sync> Atom for T {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelError {
    #[error("relations are over different universes")]
    UniverseMismatch,
    #[error("element {0} is not in the universe")]
    UnknownElement(String),
    #[error("relation is not functional at {0}")]
    NotFunctional(String),
    #[error("relation is not total at {0}")]
    NotTotal(String),
    #[error("oracle infeasible: {size} exceeds the enumeration cap of {cap}")]
    OracleInfeasible { size: usize, cap: usize },
}

/// The five element sorts of a network, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Symbol,
    Node,
    Hook,
    Edge,
    Facet,
}

impl Sort {
    pub const ALL: [Sort; 5] = [Sort::Symbol, Sort::Node, Sort::Hook, Sort::Edge, Sort::Facet];

    pub fn keyword(self) -> &'static str {
        match self {
            Sort::Symbol => "symbol",
            Sort::Node => "node",
            Sort::Hook => "hook",
            Sort::Edge => "edge",
            Sort::Facet => "facet",
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A sorted identifier. Ordering is by sort, then by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    sort: Sort,
    name: Arc<str>,
}

impl Element {
    pub fn new(sort: Sort, name: impl AsRef<str>) -> Self {
        Self {
            sort,
            name: Arc::from(name.as_ref()),
        }
    }

    pub fn symbol(name: impl AsRef<str>) -> Self {
        Self::new(Sort::Symbol, name)
    }
    pub fn node(name: impl AsRef<str>) -> Self {
        Self::new(Sort::Node, name)
    }
    pub fn hook(name: impl AsRef<str>) -> Self {
        Self::new(Sort::Hook, name)
    }
    pub fn edge(name: impl AsRef<str>) -> Self {
        Self::new(Sort::Edge, name)
    }
    pub fn facet(name: impl AsRef<str>) -> Self {
        Self::new(Sort::Facet, name)
    }

    pub fn sort(&self) -> Sort {
        self.sort
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.sort, self.name)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name)
    }
}

/// A finite, sorted, duplicate-free set of points shared by relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe<T> {
    elems: Vec<T>,
}

impl<T: Atom> Universe<T> {
    pub fn new(elems: impl IntoIterator<Item = T>) -> Arc<Self> {
        let set: BTreeSet<T> = elems.into_iter().collect();
        Arc::new(Self {
            elems: set.into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.elems.binary_search(x).ok()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index_of(x).is_some()
    }

    pub fn get(&self, i: usize) -> &T {
        &self.elems[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elems.iter()
    }

    fn require(&self, x: &T) -> Result<u32, RelError> {
        self.index_of(x)
            .map(|i| i as u32)
            .ok_or_else(|| RelError::UnknownElement(format!("{x:?}")))
    }
}

/// A finite binary relation over an explicit universe.
#[derive(Clone)]
pub struct Relation<T = Element> {
    universe: Arc<Universe<T>>,
    pairs: BTreeSet<(u32, u32)>,
}

impl<T: Atom> Relation<T> {
    /// The empty relation ⊥.
    pub fn empty(universe: &Arc<Universe<T>>) -> Self {
        Self {
            universe: Arc::clone(universe),
            pairs: BTreeSet::new(),
        }
    }

    pub fn from_pairs(universe: &Arc<Universe<T>>, pairs: impl IntoIterator<Item = (T, T)>) -> Result<Self, RelError> {
        let mut out = Self::empty(universe);
        for (x, y) in pairs {
            let i = universe.require(&x)?;
            let j = universe.require(&y)?;
            out.pairs.insert((i, j));
        }
        Ok(out)
    }

    /// The identity on the whole universe.
    pub fn identity(universe: &Arc<Universe<T>>) -> Self {
        Self {
            universe: Arc::clone(universe),
            pairs: (0..universe.len() as u32).map(|i| (i, i)).collect(),
        }
    }

    pub fn universe(&self) -> &Arc<Universe<T>> {
        &self.universe
    }

    pub fn same_universe(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: &T, y: &T) -> bool {
        match (self.universe.index_of(x), self.universe.index_of(y)) {
            (Some(i), Some(j)) => self.pairs.contains(&(i as u32, j as u32)),
            _ => false,
        }
    }

    /// Pairs in lexicographic universe order.
    pub fn iter(&self) -> impl Iterator<Item = (&T, &T)> + '_ {
        self.pairs
            .iter()
            .map(|&(i, j)| (self.universe.get(i as usize), self.universe.get(j as usize)))
    }

    pub fn to_pairs(&self) -> Vec<(T, T)> {
        self.iter().map(|(x, y)| (x.clone(), y.clone())).collect()
    }

    /// `{ y | R(x, y) }` in universe order.
    pub fn row<'a>(&'a self, x: &T) -> impl Iterator<Item = &'a T> + 'a {
        let idx = self.universe.index_of(x).map(|i| i as u32);
        idx.into_iter().flat_map(move |i| {
            self.pairs
                .range((i, 0)..=(i, u32::MAX))
                .map(move |&(_, j)| self.universe.get(j as usize))
        })
    }

    /// First components.
    pub fn domain(&self) -> BTreeSet<T> {
        self.iter().map(|(x, _)| x.clone()).collect()
    }

    /// Second components.
    pub fn range(&self) -> BTreeSet<T> {
        self.iter().map(|(_, y)| y.clone()).collect()
    }

    /// `R[S] = { y | ∃x ∈ S. R(x, y) }`.
    pub fn image<'a>(&self, set: impl IntoIterator<Item = &'a T>) -> BTreeSet<T>
    where
        T: 'a,
    {
        let mut out = BTreeSet::new();
        for x in set {
            out.extend(self.row(x).cloned());
        }
        out
    }

    /// Keeps only the pairs selected by `keep`, given pair positions in
    /// iteration order. Used by the subset-enumeration oracles.
    pub fn select(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        Self {
            universe: Arc::clone(&self.universe),
            pairs: self
                .pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| keep(*k))
                .map(|(_, p)| *p)
                .collect(),
        }
    }

    /// Pairs of `self` not in `other`.
    pub fn difference(&self, other: &Self) -> Result<Self, RelError> {
        check_universe(self, other)?;
        Ok(Self {
            universe: Arc::clone(&self.universe),
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        })
    }

    /// Restriction to pairs whose components both satisfy `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&T) -> bool) -> Self {
        let u = &self.universe;
        Self {
            universe: Arc::clone(u),
            pairs: self
                .pairs
                .iter()
                .filter(|(i, j)| keep(u.get(*i as usize)) && keep(u.get(*j as usize)))
                .copied()
                .collect(),
        }
    }
}

impl<T: Atom> PartialEq for Relation<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_universe(other) && self.pairs == other.pairs
    }
}

impl<T: Atom> Eq for Relation<T> {}

impl<T: Atom> Hash for Relation<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe.hash(state);
        self.pairs.hash(state);
    }
}

impl<T: Atom> fmt::Debug for Relation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

fn check_universe<T: Atom>(a: &Relation<T>, b: &Relation<T>) -> Result<(), RelError> {
    if a.same_universe(b) {
        Ok(())
    } else {
        Err(RelError::UniverseMismatch)
    }
}

/// `outer ∘ inner`: `(x, z)` iff some `y` has `inner(x, y)` and `outer(y, z)`.
pub fn compose<T: Atom>(outer: &Relation<T>, inner: &Relation<T>) -> Result<Relation<T>, RelError> {
    check_universe(outer, inner)?;
    let mut pairs = BTreeSet::new();
    for &(x, y) in &inner.pairs {
        for &(_, z) in outer.pairs.range((y, 0)..=(y, u32::MAX)) {
            pairs.insert((x, z));
        }
    }
    Ok(Relation {
        universe: Arc::clone(&outer.universe),
        pairs,
    })
}

/// Composes a chain left to right as written: `chain(&[a, b, c]) = a ∘ b ∘ c`.
pub fn chain<T: Atom>(rels: &[&Relation<T>]) -> Result<Relation<T>, RelError> {
    let (last, rest) = rels.split_last().expect("chain of at least one relation");
    let mut acc = (*last).clone();
    for r in rest.iter().rev() {
        acc = compose(r, &acc)?;
    }
    Ok(acc)
}

pub fn inverse<T: Atom>(r: &Relation<T>) -> Relation<T> {
    Relation {
        universe: Arc::clone(&r.universe),
        pairs: r.pairs.iter().map(|&(x, y)| (y, x)).collect(),
    }
}

pub fn join<T: Atom>(r: &Relation<T>, q: &Relation<T>) -> Result<Relation<T>, RelError> {
    check_universe(r, q)?;
    Ok(Relation {
        universe: Arc::clone(&r.universe),
        pairs: r.pairs.union(&q.pairs).copied().collect(),
    })
}

pub fn meet<T: Atom>(r: &Relation<T>, q: &Relation<T>) -> Result<Relation<T>, RelError> {
    check_universe(r, q)?;
    Ok(Relation {
        universe: Arc::clone(&r.universe),
        pairs: r.pairs.intersection(&q.pairs).copied().collect(),
    })
}

/// `id_S = { (x, x) | x ∈ S }`.
pub fn id_on<'a, T: Atom + 'a>(
    universe: &Arc<Universe<T>>,
    set: impl IntoIterator<Item = &'a T>,
) -> Result<Relation<T>, RelError> {
    let mut out = Relation::empty(universe);
    for x in set {
        let i = universe.require(x)?;
        out.pairs.insert((i, i));
    }
    Ok(out)
}

/// `r ⊆ q`.
pub fn is_sub<T: Atom>(r: &Relation<T>, q: &Relation<T>) -> Result<bool, RelError> {
    check_universe(r, q)?;
    Ok(r.pairs.is_subset(&q.pairs))
}

/// The graph `{ (x, f(x)) }` of a function on a stated domain.
#[derive(Clone)]
pub struct FnGraph<T = Element> {
    graph: Relation<T>,
    domain: BTreeSet<u32>,
}

impl<T: Atom> PartialEq for FnGraph<T> {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.domain == other.domain
    }
}

impl<T: Atom> Eq for FnGraph<T> {}

impl<T: Atom> Hash for FnGraph<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
        self.domain.hash(state);
    }
}

impl<T: Atom> FnGraph<T> {
    /// Checks that `graph` has exactly one pair `(x, _)` for each `x` in
    /// `domain` and none outside it.
    pub fn new(graph: Relation<T>, domain: impl IntoIterator<Item = T>) -> Result<Self, RelError> {
        let u = Arc::clone(graph.universe());
        let mut dom = BTreeSet::new();
        for x in domain {
            dom.insert(u.require(&x)?);
        }
        let mut seen: Option<u32> = None;
        for &(x, _) in &graph.pairs {
            if !dom.contains(&x) {
                return Err(RelError::NotFunctional(format!("{:?}", u.get(x as usize))));
            }
            if seen == Some(x) {
                return Err(RelError::NotFunctional(format!("{:?}", u.get(x as usize))));
            }
            seen = Some(x);
        }
        if let Some(&missing) = dom
            .iter()
            .find(|&&x| graph.pairs.range((x, 0)..=(x, u32::MAX)).next().is_none())
        {
            return Err(RelError::NotTotal(format!("{:?}", u.get(missing as usize))));
        }
        Ok(Self { graph, domain: dom })
    }

    /// Builds the graph of a map given as `(x, f(x))` entries; the domain is
    /// the set of keys.
    pub fn from_map(universe: &Arc<Universe<T>>, entries: impl IntoIterator<Item = (T, T)>) -> Result<Self, RelError> {
        let entries: Vec<(T, T)> = entries.into_iter().collect();
        let domain: Vec<T> = entries.iter().map(|(x, _)| x.clone()).collect();
        let graph = Relation::from_pairs(universe, entries)?;
        Self::new(graph, domain)
    }

    pub fn relation(&self) -> &Relation<T> {
        &self.graph
    }

    pub fn apply(&self, x: &T) -> Option<&T> {
        self.graph.row(x).next()
    }

    pub fn domain(&self) -> impl Iterator<Item = &T> + '_ {
        self.domain.iter().map(|&i| self.graph.universe.get(i as usize))
    }
}

impl<T: Atom> fmt::Debug for FnGraph<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.graph.fmt(f)
    }
}

impl<T: Atom> AsRef<Relation<T>> for FnGraph<T> {
    fn as_ref(&self) -> &Relation<T> {
        &self.graph
    }
}

/// Distinct pairs `(x, z)` with `f(x) = f(z)` that share a first component
/// in `r`: the off-diagonal part of `f̄⁻¹∘f̄ ∩ R∘R⁻¹`.
pub fn minimality_conflicts<T: Atom>(r: &Relation<T>, f: &FnGraph<T>) -> Result<Vec<(T, T)>, RelError> {
    let fbar = f.relation();
    let kernel = compose(&inverse(fbar), fbar)?;
    let siblings = compose(r, &inverse(r))?;
    let both = meet(&kernel, &siblings)?;
    let id = Relation::identity(r.universe());
    Ok(both.difference(&id)?.to_pairs())
}

/// `r` is minimal relative to `f` iff `f̄⁻¹∘f̄ ∩ R∘R⁻¹ ⊆ id`.
pub fn is_minimal_rel_function<T: Atom>(r: &Relation<T>, f: &FnGraph<T>) -> Result<bool, RelError> {
    Ok(minimality_conflicts(r, f)?.is_empty())
}

/// Definitional check: no proper sub-relation `R* ⊊ R` has `f̄∘R* = f̄∘R`.
/// Enumerates every subset, so `|R|` must not exceed `cap`.
pub fn minimal_rel_function_oracle<T: Atom>(r: &Relation<T>, f: &FnGraph<T>, cap: usize) -> Result<bool, RelError> {
    check_universe(r, f.relation())?;
    let n = r.len();
    if n > cap || n >= 63 {
        return Err(RelError::OracleInfeasible { size: n, cap });
    }
    let full_image = compose(f.relation(), r)?;
    let full: u64 = (1u64 << n) - 1;
    for mask in 0..full {
        let sub = r.select(|k| mask & (1 << k) != 0);
        if compose(f.relation(), &sub)? == full_image {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the undirected multigraph with one edge per pair of `r` has no
/// cycle. A reflexive pair is a loop and `(x, y)` together with `(y, x)` is a
/// cycle of length two.
pub fn is_forest<T: Atom>(r: &Relation<T>) -> bool {
    let mut ds = DisjointSets::new(r.universe.len());
    r.pairs.iter().all(|&(x, y)| ds.union(x as usize, y as usize))
}

/// Connected components of the undirected graph of `r` on the vertex set
/// `set`; pairs with an end outside `set` are ignored. Blocks are ordered by
/// their least element.
pub fn components<'a, T: Atom + 'a>(r: &Relation<T>, set: impl IntoIterator<Item = &'a T>) -> Vec<BTreeSet<T>> {
    let verts: Vec<T> = set.into_iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let pos = |x: &T| verts.binary_search(x).ok();
    let mut ds = DisjointSets::new(verts.len());
    for (x, y) in r.iter() {
        if let (Some(i), Some(j)) = (pos(x), pos(y)) {
            ds.union(i, j);
        }
    }
    ds.groups()
        .into_iter()
        .map(|g| g.into_iter().map(|i| verts[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Arc<Universe<char>> {
        Universe::new(['a', 'b', 'c', 'd'])
    }

    fn rel(u: &Arc<Universe<char>>, pairs: &[(char, char)]) -> Relation<char> {
        Relation::from_pairs(u, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let u = abc();
        let r = rel(&u, &[('a', 'b'), ('c', 'd')]);
        assert_eq!(compose(&Relation::identity(&u), &r).unwrap(), r);
        assert!(compose(&Relation::empty(&u), &r).unwrap().is_empty());
        let out = compose(&rel(&u, &[('b', 'c')]), &rel(&u, &[('a', 'b')])).unwrap();
        assert_eq!(out, rel(&u, &[('a', 'c')]));
    }

    #[test]
    fn chain_applies_rightmost_first() {
        let u = abc();
        let f = rel(&u, &[('a', 'b')]);
        let g = rel(&u, &[('b', 'c')]);
        let h = rel(&u, &[('c', 'd')]);
        assert_eq!(chain(&[&h, &g, &f]).unwrap(), rel(&u, &[('a', 'd')]));
    }

    #[test]
    fn boolean_operators() {
        let u = abc();
        let r = rel(&u, &[('a', 'b')]);
        assert_eq!(inverse(&r), rel(&u, &[('b', 'a')]));
        assert_eq!(meet(&r, &r).unwrap(), r);
        let j = join(&r, &rel(&u, &[('b', 'a')])).unwrap();
        assert_eq!(j, rel(&u, &[('a', 'b'), ('b', 'a')]));
        assert_eq!(id_on(&u, &['a', 'c']).unwrap(), rel(&u, &[('a', 'a'), ('c', 'c')]));
        assert!(is_sub(&r, &j).unwrap());
        assert!(!is_sub(&j, &r).unwrap());
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let u = abc();
        let v = Universe::new(['a', 'b']);
        let r = Relation::empty(&u);
        let q = Relation::empty(&v);
        assert_eq!(compose(&r, &q), Err(RelError::UniverseMismatch));
        assert_eq!(meet(&r, &q), Err(RelError::UniverseMismatch));
        assert!(Relation::from_pairs(&v, [('a', 'z')]).is_err());
        // Structurally equal universes built separately are the same universe.
        let u2 = Universe::new(['d', 'c', 'b', 'a']);
        assert!(compose(&r, &Relation::empty(&u2)).is_ok());
    }

    #[test]
    fn fn_graph_checks_totality_and_functionality() {
        let u = abc();
        assert!(FnGraph::from_map(&u, [('a', 'b'), ('b', 'b')]).is_ok());
        let not_fn = rel(&u, &[('a', 'b'), ('a', 'c')]);
        assert!(matches!(FnGraph::new(not_fn, ['a']), Err(RelError::NotFunctional(_))));
        let partial = rel(&u, &[('a', 'b')]);
        assert!(matches!(
            FnGraph::new(partial.clone(), ['a', 'c']),
            Err(RelError::NotTotal(_))
        ));
        assert!(matches!(FnGraph::new(partial, ['c']), Err(RelError::NotFunctional(_))));
    }

    #[test]
    fn row_of_unknown_element_is_empty() {
        let u = abc();
        let r = rel(&u, &[('a', 'b')]);
        assert_eq!(r.row(&'z').count(), 0);
        assert_eq!(r.row(&'a').copied().collect::<Vec<_>>(), vec!['b']);
    }

    fn hooks() -> (Arc<Universe<Element>>, FnGraph) {
        let n = Element::node("n");
        let m = Element::node("m");
        let h = |s: &str| Element::hook(s);
        let u = Universe::new([n.clone(), m.clone(), h("h1"), h("h2"), h("h3")]);
        let attach = FnGraph::from_map(&u, [(h("h1"), n.clone()), (h("h2"), n), (h("h3"), m)]).unwrap();
        (u, attach)
    }

    #[test]
    fn minimality_relative_to_attachment() {
        let (u, attach) = hooks();
        let h = |s: &str| Element::hook(s);
        let empty = Relation::empty(&u);
        assert!(is_minimal_rel_function(&empty, &attach).unwrap());
        assert!(minimal_rel_function_oracle(&empty, &attach, DEFAULT_ORACLE_CAP).unwrap());

        // h3 glued onto two hooks of the same node.
        let two = Relation::from_pairs(&u, [(h("h3"), h("h1")), (h("h3"), h("h2"))]).unwrap();
        assert!(!is_minimal_rel_function(&two, &attach).unwrap());
        assert!(!minimal_rel_function_oracle(&two, &attach, DEFAULT_ORACLE_CAP).unwrap());
        assert_eq!(minimality_conflicts(&two, &attach).unwrap().len(), 2);

        let one = Relation::from_pairs(&u, [(h("h3"), h("h1"))]).unwrap();
        assert!(is_minimal_rel_function(&one, &attach).unwrap());
        assert!(minimal_rel_function_oracle(&one, &attach, DEFAULT_ORACLE_CAP).unwrap());
    }

    #[test]
    fn oracle_detects_collapsed_targets() {
        let u = Universe::new(['a', 'b', 'c', 'x']);
        let collapse = FnGraph::from_map(&u, [('a', 'a'), ('b', 'x'), ('c', 'x'), ('x', 'x')]).unwrap();
        let r = rel(&u, &[('a', 'b'), ('a', 'c')]);
        assert!(!minimal_rel_function_oracle(&r, &collapse, DEFAULT_ORACLE_CAP).unwrap());
        assert!(!is_minimal_rel_function(&r, &collapse).unwrap());
    }

    #[test]
    fn oracle_refuses_past_cap() {
        let u = Universe::new(0u8..10);
        let r = Relation::from_pairs(&u, (0u8..9).map(|i| (i, i + 1))).unwrap();
        let f = FnGraph::from_map(&u, (0u8..10).map(|i| (i, i))).unwrap();
        assert_eq!(
            minimal_rel_function_oracle(&r, &f, 4),
            Err(RelError::OracleInfeasible { size: 9, cap: 4 })
        );
    }

    #[test]
    fn forest_examples() {
        let u = abc();
        assert!(is_forest(&Relation::empty(&u)));
        assert!(is_forest(&rel(&u, &[('a', 'b'), ('b', 'c')])));
        assert!(!is_forest(&rel(&u, &[('a', 'b'), ('b', 'c'), ('c', 'a')])));
        assert!(!is_forest(&rel(&u, &[('a', 'b'), ('b', 'a')])));
        assert!(!is_forest(&rel(&u, &[('a', 'a')])));
    }

    #[test]
    fn component_examples() {
        let u = abc();
        let set = |s: &[char]| s.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            components(&Relation::empty(&u), &['a', 'b']),
            vec![set(&['a']), set(&['b'])]
        );
        assert_eq!(
            components(&rel(&u, &[('a', 'b')]), &['a', 'b', 'c']),
            vec![set(&['a', 'b']), set(&['c'])]
        );
        assert_eq!(
            components(&rel(&u, &[('a', 'b'), ('b', 'c')]), &['a', 'b', 'c']),
            vec![set(&['a', 'b', 'c'])]
        );
        // pairs leaving the vertex set do not connect anything
        assert_eq!(
            components(&rel(&u, &[('a', 'd'), ('d', 'b')]), &['a', 'b']),
            vec![set(&['a']), set(&['b'])]
        );
    }

    #[test]
    fn sort_order_is_fixed() {
        assert!(Sort::Symbol < Sort::Node && Sort::Node < Sort::Hook);
        assert!(Sort::Hook < Sort::Edge && Sort::Edge < Sort::Facet);
        assert!(Element::symbol("z") < Element::node("a"));
    }
}
