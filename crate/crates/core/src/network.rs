//! The network 12-tuple, its axiom validator and the induced-gluing
//! construction.
//!
//! `G(x, y)` means `y` is glued to `x`: `x` is the super-element and `y` the
//! sub-element. Gluing pairs are stored in that order.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use crate::relation::{
    chain, compose, id_on, inverse, join, minimality_conflicts, Element, FnGraph, Relation, Sort, Universe,
};
use crate::report::ViolationReport;
use crate::{Error, Result};

/// Raw, possibly ill-typed network data. `whole` is W on nodes and symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NetworkParts {
    pub name: String,
    pub symbols: BTreeSet<Element>,
    pub nodes: BTreeSet<Element>,
    pub hooks: BTreeSet<Element>,
    pub edges: BTreeSet<Element>,
    pub facets: BTreeSet<Element>,
    pub whole: BTreeMap<Element, Element>,
    pub part: BTreeMap<Element, Element>,
    pub attach: BTreeMap<Element, Element>,
    pub first: BTreeMap<Element, Element>,
    pub second: BTreeMap<Element, Element>,
    pub carrier: BTreeMap<Element, Element>,
    pub glue: BTreeSet<(Element, Element)>,
}

impl NetworkParts {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    /// Declares a symbol and its fixed point `W(σ) = σ`.
    pub fn add_symbol(&mut self, name: &str) -> Element {
        let s = Element::symbol(name);
        self.symbols.insert(s.clone());
        self.whole.insert(s.clone(), s.clone());
        s
    }

    pub fn add_node(&mut self, name: &str, whole: &Element, part: &Element) -> Element {
        let n = Element::node(name);
        self.nodes.insert(n.clone());
        self.whole.insert(n.clone(), whole.clone());
        self.part.insert(n.clone(), part.clone());
        n
    }

    pub fn add_hook(&mut self, name: &str, at: &Element) -> Element {
        let h = Element::hook(name);
        self.hooks.insert(h.clone());
        self.attach.insert(h.clone(), at.clone());
        h
    }

    pub fn add_edge(&mut self, name: &str, from: &Element, to: &Element) -> Element {
        let e = Element::edge(name);
        self.edges.insert(e.clone());
        self.first.insert(e.clone(), from.clone());
        self.second.insert(e.clone(), to.clone());
        e
    }

    pub fn add_facet(&mut self, name: &str, of: &Element) -> Element {
        let k = Element::facet(name);
        self.facets.insert(k.clone());
        self.carrier.insert(k.clone(), of.clone());
        k
    }

    pub fn add_glue(&mut self, sup: &Element, sub: &Element) {
        self.glue.insert((sup.clone(), sub.clone()));
    }

    pub fn set(&self, sort: Sort) -> &BTreeSet<Element> {
        match sort {
            Sort::Symbol => &self.symbols,
            Sort::Node => &self.nodes,
            Sort::Hook => &self.hooks,
            Sort::Edge => &self.edges,
            Sort::Facet => &self.facets,
        }
    }

    pub fn set_mut(&mut self, sort: Sort) -> &mut BTreeSet<Element> {
        match sort {
            Sort::Symbol => &mut self.symbols,
            Sort::Node => &mut self.nodes,
            Sort::Hook => &mut self.hooks,
            Sort::Edge => &mut self.edges,
            Sort::Facet => &mut self.facets,
        }
    }

    /// Every declared element, in universe order.
    pub fn elements(&self) -> impl Iterator<Item = &Element> + '_ {
        Sort::ALL.into_iter().flat_map(move |s| self.set(s).iter())
    }

    /// Finds a declared element by name.
    pub fn lookup(&self, name: &str) -> Option<Element> {
        self.elements().find(|e| e.name() == name).cloned()
    }
}

/// The six incidence functions as relation graphs. Present only when the
/// network is well typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub w: FnGraph,
    pub p: FnGraph,
    pub a: FnGraph,
    pub f: FnGraph,
    pub s: FnGraph,
    pub c: FnGraph,
}

/// An immutable network `(Σ, N, H, E, K, W, P, A, F, S, C, G)`.
#[derive(Debug, Clone)]
pub struct Network {
    parts: NetworkParts,
    universe: Arc<Universe<Element>>,
    typing: ViolationReport,
    glue: Relation,
    incidence: Option<Incidence>,
    digest: u64,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for Network {}

impl Network {
    /// Never fails; typing problems are recorded and surface as `N0.*`
    /// codes from [`validate_network`].
    pub fn new(parts: NetworkParts) -> Self {
        let universe = Universe::new(parts.elements().cloned());
        let typing = check_typing(&parts, &universe);
        let glue = Relation::from_pairs(
            &universe,
            parts
                .glue
                .iter()
                .filter(|(x, y)| universe.contains(x) && universe.contains(y))
                .cloned(),
        )
        .expect("filtered to the universe");
        let incidence = if typing.is_empty() {
            Some(build_incidence(&parts, &universe).expect("typing checked"))
        } else {
            None
        };
        let mut hasher = DefaultHasher::new();
        parts.hash(&mut hasher);
        Self {
            digest: hasher.finish(),
            parts,
            universe,
            typing,
            glue,
            incidence,
        }
    }

    pub fn name(&self) -> &str {
        &self.parts.name
    }

    pub fn parts(&self) -> &NetworkParts {
        &self.parts
    }

    pub fn into_parts(self) -> NetworkParts {
        self.parts
    }

    pub fn universe(&self) -> &Arc<Universe<Element>> {
        &self.universe
    }

    /// Content hash of the network data, stable within a build.
    pub fn digest(&self) -> u64 {
        self.digest
    }

    pub fn set(&self, sort: Sort) -> &BTreeSet<Element> {
        self.parts.set(sort)
    }

    pub fn symbols(&self) -> &BTreeSet<Element> {
        &self.parts.symbols
    }
    pub fn nodes(&self) -> &BTreeSet<Element> {
        &self.parts.nodes
    }
    pub fn hooks(&self) -> &BTreeSet<Element> {
        &self.parts.hooks
    }
    pub fn edges(&self) -> &BTreeSet<Element> {
        &self.parts.edges
    }
    pub fn facets(&self) -> &BTreeSet<Element> {
        &self.parts.facets
    }

    pub fn w(&self, x: &Element) -> Option<&Element> {
        self.parts.whole.get(x)
    }
    pub fn p(&self, x: &Element) -> Option<&Element> {
        self.parts.part.get(x)
    }
    pub fn a(&self, x: &Element) -> Option<&Element> {
        self.parts.attach.get(x)
    }
    pub fn f(&self, x: &Element) -> Option<&Element> {
        self.parts.first.get(x)
    }
    pub fn s(&self, x: &Element) -> Option<&Element> {
        self.parts.second.get(x)
    }
    pub fn c(&self, x: &Element) -> Option<&Element> {
        self.parts.carrier.get(x)
    }

    /// The gluing relation, restricted to pairs inside the universe.
    pub fn glue(&self) -> &Relation {
        &self.glue
    }

    pub fn is_well_typed(&self) -> bool {
        self.typing.is_empty()
    }

    pub fn typing_report(&self) -> &ViolationReport {
        &self.typing
    }

    pub fn incidence(&self) -> Option<&Incidence> {
        self.incidence.as_ref()
    }

    /// The incidence graphs, or an error carrying the typing report.
    pub fn typed(&self) -> Result<&Incidence> {
        self.incidence.as_ref().ok_or_else(|| Error::InvalidNetwork {
            name: self.name().to_owned(),
            report: self.typing.clone(),
        })
    }

    /// `id_X` for the set of one sort.
    pub fn id(&self, sort: Sort) -> Relation {
        id_on(&self.universe, self.set(sort)).expect("sets lie in the universe")
    }

    /// `id` on the union of several sorts.
    pub fn id_sorts(&self, sorts: &[Sort]) -> Relation {
        let mut out = Relation::empty(&self.universe);
        for &s in sorts {
            out = join(&out, &self.id(s)).expect("same universe");
        }
        out
    }

    pub fn id_set<'a>(&self, set: impl IntoIterator<Item = &'a Element>) -> Result<Relation> {
        Ok(id_on(&self.universe, set)?)
    }

    /// `G ∘ id_X`.
    pub fn glue_part(&self, sort: Sort) -> Relation {
        compose(&self.glue, &self.id(sort)).expect("same universe")
    }

    /// Same network data with `G` replaced.
    pub fn with_glue(&self, glue: &Relation) -> Network {
        let mut parts = self.parts.clone();
        parts.glue = glue.to_pairs().into_iter().collect();
        Network::new(parts)
    }

    pub fn renamed(&self, name: &str) -> Network {
        let mut parts = self.parts.clone();
        parts.name = name.to_owned();
        Network::new(parts)
    }

    /// Every element of sort `Hook` attached to `x`, i.e. `A⁻¹(x)`.
    pub fn hooks_at<'a>(&'a self, x: &'a Element) -> impl Iterator<Item = &'a Element> + 'a {
        self.parts.attach.iter().filter(move |(_, at)| *at == x).map(|(h, _)| h)
    }

    /// `C⁻¹(e)`.
    pub fn facets_of<'a>(&'a self, e: &'a Element) -> impl Iterator<Item = &'a Element> + 'a {
        self.parts
            .carrier
            .iter()
            .filter(move |(_, of)| *of == e)
            .map(|(k, _)| k)
    }
}

fn check_typing(parts: &NetworkParts, universe: &Universe<Element>) -> ViolationReport {
    let mut r = ViolationReport::new();

    let mut by_name: BTreeMap<&str, Vec<Element>> = BTreeMap::new();
    for e in parts.elements() {
        by_name.entry(e.name()).or_default().push(e.clone());
    }
    for (name, elems) in by_name {
        if name.is_empty() {
            r.add("N0.name", elems.clone(), "empty identifier");
        }
        if elems.len() > 1 {
            r.add("N0.name", elems, format!("identifier {name} declared in several sorts"));
        }
    }
    for sort in Sort::ALL {
        for e in parts.set(sort) {
            if e.sort() != sort {
                r.add("N0.sort", vec![e.clone()], format!("{:?} listed among the {sort}s", e));
            }
        }
    }

    let in_sets = |e: &Element, sorts: &[Sort]| sorts.iter().any(|&s| parts.set(s).contains(e));
    let mut check_map =
        |code: &'static str, label: &str, map: &BTreeMap<Element, Element>, dom: &[Sort], cod: &[Sort]| {
            for x in dom.iter().flat_map(|&s| parts.set(s)) {
                if !map.contains_key(x) {
                    r.add(code, vec![x.clone()], format!("{label} is undefined at {x}"));
                }
            }
            for (x, y) in map {
                if !in_sets(x, dom) {
                    r.add(
                        code,
                        vec![x.clone()],
                        format!("{label} is defined outside its domain at {x}"),
                    );
                } else if !in_sets(y, cod) {
                    r.add(
                        code,
                        vec![x.clone(), y.clone()],
                        format!("{label}({x}) = {y} lies outside its codomain"),
                    );
                }
            }
        };
    check_map("N0.W", "W", &parts.whole, &[Sort::Node, Sort::Symbol], &[Sort::Symbol]);
    check_map("N0.P", "P", &parts.part, &[Sort::Node], &[Sort::Symbol]);
    check_map("N0.A", "A", &parts.attach, &[Sort::Hook], &[Sort::Node, Sort::Symbol]);
    check_map("N0.F", "F", &parts.first, &[Sort::Edge], &[Sort::Hook]);
    check_map("N0.S", "S", &parts.second, &[Sort::Edge], &[Sort::Hook]);
    check_map("N0.C", "C", &parts.carrier, &[Sort::Facet], &[Sort::Edge]);

    for s in &parts.symbols {
        if let Some(w) = parts.whole.get(s) {
            if w != s {
                r.add(
                    "N0.W",
                    vec![s.clone(), w.clone()],
                    format!("W({s}) = {w} but W must fix symbols"),
                );
            }
        }
    }
    for (x, y) in &parts.glue {
        for z in [x, y] {
            if !universe.contains(z) {
                r.add(
                    "N0.glue",
                    vec![x.clone(), y.clone()],
                    format!("glue names undeclared {z:?}"),
                );
            }
        }
    }
    r
}

fn build_incidence(parts: &NetworkParts, u: &Arc<Universe<Element>>) -> Result<Incidence> {
    let graph = |m: &BTreeMap<Element, Element>| FnGraph::from_map(u, m.iter().map(|(x, y)| (x.clone(), y.clone())));
    Ok(Incidence {
        w: graph(&parts.whole)?,
        p: graph(&parts.part)?,
        a: graph(&parts.attach)?,
        f: graph(&parts.first)?,
        s: graph(&parts.second)?,
        c: graph(&parts.carrier)?,
    })
}

/// The five sort-restricted parts `G ∘ id_X` of a gluing relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingParts {
    pub g_sigma: Relation,
    pub g_n: Relation,
    pub g_h: Relation,
    pub g_e: Relation,
    pub g_k: Relation,
}

impl GluingParts {
    pub fn union(&self) -> Relation {
        [&self.g_n, &self.g_h, &self.g_e, &self.g_k]
            .into_iter()
            .fold(self.g_sigma.clone(), |acc, r| join(&acc, r).expect("same universe"))
    }
}

pub fn gluing_parts(net: &Network) -> GluingParts {
    GluingParts {
        g_sigma: net.glue_part(Sort::Symbol),
        g_n: net.glue_part(Sort::Node),
        g_h: net.glue_part(Sort::Hook),
        g_e: net.glue_part(Sort::Edge),
        g_k: net.glue_part(Sort::Facet),
    }
}

fn pairs_of(r: &Relation) -> impl Iterator<Item = (Element, Element)> + '_ {
    r.iter().map(|(x, y)| (x.clone(), y.clone()))
}

fn report_excess(report: &mut ViolationReport, code: &'static str, lhs: &Relation, rhs: &Relation, what: &str) {
    let extra = lhs.difference(rhs).expect("same universe");
    for (x, y) in pairs_of(&extra) {
        report.add(code, vec![x.clone(), y.clone()], format!("({x}, {y}) ∈ {what}"));
    }
}

/// Checks the network axioms. Typing failures (`N0.*`) suppress the clause
/// checks, which are meaningless without total incidence functions.
pub fn validate_network(net: &Network) -> ViolationReport {
    let Some(inc) = net.incidence() else {
        return net.typing_report().clone();
    };
    let mut r = ViolationReport::new();
    let g = net.glue();

    // Sort homogeneity: id_X∘G = G∘id_X for every sort X.
    for sort in Sort::ALL {
        let id = net.id(sort);
        let lhs = compose(&id, g).expect("same universe");
        let rhs = compose(g, &id).expect("same universe");
        if lhs != rhs {
            let mixed = join(&lhs, &rhs).unwrap().difference(&meet_ok(&lhs, &rhs)).unwrap();
            for (x, y) in pairs_of(&mixed) {
                r.add(
                    "N1",
                    vec![x.clone(), y.clone()],
                    format!("{x} is a {} but {y} is a {}", x.sort(), y.sort()),
                );
            }
        }
    }

    // Incidence preservation. W is an equality, the rest inclusions.
    let w = inc.w.relation();
    let wg = compose(w, g).unwrap();
    let gw = compose(g, w).unwrap();
    report_excess(&mut r, "N2.W", &wg, &gw, "W̄∘G but not G∘W̄");
    report_excess(&mut r, "N2.W", &gw, &wg, "G∘W̄ but not W̄∘G");
    report_excess(
        &mut r,
        "N2.P",
        &compose(inc.p.relation(), g).unwrap(),
        inc.p.relation(),
        "P̄∘G but not P̄",
    );
    for (code, f, label) in [
        ("N2.A", &inc.a, "Ā"),
        ("N2.F", &inc.f, "F̄"),
        ("N2.S", &inc.s, "S̄"),
        ("N2.C", &inc.c, "C̄"),
    ] {
        let lhs = compose(f.relation(), g).unwrap();
        let rhs = compose(g, f.relation()).unwrap();
        report_excess(&mut r, code, &lhs, &rhs, &format!("{label}∘G but not G∘{label}"));
    }

    // Minimality of the hook, facet and edge parts and their inverses.
    let parts = gluing_parts(net);
    for (code, rel, f, label) in [
        ("N3.H", &parts.g_h, &inc.a, "A"),
        ("N3.K", &parts.g_k, &inc.c, "C"),
        ("N3.E-F", &parts.g_e, &inc.f, "F"),
        ("N3.E-S", &parts.g_e, &inc.s, "S"),
    ] {
        for (dir, rel) in [("", rel.clone()), ("⁻¹", inverse(rel))] {
            for (x, z) in minimality_conflicts(&rel, f).unwrap() {
                if x < z {
                    r.add(
                        code,
                        vec![x.clone(), z.clone()],
                        format!("{x} and {z} share {label}-image and a common element under G{dir}"),
                    );
                }
            }
        }
    }

    // No chains of gluing.
    let gg = compose(g, g).unwrap();
    if !gg.is_empty() {
        for (x, y) in g.iter() {
            for z in g.row(y) {
                r.add(
                    "N4",
                    vec![x.clone(), y.clone(), z.clone()],
                    format!("{y} is glued to {x} and {z} to {y}"),
                );
            }
        }
    }
    r
}

fn meet_ok(a: &Relation, b: &Relation) -> Relation {
    crate::relation::meet(a, b).expect("same universe")
}

/// Builds the gluing relation generated by a facet seed:
///
/// ```text
/// G*_K = seed
/// G*_E = C̄∘G*_K∘C̄⁻¹
/// G*_H = F̄∘G*_E∘F̄⁻¹ ∪ S̄∘G*_E∘S̄⁻¹
/// G*_N = id_N∘Ā∘G*_H∘Ā⁻¹
/// G*_Σ = W̄∘G*_N∘W̄⁻¹ ∪ id_Σ∘Ā∘G*_H∘Ā⁻¹
/// ```
///
/// The skeleton's own gluing is ignored.
pub fn induce_gluing(skeleton: &Network, seed: &Relation) -> Result<Relation> {
    let inc = skeleton.typed()?;
    let u = skeleton.universe();
    let seed = Relation::from_pairs(u, seed.to_pairs())?;
    for (x, y) in seed.iter() {
        if !skeleton.facets().contains(x) || !skeleton.facets().contains(y) {
            return Err(Error::BadSeed(x.to_string(), y.to_string()));
        }
    }
    Ok(induce_layers(skeleton, inc, &seed)?.union())
}

pub(crate) fn induce_layers(net: &Network, inc: &Incidence, g_k: &Relation) -> Result<GluingParts> {
    let (c, f, s, a, w) = (
        inc.c.relation(),
        inc.f.relation(),
        inc.s.relation(),
        inc.a.relation(),
        inc.w.relation(),
    );
    let g_e = chain(&[c, g_k, &inverse(c)])?;
    let g_h = join(&chain(&[f, &g_e, &inverse(f)])?, &chain(&[s, &g_e, &inverse(s)])?)?;
    let a_sandwich = chain(&[a, &g_h, &inverse(a)])?;
    let g_n = compose(&net.id(Sort::Node), &a_sandwich)?;
    let g_sigma = join(
        &chain(&[w, &g_n, &inverse(w)])?,
        &compose(&net.id(Sort::Symbol), &a_sandwich)?,
    )?;
    Ok(GluingParts {
        g_sigma,
        g_n,
        g_h,
        g_e,
        g_k: g_k.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_are_valid() {
        for net in [fixtures::n_empty(), fixtures::n_sigma(), fixtures::n_edge()] {
            assert!(validate_network(&net).is_empty(), "{}", net.name());
        }
    }

    #[test]
    fn glued_hooks_without_glued_nodes_break_incidence() {
        let mut parts = fixtures::n_edge().into_parts();
        parts.add_glue(&Element::hook("h1"), &Element::hook("h2"));
        let r = validate_network(&Network::new(parts));
        assert_eq!(r.codes(), vec!["N2.A"]);
    }

    #[test]
    fn typing_errors_suppress_clauses() {
        let mut parts = fixtures::n_edge().into_parts();
        parts.part.clear();
        parts.add_glue(&Element::hook("h1"), &Element::hook("h1"));
        let r = validate_network(&Network::new(parts));
        assert_eq!(r.codes(), vec!["N0.P"]);
    }

    #[test]
    fn gluing_parts_filter_first_component() {
        let mut p = NetworkParts::new("parts");
        let s = p.add_symbol("s");
        let n = p.add_node("n", &s, &s);
        let h1 = p.add_hook("h1", &n);
        let h2 = p.add_hook("h2", &n);
        let e = p.add_edge("e", &h1, &h2);
        let k1 = p.add_facet("k1", &e);
        let k2 = p.add_facet("k2", &e);
        p.add_glue(&h1, &h2);
        p.add_glue(&k1, &k2);
        let net = Network::new(p.clone());
        let gp = gluing_parts(&net);
        assert_eq!(gp.g_h.to_pairs(), vec![(h1.clone(), h2.clone())]);
        assert_eq!(gp.g_k.to_pairs(), vec![(k1.clone(), k2.clone())]);
        assert!(gp.g_sigma.is_empty() && gp.g_n.is_empty() && gp.g_e.is_empty());
        assert_eq!(&gp.union(), net.glue());

        // An ill-sorted pair lands in the part of its first component only.
        p.glue.clear();
        p.add_glue(&h1, &k2);
        let net = Network::new(p);
        let gp = gluing_parts(&net);
        assert_eq!(gp.g_h.to_pairs(), vec![(h1, k2)]);
        assert!(gp.g_k.is_empty());
        assert!(validate_network(&net).has("N1"));
    }

    #[test]
    fn induce_from_empty_seed_is_empty() {
        let net = fixtures::n_edge();
        let g = induce_gluing(&net, &Relation::empty(net.universe())).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn induce_on_parallel_edges() {
        let net = fixtures::parallel_edges();
        let k = |s: &str| Element::facet(s);
        let seed = Relation::from_pairs(net.universe(), [(k("k1"), k("k2"))]).unwrap();
        let g = induce_gluing(&net, &seed).unwrap();
        let e = |s: &str| Element::edge(s);
        let h = |s: &str| Element::hook(s);
        assert!(g.contains(&k("k1"), &k("k2")));
        assert!(g.contains(&e("e1"), &e("e2")));
        assert!(g.contains(&h("a1"), &h("a2")));
        assert!(g.contains(&h("b1"), &h("b2")));
        assert!(g.contains(&Element::node("n1"), &Element::node("n2")));
        let glued = net.with_glue(&g);
        assert!(validate_network(&glued).is_empty(), "{}", validate_network(&glued));
        assert_eq!(gluing_parts(&glued).g_k, seed);
    }

    #[test]
    fn induce_same_edge_facets_gives_reflexive_edge_pair() {
        let mut p = NetworkParts::new("same");
        let s = p.add_symbol("s");
        let n = p.add_node("n", &s, &s);
        let h1 = p.add_hook("h1", &n);
        let h2 = p.add_hook("h2", &n);
        let e = p.add_edge("e", &h1, &h2);
        let k1 = p.add_facet("k1", &e);
        let k2 = p.add_facet("k2", &e);
        let net = Network::new(p);
        let seed = Relation::from_pairs(net.universe(), [(k1, k2)]).unwrap();
        let g = induce_gluing(&net, &seed).unwrap();
        assert!(g.contains(&e, &e));
        assert!(validate_network(&net.with_glue(&g)).has("N4"));
    }

    #[test]
    fn induce_rejects_non_facet_seed() {
        let net = fixtures::n_edge();
        let seed = Relation::from_pairs(net.universe(), [(Element::hook("h1"), Element::hook("h2"))]).unwrap();
        assert!(matches!(induce_gluing(&net, &seed), Err(Error::BadSeed(..))));
    }
}
