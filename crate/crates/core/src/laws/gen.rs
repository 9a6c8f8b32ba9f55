//! Random networks and homomorphisms.
//!
//! Networks are grown as clusters: each whole symbol gets a few nodes tied
//! to it by a spanning tree of edges, every edge with fresh hooks so the
//! edge ends partition the hooks. Some clusters are then duplicated under a
//! fresh whole symbol and the copy's facets are glued under the original's,
//! which yields gluings that cover every facet. The gluing itself is always
//! `induce_gluing` of a facet seed. Perturbations break the nice shape on
//! purpose so the checkers see failing instances too.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hom::Homomorphism;
use crate::network::{induce_gluing, validate_network, Network, NetworkParts};
use crate::relation::{Element, FnGraph, Relation, Sort, Universe};
use crate::union_find::DisjointSets;
use crate::{Error, Result};

/// Upper bounds on the number of elements of each sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub symbols: usize,
    pub nodes: usize,
    pub hooks: usize,
    pub edges: usize,
    pub facets: usize,
}

impl Sizes {
    pub const ZERO: Sizes = Sizes::uniform(0);
    /// Universes of at most twelve elements.
    pub const SMALL: Sizes = Sizes {
        symbols: 2,
        nodes: 2,
        hooks: 4,
        edges: 2,
        facets: 2,
    };
    pub const DEFAULT: Sizes = Sizes {
        symbols: 8,
        nodes: 6,
        hooks: 16,
        edges: 8,
        facets: 6,
    };

    pub const fn uniform(n: usize) -> Sizes {
        Sizes {
            symbols: n,
            nodes: n,
            hooks: n,
            edges: n,
            facets: n,
        }
    }

    pub fn min(self, other: Sizes) -> Sizes {
        Sizes {
            symbols: self.symbols.min(other.symbols),
            nodes: self.nodes.min(other.nodes),
            hooks: self.hooks.min(other.hooks),
            edges: self.edges.min(other.edges),
            facets: self.facets.min(other.facets),
        }
    }

    pub fn cap(&self, sort: Sort) -> usize {
        match sort {
            Sort::Symbol => self.symbols,
            Sort::Node => self.nodes,
            Sort::Hook => self.hooks,
            Sort::Edge => self.edges,
            Sort::Facet => self.facets,
        }
    }

    pub fn total(&self) -> usize {
        self.symbols + self.nodes + self.hooks + self.edges + self.facets
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    /// Cases per law in the suite.
    pub cases: usize,
    pub sizes: Sizes,
    /// Probability that a cluster carrying facets is duplicated and glued.
    pub glue_density: f64,
    /// Probability of one random edit after the clean construction.
    pub perturb: f64,
    /// Largest number of source copies of a target component.
    pub fanout: usize,
    /// Attempts before a generator reports exhaustion.
    pub retries: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            cases: 500,
            sizes: Sizes::DEFAULT,
            glue_density: 0.8,
            perturb: 0.25,
            fanout: 2,
            retries: 64,
        }
    }
}

impl GenConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_cases(self, cases: usize) -> Self {
        Self { cases, ..self }
    }

    pub fn with_sizes(self, sizes: Sizes) -> Self {
        Self { sizes, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Element counters that respect [`Sizes`].
struct Builder {
    parts: NetworkParts,
    max: Sizes,
}

impl Builder {
    fn room(&self, sort: Sort, n: usize) -> bool {
        self.parts.set(sort).len() + n <= self.max.cap(sort)
    }

    fn fresh(&self, sort: Sort) -> String {
        let prefix = match sort {
            Sort::Symbol => "s",
            Sort::Node => "n",
            Sort::Hook => "h",
            Sort::Edge => "e",
            Sort::Facet => "k",
        };
        let mut i = self.parts.set(sort).len();
        loop {
            let name = format!("{prefix}{i}");
            if self.parts.lookup(&name).is_none() {
                return name;
            }
            i += 1;
        }
    }

    fn symbol(&mut self) -> Option<Element> {
        self.room(Sort::Symbol, 1).then(|| {
            let name = self.fresh(Sort::Symbol);
            self.parts.add_symbol(&name)
        })
    }

    fn node(&mut self, whole: &Element, part: &Element) -> Option<Element> {
        self.room(Sort::Node, 1).then(|| {
            let name = self.fresh(Sort::Node);
            self.parts.add_node(&name, whole, part)
        })
    }

    fn hook(&mut self, at: &Element) -> Option<Element> {
        self.room(Sort::Hook, 1).then(|| {
            let name = self.fresh(Sort::Hook);
            self.parts.add_hook(&name, at)
        })
    }

    /// An edge from `u` to `v` with two fresh hooks.
    fn link(&mut self, u: &Element, v: &Element) -> Option<Element> {
        if !self.room(Sort::Hook, 2) || !self.room(Sort::Edge, 1) {
            return None;
        }
        let a = self.hook(u)?;
        let b = self.hook(v)?;
        let name = self.fresh(Sort::Edge);
        Some(self.parts.add_edge(&name, &a, &b))
    }

    fn facet(&mut self, e: &Element) -> Option<Element> {
        self.room(Sort::Facet, 1).then(|| {
            let name = self.fresh(Sort::Facet);
            self.parts.add_facet(&name, e)
        })
    }
}

/// A whole symbol with its nodes, edges and facets.
#[derive(Default, Clone)]
struct Cluster {
    root: Option<Element>,
    nodes: Vec<Element>,
    edges: Vec<Element>,
    facets: Vec<Element>,
}

impl Cluster {
    fn vertices(&self) -> Vec<Element> {
        self.root.iter().chain(&self.nodes).cloned().collect()
    }
}

/// One network from `cfg.seed`.
pub fn gen_network(cfg: &GenConfig) -> Result<Network> {
    gen_network_with(cfg, &mut cfg.rng(), "gen")
}

/// One network from a caller-held generator; retries until the result
/// passes `validate_network`.
pub fn gen_network_with(cfg: &GenConfig, rng: &mut impl Rng, name: &str) -> Result<Network> {
    for _ in 0..cfg.retries.max(1) {
        let (skeleton, seed) = skeleton(cfg, rng, name);
        let glue = match induce_gluing(&skeleton, &seed) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let mut net = skeleton.with_glue(&glue);
        if rng.gen_bool(cfg.perturb.clamp(0.0, 1.0)) {
            let edited = perturb(net.clone(), rng);
            if Sort::ALL.iter().all(|&s| edited.set(s).len() <= cfg.sizes.cap(s)) {
                net = edited;
            }
        }
        if validate_network(&net).is_empty() {
            return Ok(net);
        }
    }
    Err(Error::GeneratorExhausted(cfg.retries.max(1)))
}

fn skeleton(cfg: &GenConfig, rng: &mut impl Rng, name: &str) -> (Network, Relation) {
    let mut b = Builder {
        parts: NetworkParts::new(name),
        max: cfg.sizes,
    };
    let mut seed_pairs: Vec<(Element, Element)> = Vec::new();
    // Most skeletons use at most half of each budget so that duplication
    // has room to copy a cluster.
    let budget = if rng.gen_bool(cfg.glue_density.clamp(0.0, 1.0)) {
        Sizes {
            symbols: cfg.sizes.symbols.div_ceil(2),
            nodes: cfg.sizes.nodes.div_ceil(2),
            ..cfg.sizes
        }
    } else {
        cfg.sizes
    };
    let n_sym = if budget.symbols == 0 {
        0
    } else {
        rng.gen_range(1..=budget.symbols)
    };
    let symbols: Vec<Element> = (0..n_sym).filter_map(|_| b.symbol()).collect();
    if symbols.is_empty() {
        return (Network::new(b.parts), Relation::empty(&Universe::new([])));
    }

    // Wholes get clusters; the remaining symbols serve as parts.
    let n_wholes = rng.gen_range(1..=symbols.len().min(3));
    let mut clusters: Vec<Cluster> = symbols[..n_wholes]
        .iter()
        .map(|s| Cluster {
            root: Some(s.clone()),
            ..Cluster::default()
        })
        .collect();
    let n_nodes = rng.gen_range(0..=budget.nodes);
    let mut unused_parts: Vec<Element> = symbols.clone();
    unused_parts.shuffle(rng);
    for _ in 0..n_nodes {
        let c = rng.gen_range(0..clusters.len());
        let whole = clusters[c].root.clone().unwrap();
        // Mostly distinct parts so that part-sharing stays rare.
        let part = match unused_parts.iter().position(|p| *p != whole) {
            Some(i) if rng.gen_bool(0.8) => unused_parts.remove(i),
            _ => symbols.choose(rng).unwrap().clone(),
        };
        if let Some(n) = b.node(&whole, &part) {
            clusters[c].nodes.push(n);
        }
    }

    for c in clusters.iter_mut() {
        let mut vs = c.vertices();
        vs.shuffle(rng);
        for i in 1..vs.len() {
            let j = rng.gen_range(0..i);
            let (u, v) = if rng.gen_bool(0.5) {
                (&vs[i], &vs[j])
            } else {
                (&vs[j], &vs[i])
            };
            if let Some(e) = b.link(u, v) {
                c.edges.push(e);
            }
        }
        // Occasionally a lone whole gets a loop through itself, which
        // exercises facets on clusters without nodes.
        if vs.len() == 1 && rng.gen_bool(0.3) {
            if let Some(e) = b.link(&vs[0], &vs[0]) {
                c.edges.push(e);
            }
        }
        for e in c.edges.clone() {
            if rng.gen_bool(0.7) {
                if let Some(k) = b.facet(&e) {
                    c.facets.push(k);
                }
            }
        }
    }

    // Duplicate some facet-bearing clusters and glue each copied facet
    // under its original. Clusters left alone mostly lose their facets,
    // since a facet nothing is glued to breaks minimality.
    for c in clusters.clone() {
        if c.facets.is_empty() {
            continue;
        }
        let copied = if rng.gen_bool(cfg.glue_density.clamp(0.0, 1.0)) {
            duplicate(&mut b, &c)
        } else {
            None
        };
        match copied {
            Some(pairs) => seed_pairs.extend(pairs),
            None if rng.gen_bool(0.75) => {
                for k in &c.facets {
                    b.parts.facets.remove(k);
                    b.parts.carrier.remove(k);
                }
            }
            None => {}
        }
    }

    // A random facet matching across distinct edges, on top.
    if rng.gen_bool(0.15) {
        let facets: Vec<Element> = b.parts.facets.iter().cloned().collect();
        let touched: BTreeSet<Element> = seed_pairs.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
        let mut free: Vec<Element> = facets.into_iter().filter(|k| !touched.contains(k)).collect();
        free.shuffle(rng);
        for pair in free.chunks(2) {
            if let [x, y] = pair {
                if b.parts.carrier[x] != b.parts.carrier[y] {
                    seed_pairs.push((x.clone(), y.clone()));
                }
            }
        }
    }

    let net = Network::new(b.parts);
    let seed = Relation::from_pairs(net.universe(), seed_pairs).expect("facets of the skeleton");
    (net, seed)
}

/// Copies a cluster under a fresh whole symbol. Returns the facet seed
/// pairs (original, copy), or `None` without changes when out of room.
fn duplicate(b: &mut Builder, c: &Cluster) -> Option<Vec<(Element, Element)>> {
    let root = c.root.as_ref()?;
    let hooks: Vec<Element> = c
        .vertices()
        .iter()
        .flat_map(|v| {
            b.parts
                .attach
                .iter()
                .filter(move |(_, at)| *at == v)
                .map(|(h, _)| h.clone())
        })
        .collect();
    let fits = b.room(Sort::Symbol, 1)
        && b.room(Sort::Node, c.nodes.len())
        && b.room(Sort::Hook, hooks.len())
        && b.room(Sort::Edge, c.edges.len())
        && b.room(Sort::Facet, c.facets.len());
    if !fits {
        return None;
    }
    let mut copy: BTreeMap<Element, Element> = BTreeMap::new();
    let root2 = b.symbol()?;
    copy.insert(root.clone(), root2.clone());
    for n in &c.nodes {
        let part = b.parts.part[n].clone();
        let part = copy.get(&part).cloned().unwrap_or(part);
        copy.insert(n.clone(), b.node(&root2, &part)?);
    }
    for h in &hooks {
        let at = copy[&b.parts.attach[h]].clone();
        copy.insert(h.clone(), b.hook(&at)?);
    }
    for e in &c.edges {
        let (f, s) = (copy[&b.parts.first[e]].clone(), copy[&b.parts.second[e]].clone());
        let name = b.fresh(Sort::Edge);
        copy.insert(e.clone(), b.parts.add_edge(&name, &f, &s));
    }
    let mut pairs = Vec::new();
    for k in &c.facets {
        let e = copy[&b.parts.carrier[k]].clone();
        pairs.push((k.clone(), b.facet(&e)?));
    }
    Some(pairs)
}

/// One random edit that keeps the typing intact.
fn perturb(net: Network, rng: &mut impl Rng) -> Network {
    let mut parts = net.into_parts();
    let symbols: Vec<Element> = parts.symbols.iter().cloned().collect();
    if symbols.is_empty() {
        return Network::new(parts);
    }
    let vertices: Vec<Element> = parts.symbols.iter().chain(&parts.nodes).cloned().collect();
    let fresh = |parts: &NetworkParts, prefix: &str| {
        (0..)
            .map(|i| format!("{prefix}x{i}"))
            .find(|n| parts.lookup(n).is_none())
            .unwrap()
    };
    match rng.gen_range(0..7) {
        0 => {
            let at = vertices.choose(rng).unwrap();
            let name = fresh(&parts, "h");
            parts.add_hook(&name, at);
        }
        1 => {
            let w = symbols.choose(rng).unwrap();
            let p = symbols.choose(rng).unwrap();
            let name = fresh(&parts, "n");
            parts.add_node(&name, w, p);
        }
        2 => {
            let u = vertices.choose(rng).unwrap();
            let v = vertices.choose(rng).unwrap();
            let a = fresh(&parts, "h");
            let a = parts.add_hook(&a, u);
            let b = fresh(&parts, "h");
            let b = parts.add_hook(&b, v);
            let e = fresh(&parts, "e");
            parts.add_edge(&e, &a, &b);
        }
        3 => {
            if let Some(e) = parts.edges.iter().cloned().collect::<Vec<_>>().choose(rng) {
                let k = fresh(&parts, "k");
                parts.add_facet(&k, e);
            }
        }
        4 => {
            // An edge between hooks that already carry edge ends.
            let hooks: Vec<Element> = parts.hooks.iter().cloned().collect();
            if let (Some(a), Some(b)) = (hooks.choose(rng), hooks.choose(rng)) {
                let e = fresh(&parts, "e");
                parts.add_edge(&e, a, b);
            }
        }
        5 => {
            // A gluing of two symbols that nothing induces.
            let x = symbols.choose(rng).unwrap();
            let y = symbols.choose(rng).unwrap();
            if x != y {
                parts.add_glue(x, y);
            }
        }
        _ => {
            let glue: Vec<(Element, Element)> = parts.glue.iter().cloned().collect();
            if let Some(pair) = glue.choose(rng) {
                parts.glue.remove(pair);
            }
        }
    }
    Network::new(parts)
}

/// Connected components of the undirected graph of every incidence map and
/// the gluing, as a component index per element.
fn incidence_components(net: &Network) -> BTreeMap<Element, usize> {
    let u = net.universe();
    let mut ds = DisjointSets::new(u.len());
    let p = net.parts();
    let idx = |x: &Element| u.index_of(x).expect("element of the universe");
    for m in [&p.whole, &p.part, &p.attach, &p.first, &p.second, &p.carrier] {
        for (x, y) in m {
            ds.union(idx(x), idx(y));
        }
    }
    for (x, y) in net.glue().iter() {
        ds.union(idx(x), idx(y));
    }
    let mut out = BTreeMap::new();
    for (c, group) in ds.groups().into_iter().enumerate() {
        for i in group {
            out.insert(u.get(i).clone(), c);
        }
    }
    out
}

/// A homomorphism onto `target` from `cfg.seed`.
pub fn gen_hom_onto(cfg: &GenConfig, target: &Arc<Network>) -> Result<Homomorphism> {
    gen_hom_onto_with(cfg, &mut cfg.rng(), target, "src", "p")
}

/// Builds a source by unfolding `target`: every connected component gets
/// between one and `cfg.fanout` copies, each copy carrying full hook and
/// facet fibers, and the gluing is copied componentwise. In components
/// without gluing the edges may be rewired between copies through a random
/// permutation, which keeps every fiber and edge end count intact.
pub fn gen_hom_onto_with(
    cfg: &GenConfig,
    rng: &mut impl Rng,
    target: &Arc<Network>,
    source_name: &str,
    name: &str,
) -> Result<Homomorphism> {
    if !validate_network(target).is_empty() {
        return Err(Error::InvalidNetwork {
            name: target.name().to_owned(),
            report: validate_network(target),
        });
    }
    let comp = incidence_components(target);
    let n_comp = comp.values().max().map_or(0, |m| m + 1);
    let counts: Vec<usize> = (0..n_comp).map(|_| rng.gen_range(1..=cfg.fanout.max(1))).collect();
    let mut glued = vec![false; n_comp];
    for (x, _) in target.glue().iter() {
        glued[comp[x]] = true;
    }
    let rewire: Vec<bool> = (0..n_comp)
        .map(|c| !glued[c] && counts[c] > 1 && rng.gen_bool(0.5))
        .collect();

    let tp = target.parts();
    let copy = |x: &Element, i: usize| Element::new(x.sort(), format!("{}_{i}", x.name()));
    let mut parts = NetworkParts::new(source_name);
    let mut map = BTreeMap::new();
    for x in tp.elements() {
        for i in 0..counts[comp[x]] {
            let xi = copy(x, i);
            parts.set_mut(x.sort()).insert(xi.clone());
            map.insert(xi, x.clone());
        }
    }
    for x in tp.elements() {
        let c = comp[x];
        let perm: Vec<usize> = {
            let mut v: Vec<usize> = (0..counts[c]).collect();
            if rewire[c] && x.sort() == Sort::Edge {
                v.shuffle(rng);
            }
            v
        };
        for (i, &pi) in perm.iter().enumerate() {
            let xi = copy(x, i);
            match x.sort() {
                Sort::Symbol => {
                    parts.whole.insert(xi.clone(), xi);
                }
                Sort::Node => {
                    parts.whole.insert(xi.clone(), copy(&tp.whole[x], i));
                    parts.part.insert(xi, copy(&tp.part[x], i));
                }
                Sort::Hook => {
                    parts.attach.insert(xi, copy(&tp.attach[x], i));
                }
                Sort::Edge => {
                    parts.first.insert(xi.clone(), copy(&tp.first[x], i));
                    parts.second.insert(xi, copy(&tp.second[x], pi));
                }
                Sort::Facet => {
                    parts.carrier.insert(xi, copy(&tp.carrier[x], i));
                }
            }
        }
    }
    for (x, z) in target.glue().iter() {
        for i in 0..counts[comp[x]] {
            parts.glue.insert((copy(x, i), copy(z, i)));
        }
    }
    let source = Arc::new(Network::new(parts));
    Homomorphism::new(name, source, Arc::clone(target), map)
}

/// Renames every element of the source of `h` with a random permutation of
/// fresh names; the result is `h` precomposed with an isomorphism.
pub fn shuffle_names(h: &Homomorphism, rng: &mut impl Rng) -> Homomorphism {
    let src = h.source().parts();
    let mut fresh: Vec<usize> = (0..src.elements().count()).collect();
    fresh.shuffle(rng);
    let rename: BTreeMap<Element, Element> = src
        .elements()
        .zip(fresh)
        .map(|(x, i)| (x.clone(), Element::new(x.sort(), format!("r{i}"))))
        .collect();
    let r = |x: &Element| rename[x].clone();
    let mut parts = NetworkParts::new(format!("{}_r", src.name));
    for x in src.elements() {
        parts.set_mut(x.sort()).insert(r(x));
    }
    for (m, n) in [
        (&src.whole, &mut parts.whole),
        (&src.part, &mut parts.part),
        (&src.attach, &mut parts.attach),
        (&src.first, &mut parts.first),
        (&src.second, &mut parts.second),
        (&src.carrier, &mut parts.carrier),
    ] {
        for (x, y) in m {
            n.insert(r(x), r(y));
        }
    }
    parts.glue = src.glue.iter().map(|(x, y)| (r(x), r(y))).collect();
    let map = h.map().iter().map(|(x, y)| (r(x), y.clone())).collect();
    Homomorphism::new(h.name(), Arc::new(Network::new(parts)), Arc::clone(h.target()), map)
        .expect("renaming keeps totality")
}

/// A random relation and total function over a universe of at most
/// `max_elems` points, with at most `max_pairs` pairs in the relation.
pub fn gen_relation_function(rng: &mut impl Rng, max_elems: usize, max_pairs: usize) -> (Relation, FnGraph) {
    let n = rng.gen_range(1..=max_elems.max(1));
    let universe = Universe::new((0..n).map(|i| Element::hook(format!("u{i}"))));
    let elems: Vec<Element> = universe.iter().cloned().collect();
    let range = rng.gen_range(1..=n);
    let f = FnGraph::from_map(
        &universe,
        elems
            .iter()
            .map(|x| (x.clone(), elems[rng.gen_range(0..range)].clone())),
    )
    .expect("total on the universe");
    let density: f64 = rng.gen_range(0.0..0.5);
    let pairs: Vec<(Element, Element)> = elems
        .iter()
        .flat_map(|x| elems.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|_| rng.gen_bool(density))
        .take(max_pairs)
        .collect();
    let r = Relation::from_pairs(&universe, pairs).expect("points of the universe");
    (r, f)
}
