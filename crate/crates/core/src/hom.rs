//! Homomorphisms between networks: validation, composition, inversion and
//! restriction.
//!
//! Source and target may reuse element names, so the clause checks run in a
//! joint universe whose points are tagged with the side they come from.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::network::{validate_network, Network};
use crate::relation::{compose, minimality_conflicts, Element, FnGraph, Relation, Universe};
use crate::report::ViolationReport;
use crate::subnet::validate_subnetwork;
use crate::{Error, Result};

/// A total, sort-tagged map between the universes of two networks.
/// Endpoint digests are captured at construction so that a homomorphism
/// rebound to changed networks is reported as stale.
#[derive(Clone)]
pub struct Homomorphism {
    name: String,
    source: Arc<Network>,
    target: Arc<Network>,
    source_digest: u64,
    target_digest: u64,
    map: BTreeMap<Element, Element>,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.map == other.map
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

impl Eq for Homomorphism {}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("name", &self.name)
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("map", &self.map)
            .finish()
    }
}

impl Homomorphism {
    /// Checks totality on the source universe and that every image lies in
    /// the target universe.
    pub fn new(
        name: impl Into<String>,
        source: Arc<Network>,
        target: Arc<Network>,
        map: BTreeMap<Element, Element>,
    ) -> Result<Self> {
        for x in source.universe().iter() {
            if !map.contains_key(x) {
                return Err(Error::NotTotal(x.name().to_owned()));
            }
        }
        for (x, y) in &map {
            if !source.universe().contains(x) {
                return Err(Error::UnknownElement(format!("{} in {}", x.name(), source.name())));
            }
            if !target.universe().contains(y) {
                return Err(Error::UnknownElement(format!("{} in {}", y.name(), target.name())));
            }
        }
        Ok(Self {
            name: name.into(),
            source_digest: source.digest(),
            target_digest: target.digest(),
            source,
            target,
            map,
        })
    }

    pub fn identity(net: Arc<Network>) -> Self {
        let map = net.universe().iter().map(|x| (x.clone(), x.clone())).collect();
        let name = format!("id_{}", net.name());
        Self::new(name, Arc::clone(&net), net, map).expect("identity is total")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<Network> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Network> {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<Element, Element> {
        &self.map
    }

    pub fn apply(&self, x: &Element) -> Option<&Element> {
        self.map.get(x)
    }

    /// Same map over replacement endpoints; the recorded digests are kept,
    /// so validation flags the change if the networks differ.
    pub fn rebind(&self, source: Arc<Network>, target: Arc<Network>) -> Self {
        Self {
            source,
            target,
            ..self.clone()
        }
    }

    pub fn is_stale(&self) -> bool {
        self.source.digest() != self.source_digest || self.target.digest() != self.target_digest
    }

    pub fn is_injective(&self) -> bool {
        let image: BTreeSet<&Element> = self.map.values().collect();
        image.len() == self.map.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.map.len() == self.target.universe().len()
    }
}

/// Which network a point of the joint universe belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Source,
    Target,
}

pub type Tagged = (Side, Element);

/// Relations of both endpoints and `p̄` over one joint universe.
pub struct Joint {
    pub universe: Arc<Universe<Tagged>>,
    pub p: FnGraph<Tagged>,
}

impl Joint {
    pub fn new(p: &Homomorphism) -> Self {
        let universe = Universe::new(
            p.source
                .universe()
                .iter()
                .map(|x| (Side::Source, x.clone()))
                .chain(p.target.universe().iter().map(|y| (Side::Target, y.clone()))),
        );
        let pbar = FnGraph::from_map(
            &universe,
            p.map
                .iter()
                .map(|(x, y)| ((Side::Source, x.clone()), (Side::Target, y.clone()))),
        )
        .expect("total map into the target");
        Self { universe, p: pbar }
    }

    /// Copies a relation of one endpoint into the joint universe.
    pub fn lift(&self, side: Side, r: &Relation) -> Relation<Tagged> {
        Relation::from_pairs(
            &self.universe,
            r.iter().map(|(x, y)| ((side, x.clone()), (side, y.clone()))),
        )
        .expect("endpoint elements are in the joint universe")
    }

    pub fn pbar(&self) -> &Relation<Tagged> {
        self.p.relation()
    }
}

fn untag(pairs: &Relation<Tagged>) -> Vec<(Element, Element)> {
    pairs.iter().map(|((_, x), (_, y))| (x.clone(), y.clone())).collect()
}

/// Checks the homomorphism clauses. Invalid or stale endpoints give a
/// single fatal `H0` entry.
pub fn validate_homomorphism(p: &Homomorphism) -> ViolationReport {
    let mut r = ViolationReport::new();
    for (label, net) in [("source", &p.source), ("target", &p.target)] {
        if !validate_network(net).is_empty() {
            r.add("H0", vec![], format!("{label} network {} is not valid", net.name()));
        }
    }
    if p.is_stale() {
        r.add(
            "H0",
            vec![],
            "an endpoint network changed since the homomorphism was built",
        );
    }
    if !r.is_empty() {
        return r;
    }
    let (n1, n0) = (&p.source, &p.target);
    let (i1, i0) = (n1.incidence().unwrap(), n0.incidence().unwrap());

    for (x, y) in &p.map {
        if x.sort() != y.sort() {
            r.add(
                "H1",
                vec![x.clone(), y.clone()],
                format!("{} {x} maps to {} {y}", x.sort(), y.sort()),
            );
        }
    }

    let j = Joint::new(p);
    let pbar = j.pbar();
    for (code, f1, f0, label) in [
        ("H2.W", &i1.w, &i0.w, "W"),
        ("H2.P", &i1.p, &i0.p, "P"),
        ("H2.F", &i1.f, &i0.f, "F"),
        ("H2.S", &i1.s, &i0.s, "S"),
    ] {
        let lhs = compose(&j.lift(Side::Target, f0.relation()), pbar).unwrap();
        let rhs = compose(pbar, &j.lift(Side::Source, f1.relation())).unwrap();
        if lhs != rhs {
            for (x, y) in untag(&lhs.difference(&rhs).unwrap()) {
                r.add(
                    code,
                    vec![x.clone(), y.clone()],
                    format!("{label}0(p({x})) = {y} but p({label}1({x})) differs"),
                );
            }
            for (x, y) in untag(&rhs.difference(&lhs).unwrap()) {
                r.add(
                    code,
                    vec![x.clone(), y.clone()],
                    format!("p({label}1({x})) = {y} but {label}0(p({x})) differs"),
                );
            }
        }
    }

    let fibers = |r: &mut ViolationReport,
                  code: &'static str,
                  bases: Vec<&Element>,
                  fiber1: &dyn Fn(&Element) -> BTreeSet<Element>,
                  fiber0: &dyn Fn(&Element) -> BTreeSet<Element>| {
        for x in bases {
            let px = &p.map[x];
            let src = fiber1(x);
            let tgt = fiber0(px);
            let image: BTreeSet<Element> = src.iter().map(|h| p.map[h].clone()).collect();
            if image != tgt || image.len() != src.len() {
                r.add(
                    code,
                    vec![x.clone()],
                    format!(
                        "fiber over {x} has {} elements with {} distinct images; fiber over {px} has {}",
                        src.len(),
                        image.len(),
                        tgt.len()
                    ),
                );
            }
        }
    };
    let bases_a: Vec<&Element> = n1.nodes().iter().chain(n1.symbols()).collect();
    fibers(&mut r, "H3.A", bases_a, &|x| n1.hooks_at(x).cloned().collect(), &|y| {
        n0.hooks_at(y).cloned().collect()
    });
    fibers(
        &mut r,
        "H3.C",
        n1.edges().iter().collect(),
        &|e| n1.facets_of(e).cloned().collect(),
        &|e| n0.facets_of(e).cloned().collect(),
    );

    let g1 = j.lift(Side::Source, n1.glue());
    let g0 = j.lift(Side::Target, n0.glue());
    let lhs = compose(pbar, &g1).unwrap();
    let rhs = compose(&g0, pbar).unwrap();
    for (x, y) in untag(&lhs.difference(&rhs).unwrap()) {
        r.add(
            "H4.fwd",
            vec![x.clone(), y.clone()],
            format!("({x}, {y}) ∈ p̄∘G1 but not G0∘p̄"),
        );
    }
    for (x, y) in untag(&rhs.difference(&lhs).unwrap()) {
        r.add(
            "H4.bwd",
            vec![x.clone(), y.clone()],
            format!("({x}, {y}) ∈ G0∘p̄ but not p̄∘G1"),
        );
    }

    for ((_, x), (_, z)) in minimality_conflicts(&g1, &j.p).unwrap() {
        if x < z {
            r.add(
                "H5",
                vec![x.clone(), z.clone()],
                format!("{x} and {z} have equal images and a common element under G1"),
            );
        }
    }
    r
}

/// `p ∘ q`: apply `q` first.
pub fn compose_homs(p: &Homomorphism, q: &Homomorphism) -> Result<Homomorphism> {
    if *q.target != *p.source {
        return Err(Error::EndpointMismatch(format!(
            "{} ends at {} but {} starts at {}",
            q.name,
            q.target.name(),
            p.name,
            p.source.name()
        )));
    }
    let map = q.map.iter().map(|(x, y)| (x.clone(), p.map[y].clone())).collect();
    Homomorphism::new(
        format!("{}_o_{}", p.name, q.name),
        Arc::clone(&q.source),
        Arc::clone(&p.target),
        map,
    )
}

pub fn invert_hom(f: &Homomorphism) -> Result<Homomorphism> {
    if !f.is_bijective() {
        return Err(Error::NotInvertible(format!(
            "{} maps {} elements onto {} of {}",
            f.name,
            f.map.len(),
            f.map.values().collect::<BTreeSet<_>>().len(),
            f.target.universe().len()
        )));
    }
    let map = f.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
    Homomorphism::new(
        format!("{}_inv", f.name),
        Arc::clone(&f.target),
        Arc::clone(&f.source),
        map,
    )
}

pub fn is_isomorphism(f: &Homomorphism) -> bool {
    f.is_bijective() && validate_homomorphism(f).is_empty()
}

pub fn is_automorphism(f: &Homomorphism) -> bool {
    *f.source == *f.target && is_isomorphism(f)
}

/// The restriction of `p` to a subnetwork of its source.
pub fn restrict_hom(p: &Homomorphism, sub: &Network) -> Result<Homomorphism> {
    let report = validate_subnetwork(&p.source, sub);
    if !report.is_empty() {
        return Err(Error::NotSubnetwork(report));
    }
    let map = sub.universe().iter().map(|x| (x.clone(), p.map[x].clone())).collect();
    Homomorphism::new(
        format!("{}_on_{}", p.name, sub.name()),
        Arc::new(sub.clone()),
        Arc::clone(&p.target),
        map,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_validates() {
        let id = Homomorphism::identity(Arc::new(fixtures::n_edge()));
        assert!(validate_homomorphism(&id).is_empty());
        assert!(is_isomorphism(&id) && is_automorphism(&id));
    }

    #[test]
    fn unfolding_validates_and_is_not_invertible() {
        let fold = fixtures::fold();
        assert!(
            validate_homomorphism(&fold).is_empty(),
            "{}",
            validate_homomorphism(&fold)
        );
        assert!(!is_isomorphism(&fold));
        assert!(matches!(invert_hom(&fold), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn collapsing_hooks_breaks_fibers() {
        let n = Arc::new(fixtures::n_edge());
        let h = |s: &str| Element::hook(s);
        let mut map: BTreeMap<Element, Element> = n.universe().iter().map(|x| (x.clone(), x.clone())).collect();
        map.insert(h("h2"), h("h1"));
        let p = Homomorphism::new("collapse", Arc::clone(&n), n, map).unwrap();
        let r = validate_homomorphism(&p);
        assert!(r.has("H3.A"), "{r}");
    }

    #[test]
    fn totality_is_enforced() {
        let n = Arc::new(fixtures::n_edge());
        let mut map: BTreeMap<Element, Element> = n.universe().iter().map(|x| (x.clone(), x.clone())).collect();
        map.remove(&Element::hook("h2"));
        let err = Homomorphism::new("partial", Arc::clone(&n), n, map).unwrap_err();
        assert!(matches!(err, Error::NotTotal(ref x) if x == "h2"));
    }

    #[test]
    fn compose_with_identity() {
        let fold = fixtures::fold();
        let id0 = Homomorphism::identity(Arc::clone(fold.target()));
        let id1 = Homomorphism::identity(Arc::clone(fold.source()));
        assert_eq!(compose_homs(&id0, &fold).unwrap().map(), fold.map());
        assert_eq!(compose_homs(&fold, &id1).unwrap().map(), fold.map());
        assert!(matches!(compose_homs(&fold, &fold), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn renaming_inverts() {
        let f = fixtures::renaming();
        assert!(is_isomorphism(&f));
        let g = invert_hom(&f).unwrap();
        assert!(validate_homomorphism(&g).is_empty());
        let back = compose_homs(&g, &f).unwrap();
        assert!(back.map().iter().all(|(x, y)| x == y));
        let forth = compose_homs(&f, &g).unwrap();
        assert!(forth.map().iter().all(|(x, y)| x == y));
    }

    #[test]
    fn swapping_components_is_an_automorphism() {
        let f = fixtures::swap_automorphism();
        assert!(is_automorphism(&f), "{}", validate_homomorphism(&f));
    }

    #[test]
    fn stale_endpoint_is_reported() {
        let id = Homomorphism::identity(Arc::new(fixtures::n_edge()));
        let other = Arc::new(fixtures::n_edge().renamed("changed"));
        let rebound = id.rebind(Arc::clone(&other), other);
        assert!(rebound.is_stale());
        assert_eq!(validate_homomorphism(&rebound).codes(), vec!["H0"]);
    }
}
