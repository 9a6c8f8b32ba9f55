//! Subnetworks: closure-based extraction, validation against the parent,
//! and inclusion homomorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::hom::Homomorphism;
use crate::network::{validate_network, Network, NetworkParts};
use crate::relation::{compose, id_on, Element, Relation, Sort};
use crate::report::ViolationReport;
use crate::{Error, Result};

/// The least set containing `seed` that is closed under the incidence maps,
/// the hook and facet fibers they force, and sub-elements.
pub fn closure(net: &Network, seed: impl IntoIterator<Item = Element>) -> Result<BTreeSet<Element>> {
    let mut chosen = BTreeSet::new();
    let mut queue: Vec<Element> = Vec::new();
    for x in seed {
        if !net.universe().contains(&x) {
            return Err(Error::UnknownElement(x.name().to_owned()));
        }
        queue.push(x);
    }
    while let Some(x) = queue.pop() {
        if !chosen.insert(x.clone()) {
            continue;
        }
        let mut next: Vec<Element> = Vec::new();
        match x.sort() {
            Sort::Symbol => next.extend(net.hooks_at(&x).cloned()),
            Sort::Node => {
                next.extend(net.w(&x).cloned());
                next.extend(net.p(&x).cloned());
                next.extend(net.hooks_at(&x).cloned());
            }
            Sort::Hook => next.extend(net.a(&x).cloned()),
            Sort::Edge => {
                next.extend(net.f(&x).cloned());
                next.extend(net.s(&x).cloned());
                next.extend(net.facets_of(&x).cloned());
            }
            Sort::Facet => next.extend(net.c(&x).cloned()),
        }
        next.extend(net.glue().row(&x).cloned());
        queue.extend(next.into_iter().filter(|y| !chosen.contains(y)));
    }
    Ok(chosen)
}

/// The subnetwork induced by the closure of `seed`, with `G' = I∘G∘I`.
pub fn extract_subnetwork(net: &Network, seed: impl IntoIterator<Item = Element>) -> Result<Network> {
    let report = validate_network(net);
    if !report.is_empty() {
        return Err(Error::InvalidNetwork {
            name: net.name().to_owned(),
            report,
        });
    }
    let keep = closure(net, seed)?;
    Ok(Network::new(induced_parts(net, &keep, &format!("{}_sub", net.name()))))
}

/// Restricts every set, map and gluing pair of `net` to `keep`.
pub fn induced_parts(net: &Network, keep: &BTreeSet<Element>, name: &str) -> NetworkParts {
    let src = net.parts();
    let set = |s: &BTreeSet<Element>| s.intersection(keep).cloned().collect::<BTreeSet<_>>();
    let map = |m: &BTreeMap<Element, Element>| {
        m.iter()
            .filter(|(x, _)| keep.contains(*x))
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect::<BTreeMap<_, _>>()
    };
    NetworkParts {
        name: name.to_owned(),
        symbols: set(&src.symbols),
        nodes: set(&src.nodes),
        hooks: set(&src.hooks),
        edges: set(&src.edges),
        facets: set(&src.facets),
        whole: map(&src.whole),
        part: map(&src.part),
        attach: map(&src.attach),
        first: map(&src.first),
        second: map(&src.second),
        carrier: map(&src.carrier),
        glue: src
            .glue
            .iter()
            .filter(|(x, y)| keep.contains(x) && keep.contains(y))
            .cloned()
            .collect(),
    }
}

/// Checks that `sub` is a subnetwork of `net`.
pub fn validate_subnetwork(net: &Network, sub: &Network) -> ViolationReport {
    let mut r = ViolationReport::new();
    let (p, q) = (net.parts(), sub.parts());

    for sort in Sort::ALL {
        for x in q.set(sort).difference(p.set(sort)) {
            r.add("S1", vec![x.clone()], format!("{sort} {x} is not in the parent"));
        }
    }
    let in_sub = |x: &Element| q.set(x.sort()).contains(x);

    for n in &q.nodes {
        for (label, img) in [("W", net.w(n)), ("P", net.p(n))] {
            if let Some(s) = img {
                if !in_sub(s) {
                    r.add(
                        "S2",
                        vec![n.clone(), s.clone()],
                        format!("{label}({n}) = {s} is not kept"),
                    );
                }
            }
        }
    }

    for (h, at) in &p.attach {
        if in_sub(at) != q.hooks.contains(h) {
            r.add(
                "S3",
                vec![h.clone(), at.clone()],
                format!("hook {h} at {at} breaks H' = A⁻¹(N'∪Σ')"),
            );
        }
    }

    for e in &q.edges {
        for (label, img) in [("F", net.f(e)), ("S", net.s(e))] {
            if let Some(h) = img {
                if !q.hooks.contains(h) {
                    r.add(
                        "S4",
                        vec![e.clone(), h.clone()],
                        format!("{label}({e}) = {h} is not kept"),
                    );
                }
            }
        }
    }

    for (k, e) in &p.carrier {
        if q.edges.contains(e) != q.facets.contains(k) {
            r.add(
                "S5",
                vec![k.clone(), e.clone()],
                format!("facet {k} of {e} breaks K' = C⁻¹(E')"),
            );
        }
    }

    for (label, pm, qm, dom) in [
        ("W", &p.whole, &q.whole, [Sort::Node, Sort::Symbol].as_slice()),
        ("P", &p.part, &q.part, &[Sort::Node]),
        ("A", &p.attach, &q.attach, &[Sort::Hook]),
        ("F", &p.first, &q.first, &[Sort::Edge]),
        ("S", &p.second, &q.second, &[Sort::Edge]),
        ("C", &p.carrier, &q.carrier, &[Sort::Facet]),
    ] {
        let keys: BTreeSet<&Element> = dom.iter().flat_map(|&s| q.set(s)).chain(qm.keys()).collect();
        for x in keys {
            if qm.get(x) != pm.get(x) || !dom.contains(&x.sort()) || !in_sub(x) {
                r.add(
                    "S6",
                    vec![x.clone()],
                    format!("{label}' at {x} is not the restriction of {label}"),
                );
            }
        }
    }

    // Closure and induced gluing, evaluated in the parent's universe.
    let kept: Vec<&Element> = sub.universe().iter().filter(|x| net.universe().contains(x)).collect();
    let i = id_on(net.universe(), kept).expect("filtered to the parent");
    let g = net.glue();
    let gi = compose(g, &i).unwrap();
    let ig = compose(&i, g).unwrap();
    for (x, y) in gi.difference(&ig).unwrap().iter() {
        r.add(
            "S7",
            vec![x.clone(), y.clone()],
            format!("{y} is glued to kept {x} but is not kept"),
        );
    }
    let igi = compose(&i, &gi).unwrap();
    let sub_glue: BTreeSet<(Element, Element)> = q.glue.clone();
    let induced: BTreeSet<(Element, Element)> = igi.to_pairs().into_iter().collect();
    for (x, y) in sub_glue.symmetric_difference(&induced) {
        r.add(
            "S8",
            vec![x.clone(), y.clone()],
            format!("({x}, {y}) breaks G' = I∘G∘I"),
        );
    }
    r
}

/// The identity embedding of a subnetwork.
pub fn inclusion_hom(sub: &Network, net: &Network) -> Result<Homomorphism> {
    let report = validate_subnetwork(net, sub);
    if !report.is_empty() {
        return Err(Error::NotSubnetwork(report));
    }
    let map = sub.universe().iter().map(|x| (x.clone(), x.clone())).collect();
    Homomorphism::new(
        format!("incl_{}", sub.name()),
        Arc::new(sub.clone()),
        Arc::new(net.clone()),
        map,
    )
}

/// `I` for a subnetwork, over the parent's universe.
pub fn inclusion_identity(net: &Network, sub: &Network) -> Relation {
    id_on(
        net.universe(),
        sub.universe().iter().filter(|x| net.universe().contains(x)),
    )
    .expect("filtered")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hom::validate_homomorphism;

    #[test]
    fn empty_and_full_seeds() {
        let net = fixtures::n_edge();
        let empty = extract_subnetwork(&net, []).unwrap();
        assert_eq!(empty.universe().len(), 0);
        let full = extract_subnetwork(&net, net.universe().iter().cloned()).unwrap();
        assert_eq!(full.parts().glue, net.parts().glue);
        assert_eq!(full.universe(), net.universe());
    }

    #[test]
    fn tau_alone() {
        let net = fixtures::n_edge();
        let sub = extract_subnetwork(&net, [Element::symbol("tau")]).unwrap();
        assert_eq!(
            sub.universe().iter().cloned().collect::<Vec<_>>(),
            vec![Element::symbol("tau")]
        );
        assert!(validate_subnetwork(&net, &sub).is_empty());
        let incl = inclusion_hom(&sub, &net).unwrap();
        assert!(validate_homomorphism(&incl).is_empty());
    }

    #[test]
    fn hooks_do_not_pull_in_edges() {
        let net = fixtures::n_edge();
        let sub = extract_subnetwork(&net, [Element::node("n")]).unwrap();
        assert!(sub.edges().is_empty());
        assert!(sub.hooks().contains(&Element::hook("h1")));
        assert!(sub.hooks().contains(&Element::hook("h2")));
    }

    #[test]
    fn missing_facet_is_reported() {
        let net = fixtures::glued_pair();
        let e = net.edges().iter().next().unwrap().clone();
        let sub = extract_subnetwork(&net, [e]).unwrap();
        assert!(validate_subnetwork(&net, &sub).is_empty());
        let mut parts = sub.into_parts();
        let k = parts.facets.iter().next().unwrap().clone();
        parts.facets.remove(&k);
        parts.carrier.remove(&k);
        parts.glue.retain(|(x, y)| *x != k && *y != k);
        let r = validate_subnetwork(&net, &Network::new(parts));
        assert!(r.has("S5"), "{r}");
    }

    #[test]
    fn closure_is_idempotent() {
        let net = fixtures::glued_pair();
        let seed = [net.symbols().iter().next().unwrap().clone()];
        let once = closure(&net, seed).unwrap();
        let twice = closure(&net, once.iter().cloned()).unwrap();
        assert_eq!(once, twice);
    }
}
