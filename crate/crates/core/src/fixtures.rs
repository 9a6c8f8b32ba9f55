//! Small hand-built networks and homomorphisms used by tests, the CLI
//! examples and the acceptance run.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::hom::Homomorphism;
use crate::network::{induce_gluing, Network, NetworkParts};
use crate::relation::{Element, Relation};

/// All sets empty.
pub fn n_empty() -> Network {
    Network::new(NetworkParts::new("empty"))
}

/// A single symbol and nothing else.
pub fn n_sigma() -> Network {
    let mut p = NetworkParts::new("n_sigma");
    p.add_symbol("sigma");
    Network::new(p)
}

fn add_edge_copy(p: &mut NetworkParts, suffix: &str) {
    let name = |s: &str| format!("{s}{suffix}");
    let sigma = p.add_symbol(&name("sigma"));
    let tau = p.add_symbol(&name("tau"));
    let n = p.add_node(&name("n"), &sigma, &tau);
    let h1 = p.add_hook(&name("h1"), &n);
    let h2 = p.add_hook(&name("h2"), &sigma);
    p.add_edge(&name("e"), &h1, &h2);
}

/// Whole `sigma` with one node `n` exposing part `tau`; hook `h1` on `n`
/// and `h2` on `sigma`, joined by edge `e`.
pub fn n_edge() -> Network {
    let mut p = NetworkParts::new("n_edge");
    add_edge_copy(&mut p, "");
    Network::new(p)
}

/// `k` disjoint copies of [`n_edge`], suffixed `_0`, `_1`, ...; one copy is
/// `n_edge` itself.
pub fn n_edge_copies(k: usize) -> Network {
    if k == 1 {
        return n_edge();
    }
    let mut p = NetworkParts::new(format!("n_edge_x{k}"));
    for i in 0..k {
        add_edge_copy(&mut p, &format!("_{i}"));
    }
    Network::new(p)
}

fn copy_index(name: &str) -> (&str, usize) {
    match name.rsplit_once('_') {
        Some((base, i)) if i.chars().all(|c| c.is_ascii_digit()) => (base, i.parse().unwrap()),
        _ => (name, 0),
    }
}

/// Maps copy `i` of `k` copies onto copy `i mod j` of `j` copies.
pub fn fold_copies(k: usize, j: usize) -> Homomorphism {
    let src = Arc::new(n_edge_copies(k));
    let tgt = Arc::new(n_edge_copies(j));
    let map: BTreeMap<Element, Element> = src
        .universe()
        .iter()
        .map(|x| {
            let (base, i) = copy_index(x.name());
            let name = if j == 1 {
                base.to_owned()
            } else {
                format!("{base}_{}", i % j)
            };
            (x.clone(), Element::new(x.sort(), name))
        })
        .collect();
    Homomorphism::new(format!("fold_{k}_{j}"), src, tgt, map).expect("total by construction")
}

/// The two-fold unfolding of `n_edge` folded onto it.
pub fn fold() -> Homomorphism {
    fold_copies(2, 1).renamed("fold")
}

/// Four copies folded onto two.
pub fn unfold() -> Homomorphism {
    fold_copies(4, 2).renamed("unfold")
}

/// An isomorphism from `n_edge` onto a copy with every name suffixed `_r`.
pub fn renaming() -> Homomorphism {
    let src = Arc::new(n_edge());
    let mut p = NetworkParts::new("n_edge_r");
    add_edge_copy(&mut p, "_r");
    let tgt = Arc::new(Network::new(p));
    let map = src
        .universe()
        .iter()
        .map(|x| (x.clone(), Element::new(x.sort(), format!("{}_r", x.name()))))
        .collect();
    Homomorphism::new("rename", src, tgt, map).expect("total by construction")
}

/// Exchanges the two components of `n_edge_copies(2)`.
pub fn swap_automorphism() -> Homomorphism {
    let net = Arc::new(n_edge_copies(2));
    let map = net
        .universe()
        .iter()
        .map(|x| {
            let (base, i) = copy_index(x.name());
            (x.clone(), Element::new(x.sort(), format!("{base}_{}", 1 - i)))
        })
        .collect();
    Homomorphism::new("swap", Arc::clone(&net), net, map).expect("total by construction")
}

/// Two copies of an edge-with-facet whole, without gluing: wholes `s1`,
/// `s2` over part `t`, nodes `n1`, `n2`, hooks `a1`, `b1`, `a2`, `b2`,
/// edges `e1`, `e2` and facets `k1`, `k2`.
pub fn parallel_edges() -> Network {
    let mut p = NetworkParts::new("parallel");
    let t = p.add_symbol("t");
    for i in 1..=2 {
        let s = p.add_symbol(&format!("s{i}"));
        let n = p.add_node(&format!("n{i}"), &s, &t);
        let a = p.add_hook(&format!("a{i}"), &n);
        let b = p.add_hook(&format!("b{i}"), &s);
        let e = p.add_edge(&format!("e{i}"), &a, &b);
        p.add_facet(&format!("k{i}"), &e);
    }
    Network::new(p)
}

/// [`parallel_edges`] with the gluing induced by `k1 ↦ k2`.
pub fn glued_pair() -> Network {
    let net = parallel_edges();
    let seed =
        Relation::from_pairs(net.universe(), [(Element::facet("k1"), Element::facet("k2"))]).expect("facets exist");
    let g = induce_gluing(&net, &seed).expect("valid skeleton");
    net.with_glue(&g).renamed("glued_pair")
}

/// Level a golden mutation is checked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Axioms,
    SemiDefinite,
    Definite,
}

/// A single edit of `n_edge` and the exact codes it must produce.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub name: &'static str,
    pub network: Network,
    pub level: Level,
    pub expected: Vec<&'static str>,
}

fn mutate(
    name: &'static str,
    level: Level,
    expected: &[&'static str],
    edit: impl FnOnce(&mut NetworkParts),
) -> Mutation {
    let mut parts = n_edge().into_parts();
    edit(&mut parts);
    parts.name = name.to_owned();
    Mutation {
        name,
        network: Network::new(parts),
        level,
        expected: expected.to_vec(),
    }
}

/// The golden single-edit mutations of `n_edge`.
pub fn n_edge_mutations() -> Vec<Mutation> {
    use Level::*;
    let sigma = Element::symbol("sigma");
    let tau = Element::symbol("tau");
    let n = Element::node("n");
    let h1 = Element::hook("h1");
    let h2 = Element::hook("h2");
    let e = Element::edge("e");
    vec![
        mutate("glue_h1_h2", Axioms, &["N2.A"], |p| p.add_glue(&h1, &h2)),
        mutate("glue_h2_h1", Axioms, &["N2.A"], |p| p.add_glue(&h2, &h1)),
        mutate("glue_tau_sigma", Definite, &["D-6"], |p| p.add_glue(&tau, &sigma)),
        mutate("glue_tau_sigma_semi", SemiDefinite, &["SD-6", "SD-8a"], |p| {
            p.add_glue(&tau, &sigma)
        }),
        mutate("isolated_hook", SemiDefinite, &["SD-4a"], |p| {
            p.add_hook("h3", &n);
        }),
        mutate("isolated_hook_definite", Definite, &["D-4b"], |p| {
            p.add_hook("h3", &n);
        }),
        mutate("isolated_node", Definite, &["D-1b"], |p| {
            p.add_node("m", &sigma, &sigma);
        }),
        mutate("loop_edge", SemiDefinite, &["SD-4a"], |p| {
            p.second.insert(e.clone(), h1.clone());
        }),
        mutate("unglued_facet", SemiDefinite, &["SD-6"], |p| {
            p.add_facet("k", &e);
        }),
        mutate("reverse_edge", Definite, &["D-4b"], |p| {
            p.add_edge("e2", &h2, &h1);
        }),
        mutate("hook_on_part", SemiDefinite, &["SD-1a"], |p| {
            p.attach.insert(h2.clone(), tau.clone());
        }),
        mutate("hook_on_part_definite", Definite, &["D-1b"], |p| {
            p.attach.insert(h2.clone(), tau.clone());
        }),
        mutate("whole_of_symbol", Axioms, &["N0.W"], |p| {
            p.whole.insert(sigma.clone(), tau.clone());
        }),
        mutate("missing_part", Axioms, &["N0.P"], |p| {
            p.part.remove(&n);
        }),
        mutate("hook_on_edge", Axioms, &["N0.A"], |p| {
            p.attach.insert(h1.clone(), e.clone());
        }),
        mutate("duplicate_name", Axioms, &["N0.name"], |p| {
            p.add_hook("n", &sigma);
        }),
        mutate("bad_hook_gluing", Axioms, &["N3.H"], |p| {
            let rho = p.add_symbol("rho");
            let m = p.add_node("m", &rho, &tau);
            let h3 = p.add_hook("h3", &m);
            let h4 = p.add_hook("h4", &n);
            p.add_glue(&rho, &sigma);
            p.add_glue(&m, &n);
            p.add_glue(&h3, &h1);
            p.add_glue(&h3, &h4);
        }),
    ]
}
