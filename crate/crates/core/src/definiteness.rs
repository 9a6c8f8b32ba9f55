//! Minimality relative to a network, the semi-definite and definite
//! checkers, and the certificate that guarantees a definite source.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::hom::{validate_homomorphism, Homomorphism};
use crate::network::{gluing_parts, induce_layers, validate_network, GluingParts, Incidence, Network};
use crate::relation::{
    chain, components, compose, inverse, is_forest, is_sub, join, Element, Relation, Sort, DEFAULT_ORACLE_CAP,
};
use crate::report::ViolationReport;
use crate::union_find::DisjointSets;
use crate::{Error, Result};

/// Default cap on the number of relevant elements the brute-force (8a)
/// enumeration accepts.
pub const DEFAULT_ENUM_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Cap on `|G|` for the sub-relation enumeration oracle.
    pub oracle_cap: usize,
    /// Cap on relevant elements for the brute-force (8a) enumeration.
    pub enum_cap: usize,
    /// Also run the brute-force oracles and report disagreements.
    pub with_oracle: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            oracle_cap: DEFAULT_ORACLE_CAP,
            enum_cap: DEFAULT_ENUM_CAP,
            with_oracle: false,
        }
    }
}

/// A clause that could not be decided within the configured caps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Infeasible {
    pub code: &'static str,
    pub size: usize,
    pub cap: usize,
}

/// Violations plus the clauses left undecided by an enumeration cap. The
/// checked predicate holds exactly when both lists are empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DefinitenessReport {
    pub violations: ViolationReport,
    pub infeasible: Vec<Infeasible>,
}

impl DefinitenessReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty() && self.infeasible.is_empty()
    }

    /// `Some(true)` when the predicate holds, `None` when undecided.
    pub fn holds(&self) -> Option<bool> {
        if !self.violations.is_empty() {
            Some(false)
        } else if self.infeasible.is_empty() {
            Some(true)
        } else {
            None
        }
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.violations.codes()
    }

    fn infeasible(&mut self, code: &'static str, err: Error) -> Result<()> {
        match err {
            Error::Infeasible { size, cap, .. } => {
                self.infeasible.push(Infeasible { code, size, cap });
                Ok(())
            }
            other => Err(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MinimalityMethod {
    /// Some facet is neither a sub- nor a superfacet; minimality fails.
    Coverage,
    /// `G_K∘G_K⁻¹ ⊆ id_K` holds, so minimality is equivalent to the four
    /// layer equations.
    Equations,
    /// The layer equations do not apply; decided by the closure search.
    Closure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinimalityOutcome {
    pub minimal: bool,
    pub method: MinimalityMethod,
}

fn require_valid(net: &Network) -> Result<&Incidence> {
    let report = validate_network(net);
    if !report.is_empty() {
        return Err(Error::InvalidNetwork {
            name: net.name().to_owned(),
            report,
        });
    }
    net.typed()
}

fn facet_cover(net: &Network, g_k: &Relation) -> bool {
    let gki = inverse(g_k);
    let cover = join(&compose(g_k, &gki).unwrap(), &compose(&gki, g_k).unwrap()).unwrap();
    is_sub(&net.id(Sort::Facet), &cover).unwrap()
}

/// The four layer equations: each layer of `G` equals the layer induced
/// from the one below it.
pub fn layer_equations(net: &Network, inc: &Incidence, gp: &GluingParts) -> Vec<(&'static str, bool)> {
    let (w, a, f, s, c) = (
        inc.w.relation(),
        inc.a.relation(),
        inc.f.relation(),
        inc.s.relation(),
        inc.c.relation(),
    );
    let a_sandwich = chain(&[a, &gp.g_h, &inverse(a)]).unwrap();
    let sigma = join(
        &chain(&[w, &gp.g_n, &inverse(w)]).unwrap(),
        &compose(&net.id(Sort::Symbol), &a_sandwich).unwrap(),
    )
    .unwrap();
    let node = compose(&net.id(Sort::Node), &a_sandwich).unwrap();
    let hook = join(
        &chain(&[f, &gp.g_e, &inverse(f)]).unwrap(),
        &chain(&[s, &gp.g_e, &inverse(s)]).unwrap(),
    )
    .unwrap();
    let edge = chain(&[c, &gp.g_k, &inverse(c)]).unwrap();
    vec![
        ("G_Σ", sigma == gp.g_sigma),
        ("G_N", node == gp.g_n),
        ("G_H", hook == gp.g_h),
        ("G_E", edge == gp.g_e),
    ]
}

/// Minimality of `G` relative to the network, by the layer equations when
/// `G_K∘G_K⁻¹ ⊆ id_K` and by a polynomial closure search otherwise.
pub fn is_minimal_rel_network_fast(net: &Network) -> Result<MinimalityOutcome> {
    let inc = require_valid(net)?;
    let gp = gluing_parts(net);
    if !facet_cover(net, &gp.g_k) {
        return Ok(MinimalityOutcome {
            minimal: false,
            method: MinimalityMethod::Coverage,
        });
    }
    let id_k = net.id(Sort::Facet);
    if is_sub(&compose(&gp.g_k, &inverse(&gp.g_k)).unwrap(), &id_k).unwrap() {
        let minimal = layer_equations(net, inc, &gp).iter().all(|(_, ok)| *ok);
        return Ok(MinimalityOutcome {
            minimal,
            method: MinimalityMethod::Equations,
        });
    }
    Ok(MinimalityOutcome {
        minimal: minimal_by_closure(net, inc),
        method: MinimalityMethod::Closure,
    })
}

/// Every condition on a candidate `G* ⊆ G` other than facet coverage is a
/// Horn clause over pairs: `(x, y) ∈ G*` with `y ∈ dom f` needs
/// `(f(x), f(y)) ∈ G*`, and the `P` inclusion forbids some pairs outright.
/// Qualifying sub-relations are therefore closed under union, and `G` is
/// minimal iff for no pair the largest closed set avoiding it still covers
/// every facet.
fn minimal_by_closure(net: &Network, inc: &Incidence) -> bool {
    let pairs = net.glue().to_pairs();
    let index: BTreeMap<&(Element, Element), usize> = pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut doomed = vec![false; pairs.len()];
    let mut needed_by: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for (i, (x, y)) in pairs.iter().enumerate() {
        for f in [&inc.w, &inc.a, &inc.f, &inc.s, &inc.c] {
            if let Some(fy) = f.apply(y) {
                match f.apply(x).and_then(|fx| index.get(&(fx.clone(), fy.clone()))) {
                    Some(&j) => needed_by[j].push(i),
                    None => doomed[i] = true,
                }
            }
        }
        if let Some(py) = inc.p.apply(y) {
            if inc.p.apply(x) != Some(py) {
                doomed[i] = true;
            }
        }
    }
    for drop in 0..pairs.len() {
        let mut removed = doomed.clone();
        removed[drop] = true;
        let mut stack: Vec<usize> = (0..pairs.len()).filter(|&i| removed[i]).collect();
        while let Some(j) = stack.pop() {
            for &i in &needed_by[j] {
                if !removed[i] {
                    removed[i] = true;
                    stack.push(i);
                }
            }
        }
        let kept = net.glue().select(|k| !removed[k]);
        let g_k = compose(&kept, &net.id(Sort::Facet)).unwrap();
        if facet_cover(net, &g_k) {
            return false;
        }
    }
    true
}

fn qualifies(net: &Network, inc: &Incidence, g: &Relation) -> bool {
    let p = inc.p.relation();
    if !is_sub(&compose(p, g).unwrap(), p).unwrap() {
        return false;
    }
    for f in [&inc.w, &inc.a, &inc.f, &inc.s, &inc.c] {
        let f = f.relation();
        if !is_sub(&compose(f, g).unwrap(), &compose(g, f).unwrap()).unwrap() {
            return false;
        }
    }
    facet_cover(net, &compose(g, &net.id(Sort::Facet)).unwrap())
}

/// Definitional minimality: `G` covers every facet and no proper
/// sub-relation satisfies the incidence inclusions and facet coverage.
/// Enumerates every subset of `G`.
pub fn minimal_rel_network_oracle(net: &Network, cap: usize) -> Result<bool> {
    let inc = require_valid(net)?;
    let g = net.glue();
    if !facet_cover(net, &compose(g, &net.id(Sort::Facet)).unwrap()) {
        return Ok(false);
    }
    let n = g.len();
    if n > cap || n >= 63 {
        return Err(Error::Infeasible {
            what: "minimality oracle",
            size: n,
            cap,
        });
    }
    let full = (1u64 << n) - 1;
    for mask in 0..full {
        let sub = g.select(|k| mask & (1 << k) != 0);
        if qualifies(net, inc, &sub) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_minimality(
    net: &Network,
    code: &'static str,
    opts: &CheckOptions,
    out: &mut DefinitenessReport,
) -> Result<()> {
    let fast = is_minimal_rel_network_fast(net)?;
    if !fast.minimal {
        let inc = net.typed()?;
        let gp = gluing_parts(net);
        let detail = match fast.method {
            MinimalityMethod::Coverage => {
                let uncovered = uncovered_facets(net, &gp.g_k);
                out.violations
                    .add(code, uncovered, "facet is neither a subfacet nor a superfacet");
                return oracle_agreement(net, false, opts, out);
            }
            MinimalityMethod::Equations => layer_equations(net, inc, &gp)
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(l, _)| l)
                .collect::<Vec<_>>()
                .join(", "),
            MinimalityMethod::Closure => "a proper sub-relation also qualifies".to_owned(),
        };
        out.violations.add(code, vec![], format!("G is not minimal: {detail}"));
    }
    oracle_agreement(net, fast.minimal, opts, out)
}

fn oracle_agreement(net: &Network, fast: bool, opts: &CheckOptions, out: &mut DefinitenessReport) -> Result<()> {
    if opts.with_oracle {
        match minimal_rel_network_oracle(net, opts.oracle_cap) {
            Ok(o) if o != fast => out
                .violations
                .add("O-6", vec![], format!("fast says {fast}, oracle says {o}")),
            Ok(_) => {}
            Err(e) => out.infeasible("O-6", e)?,
        }
    }
    Ok(())
}

fn uncovered_facets(net: &Network, g_k: &Relation) -> Vec<Element> {
    net.facets()
        .iter()
        .filter(|k| g_k.row(k).next().is_none() && inverse(g_k).row(k).next().is_none())
        .cloned()
        .collect()
}

/// Right-hand side of (8a) as one relation:
/// `W̄∘G_N ∪ id_Σ∘Ā∘G_H∘Ā⁻¹`.
fn symbol_support(net: &Network, inc: &Incidence, gp: &GluingParts) -> Relation {
    let a = inc.a.relation();
    join(
        &compose(inc.w.relation(), &gp.g_n).unwrap(),
        &compose(&net.id(Sort::Symbol), &chain(&[a, &gp.g_h, &inverse(a)]).unwrap()).unwrap(),
    )
    .unwrap()
}

/// Pairs `(σ, σ')` of `G_Σ` for which some row `T` satisfies the premise of
/// (8a) and contains `σ` without supporting `σ'`.
///
/// A row `T` satisfies the premise iff every edge in `T` has both end
/// vertices `A(F(e))`, `A(S(e))` in `T` and every hook of a vertex in `T`
/// has an incident edge in `T`. Such rows are closed under union, so for a
/// fixed `σ'` the largest one avoiding every vertex that would support `σ'`
/// is found by deleting vertices and edges until both rules hold.
fn clause_8a_failures(net: &Network, inc: &Incidence, gp: &GluingParts) -> Vec<(Element, Element)> {
    let support = symbol_support(net, inc, gp);
    let incident: BTreeMap<&Element, Vec<&Element>> = {
        let mut m: BTreeMap<&Element, Vec<&Element>> = BTreeMap::new();
        for e in net.edges() {
            for h in [net.f(e).unwrap(), net.s(e).unwrap()] {
                m.entry(h).or_default().push(e);
            }
        }
        m
    };
    let mut failures = Vec::new();
    for (sigma, target) in gp.g_sigma.iter() {
        let mut vertices: BTreeSet<&Element> = net
            .nodes()
            .iter()
            .chain(net.symbols())
            .filter(|x| !support.contains(x, target))
            .collect();
        let mut edges: BTreeSet<&Element> = net.edges().iter().collect();
        loop {
            let before = (vertices.len(), edges.len());
            edges.retain(|e| {
                vertices.contains(net.a(net.f(e).unwrap()).unwrap())
                    && vertices.contains(net.a(net.s(e).unwrap()).unwrap())
            });
            vertices.retain(|x| {
                net.hooks_at(x)
                    .all(|h| incident.get(h).is_some_and(|es| es.iter().any(|e| edges.contains(e))))
            });
            if (vertices.len(), edges.len()) == before {
                break;
            }
        }
        if vertices.contains(sigma) {
            failures.push((sigma.clone(), target.clone()));
        }
    }
    failures
}

/// Brute-force (8a): enumerate every row `T` over the elements that can
/// affect either side and test premise and conclusion directly.
pub fn clause_8a_oracle(net: &Network, cap: usize) -> Result<bool> {
    let inc = require_valid(net)?;
    let gp = gluing_parts(net);
    let a_inv = inverse(inc.a.relation());
    let fs = join(inc.f.relation(), inc.s.relation()).unwrap();
    let a = inc.a.relation();
    let support_n = compose(inc.w.relation(), &gp.g_n).unwrap();
    let support_h = compose(&net.id(Sort::Symbol), &chain(&[a, &gp.g_h, &inverse(a)]).unwrap()).unwrap();
    let relevant: Vec<&Element> = net
        .universe()
        .iter()
        .filter(|x| {
            [&a_inv, &fs, &gp.g_sigma, &support_n, &support_h]
                .iter()
                .any(|r| r.row(x).next().is_some())
        })
        .collect();
    if relevant.len() > cap || relevant.len() >= 63 {
        return Err(Error::Infeasible {
            what: "clause (8a) enumeration",
            size: relevant.len(),
            cap,
        });
    }
    for mask in 0u64..(1u64 << relevant.len()) {
        let t: Vec<&Element> = relevant
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| *x)
            .collect();
        if a_inv.image(t.iter().copied()) != fs.image(t.iter().copied()) {
            continue;
        }
        let lhs = gp.g_sigma.image(t.iter().copied());
        let mut rhs = support_n.image(t.iter().copied());
        rhs.extend(support_h.image(t.iter().copied()));
        if !lhs.is_subset(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_semidefinite(net: &Network, opts: &CheckOptions) -> Result<DefinitenessReport> {
    let inc = require_valid(net)?;
    let gp = gluing_parts(net);
    let mut out = DefinitenessReport::default();
    let v = &mut out.violations;

    // (1a) both ends of every edge belong to the same whole.
    let (w, a, f, s) = (inc.w.relation(), inc.a.relation(), inc.f.relation(), inc.s.relation());
    let waf = chain(&[w, a, f]).unwrap();
    let was = chain(&[w, a, s]).unwrap();
    if waf != was {
        for e in net.edges() {
            let wf = waf.row(e).next();
            let ws = was.row(e).next();
            if wf != ws {
                v.add(
                    "SD-1a",
                    vec![e.clone()],
                    format!("W(A(F({e}))) = {} but W(A(S({e}))) = {}", wf.unwrap(), ws.unwrap()),
                );
            }
        }
    }

    if !is_forest(&gp.g_n) {
        v.add("SD-3", cycle_witness(net, &gp.g_n), "G_N contains a cycle");
    }

    // (4a) every hook has an incident edge.
    let ends: BTreeSet<Element> = f.range().union(&s.range()).cloned().collect();
    for h in net.hooks() {
        if !ends.contains(h) {
            v.add("SD-4a", vec![h.clone()], format!("hook {h} has no incident edge"));
        }
    }

    let id_k = net.id(Sort::Facet);
    let kk = compose(&gp.g_k, &inverse(&gp.g_k)).unwrap();
    for (x, y) in kk.difference(&id_k).unwrap().iter() {
        if x < y {
            v.add(
                "SD-5a",
                vec![x.clone(), y.clone()],
                format!("{x} and {y} are glued to a common facet"),
            );
        }
    }

    // (7a) incident edges of a subhook are subedges.
    let g = net.glue();
    for (label, fun) in [("F", f), ("S", s)] {
        let lhs = compose(fun, g).unwrap();
        let rhs = compose(g, fun).unwrap();
        for (x, y) in lhs
            .difference(&rhs)
            .unwrap()
            .iter()
            .chain(rhs.difference(&lhs).unwrap().iter())
        {
            v.add(
                "SD-7a",
                vec![x.clone(), y.clone()],
                format!("{label}̄∘G ≠ G∘{label}̄ at ({x}, {y})"),
            );
        }
    }

    let failures = clause_8a_failures(net, inc, &gp);
    for (sigma, target) in &failures {
        v.add(
            "SD-8a",
            vec![sigma.clone(), target.clone()],
            format!("{target} is glued to {sigma} without supporting node or hook gluings"),
        );
    }
    if opts.with_oracle {
        match clause_8a_oracle(net, opts.enum_cap) {
            Ok(o) if o != failures.is_empty() => out.violations.add(
                "O-8a",
                vec![],
                format!("fixpoint says {}, enumeration says {o}", failures.is_empty()),
            ),
            Ok(_) => {}
            Err(e) => out.infeasible("O-8a", e)?,
        }
    }

    check_minimality(net, "SD-6", opts, &mut out)?;
    Ok(out)
}

fn cycle_witness(net: &Network, r: &Relation) -> Vec<Element> {
    let nodes: Vec<&Element> = net.nodes().iter().collect();
    let pos = |x: &Element| nodes.binary_search(&x).ok();
    let mut ds = DisjointSets::new(nodes.len());
    for (x, y) in r.iter() {
        if let (Some(i), Some(j)) = (pos(x), pos(y)) {
            if !ds.union(i, j) {
                return vec![x.clone(), y.clone()];
            }
        }
    }
    vec![]
}

/// `W` coequalises `A∘F` and `A∘S`: it is constant on the classes of the
/// equivalence generated by `A(F(e)) ~ A(S(e))`, and the induced map from
/// classes to `Σ` is a bijection.
pub fn check_coequaliser(net: &Network) -> Result<bool> {
    Ok(coequaliser_failures(net)?.is_empty())
}

fn coequaliser_failures(net: &Network) -> Result<Vec<(Vec<Element>, String)>> {
    net.typed()?;
    let verts: Vec<&Element> = net
        .symbols()
        .iter()
        .chain(net.nodes())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pos = |x: &Element| verts.binary_search(&x).expect("vertex");
    let mut ds = DisjointSets::new(verts.len());
    for e in net.edges() {
        let x = net.a(net.f(e).unwrap()).unwrap();
        let y = net.a(net.s(e).unwrap()).unwrap();
        ds.union(pos(x), pos(y));
    }
    let mut out = Vec::new();
    let mut by_symbol: BTreeMap<&Element, Vec<Vec<Element>>> = BTreeMap::new();
    for class in ds.groups() {
        let members: Vec<Element> = class.iter().map(|&i| verts[i].clone()).collect();
        let images: BTreeSet<&Element> = members.iter().map(|x| net.w(x).unwrap()).collect();
        if images.len() > 1 {
            out.push((members.clone(), "W is not constant on a connected class".to_owned()));
        }
        for img in images {
            by_symbol.entry(img).or_default().push(members.clone());
        }
    }
    for sigma in net.symbols() {
        match by_symbol.get(sigma).map(Vec::len).unwrap_or(0) {
            1 => {}
            0 => out.push((vec![sigma.clone()], format!("no class maps to {sigma}"))),
            n => {
                let elems = by_symbol[sigma].iter().flatten().cloned().collect();
                out.push((elems, format!("{n} classes map to {sigma}")));
            }
        }
    }
    Ok(out)
}

/// `E →F H ←S E` is a sum: `F` and `S` are injective with disjoint images
/// covering `H`.
pub fn check_sum_diagram(net: &Network) -> Result<bool> {
    Ok(sum_failures(net, net.hooks())?.is_empty())
}

/// Sum-diagram failures onto the hook set `hooks`.
pub(crate) fn sum_failures(net: &Network, hooks: &BTreeSet<Element>) -> Result<Vec<(Vec<Element>, String)>> {
    net.typed()?;
    let mut ends: BTreeMap<&Element, Vec<String>> = BTreeMap::new();
    for e in net.edges() {
        ends.entry(net.f(e).unwrap()).or_default().push(format!("F({e})"));
        ends.entry(net.s(e).unwrap()).or_default().push(format!("S({e})"));
    }
    let mut out = Vec::new();
    for h in hooks {
        match ends.get(h).map(Vec::len).unwrap_or(0) {
            1 => {}
            0 => out.push((vec![h.clone()], format!("hook {h} is no edge end"))),
            _ => out.push((vec![h.clone()], format!("hook {h} is {}", ends[h].join(" and ")))),
        }
    }
    for h in ends.keys() {
        if !hooks.contains(*h) {
            out.push((vec![(*h).clone()], format!("edge end {h} lies outside the hook set")));
        }
    }
    Ok(out)
}

pub fn check_definite(net: &Network, opts: &CheckOptions) -> Result<DefinitenessReport> {
    require_valid(net)?;
    let gp = gluing_parts(net);
    let mut out = DefinitenessReport::default();
    let v = &mut out.violations;

    for (elems, msg) in coequaliser_failures(net)? {
        v.add("D-1b", elems, msg);
    }

    // (2b) nodes sharing a part lie in one component of G_N.
    let comps = components(&gp.g_n, net.nodes());
    let comp_of = |n: &Element| comps.iter().position(|c| c.contains(n));
    let nodes: Vec<&Element> = net.nodes().iter().collect();
    for (i, n1) in nodes.iter().enumerate() {
        for n2 in &nodes[i + 1..] {
            if net.p(n1) == net.p(n2) && comp_of(n1) != comp_of(n2) {
                v.add(
                    "D-2b",
                    vec![(*n1).clone(), (*n2).clone()],
                    format!(
                        "{n1} and {n2} share part {} but are not connected by gluing",
                        net.p(n1).unwrap()
                    ),
                );
            }
        }
    }

    if !is_forest(&gp.g_n) {
        v.add("D-3", cycle_witness(net, &gp.g_n), "G_N contains a cycle");
    }

    for (elems, msg) in sum_failures(net, net.hooks())? {
        v.add("D-4b", elems, msg);
    }

    let gki = inverse(&gp.g_k);
    let kk = compose(&gp.g_k, &gki).unwrap();
    let cover = join(&kk, &compose(&gki, &gp.g_k).unwrap()).unwrap();
    let id_k = net.id(Sort::Facet);
    for (x, y) in cover.difference(&id_k).unwrap().iter() {
        if x < y {
            v.add(
                "D-5b",
                vec![x.clone(), y.clone()],
                format!("{x} and {y} share a sub- or superfacet"),
            );
        }
    }
    for k in uncovered_facets(net, &gp.g_k) {
        v.add("D-5b", vec![k.clone()], format!("{k} has no subfacet or superfacet"));
    }

    check_minimality(net, "D-6", opts, &mut out)?;
    Ok(out)
}

/// Checks the sufficient conditions for a definite source: the symbol-count
/// inequality, the sum diagram, the facet function, the coequaliser and a
/// semi-definite target.
///
/// Because glued nodes share their part, `|P⁻¹X| − |G_N∘id_{P⁻¹X}|` is a
/// sum over the symbols of `X`, so the inequality holds for every `X` iff it
/// holds for every singleton.
pub fn check_thm23_certificate(p: &Homomorphism, opts: &CheckOptions) -> Result<ViolationReport> {
    let hr = validate_homomorphism(p);
    if !hr.is_empty() {
        return Err(Error::InvalidHomomorphism {
            name: p.name().to_owned(),
            report: hr,
        });
    }
    let n1 = p.source();
    let mut r = ViolationReport::new();

    let g_n = n1.glue_part(Sort::Node);
    for sigma in n1.symbols() {
        let (size, glued) = symbol_excess(n1, &g_n, std::slice::from_ref(sigma));
        if size > glued + 1 {
            r.add(
                "T23-a",
                vec![sigma.clone()],
                format!("X = {{{sigma}}}: |P⁻¹X| − |G_N∘id_P⁻¹X| = {size} − {glued} > 1"),
            );
        }
    }

    for (elems, msg) in sum_failures(n1, n1.hooks())? {
        r.add("T23-b", elems, msg);
    }

    let g_k = n1.glue_part(Sort::Facet);
    let dom_g = n1.glue().domain();
    let free: BTreeSet<&Element> = n1.facets().iter().filter(|k| !dom_g.contains(k)).collect();
    let gki = inverse(&g_k);
    for k in n1.facets() {
        let supers: Vec<&Element> = gki.row(k).collect();
        match (free.contains(k), supers.len()) {
            (true, 1) | (false, 0) => {}
            (true, n) => r.add(
                "T23-c",
                vec![k.clone()],
                format!("{k} is glued to {n} superfacets, expected one"),
            ),
            (false, _) => r.add(
                "T23-c",
                vec![k.clone()],
                format!("{k} is in dom(G) but also glued to a facet"),
            ),
        }
    }

    for (elems, msg) in coequaliser_failures(n1)? {
        r.add("T23-d", elems, msg);
    }

    let target = check_semidefinite(p.target(), opts)?;
    if let Some(inf) = target.infeasible.first() {
        return Err(Error::Infeasible {
            what: "target semi-definiteness",
            size: inf.size,
            cap: inf.cap,
        });
    }
    for code in target.codes() {
        r.add(
            "T23-target",
            vec![],
            format!("target {} fails {code}", p.target().name()),
        );
    }
    Ok(r)
}

/// `(|P⁻¹X|, |G_N∘id_{P⁻¹X}|)` for a symbol set `X`.
pub fn symbol_excess(net: &Network, g_n: &Relation, x: &[Element]) -> (usize, usize) {
    let pre: BTreeSet<Element> = net
        .nodes()
        .iter()
        .filter(|n| net.p(n).is_some_and(|s| x.contains(s)))
        .cloned()
        .collect();
    let glued = compose(g_n, &net.id_set(&pre).expect("nodes are in the universe")).unwrap();
    (pre.len(), glued.len())
}

/// Induced gluing layers from the facet part of the network's own `G`.
pub fn induced_from_facets(net: &Network) -> Result<GluingParts> {
    let inc = net.typed()?;
    induce_layers(net, inc, &net.glue_part(Sort::Facet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn opts() -> CheckOptions {
        CheckOptions {
            with_oracle: true,
            ..CheckOptions::default()
        }
    }

    #[test]
    fn fixtures_are_definite_and_semidefinite() {
        for net in [fixtures::n_empty(), fixtures::n_sigma(), fixtures::n_edge()] {
            let d = check_definite(&net, &opts()).unwrap();
            assert!(d.is_empty(), "{}: {:?}", net.name(), d);
            let s = check_semidefinite(&net, &opts()).unwrap();
            assert!(s.is_empty(), "{}: {:?}", net.name(), s);
        }
    }

    #[test]
    fn minimality_fast_path_on_fixtures() {
        for net in [fixtures::n_empty(), fixtures::n_edge()] {
            let out = is_minimal_rel_network_fast(&net).unwrap();
            assert!(out.minimal);
            assert_eq!(out.method, MinimalityMethod::Equations);
            assert!(minimal_rel_network_oracle(&net, 16).unwrap());
        }
    }

    #[test]
    fn spurious_symbol_gluing_is_not_minimal() {
        let mut parts = fixtures::n_edge().into_parts();
        parts.add_glue(&Element::symbol("tau"), &Element::symbol("sigma"));
        let net = Network::new(parts);
        assert!(validate_network(&net).is_empty());
        assert!(!is_minimal_rel_network_fast(&net).unwrap().minimal);
        assert!(!minimal_rel_network_oracle(&net, 16).unwrap());
        assert_eq!(check_definite(&net, &opts()).unwrap().codes(), vec!["D-6"]);
        assert_eq!(
            check_semidefinite(&net, &opts()).unwrap().codes(),
            vec!["SD-6", "SD-8a"]
        );
    }

    #[test]
    fn induced_network_is_minimal() {
        let net = fixtures::glued_pair();
        let out = is_minimal_rel_network_fast(&net).unwrap();
        assert!(out.minimal);
        assert!(minimal_rel_network_oracle(&net, 16).unwrap());
        assert!(clause_8a_oracle(&net, 20).unwrap());
    }

    #[test]
    fn isolated_hook_fails_4a_and_4b() {
        let mut parts = fixtures::n_edge().into_parts();
        parts.add_hook("h3", &Element::node("n"));
        let net = Network::new(parts);
        assert_eq!(check_semidefinite(&net, &opts()).unwrap().codes(), vec!["SD-4a"]);
        assert_eq!(check_definite(&net, &opts()).unwrap().codes(), vec!["D-4b"]);
    }

    #[test]
    fn coequaliser_examples() {
        assert!(check_coequaliser(&fixtures::n_edge()).unwrap());
        assert!(check_coequaliser(&fixtures::n_sigma()).unwrap());
        let mut parts = fixtures::n_edge().into_parts();
        let sigma = Element::symbol("sigma");
        parts.add_node("m", &sigma, &sigma);
        assert!(!check_coequaliser(&Network::new(parts)).unwrap());

        let mut parts = fixtures::n_edge().into_parts();
        parts.attach.insert(Element::hook("h2"), Element::node("n"));
        let net = Network::new(parts);
        assert!(!check_coequaliser(&net).unwrap());
        assert!(check_definite(&net, &opts()).unwrap().codes().contains(&"D-1b"));
    }

    #[test]
    fn sum_diagram_examples() {
        assert!(check_sum_diagram(&fixtures::n_empty()).unwrap());
        assert!(check_sum_diagram(&fixtures::n_edge()).unwrap());
        let mut parts = fixtures::n_edge().into_parts();
        let h1 = Element::hook("h1");
        let h3 = parts.add_hook("h3", &Element::symbol("sigma"));
        parts.add_edge("e2", &h1, &h3);
        assert!(!check_sum_diagram(&Network::new(parts)).unwrap());
    }

    #[test]
    fn certificate_on_identity() {
        let id = Homomorphism::identity(std::sync::Arc::new(fixtures::n_edge()));
        assert!(check_thm23_certificate(&id, &opts()).unwrap().is_empty());
    }

    #[test]
    fn certificate_counts_unglued_nodes_sharing_a_part() {
        let mut parts = fixtures::n_edge().into_parts();
        let tau = Element::symbol("tau");
        let sigma = Element::symbol("sigma");
        let m = parts.add_node("m", &sigma, &tau);
        let h3 = parts.add_hook("h3", &m);
        let h4 = parts.add_hook("h4", &Element::node("n"));
        parts.add_edge("e2", &h4, &h3);
        let net = std::sync::Arc::new(Network::new(parts));
        let id = Homomorphism::identity(net);
        let r = check_thm23_certificate(&id, &opts()).unwrap();
        assert_eq!(r.codes(), vec!["T23-a"]);
        let g_n = id.source().glue_part(Sort::Node);
        assert_eq!(symbol_excess(id.source(), &g_n, &[tau]), (2, 0));
    }
}
