//! Line-oriented text format for networks and homomorphisms.
//!
//! ```text
//! # comment
//! network n_edge
//!   symbol sigma
//!   symbol tau
//!   node n whole=sigma part=tau
//!   hook h1 at=n
//!   hook h2 at=sigma
//!   edge e from=h1 to=h2
//!   facet k of=e
//!   glue SUPER SUB        # SUB is glued to SUPER
//! end
//!
//! hom id : n_edge -> n_edge
//!   map sigma sigma
//!   ...
//! end
//! ```
//!
//! Declarations inside a block may appear in any order. Gluing pairs of any
//! sorts are accepted here; ill-sorted pairs are the validator's business.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::hom::Homomorphism;
use crate::network::{Network, NetworkParts};
use crate::relation::{Element, Sort};
use crate::{Error, Result};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// An unresolved `hom` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub line: usize,
    pub maps: Vec<(String, String, usize)>,
}

/// Every block of one or more files.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub networks: Vec<Network>,
    pub homs: Vec<HomSpec>,
}

impl Document {
    pub fn network(&self, name: &str) -> Option<&Network> {
        self.networks.iter().find(|n| n.name() == name)
    }

    /// Appends another document, rejecting clashing network names.
    pub fn merge(&mut self, other: Document) -> Result<()> {
        for n in other.networks {
            if let Some(prev) = self.network(n.name()) {
                if *prev != n {
                    return Err(err(0, format!("network {} is defined twice differently", n.name())));
                }
                continue;
            }
            self.networks.push(n);
        }
        self.homs.extend(other.homs);
        Ok(())
    }

    /// Resolves every `hom` block against the networks of this document.
    pub fn homs(&self) -> Result<Vec<Homomorphism>> {
        let nets: BTreeMap<&str, Arc<Network>> =
            self.networks.iter().map(|n| (n.name(), Arc::new(n.clone()))).collect();
        self.homs
            .iter()
            .map(|spec| resolve_hom(spec, &|name| nets.get(name).cloned()))
            .collect()
    }
}

struct Line<'a> {
    no: usize,
    words: Vec<&'a str>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some(Line { no: i + 1, words })
    })
}

fn check_ident(no: usize, id: &str) -> Result<()> {
    if id.contains('=') {
        return Err(err(no, format!("malformed identifier {id}")));
    }
    Ok(())
}

fn attrs<'a>(line: &Line<'a>, keys: &[&str], from: usize) -> Result<Vec<&'a str>> {
    let mut found: BTreeMap<&str, &str> = BTreeMap::new();
    for w in &line.words[from..] {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| err(line.no, format!("expected key=value, found {w}")))?;
        if !keys.contains(&k) {
            return Err(err(line.no, format!("unexpected attribute {k}")));
        }
        if v.is_empty() || found.insert(k, v).is_some() {
            return Err(err(line.no, format!("malformed attribute {w}")));
        }
    }
    keys.iter()
        .map(|k| {
            found
                .get(k)
                .copied()
                .ok_or_else(|| err(line.no, format!("missing attribute {k}=")))
        })
        .collect()
}

enum Decl<'a> {
    Node { whole: &'a str, part: &'a str },
    Hook { at: &'a str },
    Edge { from: &'a str, to: &'a str },
    Facet { of: &'a str },
}

/// Parses every block of a file.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut it = lines(text).peekable();
    while let Some(head) = it.next() {
        match head.words[0] {
            "network" => {
                if head.words.len() != 2 {
                    return Err(err(head.no, "expected `network NAME`"));
                }
                let mut body = Vec::new();
                loop {
                    match it.next() {
                        Some(l) if l.words == ["end"] => break,
                        Some(l) => body.push(l),
                        None => return Err(err(head.no, "network block has no `end`")),
                    }
                }
                let net = parse_network_body(head.words[1], &body)?;
                if doc.network(net.name()).is_some() {
                    return Err(err(head.no, format!("network {} is defined twice", net.name())));
                }
                doc.networks.push(net);
            }
            "hom" => {
                let w = &head.words;
                if w.len() != 6 || w[2] != ":" || w[4] != "->" {
                    return Err(err(head.no, "expected `hom NAME : SOURCE -> TARGET`"));
                }
                let mut spec = HomSpec {
                    name: w[1].to_owned(),
                    source: w[3].to_owned(),
                    target: w[5].to_owned(),
                    line: head.no,
                    maps: Vec::new(),
                };
                loop {
                    match it.next() {
                        Some(l) if l.words == ["end"] => break,
                        Some(l) if l.words.len() == 3 && l.words[0] == "map" => {
                            spec.maps.push((l.words[1].to_owned(), l.words[2].to_owned(), l.no))
                        }
                        Some(l) => return Err(err(l.no, "expected `map SOURCE TARGET` or `end`")),
                        None => return Err(err(head.no, "hom block has no `end`")),
                    }
                }
                doc.homs.push(spec);
            }
            other => return Err(err(head.no, format!("expected `network` or `hom`, found {other}"))),
        }
    }
    Ok(doc)
}

fn parse_network_body(name: &str, body: &[Line<'_>]) -> Result<Network> {
    let mut parts = NetworkParts::new(name);
    let mut declared: BTreeMap<&str, (Element, usize)> = BTreeMap::new();
    let mut decls: Vec<(usize, Element, Decl<'_>)> = Vec::new();
    let mut glues: Vec<(usize, &str, &str)> = Vec::new();

    for l in body {
        let w = &l.words;
        if w[0] == "glue" {
            if w.len() != 3 {
                return Err(err(l.no, "expected `glue SUPER SUB`"));
            }
            glues.push((l.no, w[1], w[2]));
            continue;
        }
        let sort = match w[0] {
            "symbol" => Sort::Symbol,
            "node" => Sort::Node,
            "hook" => Sort::Hook,
            "edge" => Sort::Edge,
            "facet" => Sort::Facet,
            other => return Err(err(l.no, format!("unknown declaration {other}"))),
        };
        let id = *w
            .get(1)
            .ok_or_else(|| err(l.no, format!("{} needs an identifier", w[0])))?;
        check_ident(l.no, id)?;
        let elem = Element::new(sort, id);
        if let Some((_, prev)) = declared.get(id) {
            return Err(err(
                l.no,
                format!("duplicate identifier {id} (first declared on line {prev})"),
            ));
        }
        declared.insert(id, (elem.clone(), l.no));
        let decl = match sort {
            Sort::Symbol => {
                if w.len() != 2 {
                    return Err(err(l.no, "symbols take no attributes"));
                }
                parts.add_symbol(id);
                continue;
            }
            Sort::Node => {
                let a = attrs(l, &["whole", "part"], 2)?;
                Decl::Node {
                    whole: a[0],
                    part: a[1],
                }
            }
            Sort::Hook => Decl::Hook {
                at: attrs(l, &["at"], 2)?[0],
            },
            Sort::Edge => {
                let a = attrs(l, &["from", "to"], 2)?;
                Decl::Edge { from: a[0], to: a[1] }
            }
            Sort::Facet => Decl::Facet {
                of: attrs(l, &["of"], 2)?[0],
            },
        };
        decls.push((l.no, elem, decl));
    }

    let resolve = |no: usize, id: &str, allowed: &[Sort], what: &str| -> Result<Element> {
        let (e, _) = declared
            .get(id)
            .ok_or_else(|| err(no, format!("unknown identifier {id}")))?;
        if !allowed.contains(&e.sort()) {
            return Err(err(
                no,
                format!(
                    "{what} must name a {}, but {id} is a {}",
                    allowed_names(allowed),
                    e.sort()
                ),
            ));
        }
        Ok(e.clone())
    };
    for (no, elem, decl) in decls {
        let id = elem.name();
        match decl {
            Decl::Node { whole, part } => {
                let w = resolve(no, whole, &[Sort::Symbol], "whole=")?;
                let p = resolve(no, part, &[Sort::Symbol], "part=")?;
                parts.add_node(id, &w, &p);
            }
            Decl::Hook { at } => {
                let a = resolve(no, at, &[Sort::Node, Sort::Symbol], "at=")?;
                parts.add_hook(id, &a);
            }
            Decl::Edge { from, to } => {
                let f = resolve(no, from, &[Sort::Hook], "from=")?;
                let s = resolve(no, to, &[Sort::Hook], "to=")?;
                parts.add_edge(id, &f, &s);
            }
            Decl::Facet { of } => {
                let c = resolve(no, of, &[Sort::Edge], "of=")?;
                parts.add_facet(id, &c);
            }
        }
    }
    for (no, sup, sub) in glues {
        let x = resolve(no, sup, &Sort::ALL, "glue")?;
        let y = resolve(no, sub, &Sort::ALL, "glue")?;
        parts.add_glue(&x, &y);
    }
    Ok(Network::new(parts))
}

fn allowed_names(sorts: &[Sort]) -> String {
    sorts.iter().map(|s| s.keyword()).collect::<Vec<_>>().join(" or ")
}

/// Parses a file holding exactly one network.
pub fn parse_network(text: &str) -> Result<Network> {
    let doc = parse_document(text)?;
    if doc.networks.len() != 1 || !doc.homs.is_empty() {
        return Err(err(
            0,
            format!("expected exactly one network block, found {}", doc.networks.len()),
        ));
    }
    Ok(doc.networks.into_iter().next().unwrap())
}

/// Parses a file holding one `hom` block. Endpoint names are looked up
/// among networks in the same text first, then through `resolver`.
pub fn parse_hom(text: &str, resolver: &dyn Fn(&str) -> Option<Arc<Network>>) -> Result<Homomorphism> {
    let doc = parse_document(text)?;
    if doc.homs.len() != 1 {
        return Err(err(
            0,
            format!("expected exactly one hom block, found {}", doc.homs.len()),
        ));
    }
    let local: BTreeMap<&str, Arc<Network>> = doc.networks.iter().map(|n| (n.name(), Arc::new(n.clone()))).collect();
    resolve_hom(&doc.homs[0], &|name| {
        local.get(name).cloned().or_else(|| resolver(name))
    })
}

pub fn resolve_hom(spec: &HomSpec, resolver: &dyn Fn(&str) -> Option<Arc<Network>>) -> Result<Homomorphism> {
    let find = |name: &str| resolver(name).ok_or_else(|| err(spec.line, format!("unresolved network {name}")));
    let source = find(&spec.source)?;
    let target = find(&spec.target)?;
    let mut map = BTreeMap::new();
    for (x, y, no) in &spec.maps {
        let xe = source
            .parts()
            .lookup(x)
            .ok_or_else(|| err(*no, format!("unknown identifier {x} in {}", spec.source)))?;
        let ye = target
            .parts()
            .lookup(y)
            .ok_or_else(|| err(*no, format!("unknown identifier {y} in {}", spec.target)))?;
        if map.insert(xe, ye).is_some() {
            return Err(err(*no, format!("{x} is mapped twice")));
        }
    }
    for x in source.universe().iter() {
        if !map.contains_key(x) {
            return Err(err(spec.line, format!("map is not total: no `map` line for {x}")));
        }
    }
    Homomorphism::new(spec.name.clone(), source, target, map)
}

/// Canonical text: declarations sorted by sort then name, gluing pairs
/// sorted by super then sub name.
pub fn serialize_network(net: &Network) -> String {
    let p = net.parts();
    let mut out = format!("network {}\n", p.name);
    let name = |m: &BTreeMap<Element, Element>, x: &Element| m.get(x).map(|y| y.name().to_owned()).unwrap_or_default();
    for s in &p.symbols {
        out.push_str(&format!("  symbol {s}\n"));
    }
    for n in &p.nodes {
        out.push_str(&format!(
            "  node {n} whole={} part={}\n",
            name(&p.whole, n),
            name(&p.part, n)
        ));
    }
    for h in &p.hooks {
        out.push_str(&format!("  hook {h} at={}\n", name(&p.attach, h)));
    }
    for e in &p.edges {
        out.push_str(&format!(
            "  edge {e} from={} to={}\n",
            name(&p.first, e),
            name(&p.second, e)
        ));
    }
    for k in &p.facets {
        out.push_str(&format!("  facet {k} of={}\n", name(&p.carrier, k)));
    }
    let glue: BTreeSet<(&str, &str)> = p.glue.iter().map(|(x, y)| (x.name(), y.name())).collect();
    for (x, y) in glue {
        out.push_str(&format!("  glue {x} {y}\n"));
    }
    out.push_str("end\n");
    out
}

/// Canonical text of a `hom` block, map lines in source universe order.
pub fn serialize_hom(h: &Homomorphism) -> String {
    let mut out = format!("hom {} : {} -> {}\n", h.name(), h.source().name(), h.target().name());
    for (x, y) in h.map() {
        out.push_str(&format!("  map {x} {y}\n"));
    }
    out.push_str("end\n");
    out
}

/// Networks followed by homomorphisms, separated by blank lines. Endpoints
/// shared by several homomorphisms are written once.
pub fn serialize_bundle(nets: &[&Network], homs: &[&Homomorphism]) -> String {
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    for n in nets {
        if seen.insert(n.name().to_owned()) {
            blocks.push(serialize_network(n));
        }
    }
    for h in homs {
        blocks.push(serialize_hom(h));
    }
    blocks.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::validate_network;

    const N_EDGE: &str = "\
# the single-edge fixture
network n_edge
  edge e from=h1 to=h2   # order does not matter
  symbol sigma
  symbol tau
  node n whole=sigma part=tau
  hook h1 at=n
  hook h2 at=sigma
end
";

    #[test]
    fn parses_the_fixture() {
        assert_eq!(parse_network(N_EDGE).unwrap(), fixtures::n_edge());
        assert_eq!(parse_network("network empty\nend\n").unwrap(), fixtures::n_empty());
    }

    #[test]
    fn round_trip_is_canonical() {
        for net in [
            fixtures::n_empty(),
            fixtures::n_sigma(),
            fixtures::n_edge(),
            fixtures::glued_pair(),
        ] {
            let text = serialize_network(&net);
            let back = parse_network(&text).unwrap();
            assert_eq!(back, net);
            assert_eq!(serialize_network(&back), text);
        }
    }

    #[test]
    fn ill_sorted_glue_parses() {
        let text = "network x\n symbol s\n node n whole=s part=s\n hook h at=n\n edge e1 from=h to=h\n facet k1 of=e1\n glue e1 k1\nend\n";
        let net = parse_network(text).unwrap();
        assert!(validate_network(&net).has("N1"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("network x\n symbol s\n symbol s\nend\n", 3, "duplicate"),
            ("network x\n hook h at=n\nend\n", 2, "unknown identifier n"),
            (
                "network x\n symbol s\n hook h at=s\n node n whole=h part=s\nend\n",
                4,
                "must name a symbol",
            ),
            ("network x\n symbol s\n bogus\nend\n", 3, "unknown declaration"),
            (
                "network x\n symbol s\n node n whole=s\nend\n",
                3,
                "missing attribute part",
            ),
            ("network x\n symbol s\n", 1, "no `end`"),
        ];
        for (text, line, needle) in cases {
            match parse_document(text) {
                Err(Error::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{message}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn hom_round_trip_and_totality() {
        let fold = fixtures::fold();
        let text = serialize_bundle(&[fold.source(), fold.target()], &[&fold]);
        let doc = parse_document(&text).unwrap();
        let homs = doc.homs().unwrap();
        assert_eq!(homs, vec![fold.clone()]);

        let missing = text.replacen("  map h1_0 h1\n", "", 1);
        match parse_document(&missing).unwrap().homs() {
            Err(Error::Parse { message, .. }) => assert!(message.contains("h1_0"), "{message}"),
            other => panic!("expected totality error, got {other:?}"),
        }
    }

    #[test]
    fn identity_hom_document() {
        let net = Arc::new(fixtures::n_edge());
        let id = Homomorphism::identity(Arc::clone(&net));
        let text = serialize_hom(&id);
        let back = parse_hom(&text, &|name| (name == "n_edge").then(|| Arc::clone(&net))).unwrap();
        assert_eq!(back, id);
        assert!(parse_hom(&text, &|_| None).is_err());
    }
}
