//! Clause-coded violation reports and the catalog of every code this crate
//! can emit.

use std::fmt;

use serde::Serialize;

use crate::relation::Element;

/// One failed clause, with the elements that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub elements: Vec<Element>,
    pub message: String,
}

impl Violation {
    pub fn new(code: &'static str, elements: Vec<Element>, message: impl Into<String>) -> Self {
        debug_assert!(catalog::describe(code).is_some(), "uncatalogued code {code}");
        Self {
            code,
            elements,
            message: message.into(),
        }
    }

    fn sort_key(&self) -> (&'static str, Vec<&str>) {
        (self.code, self.elements.iter().map(Element::name).collect())
    }
}

/// A deterministic list of violations: sorted by code, then by element
/// names, with exact duplicates removed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ViolationReport {
    violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.normalize();
    }

    pub fn add(&mut self, code: &'static str, elements: Vec<Element>, message: impl Into<String>) {
        self.push(Violation::new(code, elements, message));
    }

    pub fn extend(&mut self, other: ViolationReport) {
        self.violations.extend(other.violations);
        self.normalize();
    }

    fn normalize(&mut self) {
        self.violations
            .sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.message.cmp(&b.message)));
        self.violations.dedup();
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Violation> {
        self.violations.iter()
    }

    /// Distinct codes in report order.
    pub fn codes(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = self.violations.iter().map(|v| v.code).collect();
        out.dedup();
        out
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    pub fn retain(&mut self, keep: impl FnMut(&Violation) -> bool) {
        self.violations.retain(keep);
    }

    /// One line per violation: `CODE<TAB>e1,e2<TAB>message`.
    pub fn to_tabular(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            let elems: Vec<&str> = v.elements.iter().map(Element::name).collect();
            out.push_str(&format!("{}\t{}\t{}\n", v.code, elems.join(","), v.message));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tabular())
    }
}

impl FromIterator<Violation> for ViolationReport {
    fn from_iter<I: IntoIterator<Item = Violation>>(iter: I) -> Self {
        let mut r = Self {
            violations: iter.into_iter().collect(),
        };
        r.normalize();
        r
    }
}

impl<'a> IntoIterator for &'a ViolationReport {
    type Item = &'a Violation;
    type IntoIter = std::slice::Iter<'a, Violation>;
    fn into_iter(self) -> Self::IntoIter {
        self.violations.iter()
    }
}

/// Every code that can appear in a report, with a one-line description.
pub mod catalog {
    pub const CODES: &[(&str, &str)] = &[
        ("N0.name", "an identifier is declared more than once"),
        ("N0.sort", "an element is declared in a set of the wrong sort"),
        (
            "N0.W",
            "W is not a total map from nodes and symbols to symbols fixing every symbol",
        ),
        ("N0.P", "P is not a total map from nodes to symbols"),
        ("N0.A", "A is not a total map from hooks to nodes or symbols"),
        ("N0.F", "F is not a total map from edges to hooks"),
        ("N0.S", "S is not a total map from edges to hooks"),
        ("N0.C", "C is not a total map from facets to edges"),
        ("N0.glue", "a gluing pair names an element outside the network"),
        ("N1", "gluing pair joins elements of different sorts"),
        ("N2.W", "W̄∘G ≠ G∘W̄"),
        ("N2.P", "P̄∘G ⊄ P̄"),
        ("N2.A", "Ā∘G ⊄ G∘Ā"),
        ("N2.F", "F̄∘G ⊄ G∘F̄"),
        ("N2.S", "S̄∘G ⊄ G∘S̄"),
        ("N2.C", "C̄∘G ⊄ G∘C̄"),
        ("N3.H", "G_H or its inverse is not minimal relative to A"),
        ("N3.K", "G_K or its inverse is not minimal relative to C"),
        ("N3.E-F", "G_E or its inverse is not minimal relative to F"),
        ("N3.E-S", "G_E or its inverse is not minimal relative to S"),
        ("N4", "G∘G ≠ ⊥"),
        ("H0", "an endpoint network is invalid or has changed"),
        ("H1", "the map does not preserve sorts"),
        ("H2.W", "W0∘p ≠ p∘W1"),
        ("H2.P", "P0∘p ≠ p∘P1"),
        ("H2.F", "F0∘p ≠ p∘F1"),
        ("H2.S", "S0∘p ≠ p∘S1"),
        (
            "H3.A",
            "hooks of a node or symbol do not map bijectively onto the hooks of its image",
        ),
        (
            "H3.C",
            "facets of an edge do not map bijectively onto the facets of its image",
        ),
        ("H4.fwd", "p̄∘G1 ⊄ G0∘p̄"),
        ("H4.bwd", "G0∘p̄ ⊄ p̄∘G1"),
        ("H5", "G1 is not minimal relative to p"),
        ("SD-1a", "W∘A∘F ≠ W∘A∘S"),
        ("SD-3", "G_N is not acyclic"),
        ("SD-4a", "a hook has no incident edge"),
        ("SD-5a", "G_K∘G_K⁻¹ ⊄ id_K"),
        ("SD-6", "G is not minimal relative to the network"),
        ("SD-7a", "F̄∘G ≠ G∘F̄ or S̄∘G ≠ G∘S̄"),
        ("SD-8a", "a symbol gluing is not supported by node and hook gluings"),
        ("D-1b", "W is not a coequaliser of A∘F and A∘S"),
        ("D-2b", "G_N is not connected relative to P"),
        ("D-3", "G_N is not acyclic"),
        ("D-4b", "F and S do not form a sum diagram onto H"),
        ("D-5b", "id_K ≠ G_K∘G_K⁻¹ ∪ G_K⁻¹∘G_K"),
        ("D-6", "G is not minimal relative to the network"),
        ("T23-a", "a symbol set X has |P⁻¹X| − |G_N∘id_{P⁻¹X}| > |X|"),
        ("T23-b", "the source is not a sum diagram E → H ← E"),
        ("T23-c", "G_K⁻¹ is not the graph of a function on K∖dom(G)"),
        ("T23-d", "the source is not a coequaliser diagram"),
        ("T23-target", "the target is not semi-definite"),
        ("S1", "a sub-element set is not contained in the parent's"),
        ("S2", "W(N') or P(N') leaves Σ'"),
        ("S3", "H' ≠ A⁻¹(N'∪Σ')"),
        ("S4", "F(E') or S(E') leaves H'"),
        ("S5", "K' ≠ C⁻¹(E')"),
        (
            "S6",
            "an incidence map of the subnetwork is not the parent's restriction",
        ),
        ("S7", "G∘I ⊄ I∘G"),
        ("S8", "G' ≠ I∘G∘I"),
        ("O-6", "fast and brute-force minimality disagree"),
        ("O-8a", "fast and brute-force clause (8a) checks disagree"),
        ("O-H5", "fast and brute-force homomorphism minimality disagree"),
    ];

    pub fn describe(code: &str) -> Option<&'static str> {
        CODES.iter().find(|(c, _)| *c == code).map(|(_, d)| *d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_sorted_and_deduplicated() {
        let mut r = ViolationReport::new();
        r.add("N4", vec![Element::hook("b")], "x");
        r.add("N2.A", vec![Element::hook("z")], "x");
        r.add("N2.A", vec![Element::hook("a")], "x");
        r.add("N4", vec![Element::hook("b")], "x");
        let codes: Vec<_> = r.iter().map(|v| (v.code, v.elements[0].name().to_owned())).collect();
        assert_eq!(
            codes,
            vec![("N2.A", "a".into()), ("N2.A", "z".into()), ("N4", "b".into())]
        );
        assert_eq!(r.codes(), vec!["N2.A", "N4"]);
    }

    #[test]
    fn tabular_rendering() {
        let mut r = ViolationReport::new();
        r.add("N1", vec![Element::hook("h"), Element::facet("k")], "mixed sorts");
        assert_eq!(r.to_tabular(), "N1\th,k\tmixed sorts\n");
        assert!(r.to_json().contains("\"code\": \"N1\""));
    }

    #[test]
    fn catalog_codes_are_unique() {
        let mut seen = std::collections::BTreeSet::new();
        for (c, _) in catalog::CODES {
            assert!(seen.insert(*c), "duplicate code {c}");
        }
    }
}
