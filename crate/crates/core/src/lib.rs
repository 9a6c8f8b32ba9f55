//! Networks, homomorphisms and definiteness checks for graph-grammar pattern
//! recognition.
//!
//! A grammar and a pattern are both [`Network`]s: five sorts of elements
//! (symbols, nodes, hooks, edges, facets), six incidence functions and a
//! gluing relation. A parse is a [`Homomorphism`] from the pattern into the
//! grammar. Every check is a relation equation or inclusion evaluated with
//! the operators in [`relation`].

pub mod definiteness;
pub mod fixtures;
pub mod format;
pub mod hom;
pub mod laws;
pub mod network;
pub mod relation;
pub mod report;
pub mod subnet;
pub mod union_find;

pub use definiteness::{
    check_coequaliser, check_definite, check_semidefinite, check_sum_diagram, check_thm23_certificate,
    is_minimal_rel_network_fast, minimal_rel_network_oracle, CheckOptions, DefinitenessReport, MinimalityMethod,
    MinimalityOutcome,
};
pub use format::{parse_document, parse_hom, parse_network, serialize_hom, serialize_network, Document};
pub use hom::{
    compose_homs, invert_hom, is_automorphism, is_isomorphism, restrict_hom, validate_homomorphism, Homomorphism,
};
pub use network::{gluing_parts, induce_gluing, validate_network, GluingParts, Network, NetworkParts};
pub use relation::{Element, FnGraph, RelError, Relation, Sort, Universe};
pub use report::{Violation, ViolationReport};
pub use subnet::{extract_subnetwork, inclusion_hom, validate_subnetwork};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error("network {name} is not a valid network:\n{report}")]
    InvalidNetwork { name: String, report: ViolationReport },
    #[error("homomorphism {name} is not valid:\n{report}")]
    InvalidHomomorphism { name: String, report: ViolationReport },
    #[error("{what} infeasible: {size} exceeds the enumeration cap of {cap}")]
    Infeasible {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("not a subnetwork:\n{0}")]
    NotSubnetwork(ViolationReport),
    #[error("map is not total: no image for {0}")]
    NotTotal(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("facet seed pair ({0}, {1}) is not a pair of facets")]
    BadSeed(String, String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("generator gave up after {0} attempts")]
    GeneratorExhausted(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
