//! Relation algebra laws against a plain pair-set model.

use std::collections::BTreeSet;
use std::sync::Arc;

use netgram::relation::{
    chain, components, compose, inverse, is_forest, is_minimal_rel_function, is_sub, join, meet,
    minimal_rel_function_oracle, FnGraph, Relation, Universe,
};
use proptest::prelude::*;

type Pairs = BTreeSet<(u8, u8)>;

fn universe(n: u8) -> Arc<Universe<u8>> {
    Universe::new(0..n)
}

fn rel(u: &Arc<Universe<u8>>, p: &Pairs) -> Relation<u8> {
    Relation::from_pairs(u, p.iter().copied()).unwrap()
}

fn pairs(r: &Relation<u8>) -> Pairs {
    r.iter().map(|(x, y)| (*x, *y)).collect()
}

/// `(x, z)` with `inner(x, y)` and `outer(y, z)`.
fn model_compose(outer: &Pairs, inner: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(x, y) in inner {
        for &(y2, z) in outer {
            if y == y2 {
                out.insert((x, z));
            }
        }
    }
    out
}

fn arb_pairs(n: u8) -> impl Strategy<Value = Pairs> {
    prop::collection::btree_set((0..n, 0..n), 0..=(n as usize * n as usize).min(12))
}

fn arb_three() -> impl Strategy<Value = (u8, Pairs, Pairs, Pairs)> {
    (1u8..=5).prop_flat_map(|n| (Just(n), arb_pairs(n), arb_pairs(n), arb_pairs(n)))
}

fn arb_fn(n: u8) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..n, n as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition_matches_the_model((n, a, b, _) in arb_three()) {
        let u = universe(n);
        prop_assert_eq!(pairs(&compose(&rel(&u, &a), &rel(&u, &b)).unwrap()), model_compose(&a, &b));
    }

    #[test]
    fn composition_is_associative((n, a, b, c) in arb_three()) {
        let u = universe(n);
        let (ra, rb, rc) = (rel(&u, &a), rel(&u, &b), rel(&u, &c));
        let left = compose(&compose(&ra, &rb).unwrap(), &rc).unwrap();
        let right = compose(&ra, &compose(&rb, &rc).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &chain(&[&ra, &rb, &rc]).unwrap());
    }

    #[test]
    fn identity_is_neutral((n, a, _, _) in arb_three()) {
        let u = universe(n);
        let (ra, id) = (rel(&u, &a), Relation::identity(&u));
        prop_assert_eq!(&compose(&id, &ra).unwrap(), &ra);
        prop_assert_eq!(&compose(&ra, &id).unwrap(), &ra);
    }

    #[test]
    fn inverse_reverses_composites((n, a, b, _) in arb_three()) {
        let u = universe(n);
        let (ra, rb) = (rel(&u, &a), rel(&u, &b));
        let lhs = inverse(&compose(&ra, &rb).unwrap());
        let rhs = compose(&inverse(&rb), &inverse(&ra)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(&inverse(&inverse(&ra)), &ra);
    }

    #[test]
    fn composition_distributes_over_join((n, a, b, c) in arb_three()) {
        let u = universe(n);
        let (ra, rb, rc) = (rel(&u, &a), rel(&u, &b), rel(&u, &c));
        let lhs = compose(&ra, &join(&rb, &rc).unwrap()).unwrap();
        let rhs = join(&compose(&ra, &rb).unwrap(), &compose(&ra, &rc).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let m = meet(&rb, &rc).unwrap();
        prop_assert!(is_sub(&m, &rb).unwrap() && is_sub(&m, &rc).unwrap());
        prop_assert!(is_sub(&compose(&ra, &m).unwrap(), &compose(&ra, &rb).unwrap()).unwrap());
    }

    #[test]
    fn forest_iff_edge_count_matches_components((n, a, _, _) in arb_three()) {
        let u = universe(n);
        let r = rel(&u, &a);
        // Each pair is one undirected edge; a forest on n vertices with c
        // components has exactly n - c edges.
        let c = components(&r, u.iter()).len();
        prop_assert_eq!(is_forest(&r), a.len() + c == n as usize);
        let blocks: usize = components(&r, u.iter()).iter().map(|b| b.len()).sum();
        prop_assert_eq!(blocks, n as usize);
    }

    #[test]
    fn minimality_fast_matches_oracle(
        (n, a, f) in (1u8..=5).prop_flat_map(|n| (Just(n), arb_pairs(n), arb_fn(n)))
    ) {
        let u = universe(n);
        let r = rel(&u, &a);
        let f = FnGraph::from_map(&u, f.iter().enumerate().map(|(x, y)| (x as u8, *y))).unwrap();
        prop_assert_eq!(
            is_minimal_rel_function(&r, &f).unwrap(),
            minimal_rel_function_oracle(&r, &f, 20).unwrap()
        );
    }
}
