mod common;

use hlcut::lemma::{enumerate_min_degree_subsets, half_split};
use hlcut::solver::theorem_value;
use hlcut::{
    hypercube, is_h_edge_cut, is_h_vertex_cut, kappa_sh_exact, lambda_sh_exact, random_hl, Graph,
    LambdaOutcome, Method, SolverOptions, VertexSet,
};
use proptest::prelude::*;

/// Connected graphs: a random spanning tree plus random extra edges.
fn arb_connected(min_order: usize, max_order: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    (min_order..=max_order).prop_flat_map(move |n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        let extra = proptest::collection::vec((0..n, 0..n), 0..=max_extra);
        (parents, extra).prop_map(move |(parents, extra)| {
            let mut edges: Vec<(usize, usize)> =
                parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let e = (a.min(b), a.max(b));
                if a != b && !edges.contains(&e) && !edges.contains(&(e.1, e.0)) {
                    edges.push(e);
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn solve(g: &Graph, h: usize, method: Method, threads: usize) -> LambdaOutcome {
    let opts = SolverOptions {
        threads,
        ..SolverOptions::with_method(method)
    };
    lambda_sh_exact(g, h, &opts).unwrap()
}

fn check_witness(g: &Graph, out: &LambdaOutcome) {
    let Some(r) = out.report() else { return };
    assert!(!r.witness_side.contains(0));
    assert!(!r.witness_side.is_empty());
    assert_eq!(g.edge_boundary(&r.witness_side), r.witness_cut);
    assert_eq!(r.witness_cut.len(), r.value);
    assert!(is_h_edge_cut(g, &r.witness_cut, r.h).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn agrees_with_edge_subset_definition(g in arb_connected(3, 7, 9)) {
        prop_assume!(g.size() <= 13);
        for h in 0..=3 {
            let out = solve(&g, h, Method::Exhaustive, 1);
            check_witness(&g, &out);
            prop_assert_eq!(out.value(), common::lambda_by_edge_subsets(&g, h), "h = {}", h);
        }
    }

    #[test]
    fn level_zero_is_edge_connectivity(g in arb_connected(2, 14, 20)) {
        let out = solve(&g, 0, Method::BranchAndBound, 1);
        prop_assert_eq!(out.value(), Some(common::edge_connectivity(&g)));
    }

    #[test]
    fn methods_and_threads_agree(g in arb_connected(2, 14, 25), h in 0usize..4) {
        let ex1 = solve(&g, h, Method::Exhaustive, 1);
        let ex4 = solve(&g, h, Method::Exhaustive, 4);
        let bnb = solve(&g, h, Method::BranchAndBound, 1);
        check_witness(&g, &ex1);
        check_witness(&g, &bnb);
        prop_assert_eq!(
            serde_json::to_string(&ex1.without_timing()).unwrap(),
            serde_json::to_string(&ex4.without_timing()).unwrap()
        );
        prop_assert_eq!(ex1.result_json(), bnb.result_json());
    }

    #[test]
    fn monotone_in_h(g in arb_connected(2, 12, 20)) {
        let values: Vec<Option<usize>> =
            (0..5).map(|h| solve(&g, h, Method::BranchAndBound, 1).value()).collect();
        for w in values.windows(2) {
            match (w[0], w[1]) {
                (Some(a), Some(b)) => prop_assert!(a <= b),
                (None, b) => prop_assert_eq!(b, None),
                (Some(_), None) => {}
            }
        }
    }

    #[test]
    fn qualifying_bipartitions_give_lambda(seed in 0u64..1000, h in 0usize..3) {
        let hl = random_hl(3, seed).unwrap();
        let g = hl.graph();
        let best = enumerate_min_degree_subsets(g, h, 32)
            .unwrap()
            .filter(|x| {
                let y = x.complement(g.order());
                !y.is_empty() && g.induced_min_degree(&y).unwrap() >= h
            })
            .map(|x| g.edge_boundary(&x).len())
            .min();
        prop_assert_eq!(best, solve(g, h, Method::Exhaustive, 1).value());
    }

    #[test]
    fn half_split_identity(seed in any::<u64>(), bits in any::<u16>(), right in any::<bool>()) {
        let hl = random_hl(5, seed).unwrap();
        let half = &hl.placement()[if right { 16..32 } else { 0..16 }];
        let x: VertexSet = (0..16).filter(|i| bits & (1 << i) != 0).map(|i| half[i]).collect();
        prop_assume!(!x.is_empty());
        let split = half_split(&hl, &x).unwrap();
        prop_assert_eq!(split.total, hl.graph().edge_boundary(&x).len());
        prop_assert_eq!(split.total, split.within_half + split.matching);
        // every vertex has exactly one partner across the top-level matching
        prop_assert_eq!(split.matching, x.len());
    }

    #[test]
    fn kappa_zero_is_vertex_connectivity(g in arb_connected(3, 10, 15)) {
        let complete = g.size() == g.order() * (g.order() - 1) / 2;
        let r = kappa_sh_exact(&g, 0, 32).unwrap();
        if complete {
            prop_assert_eq!(r.value(), None);
        } else {
            prop_assert_eq!(r.value(), Some(common::vertex_connectivity(&g)));
        }
    }

    #[test]
    fn kappa_witness_is_minimal(g in arb_connected(3, 9, 14), h in 0usize..3) {
        let r = kappa_sh_exact(&g, h, 32).unwrap();
        let n = g.order();
        let limit = r.value().unwrap_or(n - 1);
        // independent re-scan of all smaller subsets through the set-based predicate
        for mask in 0u32..1 << n {
            let s = VertexSet::from_mask(mask as u64);
            if s.len() < limit {
                prop_assert!(!is_h_vertex_cut(&g, &s, h).unwrap());
            }
        }
        if let hlcut::KappaOutcome::Exists { value, witness } = &r.outcome {
            prop_assert_eq!(witness.len(), *value);
            prop_assert!(is_h_vertex_cut(&g, witness, h).unwrap());
        }
    }

    #[test]
    fn kappa_nonexistence_is_monotone(g in arb_connected(3, 10, 15)) {
        let values: Vec<Option<usize>> =
            (0..4).map(|h| kappa_sh_exact(&g, h, 32).unwrap().value()).collect();
        for w in values.windows(2) {
            match (w[0], w[1]) {
                (Some(a), Some(b)) => prop_assert!(a <= b),
                (None, b) => prop_assert_eq!(b, None),
                (Some(_), None) => {}
            }
        }
    }
}

#[test]
fn small_hypercubes_match_edge_subset_definition() {
    for n in 1..=3 {
        let q = hypercube(n).unwrap();
        for h in 0..n {
            let out = solve(q.graph(), h, Method::Exhaustive, 1);
            check_witness(q.graph(), &out);
            assert_eq!(out.value(), common::lambda_by_edge_subsets(q.graph(), h));
            assert_eq!(out.value(), Some(theorem_value(n, h)));
        }
    }
}

#[test]
fn random_dimension_five_members_follow_the_formula() {
    for seed in 1..=3 {
        let hl = random_hl(5, seed).unwrap();
        for h in 0..5 {
            let out = solve(hl.graph(), h, Method::BranchAndBound, 1);
            check_witness(hl.graph(), &out);
            assert_eq!(out.value(), Some(theorem_value(5, h)), "seed {seed} h {h}");
        }
    }
}

#[test]
fn kappa_zero_on_hypercubes_is_the_dimension() {
    for n in 2..=4 {
        let q = hypercube(n).unwrap();
        assert_eq!(common::vertex_connectivity(q.graph()), n);
        assert_eq!(kappa_sh_exact(q.graph(), 0, 32).unwrap().value(), Some(n));
    }
}

#[test]
fn disconnected_input_is_an_error() {
    let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert!(lambda_sh_exact(&g, 0, &SolverOptions::default()).is_err());
}
