use hlcut::builder::{fig1_trace, FIG1_EDGES};
use hlcut::{
    fig1_graph, hypercube, oplus, random_hl, validate_trace, ConstructionTrace, Graph, HlGraph, Matching,
    VertexSet,
};
use proptest::prelude::*;

fn assert_hl_shape(hl: &HlGraph, n: usize) {
    let g = hl.graph();
    assert_eq!(g.order(), 1 << n);
    assert_eq!(g.size(), n << n >> 1);
    assert_eq!(g.regular_degree(), Some(n));
    assert!(g.is_connected(&Default::default()).unwrap());
}

#[test]
fn random_members_have_hl_shape() {
    for n in 0..=8 {
        for seed in 0..50 {
            let hl = random_hl(n, seed).unwrap();
            assert_hl_shape(&hl, n);
            assert_eq!(hl.dimension(), n);
        }
    }
}

#[test]
fn hypercube_is_the_binary_code_graph() {
    for n in 0..=8 {
        let order = 1usize << n;
        let mut edges = Vec::new();
        for u in 0..order {
            for v in u + 1..order {
                if (u ^ v).count_ones() == 1 {
                    edges.push((u, v));
                }
            }
        }
        let expected = Graph::from_edges(order, edges).unwrap();
        assert_eq!(hypercube(n).unwrap().graph(), &expected, "n = {n}");
    }
}

#[test]
fn edge_levels_partition_into_matchings() {
    for n in 1..=7 {
        for hl in [hypercube(n).unwrap(), random_hl(n, 99 + n as u64).unwrap()] {
            let mut per_level = vec![VertexSet::new(); n + 1];
            let mut counts = vec![0usize; n + 1];
            for e in hl.graph().edges() {
                let level = hl.edge_level(e).unwrap();
                assert!((1..=n).contains(&level));
                counts[level] += 1;
                // each level is a matching: no vertex twice
                assert!(!per_level[level].contains(e.u()) && !per_level[level].contains(e.v()));
                per_level[level].insert(e.u());
                per_level[level].insert(e.v());
            }
            for (level, &count) in counts.iter().enumerate().skip(1) {
                assert_eq!(count, 1 << (n - 1), "{} level {level}", hl.descriptor());
            }
        }
    }
}

#[test]
fn blocks_are_realizations_of_subtraces() {
    for seed in 0..20 {
        let hl = random_hl(6, seed).unwrap();
        for h in 0..=6 {
            let block = hl.block_vertices(h).unwrap();
            assert_eq!(block.len(), 1 << h);
            let induced = hl.graph().induced_subgraph(&block).unwrap();
            let realized = validate_trace(hl.block_trace(h).unwrap()).unwrap();
            assert_eq!(induced, realized, "seed {seed} h {h}");
        }
    }
    let fig = fig1_graph();
    for h in 0..=4 {
        let induced = fig
            .graph()
            .induced_subgraph(&fig.block_vertices(h).unwrap())
            .unwrap();
        assert_eq!(induced.regular_degree(), Some(h));
        assert_eq!(induced.order(), 1 << h);
    }
}

#[test]
fn random_generation_is_reproducible() {
    for seed in [0, 1, 7, u64::MAX] {
        let a = random_hl(6, seed).unwrap();
        let b = random_hl(6, seed).unwrap();
        assert_eq!(a.graph(), b.graph());
        assert_eq!(a.trace(), b.trace());
    }
    let distinct: std::collections::BTreeSet<String> = (0..20)
        .map(|s| random_hl(4, s).unwrap().graph().to_text())
        .collect();
    assert!(distinct.len() > 10);
}

#[test]
fn oplus_joins_by_the_matching() {
    let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
    let swapped = oplus(&k2, &k2, &Matching::new(vec![1, 0]).unwrap()).unwrap();
    let expected = Graph::from_edges(4, [(0, 1), (2, 3), (0, 3), (1, 2)]).unwrap();
    assert_eq!(swapped, expected);
    assert!(Matching::new(vec![0, 0]).is_err());
    let k1 = Graph::from_edges(1, Vec::<(usize, usize)>::new()).unwrap();
    assert!(oplus(&k2, &k1, &Matching::identity(2)).is_err());
}

#[test]
fn fig1_fixture_is_exact() {
    let fig = fig1_graph();
    let fixture = Graph::from_edges(16, FIG1_EDGES).unwrap();
    assert_eq!(fig.graph(), &fixture);
    assert_hl_shape(&fig, 4);
    assert_eq!(fig.trace(), &fig1_trace());
}

#[test]
fn invalid_traces_are_rejected() {
    use ConstructionTrace::Leaf;
    let unbalanced = ConstructionTrace::node(ConstructionTrace::node(Leaf, Leaf, vec![0]), Leaf, vec![0]);
    assert!(validate_trace(&unbalanced).is_err());
    let short = ConstructionTrace::node(
        ConstructionTrace::node(Leaf, Leaf, vec![0]),
        ConstructionTrace::node(Leaf, Leaf, vec![0]),
        vec![0],
    );
    assert!(validate_trace(&short).is_err());
    for text in [
        "{}",
        "{\"leaf\":false}",
        "{\"leaf\":true,\"x\":1}",
        "{\"left\":{\"leaf\":true},\"right\":{\"leaf\":true}}",
        "{\"left\":{\"leaf\":true},\"right\":{\"leaf\":true},\"sigma\":[1]}",
        "[]",
    ] {
        let parsed = ConstructionTrace::from_json(text);
        assert!(
            parsed.is_err() || validate_trace(&parsed.unwrap()).is_err(),
            "{text}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_json_round_trips(n in 0usize..=7, seed in any::<u64>()) {
        let hl = random_hl(n, seed).unwrap();
        let text = hl.trace().to_json();
        prop_assert!(text.ends_with('\n'));
        let back = ConstructionTrace::from_json(&text).unwrap();
        prop_assert_eq!(&back, hl.trace());
        prop_assert_eq!(&validate_trace(&back).unwrap(), hl.graph());
    }

    #[test]
    fn oplus_adds_a_perfect_matching(n in 0usize..=5, s0 in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let g0 = random_hl(n, s0).unwrap();
        let g1 = random_hl(n, s1).unwrap();
        let half = 1usize << n;
        let mut sigma: Vec<usize> = (0..half).collect();
        // deterministic permutation from s2
        let mut state = s2;
        for i in (1..half).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            sigma.swap(i, (state >> 33) as usize % (i + 1));
        }
        let joined = oplus(g0.graph(), g1.graph(), &Matching::new(sigma.clone()).unwrap()).unwrap();
        prop_assert_eq!(joined.size(), g0.graph().size() + g1.graph().size() + half);
        prop_assert_eq!(joined.regular_degree(), Some(n + 1));
        for (i, &j) in sigma.iter().enumerate() {
            prop_assert!(joined.has_edge(i, half + j));
        }
        let left = VertexSet::range(0, half);
        prop_assert_eq!(&joined.induced_subgraph(&left).unwrap(), g0.graph());
        prop_assert_eq!(&joined.induced_subgraph(&left.complement(2 * half)).unwrap(), g1.graph());
    }
}
