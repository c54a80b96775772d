//! Reference computations that share no code path with the library solvers.

#![allow(dead_code)]

use std::collections::VecDeque;

use hlcut::{Edge, Graph};
use petgraph::graph::UnGraph;

/// Connectivity through petgraph.
pub fn petgraph_connected(g: &Graph, removed: &[Edge]) -> bool {
    let edges: Vec<(u32, u32)> = g
        .edges()
        .filter(|e| !removed.contains(e))
        .map(|e| (e.u() as u32, e.v() as u32))
        .collect();
    let mut pg = UnGraph::<(), ()>::from_edges(&edges);
    while pg.node_count() < g.order() {
        pg.add_node(());
    }
    petgraph::algo::connected_components(&pg) <= 1
}

/// Edmonds–Karp on a dense capacity matrix.
fn max_flow(cap: &mut [Vec<i32>], s: usize, t: usize) -> i32 {
    let n = cap.len();
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i32::MAX;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(cap[parent[v]][v]);
            v = parent[v];
        }
        let mut v = t;
        while v != s {
            cap[parent[v]][v] -= bottleneck;
            cap[v][parent[v]] += bottleneck;
            v = parent[v];
        }
        flow += bottleneck;
    }
}

/// Classical edge connectivity: min over t of the 0-t max flow.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.order();
    (1..n)
        .map(|t| {
            let mut cap = vec![vec![0; n]; n];
            for e in g.edges() {
                cap[e.u()][e.v()] = 1;
                cap[e.v()][e.u()] = 1;
            }
            max_flow(&mut cap, 0, t) as usize
        })
        .min()
        .unwrap_or(0)
}

/// Classical vertex connectivity of a non-complete graph, by Menger over
/// all non-adjacent pairs with split vertices.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    let big = n as i32 + 1;
    let mut best = usize::MAX;
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            // v_in = v, v_out = n + v
            let mut cap = vec![vec![0; 2 * n]; 2 * n];
            for v in 0..n {
                cap[v][n + v] = if v == s || v == t { big } else { 1 };
            }
            for e in g.edges() {
                cap[n + e.u()][e.v()] = big;
                cap[n + e.v()][e.u()] = big;
            }
            best = best.min(max_flow(&mut cap, n + s, t) as usize);
        }
    }
    best
}

/// The definition verbatim: minimum |F| over all edge subsets with G - F
/// disconnected and min degree of G - F at least h. `None` if no such F.
pub fn lambda_by_edge_subsets(g: &Graph, h: usize) -> Option<usize> {
    let edges: Vec<Edge> = g.edges().collect();
    assert!(edges.len() <= 20, "edge-subset oracle is for tiny graphs");
    let mut best = None;
    for bits in 0u32..1 << edges.len() {
        let size = bits.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let removed: Vec<Edge> = (0..edges.len())
            .filter(|i| bits & (1 << i) != 0)
            .map(|i| edges[i])
            .collect();
        let mut deg: Vec<usize> = (0..g.order()).map(|v| g.neighbors(v).len()).collect();
        for e in &removed {
            deg[e.u()] -= 1;
            deg[e.v()] -= 1;
        }
        if deg.iter().all(|&d| d >= h) && !petgraph_connected(g, &removed) {
            best = Some(size);
        }
    }
    best
}
