//! Simple undirected graphs with bitset adjacency, plus the vertex/edge set
//! types used throughout the crate.
//!
//! Graphs are immutable once built. "G minus F" is always expressed as a
//! `(graph, removed edges)` pair and never by mutating the graph.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest graph order the crate constructs or parses (2^10).
pub const MAX_ORDER: usize = 1 << 10;

// ============================================================================
// VertexSet
// ============================================================================

/// A set of vertices with bitmask semantics.
///
/// Trailing zero words are never stored, so structural equality is set
/// equality. Sets order by the numeric value of their bitmask.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self { words: vec![mask] };
        s.trim();
        s
    }

    /// `{0, 1, ..., order - 1}`.
    pub fn full(order: usize) -> Self {
        Self::range(0, order)
    }

    /// `{start, ..., end - 1}`.
    pub fn range(start: usize, end: usize) -> Self {
        let mut s = Self::new();
        for v in start..end {
            s.insert(v);
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        let (w, b) = (v / 64, v % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, v: usize) {
        let (w, b) = (v / 64, v % 64);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words.get(v / 64).is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest member, if any.
    pub fn last(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// The bitmask, when every member is below 64.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// `{0..order} \ self`.
    pub fn complement(&self, order: usize) -> Self {
        let full = Self::full(order);
        full.difference(self)
    }

    pub fn union(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let mut words: Vec<u64> = (0..n).map(|i| self.word(i) | other.word(i)).collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.words.len().min(other.words.len());
        let mut s = Self {
            words: (0..n).map(|i| self.words[i] & other.words[i]).collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = Self {
            words: (0..self.words.len())
                .map(|i| self.words[i] & !other.word(i))
                .collect(),
        };
        s.trim();
        s
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.word(i) == 0)
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(D::Error::custom("vertex list must be strictly ascending"));
        }
        if let Some(&v) = members.last() {
            if v >= MAX_ORDER {
                return Err(D::Error::custom(format!("vertex {v} exceeds {MAX_ORDER}")));
            }
        }
        Ok(members.into_iter().collect())
    }
}

// ============================================================================
// Edge / EdgeSet
// ============================================================================

/// An unordered vertex pair, stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b, "edges join distinct vertices");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> usize {
        self.0
    }

    pub fn v(&self) -> usize {
        self.1
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [u, v] = <[usize; 2]>::deserialize(deserializer)?;
        if u >= v {
            return Err(D::Error::custom(format!(
                "edge [{u}, {v}] is not canonical (u < v)"
            )));
        }
        Ok(Edge(u, v))
    }
}

/// A set of edges, iterated in ascending lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter().map(|e| (e.0, e.1))).finish()
    }
}

// ============================================================================
// Graph
// ============================================================================

/// Immutable simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    size: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges<I, E>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<(usize, usize)>,
    {
        let mut adj = vec![VertexSet::new(); order];
        let mut size = 0;
        for e in edges {
            let (u, v) = e.into();
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !adj[u].contains(v) {
                adj[u].insert(v);
                adj[v].insert(u);
                size += 1;
            }
        }
        Ok(Self { adj, size })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.size
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    fn check_set(&self, x: &VertexSet) -> Result<()> {
        match x.last() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| Edge(u, v)))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(VertexSet::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, VertexSet::len);
        self.adj.iter().all(|nb| nb.len() == d).then_some(d)
    }

    /// Minimum degree of the induced subgraph `G[X]`.
    pub fn induced_min_degree(&self, x: &VertexSet) -> Result<usize> {
        if x.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        self.check_set(x)?;
        Ok(x.iter()
            .map(|v| self.adj[v].intersection_len(x))
            .min()
            .expect("nonempty"))
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn edge_boundary(&self, x: &VertexSet) -> EdgeSet {
        x.iter()
            .filter(|&v| v < self.order())
            .flat_map(|v| {
                self.adj[v]
                    .iter()
                    .filter(|&w| !x.contains(w))
                    .map(move |w| Edge::new(v, w))
            })
            .collect()
    }

    /// Whether `G - removed` is connected. Graphs on 0 or 1 vertices are.
    pub fn is_connected(&self, removed: &EdgeSet) -> Result<bool> {
        for e in removed {
            if !self.has_edge(e.0, e.1) {
                return Err(Error::NotAnEdge(*e));
            }
        }
        let n = self.order();
        if n <= 1 {
            return Ok(true);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for w in self.adj[u].iter() {
                if !seen[w] && !removed.contains(&Edge::new(u, w)) {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(reached == n)
    }

    /// `G[X]` with vertices relabeled by rank within `X`.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph> {
        self.check_set(x)?;
        let members: Vec<usize> = x.iter().collect();
        let mut rank = vec![usize::MAX; self.order()];
        for (i, &v) in members.iter().enumerate() {
            rank[v] = i;
        }
        let edges = self
            .edges()
            .filter(|e| x.contains(e.0) && x.contains(e.1))
            .map(|e| (rank[e.0], rank[e.1]));
        Graph::from_edges(members.len(), edges)
    }

    /// The graph with vertex `i` renamed to `placement[i]`.
    pub fn relabel(&self, placement: &[usize]) -> Result<Graph> {
        debug_assert_eq!(placement.len(), self.order());
        Graph::from_edges(
            self.order(),
            self.edges().map(|e| (placement[e.0], placement[e.1])),
        )
    }

    /// Per-vertex adjacency bitmasks, available when the order is at most 64.
    pub fn masks(&self) -> Option<Vec<u64>> {
        self.adj.iter().map(VertexSet::mask).collect()
    }

    // ------------------------------------------------------------------------
    // Text format
    // ------------------------------------------------------------------------

    /// `<order> <edge-count>` then one `u v` line per edge, `u < v`, ascending.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.size());
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }

    /// Parses the text format. Edge lines must be canonical and strictly
    /// ascending; a missing final newline is tolerated.
    pub fn from_text(text: &str) -> Result<Graph> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().expect("split yields at least one item");
        let [order, count] = parse_pair(1, header)?;
        if order > MAX_ORDER {
            return Err(Error::OrderCap {
                order,
                max: MAX_ORDER,
            });
        }
        if count > order * order.saturating_sub(1) / 2 {
            return Err(parse_err(
                1,
                format!("{count} edges cannot fit in a simple graph of order {order}"),
            ));
        }
        let mut edges = Vec::with_capacity(count);
        let mut prev: Option<(usize, usize)> = None;
        for _ in 0..count {
            let Some((line, l)) = lines.next() else {
                return Err(parse_err(
                    edges.len() + 2,
                    format!("expected {count} edges, found {}", edges.len()),
                ));
            };
            let [u, v] = parse_pair(line, l)?;
            if u >= v {
                return Err(parse_err(line, format!("edge {u} {v} must satisfy u < v")));
            }
            if v >= order {
                return Err(parse_err(
                    line,
                    format!("vertex {v} out of range for order {order}"),
                ));
            }
            if prev.is_some_and(|p| p >= (u, v)) {
                return Err(parse_err(line, "edges must be strictly ascending".into()));
            }
            prev = Some((u, v));
            edges.push((u, v));
        }
        if let Some((line, _)) = lines.next() {
            return Err(parse_err(line, "trailing content after the edge list".into()));
        }
        Graph::from_edges(order, edges)
    }
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

fn parse_pair(line: usize, l: &str) -> Result<[usize; 2]> {
    let mut it = l.split(' ');
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, "expected two integers".into()))?;
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(line, format!("not a decimal integer: {tok:?}")));
        }
        tok.parse()
            .map_err(|_| parse_err(line, format!("integer out of range: {tok}")))
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(parse_err(line, "expected exactly two integers".into()));
    }
    Ok(pair)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edge_set())
            .finish()
    }
}
