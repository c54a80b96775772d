//! Construction of hypercube-like graphs.
//!
//! Every graph is produced from a [`ConstructionTrace`]: a balanced binary
//! tree whose internal nodes join two equal-order halves by a perfect
//! matching. Vertices are labeled canonically: at a node of depth `k` the
//! left half keeps positions `0..2^(k-1)` and the right half is offset by
//! `2^(k-1)`. Under this labeling the hypercube gets its usual binary codes.
//!
//! An [`HlGraph`] may additionally carry a placement that renames canonical
//! positions to the labels of an externally fixed drawing (the fig1
//! fixture uses this).

use std::hash::Hasher;

use fnv::FnvHasher;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet, MAX_ORDER};

/// Largest dimension the builder will construct.
pub const MAX_DIMENSION: usize = MAX_ORDER.trailing_zeros() as usize;

// ============================================================================
// Matching
// ============================================================================

/// A bijection `sigma` on `0..len`: left-block vertex `i` is joined to
/// right-block vertex `sigma[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching(Vec<usize>);

impl Matching {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &j in &sigma {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::NotABijection(n));
            }
        }
        Ok(Self(sigma))
    }

    pub fn identity(len: usize) -> Self {
        Self((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// The 1-1 connection `g0 ⊕ g1`: right-block vertex `j` becomes
/// `|g0| + j`, and `i` is joined to `|g0| + sigma[i]`.
pub fn oplus(g0: &Graph, g1: &Graph, sigma: &Matching) -> Result<Graph> {
    let m = g0.order();
    if g1.order() != m || sigma.len() != m {
        return Err(Error::OrderMismatch {
            left: m,
            right: g1.order(),
            matching: sigma.len(),
        });
    }
    let left = g0.edges().map(|e| (e.u(), e.v()));
    let right = g1.edges().map(|e| (m + e.u(), m + e.v()));
    let matched = sigma.as_slice().iter().enumerate().map(|(i, &j)| (i, m + j));
    Graph::from_edges(2 * m, left.chain(right).chain(matched))
}

// ============================================================================
// ConstructionTrace
// ============================================================================

/// Binary recursion tree witnessing membership in HL_n.
///
/// `sigma` is kept raw here so that traces read from files can be
/// validated with a precise error; [`validate_trace`] checks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionTrace {
    Leaf,
    Node {
        left: Box<ConstructionTrace>,
        right: Box<ConstructionTrace>,
        sigma: Vec<usize>,
    },
}

impl ConstructionTrace {
    pub fn node(left: ConstructionTrace, right: ConstructionTrace, sigma: Vec<usize>) -> Self {
        Self::Node {
            left: Box::new(left),
            right: Box::new(right),
            sigma,
        }
    }

    /// Depth along the leftmost spine. Equals the dimension for valid traces.
    pub fn depth(&self) -> usize {
        let mut d = 0;
        let mut t = self;
        while let Self::Node { left, .. } = t {
            d += 1;
            t = left;
        }
        d
    }

    /// The left-descendant `levels` steps down, if it exists.
    pub fn left_descendant(&self, levels: usize) -> Option<&ConstructionTrace> {
        let mut t = self;
        for _ in 0..levels {
            match t {
                Self::Node { left, .. } => t = left,
                Self::Leaf => return None,
            }
        }
        Some(t)
    }

    /// Compact JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("trace serialization is infallible");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl Serialize for ConstructionTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Leaf => {
                let mut s = serializer.serialize_struct("Leaf", 1)?;
                s.serialize_field("leaf", &true)?;
                s.end()
            }
            Self::Node { left, right, sigma } => {
                let mut s = serializer.serialize_struct("Node", 3)?;
                s.serialize_field("left", left)?;
                s.serialize_field("right", right)?;
                s.serialize_field("sigma", sigma)?;
                s.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLeaf {
    leaf: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    left: Box<RawTrace>,
    right: Box<RawTrace>,
    sigma: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawTrace {
    Leaf(RawLeaf),
    Node(RawNode),
}

impl TryFrom<RawTrace> for ConstructionTrace {
    type Error = &'static str;

    fn try_from(raw: RawTrace) -> std::result::Result<Self, Self::Error> {
        match raw {
            RawTrace::Leaf(RawLeaf { leaf: true }) => Ok(Self::Leaf),
            RawTrace::Leaf(RawLeaf { leaf: false }) => Err("\"leaf\" must be true"),
            RawTrace::Node(RawNode { left, right, sigma }) => {
                Ok(Self::node((*left).try_into()?, (*right).try_into()?, sigma))
            }
        }
    }
}

impl<'de> Deserialize<'de> for ConstructionTrace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        RawTrace::deserialize(deserializer)?
            .try_into()
            .map_err(D::Error::custom)
    }
}

/// Realizes a trace after checking balanced depths, matching lengths,
/// bijectivity, and the resulting regularity and connectivity.
pub fn validate_trace(trace: &ConstructionTrace) -> Result<Graph> {
    let (depth, g) = realize_checked(trace, &mut String::new())?;
    let invalid = |reason: String| Error::InvalidTrace {
        path: String::new(),
        reason,
    };
    if g.regular_degree() != Some(depth) {
        return Err(invalid(format!("realized graph is not {depth}-regular")));
    }
    if !g.is_connected(&EdgeSet::new())? {
        return Err(invalid("realized graph is disconnected".into()));
    }
    Ok(g)
}

fn realize_checked(trace: &ConstructionTrace, path: &mut String) -> Result<(usize, Graph)> {
    let ConstructionTrace::Node { left, right, sigma } = trace else {
        return Ok((0, Graph::from_edges(1, Vec::<(usize, usize)>::new())?));
    };
    let invalid = |path: &str, reason: String| Error::InvalidTrace {
        path: path.to_owned(),
        reason,
    };
    path.push('0');
    let (dl, gl) = realize_checked(left, path)?;
    path.pop();
    path.push('1');
    let (dr, gr) = realize_checked(right, path)?;
    path.pop();
    if dl != dr {
        return Err(invalid(
            path,
            format!("unbalanced subtrees (left depth {dl}, right depth {dr})"),
        ));
    }
    if dl + 1 > MAX_DIMENSION {
        return Err(invalid(path, format!("depth exceeds the cap of {MAX_DIMENSION}")));
    }
    let half = 1usize << dl;
    if sigma.len() != half {
        return Err(invalid(
            path,
            format!("sigma has length {}, expected {half}", sigma.len()),
        ));
    }
    let m = Matching::new(sigma.clone()).map_err(|e| invalid(path, e.to_string()))?;
    Ok((dl + 1, oplus(&gl, &gr, &m)?))
}

// ============================================================================
// HlGraph
// ============================================================================

/// A member of HL_n together with its construction trace.
#[derive(Clone, Debug)]
pub struct HlGraph {
    graph: Graph,
    trace: ConstructionTrace,
    n: usize,
    placement: Vec<usize>,
    position: Vec<usize>,
    descriptor: String,
}

impl HlGraph {
    /// Builds from an explicit trace with canonical labels. This is the
    /// entry point for any custom family of matchings.
    pub fn from_trace(trace: ConstructionTrace, descriptor: impl Into<String>) -> Result<Self> {
        let order = 1usize << trace.depth().min(MAX_DIMENSION);
        Self::with_placement(trace, (0..order).collect(), descriptor)
    }

    /// Builds from a trace, renaming canonical position `i` to `placement[i]`.
    pub fn with_placement(
        trace: ConstructionTrace,
        placement: Vec<usize>,
        descriptor: impl Into<String>,
    ) -> Result<Self> {
        let canonical = validate_trace(&trace)?;
        let order = canonical.order();
        let mut position = vec![usize::MAX; order];
        for (i, &v) in placement.iter().enumerate() {
            if v >= order || position[v] != usize::MAX {
                return Err(Error::InvalidTrace {
                    path: String::new(),
                    reason: format!("placement is not a permutation of 0..{order}"),
                });
            }
            position[v] = i;
        }
        if placement.len() != order {
            return Err(Error::InvalidTrace {
                path: String::new(),
                reason: format!("placement has length {}, expected {order}", placement.len()),
            });
        }
        Ok(Self {
            graph: canonical.relabel(&placement)?,
            n: trace.depth(),
            trace,
            placement,
            position,
            descriptor: descriptor.into(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn trace(&self) -> &ConstructionTrace {
        &self.trace
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// `placement[i]` is the vertex at canonical position `i`.
    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    fn check_level(&self, h: usize) -> Result<()> {
        if h > self.n {
            return Err(Error::LevelOutOfRange {
                h,
                min: 0,
                max: self.n,
            });
        }
        Ok(())
    }

    /// Vertices of the embedded `G_h` block: canonical positions `0..2^h`.
    pub fn block_vertices(&self, h: usize) -> Result<VertexSet> {
        self.check_level(h)?;
        Ok(self.placement[..1 << h].iter().copied().collect())
    }

    /// The sub-trace realizing the embedded `G_h` block.
    pub fn block_trace(&self, h: usize) -> Result<&ConstructionTrace> {
        self.check_level(h)?;
        Ok(self
            .trace
            .left_descendant(self.n - h)
            .expect("valid traces are balanced"))
    }

    /// The level `h` in `1..=n` whose matching contains `e`.
    pub fn edge_level(&self, e: Edge) -> Result<usize> {
        if !self.graph.has_edge(e.u(), e.v()) {
            return Err(Error::NotAnEdge(e));
        }
        let diff = self.position[e.u()] ^ self.position[e.v()];
        Ok(usize::BITS as usize - diff.leading_zeros() as usize)
    }
}

/// `Q_n` with identity matchings at every level.
pub fn hypercube(n: usize) -> Result<HlGraph> {
    check_dimension(n)?;
    fn build(k: usize) -> ConstructionTrace {
        if k == 0 {
            return ConstructionTrace::Leaf;
        }
        ConstructionTrace::node(build(k - 1), build(k - 1), (0..1 << (k - 1)).collect())
    }
    HlGraph::from_trace(build(n), format!("hypercube({n})"))
}

/// A seeded random member of HL_n.
///
/// Each internal node draws its matching from its own splitmix64 stream.
/// The node is tagged by its path from the root (root = `""`, a left child
/// appends `'0'`, a right child `'1'`); the stream is seeded with
/// `seed ^ fnv1a64(path)`. The matching is a Fisher–Yates shuffle of the
/// identity: for `i` from `len-1` down to `1`, swap `i` with
/// `next_u64() % (i + 1)`.
pub fn random_hl(n: usize, seed: u64) -> Result<HlGraph> {
    check_dimension(n)?;
    fn build(k: usize, seed: u64, path: &mut String) -> ConstructionTrace {
        if k == 0 {
            return ConstructionTrace::Leaf;
        }
        let sigma = shuffled(1 << (k - 1), node_seed(seed, path));
        path.push('0');
        let left = build(k - 1, seed, path);
        path.pop();
        path.push('1');
        let right = build(k - 1, seed, path);
        path.pop();
        ConstructionTrace::node(left, right, sigma)
    }
    let trace = build(n, seed, &mut String::new());
    HlGraph::from_trace(trace, format!("random_hl({n},seed={seed})"))
}

pub(crate) fn node_seed(seed: u64, path: &str) -> u64 {
    let mut h = FnvHasher::default();
    h.write(path.as_bytes());
    seed ^ h.finish()
}

pub(crate) fn shuffled(len: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut sigma: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        sigma.swap(i, j);
    }
    sigma
}

fn check_dimension(n: usize) -> Result<()> {
    if n > MAX_DIMENSION {
        return Err(Error::DimensionCap {
            n,
            max: MAX_DIMENSION,
        });
    }
    Ok(())
}

// ============================================================================
// fig1 fixture
// ============================================================================

/// Edge list of the 16-vertex HL_4 drawing, vertices a1..a4, b1..b4,
/// c1..c4, d1..d4 numbered 0..15: four squares, eight cross edges, and the
/// eight top-level matching edges.
#[rustfmt::skip]
pub const FIG1_EDGES: [(usize, usize); 32] = [
    (0, 1), (1, 2), (2, 3), (0, 3),
    (4, 5), (5, 6), (6, 7), (4, 7),
    (8, 9), (9, 10), (10, 11), (8, 11),
    (12, 13), (13, 14), (14, 15), (12, 15),
    (3, 8), (2, 9), (7, 12), (6, 13),
    (0, 11), (1, 10), (4, 15), (5, 14),
    (1, 4), (2, 7), (9, 12), (10, 15),
    (3, 5), (6, 8), (11, 13), (0, 14),
];

/// Canonical position -> drawing label. The left half of the top-level
/// matching is squares a and c, the right half squares b and d.
const FIG1_PLACEMENT: [usize; 16] = [0, 1, 2, 3, 8, 9, 10, 11, 4, 5, 6, 7, 12, 13, 14, 15];

/// The construction trace of the drawing, in canonical positions.
pub fn fig1_trace() -> ConstructionTrace {
    use ConstructionTrace::Leaf;
    let edge = || ConstructionTrace::node(Leaf, Leaf, vec![0]);
    // each square x1-x2-x3-x4 is {x1,x2} ⊕ {x3,x4} with x1~x4, x2~x3
    let square = || ConstructionTrace::node(edge(), edge(), vec![1, 0]);
    // a~c and b~d: x1~y4, x2~y3, x3~y2, x4~y1
    let cube = || ConstructionTrace::node(square(), square(), vec![3, 2, 1, 0]);
    ConstructionTrace::node(cube(), cube(), vec![6, 0, 3, 1, 2, 4, 7, 5])
}

/// The fig1 member of HL_4, in the drawing's vertex labels.
pub fn fig1_graph() -> HlGraph {
    HlGraph::with_placement(fig1_trace(), FIG1_PLACEMENT.to_vec(), "fig1")
        .expect("the fig1 fixture is a valid trace")
}
