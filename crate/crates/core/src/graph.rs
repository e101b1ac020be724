//! Immutable d-regular graph representation with exact set-pair edge counting,
//! boundaries, conductance, and vertex expansion.
//!
//! The ordered edge count `E(S,T)` follows the convention that an edge with both
//! endpoints in `S ∩ T` contributes twice (once per orientation); an edge with
//! `u ∈ S`, `v ∈ T` and disjoint sides contributes once.

use thiserror::Error;

/// Relative tolerance for surplus-vs-alpha comparisons.
///
/// Edge counts are exact integers, so the only float error in a surplus comes
/// from one division and one square root; comparisons near ties must not flip
/// on that error.
pub const SURPLUS_REL_TOL: f64 = 1e-9;

/// Tolerance band around `alpha` used by all surplus comparisons.
pub fn alpha_tolerance(alpha: f64) -> f64 {
    SURPLUS_REL_TOL * alpha.abs().max(1.0)
}

/// True iff `surplus` exceeds `alpha` by more than the comparison tolerance
/// (the pair is a genuine violation witness).
pub fn exceeds_alpha(surplus: f64, alpha: f64) -> bool {
    surplus > alpha + alpha_tolerance(alpha)
}

/// True iff `surplus` reaches `alpha` up to the comparison tolerance
/// (the pair still qualifies as a witness during minimization).
pub fn meets_alpha(surplus: f64, alpha: f64) -> bool {
    surplus >= alpha - alpha_tolerance(alpha)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NonRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid graph shape: {0}")]
    InvalidShape(String),
    #[error("operation requires a nonempty vertex set")]
    EmptySet,
    #[error("set size {size} out of range 1..={max}")]
    SizeOutOfRange { size: usize, max: usize },
}

/// Immutable simple d-regular undirected graph over vertices `0..n`.
///
/// Neighbor lists are stored in one flat array of stride `d`, sorted ascending
/// per vertex. All query operations are safe for concurrent readers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularGraph {
    n: usize,
    d: usize,
    adjacency: Vec<u32>,
}

impl RegularGraph {
    /// Builds a validated regular graph from an unordered edge list.
    ///
    /// The common degree d is inferred; any vertex whose degree differs is
    /// rejected, as are self-loops and duplicate edges.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::InvalidShape(format!("n = {n}, need n >= 2")));
        }
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }

        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0] as usize), v.max(w[0] as usize)));
            }
        }

        if edges.is_empty() {
            return Err(GraphError::InvalidShape("graph has no edges".into()));
        }
        let d = lists[0].len();
        if d == 0 {
            return Err(GraphError::NonRegular {
                vertex: 0,
                degree: 0,
                expected: d,
            });
        }
        for (v, list) in lists.iter().enumerate() {
            if list.len() != d {
                return Err(GraphError::NonRegular {
                    vertex: v,
                    degree: list.len(),
                    expected: d,
                });
            }
        }
        if d >= n {
            return Err(GraphError::InvalidShape(format!("d = {d} >= n = {n}")));
        }
        // nd even is implied by a consistent edge list, but keep the check:
        // it guards against future constructors bypassing the list path.
        debug_assert!(n * d % 2 == 0);

        let mut adjacency = Vec::with_capacity(n * d);
        for list in &lists {
            adjacency.extend_from_slice(list);
        }
        Ok(Self { n, d, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of undirected edges, nd/2.
    pub fn edge_count(&self) -> usize {
        self.n * self.d / 2
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v * self.d..(v + 1) * self.d]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Number of neighbors of `v` inside `set`.
    #[inline]
    pub fn degree_in(&self, v: usize, set: &VertexSet) -> usize {
        self.neighbors(v)
            .iter()
            .filter(|&&u| set.contains(u as usize))
            .count()
    }

    /// All edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in self.neighbors(v) {
                let u = u as usize;
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// True iff some connected component is bipartite, which for the
    /// normalized adjacency P = A/d is equivalent to an eigenvalue of -1.
    pub fn has_bipartite_component(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..self.n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            queue.push_back(root);
            let mut odd_cycle = false;
            while let Some(v) = queue.pop_front() {
                for &u in self.neighbors(v) {
                    let u = u as usize;
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        odd_cycle = true;
                    }
                }
            }
            if !odd_cycle {
                return true;
            }
        }
        false
    }
}

/// Subset of `0..n` backed by a word-level bitset with cached cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
    n: usize,
    size: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
            n,
            size: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.n);
        self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    /// Inserts `v`; returns whether the set changed.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} out of range for n = {}", self.n);
        let w = &mut self.words[v >> 6];
        let bit = 1u64 << (v & 63);
        if *w & bit == 0 {
            *w |= bit;
            self.size += 1;
            true
        } else {
            false
        }
    }

    /// Removes `v`; returns whether the set changed.
    pub fn remove(&mut self, v: usize) -> bool {
        assert!(v < self.n);
        let w = &mut self.words[v >> 6];
        let bit = 1u64 << (v & 63);
        if *w & bit != 0 {
            *w &= !bit;
            self.size -= 1;
            true
        } else {
            false
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let v = w.trailing_zeros() as usize;
                w &= w - 1;
                Some((i << 6) + v)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.n);
        for v in 0..self.n {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }
}

/// A pair of vertex subsets with its exact ordered edge count and density surplus.
#[derive(Debug, Clone, PartialEq)]
pub struct SetPair {
    pub s: VertexSet,
    pub t: VertexSet,
    /// Ordered edge count |E(S,T)|; edges inside S ∩ T count twice.
    pub est: u64,
    /// Smallest alpha making the density condition tight for this pair.
    pub surplus: f64,
}

impl SetPair {
    /// Counts the pair from scratch; rejects empty sides.
    pub fn new(g: &RegularGraph, s: VertexSet, t: VertexSet) -> Result<Self, GraphError> {
        if s.is_empty() || t.is_empty() {
            return Err(GraphError::EmptySet);
        }
        let est = ordered_edge_count(g, &s, &t);
        let surplus = surplus_value(est, s.size(), t.size(), g.d(), g.n());
        Ok(Self { s, t, est, surplus })
    }

    /// Total order used to break ties deterministically: higher surplus first,
    /// then lexicographically smaller (S, T) id lists.
    pub fn order_key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.s.to_vec(), self.t.to_vec())
    }

    /// True iff `self` is preferred over `other` as a reported witness.
    pub fn preferred_over(&self, other: &SetPair) -> bool {
        if self.surplus != other.surplus {
            return self.surplus > other.surplus;
        }
        self.order_key() < other.order_key()
    }
}

/// Density surplus from raw integers:
/// `(est - d|S||T|/n) / sqrt(|S||T|)`.
///
/// The integer product d|S||T| is formed exactly before the single division,
/// so the only rounding happens in the final two float operations.
#[inline]
pub fn surplus_value(est: u64, s_size: usize, t_size: usize, d: usize, n: usize) -> f64 {
    debug_assert!(s_size > 0 && t_size > 0);
    let expected = (d as u128 * s_size as u128 * t_size as u128) as f64 / n as f64;
    let st = (s_size as u128 * t_size as u128) as f64;
    (est as f64 - expected) / st.sqrt()
}

/// Exact ordered edge count |E(S,T)|.
///
/// Iterates the smaller side and tests membership in the other, O(min|S|,|T|·d).
pub fn ordered_edge_count(g: &RegularGraph, s: &VertexSet, t: &VertexSet) -> u64 {
    let (small, large) = if s.size() <= t.size() { (s, t) } else { (t, s) };
    small
        .iter()
        .map(|v| g.degree_in(v, large) as u64)
        .sum()
}

/// Density surplus of a pair; the condition `|E(S,T)| <= d|S||T|/n + alpha*sqrt(|S||T|)`
/// holds for this pair iff the returned value is at most alpha.
pub fn density_surplus(g: &RegularGraph, s: &VertexSet, t: &VertexSet) -> Result<f64, GraphError> {
    if s.is_empty() || t.is_empty() {
        return Err(GraphError::EmptySet);
    }
    let est = ordered_edge_count(g, s, t);
    Ok(surplus_value(est, s.size(), t.size(), g.d(), g.n()))
}

/// |δ(S)| = |E(S, V∖S)|, the number of edges leaving S.
pub fn edge_boundary(g: &RegularGraph, s: &VertexSet) -> u64 {
    // |E(S,S)| + |δ(S)| = d|S|
    let internal: u64 = s.iter().map(|v| g.degree_in(v, s) as u64).sum();
    (g.d() as u64) * (s.size() as u64) - internal
}

/// N(S): all vertices adjacent to some member of S (members included if adjacent).
pub fn neighbor_set(g: &RegularGraph, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::empty(g.n());
    for v in s.iter() {
        for &u in g.neighbors(v) {
            out.insert(u as usize);
        }
    }
    out
}

/// |∂(S)| = |N(S) ∖ S|.
pub fn vertex_boundary(g: &RegularGraph, s: &VertexSet) -> usize {
    let mut nb = neighbor_set(g, s);
    for v in s.iter() {
        nb.remove(v);
    }
    nb.size()
}

/// Conductance of the cut S: |δ(S)| / (d|S|), defined for 1 <= |S| <= n/2.
pub fn conductance_of_cut(g: &RegularGraph, s: &VertexSet) -> Result<f64, GraphError> {
    if s.is_empty() || s.size() > g.n() / 2 {
        return Err(GraphError::SizeOutOfRange {
            size: s.size(),
            max: g.n() / 2,
        });
    }
    Ok(edge_boundary(g, s) as f64 / (g.d() * s.size()) as f64)
}
