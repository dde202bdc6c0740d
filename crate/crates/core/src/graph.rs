//! Immutable simple undirected graphs on dense vertex ids `0..n`.
//!
//! Every graph keeps a sorted neighbour list and a 64-bit adjacency mask per
//! vertex, so graphs are limited to [`MAX_VERTICES`] vertices. Deletion
//! operations return a fresh graph plus a [`Relabel`] map back to the
//! original ids.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{KefError, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertex ids, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, …, n−1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// True when every member is a valid id for a graph on `n` vertices.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(VertexSet::full(n))
    }

    /// Order by the ascending member list, so `{0,5} < {1,2}`.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
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
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = ids.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex id {bad} out of range")));
        }
        Ok(ids.into_iter().collect())
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

/// Unordered vertex pair, normalised so that `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    #[inline]
    pub fn ends(self) -> VertexSet {
        VertexSet::singleton(self.0).with(self.1)
    }

    #[inline]
    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    #[inline]
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Sorted, duplicate-free set of edges of some host graph.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn from_edges(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        EdgeSet(edges)
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet::from_edges(iter.into_iter().collect())
    }
}

/// New-to-old vertex id map produced by deletions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    old_ids: Vec<usize>,
}

impl Relabel {
    pub fn old_id(&self, new: usize) -> usize {
        self.old_ids[new]
    }

    pub fn old_ids(&self) -> &[usize] {
        &self.old_ids
    }

    pub fn map_back(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.old_ids[v]).collect()
    }

    pub fn map_edge_back(&self, e: Edge) -> Edge {
        Edge::new(self.old_ids[e.0], self.old_ids[e.1])
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Build a graph, rejecting loops, duplicate edges and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(KefError::input(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(KefError::input(format!("edge {a}-{b} out of range for n={n}")));
            }
            if a == b {
                return Err(KefError::input(format!("self-loop at {a}")));
            }
            if adj[a] >> b & 1 == 1 {
                return Err(KefError::input(format!("duplicate edge {a}-{b}")));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            list.push(Edge::new(a, b));
        }
        Ok(Self::from_parts(n, adj, list))
    }

    /// Build from adjacency masks that are already symmetric and loop-free.
    pub(crate) fn from_masks(n: usize, adj: Vec<u64>) -> Graph {
        let mut list = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            for v in VertexSet(row >> u).iter() {
                if v > 0 {
                    list.push(Edge(u, u + v));
                }
            }
        }
        Self::from_parts(n, adj, list)
    }

    fn from_parts(n: usize, adj: Vec<u64>, mut edges: Vec<Edge>) -> Graph {
        edges.sort_unstable();
        let neighbors = adj.iter().map(|&row| VertexSet(row).to_vec()).collect();
        Graph {
            n,
            edges,
            adj,
            neighbors,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).expect("empty graph within limits")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges sorted lexicographically, each with `u < v`.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn adjacency(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn masks(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet(self.edges.clone())
    }

    fn validate(&self, set: VertexSet) -> Result<()> {
        if set.fits(self.n) {
            Ok(())
        } else {
            Err(KefError::input(format!(
                "vertex set {set:?} has ids outside 0..{}",
                self.n
            )))
        }
    }

    fn validate_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(KefError::input(format!("vertex {v} outside 0..{}", self.n)))
        }
    }

    /// N(A) for a set already known to be valid.
    #[inline]
    pub fn open_nbhd(&self, set: VertexSet) -> VertexSet {
        let mut acc = 0u64;
        for v in set.iter() {
            acc |= self.adj[v];
        }
        VertexSet(acc)
    }

    /// N(A): every vertex with a neighbour in `set`.
    pub fn neighborhood(&self, set: VertexSet) -> Result<VertexSet> {
        self.validate(set)?;
        Ok(self.open_nbhd(set))
    }

    /// N[A] = A ∪ N(A).
    pub fn closed_neighborhood(&self, set: VertexSet) -> Result<VertexSet> {
        self.validate(set)?;
        Ok(set.union(self.open_nbhd(set)))
    }

    /// d(X) = |X| − |N(X)|, for any vertex set (independence not required).
    pub fn set_difference_value(&self, set: VertexSet) -> Result<i64> {
        self.validate(set)?;
        Ok(self.diff(set))
    }

    #[inline]
    pub(crate) fn diff(&self, set: VertexSet) -> i64 {
        set.len() as i64 - self.open_nbhd(set).len() as i64
    }

    pub fn is_independent(&self, set: VertexSet) -> Result<bool> {
        self.validate(set)?;
        Ok(self.independent(set))
    }

    #[inline]
    pub(crate) fn independent(&self, set: VertexSet) -> bool {
        self.open_nbhd(set).is_disjoint(set)
    }

    /// (A, B): edges with one end in each of two disjoint sets.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> Result<EdgeSet> {
        self.validate(a)?;
        self.validate(b)?;
        if !a.is_disjoint(b) {
            return Err(KefError::input("edges_between needs disjoint sets"));
        }
        let mut out = Vec::new();
        for u in a.iter() {
            for v in self.adjacency(u).intersection(b).iter() {
                out.push(Edge::new(u, v));
            }
        }
        Ok(EdgeSet::from_edges(out))
    }

    /// G − v, re-indexed to `0..n−1`.
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Relabel)> {
        self.validate_vertex(v)?;
        Ok(self.induced_unchecked(self.vertices().without(v)))
    }

    /// G − e, on the same vertex set.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        if !self.has_edge(e.0, e.1) {
            return Err(KefError::input(format!("{e:?} is not an edge")));
        }
        let mut adj = self.adj.clone();
        adj[e.0] &= !(1 << e.1);
        adj[e.1] &= !(1 << e.0);
        let edges = self.edges.iter().copied().filter(|&f| f != e).collect();
        Ok(Self::from_parts(self.n, adj, edges))
    }

    /// G[A], re-indexed so that the i-th smallest member of A becomes i.
    pub fn induced(&self, set: VertexSet) -> Result<(Graph, Relabel)> {
        self.validate(set)?;
        Ok(self.induced_unchecked(set))
    }

    pub(crate) fn induced_unchecked(&self, set: VertexSet) -> (Graph, Relabel) {
        let old_ids = set.to_vec();
        let mut new_id = [usize::MAX; MAX_VERTICES];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = old_ids
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v] & set.0)
                    .iter()
                    .fold(0u64, |acc, w| acc | 1 << new_id[w])
            })
            .collect();
        (Graph::from_masks(old_ids.len(), adj), Relabel { old_ids })
    }

    /// Apply a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = VertexSet::EMPTY;
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n) {
            return Err(KefError::input("not a permutation of the vertex set"));
        }
        for &p in perm {
            seen.insert(p);
        }
        if seen.len() != self.n {
            return Err(KefError::input("not a permutation of the vertex set"));
        }
        Graph::new(self.n, self.edges.iter().map(|e| (perm[e.0], perm[e.1])))
    }

    /// Connected components, each as a vertex set, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                frontier = self.open_nbhd(frontier).difference(comp);
                comp = comp.union(frontier);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// `n m` header followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for e in &self.edges {
            s.push_str(&format!("{} {}\n", e.0, e.1));
        }
        s
    }
}

/// Parse every graph in an edge-list stream. Graphs are concatenated blocks
/// of `n m` followed by `m` lines `u v`; blank lines and `#` comments are
/// skipped.
pub fn parse_edge_lists(text: &str) -> Result<Vec<Graph>> {
    let mut tokens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(KefError::input(format!(
                "line {}: expected two integers, got `{line}`",
                lineno + 1
            )));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| KefError::input(format!("line {}: bad integer `{s}`", lineno + 1)))
        };
        tokens.push((parse(fields[0])?, parse(fields[1])?));
    }
    if tokens.is_empty() {
        return Err(KefError::input("no graph in input"));
    }
    let mut graphs = Vec::new();
    let mut rest = tokens.as_slice();
    while let Some((&(n, m), tail)) = rest.split_first() {
        if tail.len() < m {
            return Err(KefError::input(format!(
                "header announces {m} edges but only {} lines follow",
                tail.len()
            )));
        }
        graphs.push(Graph::new(n, tail[..m].iter().copied())?);
        rest = &tail[m..];
    }
    Ok(graphs)
}

/// Parse exactly one edge-list graph.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graphs = parse_edge_lists(text)?;
    if graphs.len() != 1 {
        return Err(KefError::input(format!("expected one graph, found {}", graphs.len())));
    }
    Ok(graphs.pop().expect("one graph"))
}

#[cfg(feature = "graph6")]
pub mod graph6 {
    //! Standard graph6 encoding (undirected, simple).

    use super::{Graph, MAX_VERTICES};
    use crate::error::{KefError, Result};

    const HEADER: &str = ">>graph6<<";

    pub fn encode(g: &Graph) -> String {
        let n = g.n();
        let mut out = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            out.push(((n >> 12) & 63) as u8 + 63);
            out.push(((n >> 6) & 63) as u8 + 63);
            out.push((n & 63) as u8 + 63);
        }
        let mut acc = 0u8;
        let mut bits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | g.has_edge(i, j) as u8;
                bits += 1;
                if bits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push((acc << (6 - bits)) + 63);
        }
        String::from_utf8(out).expect("graph6 is printable ascii")
    }

    pub fn decode(line: &str) -> Result<Graph> {
        let line = line.trim_end_matches(['\n', '\r']);
        let line = line.strip_prefix(HEADER).unwrap_or(line);
        let bytes = line.as_bytes();
        match bytes.first() {
            None => return Err(KefError::input("empty graph6 line")),
            Some(b'&') => return Err(KefError::input("digraph6 input is not supported")),
            Some(b':') | Some(b';') => {
                return Err(KefError::input("sparse6 input is not supported"))
            }
            _ => {}
        }
        if let Some(bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(KefError::input(format!("invalid graph6 byte 0x{bad:02x}")));
        }
        let (n, body) = if bytes[0] == 126 {
            if bytes.get(1) == Some(&126) {
                return Err(KefError::input("graph6 8-byte size form is not supported"));
            }
            if bytes.len() < 4 {
                return Err(KefError::input("truncated graph6 size"));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &bytes[4..])
        } else {
            ((bytes[0] - 63) as usize, &bytes[1..])
        };
        if n > MAX_VERTICES {
            return Err(KefError::input(format!("{n} vertices exceeds {MAX_VERTICES}")));
        }
        let pairs = n * n.saturating_sub(1) / 2;
        if body.len() != pairs.div_ceil(6) {
            return Err(KefError::input(format!(
                "graph6 body has {} bytes, expected {}",
                body.len(),
                pairs.div_ceil(6)
            )));
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6] - 63;
                if byte >> (5 - k % 6) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::new(n, edges)
    }

    /// One graph per non-empty line.
    pub fn decode_all(text: &str) -> Result<Vec<Graph>> {
        let graphs: Vec<Graph> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(decode)
            .collect::<Result<_>>()?;
        if graphs.is_empty() {
            return Err(KefError::input("no graph in input"));
        }
        Ok(graphs)
    }
}

/// Path 0-1-…-(n−1).
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path within limits")
}

/// Cycle 0-1-…-(n−1)-0, n ≥ 3.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle within limits")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("K_n within limits")
}

/// Star with centre 0 and leaves 1..=leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star within limits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn neighborhood_examples() {
        let c5 = cycle(5);
        assert_eq!(c5.neighborhood(set(&[0])).unwrap(), set(&[1, 4]));
        assert_eq!(c5.neighborhood(VertexSet::EMPTY).unwrap(), VertexSet::EMPTY);
        assert_eq!(star(3).neighborhood(set(&[1, 2])).unwrap(), set(&[0]));
        assert!(c5.neighborhood(set(&[7])).is_err());
    }

    #[test]
    fn closed_neighborhood_examples() {
        assert_eq!(cycle(5).closed_neighborhood(set(&[0])).unwrap(), set(&[0, 1, 4]));
        assert_eq!(cycle(5).closed_neighborhood(VertexSet::EMPTY).unwrap(), VertexSet::EMPTY);
        assert_eq!(star(3).closed_neighborhood(set(&[0])).unwrap(), set(&[0, 1, 2, 3]));
    }

    #[test]
    fn difference_examples() {
        assert_eq!(Graph::empty(1).set_difference_value(set(&[0])).unwrap(), 1);
        assert_eq!(cycle(5).set_difference_value(set(&[0, 2])).unwrap(), -1);
        assert_eq!(cycle(5).set_difference_value(VertexSet::EMPTY).unwrap(), 0);
        assert!(cycle(5).set_difference_value(set(&[9])).is_err());
    }

    #[test]
    fn deletions() {
        let (p4, relabel) = cycle(5).delete_vertex(0).unwrap();
        assert_eq!(p4, path(4));
        assert_eq!(relabel.old_ids(), &[1, 2, 3, 4]);

        let k2 = complete(2);
        let g = k2.delete_edge(Edge(0, 1)).unwrap();
        assert_eq!((g.n(), g.m()), (2, 0));
        assert!(k2.delete_edge(Edge(0, 1)).unwrap().delete_edge(Edge(0, 1)).is_err());

        let (p3, _) = cycle(5).induced(set(&[0, 1, 2])).unwrap();
        assert_eq!(p3, path(3));
        assert!(cycle(5).delete_vertex(5).is_err());
    }

    #[test]
    fn independence_and_cuts() {
        let c5 = cycle(5);
        assert!(c5.is_independent(set(&[0, 2])).unwrap());
        assert!(!c5.is_independent(set(&[0, 1])).unwrap());
        let cut = complete(2).edges_between(set(&[0]), set(&[1])).unwrap();
        assert_eq!(cut.as_slice(), &[Edge(0, 1)]);
        assert!(c5.edges_between(set(&[0, 1]), set(&[1])).is_err());
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(65, []).is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("# a triangle\n3 3\n0 1\n\n1 2 # last two\n2 0\n").unwrap();
        assert_eq!(g, cycle(3));
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        let two = parse_edge_lists("2 1\n0 1\n3 0\n").unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(parse_edge_list(&cycle(7).to_edge_list()).unwrap(), cycle(7));
    }

    #[cfg(feature = "graph6")]
    #[test]
    fn graph6_known_strings() {
        // Reference encodings from the format description.
        assert_eq!(graph6::encode(&complete(2)), "A_");
        assert_eq!(graph6::encode(&cycle(5)), "Dhc");
        assert_eq!(graph6::decode("Dhc").unwrap(), cycle(5));
        assert_eq!(graph6::decode(">>graph6<<A_").unwrap(), complete(2));
        assert!(graph6::decode("&A_").is_err());
        assert!(graph6::decode(":A_").is_err());
        assert!(graph6::decode("D").is_err());
        let big = complete(64);
        assert_eq!(graph6::decode(&graph6::encode(&big)).unwrap(), big);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn double_counting(g in arb_graph(12), a in any::<u64>(), b in any::<u64>()) {
            let a = VertexSet::from_bits(a).intersection(g.vertices());
            let b = VertexSet::from_bits(b).intersection(g.vertices());
            let lhs: usize = a.iter().map(|v| g.adjacency(v).intersection(b).len()).sum();
            let rhs: usize = b.iter().map(|v| g.adjacency(v).intersection(a).len()).sum();
            prop_assert_eq!(lhs, rhs);
            let ab = g.neighborhood(a).unwrap().is_disjoint(b);
            let ba = g.neighborhood(b).unwrap().is_disjoint(a);
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn vertex_deletion_counts(g in arb_graph(12), pick in any::<usize>()) {
            let v = pick % g.n();
            let (h, relabel) = g.delete_vertex(v).unwrap();
            prop_assert_eq!(h.n(), g.n() - 1);
            prop_assert_eq!(h.m(), g.m() - g.degree(v));
            prop_assert!(!relabel.old_ids().contains(&v));
            prop_assert_eq!(g.set_difference_value(VertexSet::EMPTY).unwrap(), 0);
        }

        #[test]
        fn text_formats_round_trip(g in arb_graph(20)) {
            prop_assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g.clone());
            #[cfg(feature = "graph6")]
            prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
        }
    }
}
