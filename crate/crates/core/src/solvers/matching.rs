use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{KefError, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};

/// A set of pairwise vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub edges: EdgeSet,
    pub saturated: VertexSet,
}

impl Matching {
    /// Build from edges, rejecting any two that share a vertex.
    pub fn from_edges(edges: Vec<Edge>) -> Result<Matching> {
        let mut saturated = VertexSet::EMPTY;
        for e in &edges {
            if !saturated.is_disjoint(e.ends()) {
                return Err(KefError::input(format!("{e:?} shares a vertex with another edge")));
            }
            saturated = saturated.union(e.ends());
        }
        Ok(Matching {
            edges: EdgeSet::from_edges(edges),
            saturated,
        })
    }

    fn from_mates(mate: &[usize]) -> Matching {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(v, &u)| u != NONE && v < u)
            .map(|(v, &u)| Edge(v, u))
            .collect();
        Matching::from_edges(edges).expect("mate array is a matching")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn saturates(&self, v: usize) -> bool {
        self.saturated.contains(v)
    }

    /// M(v): the partner of `v`, if matched.
    pub fn mate(&self, v: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.touches(v)).map(|e| e.other(v))
    }

    /// True if every edge is an edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.edges.iter().all(|e| g.has_edge(e.0, e.1))
    }
}

const NONE: usize = usize::MAX;

/// Augmenting-path search with blossom contraction.
struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grow an alternating tree from `root`; returns an exposed endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn solve(mut self) -> Vec<usize> {
        for v in 0..self.g.n() {
            if self.mate[v] == NONE {
                if let Some(end) = self.find_path(v) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }
}

/// μ(G) and one maximum matching.
pub fn mu(g: &Graph, caps: &Caps) -> Result<(usize, Matching)> {
    caps.check("solver_n", caps.solver_n, g.n())?;
    let m = Matching::from_mates(&Blossom::new(g).solve());
    Ok((m.len(), m))
}

/// μ without the cap check, for internal deletion loops.
pub(crate) fn mu_size(g: &Graph) -> usize {
    Blossom::new(g).solve().iter().filter(|&&u| u != NONE).count() / 2
}

/// Every maximum matching, each with edges sorted, the list sorted.
pub fn all_maximum_matchings(g: &Graph, caps: &Caps) -> Result<Vec<Matching>> {
    caps.check("matching_enum_n", caps.matching_enum_n, g.n())?;
    let (size, _) = mu(g, caps)?;
    let mut found = Vec::new();
    let mut current = Vec::with_capacity(size);
    // Vertices are decided in increasing order; at most n − 2μ stay exposed.
    let budget = g.n() - 2 * size;
    enumerate_matchings(g, g.vertices(), budget, &mut current, &mut found, caps.matching_count)?;
    let mut out: Vec<Matching> = found
        .into_iter()
        .map(|edges| Matching::from_edges(edges).expect("enumerated matchings are disjoint"))
        .collect();
    out.sort_by(|a, b| a.edges.as_slice().cmp(b.edges.as_slice()));
    Ok(out)
}

fn enumerate_matchings(
    g: &Graph,
    open: VertexSet,
    budget: usize,
    current: &mut Vec<Edge>,
    found: &mut Vec<Vec<Edge>>,
    limit: usize,
) -> Result<()> {
    let Some(v) = open.first() else {
        found.push(current.clone());
        if found.len() > limit {
            return Err(KefError::Capacity {
                what: "matching_count",
                limit,
                actual: found.len(),
            });
        }
        return Ok(());
    };
    let rest = open.without(v);
    for u in g.adjacency(v).intersection(rest).iter() {
        current.push(Edge(v, u));
        enumerate_matchings(g, rest.without(u), budget, current, found, limit)?;
        current.pop();
    }
    if budget > 0 {
        enumerate_matchings(g, rest, budget - 1, current, found, limit)?;
    }
    Ok(())
}

/// A matching that saturates every vertex of `from`, using only edges
/// between `from` and `into`; `None` when no such matching exists.
pub fn matching_from_into(g: &Graph, from: VertexSet, into: VertexSet) -> Result<Option<Matching>> {
    if !from.fits(g.n()) || !into.fits(g.n()) {
        return Err(KefError::input("vertex set outside the graph"));
    }
    if !from.is_disjoint(into) {
        return Err(KefError::input("matching_from_into needs disjoint sets"));
    }
    let left: Vec<usize> = from.to_vec();
    let right_adj: Vec<u64> = left
        .iter()
        .map(|&v| g.adjacency(v).intersection(into).bits())
        .collect();
    let (size, owner) = bipartite_matching(&right_adj);
    if size < left.len() {
        return Ok(None);
    }
    let edges = owner
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l != NONE)
        .map(|(r, &l)| Edge::new(left[l], r))
        .collect();
    Ok(Some(Matching::from_edges(edges)?))
}

/// Kuhn's augmenting paths. `adj[l]` is the mask of right vertices (ids < 64)
/// adjacent to left vertex `l`. Returns the size and owner of each right vertex.
fn bipartite_matching(adj: &[u64]) -> (usize, Vec<usize>) {
    fn try_kuhn(l: usize, adj: &[u64], seen: &mut u64, owner: &mut [usize]) -> bool {
        let mut cand = adj[l] & !*seen;
        while cand != 0 {
            let r = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            *seen |= 1 << r;
            if owner[r] == NONE || try_kuhn(owner[r], adj, seen, owner) {
                owner[r] = l;
                return true;
            }
        }
        false
    }
    let mut owner = vec![NONE; 64];
    let mut size = 0;
    for l in 0..adj.len() {
        let mut seen = 0u64;
        if try_kuhn(l, adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    (size, owner)
}

/// μ of the bipartite double cover: parts V and V′ with u ~ v′ for each uv ∈ E.
pub fn double_cover_mu(g: &Graph) -> usize {
    let adj: Vec<u64> = (0..g.n()).map(|v| g.adjacency(v).bits()).collect();
    bipartite_matching(&adj).0
}

/// Vertices v with μ(G−v) < μ(G).
pub fn mu_critical_vertices(g: &Graph, caps: &Caps) -> Result<VertexSet> {
    let (size, _) = mu(g, caps)?;
    let mut out = VertexSet::EMPTY;
    for v in g.vertices().iter() {
        let (h, _) = g.delete_vertex(v)?;
        if mu_size(&h) < size {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Edges e with μ(G−e) < μ(G).
pub fn mu_critical_edges(g: &Graph, caps: &Caps) -> Result<EdgeSet> {
    let (size, _) = mu(g, caps)?;
    let mut out = Vec::new();
    for &e in g.edges() {
        if mu_size(&g.delete_edge(e)?) < size {
            out.push(e);
        }
    }
    Ok(EdgeSet::from_edges(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Include/exclude over the edge list.
    fn brute_mu(g: &Graph) -> usize {
        fn go(edges: &[Edge], used: u64) -> usize {
            match edges.split_first() {
                None => 0,
                Some((e, rest)) => {
                    let skip = go(rest, used);
                    if used & e.ends().bits() == 0 {
                        skip.max(1 + go(rest, used | e.ends().bits()))
                    } else {
                        skip
                    }
                }
            }
        }
        go(g.edges(), 0)
    }

    fn brute_all_maximum(g: &Graph) -> Vec<Vec<Edge>> {
        let target = brute_mu(g);
        let mut out = Vec::new();
        let m = g.m();
        for mask in 0u64..1 << m {
            if mask.count_ones() as usize != target {
                continue;
            }
            let edges: Vec<Edge> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| g.edges()[k]).collect();
            if Matching::from_edges(edges.clone()).is_ok() {
                out.push(edges);
            }
        }
        out.sort();
        out
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn mu_examples() {
        let caps = Caps::default();
        assert_eq!(mu(&cycle(5), &caps).unwrap().0, 2);
        assert_eq!(mu(&complete(4), &caps).unwrap().0, 2);
        assert_eq!(mu(&Graph::empty(3), &caps).unwrap().0, 0);
        let (k, m) = mu(&path(7), &caps).unwrap();
        assert_eq!(k, 3);
        assert!(m.is_valid_in(&path(7)));
    }

    #[test]
    fn blossom_agrees_with_brute_force_on_random_graphs() {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let (k, m) = mu(&g, &caps).unwrap();
            assert_eq!(k, brute_mu(&g), "{g:?}");
            assert!(m.is_valid_in(&g));
        }
    }

    #[test]
    fn maximum_matching_enumeration() {
        let caps = Caps::default();
        assert_eq!(all_maximum_matchings(&complete(2), &caps).unwrap().len(), 1);
        assert_eq!(all_maximum_matchings(&path(3), &caps).unwrap().len(), 2);
        let c5 = all_maximum_matchings(&cycle(5), &caps).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|m| m.len() == 2 && m.saturated.len() == 4));
        assert_eq!(all_maximum_matchings(&Graph::empty(2), &caps).unwrap().len(), 1);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let g = random_graph(&mut rng, n, 0.4);
            let got: Vec<Vec<Edge>> = all_maximum_matchings(&g, &caps)
                .unwrap()
                .into_iter()
                .map(|m| m.edges.as_slice().to_vec())
                .collect();
            assert_eq!(got, brute_all_maximum(&g), "{g:?}");
        }
    }

    #[test]
    fn enumeration_caps() {
        let caps = Caps { matching_enum_n: 4, ..Caps::default() };
        assert!(all_maximum_matchings(&cycle(5), &caps).unwrap_err().is_capacity());
        let caps = Caps { matching_count: 3, ..Caps::default() };
        assert!(all_maximum_matchings(&cycle(5), &caps).unwrap_err().is_capacity());
    }

    #[test]
    fn from_into_examples() {
        let s = star(3);
        let one: VertexSet = [0].into_iter().collect();
        let leaves: VertexSet = [1, 2, 3].into_iter().collect();
        assert_eq!(matching_from_into(&s, one, leaves).unwrap().unwrap().len(), 1);
        assert_eq!(matching_from_into(&s, one, VertexSet::EMPTY).unwrap(), None);
        assert_eq!(matching_from_into(&s, leaves, one).unwrap(), None);
        assert!(matching_from_into(&s, one, one).is_err());
    }

    #[test]
    fn double_cover_examples() {
        assert_eq!(double_cover_mu(&complete(2)), 2);
        assert_eq!(double_cover_mu(&star(3)), 2);
        assert_eq!(double_cover_mu(&cycle(5)), 5);
    }

    #[test]
    fn critical_elements() {
        let caps = Caps::default();
        assert!(mu_critical_vertices(&cycle(5), &caps).unwrap().is_empty());
        assert_eq!(mu_critical_vertices(&star(3), &caps).unwrap(), VertexSet::singleton(0));
        assert_eq!(mu_critical_edges(&path(2), &caps).unwrap().len(), 1);
        assert!(mu_critical_edges(&cycle(4), &caps).unwrap().is_empty());
    }
}
