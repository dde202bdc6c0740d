use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::Result;
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};

/// A family of independent sets of one host graph, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentFamily {
    pub sets: Vec<VertexSet>,
    /// Common size of the members.
    pub cardinality: usize,
}

impl IndependentFamily {
    pub(crate) fn new(mut sets: Vec<VertexSet>, cardinality: usize) -> Self {
        sets.sort_by(|a, b| a.lex_cmp(*b));
        IndependentFamily { sets, cardinality }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Intersection of all members (∅ for an empty family).
    pub fn intersection(&self) -> VertexSet {
        let mut it = self.sets.iter();
        match it.next() {
            None => VertexSet::EMPTY,
            Some(&first) => it.fold(first, |acc, &s| acc.intersection(s)),
        }
    }

    pub fn union(&self) -> VertexSet {
        self.sets.iter().fold(VertexSet::EMPTY, |acc, &s| acc.union(s))
    }
}

/// Number of cliques in a greedy clique cover of `cand`; bounds α(G[cand]).
fn clique_cover_bound(adj: &[u64], cand: u64) -> usize {
    let mut rest = cand;
    let mut cliques = 0;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= !(1 << v);
        let mut grow = rest & adj[v];
        while grow != 0 {
            let w = grow.trailing_zeros() as usize;
            rest &= !(1 << w);
            grow &= adj[w];
        }
        cliques += 1;
    }
    cliques
}

struct MaxSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_len: usize,
}

impl MaxSearch<'_> {
    fn run(&mut self, cand: u64, cur: u64, cur_len: usize) {
        if cand == 0 {
            if cur_len > self.best_len {
                self.best = cur;
                self.best_len = cur_len;
            }
            return;
        }
        if cur_len + (cand.count_ones() as usize) <= self.best_len
            || cur_len + clique_cover_bound(self.adj, cand) <= self.best_len
        {
            return;
        }
        // A vertex of residual degree ≤ 1 belongs to some maximum set.
        let mut pick = None;
        let mut pick_deg = 0;
        let mut it = cand;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            let deg = (self.adj[v] & cand).count_ones();
            if deg <= 1 {
                self.run(cand & !(self.adj[v] | 1 << v), cur | 1 << v, cur_len + 1);
                return;
            }
            if pick.is_none() || deg > pick_deg {
                pick = Some(v);
                pick_deg = deg;
            }
        }
        let v = pick.expect("non-empty candidate set");
        self.run(cand & !(self.adj[v] | 1 << v), cur | 1 << v, cur_len + 1);
        self.run(cand & !(1 << v), cur, cur_len);
    }
}

/// α of the subgraph induced by `cand`, with a witness. No cap check.
pub(crate) fn alpha_in(adj: &[u64], cand: u64) -> (usize, u64) {
    let mut search = MaxSearch {
        adj,
        best: 0,
        best_len: 0,
    };
    search.run(cand, 0, 0);
    (search.best_len, search.best)
}

/// Independence number α(G) and one maximum independent set.
pub fn alpha(g: &Graph, caps: &Caps) -> Result<(usize, VertexSet)> {
    caps.check("solver_n", caps.solver_n, g.n())?;
    let (a, w) = alpha_in(g.masks(), g.vertices().bits());
    Ok((a, VertexSet::from_bits(w)))
}

/// The lexicographically smallest maximum independent set (by sorted member list).
pub fn lex_min_maximum_independent_set(g: &Graph, caps: &Caps) -> Result<VertexSet> {
    let (mut need, _) = alpha(g, caps)?;
    let adj = g.masks();
    let mut avail = g.vertices().bits();
    let mut chosen = VertexSet::EMPTY;
    while need > 0 {
        let mut found = false;
        for v in VertexSet::from_bits(avail).iter() {
            let above = if v == 63 { 0 } else { !0u64 << (v + 1) };
            let rest = avail & above & !adj[v];
            if 1 + alpha_in(adj, rest).0 == need {
                chosen.insert(v);
                avail = rest;
                need -= 1;
                found = true;
                break;
            }
        }
        assert!(found, "greedy lexicographic search lost the optimum");
    }
    Ok(chosen)
}

/// Every independent set of size `target` inside `cand`, where `target` is
/// α of the graph (so such sets leave no candidate behind).
fn enumerate_maximum(
    adj: &[u64],
    cand: u64,
    cur: u64,
    cur_len: usize,
    target: usize,
    out: &mut Vec<VertexSet>,
) {
    if cand == 0 {
        if cur_len == target {
            out.push(VertexSet::from_bits(cur));
        }
        return;
    }
    if cur_len + clique_cover_bound(adj, cand) < target {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    enumerate_maximum(adj, cand & !(adj[v] | 1 << v), cur | 1 << v, cur_len + 1, target, out);
    enumerate_maximum(adj, cand & !(1 << v), cur, cur_len, target, out);
}

/// Ω(G): every maximum independent set, sorted lexicographically.
pub fn omega_family(g: &Graph, caps: &Caps) -> Result<IndependentFamily> {
    caps.check("enum_n", caps.enum_n, g.n())?;
    let (a, _) = alpha(g, caps)?;
    let mut sets = Vec::new();
    enumerate_maximum(g.masks(), g.vertices().bits(), 0, 0, a, &mut sets);
    Ok(IndependentFamily::new(sets, a))
}

/// core(G) = ⋂ Ω(G).
pub fn core(g: &Graph, caps: &Caps) -> Result<VertexSet> {
    Ok(omega_family(g, caps)?.intersection())
}

/// corona(G) = ⋃ Ω(G).
pub fn corona(g: &Graph, caps: &Caps) -> Result<VertexSet> {
    Ok(omega_family(g, caps)?.union())
}

/// Vertices v with α(G−v) < α(G).
pub fn alpha_critical_vertices(g: &Graph, caps: &Caps) -> Result<VertexSet> {
    let (a, _) = alpha(g, caps)?;
    let all = g.vertices().bits();
    Ok(g
        .vertices()
        .iter()
        .filter(|&v| alpha_in(g.masks(), all & !(1 << v)).0 < a)
        .collect())
}

/// Edges e with α(G−e) > α(G).
pub fn alpha_critical_edges(g: &Graph, caps: &Caps) -> Result<EdgeSet> {
    let (a, _) = alpha(g, caps)?;
    let mut out: Vec<Edge> = Vec::new();
    for &e in g.edges() {
        let h = g.delete_edge(e)?;
        if alpha(&h, caps)?.0 > a {
            out.push(e);
        }
    }
    Ok(EdgeSet::from_edges(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};

    fn brute_alpha(g: &Graph) -> usize {
        (0u64..1 << g.n())
            .map(VertexSet::from_bits)
            .filter(|&s| g.independent(s))
            .map(|s| s.len())
            .max()
            .unwrap()
    }

    fn brute_omega(g: &Graph) -> Vec<VertexSet> {
        let a = brute_alpha(g);
        let mut v: Vec<_> = (0u64..1 << g.n())
            .map(VertexSet::from_bits)
            .filter(|&s| g.independent(s) && s.len() == a)
            .collect();
        v.sort_by(|x, y| x.lex_cmp(*y));
        v
    }

    #[test]
    fn alpha_examples() {
        let caps = Caps::default();
        assert_eq!(alpha(&cycle(5), &caps).unwrap().0, 2);
        assert_eq!(alpha(&Graph::empty(6), &caps).unwrap().0, 6);
        assert_eq!(alpha(&complete(7), &caps).unwrap().0, 1);
        assert_eq!(alpha(&star(4), &caps).unwrap().0, 4);
        assert_eq!(alpha(&Graph::empty(0), &caps).unwrap().0, 0);
        let (a, w) = alpha(&path(9), &caps).unwrap();
        assert_eq!(a, 5);
        assert!(path(9).independent(w));
    }

    #[test]
    fn alpha_respects_solver_cap() {
        let caps = Caps { solver_n: 5, ..Caps::default() };
        assert!(alpha(&cycle(6), &caps).unwrap_err().is_capacity());
    }

    #[test]
    fn omega_examples() {
        let caps = Caps::default();
        let fam = omega_family(&cycle(5), &caps).unwrap();
        assert_eq!(fam.len(), 5);
        assert_eq!(fam.intersection(), VertexSet::EMPTY);
        assert_eq!(fam.union(), VertexSet::full(5));
        assert_eq!(core(&complete(2), &caps).unwrap(), VertexSet::EMPTY);
        assert_eq!(corona(&complete(2), &caps).unwrap(), VertexSet::full(2));
        assert_eq!(core(&star(3), &caps).unwrap(), [1, 2, 3].into_iter().collect());
    }

    #[test]
    fn critical_elements_of_cycles() {
        let caps = Caps::default();
        let c5 = cycle(5);
        assert_eq!(alpha_critical_edges(&c5, &caps).unwrap().len(), 5);
        assert!(alpha_critical_edges(&cycle(4), &caps).unwrap().is_empty());
        assert!(alpha_critical_vertices(&c5, &caps).unwrap().is_empty());
    }

    #[test]
    fn exhaustive_small_graphs_match_brute_force() {
        let caps = Caps::default();
        for n in 0..=6usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            for mask in 0u32..1 << pairs.len() {
                let g = Graph::new(
                    n,
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p),
                )
                .unwrap();
                let fam = omega_family(&g, &caps).unwrap();
                assert_eq!(fam.sets, brute_omega(&g), "{g:?}");
                assert_eq!(alpha(&g, &caps).unwrap().0, fam.cardinality);
                assert_eq!(lex_min_maximum_independent_set(&g, &caps).unwrap(), fam.sets[0]);
                assert_eq!(alpha_critical_vertices(&g, &caps).unwrap(), fam.intersection());
            }
        }
    }
}
