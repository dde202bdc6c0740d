//! Critical independent sets and the sets built from them.
//!
//! Everything here is ground-truthed by exhaustive search over independent
//! sets. The bipartite double cover gives an independent route to d(G)
//! (`d(G) = n − μ(B)`), used only as a cross-check.

use crate::caps::Caps;
use crate::error::{KefError, Result};
use crate::graph::{Graph, VertexSet};
use crate::solvers::{double_cover_mu, IndependentFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalLandscape {
    /// Critical difference d(G) = max d(I) over independent I (∅ included).
    pub d: i64,
    /// Intersection of all critical independent sets.
    pub ker: VertexSet,
    /// Union of all critical independent sets; may be non-independent.
    pub diadem: VertexSet,
    /// Intersection of the maximum critical independent sets.
    pub nucleus: VertexSet,
    /// Size of a maximum critical independent set.
    pub alpha_prime: usize,
    /// MaxCritIndep(G).
    pub max_crit_family: IndependentFamily,
    pub crit_count: usize,
    /// Every critical independent set, sorted lexicographically.
    pub critical_sets: Vec<VertexSet>,
}

impl CriticalLandscape {
    /// ε(G) = |ker(G)|.
    pub fn epsilon(&self) -> usize {
        self.ker.len()
    }

    /// β(G) = |diadem(G)|.
    pub fn beta(&self) -> usize {
        self.diadem.len()
    }
}

struct DiffSearch<'a> {
    adj: &'a [u64],
    best: i64,
}

impl DiffSearch<'_> {
    fn run(&mut self, cand: u64, cur_len: i64, nbhd: u64) {
        let nb = nbhd.count_ones() as i64;
        if cand == 0 {
            self.best = self.best.max(cur_len - nb);
            return;
        }
        if cur_len + cand.count_ones() as i64 - nb <= self.best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        self.run(cand & !(self.adj[v] | 1 << v), cur_len + 1, nbhd | self.adj[v]);
        self.run(cand & !(1 << v), cur_len, nbhd);
    }
}

/// d(G) by branch-and-bound over independent sets.
pub fn critical_difference(g: &Graph, caps: &Caps) -> Result<i64> {
    caps.check("enum_n", caps.enum_n, g.n())?;
    let mut search = DiffSearch {
        adj: g.masks(),
        best: 0,
    };
    search.run(g.vertices().bits(), 0, 0);
    Ok(search.best)
}

/// d(G) through the bipartite double cover: n − μ(B).
pub fn critical_difference_via_double_cover(g: &Graph) -> i64 {
    g.n() as i64 - double_cover_mu(g) as i64
}

struct CritEnum<'a> {
    adj: &'a [u64],
    target: i64,
    limit: usize,
    out: Vec<VertexSet>,
}

impl CritEnum<'_> {
    fn run(&mut self, cand: u64, cur: u64, nbhd: u64) -> Result<()> {
        let cur_len = cur.count_ones() as i64;
        let nb = nbhd.count_ones() as i64;
        if cand == 0 {
            if cur_len - nb == self.target {
                self.out.push(VertexSet::from_bits(cur));
                if self.out.len() > self.limit {
                    return Err(KefError::Capacity {
                        what: "crit_count",
                        limit: self.limit,
                        actual: self.out.len(),
                    });
                }
            }
            return Ok(());
        }
        if cur_len + cand.count_ones() as i64 - nb < self.target {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        self.run(cand & !(self.adj[v] | 1 << v), cur | 1 << v, nbhd | self.adj[v])?;
        self.run(cand & !(1 << v), cur, nbhd)
    }
}

/// Every critical independent set, sorted lexicographically, with d(G).
pub fn critical_sets(g: &Graph, caps: &Caps) -> Result<(i64, Vec<VertexSet>)> {
    let d = critical_difference(g, caps)?;
    let mut e = CritEnum {
        adj: g.masks(),
        target: d,
        limit: caps.crit_count,
        out: Vec::new(),
    };
    e.run(g.vertices().bits(), 0, 0)?;
    let mut sets = e.out;
    sets.sort_by(|a, b| a.lex_cmp(*b));
    Ok((d, sets))
}

pub fn critical_landscape(g: &Graph, caps: &Caps) -> Result<CriticalLandscape> {
    let (d, sets) = critical_sets(g, caps)?;
    let ker = sets
        .iter()
        .copied()
        .reduce(|a, b| a.intersection(b))
        .expect("some independent set attains d(G)");
    let diadem = sets.iter().fold(VertexSet::EMPTY, |acc, &s| acc.union(s));
    let alpha_prime = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let max_crit: Vec<VertexSet> = sets.iter().copied().filter(|s| s.len() == alpha_prime).collect();
    let max_crit_family = IndependentFamily::new(max_crit, alpha_prime);
    Ok(CriticalLandscape {
        d,
        ker,
        diadem,
        nucleus: max_crit_family.intersection(),
        alpha_prime,
        crit_count: sets.len(),
        max_crit_family,
        critical_sets: sets,
    })
}
