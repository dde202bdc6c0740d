//! Odd-cycle structure: bipartiteness, odd-cycle census, almost-bipartite
//! classification, the pendant components D_y and the V(C) / N[diadem] split.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::critical::CriticalLandscape;
use crate::error::{KefError, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};

/// A cyclically ordered odd cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OddCycleWitness {
    pub vertices: Vec<usize>,
}

impl OddCycleWitness {
    /// Validate that `vertices` is an odd cycle of `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        let k = vertices.len();
        if k < 3 || k.is_multiple_of(2) {
            return Err(KefError::input(format!("cycle of length {k} is not an odd cycle")));
        }
        let set: VertexSet = vertices.iter().copied().filter(|&v| v < g.n()).collect();
        if set.len() != k {
            return Err(KefError::input("cycle vertices must be distinct and in range"));
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !g.has_edge(a, b) {
                return Err(KefError::input(format!("{a}-{b} is not an edge")));
            }
        }
        Ok(OddCycleWitness { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn edges(&self) -> EdgeSet {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Two-colouring; the set holds the vertices of colour 1.
    Bipartite(VertexSet),
    OddCycle(OddCycleWitness),
}

/// BFS two-colouring, returning an odd cycle on the first conflict.
pub fn is_bipartite(g: &Graph) -> Bipartiteness {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return Bipartiteness::OddCycle(cycle_through(u, w, &parent, &depth));
                }
            }
        }
    }
    Bipartiteness::Bipartite((0..n).filter(|&v| color[v] == 1).collect())
}

/// Close the BFS-tree paths from `u` and `w` (same depth) at their meeting point.
fn cycle_through(mut u: usize, mut w: usize, parent: &[usize], depth: &[usize]) -> OddCycleWitness {
    debug_assert_eq!(depth[u], depth[w]);
    let mut left = vec![u];
    let mut right = vec![w];
    while u != w {
        u = parent[u];
        w = parent[w];
        left.push(u);
        right.push(w);
    }
    right.pop();
    left.reverse();
    // left: lca … u, right: w … (child of lca)
    left.extend(right);
    OddCycleWitness { vertices: left }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycleCensus {
    /// Odd simple cycles found, saturating at the requested limit.
    pub count: usize,
    pub saturated: bool,
    pub witnesses: Vec<OddCycleWitness>,
}

/// Edge blocks (biconnected components) as lists of edges.
fn blocks(g: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<Edge>,
        out: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut State, u: usize, parent: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.g.degree(u) {
            let w = s.g.neighbors(u)[i];
            if s.disc[w] == 0 {
                s.stack.push(Edge::new(u, w));
                dfs(s, w, u);
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == Edge::new(u, w) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if w != parent && s.disc[w] < s.disc[u] {
                s.stack.push(Edge::new(u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut s = State {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..g.n() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

struct CycleSearch {
    adj: Vec<u64>,
    limit: usize,
    work: usize,
    work_cap: usize,
    path: Vec<usize>,
    found: Vec<OddCycleWitness>,
}

impl CycleSearch {
    /// Extend the path (which starts at its minimum vertex `s`) from `u`.
    /// Returns Ok(true) once `limit` odd cycles are known.
    fn extend(&mut self, s: usize, u: usize, on_path: u64) -> Result<bool> {
        self.work += 1;
        if self.work > self.work_cap {
            return Err(KefError::Capacity {
                what: "cycle_work",
                limit: self.work_cap,
                actual: self.work,
            });
        }
        let mut nbrs = self.adj[u];
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if w == s {
                let len = self.path.len();
                if len >= 3 && len % 2 == 1 && self.path[1] < u {
                    self.found.push(OddCycleWitness {
                        vertices: self.path.clone(),
                    });
                    if self.found.len() >= self.limit {
                        return Ok(true);
                    }
                }
            } else if w > s && on_path >> w & 1 == 0 {
                self.path.push(w);
                let done = self.extend(s, w, on_path | 1 << w)?;
                self.path.pop();
                if done {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Count odd simple cycles, stopping once `limit` are found.
///
/// Cycles live inside single blocks, and two-colourable blocks carry none,
/// so only non-bipartite blocks are searched.
pub fn odd_cycle_census(g: &Graph, limit: usize, caps: &Caps) -> Result<OddCycleCensus> {
    if limit < 2 {
        return Err(KefError::input("census limit must be at least 2"));
    }
    let mut search = CycleSearch {
        adj: Vec::new(),
        limit,
        work: 0,
        work_cap: caps.cycle_work,
        path: Vec::new(),
        found: Vec::new(),
    };
    for block in blocks(g) {
        let mut adj = vec![0u64; g.n()];
        for e in &block {
            adj[e.0] |= 1 << e.1;
            adj[e.1] |= 1 << e.0;
        }
        let sub = Graph::from_masks(g.n(), adj.clone());
        if matches!(is_bipartite(&sub), Bipartiteness::Bipartite(_)) {
            continue;
        }
        search.adj = adj;
        let members: VertexSet = block.iter().flat_map(|e| [e.0, e.1]).collect();
        for s in members.iter() {
            search.path.clear();
            search.path.push(s);
            let done = search.extend(s, s, 1 << s)?;
            if done {
                return Ok(OddCycleCensus {
                    count: limit,
                    saturated: true,
                    witnesses: search.found,
                });
            }
        }
    }
    Ok(OddCycleCensus {
        count: search.found.len(),
        saturated: false,
        witnesses: search.found,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "odd_cycle", rename_all = "snake_case")]
pub enum Parity {
    Bipartite,
    AlmostBipartite(OddCycleWitness),
    MultiOdd,
}

impl Parity {
    pub fn name(&self) -> &'static str {
        match self {
            Parity::Bipartite => "bipartite",
            Parity::AlmostBipartite(_) => "almost_bipartite",
            Parity::MultiOdd => "multi_odd",
        }
    }

    pub fn odd_cycle(&self) -> Option<&OddCycleWitness> {
        match self {
            Parity::AlmostBipartite(c) => Some(c),
            _ => None,
        }
    }

    /// Bipartite or almost bipartite.
    pub fn has_at_most_one_odd_cycle(&self) -> bool {
        !matches!(self, Parity::MultiOdd)
    }
}

pub fn classify_parity(g: &Graph, caps: &Caps) -> Result<Parity> {
    if let Bipartiteness::Bipartite(_) = is_bipartite(g) {
        return Ok(Parity::Bipartite);
    }
    let census = odd_cycle_census(g, 2, caps)?;
    Ok(match census.count {
        0 => unreachable!("a non-bipartite graph has an odd cycle"),
        1 => Parity::AlmostBipartite(census.witnesses.into_iter().next().expect("one witness")),
        _ => Parity::MultiOdd,
    })
}

/// D_y: the component of G − E(C) containing the cycle vertex y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantComponent {
    pub root: usize,
    pub vertices: VertexSet,
    pub edges: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantDecomposition {
    /// One entry per cycle vertex, in cycle order.
    pub components: Vec<PendantComponent>,
    /// N1(C): vertices off the cycle with a neighbour on it.
    pub n1: VertexSet,
}

pub fn pendant_decomposition(g: &Graph, cycle: &OddCycleWitness) -> Result<PendantDecomposition> {
    let cycle = OddCycleWitness::new(g, cycle.vertices.clone())?;
    let cycle_edges = cycle.edges();
    let mut stripped = g.clone();
    for e in cycle_edges.iter() {
        stripped = stripped.delete_edge(e)?;
    }
    let comps = stripped.components();
    let components = cycle
        .vertices
        .iter()
        .map(|&y| {
            let vertices = *comps.iter().find(|c| c.contains(y)).expect("every vertex has a component");
            let edges = stripped
                .edges()
                .iter()
                .copied()
                .filter(|e| vertices.contains(e.0))
                .collect();
            PendantComponent {
                root: y,
                vertices,
                edges,
            }
        })
        .collect();
    let on_cycle = cycle.vertex_set();
    Ok(PendantDecomposition {
        components,
        n1: g.open_nbhd(on_cycle).difference(on_cycle),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PartitionVerdict {
    NotApplicable { reason: String },
    Checked {
        cycle_block: VertexSet,
        diadem_block: VertexSet,
        disjoint: bool,
        covering: bool,
    },
}

impl PartitionVerdict {
    pub fn holds(&self) -> Option<bool> {
        match self {
            PartitionVerdict::NotApplicable { .. } => None,
            PartitionVerdict::Checked {
                disjoint, covering, ..
            } => Some(*disjoint && *covering),
        }
    }
}

/// Check that V(C) and N[diadem] partition V for an almost bipartite non-KE graph.
pub fn partition_check(
    g: &Graph,
    parity: &Parity,
    is_ke: bool,
    landscape: &CriticalLandscape,
) -> PartitionVerdict {
    let Some(cycle) = parity.odd_cycle() else {
        return PartitionVerdict::NotApplicable {
            reason: format!("graph is {}", parity.name()),
        };
    };
    if is_ke {
        return PartitionVerdict::NotApplicable {
            reason: "graph is König-Egerváry".into(),
        };
    }
    let cycle_block = cycle.vertex_set();
    let diadem_block = landscape.diadem.union(g.open_nbhd(landscape.diadem));
    PartitionVerdict::Checked {
        cycle_block,
        diadem_block,
        disjoint: cycle_block.is_disjoint(diadem_block),
        covering: cycle_block.union(diadem_block) == g.vertices(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::critical_landscape;
    use crate::graph::{cycle, path};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Count odd cycles as edge subsets that are connected and 2-regular.
    fn brute_odd_cycles(g: &Graph) -> usize {
        let m = g.m();
        let mut count = 0;
        for mask in 1u32..1 << m {
            let k = mask.count_ones() as usize;
            if k < 3 || k.is_multiple_of(2) {
                continue;
            }
            let chosen: Vec<Edge> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect();
            let mut deg = vec![0; g.n()];
            for e in &chosen {
                deg[e.0] += 1;
                deg[e.1] += 1;
            }
            if deg.iter().any(|&d| d != 0 && d != 2) {
                continue;
            }
            let verts: VertexSet = chosen.iter().flat_map(|e| [e.0, e.1]).collect();
            if verts.len() != k {
                continue;
            }
            let h = Graph::new(g.n(), chosen.iter().map(|e| (e.0, e.1))).unwrap();
            let (sub, _) = h.induced(verts).unwrap();
            if sub.is_connected() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn bipartite_examples() {
        assert!(matches!(is_bipartite(&cycle(4)), Bipartiteness::Bipartite(_)));
        assert!(matches!(is_bipartite(&Graph::empty(3)), Bipartiteness::Bipartite(_)));
        match is_bipartite(&cycle(5)) {
            Bipartiteness::OddCycle(c) => {
                assert_eq!(c.len(), 5);
                OddCycleWitness::new(&cycle(5), c.vertices).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn census_examples() {
        let caps = Caps::default();
        assert_eq!(odd_cycle_census(&path(6), 2, &caps).unwrap().count, 0);
        assert_eq!(odd_cycle_census(&cycle(5), 2, &caps).unwrap().count, 1);
        let two = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let c = odd_cycle_census(&two, 2, &caps).unwrap();
        assert_eq!((c.count, c.saturated), (2, true));
        assert!(odd_cycle_census(&two, 1, &caps).is_err());
    }

    #[test]
    fn census_work_cap() {
        let caps = Caps { cycle_work: 3, ..Caps::default() };
        assert!(odd_cycle_census(&crate::graph::complete(6), 100, &caps)
            .unwrap_err()
            .is_capacity());
    }

    #[test]
    fn census_matches_brute_force() {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(3..=7);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let census = odd_cycle_census(&g, 10_000, &caps).unwrap();
            assert_eq!(census.count, brute_odd_cycles(&g), "{g:?}");
            for w in &census.witnesses {
                OddCycleWitness::new(&g, w.vertices.clone()).unwrap();
            }
            let parity = classify_parity(&g, &caps).unwrap();
            let expected = match census.count {
                0 => "bipartite",
                1 => "almost_bipartite",
                _ => "multi_odd",
            };
            assert_eq!(parity.name(), expected);
        }
    }

    #[test]
    fn parity_examples() {
        let caps = Caps::default();
        assert_eq!(classify_parity(&cycle(6), &caps).unwrap(), Parity::Bipartite);
        assert_eq!(classify_parity(&cycle(7), &caps).unwrap().name(), "almost_bipartite");
    }

    #[test]
    fn pendant_examples() {
        let c5 = cycle(5);
        let cyc = OddCycleWitness::new(&c5, vec![0, 1, 2, 3, 4]).unwrap();
        let dec = pendant_decomposition(&c5, &cyc).unwrap();
        assert!(dec.components.iter().all(|c| c.vertices == VertexSet::singleton(c.root)));
        assert!(dec.n1.is_empty());

        // Triangle 0-1-2 with the path 2-3-4 hanging at y = 2.
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let tri = OddCycleWitness::new(&g, vec![0, 1, 2]).unwrap();
        let dec = pendant_decomposition(&g, &tri).unwrap();
        let dy = &dec.components[2];
        assert_eq!(dy.vertices, [2, 3, 4].into_iter().collect());
        assert_eq!(dy.edges.len(), 2);
        assert_eq!(dec.n1, VertexSet::singleton(3));

        let bogus = OddCycleWitness { vertices: vec![0, 1, 3] };
        assert!(pendant_decomposition(&g, &bogus).is_err());
    }

    #[test]
    fn partition_examples() {
        let caps = Caps::default();
        let c5 = cycle(5);
        let parity = classify_parity(&c5, &caps).unwrap();
        let l = critical_landscape(&c5, &caps).unwrap();
        match partition_check(&c5, &parity, false, &l) {
            PartitionVerdict::Checked {
                cycle_block,
                diadem_block,
                disjoint,
                covering,
            } => {
                assert_eq!(cycle_block, VertexSet::full(5));
                assert!(diadem_block.is_empty() && disjoint && covering);
            }
            other => panic!("{other:?}"),
        }
        let c4 = cycle(4);
        let l4 = critical_landscape(&c4, &caps).unwrap();
        let p4 = classify_parity(&c4, &caps).unwrap();
        assert_eq!(partition_check(&c4, &p4, true, &l4).holds(), None);
    }
}
