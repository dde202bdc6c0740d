//! Graph sources for verification and fuzzing.
//!
//! A [`GenSpec`] is written `kind:key=value,...`, e.g.
//! `cycle_plus_trees:k=2,n=12,count=50,seed=7` or `fixture:fig11222`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{KefError, Result};
use crate::fixtures::fixture;
use crate::graph::{cycle, Graph, MAX_VERTICES};
use crate::odd::{classify_parity, Parity};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    /// C_{2k+1}.
    OddCycle { k: usize },
    /// C_{2k+1} with n − 2k − 1 further vertices hung on it as random trees.
    CyclePlusTrees { k: usize, n: usize, count: usize, seed: u64 },
    /// Random bipartite graph plus one odd chord, kept only if almost bipartite.
    AlmostBipartiteRandom { n: usize, p: f64, count: usize, seed: u64 },
    /// Every labelled graph on n vertices.
    Exhaustive { n: usize, connected: bool },
    Fixture { name: String },
    /// Plain G(n, p), no structural filter.
    Gnp { n: usize, p: f64, count: usize, seed: u64 },
}

/// Largest n accepted by the exhaustive enumerator.
pub const EXHAUSTIVE_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub id: String,
    pub graph: Graph,
}

fn bad(msg: impl Into<String>) -> KefError {
    KefError::input(msg)
}

impl FromStr for GenSpec {
    type Err = KefError;

    fn from_str(s: &str) -> Result<GenSpec> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut kv = std::collections::BTreeMap::new();
        let mut bare = None;
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some((k, v)) => {
                    if kv.insert(k.trim(), v.trim()).is_some() {
                        return Err(bad(format!("repeated parameter `{k}` in {s:?}")));
                    }
                }
                None if bare.is_none() => bare = Some(part),
                None => return Err(bad(format!("malformed parameter `{part}` in {s:?}"))),
            }
        }
        let mut take = |key: &str| kv.remove(key);
        fn num<T: FromStr>(key: &str, v: Option<&str>, default: Option<T>) -> Result<T> {
            match v {
                Some(v) => v.parse().map_err(|_| bad(format!("parameter `{key}`: cannot parse {v:?}"))),
                None => default.ok_or_else(|| bad(format!("missing parameter `{key}`"))),
            }
        }
        let spec = match kind.trim() {
            "odd_cycle" => GenSpec::OddCycle {
                k: num("k", take("k").or(bare.take()), None)?,
            },
            "cycle_plus_trees" => GenSpec::CyclePlusTrees {
                k: num("k", take("k"), None)?,
                n: num("n", take("n"), None)?,
                count: num("count", take("count"), Some(1))?,
                seed: num("seed", take("seed"), Some(0))?,
            },
            "almost_bipartite_random" => GenSpec::AlmostBipartiteRandom {
                n: num("n", take("n"), None)?,
                p: num("p", take("p"), Some(0.3))?,
                count: num("count", take("count"), Some(1))?,
                seed: num("seed", take("seed"), Some(0))?,
            },
            "exhaustive" => GenSpec::Exhaustive {
                n: num("n", take("n").or(bare.take()), None)?,
                connected: num("connected", take("connected"), Some(false))?,
            },
            "fixture" => GenSpec::Fixture {
                name: take("name")
                    .or(bare.take())
                    .ok_or_else(|| bad("fixture needs a name"))?
                    .to_string(),
            },
            "gnp" => GenSpec::Gnp {
                n: num("n", take("n"), None)?,
                p: num("p", take("p"), Some(0.3))?,
                count: num("count", take("count"), Some(1))?,
                seed: num("seed", take("seed"), Some(0))?,
            },
            other => return Err(bad(format!("unknown generator kind {other:?}"))),
        };
        if let Some(b) = bare {
            return Err(bad(format!("unexpected parameter `{b}` for {kind}")));
        }
        if let Some(k) = kv.keys().next() {
            return Err(bad(format!("unknown parameter `{k}` for {kind}")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::OddCycle { k } => write!(f, "odd_cycle:k={k}"),
            GenSpec::CyclePlusTrees { k, n, count, seed } => {
                write!(f, "cycle_plus_trees:k={k},n={n},count={count},seed={seed}")
            }
            GenSpec::AlmostBipartiteRandom { n, p, count, seed } => {
                write!(f, "almost_bipartite_random:n={n},p={p},count={count},seed={seed}")
            }
            GenSpec::Exhaustive { n, connected } => write!(f, "exhaustive:n={n},connected={connected}"),
            GenSpec::Fixture { name } => write!(f, "fixture:{name}"),
            GenSpec::Gnp { n, p, count, seed } => write!(f, "gnp:n={n},p={p},count={count},seed={seed}"),
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(bad(format!("edge probability {p} outside [0, 1]")))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n <= MAX_VERTICES {
        Ok(())
    } else {
        Err(bad(format!("n = {n} exceeds {MAX_VERTICES} vertices")))
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GenSpec::OddCycle { k } => {
                if *k < 1 {
                    return Err(bad("k must be at least 1"));
                }
                check_n(2 * k + 1)
            }
            GenSpec::CyclePlusTrees { k, n, .. } => {
                if *k < 1 {
                    return Err(bad("k must be at least 1"));
                }
                if *n < 2 * k + 1 {
                    return Err(bad(format!("n = {n} is smaller than the cycle length {}", 2 * k + 1)));
                }
                check_n(*n)
            }
            GenSpec::AlmostBipartiteRandom { n, p, .. } => {
                if *n < 3 {
                    return Err(bad("almost_bipartite_random needs n ≥ 3"));
                }
                check_n(*n)?;
                check_p(*p)
            }
            GenSpec::Exhaustive { n, .. } => {
                if *n > EXHAUSTIVE_MAX_N {
                    Err(bad(format!("exhaustive enumeration supports n ≤ {EXHAUSTIVE_MAX_N}")))
                } else {
                    Ok(())
                }
            }
            GenSpec::Fixture { name } => fixture(name).map(|_| ()),
            GenSpec::Gnp { n, p, .. } => {
                check_n(*n)?;
                check_p(*p)
            }
        }
    }
}

/// Lazily produced graphs. Random kinds yield an error item if a generated
/// graph fails its structural re-check.
pub type GraphStream = Box<dyn Iterator<Item = Result<Generated>> + Send>;

pub fn generate(spec: &GenSpec, caps: &Caps) -> Result<GraphStream> {
    spec.validate()?;
    let caps = *caps;
    Ok(match spec.clone() {
        GenSpec::OddCycle { k } => Box::new(std::iter::once(Ok(Generated {
            id: format!("odd_cycle-k{k}"),
            graph: cycle(2 * k + 1),
        }))),
        GenSpec::CyclePlusTrees { k, n, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..count).map(move |i| {
                let g = cycle_plus_trees(k, n, &mut rng);
                checked_almost_bipartite(format!("cycle_plus_trees-s{seed}-{i}"), g, &caps)
            }))
        }
        GenSpec::AlmostBipartiteRandom { n, p, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..count).map(move |i| {
                let g = almost_bipartite_random(n, p, &mut rng, &caps)?;
                checked_almost_bipartite(format!("almost_bipartite_random-s{seed}-{i}"), g, &caps)
            }))
        }
        GenSpec::Exhaustive { n, connected } => Box::new(Exhaustive::new(n, connected).map(Ok)),
        GenSpec::Fixture { name } => {
            let fx = fixture(&name)?;
            Box::new(std::iter::once(Ok(Generated {
                id: fx.graph_id(),
                graph: fx.graph,
            })))
        }
        GenSpec::Gnp { n, p, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..count).map(move |i| {
                Ok(Generated {
                    id: format!("gnp-s{seed}-{i}"),
                    graph: gnp(n, p, &mut rng),
                })
            }))
        }
    })
}

/// Kinds accepted by [`random_mix`].
pub const RANDOM_KINDS: &[&str] = &["odd_cycle", "cycle_plus_trees", "almost_bipartite_random", "gnp"];

/// `count` graphs cycling through `kinds`, each with a random order in
/// `3..=n_max` and its own seed drawn from `seed`.
pub fn random_mix(kinds: &[String], n_max: usize, count: usize, seed: u64, caps: &Caps) -> Result<GraphStream> {
    if kinds.is_empty() {
        return Err(bad("no generator kinds given"));
    }
    if let Some(k) = kinds.iter().find(|k| !RANDOM_KINDS.contains(&k.as_str())) {
        return Err(bad(format!("kind {k:?} cannot be sampled (use one of {})", RANDOM_KINDS.join(", "))));
    }
    if !(3..=MAX_VERTICES).contains(&n_max) {
        return Err(bad(format!("n-max must lie in 3..={MAX_VERTICES}")));
    }
    let kinds = kinds.to_vec();
    let caps = *caps;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Box::new((0..count).map(move |i| {
        let kind = kinds[i % kinds.len()].as_str();
        let n = rng.gen_range(3..=n_max);
        let sub = rng.gen::<u64>();
        let spec = match kind {
            "odd_cycle" => GenSpec::OddCycle { k: (n - 1) / 2 },
            "cycle_plus_trees" => GenSpec::CyclePlusTrees {
                k: rng.gen_range(1..=(n - 1) / 2),
                n,
                count: 1,
                seed: sub,
            },
            "almost_bipartite_random" => GenSpec::AlmostBipartiteRandom {
                n,
                p: (2.0 / n as f64).min(0.5),
                count: 1,
                seed: sub,
            },
            _ => GenSpec::Gnp {
                n,
                p: rng.gen_range(0.1..0.6),
                count: 1,
                seed: sub,
            },
        };
        let g = generate(&spec, &caps)?.next().expect("one graph per spec")?;
        Ok(Generated {
            id: format!("random-s{seed}-{i}-{kind}-n{}", g.graph.n()),
            graph: g.graph,
        })
    })))
}

fn checked_almost_bipartite(id: String, graph: Graph, caps: &Caps) -> Result<Generated> {
    match classify_parity(&graph, caps)? {
        Parity::AlmostBipartite(_) => Ok(Generated { id, graph }),
        p => Err(KefError::Domain(format!("{id}: generator produced a {} graph", p.name()))),
    }
}

/// C_{2k+1} on a random subset of labels, with the remaining vertices
/// attached one at a time to a uniformly chosen earlier vertex.
fn cycle_plus_trees(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let len = 2 * k + 1;
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (labels[i], labels[(i + 1) % len])).collect();
    for i in len..n {
        let parent = labels[rng.gen_range(0..i)];
        edges.push((parent, labels[i]));
    }
    Graph::new(n, edges).expect("tree attachment keeps the graph simple")
}

fn almost_bipartite_random(n: usize, p: f64, rng: &mut ChaCha8Rng, caps: &Caps) -> Result<Graph> {
    const ATTEMPTS: usize = 10_000;
    for _ in 0..ATTEMPTS {
        let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let same: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| side[u] == side[v])
            .collect();
        let Some(&chord) = same.choose(rng) else { continue };
        edges.push(chord);
        let g = Graph::new(n, edges).expect("distinct pairs");
        if matches!(classify_parity(&g, caps), Ok(Parity::AlmostBipartite(_))) {
            return Ok(g);
        }
    }
    Err(KefError::Domain(format!(
        "no almost bipartite graph found in {ATTEMPTS} attempts (n = {n}, p = {p})"
    )))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("distinct pairs")
}

/// All labelled graphs on n vertices, in order of their edge bitmask.
pub struct Exhaustive {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
    connected: bool,
}

impl Exhaustive {
    pub fn new(n: usize, connected: bool) -> Exhaustive {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Exhaustive {
            n,
            end: 1u64 << pairs.len(),
            pairs,
            next: 0,
            connected,
        }
    }

    fn adjacency(&self, mask: u64) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        adj
    }
}

fn connected_masks(adj: &[u64]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let full = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == full
}

impl Iterator for Exhaustive {
    type Item = Generated;

    fn next(&mut self) -> Option<Generated> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let adj = self.adjacency(mask);
            if self.connected && !connected_masks(&adj) {
                continue;
            }
            return Some(Generated {
                id: format!("exhaustive-n{}-{mask}", self.n),
                graph: Graph::from_masks(self.n, adj),
            });
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{alpha, mu};

    fn all(spec: &str) -> Vec<Generated> {
        generate(&spec.parse().unwrap(), &Caps::default())
            .unwrap()
            .collect::<Result<Vec<_>>>()
            .unwrap()
    }

    #[test]
    fn odd_cycle_two_is_c5() {
        let g = all("odd_cycle:k=2");
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].graph, cycle(5));
    }

    #[test]
    fn exhaustive_counts() {
        assert_eq!(all("exhaustive:n=3").len(), 8);
        assert_eq!(all("exhaustive:n=3,connected=true").len(), 4);
        assert_eq!(all("exhaustive:n=4,connected=true").len(), 38);
        assert_eq!(all("exhaustive:n=5,connected=true").len(), 728);
        assert_eq!(all("exhaustive:n=0").len(), 1);
    }

    #[test]
    fn exhaustive_graphs_are_distinct_and_filtered_correctly() {
        let gs = all("exhaustive:n=4");
        let distinct: std::collections::BTreeSet<String> = gs.iter().map(|g| g.graph.to_edge_list()).collect();
        assert_eq!(distinct.len(), 64);
        let connected = gs.iter().filter(|g| g.graph.is_connected()).count();
        assert_eq!(connected, 38);
    }

    #[test]
    fn random_kinds_are_almost_bipartite_and_seeded() {
        for spec in ["cycle_plus_trees:k=2,n=14,count=30,seed=3", "almost_bipartite_random:n=10,p=0.25,count=20,seed=5"] {
            let a = all(spec);
            let b = all(spec);
            assert_eq!(a, b);
            for g in &a {
                assert_eq!(classify_parity(&g.graph, &Caps::default()).unwrap().name(), "almost_bipartite");
            }
        }
        assert_ne!(all("gnp:n=8,count=3,seed=1"), all("gnp:n=8,count=3,seed=2"));
    }

    #[test]
    fn random_mix_is_seeded_and_checked() {
        let kinds: Vec<String> = RANDOM_KINDS.iter().map(|s| s.to_string()).collect();
        let draw = |seed| {
            random_mix(&kinds, 14, 40, seed, &Caps::default())
                .unwrap()
                .collect::<Result<Vec<_>>>()
                .unwrap()
        };
        let a = draw(7);
        assert_eq!(a, draw(7));
        assert_ne!(a, draw(8));
        assert!(a.iter().all(|g| (3..=14).contains(&g.graph.n())));
        assert!(random_mix(&["exhaustive".into()], 5, 1, 0, &Caps::default()).is_err());
    }

    #[test]
    fn fixture_spec() {
        let g = all("fixture:fig11222");
        assert_eq!(g[0].id, "figure-fig11222");
        let caps = Caps::default();
        assert_eq!(alpha(&g[0].graph, &caps).unwrap().0, 5);
        assert_eq!(mu(&g[0].graph, &caps).unwrap().0, 4);
    }

    #[test]
    fn spec_parsing_round_trips_and_rejects_nonsense() {
        for s in [
            "odd_cycle:k=3",
            "cycle_plus_trees:k=1,n=9,count=4,seed=11",
            "exhaustive:n=5,connected=true",
            "fixture:fig2-G1",
            "gnp:n=9,p=0.5,count=2,seed=0",
        ] {
            let spec: GenSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for s in [
            "odd_cycle:k=0",
            "cycle_plus_trees:k=3,n=5",
            "exhaustive:n=9",
            "fixture:nope",
            "gnp:n=5,p=2",
            "odd_cycle:k=2,q=1",
            "wheel:n=5",
            "odd_cycle:k=x",
        ] {
            assert!(matches!(s.parse::<GenSpec>(), Err(KefError::Input(_))), "{s}");
        }
    }
}
