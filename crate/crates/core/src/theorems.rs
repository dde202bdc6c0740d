//! Registry of checkable statements and the per-graph suite runner.
//!
//! Every check reads a shared [`Analysis`]; none recomputes the base
//! invariants. Ids are frozen: stores and dashboards key on them.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{Analysis, Skip, Slot};
use crate::caps::Caps;
use crate::critical::CriticalLandscape;
use crate::error::{KefError, Result};
use crate::graph::{Graph, VertexSet};
use crate::ke::is_ke_unchecked;
use crate::odd::{is_bipartite, partition_check, pendant_decomposition, Bipartiteness, OddCycleWitness, Parity};
use crate::solvers::matching::mu_size;
use crate::solvers::{matching_from_into, IndependentFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    CapacitySkipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not_applicable",
            Status::CapacitySkipped => "capacity_skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub graph_id: String,
    pub theorem_id: String,
    pub status: Status,
    pub detail: Value,
}

/// Why a check produced no pass/fail answer.
#[derive(Debug, Clone)]
pub enum Stop {
    NotApplicable(String),
    Skipped(Skip),
}

impl From<&Skip> for Stop {
    fn from(s: &Skip) -> Self {
        Stop::Skipped(s.clone())
    }
}

/// Ok((holds, detail)) or a reason the statement was not evaluated.
pub type CheckResult = std::result::Result<(bool, Value), Stop>;

#[derive(Clone, Copy)]
pub struct TheoremCheck {
    pub id: &'static str,
    pub statement: &'static str,
    pub check: fn(&Analysis) -> CheckResult,
}

impl std::fmt::Debug for TheoremCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TheoremCheck").field("id", &self.id).finish()
    }
}

impl TheoremCheck {
    pub fn evaluate(&self, a: &Analysis) -> TheoremVerdict {
        let (status, detail) = match (self.check)(a) {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(Stop::NotApplicable(reason)) => (Status::NotApplicable, json!({ "reason": reason })),
            Err(Stop::Skipped(s)) => (Status::CapacitySkipped, json!({ "cap": s.what, "limit": s.limit, "actual": s.actual })),
        };
        TheoremVerdict {
            graph_id: a.graph_id.clone(),
            theorem_id: self.id.to_string(),
            status,
            detail,
        }
    }
}

fn get<T>(s: &Slot<T>) -> std::result::Result<&T, Stop> {
    s.as_ref().map_err(Stop::from)
}

fn na(reason: impl Into<String>) -> Stop {
    Stop::NotApplicable(reason.into())
}

fn omega(a: &Analysis) -> std::result::Result<&IndependentFamily, Stop> {
    get(&a.omega)
}

fn land(a: &Analysis) -> std::result::Result<&CriticalLandscape, Stop> {
    get(&a.landscape)
}

fn require_ke(a: &Analysis) -> std::result::Result<(), Stop> {
    if a.ke.is_ke {
        Ok(())
    } else {
        Err(na(format!("graph is not König-Egerváry (kappa = {})", a.ke.kappa)))
    }
}

fn require_one_ke(a: &Analysis) -> std::result::Result<(), Stop> {
    if a.ke.is_one_ke {
        Ok(())
    } else {
        Err(na(format!("graph is not 1-König-Egerváry (kappa = {})", a.ke.kappa)))
    }
}

fn require_almost_bipartite(a: &Analysis) -> std::result::Result<&OddCycleWitness, Stop> {
    match get(&a.parity)? {
        Parity::AlmostBipartite(c) => Ok(c),
        p => Err(na(format!("graph is {}", p.name()))),
    }
}

/// The unique odd cycle of an almost bipartite non-KE graph.
fn require_ab_non_ke(a: &Analysis) -> std::result::Result<&OddCycleWitness, Stop> {
    let c = require_almost_bipartite(a)?;
    if a.ke.is_ke {
        return Err(na("graph is König-Egerváry"));
    }
    Ok(c)
}

fn closed(g: &Graph, s: VertexSet) -> VertexSet {
    s.union(g.open_nbhd(s))
}

fn size(s: VertexSet) -> i64 {
    s.len() as i64
}

/// Deterministic pairs of vertex subsets derived from the graph itself.
fn sample_pairs(g: &Graph, count: usize) -> Vec<(VertexSet, VertexSet)> {
    let seed = g
        .edges()
        .iter()
        .fold(g.n() as u64, |acc, e| acc.wrapping_mul(1_000_003) ^ (e.0 as u64 * 64 + e.1 as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = VertexSet::full(g.n()).bits();
    (0..count)
        .map(|_| (VertexSet::from_bits(rng.gen::<u64>() & full), VertexSet::from_bits(rng.gen::<u64>() & full)))
        .collect()
}

fn lem17(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let pairs = sample_pairs(g, 24);
    for &(x, y) in &pairs {
        let lhs: usize = x.iter().map(|v| g.adjacency(v).intersection(y).len()).sum();
        let rhs: usize = y.iter().map(|v| g.adjacency(v).intersection(x).len()).sum();
        if lhs != rhs {
            return Ok((false, json!({ "a": x, "b": y, "lhs": lhs, "rhs": rhs })));
        }
    }
    Ok((true, json!({ "pairs_checked": pairs.len() })))
}

fn cor11(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let pairs = sample_pairs(g, 24);
    for &(x, y) in &pairs {
        let ab = g.open_nbhd(x).is_disjoint(y);
        let ba = g.open_nbhd(y).is_disjoint(x);
        if ab != ba {
            return Ok((false, json!({ "a": x, "b": y, "n_a_misses_b": ab, "n_b_misses_a": ba })));
        }
    }
    Ok((true, json!({ "pairs_checked": pairs.len() })))
}

fn sandwich(a: &Analysis) -> CheckResult {
    let n = a.n();
    if n == 0 {
        return Err(na("graph has no vertices"));
    }
    let s = a.alpha + a.mu;
    let ok = n / 2 < s && s <= n && n <= a.alpha + 2 * a.mu;
    Ok((ok, json!({ "n": n, "alpha": a.alpha, "mu": a.mu })))
}

fn lem84(a: &Analysis) -> CheckResult {
    require_almost_bipartite(a)?;
    let n = a.n();
    let s = a.alpha + a.mu;
    Ok((n <= s + 1 && s <= n, json!({ "n": n, "alpha_plus_mu": s, "kappa": a.ke.kappa })))
}

/// Shared body of th43 and th44; `extra` is 0 for KE graphs and 1 otherwise.
fn core_corona_identities(a: &Analysis, extra: i64) -> CheckResult {
    let g = &a.graph;
    let om = omega(a)?;
    let l = land(a)?;
    let (core, corona) = (om.intersection(), om.union());
    let n_core = g.open_nbhd(core);
    let covers = corona.union(n_core) == g.vertices();
    let alpha_minus_mu = a.alpha as i64 - a.mu as i64;
    let core_diff = g.diff(core);
    let sum = size(core) + size(corona);
    let ok = covers && l.d == alpha_minus_mu && l.d == core_diff && sum == 2 * a.alpha as i64 + extra;
    Ok((
        ok,
        json!({
            "corona_union_n_core_is_v": covers,
            "d": l.d,
            "alpha_minus_mu": alpha_minus_mu,
            "d_core": core_diff,
            "core_plus_corona": sum,
            "two_alpha": 2 * a.alpha,
        }),
    ))
}

fn th43(a: &Analysis) -> CheckResult {
    require_ke(a)?;
    core_corona_identities(a, 0)
}

fn th44(a: &Analysis) -> CheckResult {
    require_ab_non_ke(a)?;
    core_corona_identities(a, 1)
}

fn cor8(a: &Analysis) -> CheckResult {
    require_ab_non_ke(a)?;
    let d = land(a)?.d;
    let n = a.n() as i64;
    let (al, mu) = (a.alpha as i64, a.mu as i64);
    let ok = n + d == 2 * al + 1 && 2 * al == n + d - 1 && 2 * mu == n - d - 1 && 2 * mu < n;
    Ok((ok, json!({ "n": n, "d": d, "alpha": al, "mu": mu })))
}

fn th2222(a: &Analysis) -> CheckResult {
    let bipartite = matches!(get(&a.parity)?, Parity::Bipartite);
    if !bipartite {
        require_ab_non_ke(a)?;
    }
    let core = omega(a)?.intersection();
    let ker = land(a)?.ker;
    Ok((ker == core, json!({ "ker": ker, "core": core })))
}

const PAIR_LIMIT: usize = 2048;

fn th444(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let core = omega(a)?.intersection();
    let l = land(a)?;
    if l.crit_count > PAIR_LIMIT {
        return Err(Stop::Skipped(Skip {
            what: "th444_pairs".into(),
            limit: PAIR_LIMIT,
            actual: l.crit_count,
        }));
    }
    let ker_in_core = l.ker.is_subset(core);
    let ker_critical = l.critical_sets.binary_search_by(|s| s.lex_cmp(l.ker)).is_ok();
    let diadem_diff = g.diff(l.diadem);
    let mut bad_pair = None;
    'outer: for (i, &x) in l.critical_sets.iter().enumerate() {
        for &y in &l.critical_sets[i + 1..] {
            let meet_ok = g.diff(x.intersection(y)) == l.d;
            let u = x.union(y);
            let join_ok = !g.independent(u) || g.diff(u) == l.d;
            if !meet_ok || !join_ok {
                bad_pair = Some((x, y));
                break 'outer;
            }
        }
    }
    let ok = ker_in_core && ker_critical && diadem_diff == l.d && bad_pair.is_none();
    Ok((
        ok,
        json!({
            "ker": l.ker,
            "core": core,
            "ker_is_critical": ker_critical,
            "d": l.d,
            "d_diadem": diadem_diff,
            "critical_sets": l.crit_count,
            "bad_pair": bad_pair,
        }),
    ))
}

fn th333(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let om = omega(a)?;
    let l = land(a)?;
    for &s in &l.critical_sets {
        let in_omega = om.sets.iter().any(|&t| s.is_subset(t));
        let in_max_crit = l.max_crit_family.sets.iter().any(|&t| s.is_subset(t));
        let matched = matching_from_into(g, g.open_nbhd(s), s).ok().flatten().is_some();
        if !(in_omega && in_max_crit && matched) {
            return Ok((
                false,
                json!({ "set": s, "in_some_maximum": in_omega, "in_some_max_critical": in_max_crit, "n_matched_into": matched }),
            ));
        }
    }
    Ok((true, json!({ "critical_sets": l.crit_count })))
}

fn th11(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let l = land(a)?;
    for &s in &l.critical_sets {
        let nb = g.open_nbhd(s);
        let Some(m0) = matching_from_into(g, nb, s).ok().flatten() else {
            return Err(na("no matching from N(A) into A"));
        };
        let rest = g.induced_unchecked(g.vertices().difference(m0.saturated)).0;
        let extends = mu_size(&rest) + m0.len() == a.mu;
        let critical = nb.is_subset(a.mu_critical_vertices);
        if !(extends && critical) {
            return Ok((
                false,
                json!({ "set": s, "neighborhood": nb, "mu_critical": a.mu_critical_vertices, "matching_extends": extends }),
            ));
        }
    }
    Ok((true, json!({ "critical_sets": l.crit_count })))
}

fn th100(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let l = land(a)?;
    let blocks: BTreeSet<u64> = l.max_crit_family.sets.iter().map(|&s| closed(g, s).bits()).collect();
    let x = closed(g, l.max_crit_family.sets[0]);
    let ke = is_ke_unchecked(&g.induced_unchecked(x).0);
    Ok((blocks.len() == 1 && ke, json!({ "x": x, "distinct_closed_neighborhoods": blocks.len(), "x_is_ke": ke })))
}

fn th715(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    if a.ke.is_ke {
        let (Some(s), Some(m)) = (a.ke.witness_s, a.ke.witness_matching.as_ref()) else {
            return Ok((false, json!({ "missing_witness": true })));
        };
        let rest = g.vertices().difference(s);
        let across = m.edges.iter().all(|e| s.contains(e.0) != s.contains(e.1));
        let ok = g.independent(s) && s.len() >= rest.len() && m.is_valid_in(g) && m.len() == rest.len() && across;
        Ok((ok, json!({ "s": s, "a": rest, "matching": m.edges })))
    } else {
        let om = omega(a)?;
        for &s in &om.sets {
            if matching_from_into(g, g.vertices().difference(s), s).ok().flatten().is_some() {
                return Ok((false, json!({ "s": s, "unexpected_witness": true })));
            }
        }
        Ok((true, json!({ "kappa": a.ke.kappa, "maximum_sets_checked": om.len() })))
    }
}

fn alpha_critical_core(a: &Analysis) -> CheckResult {
    let core = omega(a)?.intersection();
    Ok((core == a.alpha_critical_vertices, json!({ "core": core, "alpha_critical": a.alpha_critical_vertices })))
}

fn prop14(a: &Analysis) -> CheckResult {
    let l = land(a)?;
    let lhs = size(closed(&a.graph, l.diadem));
    let rhs = size(l.diadem) + size(l.nucleus) - l.d;
    Ok((lhs == rhs, json!({ "lhs": lhs, "rhs": rhs })))
}

fn prop13(a: &Analysis) -> CheckResult {
    let l = land(a)?;
    let lhs = size(l.diadem) + size(l.nucleus);
    let two_ap = 2 * l.alpha_prime as i64;
    let closed_size = size(closed(&a.graph, l.diadem));
    let ok = lhs <= two_ap && closed_size <= two_ap - l.d;
    Ok((ok, json!({ "lhs": lhs, "two_alpha_prime": two_ap, "closed_diadem": closed_size, "d": l.d })))
}

fn prop17(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let l = land(a)?;
    let lhs = g.open_nbhd(l.diadem).difference(l.diadem);
    let rhs = l
        .max_crit_family
        .sets
        .iter()
        .map(|&s| g.open_nbhd(s))
        .reduce(|x, y| x.intersection(y))
        .unwrap_or(VertexSet::EMPTY);
    Ok((lhs == rhs, json!({ "lhs": lhs, "rhs": rhs })))
}

fn prop11(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let core = omega(a)?.intersection();
    let l = land(a)?;
    let bad = l.critical_sets.iter().find(|&&s| !core.is_disjoint(g.open_nbhd(s)));
    let ok = bad.is_none() && core.is_disjoint(g.open_nbhd(l.diadem));
    Ok((ok, json!({ "core": core, "n_diadem": g.open_nbhd(l.diadem), "bad_set": bad })))
}

fn prop15(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let vc = require_ab_non_ke(a)?.vertex_set();
    let l = land(a)?;
    let first = vc.is_disjoint(closed(g, l.diadem));
    let second = closed(g, vc).is_disjoint(l.diadem);
    Ok((first && second, json!({ "cycle": vc, "closed_diadem": closed(g, l.diadem), "diadem": l.diadem })))
}

fn conj1(a: &Analysis) -> CheckResult {
    require_ab_non_ke(a)?;
    let l = land(a)?;
    let verdict = partition_check(&a.graph, get(&a.parity)?, a.ke.is_ke, l);
    let covering = match &verdict {
        crate::odd::PartitionVerdict::Checked { covering, .. } => *covering,
        crate::odd::PartitionVerdict::NotApplicable { reason } => return Err(na(reason.clone())),
    };
    Ok((covering, serde_json::to_value(&verdict).expect("verdict serializes")))
}

fn cor3(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let vc = require_ab_non_ke(a)?.vertex_set();
    let om = omega(a)?;
    let l = land(a)?;
    let lhs = vc.union(closed(g, l.diadem));
    let rhs = om.union().union(g.open_nbhd(om.intersection()));
    Ok((lhs == rhs, json!({ "lhs": lhs, "rhs": rhs })))
}

fn lem7(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let vc = require_ab_non_ke(a)?.vertex_set();
    let core = omega(a)?.intersection();
    let l = land(a)?;
    let touching = l.critical_sets.iter().find(|s| !s.is_disjoint(vc));
    let core_diff = g.diff(core);
    Ok((
        touching.is_none() && core_diff == l.d,
        json!({ "cycle": vc, "set_meeting_cycle": touching, "d_core": core_diff, "d": l.d }),
    ))
}

fn lem10(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let c = require_ab_non_ke(a)?;
    let dec = pendant_decomposition(g, c).map_err(|e| na(e.to_string()))?;
    for comp in &dec.components {
        let sub = Graph::new(g.n(), comp.edges.iter().map(|e| (e.0, e.1))).expect("subgraph of a valid graph");
        if !matches!(is_bipartite(&sub), Bipartiteness::Bipartite(_)) {
            return Ok((false, json!({ "root": comp.root, "component": comp.vertices, "bipartite": false })));
        }
    }
    let rests: Vec<(usize, VertexSet)> = dec
        .components
        .iter()
        .map(|comp| (comp.root, closed(g, comp.vertices.without(comp.root))))
        .collect();
    for (i, &(x, nx)) in rests.iter().enumerate() {
        for &(y, ny) in &rests[i + 1..] {
            if !nx.is_disjoint(ny) {
                return Ok((false, json!({ "x": x, "y": y, "shared": nx.intersection(ny) })));
            }
        }
    }
    Ok((true, json!({ "components": dec.components.len(), "n1": dec.n1 })))
}

fn lem13(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let c = require_ab_non_ke(a)?;
    let vc = c.vertex_set();
    let l = land(a)?;
    let cyc: Vec<usize> = vc.to_vec();
    let mut shared = None;
    'outer: for (i, &x) in cyc.iter().enumerate() {
        for &y in &cyc[i + 1..] {
            let common = g.adjacency(x).intersection(g.adjacency(y)).difference(vc);
            if !common.is_empty() {
                shared = Some((x, y, common));
                break 'outer;
            }
        }
    }
    let outer_nbrs = g.open_nbhd(vc).difference(vc);
    let rhs_set = g.open_nbhd(l.diadem).difference(l.diadem);
    let lhs: i64 = cyc.iter().map(|&v| g.degree(v) as i64 - 2).sum();
    let rhs = size(rhs_set);
    let ok = shared.is_none() && outer_nbrs.is_subset(rhs_set) && lhs <= rhs;
    Ok((ok, json!({ "lhs": lhs, "rhs": rhs, "shared_neighbor": shared, "cycle_neighbors": outer_nbrs })))
}

fn prop10(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let vc = require_ab_non_ke(a)?.vertex_set();
    let om = omega(a)?;
    let core = om.intersection();
    let disjoint = core.is_disjoint(closed(g, vc));
    let in_corona = vc.is_subset(om.union());
    let bound = 2 * a.alpha as i64 + 1 - size(core);
    let ok = disjoint && in_corona && size(vc) <= bound;
    Ok((ok, json!({ "core": core, "cycle": vc, "cycle_in_corona": in_corona, "cycle_len": vc.len(), "bound": bound })))
}

fn cycle_edge_count(m: &crate::solvers::Matching, c: &OddCycleWitness) -> usize {
    let ce = c.edges();
    m.edges.iter().filter(|&e| ce.contains(e)).count()
}

fn th18(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let c = require_ab_non_ke(a)?;
    let all = match &a.max_matchings {
        Some(s) => get(s)?,
        None => return Err(na("maximum matchings not enumerated")),
    };
    let half = c.len() / 2;
    if let Some(m) = all.iter().find(|m| cycle_edge_count(m, c) != half) {
        return Ok((false, json!({ "matching": m.edges, "cycle_edges": cycle_edge_count(m, c), "expected": half })));
    }
    // A maximum matching of G[V(C)] leaves one cycle vertex free and extends
    // exactly when G − V(C) still carries μ − ⌊|C|/2⌋ edges.
    let rest = g.induced_unchecked(g.vertices().difference(c.vertex_set())).0;
    let rest_mu = mu_size(&rest);
    let extends = rest_mu + half == a.mu;
    Ok((extends, json!({ "matchings_checked": all.len(), "cycle_edges": half, "mu_outside_cycle": rest_mu, "mu": a.mu })))
}

fn th18_structure(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let c = require_ab_non_ke(a)?;
    let l = land(a)?;
    let all = match &a.max_matchings {
        Some(s) => get(s)?,
        None => return Err(na("maximum matchings not enumerated")),
    };
    let x_block = closed(g, l.diadem);
    let n_diadem = g.open_nbhd(l.diadem);
    let mu_block = mu_size(&g.induced_unchecked(x_block).0);
    let mut mu_without: BTreeMap<usize, usize> = BTreeMap::new();
    let vc = c.vertex_set();
    let ce = c.edges();
    let (mut inside, mut via_edge) = (0usize, 0usize);
    for m in all {
        let on_cycle: VertexSet = m.edges.iter().filter(|&e| ce.contains(e)).flat_map(|e| [e.0, e.1]).collect();
        let free = vc.difference(on_cycle);
        let fail = |why: &str| Ok((false, json!({ "matching": m.edges, "reason": why })));
        if free.len() != 1 {
            return fail("cycle edges leave more than one cycle vertex free");
        }
        let x = free.first().expect("one free vertex");
        let rest: Vec<_> = m.edges.iter().filter(|&e| !ce.contains(e)).collect();
        match m.mate(x) {
            None => {
                let ok = rest.iter().all(|e| x_block.contains(e.0) && x_block.contains(e.1)) && rest.len() == mu_block;
                if !ok {
                    return fail("remaining edges are not a maximum matching of G[N[diadem]]");
                }
                inside += 1;
            }
            Some(y) => {
                if !n_diadem.contains(y) {
                    return fail("free cycle vertex is matched outside N(diadem)");
                }
                let block = x_block.without(y);
                let want = *mu_without
                    .entry(y)
                    .or_insert_with(|| mu_size(&g.induced_unchecked(block).0));
                let others: Vec<_> = rest.iter().filter(|e| !e.touches(x)).collect();
                let ok = others.iter().all(|e| block.contains(e.0) && block.contains(e.1)) && others.len() == want;
                if !ok {
                    return fail("remaining edges are not a maximum matching of G[N[diadem] − y]");
                }
                via_edge += 1;
            }
        }
    }
    Ok((true, json!({ "inside_block": inside, "via_cycle_edge": via_edge, "mu_block": mu_block })))
}

fn th5(a: &Analysis) -> CheckResult {
    require_ab_non_ke(a)?;
    let l = land(a)?;
    let xi = size(omega(a)?.intersection());
    let rho = a.rho.rho_v as i64;
    let first = a.n() as i64 + l.d - xi - size(l.diadem);
    let second = 2 * a.alpha as i64 + 1 - xi - size(l.diadem);
    Ok((rho == first && rho == second, json!({ "rho_v": rho, "n_plus_d_minus_xi_beta": first, "two_alpha_form": second })))
}

fn cor2(a: &Analysis) -> CheckResult {
    let c = require_ab_non_ke(a)?;
    let l = land(a)?;
    let xi = size(omega(a)?.intersection());
    let rhs = c.len() as i64 + size(l.nucleus) - xi;
    Ok((a.rho.rho_v as i64 == rhs, json!({ "rho_v": a.rho.rho_v, "rhs": rhs })))
}

fn cor5(a: &Analysis) -> CheckResult {
    let c = require_ab_non_ke(a)?;
    let l = land(a)?;
    let om = omega(a)?;
    let lhs = c.len() as i64 + size(l.nucleus) + size(l.diadem);
    let mid = 2 * a.alpha as i64 + 1;
    let rhs = size(om.intersection()) + size(om.union());
    Ok((lhs == mid && mid == rhs, json!({ "cycle_nucleus_diadem": lhs, "two_alpha_plus_one": mid, "core_plus_corona": rhs })))
}

fn cor7(a: &Analysis) -> CheckResult {
    require_ab_non_ke(a)?;
    let rhs = size(omega(a)?.union()) - size(land(a)?.diadem);
    Ok((a.rho.rho_v as i64 == rhs, json!({ "rho_v": a.rho.rho_v, "corona_minus_diadem": rhs })))
}

fn cor10(a: &Analysis) -> CheckResult {
    require_almost_bipartite(a)?;
    let om = omega(a)?;
    let lhs = size(om.intersection()) + size(om.union());
    let rhs = a.n() as i64 + land(a)?.d;
    Ok((lhs == rhs, json!({ "core_plus_corona": lhs, "n_plus_d": rhs })))
}

fn alpha_prime_bound(a: &Analysis) -> CheckResult {
    let c = require_ab_non_ke(a)?;
    let xi = size(omega(a)?.intersection());
    let upper = 2 * a.alpha as i64 - xi - land(a)?.alpha_prime as i64 + 1;
    let rho = a.rho.rho_v as i64;
    Ok((c.len() as i64 <= rho && rho <= upper, json!({ "cycle_len": c.len(), "rho_v": rho, "upper": upper })))
}

fn is_cycle_graph(g: &Graph) -> bool {
    g.n() >= 3 && g.m() == g.n() && g.vertices().iter().all(|v| g.degree(v) == 2) && g.is_connected()
}

fn prop18(a: &Analysis) -> CheckResult {
    require_ab_non_ke(a)?;
    let full = a.rho.rho_v == a.n();
    let cycle = is_cycle_graph(&a.graph);
    Ok((full == cycle, json!({ "rho_v": a.rho.rho_v, "n": a.n(), "is_odd_cycle": cycle })))
}

/// Σ deg over V(C) minus |V(C)|, and |N(V(C)) ∩ N(core)|.
fn degree_terms(a: &Analysis, c: &OddCycleWitness) -> std::result::Result<(i64, VertexSet), Stop> {
    let g = &a.graph;
    let core = omega(a)?.intersection();
    let deg_sum: i64 = c.vertices.iter().map(|&v| g.degree(v) as i64).sum();
    let overlap = g.open_nbhd(c.vertex_set()).intersection(g.open_nbhd(core));
    Ok((deg_sum - c.len() as i64, overlap))
}

fn degree_bound(a: &Analysis) -> CheckResult {
    let c = require_ab_non_ke(a)?;
    let (base, overlap) = degree_terms(a, c)?;
    let rhs = base - size(overlap);
    Ok((a.rho.rho_v as i64 >= rhs, json!({ "lhs": a.rho.rho_v, "rhs": rhs, "overlap": overlap })))
}

fn cor13(a: &Analysis) -> CheckResult {
    let c = require_ab_non_ke(a)?;
    let (rhs, overlap) = degree_terms(a, c)?;
    if !overlap.is_empty() {
        return Err(na("N(V(C)) meets N(core)"));
    }
    let g = &a.graph;
    let off_cycle = a.rho.rho_v_witnesses.difference(c.vertex_set());
    let needs_off_cycle = g.is_connected() && g.n() > c.len();
    let ok = a.rho.rho_v as i64 >= rhs && (!needs_off_cycle || !off_cycle.is_empty());
    Ok((ok, json!({ "lhs": a.rho.rho_v, "rhs": rhs, "off_cycle_witnesses": off_cycle })))
}

fn cor_nucleus(a: &Analysis) -> CheckResult {
    let c = require_ab_non_ke(a)?;
    let core = omega(a)?.intersection();
    let nucleus = land(a)?.nucleus;
    let tight = a.rho.rho_v == c.len();
    Ok((
        tight == (core == nucleus) && core.is_subset(nucleus),
        json!({ "rho_v": a.rho.rho_v, "cycle_len": c.len(), "core": core, "nucleus": nucleus }),
    ))
}

fn th9(a: &Analysis) -> CheckResult {
    require_ke(a)?;
    let xi = size(omega(a)?.intersection());
    let eps = size(land(a)?.ker);
    let rhs = a.n() as i64 - xi + eps;
    Ok((a.rho.rho_v as i64 == rhs, json!({ "rho_v": a.rho.rho_v, "n_minus_xi_plus_eps": rhs })))
}

fn th9_rho_e(a: &Analysis) -> CheckResult {
    require_ke(a)?;
    let xi = size(omega(a)?.intersection());
    let eps = size(land(a)?.ker);
    let rhs = a.graph.m() as i64 - xi + eps;
    Ok((a.rho.rho_e as i64 <= rhs, json!({ "rho_e": a.rho.rho_e, "m_minus_xi_plus_eps": rhs, "rho_e_witnesses": a.rho.rho_e_witnesses })))
}

fn th10(a: &Analysis) -> CheckResult {
    require_one_ke(a)?;
    let l = land(a)?;
    let xi = size(omega(a)?.intersection());
    let rhs = a.n() as i64 + l.d - xi - size(l.diadem);
    Ok((a.rho.rho_v as i64 <= rhs, json!({ "rho_v": a.rho.rho_v, "rhs": rhs })))
}

fn lem11(a: &Analysis) -> CheckResult {
    require_one_ke(a)?;
    let xi = omega(a)?.intersection().len();
    let beta = land(a)?.diadem.len();
    let full = a.rho.rho_v == a.n();
    let cond = 2 * a.mu < a.n() && xi == 0 && beta == 0;
    Ok((full == cond, json!({ "rho_v": a.rho.rho_v, "n": a.n(), "mu": a.mu, "xi": xi, "beta": beta })))
}

fn th17(a: &Analysis) -> CheckResult {
    require_one_ke(a)?;
    let deletable = a
        .graph
        .vertices()
        .difference(a.alpha_critical_vertices.union(a.mu_critical_vertices));
    Ok((deletable == a.rho.rho_v_witnesses, json!({ "deletable": deletable, "rho_v_witnesses": a.rho.rho_v_witnesses })))
}

fn d_mono_1(a: &Analysis) -> CheckResult {
    let g = &a.graph;
    let l = land(a)?;
    let dels = get(&a.deletion_landscapes)?;
    let mut premised = 0;
    for del in dels {
        if del.critical_sets.iter().any(|&b| g.diff(b) != l.d) {
            premised += 1;
            if l.d < del.d {
                return Ok((false, json!({ "v": del.v, "d": l.d, "d_minus_v": del.d })));
            }
        }
    }
    Ok((true, json!({ "vertices_meeting_hypothesis": premised })))
}

fn d_mono_2(a: &Analysis) -> CheckResult {
    let l = land(a)?;
    let dels = get(&a.deletion_landscapes)?;
    let crit: BTreeSet<u64> = l.critical_sets.iter().map(|s| s.bits()).collect();
    let mut premised = 0;
    for del in dels.iter().filter(|del| l.nucleus.contains(del.v)) {
        if del.critical_sets.iter().any(|s| crit.contains(&s.bits())) {
            premised += 1;
            if l.d != del.d {
                return Ok((false, json!({ "v": del.v, "d": l.d, "d_minus_v": del.d })));
            }
        }
    }
    Ok((true, json!({ "vertices_meeting_hypothesis": premised })))
}

fn lem8(a: &Analysis) -> CheckResult {
    let l = land(a)?;
    let dels = get(&a.deletion_landscapes)?;
    let n_diadem = a.graph.open_nbhd(l.diadem);
    let mut checked = 0;
    for del in dels.iter().filter(|del| !n_diadem.contains(del.v)) {
        checked += 1;
        if l.d < del.d {
            return Ok((false, json!({ "v": del.v, "d": l.d, "d_minus_v": del.d })));
        }
    }
    Ok((true, json!({ "vertices_checked": checked })))
}

fn d_double_cover(a: &Analysis) -> CheckResult {
    let d = land(a)?.d;
    Ok((d == a.d_double_cover, json!({ "d": d, "n_minus_mu_double_cover": a.d_double_cover })))
}

macro_rules! check {
    ($id:literal, $f:ident, $s:literal) => {
        TheoremCheck {
            id: $id,
            statement: $s,
            check: $f,
        }
    };
}

static REGISTRY: &[TheoremCheck] = &[
    check!("lem17", lem17, "sum over A of |N(a) ∩ B| equals sum over B of |N(b) ∩ A|"),
    check!("cor11", cor11, "N(A) ∩ B = ∅ iff N(B) ∩ A = ∅"),
    check!("sandwich", sandwich, "⌊n/2⌋ + 1 ≤ α + μ ≤ n ≤ α + 2μ"),
    check!("lem84", lem84, "almost bipartite: n − 1 ≤ α + μ ≤ n"),
    check!("th43", th43, "KE: corona ∪ N(core) = V, d = α − μ = d(core), |core| + |corona| = 2α"),
    check!("th44", th44, "almost bipartite non-KE: corona ∪ N(core) = V, d = α − μ = d(core), |core| + |corona| = 2α + 1"),
    check!("cor8", cor8, "almost bipartite non-KE: n + d = 2α + 1, μ = (n − d − 1)/2 < n/2"),
    check!("th2222", th2222, "bipartite or almost bipartite non-KE: ker = core"),
    check!("th444", th444, "ker ⊆ core, critical sets closed under ∩ and independent ∪, ker critical"),
    check!("th333", th333, "critical sets lie in some maximum and some maximum critical set; N(A) matches into A"),
    check!("th11", th11, "critical A: N(A) is μ-critical and a matching N(A) → A extends to a maximum matching"),
    check!("th100", th100, "N[A] is the same X for all maximum critical A, and G[X] is KE"),
    check!("th715", th715, "KE iff G = S ∗ A with a matching of size |A| across"),
    check!("alpha-critical-core", alpha_critical_core, "α-critical vertices = core"),
    check!("prop14", prop14, "|N[diadem]| = β + |nucleus| − d"),
    check!("prop13", prop13, "β + |nucleus| ≤ 2α′ and |N[diadem]| ≤ 2α′ − d"),
    check!("prop17", prop17, "N(diadem) − diadem = ⋂ N(A) over maximum critical A"),
    check!("prop11", prop11, "core ∩ N(A) = ∅ for critical A; core ∩ N(diadem) = ∅"),
    check!("prop15", prop15, "almost bipartite non-KE: V(C) ∩ N[diadem] = ∅"),
    check!("conj1", conj1, "almost bipartite non-KE: V(C) ∪ N[diadem] = V"),
    check!("cor3", cor3, "almost bipartite non-KE: V(C) ∪ N[diadem] = corona ∪ N(core)"),
    check!("lem7", lem7, "almost bipartite non-KE: critical sets avoid V(C); core is critical"),
    check!("lem10", lem10, "almost bipartite non-KE: D_y bipartite, N[D_y − y] pairwise disjoint"),
    check!("lem13", lem13, "almost bipartite non-KE: Σ (deg − 2) over V(C) ≤ |N(diadem) − diadem|"),
    check!("prop10", prop10, "almost bipartite non-KE: core ∩ N[V(C)] = ∅, V(C) ⊆ corona, |V(C)| ≤ 2α + 1 − ξ"),
    check!("th18", th18, "almost bipartite non-KE: every maximum matching has ⌊|C|/2⌋ cycle edges"),
    check!("th18-structure", th18_structure, "almost bipartite non-KE: maximum matchings split along C and N[diadem]"),
    check!("th5", th5, "almost bipartite non-KE: ρ_v = n + d − ξ − β = 2α + 1 − ξ − β"),
    check!("cor2", cor2, "almost bipartite non-KE: ρ_v = |V(C)| + |nucleus| − |core|"),
    check!("cor5", cor5, "almost bipartite non-KE: |V(C)| + |nucleus| + β = 2α + 1 = |core| + |corona|"),
    check!("cor7", cor7, "almost bipartite non-KE: ρ_v = |corona| − β"),
    check!("cor10", cor10, "almost bipartite: |core| + |corona| = n + d"),
    check!("alpha-prime-bound", alpha_prime_bound, "almost bipartite non-KE: |V(C)| ≤ ρ_v ≤ 2α − ξ − α′ + 1"),
    check!("prop18", prop18, "almost bipartite non-KE: ρ_v = n iff G is an odd cycle"),
    check!("degree-bound", degree_bound, "almost bipartite non-KE: ρ_v ≥ Σ deg(V(C)) − |V(C)| − |N(V(C)) ∩ N(core)|"),
    check!("cor13", cor13, "almost bipartite non-KE, N(V(C)) ∩ N(core) = ∅: ρ_v ≥ Σ deg(V(C)) − |V(C)|"),
    check!("cor-nucleus", cor_nucleus, "almost bipartite non-KE: ρ_v = |V(C)| iff core = nucleus"),
    check!("th9", th9, "KE: ρ_v = n − ξ + ε"),
    check!("th9-rho-e", th9_rho_e, "KE: ρ_e ≤ m − ξ + ε"),
    check!("th10", th10, "1-KE: ρ_v ≤ n + d − ξ − β"),
    check!("lem11", lem11, "1-KE: ρ_v = n iff μ < n/2, ξ = 0 and β = 0"),
    check!("th17", th17, "1-KE: G − v is KE iff v is neither α- nor μ-critical"),
    check!("d-mono-1", d_mono_1, "a critical set of G − v that is not critical in G forces d(G) ≥ d(G − v)"),
    check!("d-mono-2", d_mono_2, "v ∈ nucleus with a set critical in G and G − v forces d(G) = d(G − v)"),
    check!("lem8", lem8, "v ∉ N(diadem) implies d(G) ≥ d(G − v)"),
    check!("d-double-cover", d_double_cover, "d(G) = n − μ(double cover)"),
];

pub fn registry() -> &'static [TheoremCheck] {
    REGISTRY
}

/// Resolve ids (or "all") to checks, in registry order.
pub fn select<S: AsRef<str>>(selection: &[S]) -> Result<Vec<TheoremCheck>> {
    if selection.iter().any(|s| s.as_ref() == "all") {
        return Ok(REGISTRY.to_vec());
    }
    let mut wanted = BTreeSet::new();
    for id in selection {
        let id = id.as_ref();
        if !REGISTRY.iter().any(|c| c.id == id) {
            return Err(KefError::input(format!("unknown theorem id {id:?}")));
        }
        wanted.insert(id);
    }
    Ok(REGISTRY.iter().filter(|c| wanted.contains(c.id)).copied().collect())
}

pub fn run_checks(a: &Analysis, checks: &[TheoremCheck]) -> Vec<TheoremVerdict> {
    checks.iter().map(|c| c.evaluate(a)).collect()
}

pub fn run_suite_on<S: AsRef<str>>(a: &Analysis, selection: &[S]) -> Result<Vec<TheoremVerdict>> {
    Ok(run_checks(a, &select(selection)?))
}

/// Analyse and check one graph. If α or μ is out of reach every selected
/// check is reported as skipped.
pub fn run_suite<S: AsRef<str>>(graph_id: &str, g: &Graph, selection: &[S], caps: &Caps) -> Result<Vec<TheoremVerdict>> {
    let checks = select(selection)?;
    match Analysis::new(graph_id, g, caps) {
        Ok(a) => Ok(run_checks(&a, &checks)),
        Err(KefError::Capacity { what, limit, actual }) => Ok(checks
            .iter()
            .map(|c| TheoremVerdict {
                graph_id: graph_id.to_string(),
                theorem_id: c.id.to_string(),
                status: Status::CapacitySkipped,
                detail: json!({ "cap": what, "limit": limit, "actual": actual }),
            })
            .collect()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};

    fn statuses(g: &Graph) -> BTreeMap<String, Status> {
        run_suite("g", g, &["all"], &Caps::default())
            .unwrap()
            .into_iter()
            .map(|v| (v.theorem_id, v.status))
            .collect()
    }

    #[test]
    fn ids_are_unique() {
        let ids: BTreeSet<_> = REGISTRY.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), REGISTRY.len());
    }

    #[test]
    fn c5_passes_everything_applicable() {
        let s = statuses(&cycle(5));
        assert!(s.values().all(|&st| st != Status::Fail && st != Status::CapacitySkipped), "{s:?}");
        for id in ["th44", "th5", "th18", "th18-structure", "conj1", "prop18", "lem11"] {
            assert_eq!(s[id], Status::Pass, "{id}");
        }
        assert_eq!(s["th43"], Status::NotApplicable);
        assert_eq!(s["th9"], Status::NotApplicable);
    }

    #[test]
    fn c6_is_outside_the_almost_bipartite_checks() {
        let v = run_suite("c6", &cycle(6), &["th44"], &Caps::default()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].status, Status::NotApplicable);
    }

    #[test]
    fn small_families_never_fail() {
        let two_triangles = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        for g in [complete(4), path(5), star(4), cycle(7), two_triangles, Graph::empty(3)] {
            let s = statuses(&g);
            assert!(s.values().all(|&st| st != Status::Fail), "{g:?}: {s:?}");
        }
    }

    #[test]
    fn multi_odd_graph_makes_th5_not_applicable() {
        let two_triangles = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let v = run_suite("bowtie", &two_triangles, &["th5"], &Caps::default()).unwrap();
        assert_eq!(v[0].status, Status::NotApplicable);
    }

    #[test]
    fn diamond_refutes_the_edge_bound() {
        let diamond = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let s = statuses(&diamond);
        assert_eq!(s["th9"], Status::Pass);
        assert_eq!(s["th9-rho-e"], Status::Fail);
        let v = run_suite("diamond", &diamond, &["th9-rho-e"], &Caps::default()).unwrap();
        assert_eq!(v[0].detail["rho_e"], 5);
        assert_eq!(v[0].detail["m_minus_xi_plus_eps"], 3);
        let others: Vec<_> = s.iter().filter(|(id, &st)| st == Status::Fail && *id != "th9-rho-e").collect();
        assert!(others.is_empty(), "{others:?}");
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(select(&["th5", "nope"]).is_err());
        assert_eq!(select(&["th5", "lem13", "th5"]).unwrap().len(), 2);
        assert_eq!(select(&["all"]).unwrap().len(), REGISTRY.len());
    }

    #[test]
    fn solver_cap_skips_every_check() {
        let caps = Caps { solver_n: 3, ..Caps::default() };
        let v = run_suite("c5", &cycle(5), &["all"], &caps).unwrap();
        assert!(v.iter().all(|x| x.status == Status::CapacitySkipped));
    }

    #[test]
    fn verdict_json_shape() {
        let v = run_suite("c5", &cycle(5), &["th5"], &Caps::default()).unwrap();
        let line = serde_json::to_string(&v[0]).unwrap();
        assert!(line.starts_with("{\"graph_id\":\"c5\",\"theorem_id\":\"th5\",\"status\":\"pass\",\"detail\":"));
        let back: TheoremVerdict = serde_json::from_str(&line).unwrap();
        assert_eq!(back, v[0]);
    }
}
