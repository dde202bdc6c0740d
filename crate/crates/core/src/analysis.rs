//! Everything the theorem suite needs about one graph, computed once.
//!
//! Quantities guarded by an enumeration cap live in a [`Slot`]; a cap hit
//! there is recorded instead of aborting the whole analysis.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::critical::{critical_difference_via_double_cover, critical_landscape, critical_sets, CriticalLandscape};
use crate::error::{KefError, Result};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};
use crate::ke::{classify_from_parts, KeClassification, RhoReport};
use crate::odd::{classify_parity, Parity};
use crate::solvers::independence::alpha_in;
use crate::solvers::matching::mu_size;
use crate::solvers::{all_maximum_matchings, alpha, mu, omega_family, IndependentFamily, Matching};

/// A computation that was not attempted because a cap was exceeded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub what: String,
    pub limit: usize,
    pub actual: usize,
}

pub type Slot<T> = std::result::Result<T, Skip>;

/// Turn a capacity error into a skipped slot; other errors propagate.
pub(crate) fn slot<T>(r: Result<T>) -> Result<Slot<T>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(KefError::Capacity { what, limit, actual }) => Ok(Err(Skip {
            what: what.to_string(),
            limit,
            actual,
        })),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDeletion {
    pub v: usize,
    pub alpha: usize,
    pub mu: usize,
    pub is_ke: bool,
}

/// d(G − v) and the critical independent sets of G − v, in the ids of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionLandscape {
    pub v: usize,
    pub d: i64,
    pub critical_sets: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDeletion {
    pub edge: Edge,
    pub alpha: usize,
    pub mu: usize,
    pub is_ke: bool,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph_id: String,
    pub graph: Graph,
    pub caps: Caps,
    pub alpha: usize,
    pub alpha_witness: VertexSet,
    pub mu: usize,
    pub matching: Matching,
    pub ke: KeClassification,
    pub vertex_deletions: Vec<VertexDeletion>,
    pub edge_deletions: Vec<EdgeDeletion>,
    pub rho: RhoReport,
    pub alpha_critical_vertices: VertexSet,
    pub mu_critical_vertices: VertexSet,
    pub alpha_critical_edges: EdgeSet,
    pub mu_critical_edges: EdgeSet,
    pub d_double_cover: i64,
    pub omega: Slot<IndependentFamily>,
    pub landscape: Slot<CriticalLandscape>,
    pub deletion_landscapes: Slot<Vec<DeletionLandscape>>,
    pub parity: Slot<Parity>,
    /// Computed only for almost bipartite non-KE graphs.
    pub max_matchings: Option<Slot<Vec<Matching>>>,
}

impl Analysis {
    /// Analyse `g`. Fails with a capacity error only when α or μ itself is out of reach.
    pub fn new(graph_id: impl Into<String>, g: &Graph, caps: &Caps) -> Result<Analysis> {
        let (a, alpha_witness) = alpha(g, caps)?;
        let (m, matching) = mu(g, caps)?;
        let ke = classify_from_parts(g, a, m, caps)?;

        let mut vertex_deletions = Vec::with_capacity(g.n());
        for v in g.vertices().iter() {
            let (h, _) = g.delete_vertex(v)?;
            let ha = alpha_in(h.masks(), h.vertices().bits()).0;
            let hm = mu_size(&h);
            vertex_deletions.push(VertexDeletion {
                v,
                alpha: ha,
                mu: hm,
                is_ke: ha + hm == h.n(),
            });
        }
        let mut edge_deletions = Vec::with_capacity(g.m());
        for &e in g.edges() {
            let h = g.delete_edge(e)?;
            let ha = alpha_in(h.masks(), h.vertices().bits()).0;
            let hm = mu_size(&h);
            edge_deletions.push(EdgeDeletion {
                edge: e,
                alpha: ha,
                mu: hm,
                is_ke: ha + hm == h.n(),
            });
        }

        let rho_v_witnesses: VertexSet = vertex_deletions.iter().filter(|x| x.is_ke).map(|x| x.v).collect();
        let rho_e_witnesses = EdgeSet::from_edges(edge_deletions.iter().filter(|x| x.is_ke).map(|x| x.edge).collect());
        let rho = RhoReport {
            rho_v: rho_v_witnesses.len(),
            rho_v_witnesses,
            rho_e: rho_e_witnesses.len(),
            rho_e_witnesses,
        };
        let alpha_critical_vertices = vertex_deletions.iter().filter(|x| x.alpha < a).map(|x| x.v).collect();
        let mu_critical_vertices = vertex_deletions.iter().filter(|x| x.mu < m).map(|x| x.v).collect();
        let alpha_critical_edges =
            EdgeSet::from_edges(edge_deletions.iter().filter(|x| x.alpha > a).map(|x| x.edge).collect());
        let mu_critical_edges =
            EdgeSet::from_edges(edge_deletions.iter().filter(|x| x.mu < m).map(|x| x.edge).collect());

        let omega = slot(omega_family(g, caps))?;
        let landscape = slot(critical_landscape(g, caps))?;
        let deletion_landscapes = slot(deletion_landscapes(g, caps))?;
        let parity = slot(classify_parity(g, caps))?;
        let max_matchings = match &parity {
            Ok(Parity::AlmostBipartite(_)) if !ke.is_ke => Some(slot(all_maximum_matchings(g, caps))?),
            _ => None,
        };

        Ok(Analysis {
            graph_id: graph_id.into(),
            graph: g.clone(),
            caps: *caps,
            alpha: a,
            alpha_witness,
            mu: m,
            matching,
            ke,
            vertex_deletions,
            edge_deletions,
            rho,
            alpha_critical_vertices,
            mu_critical_vertices,
            alpha_critical_edges,
            mu_critical_edges,
            d_double_cover: critical_difference_via_double_cover(g),
            omega,
            landscape,
            deletion_landscapes,
            parity,
            max_matchings,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Names of the caps that stopped some part of the analysis.
    pub fn skipped(&self) -> Vec<String> {
        let mut out: Vec<String> = [
            self.omega.as_ref().err(),
            self.landscape.as_ref().err(),
            self.deletion_landscapes.as_ref().err(),
            self.parity.as_ref().err(),
            self.max_matchings.as_ref().and_then(|s| s.as_ref().err()),
        ]
        .into_iter()
        .flatten()
        .map(|s| s.what.clone())
        .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn deletion_landscapes(g: &Graph, caps: &Caps) -> Result<Vec<DeletionLandscape>> {
    caps.check("enum_n", caps.enum_n, g.n())?;
    let mut out = Vec::with_capacity(g.n());
    for v in g.vertices().iter() {
        let (h, relabel) = g.delete_vertex(v)?;
        let (d, sets) = critical_sets(&h, caps)?;
        out.push(DeletionLandscape {
            v,
            d,
            critical_sets: sets.into_iter().map(|s| relabel.map_back(s)).collect(),
        });
    }
    Ok(out)
}
