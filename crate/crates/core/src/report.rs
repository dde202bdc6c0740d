//! The serialized per-graph invariant report (schema v1).

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::caps::Caps;
use crate::error::{KefError, Result};
use crate::graph::{Graph, VertexSet};
use crate::odd::OddCycleWitness;

pub const SCHEMA_VERSION: u32 = 1;

/// Every computed invariant of one graph. Fields that could not be computed
/// within the caps are null and named in `capacity_skipped`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub alpha: Option<usize>,
    pub mu: Option<usize>,
    pub kappa: Option<usize>,
    pub d: Option<i64>,
    pub xi: Option<usize>,
    pub epsilon: Option<usize>,
    pub beta: Option<usize>,
    pub alpha_prime: Option<usize>,
    pub nucleus_size: Option<usize>,
    pub rho_v: Option<usize>,
    pub rho_e: Option<usize>,
    pub is_ke: Option<bool>,
    pub is_one_ke: Option<bool>,
    pub parity_class: Option<String>,
    pub core: Option<VertexSet>,
    pub corona: Option<VertexSet>,
    pub ker: Option<VertexSet>,
    pub diadem: Option<VertexSet>,
    pub nucleus: Option<VertexSet>,
    pub odd_cycle: Option<OddCycleWitness>,
    pub rho_v_witnesses: Option<VertexSet>,
    pub caps: Caps,
    pub capacity_skipped: Vec<String>,
}

impl InvariantReport {
    pub fn from_analysis(a: &Analysis) -> InvariantReport {
        let omega = a.omega.as_ref().ok();
        let land = a.landscape.as_ref().ok();
        let parity = a.parity.as_ref().ok();
        InvariantReport {
            schema_version: SCHEMA_VERSION,
            graph_id: a.graph_id.clone(),
            n: a.graph.n(),
            m: a.graph.m(),
            alpha: Some(a.alpha),
            mu: Some(a.mu),
            kappa: Some(a.ke.kappa),
            d: land.map(|l| l.d),
            xi: omega.map(|o| o.intersection().len()),
            epsilon: land.map(|l| l.epsilon()),
            beta: land.map(|l| l.beta()),
            alpha_prime: land.map(|l| l.alpha_prime),
            nucleus_size: land.map(|l| l.nucleus.len()),
            rho_v: Some(a.rho.rho_v),
            rho_e: Some(a.rho.rho_e),
            is_ke: Some(a.ke.is_ke),
            is_one_ke: Some(a.ke.is_one_ke),
            parity_class: parity.map(|p| p.name().to_string()),
            core: omega.map(|o| o.intersection()),
            corona: omega.map(|o| o.union()),
            ker: land.map(|l| l.ker),
            diadem: land.map(|l| l.diadem),
            nucleus: land.map(|l| l.nucleus),
            odd_cycle: parity.and_then(|p| p.odd_cycle().cloned()),
            rho_v_witnesses: Some(a.rho.rho_v_witnesses),
            caps: a.caps,
            capacity_skipped: a.skipped(),
        }
    }

    /// Analyse `g` and report; a cap hit on α or μ yields a report with
    /// only the size fields filled in.
    pub fn compute(graph_id: impl Into<String>, g: &Graph, caps: &Caps) -> Result<InvariantReport> {
        let graph_id = graph_id.into();
        match Analysis::new(graph_id.clone(), g, caps) {
            Ok(a) => Ok(InvariantReport::from_analysis(&a)),
            Err(KefError::Capacity { what, .. }) => Ok(InvariantReport {
                schema_version: SCHEMA_VERSION,
                graph_id,
                n: g.n(),
                m: g.m(),
                alpha: None,
                mu: None,
                kappa: None,
                d: None,
                xi: None,
                epsilon: None,
                beta: None,
                alpha_prime: None,
                nucleus_size: None,
                rho_v: None,
                rho_e: None,
                is_ke: None,
                is_one_ke: None,
                parity_class: None,
                core: None,
                corona: None,
                ker: None,
                diadem: None,
                nucleus: None,
                odd_cycle: None,
                rho_v_witnesses: None,
                caps: *caps,
                capacity_skipped: vec![what.to_string()],
            }),
            Err(e) => Err(e),
        }
    }

    pub fn is_partial(&self) -> bool {
        !self.capacity_skipped.is_empty()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<InvariantReport> {
        serde_json::from_str(text).map_err(|e| KefError::input(format!("bad report: {e}")))
    }
}
