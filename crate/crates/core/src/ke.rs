//! König-Egerváry classification and the ρ statistics.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{KefError, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::solvers::independence::alpha_in;
use crate::solvers::matching::mu_size;
use crate::solvers::{
    alpha, alpha_critical_vertices, lex_min_maximum_independent_set, matching_from_into, mu,
    mu_critical_vertices, Matching,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeClassification {
    /// König deficiency n − (α + μ).
    pub kappa: usize,
    pub is_ke: bool,
    pub is_one_ke: bool,
    /// For KE graphs: the lexicographically smallest maximum independent set S.
    pub witness_s: Option<VertexSet>,
    /// For KE graphs: a matching of size |V − S| inside (S, V − S).
    pub witness_matching: Option<Matching>,
}

pub(crate) fn classify_from_parts(
    g: &Graph,
    alpha: usize,
    mu: usize,
    caps: &Caps,
) -> Result<KeClassification> {
    let kappa = g.n() - alpha - mu;
    let (witness_s, witness_matching) = if kappa == 0 {
        let s = lex_min_maximum_independent_set(g, caps)?;
        let rest = g.vertices().difference(s);
        (Some(s), matching_from_into(g, rest, s)?)
    } else {
        (None, None)
    };
    Ok(KeClassification {
        kappa,
        is_ke: kappa == 0,
        is_one_ke: kappa == 1,
        witness_s,
        witness_matching,
    })
}

pub fn classify_ke(g: &Graph, caps: &Caps) -> Result<KeClassification> {
    let (a, _) = alpha(g, caps)?;
    let (m, _) = mu(g, caps)?;
    classify_from_parts(g, a, m, caps)
}

/// True if α + μ = n. No cap check; callers have already bounded n.
pub(crate) fn is_ke_unchecked(g: &Graph) -> bool {
    alpha_in(g.masks(), g.vertices().bits()).0 + mu_size(g) == g.n()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoReport {
    pub rho_v: usize,
    /// Vertices v with G − v König-Egerváry, ascending.
    pub rho_v_witnesses: VertexSet,
    pub rho_e: usize,
    pub rho_e_witnesses: EdgeSet,
}

/// ρ_v and ρ_e by deleting each vertex and each edge in turn.
pub fn rho(g: &Graph, caps: &Caps) -> Result<RhoReport> {
    caps.check("solver_n", caps.solver_n, g.n())?;
    let mut rho_v_witnesses = VertexSet::EMPTY;
    for v in g.vertices().iter() {
        let (h, _) = g.delete_vertex(v)?;
        if is_ke_unchecked(&h) {
            rho_v_witnesses.insert(v);
        }
    }
    let mut edges = Vec::new();
    for &e in g.edges() {
        if is_ke_unchecked(&g.delete_edge(e)?) {
            edges.push(e);
        }
    }
    let rho_e_witnesses = EdgeSet::from_edges(edges);
    Ok(RhoReport {
        rho_v: rho_v_witnesses.len(),
        rho_v_witnesses,
        rho_e: rho_e_witnesses.len(),
        rho_e_witnesses,
    })
}

/// For a 1-KE graph: the vertices that are neither α-critical nor μ-critical.
pub fn deletable_by_criticality(g: &Graph, caps: &Caps) -> Result<VertexSet> {
    let class = classify_ke(g, caps)?;
    if class.kappa != 1 {
        return Err(KefError::Domain(format!(
            "deletable_by_criticality needs a 1-KE graph, got kappa = {}",
            class.kappa
        )));
    }
    let critical = alpha_critical_vertices(g, caps)?.union(mu_critical_vertices(g, caps)?);
    Ok(g.vertices().difference(critical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn classification_examples() {
        let caps = Caps::default();
        let k2 = classify_ke(&complete(2), &caps).unwrap();
        assert_eq!((k2.kappa, k2.is_ke), (0, true));
        assert_eq!(k2.witness_s, Some(VertexSet::singleton(0)));
        assert_eq!(k2.witness_matching.unwrap().len(), 1);

        let c5 = classify_ke(&cycle(5), &caps).unwrap();
        assert_eq!((c5.kappa, c5.is_ke, c5.is_one_ke), (1, false, true));
        assert!(c5.witness_s.is_none() && c5.witness_matching.is_none());
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let caps = Caps::default();
        let p4 = classify_ke(&path(4), &caps).unwrap();
        // Ω(P4) = {0,2}, {0,3}, {1,3}.
        assert_eq!(p4.witness_s, Some([0, 2].into_iter().collect()));
        let m = p4.witness_matching.unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.is_valid_in(&path(4)));
    }

    #[test]
    fn rho_of_odd_cycle() {
        let r = rho(&cycle(5), &Caps::default()).unwrap();
        assert_eq!(r.rho_v, 5);
        assert_eq!(r.rho_e, 5);
        assert_eq!(r.rho_v_witnesses, VertexSet::full(5));
    }

    #[test]
    fn deletable_examples() {
        let caps = Caps::default();
        assert_eq!(deletable_by_criticality(&cycle(5), &caps).unwrap(), VertexSet::full(5));
        assert!(matches!(
            deletable_by_criticality(&complete(2), &caps),
            Err(KefError::Domain(_))
        ));
    }

    #[test]
    fn rho_is_invariant_under_relabeling() {
        let caps = Caps::default();
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (3, 6)]).unwrap();
        let base = rho(&g, &caps).unwrap();
        let perm = [3, 6, 0, 5, 1, 4, 2];
        let h = g.permute(&perm).unwrap();
        let moved = rho(&h, &caps).unwrap();
        assert_eq!(base.rho_v, moved.rho_v);
        assert_eq!(base.rho_e, moved.rho_e);
        let mapped: VertexSet = base.rho_v_witnesses.iter().map(|v| perm[v]).collect();
        assert_eq!(mapped, moved.rho_v_witnesses);
    }
}
