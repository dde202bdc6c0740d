//! Hand-copied figure graphs.
//!
//! Vertices are given by their drawing coordinates; each one is addressable
//! as `"x,y"` and, where the drawing names it, by its letter. Every fixture
//! carries the values stated for it, and [`Fixture::verify`] recomputes them.

use std::collections::BTreeMap;

use crate::analysis::Analysis;
use crate::caps::Caps;
use crate::error::{KefError, Result};
use crate::graph::{Graph, VertexSet};
use crate::odd::{pendant_decomposition, PartitionVerdict};
use crate::theorems::{registry, Status};

type Pt = (i32, i32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    Order(usize),
    Alpha(usize),
    Mu(usize),
    D(i64),
    /// d(G − v) for the labelled vertex.
    DWithout(&'static str, i64),
    RhoV(usize),
    OneKe,
    NotKe,
    Parity(&'static str),
    Core(&'static [&'static str]),
    Diadem(&'static [&'static str]),
    Nucleus(&'static [&'static str]),
    NDiadem(&'static [&'static str]),
    /// ρ_v witnesses are exactly V minus these.
    NonDeletable(&'static [&'static str]),
    MuCritical(&'static str),
    InNCore(&'static str),
    InNDiadem(&'static str),
    CoreProperlyInNucleus,
    CycleLen(usize),
    /// |V(C)| and |N[diadem]| as returned by the partition check.
    PartitionBlocks(usize, usize),
    /// D_y for the labelled cycle vertex y.
    PendantComponent(&'static str, &'static [&'static str]),
    /// A registry check passes with the given `lhs` and `rhs` detail values.
    CheckValues(&'static str, i64, i64),
}

#[derive(Debug, Clone)]
pub struct ClaimOutcome {
    pub claim: Claim,
    pub holds: bool,
    pub observed: String,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub labels: BTreeMap<String, usize>,
    pub claims: Vec<Claim>,
}

struct Spec {
    name: &'static str,
    points: Vec<Pt>,
    edges: Vec<(Pt, Pt)>,
    labels: &'static [(&'static str, Pt)],
    claims: Vec<Claim>,
}

fn row(xs: std::ops::RangeInclusive<i32>, y: i32) -> Vec<Pt> {
    xs.map(|x| (x, y)).collect()
}

fn row_path(xs: std::ops::RangeInclusive<i32>, y: i32) -> Vec<(Pt, Pt)> {
    let pts = row(xs, y);
    pts.windows(2).map(|w| (w[0], w[1])).collect()
}

fn cat<T: Clone>(parts: &[&[T]]) -> Vec<T> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn specs() -> Vec<Spec> {
    use Claim::*;
    vec![
        Spec {
            name: "fig123-G1",
            points: vec![(2, 0), (3, 0), (4, 0), (5, 0), (4, 1), (5, 1), (2, 1)],
            edges: cat(&[
                &row_path(2..=5, 0),
                &[((2, 0), (2, 1)), ((2, 1), (3, 0)), ((4, 0), (4, 1)), ((4, 1), (5, 1)), ((5, 0), (5, 1))],
            ]),
            labels: &[],
            claims: vec![OneKe, Parity("almost_bipartite")],
        },
        Spec {
            name: "fig123-G2",
            points: cat(&[&row(8..=12, 0), &[(11, 1), (12, 1), (8, 1)]]),
            edges: cat(&[
                &row_path(8..=12, 0),
                &[((8, 0), (8, 1)), ((8, 1), (9, 0)), ((11, 1), (12, 1)), ((10, 0), (11, 1)), ((12, 0), (12, 1))],
            ]),
            labels: &[],
            claims: vec![OneKe, Parity("multi_odd")],
        },
        Spec {
            name: "fig121212-G1",
            points: cat(&[&row(3..=6, 0), &row(3..=6, 1)]),
            edges: cat(&[
                &row_path(3..=6, 0),
                &[((3, 0), (3, 1)), ((3, 1), (4, 1)), ((4, 1), (5, 0)), ((5, 1), (6, 0)), ((6, 0), (6, 1))],
            ]),
            labels: &[("a", (5, 1)), ("b", (6, 1)), ("c", (6, 0))],
            claims: vec![
                RhoV(5),
                Core(&["a", "b"]),
                NonDeletable(&["a", "b", "c"]),
                MuCritical("c"),
                InNCore("c"),
                Parity("almost_bipartite"),
                NotKe,
            ],
        },
        Spec {
            name: "fig121212-G2",
            points: cat(&[&row(8..=11, 0), &[(9, 1), (10, 1), (11, 1)]]),
            edges: cat(&[
                &row_path(8..=11, 0),
                &[((8, 0), (9, 1)), ((9, 1), (10, 1)), ((10, 0), (10, 1)), ((11, 0), (11, 1))],
            ]),
            labels: &[("x", (11, 0))],
            claims: vec![Order(7), RhoV(6), NonDeletable(&["x"]), Core(&[]), MuCritical("x")],
        },
        Spec {
            name: "fig44",
            points: cat(&[&row(2..=8, 0), &[(3, 1), (4, 1), (5, 1), (7, 1), (8, 1)]]),
            edges: cat(&[
                &row_path(2..=8, 0),
                &[
                    ((3, 1), (4, 0)),
                    ((4, 0), (4, 1)),
                    ((5, 1), (6, 0)),
                    ((5, 0), (5, 1)),
                    ((7, 0), (7, 1)),
                    ((7, 1), (8, 1)),
                    ((8, 0), (8, 1)),
                ],
            ]),
            labels: &[("y", (6, 0))],
            claims: vec![
                Parity("almost_bipartite"),
                PendantComponent("y", &["6,0", "7,0", "8,0", "7,1", "8,1"]),
            ],
        },
        Spec {
            name: "fig34-G1",
            points: cat(&[&row(2..=6, 0), &row(2..=5, 1)]),
            edges: cat(&[
                &row_path(2..=6, 0),
                &[
                    ((2, 0), (2, 1)),
                    ((2, 1), (3, 0)),
                    ((3, 1), (4, 1)),
                    ((4, 1), (5, 1)),
                    ((3, 1), (4, 0)),
                    ((4, 0), (5, 1)),
                ],
            ]),
            labels: &[("a", (3, 1)), ("b", (4, 1)), ("c", (5, 1)), ("x", (4, 0)), ("y", (5, 0)), ("z", (6, 0))],
            claims: vec![
                Diadem(&["a", "c", "y", "z"]),
                NDiadem(&["b", "x", "y", "z"]),
                CheckValues("lem13", 1, 2),
            ],
        },
        Spec {
            name: "fig34-G2",
            points: cat(&[&row(8..=11, 0), &row(8..=11, 1)]),
            edges: cat(&[
                &row_path(8..=11, 0),
                &[((8, 0), (8, 1)), ((8, 1), (9, 0)), ((9, 1), (10, 0)), ((10, 0), (10, 1)), ((11, 0), (11, 1))],
            ]),
            labels: &[("u", (9, 1)), ("v", (10, 1)), ("w", (11, 1)), ("s", (10, 0)), ("t", (11, 0))],
            claims: vec![
                Diadem(&["u", "v", "w", "t"]),
                NDiadem(&["s", "t", "w"]),
                CheckValues("lem13", 1, 1),
            ],
        },
        Spec {
            name: "fig1-G1",
            points: cat(&[&row(3..=5, 0), &row(3..=5, 1), &[(4, 2), (5, 2)]]),
            edges: vec![
                ((3, 0), (4, 0)),
                ((4, 0), (5, 0)),
                ((3, 0), (3, 1)),
                ((3, 0), (4, 1)),
                ((3, 0), (4, 2)),
                ((3, 1), (4, 2)),
                ((3, 1), (4, 0)),
                ((3, 1), (4, 1)),
                ((4, 0), (5, 1)),
                ((4, 0), (5, 2)),
                ((4, 1), (5, 2)),
                ((4, 1), (5, 0)),
                ((4, 1), (5, 1)),
                ((4, 2), (5, 2)),
                ((4, 2), (5, 1)),
                ((4, 2), (5, 0)),
                ((5, 0), (5, 1)),
                ((5, 1), (5, 2)),
                ((5, 0), (5, 2)),
            ],
            labels: &[],
            claims: vec![OneKe],
        },
        Spec {
            name: "fig1-G2",
            points: cat(&[&row(8..=12, 0), &[(9, 1), (10, 1), (11, 1)]]),
            edges: cat(&[
                &row_path(8..=12, 0),
                &[((8, 0), (9, 1)), ((9, 1), (10, 1)), ((10, 0), (10, 1)), ((11, 0), (11, 1))],
            ]),
            labels: &[("x", (11, 0)), ("y", (12, 0)), ("z", (11, 1))],
            claims: vec![
                D(1),
                DWithout("y", 0),
                DWithout("x", 2),
                Diadem(&["y", "z"]),
                InNDiadem("x"),
                OneKe,
            ],
        },
        Spec {
            name: "fig2-G1",
            points: vec![(3, 0), (4, 0), (5, 0), (4, 1), (5, 1)],
            edges: vec![((3, 0), (4, 0)), ((4, 0), (5, 0)), ((3, 0), (4, 1)), ((4, 0), (4, 1)), ((5, 0), (5, 1))],
            labels: &[("x", (5, 1))],
            claims: vec![Nucleus(&["x"]), CoreProperlyInNucleus, RhoV(4), CycleLen(3), PartitionBlocks(3, 2)],
        },
        Spec {
            name: "fig2-G2",
            points: cat(&[&row(8..=11, 0), &[(9, 1), (10, 1)]]),
            edges: cat(&[
                &row_path(8..=11, 0),
                &[((8, 0), (9, 1)), ((9, 0), (9, 1)), ((10, 0), (10, 1))],
            ]),
            labels: &[("u", (10, 1)), ("v", (11, 0))],
            claims: vec![Core(&["u", "v"]), Nucleus(&["u", "v"]), RhoV(3), CycleLen(3)],
        },
        Spec {
            name: "fig11222",
            points: cat(&[&row(5..=9, 0), &row(5..=9, 1)]),
            edges: cat(&[
                &row_path(5..=9, 0),
                &[
                    ((5, 0), (5, 1)),
                    ((5, 1), (6, 0)),
                    ((6, 1), (7, 1)),
                    ((7, 1), (8, 1)),
                    ((6, 1), (7, 0)),
                    ((7, 0), (8, 1)),
                    ((8, 0), (9, 1)),
                ],
            ]),
            labels: &[],
            claims: vec![Alpha(5), Mu(4), RhoV(5), CheckValues("cor13", 5, 4)],
        },
    ]
}

pub fn fixture_names() -> Vec<&'static str> {
    specs().iter().map(|s| s.name).collect()
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let spec = specs()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| KefError::input(format!("unknown fixture {name:?} (known: {})", fixture_names().join(", "))))?;
    let index: BTreeMap<Pt, usize> = spec.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    assert_eq!(index.len(), spec.points.len(), "{name}: repeated point");
    let id = |p: Pt| *index.get(&p).unwrap_or_else(|| panic!("{name}: edge end {p:?} is not a vertex"));
    let graph = Graph::new(spec.points.len(), spec.edges.iter().map(|&(a, b)| (id(a), id(b)))).expect("fixture edges are valid");
    let mut labels: BTreeMap<String, usize> = spec.points.iter().map(|&(x, y)| (format!("{x},{y}"), id((x, y)))).collect();
    for &(l, p) in spec.labels {
        labels.insert(l.to_string(), id(p));
    }
    Ok(Fixture {
        name: spec.name,
        graph,
        labels,
        claims: spec.claims,
    })
}

impl Fixture {
    /// Graph id used in reports and verdicts.
    pub fn graph_id(&self) -> String {
        format!("figure-{}", self.name)
    }

    pub fn vertex(&self, label: &str) -> usize {
        *self.labels.get(label).unwrap_or_else(|| panic!("{}: no vertex labelled {label}", self.name))
    }

    pub fn set(&self, labels: &[&str]) -> VertexSet {
        labels.iter().map(|l| self.vertex(l)).collect()
    }

    /// Name a vertex set with letters where available, coordinates otherwise.
    pub fn describe(&self, s: VertexSet) -> String {
        let names: Vec<String> = s
            .iter()
            .map(|v| {
                let mut named = self.labels.iter().filter(|(_, &u)| u == v).map(|(l, _)| l.as_str());
                let first = named.next().unwrap_or("?");
                named.find(|l| !l.contains(',')).unwrap_or(first).to_string()
            })
            .collect();
        format!("{{{}}}", names.join(" "))
    }

    pub fn analyse(&self, caps: &Caps) -> Result<Analysis> {
        Analysis::new(self.graph_id(), &self.graph, caps)
    }

    pub fn verify(&self, caps: &Caps) -> Result<Vec<ClaimOutcome>> {
        let a = self.analyse(caps)?;
        Ok(self.claims.iter().map(|c| self.check(c, &a)).collect())
    }

    fn check(&self, claim: &Claim, a: &Analysis) -> ClaimOutcome {
        let g = &self.graph;
        let set_eq = |want: VertexSet, got: VertexSet| (want == got, self.describe(got));
        let num = |want: i64, got: i64| (want == got, got.to_string());
        let (holds, observed) = match *claim {
            Claim::Order(n) => num(n as i64, g.n() as i64),
            Claim::Alpha(x) => num(x as i64, a.alpha as i64),
            Claim::Mu(x) => num(x as i64, a.mu as i64),
            Claim::RhoV(x) => num(x as i64, a.rho.rho_v as i64),
            Claim::OneKe => (a.ke.is_one_ke, format!("kappa {}", a.ke.kappa)),
            Claim::NotKe => (!a.ke.is_ke, format!("kappa {}", a.ke.kappa)),
            Claim::Parity(p) => match &a.parity {
                Ok(got) => (got.name() == p, got.name().to_string()),
                Err(s) => (false, format!("skipped: {}", s.what)),
            },
            Claim::MuCritical(l) => (a.mu_critical_vertices.contains(self.vertex(l)), self.describe(a.mu_critical_vertices)),
            Claim::NonDeletable(ls) => set_eq(g.vertices().difference(self.set(ls)), a.rho.rho_v_witnesses),
            _ => match self.check_structure(claim, a) {
                Some(r) => r,
                None => (false, "capacity skipped".to_string()),
            },
        };
        ClaimOutcome {
            claim: claim.clone(),
            holds,
            observed,
        }
    }

    fn check_structure(&self, claim: &Claim, a: &Analysis) -> Option<(bool, String)> {
        let g = &self.graph;
        let set_eq = |want: VertexSet, got: VertexSet| (want == got, self.describe(got));
        let l = a.landscape.as_ref().ok()?;
        let core = a.omega.as_ref().ok()?.intersection();
        Some(match *claim {
            Claim::D(d) => (l.d == d, l.d.to_string()),
            Claim::DWithout(v, d) => {
                let dels = a.deletion_landscapes.as_ref().ok()?;
                let got = dels.iter().find(|x| x.v == self.vertex(v))?.d;
                (got == d, got.to_string())
            }
            Claim::Core(ls) => set_eq(self.set(ls), core),
            Claim::Diadem(ls) => set_eq(self.set(ls), l.diadem),
            Claim::Nucleus(ls) => set_eq(self.set(ls), l.nucleus),
            Claim::NDiadem(ls) => set_eq(self.set(ls), g.open_nbhd(l.diadem)),
            Claim::InNCore(v) => (g.open_nbhd(core).contains(self.vertex(v)), self.describe(g.open_nbhd(core))),
            Claim::InNDiadem(v) => (g.open_nbhd(l.diadem).contains(self.vertex(v)), self.describe(g.open_nbhd(l.diadem))),
            Claim::CoreProperlyInNucleus => (
                core.is_subset(l.nucleus) && core != l.nucleus,
                format!("core {} nucleus {}", self.describe(core), self.describe(l.nucleus)),
            ),
            Claim::CycleLen(k) => {
                let c = a.parity.as_ref().ok()?.odd_cycle()?;
                (c.len() == k, c.len().to_string())
            }
            Claim::PartitionBlocks(k, rest) => {
                match crate::odd::partition_check(g, a.parity.as_ref().ok()?, a.ke.is_ke, l) {
                    PartitionVerdict::Checked {
                        cycle_block, diadem_block, ..
                    } => (
                        cycle_block.len() == k && diadem_block.len() == rest,
                        format!("{} and {}", self.describe(cycle_block), self.describe(diadem_block)),
                    ),
                    PartitionVerdict::NotApplicable { reason } => (false, reason),
                }
            }
            Claim::PendantComponent(y, ls) => {
                let c = a.parity.as_ref().ok()?.odd_cycle()?;
                let dec = pendant_decomposition(g, c).ok()?;
                let comp = dec.components.iter().find(|d| d.root == self.vertex(y))?;
                set_eq(self.set(ls), comp.vertices)
            }
            Claim::CheckValues(id, lhs, rhs) => {
                let check = registry().iter().find(|c| c.id == id)?;
                let v = check.evaluate(a);
                let got = (v.detail["lhs"].as_i64(), v.detail["rhs"].as_i64());
                (v.status == Status::Pass && got == (Some(lhs), Some(rhs)), format!("{} {}", v.status.as_str(), v.detail))
            }
            _ => unreachable!("handled in check"),
        })
    }
}
