//! Run the theorem suite over a stream of graphs and aggregate verdicts.
//!
//! Graphs are spread over a rayon pool; aggregation only adds counts and
//! sorts failures, so the summary does not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::caps::Caps;
use crate::error::{KefError, Result};
use crate::generators::{Generated, GraphStream};
use crate::graph::Graph;
use crate::theorems::{run_checks, Status, TheoremCheck, TheoremVerdict};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub capacity_skipped: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::NotApplicable => self.not_applicable += 1,
            Status::CapacitySkipped => self.capacity_skipped += 1,
        }
    }

    fn merge(&mut self, o: Tally) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.not_applicable += o.not_applicable;
        self.capacity_skipped += o.capacity_skipped;
    }
}

/// One graph with its failing verdicts; a line of the counterexample store.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph_id: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub verdicts: Vec<TheoremVerdict>,
}

impl Counterexample {
    pub fn new(graph_id: &str, g: &Graph, verdicts: Vec<TheoremVerdict>) -> Self {
        Counterexample {
            graph_id: graph_id.to_string(),
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.0, e.1)).collect(),
            verdicts,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub graphs: usize,
    pub per_theorem: BTreeMap<String, Tally>,
    pub failures: Vec<Counterexample>,
    /// Graphs the generator could not deliver or the analysis rejected.
    pub errors: Vec<String>,
}

impl FuzzSummary {
    pub fn totals(&self) -> Tally {
        let mut t = Tally::default();
        for x in self.per_theorem.values() {
            t.merge(*x);
        }
        t
    }

    fn merge(mut self, o: FuzzSummary) -> FuzzSummary {
        self.graphs += o.graphs;
        for (id, t) in o.per_theorem {
            self.per_theorem.entry(id).or_default().merge(t);
        }
        self.failures.extend(o.failures);
        self.errors.extend(o.errors);
        self
    }

    fn finish(mut self) -> FuzzSummary {
        self.failures.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
        self.errors.sort();
        self
    }

    /// Fixed-width table, one line per theorem id.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.per_theorem.keys().map(String::len).max().unwrap_or(0).max("theorem".len());
        writeln!(out, "graphs: {}", self.graphs).unwrap();
        writeln!(out, "{:<width$} {:>9} {:>9} {:>9} {:>9}", "theorem", "pass", "fail", "n/a", "skipped").unwrap();
        for (id, t) in &self.per_theorem {
            writeln!(
                out,
                "{id:<width$} {:>9} {:>9} {:>9} {:>9}",
                t.pass, t.fail, t.not_applicable, t.capacity_skipped
            )
            .unwrap();
        }
        let t = self.totals();
        writeln!(
            out,
            "{:<width$} {:>9} {:>9} {:>9} {:>9}",
            "total", t.pass, t.fail, t.not_applicable, t.capacity_skipped
        )
        .unwrap();
        writeln!(out, "failing graphs: {}", self.failures.len()).unwrap();
        for e in &self.errors {
            writeln!(out, "error: {e}").unwrap();
        }
        out
    }
}

fn skipped_verdicts(id: &str, checks: &[TheoremCheck], e: &KefError) -> Vec<TheoremVerdict> {
    let detail = match e {
        KefError::Capacity { what, limit, actual } => serde_json::json!({ "cap": what, "limit": limit, "actual": actual }),
        other => serde_json::json!({ "error": other.to_string() }),
    };
    checks
        .iter()
        .map(|c| TheoremVerdict {
            graph_id: id.to_string(),
            theorem_id: c.id.to_string(),
            status: Status::CapacitySkipped,
            detail: detail.clone(),
        })
        .collect()
}

fn one(item: Result<Generated>, checks: &[TheoremCheck], caps: &Caps, observe: &(dyn Fn(&Analysis) + Sync)) -> FuzzSummary {
    let mut s = FuzzSummary::default();
    let g = match item {
        Ok(g) => g,
        Err(e) => {
            s.errors.push(e.to_string());
            return s;
        }
    };
    s.graphs = 1;
    let verdicts = match Analysis::new(g.id.clone(), &g.graph, caps) {
        Ok(a) => {
            observe(&a);
            run_checks(&a, checks)
        }
        Err(e) if e.is_capacity() => skipped_verdicts(&g.id, checks, &e),
        Err(e) => {
            s.errors.push(format!("{}: {e}", g.id));
            return s;
        }
    };
    for v in &verdicts {
        s.per_theorem.entry(v.theorem_id.clone()).or_default().add(v.status);
    }
    let fails: Vec<TheoremVerdict> = verdicts.into_iter().filter(|v| v.status == Status::Fail).collect();
    if !fails.is_empty() {
        s.failures.push(Counterexample::new(&g.id, &g.graph, fails));
    }
    s
}

/// Check every graph of `stream` on `jobs` worker threads (0 = rayon's default).
pub fn run_stream(stream: GraphStream, checks: &[TheoremCheck], caps: &Caps, jobs: usize) -> Result<FuzzSummary> {
    run_stream_observed(stream, checks, caps, jobs, &|_| {})
}

/// As [`run_stream`], also handing each analysis to `observe` (from worker threads).
pub fn run_stream_observed(
    stream: GraphStream,
    checks: &[TheoremCheck],
    caps: &Caps,
    jobs: usize,
    observe: &(dyn Fn(&Analysis) + Sync),
) -> Result<FuzzSummary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| KefError::input(format!("thread pool: {e}")))?;
    let summary = pool.install(|| {
        stream
            .par_bridge()
            .fold(FuzzSummary::default, |acc, item| acc.merge(one(item, checks, caps, observe)))
            .reduce(FuzzSummary::default, FuzzSummary::merge)
    });
    Ok(summary.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GenSpec};
    use crate::theorems::{registry, CheckResult};
    use serde_json::json;

    fn stream(spec: &str) -> GraphStream {
        generate(&spec.parse::<GenSpec>().unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn exhaustive_five_has_no_failures() {
        let s = run_stream(stream("exhaustive:n=5,connected=true"), registry(), &Caps::default(), 0).unwrap();
        assert_eq!(s.graphs, 728);
        assert!(s.failures.is_empty(), "{:#?}", &s.failures[..s.failures.len().min(3)]);
        assert_eq!(s.totals().fail, 0);
        assert_eq!(s.totals().capacity_skipped, 0);
        assert!(s.errors.is_empty());
    }

    #[test]
    fn summaries_do_not_depend_on_thread_count() {
        let spec = "almost_bipartite_random:n=9,p=0.3,count=40,seed=2";
        let one = run_stream(stream(spec), registry(), &Caps::default(), 1).unwrap();
        let four = run_stream(stream(spec), registry(), &Caps::default(), 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.to_text(), four.to_text());
    }

    fn always_fails(a: &crate::analysis::Analysis) -> CheckResult {
        Ok((a.mu > a.alpha, json!({ "alpha": a.alpha, "mu": a.mu })))
    }

    #[test]
    fn failures_replay_from_the_store_record() {
        let bogus = [TheoremCheck {
            id: "mu-exceeds-alpha",
            statement: "deliberately false",
            check: always_fails,
        }];
        let s = run_stream(stream("odd_cycle:k=3"), &bogus, &Caps::default(), 1).unwrap();
        assert_eq!(s.failures.len(), 1);
        let line = serde_json::to_string(&s.failures[0]).unwrap();
        let record: Counterexample = serde_json::from_str(&line).unwrap();
        let a = crate::analysis::Analysis::new(record.graph_id.clone(), &record.graph().unwrap(), &Caps::default()).unwrap();
        assert_eq!(run_checks(&a, &bogus), record.verdicts);
    }

    #[test]
    fn oversized_graphs_are_skipped_not_failed() {
        let s = run_stream(stream("gnp:n=50,p=0.1,count=2,seed=1"), registry(), &Caps::default(), 1).unwrap();
        assert_eq!(s.graphs, 2);
        assert_eq!(s.totals().fail, 0);
        assert_eq!(s.totals().capacity_skipped, 2 * registry().len());
    }
}
