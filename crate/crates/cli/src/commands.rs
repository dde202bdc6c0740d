use std::fs::{File, OpenOptions};
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{Context, Result};
use kef_core::generators::{generate, random_mix, Exhaustive, GenSpec, Generated, GraphStream, EXHAUSTIVE_MAX_N};
use kef_core::graph::{graph6, parse_edge_lists};
use kef_core::harness::{run_stream, Counterexample};
use kef_core::report::InvariantReport;
use kef_core::theorems::{run_suite, select, Status, TheoremVerdict};
use kef_core::{Caps, Graph, KefError};
use rayon::prelude::*;

use crate::{CapsArgs, Cli, Command, Format, Source};

pub fn run(cli: Cli) -> Result<u8> {
    let caps = resolve_caps(&cli.caps)?;
    match cli.command {
        Command::Report { source, format, out } => report(&source, format, out.as_deref(), &caps),
        Command::Verify {
            source,
            format,
            theorems,
            store,
            strict,
            jobs,
            out,
        } => verify(&source, format, &theorems, &store, strict, jobs, out.as_deref(), &caps),
        Command::Fuzz {
            exhaustive,
            random: _,
            include_disconnected,
            n_max,
            count,
            seed,
            kinds,
            theorems,
            jobs,
            store,
            strict,
            json,
        } => {
            let stream: GraphStream = if exhaustive {
                if n_max > EXHAUSTIVE_MAX_N {
                    return Err(KefError::input(format!("--exhaustive supports --n-max ≤ {EXHAUSTIVE_MAX_N}")).into());
                }
                Box::new((1..=n_max).flat_map(move |n| Exhaustive::new(n, !include_disconnected).map(Ok)))
            } else {
                random_mix(&split_list(&kinds), n_max, count, seed, &caps)?
            };
            fuzz(stream, &theorems, jobs, &store, strict, json, &caps)
        }
        Command::Gen { spec, format, out } => gen(&spec, format, out.as_deref(), &caps),
    }
}

fn resolve_caps(args: &CapsArgs) -> Result<Caps> {
    let mut caps = Caps::default();
    if let Ok(json) = std::env::var("KEF_CAPS_JSON") {
        caps = caps.overlay_json(&json).context("KEF_CAPS_JSON")?;
    }
    let flags = [
        (&mut caps.solver_n, args.solver_n),
        (&mut caps.enum_n, args.enum_n),
        (&mut caps.matching_enum_n, args.matching_enum_n),
        (&mut caps.cycle_work, args.cycle_work),
        (&mut caps.crit_count, args.crit_count),
        (&mut caps.matching_count, args.matching_count),
    ];
    for (slot, flag) in flags {
        if let Some(v) = flag {
            *slot = v;
        }
    }
    Ok(caps)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
}

fn read_text(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| KefError::input(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn load(source: &Source, format: Format, caps: &Caps) -> Result<Vec<Generated>> {
    if let Some(spec) = &source.gen {
        let spec: GenSpec = spec.parse()?;
        return Ok(generate(&spec, caps)?.collect::<kef_core::Result<Vec<_>>>()?);
    }
    let path = source.input.as_deref().expect("clap requires a source");
    let text = read_text(path)?;
    let graphs = match format {
        Format::Edgelist => parse_edge_lists(&text)?,
        Format::Graph6 => graph6::decode_all(&text)?,
    };
    if graphs.is_empty() {
        return Err(KefError::input(format!("{path}: no graph in input")).into());
    }
    let stem = if path == "-" {
        "stdin".to_string()
    } else {
        Path::new(path).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.to_string())
    };
    let single = graphs.len() == 1;
    Ok(graphs
        .into_iter()
        .enumerate()
        .map(|(i, graph)| Generated {
            id: if single { stem.clone() } else { format!("{stem}-{i}") },
            graph,
        })
        .collect())
}

fn output(out: Option<&str>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(File::create(p).with_context(|| format!("creating {p}"))?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn report(source: &Source, format: Format, out: Option<&str>, caps: &Caps) -> Result<u8> {
    let graphs = load(source, format, caps)?;
    let mut w = output(out)?;
    let mut code = 0;
    let single = graphs.len() == 1;
    for g in &graphs {
        let r = InvariantReport::compute(g.id.clone(), &g.graph, caps)?;
        if !r.capacity_skipped.is_empty() {
            code = 3;
        }
        if single {
            writeln!(w, "{}", r.to_json_pretty())?;
        } else {
            writeln!(w, "{}", serde_json::to_string(&r)?)?;
        }
    }
    w.flush()?;
    Ok(code)
}

fn append_store(path: &str, records: &[Counterexample]) -> Result<()> {
    if records.is_empty() {
        return Ok(());
    }
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening store {path}"))?;
    for r in records {
        writeln!(f, "{}", serde_json::to_string(r)?)?;
    }
    eprintln!("kef: {} failing graph(s) appended to {path}", records.len());
    Ok(())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("building thread pool")
}

#[allow(clippy::too_many_arguments)]
fn verify(
    source: &Source,
    format: Format,
    theorems: &str,
    store: &str,
    strict: bool,
    jobs: usize,
    out: Option<&str>,
    caps: &Caps,
) -> Result<u8> {
    let selection = split_list(theorems);
    select(&selection)?;
    let graphs = load(source, format, caps)?;
    let results: Vec<kef_core::Result<Vec<TheoremVerdict>>> = pool(jobs)?.install(|| {
        graphs
            .par_iter()
            .map(|g| run_suite(&g.id, &g.graph, &selection, caps))
            .collect()
    });
    let mut w = output(out)?;
    let mut failing = Vec::new();
    let mut skipped = false;
    for (g, verdicts) in graphs.iter().zip(results) {
        let verdicts = verdicts?;
        for v in &verdicts {
            writeln!(w, "{}", serde_json::to_string(v)?)?;
            skipped |= v.status == Status::CapacitySkipped;
        }
        let fails: Vec<TheoremVerdict> = verdicts.into_iter().filter(|v| v.status == Status::Fail).collect();
        if !fails.is_empty() {
            failing.push(Counterexample::new(&g.id, &g.graph, fails));
        }
    }
    w.flush()?;
    append_store(store, &failing)?;
    Ok(exit_for(!failing.is_empty(), skipped, strict))
}

fn exit_for(failed: bool, skipped: bool, strict: bool) -> u8 {
    if failed {
        1
    } else if strict && skipped {
        3
    } else {
        0
    }
}

fn fuzz(stream: GraphStream, theorems: &str, jobs: usize, store: &str, strict: bool, json: bool, caps: &Caps) -> Result<u8> {
    let checks = select(&split_list(theorems))?;
    let summary = run_stream(stream, &checks, caps, jobs)?;
    let mut w = output(None)?;
    if json {
        writeln!(w, "{}", serde_json::to_string_pretty(&summary)?)?;
    } else {
        write!(w, "{}", summary.to_text())?;
    }
    w.flush()?;
    append_store(store, &summary.failures)?;
    if !summary.errors.is_empty() {
        return Ok(1);
    }
    let t = summary.totals();
    Ok(exit_for(t.fail > 0, t.capacity_skipped > 0, strict))
}

fn gen(spec: &str, format: Format, out: Option<&str>, caps: &Caps) -> Result<u8> {
    let spec: GenSpec = spec.parse()?;
    let mut w = output(out)?;
    for item in generate(&spec, caps)? {
        let g: Graph = item?.graph;
        match format {
            Format::Edgelist => write!(w, "{}", g.to_edge_list())?,
            Format::Graph6 => writeln!(w, "{}", graph6::encode(&g))?,
        }
    }
    w.flush()?;
    Ok(0)
}
