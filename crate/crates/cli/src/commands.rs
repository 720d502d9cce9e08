use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use ltsrank_core::corpus::Corpus;
use ltsrank_core::graph::LongestPathSearch;
use ltsrank_core::lts::{generate_random, GenerateError, serialize_aut, to_dot, to_graph_json, validate};
use ltsrank_core::metrics::{self, rank_corpus, MetricReport, CSV_HEADER};
use ltsrank_core::stats::{
    agreement, aggregate, correlate, fit_bt, read_records_csv, sample_pairs, BtOptions, BtResult,
    ComparisonRecord,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::*;
use crate::error::CliError;
use crate::table::Table;

type Out<'a> = &'a mut dyn Write;

fn json_line(out: Out, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn load_corpus(dir: &Path) -> Result<Corpus, CliError> {
    let corpus = Corpus::load(dir)?;
    for (entry, message) in corpus.index.errors() {
        eprintln!("error: {}: {message}", entry.path.display());
    }
    Ok(corpus)
}

fn read_annotations(path: &Path) -> Result<Vec<ComparisonRecord>, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    read_records_csv(BufReader::new(file)).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn compute_reports(
    corpus: &Corpus,
    only: Option<&BTreeSet<String>>,
    node_cap: usize,
    timeout: Option<Duration>,
) -> (Vec<MetricReport>, Vec<(String, String)>) {
    let designs: Vec<_> = corpus
        .designs()
        .filter(|d| only.is_none_or(|ids| ids.contains(d.id())))
        .collect();
    let results: Vec<_> = designs
        .par_iter()
        .map(|d| {
            let search = LongestPathSearch {
                node_cap,
                deadline: timeout.map(|t| Instant::now() + t),
            };
            (d.id().to_string(), metrics::compute_with(d, &search))
        })
        .collect();
    let mut reports = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (id, r) in results {
        match r {
            Ok(report) => reports.push(report),
            Err(e) => failures.push((id, e.to_string())),
        }
    }
    (reports, failures)
}

pub fn metrics(args: &MetricsArgs, out: Out) -> Result<(), CliError> {
    let corpus = load_corpus(&args.dir)?;
    let timeout = args.timeout_ms.map(Duration::from_millis);
    let (reports, failures) = compute_reports(&corpus, None, args.node_cap, timeout);
    for (id, message) in &failures {
        eprintln!("error: {id}: {message}");
    }
    for r in &reports {
        if !r.identities_hold() {
            log::error!("{}: metric identities do not hold", r.design_id);
        }
    }
    match args.format {
        Format::Csv => metrics::write_csv(&mut *out, &reports)?,
        Format::Json => json_line(out, &reports)?,
        Format::Table => {
            let mut t = Table::new(CSV_HEADER);
            for r in &reports {
                t.row([
                    r.design_id.clone(),
                    r.num_states.to_string(),
                    r.num_transitions.to_string(),
                    r.components.to_string(),
                    r.cyclomatic.to_string(),
                    r.state_space_size.to_string(),
                    format!("{:.4}", r.avg_branching),
                    r.max_depth.to_string(),
                    r.longest_path.to_string(),
                    r.albin.to_string(),
                    format!("{:.4}", r.modularity_q),
                    format!("{:.4}", r.redundancy_j),
                    r.identical_successor_pairs.to_string(),
                ]);
            }
            write!(out, "{t}")?;
        }
    }
    let broken = corpus.index.errors().count() + failures.len();
    if args.strict && broken > 0 {
        return Err(CliError::Data(format!("{broken} design(s) failed")));
    }
    Ok(())
}

pub fn rank(args: &RankArgs, out: Out) -> Result<(), CliError> {
    let corpus = load_corpus(&args.dir)?;
    let (reports, failures) = compute_reports(&corpus, None, ltsrank_core::graph::DEFAULT_NODE_CAP, None);
    for (id, message) in &failures {
        eprintln!("error: {id}: {message}");
    }
    let ranked = rank_corpus(&reports, args.metric, args.direction);
    match args.format {
        Format::Json => json_line(out, &ranked)?,
        Format::Csv | Format::Table => {
            let mut t = Table::new(["rank", "design_id", args.metric.name()]);
            for e in &ranked.entries {
                t.row([e.rank.to_string(), e.design_id.clone(), e.value.to_string()]);
            }
            if args.format == Format::Csv {
                t.write_csv(out)?;
            } else {
                write!(out, "{t}")?;
            }
        }
    }
    Ok(())
}

pub fn sample(args: &SamplePairsArgs, out: Out) -> Result<(), CliError> {
    let ids = match &args.corpus {
        Some(dir) => Some(load_corpus(dir)?.ids()),
        None => None,
    };
    let k = ids.as_ref().map_or(args.items.unwrap_or(0), Vec::len);
    let s = sample_pairs(k, args.n, args.seed)?;
    if !s.connected && args.n > 0 {
        eprintln!("warning: the {} pairs do not connect all {k} items", args.n);
    }
    let mut t = match ids {
        Some(_) => Table::new(["pair_id", "a", "b", "design_a", "design_b"]),
        None => Table::new(["pair_id", "a", "b"]),
    };
    for (i, &(a, b)) in s.pairs.iter().enumerate() {
        let mut row = vec![i.to_string(), a.to_string(), b.to_string()];
        if let Some(ids) = &ids {
            row.push(ids[a].clone());
            row.push(ids[b].clone());
        }
        t.row(row);
    }
    match &args.out {
        Some(path) => {
            let mut f = File::create(path).map_err(|e| CliError::io(path, e))?;
            t.write_csv(&mut f)?;
        }
        None => t.write_csv(out)?,
    }
    Ok(())
}

fn fit(records: &[ComparisonRecord], bt: &BtArgs) -> Result<BtResult, CliError> {
    let items: Vec<String> = records
        .iter()
        .flat_map(|r| [r.design_a.clone(), r.design_b.clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let matrix = aggregate(&items, records, bt.polarity)?;
    let result = fit_bt(
        &matrix,
        &BtOptions {
            tol: bt.tol,
            max_iter: bt.max_iter,
            alpha: bt.alpha,
        },
    )?;
    if result.smoothed {
        eprintln!(
            "note: win graph is not strongly connected; smoothed with alpha = {}",
            bt.alpha
        );
    }
    if !result.converged {
        eprintln!("warning: no convergence after {} sweeps", result.iterations);
    }
    Ok(result)
}

pub fn fit_bt_cmd(args: &FitBtArgs, out: Out) -> Result<(), CliError> {
    let records = read_annotations(&args.annotations)?;
    let r = fit(&records, &args.bt)?;
    match args.format {
        Format::Json => json_line(out, &r)?,
        Format::Csv | Format::Table => {
            let mut t = Table::new(["rank", "design_id", "strength"]);
            for (i, id) in r.ranking.iter().enumerate() {
                let p = r.strength_of(id).unwrap_or(f64::NAN);
                t.row([(i + 1).to_string(), id.clone(), format!("{p:.10}")]);
            }
            if args.format == Format::Csv {
                t.write_csv(out)?;
            } else {
                write!(out, "{t}")?;
                writeln!(
                    out,
                    "({} items, polarity {}, {} sweeps, converged: {}, smoothed: {}, log-likelihood {:.6})",
                    r.items.len(),
                    r.polarity,
                    r.iterations,
                    r.converged,
                    r.smoothed,
                    r.log_likelihood
                )?;
            }
        }
    }
    Ok(())
}

pub fn correlate_cmd(args: &CorrelateArgs, out: Out) -> Result<(), CliError> {
    let records = read_annotations(&args.annotations)?;
    let corpus = load_corpus(&args.dir)?;
    let annotated: BTreeSet<String> = records
        .iter()
        .flat_map(|r| [r.design_a.clone(), r.design_b.clone()])
        .collect();
    let missing: Vec<&String> = annotated.iter().filter(|id| !corpus.contains(id)).collect();
    if !missing.is_empty() {
        return Err(CliError::Data(format!(
            "annotations name designs missing from {}: {}",
            args.dir.display(),
            missing.iter().take(5).map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
        )));
    }
    let skipped = corpus.len() - annotated.len();
    if skipped > 0 {
        eprintln!("note: {skipped} corpus design(s) have no annotations and are left out");
    }
    let (reports, failures) = compute_reports(
        &corpus,
        Some(&annotated),
        ltsrank_core::graph::DEFAULT_NODE_CAP,
        None,
    );
    if let Some((id, message)) = failures.first() {
        return Err(CliError::Data(format!("{id}: {message}")));
    }
    let human = fit(&records, &args.bt)?;
    let report = correlate(&reports, &human, &args.reference)?;
    match args.format {
        Format::Table => write!(out, "{report}")?,
        Format::Csv => report.write_csv(&mut *out)?,
        Format::Json => json_line(out, &report)?,
    }
    Ok(())
}

pub fn agreement_cmd(args: &AgreementArgs, out: Out) -> Result<(), CliError> {
    let records = read_annotations(&args.annotations)?;
    let percent = agreement(&records)?;
    match args.format {
        Format::Json => json_line(out, &serde_json::json!({ "percent": percent }))?,
        Format::Csv => writeln!(out, "percent\n{percent}")?,
        Format::Table => writeln!(out, "{percent:.3}%")?,
    }
    Ok(())
}

pub fn gen(args: &GenArgs, out: Out) -> Result<(), CliError> {
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let width = args.count.saturating_sub(1).to_string().len().max(3);
    if args.states.min == 0 {
        return Err(GenerateError::NoStates.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for i in 0..args.count {
        let n = rng.random_range(args.states.min..=args.states.max);
        let density = if args.density.min < args.density.max {
            rng.random_range(args.density.min..=args.density.max)
        } else {
            args.density.min
        };
        let design_seed = rng.random::<u64>();
        let id = format!("lts_{i:0width$}");
        let d = generate_random(n, density, args.labels, design_seed)?.with_id(&id);
        debug_assert!(validate(&d).unreachable_states.is_empty());
        let path = args.out.join(format!("{id}.aut"));
        fs::write(&path, serialize_aut(&d)).map_err(|e| CliError::io(&path, e))?;
    }
    writeln!(out, "wrote {} design(s) to {}", args.count, args.out.display())?;
    Ok(())
}

pub fn export(args: &ExportArgs, out: Out) -> Result<(), CliError> {
    let corpus = load_corpus(&args.dir)?;
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let ext = if args.kind.dot { "dot" } else { "json" };
    for d in corpus.designs() {
        let text = if args.kind.dot {
            to_dot(d)
        } else {
            to_graph_json(d) + "\n"
        };
        let path = args.out.join(format!("{}.{ext}", d.id()));
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    }
    writeln!(out, "wrote {} {ext} file(s) to {}", corpus.len(), args.out.display())?;
    if corpus.index.errors().count() > 0 {
        return Err(CliError::Data("some designs failed to parse".into()));
    }
    Ok(())
}

pub fn serve(args: &ServeArgs) -> Result<(), CliError> {
    let config = ltsrank_service::ServiceConfig {
        corpus_dir: args.corpus.clone(),
        state_dir: args.state_dir.clone(),
        pairs: args.pairs,
        seed: args.seed,
        polarity: args.polarity,
        alpha: args.alpha,
        shuffle_per_annotator: args.shuffle,
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Data(e.to_string()))?;
    let addr = std::net::SocketAddr::new(args.host, args.port);
    runtime.block_on(ltsrank_service::serve(config, addr))?;
    Ok(())
}

/// Flushes stdout, treating a closed pipe as success.
pub fn finish(out: &mut impl Write) -> Result<(), CliError> {
    match out.flush() {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}
