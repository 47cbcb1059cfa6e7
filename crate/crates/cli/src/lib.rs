//! Benchmark harness behind the `graphfx` binary.

pub mod args;
pub mod dataset;
pub mod error;
pub mod report;
pub mod run;
pub mod sweep;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use graphfx_core::operators::AdvanceConfig;
use graphfx_core::primitives::{BcOptions, BfsOptions, CcOptions, PagerankOptions, SsspOptions, TcOptions};
use graphfx_core::CsrGraph;

use args::{Cli, Command, ExecArgs, Format, GraphArgs, ReportArgs, SourceSpec};
use dataset::GraphInfo;
use error::CliError;
use report::{Report, RunConfig};
use run::Job;

/// Sets the global worker count. Returns the count in effect.
pub fn configure_threads(threads: Option<usize>) -> Result<usize, CliError> {
    if threads == Some(0) {
        return Err(CliError::Config("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        // A second call in the same process (tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    if threads.is_some_and(|t| t > 1) {
        eprintln!("warning: built without the `parallel` feature, running on one thread");
    }
    Ok(graphfx_core::par::num_workers())
}

fn advance_config(exec: &ExecArgs) -> AdvanceConfig {
    AdvanceConfig {
        strategy: exec.traversal_mode,
        lb: exec.lb_params(),
        ..AdvanceConfig::default()
    }
}

fn load(graph: &GraphArgs, weighted: bool) -> Result<(CsrGraph, GraphInfo), CliError> {
    let mut g = dataset::build(&graph.graph, graph.directed, graph.seed)?;
    if weighted {
        g = dataset::ensure_weighted(g, graph.seed)?;
    }
    let info = GraphInfo::of(&graph.graph.to_string(), &g);
    Ok((g, info))
}

fn with_output(path: Option<&Path>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    match path {
        None => f(stdout),
        Some(p) => {
            let io = |source| CliError::Output {
                path: p.to_path_buf(),
                source,
            };
            let mut w = BufWriter::new(File::create(p).map_err(io)?);
            f(&mut w)?;
            w.flush().map_err(io)
        }
    }
}

fn benchmark(
    graph: &GraphArgs,
    source: Option<SourceSpec>,
    job: Job,
    report: &ReportArgs,
    threads: usize,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let (g, info) = load(graph, job.needs_weights())?;
    let runs = run::run_benchmark(
        &g,
        &job,
        source.unwrap_or(SourceSpec::Vertex(0)),
        report.iters,
        report.warmup,
        graph.seed,
    )?;
    let config = RunConfig {
        job,
        source: source.map(|s| s.to_string()),
        iters: report.iters,
        warmup: report.warmup,
        seed: graph.seed,
        threads,
    };
    let rep = Report::new(info, config, runs);
    with_output(report.out.as_deref(), stdout, |w| match report.output {
        Format::Json => report::write_json(&rep, w),
        Format::Csv => report::write_csv(&rep, w),
        Format::Table => report::write_table(&rep, w),
    })
}

/// Runs one parsed command, writing reports to `stdout` unless `--out` is set.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let threads = configure_threads(cli.threads)?;
    match &cli.command {
        Command::Bfs(a) => {
            let job = Job::Bfs(BfsOptions {
                advance: advance_config(&a.exec),
                idempotent: a.idempotent,
                direction: a.direction,
                do_a: a.do_a,
                do_b: a.do_b,
                estimate: a.mu_estimate.into(),
                ..BfsOptions::default()
            });
            benchmark(&a.graph, Some(a.source), job, &a.report, threads, stdout)
        }
        Command::Sssp(a) => {
            let job = Job::Sssp(SsspOptions {
                advance: advance_config(&a.exec),
                delta: a.delta,
                priority_queue: !a.no_priority_queue,
            });
            benchmark(&a.graph, Some(a.source), job, &a.report, threads, stdout)
        }
        Command::Bc(a) => {
            let job = Job::Bc(BcOptions {
                advance: advance_config(&a.exec),
            });
            benchmark(&a.graph, Some(a.source), job, &a.report, threads, stdout)
        }
        Command::Cc(a) => {
            let job = Job::Cc(CcOptions {
                advance: advance_config(&a.exec),
            });
            benchmark(&a.graph, None, job, &a.report, threads, stdout)
        }
        Command::Pagerank(a) => {
            let job = Job::Pagerank(PagerankOptions {
                advance: advance_config(&a.exec),
                damping: a.damping,
                epsilon: a.epsilon,
                max_iters: a.max_iters,
            });
            benchmark(&a.graph, None, job, &a.report, threads, stdout)
        }
        Command::Tc(a) => {
            let job = Job::Tc(TcOptions {
                advance: advance_config(&a.exec),
                intersect_cut: a.intersect_cut,
            });
            benchmark(&a.graph, None, job, &a.report, threads, stdout)
        }
        Command::Sweep(a) => {
            let (g, _) = load(&a.graph, false)?;
            let plan = sweep::SweepPlan {
                base: BfsOptions {
                    advance: advance_config(&a.exec),
                    idempotent: a.idempotent,
                    estimate: a.mu_estimate.into(),
                    ..BfsOptions::default()
                },
                do_a: &a.do_a,
                do_b: &a.do_b,
                runs: a.runs,
                warmup: a.warmup,
                seed: a.graph.seed,
            };
            let rows = sweep::sweep(&g, &plan)?;
            with_output(a.out.as_deref(), stdout, |w| match a.output {
                Format::Csv => sweep::write_csv(&rows, w),
                Format::Table => sweep::write_table(&rows, w),
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *w, &rows).map_err(|e| CliError::Encode(e.to_string()))?;
                    writeln!(w).map_err(|e| CliError::Encode(e.to_string()))
                }
            })
        }
    }
}
