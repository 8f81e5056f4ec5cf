use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use godel_core::corpus::{generate, CorpusKind};
use godel_core::learners::{
    amalgamation_learn, bounded_min_learner, enum_learner, kol_liminf_enumerator, run_to_limit,
    CandidateClass, GuessStream, GuessTrace, LearnerConfig, PocketTable,
};
use godel_core::numbering::looplang::LoopClass;
use godel_core::numbering::{eval, ProgramIndex};
use godel_core::oracles::window_verifies;
use godel_core::reductions::{check_reduction, lookup, mutate, MutantMode};
use godel_core::{Corpus, Instance, RunConfig, SeqDescriptor, Universe};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{csv_bytes, write_atomic, write_json, RunManifest};
use crate::{Failure, LearnerKind, Opts};

fn io_error(e: std::io::Error) -> Failure {
    Failure::Usage(format!("i/o: {e}"))
}

fn run_config(opts: &Opts) -> Result<RunConfig, Failure> {
    let mut cfg = match &opts.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            text.parse::<RunConfig>()
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    let flags = [
        ("cap", opts.cap),
        ("window", opts.window),
        ("index_bound", opts.index_bound),
        ("stability_window", opts.stability_window),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v);
        }
    }
    Ok(cfg)
}

fn read_corpus(path: &Path) -> Result<Corpus, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn describe(values: &[Option<u64>]) -> String {
    if let Some(n) = values.iter().position(Option::is_none) {
        return format!("undefined at {n}");
    }
    let v: Vec<u64> = values.iter().map(|x| x.unwrap()).collect();
    let from = |off: u64| v.iter().enumerate().all(|(n, &x)| x == n as u64 + off);
    if from(0) {
        "identity".into()
    } else if from(1) {
        "successor".into()
    } else if v.iter().all(|&x| x == v[0]) {
        format!("constant {}", v[0])
    } else {
        let shown: Vec<String> = v.iter().take(8).map(u64::to_string).collect();
        format!("values {},...", shown.join(","))
    }
}

pub fn enumerate(opts: &Opts, from: u64, to: u64) -> Result<(), Failure> {
    let cfg = run_config(opts)?.oracle;
    for i in from..=to {
        let index = ProgramIndex::new(i);
        let program = index.decode();
        let text = if program.is_empty() {
            "(empty)".to_string()
        } else {
            program.to_inline()
        };
        let values: Vec<Option<u64>> = (0..=cfg.window).map(|n| eval(&index, n, cfg.cap).value()).collect();
        println!("{i}\t{text}\t{}", describe(&values));
    }
    Ok(())
}

#[derive(Serialize)]
struct LearnSummary {
    instance: String,
    learner: &'static str,
    converged: bool,
    stabilized_at: Option<u64>,
    mind_changes: u64,
    final_guess: Option<String>,
    verified: bool,
    error: Option<String>,
}

#[derive(Serialize)]
struct LearnReport {
    learner: &'static str,
    instances: usize,
    convergence_rate: f64,
    mean_mind_changes: f64,
    verification_rate: f64,
    runs: Vec<LearnSummary>,
}

struct LearnOutcome {
    summary: LearnSummary,
    trace: Vec<(u64, String, u8)>,
    pockets: Option<PocketTable>,
}

fn learner_name(kind: LearnerKind) -> &'static str {
    match kind {
        LearnerKind::Enum => "enum",
        LearnerKind::EnumLoop => "enum-loop",
        LearnerKind::Amalgamation => "amalgamation",
        LearnerKind::Shrinking => "shrinking",
        LearnerKind::Liminf => "liminf",
    }
}

fn trace_rows<G: ToString + Clone + PartialEq>(t: &GuessTrace<G>) -> Vec<(u64, String, u8)> {
    t.guesses
        .iter()
        .zip(t.mind_change_flags())
        .enumerate()
        .map(|(k, (g, f))| (k as u64, g.to_string(), f as u8))
        .collect()
}

fn summarize<G: ToString>(
    instance: &Instance,
    learner: &'static str,
    t: &GuessTrace<G>,
    final_guess: Option<String>,
    verified: bool,
) -> LearnSummary {
    LearnSummary {
        instance: instance.to_string(),
        learner,
        converged: t.converged,
        stabilized_at: t.stabilized_at,
        mind_changes: t.mind_changes,
        final_guess,
        verified,
        error: None,
    }
}

fn failed(instance: &Instance, learner: &'static str, error: String) -> LearnOutcome {
    LearnOutcome {
        summary: LearnSummary {
            instance: instance.to_string(),
            learner,
            converged: false,
            stabilized_at: None,
            mind_changes: 0,
            final_guess: None,
            verified: false,
            error: Some(error),
        },
        trace: Vec::new(),
        pockets: None,
    }
}

fn learn_one(
    kind: LearnerKind,
    x: &Instance,
    u: &Universe,
    lcfg: &LearnerConfig,
    loops: &Option<Arc<LoopClass>>,
) -> LearnOutcome {
    let name = learner_name(kind);
    let (d, bound): (&SeqDescriptor, Option<u64>) = match x {
        Instance::Seq(d) => (d, None),
        Instance::Bounded(d, m) => (d, Some(*m)),
        Instance::Family(_) => return failed(x, name, "families are not learner inputs".into()),
    };
    let cfg = *u.cfg();
    // Without an explicit bound the promise is taken at the least index.
    let promise = || bound.or_else(|| u.min_index(d)).ok_or("no index within the universe".to_string());
    match kind {
        LearnerKind::Enum | LearnerKind::EnumLoop => {
            let class = match loops {
                Some(c) => CandidateClass::Total(c.clone()),
                None => CandidateClass::Full,
            };
            let Some(run) = enum_learner(d, class, u, lcfg) else {
                return failed(x, name, "undefined on the window".into());
            };
            let guess = run.trace.final_guess().cloned();
            let verified = run.trace.converged && guess.as_ref().is_some_and(|g| window_verifies(g, d, &cfg));
            LearnOutcome {
                summary: summarize(x, name, &run.trace, guess.map(|g| g.to_string()), verified),
                trace: trace_rows(&run.trace),
                pockets: None,
            }
        }
        LearnerKind::Amalgamation => {
            let m = match promise() {
                Ok(m) => m,
                Err(e) => return failed(x, name, e),
            };
            match amalgamation_learn(d, m, u, lcfg) {
                Ok(run) => LearnOutcome {
                    summary: summarize(
                        x,
                        name,
                        &run.trace,
                        Some(run.index.to_string()),
                        window_verifies(&run.index, d, &cfg),
                    ),
                    trace: trace_rows(&run.trace),
                    pockets: Some(run.table),
                },
                Err(e) => failed(x, name, format!("{e:?}")),
            }
        }
        LearnerKind::Shrinking => {
            let k = match promise() {
                Ok(k) => k,
                Err(e) => return failed(x, name, e),
            };
            match bounded_min_learner(d, k, u, lcfg) {
                Ok(run) => LearnOutcome {
                    summary: summarize(
                        x,
                        name,
                        &run.trace,
                        Some(run.index.to_string()),
                        window_verifies(&run.index, d, &cfg),
                    ),
                    trace: trace_rows(&run.trace),
                    pockets: None,
                },
                Err(e) => failed(x, name, format!("{e:?}")),
            }
        }
        LearnerKind::Liminf => {
            let Some(run) = kol_liminf_enumerator(d, u) else {
                return failed(x, name, "undefined on the window".into());
            };
            let least: Vec<Option<u64>> = run.least();
            let last = least.last().copied().flatten();
            let stream = least.into_iter().chain(std::iter::repeat(last));
            let trace = run_to_limit(
                &mut GuessStream(stream.map(|g| g.map_or("none".to_string(), |i| i.to_string()))),
                lcfg.stability_window,
                lcfg.max_steps,
            );
            let verified = last.is_some_and(|i| window_verifies(&ProgramIndex::new(i), d, &cfg));
            LearnOutcome {
                summary: summarize(x, name, &trace, last.map(|i| i.to_string()), verified),
                trace: trace_rows(&trace),
                pockets: None,
            }
        }
    }
}

fn rate(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

pub fn learn(opts: &Opts, kind: LearnerKind, corpus_path: &Path) -> Result<(), Failure> {
    let start = Instant::now();
    let cfg = run_config(opts)?;
    let corpus = read_corpus(corpus_path)?;
    let u = Universe::build(cfg.oracle);
    let lcfg = cfg.learner();
    let loops = matches!(kind, LearnerKind::EnumLoop).then(|| Arc::new(LoopClass::enumerate(3, 2)));
    let instances = corpus.instances();
    let outcomes: Vec<LearnOutcome> = instances
        .par_iter()
        .map(|x| learn_one(kind, x, &u, &lcfg, &loops))
        .collect();

    let dir = &opts.out_dir;
    let mut manifest = RunManifest::new("learn", &cfg, None);
    manifest.inputs.push(corpus_path.display().to_string());
    for (id, o) in outcomes.iter().enumerate() {
        let path = dir.join("traces").join(format!("{id:04}.csv"));
        let bytes = csv_bytes(&["step", "guess", "mind_change_flag"], &o.trace).map_err(io_error)?;
        write_atomic(&path, &bytes).map_err(io_error)?;
        manifest.outputs.push(format!("traces/{id:04}.csv"));
        if let Some(table) = &o.pockets {
            write_json(&dir.join("pockets").join(format!("{id:04}.json")), table).map_err(io_error)?;
            manifest.outputs.push(format!("pockets/{id:04}.json"));
        }
    }
    let runs: Vec<LearnSummary> = outcomes.into_iter().map(|o| o.summary).collect();
    let n = runs.len();
    let report = LearnReport {
        learner: learner_name(kind),
        instances: n,
        convergence_rate: rate(runs.iter().filter(|r| r.converged).count(), n),
        mean_mind_changes: if n == 0 {
            0.0
        } else {
            runs.iter().map(|r| r.mind_changes as f64).sum::<f64>() / n as f64
        },
        verification_rate: rate(runs.iter().filter(|r| r.verified).count(), n),
        runs,
    };
    write_json(&dir.join("summary.json"), &report).map_err(io_error)?;
    manifest.outputs.push("summary.json".into());
    manifest.finish(dir, start.elapsed()).map_err(io_error)?;
    println!(
        "{}: {} instances, convergence {:.3}, verification {:.3}",
        report.learner, n, report.convergence_rate, report.verification_rate
    );
    if report.convergence_rate == 1.0 && report.verification_rate == 1.0 {
        Ok(())
    } else {
        Err(Failure::Semantic("some runs did not converge or verify; see summary.json".into()))
    }
}

#[derive(Serialize)]
struct KolRow {
    instance: String,
    min_index: String,
    verified: bool,
}

pub fn kolmogorov(opts: &Opts, corpus_path: &Path) -> Result<(), Failure> {
    let start = Instant::now();
    let cfg = run_config(opts)?;
    let corpus = read_corpus(corpus_path)?;
    let u = Universe::build(cfg.oracle);
    let rows: Vec<KolRow> = corpus
        .instances()
        .par_iter()
        .map(|x| {
            let d = match x {
                Instance::Seq(d) | Instance::Bounded(d, _) => Some(d),
                Instance::Family(_) => None,
            };
            let least = d.and_then(|d| u.min_index(d));
            KolRow {
                instance: x.to_string(),
                min_index: least.map_or("not-found".into(), |i| i.to_string()),
                verified: match (d, least) {
                    (Some(d), Some(i)) => window_verifies(&ProgramIndex::new(i), d, &cfg.oracle),
                    _ => false,
                },
            }
        })
        .collect();
    let bytes = csv_bytes(&["instance", "min_index", "verified"], &rows).map_err(io_error)?;
    let dir = &opts.out_dir;
    write_atomic(&dir.join("kolmogorov.csv"), &bytes).map_err(io_error)?;
    let mut manifest = RunManifest::new("kolmogorov", &cfg, None);
    manifest.inputs.push(corpus_path.display().to_string());
    manifest.outputs.push("kolmogorov.csv".into());
    manifest.finish(dir, start.elapsed()).map_err(io_error)?;
    let flagged = rows.iter().filter(|r| !r.verified).count();
    println!("{} rows, {flagged} flagged", rows.len());
    if flagged == 0 {
        Ok(())
    } else {
        Err(Failure::Semantic(format!("{flagged} rows without a verified index")))
    }
}

pub fn reduce_check(opts: &Opts, name: &str, corpus_path: &Path, mutant: Option<&str>) -> Result<(), Failure> {
    let start = Instant::now();
    let cfg = run_config(opts)?;
    let mut r = lookup(name).ok_or_else(|| Failure::Usage(format!("unknown reduction {name:?}")))?;
    if let Some(m) = mutant {
        let mode = MutantMode::from_name(m).ok_or_else(|| Failure::Usage(format!("unknown mutant mode {m:?}")))?;
        r = mutate(&r, mode);
    }
    let corpus = read_corpus(corpus_path)?;
    let cx = cfg.context();
    let label = corpus_path
        .file_name()
        .map_or_else(|| corpus_path.display().to_string(), |f| f.to_string_lossy().into_owned());
    let report = check_reduction(&r, &corpus.instances(), &label, &cx);
    let dir = &opts.out_dir;
    let file = format!("report-{}.json", r.name.replace(['~', ':'], "-"));
    write_json(&dir.join(&file), &report).map_err(io_error)?;
    let mut manifest = RunManifest::new("reduce-check", &cfg, None);
    manifest.inputs.push(corpus_path.display().to_string());
    manifest.outputs.push(file);
    manifest.finish(dir, start.elapsed()).map_err(io_error)?;
    println!(
        "{}: {} on {} checked, {} skipped",
        report.reduction,
        if report.pass { "pass" } else { "fail" },
        report.checked,
        report.skipped
    );
    if report.pass {
        Ok(())
    } else {
        let witnesses = report.witnesses().count();
        Err(Failure::Semantic(format!("{witnesses} witnesses recorded")))
    }
}

pub fn corpus_gen(opts: &Opts, kind: &str, size: usize, seed: u64) -> Result<(), Failure> {
    let start = Instant::now();
    let cfg = run_config(opts)?;
    let kind = CorpusKind::from_name(kind).ok_or_else(|| Failure::Usage(format!("unknown corpus kind {kind:?}")))?;
    // Only program corpora depend on the universe.
    let u = Universe::build(match kind {
        CorpusKind::TotalPrograms => cfg.oracle,
        _ => godel_core::OracleConfig { index_bound: 0, ..cfg.oracle },
    });
    let corpus = generate(kind, size, seed, &u);
    let file = format!("{kind}-{size}-{seed}.corpus");
    let dir = &opts.out_dir;
    write_atomic(&dir.join(&file), corpus.to_string().as_bytes()).map_err(io_error)?;
    let mut manifest = RunManifest::new("corpus-gen", &cfg, Some(seed));
    manifest.outputs.push(file.clone());
    manifest.finish(dir, start.elapsed()).map_err(io_error)?;
    println!("{}", dir.join(file).display());
    Ok(())
}
