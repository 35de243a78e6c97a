//! Subcommand implementations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;
use torfold::{
    run_suite, IceQuiver, OrbitSeed, PeriodicQuiver, Seed, SiteId, SuiteConfig, VertexId,
};

use crate::args::{Cli, Command, OutArg, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    /// 2 for bad input or usage, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Runtime(_) => 1,
            _ => 2,
        }
    }
}

/// Process exit status of a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Self::Pass => 0,
            Self::Fail => 1,
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn emit<T: Serialize>(value: &T, out: &OutArg, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string(value).expect("values serialize");
    text.push('\n');
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn sites(items: &[String]) -> Result<Vec<SiteId>, CliError> {
    items
        .iter()
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("site {s:?} is not a nonnegative integer")))
        })
        .collect()
}

fn vertices(q: &IceQuiver, items: &[String]) -> Result<Vec<VertexId>, CliError> {
    items
        .iter()
        .map(|s| {
            let v = VertexId::new(s.clone());
            if q.contains(&v) {
                Ok(v)
            } else {
                Err(CliError::Usage(format!("unknown vertex {s:?}")))
            }
        })
        .collect()
}

/// Orbit-mutates step by step. A step that starts from an inadmissible
/// quiver stops the run with the sequence that led there.
fn orbit_walk(pq: &PeriodicQuiver, seq: &[SiteId]) -> Result<Result<PeriodicQuiver, serde_json::Value>, CliError> {
    let mut q = pq.clone();
    for (step, &k) in seq.iter().enumerate() {
        let violations = q.admissibility_check();
        if !violations.is_empty() {
            return Ok(Err(json!({
                "verdict": "violation",
                "witness": &seq[..step],
                "violations": violations,
            })));
        }
        q = q.orbit_mutate(k).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(Ok(q))
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Mutate { quiver, seq, out } => {
            let q: IceQuiver = read_json(&quiver)?;
            let seq = vertices(&q, &seq.items())?;
            let m = q.mutate_sequence(&seq).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&m, &out, stdout)?;
            Ok(Status::Pass)
        }
        Command::OrbitMutate { periodic, seq, out } => {
            let pq: PeriodicQuiver = read_json(&periodic)?;
            match orbit_walk(&pq, &sites(&seq.items())?)? {
                Ok(q) => {
                    if !q.is_admissible() {
                        log::warn!("result is not admissible: {:?}", q.admissibility_check());
                    }
                    emit(&q, &out, stdout)?;
                    Ok(Status::Pass)
                }
                Err(report) => {
                    emit(&report, &out, stdout)?;
                    Ok(Status::Fail)
                }
            }
        }
        Command::Fold { periodic, out } => {
            let pq: PeriodicQuiver = read_json(&periodic)?;
            let q = pq.fold().map_err(|e| CliError::Runtime(e.to_string()))?;
            emit(&q, &out, stdout)?;
            Ok(Status::Pass)
        }
        Command::Cluster {
            quiver,
            periodic,
            seq,
            fold,
            out,
        } => {
            let items = seq.items();
            if let Some(path) = periodic {
                let pq: PeriodicQuiver = read_json(&path)?;
                let seed = OrbitSeed::initial(pq)
                    .mutate_sequence(&sites(&items)?)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                if fold {
                    let folded = seed.fold().map_err(|e| CliError::Runtime(e.to_string()))?;
                    emit(&folded, &out, stdout)?;
                } else {
                    emit(&seed, &out, stdout)?;
                }
            } else {
                let path = quiver.expect("clap requires a quiver");
                let q: IceQuiver = read_json(&path)?;
                let seq = vertices(&q, &items)?;
                let seed = Seed::initial(q)
                    .mutate_sequence(&seq)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                emit(&seed, &out, stdout)?;
            }
            Ok(Status::Pass)
        }
        Command::Verify(args) => verify(args, stdout, stderr),
        Command::Serve { port } => {
            crate::server::serve(port).map_err(|e| CliError::Runtime(e.to_string()))?;
            Ok(Status::Pass)
        }
    }
}

fn verify(args: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Status, CliError> {
    let cycle = args.cycle.as_deref().map(read_json::<IceQuiver>).transpose()?;
    let cfg = SuiteConfig {
        suite: args.suite,
        n: args.n,
        depth: args.depth,
        trials: args.trials,
        seed: args.seed,
        window: args.window,
        cycle,
    };
    log::info!("running suite {}", cfg.suite);
    let report = run_suite(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let summary = report.summary();
    // The summary goes wherever the JSON does not.
    let human: &mut dyn Write = if args.out.out.is_some() { stdout } else { stderr };
    human
        .write_all(summary.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<summary>".into(),
            source,
        })?;
    if args.out.out.is_some() {
        emit(&report, &args.out, &mut std::io::sink())?;
    } else {
        emit(&report, &args.out, stdout)?;
    }
    Ok(if report.passed { Status::Pass } else { Status::Fail })
}
