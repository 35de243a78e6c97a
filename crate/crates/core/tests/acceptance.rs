//! Acceptance criteria, one line per criterion. Exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use torfold::laurent::division_stats;
use torfold::{run_suite, Check, Suite, SuiteConfig};

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    elapsed: Duration,
    bound: Option<Duration>,
    note: String,
}

impl Outcome {
    fn ok(&self) -> bool {
        self.passed && self.bound.is_none_or(|b| self.elapsed < b)
    }

    fn line(&self) -> String {
        let mark = if self.ok() { "PASS" } else { "FAIL" };
        let time = match self.bound {
            Some(b) => format!("{:.2?} < {:.0?}", self.elapsed, b),
            None => format!("{:.2?}", self.elapsed),
        };
        format!("{mark} [{}] {} ({time}) {}", self.id, self.title, self.note)
    }
}

fn run(cfg: SuiteConfig, keep: impl Fn(&Check) -> bool) -> (bool, String) {
    let report = run_suite(&cfg).expect("valid config");
    let kept: Vec<&Check> = report.checks.iter().filter(|c| keep(c)).collect();
    let cases: usize = kept.iter().map(|c| c.cases).sum();
    let failed: Vec<&str> = kept.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let note = if failed.is_empty() {
        format!("{} checks, {cases} cases", kept.len())
    } else {
        format!("failed: {}", failed.join("; "))
    };
    (!kept.is_empty() && failed.is_empty(), note)
}

fn timed(
    id: u32,
    title: &'static str,
    bound: Option<u64>,
    body: impl FnOnce() -> (bool, String),
) -> Outcome {
    let start = Instant::now();
    let (passed, note) = body();
    let o = Outcome {
        id,
        title,
        passed,
        elapsed: start.elapsed(),
        bound: bound.map(Duration::from_secs),
        note,
    };
    println!("{}", o.line());
    o
}

fn config(suite: Suite, f: impl FnOnce(&mut SuiteConfig)) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(suite);
    f(&mut cfg);
    cfg
}

fn main() -> ExitCode {
    let mut results = Vec::new();

    results.push(timed(1, "mutation involution and commutation on 1000 random quivers", Some(5), || {
        run(config(Suite::Involution, |c| c.trials = 1000), |_| true)
    }));

    results.push(timed(2, "non-cyclic cycles n=3..6 stay admissible over 200 walks of depth <= 6", Some(30), || {
        run(config(Suite::Foldability, |_| {}), |c| c.name.starts_with("non-cyclic"))
    }));

    results.push(timed(3, "cyclic cycles n=3..6 produce a witness within depth 6", Some(60), || {
        run(config(Suite::Foldability, |c| c.trials = 1), |c| c.name.starts_with("cyclic"))
    }));

    results.push(timed(4, "folded orbit seeds equal torus seeds, n=1,2,3", Some(600), || {
        let mut all = true;
        let mut notes = Vec::new();
        for (n, depth) in [(1, 6), (2, 6), (3, 5)] {
            let (ok, note) = run(
                config(Suite::ClusterFolding, |c| {
                    c.n = Some(n);
                    c.depth = depth;
                }),
                |c| c.name.contains("folded orbit seeds"),
            );
            all &= ok;
            notes.push(format!("n={n} depth {depth}: {note}"));
        }
        (all, notes.join(", "))
    }));

    results.push(timed(6, "ribbon flips match orbit mutation without virtual 2-cycles", Some(60), || {
        run(config(Suite::FlipMutation, |c| c.trials = 100), |_| true)
    }));

    results.push(timed(7, "exchange relations exc1-exc4 and the three-term torus relation", Some(900), || {
        run(config(Suite::ExchangeIdentities, |c| c.n = Some(3)), |_| true)
    }));

    results.push(timed(8, "Y-monomial folding, Nakajima order and d-grading", Some(10), || {
        run(config(Suite::Ymonomial, |_| {}), |_| true)
    }));

    results.push(timed(9, "n=3 denominator vectors are orbit-cluster roots and all roots are reachable", None, || {
        run(
            config(Suite::ClusterFolding, |c| {
                c.n = Some(3);
                c.depth = 5;
            }),
            |c| !c.name.contains("folded orbit seeds"),
        )
    }));

    results.push(timed(5, "every Laurent division along the runs above is exact", None, || {
        let s = division_stats();
        (s.divisions > 0 && s.inexact == 0, format!("{} divisions, {} inexact", s.divisions, s.inexact))
    }));

    let failed = results.iter().filter(|o| !o.ok()).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
