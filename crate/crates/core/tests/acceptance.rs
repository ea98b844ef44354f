//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use multicentric::verify::{run_suite, SuiteParams, SuiteReport};
use multicentric::ToleranceConfig;

const SEED: u64 = 20_240_601;

struct Criterion {
    id: u32,
    title: &'static str,
    suite: &'static str,
    time_limit: Option<Duration>,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "Gelfand homomorphism", suite: "homomorphism", time_limit: Some(Duration::from_secs(10)) },
    Criterion { id: 2, title: "d=2 closed forms", suite: "closed-forms", time_limit: None },
    Criterion { id: 3, title: "nilpotent example", suite: "nilpotent", time_limit: None },
    Criterion { id: 4, title: "eigenvalues of B_f(w)", suite: "eigen", time_limit: None },
    Criterion { id: 5, title: "character equations", suite: "characters", time_limit: None },
    Criterion { id: 6, title: "spectral radius", suite: "spectral-radius", time_limit: None },
    Criterion { id: 7, title: "inversion bound", suite: "inversion", time_limit: None },
    Criterion { id: 8, title: "Jordan-block calculus", suite: "jordan", time_limit: None },
    Criterion { id: 9, title: "spectral mapping", suite: "specmap", time_limit: None },
    Criterion { id: 10, title: "norm blow-up", suite: "blowup", time_limit: Some(Duration::from_secs(30)) },
    Criterion { id: 11, title: "non-differentiable calculus", suite: "nondiff", time_limit: None },
];

fn line(c: &Criterion, rep: &SuiteReport, elapsed: Duration, ok: bool) -> String {
    let metrics: Vec<String> = rep.metrics.iter().map(|(k, v)| format!("{k}={v:.3e}")).collect();
    format!(
        "{} criterion {:>2} {:<28} cases={:<4} max_dev={:.3e} tol={:e} time={:.2}s {}",
        if ok { "PASS" } else { "FAIL" },
        c.id,
        c.title,
        rep.cases,
        rep.max_deviation,
        rep.tolerance,
        elapsed.as_secs_f64(),
        metrics.join(" ")
    )
}

fn main() -> ExitCode {
    let tol = ToleranceConfig::default();
    let mut failures = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let result = run_suite(c.suite, SEED, &SuiteParams::default(), &tol);
        let elapsed = start.elapsed();
        match result {
            Ok(rep) => {
                let in_time = c.time_limit.is_none_or(|t| elapsed <= t);
                let ok = rep.passed && in_time;
                println!("{}", line(c, &rep, elapsed, ok));
                if !in_time {
                    println!("     time limit {:?} exceeded", c.time_limit.unwrap());
                }
                failures += usize::from(!ok);
            }
            Err(e) => {
                println!("FAIL criterion {:>2} {:<28} error: {e}", c.id, c.title);
                failures += 1;
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
