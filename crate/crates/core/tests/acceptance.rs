//! The acceptance criteria, one PASS/FAIL line each, with their runtime
//! limits. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use quandle::suite::{run_block, CheckResult, SuiteConfig};

struct Criterion {
    name: &'static str,
    blocks: &'static [&'static str],
    limit: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 10] = [
    Criterion { name: "Tait fidelity", blocks: &["tait"], limit: secs(1) },
    Criterion { name: "axiom battery", blocks: &["axioms"], limit: secs(30) },
    Criterion { name: "Inn(M_n) is symmetric", blocks: &["inn-mn"], limit: secs(30) },
    Criterion { name: "Ehrman round trip", blocks: &["ehrman"], limit: secs(300) },
    Criterion { name: "induced homomorphisms", blocks: &["induced-hom"], limit: secs(30) },
    Criterion { name: "tower propositions", blocks: &["towers", "density"], limit: secs(120) },
    Criterion { name: "counterexample probe", blocks: &["probe"], limit: secs(120) },
    Criterion { name: "Inn density", blocks: &["inn-density"], limit: secs(60) },
    Criterion { name: "complementation", blocks: &["complements"], limit: secs(120) },
    Criterion { name: "AdTak and SNF", blocks: &["snf", "adtak"], limit: secs(30) },
];

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut failures = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let results: Vec<CheckResult> = c.blocks.iter().flat_map(|b| run_block(b, &cfg)).collect();
        let elapsed = start.elapsed();
        let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.passed()).collect();
        let in_time = elapsed <= c.limit;
        let ok = !results.is_empty() && failed.is_empty() && in_time;
        println!(
            "{} criterion {:>2} {:<24} {} checks in {:.3}s (limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.name,
            results.len(),
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for r in failed {
            println!("     {}: {}", r.id, r.witness.as_deref().unwrap_or(""));
        }
        if !in_time {
            println!("     over the time limit");
        }
        if !ok {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
