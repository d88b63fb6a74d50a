//! Acceptance gate: one line per criterion, non-zero exit on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use toric_towers::Limits;
use toric_towers_cli::verify::{self, Outcome};

const SEED: u64 = 20_240_917;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<Outcome, String>,
}

fn kernel() -> Result<Outcome, String> {
    let mut out = verify::hnf_small_matrices();
    if out.report.checked != 7usize.pow(4) {
        return Err(format!(
            "checked {} matrices, expected 2401",
            out.report.checked
        ));
    }
    let dual = verify::dual_involution(200, SEED);
    if dual.report.checked != 200 {
        return Err(format!(
            "checked {} cones, expected 200",
            dual.report.checked
        ));
    }
    merge(&mut out, dual);
    Ok(out)
}

fn log_discrepancy() -> Result<Outcome, String> {
    let mut out = verify::simplicial_log_discrepancy(20, SEED);
    merge(&mut out, verify::blowup_chart());
    Ok(out)
}

fn towers() -> Result<Outcome, String> {
    Ok(verify::tower_soundness(200, SEED, &Limits::default()))
}

fn lc_places() -> Result<Outcome, String> {
    let out = verify::lc_transfer(200, 50, SEED, &Limits::default());
    if !out.report.skipped.is_empty() {
        return Err(format!("{} witnesses skipped", out.report.skipped.len()));
    }
    Ok(out)
}

fn base_change() -> Result<Outcome, String> {
    Ok(verify::base_change(100, SEED))
}

fn local_models() -> Result<Outcome, String> {
    Ok(verify::local_models())
}

fn volumes() -> Result<Outcome, String> {
    Ok(verify::volumes())
}

fn round_trip_and_determinism() -> Result<Outcome, String> {
    let out = verify::round_trip(100, SEED);
    let exe = env!("CARGO_BIN_EXE_toric-towers");
    let runs: [&[&str]; 2] = [
        &[
            "verify",
            "--suite",
            "all",
            "--seed",
            "17",
            "--cases",
            "10",
            "--samples",
            "10",
        ],
        &["random", "--base-dim", "2", "--levels", "5", "--seed", "17"],
    ];
    for args in runs {
        let first = Command::new(exe)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        let second = Command::new(exe)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        if !first.status.success() {
            return Err(format!("{args:?} exited with {}", first.status));
        }
        if first.stdout != second.stdout {
            return Err(format!(
                "{args:?} produced different output for the same seed"
            ));
        }
    }
    Ok(out)
}

fn merge(into: &mut Outcome, other: Outcome) {
    into.report.merge(other.report);
    into.resource_exhausted += other.resource_exhausted;
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "kernel oracle equivalence",
            limit: Duration::from_secs(30),
            run: kernel,
        },
        Criterion {
            id: 2,
            name: "log-discrepancy correctness",
            limit: Duration::from_secs(10),
            run: log_discrepancy,
        },
        Criterion {
            id: 3,
            name: "tower construction soundness",
            limit: Duration::from_secs(120),
            run: towers,
        },
        Criterion {
            id: 4,
            name: "lc-place transfer",
            limit: Duration::from_secs(120),
            run: lc_places,
        },
        Criterion {
            id: 5,
            name: "base-change transform",
            limit: Duration::from_secs(10),
            run: base_change,
        },
        Criterion {
            id: 6,
            name: "local models",
            limit: Duration::from_secs(10),
            run: local_models,
        },
        Criterion {
            id: 7,
            name: "degrees and volumes",
            limit: Duration::from_secs(10),
            run: volumes,
        },
        Criterion {
            id: 8,
            name: "round-trip and determinism",
            limit: Duration::from_secs(5),
            run: round_trip_and_determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(out) => {
                let r = &out.report;
                let mut problems = Vec::new();
                if !r.violations.is_empty() {
                    problems.push(format!(
                        "{} violations, first: {}",
                        r.violations.len(),
                        r.violations[0]
                    ));
                }
                if out.resource_exhausted > 0 {
                    problems.push(format!(
                        "{} cases hit a resource cap",
                        out.resource_exhausted
                    ));
                }
                if r.checked == 0 {
                    problems.push("nothing checked".to_string());
                }
                if elapsed >= c.limit {
                    problems.push("over the time limit".to_string());
                }
                (
                    problems.is_empty(),
                    format!(
                        "{}/{} checks passed {}",
                        r.passed,
                        r.checked,
                        problems.join("; ")
                    ),
                )
            }
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{}] {}: {} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail.trim_end(),
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
