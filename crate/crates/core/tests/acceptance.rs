//! End-to-end acceptance gate: one line per criterion with its runtime.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lipderiv::harness::{run_suite, Report, Status, Suite, SuiteConfig};
use lipderiv::LinearMapSpec;

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(suites: &[Suite]) -> Report {
    run_suite(&SuiteConfig::with_suites(suites.iter().copied()))
}

fn from_report(r: &Report, exact: bool) -> Outcome {
    let bad: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail || (exact && c.status == Status::Pass && c.discrepancy != 0.0))
        .map(|c| format!("{} ({:e}; {})", c.name, c.discrepancy, c.witness.as_deref().unwrap_or("")))
        .collect();
    let (p, f, s) = r.counts();
    Outcome {
        ok: bad.is_empty() && p > 0,
        detail: if bad.is_empty() { format!("{p} passed, {f} failed, {s} skipped") } else { bad.join("; ") },
    }
}

fn frechet() -> Outcome {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let oracles = [
        (LinearMapSpec::euclidean(vec![vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap(), 2.0),
        (LinearMapSpec::rotation(0.7), 1.0),
        (LinearMapSpec::euclidean(vec![vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap(), phi),
    ];
    for (a, want) in &oracles {
        let got = a.operator_norm(10_000, 0).unwrap();
        if (got - want).abs() > 1e-6 {
            return Outcome { ok: false, detail: format!("operator norm {got} vs analytic {want}") };
        }
    }
    let r = suite(&[Suite::Frechet]);
    let mut out = from_report(&r, false);
    out.ok &= r.checks.len() == 3;
    out
}

fn main() -> ExitCode {
    type Run = fn() -> Outcome;
    let criteria: [(&str, u64, Run); 10] = [
        ("finite-data identities", 30, || from_report(&suite(&[Suite::Identities, Suite::LevelSets]), true)),
        ("brute-force oracle equivalence", 60, || from_report(&suite(&[Suite::Oracle]), false)),
        ("alpha = beta = gamma breakpoint sweep", 30, || from_report(&suite(&[Suite::PlusVariant]), false)),
        ("linear maps: Lip estimate vs operator norm", 10, frechet),
        ("C1 maps: estimates vs |f'|", 20, || from_report(&suite(&[Suite::C1]), false)),
        ("separation oracles (dyadic, oscillator)", 30, || from_report(&suite(&[Suite::Separation]), false)),
        ("gamma-Lipschitz characterization and measure bound", 20, || {
            from_report(&suite(&[Suite::GammaLipschitz]), false)
        }),
        ("envelope identity", 30, || from_report(&suite(&[Suite::Envelope]), false)),
        ("set-family algebra, exhaustive and seeded", 120, || from_report(&suite(&[Suite::Setclass]), false)),
        ("semicontinuity defects", 30, || from_report(&suite(&[Suite::Semicontinuity]), false)),
    ];
    let mut failed = 0;
    for (k, (label, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*budget);
        let ok = out.ok && in_time;
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {}: {label}: {:.2}s (budget {budget}s): {}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            if in_time { out.detail } else { format!("over budget; {}", out.detail) }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
