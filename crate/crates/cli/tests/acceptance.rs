//! Full-scale acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Golden counts were produced by standalone brute-force scripts that share
//! no code with this crate.

use std::process::{Command, ExitCode};
use std::time::Duration;

use nonvanish_core::verify::{
    verify_frobenius, verify_lemmas, verify_proposition, verify_small_dimension, verify_theorem,
    FrobeniusBounds, LemmaBounds, SmallBounds, SweepBounds, SweepControl, Verdict,
    VerificationReport,
};
use nonvanish_core::gcd;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn within(r: &VerificationReport, limit: Duration) -> bool {
    Duration::from_millis(r.elapsed_ms) < limit
}

fn clean(r: &VerificationReport) -> bool {
    r.verdict == Verdict::Pass && r.counterexample_count == 0 && r.overflow_count == 0
}

fn stat(r: &VerificationReport, key: &str) -> u64 {
    r.stats.get(key).copied().unwrap_or(0)
}

fn serial() -> SweepControl {
    SweepControl::new(1, 0)
}

fn lemmas() -> Outcome {
    let r = verify_lemmas(&LemmaBounds::default(), &serial()).expect("valid bounds");
    outcome(
        clean(&r) && !r.vacuous && within(&r, Duration::from_secs(60)),
        format!("{} checks, {} violations, {} ms", r.instances_checked, r.counterexample_count, r.elapsed_ms),
    )
}

fn frobenius_run() -> VerificationReport {
    verify_frobenius(&FrobeniusBounds { max_pair: 30, max_triple: 20 }, &serial()).expect("valid bounds")
}

fn frobenius_soundness(r: &VerificationReport) -> Outcome {
    outcome(
        clean(r) && r.instances_checked == 8_156_422 && within(r, Duration::from_secs(60)),
        format!("{} checks, {} violations, {} ms", r.instances_checked, r.counterexample_count, r.elapsed_ms),
    )
}

fn frobenius_sharpness(r: &VerificationReport) -> Outcome {
    let coprime = (2..=30i128)
        .flat_map(|a| (2..=30i128).map(move |b| (a, b)))
        .filter(|&(a, b)| gcd(a, b) == 1)
        .count() as u64;
    let sharp_failures = r.counterexamples.iter().filter(|c| c.check == "couple_sharpness").count();
    outcome(
        sharp_failures == 0 && r.counterexample_count == 0 && stat(r, "sharpness_pairs") == coprime && coprime == 496,
        format!("{} coprime pairs, {sharp_failures} representable", stat(r, "sharpness_pairs")),
    )
}

fn proposition_runs() -> Vec<(VerificationReport, u64)> {
    [(SweepBounds::new(3, 4, 8), 278_714), (SweepBounds::new(3, 3, 12), 1_752_510)]
        .into_iter()
        .map(|(b, golden)| (verify_proposition(&b, &serial()).expect("valid bounds"), golden))
        .collect()
}

fn proposition(runs: &[(VerificationReport, u64)]) -> Outcome {
    let total: u64 = runs.iter().map(|(r, _)| r.elapsed_ms).sum();
    let ok = runs.iter().all(|(r, golden)| {
        clean(r) && r.instances_checked == *golden && stat(r, "couple") + stat(r, "triple") == *golden
    }) && total < 15 * 60 * 1000;
    let cells: Vec<u64> = runs.iter().map(|(r, _)| r.instances_checked).collect();
    let failures: u64 = runs.iter().map(|(r, _)| r.counterexample_count).sum();
    outcome(ok, format!("cells {cells:?}, {failures} without certificate, {total} ms single-threaded"))
}

fn small_dimension() -> Outcome {
    let r = verify_small_dimension(&SmallBounds { max_weight: 20 }, &serial()).expect("valid bounds");
    outcome(
        clean(&r) && r.instances_checked == 3_805_368 && stat(&r, "search_failures") == 28,
        format!(
            "{} cells, {} search failures, {} outside the characterization",
            r.instances_checked,
            stat(&r, "search_failures"),
            r.counterexample_count
        ),
    )
}

fn monotonicity_symmetry(runs: &[(VerificationReport, u64)]) -> Outcome {
    const CHECKS: [&str; 4] = ["monotonicity_f1", "monotonicity_f2", "symmetry", "side_permutation"];
    let violations = runs
        .iter()
        .flat_map(|(r, _)| &r.counterexamples)
        .filter(|c| CHECKS.contains(&c.check.as_str()))
        .count();
    let checked: u64 = runs.iter().map(|(r, _)| stat(r, "monotonicity_checks")).sum();
    outcome(
        violations == 0 && checked > 0 && runs.iter().all(|(r, _)| r.counterexample_count == 0),
        format!("{checked} monotonicity checks, {violations} violations"),
    )
}

fn theorem() -> Outcome {
    let bounds = SweepBounds::new(3, 4, 10).with_max_degree(120);
    let r = verify_theorem(&bounds, &serial()).expect("valid bounds");
    let routed = stat(&r, "direct") + stat(&r, "couple") + stat(&r, "triple");
    outcome(
        clean(&r)
            && r.instances_checked == 69_092_659
            && stat(&r, "direct") == 68_546_517
            && routed == r.instances_checked
            && within(&r, Duration::from_secs(600)),
        format!(
            "{} instances ({} direct, {} certified), {} discrepancies, {} ms",
            r.instances_checked,
            stat(&r, "direct"),
            stat(&r, "couple") + stat(&r, "triple"),
            r.counterexample_count,
            r.elapsed_ms
        ),
    )
}

fn cli_json(args: &[&str], jobs: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_nonvanish"))
        .args(args)
        .args(["--json", "--jobs", jobs, "--seed", "11"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?} exited with {}", out.status);
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    v.as_object_mut().expect("object").remove("elapsed_ms");
    serde_json::to_string(&v).expect("serializes")
}

fn determinism() -> Outcome {
    let suites: [&[&str]; 5] = [
        &["verify-prop", "--n-min", "3", "--n-max", "4", "--max-weight", "6"],
        &["verify-theorem", "--n-min", "3", "--n-max", "4", "--max-weight", "6", "--max-degree", "48"],
        &["verify-frobenius", "--max-pair", "12", "--max-triple", "8"],
        &["verify-small", "--max-weight", "15"],
        &["verify-lemmas", "--subset-len", "4", "--subset-max", "12", "--list-max", "20", "--binary-max", "60"],
    ];
    let mut unstable = Vec::new();
    for args in suites {
        let first = cli_json(args, "1");
        if cli_json(args, "1") != first || cli_json(args, "4") != first {
            unstable.push(args[0]);
        }
    }
    outcome(unstable.is_empty(), format!("{} suites compared, unstable: {unstable:?}", suites.len()))
}

fn main() -> ExitCode {
    let frob = frobenius_run();
    let props = proposition_runs();
    let results = [
        ("1 gcd/lcm identities and inequalities", lemmas()),
        ("2 couple/triple bound soundness", frobenius_soundness(&frob)),
        ("3 Frobenius number sharpness", frobenius_sharpness(&frob)),
        ("4 certificate sweep", proposition(&props)),
        ("5 n = 2 failure characterization", small_dimension()),
        ("6 monotonicity and symmetry", monotonicity_symmetry(&props)),
        ("7 witness pipeline", theorem()),
        ("8 determinism", determinism()),
    ];
    let mut all = true;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        all &= o.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
