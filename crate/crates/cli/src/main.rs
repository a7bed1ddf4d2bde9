use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nonvanish_core::verify::{
    verify_frobenius, verify_lemmas, verify_proposition, verify_small_dimension, verify_theorem,
    FrobeniusBounds, LemmaBounds, SmallBounds, SweepBounds, SweepControl, Verdict,
    VerificationReport,
};
use nonvanish_core::{
    compute_profile, find_certificate, find_section_witness, validate_instance, Error, Int,
    WciInstance, WeightSequence,
};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_OVERFLOW: u8 = 3;

#[derive(Parser)]
#[command(name = "nonvanish", version, about = "Nonvanishing certificates for codimension-two weighted complete intersections")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the random permutation spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Weights {
    /// Comma-separated positive weights, e.g. 4,6,10,15.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    weights: Vec<Int>,
}

#[derive(Args)]
struct Degrees {
    #[arg(long, allow_negative_numbers = true)]
    d1: Int,
    #[arg(long, allow_negative_numbers = true)]
    d2: Int,
    #[arg(long, allow_negative_numbers = true)]
    h: Int,
}

#[derive(Args)]
struct Range {
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, allow_negative_numbers = true)]
    max_weight: Int,
    /// Scan 1 ≤ h ≤ cap instead of one period of lcm(a).
    #[arg(long, allow_negative_numbers = true)]
    h_cap: Option<Int>,
}

impl Range {
    fn bounds(&self) -> SweepBounds {
        let b = SweepBounds::new(self.n_min, self.n_max, self.max_weight);
        match self.h_cap {
            Some(c) => b.with_h_cap(c),
            None => b,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the divisibility and amplitude hypotheses of an instance.
    Check {
        #[command(flatten)]
        weights: Weights,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Split profile and certificate for one (a, s, h) cell.
    Profile {
        #[command(flatten)]
        weights: Weights,
        #[arg(long, allow_negative_numbers = true)]
        s: isize,
        #[arg(long, allow_negative_numbers = true)]
        h: Int,
    },
    /// Monomial of degree h in at most three variables.
    Witness {
        #[command(flatten)]
        weights: Weights,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Certificate existence, monotonicity and symmetry over all cells.
    VerifyProp {
        #[command(flatten)]
        range: Range,
    },
    /// Soundness and sharpness of the couple and triple bounds.
    VerifyFrobenius {
        #[arg(long, default_value_t = 30)]
        max_pair: Int,
        #[arg(long, default_value_t = 20)]
        max_triple: Int,
    },
    /// End-to-end witness pipeline over (a, d1, d2, h).
    VerifyTheorem {
        #[command(flatten)]
        range: Range,
        #[arg(long, allow_negative_numbers = true)]
        max_degree: Int,
    },
    /// gcd/lcm identities and inequalities.
    VerifyLemmas {
        #[arg(long, default_value_t = 6)]
        subset_len: usize,
        #[arg(long, default_value_t = 30)]
        subset_max: Int,
        #[arg(long, default_value_t = 4)]
        list_len: usize,
        #[arg(long, default_value_t = 50)]
        list_max: Int,
        #[arg(long, default_value_t = 500)]
        binary_max: Int,
        #[arg(long, default_value_t = 12)]
        grid_max_a: Int,
        #[arg(long, default_value_t = 5)]
        grid_max_k: Int,
    },
    /// Certificate failures for n = 2 against their characterization.
    VerifySmall {
        #[arg(long, default_value_t = 20)]
        max_weight: Int,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Overflow => EXIT_OVERFLOW,
                Error::TheoremCounterexample(_) | Error::CounterexampleFound(_) => EXIT_FAIL,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn emit<T: Serialize>(json: bool, value: &T, table: impl FnOnce()) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
    } else {
        table();
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let g = &cli.global;
    let jobs = g.jobs.unwrap_or_else(|| SweepControl::default().jobs);
    let control = SweepControl::new(jobs, g.seed);
    let report = match &cli.command {
        Command::Check { weights, degrees } => {
            let inst = instance(weights, degrees)?;
            let r = validate_instance(&inst, degrees.h);
            emit(g.json, &r, || {
                println!("instance   {} d=({}, {}) h={}", inst.weights, inst.d1, inst.d2, degrees.h);
                println!("K degree   {}", r.canonical_degree.map_or("overflow".into(), |k| k.to_string()));
                for c in &r.checks {
                    let status = if c.passed { "ok" } else { "FAIL" };
                    println!("{:<20} {:<4} {:?}", c.name, status, c.failures);
                }
                println!("linear cone {}", r.linear_cone);
                println!("all pass    {}", r.all_pass);
            });
            return Ok(0);
        }
        Command::Profile { weights, s, h } => {
            let a = WeightSequence::new(weights.weights.clone())?;
            let profile = compute_profile(&a, *s, *h)?;
            let certificate = find_certificate(&a, *s, *h);
            #[derive(Serialize)]
            struct Out<'a, P, C> {
                profile: &'a P,
                certificate: Option<C>,
            }
            let found = certificate.as_ref().ok().cloned();
            emit(g.json, &Out { profile: &profile, certificate: found.clone() }, || {
                println!("weights {a}  s={s}  h={h}");
                println!("Σ1 {:?}  Σ2 {:?}", profile.sigma1, profile.sigma2);
                println!("h1 {}  h2 {}  f1 {}  f2 {}  lhs {}", profile.h1, profile.h2, profile.f1, profile.f2, profile.lhs);
                match &found {
                    Some(c) => println!("certificate {:?} {:?} bound {}", c.kind, c.indices, c.bound),
                    None => println!("no certificate"),
                }
            });
            return match certificate {
                Ok(_) => Ok(0),
                Err(Error::CounterexampleFound(_)) => Ok(EXIT_FAIL),
                Err(e) => Err(e),
            };
        }
        Command::Witness { weights, degrees } => {
            let inst = instance(weights, degrees)?;
            let proof = find_section_witness(&inst, degrees.h)?;
            emit(g.json, &proof, || {
                let monomial: Vec<String> =
                    proof.witness.terms.iter().map(|(i, k)| format!("x{i}^{k}")).collect();
                println!("witness {}  (degree {})", monomial.join(" "), proof.witness.degree);
                println!("route   {:?}", proof.route);
            });
            return Ok(0);
        }
        Command::VerifyProp { range } => verify_proposition(&range.bounds(), &control)?,
        Command::VerifyFrobenius { max_pair, max_triple } => {
            verify_frobenius(&FrobeniusBounds { max_pair: *max_pair, max_triple: *max_triple }, &control)?
        }
        Command::VerifyTheorem { range, max_degree } => {
            verify_theorem(&range.bounds().with_max_degree(*max_degree), &control)?
        }
        Command::VerifyLemmas {
            subset_len,
            subset_max,
            list_len,
            list_max,
            binary_max,
            grid_max_a,
            grid_max_k,
        } => verify_lemmas(
            &LemmaBounds {
                subset_len: *subset_len,
                subset_max: *subset_max,
                list_len: *list_len,
                list_max: *list_max,
                binary_max: *binary_max,
                grid_max_a: *grid_max_a,
                grid_max_k: *grid_max_k,
            },
            &control,
        )?,
        Command::VerifySmall { max_weight } => {
            verify_small_dimension(&SmallBounds { max_weight: *max_weight }, &control)?
        }
    };
    emit(g.json, &report, || print_report(&report));
    Ok(exit_code(&report))
}

fn instance(weights: &Weights, degrees: &Degrees) -> Result<WciInstance, Error> {
    WciInstance::new(WeightSequence::new(weights.weights.clone())?, degrees.d1, degrees.d2)
}

fn exit_code(report: &VerificationReport) -> u8 {
    match report.verdict {
        Verdict::Fail => EXIT_FAIL,
        Verdict::Overflow => EXIT_OVERFLOW,
        Verdict::Pass | Verdict::PassVacuous | Verdict::Incomplete => 0,
    }
}

fn print_report(r: &VerificationReport) {
    println!("suite            {}", r.suite);
    println!("verdict          {:?}", r.verdict);
    println!("instances        {}", r.instances_checked);
    println!("counterexamples  {}", r.counterexample_count);
    println!("overflows        {}", r.overflow_count);
    println!("elapsed          {} ms", r.elapsed_ms);
    if r.vacuous {
        println!("warning: no instance matched the bounds");
    }
    for (k, v) in &r.stats {
        println!("  {k:<22} {v}");
    }
    for cx in r.counterexamples.iter().take(20) {
        println!(
            "  {} {:?} s={:?} h={:?} d=({:?}, {:?}) {}",
            cx.check, cx.weights, cx.s, cx.h, cx.d1, cx.d2, cx.detail
        );
    }
}
