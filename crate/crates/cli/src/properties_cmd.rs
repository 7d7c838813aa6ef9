//! The `properties` subcommand: run the seeded randomized validity suites
//! and report violations. An optional `--q` adds a positivity run of the
//! generic map at that weight, demonstrating how a weight below the critical
//! one is caught.

use clap::Args;
use spa_detect::suites::{run_all, spa_psd_with_q, SuiteOutcome};

use crate::{Failure, EXIT_DETECTED, EXIT_NUMERICAL};

const SEED_ENV: &str = "SPA_DETECT_SEED";

#[derive(Args)]
pub struct PropertiesArgs {
    /// Seed for all suites (default: the SPA_DETECT_SEED environment
    /// variable, or 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per suite (at least 1).
    #[arg(long, default_value_t = 1000)]
    trials: u32,
    /// Additional positivity run of the generic map at this noise weight.
    #[arg(long)]
    q: Option<f64>,
    /// Print the suite outcomes as JSON.
    #[arg(long)]
    json: bool,
}

fn resolve_seed(args: &PropertiesArgs) -> Result<u64, Failure> {
    if let Some(seed) = args.seed {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|e| Failure::input(format!("{SEED_ENV}=\"{text}\" is not a valid seed: {e}"))),
        Err(_) => Ok(42),
    }
}

pub fn run(args: &PropertiesArgs) -> Result<i32, Failure> {
    if args.trials < 1 {
        return Err(Failure::input("--trials must be at least 1"));
    }
    let seed = resolve_seed(args)?;
    let mut outcomes: Vec<SuiteOutcome> = run_all(seed, args.trials)?;
    if let Some(q) = args.q {
        outcomes.push(spa_psd_with_q(seed.wrapping_add(6), args.trials, q)?);
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if args.json {
        let text = serde_json::to_string_pretty(&outcomes)
            .map_err(|e| Failure::numerical(format!("suite serialization failed: {e}")))?;
        println!("{text}");
    } else {
        println!("seed {seed}, {} trials per suite", args.trials);
        for o in &outcomes {
            println!(
                "suite {}: {}  violations={} worst_margin={:.3e}  ({})",
                o.name,
                if o.passed() { "pass" } else { "FAIL" },
                o.violations,
                o.worst_margin,
                o.note
            );
        }
        if failed == 0 {
            println!("RESULT: all {} suites passed", outcomes.len());
        } else {
            println!("RESULT: {failed} suite(s) reported violations");
        }
    }
    Ok(if failed == 0 {
        EXIT_DETECTED
    } else {
        EXIT_NUMERICAL
    })
}
