use clap::{Args, ValueEnum};

use nested_cff::agg::MockScheme;
use nested_cff::costs::{estimate, FamilyChoice};
use nested_cff::sim::{simulate, SimConfig, SimError, SimMode, Trials};

use crate::failure::{CmdResult, Failure, Verdict};
use crate::family::{nested_failure, FamilyArgs};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Unbounded,
    Bounded,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Number of claims
    #[arg(long)]
    n: usize,
    /// Invalid signatures per trial
    #[arg(long, default_value_t = 0)]
    faults: usize,
    /// Trial count, or "all" for every fault and dropped-slot subset
    #[arg(long, default_value = "100")]
    trials: String,
    /// Row slots lost per trial
    #[arg(long, default_value_t = 0)]
    drop_slots: usize,
    /// Seed for keys, messages, arrival order and faults
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verify against the family (unbounded) or one fixed level (bounded)
    #[arg(long, value_enum, default_value_t = Mode::Unbounded)]
    mode: Mode,
    /// Allow more faults than d; results are then not guaranteed
    #[arg(long)]
    beyond_guarantee: bool,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

pub fn simulate_cmd(args: &SimulateArgs) -> CmdResult<Verdict> {
    let trials =
        match args.trials.as_str() {
            "all" => Trials::Exhaustive,
            m => Trials::Sampled(m.parse().map_err(|_| {
                Failure::usage(format!("--trials: {m:?} is not a count or \"all\""))
            })?),
        };
    let cfg = SimConfig {
        n: args.n,
        faults: args.faults,
        drop_slots: args.drop_slots,
        trials,
        seed: args.seed,
        mode: match args.mode {
            Mode::Unbounded => SimMode::Unbounded,
            Mode::Bounded => SimMode::Bounded,
        },
        beyond_guarantee: args.beyond_guarantee,
    };
    let mut family = args.family.build()?;
    let r = simulate(&mut family, &MockScheme, &cfg).map_err(|e| match e {
        SimError::InvalidParameter(_) | SimError::TooManyTrials(_) => Failure::usage(e),
        SimError::Nested(n) => nested_failure(n),
        SimError::Agg(a) => Failure::domain(a),
    })?;
    if args.json {
        let v = serde_json::json!({
            "family": args.family.family,
            "n": r.n, "d": r.d, "lambda": r.lambda, "level": r.level, "t": r.t,
            "faults": args.faults, "drop_slots": args.drop_slots, "seed": args.seed,
            "trials": r.trials, "exact": r.exact, "accuracy": r.accuracy(),
            "fast_path": r.fast_path, "guarantee_void": r.guarantee_void,
            "scheme_calls": r.scheme_calls, "mean_slots": r.mean_slots, "ratio": r.ratio,
        });
        println!("{v}");
    } else {
        println!(
            "family {} level {}: n = {}, t = {}, d = {}, lambda = {}",
            args.family.family, r.level, r.n, r.t, r.d, r.lambda
        );
        println!(
            "faults {}, dropped slots {}, seed {}",
            args.faults, args.drop_slots, args.seed
        );
        println!("trials: {}", r.trials);
        println!("exact: {} ({:.2}%)", r.exact, 100.0 * r.accuracy());
        println!("fast path: {}", r.fast_path);
        println!("guarantee void: {}", r.guarantee_void);
        println!("scheme verifications: {}", r.scheme_calls);
        println!("mean slots: {:.2}", r.mean_slots);
        println!("ratio n/t: {:.4}", r.ratio);
    }
    let within = args.faults <= r.d;
    Ok(if within && r.exact != r.trials {
        Verdict::Negative
    } else {
        Verdict::Positive
    })
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    /// Number of claims
    #[arg(long)]
    n: u64,
    /// Fault bound d
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Size of one scheme signature in bytes
    #[arg(long, default_value_t = 48)]
    sig_bytes: u64,
    /// Nested family to size against; optimal 1-CFFs when omitted (d = 1)
    #[arg(long)]
    family: Option<String>,
    /// Private rows for a family seed
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

pub fn estimate_cmd(args: &EstimateArgs) -> CmdResult {
    let choice = match &args.family {
        None => FamilyChoice::OptimalSperner,
        Some(f) => {
            let fam = FamilyArgs {
                family: f.clone(),
                d: Some(args.d),
                lambda: args.lambda,
                repeat_rows: None,
                ingredient: None,
                level_budget: nested_cff::nested::DEFAULT_LEVEL_BUDGET_BITS,
                trust_seed: false,
            };
            FamilyChoice::Nested(fam.spec()?)
        }
    };
    let p = estimate(args.n, args.d, args.sig_bytes, &choice).map_err(|e| match e {
        nested_cff::costs::CostError::Nested(n) => nested_failure(n),
        other => Failure::usage(other),
    })?;
    if args.json {
        let mut v = serde_json::json!({
            "n": p.n, "d": p.d, "sig_bytes": p.sig_bytes, "t": p.t,
            "total_bytes": p.total_bytes, "agg_factor": p.agg_factor,
            "verify_factor_worst": p.verify_factor_worst, "no_agg_bytes": p.no_agg_bytes,
            "level": p.level,
        });
        if let Some(c) = p.constants {
            v["b"] = serde_json::json!(c.b);
            v["D"] = serde_json::json!(c.big_d);
        }
        println!("{v}");
    } else {
        println!("n = {}, d = {}, t = {}", p.n, p.d, p.t);
        if let Some(level) = p.level {
            println!("covering level: {level}");
        }
        println!(
            "aggregate: {} x {} = {} bytes",
            p.t + 1,
            p.sig_bytes,
            p.total_bytes
        );
        println!("without aggregation: {} bytes", p.no_agg_bytes);
        println!("aggregations per signature: {}", p.agg_factor);
        println!("worst-case verifications: {}", p.verify_factor_worst);
        if let Some(c) = p.constants {
            println!(
                "asymptotic constants (informational): b = {:.4}, D = {:.4}",
                c.b, c.big_d
            );
        }
    }
    Ok(())
}
