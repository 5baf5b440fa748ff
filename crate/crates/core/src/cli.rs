//! Batch command-line front end.
//!
//! Subcommands: `rate` (achievable-rate evaluation), `simulate` (seeded
//! codebook sweeps with error estimates as CSV), `verify` (exact
//! construction check as JSON), `converse-demo` (the disjoint-alphabet
//! code beating the single-letter bound).
//!
//! Exit codes: 0 success/pass, 1 verification failed, 2 input error,
//! 3 resource cap exceeded, 4 internal invariant violated.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::channels::{channel_from_json, ChannelModel, NoisyAuthResource};
use crate::coding::{
    self, exact_pde, exact_pfa, gen_random_codebook, mc_pde, mc_pfa_heuristic, AdversaryStrategy,
    Codebook, DecodeParams, ErrorEstimate, Method, DEFAULT_ENUM_CAP,
};
use crate::error::{Error, Result};
use crate::framework::verify_construction;
use crate::info_theory::{
    achievable_rate_bsc, achievable_rate_dmc, binary_entropy, is_weakly_symmetric,
    weakly_symmetric_capacity,
};

#[derive(Parser, Debug)]
#[command(
    name = "noisy-auth",
    about = "Keyless message authentication over noisy channels: rates, simulations, verification",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the achievable authentication rate for a channel pair.
    Rate(RateArgs),
    /// Generate seeded codebooks and estimate decoding/forgery errors.
    Simulate(SimulateArgs),
    /// Check the construction distances for one codebook exactly.
    Verify(VerifyArgs),
    /// Exhibit a code whose rate exceeds the single-letter bound.
    ConverseDemo(ConverseDemoArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct RateArgs {
    /// Crossover probability of Alice's binary symmetric channel.
    #[arg(long)]
    p: Option<f64>,
    /// Crossover probability of Eve's binary symmetric channel.
    #[arg(long)]
    q: Option<f64>,
    /// JSON file with Alice's channel matrix.
    #[arg(long = "P", value_name = "FILE")]
    p_file: Option<PathBuf>,
    /// JSON file with Eve's channel matrix.
    #[arg(long = "Q", value_name = "FILE")]
    q_file: Option<PathBuf>,
    /// Simplex grid resolution for the input-distribution search.
    #[arg(long, default_value_t = 32)]
    grid: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Codeword length.
    #[arg(long)]
    n: usize,
    /// Message bits per codeword.
    #[arg(long)]
    k: usize,
    /// Crossover probability of Alice's channel.
    #[arg(long)]
    p: f64,
    /// Crossover probability of Eve's channel.
    #[arg(long)]
    q: f64,
    /// Typicality slack; defaults to a quarter of the rate gap.
    #[arg(long)]
    delta: Option<f64>,
    /// Monte Carlo trials per estimate when exact enumeration is capped.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of independently seeded codebooks to report.
    #[arg(long, default_value_t = 1)]
    codebooks: u64,
    /// Drop the worse half of each codebook before estimating.
    #[arg(long)]
    prune: bool,
    /// Exact enumeration is used when the output space fits under this cap.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    delta: Option<f64>,
    /// Construction tolerance: both distances must be strictly below this.
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Give Eve a blocking bit on both the real and ideal resources.
    #[arg(long)]
    block: bool,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConverseDemoArgs {
    /// Codeword length (block count times repetitions).
    #[arg(long, default_value_t = 15)]
    n: usize,
    /// Message bits.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Crossover probability of Alice's embedded binary channel.
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Typicality slack for the repetition decoder.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn load_channel(path: &PathBuf) -> Result<ChannelModel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    channel_from_json(&text).map_err(|e| Error::usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct RateReport {
    schema: u32,
    rate: f64,
    input_dist: Vec<f64>,
    weakly_symmetric: bool,
    capacity_difference: Option<f64>,
}

fn cmd_rate(args: &RateArgs) -> Result<()> {
    let report = match (args.p, args.q, &args.p_file, &args.q_file) {
        (Some(p), Some(q), None, None) => {
            let rate = achievable_rate_bsc(p, q).map_err(|e| Error::usage(e.to_string()))?;
            RateReport {
                schema: 1,
                rate,
                input_dist: vec![0.5, 0.5],
                weakly_symmetric: true,
                capacity_difference: Some(rate),
            }
        }
        (None, None, Some(pf), Some(qf)) => {
            let alice = load_channel(pf)?;
            let eve = load_channel(qf)?;
            let best = achievable_rate_dmc(&alice, &eve, args.grid)?;
            let symmetric = is_weakly_symmetric(&alice) && is_weakly_symmetric(&eve);
            let capacity_difference = if symmetric {
                Some(weakly_symmetric_capacity(&alice)? - weakly_symmetric_capacity(&eve)?)
            } else {
                None
            };
            RateReport {
                schema: 1,
                rate: best.rate,
                input_dist: best.input_dist.entries().to_vec(),
                weakly_symmetric: symmetric,
                capacity_difference,
            }
        }
        _ => {
            return Err(Error::usage(
                "rate takes either --p and --q, or --P and --Q channel files",
            ))
        }
    };
    let text = match args.format {
        Some(Format::Json) => format!("{}\n", serde_json::to_string_pretty(&report)?),
        _ => {
            let mut s = String::new();
            writeln!(s, "rate: {:.12}", report.rate).unwrap();
            writeln!(s, "input_dist: {:?}", report.input_dist).unwrap();
            writeln!(s, "weakly_symmetric: {}", report.weakly_symmetric).unwrap();
            if let Some(cd) = report.capacity_difference {
                writeln!(s, "capacity_difference: {cd:.12}").unwrap();
            }
            s
        }
    };
    emit(&args.out, &text)
}

#[derive(Serialize)]
struct SimRow {
    n: usize,
    k: usize,
    p: f64,
    q: f64,
    delta: f64,
    p_de: f64,
    p_de_lo: f64,
    p_de_hi: f64,
    p_fa: f64,
    method: String,
    seed: u64,
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Exact => "exact",
        Method::MonteCarlo { .. } => "monte_carlo",
        Method::HeuristicLb { .. } => "heuristic_lb",
        Method::AnalyticUb => "analytic_ub",
    }
}

fn estimate_errors(
    cb: &Codebook,
    res: &NoisyAuthResource,
    trials: u64,
    seed: u64,
    cap: u64,
) -> Result<(ErrorEstimate, ErrorEstimate)> {
    let space = (cb.bob_alphabet() as u128)
        .checked_pow(cb.n as u32)
        .unwrap_or(u128::MAX);
    if space <= cap as u128 {
        Ok((
            exact_pde(cb, &res.alice_channel, cap)?,
            exact_pfa(cb, &res.eve_channel, cap)?,
        ))
    } else {
        let pde = mc_pde(cb, &res.alice_channel, trials, seed)?;
        let strategies = [
            AdversaryStrategy::EachCodeword,
            AdversaryStrategy::AllZeros,
            AdversaryStrategy::UniformRandom { count: 8 },
        ];
        let pfa = mc_pfa_heuristic(cb, &res.eve_channel, &strategies, trials, seed)?;
        Ok((pde, pfa))
    }
}

/// One sweep entry: generate (and optionally prune) a seeded codebook,
/// estimate both error probabilities, return the CSV row values.
fn simulate_row(args: &SimulateArgs, delta: f64, seed: u64) -> Result<SimRow> {
    let params = DecodeParams::Typical { p: args.p, delta };
    let mut cb = gen_random_codebook(args.n, args.k, params, seed)?;
    let res = NoisyAuthResource::bsc_pair(args.n, args.p, args.q, false)?;
    if args.prune {
        cb = coding::prune_codebook(
            &cb,
            &res.alice_channel,
            args.enum_cap,
            Some((args.trials, seed)),
        )?;
    }
    let (pde, pfa) = estimate_errors(&cb, &res, args.trials, seed, args.enum_cap)?;
    let (lo, hi) = pde.ci95.unwrap_or((pde.value, pde.value));
    Ok(SimRow {
        n: cb.n,
        k: cb.k,
        p: args.p,
        q: args.q,
        delta,
        p_de: pde.value,
        p_de_lo: lo,
        p_de_hi: hi,
        p_fa: pfa.value,
        method: method_name(pde.method).to_string(),
        seed,
    })
}

fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let delta = match args.delta {
        Some(d) => d,
        None => coding::default_delta(args.p, args.q, args.k as f64 / args.n as f64)
            .map_err(|e| Error::usage(e.to_string()))?,
    };
    let rows: Vec<SimRow> = (0..args.codebooks)
        .map(|i| simulate_row(args, delta, args.seed.wrapping_add(i)))
        .collect::<Result<_>>()?;
    let text = match args.format {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct SimReport<'a> {
                schema: u32,
                rows: &'a [SimRow],
            }
            format!(
                "{}\n",
                serde_json::to_string_pretty(&SimReport { schema: 1, rows: &rows })?
            )
        }
        _ => {
            let mut s = String::from("n,k,p,q,delta,p_de,p_de_lo,p_de_hi,p_fa,method,seed\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.n, r.k, r.p, r.q, r.delta, r.p_de, r.p_de_lo, r.p_de_hi, r.p_fa, r.method,
                    r.seed
                )
                .unwrap();
            }
            s
        }
    };
    emit(&args.out, &text)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let delta = match args.delta {
        Some(d) => d,
        None => coding::default_delta(args.p, args.q, args.k as f64 / args.n as f64)
            .map_err(|e| Error::usage(e.to_string()))?,
    };
    let cb = gen_random_codebook(
        args.n,
        args.k,
        DecodeParams::Typical { p: args.p, delta },
        args.seed,
    )?;
    let res = NoisyAuthResource::bsc_pair(args.n, args.p, args.q, args.block)?;
    let report = verify_construction(&cb, &res, args.eps, args.enum_cap)?;
    emit(&args.out, &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
    if !report.equalities_hold {
        Ok(4)
    } else if report.pass {
        Ok(0)
    } else {
        Ok(1)
    }
}

#[derive(Serialize)]
struct ConverseReport {
    schema: u32,
    n: usize,
    k: usize,
    p: f64,
    rate: f64,
    single_letter_bound: f64,
    p_fa: f64,
    p_de: f64,
    rate_exceeds_bound: bool,
}

fn cmd_converse_demo(args: &ConverseDemoArgs) -> Result<()> {
    let cb = coding::converse_demo_code(args.n, args.k, args.p, args.delta)?;
    let (alice, eve) = coding::converse_demo_channels(args.p)?;
    let cap = u64::MAX;
    let p_fa = exact_pfa(&cb, &eve, cap)?.value;
    let p_de = exact_pde(&cb, &alice, cap)?.value;
    let bound = -binary_entropy(args.p)?;
    let report = ConverseReport {
        schema: 1,
        n: cb.n,
        k: cb.k,
        p: args.p,
        rate: cb.rate(),
        single_letter_bound: bound,
        p_fa,
        p_de,
        rate_exceeds_bound: cb.rate() > bound,
    };
    let text = match args.format {
        Some(Format::Json) => format!("{}\n", serde_json::to_string_pretty(&report)?),
        _ => {
            let mut s = String::new();
            writeln!(s, "rate: {:.12}", report.rate).unwrap();
            writeln!(s, "single_letter_bound: {:.12}", report.single_letter_bound).unwrap();
            writeln!(s, "p_fa: {}", report.p_fa).unwrap();
            writeln!(s, "p_de: {:.12}", report.p_de).unwrap();
            writeln!(s, "rate_exceeds_bound: {}", report.rate_exceeds_bound).unwrap();
            s
        }
    };
    emit(&args.out, &text)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => 3,
        _ => 2,
    }
}

/// Caps the global thread pool from `NOISY_AUTH_THREADS` when set. Results
/// do not depend on the thread count; the cap only bounds CPU use.
fn configure_threads() {
    if let Ok(v) = std::env::var("NOISY_AUTH_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match &cli.command {
        Command::Rate(a) => cmd_rate(a).map(|()| 0),
        Command::Simulate(a) => cmd_simulate(a).map(|()| 0),
        Command::Verify(a) => cmd_verify(a),
        Command::ConverseDemo(a) => cmd_converse_demo(a).map(|()| 0),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn rate_requires_one_channel_style() {
        let code = run(["noisy-auth", "rate", "--p", "0.1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(exit_code_for(&Error::usage("x")), 2);
        assert_eq!(exit_code_for(&Error::domain("x")), 2);
        assert_eq!(exit_code_for(&Error::resource("x")), 3);
    }
}
