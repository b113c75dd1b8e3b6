//! Command-line front end: simulation, r_q sweeps, FHT counting, the
//! exhaustive subset study and single-word decoding.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rm_rpa::channel::ChannelConfig;
use rm_rpa::decoders::{DEFAULT_THETA, Variant};
use rm_rpa::harness::{self, ChannelGrid, SimJob, DEFAULT_MAX_WORDS, DEFAULT_MIN_WORDS, DEFAULT_MIN_WORD_ERRORS};
use rm_rpa::{
    count_fht_bound, decode, DecoderConfig, Factor, LlrVector, RmCode, RngStream, Schedule, SubsetRedraw,
};

#[derive(Parser, Debug)]
#[command(name = "rm-rpa", version, about = "Reed-Muller RPA / SRPA / SDSS decoders and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte Carlo WER/BER over an Eb/N0 grid.
    Simulate(SimulateArgs),
    /// Sweep the DSS factor r_q at a single Eb/N0 with common random numbers.
    SweepRq(SweepArgs),
    /// Print the worst-case number of FHT decodings per codeword.
    CountFht(CountArgs),
    /// Exhaustive fixed-subset SRPA study over all received hard words.
    SubsetStudy(StudyArgs),
    /// Decode a single LLR vector.
    DecodeOne(DecodeOneArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum DecoderArg {
    Rpa,
    Srpa,
    Sdss,
}

impl From<DecoderArg> for Variant {
    fn from(d: DecoderArg) -> Variant {
        match d {
            DecoderArg::Rpa => Variant::Rpa,
            DecoderArg::Srpa => Variant::Srpa,
            DecoderArg::Sdss => Variant::Sdss,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScheduleArg {
    Full,
    TopOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CodeArg {
    m: u32,
    r: u32,
}

fn parse_code(s: &str) -> Result<CodeArg, String> {
    let (m, r) = s.split_once(',').ok_or_else(|| format!("expected m,r, got {s:?}"))?;
    let m: u32 = m.trim().parse().map_err(|_| format!("bad m in {s:?}"))?;
    let r: u32 = r.trim().parse().map_err(|_| format!("bad r in {s:?}"))?;
    RmCode::new(m, r).map_err(|e| e.to_string())?;
    if r == 0 {
        return Err("order-0 codes are not supported".into());
    }
    Ok(CodeArg { m, r })
}

fn parse_factor(s: &str) -> Result<Factor, String> {
    s.parse().map_err(|e: rm_rpa::Error| e.to_string())
}

#[derive(Clone, Debug)]
struct Grid<T>(Vec<T>);

/// `x` or `a:step:b` (inclusive).
fn parse_f64_grid(s: &str) -> Result<Grid<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?} in {s:?}"));
    match parts.as_slice() {
        [x] => Ok(Grid(vec![num(x)?])),
        [a, step, b] => {
            let (a, step, b) = (num(a)?, num(step)?, num(b)?);
            if step.is_nan() || step <= 0.0 || b < a || !a.is_finite() || !b.is_finite() {
                return Err(format!("bad range {s:?}"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            // Rounded to 12 decimals so 0.1 steps print as 0.3, not 0.30000000000000004.
            Ok(Grid((0..count).map(|i| ((a + i as f64 * step) * 1e12).round() / 1e12).collect()))
        }
        _ => Err(format!("expected x or a:step:b, got {s:?}")),
    }
}

fn parse_factor_grid(s: &str) -> Result<Grid<Factor>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(Grid(vec![parse_factor(x)?])),
        [a, step, b] => harness::factor_range(parse_factor(a)?, parse_factor(step)?, parse_factor(b)?)
            .map(Grid)
            .map_err(|e| e.to_string()),
        _ => Err(format!("expected x or a:step:b, got {s:?}")),
    }
}

fn parse_llrs(s: &str) -> Result<Grid<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad LLR {t:?}")))
        .collect::<Result<_, _>>()
        .map(Grid)
}

#[derive(Args, Debug, Clone)]
struct DecoderOpts {
    /// Decoder variant.
    #[arg(long, value_enum, default_value = "sdss")]
    decoder: DecoderArg,
    /// Pruning factor r_p, e.g. 1/32 or 0.25 (forced to 1 for rpa).
    #[arg(long, value_parser = parse_factor, default_value = "1")]
    rp: Factor,
    /// DSS factor r_q in [0, 1]; defaults to 0 (plain SRPA) for non-sdss decoders.
    #[arg(long, value_parser = parse_factor)]
    rq: Option<Factor>,
    /// Iteration schedule [default: top-only for sdss, full otherwise].
    #[arg(long, value_enum)]
    schedule: Option<ScheduleArg>,
    /// Convergence threshold θ.
    #[arg(long, default_value_t = DEFAULT_THETA)]
    theta: f64,
    /// Draw one SRPA subset per codeword and level instead of per iteration.
    #[arg(long)]
    fixed_subset: bool,
}

impl DecoderOpts {
    fn build(&self) -> Result<DecoderConfig, String> {
        let variant = Variant::from(self.decoder);
        let r_q = self.rq.unwrap_or(Factor::ZERO);
        let mut cfg = DecoderConfig::for_variant(variant, self.rp, r_q);
        if let Some(s) = self.schedule {
            cfg.schedule = match s {
                ScheduleArg::Full => Schedule::Full,
                ScheduleArg::TopOnly => Schedule::TopOnly,
            };
        }
        cfg.theta = self.theta;
        if self.fixed_subset {
            cfg.redraw = SubsetRedraw::PerCodeword;
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

#[derive(Args, Debug, Clone)]
struct RunOpts {
    /// Minimum words per grid point.
    #[arg(long, default_value_t = DEFAULT_MIN_WORDS)]
    min_words: u64,
    /// Minimum word errors per grid point.
    #[arg(long, default_value_t = DEFAULT_MIN_WORD_ERRORS)]
    min_errors: u64,
    /// Hard cap on words per grid point.
    #[arg(long, default_value_t = DEFAULT_MAX_WORDS)]
    max_words: u64,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Transmit the all-zero codeword instead of random messages.
    #[arg(long)]
    all_zero: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Code parameters m,r.
    #[arg(long, value_parser = parse_code)]
    code: CodeArg,
    #[command(flatten)]
    decoder: DecoderOpts,
    /// Eb/N0 in dB: a value or a:step:b.
    #[arg(long, value_parser = parse_f64_grid)]
    ebn0: Grid<f64>,
    #[command(flatten)]
    run: RunOpts,
    /// Output CSV; a JSON sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Code parameters m,r.
    #[arg(long, value_parser = parse_code)]
    code: CodeArg,
    /// Pruning factor r_p.
    #[arg(long, value_parser = parse_factor)]
    rp: Factor,
    /// r_q values: a value or a:step:b.
    #[arg(long, value_parser = parse_factor_grid, default_value = "0:0.05:1")]
    rq_grid: Grid<Factor>,
    /// Convergence threshold θ.
    #[arg(long, default_value_t = DEFAULT_THETA)]
    theta: f64,
    /// Iteration schedule.
    #[arg(long, value_enum, default_value = "top-only")]
    schedule: ScheduleArg,
    /// Single Eb/N0 point in dB.
    #[arg(long, default_value_t = 2.0)]
    ebn0: f64,
    #[command(flatten)]
    run: RunOpts,
    /// Output CSV; a JSON sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Code parameters m,r (r ≥ 2).
    #[arg(long, value_parser = parse_code)]
    code: CodeArg,
    #[command(flatten)]
    decoder: DecoderOpts,
}

#[derive(Args, Debug)]
struct StudyArgs {
    /// Code parameters m,r (n ≤ 16).
    #[arg(long, value_parser = parse_code, default_value = "4,2")]
    code: CodeArg,
    /// Subset size p.
    #[arg(long, default_value_t = 3)]
    p: usize,
    /// BSC crossover probability setting the LLR magnitude.
    #[arg(long, default_value_t = 0.1)]
    crossover: f64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output JSON file with per-subset counts and the histogram.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeOneArgs {
    /// Code parameters m,r.
    #[arg(long, value_parser = parse_code)]
    code: CodeArg,
    /// Comma-separated channel LLRs, length 2^m.
    #[arg(long, value_parser = parse_llrs, allow_hyphen_values = true)]
    llr: Grid<f64>,
    #[command(flatten)]
    decoder: DecoderOpts,
    /// Seed for the decoder's random choices.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<rm_rpa::Error> for Failure {
    fn from(e: rm_rpa::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn echo<T: Serialize>(config: &T) {
    eprintln!("# config: {}", serde_json::to_string(config).expect("config serializes"));
}

// Sidecar contents; the worker count is left out since it cannot change results.
#[derive(Serialize)]
struct SweepManifest<'a> {
    job: &'a SimJob,
    rq_grid: &'a [Factor],
}

#[derive(Serialize)]
struct SimulateManifest<'a> {
    job: &'a SimJob,
}

fn job_from(code: CodeArg, decoder: DecoderConfig, ebn0: Vec<f64>, run: &RunOpts) -> SimJob {
    let mut job = SimJob::new(code.m, code.r, decoder, ChannelGrid::Awgn { ebn0_db: ebn0 });
    job.min_words = run.min_words;
    job.min_word_errors = run.min_errors;
    job.max_words = run.max_words;
    job.master_seed = run.seed;
    job.all_zero = run.all_zero;
    job
}

fn print_results(results: &[harness::TrialBatchResult]) {
    println!("ebn0_db\tr_q\twords\tword_errors\twer\twer_ci95\tber\tmean_fht\tmean_iters");
    for r in results {
        println!(
            "{}\t{}\t{}\t{}\t{:.4e}\t[{:.3e}, {:.3e}]\t{:.4e}\t{:.2}\t{:.3}",
            r.ebn0_db.map_or("-".to_string(), |v| v.to_string()),
            r.r_q.to_decimal_string(),
            r.words,
            r.word_errors,
            r.wer,
            r.wer_ci_lo,
            r.wer_ci_hi,
            r.ber,
            r.mean_fht,
            r.mean_iters
        );
    }
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let decoder = args.decoder.build().map_err(Failure::Usage)?;
    let ebn0 = args.ebn0.0;
    if ebn0.is_empty() {
        return Err(Failure::Usage("--ebn0 is required".into()));
    }
    let job = job_from(args.code, decoder, ebn0, &args.run);
    job.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let manifest = SimulateManifest { job: &job };
    echo(&serde_json::json!({ "job": &job, "workers": args.run.workers }));
    let results = harness::run_job(&job, args.run.workers)?;
    if let Some(out) = &args.out {
        harness::persist(&results, &manifest, out)?;
    }
    print_results(&results);
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut decoder = DecoderConfig::sdss(args.rp, Factor::ZERO);
    decoder.theta = args.theta;
    decoder.schedule = match args.schedule {
        ScheduleArg::Full => Schedule::Full,
        ScheduleArg::TopOnly => Schedule::TopOnly,
    };
    let grid = args.rq_grid.0;
    if let Some(bad) = grid.iter().find(|f| **f > Factor::ONE) {
        return Err(Failure::Usage(format!("r_q {bad} exceeds 1")));
    }
    let job = job_from(args.code, decoder, vec![args.ebn0], &args.run);
    job.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let manifest = SweepManifest { job: &job, rq_grid: &grid };
    echo(&serde_json::json!({ "job": &job, "rq_grid": &grid, "workers": args.run.workers }));
    let sweep = harness::sweep_rq(&job, &grid, args.run.workers)?;
    let results: Vec<_> = sweep.iter().map(|(_, r)| r.clone()).collect();
    if let Some(out) = &args.out {
        harness::persist(&results, &manifest, out)?;
    }
    print_results(&results);
    if let Some((rq, best)) = harness::argmin_wer(&sweep) {
        println!("best r_q = {} (wer {:.4e})", rq.to_decimal_string(), best.wer);
    }
    Ok(())
}

fn count(args: CountArgs) -> Result<(), Failure> {
    let cfg = args.decoder.build().map_err(Failure::Usage)?;
    let code = RmCode::new(args.code.m, args.code.r)?;
    echo(&serde_json::json!({ "m": code.m(), "r": code.r(), "decoder": &cfg }));
    let bound = count_fht_bound(&code, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{bound}");
    Ok(())
}

fn study(args: StudyArgs) -> Result<(), Failure> {
    let channel = ChannelConfig::bsc(args.crossover);
    channel.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    echo(&serde_json::json!({
        "m": args.code.m, "r": args.code.r, "p": args.p,
        "crossover": args.crossover, "workers": args.workers,
    }));
    let study = harness::subset_study(args.code.m, args.code.r, args.p, &channel, args.workers)?;
    if let Some(out) = &args.out {
        let text = serde_json::to_string_pretty(&study).map_err(rm_rpa::Error::from)?;
        std::fs::write(out, text + "\n").map_err(rm_rpa::Error::from)?;
    }
    println!("subsets\t{}", study.subsets.len());
    println!("inputs_per_subset\t{}", study.inputs);
    println!("mean_word_errors\t{:.3}", study.mean_errors());
    println!("max_relative_deviation\t{:.3e}", study.max_relative_deviation());
    println!("word_errors\tsubsets");
    for (errors, subsets) in &study.histogram {
        println!("{errors}\t{subsets}");
    }
    Ok(())
}

fn decode_one(args: DecodeOneArgs) -> Result<(), Failure> {
    let cfg = args.decoder.build().map_err(Failure::Usage)?;
    let code = RmCode::new(args.code.m, args.code.r)?;
    let values = args.llr.0;
    if values.len() != code.n() {
        return Err(Failure::Usage(format!("expected {} LLRs, got {}", code.n(), values.len())));
    }
    let llr = LlrVector::new(values).map_err(|e| Failure::Usage(e.to_string()))?;
    echo(&serde_json::json!({ "m": code.m(), "r": code.r(), "decoder": &cfg, "seed": args.seed }));
    let out = decode(&llr, &code, &cfg, &RngStream::new(args.seed, 0))?;
    println!("{}", out.codeword);
    eprintln!(
        "# message {} fht_count {} top_iterations {} converged {}",
        out.message.iter().map(|b| b.to_string()).collect::<String>(),
        out.fht_count,
        out.top_iterations,
        out.converged
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::SweepRq(a) => sweep(a),
        Command::CountFht(a) => count(a),
        Command::SubsetStudy(a) => study(a),
        Command::DecodeOne(a) => decode_one(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_f64_grid("2.0").unwrap().0, vec![2.0]);
        assert_eq!(parse_f64_grid("1:0.5:3").unwrap().0, vec![1.0, 1.5, 2.0, 2.5, 3.0]);
        assert_eq!(parse_f64_grid("0:0.1:0.3").unwrap().0, vec![0.0, 0.1, 0.2, 0.3]);
        assert!(parse_f64_grid("1:0:3").is_err());
        assert!(parse_f64_grid("3:1:1").is_err());
        assert!(parse_f64_grid("a").is_err());
        assert_eq!(parse_factor_grid("0:0.05:1").unwrap().0.len(), 21);
    }

    #[test]
    fn codes() {
        assert_eq!(parse_code("7,3").unwrap(), CodeArg { m: 7, r: 3 });
        assert!(parse_code("3,4").is_err());
        assert!(parse_code("7").is_err());
        assert!(parse_code("4,0").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
