//! `unisample`: universality checks, constructions, counts and experiments
//! from the command line.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 when a mathematical check fails and 2 on usage errors.

mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use unisample::counting::{count_by_brute_force, count_universal, entropy_curve, DEFAULT_ENUMERATION_BUDGET};
use unisample::fourier::{self, brute_force_universal, oracle_workload, ConditionReport};
use unisample::index::{bracelet_canonical, bracelet_count, IndexSet, PrimePowerModulus};
use unisample::uncertainty::{
    cauchy_davenport_check, largest_admissible_d, random_maximal_experiment, random_signal_uncertainty, sumset,
    verify_uncertainty,
};
use unisample::universality::{
    decompose, is_universal, is_universal_via_chi_star, is_universal_via_dispersion, maximal_universal,
    minimal_universal, schur_valuation, universal_subset_of_size, SchurValuation, UniversalityVerdict,
};
use unisample::{Error, Real, Signal};

use input::ModulusSpec;
use output::{emit, emit_raw, Format};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotUniversal(_) | Error::Singular(_) | Error::Infeasible { .. } => Self::failed(e.to_string()),
            _ => Self::usage(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "unisample", version, about = "Universal sampling sets for discrete bandlimited signals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for enumerations and experiments.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ModulusArgs {
    /// Ambient size N.
    #[arg(short = 'N', long = "n")]
    n: Option<usize>,
    /// Prime p of N = p^M.
    #[arg(short = 'p', long = "p")]
    p: Option<usize>,
    /// Exponent M of N = p^M.
    #[arg(short = 'M', long = "m")]
    m: Option<u32>,
}

impl ModulusArgs {
    fn spec(&self) -> ModulusSpec {
        ModulusSpec {
            n: self.n,
            p: self.p,
            m: self.m,
        }
    }
}

#[derive(Args)]
struct SetArgs {
    #[command(flatten)]
    modulus: ModulusArgs,
    /// Index set: comma list with inclusive a..b ranges, JSON, a JSON file, or - for stdin.
    #[arg(short = 'I', long = "set")]
    set: String,
}

impl SetArgs {
    fn load(&self) -> Result<IndexSet, CliError> {
        input::parse_index_set(&self.set, self.modulus.spec().n()?)
    }

    fn load_prime_power(&self) -> Result<(IndexSet, PrimePowerModulus), CliError> {
        let set = self.load()?;
        let modulus = self.modulus.spec().prime_power(set.n())?;
        Ok((set, modulus))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Expectation {
    Universal,
    NotUniversal,
}

#[derive(Subcommand)]
enum Command {
    /// Universality verdict under every exact criterion.
    Check {
        #[command(flatten)]
        input: SetArgs,
        /// Exit with status 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
    /// A largest universal subset.
    Maximal {
        #[command(flatten)]
        input: SetArgs,
    },
    /// A smallest universal superset.
    Minimal {
        #[command(flatten)]
        input: SetArgs,
    },
    /// A universal subset of prescribed size (of the full range by default).
    Construct {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Superset to draw from, as for -I.
        #[arg(short = 'I', long = "set")]
        set: Option<String>,
        #[arg(long)]
        size: usize,
    },
    /// Elementary decomposition of a universal set.
    Decompose {
        #[command(flatten)]
        input: SetArgs,
    },
    /// Exact number of universal d-subsets (all d when -d is omitted).
    Count {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Set size.
        #[arg(short = 'd', long = "size")]
        d: Option<usize>,
        /// Count by exhaustive enumeration instead.
        #[arg(long)]
        brute: bool,
        /// Largest number of subsets --brute may test.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
    /// Normalised log-count curve on alpha in [0, 1].
    Entropy {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Number of alpha grid points.
        #[arg(long, default_value_t = 65)]
        resolution: usize,
    },
    /// Bracelet counts or canonical representatives.
    Bracelets {
        /// Bracelet length.
        #[arg(short = 'N', long = "n")]
        n: Option<usize>,
        /// Number of black beads.
        #[arg(short = 'd', long = "size")]
        d: Option<usize>,
        /// Set whose canonical representative is wanted.
        #[arg(short = 'I', long = "set")]
        set: Option<String>,
        /// Print the number of bracelets.
        #[arg(long, conflicts_with = "canonical", required_unless_present = "canonical")]
        count: bool,
        /// Print the canonical representative of -I.
        #[arg(long)]
        canonical: bool,
    },
    /// Universality by testing every DFT submatrix numerically (any N).
    Oracle {
        #[command(flatten)]
        input: SetArgs,
        /// Relative rank tolerance (default 1e-10).
        #[arg(long)]
        tolerance: Option<f64>,
        /// Largest number of submatrices to test.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
        /// Exit 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
    /// Reconstructs a bandlimited signal from samples.
    Interpolate {
        /// JSON {"n", "indices", "values": [[re, im], ...]}.
        #[arg(long)]
        samples: String,
        /// Frequency support, as for -I.
        #[arg(long)]
        support: String,
        /// Relative rank tolerance (default 1e-10).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Condition number for samples [0:d-1] and its lower bound.
    Condition {
        /// Ambient size N; taken from the JSON when omitted.
        #[arg(short = 'N', long = "n")]
        n: Option<usize>,
        /// Frequency support, as for -I.
        #[arg(long)]
        support: String,
    },
    /// Support-size uncertainty bounds for a signal.
    Uncertainty {
        /// Signal JSON {"n", "values"}: a file or - for stdin.
        #[arg(long)]
        signal: String,
        /// Absolute zero threshold (default 1e-9 times the peak).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Random s-subsets versus the largest-universal-subset bound.
    RandMaximal {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Size of each random subset.
        #[arg(short = 's', long)]
        s: usize,
        /// Target size; defaults to the largest admissible value.
        #[arg(short = 'd', long = "size")]
        d: Option<usize>,
        /// Exponent in the failure probability `d^-delta`.
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Number of random subsets.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Seed for the splitmix64 generator; required.
        #[arg(long)]
        seed: u64,
    },
    /// Random sparse signals versus the probabilistic uncertainty bound.
    RandSignal {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Size of each random signal support.
        #[arg(short = 'r', long)]
        r: usize,
        /// Exponent in the failure probability `(a - r)^-delta`.
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Number of random signals.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Seed for the splitmix64 generator; required.
        #[arg(long)]
        seed: u64,
    },
    /// X + Y mod N with the universal-set sumset bounds.
    Sumset {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// First summand, as for -I.
        #[arg(short = 'X', long = "x")]
        x: String,
        /// Second summand, as for -I.
        #[arg(short = 'Y', long = "y")]
        y: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("error: cannot start worker threads: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command, cli.format) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn expectation_met(expect: Option<Expectation>, universal: bool) -> Result<(), CliError> {
    match expect {
        Some(Expectation::Universal) if !universal => Err(CliError::failed("expected a universal set")),
        Some(Expectation::NotUniversal) if universal => Err(CliError::failed("expected a non-universal set")),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckOutput {
    #[serde(flatten)]
    verdict: UniversalityVerdict,
    criteria: Criteria,
    #[serde(skip_serializing_if = "Option::is_none")]
    schur: Option<SchurValuation>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Criteria {
    residue_balance: bool,
    level_multisets: bool,
    digit_reversal: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OracleOutput {
    universal: bool,
    n: usize,
    size: usize,
    column_sets_examined: u128,
    tolerance: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct InterpolationOutput {
    signal: Signal<f64>,
    condition_number: f64,
    ill_conditioned: bool,
}

#[derive(Serialize)]
struct SumsetOnly {
    sumset: IndexSet,
}

fn run(command: Command, format: Format) -> Result<(), CliError> {
    match command {
        Command::Check { input, expect } => {
            let (set, modulus) = input.load_prime_power()?;
            let verdict = is_universal(&set, modulus)?;
            let criteria = Criteria {
                residue_balance: verdict.universal,
                level_multisets: is_universal_via_chi_star(&set, modulus)?,
                digit_reversal: is_universal_via_dispersion(&set, modulus)?,
            };
            let schur = if set.is_empty() {
                None
            } else {
                Some(schur_valuation(&set, modulus)?)
            };
            let consistent = criteria.level_multisets == verdict.universal && criteria.digit_reversal == verdict.universal;
            emit::<_, ()>(format, &CheckOutput { verdict, criteria, schur }, None)?;
            if !consistent {
                return Err(CliError::failed("universality criteria disagree"));
            }
            expectation_met(expect, verdict.universal)
        }
        Command::Maximal { input } => {
            let (set, modulus) = input.load_prime_power()?;
            emit::<_, ()>(format, &maximal_universal(&set, modulus)?, None)
        }
        Command::Minimal { input } => {
            let (set, modulus) = input.load_prime_power()?;
            emit::<_, ()>(format, &minimal_universal(&set, modulus)?, None)
        }
        Command::Construct { modulus, set, size } => {
            let spec = modulus.spec();
            let set = match set {
                Some(s) => input::parse_index_set(&s, spec.n()?)?,
                None => IndexSet::full(spec.require_n()?),
            };
            let pp = spec.prime_power(set.n())?;
            emit::<_, ()>(format, &universal_subset_of_size(&set, pp, size)?, None)
        }
        Command::Decompose { input } => {
            let (set, modulus) = input.load_prime_power()?;
            match decompose(&set, modulus) {
                Ok(d) => emit::<_, ()>(format, &d, None),
                Err(Error::NotUniversal(v)) => {
                    emit::<_, ()>(format, &v, None)?;
                    Err(CliError::failed("set is not universal; no elementary decomposition"))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Count { modulus, d, brute, budget } => {
            let spec = modulus.spec();
            let pp = spec.prime_power(spec.require_n()?)?;
            let sizes: Vec<usize> = match d {
                Some(d) => vec![d],
                None => (0..=pp.n()).collect(),
            };
            let mut counts = Vec::with_capacity(sizes.len());
            for &d in &sizes {
                let c = if brute {
                    count_by_brute_force(d, pp, budget)?
                } else {
                    count_universal(d, pp)?
                };
                counts.push((d, c.value.to_string()));
            }
            emit_raw(&render_counts(format, pp, &counts, d.is_some()))
        }
        Command::Entropy { modulus, resolution } => {
            let spec = modulus.spec();
            let pp = spec.prime_power(spec.require_n()?)?;
            let curve = entropy_curve(pp.p(), pp.m(), resolution)?;
            emit(format, &curve, Some(&curve))
        }
        Command::Bracelets { n, d, set, count, .. } => {
            if count {
                let n = n.ok_or_else(|| CliError::usage("--count needs -N"))?;
                let d = d.ok_or_else(|| CliError::usage("--count needs -d"))?;
                let c = bracelet_count(n, d)?.to_string();
                let text = match format {
                    Format::Json => format!("{{\"n\":{n},\"d\":{d},\"count\":{c}}}\n"),
                    Format::Csv => format!("n,d,count\n{n},{d},{c}\n"),
                    Format::Human => format!("{c}\n"),
                };
                emit_raw(&text)
            } else {
                let set = set.ok_or_else(|| CliError::usage("--canonical needs -I"))?;
                let set = input::parse_index_set(&set, n)?;
                emit::<_, ()>(format, &bracelet_canonical(&set), None)
            }
        }
        Command::Oracle {
            input,
            tolerance,
            budget,
            expect,
        } => {
            let set = input.load()?;
            let tolerance = tolerance.unwrap_or_else(f64::rank_tolerance);
            let universal = brute_force_universal::<f64>(&set, tolerance, budget)?;
            let out = OracleOutput {
                universal,
                n: set.n(),
                size: set.len(),
                column_sets_examined: oracle_workload(set.n(), set.len()),
                tolerance,
            };
            emit::<_, ()>(format, &out, None)?;
            expectation_met(expect, universal)
        }
        Command::Interpolate {
            samples,
            support,
            tolerance,
        } => {
            let (sample_set, values) = input::parse_samples(&samples)?;
            let support = input::parse_index_set(&support, Some(sample_set.n()))?;
            let tolerance = tolerance.unwrap_or_else(f64::rank_tolerance);
            let out = fourier::interpolate(&values, &sample_set, &support, tolerance)?;
            let rendered = InterpolationOutput {
                signal: out.signal,
                condition_number: out.condition_number,
                ill_conditioned: out.ill_conditioned,
            };
            emit::<_, ()>(format, &rendered, None)
        }
        Command::Condition { n, support } => {
            let support = input::parse_index_set(&support, n)?;
            let block = IndexSet::range(support.n(), 0, support.len());
            let report: ConditionReport = fourier::condition_report(&block, &support, f64::rank_tolerance())?;
            emit::<_, ()>(format, &report, None)?;
            if report.condition_number < report.lower_bound * (1.0 - 1e-9) {
                return Err(CliError::failed("condition number is below its lower bound"));
            }
            Ok(())
        }
        Command::Uncertainty { signal, tolerance } => {
            let signal = input::parse_signal(&signal)?;
            let modulus = PrimePowerModulus::from_n(signal.n())?;
            let report = verify_uncertainty(&signal, modulus, tolerance)?;
            emit::<_, ()>(format, &report, None)?;
            if !report.all_hold() {
                return Err(CliError::failed("an uncertainty bound is violated"));
            }
            Ok(())
        }
        Command::RandMaximal {
            modulus,
            s,
            d,
            delta,
            trials,
            seed,
        } => {
            let spec = modulus.spec();
            let pp = spec.prime_power(spec.require_n()?)?;
            let d = d.unwrap_or_else(|| largest_admissible_d(pp.n(), s, delta));
            let summary = random_maximal_experiment(pp, s, d, delta, trials, seed)?;
            emit(format, &summary, Some(&summary.records))?;
            if !summary.consistent {
                return Err(CliError::failed("empirical frequency falls below the bound"));
            }
            Ok(())
        }
        Command::RandSignal {
            modulus,
            r,
            delta,
            trials,
            seed,
        } => {
            let spec = modulus.spec();
            let pp = spec.prime_power(spec.require_n()?)?;
            let summary = random_signal_uncertainty(pp, r, delta, trials, seed)?;
            emit(format, &summary, Some(&summary.records))?;
            if !summary.consistent {
                return Err(CliError::failed("empirical frequency falls below the bound"));
            }
            Ok(())
        }
        Command::Sumset { modulus, x, y } => {
            let n = modulus.spec().n()?;
            let x = input::parse_index_set(&x, n)?;
            let y = input::parse_index_set(&y, Some(x.n()))?;
            match modulus.spec().prime_power(x.n()) {
                Ok(pp) => {
                    let report = cauchy_davenport_check(&x, &y, pp)?;
                    emit::<_, ()>(format, &report, None)?;
                    if report.theorem_holds == Some(false) || !report.corollary_holds {
                        return Err(CliError::failed("a sumset bound is violated"));
                    }
                    Ok(())
                }
                Err(_) => emit::<_, ()>(format, &SumsetOnly { sumset: sumset(&x, &y)? }, None),
            }
        }
    }
}

/// Counts can exceed `f64`, so they are written as exact decimal literals.
fn render_counts(format: Format, modulus: PrimePowerModulus, counts: &[(usize, String)], single: bool) -> String {
    let (p, m, n) = (modulus.p(), modulus.m(), modulus.n());
    match format {
        Format::Json => {
            let objects: Vec<String> = counts
                .iter()
                .map(|(d, c)| format!("{{\"p\":{p},\"M\":{m},\"N\":{n},\"d\":{d},\"count\":{c}}}"))
                .collect();
            if single {
                format!("{}\n", objects[0])
            } else {
                format!("[{}]\n", objects.join(","))
            }
        }
        Format::Csv => {
            let mut s = String::from("p,M,N,d,count\n");
            for (d, c) in counts {
                s.push_str(&format!("{p},{m},{n},{d},{c}\n"));
            }
            s
        }
        Format::Human => counts
            .iter()
            .map(|(d, c)| if single { format!("{c}\n") } else { format!("{d}  {c}\n") })
            .collect(),
    }
}
