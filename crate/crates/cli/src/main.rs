use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use permrank::bounds::{asymptotic_ratio, table, table_csv, table_markdown, MAX_RATIO_DIGITS};
use permrank::characters::{character_table, mn_character};
use permrank::permmatrix::MethodChoice;
use permrank::twoway::{comm_matrix, strings_up_to, TwoWayDfa};
use permrank::verify::{parse_suites, rank_report, run_suites, VerifyOptions};
use permrank::{Partition, RankConfig};

#[derive(Parser)]
#[command(
    name = "permrank",
    version,
    about = "Ranks of cyclic-product matrices, characters of S_n and automata bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of P(k), compared against C(2k-2, k-1).
    Rank {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long, default_value_t = 3)]
        primes: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Write P(k) as a PBM bitmap.
        #[arg(long)]
        dump_pbm: Option<PathBuf>,
        /// Permit k = 8 (order 40320).
        #[arg(long)]
        allow_degree_8: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        /// centrality, operator, characters, hooks, dims, table1, asym, automata or all.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        /// Limit every suite to n <= 6.
        #[arg(long)]
        quick: bool,
        /// Seed for the random automata.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Table of state-complexity bounds.
    Bound {
        #[arg(long, default_value_t = 10)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Ratio of the lower bound to its leading asymptotic term.
    Asym {
        #[arg(long, default_value_t = 400)]
        n: u64,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// A single character value chi_lambda(alpha).
    Char {
        /// Partition, e.g. 2,1.
        #[arg(long)]
        lambda: Partition,
        /// Cycle type, e.g. 3.
        #[arg(long)]
        alpha: Partition,
    },
    /// Full character table of S_n.
    Chartable {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Two-way automata.
    #[command(name = "2dfa", subcommand)]
    TwoDfa(TwoDfaCommand),
}

#[derive(Subcommand)]
enum TwoDfaCommand {
    /// Simulate on one word.
    Run {
        #[arg(short, long)]
        automaton: PathBuf,
        #[arg(short, long, default_value = "")]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Size of the equivalent one-way DFA, before and after minimization.
    Todfa {
        #[arg(short, long)]
        automaton: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Rank of the communication matrix over short prefixes and suffixes.
    Commrank {
        #[arg(short, long)]
        automaton: PathBuf,
        #[arg(long, default_value_t = 4)]
        prefix_len: usize,
        #[arg(long, default_value_t = 4)]
        suffix_len: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Exact,
    Modp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
    Markdown,
}

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("PERMRANK_THREADS") {
        let threads: usize = v
            .parse()
            .context("PERMRANK_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Rank {
            k,
            method,
            primes,
            seed,
            dump_pbm,
            allow_degree_8,
            json,
        } => {
            let config = RankConfig {
                method: match method {
                    Method::Auto => MethodChoice::Auto,
                    Method::Exact => MethodChoice::Exact,
                    Method::Modp => MethodChoice::Modp,
                },
                num_primes: primes,
                seed,
                allow_degree_8,
                ..RankConfig::default()
            };
            let (cert, report) = rank_report(k, &config, dump_pbm.as_deref())?;
            let expected = permrank::bounds::central_binomial_rank(k as u64);
            if json {
                let out = json!({
                    "k": k,
                    "rank": cert.rank,
                    "expected": expected.to_string(),
                    "method": cert.method,
                    "primes": cert.primes,
                    "lower_bound_only": cert.lower_bound_only,
                    "passed": report.passed(),
                    "elapsed_ms": report.elapsed_ms,
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!(
                    "k={k} rank={} expected={expected} method={} {}",
                    cert.rank,
                    cert.method,
                    if report.passed() { "PASS" } else { "FAIL" }
                );
                if !cert.primes.is_empty() {
                    println!("primes: {:?}", cert.primes);
                }
                println!("{}", cert.note);
            }
            Ok(report.passed())
        }
        Command::Verify {
            suite,
            n,
            quick,
            seed,
            json,
        } => {
            let opts = VerifyOptions {
                n,
                quick,
                seed,
                ..VerifyOptions::default()
            };
            let reports = run_suites(&parse_suites(&suite)?, &opts)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            } else {
                for r in &reports {
                    println!(
                        "{:<11} {:>5} cases {:>3} failures {:>7} ms  {}",
                        r.suite,
                        r.cases,
                        r.failures.len(),
                        r.elapsed_ms,
                        if r.passed() { "PASS" } else { "FAIL" }
                    );
                    for f in &r.failures {
                        println!(
                            "  {}: expected {}, got {} ({})",
                            f.inputs, f.expected, f.actual, f.claim
                        );
                    }
                }
            }
            Ok(reports.iter().all(|r| r.passed()))
        }
        Command::Bound { max, format } => {
            if max == 0 {
                bail!("--max must be at least 1");
            }
            let rows = table(max);
            match format {
                Format::Csv => print!("{}", table_csv(&rows)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                Format::Markdown => print!("{}", table_markdown(&rows)),
                Format::Plain => {
                    for r in &rows {
                        println!(
                            "{:>3} {:>24} {:>24} {:>24}",
                            r.n, r.earlier_lower, r.new_lower, r.upper
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Asym { n, digits, json } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            if digits > MAX_RATIO_DIGITS {
                bail!("--digits is at most {MAX_RATIO_DIGITS}");
            }
            let r = asymptotic_ratio(n, digits);
            let distance = r.distance_from_one();
            if json {
                let out = json!({
                    "n": n,
                    "digits": digits,
                    "ratio": r.to_string(),
                    "distance_from_one": distance.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("r({n}) = {r}");
                println!("|r - 1| = {distance}");
            }
            Ok(true)
        }
        Command::Char { lambda, alpha } => {
            println!("{}", mn_character(&lambda, &alpha)?);
            Ok(true)
        }
        Command::Chartable { n, format } => {
            let t = character_table(n)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&t)?),
                Format::Csv => print!("{}", t.to_csv()),
                Format::Plain | Format::Markdown => {
                    for (lam, row) in t.partitions.iter().zip(&t.values) {
                        let cells: Vec<String> = row.iter().map(|v| format!("{v:>5}")).collect();
                        println!("{:<14}{}", lam.to_string(), cells.join(""));
                    }
                }
            }
            Ok(true)
        }
        Command::TwoDfa(cmd) => two_dfa(cmd),
    }
}

fn load(path: &PathBuf) -> Result<TwoWayDfa> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(TwoWayDfa::from_json(&text)?)
}

fn two_dfa(cmd: TwoDfaCommand) -> Result<bool> {
    match cmd {
        TwoDfaCommand::Run {
            automaton,
            word,
            json,
        } => {
            let a = load(&automaton)?;
            let outcome = a.run(&word)?;
            if json {
                println!("{}", json!({ "word": word, "outcome": outcome }));
            } else {
                println!("{outcome:?}");
            }
        }
        TwoDfaCommand::Todfa { automaton, json } => {
            let a = load(&automaton)?;
            let dfa = a.to_dfa()?;
            let minimal = dfa.minimize().num_states();
            if json {
                println!(
                    "{}",
                    json!({ "behaviors": dfa.num_states(), "minimal": minimal })
                );
            } else {
                println!("behaviors={} minimal={minimal}", dfa.num_states());
            }
        }
        TwoDfaCommand::Commrank {
            automaton,
            prefix_len,
            suffix_len,
            json,
        } => {
            let a = load(&automaton)?;
            let prefixes = strings_up_to(a.alphabet(), prefix_len);
            let suffixes = strings_up_to(a.alphabet(), suffix_len);
            let m = comm_matrix(&a, &prefixes, &suffixes)?.dedup();
            let rank = m.rank()?;
            if json {
                let out = json!({
                    "prefixes": prefixes.len(),
                    "suffixes": suffixes.len(),
                    "distinct_rows": m.prefixes.len(),
                    "distinct_cols": m.suffixes.len(),
                    "rank": rank,
                });
                println!("{out}");
            } else {
                println!(
                    "rank={rank} distinct_rows={} distinct_cols={}",
                    m.prefixes.len(),
                    m.suffixes.len()
                );
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn rank_defaults() {
        let cli = Cli::try_parse_from(["permrank", "rank", "--k", "4"]).unwrap();
        let Command::Rank {
            k,
            method,
            primes,
            allow_degree_8,
            ..
        } = cli.command
        else {
            panic!("expected rank");
        };
        assert_eq!((k, primes, allow_degree_8), (4, 3, false));
        assert!(matches!(method, Method::Auto));
    }

    #[test]
    fn partitions_parse_from_flags() {
        let cli =
            Cli::try_parse_from(["permrank", "char", "--lambda", "3,1", "--alpha", "2,2"]).unwrap();
        let Command::Char { lambda, alpha } = cli.command else {
            panic!("expected char");
        };
        assert_eq!(lambda.parts(), &[3, 1]);
        assert_eq!(alpha.parts(), &[2, 2]);
        assert!(
            Cli::try_parse_from(["permrank", "char", "--lambda", "1,3", "--alpha", "4"]).is_err()
        );
    }

    #[test]
    fn two_dfa_subcommand_name() {
        let cli =
            Cli::try_parse_from(["permrank", "2dfa", "run", "-a", "x.json", "-w", "ab"]).unwrap();
        assert!(matches!(
            cli.command,
            Command::TwoDfa(TwoDfaCommand::Run { .. })
        ));
        assert!(Cli::try_parse_from(["permrank", "bound", "--format", "yaml"]).is_err());
    }
}
